# Tests package for hyperdyn
