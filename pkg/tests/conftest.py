import numpy as np
import pytest

from seqspace.complex_seq import ComplexSeq
from seqspace.serialization import save_sequence


@pytest.fixture
def rng():
    """Seeded generator; every randomized test is reproducible."""
    return np.random.default_rng(20240517)


@pytest.fixture
def vector_file(tmp_path):
    """Write a ComplexSeq to a sequence JSON file and return its path."""
    def write(x: ComplexSeq, name: str = "x.json") -> str:
        return save_sequence(x, str(tmp_path / name))
    return write


@pytest.fixture
def geometric_vector():
    """x(k) = c·λ^{−k} on a long support: every orbit norm stays below ε."""
    def build(lam: float = 2.0, eps: float = 0.1, support: int = 600) -> ComplexSeq:
        c = eps / 2
        return ComplexSeq.from_mapping({k: c * lam ** -k for k in range(1, support + 1)})
    return build
