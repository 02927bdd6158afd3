"""Complex sequence arithmetic: norms, coordinatewise products and roots, shift operators."""

from seqspace.complex_seq import ComplexSeq, linear_combination
from seqspace.spaces import SpaceSpec, norm, lp_norm
from seqspace.arithmetic import hadamard, power, mth_root, principal_root, fractional_power, holder_power_bound
from seqspace.weights import ConstantWeights, PowerWeights, TabulatedWeights, FallingFactorialWeights, WeightSequence
from seqspace.shifts import ShiftSpec, apply_shift, shift_is_multiplicative_check, shift_factorization_check
from seqspace.scaled import ScaledComplex, scaled_power

__version__ = "0.3.0"

__all__ = [
    "ComplexSeq", "linear_combination", "SpaceSpec", "norm", "lp_norm",
    "hadamard", "power", "mth_root", "principal_root", "fractional_power", "holder_power_bound",
    "ConstantWeights", "PowerWeights", "TabulatedWeights", "FallingFactorialWeights", "WeightSequence",
    "ShiftSpec", "apply_shift", "shift_is_multiplicative_check", "shift_factorization_check",
    "ScaledComplex", "scaled_power",
]
