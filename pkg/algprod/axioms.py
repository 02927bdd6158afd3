from typing import Dict, Sequence

from algprod.products import AlgebraProduct
from config.settings import ALGEBRA_CONFIG
from seqspace.complex_seq import ComplexSeq, linear_combination
from seqspace.spaces import lp_norm
from utils.logger import get_logger

logger = get_logger(__name__)


def _sup(x: ComplexSeq) -> float:
    return lp_norm(x.values, float("inf"))


def bilinearity_residual(product: AlgebraProduct, x: ComplexSeq, y: ComplexSeq, z: ComplexSeq,
                         a: complex = 2 - 1j, b: complex = 0.5j) -> float:
    """Largest sup-norm defect of linearity in either slot."""
    left = product.multiply(linear_combination([(a, x), (b, y)]), z)
    left_expected = linear_combination([(a, product.multiply(x, z)), (b, product.multiply(y, z))])
    right = product.multiply(z, linear_combination([(a, x), (b, y)]))
    right_expected = linear_combination([(a, product.multiply(z, x)), (b, product.multiply(z, y))])
    return max(_sup(left - left_expected), _sup(right - right_expected))


def associativity_residual(product: AlgebraProduct, x: ComplexSeq, y: ComplexSeq, z: ComplexSeq) -> float:
    """‖x·(y·z) − (x·y)·z‖."""
    return product.norm(product.multiply(x, product.multiply(y, z)) - product.multiply(product.multiply(x, y), z))


def commutativity_residual(product: AlgebraProduct, x: ComplexSeq, y: ComplexSeq) -> float:
    return product.norm(product.multiply(x, y) - product.multiply(y, x))


def submultiplicativity_slack(product: AlgebraProduct, x: ComplexSeq, y: ComplexSeq) -> float:
    """‖x‖‖y‖ + tail − ‖x·y‖; negative means the axiom fails."""
    return product.norm(x) * product.norm(y) + product.tail_bound(x, y) - product.norm(product.multiply(x, y))


def axiom_report(product: AlgebraProduct, triples: Sequence[Sequence[ComplexSeq]]) -> Dict[str, object]:
    """Worst residuals of every axiom over the supplied (x, y, z) triples."""
    tolerance = ALGEBRA_CONFIG["associativity_tolerance"]
    worst = {"bilinearity": 0.0, "associativity": 0.0, "commutativity": 0.0, "submultiplicativity": float("inf")}
    for x, y, z in triples:
        worst["bilinearity"] = max(worst["bilinearity"], bilinearity_residual(product, x, y, z))
        tails = 2 * product.tail_bound(x, y) * max(1.0, product.norm(z))
        worst["associativity"] = max(worst["associativity"], associativity_residual(product, x, y, z) - tails)
        worst["commutativity"] = max(worst["commutativity"], commutativity_residual(product, x, y))
        worst["submultiplicativity"] = min(worst["submultiplicativity"], submultiplicativity_slack(product, x, y))

    checks = {
        "bilinearity": worst["bilinearity"] <= tolerance,
        "associativity": worst["associativity"] <= tolerance,
        "submultiplicativity": worst["submultiplicativity"] >= -tolerance,
    }
    if product.commutative:
        checks["commutativity"] = worst["commutativity"] == 0.0
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.error(f"{product.name}: axioms {failed} fail over {len(triples)} triples: {worst}")
    else:
        logger.info(f"{product.name}: all axioms hold over {len(triples)} triples")
    return {"product": product.name, "triples": len(triples), "worst": worst, "checks": checks,
            "status": "pass" if not failed else "fail"}
