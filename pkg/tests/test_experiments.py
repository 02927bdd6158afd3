import json

import pytest

from experiments.algebra_experiment import AlgebraExperiment, parse_polynomial
from experiments.base_experiment import STATUS_EXIT_CODES, parse_complex, parse_ladder, parse_list
from experiments.construct_experiment import ConstructExperiment
from experiments.density_experiment import DensityExperiment, parse_index_set
from experiments.experiment_registry import ExperimentRegistry
from experiments.family_experiment import FamilyExperiment
from experiments.nogo_experiment import SERIES_COLUMNS, NogoExperiment
from experiments.run_ledger import RunLedger
from schemas.experiment_schema import ExperimentConfig
from seqspace.complex_seq import ComplexSeq
from utils.errors import InvalidConfigError


def _experiment(experiment_class, seed=None, **parameters):
    config = ExperimentConfig(command=experiment_class.command, parameters=parameters, seed=seed).validate_config()
    return experiment_class(config, ledger=RunLedger(f"{experiment_class.command}-test"), threads=1, progress=False)


def _run(experiment_class, seed=None, **parameters):
    experiment = _experiment(experiment_class, seed, **parameters)
    result = experiment.run()
    return experiment, result


def test_registry_routes_commands():
    """The shipped registry lists all five commands"""
    registry = ExperimentRegistry()
    assert registry.list_commands() == ["algebra", "construct", "density", "family", "nogo"], "five commands"
    assert registry.get_experiment_class("density") is DensityExperiment, "density routes to DensityExperiment"
    experiment = registry.create(ExperimentConfig(command="family"), progress=False)
    assert isinstance(experiment, FamilyExperiment), "create instantiates the routed class"


def test_registry_fallback_and_errors(tmp_path):
    """Missing file falls back; malformed or disabled entries are config errors"""
    fallback = ExperimentRegistry(str(tmp_path / "missing.json"))
    assert fallback.get_experiment_class("nogo") is NogoExperiment, "built-in entries"

    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvalidConfigError):
        ExperimentRegistry(str(broken))

    entries = {
        "density": {"module_path": "experiments.density_experiment", "class_name": "DensityExperiment",
                    "enabled": False},
        "nogo": {"module_path": "experiments.run_ledger", "class_name": "RunLedger"},
    }
    path = tmp_path / "registry.json"
    path.write_text(json.dumps(entries), encoding="utf-8")
    registry = ExperimentRegistry(str(path))
    assert registry.list_commands() == ["nogo"], "disabled entries are hidden"
    with pytest.raises(InvalidConfigError):
        registry.get_experiment_class("density")
    with pytest.raises(InvalidConfigError):
        registry.get_experiment_class("nogo")


def test_run_ledger(tmp_path):
    """Entries are numbered in order and saved as canonical JSON"""
    ledger = RunLedger("density-7")
    ledger.log_action("density", "start", {"parameters": {}})
    ledger.log_verdict("density", "run", "pass", {"exit_code": 0})
    ledger.log_action("density", "materialize")
    assert [e["seq"] for e in ledger.actions] == [1, 3], "actions share the sequence with verdicts"
    assert ledger.verdicts[0]["seq"] == 2 and ledger.verdicts[0]["status"] == "pass", "verdict entry"

    path = ledger.save(str(tmp_path / "ledger" / "run.json"))
    saved = json.loads(open(path, encoding="utf-8").read())
    assert saved == json.loads(json.dumps(ledger.to_dict())), "saved ledger matches to_dict"
    assert saved["run_id"] == "density-7", "run id"


def test_parse_helpers():
    """Ladders, complex scalars and comma lists from CLI strings"""
    assert parse_ladder("1e3..1e6") == [1000, 10000, 100000, 1000000], "decade ladder"
    assert parse_ladder("1000, 5000") == [1000, 5000], "explicit ladder"
    assert parse_ladder([10, "100"]) == [10, 100], "lists pass through"
    assert parse_complex("1+1i") == 1 + 1j, "i is accepted for the imaginary unit"
    assert parse_complex(2) == 2 + 0j, "real scalars"
    assert parse_list("0.05, 0.1", float) == [0.05, 0.1], "comma list with cast"
    assert parse_list(None) == [], "missing list"
    assert STATUS_EXIT_CODES["premise not met"] == 2 and STATUS_EXIT_CODES["degenerate"] == 0, "exit codes"


def test_parse_index_set(tmp_path):
    """Index sets by name, with options and from files"""
    assert parse_index_set("dyadic:l=1,m=1", 20).elements == (1, 5, 9, 13, 17), "I(1,1) up to 20"
    assert parse_index_set("family:l=1,m=1,rcap=4", 100).elements == (6,), "A(1,1) below r = 4"
    assert parse_index_set("powers-of-two", 100).elements[-1] == 64, "largest power of two below 100"

    path = tmp_path / "set.json"
    path.write_text("[2, 3, 5, 7]", encoding="utf-8")
    assert parse_index_set(f"file:{path}", 10).elements == (2, 3, 5, 7), "file sets"
    with pytest.raises(InvalidConfigError):
        parse_index_set("primes", 10)
    with pytest.raises(InvalidConfigError):
        parse_index_set("dyadic:l=1", 10)
    with pytest.raises(InvalidConfigError):
        parse_index_set("digit:d=x", 10)


def test_density_experiment():
    """Rows follow kinds then the ladder; extremes land in the summary"""
    experiment, result = _run(DensityExperiment, set="evens", ladder="10,100", kinds="lower,log")
    assert result["status"] == "pass" and result["exit_code"] == 0, f"density run failed: {result}"
    assert [(row["kind"], row["N"]) for row in result["rows"]] == \
        [("lower", 10), ("lower", 100), ("log", 10), ("log", 100)], "row order"
    assert all(row["family_id"] == result["rows"][0]["family_id"] for row in result["rows"]), "one family"
    assert set(result["summary"]["extremes"]) == {"lower/m=1", "log/m=1"}, "extremes per kind"
    assert [a["action"] for a in experiment.ledger.actions] == ["start", "materialize"], "ledger actions"
    assert experiment.ledger.verdicts[-1]["status"] == "pass", "run verdict"

    _, bad = _run(DensityExperiment, set="evens", ladder="10", kinds="banach")
    assert bad["status"] == "error" and bad["exit_code"] == 1, "unknown kind is a config error"


def test_family_experiment():
    """The system on [1,2]² certifies at r_cap = 6"""
    _, result = _run(FamilyExperiment, L=2, rcap=6)
    assert result["status"] == "pass", f"family check failed: {result['summary']}"
    assert [(row["l"], row["m"]) for row in result["rows"]] == [(1, 1), (1, 2), (2, 1), (2, 2)], "label order"
    assert all(row["invariants_hold"] for row in result["rows"]), "block invariants"
    assert result["rows"][0]["density_limit"] == 1 / 96, "A(1,1) density limit"
    assert result["rows"][0]["density_bound"] is not None, "ρ = 4 leaves room at r_cap = 6"
    assert result["rows"][3]["density_bound"] is None, "ρ = 16 exceeds r_cap"

    _, relabelled = _run(FamilyExperiment, L=2, rcap=6, check="charcond2", reindex=True, descriptors=True)
    assert relabelled["status"] == "pass", "relabelled system meets charcond2"
    assert len(relabelled["summary"]["descriptors"]) == 4, "one descriptor per family"

    _, bad = _run(FamilyExperiment, L=2, check="charcond3")
    assert bad["exit_code"] == 1, "unknown condition"


def test_construct_experiment():
    """A single-cell construction certifies its three windows"""
    _, result = _run(ConstructExperiment, L=1, depth=3, horizon=200, alpha="2j")
    assert result["status"] == "pass", f"construction failed: {result['summary']}"
    assert [row["n_prime"] for row in result["rows"]] == [3, 7, 11], "one row per placement"
    assert all(row["error"] <= row["bound"] for row in result["rows"]), "errors within bounds"
    summary = result["summary"]
    assert summary["placements"] == 3 and summary["omitted"] == 0, "nothing past the horizon"
    assert len(summary["homogeneity"]) == 1, "one homogeneity check for L = 1"
    assert summary["constants"]["1"] == pytest.approx(4.0), "C₁ at λ = 2"

    _, bad = _run(ConstructExperiment, L=1, depth=3, **{"lambda": "0.5"})
    assert bad["exit_code"] == 1, "|λ| ≤ 1 is rejected"


def test_construct_random_transfer_suite_is_seeded():
    """Same seed, same transfer suite"""
    first = _experiment(ConstructExperiment, seed=11, L=1, depth=3, horizon=100, random=3)
    second = _experiment(ConstructExperiment, seed=11, L=1, depth=3, horizon=100, random=3)
    a, b = first.report(first.run()), second.report(second.run())
    assert a["summary"]["transfer"]["cases"] == 3, "suite size"
    assert a == b, "seeded suites are reproducible"


def test_nogo_rolewicz_from_file(vector_file, geometric_vector):
    """A stored geometric vector passes the power obstruction"""
    path = vector_file(geometric_vector(lam=2.0, eps=0.1, support=600))
    experiment, result = _run(NogoExperiment, op="rolewicz", vector=path, eps=0.1, N=200, eps_curve="0.05,0.1")
    assert result["status"] == "pass", f"obstruction failed: {result['summary']}"
    assert [row["m"] for row in result["rows"]] == list(range(1, 7)), "powers M through M + 5"
    assert [row["M"] for row in result["summary"]["m_curve"]] == [1, 1], "M(ε) curve"
    assert experiment.ledger.actions[1]["action"] == "load-vector", "vector load is logged"


def test_nogo_statuses(vector_file):
    """Large vectors miss the premise; a missing vector is a config error"""
    big = vector_file(ComplexSeq.from_mapping({k: 10 for k in range(1, 301)}), "big.json")
    _, result = _run(NogoExperiment, op="rolewicz", vector=big, eps=0.1, N=200)
    assert result["status"] == "premise not met" and result["exit_code"] == 2, "premise not met exits 2"
    assert result["rows"][0]["verdict"] == "premise-not-met", "single premise row"

    _, missing = _run(NogoExperiment, op="maclane", eps=0.1)
    assert missing["exit_code"] == 1, "maclane needs a vector or a random suite"
    _, unknown = _run(NogoExperiment, op="volterra")
    assert unknown["exit_code"] == 1, "unknown operator"


def test_nogo_weight_series():
    """Power weights α = 0.8 on ℓ₂ obstruct every m ≥ 2"""
    experiment, result = _run(NogoExperiment, op="weights", alpha=0.8, p=2.0, m_max=4)
    assert experiment.csv_columns == SERIES_COLUMNS, "series rows use their own columns"
    assert [row["kind"] for row in result["rows"]] == ["convergent", "divergent", "divergent", "divergent"], \
        "Σ n^{−1.6/m}"
    assert result["summary"]["verdict"]["no_fhc_algebra"], "no FHC algebra"


def test_nogo_bw_and_supercyclic(vector_file):
    """An empty B_w scan is a missed premise; the supercyclic ladder converges"""
    zero = vector_file(ComplexSeq.zero(), "zero.json")
    _, empty = _run(NogoExperiment, op="bw", vector=zero, eps=0.2, N=12)
    assert empty["status"] == "premise not met" and empty["exit_code"] == 2, "no qualifying times"

    _, result = _run(NogoExperiment, op="supercyclic", terms=8, m=2)
    assert result["status"] == "pass", f"supercyclic ladder: {result['summary']}"
    assert [row["n"] for row in result["rows"]] == [3 * k for k in range(1, 9)], "n_k = 3k"


def test_nogo_random_suite_is_seeded():
    """Random Rolewicz vectors are a function of the seed"""
    first = _experiment(NogoExperiment, seed=3, op="rolewicz", eps=0.1, N=100, random=2, support=150)
    second = _experiment(NogoExperiment, seed=3, op="rolewicz", eps=0.1, N=100, random=2, support=150)
    a, b = first.report(first.run()), second.report(second.run())
    assert a == b, "identical seeds give identical reports"
    assert set(a["summary"]["statuses"]) == {"random#0", "random#1"}, "one status per vector"


def test_parse_polynomial():
    """Exponents, coefficients and imaginary parts"""
    terms = parse_polynomial("2:1;3:-1;1,1:0.5,2")
    assert [t.exponents for t in terms] == [[2], [3], [1, 1]], "exponent vectors"
    assert (terms[2].re, terms[2].im) == (0.5, 2.0), "complex coefficient"
    assert parse_polynomial("2")[0].re == 1.0, "coefficient defaults to 1"


def test_algebra_experiment():
    """Hadamard axioms pass; the × product finds a witness for X₁² − X₁³"""
    _, hadamard = _run(AlgebraExperiment, product="hadamard")
    assert hadamard["status"] == "pass", f"hadamard axioms: {hadamard['rows']}"
    assert all(row["check"].startswith("axiom/") for row in hadamard["rows"]), "axiom rows only"

    _, times = _run(AlgebraExperiment, product="times", schedule="constant", rank=16, polynomial="2:1;3:-1")
    checks = {row["check"] for row in times["rows"]}
    assert {"times/monomial_closed_form", "times/phi_norm_floor"} <= checks, "× identities are reported"
    witness = times["summary"]["witness"]
    assert witness["status"] == "witness found" and witness["witness_index"] == 1, "witness at r = 1"

    _, bad = _run(AlgebraExperiment, product="hadamard", polynomial="2:1")
    assert bad["exit_code"] == 1, "witnesses need the × product"


def test_algebra_descriptor_file(tmp_path):
    """A descriptor file selects the φ product"""
    path = tmp_path / "algebra.json"
    path.write_text(json.dumps({"product": "phi", "phi": [["1", 0.6, 0.0], ["2", 0.0, 0.8]]}), encoding="utf-8")
    _, result = _run(AlgebraExperiment, descriptor=str(path))
    assert result["status"] == "pass", f"φ product checks: {result['rows']}"
    assert "phi/power_law" in {row["check"] for row in result["rows"]}, "power law row"


def _obstruction_rows_hold(rows):
    return all(row["min_distance"] >= row["floor"] - 1e-12 for row in rows if row["min_distance"] is not None)


@pytest.mark.slow
def test_nogo_random_rolewicz_suite():
    """100 random vectors for 2B on ℓ₂ at N = 10⁴ never dip below the floor"""
    _, result = _run(NogoExperiment, seed=7, op="rolewicz", eps=0.1, N=10 ** 4, random=100, **{"lambda": "2"})
    assert len(result["summary"]["statuses"]) == 100, "one status per vector"
    assert result["status"] != "fail", f"statuses: {set(result['summary']['statuses'].values())}"
    assert _obstruction_rows_hold(result["rows"]), "a power orbit came closer than 1 − ε^m"


@pytest.mark.slow
def test_nogo_random_maclane_suite():
    """100 random Taylor vectors for D at N = 2000 never dip below the floor"""
    _, result = _run(NogoExperiment, seed=7, op="maclane", eps=0.1, N=2000, random=100)
    assert len(result["summary"]["statuses"]) == 100, "one status per vector"
    assert result["status"] != "fail", f"statuses: {set(result['summary']['statuses'].values())}"
    assert _obstruction_rows_hold(result["rows"]), "a power orbit came closer than 1 − ε^m"


@pytest.mark.slow
@pytest.mark.parametrize("product", ["hadamard", "phi", "x0-commutative", "times"])
def test_algebra_random_triples(product):
    """Basis triples plus 100 random ones satisfy the algebra axioms"""
    _, result = _run(AlgebraExperiment, seed=5, product=product, rank=16, random=100)
    failing = [row["check"] for row in result["rows"] if not row["passed"]]
    assert result["status"] == "pass", f"{product} failed {failing}"
    assert any(row["check"].startswith("axiom/") for row in result["rows"]), "axiom rows are reported"


@pytest.mark.slow
@pytest.mark.parametrize("schedule", ["constant", "dense"])
def test_algebra_random_witness_suite(schedule):
    """--random also runs 20 seeded polynomials through the witness search"""
    _, result = _run(AlgebraExperiment, seed=5, product="times", schedule=schedule, rank=16, random=2)
    suite = result["summary"]["witness_suite"]
    assert suite["cases"] == 20 and suite["sound"] == 20, f"witness suite: {suite['details']}"
    assert suite["passed"], "every witness is sound"
    assert "times/random_witnesses" in {row["check"] for row in result["rows"]}, "suite row"


def test_algebra_witness_suite_size_and_seed():
    """--polynomials sets the suite size; the seed fixes the polynomials"""
    first = _experiment(AlgebraExperiment, seed=9, product="times", rank=8, random=1, polynomials=4)
    second = _experiment(AlgebraExperiment, seed=9, product="times", rank=8, random=1, polynomials=4)
    a, b = first.report(first.run()), second.report(second.run())
    assert a["summary"]["witness_suite"]["cases"] == 4, "suite size follows --polynomials"
    assert a["summary"]["witness_suite"] == b["summary"]["witness_suite"], "seeded suites are reproducible"

    _, hadamard = _run(AlgebraExperiment, seed=9, product="hadamard", random=1)
    assert "witness_suite" not in hadamard["summary"], "witness suites need the × product"


@pytest.mark.slow
def test_construct_random_transfer_suite():
    """200 seeded transfer cases stay within tolerance"""
    _, result = _run(ConstructExperiment, seed=13, L=1, depth=3, horizon=100, random=200)
    transfer = result["summary"]["transfer"]
    assert transfer["cases"] == 200, "suite size"
    assert transfer["passed"], f"transfer suite: {transfer}"
