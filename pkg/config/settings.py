from dotenv import load_dotenv
import os

load_dotenv()

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _int_list(value: str):
    return [int(float(item)) for item in value.split(",") if item.strip()]


SEQSPACE_CONFIG = {
    "default_base": int(os.getenv("HYPERDYN_DEFAULT_BASE", 1)),
    "relative_tolerance": float(os.getenv("HYPERDYN_RELATIVE_TOLERANCE", 1e-12)),
    "default_p": float(os.getenv("HYPERDYN_DEFAULT_P", 2.0))
}

DENSITY_CONFIG = {
    "ladder": _int_list(os.getenv("HYPERDYN_DENSITY_LADDER", "1000,10000,100000,1000000")),
    "growth_cap": int(os.getenv("HYPERDYN_GROWTH_CAP", 1000)),
    "kinds": ["lower", "upper", "log", "logm", "d2", "d2m", "power"]
}

FAMGEN_CONFIG = {
    "brute_force_limit": 2 ** 24,
    "max_materialized_r": int(os.getenv("HYPERDYN_MAX_MATERIALIZED_R", 4)),
    "materialize_limit": int(os.getenv("HYPERDYN_MATERIALIZE_LIMIT", 200000)),
    "tower_c": float(os.getenv("HYPERDYN_TOWER_C", 4.0)),
    "tower_beta": float(os.getenv("HYPERDYN_TOWER_BETA", 1.75))
}

FHC_CONFIG = {
    "horizon": int(os.getenv("HYPERDYN_FHC_HORIZON", 10000)),
    "depth": int(os.getenv("HYPERDYN_FHC_DEPTH", 8)),
    "max_L": 5,
    "max_depth": 8,
    "fi2_margin": 1e-12,
    "residual_tolerance": 1e-12,
    "norm_tolerance": 1e-10
}

NOGO_CONFIG = {
    "scan_horizon": int(os.getenv("HYPERDYN_NOGO_HORIZON", 10000)),
    "maclane_horizon": int(os.getenv("HYPERDYN_MACLANE_HORIZON", 2000)),
    "extra_powers": int(os.getenv("HYPERDYN_EXTRA_POWERS", 5)),
    "growth_cap": int(os.getenv("HYPERDYN_GROWTH_CAP", 1000)),
    "slack": 1e-12,
    "partial_sum_ladder": [10, 100, 1000, 10000]
}

ALGEBRA_CONFIG = {
    "rank": int(os.getenv("HYPERDYN_ALGEBRA_RANK", 64)),
    "witness_budget": int(os.getenv("HYPERDYN_WITNESS_BUDGET", 5000)),
    "recurrence_budget": int(os.getenv("HYPERDYN_RECURRENCE_BUDGET", 64)),
    "tolerance": float(os.getenv("HYPERDYN_WITNESS_TOLERANCE", 1e-9)),
    "random_polynomials": int(os.getenv("HYPERDYN_RANDOM_POLYNOMIALS", 20)),
    "associativity_tolerance": 1e-10
}

RUNNER_CONFIG = {
    "threads": max(1, int(os.getenv("HYPERDYN_THREADS", os.cpu_count() or 1))),
    "registry_file": os.getenv("HYPERDYN_REGISTRY", os.path.join(PROJECT_ROOT, "config", "experiment_configs.json")),
    "default_format": os.getenv("HYPERDYN_FORMAT", "json"),
    "log_level": os.getenv("HYPERDYN_LOG_LEVEL", "INFO")
}
