"""Size caps shared by the library and the CLI."""
import os

DEFAULT_MAX_EDGES = 4096
# Support size accepted by the hitting-set oracle; K_10 has 45 edges.
DEFAULT_ORACLE_MAX_EDGES = 120
DEFAULT_MAX_OPTIMA = 100_000
# Largest ambient for which tight points are extended beyond the support (K_8).
DEFAULT_MAX_EXTENSION_EDGES = 28

_override = None


def max_edges() -> int:
    """Cap on C(n, r) for any ambient hypergraph."""
    if _override is not None:
        return _override
    env = os.environ.get("TURAN_MAX_EDGES")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"TURAN_MAX_EDGES must be an integer, got {env!r}") from None
        if value <= 0:
            raise ValueError("TURAN_MAX_EDGES must be positive")
        return value
    return DEFAULT_MAX_EDGES


def set_max_edges(value):
    """Override the ambient cap for this process (``None`` restores the default)."""
    global _override
    if value is not None and value <= 0:
        raise ValueError("max edges must be positive")
    _override = value
