import os

# element sets and point sets live in one machine word
MAX_CARRIER = 64
DEFAULT_CARRIER_CAP = 64
DEFAULT_ENUM_CAP = 4
MAX_ENUM_CAP = 6
# closed-set enumeration is exponential in the number of points
CLOSED_SET_POINT_CAP = 20
# exhaustive distributivity over all subsets up to this carrier size
SUBSET_DISTRIBUTIVITY_MAX = 16
# is_kuratowski_upset: exhaustive (X, Y) pairs up to this many combinations
KURATOWSKI_EXHAUSTIVE_PAIRS = 1 << 12
KURATOWSKI_SAMPLES = 4096


def _env_int(name, default, hard_max):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return min(value, hard_max)


def carrier_cap():
    """Largest allowed carrier; ``QTL_SIZE_CAP`` overrides, clipped at 64."""
    return _env_int("QTL_SIZE_CAP", DEFAULT_CARRIER_CAP, MAX_CARRIER)


def enum_cap():
    return _env_int("QTL_ENUM_CAP", DEFAULT_ENUM_CAP, MAX_ENUM_CAP)
