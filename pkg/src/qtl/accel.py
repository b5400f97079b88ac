"""Kernel dispatch: numba when available, numpy otherwise.

Set ``QTL_DISABLE_NUMBA=1`` to force the numpy path.  The choice is made
once at import time; ``BACKEND`` names the active one.
"""

import os

from . import _kernels_numpy

BACKEND = "numpy"
_impl = _kernels_numpy

if os.environ.get("QTL_DISABLE_NUMBA", "").strip() not in ("1", "true", "yes"):
    try:
        from . import _kernels_numba
    except ImportError:  # pragma: no cover - numba missing
        pass
    else:
        BACKEND = "numba"
        _impl = _kernels_numba

OK = _kernels_numpy.OK
TOP_IDENTITY = _kernels_numpy.TOP_IDENTITY
COMMUTATIVITY = _kernels_numpy.COMMUTATIVITY
ASSOCIATIVITY = _kernels_numpy.ASSOCIATIVITY
DISTRIBUTIVITY = _kernels_numpy.DISTRIBUTIVITY
AXIOM_NAMES = {
    TOP_IDENTITY: "top-identity",
    COMMUTATIVITY: "commutativity",
    ASSOCIATIVITY: "associativity",
    DISTRIBUTIVITY: "distributivity",
}


def axiom_check(mul, join, top, bottom, exhaustive=True):
    return _impl.axiom_check(mul, join, int(top), int(bottom), bool(exhaustive))


def batch_axioms(tables, join, top, bottom):
    return _impl.batch_axioms(tables, join, int(top), int(bottom))


def hkp_failure(meet, leq, point_gens):
    return _impl.hkp_failure(meet, leq, point_gens)
