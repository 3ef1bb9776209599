"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ANTIFLAT_PURE_PYTHON=1
to force the reference implementation.
"""
import os

from . import _pykernels

_c = None
if os.environ.get("ANTIFLAT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c
    except ImportError:
        _c = None

BACKEND = "cython" if _c is not None else "python"
_impl = _c if _c is not None else _pykernels

apply_circuit = _impl.apply_circuit
metropolis_block = _impl.metropolis_block
bh_log_density = _impl.bh_log_density
betacf = _impl.betacf

OPCODES = {
    "H": _pykernels.H,
    "S": _pykernels.S,
    "SDG": _pykernels.SDG,
    "X": _pykernels.X,
    "Y": _pykernels.Y,
    "Z": _pykernels.Z,
    "CX": _pykernels.CX,
    "CZ": _pykernels.CZ,
    "SWAP": _pykernels.SWAP,
    "PHASE": _pykernels.PHASE,
}


def backends():
    """Available kernel modules keyed by name (for tests and benchmarks)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
