"""Global numerical settings.

The logarithm base is held in a context variable so that threads and
``with log_base(...)`` blocks do not interfere with each other.
"""

import contextlib
import contextvars
import math

# Eigenvalues with |lambda| <= CLIP are exact zeros for log/support purposes.
CLIP = 1e-12
# Hermiticity, positivity, trace and completeness checks.
TOL = 1e-10
# Support containment for relative entropy; looser than CLIP on purpose.
SUPPORT_TOL = 1e-8
# Marginal checks that chain eigensolver noise over a whole tripartite space.
MARGINAL_TOL = 1e-8

_log_base = contextvars.ContextVar("holevolab_log_base", default=2.0)


def get_log_base():
    return _log_base.get()


def set_log_base(base):
    """Set the logarithm base for the current context. ``"e"`` means natural log."""
    _log_base.set(_parse_base(base))


@contextlib.contextmanager
def log_base(base):
    token = _log_base.set(_parse_base(base))
    try:
        yield
    finally:
        _log_base.reset(token)


def log_scale():
    """Factor converting natural logs to the active base."""
    return 1.0 / math.log(get_log_base())


def log(x):
    return math.log(x) * log_scale()


def _parse_base(base):
    if base in ("e", "E"):
        return math.e
    value = float(base)
    if value <= 0 or value == 1:
        raise ValueError(f"invalid log base {base!r}")
    return value
