"""JSON files for operators, POVMs and channels.

Operator object::

    {"dims": [["a", 2], ["b", 2]], "re": [[...]], "im": [[...]]}

with row-major real and imaginary parts. A POVM file is
``{"subsystem": "a", "elements": [<operator>, ...]}`` (a bare array of
operator objects is also accepted). A channel file is
``{"input_dim": d_in, "output_dim": d_out, "kraus": [{"re": .., "im": ..}, ...]}``.
Numbers are written with 17 significant digits so values round-trip exactly.
"""

import json
import os
import tempfile

import numpy as np

from .channels import ChannelPair, KrausChannel, isometry_from_kraus, kraus_pair
from .config import TOL
from .errors import DimensionError, HolevoLabError, ValidationError
from .measurements import Povm, ensure_valid_povm
from .operators import DensityOperator, Operator, ensure_valid, make_dims


class FormatError(HolevoLabError, ValueError):
    """Malformed or inconsistent file contents."""


def _num(x):
    return format(float(x), ".17g")


def _matrix_text(m, indent):
    pad = " " * indent
    rows = ["[" + ", ".join(_num(x) for x in row) + "]" for row in m]
    return "[\n" + ",\n".join(pad + "  " + r for r in rows) + "\n" + pad + "]"


def _operator_text(matrix, dims=None, indent=0):
    pad = " " * indent
    parts = []
    if dims is not None:
        parts.append(f'{pad}  "dims": ' + json.dumps([[lab, d] for lab, d in dims]))
    parts.append(f'{pad}  "re": ' + _matrix_text(np.real(matrix), indent + 2))
    parts.append(f'{pad}  "im": ' + _matrix_text(np.imag(matrix), indent + 2))
    return "{\n" + ",\n".join(parts) + "\n" + pad + "}"


def atomic_write(path, text):
    """Write to a temporary file beside ``path``, then rename over it."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".holevolab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _complex_matrix(obj, where):
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{where}: expected numeric 're'/'im' matrices ({exc})") from exc
    if re.shape != im.shape or re.ndim != 2:
        raise FormatError(f"{where}: 're' {re.shape} and 'im' {im.shape} must be equal 2-d shapes")
    return re + 1j * im


# --------------------------------------------------------------------------
# operators


def dumps_operator(op: Operator) -> str:
    return _operator_text(op.matrix, op.dims) + "\n"


def write_operator(path, op: Operator):
    atomic_write(path, dumps_operator(op))


def operator_from_obj(obj, where="operator", density=True):
    if not isinstance(obj, dict) or "dims" not in obj:
        raise FormatError(f"{where}: expected an object with 'dims', 're', 'im'")
    try:
        dims = make_dims(obj["dims"])
    except (HolevoLabError, TypeError, ValueError) as exc:
        raise FormatError(f"{where}: bad dims {obj['dims']!r} ({exc})") from exc
    mat = _complex_matrix(obj, where)
    cls = DensityOperator if density else Operator
    try:
        return cls(mat, dims)
    except DimensionError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def read_operator(path) -> Operator:
    return operator_from_obj(_load(path), str(path), density=False)


def read_state(path, tol=1e-8) -> DensityOperator:
    """Density operator file, validated for hermiticity, positivity and unit trace."""
    rho = operator_from_obj(_load(path), str(path))
    try:
        ensure_valid(rho, tol)
    except ValidationError as exc:
        raise FormatError(f"{path}: not a density operator: {exc}") from exc
    return rho


# --------------------------------------------------------------------------
# POVMs


def dumps_povm(P: Povm) -> str:
    dims = ((P.label, P.dim),)
    items = ",\n".join("    " + _operator_text(e, dims, 4) for e in P.elements)
    return '{\n  "subsystem": ' + json.dumps(P.label) + ',\n  "elements": [\n' + items + "\n  ]\n}\n"


def write_povm(path, P: Povm):
    atomic_write(path, dumps_povm(P))


def read_povm(path, tol=1e-8) -> Povm:
    obj = _load(path)
    if isinstance(obj, list):
        items, label = obj, None
    elif isinstance(obj, dict) and "elements" in obj:
        items, label = obj["elements"], obj.get("subsystem")
    else:
        raise FormatError(f"{path}: expected a POVM object with 'elements' or an array")
    if not items:
        raise FormatError(f"{path}: POVM has no elements")
    ops = [operator_from_obj(it, f"{path}[{i}]", density=False) for i, it in enumerate(items)]
    if any(len(op.dims) != 1 for op in ops):
        raise FormatError(f"{path}: POVM elements must act on a single subsystem")
    labels = {op.dims[0][0] for op in ops}
    shapes = {op.dim for op in ops}
    if len(shapes) != 1:
        raise FormatError(f"{path}: POVM elements have different dimensions {sorted(shapes)}")
    label = label or (labels.pop() if len(labels) == 1 else "a")
    P = Povm(np.stack([op.matrix for op in ops]), label)
    try:
        ensure_valid_povm(P, tol)
    except ValidationError as exc:
        raise FormatError(f"{path}: not a POVM: {exc}") from exc
    return P


# --------------------------------------------------------------------------
# channels


def dumps_channel(channel: KrausChannel) -> str:
    items = ",\n".join("    " + _operator_text(K, None, 4) for K in channel.kraus)
    return ('{\n  "input_dim": ' + str(channel.d_in) + ',\n  "output_dim": '
            + str(channel.d_out) + ',\n  "kraus": [\n' + items + "\n  ]\n}\n")


def write_channel(path, channel: KrausChannel):
    atomic_write(path, dumps_channel(channel))


def read_channel(path, tol=TOL) -> ChannelPair:
    """Kraus channel file, checked for trace preservation.

    The environment dimension is the number of Kraus operators; the
    returned pair has the file's channel as its direct side.
    """
    obj = _load(path)
    if not isinstance(obj, dict) or "kraus" not in obj:
        raise FormatError(f"{path}: expected an object with 'kraus'")
    mats = [_complex_matrix(k, f"{path} kraus[{i}]") for i, k in enumerate(obj["kraus"])]
    if not mats or len({m.shape for m in mats}) != 1:
        raise FormatError(f"{path}: Kraus operators missing or of different shapes")
    d_out, d_in = mats[0].shape
    if obj.get("input_dim", d_in) != d_in or obj.get("output_dim", d_out) != d_out:
        raise FormatError(f"{path}: declared dims do not match Kraus shape {mats[0].shape}")
    channel = KrausChannel(np.stack(mats))
    res = channel.closure_residual()
    if res > tol:
        raise FormatError(f"{path}: Kraus operators are not trace preserving (residual {res:.3e})")
    return kraus_pair(isometry_from_kraus(channel))
