"""Registry of checked relations.

Every relation has a sampler that draws a random :class:`Instance` for a
dims triple and an evaluator that returns a list of :class:`Check` objects.
A check is either an equality (``lhs == rhs``) or an inequality written so
that it reads ``lhs >= rhs``; the reported result is the worst check.
"""

import math
from dataclasses import asdict, dataclass, replace
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .. import config
from ..channels import chi_channel, chi_channel_values, channel_entropy_bias, channel_ket, kraus_pair
from ..channels import random_isometry
from ..entropy import (
    STANDARD_KINDS,
    VON_NEUMANN,
    _shannon,
    conditional_entropy,
    entropy,
    is_infinite,
    mutual_info,
    relative_entropy,
)
from ..errors import EvaluatorAbort, LabelError, PreconditionError
from ..measurements import (
    basis,
    overlap_r,
    random_basis,
    random_povm,
    random_projective,
    random_rank1_povm,
    random_unitary,
    rotate,
    qubit_mub_triple,
    unbiased_partner,
)
from ..measures import (
    chi_location,
    chi_values,
    missing_info,
    outcome_probabilities,
    pinch_channel,
    shannon_mutual_info,
    truncate,
)
from ..operators import partial_trace
from .instances import (
    Instance,
    perfect_presence_state,
    present_and_absent_state,
    random_mixed_state,
    random_pure_state,
)

EQ, GE = "eq", "ge"
PURITY_TOL = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    lhs: float
    rhs: float
    mode: str  # EQ or GE (lhs >= rhs)


@dataclass(frozen=True)
class RelationResult:
    """Worst check of one evaluation. ``slack = lhs - rhs``."""

    relation: str
    check: str
    mode: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    tolerance: float
    seed: Optional[int] = None
    dims: Optional[Tuple[int, int, int]] = None
    checks: int = 1

    def to_dict(self):
        out = asdict(self)
        out["dims"] = list(self.dims) if self.dims is not None else None
        return out


@dataclass(frozen=True)
class Relation:
    id: str
    description: str
    sampler: Callable
    evaluator: Callable
    roles: Tuple[str, ...] = ()
    needs_channel: bool = False
    needs_square_b: bool = False  # constructions that embed d_a blocks in b
    kinds: Tuple = (VON_NEUMANN,)

    def applicable(self, dims):
        d_a, d_b, d_c = dims
        if self.needs_square_b and d_b < d_a:
            return f"needs d_b >= d_a, got {dims}"
        if self.needs_channel and d_a > d_b * d_c:
            return f"no isometry from {d_a} into {d_b}x{d_c}"
        return None


REGISTRY: Dict[str, Relation] = {}


def _register(id, description, roles=(), needs_channel=False, needs_square_b=False,
              kinds=(VON_NEUMANN,)):
    def wrap(pair):
        sampler, evaluator = pair
        REGISTRY[id] = Relation(id, description, sampler, evaluator, tuple(roles),
                                needs_channel, needs_square_b, tuple(kinds))
        return pair
    return wrap


def relation_ids():
    return tuple(REGISTRY)


# --------------------------------------------------------------------------
# evaluation


def _margin(check, tol_eq, tol_ineq):
    slack = check.lhs - check.rhs
    if check.mode == EQ:
        return tol_eq - abs(slack)
    return slack + tol_ineq


def evaluate(relation, inst: Instance, tol_eq=1e-8, tol_ineq=1e-9) -> RelationResult:
    """Evaluate every check of ``relation`` on ``inst`` and report the worst."""
    if relation not in REGISTRY:
        raise LabelError(f"unknown relation {relation!r}; known: {', '.join(REGISTRY)}")
    checks = REGISTRY[relation].evaluator(inst)
    worst, worst_margin = None, math.inf
    for c in checks:
        if is_infinite(c.lhs) or is_infinite(c.rhs):
            if c.mode == GE and is_infinite(c.lhs) and not is_infinite(c.rhs):
                continue  # +inf on the larger side always holds
            raise EvaluatorAbort(f"{relation}/{c.name}: infinite value on the smaller side")
        if not (np.isfinite(c.lhs) and np.isfinite(c.rhs)):
            raise EvaluatorAbort(f"{relation}/{c.name}: non-finite value {c.lhs}, {c.rhs}")
        m = _margin(c, tol_eq, tol_ineq)
        if worst is None or m < worst_margin:
            worst, worst_margin = c, m
    if worst is None:
        raise EvaluatorAbort(f"{relation}: evaluator produced no finite checks")
    tol = tol_eq if worst.mode == EQ else tol_ineq
    return RelationResult(relation, worst.name, worst.mode, float(worst.lhs), float(worst.rhs),
                          float(worst.lhs - worst.rhs), bool(worst_margin >= 0), tol,
                          inst.seed, tuple(inst.dims), len(checks))


def sample(relation, dims, seed) -> Instance:
    rng = np.random.default_rng(seed)
    rel = REGISTRY[relation]
    inst = rel.sampler(tuple(dims), rng)
    return replace(inst, dims=tuple(dims), seed=seed, kinds=rel.kinds)


# --------------------------------------------------------------------------
# helpers


def _log(x):
    return config.log(x)


def _h(P, rho):
    """Shannon entropy of the outcome distribution of ``P`` on ``rho``."""
    return _shannon(outcome_probabilities(P, rho))


def _h_channel(P):
    """``H(P)`` for the input ensemble ``p_j = Tr(P_j)/d``."""
    return _shannon(np.real(np.einsum("jii->j", P.elements)) / P.dim)


def _state(inst, labels=("a", "b", "c"), pure=False, which="state"):
    rho = getattr(inst, which)
    if rho is None:
        raise PreconditionError(f"relation needs a {'pure ' if pure else ''}state on {labels}")
    if tuple(rho.labels) != tuple(labels):
        raise PreconditionError(f"relation needs a state on {labels}, got {rho.labels}")
    if pure:
        purity = float(np.real(np.trace(rho.matrix @ rho.matrix)))
        if abs(purity - 1.0) > PURITY_TOL:
            raise PreconditionError(f"relation needs a pure state (purity {purity:.9f})")
    return rho


def _channel(inst):
    if inst.channel is None:
        raise PreconditionError("relation needs a channel")
    return inst.channel


def _role(inst, name, rank1=False, basis_like=False, dim=None):
    if name not in inst.povms:
        raise PreconditionError(f"relation needs a POVM in role {name!r}")
    P = inst.povms[name]
    if dim is not None and P.dim != dim:
        raise PreconditionError(f"POVM {name!r} has dimension {P.dim}, expected {dim}")
    if (rank1 or basis_like) and not P.is_rank1():
        raise PreconditionError(f"POVM {name!r} must be rank-1")
    if basis_like and P.n != P.dim:
        raise PreconditionError(f"POVM {name!r} must be an orthonormal basis")
    return P


def _as_basis(P):
    """Orthonormal basis from a rank-1 projective POVM (used for MU partners)."""
    if hasattr(P, "vectors") and P.vectors is not None:
        return P
    vals, vecs = np.linalg.eigh(P.elements)
    return basis(vecs[:, :, -1].T, P.label)


def _require_mub(v, w, tol=1e-8):
    r = overlap_r(v, w)
    if abs(r - 1.0 / v.dim) > tol:
        raise PreconditionError(f"bases are not mutually unbiased (r = {r:.9f})")


def _rank1_count(d, rng):
    return int(rng.integers(d + 1, 2 * d + 1))


def _general(d, rng):
    return random_povm(d, int(rng.integers(2, d + 2)), rng)


def _partner(w, rng):
    return unbiased_partner(w, rng.uniform(0, 2 * np.pi, w.dim))


# --------------------------------------------------------------------------
# relations


def _s_lemma1(dims, rng):
    d_a, d_b, _ = dims
    rho = random_mixed_state((d_a, d_b), rng, labels=("a", "b"))
    return Instance(dims, rho, povms={"P": _general(d_a, rng),
                                      "Q": _general(d_b, rng).relabel("b")})


def _e_lemma1(inst):
    rho = _state(inst, ("a", "b"))
    P = _role(inst, "P")
    Q = inst.povms.get("Q")
    if Q is None or Q.label != "b":
        raise PreconditionError("relation needs a POVM on b in role 'Q'")
    chi = chi_location(P, rho, over="b")
    hpq = shannon_mutual_info(P, Q, rho)
    hp = _h(P, rho)
    s_a, s_b = entropy(partial_trace(rho, "a")), entropy(partial_trace(rho, "b"))
    return [
        Check("chi>=H(P:Q)", chi, hpq, GE),
        Check("S(a)>=chi", s_a, chi, GE),
        Check("S(b)>=chi", s_b, chi, GE),
        Check("S(a:b)>=chi", mutual_info(rho, "a", "b"), chi, GE),
        Check("H(P)>=chi", hp, chi, GE),
        Check("H(P|b)>=0", missing_info(P, rho, over="b"), 0.0, GE),
        Check("H(P|Q)>=H(P|b)", hp - hpq, missing_info(P, rho, over="b"), GE),
    ]


_register("lemma1_chain", "Holevo bound chain and 0 <= H(P|b) <= H(P|Q)", ("P", "Q"))(
    (_s_lemma1, _e_lemma1))


def _s_thm2(dims, rng):
    d_a, d_b, _ = dims
    psi = random_pure_state((d_a, d_b), rng, labels=("a", "b"))
    return Instance(dims, psi.density(),
                    povms={"w": random_basis(d_a, rng),
                           "N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng)})


def _e_thm2(inst):
    rho = _state(inst, ("a", "b"), pure=True)
    rho_a = partial_trace(rho, "a")
    out = []
    for name, P in inst.povms.items():
        if not P.is_rank1():
            raise PreconditionError(f"POVM {name!r} must be rank-1")
        for kind, chi in zip(inst.kinds, chi_values(P, rho, inst.kinds, over="b")):
            out.append(Check(f"chi_{kind}({name},b)=S_{kind}(a)", chi, entropy(rho_a, kind), EQ))
    return out


_register("thm2_basis_invariance", "chi_K(w,b) = chi_K(N,b) = S_K(a) on pure ab", ("w", "N"),
          kinds=STANDARD_KINDS)(
    (_s_thm2, _e_thm2))


def _s_thm3(dims, rng):
    d_a, d_b, d_c = dims
    psi = random_pure_state(dims, rng)
    povms = {}
    for i in range(5):
        povms[f"w{i}"] = random_basis(d_a, rng)
    for i in range(5):
        povms[f"N{i}"] = random_rank1_povm(d_a, _rank1_count(d_a, rng), rng)
    channel = kraus_pair(random_isometry(d_a, d_b, d_c, rng)) if d_a <= d_b * d_c else None
    return Instance(dims, psi.density(), channel, povms=povms)


def _e_thm3(inst):
    rho = _state(inst, pure=True)
    rb, rc = partial_trace(rho, "b"), partial_trace(rho, "c")
    bias = {k: entropy(rb, k) - entropy(rc, k) for k in inst.kinds}
    ch_bias = None
    if inst.channel is not None:
        ch_bias = {k: channel_entropy_bias(inst.channel.isometry, k) for k in inst.kinds}
    out = []
    for name, P in inst.povms.items():
        if not P.is_rank1():
            raise PreconditionError(f"POVM {name!r} must be rank-1")
        cb = chi_values(P, rho, inst.kinds, over="b")
        cc = chi_values(P, rho, inst.kinds, over="c")
        for kind, x, y in zip(inst.kinds, cb, cc):
            out.append(Check(f"dchi_{kind}({name};b,c)=dS", x - y, bias[kind], EQ))
        if ch_bias is not None:
            eb = chi_channel_values(P, inst.channel, "direct", inst.kinds)
            fc = chi_channel_values(P, inst.channel, "complementary", inst.kinds)
            for kind, x, y in zip(inst.kinds, eb, fc):
                out.append(Check(f"dchi_{kind}({name};E,F)=dS(E,F)", x - y, ch_bias[kind], EQ))
    return out


_register("thm3_bias_invariance", "information bias equals entropy bias on pure abc",
          ("w0", "N0"), kinds=STANDARD_KINDS)((_s_thm3, _e_thm3))


def _random_ranks(d, rng):
    k = int(rng.integers(1, d + 1))
    cuts = np.sort(rng.choice(np.arange(1, d), size=k - 1, replace=False)) if k > 1 else []
    edges = [0, *cuts, d]
    return [int(edges[i + 1] - edges[i]) for i in range(k)]


def _s_lemma4_eq(dims, rng):
    d_a = dims[0]
    psi = random_pure_state(dims, rng)
    ranks = _random_ranks(d_a, rng)
    return Instance(dims, psi.density(), povms={"Pi": random_projective(d_a, ranks, rng)})


def _truncation_gap(P, rho_abc):
    rho_ab = partial_trace(rho_abc, ("a", "b"))
    return relative_entropy(rho_ab.matrix, truncate(P, rho_ab))


def _e_lemma4_eq(inst):
    rho = _state(inst, pure=True)
    P = _role(inst, "Pi")
    sq = np.einsum("jab,jbc->jac", P.elements, P.elements)
    if np.max(np.abs(sq - P.elements)) > 1e-9:
        raise PreconditionError("role 'Pi' must be a projective decomposition")
    return [Check("H(Pi|c)=S(rho_ab||pinched)", missing_info(P, rho, over="c"),
                  _truncation_gap(P, rho), EQ)]


_register("lemma4_truncation_eq", "H(Pi|c) equals the truncation relative entropy on pure abc",
          ("Pi",))((_s_lemma4_eq, _e_lemma4_eq))


def _s_lemma4_ineq(dims, rng):
    d_a = dims[0]
    rho = random_mixed_state(dims, rng)
    return Instance(dims, rho, povms={
        "P": _general(d_a, rng),
        "N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng),
        "Pi": random_projective(d_a, _random_ranks(d_a, rng), rng),
    })


def _e_lemma4_ineq(inst):
    rho = _state(inst)
    return [Check(f"H({name}|c)>=S(rho_ab||sum P rho P)", missing_info(P, rho, over="c"),
                  _truncation_gap(P, rho), GE) for name, P in inst.povms.items()]


_register("lemma4_truncation_ineq", "H(P|c) bounds the truncation relative entropy", ("P",))(
    (_s_lemma4_ineq, _e_lemma4_ineq))


def _s_thm5_povm(dims, rng):
    d_a = dims[0]
    return Instance(dims, random_mixed_state(dims, rng), povms={
        "P": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng), "Q": _general(d_a, rng)})


def _e_thm5_povm(inst):
    rho = _state(inst)
    P, Q = _role(inst, "P"), _role(inst, "Q")
    bound = _log(1.0 / overlap_r(P, Q))
    return [
        Check("H(P|b)+H(Q|c)>=log 1/r", missing_info(P, rho, "b") + missing_info(Q, rho, "c"),
              bound, GE),
        Check("H(Q|b)+H(P|c)>=log 1/r", missing_info(Q, rho, "b") + missing_info(P, rho, "c"),
              bound, GE),
    ]


_register("thm5_povm", "H(P|b) + H(Q|c) >= log 1/r(P,Q)", ("P", "Q"))(
    (_s_thm5_povm, _e_thm5_povm))


def _s_thm5_single(dims, rng):
    d_a = dims[0]
    return Instance(dims, random_mixed_state(dims, rng), povms={
        "P": _general(d_a, rng), "N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng)})


def _e_thm5_single(inst):
    rho = _state(inst)
    out = []
    for name, P in inst.povms.items():
        bound = _log(1.0 / math.sqrt(overlap_r(P, P)))
        out.append(Check(f"H({name}|b)>=log 1/sqrt r", missing_info(P, rho, "b"), bound, GE))
        out.append(Check(f"H({name})>=chi+log 1/sqrt r", _h(P, rho),
                         chi_location(P, rho, over="b") + bound, GE))
    return out


_register("thm5_single", "H(P|b) >= log 1/sqrt r(P,P)", ("P",))((_s_thm5_single, _e_thm5_single))


def _s_thm5_bases(dims, rng):
    d_a = dims[0]
    return Instance(dims, random_mixed_state(dims, rng),
                    povms={"v": random_basis(d_a, rng), "w": random_basis(d_a, rng)})


def _e_thm5_bases(inst):
    rho = _state(inst)
    v, w = _role(inst, "v", basis_like=True), _role(inst, "w", basis_like=True)
    bound = _log(1.0 / overlap_r(v, w))
    return [
        Check("H(v|b)+H(w|c)>=log 1/r", missing_info(v, rho, "b") + missing_info(w, rho, "c"),
              bound, GE),
        Check("H(w|b)+H(v|c)>=log 1/r", missing_info(w, rho, "b") + missing_info(v, rho, "c"),
              bound, GE),
    ]


_register("thm5_bases", "H(v|b) + H(w|c) >= log 1/r(v,w) for bases", ("v", "w"))(
    (_s_thm5_bases, _e_thm5_bases))


def _s_thm5_mub(dims, rng):
    d_a = dims[0]
    w = random_basis(d_a, rng)
    return Instance(dims, random_mixed_state(dims, rng), povms={"v": _partner(w, rng), "w": w})


def _e_thm5_mub(inst):
    rho = _state(inst)
    v, w = _role(inst, "v", basis_like=True), _role(inst, "w", basis_like=True)
    _require_mub(v, w)
    bound = _log(v.dim)
    return [
        Check("H(v|b)+H(w|c)>=log d", missing_info(v, rho, "b") + missing_info(w, rho, "c"),
              bound, GE),
        Check("H(w|b)+H(v|c)>=log d", missing_info(w, rho, "b") + missing_info(v, rho, "c"),
              bound, GE),
    ]


_register("thm5_mub", "H(v|b) + H(w|c) >= log d for unbiased bases", ("v", "w"))(
    (_s_thm5_mub, _e_thm5_mub))


def _s_cor6(dims, rng):
    d_a, d_b, d_c = dims
    return Instance(dims, channel=kraus_pair(random_isometry(d_a, d_b, d_c, rng)), povms={
        "P": _general(d_a, rng), "Q": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng),
        "v": random_basis(d_a, rng), "w": random_basis(d_a, rng)})


def _e_cor6(inst):
    pair = _channel(inst)
    d = pair.isometry.d_a
    P, Q = _role(inst, "P", dim=d), _role(inst, "Q", dim=d)
    v, w = _role(inst, "v", basis_like=True), _role(inst, "w", basis_like=True)
    m = unbiased_partner(_as_basis(w))
    out = []
    for name, X in (("P", P), ("Q", Q)):
        out.append(Check(f"H({name})-log 1/sqrt r>=chi({name},E)",
                         _h_channel(X) - _log(1.0 / math.sqrt(overlap_r(X, X))),
                         chi_channel(X, pair), GE))
    for (n1, X), (n2, Y) in ((("P", P), ("Q", Q)), (("Q", Q), ("P", P))):
        out.append(Check(f"H({n1})+H({n2})-log 1/r>=chi({n1},E)+chi({n2},F)",
                         _h_channel(X) + _h_channel(Y) - _log(1.0 / overlap_r(X, Y)),
                         chi_channel(X, pair) + chi_channel(Y, pair, "complementary"), GE))
    out.append(Check("log d^2 r>=chi(v,E)+chi(w,F)", _log(d * d * overlap_r(v, w)),
                     chi_channel(v, pair) + chi_channel(w, pair, "complementary"), GE))
    out.append(Check("log d>=chi(mub,E)+chi(w,F)", _log(d),
                     chi_channel(m, pair) + chi_channel(w, pair, "complementary"), GE))
    return out


_register("cor6_channel", "exclusion relations for complementary channels",
          ("P", "Q", "v", "w"), needs_channel=True)((_s_cor6, _e_cor6))


def _s_cor7(dims, rng):
    d_a = dims[0]
    rho = random_mixed_state((d_a,), rng, labels=("a",))
    povms = {"N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng), "P": _general(d_a, rng)}
    if d_a == 2:
        U = random_unitary(2, rng)
        for name, B in zip("xyz", qubit_mub_triple()):
            povms[name] = rotate(B, U)
    return Instance(dims, rho, povms=povms)


def _e_cor7(inst):
    rho = _state(inst, ("a",))
    N, P = _role(inst, "N", rank1=True), _role(inst, "P")
    s = entropy(rho)
    out = [
        Check("H(N)>=log 1/sqrt r+S", _h(N, rho), _log(1.0 / math.sqrt(overlap_r(N, N))) + s, GE),
        Check("H(N)+H(P)>=log 1/r+S", _h(N, rho) + _h(P, rho), _log(1.0 / overlap_r(N, P)) + s,
              GE),
    ]
    if rho.dim == 2 and all(k in inst.povms for k in "xyz"):
        total = sum(_h(inst.povms[k], rho) for k in "xyz")
        out.append(Check("H(x)+H(y)+H(z)>=2 log 2+S", total, 2 * _log(2) + s, GE))
    return out


_register("cor7_single_system", "single-system uncertainty relations with S(rho)", ("N", "P"))(
    (_s_cor7, _e_cor7))


def _s_thm8(dims, rng):
    d_a, d_b, _ = dims
    w = random_basis(d_a, rng)
    return Instance(dims, random_mixed_state((d_a, d_b), rng, labels=("a", "b")), povms={
        "P": _general(d_a, rng),
        "M": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng),
        "N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng),
        "w": w, "u": _partner(w, rng), "v": _partner(w, rng)})


def _e_thm8(inst):
    rho = _state(inst, ("a", "b"))
    P = _role(inst, "P")
    M, N = _role(inst, "M", rank1=True), _role(inst, "N", rank1=True)
    w = _role(inst, "w", basis_like=True)
    u, v = _role(inst, "u", basis_like=True), _role(inst, "v", basis_like=True)
    _require_mub(u, w)
    _require_mub(v, w)
    hp = missing_info(P, rho, "b")
    hm, hn = _h(M, rho), _h(N, rho)
    lpm, lpn = _log(1.0 / overlap_r(P, M)), _log(1.0 / overlap_r(P, N))
    chi_m, chi_n = chi_location(M, rho, over="b"), chi_location(N, rho, over="b")
    hw = missing_info(w, rho, "b")
    return [
        Check("|chi(M,b)-chi(N,b)| bound", hp + max(hm - lpm, hn - lpn), abs(chi_m - chi_n), GE),
        Check("|H(M|b)-H(N|b)| bound", hp + max(hm - lpn, hn - lpm),
              abs((hm - chi_m) - (hn - chi_n)), GE),
        Check("H(w|b)>=|chi(u,b)-chi(v,b)|", hw,
              abs(chi_location(u, rho, over="b") - chi_location(v, rho, over="b")), GE),
        Check("H(w|b)>=|H(u|b)-H(v|b)|", hw,
              abs(missing_info(u, rho, "b") - missing_info(v, rho, "b")), GE),
    ]


_register("thm8_suppression", "presence of P suppresses differences between M and N",
          ("P", "M", "N", "w", "u", "v"))((_s_thm8, _e_thm8))


def _s_thm8_eq(dims, rng):
    d_a, d_b, d_c = dims
    rho, w = perfect_presence_state(d_a, d_b, d_c, rng)
    return Instance(dims, partial_trace(rho, ("a", "b")),
                    povms={"w": w, "u": _partner(w, rng), "v": _partner(w, rng)})


def _e_thm8_eq(inst):
    rho = _state(inst, ("a", "b"))
    w = _role(inst, "w", basis_like=True)
    out = [Check("H(w|b)=0", missing_info(w, rho, "b"), 0.0, EQ)]
    rb = partial_trace(rho, "b")
    s_ab = {k: entropy(rho, k) for k in inst.kinds}
    s_b = {k: entropy(rb, k) for k in inst.kinds}
    target_h = _log(w.dim) + conditional_entropy(rho, "a", "b")
    for name in ("u", "v"):
        X = _role(inst, name, basis_like=True)
        _require_mub(X, w)
        for kind, chi in zip(inst.kinds, chi_values(X, rho, inst.kinds, over="b")):
            out.append(Check(f"chi_{kind}({name},b)=S_{kind}(b)-S_{kind}(ab)", chi,
                             s_b[kind] - s_ab[kind], EQ))
        out.append(Check(f"H({name}|b)=log d+S(a|b)", missing_info(X, rho, "b"), target_h, EQ))
    return out


_register("thm8_equal_presence", "types unbiased to a perfectly present w are equally present",
          ("w", "u", "v"), needs_square_b=True, kinds=STANDARD_KINDS)((_s_thm8_eq, _e_thm8_eq))


def _s_cor9(dims, rng):
    d_a, d_b, d_c = dims
    channel = kraus_pair(random_isometry(d_a, d_b, d_c, rng)) if d_a <= d_b * d_c else None
    return Instance(dims, random_mixed_state(dims, rng), channel,
                    povms={f"w{i}": random_basis(d_a, rng) for i in range(3)})


def _e_cor9(inst):
    rho = _state(inst)
    bases = []
    for name in sorted(inst.povms):
        w = _as_basis(_role(inst, name, basis_like=True))
        bases += [(name, w), (name + "'", unbiased_partner(w))]
    alpha = max(missing_info(w, rho, "b") for _, w in bases)
    out = [Check(f"alpha>=chi({n},c)", alpha, chi_location(w, rho, over="c"), GE)
           for n, w in bases]
    if inst.channel is not None:
        d = inst.channel.isometry.d_a
        alpha_ch = _log(d) - min(chi_channel(w, inst.channel) for _, w in bases)
        out += [Check(f"alpha'>=chi({n},F)", alpha_ch,
                      chi_channel(w, inst.channel, "complementary"), GE) for n, w in bases]
    return out


_register("cor9_no_splitting", "near-perfect presence in b bounds information in c", ("w0",))(
    (_s_cor9, _e_cor9))


def _s_thm10(dims, rng):
    d_a, d_b, d_c = dims
    return Instance(dims, random_mixed_state(dims, rng),
                    kraus_pair(random_isometry(d_a, d_b, d_c, rng)), povms={
                        "N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng),
                        "P": _general(d_a, rng),
                        "M": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng),
                        "u": random_basis(d_a, rng), "v": random_basis(d_a, rng),
                        "w": random_basis(d_a, rng), "x": random_basis(d_a, rng)})


def _e_thm10(inst):
    rho = _state(inst)
    pair = _channel(inst)
    N, P, M = _role(inst, "N", rank1=True), _role(inst, "P"), _role(inst, "M", rank1=True)
    u, v = _role(inst, "u", basis_like=True), _role(inst, "v", basis_like=True)
    w, x = _role(inst, "w", basis_like=True), _role(inst, "x", basis_like=True)
    d = pair.isometry.d_a
    s_ab = conditional_entropy(rho, "a", "b")
    out = [
        Check("H(N|b)+H(P|b)>=log 1/r+S(a|b)", missing_info(N, rho, "b") + missing_info(P, rho, "b"),
              _log(1.0 / overlap_r(N, P)) + s_ab, GE),
        Check("chi(M,b)>=-S(a|b)", chi_location(M, rho, over="b"), -s_ab, GE),
        Check("H(M|c)>=-S(a|b)", missing_info(M, rho, "c"), -s_ab, GE),
    ]
    ce = {k: chi_channel(B, pair) for k, B in (("u", u), ("v", v), ("w", w))}
    cf_u = chi_channel(u, pair, "complementary")
    dchi = chi_channel(x, pair) - chi_channel(x, pair, "complementary")
    r_vw = overlap_r(v, w)
    out += [
        Check("chi(u,E)>=dchi(E,F)", ce["u"], dchi, GE),
        Check("dchi(E,F)>=chi(v,E)+chi(w,E)-log d^2 r", dchi,
              ce["v"] + ce["w"] - _log(d * d * r_vw), GE),
        Check("log d^3 r-chi(v,E)-chi(w,E)>=chi(u,F)", _log(d ** 3 * r_vw) - ce["v"] - ce["w"],
              cf_u, GE),
    ]
    mv = _as_basis(v)
    mw = unbiased_partner(mv)
    hsum = missing_info(mv, rho, "b") + missing_info(mw, rho, "b")
    out += [
        Check("S(a:b)>=2 log d-2[H(v|b)+H(w|b)]", mutual_info(rho, "a", "b"),
              2 * _log(d) - 2 * hsum, GE),
        Check("H(v|b)+H(w|b)>=S(a:c)", hsum, mutual_info(rho, "a", "c"), GE),
    ]
    return out


_register("thm10_presence", "presence of incompatible types in b decouples c",
          ("N", "P", "M", "u", "v", "w", "x"), needs_channel=True)((_s_thm10, _e_thm10))


def _s_thm11_dec(dims, rng):
    d_a, d_b, d_c = dims
    present, w = perfect_presence_state(d_a, d_b, d_c, rng)
    return Instance(dims, random_mixed_state(dims, rng), aux_state=present,
                    povms={
                        "N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng), "w": w,
                        "P": _general(d_a, rng)})


def _e_thm11_dec(inst):
    rho = _state(inst)
    N = _role(inst, "N", rank1=True)
    out = [Check("chi(N,c)+H(N|b)-log 1/sqrt r>=S(a:c)",
                 chi_location(N, rho, over="c") + missing_info(N, rho, "b")
                 - _log(1.0 / math.sqrt(overlap_r(N, N))), mutual_info(rho, "a", "c"), GE)]
    present = inst.aux_state
    if present is not None:
        w, P = _role(inst, "w", basis_like=True), _role(inst, "P")
        out.append(Check("H(w|b)=0 on constructed state", missing_info(w, present, "b"), 0.0, EQ))
        cw = chi_values(w, present, inst.kinds, over="c")
        cp = chi_values(P, present, inst.kinds, over="c")
        out += [Check(f"chi_{k}(w,c)>=chi_{k}(P,c)", a, b, GE)
                for k, a, b in zip(inst.kinds, cw, cp)]
    return out


_register("thm11_decoupling", "information in c is bounded by a type present in b", ("N",),
          needs_square_b=True, kinds=STANDARD_KINDS)((_s_thm11_dec, _e_thm11_dec))


def _s_thm11_pure(dims, rng):
    d_a, d_b, d_c = dims
    psi = random_pure_state(dims, rng)
    special, w = present_and_absent_state(d_a, d_b, d_c, rng)
    return Instance(dims, psi.density(), aux_state=special.density(), povms={
        "L": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng),
        "M": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng),
        "N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng), "w": w})


def _e_thm11_pure(inst):
    rho = _state(inst, pure=True)
    L, M, N = (_role(inst, k, rank1=True) for k in "LMN")
    out = [Check("chi(N,c)+H(N|b)-log 1/sqrt r>=|chi(L,b)-chi(M,b)|",
                 chi_location(N, rho, over="c") + missing_info(N, rho, "b")
                 - _log(1.0 / math.sqrt(overlap_r(N, N))),
                 abs(chi_location(L, rho, over="b") - chi_location(M, rho, over="b")), GE)]
    special = inst.aux_state
    if special is not None:
        w = _role(inst, "w", basis_like=True)
        s_a = entropy(partial_trace(special, "a"))
        out += [Check("H(w|b)=0 on constructed state", missing_info(w, special, "b"), 0.0, EQ),
                Check("chi(w,c)=0 on constructed state", chi_location(w, special, over="c"),
                      0.0, EQ)]
        out += [Check(f"chi({k},b)=S(a) on constructed state",
                      chi_location(inst.povms[k], special, over="b"), s_a, EQ) for k in "LMN"]
    return out


_register("thm11_pure", "pure-state suppression of differences in b", ("L", "M", "N"),
          needs_square_b=True)((_s_thm11_pure, _e_thm11_pure))


def _s_thm11_channel(dims, rng):
    d_a, d_b, d_c = dims
    return Instance(dims, channel=kraus_pair(random_isometry(d_a, d_b, d_c, rng)),
                    povms={"v": random_basis(d_a, rng), "w": random_basis(d_a, rng)})


def _e_thm11_channel(inst):
    pair = _channel(inst)
    v, w = _role(inst, "v", basis_like=True), _role(inst, "w", basis_like=True)
    d = pair.isometry.d_a
    ve, vf = chi_channel(v, pair), chi_channel(v, pair, "complementary")
    we, wf = chi_channel(w, pair), chi_channel(w, pair, "complementary")
    return [Check("chi(w,F)+log d-chi(w,E)>=chi(v,F)", wf + _log(d) - we, vf, GE),
            Check("chi(v,E)>=chi(w,E)-chi(w,F)", ve, we - wf, GE)]


_register("thm11_channel", "decoupling relations for complementary channels", ("v", "w"),
          needs_channel=True)((_s_thm11_channel, _e_thm11_channel))


def _s_ssa(dims, rng):
    return Instance(dims, random_mixed_state(dims, rng))


def _e_ssa(inst):
    rho = _state(inst)
    s = {g: entropy(partial_trace(rho, g)) for g in ("ab", "bc", "b")}
    return [Check("S(ab)+S(bc)>=S(abc)+S(b)", s["ab"] + s["bc"], entropy(rho) + s["b"], GE),
            Check("S(a:bc)>=S(a:b)", mutual_info(rho, "a", "bc"), mutual_info(rho, "a", "b"), GE)]


_register("eq33_ssa", "strong subadditivity", ())((_s_ssa, _e_ssa))


def _s_eq37(dims, rng):
    d_a = dims[0]
    return Instance(dims, random_mixed_state(dims, rng), povms={
        "P": _general(d_a, rng), "N": random_rank1_povm(d_a, _rank1_count(d_a, rng), rng)})


def _e_eq37(inst):
    rho = _state(inst)
    return [Check(f"chi({name},bc)>=chi({name},b)", chi_location(P, rho, over="bc"),
                  chi_location(P, rho, over="b"), GE) for name, P in inst.povms.items()]


_register("eq37_subsystem", "chi(P,bc) >= chi(P,b) for von Neumann entropy", ("P",))(
    (_s_eq37, _e_eq37))


def _s_pinch(dims, rng):
    d_a = dims[0]
    return Instance(dims, random_mixed_state(dims, rng), povms={"P": _general(d_a, rng)})


def _e_pinch(inst):
    rho = _state(inst)
    P = _role(inst, "P")
    out = []
    for over in ("b", "bc"):
        pinched = pinch_channel(P, rho, over=over)
        rest = tuple(over)
        out.append(Check(f"H(P|{over})=S(e|{over}) of pinched state", missing_info(P, rho, over),
                         conditional_entropy(pinched, "e", rest), EQ))
    return out


_register("pinching_identity", "H(P|b) equals S(e|b) of the pinched state", ("P",))(
    (_s_pinch, _e_pinch))


def _s_duality(dims, rng):
    d_a, d_b, d_c = dims
    return Instance(dims, channel=kraus_pair(random_isometry(d_a, d_b, d_c, rng)),
                    povms={"P": _general(d_a, rng)})


def _e_duality(inst):
    pair = _channel(inst)
    P = _role(inst, "P", dim=pair.isometry.d_a)
    omega = channel_ket(pair.isometry).density()
    Pt = P.transpose()
    return [Check("chi(P^T,E)=chi(P,b) on channel ket", chi_channel(Pt, pair),
                  chi_location(P, omega, over="b"), EQ),
            Check("chi(P^T,F)=chi(P,c) on channel ket", chi_channel(Pt, pair, "complementary"),
                  chi_location(P, omega, over="c"), EQ)]


_register("channel_duality", "channel-side chi equals state-side chi on the channel ket", ("P",),
          needs_channel=True)((_s_duality, _e_duality))
