"""Comfortability: how much amplitude an embedding stores.

For one inflow the energy splits into an island part and a bridge part,
both functions of Q = S - dI alone.  Averaging over a uniformly random
single-tail inflow collapses to traces of QQ* and QQ*sigma, which reduce
to sums over faces weighted by face length and by self-intersection
distances.  The a -> 1 scaling limit of the average exposes the genus.

Normalization.  The tails number twice the arcs of the underlying graph
(one per island arc of the covered blow-up), and every average here is the
sum over all tails divided by the number of base arcs |A|: that is the
normalization under which the a -> 0 average is 3 and the a -> 1 limit is
(|F|/|E|)(1 - ...).  The uniform per-tail expectation is exactly half of
it and is reported alongside.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .covering_blowup import attach_hedgehog, blow_up, double_cover
from .errors import AssumptionError, GraphError
from .rotation_system import FacialDecomposition
from .scattering import ScatteringMatrix, scattering_matrix
from .walk_dynamics import Coin

__all__ = [
    "ComfortReport",
    "comfortability",
    "average_comfortability",
    "positive_coin_average",
    "average_by_enumeration",
    "limit_comfortability",
    "self_intersections",
    "island_h",
    "island_energy",
    "compare_partitions",
    "kn_best_worst",
    "KnGenera",
]

_EPS = 1e-12


def _require_closed_form(coin: Coin):
    coin.require_d_real()
    if abs(coin.b) < _EPS or abs(coin.c) < _EPS:
        raise AssumptionError("comfortability formulas need b, c != 0")
    if abs(coin.a) >= 1.0 - 1e-14:
        raise AssumptionError("comfortability formulas need |a| < 1")


def hedgehog_scattering(fd: FacialDecomposition, coin: Coin) -> ScatteringMatrix:
    """The scattering matrix of the hedgehog system over ``fd``'s rotation system."""
    bg = attach_hedgehog(blow_up(double_cover(fd.rs)))
    return scattering_matrix(bg, coin)


def _sigma_matrix(bg) -> np.ndarray:
    """Twist-signed flip-flop on the tail space: entry (i, i-bar) = (-1)^tau."""
    n = bg.size
    sigma = np.zeros((n, n))
    idx = np.arange(n)
    sigma[idx, bg.bar] = bg.bridge_sign
    return sigma


@dataclass(frozen=True)
class ComfortReport:
    """Energies of one stationary state, split island/bridge and per face."""

    energy: float
    island: float
    bridge: float
    per_face_island: tuple[float, ...]

    def __post_init__(self):
        if self.energy < -1e-12 or self.island < -1e-12 or self.bridge < -1e-12:
            raise AssumptionError("comfortability must be non-negative")


def comfortability(
    fd: FacialDecomposition,
    coin: Coin,
    inflow: np.ndarray,
    scattering: ScatteringMatrix | None = None,
) -> ComfortReport:
    """Energy stored by the stationary state with the given inflow, from S alone."""
    _require_closed_form(coin)
    s = scattering if scattering is not None else hedgehog_scattering(fd, coin)
    bg = s.bg
    if not bg.hedgehog:
        raise AssumptionError("comfortability is defined for the hedgehog boundary")
    inflow = np.asarray(inflow, dtype=complex)
    q = s.q_matrix() @ inflow

    c2 = abs(coin.c) ** 2
    bc2 = abs(coin.b * coin.c) ** 2
    island = float(np.vdot(q, q).real) / c2
    flipped = _sigma_matrix(bg) @ q + coin.d * q
    bridge = float(np.vdot(flipped, flipped).real) / (2.0 * bc2)

    per_face = []
    for tails, _ in s.blocks:
        idx = np.array(tails, dtype=np.int64)
        qf = q[idx]
        per_face.append(float(np.vdot(qf, qf).real) / c2)
    return ComfortReport(
        energy=island + bridge,
        island=island,
        bridge=bridge,
        per_face_island=tuple(per_face),
    )


def _face_terms(fd: FacialDecomposition):
    for length, hits in zip((len(f) for f in fd.faces), fd.self_intersections):
        yield length, hits


def average_comfortability(fd: FacialDecomposition, coin: Coin) -> float:
    """Average energy over a uniformly random single-tail inflow (times the
    tail/arc normalization ratio 2; see module docstring)."""
    _require_closed_form(coin)
    a, omega, d = coin.a, coin.omega, coin.d.real
    abs_a = abs(a)
    b2 = abs(coin.b) ** 2
    c2 = abs(coin.c) ** 2

    t1 = 0.0
    t2 = 0.0
    for length, hits in _face_terms(fd):
        denom = abs(1.0 - (a * omega) ** length) ** 2
        t1 += length * (1.0 - abs_a ** (2 * length)) / denom
        if hits:
            inner = 0.0
            for d1, d2 in hits.values():
                inner += 2.0 * (
                    (a * omega) ** d1 * (1.0 - abs_a ** (2 * d2))
                    + (a * omega) ** d2 * (1.0 - abs_a ** (2 * d1))
                ).real
            t2 += inner / denom
    n_arcs = fd.rs.graph.arc_count
    return ((2.0 + b2) / c2 * t1 + 2.0 * d / c2 * t2) / n_arcs


def positive_coin_average(fd: FacialDecomposition, a: float) -> float:
    """The positive-coin (a > 0, omega = 1) face/self-intersection form of
    the average; equals :func:`average_comfortability` for the real coin
    [[a, b], [b, -a]].  Each self-intersecting edge is weighted once per
    crossing direction on each chiral copy of its face, which is what the
    tail-by-tail average requires.
    """
    if not 0.0 < a < 1.0:
        raise AssumptionError("this form is stated for 0 < a < 1")
    b2 = 1.0 - a * a
    first = 0.0
    second = 0.0
    for length, hits in _face_terms(fd):
        first += length * (1.0 + a**length) / (1.0 - a**length)
        if hits:
            arc_sum = sum(2.0 * (a**d1 + a**d2) for d1, d2 in hits.values())
            second += arc_sum / (1.0 - a**length)
    n_arcs = fd.rs.graph.arc_count
    return ((2.0 + b2) / b2 * first - 2.0 * a / b2 * second) / n_arcs


def average_by_enumeration(
    fd: FacialDecomposition,
    coin: Coin,
    method: str = "closed_form",
    tol: float = 1e-11,
) -> float:
    """Sum of single-tail energies over every tail, divided by |A|.

    ``method='closed_form'`` evaluates each energy from S; ``'simulator'``
    runs the walk to stationarity per tail (slow; used as the oracle).
    """
    from .walk_dynamics import internal_energy, run_to_stationary

    s = hedgehog_scattering(fd, coin)
    bg = s.bg
    total = 0.0
    for j in range(bg.size):
        inflow = np.zeros(bg.size, dtype=complex)
        inflow[j] = 1.0
        if method == "closed_form":
            total += comfortability(fd, coin, inflow, scattering=s).energy
        elif method == "simulator":
            total += internal_energy(run_to_stationary(bg, coin, inflow, tol=tol))
        else:
            raise ValueError(f"unknown method {method!r}")
    return total / fd.rs.graph.arc_count


def limit_comfortability(fd: FacialDecomposition) -> float:
    """lim (1-a)^2 E[E] as a -> 1: (|F|/|E|) (1 - (1/|F|) sum 2 s_f / |f|)
    with s_f the number of self-intersecting edges of face f.

    A face crossing every edge of its boundary twice contributes zero, so a
    one-face embedding on an orientable surface scores 0.
    """
    n_faces = len(fd.faces)
    n_edges = fd.rs.graph.edge_count
    penalty = sum(2 * len(hits) / len(face) for face, hits in zip(fd.faces, fd.self_intersections))
    return (n_faces / n_edges) * (1.0 - penalty / n_faces)


def self_intersections(fd: FacialDecomposition, face_index: int) -> dict[int, tuple[int, int]]:
    """Edges face ``face_index`` crosses in both directions, with the two
    distances between the crossings along the walk."""
    if not 0 <= face_index < len(fd.faces):
        raise GraphError(f"no face {face_index}")
    return dict(fd.self_intersections[face_index])


# --------------------------------------------------------------------------
# Island energy and the partition order.
# --------------------------------------------------------------------------


def island_h(x: int, a: float) -> float:
    """h(x) = x (1 + a^x) / (1 - a^x); h(0) is the x -> 0 limit 2/log|a|.

    h(0) is negative for |a| < 1; bounds are usually quoted against its
    magnitude 2/|log a|.
    """
    if not 0.0 < abs(a) < 1.0:
        raise AssumptionError("island energy needs 0 < |a| < 1")
    if x == 0:
        return 2.0 / math.log(abs(a))
    ax = a**x
    return x * (1.0 + ax) / (1.0 - ax)


def island_energy(partition, a: float) -> float:
    """Q(lambda) = sum of h over the parts; parts are face lengths, so >= 3."""
    parts = tuple(partition)
    if any(p < 3 for p in parts):
        raise GraphError("face lengths are at least 3")
    return sum(island_h(p, a) for p in parts)


def _split_moves(parts: tuple[int, ...]):
    """Partitions reachable by one energy-increasing move: split one part, or
    spread two parts further apart at constant sum."""
    out = set()
    n = len(parts)
    for i, p in enumerate(parts):
        rest = parts[:i] + parts[i + 1 :]
        for l in range(1, p // 2 + 1):
            out.add(tuple(sorted(rest + (l, p - l), reverse=True)))
    for i in range(n):
        for j in range(i + 1, n):
            l, m = parts[i], parts[j]
            rest = parts[:i] + parts[i + 1 : j] + parts[j + 1 :]
            total, gap = l + m, abs(l - m)
            for l2 in range(total // 2, 0, -1):
                m2 = total - l2
                if abs(l2 - m2) > gap:
                    out.add(tuple(sorted(rest + (l2, m2), reverse=True)))
    return out


@lru_cache(maxsize=None)
def _reachable_upward(frm: tuple[int, ...]) -> frozenset:
    """All partitions provably of larger island energy than ``frm``."""
    seen = set()
    queue = deque([frm])
    while queue:
        cur = queue.popleft()
        for nxt in _split_moves(cur):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def compare_partitions(first, second) -> str:
    """Order two partitions of the same total by chains of the two h moves.

    Returns 'equal', 'greater', 'less' or 'incomparable'; the last means no
    chain of moves decides the pair (their numeric energies may still
    differ, e.g. [9, 3] vs [4, 4, 4]).
    """
    p1 = tuple(sorted(first, reverse=True))
    p2 = tuple(sorted(second, reverse=True))
    if sum(p1) != sum(p2):
        raise GraphError("partitions must have the same total")
    if p1 == p2:
        return "equal"
    if p1 in _reachable_upward(p2):
        return "greater"
    if p2 in _reachable_upward(p1):
        return "less"
    return "incomparable"


# --------------------------------------------------------------------------
# Complete graphs: genera and best/worst surfaces.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KnGenera:
    """Known genus extremes of K_n and the best/worst surface classes."""

    n: int
    orientable_min: int
    nonorientable_min: int
    orientable_max: int
    nonorientable_max: int
    best: tuple[str, ...]
    worst: str
    formula_caveat: bool

    @property
    def betti(self) -> int:
        return self.nonorientable_max


def kn_best_worst(n: int) -> KnGenera:
    """Genus formulas for K_n and the best/worst embedding classes for a
    quantum walker (minimal genus is best, maximal is worst, with the
    orientability split depending on n mod 4; n = 3, 4, 7 are exceptional)."""
    if n < 3:
        raise GraphError("K_n needs n >= 3")
    gamma = math.ceil((n - 3) * (n - 4) / 12)
    gamma_tilde = 3 if n == 7 else math.ceil((n - 3) * (n - 4) / 6)
    gamma_max = (n - 1) * (n - 2) // 4
    betti = n * (n - 1) // 2 - n + 1

    if n % 4 in (1, 2):
        best = ("non-orientable",)
        worst = "orientable"
    else:
        best = ("orientable",) if n in (3, 4, 7) else ("orientable", "non-orientable")
        worst = "non-orientable"
    return KnGenera(
        n=n,
        orientable_min=gamma,
        nonorientable_min=gamma_tilde,
        orientable_max=gamma_max,
        nonorientable_max=betti,
        best=best,
        worst=worst,
        formula_caveat=n < 5,
    )
