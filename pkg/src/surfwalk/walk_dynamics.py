"""Time evolution of the quantum walk on the tailed blow-up graph.

One step applies, at every blow-up vertex, the 2x2 coin to the incoming
(island, bridge) amplitudes, with a sign flip on twisted bridges, and at
every boundary vertex the same coin to (quay, tail) amplitudes.  Tails are
boundary conditions: the inbound pier always carries the constant inflow
and whatever leaves on the outbound pier is recorded as outflow and
dropped, which reproduces the free dynamics on semi-infinite tails exactly.

State layout (arrays indexed by island/bridge id ``g``):

* ``island_in[g]``  - the quay arc before the tail of a boundary island,
  or the whole island arc if ``g`` carries no tail;
* ``island_plus[g]`` - the quay arc after the tail (boundary islands only);
* ``bridge[g]``     - the bridge arc (g, g-bar).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .covering_blowup import BlowUpGraph, attach_hedgehog, blow_up, double_cover
from .errors import AssumptionError, ConvergenceError
from .rotation_system import RotationSystem, flip_vertex

__all__ = [
    "Coin",
    "WaveState",
    "step",
    "run_to_stationary",
    "internal_energy",
    "outflow_map",
    "flip_correspondence",
    "check_unitary_equivalence",
    "UnitaryEquivalenceReport",
]

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class Coin:
    """The 2x2 unitary [[a, b], [c, d]] steering the local scattering.

    ``a`` keeps a walker on its island, ``b`` lets it hop off a bridge onto
    an island, ``c`` sends it from an island onto a bridge and ``d``
    reflects it back along the inverse bridge.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        m = self.matrix()
        defect = np.abs(m @ m.conj().T - np.eye(2)).max()
        if defect > UNITARITY_TOL:
            raise AssumptionError(f"coin is not unitary (defect {defect:.2e})")

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def omega(self) -> complex:
        return -(self.a * self.d - self.b * self.c)

    @property
    def d_is_real(self) -> bool:
        return abs(self.d.imag if isinstance(self.d, complex) else 0.0) <= UNITARITY_TOL

    def require_d_real(self):
        if not self.d_is_real:
            raise AssumptionError("closed forms require a real reflection amplitude d")

    @classmethod
    def hadamard_type(cls) -> "Coin":
        r = 1.0 / math.sqrt(2.0)
        return cls(r, r, r, -r)

    @classmethod
    def real_symmetric(cls, a: float) -> "Coin":
        """[[a, b], [b, -a]] with b = sqrt(1 - a^2); d real, omega = 1."""
        if not -1.0 < a < 1.0:
            raise AssumptionError("real_symmetric coin needs -1 < a < 1")
        b = math.sqrt(1.0 - a * a)
        return cls(a, b, b, -a)

    @classmethod
    def from_params(cls, s: float, phi: float, beta: float) -> "Coin":
        """General unitary coin with d = s real: a = s e^{i phi},
        b = t e^{i beta}, c = -t e^{i (phi - beta)}, t = sqrt(1 - s^2)."""
        if not -1.0 < s < 1.0:
            raise AssumptionError("from_params needs -1 < s < 1")
        t = math.sqrt(1.0 - s * s)
        return cls(
            s * cmath.exp(1j * phi),
            t * cmath.exp(1j * beta),
            -t * cmath.exp(1j * (phi - beta)),
            s,
        )


@dataclass(frozen=True)
class WaveState:
    """Internal amplitudes plus the constant inflow and the latest outflow.

    ``inflow`` and ``outflow`` are indexed by tail site (= island arc id);
    non-boundary entries are zero.
    """

    island_in: np.ndarray
    island_plus: np.ndarray
    bridge: np.ndarray
    inflow: np.ndarray
    outflow: np.ndarray
    steps: int = 0
    residual: float = math.inf

    @classmethod
    def zero(cls, bg: BlowUpGraph, inflow: np.ndarray) -> "WaveState":
        n = bg.size
        inflow = np.asarray(inflow, dtype=complex)
        if inflow.shape != (n,):
            raise AssumptionError(f"inflow must have one entry per island arc ({n})")
        if np.any(inflow[~bg.boundary] != 0):
            raise AssumptionError("inflow is only admitted at boundary island arcs")
        return cls(
            island_in=np.zeros(n, dtype=complex),
            island_plus=np.zeros(n, dtype=complex),
            bridge=np.zeros(n, dtype=complex),
            inflow=inflow,
            outflow=np.zeros(n, dtype=complex),
        )


def step(state: WaveState, bg: BlowUpGraph, coin: Coin) -> WaveState:
    """One application of the walk operator with the tail boundary condition."""
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    bdry = bg.boundary
    out = np.where(bdry, state.island_plus, state.island_in)

    feed_island = out[bg.rot_inv]
    feed_bridge = state.bridge[bg.bar]

    island_in = a * feed_island + b * feed_bridge
    bridge = bg.bridge_sign * (c * feed_island + d * feed_bridge)
    island_plus = np.where(bdry, a * state.island_in + b * state.inflow, 0.0)
    outflow = np.where(bdry, c * state.island_in + d * state.inflow, 0.0)

    return WaveState(
        island_in=island_in,
        island_plus=island_plus,
        bridge=bridge,
        inflow=state.inflow,
        outflow=outflow,
        steps=state.steps + 1,
    )


def internal_energy(state: WaveState) -> float:
    """Half the squared norm of the state on the internal graph (tails excluded)."""
    total = (
        np.vdot(state.island_in, state.island_in).real
        + np.vdot(state.island_plus, state.island_plus).real
        + np.vdot(state.bridge, state.bridge).real
    )
    return 0.5 * total


def _residual(new: WaveState, old: WaveState) -> float:
    return max(
        np.abs(new.island_in - old.island_in).max(initial=0.0),
        np.abs(new.island_plus - old.island_plus).max(initial=0.0),
        np.abs(new.bridge - old.bridge).max(initial=0.0),
    )


def run_to_stationary(
    bg: BlowUpGraph,
    coin: Coin,
    inflow: np.ndarray,
    tol: float = 1e-10,
    max_steps: int = 10**6,
) -> WaveState:
    """Iterate from the zero internal state until the sup-norm change of one
    step falls below ``tol``."""
    if tol <= 0:
        raise AssumptionError("tolerance must be positive")
    state = WaveState.zero(bg, inflow)
    for _ in range(max_steps):
        new = step(state, bg, coin)
        res = _residual(new, state)
        state = replace(new, residual=res)
        if res < tol:
            return state
    raise ConvergenceError(
        f"no stationary state after {max_steps} steps (residual {state.residual:.3e})",
        residual=state.residual,
        steps=state.steps,
    )


def outflow_map(bg: BlowUpGraph, coin: Coin, tol: float = 1e-10, max_steps: int = 10**6) -> np.ndarray:
    """The simulated scattering matrix: column j is the stationary outflow
    for a unit inflow at tail j.  Columns of non-boundary islands are zero."""
    n = bg.size
    s = np.zeros((n, n), dtype=complex)
    for j in bg.boundary_islands():
        inflow = np.zeros(n, dtype=complex)
        inflow[j] = 1.0
        s[:, j] = run_to_stationary(bg, coin, inflow, tol, max_steps).outflow
    return s


def flip_correspondence(rs: RotationSystem, x: int) -> tuple[RotationSystem, np.ndarray]:
    """The flipped system at ``x`` and the island/bridge relabelling that
    identifies the two blow-ups (sheets of the flipped vertex swap)."""
    flipped = flip_vertex(rs, x)
    dc1 = double_cover(rs)
    dc2 = double_cover(flipped)
    n = dc1.arc_count
    phi = np.zeros(n, dtype=np.int64)
    for c in range(n):
        e, s = dc1.proj[c], dc1.sheet[c]
        s2 = s ^ (rs.graph.terminus[e] == x)
        phi[c] = dc2.lift[2 * e + s2]
    return flipped, phi


@dataclass(frozen=True)
class UnitaryEquivalenceReport:
    vertex: int
    energy_before: float
    energy_after: float
    max_outflow_modulus_deviation: float

    @property
    def energy_deviation(self) -> float:
        return abs(self.energy_before - self.energy_after)


def check_unitary_equivalence(
    rs: RotationSystem,
    x: int,
    coin: Coin,
    inflow: np.ndarray,
    tol: float = 1e-10,
    max_steps: int = 10**6,
    check_tol: float = 1e-8,
) -> UnitaryEquivalenceReport:
    """Run (G, rho, tau) and its vertex flip at ``x`` with the corresponding
    single inflow; raise unless the stored energies agree and the outflow
    moduli match entrywise within ``check_tol``."""
    if np.count_nonzero(inflow) != 1:
        raise AssumptionError("unitary-equivalence check expects a single-tail inflow")
    bg1 = attach_hedgehog(blow_up(double_cover(rs)))
    flipped, phi = flip_correspondence(rs, x)
    bg2 = attach_hedgehog(blow_up(double_cover(flipped)))

    inflow2 = np.zeros_like(inflow)
    inflow2[phi] = inflow
    s1 = run_to_stationary(bg1, coin, inflow, tol, max_steps)
    s2 = run_to_stationary(bg2, coin, inflow2, tol, max_steps)

    dev = np.abs(np.abs(s2.outflow[phi]) - np.abs(s1.outflow)).max()
    report = UnitaryEquivalenceReport(
        vertex=x,
        energy_before=internal_energy(s1),
        energy_after=internal_energy(s2),
        max_outflow_modulus_deviation=float(dev),
    )
    if report.energy_deviation > check_tol or report.max_outflow_modulus_deviation > check_tol:
        raise AssumptionError(
            f"vertex flip at {x} changed the walk: energy dev "
            f"{report.energy_deviation:.2e}, outflow dev {dev:.2e}"
        )
    return report
