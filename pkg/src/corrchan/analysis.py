"""Higher-level analyses: correlation sweeps, transition detection, the
joint-invariant-state criterion, capacity checks and closed-form estimates.

The central phenomenon: as the correlation weight mu grows, the input
state minimising the output entropy jumps abruptly from a separable
product state to a maximally entangled state. detect_transition locates
the jump; check_theorem decides in advance whether one must occur.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channels import (CorrelatedChannel, KrausChannel, PauliOperatorSet,
                       apply_correlated, joint_invariant_state)
from .linalg import tensor
from .optimize import (MinEntropyResult, OptimizerConfig, minimize_ansatz,
                       minimize_full)


@dataclass(frozen=True, eq=False)
class SweepEntry:
    """Optimum found at one grid value of the correlation weight."""

    mu: float
    min_entropy_bits: float
    entanglement_bits: float
    optimal_amplitudes: np.ndarray


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Per-mu optima over a grid, and the detected transition point if any."""

    mu_grid: np.ndarray
    entries: list[SweepEntry]
    mu_c: float | None
    method: str

    def __post_init__(self) -> None:
        grid = np.asarray(self.mu_grid, dtype=float)
        if grid.ndim != 1 or len(grid) != len(self.entries):
            raise ValueError("entries must align 1:1 with the grid")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("mu grid must be strictly increasing")
        if self.mu_c is not None and not grid[0] <= self.mu_c <= grid[-1]:
            raise ValueError("mu_c must lie inside the grid")
        object.__setattr__(self, "mu_grid", grid)


@dataclass(frozen=True, eq=False)
class TheoremVerdict:
    """Outcome of the joint-invariant-state check.

    Exactly one of the two holds: either no state is invariant (modulo a
    phase) under every relative error operator, so a separable input can
    never reach zero output entropy at full correlation and a transition
    is guaranteed - or a common invariant witness state exists.
    """

    intersection_empty: bool
    witness: np.ndarray | None
    checked_pairs: int


@dataclass(frozen=True, eq=False)
class AnalyticEstimates:
    """Closed-form fidelity / linearized-entropy scalars for one mu.

    c_matrix holds the outcome distribution of the independent-errors part
    on a maximally entangled input: entry (m, n) is the weight of |m, n> in
    that output, so the entries sum to 1 and are invariant under shifting
    both indices.
    """

    c_matrix: np.ndarray
    f_me: float
    f_s: float
    r_me: float
    r_s: float
    mu_cross: float | None


def _minimize(ch: CorrelatedChannel, cfg: OptimizerConfig) -> MinEntropyResult:
    if cfg.mode == "full":
        return minimize_full(ch, cfg)
    return minimize_ansatz(ch, cfg)


def sweep(ch_base: KrausChannel, mu_grid: Sequence[float],
          cfg: OptimizerConfig) -> SweepResult:
    """Minimise output entropy at every grid value of the correlation weight.

    The transition point, when the optimal-input entanglement crosses half
    its maximum somewhere on the grid, is refined by bisection and stored
    in the result.
    """
    grid = np.asarray(mu_grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2:
        raise ValueError("mu grid needs at least two points")
    if grid.min() < 0.0 or grid.max() > 1.0:
        raise ValueError("mu grid must lie in [0, 1]")
    entries = []
    for mu in grid:
        res = _minimize(CorrelatedChannel(base=ch_base, mu=float(mu)), cfg)
        entries.append(SweepEntry(mu=float(mu),
                                  min_entropy_bits=res.entropy_bits,
                                  entanglement_bits=res.entanglement_bits,
                                  optimal_amplitudes=res.state))
    partial = SweepResult(mu_grid=grid, entries=entries, mu_c=None,
                          method=cfg.mode)

    def reoptimize(mu: float) -> float:
        res = _minimize(CorrelatedChannel(base=ch_base, mu=mu), cfg)
        return res.entanglement_bits

    mu_c = detect_transition(partial, ch_base.dim, reoptimize=reoptimize)
    return SweepResult(mu_grid=grid, entries=entries, mu_c=mu_c,
                       method=cfg.mode)


def detect_transition(sweep_result: SweepResult, d: int,
                      reoptimize: Callable[[float], float] | None = None,
                      width: float = 1e-3) -> float | None:
    """Locate where the optimal-input entanglement crosses log2(d) / 2.

    Scans the grid for an adjacent pair straddling the threshold, then
    bisects on mu - re-optimising at each probe via the supplied callback -
    until the bracket is narrower than `width`, and returns its midpoint.
    Without a callback the midpoint of the bracketing grid cell is
    returned. None when the entanglement never crosses the threshold.
    """
    thr = 0.5 * np.log2(d)
    ents = [e.entanglement_bits for e in sweep_result.entries]
    mus = sweep_result.mu_grid
    bracket = None
    for i in range(len(mus) - 1):
        if (ents[i] < thr) != (ents[i + 1] < thr):
            bracket = (mus[i], mus[i + 1], ents[i] < thr)
            break
    if bracket is None:
        return None
    lo, hi, rising = bracket
    if reoptimize is None:
        return float(0.5 * (lo + hi))
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        above = reoptimize(float(mid)) >= thr
        if above == rising:
            hi = mid
        else:
            lo = mid
    return float(0.5 * (lo + hi))


def check_theorem(ch: KrausChannel, alpha0: int | None = None) -> TheoremVerdict:
    """Decide whether a separable-to-entangled transition must occur.

    Forms the relative operators A_a = U_a^dag U_a0 over the channel's
    error operators with nonzero probability and intersects their
    invariant-modulo-a-phase subspaces by recursive eigenspace refinement
    (see joint_invariant_state). An empty intersection guarantees that no
    separable input reaches zero output entropy at full correlation, so
    the optimal input must become entangled somewhere; a surviving witness
    state rules the guarantee out.

    alpha0 picks the reference operator; the verdict does not depend on
    the choice. By default the first operator with nonzero probability is
    used (zero-probability operators are not errors of the channel).
    """
    if alpha0 is None:
        alpha0 = int(np.argmax(ch.probs > 0.0))
    if not 0 <= alpha0 < len(ch.ops):
        raise ValueError("alpha0 out of range")
    if ch.probs[alpha0] <= 0.0:
        raise ValueError("alpha0 must select an operator with nonzero probability")
    active = [u for u, p in zip(ch.ops, ch.probs) if p > 0.0]
    u0 = ch.ops[alpha0]
    rel_ops = [u.conj().T @ u0 for u in active]

    witness = joint_invariant_state(rel_ops)
    if witness is None:
        return TheoremVerdict(intersection_empty=True, witness=None,
                              checked_pairs=len(rel_ops))
    for a in rel_ops:
        av = a @ witness
        phase_proj = (witness.conj() @ av) * witness
        if np.linalg.norm(av - phase_proj) > 1e-9:
            raise AssertionError("witness failed the invariance residual check")
    return TheoremVerdict(intersection_empty=False, witness=witness,
                          checked_pairs=len(rel_ops))


def mutual_information_i2(ch: CorrelatedChannel, s_min_bits: float) -> float:
    """Two-use mutual information 2 log2 d - S_min, in bits.

    This equals the achieved mutual information only when the channel
    passes verify_covariance and verify_schur_average; otherwise it is an
    upper bound. Callers must gate on those residuals.
    """
    d = ch.base.dim
    cap = 2.0 * np.log2(d)
    if not -1e-12 <= s_min_bits <= cap + 1e-9:
        raise ValueError("s_min_bits out of range")
    return float(cap - s_min_bits)


def verify_covariance(ch: CorrelatedChannel, rho: np.ndarray,
                      pauli: PauliOperatorSet) -> float:
    """Max residual of E(W rho W^dag) = W E(rho) W^dag over W = U_a x conj(U_b).

    Zero (to rounding) whenever the channel's error operators commute with
    the shift-and-phase set modulo phases, which holds for every Pauli-word
    channel.
    """
    d = pauli.dim
    rho = np.asarray(rho, dtype=complex)
    out = apply_correlated(ch, rho)
    worst = 0.0
    flat = pauli.ops.reshape(d * d, d, d)
    for ua in flat:
        for ub in flat:
            w = tensor(ua, ub.conj())
            lhs = apply_correlated(ch, w @ rho @ w.conj().T)
            rhs = w @ out @ w.conj().T
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def verify_schur_average(ch: CorrelatedChannel, rho: np.ndarray,
                         pauli: PauliOperatorSet) -> float:
    """Residual of the equiprobable twirled ensemble averaging to I / d^2.

    Conjugating the input by every U_a x conj(U_b) with equal weight and
    averaging the channel outputs must give the maximally mixed state;
    this is the irreducibility property that makes the capacity bound
    attainable.
    """
    d = pauli.dim
    rho = np.asarray(rho, dtype=complex)
    flat = pauli.ops.reshape(d * d, d, d)
    acc = np.zeros((d * d, d * d), dtype=complex)
    for ua in flat:
        for ub in flat:
            w = tensor(ua, ub.conj())
            acc += apply_correlated(ch, w @ rho @ w.conj().T)
    acc /= float(len(flat) ** 2)
    return float(np.abs(acc - np.eye(d * d) / (d * d)).max())


def _correlation_matrix(p: np.ndarray) -> np.ndarray:
    """C[m, n] = sum_i p[m + i] p[n + i], indices mod d."""
    d = p.size
    c = np.empty((d, d))
    for m in range(d):
        for n in range(d):
            c[m, n] = float(np.dot(np.roll(p, -m), np.roll(p, -n)))
    return c


def _r_curves(d: int, p: np.ndarray):
    """Linearized output entropies R(mu) for the two extreme inputs."""
    c = _correlation_matrix(p)
    c00 = float(c[0, 0])
    sum_c2 = float((c ** 2).sum())
    sum_p3 = float((p ** 3).sum())

    def r_me(mu: float) -> float:
        return 1.0 - ((1 - mu) ** 2 * d ** 2 * sum_c2 + mu ** 2
                      + 2 * mu * (1 - mu) * d * c00)

    def r_s(mu: float) -> float:
        return 1.0 - ((1 - mu) ** 2 * d ** 4 * c00 ** 2
                      + mu ** 2 * d ** 2 * c00
                      + 2 * mu * (1 - mu) * d ** 3 * sum_p3)

    return r_me, r_s


def _validate_column_probs(d: int, p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (d,):
        raise ValueError(f"expected {d} column probabilities")
    if p.min() < 0.0:
        raise ValueError("probabilities must be nonnegative")
    if abs(p.sum() - 1.0 / d) > 1e-10:
        raise ValueError("column probabilities must sum to 1/d")
    return p


def estimate_mu_c_crossing(d: int, p) -> float | None:
    """Transition estimate: where the two linearized entropies cross.

    Both curves are quadratics in mu; a sign change of their difference is
    bracketed by a 100-point scan of (0, 1) and then bisected. None when
    the curves never cross.
    """
    p = _validate_column_probs(d, p)
    r_me, r_s = _r_curves(d, p)

    def g(mu: float) -> float:
        return r_me(mu) - r_s(mu)

    grid = np.linspace(0.0, 1.0, 100)
    vals = np.array([g(m) for m in grid])
    bracket = None
    for i in range(len(grid) - 1):
        if 0 < i and vals[i] == 0.0:
            return float(grid[i])
        if vals[i] * vals[i + 1] < 0:
            bracket = (float(grid[i]), float(grid[i + 1]))
            break
    if bracket is None:
        return None
    lo, hi = bracket
    glo = g(lo)
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return float(mid)
        if glo * gm < 0:
            hi = mid
        else:
            lo, glo = mid, gm
    return float(0.5 * (lo + hi))


def analytic_estimates(d: int, p, mu: float) -> AnalyticEstimates:
    """Closed-form fidelities and linearized entropies for the two extremes.

    p holds the d column probabilities of a column-symmetric Pauli channel
    (summing to 1/d). For the maximally entangled input:

        F_me = mu + (1 - mu) d sum_n p_n^2
        R_me = 1 - [(1-mu)^2 d^2 sum C^2 + mu^2 + 2 mu (1-mu) d C00]

    and for the separable input |0,0>:

        F_s = (1 - mu) d^2 p_0^2 + mu d p_0
        R_s = 1 - [(1-mu)^2 d^4 C00^2 + mu^2 d^2 C00
                   + 2 mu (1-mu) d^3 sum_m p_m^3]

    with C[m, n] = sum_i p[m+i] p[n+i]. The exposed c_matrix is d * C, the
    trace-normalised outcome distribution (entries sum to 1).
    """
    p = _validate_column_probs(d, p)
    if not 0.0 <= mu <= 1.0:
        raise ValueError("mu must lie in [0, 1]")
    c = _correlation_matrix(p)
    f_me = float(mu + (1 - mu) * d * (p ** 2).sum())
    f_s = float((1 - mu) * d ** 2 * p[0] ** 2 + mu * d * p[0])
    r_me_fn, r_s_fn = _r_curves(d, p)
    return AnalyticEstimates(c_matrix=d * c, f_me=f_me, f_s=f_s,
                             r_me=float(r_me_fn(mu)), r_s=float(r_s_fn(mu)),
                             mu_cross=estimate_mu_c_crossing(d, p))
