"""Minimum-output-entropy searches over pure two-qudit input states.

Three routes are provided:

* minimize_full      - derivative-free simplex descent over the whole
                       pure-state manifold, restarted from random points
                       plus two deterministic seeds (the maximally
                       entangled state and |0,0>).
* minimize_ansatz    - the same search restricted to the diagonal band
                       sum_j a_j |j, j>, valid for column-symmetric Pauli
                       channels where the output of such inputs has a
                       closed form; far cheaper and equivalent on that
                       subclass.
* oracle_sample      - brute-force random sampling, used as an independent
                       upper-bound witness to validate the optimizers.

The objective has eigenvalue-crossing kinks, so a simplex method is used
rather than anything gradient-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .channels import (CorrelatedChannel, apply_correlated_pure,
                       joint_invariant_state, pauli_column_probs)
from .linalg import entropy_of_spectrum
from .states import (SymmetricAnsatz, ansatz_state, basis_separable,
                     entanglement_of, from_params, max_entangled, params_of)

MODES = ("full", "ansatz", "real_ansatz")


@dataclass(frozen=True)
class OptimizerConfig:
    """Search settings; restarts=None resolves to 32 (full) or 16 (ansatz)."""

    restarts: int | None = None
    max_iters: int = 5000
    xtol: float = 1e-9
    ftol: float = 1e-12
    seed: int = 42
    mode: str = "full"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.restarts is not None and self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.xtol <= 0 or self.ftol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")

    def resolved_restarts(self) -> int:
        if self.restarts is not None:
            return self.restarts
        return 32 if self.mode == "full" else 16


@dataclass(frozen=True, eq=False)
class MinEntropyResult:
    """Best input state found, its output entropy and its entanglement."""

    entropy_bits: float
    state: np.ndarray
    entanglement_bits: float
    iterations_used: int
    converged: bool


def objective(ch: CorrelatedChannel, psi: np.ndarray) -> float:
    """Output entropy in bits of the channel on the pure input psi."""
    rho = apply_correlated_pure(ch, psi)
    return entropy_of_spectrum(np.linalg.eigvalsh(rho))


def _ansatz_parts(column_probs: np.ndarray,
                  a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Correlated block and independent-errors diagonal of the ansatz output.

    For input sum_j a_j |j, j> through a column-symmetric Pauli channel
    with column probabilities p (summing to 1/d), the fully correlated
    part lives in the span of the |l, l> as a dense d x d block

        block[x, y] = d * sum_m p_m a[x - m] conj(a[y - m])

    while the independent-errors part is diagonal in the product basis,

        diag[u, v]  = d^2 * sum_i |a_i|^2 p[u - i] p[v - i]

    (all indices mod d).
    """
    p = np.asarray(column_probs, dtype=float)
    a = np.asarray(a, dtype=complex)
    d = a.size
    q = d * p
    block = np.zeros((d, d), dtype=complex)
    diag = np.zeros((d, d))
    for m in range(d):
        am = np.roll(a, m)
        block += q[m] * np.outer(am, am.conj())
        diag += (np.abs(a[m]) ** 2) * np.outer(np.roll(q, m), np.roll(q, m))
    return block, diag


def ansatz_output_matrix(column_probs: np.ndarray, mu: float,
                         a: np.ndarray) -> np.ndarray:
    """Closed-form channel output for the diagonal-band input sum_j a_j |j, j>.

    Combines the two parts of _ansatz_parts with weights mu and 1 - mu
    into the full d^2 x d^2 output density matrix. Algebraically identical
    to apply_correlated on the materialised input, but O(d^3).
    """
    block, diag = _ansatz_parts(column_probs, a)
    d = block.shape[0]
    out = np.diag((1.0 - mu) * diag.reshape(-1)).astype(complex)
    idx = np.arange(d) * (d + 1)
    out[np.ix_(idx, idx)] += mu * block
    return out


def _ansatz_spectrum(column_probs: np.ndarray, mu: float,
                     a: np.ndarray) -> np.ndarray:
    """Eigenvalues of ansatz_output_matrix without building the full matrix.

    The output splits into the d x d band block plus already-diagonal
    entries, so only a d x d eigenproblem is solved.
    """
    block, diag = _ansatz_parts(column_probs, a)
    d = block.shape[0]
    band = mu * block + np.diag((1.0 - mu) * np.diag(diag))
    off = (1.0 - mu) * diag[~np.eye(d, dtype=bool)]
    return np.concatenate([np.linalg.eigvalsh(band), off])


def _pick_best(candidates: list[tuple[float, np.ndarray, float, bool]],
               ftol: float) -> tuple[float, np.ndarray, float, bool]:
    """Lowest entropy wins; ties within ftol go to the lower entanglement.

    The tie-break biases reporting toward the separable description when
    two basins are numerically degenerate.
    """
    best_entropy = min(c[0] for c in candidates)
    near = [c for c in candidates if c[0] <= best_entropy + ftol]
    return min(near, key=lambda c: (c[2], c[0]))


def _simplex_descent(func: Callable[[np.ndarray], float], x0: np.ndarray,
                     cfg: OptimizerConfig):
    return _scipy_minimize(func, x0, method="Nelder-Mead",
                           options={"xatol": cfg.xtol, "fatol": cfg.ftol,
                                    "maxiter": cfg.max_iters})


def minimize_full(ch: CorrelatedChannel, cfg: OptimizerConfig) -> MinEntropyResult:
    """Multi-start simplex search over all pure two-qudit inputs.

    Runs cfg.restarts random starts plus deterministic seeds: the
    maximally entangled state and |0,0> - the two competing extremes - so
    neither basin can be missed. When the error operators share a joint
    invariant state w (no transition is guaranteed), the product w x
    conj(w) is seeded too: it passes through the channel undistorted at
    every correlation level, and on such channels the zero set is a flat
    manifold that restarts alone would land on at arbitrary entanglement.
    Deterministic given cfg.seed.
    """
    if cfg.mode != "full":
        raise ValueError("minimize_full requires mode='full'")
    d = ch.base.dim
    big_d = d * d
    table = ch._pure_table

    if table is None:
        def func(x: np.ndarray) -> float:
            return objective(ch, from_params(x, big_d))
    else:
        weights, kflat = table

        def func(x: np.ndarray) -> float:
            amps = x[0::2] + 1j * x[1::2]
            nrm = np.linalg.norm(amps)
            if nrm < 1e-12:
                return float(2 * np.log2(d)) + 1.0
            v = (kflat @ (amps / nrm)).reshape(-1, big_d)
            rho = (v.T * weights) @ v.conj()
            lam = np.linalg.eigvalsh(rho)
            lam = lam[lam > 0.0]
            return float(-(lam * np.log2(lam)).sum())

    rng = np.random.default_rng(cfg.seed)
    starts = [params_of(max_entangled(d)), params_of(basis_separable(d, 0, 0))]
    active = [u for u, p in zip(ch.base.ops, ch.base.probs) if p > 0.0]
    rel_ops = [u.conj().T @ active[0] for u in active]
    witness = joint_invariant_state(rel_ops)
    if witness is not None:
        starts.append(params_of(np.kron(witness, witness.conj())))
    starts += [rng.standard_normal(2 * big_d) for _ in range(cfg.resolved_restarts())]

    candidates = []
    iterations = 0
    for x0 in starts:
        res = _simplex_descent(func, x0, cfg)
        iterations += int(res.nit)
        psi = from_params(res.x, big_d)
        candidates.append((float(res.fun), psi, entanglement_of(psi, d),
                           bool(res.success)))
    entropy, psi, ent, converged = _pick_best(candidates, cfg.ftol)
    return MinEntropyResult(entropy_bits=entropy, state=psi,
                            entanglement_bits=ent,
                            iterations_used=iterations, converged=converged)


def minimize_ansatz(ch: CorrelatedChannel, cfg: OptimizerConfig) -> MinEntropyResult:
    """Simplex search over diagonal-band inputs using the closed-form output.

    Only valid for column-symmetric Pauli channels; raises otherwise. In
    real_ansatz mode the coefficients are restricted to real values.
    """
    if cfg.mode not in ("ansatz", "real_ansatz"):
        raise ValueError("minimize_ansatz requires mode='ansatz' or 'real_ansatz'")
    p = pauli_column_probs(ch.base)
    d = ch.base.dim
    mu = ch.mu
    real_only = cfg.mode == "real_ansatz"

    def func(x: np.ndarray) -> float:
        a = x if real_only else x[0::2] + 1j * x[1::2]
        nrm = np.linalg.norm(a)
        if nrm < 1e-12:
            return float(2 * np.log2(d)) + 1.0
        return entropy_of_spectrum(_ansatz_spectrum(p, mu, a / nrm))

    n_params = d if real_only else 2 * d

    def coeffs_of(x: np.ndarray) -> np.ndarray:
        a = x.astype(complex) if real_only else x[0::2] + 1j * x[1::2]
        a = a / np.linalg.norm(a)
        lead = a[int(np.argmax(np.abs(a)))]
        return a * (lead.conjugate() / abs(lead))

    def encode(a: np.ndarray) -> np.ndarray:
        if real_only:
            return a.real.copy()
        return params_of(a)

    uniform = np.full(d, 1.0 / np.sqrt(d), dtype=complex)
    e0 = np.zeros(d, dtype=complex)
    e0[0] = 1.0
    rng = np.random.default_rng(cfg.seed)
    starts = [encode(uniform), encode(e0)]
    starts += [rng.standard_normal(n_params) for _ in range(cfg.resolved_restarts())]

    candidates = []
    iterations = 0
    for x0 in starts:
        res = _simplex_descent(func, x0, cfg)
        iterations += int(res.nit)
        a = coeffs_of(res.x)
        psi = ansatz_state(SymmetricAnsatz(d=d, k=0, a=a))
        candidates.append((float(res.fun), psi, entanglement_of(psi, d),
                           bool(res.success)))
    entropy, psi, ent, converged = _pick_best(candidates, cfg.ftol)
    return MinEntropyResult(entropy_bits=entropy, state=psi,
                            entanglement_bits=ent,
                            iterations_used=iterations, converged=converged)


def oracle_sample(ch: CorrelatedChannel, n_samples: int,
                  seed: int) -> MinEntropyResult:
    """Brute-force upper-bound witness: best of n_samples random pure states.

    Samples are normalised complex Gaussian vectors (uniform on the pure
    state sphere). The maximally entangled state and every computational
    product state are always evaluated as deterministic seeds, so the
    result is never worse than the better of the two competing extremes.
    """
    if n_samples < 1000:
        raise ValueError("n_samples must be at least 1000")
    d = ch.base.dim
    big_d = d * d
    seeds = [max_entangled(d)]
    seeds += [basis_separable(d, i, j) for i in range(d) for j in range(d)]

    best_entropy = np.inf
    best_state = None
    table = ch._pure_table

    def eval_batch(batch: np.ndarray) -> np.ndarray:
        if table is None:
            return np.array([objective(ch, v) for v in batch])
        weights, kflat = table
        v = (batch @ kflat.T).reshape(len(batch), -1, big_d)
        rho = np.einsum("t,bti,btj->bij", weights, v, v.conj(), optimize=True)
        lam = np.linalg.eigvalsh(rho)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(lam > 0.0, -lam * np.log2(np.abs(lam)), 0.0)
        return terms.sum(axis=1)

    batch = np.stack(seeds)
    ent = eval_batch(batch)
    i = int(np.argmin(ent))
    best_entropy, best_state = float(ent[i]), batch[i]

    rng = np.random.default_rng(seed)
    remaining = n_samples
    chunk = 4096
    while remaining > 0:
        m = min(chunk, remaining)
        remaining -= m
        batch = rng.standard_normal((m, big_d)) + 1j * rng.standard_normal((m, big_d))
        batch /= np.linalg.norm(batch, axis=1)[:, None]
        ent = eval_batch(batch)
        i = int(np.argmin(ent))
        if ent[i] < best_entropy:
            best_entropy, best_state = float(ent[i]), batch[i]

    return MinEntropyResult(entropy_bits=best_entropy, state=best_state,
                            entanglement_bits=entanglement_of(best_state, d),
                            iterations_used=n_samples + len(seeds),
                            converged=True)
