"""Construction and application of correlated-noise channels.

A single-qudit channel is a probability-weighted set of unitary error
operators U_a:

    phi(rho)      = sum_a p_a U_a rho U_a^dag
    phi_star(rho) = sum_a p_a conj(U_a) rho conj(U_a)^dag

Two uses of the channel interpolate between independent errors on each
qudit and fully correlated errors, controlled by the correlation weight
mu in [0, 1]:

    E(rho) = (1 - mu) (phi x phi_star)(rho) + mu phi_c(rho)
    phi_c(rho) = sum_a p_a (U_a x conj(U_a)) rho (U_a x conj(U_a))^dag

The generalized (shift-and-phase) Pauli operators and the channels built
from them are provided as presets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import TOL, dagger

# Stacked two-qudit Kraus tables are cached only up to this many complex
# entries; beyond it the factored (memory-light) application is used.
_MAX_TABLE_ENTRIES = 16_000_000


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A mixed-unitary channel: unitary operators ops[a] applied with probs[a].

    Immutable after construction; all invariants are validated here so the
    application routines can stay lean.
    """

    dim: int
    ops: np.ndarray    # (n, dim, dim) complex
    probs: np.ndarray  # (n,) float

    def __post_init__(self) -> None:
        ops = np.asarray(self.ops, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None, :, :]
        probs = np.atleast_1d(np.asarray(self.probs, dtype=float))
        d = int(self.dim)
        if ops.shape[1:] != (d, d):
            raise ValueError("operator shape does not match channel dimension")
        if len(ops) != len(probs) or len(ops) < 1:
            raise ValueError("ops and probs must have equal length >= 1")
        if probs.min() < 0.0:
            raise ValueError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > TOL.trace:
            raise ValueError("probabilities must sum to 1")
        eye = np.eye(d)
        for u in ops:
            if np.abs(dagger(u) @ u - eye).max() > TOL.unitarity:
                raise ValueError("Kraus operator not unitary")
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "probs", probs)


@dataclass(frozen=True, eq=False)
class PauliOperatorSet:
    """The d^2 shift-and-phase unitaries on a d-level system.

    ops[m, n] acts on basis kets as  ops[m, n] |k> = xi^(k n) |k + m mod d>
    with xi = exp(2 pi i / d). They commute modulo a phase, are traceless
    except for the identity, and are closed under products up to phases.
    """

    dim: int
    xi: complex
    ops: np.ndarray  # (d, d, d, d); ops[m, n] is a d x d unitary


@dataclass(frozen=True, eq=False)
class CorrelatedChannel:
    """Two uses of a base channel with correlation weight mu in [0, 1]."""

    base: KrausChannel
    mu: float

    def __post_init__(self) -> None:
        mu = float(self.mu)
        if not 0.0 <= mu <= 1.0:
            raise ValueError("mu must lie in [0, 1]")
        object.__setattr__(self, "mu", mu)

    @cached_property
    def _pure_table(self) -> tuple[np.ndarray, np.ndarray] | None:
        """Stacked weighted Kraus terms of the two-qudit channel.

        Returns (weights, kflat) where kflat has shape (T * D, D) so one
        matrix-vector product yields all T transformed vectors of a pure
        input. None when the table would be too large to cache.
        """
        ops, probs, mu = self.base.ops, self.base.probs, self.mu
        n, d = len(ops), self.base.dim
        big_d = d * d
        if (n * n + n) * big_d * big_d > _MAX_TABLE_ENTRIES:
            return None
        terms = np.empty((n * n + n, big_d, big_d), dtype=complex)
        weights = np.empty(n * n + n)
        t = 0
        for a in range(n):
            for b in range(n):
                terms[t] = np.kron(ops[a], ops[b].conj())
                weights[t] = (1.0 - mu) * probs[a] * probs[b]
                t += 1
        for a in range(n):
            terms[t] = np.kron(ops[a], ops[a].conj())
            weights[t] = mu * probs[a]
            t += 1
        return weights, terms.reshape(-1, big_d)


def _check_dim(expected: int, rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (expected, expected):
        raise ValueError(f"state dimension {rho.shape} does not match channel "
                         f"dimension {expected}")
    return rho


def apply_phi(ch: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Single-qudit channel: sum_a p_a U_a rho U_a^dag."""
    rho = _check_dim(ch.dim, rho)
    return np.einsum("a,aip,pq,akq->ik", ch.probs, ch.ops, rho, ch.ops.conj(),
                     optimize=True)


def apply_phi_star(ch: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Conjugate single-qudit channel: sum_a p_a conj(U_a) rho conj(U_a)^dag."""
    rho = _check_dim(ch.dim, rho)
    return np.einsum("a,aip,pq,akq->ik", ch.probs, ch.ops.conj(), rho, ch.ops,
                     optimize=True)


def apply_phi_c(ch: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Fully correlated two-qudit channel: both factors suffer the same error."""
    d = ch.dim
    rho = _check_dim(d * d, rho)
    r4 = rho.reshape(d, d, d, d)
    out = np.einsum("a,aip,ajq,pqrs,akr,als->ijkl", ch.probs, ch.ops,
                    ch.ops.conj(), r4, ch.ops.conj(), ch.ops, optimize=True)
    return out.reshape(d * d, d * d)


def _apply_product(ch: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """(phi x phi_star)(rho), applied factor by factor."""
    d = ch.dim
    r4 = rho.reshape(d, d, d, d)
    half = np.einsum("a,aip,pjql,akq->ijkl", ch.probs, ch.ops, r4,
                     ch.ops.conj(), optimize=True)
    out = np.einsum("b,bjq,iqks,bls->ijkl", ch.probs, ch.ops.conj(), half,
                    ch.ops, optimize=True)
    return out.reshape(d * d, d * d)


def apply_correlated(ch: CorrelatedChannel, rho: np.ndarray) -> np.ndarray:
    """Two-qudit correlated channel E = (1 - mu)(phi x phi_star) + mu phi_c."""
    d = ch.base.dim
    rho = _check_dim(d * d, rho)
    if ch.mu == 1.0:
        return apply_phi_c(ch.base, rho)
    out = (1.0 - ch.mu) * _apply_product(ch.base, rho)
    if ch.mu > 0.0:
        out += ch.mu * apply_phi_c(ch.base, rho)
    return out


def apply_correlated_pure(ch: CorrelatedChannel, psi: np.ndarray) -> np.ndarray:
    """E(|psi><psi|) for a pure two-qudit input, via the stacked Kraus table.

    Algebraically identical to apply_correlated on the projector, but a
    single matrix-vector product per call; this is the optimizer hot path.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    big_d = ch.base.dim ** 2
    if psi.size != big_d:
        raise ValueError("state dimension does not match channel dimension")
    table = ch._pure_table
    if table is None:
        return apply_correlated(ch, np.outer(psi, psi.conj()))
    weights, kflat = table
    v = (kflat @ psi).reshape(-1, big_d)
    return (v.T * weights) @ v.conj()


def pauli_operator_set(d: int) -> PauliOperatorSet:
    """Build the d^2 shift-and-phase unitaries for dimension d >= 2."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    xi = np.exp(2j * np.pi / d)
    ops = np.zeros((d, d, d, d), dtype=complex)
    for m in range(d):
        for n in range(d):
            for k in range(d):
                ops[m, n, (k + m) % d, k] = xi ** (k * n)
    return PauliOperatorSet(dim=d, xi=complex(xi), ops=ops)


def pauli_channel(d: int, probs) -> KrausChannel:
    """Generalized Pauli channel with error probabilities probs[m, n].

    Kraus operators are laid out in row-major (m, n) order so downstream
    outputs are reproducible. probs may be a (d, d) array or a flat
    length-d^2 sequence in the same order.
    """
    pauli = pauli_operator_set(d)
    p = np.asarray(probs, dtype=float).reshape(d, d)
    if p.min() < 0.0:
        raise ValueError("probabilities must be nonnegative")
    if abs(p.sum() - 1.0) > TOL.trace:
        raise ValueError("probabilities must sum to 1")
    return KrausChannel(dim=d, ops=pauli.ops.reshape(d * d, d, d),
                        probs=p.reshape(-1))


def symmetric_pauli_channel(d: int, column_probs) -> KrausChannel:
    """Pauli channel with probs[m, n] = p_m (independent of the phase index n).

    column_probs supplies the d values p_m; they must sum to 1/d so the
    full d^2 error matrix is normalised.
    """
    p = np.asarray(column_probs, dtype=float)
    if p.shape != (d,):
        raise ValueError(f"expected {d} column probabilities")
    if abs(p.sum() - 1.0 / d) > TOL.trace:
        raise ValueError("column probabilities must sum to 1/d")
    return pauli_channel(d, np.repeat(p[:, None], d, axis=1))


def pauli_column_probs(ch: KrausChannel) -> np.ndarray:
    """Extract p_m from a column-symmetric Pauli channel.

    Raises unless the channel's operators are the canonical shift-and-phase
    set in row-major order and the probabilities depend only on the shift
    index m.
    """
    d = ch.dim
    if len(ch.ops) != d * d:
        raise ValueError("channel is not a generalized Pauli channel")
    canonical = pauli_operator_set(d).ops.reshape(d * d, d, d)
    if np.abs(ch.ops - canonical).max() > 1e-12:
        raise ValueError("channel is not a generalized Pauli channel")
    p = ch.probs.reshape(d, d)
    if np.abs(p - p[:, :1]).max() > 1e-12:
        raise ValueError("channel not column-symmetric")
    return p[:, 0].copy()


def _null_space_within(a: np.ndarray, basis: np.ndarray,
                       tol: float) -> np.ndarray:
    """Orthonormal basis of {v in span(basis) : a v = 0}, possibly empty."""
    m = a @ basis
    _, s, vh = np.linalg.svd(m)
    rank = int((s > tol).sum()) if s.size else 0
    null = vh[rank:].conj().T
    if null.shape[1] == 0:
        return np.zeros((basis.shape[0], 0), dtype=complex)
    q, _ = np.linalg.qr(basis @ null)
    return q


def joint_invariant_state(ops, gap: float = 1e-8,
                          tol: float = 1e-9) -> np.ndarray | None:
    """A unit vector invariant modulo a phase under every operator, or None.

    Intersects the invariant-modulo-phase subspaces of the given unitaries
    by recursive eigenspace refinement: eigendecompose the first operator,
    project the next into each eigenspace, refine, and continue until all
    subspaces die or one survives. Eigenvalues closer than `gap` are
    grouped into a single degenerate eigenspace; membership is decided
    through projected null spaces so phases are never tracked explicitly.
    """
    ops = list(ops)
    if not ops:
        raise ValueError("need at least one operator")
    dim = ops[0].shape[0]
    subspaces = [np.eye(dim, dtype=complex)]
    for a in ops:
        refined = []
        for basis in subspaces:
            compressed = basis.conj().T @ a @ basis
            unique: list[complex] = []
            for lam in np.linalg.eigvals(compressed):
                if not any(abs(lam - known) < gap for known in unique):
                    unique.append(lam)
            for lam in unique:
                sub = _null_space_within(a - lam * np.eye(dim), basis, tol)
                if sub.shape[1] > 0:
                    refined.append(sub)
        subspaces = refined
        if not subspaces:
            return None
    witness = subspaces[0][:, 0]
    return witness / np.linalg.norm(witness)


def pauli_identity_residuals(pauli: PauliOperatorSet) -> dict[str, float]:
    """Numerical residuals of the three defining shift-and-phase identities.

    Checks, over all index pairs: the adjoint relation
    U_mn^dag = xi^(m n) U_{-m,-n}, the commutation phase
    U_kl U_mn = xi^(l m - k n) U_mn U_kl, and tracelessness away from the
    identity. All three are ~1e-15 for a correctly built set.
    """
    d, xi, ops = pauli.dim, pauli.xi, pauli.ops
    dag_res = 0.0
    tr_res = 0.0
    for m in range(d):
        for n in range(d):
            u = ops[m, n]
            expected = xi ** (m * n) * ops[(-m) % d, (-n) % d]
            dag_res = max(dag_res, float(np.abs(dagger(u) - expected).max()))
            want_tr = d if (m == 0 and n == 0) else 0.0
            tr_res = max(tr_res, float(abs(np.trace(u) - want_tr)))
    comm_res = 0.0
    flat = [(m, n) for m in range(d) for n in range(d)]
    for k, l in flat:
        for m, n in flat:
            lhs = ops[k, l] @ ops[m, n]
            rhs = xi ** (l * m - k * n) * (ops[m, n] @ ops[k, l])
            comm_res = max(comm_res, float(np.abs(lhs - rhs).max()))
    return {"adjoint": dag_res, "commutation": comm_res, "trace": tr_res}


def qubit_ixz_channel(p: float, q: float, r: float) -> KrausChannel:
    """Qubit channel with identity, bit-flip and phase-flip errors only.

    The three operators I, sigma_x, sigma_z occur with probabilities
    p, q, r; p + q + r must equal 1.
    """
    probs = np.array([p, q, r], dtype=float)
    if probs.min() < 0.0:
        raise ValueError("probabilities must be nonnegative")
    if abs(probs.sum() - 1.0) > TOL.trace:
        raise ValueError("probabilities must sum to 1")
    ident = np.eye(2, dtype=complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return KrausChannel(dim=2, ops=np.stack([ident, sx, sz]), probs=probs)
