"""Directed-bond scattering model and the secular function.

Each internal edge is split into two directed bonds (forward bonds first,
then all reversals, so the length diagonal repeats:
``diag(l_1..l_N, l_1..l_N)``).  A wave leaving vertex v on bond b' after
arriving on bond b picks up the vertex amplitude ``2/d_v - delta``, where
``d_v`` counts all channels at v (bond ends plus leads) and delta is 1 only
for back-reflection.  Those amplitudes are unitary, real and symmetric on
every vertex, which is what makes the whole construction flux-conserving.

Resonances are the zeros of ``det(I - e^{ikL} Sigma)`` continued into the
lower half of the complex k-plane.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import C0
from .graph import MetricGraph

# |e^{-Im k * L}| beyond e^700 overflows double precision
_EXP_ARG_LIMIT = 700.0
_CHUNK = 16384


@dataclass(frozen=True)
class BondSystem:
    """Immutable bond-level model of an open metric graph."""

    lengths: np.ndarray       # (2N,) bond lengths, m
    sigma: np.ndarray         # (2N, 2N) bond-to-bond amplitudes
    lead_in: np.ndarray       # (2N, M) lead -> bond
    lead_out: np.ndarray      # (M, 2N) bond -> lead
    lead_reflect: np.ndarray  # (M, M) lead -> lead

    @property
    def n_edges(self) -> int:
        return self.lengths.size // 2

    @property
    def n_bonds(self) -> int:
        return self.lengths.size

    @property
    def n_leads(self) -> int:
        return self.lead_reflect.shape[0]


def vertex_matrix(d: int) -> np.ndarray:
    """Scattering amplitudes at a degree-``d`` vertex: ``2/d - I``."""
    if d < 1:
        raise ValueError(f"vertex degree must be >= 1, got {d}")
    return np.full((d, d), 2.0 / d) - np.eye(d)


def build_bond_system(graph: MetricGraph) -> BondSystem:
    graph.validate()
    edges = graph.edges
    N = len(edges)
    M = len(graph.leads)
    ell = np.array([e.length for e in edges], dtype=float)
    lengths = np.concatenate([ell, ell])

    # bond b: init(b) --> term(b); reversal of b is (b + N) mod 2N
    init = np.empty(2 * N, dtype=int)
    term = np.empty(2 * N, dtype=int)
    for i, e in enumerate(edges):
        init[i], term[i] = e.a, e.b
        init[N + i], term[N + i] = e.b, e.a

    deg = {v: 0 for v in graph.vertices}
    for b in range(2 * N):
        deg[term[b]] += 1
    for l in graph.leads:
        deg[l.anchor] += 1

    sigma = np.zeros((2 * N, 2 * N))
    lead_in = np.zeros((2 * N, M))
    lead_out = np.zeros((M, 2 * N))
    lead_reflect = np.zeros((M, M))

    for b in range(2 * N):
        v = term[b]
        t = 2.0 / deg[v]
        rev = (b + N) % (2 * N)
        for bp in np.nonzero(init == v)[0]:
            sigma[bp, b] = t - (1.0 if bp == rev else 0.0)
        for m, l in enumerate(graph.leads):
            if l.anchor == v:
                lead_out[m, b] = t
    for m, l in enumerate(graph.leads):
        t = 2.0 / deg[l.anchor]
        for bp in np.nonzero(init == l.anchor)[0]:
            lead_in[bp, m] = t
        for m2, l2 in enumerate(graph.leads):
            if l2.anchor == l.anchor:
                # a lead is its own reversal
                lead_reflect[m2, m] = t - (1.0 if m2 == m else 0.0)

    for a in (lengths, sigma, lead_in, lead_out, lead_reflect):
        a.setflags(write=False)
    return BondSystem(lengths, sigma, lead_in, lead_out, lead_reflect)


def _check_exponent_range(system: BondSystem, ks: np.ndarray) -> None:
    worst = np.max(-ks.imag) * np.max(system.lengths)
    if worst > _EXP_ARG_LIMIT:
        raise OverflowError(
            f"Im k too deep: |exp(ikL)| would exceed e^{_EXP_ARG_LIMIT:.0f}"
        )


def _phase_matrix(system: BondSystem, ks: np.ndarray) -> np.ndarray:
    """e^{ikL} bond phases for a batch of wavenumbers, shape (m, 2N)."""
    return np.exp(1j * ks[:, None] * system.lengths[None, :])


def secular_many(system: BondSystem, ks) -> np.ndarray:
    """Vectorized ``det(I - e^{ikL} Sigma)`` over an array of wavenumbers."""
    ks = np.atleast_1d(np.asarray(ks, dtype=complex))
    _check_exponent_range(system, ks)
    n = system.n_bonds
    out = np.empty(ks.shape, dtype=complex)
    eye = np.eye(n)
    for lo in range(0, ks.size, _CHUNK):
        chunk = ks[lo:lo + _CHUNK]
        phases = _phase_matrix(system, chunk)
        # e^{ikL} is diagonal, so it scales the rows of Sigma
        mats = eye[None, :, :] - phases[:, :, None] * system.sigma[None, :, :]
        out[lo:lo + _CHUNK] = np.linalg.det(mats)
    return out


def secular(system: BondSystem, k: complex) -> complex:
    """``det(I - e^{ikL} Sigma)``; its zeros are the resonances."""
    return complex(secular_many(system, [k])[0])


def secular_derivative(system: BondSystem, k: complex) -> complex:
    """d/dk of the secular determinant.

    Uses ``det(M) tr(M^-1 M')`` with ``M' = -i L e^{ikL} Sigma``; at a zero M
    is singular and the value is recomputed by central finite differences.
    """
    k = complex(k)
    ks = np.array([k], dtype=complex)
    _check_exponent_range(system, ks)
    phases = _phase_matrix(system, ks)[0]
    M = np.eye(system.n_bonds) - phases[:, None] * system.sigma
    Mp = -1j * (system.lengths * phases)[:, None] * system.sigma
    try:
        trace = np.trace(np.linalg.solve(M, Mp))
        value = np.linalg.det(M) * trace
        if np.isfinite(value):
            return complex(value)
    except np.linalg.LinAlgError:
        pass
    h = 1e-7 * (1.0 + abs(k))
    fp, fm = secular_many(system, [k + h, k - h])
    return complex((fp - fm) / (2.0 * h))


def log_derivative(system: BondSystem, k: complex) -> complex:
    """``secular'/secular = tr(M^-1 M')`` -- finite and stable near zeros."""
    ks = np.array([complex(k)], dtype=complex)
    _check_exponent_range(system, ks)
    phases = _phase_matrix(system, ks)[0]
    M = np.eye(system.n_bonds) - phases[:, None] * system.sigma
    Mp = -1j * (system.lengths * phases)[:, None] * system.sigma
    return complex(np.trace(np.linalg.solve(M, Mp)))


def smatrix_many(system: BondSystem, ks) -> np.ndarray:
    """Lead-to-lead scattering matrices, shape (m, M, M)."""
    if system.n_leads == 0:
        raise ValueError("graph has no leads; the scattering matrix is empty")
    ks = np.atleast_1d(np.asarray(ks, dtype=complex))
    _check_exponent_range(system, ks)
    n = system.n_bonds
    M = system.n_leads
    out = np.empty((ks.size, M, M), dtype=complex)
    eye = np.eye(n)
    for lo in range(0, ks.size, _CHUNK):
        chunk = ks[lo:lo + _CHUNK]
        phases = _phase_matrix(system, chunk)
        # (I - Sigma e^{ikL})^-1 rho_in: here e^{ikL} scales Sigma's columns
        mats = eye[None, :, :] - system.sigma[None, :, :] * phases[:, None, :]
        rhs = np.broadcast_to(system.lead_in, (chunk.size, n, M))
        interior = np.linalg.solve(mats, rhs)
        out[lo:lo + chunk.size] = (
            system.lead_reflect[None, :, :]
            + system.lead_out[None, :, :] @ (phases[:, :, None] * interior)
        )
    return out


def external_smatrix(system: BondSystem, k: complex) -> np.ndarray:
    """Scattering matrix ``rho_LL + rho_LB e^{ikL} (I - Sigma e^{ikL})^-1 rho_BL``.

    Unitary for real k on a lossless graph; its poles sit at the secular
    zeros, so values within ~1e-12 of a resonance are flagged as unreliable.
    """
    if abs(secular(system, k)) < 1e-12:
        warnings.warn(
            f"k={k} is numerically at a resonance; scattering matrix is "
            "near-singular",
            RuntimeWarning,
            stacklevel=2,
        )
    return smatrix_many(system, [k])[0]


def det_smatrix_modulus(system: BondSystem, nu, absorption: float = 0.0):
    """|det S| at ``k = 2 pi nu / c + i * absorption``.

    Lossless (absorption 0) values are exactly 1 up to roundoff; positive
    absorption pulls the evaluation line toward the resonance poles and
    carves a dip near each one.
    """
    if absorption < 0.0:
        raise ValueError(f"absorption must be >= 0, got {absorption}")
    nu_arr = np.atleast_1d(np.asarray(nu, dtype=float))
    if np.any(nu_arr <= 0.0):
        raise ValueError("frequencies must be positive")
    ks = 2.0 * np.pi * nu_arr / C0 + 1j * absorption
    mods = np.abs(np.linalg.det(smatrix_many(system, ks)))
    return float(mods[0]) if np.isscalar(nu) or np.ndim(nu) == 0 else mods
