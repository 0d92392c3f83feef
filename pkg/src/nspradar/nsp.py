"""
SVD-based null-space projectors and covariance projection.

For an interference (constraint) matrix ``h`` of shape K x M_d the projector
is ``P = V diag(mask) V^H`` where ``V`` holds all M_d right singular vectors
and ``mask`` keeps the directions whose singular value is numerically zero,
plus every direction beyond ``min(K, M_d)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, ShapeError

__all__ = [
    "SvdResult",
    "Projector",
    "svd",
    "select_null_mask",
    "null_projector",
    "identity_projector",
    "project_covariance",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SvdResult:
    """Full SVD ``a = u @ diag(sigma) @ v^H`` (``v`` has singular vectors as columns)."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray


@dataclass(frozen=True, eq=False)
class Projector:
    """Hermitian idempotent matrix onto the retained null space.

    Attributes
    ----------
    matrix : numpy.ndarray
        M_d x M_d complex projector.
    rank : int
        Dimension of the retained null space (trace of ``matrix``).
    tol : float
        Relative singular-value threshold used to build it.
    """

    matrix: np.ndarray
    rank: int
    tol: float

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)


def svd(a) -> SvdResult:
    """Full singular value decomposition with a square right factor.

    Raises
    ------
    NumericalError
        If the input is not finite or LAPACK fails to converge.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ShapeError(f"svd needs a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericalError("svd input contains non-finite entries")
    rows, cols = a.shape
    if rows == 0:
        return SvdResult(np.zeros((0, 0), complex), np.zeros(0), np.eye(cols, dtype=complex))
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return SvdResult(u, s, vh.conj().T)


def select_null_mask(sigma, m_d: int, tol_rel: float = DEFAULT_TOL) -> np.ndarray:
    """0/1 mask over the ``m_d`` right singular directions.

    The first ``q`` entries are 0, where ``q`` counts singular values above
    ``tol_rel * sigma[0]``; everything after is 1. A zero ``sigma[0]`` gives
    ``q = 0``.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 1 or len(sigma) > m_d:
        raise ShapeError(f"need at most {m_d} singular values, got {sigma.shape}")
    if np.any(np.diff(sigma) > 0):
        raise DomainError("singular values must be sorted in descending order")
    if np.any(sigma < 0):
        raise DomainError("singular values must be non-negative")
    if tol_rel < 0:
        raise DomainError("tolerance must be non-negative")
    q = 0
    if len(sigma) and sigma[0] > 0:
        q = int(np.count_nonzero(sigma > tol_rel * sigma[0]))
    mask = np.ones(m_d)
    mask[:q] = 0.0
    return mask


def null_projector(h, tol_rel: float = DEFAULT_TOL) -> Projector:
    """Projector onto the numerical null space of ``h`` (K x M_d).

    An empty or all-zero ``h`` yields the identity.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2:
        raise ShapeError(f"constraint matrix must be 2-D, got shape {h.shape}")
    m_d = h.shape[1]
    dec = svd(h)
    mask = select_null_mask(dec.sigma, m_d, tol_rel)
    v = dec.v
    p = (v * mask) @ v.conj().T
    # symmetrize away rounding so Hermitian checks hold to machine precision
    p = 0.5 * (p + p.conj().T)
    p.setflags(write=False)
    return Projector(p, int(mask.sum()), float(tol_rel))


def identity_projector(m_d: int) -> Projector:
    p = np.eye(m_d, dtype=complex)
    p.setflags(write=False)
    return Projector(p, m_d, 0.0)


def project_covariance(p: Projector, r) -> np.ndarray:
    """Return ``P R P^H`` for a Hermitian PSD covariance ``r``."""
    pm = np.asarray(p.matrix if isinstance(p, Projector) else p)
    r = np.asarray(r, dtype=complex)
    if r.shape != pm.shape:
        raise ShapeError(f"covariance shape {r.shape} does not match projector {pm.shape}")
    scale = max(1.0, float(np.abs(r).max(initial=0.0)))
    if np.abs(r - r.conj().T).max(initial=0.0) > 1e-10 * scale:
        raise DomainError("covariance is not Hermitian")
    if r.size and np.linalg.eigvalsh(r).min() < -1e-10 * scale:
        raise DomainError("covariance is not positive semidefinite")
    return pm @ r @ pm.conj().T
