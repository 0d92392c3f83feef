"""Independent reference computations used by the tests.

Nothing here calls into nspradar: loops and textbook formulas only.
"""

import cmath
import math

import numpy as np


def steering_loop(angle_deg, n, spacing=0.5):
    """Element-by-element phase evaluation."""
    c = math.cos(math.radians(angle_deg))
    return np.array([cmath.exp(-2j * math.pi * i * spacing * c) for i in range(n)])


def gram_schmidt_complement(h, tol=1e-10):
    """``I - Q Q^H`` where ``Q`` is a modified Gram-Schmidt basis of ``range(h^H)``."""
    h = np.asarray(h, dtype=complex)
    m = h.shape[1]
    basis = []
    scale = max((np.linalg.norm(r) for r in h), default=0.0)
    for row in h:
        v = row.conj().copy()
        for _ in range(2):  # re-orthogonalize once for stability
            for q in basis:
                v = v - (q.conj() @ v) * q
        nv = np.linalg.norm(v)
        if nv > tol * max(scale, 1e-300):
            basis.append(v / nv)
    p = np.eye(m, dtype=complex)
    for q in basis:
        p -= np.outer(q, q.conj())
    return p


def numerical_rank(a, rel=1e-10):
    s = np.linalg.svd(np.asarray(a), compute_uv=False)
    if not len(s) or s[0] == 0:
        return 0
    return int(np.sum(s > rel * s[0]))


def beampattern_point(r_nsp, theta, phi, m_h, m_v, spacing=0.5):
    """Direct double sum for ``|a_h(theta)^H R a_v(phi)|``."""
    a_h = steering_loop(theta, m_h, spacing)
    a_v = steering_loop(phi, m_v, spacing)
    total = 0j
    for k in range(m_h):
        for l in range(m_v):
            total += a_h[k].conjugate() * r_nsp[k, l] * a_v[l]
    return abs(total)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
