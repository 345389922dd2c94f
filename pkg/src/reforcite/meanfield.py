"""Mean-field predictions for the RefOrCite models.

The closed forms (``avg_degree``, ``avg_in_degree``, ``triangle_count``,
``degree_ccdf``, ``ccdf_rescaled``) are the continuous-time approximations.
The ``expected_*`` functions iterate the underlying expectation recursions
step by step from the single-node seed; they carry no large-``t``
approximation and are the tighter oracle for finite simulations.

Time ``t`` is a node count throughout.
"""

from __future__ import annotations

import math

import numpy as np

from reforcite.graph import EvolvingDigraph

# Half-width of the window around a phase boundary treated as the boundary itself.
PHASE_EPS = 1e-9


def ccdf_rescaled(x, p: float):
    """``Pr(X > x) = x ** (-1/p)`` for the rescaled degree ``X``."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 1):
        raise ValueError("x must be >= 1")
    out = x ** (-1.0 / p)
    return float(out) if out.ndim == 0 else out


def avg_degree(t, p: float):
    """Average total degree of a RefOrCite1 network of ``t`` nodes.

    ``2/(2p-1) * ((t/2)**(2p-1) - 1)`` off the boundary and
    ``2 ln(t/2) - 1`` at ``p = 1/2``. For ``p < 1/2`` this tends to
    ``2 / (1 - 2p)``; above it grows like ``t**(2p-1)``.

    The boundary branch is the published expression. The off-boundary branch
    tends to ``2 ln(t/2)`` as ``p -> 1/2``, so the two differ by exactly 1.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 2):
        raise ValueError("t must be >= 2")
    a = 2.0 * p - 1.0
    if abs(a) < 2 * PHASE_EPS:
        out = 2.0 * np.log(t / 2.0) - 1.0
    else:
        out = (2.0 / a) * (t / 2.0) ** a - 2.0 / a
    return float(out) if out.ndim == 0 else out


def avg_in_degree(t, p1: float, p2: float):
    """Average in-degree of a RefOrCite2 network of ``t`` nodes.

    Depends on ``c = p1 + p2`` only. Off the boundary:
    ``(1/(c-1) + 1/2) (t/2)**(c-1) - 1/(c-1)``, tending to ``1/(1-c)`` for
    ``c < 1``. At ``c = 1``: ``ln(t/2) - 1/2`` (the published expression;
    the off-boundary branch tends to ``ln(t/2) + 1/2``).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 2):
        raise ValueError("t must be >= 2")
    a = p1 + p2 - 1.0
    if abs(a) < PHASE_EPS:
        out = np.log(t / 2.0) - 0.5
    else:
        out = (1.0 / a + 0.5) * (t / 2.0) ** a - 1.0 / a
    return float(out) if out.ndim == 0 else out


def _avg_in_degree_smooth(t: float, c: float) -> float:
    # Continuous extension in c; used for inversion.
    a = c - 1.0
    x = t / 2.0
    if abs(a) < 1e-7:
        lx = math.log(x)
        # (x**a - 1)/a expanded to second order.
        return lx + 0.5 * a * lx * lx + 0.5 * x**a
    return (x**a - 1.0) / a + 0.5 * x**a


def triangle_count(t, p: float):
    """Large-``t`` expected triangle count of a RefOrCite1 network.

    ``4p/(2p-1) (t/2)**(2p)`` for ``p > 1/2``, ``2p/(1-2p) t`` for
    ``p < 1/2`` and ``2 p t ln t`` at ``p = 1/2``. Returns 0 for ``p = 0``.

    These drop the contribution of existing triangles (the ``3 p^2`` term of
    the recursion), which is only small for small ``p``; see
    :func:`expected_triangles` for the full recursion.
    """
    if not 0.0 <= p < 1.0:
        raise ValueError(f"p must lie in [0, 1), got {p}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 4):
        raise ValueError("t must be >= 4")
    if p == 0.0:
        out = np.zeros_like(t)
    elif abs(p - 0.5) < PHASE_EPS:
        out = 2.0 * p * t * np.log(t)
    elif p > 0.5:
        out = (4.0 * p / (2.0 * p - 1.0)) * (t / 2.0) ** (2.0 * p)
    else:
        out = (2.0 * p / (1.0 - 2.0 * p)) * t
    return float(out) if out.ndim == 0 else out


def degree_ccdf(k, k0: float, p: float):
    """Conditional ``Pr(k_i > k)`` for a node born with out-degree ``k0``.

    ``((k + 1/p) / (k0 + 1/p)) ** (-1/p)``, normalised to 1 at ``k = k0``.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    k = np.asarray(k, dtype=float)
    if k0 < 0 or np.any(k < k0):
        raise ValueError("need k >= k0 >= 0")
    out = np.clip(((k + 1.0 / p) / (k0 + 1.0 / p)) ** (-1.0 / p), 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def degree_ccdf2(k, k_out: float, p1: float, p2: float):
    """RefOrCite2 analogue of :func:`degree_ccdf` with tail exponent ``1/p2``.

    The shift is ``F/p2`` with ``F = 1 + (p1 - p2) k_out``.
    """
    if not 0.0 < p2 <= 1.0:
        raise ValueError(f"p2 must lie in (0, 1], got {p2}")
    k = np.asarray(k, dtype=float)
    if np.any(k < k_out):
        raise ValueError("need k >= k_out")
    s = (1.0 + (p1 - p2) * k_out) / p2
    out = np.clip(((k + s) / (k_out + s)) ** (-1.0 / p2), 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def rescale_degrees(graph: EvolvingDigraph, p: float) -> np.ndarray:
    """``X_i = (k_i + 1/p) / (k_i^0 + 1/p)`` for every node.

    ``k_i`` is the final total degree and ``k_i^0`` the out-degree at birth.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    k_out = graph.out_degrees().astype(float)
    k = graph.in_degrees() + k_out
    return (k + 1.0 / p) / (k_out + 1.0 / p)


def rescale_degrees2(graph: EvolvingDigraph, p1: float, p2: float) -> np.ndarray:
    """RefOrCite2 rescaling ``(k_i + F_i/p2) / (k_i^out + F_i/p2)``."""
    if not 0.0 < p2 <= 1.0:
        raise ValueError(f"p2 must lie in (0, 1], got {p2}")
    k_out = graph.out_degrees().astype(float)
    k = graph.in_degrees() + k_out
    s = (1.0 + (p1 - p2) * k_out) / p2
    return (k + s) / (k_out + s)


def expected_avg_degree(n: int, p: float) -> float:
    """Exact expected average degree of RefOrCite1 after ``n`` nodes.

    Node ``t`` cites ``1 + p * kbar_{t-1}`` nodes in expectation, so
    ``kbar_t = kbar_{t-1} + ((2p - 1) kbar_{t-1} + 2) / t`` with
    ``kbar_1 = 0``.
    """
    return float(expected_series(n, p)[0][-1])


def expected_avg_in_degree(n: int, p1: float, p2: float) -> float:
    """Exact expected average in-degree of RefOrCite2 after ``n`` nodes."""
    c = p1 + p2
    k = 0.0
    for t in range(2, n + 1):
        k += (1.0 + (c - 1.0) * k) / t
    return k


def expected_triangles(n: int, p: float) -> float:
    """Exact expected triangle count of RefOrCite1 after ``n`` nodes.

    A node arriving to ``t`` existing nodes closes ``p * kbar_t`` triangles
    through its base and ``3 p^2 Delta_t / t`` through existing triangles.
    """
    return float(expected_series(n, p)[1][-1])


def expected_series(n: int, p: float) -> tuple[np.ndarray, np.ndarray]:
    """Expected average degree and triangle count for network sizes ``1..n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    kbar = np.zeros(n)
    tri = np.zeros(n)
    k = 0.0
    d = 0.0
    a = 2.0 * p - 1.0
    q = 3.0 * p * p
    for t in range(2, n + 1):
        m = t - 1
        d = d + p * k + q * d / m
        k = k + (a * k + 2.0) / t
        kbar[t - 1] = k
        tri[t - 1] = d
    return kbar, tri
