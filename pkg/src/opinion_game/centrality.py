"""Influence measures: one-phase and look-ahead Katz vectors, resolvent rows.

``r`` solves (I - w^T) r = 1; r[i] is the total opinion mass a unit of direct
influence on node i produces within a single phase. ``s`` reweights that by
how much of the produced opinion survives into a following phase through the
bias weights, s = (I - w^T)^{-1} (r o w0), and higher orders extend the
look-ahead one phase at a time. Rows of the resolvent (I - w)^{-1} are
computed on demand and memoized per network.
"""

from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass

import numpy as np

from .dynamics import DENSE_MAX_N, solve_linear
from .model import Network


@dataclass(frozen=True)
class CentralityProfile:
    """The influence vectors of a network: r, s, and optional higher orders."""

    r: np.ndarray
    s: np.ndarray
    higher: tuple[np.ndarray, ...] = ()

    def order(self, q: int) -> np.ndarray:
        """Look-ahead vector for q phases (1 -> r, 2 -> s, 3+ -> higher)."""
        if q < 1:
            raise ValueError("q must be at least 1")
        if q == 1:
            return self.r
        if q == 2:
            return self.s
        if q - 3 < len(self.higher):
            return self.higher[q - 3]
        raise ValueError(f"profile only holds orders up to {2 + len(self.higher)}")


def katz_r(net: Network, *, method: str = "auto") -> np.ndarray:
    """One-phase influence vector: solves (I - w^T) r = 1."""
    return solve_linear(net, np.ones(net.n), transpose=True, method=method)


def katz_s(net: Network, r: np.ndarray | None = None, *, method: str = "auto") -> np.ndarray:
    """Two-phase influence vector: solves (I - w^T) s = r o w0."""
    if r is None:
        r = katz_r(net, method=method)
    return solve_linear(net, r * net.w0, transpose=True, method=method)


def katz_multiphase(net: Network, q: int, *, method: str = "auto") -> np.ndarray:
    """q-phase influence vector; order 1 is r, each further order solves
    (I - w^T) r_q = r_{q-1} o w0."""
    if q < 1:
        raise ValueError("q must be at least 1")
    vec = katz_r(net, method=method)
    for _ in range(q - 1):
        vec = solve_linear(net, vec * net.w0, transpose=True, method=method)
    return vec


def compute_profile(net: Network, orders: int = 2, *, method: str = "auto") -> CentralityProfile:
    """r, s and any further look-ahead orders in one pass."""
    if orders < 2:
        raise ValueError("orders must be at least 2")
    r = katz_r(net, method=method)
    s = katz_s(net, r, method=method)
    higher = []
    vec = s
    for _ in range(orders - 2):
        vec = solve_linear(net, vec * net.w0, transpose=True, method=method)
        higher.append(vec)
    return CentralityProfile(r=r, s=s, higher=tuple(higher))


class _ResolventCache:
    """Memoized resolvent rows for one network: lock-free reads, locked writes."""

    __slots__ = ("rows", "matrix", "lock")

    def __init__(self):
        self.rows: dict[int, np.ndarray] = {}
        self.matrix: np.ndarray | None = None
        self.lock = threading.Lock()


_caches: "weakref.WeakKeyDictionary[Network, _ResolventCache]" = weakref.WeakKeyDictionary()
_caches_lock = threading.Lock()


def _cache_for(net: Network) -> _ResolventCache:
    cache = _caches.get(net)
    if cache is None:
        with _caches_lock:
            cache = _caches.get(net)
            if cache is None:
                cache = _ResolventCache()
                _caches[net] = cache
    return cache


def delta_row(net: Network, j: int, *, method: str = "auto") -> np.ndarray:
    """Row j of (I - w)^{-1}: entry i tells how much of node j's converged
    opinion is sourced from the static input at node i. Solved via the
    transposed system (I - w)^T z = e_j and memoized per network."""
    if not 0 <= j < net.n:
        raise ValueError(f"node {j} out of range")
    cache = _cache_for(net)
    row = cache.rows.get(j)
    if row is not None:
        return row
    with cache.lock:
        row = cache.rows.get(j)
        if row is None:
            if cache.matrix is not None:
                row = np.array(cache.matrix[j])
            else:
                unit = np.zeros(net.n)
                unit[j] = 1.0
                row = solve_linear(net, unit, transpose=True, method=method)
            row.setflags(write=False)
            cache.rows[j] = row
    return row


def delta_matrix(net: Network) -> np.ndarray:
    """Dense (I - w)^{-1}; refused above the dense solver cutoff to keep the
    resolvent from being materialized for large graphs."""
    if net.n > DENSE_MAX_N:
        raise ValueError(f"dense resolvent refused for n={net.n} > {DENSE_MAX_N}")
    cache = _cache_for(net)
    if cache.matrix is None:
        with cache.lock:
            if cache.matrix is None:
                inv = np.linalg.inv(np.eye(net.n) - net.weights_dense)
                inv.setflags(write=False)
                cache.matrix = inv
    return cache.matrix


def apply_delta(net: Network, vec, *, method: str = "auto") -> np.ndarray:
    """(I - w)^{-1} @ vec without forming the inverse."""
    return solve_linear(net, vec, transpose=False, method=method)
