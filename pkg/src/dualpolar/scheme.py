"""The dual polar graph on X = Omega_d and its distance-regular structure."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lattice import PolarLattice
from .qseries import valency


class NotDistanceRegular(AssertionError):
    pass


@dataclass(frozen=True)
class DualPolarGraph:
    lattice: PolarLattice
    dist: np.ndarray

    @property
    def d(self) -> int:
        return self.lattice.d

    @property
    def vertices(self):
        return self.lattice.X

    def __len__(self) -> int:
        return len(self.dist)

    def edges(self) -> list[tuple[int, int]]:
        xs, ys = np.nonzero(np.triu(self.dist == 1))
        return list(zip(xs.tolist(), ys.tolist()))


def build_graph(lat: PolarLattice) -> DualPolarGraph:
    """Distances d(x, y) = d - dim(x & y) from lattice meets."""
    X = lat.X
    n = len(X)
    dist = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = lat.d - lat.meet(X[i], X[j]).rank
    return DualPolarGraph(lat, dist)


def bfs_distances(g: DualPolarGraph) -> np.ndarray:
    """Graph distances from the distance-1 relation alone."""
    n = len(g)
    nbrs = [np.flatnonzero(g.dist[i] == 1).tolist() for i in range(n)]
    out = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        out[s, s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in nbrs[v]:
                if out[s, w] < 0:
                    out[s, w] = out[s, v] + 1
                    queue.append(w)
    return out


def adjacency_matrix(g: DualPolarGraph, i: int) -> np.ndarray:
    if not 0 <= i <= g.d:
        raise IndexError(f"distance {i} outside 0..{g.d}")
    return (g.dist == i).astype(np.int64)


@dataclass(frozen=True)
class IntersectionNumbers:
    p: np.ndarray  # p[i, j, h]

    @property
    def k(self) -> list[int]:
        return [int(self.p[i, i, 0]) for i in range(len(self.p))]

    def rows(self):
        d = len(self.p) - 1
        for i in range(d + 1):
            for j in range(d + 1):
                for h in range(d + 1):
                    yield i, j, h, int(self.p[i, j, h])


def intersection_numbers(g: DualPolarGraph) -> IntersectionNumbers:
    """p_ij^h, checked constant over every base pair.

    (A_i A_j)[x, y] counts the z with d(x, z) = i and d(z, y) = j, so the
    constancy test and the algebra identity A_i A_j = sum_h p_ij^h A_h are
    the same computation.
    """
    d = g.d
    A = [adjacency_matrix(g, i) for i in range(d + 1)]
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for i in range(d + 1):
        for j in range(d + 1):
            prod = A[i] @ A[j]
            for h in range(d + 1):
                vals = np.unique(prod[A[h] == 1])
                if len(vals) != 1:
                    raise NotDistanceRegular(f"p_{i}{j}^{h} takes values {vals.tolist()}")
                p[i, j, h] = vals[0]
            recon = sum(p[i, j, h] * A[h] for h in range(d + 1))
            if not np.array_equal(prod, recon):
                raise NotDistanceRegular(f"A_{i} A_{j} is not in the span of the A_h")
    return IntersectionNumbers(p)


def valency_check(nums: IntersectionNumbers, d: int, two_e: int, q: int) -> list[tuple[int, Fraction]]:
    """Pairs (observed k_i, closed form) that disagree."""
    return [(k, valency(i, d, two_e, q)) for i, k in enumerate(nums.k) if k != valency(i, d, two_e, q)]


def to_dot(g: DualPolarGraph, name: str = "dual_polar") -> str:
    lines = [f'graph "{name}" {{']
    lines += [f"  {i};" for i in range(len(g))]
    lines += [f"  {i} -- {j};" for i, j in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
