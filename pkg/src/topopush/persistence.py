"""Zero-dimensional persistent homology of planar point sets.

A Rips filtration on pairwise distance: two points join the same class once
the threshold reaches their distance.  In dimension 0 the finite deaths are
exactly the edge weights of a Euclidean minimum spanning tree, so the diagram
is computed with Kruskal's algorithm over a union-find forest.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import GeometryError, Pose2, Workspace

__all__ = [
    "DUPLICATE_TOL",
    "UnionFind",
    "PersistenceDiagram",
    "ComponentPartition",
    "PersistentRadii",
    "sorted_edges",
    "zero_dim_persistence",
    "components_at",
    "persistent_radii",
    "clearance_h",
    "gripper_clearance_h",
    "closest_component",
    "diagram_to_csv",
]

DUPLICATE_TOL = 1e-12


class UnionFind:
    """Disjoint-set forest with path compression and union by rank."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.count = size

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets holding ``a`` and ``b``; False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.count -= 1
        return True

    def groups(self) -> list[tuple[int, ...]]:
        by_root: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            by_root.setdefault(self.find(i), []).append(i)
        return sorted((tuple(g) for g in by_root.values()), key=lambda g: g[0])


@dataclass(frozen=True)
class PersistenceDiagram:
    deaths: tuple[float, ...]
    essential_count: int = 1

    @property
    def pairs(self) -> list[tuple[float, float]]:
        """(birth, death) pairs, essential class last with death = inf."""
        out = [(0.0, d) for d in self.deaths]
        out.extend((0.0, math.inf) for _ in range(self.essential_count))
        return out


@dataclass(frozen=True)
class ComponentPartition:
    radius: float
    components: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class PersistentRadii:
    nu: float
    h: float
    radii: tuple[float, ...]

    @property
    def minimum(self) -> float:
        return self.radii[0]


def sorted_edges(points: Sequence[Sequence[float]]) -> list[tuple[float, int, int]]:
    n = len(points)
    edges = [
        (math.dist(points[i], points[j]), i, j)
        for i in range(n)
        for j in range(i + 1, n)
    ]
    edges.sort()
    return edges


def zero_dim_persistence(points: Sequence[Sequence[float]]) -> PersistenceDiagram:
    n = len(points)
    if n == 0:
        raise GeometryError("persistence of an empty point set")
    edges = sorted_edges(points)
    if edges and edges[0][0] <= DUPLICATE_TOL:
        _, i, j = edges[0]
        raise GeometryError(f"points {i} and {j} coincide; filtration is degenerate")
    uf = UnionFind(n)
    deaths = []
    for d, i, j in edges:
        if uf.union(i, j):
            deaths.append(d)
            if uf.count == 1:
                break
    return PersistenceDiagram(tuple(deaths), 1)


def components_at(points: Sequence[Sequence[float]], r: float) -> ComponentPartition:
    """Connected components of the graph joining points at distance <= r."""
    if r < 0.0:
        raise GeometryError("radius must be >= 0")
    uf = UnionFind(len(points))
    for d, i, j in sorted_edges(points):
        if d > r:
            break
        uf.union(i, j)
    return ComponentPartition(r, tuple(uf.groups()))


def persistent_radii(diagram: PersistenceDiagram, nu: float, h: float) -> PersistentRadii:
    """Death radii >= h after which the component count holds for nu.

    A death d qualifies when no other death falls in (d, d + nu].  When no
    death qualifies the single radius max(h, last death) is returned, at
    which every point is already one component.
    """
    if nu <= 0.0:
        raise ValueError("nu must be > 0")
    deaths = sorted(diagram.deaths)
    radii = []
    for k, d in enumerate(deaths):
        if d < h:
            continue
        nxt = next((e for e in deaths[k + 1:] if e > d), None)
        if nxt is None or nxt > d + nu:
            radii.append(d)
    if not radii:
        radii = [max(h, deaths[-1]) if deaths else h]
    return PersistentRadii(nu, h, tuple(radii))


def clearance_h(gripper_width: float, object_radius: float) -> float:
    # 10% slack on the gripper width for imprecision
    return 1.1 * gripper_width + 2.0 * object_radius


def gripper_clearance_h(ws: Workspace) -> float:
    """Smallest radius at which the gripper fits between two components."""
    return clearance_h(ws.gripper_width, ws.object_radius)


def closest_component(
    partition: ComponentPartition,
    points: Sequence[Sequence[float]],
    gripper: Pose2,
) -> tuple[int, ...]:
    if not partition.components:
        raise GeometryError("closest component of an empty partition")
    g = gripper.position
    best, best_d = None, math.inf
    for comp in sorted(partition.components, key=min):
        d = min(math.dist(points[i], g) for i in comp)
        if d < best_d:
            best, best_d = comp, d
    return tuple(sorted(best))


def diagram_to_csv(diagram: PersistenceDiagram) -> str:
    buf = io.StringIO()
    buf.write("birth,death\n")
    for birth, death in diagram.pairs:
        buf.write(f"{birth!r},{'inf' if math.isinf(death) else repr(death)}\n")
    return buf.getvalue()
