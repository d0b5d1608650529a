"""Functional graphs: a finite set with a self-map, viewed as a digraph where
every vertex has out-degree one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

__all__ = [
    "FunctionalGraph",
    "ComponentProfile",
    "TreeProfile",
    "build_graph",
    "decompose",
    "tree_profile",
    "canonical_tree",
]


class FunctionalGraph:
    """Vertices 0..n-1 with successor array ``succ``."""

    def __init__(self, succ: Sequence[int], labels: Optional[Sequence[str]] = None, name: str = ""):
        n = len(succ)
        for v, s in enumerate(succ):
            if not 0 <= s < n:
                raise ValueError(f"successor of vertex {v} is {s}, outside [0, {n})")
        self.n = n
        self.succ = list(succ)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("one label per vertex is required")
        self.name = name
        self._preds: Optional[list] = None
        self._cyclic: Optional[list] = None

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FunctionalGraph({self.name or 'unnamed'}, n={self.n})"

    def preimages(self) -> list:
        if self._preds is None:
            preds: list = [[] for _ in range(self.n)]
            for v, s in enumerate(self.succ):
                preds[s].append(v)
            self._preds = preds
        return self._preds

    def indegree(self, v: int) -> int:
        return len(self.preimages()[v])

    def indegrees(self) -> list:
        return [len(ps) for ps in self.preimages()]

    def self_loops(self) -> list:
        return [v for v, s in enumerate(self.succ) if v == s]

    def cyclic(self) -> list:
        """Boolean list: is the vertex periodic?"""
        if self._cyclic is None:
            n = self.n
            succ = self.succ
            state = [0] * n  # 0 unseen, 1 on current walk, 2 finished
            on_cycle = [False] * n
            for start in range(n):
                if state[start]:
                    continue
                path = []
                v = start
                while state[v] == 0:
                    state[v] = 1
                    path.append(v)
                    v = succ[v]
                if state[v] == 1:
                    # closed a new cycle at v
                    u = v
                    while True:
                        on_cycle[u] = True
                        u = succ[u]
                        if u == v:
                            break
                for u in path:
                    state[u] = 2
            self._cyclic = on_cycle
        return self._cyclic

    def periodic_vertices(self) -> list:
        return [v for v, c in enumerate(self.cyclic()) if c]

    def depths(self) -> list:
        """Steps needed to reach a periodic vertex."""
        cyc = self.cyclic()
        depth = [0 if c else -1 for c in cyc]
        preds = self.preimages()
        frontier = [v for v in range(self.n) if cyc[v]]
        while frontier:
            nxt = []
            for v in frontier:
                for u in preds[v]:
                    if depth[u] < 0:
                        depth[u] = depth[v] + 1
                        nxt.append(u)
            frontier = nxt
        return depth

    def edges(self) -> list:
        return list(enumerate(self.succ))

    def relabel(self, perm: Sequence[int]) -> "FunctionalGraph":
        """The graph transported along the vertex bijection ``perm``."""
        succ = [0] * self.n
        labels = [""] * self.n
        for v in range(self.n):
            succ[perm[v]] = perm[self.succ[v]]
            labels[perm[v]] = self.labels[v]
        return FunctionalGraph(succ, labels, self.name)


def build_graph(n: int, successor_fn: Callable[[int], int],
                labels: Optional[Sequence[str]] = None, name: str = "") -> FunctionalGraph:
    return FunctionalGraph([successor_fn(v) for v in range(n)], labels, name)


@dataclass
class ComponentProfile:
    """One connected component: its cycle and the trees hanging off it."""

    cycle: list
    vertices: list
    trees: dict  # cycle vertex -> {vertex: [children]} restricted to the tree
    leaf_depths: Counter
    indegree_histogram: Counter
    max_depth: int = 0

    @property
    def cycle_length(self) -> int:
        return len(self.cycle)

    def size(self) -> int:
        return len(self.vertices)


def decompose(g: FunctionalGraph) -> list:
    """Split g into components, ordered by smallest vertex id."""
    cyc = g.cyclic()
    preds = g.preimages()
    depth = g.depths()
    indeg = g.indegrees()
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start] or not cyc[start]:
            continue
        # walk the cycle
        cycle = [start]
        v = g.succ[start]
        while v != start:
            cycle.append(v)
            v = g.succ[v]
        # rotate so the smallest id leads
        i = cycle.index(min(cycle))
        cycle = cycle[i:] + cycle[:i]
        vertices = []
        trees = {}
        for r in cycle:
            children: dict = {}
            stack = [r]
            while stack:
                u = stack.pop()
                seen[u] = True
                vertices.append(u)
                kids = [w for w in preds[u] if not cyc[w]]
                children[u] = sorted(kids)
                stack.extend(kids)
            trees[r] = children
        leaf_depths = Counter(depth[u] for u in vertices if indeg[u] == 0)
        comps.append(ComponentProfile(
            cycle=cycle,
            vertices=sorted(vertices),
            trees=trees,
            leaf_depths=leaf_depths,
            indegree_histogram=Counter(indeg[u] for u in vertices),
            max_depth=max(depth[u] for u in vertices),
        ))
    comps.sort(key=lambda c: c.vertices[0])
    return comps


def canonical_tree(children: dict, root: int) -> str:
    """Canonical string for an unordered rooted tree (sorted child encodings)."""
    # iterative post-order to stay clear of the recursion limit
    code: dict = {}
    stack = [(root, False)]
    while stack:
        v, done = stack.pop()
        kids = children.get(v, [])
        if done:
            code[v] = "(" + "".join(sorted(code[c] for c in kids)) + ")"
        else:
            stack.append((v, True))
            stack.extend((c, False) for c in kids)
    return code[root]


@dataclass
class TreeProfile:
    is_full_ternary: bool
    is_complete: bool
    leaf_depth: Optional[int]  # common leaf depth, or None when leaves differ
    sizes_by_depth: list
    leaf_depths: Counter
    children_by_depth: dict = field(default_factory=dict)  # depth -> Counter of child counts
    canonical: str = ""

    @property
    def size(self) -> int:
        return sum(self.sizes_by_depth)


def tree_profile(children: dict, root: int, root_arity: int = 3) -> TreeProfile:
    """Shape statistics of the arborescence below ``root``.

    A tree is full ternary when every internal vertex has three children; a
    root attached to a cycle has one preimage on the cycle, so callers pass
    ``root_arity=2`` to require two tree children there instead.
    """
    sizes: list = []
    leaf_depths: Counter = Counter()
    by_depth: dict = {}
    full = True
    level = [root]
    depth = 0
    while level:
        sizes.append(len(level))
        nxt = []
        for v in level:
            kids = children.get(v, [])
            by_depth.setdefault(depth, Counter())[len(kids)] += 1
            if not kids:
                leaf_depths[depth] += 1
            else:
                want = root_arity if v == root else 3
                if len(kids) != want:
                    full = False
            nxt.extend(kids)
        level = nxt
        depth += 1
    leaf_depth = next(iter(leaf_depths)) if len(leaf_depths) == 1 else None
    return TreeProfile(
        is_full_ternary=full,
        is_complete=full and leaf_depth is not None,
        leaf_depth=leaf_depth,
        sizes_by_depth=sizes,
        leaf_depths=leaf_depths,
        children_by_depth=by_depth,
        canonical=canonical_tree(children, root),
    )


def cycle_lengths(comps: Iterable[ComponentProfile]) -> list:
    return sorted(c.cycle_length for c in comps)
