"""Combinatorial equilateral trees: validation, canonical codes,
enumeration of free trees, attachment and vertex orbits.

Edge lengths are never stored.  Every edge has the same (formal) length.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator, Sequence

MAX_ENUM_N = 16

CanonCode = tuple[int, ...]


class TreeError(ValueError):
    """Invalid tree data or an out-of-range vertex."""


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Sequence[Sequence[int]]):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise TreeError(f"vertex count must be a positive integer, got {n!r}")
        norm = []
        for e in edges:
            if len(e) != 2:
                raise TreeError(f"edge {e!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise TreeError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise TreeError(f"self-loop at vertex {u}")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise TreeError("duplicate edge")
        if len(norm) != n - 1:
            raise TreeError(f"a tree on {n} vertices needs {n - 1} edges, got {len(norm)}")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise TreeError("edges do not form a connected graph")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in adj))

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def _check(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise TreeError(f"vertex {v!r} is not in 0..{self.n - 1}")

    def rooted(self, root: int) -> "RootedTree":
        return RootedTree(self, root)


@dataclass(frozen=True)
class RootedTree:
    tree: Tree
    root: int

    def __post_init__(self):
        self.tree._check(self.root)

    @property
    def n(self) -> int:
        return self.tree.n


def path(n: int) -> Tree:
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Tree:
    """Star on ``n`` vertices; vertex 0 is the centre."""
    return Tree(n, [(0, i) for i in range(1, n)])


def spider(legs: Sequence[int]) -> Tree:
    """Centre 0 with one path of each given length hanging off it."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(nxt, edges)


def pendants(t: Tree) -> set[int]:
    return {v for v in range(t.n) if len(t.adj[v]) == 1}


def interior_vertices(t: Tree) -> set[int]:
    return {v for v in range(t.n) if len(t.adj[v]) >= 2}


def degree(t: Tree, v: int) -> int:
    return t.degree(v)


# --- canonical codes ------------------------------------------------------


def _rooted_code(adj: Sequence[Sequence[int]], root: int) -> CanonCode:
    # iterative post-order so deep paths do not hit the recursion limit
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in adj[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    codes: dict[int, CanonCode] = {}
    for u in reversed(order):
        kids = sorted((codes.pop(w) for w in adj[u] if w != parent[u]), reverse=True)
        code = [0]
        for k in kids:
            code.extend(x + 1 for x in k)
        codes[u] = tuple(code)
    return codes[root]


def centers(t: Tree) -> list[int]:
    """The one or two central vertices, by repeated leaf stripping."""
    if t.n <= 2:
        return list(range(t.n))
    deg = t.degrees()
    layer = [v for v in range(t.n) if deg[v] == 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for u in layer:
            for w in t.adj[u]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def canon_code(t: Tree | RootedTree) -> CanonCode:
    """Canonical level sequence.

    For a RootedTree it is taken from the root (root-preserving
    isomorphism); for a free Tree it is the largest code over the centres.
    Codes of rooted and free trees are not meant to be compared.
    """
    if isinstance(t, RootedTree):
        return _rooted_code(t.tree.adj, t.root)
    return max(_rooted_code(t.adj, c) for c in centers(t))


def vertex_orbits(t: Tree) -> list[list[int]]:
    """Automorphism orbits, as sorted blocks ordered by smallest member."""
    blocks: dict[CanonCode, list[int]] = {}
    for v in range(t.n):
        blocks.setdefault(_rooted_code(t.adj, v), []).append(v)
    return sorted(blocks.values())


def orbit_index(t: Tree) -> list[int]:
    """``orbit_index(t)[v]`` is the smallest vertex in the orbit of ``v``."""
    out = [0] * t.n
    for block in vertex_orbits(t):
        for v in block:
            out[v] = block[0]
    return out


# --- enumeration ----------------------------------------------------------


def level_sequence_to_tree(layout: Sequence[int]) -> Tree:
    edges = []
    stack: list[int] = []
    for i, lev in enumerate(layout):
        while stack and layout[stack[-1]] >= lev:
            stack.pop()
        if stack:
            edges.append((stack[-1], i))
        stack.append(i)
    return Tree(len(layout), edges)


def _next_rooted(pred: list[int], p: int | None = None) -> list[int] | None:
    # Beyer-Hedetniemi successor of a canonical level sequence
    if p is None:
        p = len(pred) - 1
        while pred[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while pred[q] != pred[p] - 1:
        q -= 1
    res = list(pred)
    for i in range(p, len(res)):
        res[i] = res[i - p + q]
    return res


def _split(layout: list[int]) -> tuple[list[int], list[int]]:
    m = len(layout)
    seen = False
    for i, lev in enumerate(layout):
        if lev == 1:
            if seen:
                m = i
                break
            seen = True
    left = [x - 1 for x in layout[1:m]]
    rest = [0] + layout[m:]
    return left, rest


def _next_free(cand: list[int]) -> list[int] | None:
    # Wright-Richmond-Odlyzko-McKay: skip level sequences that are not the
    # canonical representative of their free tree
    left, rest = _split(cand)
    hl, hr = max(left), max(rest)
    ok = hr >= hl
    if ok and hr == hl:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return cand
    p = len(left)
    new = _next_rooted(cand, p)
    if new is not None and cand[p] > 2:
        nl, _ = _split(new)
        tail = list(range(1, max(nl) + 2))
        new[-len(tail):] = tail
    return new


def _free_level_sequences(n: int) -> Iterator[list[int]]:
    if n == 1:
        yield [0]
        return
    if n == 2:
        yield [0, 1]
        return
    layout: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while layout is not None:
        layout = _next_free(layout)
        if layout is not None:
            yield layout
            layout = _next_rooted(layout)


def enumerate_trees(n: int, start: int = 0, stop: int | None = None, max_n: int = MAX_ENUM_N) -> Iterator[Tree]:
    """One tree per isomorphism class on ``n`` vertices, in a fixed order.

    ``start``/``stop`` slice the stream by enumeration index so that
    searches can be partitioned.
    """
    if not isinstance(n, int) or not 1 <= n <= max_n:
        raise TreeError(f"n must be in 1..{max_n}, got {n!r}")
    for layout in islice(_free_level_sequences(n), start, stop):
        yield level_sequence_to_tree(layout)


def count_trees(n: int, max_n: int = MAX_ENUM_N) -> int:
    if not isinstance(n, int) or not 1 <= n <= max_n:
        raise TreeError(f"n must be in 1..{max_n}, got {n!r}")
    return sum(1 for _ in _free_level_sequences(n))


# --- surgery --------------------------------------------------------------


def attach(base: Tree, v: int, attached: RootedTree) -> Tree:
    """Glue the root of ``attached`` onto vertex ``v`` of ``base``.

    Base labels are kept; the non-root vertices of ``attached`` get labels
    ``base.n, base.n + 1, ...`` in increasing order of their old labels.
    """
    base._check(v)
    a = attached.tree
    relabel = {attached.root: v}
    nxt = base.n
    for u in range(a.n):
        if u != attached.root:
            relabel[u] = nxt
            nxt += 1
    edges = list(base.edges) + [(relabel[x], relabel[y]) for x, y in a.edges]
    return Tree(nxt, edges)


# --- i/o ------------------------------------------------------------------


def tree_to_dict(t: Tree | RootedTree) -> dict:
    if isinstance(t, RootedTree):
        return {"n": t.tree.n, "edges": [list(e) for e in t.tree.edges], "root": t.root}
    return {"n": t.n, "edges": [list(e) for e in t.edges], "root": None}


def tree_from_dict(data: dict) -> Tree | RootedTree:
    if not isinstance(data, dict):
        raise TreeError("tree JSON must be an object")
    for key in ("n", "edges"):
        if key not in data:
            raise TreeError(f"tree JSON is missing field '{key}'")
    if not isinstance(data["edges"], list):
        raise TreeError("field 'edges' must be a list of vertex pairs")
    for e in data["edges"]:
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, int) for x in e):
            raise TreeError(f"field 'edges' holds a malformed pair {e!r}")
    t = Tree(data["n"], data["edges"])
    root = data.get("root")
    if root is None:
        return t
    if not isinstance(root, int) or isinstance(root, bool):
        raise TreeError(f"field 'root' must be an integer or null, got {root!r}")
    return RootedTree(t, root)


def tree_to_json(t: Tree | RootedTree) -> str:
    return json.dumps(tree_to_dict(t), separators=(",", ":"))


def tree_from_json(text: str) -> Tree | RootedTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeError(f"tree JSON does not parse: {exc}") from None
    return tree_from_dict(data)


def to_dot(t: Tree | RootedTree, name: str = "T") -> str:
    """Graphviz source; pendant vertices are open circles, interior vertices
    filled ones, the root (if any) is drawn with a double outline."""
    root = t.root if isinstance(t, RootedTree) else None
    tree = t.tree if isinstance(t, RootedTree) else t
    lines = [f"graph {name} {{", "  node [shape=circle, label=\"\", width=0.2];"]
    for v in range(tree.n):
        filled = len(tree.adj[v]) >= 2
        attrs = ['style=filled, fillcolor=black' if filled else 'style=solid, fillcolor=white',
                 f'xlabel="{v}"']
        if v == root:
            attrs.append("peripheries=2")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, w in tree.edges:
        lines.append(f"  {u} -- {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def bfs_order(t: Tree, root: int) -> list[int]:
    order = [root]
    seen = {root}
    dq = deque([root])
    while dq:
        u = dq.popleft()
        for w in t.adj[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                dq.append(w)
    return order
