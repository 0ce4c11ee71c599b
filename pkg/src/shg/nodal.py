"""Nodal domains of vertex functions on signed hypergraphs.

Two vertices of the support are strongly linked when some common edge e
satisfies f(x) * sgn(e) * f(y) > 0; strong domains are the components of
that relation.  Weak links additionally tunnel through zero vertices: a
link exists when a path from x to y whose interior vertices are all
zeros (no vertex repeated) accumulates an edge-sign product s with
f(x) * s * f(y) > 0.  Weak domains are the components of the weak
relation, each closed by absorbing every zero that reaches it through a
path of zeros.

Vertex repetition matters: a closed detour through the zeros can flip
the accumulated sign, so deciding a weak link is a parity question about
simple paths.  It is answered per pair from the block structure of the
signed pair graph on the zeros plus the two endpoints: a balanced block
contributes one fixed sign between its route vertices, a block carrying
an unbalanced cycle contributes both signs.

All decisions are made on signs relative to the function's
zero_tolerance, so decompositions are invariant under scaling by any
nonzero constant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    SignedHypergraph,
    UnionFind,
    connected_components,
    cyclomatic,
    edge_sign,
    hyperneighbors,
    incident_edges,
    induced_subhypergraph,
    is_tree_like,
    spanning_hyperforest,
)
from .core import CycleStats
from .spectra import Spectrum, VertexFunction

__all__ = [
    "NodalDecomposition",
    "FiedlerSets",
    "BoundReport",
    "DomainGraph",
    "strong_domains",
    "weak_domains",
    "decompose",
    "counts",
    "domain_adjacency_graph",
    "fiedler_sets",
    "l_plus",
    "support_cyclomatic",
    "check_bounds",
    "forest_count_diagnostic",
]

L_PLUS_VARIANTS = ("all_pairs", "exists_ordering")


@dataclass(frozen=True)
class NodalDecomposition:
    """Strong and weak nodal domains of one function.

    ``weak_cores`` partition the support; ``weak_closures`` are the cores
    plus absorbed zeros (closures may overlap on zeros, cores never do).
    Domains are ordered by their smallest vertex.
    """

    support: frozenset[int]
    strong: tuple[frozenset[int], ...]
    weak_cores: tuple[frozenset[int], ...]
    weak_closures: tuple[frozenset[int], ...]
    zero_tolerance: float

    @property
    def strong_count(self) -> int:
        return len(self.strong)

    @property
    def weak_count(self) -> int:
        return len(self.weak_cores)


@dataclass(frozen=True)
class FiedlerSets:
    """Zeros split by spectral relevance: ``fiedler`` holds zeros whose
    hyperneighbors are all zeros or that lie on a cycle (not tree-like);
    ``other_zeros`` holds the remaining, harmless zeros.
    """

    fiedler: frozenset[int]
    other_zeros: frozenset[int]


@dataclass(frozen=True)
class DomainGraph:
    """Adjacency of weak domains: node i is the i-th weak closure; nodes
    are linked when their closures intersect or contain vertices sharing
    an edge."""

    n_nodes: int
    links: frozenset[tuple[int, int]]

    def is_connected(self) -> bool:
        if self.n_nodes <= 1:
            return True
        uf = UnionFind(self.n_nodes)
        for a, b in self.links:
            uf.union(a + 1, b + 1)
        return uf.count == 1


@dataclass(frozen=True)
class BoundReport:
    """Eigenvalue-indexed nodal bounds for one eigenfunction.

    k is the 1-based first index of the tolerance cluster containing the
    requested eigenvalue, r its multiplicity, c the number of connected
    components of the hypergraph.  The lower bound uses the coherent-edge
    cyclomatic number of the requested variant.
    """

    eig_index: int
    k: int
    r: int
    c: int
    l: int
    l_plus: int
    l_plus_exists_ordering: int
    l_prime: int
    fiedler_size: int
    strong_count: int
    weak_count: int
    strong_lower_bound: int
    strong_upper_ok: bool
    weak_upper_ok: bool
    strong_lower_ok: bool


def _vertex_signs(f: VertexFunction) -> list[int]:
    """Sign per vertex, index 0 unused."""
    return [0] + [f.sign(v) for v in range(1, f.n + 1)]


def _check_function(h: SignedHypergraph, f: VertexFunction) -> None:
    if f.n != h.n:
        raise ValueError(f"function has {f.n} values, hypergraph has {h.n} vertices")


def strong_domains(source: "SignedHypergraph | np.ndarray", f: VertexFunction) -> tuple[frozenset[int], ...]:
    """Components of the support under strong links.

    With a hypergraph source, {x, y} is linked when some edge contains
    both and f(x) * sgn(e) * f(y) > 0.  With a square symmetric matrix
    source, the link condition is A_xy * f(x) * f(y) > 0.
    """
    if isinstance(source, SignedHypergraph):
        return _strong_domains_hypergraph(source, f)
    return _strong_domains_matrix(np.asarray(source, dtype=float), f)


def _strong_domains_hypergraph(h: SignedHypergraph, f: VertexFunction) -> tuple[frozenset[int], ...]:
    _check_function(h, f)
    sign = _vertex_signs(f)
    uf = UnionFind(h.n)
    for e in h.edges:
        if e.size < 2:
            continue
        s = edge_sign(e)
        vs = e.vertices
        for i, x in enumerate(vs):
            if sign[x] == 0:
                continue
            for y in vs[i + 1:]:
                if sign[y] != 0 and sign[x] * s * sign[y] > 0:
                    uf.union(x, y)
    support = [v for v in h.vertex_range() if sign[v] != 0]
    return tuple(uf.groups(support))


def _strong_domains_matrix(a: np.ndarray, f: VertexFunction) -> tuple[frozenset[int], ...]:
    n = f.n
    if a.shape != (n, n):
        raise ValueError(f"matrix shape {a.shape} does not match {n} vertices")
    scale = float(np.max(np.abs(a))) or 1.0
    if float(np.max(np.abs(a - a.T))) > 1e-12 * scale:
        raise ValueError("raw matrix must be symmetric")
    sign = _vertex_signs(f)
    uf = UnionFind(n)
    for x in range(1, n + 1):
        if sign[x] == 0:
            continue
        for y in range(x + 1, n + 1):
            if sign[y] == 0:
                continue
            if a[x - 1, y - 1] * sign[x] * sign[y] > 0:
                uf.union(x, y)
    support = [v for v in range(1, n + 1) if sign[v] != 0]
    return tuple(uf.groups(support))


def _pair_sign_sets(h: SignedHypergraph) -> dict[tuple[int, int], set[int]]:
    """Edge-sign sets per unordered vertex pair sharing at least one edge."""
    pairs: dict[tuple[int, int], set[int]] = {}
    for e in h.edges:
        if e.size < 2:
            continue
        s = edge_sign(e)
        vs = e.vertices
        for i, x in enumerate(vs):
            for y in vs[i + 1:]:
                key = (x, y) if x < y else (y, x)
                pairs.setdefault(key, set()).add(s)
    return pairs


def _achievable_signs(adj: dict[int, list[tuple[int, int]]], u: int, w: int) -> frozenset[int]:
    """Sign products achievable by simple u-w paths in a signed multigraph.

    A simple path visits the blocks on the u-w route of the block-cut
    tree in order.  A balanced block admits one sign between its entry
    and exit (any two paths inside it differ by cycles of sign +1); a
    block with an unbalanced cycle admits both.
    """
    if w not in adj or u not in adj:
        return frozenset()

    # biconnected components via edge-stack DFS, parallel edges kept apart
    edges: list[tuple[int, int, int]] = []
    inc: dict[int, list[int]] = {v: [] for v in adj}
    for x, nbrs in adj.items():
        for y, s in nbrs:
            if x < y:
                ei = len(edges)
                edges.append((x, y, s))
                inc[x].append(ei)
                inc[y].append(ei)

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    edge_stack: list[int] = []
    blocks: list[list[int]] = []
    # frames: (vertex, incoming edge id, iterator position)
    stack: list[list[int]] = [[u, -1, 0]]
    disc[u] = low[u] = counter
    counter += 1
    while stack:
        frame = stack[-1]
        v, in_edge, pos = frame
        if pos < len(inc[v]):
            frame[2] += 1
            ei = inc[v][pos]
            if ei == in_edge:
                continue
            x, y, _ = edges[ei]
            t = y if x == v else x
            if t not in disc:
                edge_stack.append(ei)
                disc[t] = low[t] = counter
                counter += 1
                stack.append([t, ei, 0])
            elif disc[t] < disc[v]:
                edge_stack.append(ei)
                low[v] = min(low[v], disc[t])
        else:
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block: list[int] = []
                    while True:
                        ei = edge_stack.pop()
                        block.append(ei)
                        if ei == in_edge:
                            break
                    blocks.append(block)
    if w not in disc:
        return frozenset()

    # route from u to w alternating vertices and blocks
    in_blocks: dict[int, list[int]] = {}
    for bi, block in enumerate(blocks):
        seen: set[int] = set()
        for ei in block:
            x, y, _ = edges[ei]
            seen.update((x, y))
        for v in seen:
            in_blocks.setdefault(v, []).append(bi)
    parent: dict[tuple[str, int], tuple[str, int] | None] = {("v", u): None}
    frontier: list[tuple[str, int]] = [("v", u)]
    while frontier and ("v", w) not in parent:
        nxt: list[tuple[str, int]] = []
        for node in frontier:
            kind, ident = node
            if kind == "v":
                steps = [("b", bi) for bi in in_blocks.get(ident, ())]
            else:
                seen = set()
                for ei in blocks[ident]:
                    x, y, _ = edges[ei]
                    seen.update((x, y))
                steps = [("v", v) for v in sorted(seen)]
            for step in steps:
                if step not in parent:
                    parent[step] = node
                    nxt.append(step)
        frontier = nxt
    if ("v", w) not in parent:
        return frozenset()
    route: list[tuple[str, int]] = []
    node: tuple[str, int] | None = ("v", w)
    while node is not None:
        route.append(node)
        node = parent[node]
    route.reverse()

    signs = {1}
    for i in range(1, len(route), 2):
        _, bi = route[i]
        a = route[i - 1][1]
        b = route[i + 1][1]
        contrib = _block_route_signs(blocks[bi], edges, a, b)
        signs = {s * c for s in signs for c in contrib}
        if len(signs) == 2:
            break
    return frozenset(signs)


def _block_route_signs(block: list[int], edges: list[tuple[int, int, int]],
                       a: int, b: int) -> frozenset[int]:
    """Signs of simple a-b paths inside one biconnected block."""
    local: dict[int, list[tuple[int, int]]] = {}
    for ei in block:
        x, y, s = edges[ei]
        local.setdefault(x, []).append((y, s))
        local.setdefault(y, []).append((x, s))
    theta: dict[int, int] = {a: 1}
    order = [a]
    balanced = True
    while order:
        v = order.pop()
        for t, s in local[v]:
            if t not in theta:
                theta[t] = theta[v] * s
                order.append(t)
            elif theta[t] != theta[v] * s:
                balanced = False
    if not balanced:
        return frozenset((1, -1))
    return frozenset((theta[a] * theta[b],))


def _weak_core_union(h: SignedHypergraph, sign: list[int]) -> UnionFind:
    """Union-find joining every pair of nonzeros linked by a zero-interior
    simple path of the matching sign product.

    Pairs already related through earlier links are skipped; the final
    partition is the transitive closure either way.
    """
    pairs = _pair_sign_sets(h)
    zz: list[tuple[int, int, int]] = []
    attach: dict[int, list[tuple[int, int]]] = {}
    direct: dict[tuple[int, int], set[int]] = {}
    for (x, y), ss in pairs.items():
        zx, zy = sign[x] == 0, sign[y] == 0
        for s in ss:
            if zx and zy:
                zz.append((x, y, s))
            elif zx:
                attach.setdefault(y, []).append((x, s))
            elif zy:
                attach.setdefault(x, []).append((y, s))
            else:
                direct.setdefault((x, y), set()).add(s)
    uf = UnionFind(h.n)
    support = [v for v in h.vertex_range() if sign[v] != 0]
    for i, u in enumerate(support):
        for w in support[i + 1:]:
            if uf.find(u) == uf.find(w):
                continue
            tau = sign[u] * sign[w]
            if tau in direct.get((u, w), ()):
                uf.union(u, w)
                continue
            adj: dict[int, list[tuple[int, int]]] = {u: [], w: []}
            for x, y, s in zz:
                adj.setdefault(x, []).append((y, s))
                adj.setdefault(y, []).append((x, s))
            for end in (u, w):
                for z, s in attach.get(end, ()):
                    adj[end].append((z, s))
                    adj.setdefault(z, []).append((end, s))
            for s in direct.get((u, w), ()):
                adj[u].append((w, s))
                adj[w].append((u, s))
            if tau in _achievable_signs(adj, u, w):
                uf.union(u, w)
    return uf


def weak_domains(h: SignedHypergraph, f: VertexFunction) -> tuple[tuple[frozenset[int], ...], tuple[frozenset[int], ...]]:
    """Weak nodal domains: (cores, closures).

    Cores partition the support under weak links.  Each closure adds the
    zeros that reach its core through a path of zero vertices (a path
    with at most one nonzero endpoint is a weak path unconditionally).
    """
    _check_function(h, f)
    sign = _vertex_signs(f)
    uf = _weak_core_union(h, sign)
    support = [v for v in h.vertex_range() if sign[v] != 0]
    cores = tuple(uf.groups(support))
    if not cores:
        return (), ()

    # zero vertices sharing an edge are mutually reachable sign-free
    zero_uf = UnionFind(h.n)
    for e in h.edges:
        zs = [v for v in e.vertices if sign[v] == 0]
        for z in zs[1:]:
            zero_uf.union(zs[0], z)
    core_index = {v: i for i, core in enumerate(cores) for v in core}
    absorbed: list[set[int]] = [set(core) for core in cores]
    # a zero component is absorbed by every core it touches through an edge
    touched: dict[int, set[int]] = {}
    members: dict[int, set[int]] = {}
    for v in h.vertex_range():
        if sign[v] == 0:
            members.setdefault(zero_uf.find(v), set()).add(v)
    for e in h.edges:
        vs = e.vertices
        zroots = {zero_uf.find(v) for v in vs if sign[v] == 0}
        cids = {core_index[v] for v in vs if sign[v] != 0}
        for root in zroots:
            touched.setdefault(root, set()).update(cids)
    for root, cids in touched.items():
        for ci in cids:
            absorbed[ci].update(members[root])
    closures = tuple(frozenset(s) for s in absorbed)
    return cores, closures


def decompose(h: SignedHypergraph, f: VertexFunction) -> NodalDecomposition:
    """Full nodal decomposition of f on h."""
    strong = strong_domains(h, f)
    cores, closures = weak_domains(h, f)
    return NodalDecomposition(f.support(), strong, cores, closures, f.zero_tolerance)


def counts(dec: NodalDecomposition) -> tuple[int, int]:
    """(number of strong domains, number of weak domains)."""
    return dec.strong_count, dec.weak_count


def domain_adjacency_graph(h: SignedHypergraph, dec: NodalDecomposition) -> DomainGraph:
    """Graph on weak closures; linked when they share a vertex or contain
    hyper-adjacent vertices."""
    q = dec.weak_count
    owners: dict[int, set[int]] = {}
    for i, closure in enumerate(dec.weak_closures):
        for v in closure:
            owners.setdefault(v, set()).add(i)
    links: set[tuple[int, int]] = set()

    def link_all(ids: set[int]) -> None:
        ordered = sorted(ids)
        for a_pos, a in enumerate(ordered):
            for b in ordered[a_pos + 1:]:
                links.add((a, b))

    for ids in owners.values():
        if len(ids) > 1:
            link_all(ids)
    for e in h.edges:
        ids: set[int] = set()
        for v in e.vertices:
            ids.update(owners.get(v, ()))
        if len(ids) > 1:
            link_all(ids)
    return DomainGraph(q, frozenset(links))


def fiedler_sets(h: SignedHypergraph, f: VertexFunction) -> FiedlerSets:
    """Split the zeros of f: a zero joins ``fiedler`` when all its
    hyperneighbors are zeros (or it has none) or it is not tree-like."""
    _check_function(h, f)
    sign = _vertex_signs(f)
    fiedler: set[int] = set()
    rest: set[int] = set()
    for v in h.vertex_range():
        if sign[v] != 0:
            continue
        if all(sign[w] == 0 for w in hyperneighbors(h, v)) or not is_tree_like(h, v):
            fiedler.add(v)
        else:
            rest.add(v)
    return FiedlerSets(frozenset(fiedler), frozenset(rest))


def _edge_coherent(e_sign: int, signs: list[int], variant: str) -> bool:
    """Whether an edge (all vertices nonzero, signs given) respects its
    sign under the requested pairing rule.

    all_pairs: every pair x, y has sign(x) * e_sign * sign(y) > 0.
    exists_ordering: some vertex ordering makes every consecutive pair
    satisfy it.  Equivalent closed forms: a positive edge needs all equal
    signs either way; a negative edge needs alternation, so any pair for
    size <= 2 but balanced counts (|#pos - #neg| <= 1) for exists_ordering.
    """
    if len(signs) <= 1:
        return True
    if e_sign > 0:
        return len(set(signs)) == 1
    pos = sum(1 for s in signs if s > 0)
    neg = len(signs) - pos
    if variant == "all_pairs":
        return len(signs) == 2 and pos == neg
    return abs(pos - neg) <= 1


def l_plus(h: SignedHypergraph, f: VertexFunction, variant: str = "all_pairs") -> CycleStats:
    """Cyclomatic data of the coherent subhypergraph: the edge family
    restricted to edges whose vertices are all nonzero and respect the
    edge sign under the chosen variant, on the full vertex set.
    """
    if variant not in L_PLUS_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {L_PLUS_VARIANTS}")
    _check_function(h, f)
    sign = _vertex_signs(f)
    selected = []
    for e in h.edges:
        signs = [sign[v] for v in e.vertices]
        if 0 in signs:
            continue
        if _edge_coherent(edge_sign(e) if e.size else 1, signs, variant):
            selected.append(e)
    sub = SignedHypergraph(h.n, tuple(selected), allow_empty_edges=h.allow_empty_edges)
    return cyclomatic(sub)


def support_cyclomatic(h: SignedHypergraph, f: VertexFunction) -> CycleStats:
    """Cyclomatic data of the subhypergraph induced on the support
    (edges truncated to nonzero vertices, empty truncations dropped)."""
    _check_function(h, f)
    return cyclomatic(induced_subhypergraph(h, f.support()).hypergraph)


def check_bounds(h: SignedHypergraph, spectrum: Spectrum, eig_index: int,
                 variant: str = "all_pairs") -> BoundReport:
    """Nodal-count bounds for the eigenfunction at a 1-based index.

    Verdicts: strong count <= k + r - 1; weak count <= k + c - 1; strong
    count >= k + r - 1 - l' + l_plus - |fiedler| with l' the support
    cyclomatic number.
    """
    if not 1 <= eig_index <= spectrum.n:
        raise IndexError(f"eigenvalue index {eig_index} out of range 1..{spectrum.n}")
    if spectrum.n != h.n:
        raise ValueError(f"spectrum has {spectrum.n} values, hypergraph has {h.n} vertices")
    k, r = spectrum.cluster_of(eig_index)
    f = spectrum.functions[eig_index - 1]
    dec = decompose(h, f)
    c = len(connected_components(h))
    l = cyclomatic(h).l
    lp_all = l_plus(h, f, "all_pairs").l
    lp_exists = l_plus(h, f, "exists_ordering").l
    l_prime = support_cyclomatic(h, f).l
    fied = fiedler_sets(h, f)
    lp = lp_all if variant == "all_pairs" else lp_exists
    if variant not in L_PLUS_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {L_PLUS_VARIANTS}")
    lower = k + r - 1 - l_prime + lp - len(fied.fiedler)
    return BoundReport(
        eig_index=eig_index,
        k=k,
        r=r,
        c=c,
        l=l,
        l_plus=lp_all,
        l_plus_exists_ordering=lp_exists,
        l_prime=l_prime,
        fiedler_size=len(fied.fiedler),
        strong_count=dec.strong_count,
        weak_count=dec.weak_count,
        strong_lower_bound=lower,
        strong_upper_ok=dec.strong_count <= k + r - 1,
        weak_upper_ok=dec.weak_count <= k + c - 1,
        strong_lower_ok=dec.strong_count >= lower,
    )


def forest_count_diagnostic(h: SignedHypergraph, f: VertexFunction) -> tuple[int, int, bool]:
    """Compare the forest-deficiency formula with the strong-domain count.

    Builds the subhypergraph of whole edges lying inside the support with
    every pair coherent, takes an exact maximum spanning hyperforest T,
    and evaluates |support| - sum over T of (|e|-1).  Returns (formula
    value, strong count, agree).  The two can genuinely differ when no
    hyperforest realizes the full component rank.
    """
    _check_function(h, f)
    sign = _vertex_signs(f)
    selected = []
    for e in h.edges:
        signs = [sign[v] for v in e.vertices]
        if 0 in signs or not signs:
            continue
        if _edge_coherent(edge_sign(e), signs, "all_pairs"):
            selected.append(e)
    sub = SignedHypergraph(h.n, tuple(selected))
    forest = spanning_hyperforest(sub, exact=True)
    forest_weight = sum(max(sub.edges[i].size - 1, 0) for i in forest)
    formula_value = len(f.support()) - forest_weight
    component_value = len(strong_domains(h, f))
    return formula_value, component_value, formula_value == component_value
