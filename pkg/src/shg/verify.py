"""Random instances, brute-force oracles, and the invariant campaign.

The campaign runs a registry of properties over a deterministic stream
of generated instances.  Failures are data, not exceptions: each one is
captured with the seed, instance index, property id, and the instance's
text serialization so it can be replayed byte-for-byte.

Lower-bound violations of the eigenvalue-indexed strong-count bound are
recorded as notes rather than failures, re-evaluated under the
exists_ordering variant, because the coherent-edge construction the
bound depends on is ambiguous in its source.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .core import (
    Edge,
    SignedHypergraph,
    connected_components,
    cyclomatic,
    degrees,
    edge_sign,
    incident_edges,
    induced_subhypergraph,
    is_acyclic,
    is_tree_like,
    lies_on_cycle,
    spanning_hyperforest,
    weak_delete,
)
from .nodal import (
    BoundReport,
    NodalDecomposition,
    check_bounds,
    decompose,
    domain_adjacency_graph,
    fiedler_sets,
    l_plus,
    strong_domains,
    support_cyclomatic,
    weak_domains,
)
from .shgio import serialize
from .spectra import (
    MatrixBundle,
    Spectrum,
    VertexFunction,
    adjacency,
    as_values,
    chained_difference_rank,
    eigendecompose,
    laplacian,
    nodal_quadratic_form,
    positive_inertia,
    product_rule_defect,
    rayleigh,
    weighted_inner,
)

__all__ = [
    "GenConfig",
    "FailureRecord",
    "CampaignResult",
    "generate",
    "generate_supertree",
    "oracle_domains",
    "run_campaign",
    "rerun_property",
    "REGISTRY",
    "ALL_PROPERTY_IDS",
    "CORE_PROPERTY_IDS",
    "SPECTRA_PROPERTY_IDS",
    "NODAL_PROPERTY_IDS",
]

ORACLE_MAX_N = 8
_SMALL_N = 8


@dataclass(frozen=True)
class GenConfig:
    """Shape of the random instance stream.

    sign_bias is the probability of a + incidence sign.  classical
    restricts to 2-edges carrying one + and one - incidence (edge sign
    +1), the signed encoding of an ordinary graph.  ensure_spectral
    patches isolated vertices with an extra edge so the normalized
    Laplacian exists.
    """

    n_range: tuple[int, int] = (4, 12)
    m_range: tuple[int, int] = (3, 12)
    edge_size_range: tuple[int, int] = (2, 4)
    sign_bias: float = 0.5
    seed: int = 0
    count: int = 500
    classical: bool = False
    ensure_spectral: bool = True

    def __post_init__(self) -> None:
        for name, (lo, hi) in (("n_range", self.n_range), ("m_range", self.m_range),
                               ("edge_size_range", self.edge_size_range)):
            if lo > hi:
                raise ValueError(f"{name} is empty: {lo}..{hi}")
        if self.n_range[0] < 1 or self.m_range[0] < 0:
            raise ValueError("need at least one vertex and a nonnegative edge count")
        if self.edge_size_range[0] < 1:
            raise ValueError("edge sizes must be at least 1")
        if self.edge_size_range[0] > self.n_range[0]:
            raise ValueError(
                f"infeasible constraints: edge size {self.edge_size_range[0]} "
                f"can exceed vertex count {self.n_range[0]}")
        if not 0.0 <= self.sign_bias <= 1.0:
            raise ValueError("sign_bias must lie in [0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.count < 0:
            raise ValueError("count must be nonnegative")

    def as_dict(self) -> dict:
        return {
            "n_range": list(self.n_range),
            "m_range": list(self.m_range),
            "edge_size_range": list(self.edge_size_range),
            "sign_bias": self.sign_bias,
            "seed": self.seed,
            "count": self.count,
            "classical": self.classical,
            "ensure_spectral": self.ensure_spectral,
        }


def _edge_key(e: Edge) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(e.incidences))


def _random_edge(rng: random.Random, cfg: GenConfig, n: int) -> Edge:
    if cfg.classical:
        a, b = rng.sample(range(1, n + 1), 2)
        return Edge(((a, 1), (b, -1)))
    size = rng.randint(cfg.edge_size_range[0], min(cfg.edge_size_range[1], n))
    vs = rng.sample(range(1, n + 1), size)
    return Edge(tuple((v, 1 if rng.random() < cfg.sign_bias else -1) for v in vs))


def _one_instance(rng: random.Random, cfg: GenConfig) -> SignedHypergraph:
    n = rng.randint(*cfg.n_range)
    m = rng.randint(*cfg.m_range)
    if cfg.edge_size_range[0] > n:
        raise ValueError(f"infeasible constraints: edge size over {n} vertices")
    edges: list[Edge] = []
    seen: set[tuple[tuple[int, int], ...]] = set()
    attempts = 0
    while len(edges) < m and attempts < 100 * (m + 1):
        attempts += 1
        e = _random_edge(rng, cfg, n)
        key = _edge_key(e)
        if key in seen:
            continue
        seen.add(key)
        edges.append(e)
    if cfg.ensure_spectral:
        deg = [False] * (n + 1)
        for e in edges:
            for v in e.vertices:
                deg[v] = True
        for v in range(1, n + 1):
            if deg[v]:
                continue
            if n == 1:
                patch = Edge(((v, 1 if rng.random() < cfg.sign_bias else -1),))
            elif cfg.classical:
                u = rng.choice([u for u in range(1, n + 1) if u != v])
                patch = Edge(((v, 1), (u, -1)))
            else:
                u = rng.choice([u for u in range(1, n + 1) if u != v])
                patch = Edge(tuple(
                    (w, 1 if rng.random() < cfg.sign_bias else -1) for w in (v, u)))
            key = _edge_key(patch)
            if key not in seen:
                seen.add(key)
                edges.append(patch)
            deg[v] = True
            for w in patch.vertices:
                deg[w] = True
    return SignedHypergraph(n, tuple(edges))


def generate(cfg: GenConfig) -> Iterator[SignedHypergraph]:
    """Deterministic instance stream for a config (same seed, same bytes)."""
    rng = random.Random(cfg.seed)
    for _ in range(cfg.count):
        yield _one_instance(rng, cfg)


def generate_supertree(rng: random.Random, n_edges: int,
                       size_range: tuple[int, int] = (2, 4)) -> SignedHypergraph:
    """Connected acyclic hypergraph where consecutive edges overlap in
    exactly one anchor vertex; cyclomatic number 0 by construction."""
    if n_edges < 1:
        raise ValueError("need at least one edge")
    sizes = [rng.randint(*size_range) for _ in range(n_edges)]
    n = sizes[0]
    edges = [Edge(tuple((v, rng.choice((1, -1))) for v in range(1, n + 1)))]
    for s in sizes[1:]:
        anchor = rng.randint(1, n)
        fresh = list(range(n + 1, n + s))
        n += s - 1
        vs = [anchor] + fresh
        edges.append(Edge(tuple((v, rng.choice((1, -1))) for v in vs)))
    return SignedHypergraph(n, tuple(edges))


def _strong_delete(h: SignedHypergraph, v: int) -> SignedHypergraph:
    """Remove a vertex together with every incident edge, renumbering."""
    old_to_new = {u: (u if u < v else u - 1) for u in h.vertex_range() if u != v}
    kept = tuple(
        Edge(tuple((old_to_new[u], s) for u, s in e.incidences))
        for e in h.edges if v not in e.vertices
    )
    return SignedHypergraph(h.n - 1, kept, allow_empty_edges=h.allow_empty_edges)


def _spectral_cleanup(h: SignedHypergraph) -> SignedHypergraph | None:
    """Drop empty edges and degree-0 vertices; None if nothing remains."""
    nonempty = tuple(e for e in h.edges if e.size > 0)
    trimmed = SignedHypergraph(h.n, nonempty, allow_empty_edges=False)
    deg = degrees(trimmed)
    keep = {v for v in trimmed.vertex_range() if deg[v] > 0}
    if not keep:
        return None
    return induced_subhypergraph(trimmed, keep).hypergraph


# ---------------------------------------------------------------------------
# brute-force oracle


def oracle_domains(h: SignedHypergraph, f: VertexFunction) -> tuple[
        tuple[frozenset[int], ...], tuple[frozenset[int], ...], tuple[frozenset[int], ...]]:
    """Nodal partitions by literal path enumeration: (strong, weak cores,
    weak closures).  Paths are vertex sequences without repetition;
    pairs found related are closed into equivalence classes afterwards.
    Limited to 8 vertices.
    """
    if h.n > ORACLE_MAX_N:
        raise ValueError(f"instance too large: {h.n} vertices exceeds {ORACLE_MAX_N}")
    if f.n != h.n:
        raise ValueError(f"function has {f.n} values, hypergraph has {h.n} vertices")
    sign = [0] + [f.sign(v) for v in h.vertex_range()]
    support = [v for v in h.vertex_range() if sign[v] != 0]
    esigns = [(e, edge_sign(e)) for e in h.edges if e.size > 0]

    strong_pairs: set[tuple[int, int]] = set()

    def s_walk(cur: int, visited: frozenset[int], start: int) -> None:
        for e, sg in esigns:
            vs = e.vertices
            if cur not in vs:
                continue
            for w in vs:
                if w == cur or w in visited or sign[w] == 0:
                    continue
                if sign[cur] * sg * sign[w] > 0:
                    strong_pairs.add((start, w))
                    s_walk(w, visited | {w}, start)

    for x in support:
        s_walk(x, frozenset({x}), x)

    weak_pairs: set[tuple[int, int]] = set()

    def w_walk(cur: int, visited: frozenset[int], acc: int, start: int) -> None:
        # cur is the latest vertex; acc is the edge-sign product since start
        for e, sg in esigns:
            vs = e.vertices
            if cur not in vs:
                continue
            for w in vs:
                if w == cur or w in visited:
                    continue
                if sign[w] == 0:
                    w_walk(w, visited | {w}, acc * sg, start)
                elif sign[start] * acc * sg * sign[w] > 0:
                    weak_pairs.add((start, w))

    for x in support:
        w_walk(x, frozenset({x}), 1, x)

    def closure(pairs: set[tuple[int, int]]) -> tuple[frozenset[int], ...]:
        related = {v: {v} for v in support}
        changed = True
        while changed:
            changed = False
            for a, b in pairs:
                merged = related[a] | related[b]
                for v in merged:
                    if related[v] != merged:
                        related[v] = merged
                        changed = True
                related[a] = related[b] = merged
        blocks = {frozenset(s) for s in related.values()}
        return tuple(sorted(blocks, key=min))

    strong = closure(strong_pairs)
    cores = closure(weak_pairs)

    core_of = {v: i for i, core in enumerate(cores) for v in core}
    absorbed = [set(core) for core in cores]

    def z_walk(cur: int, visited: frozenset[int], origin: int) -> None:
        for e, _ in esigns:
            vs = e.vertices
            if cur not in vs:
                continue
            for w in vs:
                if w == cur or w in visited:
                    continue
                if sign[w] == 0:
                    z_walk(w, visited | {w}, origin)
                else:
                    absorbed[core_of[w]].add(origin)

    for z in h.vertex_range():
        if sign[z] == 0:
            z_walk(z, frozenset({z}), z)

    closures = tuple(frozenset(s) for s in absorbed)
    return strong, cores, closures


# ---------------------------------------------------------------------------
# campaign plumbing


@dataclass(frozen=True)
class FailureRecord:
    seed: int
    index: int
    property_id: str
    instance_text: str
    details: str


@dataclass(frozen=True)
class CampaignResult:
    """Outcome of one campaign: failures empty means the campaign passed.

    sharpness_stats histograms the slack (k + r - 1) - strong_count over
    every eigenpair of every instance, as sorted (slack, count) pairs.
    """

    config: GenConfig
    property_ids: tuple[str, ...]
    instances_run: int
    failures: tuple[FailureRecord, ...]
    sharpness_stats: tuple[tuple[int, int], ...]
    notes: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "config": self.config.as_dict(),
            "property_ids": list(self.property_ids),
            "instances_run": self.instances_run,
            "failures": [
                {
                    "seed": rec.seed,
                    "index": rec.index,
                    "property_id": rec.property_id,
                    "instance": rec.instance_text,
                    "details": rec.details,
                }
                for rec in self.failures
            ],
            "sharpness_stats": [list(pair) for pair in self.sharpness_stats],
            "notes": list(self.notes),
            "passed": self.passed,
        }


class InstanceContext:
    """Lazy per-instance cache shared by all properties."""

    def __init__(self, h: SignedHypergraph):
        self.h = h
        self._bundle: MatrixBundle | None = None
        self._spectrum: Spectrum | None = None
        self._decs: list[NodalDecomposition] | None = None
        self._reports: list[BoundReport] | None = None

    @property
    def bundle(self) -> MatrixBundle:
        if self._bundle is None:
            self._bundle = laplacian(self.h)
        return self._bundle

    @property
    def spectrum(self) -> Spectrum:
        if self._spectrum is None:
            self._spectrum = eigendecompose(self.bundle)
        return self._spectrum

    @property
    def decompositions(self) -> list[NodalDecomposition]:
        if self._decs is None:
            self._decs = [decompose(self.h, f) for f in self.spectrum.functions]
        return self._decs

    @property
    def bound_reports(self) -> list[BoundReport]:
        if self._reports is None:
            self._reports = [
                check_bounds(self.h, self.spectrum, i)
                for i in range(1, self.h.n + 1)
            ]
        return self._reports

    def is_classical(self) -> bool:
        return all(
            e.size == 2 and sorted(s for _, s in e.incidences) == [-1, 1]
            for e in self.h.edges
        )


PropertyFn = Callable[[InstanceContext, random.Random], tuple[list[str], list[str]]]


def _random_function(ctx: InstanceContext, rng: random.Random,
                     zero_prob: float = 0.0) -> VertexFunction:
    vals = [rng.gauss(0.0, 1.0) for _ in range(ctx.h.n)]
    if zero_prob > 0.0:
        vals = [0.0 if rng.random() < zero_prob else x for x in vals]
    return VertexFunction.from_values(vals)


# --- core properties -------------------------------------------------------


def _p_cyclomatic_nonnegative(ctx: InstanceContext, rng: random.Random):
    fails = []
    stats = cyclomatic(ctx.h)
    if stats.l < 0:
        fails.append(f"cyclomatic {stats.l} < 0")
    return fails, []


def _p_acyclic_iff_zero(ctx: InstanceContext, rng: random.Random):
    fails = []
    h = ctx.h
    l = cyclomatic(h).l
    if is_acyclic(h) != (l == 0):
        fails.append(f"is_acyclic={is_acyclic(h)} but l={l}")
    # per-component count identity, the component-wise route
    per_component_ok = True
    for block in connected_components(h).blocks:
        total = sum(
            max(len([v for v in e.vertices if v in block]) - 1, 0)
            for e in h.edges if e.vertices and e.vertices[0] in block
        )
        if total != len(block) - 1:
            per_component_ok = False
    if per_component_ok != is_acyclic(h):
        fails.append(f"component sums say acyclic={per_component_ok}, op says {is_acyclic(h)}")
    return fails, []


def _p_tree_like_no_cycle(ctx: InstanceContext, rng: random.Random):
    h = ctx.h
    if h.n > _SMALL_N or any(e.size < 2 for e in h.edges):
        return [], []
    fails = []
    for x in h.vertex_range():
        tl = is_tree_like(h, x)
        cyc = lies_on_cycle(h, x)
        if tl != (not cyc):
            fails.append(f"vertex {x}: tree_like={tl}, on_cycle={cyc}")
    return fails, []


def _p_tree_like_deletion(ctx: InstanceContext, rng: random.Random):
    """Iterated deletion of tree-like vertices with their incident edges:
    each victim must still be tree-like when its turn comes, and each
    step must raise the component count by exactly (current degree - 1).
    """
    h = ctx.h
    fails = []
    current = h
    for _ in range(min(3, h.n - 1)):
        tree_like = [x for x in current.vertex_range() if is_tree_like(current, x)]
        if not tree_like or current.n <= 1:
            break
        x = rng.choice(tree_like)
        d = sum(1 for e in current.edges if x in e.vertices)
        before = len(connected_components(current))
        nxt = _strong_delete(current, x)
        after_weak = len(connected_components(weak_delete(current, x).hypergraph))
        if after_weak != before + d - 1:
            fails.append(f"deleting {x}: components {before} -> {after_weak}, expected {before + d - 1}")
            break
        current = nxt
    return fails, []


def _p_induced_identity(ctx: InstanceContext, rng: random.Random):
    h = ctx.h
    fails = []
    full = induced_subhypergraph(h, set(h.vertex_range())).hypergraph
    if full != h:
        fails.append("inducing on the full vertex set changed the hypergraph")
    if h.n >= 1:
        size = rng.randint(1, h.n)
        keep = set(rng.sample(list(h.vertex_range()), size))
        once = induced_subhypergraph(h, keep).hypergraph
        twice = induced_subhypergraph(once, set(once.vertex_range())).hypergraph
        if once != twice:
            fails.append(f"re-inducing on {sorted(keep)} was not idempotent")
    return fails, []


def _p_exact_forest_geq_greedy(ctx: InstanceContext, rng: random.Random):
    h = ctx.h
    if h.m > 16:
        return [], []
    fails = []
    greedy = spanning_hyperforest(h, exact=False)
    exact = spanning_hyperforest(h, exact=True)
    w = lambda idx: sum(max(h.edges[i].size - 1, 0) for i in idx)
    if w(exact) < w(greedy):
        fails.append(f"exact weight {w(exact)} < greedy weight {w(greedy)}")
    return fails, []


# --- spectra properties ----------------------------------------------------


def _p_self_adjoint(ctx: InstanceContext, rng: random.Random):
    h, b = ctx.h, ctx.bundle
    fails = []
    for _ in range(5):
        f = _random_function(ctx, rng)
        g = _random_function(ctx, rng)
        lf = b.l @ f.array()
        lg = b.l @ g.array()
        left = weighted_inner(h, lf, g.array())
        right = weighted_inner(h, f.array(), lg)
        scale = max(1.0, abs(left), abs(right))
        if abs(left - right) > 1e-9 * scale:
            fails.append(f"<Lf,g>={left!r} vs <f,Lg>={right!r}")
    return fails, []


def _p_trace_eigsum(ctx: InstanceContext, rng: random.Random):
    b = ctx.bundle
    fails = []
    if any(b.l[i, i] != 1.0 for i in range(b.n)):
        fails.append("Laplacian diagonal is not all ones")
    total = sum(ctx.spectrum.eigenvalues)
    if abs(total - b.n) > 1e-8 * b.n:
        fails.append(f"eigenvalue sum {total!r} != {b.n}")
    return fails, []


def _p_classical_graph(ctx: InstanceContext, rng: random.Random):
    if not ctx.is_classical():
        return [], []
    h, b = ctx.h, ctx.bundle
    fails = []
    # independent route: unsigned multigraph adjacency counts
    counts = np.zeros((h.n, h.n))
    for e in h.edges:
        (u, _), (v, _) = e.incidences
        counts[u - 1, v - 1] += 1
        counts[v - 1, u - 1] += 1
    deg = counts.sum(axis=1)
    classical_l = np.eye(h.n) - counts / deg[:, None]
    if not np.allclose(b.l, classical_l, atol=1e-12):
        fails.append("Laplacian differs from the classical normalized Laplacian")
    w = ctx.spectrum.eigenvalues
    if w[0] < -1e-8 or w[-1] > 2 + 1e-8:
        fails.append(f"classical eigenvalues outside [0,2]: {w[0]!r}..{w[-1]!r}")
    if abs(w[0]) > 1e-8:
        fails.append(f"classical smallest eigenvalue {w[0]!r} != 0")
    if len(connected_components(h)) == 1:
        f1 = ctx.spectrum.functions[0]
        signs = {f1.sign(v) for v in h.vertex_range()}
        if 1 in signs and -1 in signs:
            fails.append("first eigenfunction of a connected classical graph changes sign")
    return fails, []


def _p_interlacing(ctx: InstanceContext, rng: random.Random):
    # Valid for 2-uniform instances only.  For larger edges the global
    # edge sign flips when a vertex is removed, so the reduced quadratic
    # form is not a restriction of the original one and the eigenvalue
    # bracketing genuinely fails (small counterexamples are easy to hit).
    h = ctx.h
    if any(e.size != 2 for e in h.edges):
        return [], []
    fails = []
    w = ctx.spectrum.eigenvalues
    slack = 1e-8 * max(1.0, w[-1] - w[0])
    for n_del in (1, 2):
        if h.n - n_del < 1:
            continue
        current = h
        for _ in range(n_del):
            v = rng.randint(1, current.n)
            current = weak_delete(current, v).hypergraph
        cleaned = _spectral_cleanup(current)
        if cleaned is None or cleaned.n < 1:
            continue
        what = eigendecompose(laplacian(cleaned)).eigenvalues
        r_eff = h.n - cleaned.n
        for k in range(1, cleaned.n + 1):
            lo, hi = w[k - 1], w[k + r_eff - 1]
            if not (lo - slack <= what[k - 1] <= hi + slack):
                fails.append(
                    f"deleting {n_del}: eigenvalue {k} of the reduced instance "
                    f"{what[k-1]!r} outside [{lo!r}, {hi!r}]")
    return fails, []


def _p_supertree_rank(ctx: InstanceContext, rng: random.Random):
    st = generate_supertree(rng, rng.randint(1, 5))
    rank, rows = chained_difference_rank(st)
    want = sum(e.size - 1 for e in st.edges)
    fails = []
    if rows != want or rank != want or want != st.n - 1:
        fails.append(f"supertree rank {rank} rows {rows}, expected {want} = n-1 = {st.n - 1}")
    return fails, []


def _p_rayleigh_bounds(ctx: InstanceContext, rng: random.Random):
    h, b = ctx.h, ctx.bundle
    w = ctx.spectrum.eigenvalues
    slack = 1e-8 * max(1.0, abs(w[0]), abs(w[-1]))
    fails = []
    for _ in range(5):
        g = _random_function(ctx, rng)
        q = rayleigh(h, b, g)
        if not (w[0] - slack <= q <= w[-1] + slack):
            fails.append(f"Rayleigh quotient {q!r} outside [{w[0]!r}, {w[-1]!r}]")
    for k in (1, h.n):
        fk = ctx.spectrum.functions[k - 1]
        q = rayleigh(h, b, fk)
        if abs(q - w[k - 1]) > 1e-8 * max(1.0, abs(w[k - 1])):
            fails.append(f"Rayleigh of eigenfunction {k}: {q!r} != {w[k-1]!r}")
    return fails, []


# --- nodal properties ------------------------------------------------------


def _sample_functions(ctx: InstanceContext, rng: random.Random) -> list[VertexFunction]:
    fs = list(ctx.spectrum.functions)
    fs.append(_random_function(ctx, rng, zero_prob=0.35))
    fs.append(_random_function(ctx, rng, zero_prob=0.35))
    return fs


def _p_oracle_agreement(ctx: InstanceContext, rng: random.Random):
    if ctx.h.n > ORACLE_MAX_N:
        return [], []
    fails = []
    for j, f in enumerate(_sample_functions(ctx, rng)):
        strong, cores, closures = oracle_domains(ctx.h, f)
        dec = decompose(ctx.h, f)
        if dec.strong != strong:
            fails.append(f"function {j}: strong domains disagree with the oracle")
        if dec.weak_cores != cores:
            fails.append(f"function {j}: weak cores disagree with the oracle")
        if dec.weak_closures != closures:
            fails.append(f"function {j}: weak closures disagree with the oracle")
    return fails, []


def _p_weak_le_strong(ctx: InstanceContext, rng: random.Random):
    fails = []
    for j, f in enumerate(_sample_functions(ctx, rng)):
        dec = decompose(ctx.h, f)
        if dec.weak_count > dec.strong_count:
            fails.append(f"function {j}: weak count {dec.weak_count} > strong {dec.strong_count}")
    return fails, []


def _p_no_zeros_identical(ctx: InstanceContext, rng: random.Random):
    fails = []
    for j, f in enumerate(_sample_functions(ctx, rng)):
        if len(f.support()) != f.n:
            continue
        dec = decompose(ctx.h, f)
        if not (dec.strong == dec.weak_cores == dec.weak_closures):
            fails.append(f"zero-free function {j}: strong and weak partitions differ")
    return fails, []


def _p_max_two_memberships(ctx: InstanceContext, rng: random.Random):
    fails = []
    for j, f in enumerate(_sample_functions(ctx, rng)):
        dec = decompose(ctx.h, f)
        count: Counter[int] = Counter()
        for closure in dec.weak_closures:
            for v in closure:
                count[v] += 1
        worst = max(count.values(), default=0)
        if worst > 2:
            fails.append(f"function {j}: a vertex lies in {worst} weak closures")
    return fails, []


def _p_zero_neighbor_containment(ctx: InstanceContext, rng: random.Random):
    from .core import hyperneighbors
    fails = []
    for j, f in enumerate(_sample_functions(ctx, rng)):
        dec = decompose(ctx.h, f)
        holders: dict[int, list[int]] = {}
        for i, closure in enumerate(dec.weak_closures):
            for v in closure:
                holders.setdefault(v, []).append(i)
        for v, ids in holders.items():
            if f.sign(v) != 0 or len(ids) != 2:
                continue
            union = dec.weak_closures[ids[0]] | dec.weak_closures[ids[1]]
            stray = hyperneighbors(ctx.h, v) - union
            if stray:
                fails.append(f"function {j}: neighbors {sorted(stray)} of zero {v} escape its two domains")
    return fails, []


def _p_domain_graph_connected(ctx: InstanceContext, rng: random.Random):
    if len(connected_components(ctx.h)) != 1:
        return [], []
    fails = []
    for j, f in enumerate(_sample_functions(ctx, rng)):
        dec = decompose(ctx.h, f)
        if dec.weak_count == 0:
            continue
        if not domain_adjacency_graph(ctx.h, dec).is_connected():
            fails.append(f"function {j}: weak domain graph is disconnected")
    return fails, []


def _p_eigen_upper_bounds(ctx: InstanceContext, rng: random.Random):
    fails = []
    for rep in ctx.bound_reports:
        if not rep.strong_upper_ok:
            fails.append(
                f"eig {rep.eig_index}: strong count {rep.strong_count} > k+r-1 = {rep.k + rep.r - 1}")
        if not rep.weak_upper_ok:
            fails.append(
                f"eig {rep.eig_index}: weak count {rep.weak_count} > k+c-1 = {rep.k + rep.c - 1}")
    return fails, []


def _p_eigen_lower_bound_logged(ctx: InstanceContext, rng: random.Random):
    notes = []
    for rep in ctx.bound_reports:
        if rep.strong_lower_ok:
            continue
        exists_bound = rep.k + rep.r - 1 - rep.l_prime + rep.l_plus_exists_ordering - rep.fiedler_size
        status = "also violated" if rep.strong_count < exists_bound else "resolved"
        notes.append(
            f"lower bound violated at eig {rep.eig_index}: strong count {rep.strong_count} "
            f"< {rep.strong_lower_bound} (k={rep.k}, r={rep.r}, l'={rep.l_prime}, "
            f"l+={rep.l_plus}, fiedler={rep.fiedler_size}); exists_ordering bound "
            f"{exists_bound} {status}")
    return [], notes


def _pair_graph(h: SignedHypergraph, coeff: np.ndarray, keep_positive_only: bool) -> SignedHypergraph:
    pairs = set()
    for e in h.edges:
        vs = e.vertices
        for i, x in enumerate(vs):
            for y in vs[i + 1:]:
                a, b = min(x, y), max(x, y)
                c = coeff[a - 1, b - 1]
                if c > 0 or (not keep_positive_only and c != 0):
                    pairs.add((a, b))
    edges = tuple(Edge(((a, 1), (b, -1))) for a, b in sorted(pairs))
    return SignedHypergraph(h.n, edges)


def _p_sandwich(ctx: InstanceContext, rng: random.Random):
    h, b = ctx.h, ctx.bundle
    fails = []
    for i, g in enumerate(ctx.spectrum.functions, 1):
        if len(g.support()) != h.n:
            continue
        lam = ctx.spectrum.eigenvalues[i - 1]
        s = nodal_quadratic_form(b, g, lam)
        gv = g.array()
        coeff = b.a * np.outer(gv, gv)
        positive = _pair_graph(h, coeff, keep_positive_only=True)
        nonzero = _pair_graph(h, coeff, keep_positive_only=False)
        if positive.m > 16:
            continue
        forest = spanning_hyperforest(positive, exact=True)
        sigma_t = sum(positive.edges[j].size - 1 for j in forest)
        p = positive_inertia(s)
        n_pos = positive.m
        l_nonzero = cyclomatic(nonzero).l
        if not (p <= sigma_t <= n_pos <= p + l_nonzero):
            fails.append(
                f"eig {i}: inertia {p}, forest weight {sigma_t}, positive pairs {n_pos}, "
                f"slack cap {p + l_nonzero}")
    return fails, []


def _p_scaling_invariance(ctx: InstanceContext, rng: random.Random):
    fails = []
    for j, f in enumerate(_sample_functions(ctx, rng)[:4]):
        c = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 20.0)
        scaled = VertexFunction.from_values([c * x for x in f.values])
        a = decompose(ctx.h, f)
        d = decompose(ctx.h, scaled)
        if (a.strong, a.weak_cores, a.weak_closures) != (d.strong, d.weak_cores, d.weak_closures):
            fails.append(f"function {j}: decomposition changed under scaling by {c!r}")
    return fails, []


CORE_PROPERTY_IDS = (
    "core.cyclomatic-nonnegative",
    "core.acyclic-iff-zero",
    "core.tree-like-no-cycle",
    "core.tree-like-deletion",
    "core.induced-identity",
    "core.exact-forest-geq-greedy",
)
SPECTRA_PROPERTY_IDS = (
    "spectra.self-adjoint",
    "spectra.trace-eigsum",
    "spectra.classical-graph",
    "spectra.interlacing",
    "spectra.supertree-rank",
    "spectra.rayleigh-bounds",
)
NODAL_PROPERTY_IDS = (
    "nodal.oracle-agreement",
    "nodal.weak-le-strong",
    "nodal.no-zeros-identical",
    "nodal.max-two-memberships",
    "nodal.zero-neighbor-containment",
    "nodal.domain-graph-connected",
    "nodal.eigen-upper-bounds",
    "nodal.eigen-lower-bound-logged",
    "nodal.sandwich",
    "nodal.scaling-invariance",
)

REGISTRY: dict[str, PropertyFn] = {
    "core.cyclomatic-nonnegative": _p_cyclomatic_nonnegative,
    "core.acyclic-iff-zero": _p_acyclic_iff_zero,
    "core.tree-like-no-cycle": _p_tree_like_no_cycle,
    "core.tree-like-deletion": _p_tree_like_deletion,
    "core.induced-identity": _p_induced_identity,
    "core.exact-forest-geq-greedy": _p_exact_forest_geq_greedy,
    "spectra.self-adjoint": _p_self_adjoint,
    "spectra.trace-eigsum": _p_trace_eigsum,
    "spectra.classical-graph": _p_classical_graph,
    "spectra.interlacing": _p_interlacing,
    "spectra.supertree-rank": _p_supertree_rank,
    "spectra.rayleigh-bounds": _p_rayleigh_bounds,
    "nodal.oracle-agreement": _p_oracle_agreement,
    "nodal.weak-le-strong": _p_weak_le_strong,
    "nodal.no-zeros-identical": _p_no_zeros_identical,
    "nodal.max-two-memberships": _p_max_two_memberships,
    "nodal.zero-neighbor-containment": _p_zero_neighbor_containment,
    "nodal.domain-graph-connected": _p_domain_graph_connected,
    "nodal.eigen-upper-bounds": _p_eigen_upper_bounds,
    "nodal.eigen-lower-bound-logged": _p_eigen_lower_bound_logged,
    "nodal.sandwich": _p_sandwich,
    "nodal.scaling-invariance": _p_scaling_invariance,
}

ALL_PROPERTY_IDS = CORE_PROPERTY_IDS + SPECTRA_PROPERTY_IDS + NODAL_PROPERTY_IDS


def _child_rng(seed: int, index: int, property_id: str) -> random.Random:
    return random.Random(f"{seed}:{index}:{property_id}")


def rerun_property(record: FailureRecord) -> tuple[list[str], list[str]]:
    """Replay one failure record: rebuild the instance from its text and
    re-run the property with the same derived randomness."""
    from .shgio import parse
    ctx = InstanceContext(parse(record.instance_text))
    rng = _child_rng(record.seed, record.index, record.property_id)
    return REGISTRY[record.property_id](ctx, rng)


def run_campaign(cfg: GenConfig,
                 property_ids: Sequence[str] | None = None) -> CampaignResult:
    """Run the selected properties over the config's instance stream.

    A property that raises records a failure instead of aborting the
    campaign.  Results are deterministic for a given (config, selection).
    """
    ids = tuple(property_ids) if property_ids is not None else ALL_PROPERTY_IDS
    unknown = [pid for pid in ids if pid not in REGISTRY]
    if unknown:
        raise ValueError(f"unknown property ids: {unknown}")
    failures: list[FailureRecord] = []
    notes: list[str] = []
    sharp: Counter[int] = Counter()
    instances_run = 0
    for index, h in enumerate(generate(cfg)):
        instances_run += 1
        text = serialize(h)
        ctx = InstanceContext(h)
        for pid in ids:
            rng = _child_rng(cfg.seed, index, pid)
            try:
                fails, notes_i = REGISTRY[pid](ctx, rng)
            except Exception as exc:
                fails, notes_i = [f"unexpected error: {exc!r}"], []
            failures.extend(
                FailureRecord(cfg.seed, index, pid, text, d) for d in fails)
            notes.extend(f"instance {index} [{pid}]: {t}" for t in notes_i)
        try:
            for rep in ctx.bound_reports:
                sharp[rep.k + rep.r - 1 - rep.strong_count] += 1
        except Exception as exc:
            failures.append(FailureRecord(
                cfg.seed, index, "campaign.sharpness", text, f"unexpected error: {exc!r}"))
    return CampaignResult(
        config=cfg,
        property_ids=ids,
        instances_run=instances_run,
        failures=tuple(failures),
        sharpness_stats=tuple(sorted(sharp.items())),
        notes=tuple(notes),
    )
