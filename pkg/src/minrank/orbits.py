"""Orbit model of a validated pair: cosets, the simple-reflection action,
the graded orbit graph, and the cancellation order.

Vertices are the left cosets of the embedded folded Weyl group; a simple
reflection acts by left multiplication.  The dimension of a vertex is the
positive-root count of the folded system plus the minimal representative
length, so the identity coset sits at the bottom and the longest-element
coset at the top.  Every construction here asserts the gradings it relies
on instead of assuming them.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .folding import MinimalRankPair, _cached_root_system, embed_weyl, pair_to_json
from .weyl import (
    DEFAULT_BUDGET,
    Subgroup,
    WeylElement,
    WeylGroup,
    compose,
    coset_decomposition,
    generate_weyl,
    is_palindromic,
    length_poincare,
    perm_key,
    poly_mul,
    reflection_perms,
)


@dataclass(frozen=True)
class OrbitVertex:
    coset_id: int
    min_rep: WeylElement
    dim: int


@dataclass(frozen=True, eq=False)
class OrbitGraph:
    """Coset graph with the precomputed left-multiplication action.

    ``action[cid][j]`` is the coset id of s_j times coset cid; ``edges``
    hold (lower id, upper id, simple index) with a dim gap of exactly 1.
    """

    pair: MinimalRankPair
    vertices: tuple[OrbitVertex, ...]
    edges: tuple[tuple[int, int, int], ...]
    d_g: int
    d_h: int
    action: tuple[tuple[int, ...], ...]
    group: WeylGroup
    subgroup: Subgroup
    coset_of: dict[bytes, int]


_MODEL_CACHE: dict[tuple, OrbitGraph] = {}


def build_graph(pair: MinimalRankPair, budget: int = DEFAULT_BUDGET) -> OrbitGraph:
    """Enumerate the cosets of the embedded folded group and grade them.

    Raises ValueError if any moved coset changes minimal length by
    anything other than 1: that would contradict the simple-edge grading
    and the pair must be rejected.
    """
    key = (pair.g_diagram.cartan, pair.sigma.mapping, budget)
    cached = _MODEL_CACHE.get(key)
    if cached is not None:
        return cached
    rs = _cached_root_system(pair.g_diagram)
    W = generate_weyl(rs, budget=budget)
    subgroup, _ = embed_weyl(pair, W, budget=budget)
    reps, coset_of = coset_decomposition(W, subgroup)
    d_g = len(rs.positive_roots)
    d_h = len(_cached_root_system(pair.h_colored.diagram).positive_roots)
    vertices = tuple(
        OrbitVertex(coset_id=cid, min_rep=w, dim=d_h + len(w.word))
        for cid, w in enumerate(reps)
    )
    refl = reflection_perms(rs)
    action_rows = []
    edge_set: set[tuple[int, int, int]] = set()
    for cid, w in enumerate(reps):
        row = []
        for j, s in enumerate(refl):
            target = coset_of[perm_key(compose(s, w.perm))]
            row.append(target)
            if target != cid:
                a, b = vertices[cid], vertices[target]
                lo, hi = (a, b) if a.dim < b.dim else (b, a)
                if hi.dim - lo.dim != 1:
                    raise ValueError(
                        f"edge {lo.coset_id}-{hi.coset_id} has dim gap "
                        f"{hi.dim - lo.dim}, model inconsistency"
                    )
                edge_set.add((lo.coset_id, hi.coset_id, j))
        action_rows.append(tuple(row))
    graph = OrbitGraph(
        pair=pair,
        vertices=vertices,
        edges=tuple(sorted(edge_set)),
        d_g=d_g,
        d_h=d_h,
        action=tuple(action_rows),
        group=W,
        subgroup=subgroup,
        coset_of=coset_of,
    )
    _MODEL_CACHE[key] = graph
    return graph


def orbit_set(pair: MinimalRankPair, budget: int = DEFAULT_BUDGET) -> list[OrbitVertex]:
    return list(build_graph(pair, budget=budget).vertices)


def knop_action(graph: OrbitGraph, alpha: int, V: OrbitVertex) -> OrbitVertex:
    """Vertex of the coset s_alpha times the coset of V (may be V itself)."""
    return graph.vertices[graph.action[V.coset_id][alpha]]


def closed_orbit(graph: OrbitGraph) -> OrbitVertex:
    """The unique vertex with no incoming edge; checked, not assumed."""
    has_incoming = {hi for _, hi, _ in graph.edges}
    minimal = [v for v in graph.vertices if v.coset_id not in has_incoming]
    if len(minimal) != 1:
        raise ValueError(f"expected one minimal vertex, found {len(minimal)}")
    bottom = minimal[0]
    if bottom.dim != graph.d_h:
        raise ValueError("minimal vertex is not at the bottom dimension")
    return bottom


def _dim_histogram(graph: OrbitGraph) -> tuple[int, ...]:
    coeffs = [0] * (graph.d_g - graph.d_h + 1)
    for v in graph.vertices:
        coeffs[v.dim - graph.d_h] += 1
    return tuple(coeffs)


def orbit_poincare(pair: MinimalRankPair, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    """Coefficient k counts vertices of dimension d_h + k."""
    return _dim_histogram(build_graph(pair, budget=budget))


# --- the cancellation order -----------------------------------------------------


def increasing_path(graph: OrbitGraph, V: OrbitVertex) -> tuple[int, ...]:
    """Canonical increasing path from the closed orbit to V, as simple indices.

    Follows the minimal representative word of each vertex downward, so the
    result is deterministic given the graph.
    """
    labels = []
    cur = V
    while cur.min_rep.word:
        j = cur.min_rep.word[0]
        down = graph.vertices[graph.action[cur.coset_id][j]]
        if down.dim != cur.dim - 1:
            raise ValueError("representative word does not descend the grading")
        labels.append(j)
        cur = down
    if cur.dim != graph.d_h:
        raise ValueError("descent did not reach the closed orbit")
    return tuple(reversed(labels))


def random_increasing_path(
    graph: OrbitGraph, V: OrbitVertex, rng: Random
) -> tuple[int, ...]:
    """A uniformly re-chosen increasing path from the closed orbit to V."""
    incoming: dict[int, list[tuple[int, int]]] = {}
    for lo, hi, j in graph.edges:
        incoming.setdefault(hi, []).append((lo, j))
    labels = []
    cur = V
    while cur.dim > graph.d_h:
        lo, j = rng.choice(sorted(incoming[cur.coset_id]))
        labels.append(j)
        cur = graph.vertices[lo]
    return tuple(reversed(labels))


def _walk_path(graph: OrbitGraph, path: tuple[int, ...]) -> OrbitVertex:
    cur = closed_orbit(graph)
    for j in path:
        nxt = graph.vertices[graph.action[cur.coset_id][j]]
        if nxt.coset_id == cur.coset_id or nxt.dim != cur.dim + 1:
            raise ValueError("label sequence is not an increasing path")
        cur = nxt
    return cur


def _reachable_along(graph: OrbitGraph, path: tuple[int, ...]) -> frozenset[int]:
    """Coset ids reachable by raising subsequences of the label sequence."""
    current = {closed_orbit(graph).coset_id}
    for j in path:
        raised = set()
        for cid in current:
            t = graph.action[cid][j]
            if t != cid and graph.vertices[t].dim == graph.vertices[cid].dim + 1:
                raised.add(t)
        current |= raised
    return frozenset(current)


def bruhat_leq(
    graph: OrbitGraph,
    Vp: OrbitVertex,
    V: OrbitVertex,
    path: tuple[int, ...] | None = None,
) -> bool:
    """Containment order: Vp below V iff some increasing subsequence of an
    increasing reference path to V ends at Vp.

    ``path`` overrides the canonical reference path; it must be an
    increasing path from the closed orbit to V.
    """
    if path is None:
        path = increasing_path(graph, V)
    elif _walk_path(graph, path).coset_id != V.coset_id:
        raise ValueError("path does not end at the target vertex")
    return Vp.coset_id in _reachable_along(graph, path)


# --- the verification report ----------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    pair: MinimalRankPair
    orbit_count: int
    d_g: int
    d_h: int
    p_g: tuple[int, ...]
    p_h: tuple[int, ...]
    q: tuple[int, ...]
    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)


def _leq_matrix(graph: OrbitGraph) -> list[list[bool]]:
    n = len(graph.vertices)
    cols: list[frozenset[int]] = [
        _reachable_along(graph, increasing_path(graph, v)) for v in graph.vertices
    ]
    return [[a in cols[b] for b in range(n)] for a in range(n)]


def verify_pair(pair: MinimalRankPair, budget: int = DEFAULT_BUDGET) -> VerifyReport:
    """Run every structural check the orbit model promises.

    Failures become report entries; nothing raises on a false check.
    """
    graph = build_graph(pair, budget=budget)
    W = graph.group
    n = len(graph.vertices)

    p_g = length_poincare(W)
    w_h = generate_weyl(_cached_root_system(pair.h_colored.diagram), budget=budget)
    p_h = length_poincare(w_h)
    q = _dim_histogram(graph)

    checks: list[tuple[str, bool]] = []
    checks.append(("q_times_ph_equals_pg", poly_mul(q, p_h) == p_g))
    checks.append(("q_palindromic", is_palindromic(q)))

    # transitivity of the action, from the bottom coset
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for cid in frontier:
            for t in graph.action[cid]:
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    checks.append(("action_transitive", len(seen) == n))

    # stabilizer of the top vertex under left multiplication
    top_candidates = [v for v in graph.vertices if v.dim == graph.d_g]
    if len(top_candidates) == 1:
        top = top_candidates[0]
        stab = 0
        for w in W.elements.values():
            if graph.coset_of[perm_key(compose(w.perm, top.min_rep.perm))] == top.coset_id:
                stab += 1
        checks.append(("top_stabilizer_order", stab == graph.subgroup.order))
    else:
        checks.append(("top_stabilizer_order", False))

    has_incoming = {hi for _, hi, _ in graph.edges}
    has_outgoing = {lo for lo, _, _ in graph.edges}
    minimal = [v for v in graph.vertices if v.coset_id not in has_incoming]
    maximal = [v for v in graph.vertices if v.coset_id not in has_outgoing]
    checks.append(
        ("unique_minimum", len(minimal) == 1 and minimal[0].dim == graph.d_h)
    )
    checks.append(
        ("unique_maximum", len(maximal) == 1 and maximal[0].dim == graph.d_g)
    )
    checks.append(
        (
            "edge_grading",
            all(
                graph.vertices[hi].dim - graph.vertices[lo].dim == 1
                for lo, hi, _ in graph.edges
            ),
        )
    )

    leq = _leq_matrix(graph)
    checks.append(("order_reflexive", all(leq[a][a] for a in range(n))))
    checks.append(
        (
            "order_antisymmetric",
            all(
                not (leq[a][b] and leq[b][a])
                for a in range(n)
                for b in range(n)
                if a != b
            ),
        )
    )
    checks.append(
        (
            "order_transitive",
            all(
                leq[a][c]
                for b in range(n)
                for a in range(n)
                if leq[a][b]
                for c in range(n)
                if leq[b][c]
            ),
        )
    )

    # re-derive each column along every one-step path variation
    path_ok = True
    canonical_cols = {
        v.coset_id: _reachable_along(graph, increasing_path(graph, v))
        for v in graph.vertices
    }
    for lo, hi, j in graph.edges:
        alt = increasing_path(graph, graph.vertices[lo]) + (j,)
        if _reachable_along(graph, alt) != canonical_cols[hi]:
            path_ok = False
            break
    checks.append(("order_path_independent", path_ok))

    return VerifyReport(
        pair=pair,
        orbit_count=n,
        d_g=graph.d_g,
        d_h=graph.d_h,
        p_g=p_g,
        p_h=p_h,
        q=q,
        checks=tuple(checks),
    )


def poincare_triple(
    pair: MinimalRankPair, budget: int = DEFAULT_BUDGET
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], bool]:
    """(P_G, P_H, Q, Q*P_H == P_G) for a validated pair."""
    graph = build_graph(pair, budget=budget)
    p_g = length_poincare(graph.group)
    p_h = length_poincare(
        generate_weyl(_cached_root_system(pair.h_colored.diagram), budget=budget)
    )
    q = _dim_histogram(graph)
    return p_g, p_h, q, poly_mul(q, p_h) == p_g


def report_to_json(report: VerifyReport) -> dict:
    return {
        "pair": pair_to_json(report.pair),
        "orbits": report.orbit_count,
        "dG": report.d_g,
        "dH": report.d_h,
        "P_G": list(report.p_g),
        "P_H": list(report.p_h),
        "Q": list(report.q),
        "checks": {name: passed for name, passed in report.checks},
        "ok": report.ok,
    }


# --- export ----------------------------------------------------------------------


def graph_to_json(graph: OrbitGraph) -> dict:
    names = graph.pair.g_diagram.vertices
    return {
        "vertices": [
            {
                "id": v.coset_id,
                "dim": v.dim,
                "min_word": [names[j] for j in v.min_rep.word],
            }
            for v in graph.vertices
        ],
        "edges": [[lo, hi, names[j]] for lo, hi, j in graph.edges],
        "dG": graph.d_g,
        "dH": graph.d_h,
        "Q": list(_dim_histogram(graph)),
    }


def graph_to_dot(graph: OrbitGraph) -> str:
    names = graph.pair.g_diagram.vertices
    lines = ["digraph orbits {", "  rankdir=BT;"]
    for v in graph.vertices:
        lines.append(f'  "c{v.coset_id}/d{v.dim}";')
    for lo, hi, j in graph.edges:
        a, b = graph.vertices[lo], graph.vertices[hi]
        lines.append(
            f'  "c{a.coset_id}/d{a.dim}" -> "c{b.coset_id}/d{b.dim}"'
            f' [label="{names[j]}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
