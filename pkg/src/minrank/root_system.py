"""Finite root systems and Dynkin diagrams, exactly over the integers.

Roots are integer coordinate vectors in the simple-root basis of their
diagram.  No inner product is ever materialized: Cartan pairings are read
off root strings, so every query is integer-exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

Root = tuple[int, ...]

# Closure bound per connected component; E8 has 240 roots, nothing in
# finite type exceeds that.
CLOSURE_BOUND = 300

# Practical ceiling for full permutation-group enumeration downstream.
DEFAULT_RANK_CAP = 7

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}
_MAX_RANK = {"A": None, "B": None, "C": None, "D": None, "E": 8, "F": 4, "G": 2}


@dataclass(frozen=True)
class DynkinDiagram:
    """Vertex list plus generalized Cartan matrix of finite type.

    ``cartan[i][j]`` is the pairing of simple root i against the coroot of
    simple root j.  Vertex ids are strings, numbered "1".."n" by builders.
    """

    type_label: str
    cartan: tuple[tuple[int, ...], ...]
    vertices: tuple[str, ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        if len(self.cartan) != n or any(len(row) != n for row in self.cartan):
            raise ValueError("cartan matrix shape does not match vertex count")
        if len(set(self.vertices)) != n:
            raise ValueError("duplicate vertex ids")
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ValueError("cartan diagonal must be 2")
            for j in range(n):
                if i == j:
                    continue
                a = self.cartan[i][j]
                if a not in (0, -1, -2, -3):
                    raise ValueError(f"invalid cartan entry {a} at ({i}, {j})")
                if (a == 0) != (self.cartan[j][i] == 0):
                    raise ValueError("cartan zero pattern must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.vertices)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as sorted tuples of vertex indices."""
        n = self.rank
        seen: set[int] = set()
        comps = []
        for start in range(n):
            if start in seen:
                continue
            stack = [start]
            comp = []
            while stack:
                i = stack.pop()
                if i in seen:
                    continue
                seen.add(i)
                comp.append(i)
                stack.extend(
                    j for j in range(n) if j not in seen and self.cartan[i][j] != 0
                )
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def vertex_index(self, vid: str) -> int:
        try:
            return self.vertices.index(vid)
        except ValueError:
            raise ValueError(f"unknown vertex id {vid!r}") from None


def build_dynkin(type_label: str, rank: int) -> DynkinDiagram:
    """Standard Cartan matrix for one of the types A..G, Bourbaki numbering."""
    letter = type_label.upper()
    if letter not in _MIN_RANK:
        raise ValueError(f"unknown type {type_label!r}")
    lo, hi = _MIN_RANK[letter], _MAX_RANK[letter]
    if rank < lo or (hi is not None and rank > hi):
        raise ValueError(f"invalid rank {rank} for type {letter}")

    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if letter in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if letter == "B" and n >= 2:
            bond(n - 2, n - 1, -2, -1)  # alpha_n short
        if letter == "C" and n >= 2:
            bond(n - 2, n - 1, -1, -2)  # alpha_n long
    elif letter == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 3:
            bond(n - 3, n - 1)
    elif letter == "E":
        # Bourbaki: chain 1-3-4-5-..., vertex 2 hangs off vertex 4.
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif letter == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)  # alpha_3, alpha_4 short
        bond(2, 3)
    elif letter == "G":
        bond(0, 1, -1, -3)  # alpha_1 short

    return DynkinDiagram(
        type_label=f"{letter}{rank}",
        cartan=tuple(tuple(row) for row in a),
        vertices=tuple(str(i + 1) for i in range(n)),
    )


def disjoint_union(d1: DynkinDiagram, d2: DynkinDiagram) -> DynkinDiagram:
    """Block-diagonal union; vertices are renumbered "1".."n1+n2"."""
    n1, n2 = d1.rank, d2.rank
    n = n1 + n2
    cartan = [[0] * n for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            cartan[i][j] = d1.cartan[i][j]
    for i in range(n2):
        for j in range(n2):
            cartan[n1 + i][n1 + j] = d2.cartan[i][j]
    return DynkinDiagram(
        type_label=f"{d1.type_label}+{d2.type_label}",
        cartan=tuple(tuple(row) for row in cartan),
        vertices=tuple(str(i + 1) for i in range(n)),
    )


@dataclass(frozen=True, eq=False)
class RootSystem:
    """All roots of a finite-type diagram, closed under simple reflections."""

    diagram: DynkinDiagram
    roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    root_set: frozenset[Root] = field(repr=False)

    @cached_property
    def root_index(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.diagram.rank
        return tuple(_basis(n, i) for i in range(n))


def _basis(n: int, i: int) -> Root:
    return tuple(1 if j == i else 0 for j in range(n))


def _reflect_coords(cartan, beta: Root, j: int) -> Root:
    """beta - <beta, alpha_j^v> alpha_j, via the Cartan matrix."""
    c = sum(beta[i] * cartan[i][j] for i in range(len(beta)))
    if c == 0:
        return beta
    out = list(beta)
    out[j] -= c
    return tuple(out)


def build_root_system(diagram: DynkinDiagram, bound: int = CLOSURE_BOUND) -> RootSystem:
    """Close the simple roots under simple reflections, component by component.

    Raises ValueError if any component's closure exceeds ``bound`` roots,
    which signals non-finite input.
    """
    n = diagram.rank
    cartan = diagram.cartan
    all_roots: set[Root] = set()
    for comp in diagram.components:
        comp_roots: set[Root] = {_basis(n, i) for i in comp}
        frontier = list(comp_roots)
        while frontier:
            new: list[Root] = []
            for beta in frontier:
                for j in comp:
                    r = _reflect_coords(cartan, beta, j)
                    if r not in comp_roots:
                        comp_roots.add(r)
                        new.append(r)
            if len(comp_roots) > bound:
                raise ValueError(
                    f"closure exceeded {bound} roots on component {comp}; "
                    "diagram is not of finite type"
                )
            frontier = new
        all_roots |= comp_roots
    roots = tuple(sorted(all_roots))
    positive = tuple(r for r in roots if _is_positive(r))
    if 2 * len(positive) != len(roots):
        raise ValueError("root system is not negation-symmetric")
    return RootSystem(
        diagram=diagram,
        roots=roots,
        positive_roots=positive,
        root_set=frozenset(roots),
    )


def _is_positive(r: Root) -> bool:
    return all(c >= 0 for c in r) and any(c > 0 for c in r)


def negate(r: Root) -> Root:
    return tuple(-c for c in r)


def string_pairing(
    root_set: frozenset[Root] | set[Root], beta: Root, alpha: Root, max_steps: int = 4
) -> int | None:
    """Pairing <beta, alpha^v> = p - q read off the alpha-string through beta.

    Works on any finite set of integer vectors containing beta and alpha;
    returns None when a string does not break within ``max_steps`` (the set
    then cannot be a finite-type root system).
    """
    if beta == alpha:
        return 2
    if beta == negate(alpha):
        return -2
    p = 0
    cur = beta
    for _ in range(max_steps):
        cur = tuple(b - a for b, a in zip(cur, alpha))
        if cur not in root_set:
            break
        p += 1
    else:
        return None
    q = 0
    cur = beta
    for _ in range(max_steps):
        cur = tuple(b + a for b, a in zip(cur, alpha))
        if cur not in root_set:
            break
        q += 1
    else:
        return None
    return p - q


def pairing(rs: RootSystem, beta: Root, alpha: Root) -> int:
    """Exact Cartan pairing <beta, alpha^v> from the root string."""
    if beta not in rs.root_set:
        raise ValueError(f"{beta} is not a root of {rs.diagram.type_label}")
    if alpha not in rs.root_set:
        raise ValueError(f"{alpha} is not a root of {rs.diagram.type_label}")
    value = string_pairing(rs.root_set, beta, alpha)
    if value is None:
        raise ValueError("unbroken root string; root system is inconsistent")
    return value


def is_orthogonal(rs: RootSystem, alpha: Root, beta: Root) -> bool:
    return pairing(rs, beta, alpha) == 0 and pairing(rs, alpha, beta) == 0


def reflect(rs: RootSystem, alpha: Root, beta: Root) -> Root:
    """Reflection of beta at a simple root alpha."""
    n = rs.diagram.rank
    try:
        j = next(i for i in range(n) if alpha == _basis(n, i))
    except StopIteration:
        raise ValueError(f"{alpha} is not a simple root") from None
    if beta not in rs.root_set:
        raise ValueError(f"{beta} is not a root of {rs.diagram.type_label}")
    out = _reflect_coords(rs.diagram.cartan, beta, j)
    assert out in rs.root_set
    return out


def diagram_to_json(d: DynkinDiagram) -> dict:
    return {
        "type": d.type_label,
        "rank": d.rank,
        "cartan": [list(row) for row in d.cartan],
        "vertices": list(d.vertices),
    }


def diagram_from_json(obj: dict) -> DynkinDiagram:
    try:
        d = DynkinDiagram(
            type_label=str(obj["type"]),
            cartan=tuple(tuple(int(x) for x in row) for row in obj["cartan"]),
            vertices=tuple(str(v) for v in obj["vertices"]),
        )
        rank = int(obj["rank"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed diagram object: {exc}") from None
    if rank != d.rank:
        raise ValueError("rank field disagrees with vertex count")
    return d


# --- component identification ----------------------------------------------
#
# Candidate list per rank; B2 and D3 are deliberately absent so that the
# rank-2 double bond is always named C2 and the rank-3 triangle-free fork
# is always named A3.


def _identification_candidates(rank: int) -> list[tuple[str, int]]:
    if rank == 1:
        return [("A", 1)]
    if rank == 2:
        return [("A", 2), ("C", 2), ("G", 2)]
    if rank == 3:
        return [("A", 3), ("B", 3), ("C", 3)]
    out = [("A", rank), ("B", rank), ("C", rank), ("D", rank)]
    if rank == 4:
        out.append(("F", 4))
    if rank in (6, 7, 8):
        out.append(("E", rank))
    return out


def identify_component(cartan, indices: tuple[int, ...]) -> tuple[str, int, tuple[int, ...]] | None:
    """Match one connected Cartan block against the standard finite types.

    Returns (letter, rank, perm) where perm[k] is the index (into
    ``indices``) realizing standard vertex k, lexicographically smallest
    among the isomorphisms; None when no finite type matches.
    """
    r = len(indices)
    for letter, rank in _identification_candidates(r):
        std = build_dynkin(letter, rank).cartan
        for p in itertools.permutations(range(r)):
            if all(
                cartan[indices[p[i]]][indices[p[j]]] == std[i][j]
                for i in range(r)
                for j in range(r)
            ):
                return letter, rank, p
    return None
