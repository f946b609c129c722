"""Weyl groups as exact permutation groups on the indexed root set.

Elements are keyed by their permutation of the roots; each carries the
first reduced word found by breadth-first closure, which is also the
lexicographically smallest reduced word for that element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .root_system import RootSystem, _reflect_coords, DEFAULT_RANK_CAP

DEFAULT_BUDGET = 3_000_000

Perm = tuple[int, ...]


class BudgetExceededError(RuntimeError):
    """Raised when group enumeration exceeds the configured element budget."""

    def __init__(self, message: str, partial_count: int) -> None:
        super().__init__(message)
        self.partial_count = partial_count


def compose(p: Perm, q: Perm) -> Perm:
    """Permutation of 'apply q, then p'."""
    return tuple(p[i] for i in q)


def perm_key(p: Perm) -> bytes:
    return bytes(p)


@dataclass(frozen=True)
class WeylElement:
    perm: Perm
    word: tuple[int, ...]

    @property
    def key(self) -> bytes:
        return perm_key(self.perm)


class WeylGroup:
    """Fully enumerated Weyl group of a root system."""

    def __init__(
        self,
        root_system: RootSystem,
        elements: dict[bytes, WeylElement],
        generators: tuple[WeylElement, ...],
    ) -> None:
        self.root_system = root_system
        self.elements = elements
        self.generators = generators
        self.identity = elements[perm_key(tuple(range(len(root_system.roots))))]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, w: WeylElement) -> bool:
        return w.key in self.elements

    def inverse(self, w: WeylElement) -> WeylElement:
        inv = [0] * len(w.perm)
        for i, j in enumerate(w.perm):
            inv[j] = i
        return self.elements[perm_key(tuple(inv))]

    def product(self, u: WeylElement, v: WeylElement) -> WeylElement:
        """Group product u*v (v acts first on roots)."""
        return self.elements[perm_key(compose(u.perm, v.perm))]


def reflection_perms(rs: RootSystem) -> tuple[Perm, ...]:
    """Permutation of the indexed roots induced by each simple reflection."""
    index = rs.root_index
    cartan = rs.diagram.cartan
    perms = []
    for j in range(rs.diagram.rank):
        perms.append(
            tuple(index[_reflect_coords(cartan, r, j)] for r in rs.roots)
        )
    return tuple(perms)


_GROUP_CACHE: dict = {}


def generate_weyl(
    rs: RootSystem,
    budget: int = DEFAULT_BUDGET,
    rank_cap: int = DEFAULT_RANK_CAP,
) -> WeylGroup:
    """Breadth-first closure of the simple reflections.

    Elements are discovered in (length, lex word) order; the stored word is
    the lex-min reduced word.  Raises BudgetExceededError with the partial
    count when the group grows past ``budget``.  Generated groups are cached
    per diagram; a cached group still honors a smaller budget by raising.
    """
    if rs.diagram.rank > rank_cap:
        raise ValueError(
            f"rank {rs.diagram.rank} exceeds the configured cap {rank_cap}"
        )
    cached = _GROUP_CACHE.get(rs.diagram)
    if cached is not None:
        if cached.order > budget:
            raise BudgetExceededError(
                f"Weyl group of {rs.diagram.type_label} exceeds budget "
                f"{budget} (order {cached.order})",
                budget,
            )
        return cached
    gens = reflection_perms(rs)
    n = len(rs.roots)
    identity: Perm = tuple(range(n))
    elements: dict[bytes, WeylElement] = {
        perm_key(identity): WeylElement(identity, ())
    }
    frontier = [WeylElement(identity, ())]
    while frontier:
        new: list[WeylElement] = []
        for w in frontier:
            for i, g in enumerate(gens):
                p = compose(w.perm, g)
                k = perm_key(p)
                if k not in elements:
                    if len(elements) >= budget:
                        raise BudgetExceededError(
                            f"Weyl group of {rs.diagram.type_label} exceeds "
                            f"budget {budget} (partial count {len(elements)})",
                            len(elements),
                        )
                    el = WeylElement(p, w.word + (i,))
                    elements[k] = el
                    new.append(el)
        frontier = new
    gen_elements = tuple(elements[perm_key(g)] for g in gens)
    group = WeylGroup(rs, elements, gen_elements)
    _GROUP_CACHE[rs.diagram] = group
    return group


def length(w: WeylElement) -> int:
    return len(w.word)


def inversion_count(W: WeylGroup, w: WeylElement) -> int:
    """Number of positive roots sent to negative roots by w."""
    rs = W.root_system
    pos = {rs.root_index[r] for r in rs.positive_roots}
    return sum(1 for i in pos if w.perm[i] not in pos)


def length_poincare(W: WeylGroup) -> tuple[int, ...]:
    """Coefficient k counts elements of length k."""
    degree = max(len(w.word) for w in W.elements.values())
    coeffs = [0] * (degree + 1)
    for w in W.elements.values():
        coeffs[len(w.word)] += 1
    return tuple(coeffs)


# --- polynomial helpers (coefficient tuples, lowest degree first) -----------


def poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def is_palindromic(p: tuple[int, ...]) -> bool:
    return tuple(reversed(p)) == tuple(p)


# --- subgroups and cosets ----------------------------------------------------


class Subgroup:
    """Explicit subgroup of a Weyl group, closed under the given generators."""

    def __init__(
        self,
        group: WeylGroup,
        perms: tuple[Perm, ...],
        generator_perms: tuple[Perm, ...],
    ) -> None:
        self.group = group
        self.perms = perms
        self.generator_perms = generator_perms

    @cached_property
    def keys(self) -> frozenset[bytes]:
        return frozenset(perm_key(p) for p in self.perms)

    @property
    def order(self) -> int:
        return len(self.perms)

    def __contains__(self, w: WeylElement) -> bool:
        return w.key in self.keys


def perm_closure(
    generators: list[Perm], n: int, budget: int | None = None
) -> list[Perm]:
    """Closure of permutations of range(n) under composition, identity first."""
    identity: Perm = tuple(range(n))
    seen: dict[bytes, Perm] = {perm_key(identity): identity}
    frontier = [identity]
    while frontier:
        new = []
        for p in frontier:
            for g in generators:
                q = compose(p, g)
                k = perm_key(q)
                if k not in seen:
                    if budget is not None and len(seen) >= budget:
                        raise BudgetExceededError(
                            "subgroup closure exceeded the element budget",
                            partial_count=len(seen),
                        )
                    seen[k] = q
                    new.append(q)
        frontier = new
    return list(seen.values())


def subgroup_closure(W: WeylGroup, gens: list[WeylElement]) -> Subgroup:
    """Subgroup generated by ``gens``; membership testable by permutation key."""
    for g in gens:
        if g not in W:
            raise ValueError("generator is not an element of the group")
    n = len(W.root_system.roots)
    perms = perm_closure([g.perm for g in gens], n)
    return Subgroup(W, tuple(perms), tuple(g.perm for g in gens))


def full_subgroup(W: WeylGroup) -> Subgroup:
    """The whole group viewed as a subgroup of itself (no closure run)."""
    return Subgroup(
        W,
        tuple(w.perm for w in W.elements.values()),
        tuple(g.perm for g in W.generators),
    )


def coset_decomposition(
    W: WeylGroup, W0: Subgroup
) -> tuple[list[WeylElement], dict[bytes, int]]:
    """Left cosets w*W0 with canonical minimal representatives.

    Elements are scanned in (length, lex word) order, so the first element
    of each unvisited coset is its minimal-length representative with the
    lexicographically smallest reduced word.  Returns the representative
    list (coset id = list position, identity coset first) and the map from
    element key to coset id.
    """
    order = sorted(W.elements.values(), key=lambda w: (len(w.word), w.word))
    coset_of: dict[bytes, int] = {}
    reps: list[WeylElement] = []
    for w in order:
        if w.key in coset_of:
            continue
        cid = len(reps)
        reps.append(w)
        wp = w.perm
        for up in W0.perms:
            coset_of[perm_key(compose(wp, up))] = cid
    if len(coset_of) != W.order:
        raise ValueError("subgroup does not partition the group into cosets")
    return reps, coset_of


def min_coset_reps(
    W: WeylGroup, W0: Subgroup
) -> list[tuple[int, WeylElement, int]]:
    """One minimal representative per left coset: (coset id, element, length)."""
    reps, _ = coset_decomposition(W, W0)
    return [(cid, w, len(w.word)) for cid, w in enumerate(reps)]
