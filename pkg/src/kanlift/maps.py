"""Simplicial maps.

A map with a finite domain is stored as an assignment of codomain simplices
to the domain's generators; evaluation at an arbitrary simplex pushes the
normal-form degeneracy into the codomain.  Maps out of lazy spaces carry a
per-level function instead.
"""

from __future__ import annotations

from .ordinals import OrdinalMap
from .spaces import FiniteSpace, SimplexRef, SimplicialSpace, canon_key, generator_ref


class MapError(ValueError):
    pass


class SimplicialMap:
    def __init__(
        self,
        domain: SimplicialSpace,
        codomain: SimplicialSpace,
        assignment: dict | None = None,
        level_fn=None,
        name: str = "",
    ):
        if (assignment is None) == (level_fn is None):
            raise MapError("exactly one of assignment / level_fn is required")
        if assignment is not None and not isinstance(domain, FiniteSpace):
            raise MapError("generator assignments need a finite domain")
        self.domain = domain
        self.codomain = codomain
        self.assignment = assignment
        self.level_fn = level_fn
        self.name = name

    def __call__(self, n: int, x):
        if self.assignment is not None:
            ref: SimplexRef = x
            return self.codomain.apply(ref.degeneracy, self.assignment[ref.generator])
        return self.level_fn(n, x)

    def on_generator(self, gen: str):
        return self.assignment[gen]

    def key(self):
        if self.assignment is None:
            raise MapError("lazy maps have no canonical key")
        return tuple(canon_key(self.assignment[g]) for g in self.domain.pres.gens)

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        if self.domain.recipe != other.domain.recipe or self.codomain.recipe != other.codomain.recipe:
            return False
        if self.assignment is not None and other.assignment is not None:
            return self.assignment == other.assignment
        raise MapError("cannot compare lazy maps for equality")

    def __hash__(self):
        return hash((self.domain.recipe, self.codomain.recipe, self.key()))

    def validate(self):
        """Check dimensions, membership and face compatibility on generators."""
        if self.assignment is None:
            raise MapError("validate() needs a finite domain; use validate_through")
        pres = self.domain.pres
        if set(self.assignment) != set(pres.dims):
            raise MapError("assignment does not cover the generators exactly")
        for g, d in pres.dims.items():
            img = self.assignment[g]
            if not self.codomain.contains(d, img):
                raise MapError(f"image of {g!r} is not a level-{d} simplex")
        for g, d in pres.dims.items():
            if d == 0:
                continue
            img = self.assignment[g]
            for i, face_ref in enumerate(pres.faces[g]):
                expected = self(d - 1, face_ref)
                got = self.codomain.face(i, d, img)
                if expected != got:
                    raise MapError(
                        f"face {i} of {g!r}: assignment gives {got}, faces give {expected}"
                    )
        return self

    def validate_through(self, bound: int):
        """Naturality check on all levels <= bound (for lazy domains)."""
        for n in range(bound + 1):
            for x in self.domain.level(n):
                y = self(n, x)
                if not self.codomain.contains(n, y):
                    raise MapError(f"level {n}: {x} maps outside the codomain")
                if n == 0:
                    continue
                for i in range(n + 1):
                    if self(n - 1, self.domain.face(i, n, x)) != self.codomain.face(i, n, y):
                        raise MapError(f"level {n}: face {i} not preserved at {x}")
        return self

    def is_mono_through(self, bound: int) -> bool:
        for n in range(bound + 1):
            seen = set()
            for x in self.domain.level(n):
                y = canon_key(self(n, x))
                if y in seen:
                    return False
                seen.add(y)
        return True

    def __repr__(self):
        tag = self.name or "map"
        return f"<{tag}: {self.domain.recipe} -> {self.codomain.recipe}>"


def identity_map(space: SimplicialSpace) -> SimplicialMap:
    if isinstance(space, FiniteSpace):
        assignment = {
            g: generator_ref(g, space.pres.dims[g]) for g in space.pres.gens
        }
        return SimplicialMap(space, space, assignment, name="id")
    return SimplicialMap(space, space, level_fn=lambda n, x: x, name="id")


def compose_maps(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """The composite "f then g"."""
    if f.codomain.recipe != g.domain.recipe:
        raise MapError(f"cannot compose {f!r} with {g!r}")
    if f.assignment is not None:
        assignment = {
            gen: g(f.domain.pres.dims[gen], img) for gen, img in f.assignment.items()
        }
        return SimplicialMap(f.domain, g.codomain, assignment)
    return SimplicialMap(
        f.domain, g.codomain, level_fn=lambda n, x: g(n, f(n, x))
    )


def inclusion(sub: FiniteSpace, ambient: FiniteSpace) -> SimplicialMap:
    """The inclusion of a subcomplex sharing generator names."""
    assignment = {}
    for g in sub.pres.gens:
        if g not in ambient.pres.dims or ambient.pres.dims[g] != sub.pres.dims[g]:
            raise MapError(f"{g!r} is not a generator of the ambient space")
        assignment[g] = generator_ref(g, sub.pres.dims[g])
    return SimplicialMap(sub, ambient, assignment, name="incl")


def constant_map(domain: SimplicialSpace, codomain: SimplicialSpace, vertex) -> SimplicialMap:
    """The map collapsing everything to the degeneracies of one vertex."""

    def collapse(n):
        return codomain.apply(OrdinalMap(n, 0, tuple(0 for _ in range(n + 1))), vertex)

    if isinstance(domain, FiniteSpace):
        assignment = {g: collapse(domain.pres.dims[g]) for g in domain.pres.gens}
        return SimplicialMap(domain, codomain, assignment, name="const")
    return SimplicialMap(domain, codomain, level_fn=lambda n, x: collapse(n), name="const")


# --- maps between standard simplices ----------------------------------------


def delta_simplex(n: int, seq: tuple[int, ...]) -> SimplexRef:
    """The simplex of delta(n) with the given weakly increasing vertex list."""
    if any(a > b for a, b in zip(seq, seq[1:])):
        raise ValueError(f"vertex sequence {seq} is not monotone")
    verts = tuple(sorted(set(seq)))
    index = {v: i for i, v in enumerate(verts)}
    gen = ".".join(str(v) for v in verts)
    word = OrdinalMap(len(seq) - 1, len(verts) - 1, tuple(index[v] for v in seq))
    return SimplexRef(gen, word)


def delta_vertices(ref: SimplexRef) -> tuple[int, ...]:
    """Vertex list of a simplex of some delta(n)."""
    verts = tuple(int(v) for v in ref.generator.split("."))
    return tuple(verts[ref.degeneracy(i)] for i in range(ref.dim + 1))


def ordinal_map_as_delta_map(f: OrdinalMap) -> SimplicialMap:
    """The simplicial map delta(m) -> delta(n) induced by a monotone map."""
    from .spaces import delta

    src, dst = delta(f.source_size), delta(f.target_size)
    assignment = {}
    for g in src.pres.gens:
        verts = tuple(int(v) for v in g.split("."))
        assignment[g] = delta_simplex(f.target_size, tuple(f(v) for v in verts))
    return SimplicialMap(src, dst, assignment)


def vertex_induced_map(
    src: FiniteSpace, dst_n: int, vertex_images: dict[str, int]
) -> SimplicialMap:
    """A map from a vertex-set-named space (delta/boundary/horn) into delta(n),
    determined by images of the vertices."""
    from .spaces import delta

    dst = delta(dst_n)
    assignment = {}
    for g in src.pres.gens:
        verts = tuple(int(v) for v in g.split("."))
        seq = tuple(vertex_images[str(v)] for v in verts)
        assignment[g] = delta_simplex(dst_n, seq)
    return SimplicialMap(src, dst, assignment)


# --- exhaustive map enumeration ----------------------------------------------


def assignment_order(domain: FiniteSpace) -> tuple[str, ...]:
    """A static generator order for backtracking search.

    A generator becomes eligible once all its face generators are placed; among
    eligible ones the highest-dimensional is placed first (ties by id), so
    consistency constraints fire as early as possible."""
    pres = domain.pres
    face_gens = {g: {r.generator for r in pres.faces.get(g, ())} for g in pres.gens}
    placed: set[str] = set()
    order: list[str] = []
    remaining = set(pres.gens)
    while remaining:
        ready = [g for g in remaining if face_gens[g] <= placed]
        best = min(ready, key=lambda g: (-pres.dims[g], g))
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return tuple(order)


def enumerate_maps(
    domain: FiniteSpace,
    codomain: SimplicialSpace,
    partial: dict | None = None,
    image_filter=None,
):
    """All simplicial maps domain -> codomain extending the partial
    assignment, in canonical order, duplicate-free.

    ``image_filter(gen, candidate)`` may prune candidates further."""
    pres = domain.pres
    order = assignment_order(domain)
    assignment: dict = {}

    def candidates(g: str):
        d = pres.dims[g]
        expected = None
        if d > 0:
            expected = [
                codomain.apply(ref.degeneracy, assignment[ref.generator])
                for ref in pres.faces[g]
            ]
        if partial is not None and g in partial:
            pool = (partial[g],)
        elif expected is not None:
            key = tuple(canon_key(want) for want in expected)
            pool = codomain.face_index(d).get(key, ())
            expected = None  # pool already matches
        else:
            pool = codomain.level(d)
        for cand in pool:
            if expected is not None and any(
                codomain.face(i, d, cand) != want for i, want in enumerate(expected)
            ):
                continue
            if image_filter is not None and not image_filter(g, cand):
                continue
            yield cand

    def backtrack(idx: int):
        if idx == len(order):
            yield SimplicialMap(domain, codomain, dict(assignment))
            return
        g = order[idx]
        for cand in candidates(g):
            assignment[g] = cand
            yield from backtrack(idx + 1)
            del assignment[g]

    yield from backtrack(0)


def characteristic_map(space: SimplicialSpace, n: int, x) -> SimplicialMap:
    """The map delta(n) -> space classifying a level-n simplex."""
    from .spaces import delta

    src = delta(n)
    assignment = {}
    for g in src.pres.gens:
        verts = tuple(int(v) for v in g.split("."))
        inj = OrdinalMap(len(verts) - 1, n, verts)
        assignment[g] = space.apply(inj, x)
    return SimplicialMap(src, space, assignment)
