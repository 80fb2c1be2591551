"""Level-wise simplicial spaces and finite presentations.

A simplicial space exposes, for each level n, a finite enumerable set of
simplices together with a contravariant action of ordinal maps.  Finite
spaces are backed by a presentation: a set of non-degenerate generators with
prescribed faces, all other simplices being degeneracies in Eilenberg-Zilber
normal form (generator + surjection).  Lazy spaces (Ex, coskeleta, nerves,
mapping spaces) implement the level-wise interface directly and never get a
presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .ordinals import (
    OrdinalMap,
    all_surjections,
    coface,
    codegeneracy,
    collapsed_positions,
    compose,
    ez_factor,
    identity,
    surjection_from_word,
)


def canon_key(x):
    """A total order on the simplex values used across the library."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, OrdinalMap):
        return (2, x.key())
    if isinstance(x, SimplexRef):
        return (3, x.generator, x.degeneracy.values)
    if isinstance(x, tuple):
        return (4, tuple(canon_key(v) for v in x))
    if isinstance(x, frozenset):
        return (5, tuple(sorted(canon_key(v) for v in x)))
    raise TypeError(f"no canonical key for {type(x)}")


@dataclass(frozen=True, slots=True)
class SimplexRef:
    """A simplex in normal form: a surjective degeneracy of a generator."""

    generator: str
    degeneracy: OrdinalMap

    @property
    def dim(self) -> int:
        return self.degeneracy.source_size

    @property
    def is_generator(self) -> bool:
        return self.degeneracy.is_identity

    def word(self) -> tuple[int, ...]:
        return collapsed_positions(self.degeneracy)

    def __repr__(self):
        w = self.word()
        return f"<{self.generator}>" if not w else f"<s{list(w)} {self.generator}>"


def generator_ref(gen_id: str, dim: int) -> SimplexRef:
    return SimplexRef(gen_id, identity(dim))


class PresentationError(ValueError):
    pass


class FinitePresentation:
    """Generators with dimensions plus a face list per positive-dimensional
    generator.  Validated on construction: face targets must exist, have the
    right dimension, and satisfy the simplicial identities."""

    def __init__(self, dims: dict[str, int], faces: dict[str, tuple[SimplexRef, ...]]):
        self.dims = dict(dims)
        self.faces = {g: tuple(fs) for g, fs in faces.items()}
        self.gens = tuple(sorted(self.dims, key=lambda g: (self.dims[g], g)))
        self._validate()

    def _validate(self):
        for g, d in self.dims.items():
            if d < 0:
                raise PresentationError(f"generator {g!r} has negative dimension")
            if d == 0:
                if g in self.faces and self.faces[g]:
                    raise PresentationError(f"vertex {g!r} cannot have faces")
                continue
            fs = self.faces.get(g)
            if fs is None or len(fs) != d + 1:
                raise PresentationError(f"generator {g!r} needs {d + 1} faces")
            for ref in fs:
                if ref.generator not in self.dims:
                    raise PresentationError(
                        f"face of {g!r} references unknown generator {ref.generator!r}"
                    )
                if not ref.degeneracy.is_surjective:
                    raise PresentationError(f"face of {g!r} has non-surjective word")
                if ref.degeneracy.target_size != self.dims[ref.generator]:
                    raise PresentationError(f"face of {g!r} has mismatched target")
                if ref.dim != d - 1:
                    raise PresentationError(f"face of {g!r} has dimension {ref.dim}")

    def check_identities(self, space: "FiniteSpace"):
        """d_i d_j = d_{j-1} d_i for i < j, on every generator."""
        for g in self.gens:
            d = self.dims[g]
            if d < 2:
                continue
            top = generator_ref(g, d)
            for j in range(1, d + 1):
                for i in range(j):
                    lhs = space.apply(coface(d - 1, i), space.apply(coface(d, j), top))
                    rhs = space.apply(coface(d - 1, j - 1), space.apply(coface(d, i), top))
                    if lhs != rhs:
                        raise PresentationError(
                            f"simplicial identity fails on {g!r}: "
                            f"d_{i} d_{j} = {lhs} but d_{j - 1} d_{i} = {rhs}"
                        )


class SimplicialSpace:
    """Base class: memoized canonical levels plus the contravariant action."""

    recipe: tuple = ("space",)

    def __init__(self):
        self._levels: dict[int, tuple] = {}
        self._level_sets: dict[int, frozenset] = {}
        self._face_index: dict[int, dict] = {}

    def _level(self, n: int) -> list:
        raise NotImplementedError

    def apply(self, f: OrdinalMap, x):
        raise NotImplementedError

    @property
    def presentation(self) -> FinitePresentation | None:
        return None

    @property
    def is_finite(self) -> bool:
        return self.presentation is not None

    def level(self, n: int) -> tuple:
        if n not in self._levels:
            self._levels[n] = tuple(sorted(self._level(n), key=canon_key))
        return self._levels[n]

    def level_set(self, n: int) -> frozenset:
        if n not in self._level_sets:
            self._level_sets[n] = frozenset(self.level(n))
        return self._level_sets[n]

    def contains(self, n: int, x) -> bool:
        return x in self.level_set(n)

    def face_index(self, n: int) -> dict:
        """Level-n simplices grouped by their face tuple (n >= 1); the search
        backbone: candidates with prescribed faces come from one lookup."""
        idx = self._face_index.get(n)
        if idx is None:
            idx = {}
            for x in self.level(n):
                key = tuple(canon_key(self.face(i, n, x)) for i in range(n + 1))
                idx.setdefault(key, []).append(x)
            self._face_index[n] = idx
        return idx

    def level_count(self, n: int) -> int:
        return len(self.level(n))

    def face(self, i: int, n: int, x):
        return self.apply(coface(n, i), x)

    def degenerate(self, j: int, n: int, x):
        """s_j applied to a level-n simplex."""
        return self.apply(codegeneracy(n, j), x)

    def is_degenerate(self, n: int, x) -> bool:
        for j in range(n):
            if self.degenerate(j, n - 1, self.face(j, n, x)) == x:
                return True
        return False

    def normalize(self, n: int, x):
        """Eilenberg-Zilber normal form: (n0, x0, s) with x0 non-degenerate
        at level n0 and x == apply(s, x0) for the surjection s: [n] ->> [n0]."""
        cur_n, cur, s_acc = n, x, identity(n)
        while cur_n > 0:
            for j in range(cur_n):
                y = self.apply(coface(cur_n, j), cur)
                if self.apply(codegeneracy(cur_n - 1, j), y) == cur:
                    s_acc = compose(s_acc, codegeneracy(cur_n - 1, j))
                    cur, cur_n = y, cur_n - 1
                    break
            else:
                break
        return cur_n, cur, s_acc

    def nondegenerate_count(self, n: int) -> int:
        return sum(1 for x in self.level(n) if not (n > 0 and self.is_degenerate(n, x)))

    def simplex_data(self, n: int, x):
        """JSON-able canonical form of a simplex (per-space codec)."""
        raise NotImplementedError

    def simplex_from_data(self, n: int, data):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}{self.recipe!r}"


class FiniteSpace(SimplicialSpace):
    """A simplicial space backed by a finite presentation.

    Simplices are SimplexRefs; the operator action is computed through the
    normal-form algebra.  ``underlying`` optionally links the generators to
    simplices of a level-wise space the presentation was extracted from.
    """

    def __init__(
        self,
        pres: FinitePresentation,
        recipe: tuple,
        underlying: "SimplicialSpace | None" = None,
        gen_simplex: dict | None = None,
    ):
        super().__init__()
        self.pres = pres
        self.recipe = recipe
        self.underlying = underlying
        self.gen_simplex = gen_simplex
        self._apply_cache: dict = {}
        self._inj_cache: dict = {}

    @property
    def presentation(self) -> FinitePresentation:
        return self.pres

    @property
    def dim(self) -> int:
        return max((d for d in self.pres.dims.values()), default=-1)

    def _level(self, n: int) -> list:
        out = []
        for g in self.pres.gens:
            d = self.pres.dims[g]
            if d <= n:
                out.extend(SimplexRef(g, s) for s in all_surjections(n, d))
        return out

    def apply(self, f: OrdinalMap, ref: SimplexRef) -> SimplexRef:
        if f.target_size != ref.dim:
            raise ValueError(f"cannot apply {f} to {ref} of dimension {ref.dim}")
        key = (f.key(), ref)
        hit = self._apply_cache.get(key)
        if hit is not None:
            return hit
        epi, mono = ez_factor(compose(f, ref.degeneracy))
        base = self._act_injection(ref.generator, mono)
        out = SimplexRef(base.generator, compose(epi, base.degeneracy))
        self._apply_cache[key] = out
        return out

    def _act_injection(self, gen: str, mono: OrdinalMap) -> SimplexRef:
        if mono.is_identity:
            return generator_ref(gen, self.pres.dims[gen])
        key = (gen, mono.key())
        hit = self._inj_cache.get(key)
        if hit is not None:
            return hit
        d = self.pres.dims[gen]
        j = max(set(range(d + 1)) - set(mono.values))
        face = self.pres.faces[gen][j]
        rest = OrdinalMap(
            mono.source_size, d - 1, tuple(v if v < j else v - 1 for v in mono.values)
        )
        out = self.apply(rest, face)
        self._inj_cache[key] = out
        return out

    def generator_refs(self):
        return tuple(generator_ref(g, self.pres.dims[g]) for g in self.pres.gens)

    def is_degenerate(self, n: int, x: SimplexRef) -> bool:
        return not x.is_generator

    def normalize(self, n: int, x: SimplexRef):
        return (
            self.pres.dims[x.generator],
            generator_ref(x.generator, self.pres.dims[x.generator]),
            x.degeneracy,
        )

    def nondegenerate_count(self, n: int) -> int:
        return sum(1 for g in self.pres.gens if self.pres.dims[g] == n)

    def to_underlying(self, n: int, ref: SimplexRef):
        """The simplex of the underlying level-wise space, when linked."""
        if self.underlying is None or self.gen_simplex is None:
            raise ValueError(f"{self!r} has no underlying space")
        return self.underlying.apply(ref.degeneracy, self.gen_simplex[ref.generator])

    def from_underlying(self, n: int, x) -> SimplexRef:
        if self.underlying is None:
            raise ValueError(f"{self!r} has no underlying space")
        n0, x0, s = self.underlying.normalize(n, x)
        gen = self._simplex_gen[(n0, x0)]
        return SimplexRef(gen, s)

    @property
    def _simplex_gen(self) -> dict:
        lut = getattr(self, "_simplex_gen_cache", None)
        if lut is None:
            lut = {
                (self.pres.dims[g], x): g for g, x in (self.gen_simplex or {}).items()
            }
            self._simplex_gen_cache = lut
        return lut

    def simplex_data(self, n: int, x: SimplexRef):
        return [x.generator, list(x.word())]

    def simplex_from_data(self, n: int, data) -> SimplexRef:
        gen, word = data
        if gen not in self.pres.dims:
            raise ValueError(f"unknown generator {gen!r}")
        s = surjection_from_word(n, tuple(word))
        if s.target_size != self.pres.dims[gen]:
            raise ValueError(f"degeneracy word {word} does not fit {gen!r}")
        return SimplexRef(gen, s)


# ---------------------------------------------------------------------------
# standard objects

_construction_cache: dict[tuple, SimplicialSpace] = {}


def cached(recipe: tuple, build):
    space = _construction_cache.get(recipe)
    if space is None:
        space = build()
        _construction_cache[recipe] = space
    return space


def vertex_id(vertices: tuple[int, ...]) -> str:
    return ".".join(str(v) for v in vertices)


def simplex_subsets(n: int):
    for size in range(1, n + 2):
        yield from combinations(range(n + 1), size)


def _delta_presentation(n: int, omit: set[tuple[int, ...]]) -> FinitePresentation:
    dims, faces = {}, {}
    for vs in simplex_subsets(n):
        if vs in omit:
            continue
        dims[vertex_id(vs)] = len(vs) - 1
        if len(vs) > 1:
            faces[vertex_id(vs)] = tuple(
                generator_ref(vertex_id(vs[:i] + vs[i + 1 :]), len(vs) - 2)
                for i in range(len(vs))
            )
    return FinitePresentation(dims, faces)


def delta(n: int) -> FiniteSpace:
    """The standard n-simplex; generators are named by their vertex sets."""
    if n < 0:
        raise ValueError("delta(n) needs n >= 0")
    return cached(("delta", n), lambda: FiniteSpace(_delta_presentation(n, set()), ("delta", n)))


def boundary_space(n: int) -> FiniteSpace:
    """The boundary of the n-simplex (empty for n = 0)."""
    if n < 0:
        raise ValueError("boundary(n) needs n >= 0")
    top = {tuple(range(n + 1))}
    return cached(
        ("boundary", n), lambda: FiniteSpace(_delta_presentation(n, top), ("boundary", n))
    )


def horn_space(n: int, k: int) -> FiniteSpace:
    """The horn: the boundary with the k-th face removed."""
    if n < 1:
        raise ValueError("no horns of the 0-simplex")
    if not 0 <= k <= n:
        raise ValueError(f"horn index {k} outside [0, {n}]")
    omit = {tuple(range(n + 1)), tuple(v for v in range(n + 1) if v != k)}
    return cached(
        ("horn", n, k), lambda: FiniteSpace(_delta_presentation(n, omit), ("horn", n, k))
    )


def sphere(n: int) -> FiniteSpace:
    """The n-sphere: one basepoint plus one n-cell with all faces collapsed.
    By convention sphere(-1) is the empty space and sphere(0) is two points."""
    if n < -1:
        raise ValueError("sphere(n) needs n >= -1")

    def build():
        if n == -1:
            return FiniteSpace(FinitePresentation({}, {}), ("sphere", n))
        dims = {"*": 0, "cell": n}
        faces = {}
        if n >= 1:
            collapse = OrdinalMap(n - 1, 0, tuple(0 for _ in range(n)))
            faces["cell"] = tuple(SimplexRef("*", collapse) for _ in range(n + 1))
        return FiniteSpace(FinitePresentation(dims, faces), ("sphere", n))

    return cached(("sphere", n), build)


def empty_space() -> FiniteSpace:
    return cached(("empty",), lambda: FiniteSpace(FinitePresentation({}, {}), ("empty",)))


def discrete(names: tuple[str, ...]) -> FiniteSpace:
    """The discrete simplicial set on the given vertex names."""
    names = tuple(sorted(names))
    return cached(
        ("discrete", names),
        lambda: FiniteSpace(
            FinitePresentation({v: 0 for v in names}, {}), ("discrete", names)
        ),
    )


def point() -> FiniteSpace:
    return delta(0)


def subspace(ambient: FiniteSpace, gen_ids, recipe: tuple) -> FiniteSpace:
    """The subcomplex of a finite space spanned by the given generators.
    The generator set must be closed under faces."""
    keep = set(gen_ids)
    for g in keep:
        if g not in ambient.pres.dims:
            raise ValueError(f"unknown generator {g!r}")
    for g in keep:
        for ref in ambient.pres.faces.get(g, ()):
            if ref.generator not in keep:
                raise ValueError(
                    f"generator set is not closed under faces: {g!r} -> {ref.generator!r}"
                )
    dims = {g: ambient.pres.dims[g] for g in keep}
    faces = {g: ambient.pres.faces[g] for g in keep if ambient.pres.dims[g] > 0}
    return FiniteSpace(FinitePresentation(dims, faces), recipe)


# ---------------------------------------------------------------------------
# isomorphism search

def isomorphic(a: FiniteSpace, b: FiniteSpace) -> dict[str, str] | None:
    """An exhaustive search for a generator bijection commuting with faces.

    Generators are matched dimension by dimension, vertices first, with
    face-compatibility pruning; the first isomorphism in canonical order is
    returned, or None."""
    pa, pb = a.presentation, b.presentation
    by_dim_a: dict[int, list[str]] = {}
    by_dim_b: dict[int, list[str]] = {}
    for g in pa.gens:
        by_dim_a.setdefault(pa.dims[g], []).append(g)
    for g in pb.gens:
        by_dim_b.setdefault(pb.dims[g], []).append(g)
    if {d: len(v) for d, v in by_dim_a.items()} != {d: len(v) for d, v in by_dim_b.items()}:
        return None

    order = [g for d in sorted(by_dim_a) for g in by_dim_a[d]]
    phi: dict[str, str] = {}
    used: set[str] = set()

    def compatible(g: str, h: str) -> bool:
        d = pa.dims[g]
        if d == 0:
            return True
        for fa, fb in zip(pa.faces[g], pb.faces[h]):
            if SimplexRef(phi[fa.generator], fa.degeneracy) != fb:
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        g = order[i]
        for h in by_dim_b[pa.dims[g]]:
            if h in used or not compatible(g, h):
                continue
            phi[g] = h
            used.add(h)
            if backtrack(i + 1):
                return True
            del phi[g]
            used.remove(h)
        return False

    return dict(phi) if backtrack(0) else None


# ---------------------------------------------------------------------------
# extraction of finite presentations from level-wise spaces

def extract_finite(
    space: SimplicialSpace, dim_bound: int, recipe: tuple
) -> FiniteSpace:
    """Compute a finite presentation of a level-wise space, given a bound
    above which every simplex is degenerate.

    Generators are the non-degenerate simplices through the bound, named
    "<dim>.<index>" in canonical level order; faces are computed by operator
    action plus normal-form stripping in the underlying space."""
    gen_simplex: dict[str, object] = {}
    names: dict[tuple[int, object], str] = {}
    dims: dict[str, int] = {}
    for n in range(dim_bound + 1):
        idx = 0
        for x in space.level(n):
            if n > 0 and space.is_degenerate(n, x):
                continue
            name = f"{n}.{idx}"
            idx += 1
            gen_simplex[name] = x
            names[(n, x)] = name
            dims[name] = n
    faces: dict[str, tuple[SimplexRef, ...]] = {}
    for name, x in gen_simplex.items():
        n = dims[name]
        if n == 0:
            continue
        refs = []
        for i in range(n + 1):
            n0, x0, s = space.normalize(n - 1, space.face(i, n, x))
            refs.append(SimplexRef(names[(n0, x0)], s))
        faces[name] = tuple(refs)
    return FiniteSpace(
        FinitePresentation(dims, faces), recipe, underlying=space, gen_simplex=gen_simplex
    )
