"""Object-level constructions: limits, colimits, cones, cylinders, the
relative-homotopy object RH(L, K), barycentric subdivision, the extension
functor Ex, coskeleta, nerves of groupoids, mapping spaces, and assembly of
maps on simplex boundaries.

Finite inputs produce finite presentations (extracted from a level-wise
description); a construction involving a lazy space stays lazy.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as iproduct

from .ordinals import OrdinalMap, all_monotone, compose, identity
from .maps import (
    MapError,
    SimplicialMap,
    compose_maps,
    constant_map,
    delta_simplex,
    enumerate_maps,
    identity_map,
    ordinal_map_as_delta_map,
)
from .spaces import (
    FinitePresentation,
    FiniteSpace,
    SimplexRef,
    SimplicialSpace,
    cached,
    canon_key,
    delta,
    extract_finite,
    generator_ref,
    point,
    vertex_id,
)

_result_cache: dict[tuple, object] = {}


def _cached_result(recipe, build):
    out = _result_cache.get(recipe)
    if out is None:
        out = build()
        _result_cache[recipe] = out
    return out


# ---------------------------------------------------------------------------
# products and pullbacks


class PairSpace(SimplicialSpace):
    """Level-wise binary product; simplices are component pairs."""

    def __init__(self, a: SimplicialSpace, b: SimplicialSpace):
        super().__init__()
        self.a, self.b = a, b
        self.recipe = ("pair", a.recipe, b.recipe)

    def _level(self, n):
        return [(x, y) for x in self.a.level(n) for y in self.b.level(n)]

    def apply(self, f, xy):
        return (self.a.apply(f, xy[0]), self.b.apply(f, xy[1]))

    def simplex_data(self, n, xy):
        return [self.a.simplex_data(n, xy[0]), self.b.simplex_data(n, xy[1])]

    def simplex_from_data(self, n, data):
        return (self.a.simplex_from_data(n, data[0]), self.b.simplex_from_data(n, data[1]))


class AgreeingPairSpace(PairSpace):
    """Pairs whose two legs agree in a common target (the fibre product)."""

    def __init__(self, f: SimplicialMap, g: SimplicialMap):
        super().__init__(f.domain, g.domain)
        self.f, self.g = f, g
        self.recipe = ("pullback-pair", f.domain.recipe, g.domain.recipe, canon_key_of_map(f), canon_key_of_map(g))

    def _level(self, n):
        gs = {}
        for y in self.b.level(n):
            gs.setdefault(canon_key(self.g(n, y)), []).append(y)
        out = []
        for x in self.a.level(n):
            for y in gs.get(canon_key(self.f(n, x)), ()):
                out.append((x, y))
        return out


def canon_key_of_map(m: SimplicialMap):
    if m.assignment is not None:
        return ("asgn", m.domain.recipe, m.codomain.recipe, m.key())
    return ("lazy", m.name, m.domain.recipe, m.codomain.recipe)


@dataclass
class ProductResult:
    space: SimplicialSpace
    pr1: SimplicialMap
    pr2: SimplicialMap

    def pair(self, h1: SimplicialMap, h2: SimplicialMap) -> SimplicialMap:
        """The induced map into the product."""
        if h1.domain.recipe != h2.domain.recipe:
            raise MapError("pairing needs a common domain")
        if isinstance(self.space, FiniteSpace):
            src = h1.domain
            if isinstance(src, FiniteSpace):
                assignment = {
                    g: self.space.from_underlying(
                        src.pres.dims[g],
                        (
                            h1(src.pres.dims[g], generator_ref(g, src.pres.dims[g])),
                            h2(src.pres.dims[g], generator_ref(g, src.pres.dims[g])),
                        ),
                    )
                    for g in src.pres.gens
                }
                return SimplicialMap(src, self.space, assignment)
            return SimplicialMap(
                src,
                self.space,
                level_fn=lambda n, x: self.space.from_underlying(n, (h1(n, x), h2(n, x))),
            )
        return SimplicialMap(
            h1.domain, self.space, level_fn=lambda n, x: (h1(n, x), h2(n, x))
        )


def _dim_bound(a: SimplicialSpace, b: SimplicialSpace) -> int:
    da = a.dim if isinstance(a, FiniteSpace) else None
    db = b.dim if isinstance(b, FiniteSpace) else None
    if da is None or db is None:
        raise ValueError("dimension bound needs finite factors")
    if da < 0 or db < 0:
        return 0
    return da + db


def product(a: SimplicialSpace, b: SimplicialSpace) -> ProductResult:
    recipe = ("product", a.recipe, b.recipe)

    def build():
        pairs = PairSpace(a, b)
        if isinstance(a, FiniteSpace) and isinstance(b, FiniteSpace):
            fin = extract_finite(pairs, _dim_bound(a, b), recipe)
            pr1 = SimplicialMap(
                fin, a, {g: fin.gen_simplex[g][0] for g in fin.pres.gens}, name="pr1"
            )
            pr2 = SimplicialMap(
                fin, b, {g: fin.gen_simplex[g][1] for g in fin.pres.gens}, name="pr2"
            )
            return ProductResult(fin, pr1, pr2)
        pr1 = SimplicialMap(pairs, a, level_fn=lambda n, xy: xy[0], name="pr1")
        pr2 = SimplicialMap(pairs, b, level_fn=lambda n, xy: xy[1], name="pr2")
        return ProductResult(pairs, pr1, pr2)

    return _cached_result(recipe, build)


def pullback(f: SimplicialMap, g: SimplicialMap) -> ProductResult:
    """The fibre product of f: A -> C and g: B -> C, with its projections."""
    if f.codomain.recipe != g.codomain.recipe:
        raise MapError("pullback needs a common codomain")
    pairs = AgreeingPairSpace(f, g)
    recipe = ("pullback",) + pairs.recipe[1:]

    def build():
        if isinstance(f.domain, FiniteSpace) and isinstance(g.domain, FiniteSpace):
            fin = extract_finite(pairs, _dim_bound(f.domain, g.domain), recipe)
            pr1 = SimplicialMap(
                fin, f.domain, {h: fin.gen_simplex[h][0] for h in fin.pres.gens}, name="pr1"
            )
            pr2 = SimplicialMap(
                fin, g.domain, {h: fin.gen_simplex[h][1] for h in fin.pres.gens}, name="pr2"
            )
            return ProductResult(fin, pr1, pr2)
        pairs.recipe = recipe
        pr1 = SimplicialMap(pairs, f.domain, level_fn=lambda n, xy: xy[0], name="pr1")
        pr2 = SimplicialMap(pairs, g.domain, level_fn=lambda n, xy: xy[1], name="pr2")
        return ProductResult(pairs, pr1, pr2)

    return _cached_result(recipe, build)


def product_map(
    u: SimplicialMap, v: SimplicialMap, src: ProductResult, dst: ProductResult
) -> SimplicialMap:
    """The product of two maps, between already-built product results."""
    return dst.pair(compose_maps(src.pr1, u), compose_maps(src.pr2, v))


# ---------------------------------------------------------------------------
# pushouts, quotients, coproducts


class IdentificationSpace(SimplicialSpace):
    """The level-wise quotient of B ⊔ C by relations i(a) ~ f(a).

    Simplices are canonical representatives: the least tagged member of each
    class.  Built only over finite inputs."""

    def __init__(self, i: SimplicialMap, f: SimplicialMap, recipe):
        super().__init__()
        self.i, self.f = i, f
        self.b_space, self.c_space = i.codomain, f.codomain
        self.a_space = i.domain
        self.recipe = recipe
        self._reps: dict[int, dict] = {}

    def _members(self, n):
        return [("L", x) for x in self.b_space.level(n)] + [
            ("R", y) for y in self.c_space.level(n)
        ]

    def _rep_table(self, n):
        table = self._reps.get(n)
        if table is not None:
            return table
        parent: dict = {}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        members = self._members(n)
        for m in members:
            parent[m] = m
        for a in self.a_space.level(n):
            u, v = find(("L", self.i(n, a))), find(("R", self.f(n, a)))
            if u != v:
                parent[u] = v
        classes: dict = {}
        for m in members:
            classes.setdefault(find(m), []).append(m)
        table = {}
        for cls in classes.values():
            rep = min(cls, key=canon_key)
            for m in cls:
                table[m] = rep
        self._reps[n] = table
        return table

    def _level(self, n):
        return list(set(self._rep_table(n).values()))

    def classify(self, n, tagged):
        return self._rep_table(n)[tagged]

    def apply(self, f: OrdinalMap, rep):
        side, x = rep
        space = self.b_space if side == "L" else self.c_space
        return self.classify(f.source_size, (side, space.apply(f, x)))

    def simplex_data(self, n, rep):
        side, x = rep
        space = self.b_space if side == "L" else self.c_space
        return [side, space.simplex_data(n, x)]

    def simplex_from_data(self, n, data):
        side, payload = data
        space = self.b_space if side == "L" else self.c_space
        return self.classify(n, (side, space.simplex_from_data(n, payload)))


@dataclass
class PushoutResult:
    space: FiniteSpace
    in_b: SimplicialMap
    in_c: SimplicialMap
    i: SimplicialMap
    f: SimplicialMap

    def induced(self, h_b: SimplicialMap, h_c: SimplicialMap) -> SimplicialMap:
        """The map out of the pushout determined by compatible legs."""
        if compose_maps(self.i, h_b) != compose_maps(self.f, h_c):
            raise MapError("legs do not agree on the glued subspace")
        assignment = {}
        for g in self.space.pres.gens:
            side, x = self.space.gen_simplex[g]
            d = self.space.pres.dims[g]
            assignment[g] = h_b(d, x) if side == "L" else h_c(d, x)
        return SimplicialMap(self.space, h_b.codomain, assignment)


def pushout(i: SimplicialMap, f: SimplicialMap, tag: str = "pushout") -> PushoutResult:
    """The pushout of B <-i- A -f-> C for finite A, B, C."""
    for leg in (i, f):
        if not isinstance(leg.codomain, FiniteSpace) or not isinstance(
            leg.domain, FiniteSpace
        ):
            raise ValueError("pushouts are only formed over finite spaces")
    if i.domain.recipe != f.domain.recipe:
        raise MapError("pushout legs need a common domain")
    recipe = (tag, canon_key_of_map(i), canon_key_of_map(f))

    def build():
        ident = IdentificationSpace(i, f, ("ident",) + recipe[1:])
        bound = max(i.codomain.dim, f.codomain.dim, 0)
        fin = extract_finite(ident, bound, recipe)
        in_b = SimplicialMap(
            i.codomain,
            fin,
            {
                g: fin.from_underlying(
                    i.codomain.pres.dims[g],
                    ident.classify(i.codomain.pres.dims[g], ("L", generator_ref(g, i.codomain.pres.dims[g]))),
                )
                for g in i.codomain.pres.gens
            },
            name="in-b",
        )
        in_c = SimplicialMap(
            f.codomain,
            fin,
            {
                g: fin.from_underlying(
                    f.codomain.pres.dims[g],
                    ident.classify(f.codomain.pres.dims[g], ("R", generator_ref(g, f.codomain.pres.dims[g]))),
                )
                for g in f.codomain.pres.gens
            },
            name="in-c",
        )
        return PushoutResult(fin, in_b, in_c, i, f)

    return _cached_result(recipe, build)


@dataclass
class QuotientResult:
    space: FiniteSpace
    proj: SimplicialMap
    basepoint: SimplexRef


def quotient(a: FiniteSpace, sub_gens, tag=None) -> QuotientResult:
    """Collapse a subcomplex (given by generator ids, closed under faces) to a
    point.  An empty subcomplex yields the disjoint basepoint convention."""
    sub = frozenset(sub_gens)
    recipe = ("quotient", a.recipe, tuple(sorted(sub)) if tag is None else tag)

    def build():
        for g in sub:
            if g not in a.pres.dims:
                raise ValueError(f"unknown generator {g!r}")
            for ref in a.pres.faces.get(g, ()):
                if ref.generator not in sub:
                    raise ValueError("quotient needs a subcomplex closed under faces")
        base = "*"
        while base in a.pres.dims:
            base += "*"

        def send(ref: SimplexRef) -> SimplexRef:
            if ref.generator in sub:
                return SimplexRef(base, OrdinalMap(ref.dim, 0, tuple(0 for _ in range(ref.dim + 1))))
            return ref

        dims = {base: 0}
        faces = {}
        for g in a.pres.gens:
            if g in sub:
                continue
            dims[g] = a.pres.dims[g]
            if a.pres.dims[g] > 0:
                faces[g] = tuple(send(r) for r in a.pres.faces[g])
        q = FiniteSpace(FinitePresentation(dims, faces), recipe)
        proj = SimplicialMap(
            a,
            q,
            {
                g: send(generator_ref(g, a.pres.dims[g]))
                for g in a.pres.gens
            },
            name="collapse",
        )
        return QuotientResult(q, proj, generator_ref(base, 0))

    return _cached_result(recipe, build)


@dataclass
class CoproductResult:
    space: FiniteSpace
    in1: SimplicialMap
    in2: SimplicialMap


def coproduct(a: FiniteSpace, b: FiniteSpace) -> CoproductResult:
    recipe = ("coproduct", a.recipe, b.recipe)

    def build():
        dims, faces = {}, {}
        for prefix, s in (("L:", a), ("R:", b)):
            for g in s.pres.gens:
                dims[prefix + g] = s.pres.dims[g]
                if s.pres.dims[g] > 0:
                    faces[prefix + g] = tuple(
                        SimplexRef(prefix + r.generator, r.degeneracy)
                        for r in s.pres.faces[g]
                    )
        space = FiniteSpace(FinitePresentation(dims, faces), recipe)
        in1 = SimplicialMap(
            a, space, {g: generator_ref("L:" + g, a.pres.dims[g]) for g in a.pres.gens}
        )
        in2 = SimplicialMap(
            b, space, {g: generator_ref("R:" + g, b.pres.dims[g]) for g in b.pres.gens}
        )
        return CoproductResult(space, in1, in2)

    return _cached_result(recipe, build)


# ---------------------------------------------------------------------------
# cylinders, cones, mapping cylinders, RH objects


@dataclass
class CylinderResult:
    prod: ProductResult
    end0: SimplicialMap
    end1: SimplicialMap
    proj: SimplicialMap

    @property
    def space(self):
        return self.prod.space


def cylinder(a: SimplicialSpace) -> CylinderResult:
    recipe = ("cylinder", a.recipe)

    def build():
        prod = product(a, delta(1))
        ends = []
        for e in (0, 1):
            const = constant_map(a, delta(1), generator_ref(str(e), 0))
            ends.append(prod.pair(identity_map(a), const))
        return CylinderResult(prod, ends[0], ends[1], prod.pr1)

    return _cached_result(recipe, build)


def cylinder_end_gens(a: FiniteSpace, e: int) -> set[str]:
    """Generators of a x delta(1) lying in the end a x {e}."""
    cyl = cylinder(a)
    return {
        g
        for g in cyl.space.pres.gens
        if cyl.space.gen_simplex[g][1].generator == str(e)
    }


@dataclass
class ConeResult:
    space: FiniteSpace
    incl: SimplicialMap
    apex: SimplexRef
    cyl: CylinderResult
    collapse: SimplicialMap  # cylinder -> cone


def cone(y: FiniteSpace) -> ConeResult:
    """(Y x delta(1)) / (Y x {1}), with Y included at time 0."""
    recipe = ("cone", y.recipe)

    def build():
        cyl = cylinder(y)
        q = quotient(cyl.space, cylinder_end_gens(y, 1), tag="end1")
        incl = compose_maps(cyl.end0, q.proj)
        return ConeResult(q.space, incl, q.basepoint, cyl, q.proj)

    return _cached_result(recipe, build)


def cone_map(u: SimplicialMap) -> SimplicialMap:
    """Cone functoriality for a map of finite spaces."""
    src, dst = cone(u.domain), cone(u.codomain)
    cyl_map = product_map(u, identity_map(delta(1)), src.cyl.prod, dst.cyl.prod)
    assignment = {}
    for g in src.space.pres.gens:
        d = src.space.pres.dims[g]
        if g == src.apex.generator:
            assignment[g] = dst.apex
        else:
            assignment[g] = dst.collapse(d, cyl_map(d, generator_ref(g, d)))
    return SimplicialMap(src.space, dst.space, assignment)


@dataclass
class MappingCylinderResult:
    space: FiniteSpace
    from_domain: SimplicialMap  # A -> Cyl(f) at time 0
    from_codomain: SimplicialMap  # B -> Cyl(f)
    retraction: SimplicialMap  # Cyl(f) -> B


def mapping_cylinder(f: SimplicialMap) -> MappingCylinderResult:
    """The pushout of A x delta(1) <- A x {1} -> B along f."""
    cyl = cylinder(f.domain)
    po = pushout(cyl.end1, f, tag=("mapping-cylinder", canon_key_of_map(f)))
    retraction = po.induced(compose_maps(cyl.proj, f), identity_map(f.codomain))
    return MappingCylinderResult(
        po.space,
        compose_maps(cyl.end0, po.in_b),
        po.in_c,
        retraction,
    )


@dataclass
class RhObject:
    """The pushout of K <- K x delta(1) -> L x delta(1): the object whose maps
    into Y are pairs of maps L -> Y agreeing on K plus a homotopy rel K."""

    space: FiniteSpace
    i0: SimplicialMap  # L -> RH at time 0
    i1: SimplicialMap  # L -> RH at time 1
    k_incl: SimplicialMap  # K -> RH (the collapsed cylinder)
    cyl: CylinderResult  # L x delta(1)
    quotient_map: SimplicialMap  # L x delta(1) -> RH
    i: SimplicialMap  # the original K -> L
    i_cyl: SimplicialMap  # K x delta(1) -> L x delta(1)
    k_cyl: CylinderResult  # K x delta(1)
    po: PushoutResult

    def from_cylinder_homotopy(self, h: SimplicialMap) -> SimplicialMap:
        """Turn a homotopy L x delta(1) -> Y that is constant along K into the
        induced map RH(L, K) -> Y."""
        k_leg = compose_maps(self.k_cyl.end0, compose_maps(self.i_cyl, h))
        return self.po.induced(h, k_leg)

    def to_cylinder_homotopy(self, h_rh: SimplicialMap) -> SimplicialMap:
        return compose_maps(self.quotient_map, h_rh)


def rh(i: SimplicialMap) -> RhObject:
    """Build RH(L, K) for i: K -> L between finite spaces."""
    k, l = i.domain, i.codomain
    k_cyl, l_cyl = cylinder(k), cylinder(l)
    i_cyl = product_map(i, identity_map(delta(1)), k_cyl.prod, l_cyl.prod)
    po = pushout(i_cyl, k_cyl.proj, tag=("rh", canon_key_of_map(i)))
    return RhObject(
        space=po.space,
        i0=compose_maps(l_cyl.end0, po.in_b),
        i1=compose_maps(l_cyl.end1, po.in_b),
        k_incl=po.in_c,
        cyl=l_cyl,
        quotient_map=po.in_b,
        i=i,
        i_cyl=i_cyl,
        k_cyl=k_cyl,
        po=po,
    )


# ---------------------------------------------------------------------------
# barycentric subdivision and the last-vertex map


class ChainSpace(SimplicialSpace):
    """The nerve of the poset of nonempty subsets of [n]; simplices at level k
    are weakly increasing subset chains."""

    def __init__(self, n: int):
        super().__init__()
        self.n = n
        self.recipe = ("chains", n)
        self._subsets = [
            frozenset(c)
            for size in range(1, n + 2)
            for c in combinations(range(n + 1), size)
        ]

    def _level(self, k):
        chains = []

        def grow(chain):
            if len(chain) == k + 1:
                chains.append(tuple(chain))
                return
            for s in self._subsets:
                if chain[-1] <= s:
                    grow(chain + [s])

        for s in self._subsets:
            grow([s])
        return chains

    def apply(self, f, chain):
        return tuple(chain[f(i)] for i in range(f.source_size + 1))

    def simplex_data(self, k, chain):
        return [sorted(s) for s in chain]

    def simplex_from_data(self, k, data):
        return tuple(frozenset(s) for s in data)


def sd_delta(n: int) -> FiniteSpace:
    """The barycentric subdivision of the standard n-simplex."""
    return cached(("sd-delta", n), lambda: extract_finite(ChainSpace(n), n, ("sd-delta", n)))


def sd_ordinal(f: OrdinalMap) -> SimplicialMap:
    """sd applied to the map of standard simplices induced by f."""
    src, dst = sd_delta(f.source_size), sd_delta(f.target_size)
    target_chains = ChainSpace(f.target_size)
    assignment = {}
    for g in src.pres.gens:
        chain = src.gen_simplex[g]
        image = tuple(frozenset(f(v) for v in s) for s in chain)
        d = src.pres.dims[g]
        assignment[g] = dst.from_underlying(d, image)
    return SimplicialMap(src, dst, assignment)


class SdSpace(SimplicialSpace):
    """Subdivision of a finite space: the quotient of the subdivided simplices
    of its generators along face identifications (computed level-wise)."""

    def __init__(self, a: FiniteSpace):
        super().__init__()
        self.a = a
        self.recipe = ("sd-raw", a.recipe)
        self._reps: dict[int, dict] = {}
        self._chains: dict[int, ChainSpace] = {}

    def chains(self, d: int) -> ChainSpace:
        if d not in self._chains:
            self._chains[d] = ChainSpace(d)
        return self._chains[d]

    def _members(self, k):
        out = []
        for g in self.a.pres.gens:
            d = self.a.pres.dims[g]
            out.extend((g, ch) for ch in self.chains(d).level(k))
        return out

    def _rep_table(self, k):
        table = self._reps.get(k)
        if table is not None:
            return table
        parent = {}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        members = self._members(k)
        for m in members:
            parent[m] = m
        for g in self.a.pres.gens:
            d = self.a.pres.dims[g]
            if d == 0:
                continue
            for i, ref in enumerate(self.a.pres.faces[g]):
                for y in self.chains(d - 1).level(k):
                    # (g, sd(coface_i)(y)) ~ (face generator, sd(word)(y))
                    up = tuple(frozenset(v if v < i else v + 1 for v in s) for s in y)
                    down = tuple(
                        frozenset(ref.degeneracy(v) for v in s) for s in y
                    )
                    u, v = find((g, up)), find((ref.generator, down))
                    if u != v:
                        parent[u] = v
        classes: dict = {}
        for m in members:
            classes.setdefault(find(m), []).append(m)
        table = {}
        for cls in classes.values():
            rep = min(cls, key=canon_key)
            for m in cls:
                table[m] = rep
        self._reps[k] = table
        return table

    def classify(self, k, member):
        return self._rep_table(k)[member]

    def _level(self, k):
        return list(set(self._rep_table(k).values()))

    def apply(self, f, rep):
        g, chain = rep
        return self.classify(
            f.source_size, (g, tuple(chain[f(i)] for i in range(f.source_size + 1)))
        )

    def simplex_data(self, k, rep):
        g, chain = rep
        return [g, [sorted(s) for s in chain]]

    def simplex_from_data(self, k, data):
        g, chain = data
        return self.classify(k, (g, tuple(frozenset(s) for s in chain)))


@dataclass
class SdResult:
    space: FiniteSpace
    last_vertex: SimplicialMap  # sd A -> A


def subdivide(a: FiniteSpace) -> SdResult:
    recipe = ("sd", a.recipe)

    def build():
        if a.recipe == ("delta", a.dim):
            # share the subdivided standard simplices with sd_ordinal and Ex
            fin = sd_delta(a.dim)
            assignment = {}
            for g in fin.pres.gens:
                chain = fin.gen_simplex[g]
                k = fin.pres.dims[g]
                lv = OrdinalMap(k, a.dim, tuple(max(s) for s in chain))
                assignment[g] = a.apply(lv, generator_ref(vertex_id(tuple(range(a.dim + 1))), a.dim))
            return SdResult(fin, SimplicialMap(fin, a, assignment, name="last-vertex"))
        raw = SdSpace(a)
        bound = max(a.dim, 0)
        fin = extract_finite(raw, bound, recipe)
        assignment = {}
        for g in fin.pres.gens:
            gen, chain = fin.gen_simplex[g]
            k = fin.pres.dims[g]
            lv = OrdinalMap(k, a.pres.dims[gen], tuple(max(s) for s in chain))
            assignment[g] = a.apply(lv, generator_ref(gen, a.pres.dims[gen]))
        return SdResult(fin, SimplicialMap(fin, a, assignment, name="last-vertex"))

    return _cached_result(recipe, build)


def subdivide_k(a: FiniteSpace, k: int) -> SdResult:
    """k-fold subdivision with the composite last-vertex map."""
    if k < 0:
        raise ValueError("subdivision stage must be >= 0")
    space, lv = a, identity_map(a)
    for _ in range(k):
        step = subdivide(space)
        space, lv = step.space, compose_maps(step.last_vertex, lv)
    return SdResult(space, lv)


def _sd_member(space: FiniteSpace, dim: int, gen_id: str):
    """Normalize a subdivision generator to a (domain generator, chain) pair.
    For subdivided standard simplices the chain hangs off the top cell."""
    member = space.gen_simplex[gen_id]
    if isinstance(space.underlying, ChainSpace):
        top = vertex_id(tuple(range(space.underlying.n + 1)))
        return top, member
    return member


def sd_map(u: SimplicialMap) -> SimplicialMap:
    """Subdivision functoriality for a map of finite spaces."""
    src, dst = subdivide(u.domain), subdivide(u.codomain)
    raw_dst = dst.space.underlying
    assignment = {}
    for g in src.space.pres.gens:
        k = src.space.pres.dims[g]
        gen, chain = _sd_member(src.space, k, g)
        img = u.assignment[gen]
        moved = tuple(frozenset(img.degeneracy(v) for v in s) for s in chain)
        if isinstance(raw_dst, SdSpace):
            target = raw_dst.classify(k, (img.generator, moved))
        else:
            # codomain subdivision is over a standard simplex: transport the
            # position subsets through the generator's vertex embedding
            verts = tuple(int(v) for v in img.generator.split("."))
            target = tuple(frozenset(verts[p] for p in s) for s in moved)
        assignment[g] = dst.space.from_underlying(k, target)
    return SimplicialMap(src.space, dst.space, assignment)


# ---------------------------------------------------------------------------
# the extension functor Ex


class ExSpace(SimplicialSpace):
    """Level n is the set of maps sd(delta(n)) -> X, encoded as image tuples
    over the generators of sd(delta(n)); operators act by precomposition with
    subdivided ordinal maps."""

    def __init__(self, x: SimplicialSpace):
        super().__init__()
        self.x = x
        self.recipe = ("ex", x.recipe)

    def as_map(self, n: int, values: tuple) -> SimplicialMap:
        src = sd_delta(n)
        return SimplicialMap(src, self.x, dict(zip(src.pres.gens, values)))

    def _level(self, n):
        src = sd_delta(n)
        return [
            tuple(m.assignment[g] for g in src.pres.gens)
            for m in enumerate_maps(src, self.x)
        ]

    def apply(self, f, values):
        phi = self.as_map(f.target_size, values)
        sdf = sd_ordinal(f)
        src = sd_delta(f.source_size)
        return tuple(
            phi(src.pres.dims[g], sdf.assignment[g]) for g in src.pres.gens
        )

    def simplex_data(self, n, values):
        src = sd_delta(n)
        return [
            self.x.simplex_data(src.pres.dims[g], v)
            for g, v in zip(src.pres.gens, values)
        ]

    def simplex_from_data(self, n, data):
        src = sd_delta(n)
        return tuple(
            self.x.simplex_from_data(src.pres.dims[g], payload)
            for g, payload in zip(src.pres.gens, data)
        )


def ex(x: SimplicialSpace) -> ExSpace:
    return cached(("ex", x.recipe), lambda: ExSpace(x))


def ex_k(x: SimplicialSpace, k: int) -> SimplicialSpace:
    for _ in range(k):
        x = ex(x)
    return x


def ex_map(u: SimplicialMap) -> SimplicialMap:
    """Ex applied to a map (lazy: post-composition of the image tuples)."""
    src, dst = ex(u.domain), ex(u.codomain)

    def fn(n, values):
        gens = sd_delta(n)
        return tuple(
            u(gens.pres.dims[g], v) for g, v in zip(gens.pres.gens, values)
        )

    return SimplicialMap(src, dst, level_fn=fn, name="ex-map")


def ex_level0_bijection(x: SimplicialSpace) -> dict:
    """The canonical bijection (Ex X)_0 <-> X_0."""
    exx = ex(x)
    src = sd_delta(0)
    assert len(src.pres.gens) == 1
    return {values: values[0] for values in exx.level(0)}


# ---------------------------------------------------------------------------
# coskeleta and nerves


class CoskeletonSpace(SimplicialSpace):
    """The 0-coskeleton of a finite vertex set: level n is all (n+1)-tuples."""

    def __init__(self, names: tuple[str, ...]):
        super().__init__()
        self.names = tuple(sorted(names))
        self.recipe = ("cosk0", self.names)

    def _level(self, n):
        return [t for t in iproduct(self.names, repeat=n + 1)]

    def apply(self, f, t):
        return tuple(t[f(i)] for i in range(f.source_size + 1))

    def simplex_data(self, n, t):
        return list(t)

    def simplex_from_data(self, n, data):
        return tuple(data)


def coskeleton0(names) -> CoskeletonSpace:
    names = tuple(sorted(names))
    if not names:
        raise ValueError("coskeleton0 needs a nonempty vertex set")
    return cached(("cosk0", names), lambda: CoskeletonSpace(names))


class Groupoid:
    """A finite groupoid: objects, morphisms with sources/targets, a full
    composition table, identities, and inverses (checked)."""

    def __init__(self, objects, morphisms, comp, identities):
        self.objects = tuple(sorted(objects))
        self.morphisms = dict(morphisms)  # id -> (src, tgt)
        self.comp = dict(comp)  # (f, g) -> "f then g"
        self.identities = dict(identities)  # object -> morphism id
        self._validate()

    def then(self, f, g):
        return self.comp[(f, g)]

    def _validate(self):
        for o in self.objects:
            i = self.identities[o]
            if self.morphisms[i] != (o, o):
                raise ValueError(f"identity of {o!r} has wrong endpoints")
        for f, (src_f, tgt_f) in self.morphisms.items():
            if self.then(self.identities[src_f], f) != f:
                raise ValueError("left identity law fails")
            if self.then(f, self.identities[tgt_f]) != f:
                raise ValueError("right identity law fails")
        for f, (src_f, tgt_f) in self.morphisms.items():
            for g, (src_g, tgt_g) in self.morphisms.items():
                if tgt_f == src_g:
                    h = self.then(f, g)
                    if self.morphisms[h] != (src_f, tgt_g):
                        raise ValueError("composition table has wrong endpoints")
                    for k, (src_k, tgt_k) in self.morphisms.items():
                        if tgt_g == src_k:
                            if self.then(self.then(f, g), k) != self.then(f, self.then(g, k)):
                                raise ValueError("associativity fails")
        for f, (src_f, tgt_f) in self.morphisms.items():
            if not any(
                self.morphisms[g] == (tgt_f, src_f)
                and self.then(f, g) == self.identities[src_f]
                and self.then(g, f) == self.identities[tgt_f]
                for g in self.morphisms
            ):
                raise ValueError(f"morphism {f!r} is not invertible")

    def key(self):
        return (
            self.objects,
            tuple(sorted(self.morphisms.items())),
            tuple(sorted(self.comp.items())),
        )


def cyclic_group(q: int) -> Groupoid:
    """The cyclic group of order q as a one-object groupoid."""
    mors = {f"g{i}": ("o", "o") for i in range(q)}
    comp = {(f"g{i}", f"g{j}"): f"g{(i + j) % q}" for i in range(q) for j in range(q)}
    return Groupoid(("o",), mors, comp, {"o": "g0"})


def trivial_group() -> Groupoid:
    return cyclic_group(1)


class NerveSpace(SimplicialSpace):
    """The nerve of a finite groupoid: level n is the composable n-chains,
    stored as (start object, morphism tuple)."""

    def __init__(self, g: Groupoid, name: str):
        super().__init__()
        self.g = g
        self.recipe = ("nerve", name)

    def _level(self, n):
        out = []

        def grow(start, chain, at):
            if len(chain) == n:
                out.append((start, tuple(chain)))
                return
            for m, (src, tgt) in self.g.morphisms.items():
                if src == at:
                    grow(start, chain + [m], tgt)

        for o in self.g.objects:
            grow(o, [], o)
        return out

    def apply(self, f, simplex):
        start, chain = simplex
        objects = [start]
        for m in chain:
            objects.append(self.g.morphisms[m][1])
        new_start = objects[f(0)]
        new_chain = []
        for j in range(1, f.source_size + 1):
            lo, hi = f(j - 1), f(j)
            if lo == hi:
                new_chain.append(self.g.identities[objects[lo]])
            else:
                m = chain[lo]
                for t in range(lo + 1, hi):
                    m = self.g.then(m, chain[t])
                new_chain.append(m)
        return (new_start, tuple(new_chain))

    def simplex_data(self, n, simplex):
        return [simplex[0], list(simplex[1])]

    def simplex_from_data(self, n, data):
        return (data[0], tuple(data[1]))


def nerve(g: Groupoid, name: str) -> NerveSpace:
    return cached(("nerve", name), lambda: NerveSpace(g, name))


# ---------------------------------------------------------------------------
# mapping spaces


class MappingSpace(SimplicialSpace):
    """Level n is the set of maps K x delta(n) -> X, encoded as image tuples
    over the generators of the finite product."""

    def __init__(self, k: FiniteSpace, x: SimplicialSpace):
        super().__init__()
        self.k, self.x = k, x
        self.recipe = ("mapping-space", k.recipe, x.recipe)

    def source(self, n: int) -> FiniteSpace:
        return product(self.k, delta(n)).space

    def as_map(self, n: int, values) -> SimplicialMap:
        src = self.source(n)
        return SimplicialMap(src, self.x, dict(zip(src.pres.gens, values)))

    def _level(self, n):
        src = self.source(n)
        return [
            tuple(m.assignment[g] for g in src.pres.gens)
            for m in enumerate_maps(src, self.x)
        ]

    def apply(self, f, values):
        phi = self.as_map(f.target_size, values)
        src = self.source(f.source_size)
        dst = self.source(f.target_size)
        df = ordinal_map_as_delta_map(f)
        out = []
        for g in src.pres.gens:
            a, y = src.gen_simplex[g]
            d = src.pres.dims[g]
            moved = dst.from_underlying(d, (a, df(d, y)))
            out.append(phi(d, moved))
        return tuple(out)

    def simplex_data(self, n, values):
        src = self.source(n)
        return [
            self.x.simplex_data(src.pres.dims[g], v)
            for g, v in zip(src.pres.gens, values)
        ]

    def simplex_from_data(self, n, data):
        src = self.source(n)
        return tuple(
            self.x.simplex_from_data(src.pres.dims[g], payload)
            for g, payload in zip(src.pres.gens, data)
        )


def mapping_space(k: FiniteSpace, x: SimplicialSpace) -> MappingSpace:
    return cached(("mapping-space", k.recipe, x.recipe), lambda: MappingSpace(k, x))


# ---------------------------------------------------------------------------
# assembling a map on the boundary from prescribed faces


class AssemblyError(ValueError):
    pass


def assemble_boundary(
    n: int,
    faces: list,
    codomain: SimplicialSpace,
    basepoint,
) -> SimplicialMap:
    """Build the map boundary(n+1) -> codomain whose i-th face is the given
    map delta(n) -> codomain (or the constant basepoint when omitted).

    The prescriptions must agree on shared sub-faces; a clash raises
    AssemblyError naming the offending sub-face."""
    from .spaces import boundary_space

    if len(faces) != n + 2:
        raise AssemblyError(f"need {n + 2} face prescriptions, got {len(faces)}")
    dom = boundary_space(n + 1)
    const = constant_map(delta(n), codomain, basepoint)
    prescribed = [f if f is not None else const for f in faces]
    assignment = {}
    for g in dom.pres.gens:
        verts = tuple(int(v) for v in g.split("."))
        values = {}
        for i in range(n + 2):
            if i in verts:
                continue
            # the order isomorphism [n+1] \ {i} ~ [n]
            relabel = tuple(v if v < i else v - 1 for v in verts)
            values[i] = prescribed[i](len(verts) - 1, delta_simplex(n, relabel))
        distinct = {canon_key(v) for v in values.values()}
        if len(distinct) > 1:
            raise AssemblyError(f"face prescriptions clash on sub-face {g!r}: {values}")
        assignment[g] = next(iter(values.values()))
    return SimplicialMap(dom, codomain, assignment)
