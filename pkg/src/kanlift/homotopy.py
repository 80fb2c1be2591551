"""Connected components, brute-force homotopy sets, and the two
weak-equivalence checkers for level-wise simplicial spaces: one through
induced maps on homotopy sets, one through homotopy-lifting against the
boundary inclusions.  The two are cross-validated on fixtures; agreement is
the desk-scale form of the equivalence theorem."""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructions import product
from .lifting import (
    FibrancyVerdict,
    LiftingProblem,
    is_bounded_fibrant,
    solve_rhlp,
)
from .maps import SimplicialMap, compose_maps, enumerate_maps
from .ordinals import OrdinalMap
from .spaces import SimplicialSpace, boundary_space, canon_key, delta, vertex_id


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def classes(self):
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted(
            (tuple(sorted(g, key=canon_key)) for g in groups.values()),
            key=lambda cls: canon_key(cls[0]),
        )


@dataclass
class PiZero:
    classes: tuple
    index: dict

    @property
    def count(self) -> int:
        return len(self.classes)


def pi0(x: SimplicialSpace) -> PiZero:
    """Vertices modulo the edge relation (coequalizer of the two faces)."""
    uf = _UnionFind(x.level(0))
    for e in x.level(1):
        uf.union(x.face(0, 1, e), x.face(1, 1, e))
    classes = tuple(uf.classes())
    index = {v: i for i, cls in enumerate(classes) for v in cls}
    return PiZero(classes, index)


def pi0_map(f: SimplicialMap, src: PiZero | None = None, tgt: PiZero | None = None):
    """The induced function on component classes, with a well-definedness
    check."""
    src = src or pi0(f.domain)
    tgt = tgt or pi0(f.codomain)
    out = {}
    for i, cls in enumerate(src.classes):
        images = {tgt.index[f(0, v)] for v in cls}
        if len(images) != 1:
            raise ValueError("edge relation not preserved; map is not simplicial")
        out[i] = images.pop()
    return out, src, tgt


def degenerate_at(space: SimplicialSpace, vertex, n: int):
    """The n-fold degeneracy of a vertex."""
    return space.apply(OrdinalMap(n, 0, tuple(0 for _ in range(n + 1))), vertex)


@dataclass
class HomotopySet:
    space: SimplicialSpace
    basepoint: object
    n: int
    elements: tuple
    classes: tuple
    index: dict
    fibrancy: FibrancyVerdict | None
    bound_used: int

    @property
    def count(self) -> int:
        return len(self.classes)


def based_elements(x: SimplicialSpace, basepoint, n: int) -> tuple:
    """Level-n simplices whose every face is the degenerate basepoint: the
    maps (simplex, boundary) -> (space, basepoint)."""
    if n == 0:
        return x.level(0)
    collapsed = degenerate_at(x, basepoint, n - 1)
    return tuple(
        y
        for y in x.level(n)
        if all(x.face(i, n, y) == collapsed for i in range(n + 1))
    )


def homotopy_set(
    x: SimplicialSpace,
    basepoint,
    n: int,
    fibrancy_bound: int | None = None,
) -> HomotopySet:
    """Based maps out of the n-simplex relative to its boundary, modulo the
    equivalence relation generated by boundary-fixing homotopy.

    The relation is computed by one exhaustive enumeration of prism maps with
    collapsed boundary, closed off by union-find; the fibrancy verdict of the
    space (at the requested bound) is recorded alongside, since the classes
    carry homotopical meaning only in the fibrant case."""
    bound = fibrancy_bound if fibrancy_bound is not None else n + 2
    fibrancy = is_bounded_fibrant(x, bound)
    if n == 0:
        comps = pi0(x)
        return HomotopySet(
            x, basepoint, 0, x.level(0), comps.classes, dict(comps.index), fibrancy, bound
        )
    elements = based_elements(x, basepoint, n)
    uf = _UnionFind(elements)
    prism = product(delta(n), delta(1)).space
    top_id = vertex_id(tuple(range(n + 1)))
    partial = {}
    end_gens = {}
    for g in prism.pres.gens:
        a, t = prism.gen_simplex[g]
        d = prism.pres.dims[g]
        if a.generator != top_id:
            partial[g] = degenerate_at(x, basepoint, d)
        elif t.generator == "0" and a.is_generator:
            end_gens[0] = g
        elif t.generator == "1" and a.is_generator:
            end_gens[1] = g
    for h in enumerate_maps(prism, x, partial):
        u, v = h.assignment[end_gens[0]], h.assignment[end_gens[1]]
        uf.union(u, v)
    classes = tuple(uf.classes())
    index = {e: i for i, cls in enumerate(classes) for e in cls}
    return HomotopySet(x, basepoint, n, elements, classes, index, fibrancy, bound)


def induced_map(f: SimplicialMap, src: HomotopySet, tgt: HomotopySet) -> dict:
    """The function on homotopy classes induced by a map of pairs."""
    out = {}
    for i, cls in enumerate(src.classes):
        images = set()
        for e in cls:
            y = f(src.n, e)
            if y not in tgt.index:
                raise ValueError("image is not a based element of the target")
            images.add(tgt.index[y])
        if len(images) != 1:
            raise ValueError("homotopic elements with non-homotopic images")
        out[i] = images.pop()
    return out


def _bijective(mapping: dict, target_size: int) -> bool:
    return len(set(mapping.values())) == len(mapping) == target_size


# ---------------------------------------------------------------------------
# weak-equivalence verdicts


@dataclass
class WeVerdict:
    ok: bool
    mode: str
    nmax: int
    fibrancy: dict
    witness: object = None
    detail: str = ""
    checked: int = 0

    def __bool__(self):
        return self.ok


def is_we_homotopy(f: SimplicialMap, nmax: int = 2, fibrancy_bound: int | None = None) -> WeVerdict:
    """True iff the components biject and, for every basepoint and every
    1 <= n <= nmax, the induced function on homotopy sets bijects."""
    bound = fibrancy_bound if fibrancy_bound is not None else nmax + 2
    fib = {
        "domain": is_bounded_fibrant(f.domain, bound),
        "codomain": is_bounded_fibrant(f.codomain, bound),
    }
    p0_map, p0_src, p0_tgt = pi0_map(f)
    checked = 1
    if not _bijective(p0_map, p0_tgt.count):
        return WeVerdict(
            False,
            "homotopy",
            nmax,
            fib,
            witness=("pi0", p0_src.count, p0_tgt.count),
            detail=f"component counts {p0_src.count} vs {p0_tgt.count} or non-bijective",
            checked=checked,
        )
    for x in f.domain.level(0):
        fx = f(0, x)
        for n in range(1, nmax + 1):
            src = homotopy_set(f.domain, x, n, bound)
            tgt = homotopy_set(f.codomain, fx, n, bound)
            mapping = induced_map(f, src, tgt)
            checked += 1
            if not _bijective(mapping, tgt.count):
                return WeVerdict(
                    False,
                    "homotopy",
                    nmax,
                    fib,
                    witness=("pi_n", n, x, src.count, tgt.count),
                    detail=f"homotopy set at n={n}, basepoint {x!r}: "
                    f"{src.count} classes vs {tgt.count}",
                    checked=checked,
                )
    return WeVerdict(True, "homotopy", nmax, fib, checked=checked)


def boundary_squares(f: SimplicialMap, n: int):
    """All commuting squares (boundary -> domain, simplex -> codomain), in
    canonical order, deduplicated (the pair automorphism group is trivial, so
    the symmetry reduction is the identity)."""
    bd = boundary_space(n)
    from .maps import inclusion

    incl = inclusion(bd, delta(n))
    for top in enumerate_maps(bd, f.domain):
        f_top = compose_maps(top, f)
        for bottom in enumerate_maps(delta(n), f.codomain, dict(f_top.assignment)):
            yield LiftingProblem(i=incl, f=f, top=top, bottom=bottom)


def is_we_rhlp(f: SimplicialMap, nmax: int = 2, fibrancy_bound: int | None = None) -> WeVerdict:
    """True iff every boundary square through nmax has a homotopy-lifting;
    exhaustive search per square."""
    bound = fibrancy_bound if fibrancy_bound is not None else nmax + 2
    fib = {
        "domain": is_bounded_fibrant(f.domain, bound),
        "codomain": is_bounded_fibrant(f.codomain, bound),
    }
    checked = 0
    sample = None
    for n in range(nmax + 1):
        for p in boundary_squares(f, n):
            checked += 1
            cert = solve_rhlp(p)
            if cert is None:
                return WeVerdict(
                    False,
                    "rhlp",
                    nmax,
                    fib,
                    witness=("square", n, p),
                    detail=f"boundary square at n={n} has no homotopy-lifting",
                    checked=checked,
                )
            if sample is None:
                sample = cert
    return WeVerdict(True, "rhlp", nmax, fib, witness=sample, checked=checked)


@dataclass
class AgreementReport:
    homotopy: WeVerdict
    rhlp: WeVerdict

    @property
    def agree(self) -> bool:
        return self.homotopy.ok == self.rhlp.ok

    @property
    def verdict(self) -> str:
        if not self.agree:
            return "DISAGREE"
        return "agree-true" if self.homotopy.ok else "agree-false"


def cross_validate_we(
    f: SimplicialMap, nmax: int = 2, fibrancy_bound: int | None = None
) -> AgreementReport:
    """Run both weak-equivalence checkers and compare their verdicts."""
    return AgreementReport(
        homotopy=is_we_homotopy(f, nmax, fibrancy_bound),
        rhlp=is_we_rhlp(f, nmax, fibrancy_bound),
    )
