"""Exhaustive lifting searches and certificates.

Everything here is a complete enumeration in canonical order: strict lifts,
simplicial homotopies, homotopy-liftings (a lift making the upper triangle
commute plus a homotopy, relative to the subobject, under the bottom map),
and horn-filling verdicts through a stated dimension bound.  Certificate
validation is straight equation checking, independent of the searches.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .constructions import CylinderResult, RhObject, cylinder, product_map, rh
from .maps import (
    SimplicialMap,
    compose_maps,
    enumerate_maps,
    identity_map,
    inclusion,
)
from .spaces import FiniteSpace, SimplicialSpace, delta, horn_space


class LiftingError(ValueError):
    pass


@dataclass
class LiftingProblem:
    """A commuting square: top: K -> X over bottom: L -> Y along i: K -> L
    and f: X -> Y."""

    i: SimplicialMap
    f: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap

    def validate(self):
        if compose_maps(self.i, self.bottom) != compose_maps(self.top, self.f):
            raise LiftingError("the square does not commute")
        return self

    @property
    def k_space(self) -> FiniteSpace:
        return self.i.domain

    @property
    def l_space(self) -> FiniteSpace:
        return self.i.codomain


def maps_with_constraints(
    domain: FiniteSpace,
    codomain: SimplicialSpace,
    constraints: list[tuple[SimplicialMap, SimplicialMap]],
    image_filter=None,
):
    """All maps h: domain -> codomain with h . j == val for each constraint
    (j, val), in canonical order.

    Constraints whose j hits generators seed the backtracking directly; the
    rest are checked on each completed candidate."""
    partial: dict = {}
    for j, val in constraints:
        for g in j.domain.pres.gens:
            d = j.domain.pres.dims[g]
            ref = j.assignment[g]
            if ref.is_generator:
                want = val.assignment[g]
                if partial.get(ref.generator, want) != want:
                    return
                partial[ref.generator] = want

    def full_check(h: SimplicialMap) -> bool:
        return all(compose_maps(j, h) == val for j, val in constraints)

    for h in enumerate_maps(domain, codomain, partial, image_filter):
        if full_check(h):
            yield h


def enumerate_lifts(p: LiftingProblem):
    """All strict lifts L -> X of the square, in canonical order."""
    p.validate()

    def bottom_compatible(g, cand):
        d = p.l_space.pres.dims[g]
        return p.f(d, cand) == p.bottom.assignment[g]

    yield from maps_with_constraints(
        p.l_space, p.f.domain, [(p.i, p.top)], image_filter=bottom_compatible
    )


def solve_rlp(p: LiftingProblem) -> SimplicialMap | None:
    """The first strict lift in canonical order, or None; exhaustive."""
    return next(enumerate_lifts(p), None)


def constant_cylinder_homotopy(u: SimplicialMap, cyl: CylinderResult) -> SimplicialMap:
    """The constant homotopy on u: domain x delta(1) -> codomain."""
    return compose_maps(cyl.proj, u)


def homotopies_between(
    u: SimplicialMap,
    v: SimplicialMap | None,
    rel: SimplicialMap | None = None,
):
    """All homotopies H: L x delta(1) -> Y with H|0 = u, H|1 = v (unconstrained
    when v is None), constant along rel: K -> L when given."""
    l_space, y = u.domain, u.codomain
    cyl = cylinder(l_space)
    constraints = [(cyl.end0, u)]
    if v is not None:
        constraints.append((cyl.end1, v))
    if rel is not None:
        k_cyl = cylinder(rel.domain)
        rel_cyl = product_map(rel, identity_map(delta(1)), k_cyl.prod, cyl.prod)
        constraints.append(
            (rel_cyl, constant_cylinder_homotopy(compose_maps(rel, u), k_cyl))
        )
    yield from maps_with_constraints(cyl.space, y, constraints)


def find_homotopy(
    u: SimplicialMap,
    v: SimplicialMap,
    rel: SimplicialMap | None,
    zigzag_bound: int,
) -> list[tuple[bool, SimplicialMap]] | None:
    """A zigzag of at most zigzag_bound elementary homotopies rel K from u to
    v, by breadth-first search; None if the bound is exhausted.

    Each step is (forward, H): forward means H runs from the current map to
    the next one."""
    if rel is not None and compose_maps(rel, u) != compose_maps(rel, v):
        raise LiftingError("the two maps disagree on the relative subspace")
    if u == v:
        return []
    cyl = cylinder(u.domain)
    start, target = u.key(), v.key()
    seen = {start: (None, None)}
    frontier = deque([(u, 0)])
    by_key = {start: u}

    def record_and_check(cur_key, w: SimplicialMap, step):
        k = w.key()
        if k in seen:
            return None
        seen[k] = (cur_key, step)
        by_key[k] = w
        if k == target:
            chain = []
            at = k
            while seen[at][0] is not None:
                prev, st = seen[at]
                chain.append(st)
                at = prev
            chain.reverse()
            return chain
        return None

    while frontier:
        cur, depth = frontier.popleft()
        if depth >= zigzag_bound:
            continue
        cur_key = cur.key()
        for h in homotopies_between(cur, None, rel):
            w = compose_maps(cyl.end1, h)
            done = record_and_check(cur_key, w, (True, h))
            if done is not None:
                return done
            frontier.append((w, depth + 1))
        for h in _homotopies_into(cur, rel):
            w = compose_maps(cyl.end0, h)
            done = record_and_check(cur_key, w, (False, h))
            if done is not None:
                return done
            frontier.append((w, depth + 1))
    return None


def _homotopies_into(v: SimplicialMap, rel: SimplicialMap | None):
    """Homotopies whose time-1 end is v (time-0 end free)."""
    l_space, y = v.domain, v.codomain
    cyl = cylinder(l_space)
    constraints = [(cyl.end1, v)]
    if rel is not None:
        k_cyl = cylinder(rel.domain)
        rel_cyl = product_map(rel, identity_map(delta(1)), k_cyl.prod, cyl.prod)
        constraints.append(
            (rel_cyl, constant_cylinder_homotopy(compose_maps(rel, v), k_cyl))
        )
    yield from maps_with_constraints(cyl.space, y, constraints)


# ---------------------------------------------------------------------------
# homotopy-lifting certificates


@dataclass
class RhlpCertificate:
    problem: LiftingProblem
    lift: SimplicialMap  # L -> X
    cyl_homotopy: SimplicialMap  # L x delta(1) -> Y, from f.lift to bottom
    rh_homotopy: SimplicialMap  # RH(L, K) -> Y


class CertificateError(ValueError):
    pass


def validate_rhlp_certificate(cert: RhlpCertificate) -> RhlpCertificate:
    """Equation-level validation, independent of the search code."""
    p = cert.problem
    p.validate()
    cert.lift.validate()
    if compose_maps(p.i, cert.lift) != p.top:
        raise CertificateError("the lift does not extend the top map")
    obj = rh(p.i)
    h = cert.rh_homotopy
    h.validate()
    if compose_maps(obj.i0, h) != compose_maps(cert.lift, p.f):
        raise CertificateError("the homotopy does not start at f . lift")
    if compose_maps(obj.i1, h) != p.bottom:
        raise CertificateError("the homotopy does not end at the bottom map")
    if compose_maps(obj.k_incl, h) != compose_maps(p.i, p.bottom):
        raise CertificateError("the homotopy is not constant along the subobject")
    if cert.cyl_homotopy != obj.to_cylinder_homotopy(h):
        raise CertificateError("cylinder form disagrees with the quotient form")
    return cert


def enumerate_rhlp_certificates(p: LiftingProblem):
    """All homotopy-lifting certificates, lifts outermost, canonical order."""
    p.validate()
    obj = rh(p.i)
    const = compose_maps(p.i, p.bottom)
    for lift in maps_with_constraints(p.l_space, p.f.domain, [(p.i, p.top)]):
        fl = compose_maps(lift, p.f)
        for h in homotopies_between(fl, p.bottom, p.i):
            yield RhlpCertificate(
                problem=p,
                lift=lift,
                cyl_homotopy=h,
                rh_homotopy=obj.from_cylinder_homotopy(h),
            )


def solve_rhlp(p: LiftingProblem) -> RhlpCertificate | None:
    """The canonically first homotopy-lifting certificate, or None;
    exhaustive over (lift, homotopy) pairs."""
    return next(enumerate_rhlp_certificates(p), None)


# ---------------------------------------------------------------------------
# bounded horn-filling verdicts


def horn_inclusion(n: int, k: int) -> SimplicialMap:
    return inclusion(horn_space(n, k), delta(n))


def boundary_inclusion(n: int) -> SimplicialMap:
    from .spaces import boundary_space

    return inclusion(boundary_space(n), delta(n))


@dataclass
class FibrancyVerdict:
    ok: bool
    bound: int
    witness: tuple | None = None  # (n, k, horn map [, bottom map])

    def __bool__(self):
        return self.ok


_fibrancy_cache: dict = {}


def is_bounded_fibrant(x: SimplicialSpace, bound: int) -> FibrancyVerdict:
    """Check every horn-filling problem in dimensions 1..bound (memoized per
    space object)."""
    key = (id(x), bound)
    hit = _fibrancy_cache.get(key)
    if hit is not None:
        return hit
    verdict = FibrancyVerdict(True, bound)
    for n in range(1, bound + 1):
        for k in range(n + 1):
            horn = horn_space(n, k)
            for u in enumerate_maps(horn, x):
                ext = next(enumerate_maps(delta(n), x, dict(u.assignment)), None)
                if ext is None:
                    verdict = FibrancyVerdict(False, bound, (n, k, u))
                    break
            if not verdict.ok:
                break
        if not verdict.ok:
            break
    _fibrancy_cache[key] = verdict
    return verdict


def is_bounded_fibration(f: SimplicialMap, bound: int) -> FibrancyVerdict:
    """Check the strict lifting property against horns through the bound."""
    for n in range(1, bound + 1):
        for k in range(n + 1):
            horn = horn_space(n, k)
            incl = horn_inclusion(n, k)
            for u in enumerate_maps(horn, f.domain):
                fu = compose_maps(u, f)
                for v in enumerate_maps(delta(n), f.codomain, dict(fu.assignment)):
                    p = LiftingProblem(i=incl, f=f, top=u, bottom=v)
                    if solve_rlp(p) is None:
                        return FibrancyVerdict(False, bound, (n, k, u, v))
    return FibrancyVerdict(True, bound)


def default_fibrancy_bound(n: int) -> int:
    """Fillers in the constructions here are only ever needed two dimensions
    above the problem size."""
    return n + 2
