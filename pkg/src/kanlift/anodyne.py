"""Verified cell presentations of acyclic cofibrations, and the lifting
constructions that replay them against bounded-fibrant targets.

A presentation is a sequence of horn attachments inside a fixed ambient
complex: each step glues one fresh cell together with exactly one fresh face
along a horn whose other faces are already present.  Replaying a presentation
against a fibrant target turns every step into one horn-filling problem, so
extensions over the presented inclusion need only finitely many fillers.

Presentations are canned, not discovered at run time: the step tables below
for the interval and horn pushout-products were derived once and frozen;
replay verification re-checks every step."""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import (
    ChainSpace,
    CylinderResult,
    cone,
    cone_map,
    cylinder,
    cylinder_end_gens,
    product,
    product_map,
    rh,
)
from .lifting import (
    LiftingError,
    LiftingProblem,
    RhlpCertificate,
    find_homotopy,
    solve_rhlp,
    validate_rhlp_certificate,
)
from .maps import (
    SimplicialMap,
    characteristic_map,
    compose_maps,
    constant_map,
    delta_simplex,
    enumerate_maps,
    identity_map,
    inclusion,
)
from .ordinals import OrdinalMap
from .spaces import (
    FiniteSpace,
    SimplexRef,
    delta,
    generator_ref,
    horn_space,
    subspace,
    vertex_id,
)


class SearchExhausted(RuntimeError):
    """A filler search came up empty; the verdict is inconclusive, not a
    refutation."""


class CellPresentationError(ValueError):
    def __init__(self, message, step_index=None):
        super().__init__(message if step_index is None else f"step {step_index}: {message}")
        self.step_index = step_index


@dataclass(frozen=True)
class HornStep:
    n: int
    k: int
    top: SimplexRef  # generator of the ambient complex receiving the cell


@dataclass
class CellPresentation:
    """An inclusion presented by horn attachments inside its codomain.

    Cobase changes and compositions are normalized away: the steps directly
    list the cells of ambient \\ start in an order where each attachment is a
    valid horn gluing.  ``domain_space`` optionally names a canonical copy of
    the start subcomplex (sharing generator names)."""

    ambient: FiniteSpace
    start: frozenset
    steps: tuple
    domain_space: FiniteSpace | None = None

    def claimed_inclusion(self) -> SimplicialMap:
        if self.domain_space is not None:
            dims = {g: self.ambient.pres.dims[g] for g in self.start}
            if dict(self.domain_space.pres.dims) != dims:
                raise CellPresentationError("domain space does not match the start")
            return SimplicialMap(
                self.domain_space,
                self.ambient,
                {g: generator_ref(g, d) for g, d in dims.items()},
            )
        sub = subspace(self.ambient, self.start, ("sub", self.ambient.recipe, tuple(sorted(self.start))))
        return inclusion(sub, self.ambient)


@dataclass
class RetractPresentation:
    """A map exhibited as a retract (in the arrow category) of a presented
    inclusion."""

    inner: CellPresentation
    claimed: SimplicialMap  # i: K -> L
    sec_dom: SimplicialMap  # K -> start(inner)
    ret_dom: SimplicialMap  # start(inner) -> K
    sec_cod: SimplicialMap  # L -> ambient(inner)
    ret_cod: SimplicialMap  # ambient(inner) -> L


def verify_cell_presentation(pres) -> SimplicialMap:
    """Replay a presentation and return the map it presents.

    Checks, step by step, that each attachment is a horn gluing: the top cell
    is a fresh generator, exactly its k-th face is fresh (and is itself a
    fresh generator), and all other faces already lie in the complex built so
    far.  Retract data is checked by the usual four commuting identities."""
    if isinstance(pres, RetractPresentation):
        inner_incl = verify_cell_presentation(pres.inner)
        i = pres.claimed
        checks = [
            (compose_maps(pres.sec_dom, pres.ret_dom), identity_map(i.domain), "domain retract"),
            (compose_maps(pres.sec_cod, pres.ret_cod), identity_map(i.codomain), "codomain retract"),
            (compose_maps(pres.sec_dom, inner_incl), compose_maps(i, pres.sec_cod), "section square"),
            (compose_maps(pres.ret_dom, i), compose_maps(inner_incl, pres.ret_cod), "retraction square"),
        ]
        for got, want, label in checks:
            if got != want:
                raise CellPresentationError(f"{label} identity fails")
        return i

    ambient = pres.ambient
    claimed = pres.claimed_inclusion()  # also validates face-closure of start
    present = set(pres.start)
    for idx, step in enumerate(pres.steps):
        top = step.top
        if not top.is_generator or top.dim != step.n:
            raise CellPresentationError("attached cell is not a fresh generator", idx)
        if top.generator in present:
            raise CellPresentationError("attached cell already present", idx)
        if not 0 <= step.k <= step.n:
            raise CellPresentationError("horn index out of range", idx)
        fresh_face = ambient.pres.faces[top.generator][step.k]
        if not fresh_face.is_generator:
            raise CellPresentationError("the free face is degenerate", idx)
        if fresh_face.generator in present or fresh_face.generator == top.generator:
            raise CellPresentationError("the free face is not fresh", idx)
        for r, ref in enumerate(ambient.pres.faces[top.generator]):
            if r == step.k:
                continue
            if ref.generator not in present:
                raise CellPresentationError(
                    f"face {r} ({ref.generator!r}) is not yet present", idx
                )
        present.add(top.generator)
        present.add(fresh_face.generator)
    if present != set(ambient.pres.dims):
        missing = sorted(set(ambient.pres.dims) - present)
        raise CellPresentationError(f"presentation does not cover the ambient complex: missing {missing}")
    return claimed


# ---------------------------------------------------------------------------
# replaying a presentation against a fibrant target


def evaluate_ref(codomain, assignment: dict, ref: SimplexRef):
    return codomain.apply(ref.degeneracy, assignment[ref.generator])


def transport_assignment(j: SimplicialMap, u: SimplicialMap) -> dict:
    """Re-key the values of u: S -> X along a generator-to-generator mono
    j: S -> T, producing a partial assignment on T's generators."""
    out = {}
    for g in j.domain.pres.gens:
        ref = j.assignment[g]
        if not ref.is_generator:
            raise LiftingError(f"{g!r} has a degenerate image; cannot transport")
        out[ref.generator] = u.assignment[g]
    return out


def merge_assignments(*parts: dict) -> dict:
    out: dict = {}
    for part in parts:
        for g, v in part.items():
            if g in out and out[g] != v:
                raise LiftingError(f"inconsistent glue data at generator {g!r}")
            out[g] = v
    return out


def extend_via_steps(
    ambient: FiniteSpace,
    start_assignment: dict,
    steps,
    codomain,
) -> SimplicialMap:
    """Extend a partial assignment over the attachments, one filler per step.

    Each step asks for a single horn filler in the codomain; the first filler
    in canonical order is taken, so the extension is deterministic.  Raises
    SearchExhausted when a filler is missing."""
    assignment = dict(start_assignment)
    for idx, step in enumerate(steps):
        n, k, top = step.n, step.k, step.top
        top_id = vertex_id(tuple(range(n + 1)))
        free_id = vertex_id(tuple(v for v in range(n + 1) if v != k))
        char = characteristic_map(ambient, n, top)
        partial = {}
        for g in delta(n).pres.gens:
            if g in (top_id, free_id):
                continue
            ref = char.assignment[g]
            partial[g] = evaluate_ref(codomain, assignment, ref)
        filler = next(enumerate_maps(delta(n), codomain, partial), None)
        if filler is None:
            raise SearchExhausted(
                f"no filler for the dimension-{n} horn at step {idx}"
            )
        fresh_face = ambient.pres.faces[top.generator][k]
        assignment[top.generator] = filler.assignment[top_id]
        assignment[fresh_face.generator] = filler.assignment[free_id]
    return SimplicialMap(ambient, codomain, assignment)


def extend_over_anodyne(u: SimplicialMap, pres, bound: int | None = None) -> SimplicialMap:
    """Extend u: K -> X over a presented acyclic cofibration K -> L, using one
    horn filler of X per step; returns l: L -> X with l . incl == u.

    For a retract presentation the inner extension is composed with the
    codomain section."""
    if isinstance(pres, RetractPresentation):
        inner_u = compose_maps(pres.ret_dom, u)
        ext = extend_over_anodyne(inner_u, pres.inner, bound)
        return compose_maps(pres.sec_cod, ext)
    if set(u.domain.pres.dims) != set(pres.start):
        raise LiftingError("the map is not defined on the presentation's start")
    return extend_via_steps(pres.ambient, dict(u.assignment), pres.steps, u.codomain)


# ---------------------------------------------------------------------------
# recipe: (B x {e}) u (A x interval) -> B x interval for a subcomplex A of B


def cylinder_sub_gens(b: FiniteSpace, sub_gens) -> set:
    """Generators of b x delta(1) whose base component lies in the
    subcomplex."""
    cyl = cylinder(b)
    sub = set(sub_gens)
    return {
        g for g in cyl.space.pres.gens if cyl.space.gen_simplex[g][0].generator in sub
    }


def prism_path(b: FiniteSpace, gen: str, j: int) -> SimplexRef:
    """The j-th top cell of the prism over a generator: the base degenerated
    at j, paired with the time profile 0..0 1..1 switching after j."""
    cyl = cylinder(b)
    m = b.pres.dims[gen]
    base = b.degenerate(j, m, generator_ref(gen, m))
    profile = delta_simplex(1, (0,) * (j + 1) + (1,) * (m + 1 - j))
    return cyl.space.from_underlying(m + 1, (base, profile))


def prism_presentation(b: FiniteSpace, sub_gens, e: int) -> CellPresentation:
    """(B x {e}) u (A x delta(1)) -> B x delta(1): attach the prism over each
    cell of B \\ A, top simplices ordered away from the fixed end."""
    cyl = cylinder(b)
    sub = set(sub_gens)
    start = frozenset(cylinder_end_gens(b, e) | cylinder_sub_gens(b, sub))
    steps = []
    for gen in b.pres.gens:  # already sorted by (dim, id)
        if gen in sub:
            continue
        m = b.pres.dims[gen]
        js = range(m, -1, -1) if e == 0 else range(m + 1)
        for j in js:
            k = j if e == 0 else j + 1
            steps.append(HornStep(m + 1, k, prism_path(b, gen, j)))
    return CellPresentation(cyl.space, start, tuple(steps))


# ---------------------------------------------------------------------------
# frozen pushout-product families
#
# HQ[(n, k)]: (delta(n) x bd-interval) u (horn(n,k) x interval) -> prism
# HLAM[m]:    (delta(m) x horn(2,1)) u (bd x delta(2)) -> delta(m) x delta(2)
#
# Each entry is (cell dimension, horn index, (base profile, fibre profile)),
# the profiles being vertex sequences inside the two factors.

HQ = {
    (1, 0): ((2, 1, ((0, 0, 1), (0, 1, 1))), (2, 0, ((0, 1, 1), (0, 0, 1)))),
    (1, 1): ((2, 1, ((0, 1, 1), (0, 0, 1))), (2, 2, ((0, 0, 1), (0, 1, 1)))),
    (2, 0): (
        (2, 0, ((0, 1, 2), (0, 0, 1))),
        (3, 1, ((0, 0, 1, 2), (0, 1, 1, 1))),
        (3, 0, ((0, 1, 1, 2), (0, 0, 1, 1))),
        (3, 0, ((0, 1, 2, 2), (0, 0, 0, 1))),
    ),
    (2, 1): (
        (2, 1, ((0, 1, 2), (0, 0, 1))),
        (3, 1, ((0, 1, 1, 2), (0, 0, 1, 1))),
        (3, 2, ((0, 0, 1, 2), (0, 1, 1, 1))),
        (3, 1, ((0, 1, 2, 2), (0, 0, 0, 1))),
    ),
    (2, 2): (
        (2, 1, ((0, 0, 1), (0, 1, 1))),
        (3, 1, ((0, 0, 1, 2), (0, 1, 1, 1))),
        (3, 2, ((0, 1, 2, 2), (0, 0, 0, 1))),
        (3, 3, ((0, 1, 1, 2), (0, 0, 1, 1))),
    ),
}

HLAM = {
    0: ((2, 1, ((0, 0, 0), (0, 1, 2))),),
    1: (
        (2, 1, ((0, 0, 1), (0, 1, 2))),
        (3, 1, ((0, 0, 0, 1), (0, 1, 2, 2))),
        (3, 1, ((0, 0, 1, 1), (0, 1, 1, 2))),
        (3, 2, ((0, 1, 1, 1), (0, 0, 1, 2))),
    ),
    2: (
        (3, 2, ((0, 1, 2, 2), (0, 0, 1, 2))),
        (3, 1, ((0, 1, 1, 2), (0, 0, 2, 2))),
        (3, 2, ((0, 1, 1, 2), (0, 1, 2, 2))),
        (4, 3, ((0, 1, 1, 1, 2), (0, 0, 1, 2, 2))),
        (4, 1, ((0, 1, 1, 2, 2), (0, 0, 1, 1, 2))),
        (4, 3, ((0, 0, 1, 2, 2), (0, 1, 1, 1, 2))),
        (4, 2, ((0, 0, 1, 1, 2), (0, 1, 1, 2, 2))),
        (4, 1, ((0, 0, 0, 1, 2), (0, 1, 2, 2, 2))),
        (4, 3, ((0, 1, 2, 2, 2), (0, 0, 0, 1, 2))),
    ),
}


def _transport_family(prod_space: FiniteSpace, b_char: SimplicialMap, family, t_dim: int):
    """Instantiate a frozen family over an attached cell: the base profiles
    run through the cell's characteristic map, the fibre profiles through the
    second factor."""
    steps = []
    for n, k, (bseq, tseq) in family:
        bval = b_char(len(bseq) - 1, delta_simplex(b_char.domain.dim, bseq))
        tval = delta_simplex(t_dim, tseq)
        top = prod_space.from_underlying(n, (bval, tval))
        if not top.is_generator:
            raise CellPresentationError("transported cell is degenerate")
        steps.append(HornStep(n, k, top))
    return steps


def interval_pushout_product(pres: CellPresentation) -> CellPresentation:
    """(L x bd-interval) u (K x interval) -> L x interval, for a presented
    acyclic cofibration K -> L: one frozen block of attachments per step."""
    l_space = pres.ambient
    cyl = cylinder(l_space)
    start = frozenset(
        cylinder_end_gens(l_space, 0)
        | cylinder_end_gens(l_space, 1)
        | cylinder_sub_gens(l_space, pres.start)
    )
    steps = []
    for idx, step in enumerate(pres.steps):
        family = HQ.get((step.n, step.k))
        if family is None:
            raise CellPresentationError(
                f"no frozen interval product family for horn ({step.n}, {step.k})", idx
            )
        b_char = characteristic_map(l_space, step.n, step.top)
        steps.extend(_transport_family(cyl.space, b_char, family, 1))
    return CellPresentation(cyl.space, start, tuple(steps))


def horn21_pushout_product(m_space: FiniteSpace, sub_gens) -> CellPresentation:
    """(M x horn(2,1)) u (K x delta(2)) -> M x delta(2) for a subcomplex K of
    M: the extension used to concatenate two homotopies."""
    prod = product(m_space, delta(2)).space
    horn_gens = set(horn_space(2, 1).pres.dims)
    sub = set(sub_gens)
    start = frozenset(
        g
        for g in prod.pres.gens
        if prod.gen_simplex[g][1].generator in horn_gens
        or prod.gen_simplex[g][0].generator in sub
    )
    steps = []
    for gen in m_space.pres.gens:
        if gen in sub:
            continue
        m = m_space.pres.dims[gen]
        family = HLAM.get(m)
        if family is None:
            raise CellPresentationError(
                f"no frozen horn product family in dimension {m}"
            )
        b_char = characteristic_map(m_space, m, generator_ref(gen, m))
        steps.extend(_transport_family(prod, b_char, family, 2))
    return CellPresentation(prod, start, tuple(steps))


# ---------------------------------------------------------------------------
# cones


def cone_relative_presentation(i: SimplicialMap) -> CellPresentation:
    """Cone(K) -> Cone(L) for a subcomplex inclusion: the time-1 prism
    presentation of (L x {1}) u (K x interval) -> L x interval, pushed through
    the end collapse."""
    k_gens = set(i.domain.pres.dims)
    l_space = i.codomain
    cn = cone(l_space)
    cyl = cn.cyl
    start = {cn.apex.generator}
    for g in cn.space.pres.gens:
        if g == cn.apex.generator:
            continue
        if cyl.space.gen_simplex[g][0].generator in k_gens:
            start.add(g)
    prism = prism_presentation(l_space, k_gens, 1)
    return pushforward_presentation(prism, cn.collapse, frozenset(start))


def cone_presentation(m_space: FiniteSpace) -> CellPresentation:
    """M -> Cone(M): derived by a deterministic greedy pairing of each cone
    cell with one free face.  Succeeds for the collapsible complexes shipped
    as fixtures; replay verification guards every use."""
    cn = cone(m_space)
    start = set()
    for g in cn.space.pres.gens:
        if g == cn.apex.generator:
            continue
        if cn.cyl.space.gen_simplex[g][1].generator == "0":
            start.add(g)
    found = _derive_attachment_order(cn.space, frozenset(start))
    if found is None:
        raise CellPresentationError(
            f"no cone presentation found for {m_space.recipe}; complex may not be collapsible"
        )
    return CellPresentation(cn.space, frozenset(start), tuple(found))


def _derive_attachment_order(ambient: FiniteSpace, start: frozenset):
    """Backtracking order search: repeatedly attach a missing cell with
    exactly one missing face.  Deterministic; returns None when stuck."""
    pres = ambient.pres
    present = set(start)
    all_gens = set(pres.gens)
    steps: list[HornStep] = []

    def candidates():
        for g in sorted(all_gens - present, key=lambda g: (pres.dims[g], g)):
            if pres.dims[g] == 0:
                continue
            missing = [
                (i, ref)
                for i, ref in enumerate(pres.faces[g])
                if ref.generator not in present
            ]
            if len(missing) == 1:
                i, ref = missing[0]
                if ref.is_generator and ref.generator != g:
                    yield g, i, ref.generator

    def search() -> bool:
        if present == all_gens:
            return True
        for g, i, fresh in candidates():
            steps.append(HornStep(pres.dims[g], i, generator_ref(g, pres.dims[g])))
            present.update((g, fresh))
            if search():
                return True
            steps.pop()
            present.difference_update((g, fresh))
        return False

    return list(steps) if search() else None


def horn_presentation(n: int, k: int) -> CellPresentation:
    """The horn inclusion itself: one attachment."""
    top = generator_ref(vertex_id(tuple(range(n + 1))), n)
    return CellPresentation(
        delta(n),
        frozenset(horn_space(n, k).pres.dims),
        (HornStep(n, k, top),),
        domain_space=horn_space(n, k),
    )


def identity_presentation(space: FiniteSpace) -> CellPresentation:
    return CellPresentation(space, frozenset(space.pres.dims), (), domain_space=space)


def compose_presentations(first: CellPresentation, second: CellPresentation) -> CellPresentation:
    """K -> L -> M with shared generator names: concatenate attachments."""
    if set(first.ambient.pres.dims) != set(second.start):
        raise CellPresentationError("presentations do not compose")
    return CellPresentation(
        second.ambient, first.start, first.steps + second.steps, first.domain_space
    )


def pushforward_presentation(
    pres: CellPresentation, q: SimplicialMap, start: frozenset
) -> CellPresentation:
    """Cobase change: transport the attachment cells along a map that keeps
    them fresh and non-degenerate (e.g. a quotient collapsing only the glued
    part)."""
    steps = []
    for step in pres.steps:
        img = q(step.n, step.top)
        if not img.is_generator:
            raise CellPresentationError("cobase change degenerates an attached cell")
        steps.append(HornStep(step.n, step.k, img))
    return CellPresentation(q.codomain, start, tuple(steps))


# ---------------------------------------------------------------------------
# proof constructions


def is_contractible(m_space: FiniteSpace, zigzag_bound: int = 2):
    """Search for a null-homotopy chain of the identity; returns
    (vertex, chain) or None."""
    if m_space.level_count(0) == 0:
        return None
    ident = identity_map(m_space)
    for v in m_space.level(0):
        chain = find_homotopy(ident, constant_map(m_space, m_space, v), None, zigzag_bound)
        if chain is not None:
            return v, chain
    return None


def extend_through_contractible(
    f: SimplicialMap,
    factor: SimplicialMap,
    proj: SimplicialMap,
    i: SimplicialMap,
    bound: int,
):
    """Given f = proj . factor through a contractible M and a subcomplex
    inclusion i: K -> L into a bounded-fibrant X: produce a null-homotopy of f
    and an extension of f over i, by coning both squares.

    Returns (null_homotopy: K x delta(1) -> X, extension: L -> X)."""
    if compose_maps(factor, proj) != f:
        raise LiftingError("the factorization does not compose to f")
    m_space = factor.codomain
    if is_contractible(m_space) is None:
        raise LiftingError("the factoring space is not visibly contractible")
    x = f.codomain

    cone_m = cone_presentation(m_space)
    verify_cell_presentation(cone_m)
    cm = cone(m_space)
    start_assignment = transport_assignment(cm.incl, proj)
    g_map = extend_via_steps(cone_m.ambient, start_assignment, cone_m.steps, x)

    cone_factor = cone_map(factor)
    null_on_cone_k = compose_maps(cone_factor, g_map)
    ck = cone(f.domain)
    null_homotopy = compose_maps(ck.collapse, null_on_cone_k)

    rel_pres = cone_relative_presentation(i)
    verify_cell_presentation(rel_pres)
    cone_i = cone_map(i)
    start2 = transport_assignment(cone_i, null_on_cone_k)
    g2 = extend_via_steps(rel_pres.ambient, start2, rel_pres.steps, x)
    extension = compose_maps(cone(i.codomain).incl, g2)
    if compose_maps(i, extension) != f:
        raise LiftingError("coned extension does not restrict to f")
    return null_homotopy, extension


def restrict_square(
    h_k: SimplicialMap, h_l: SimplicialMap, i: SimplicialMap, f: SimplicialMap, t: int
) -> LiftingProblem:
    """The square at time t of a homotopy of squares."""
    k_cyl, l_cyl = cylinder(i.domain), cylinder(i.codomain)
    end_k = k_cyl.end0 if t == 0 else k_cyl.end1
    end_l = l_cyl.end0 if t == 0 else l_cyl.end1
    return LiftingProblem(
        i=i, f=f, top=compose_maps(end_k, h_k), bottom=compose_maps(end_l, h_l)
    )


def transport_rhlp(
    h_k: SimplicialMap,
    h_l: SimplicialMap,
    i: SimplicialMap,
    f: SimplicialMap,
    cert0: RhlpCertificate,
    bound: int,
) -> RhlpCertificate:
    """Carry a homotopy-lifting certificate along a homotopy of squares:
    extend the time-0 lift over the cylinder using the domain's fillers, then
    extend the homotopy data over the cylinder on RH(L, K) using the
    codomain's fillers."""
    k_cyl, l_cyl = cylinder(i.domain), cylinder(i.codomain)
    i_cyl = product_map(i, identity_map(delta(1)), k_cyl.prod, l_cyl.prod)
    if compose_maps(i_cyl, h_l) != compose_maps(h_k, f):
        raise LiftingError("the cylinder square does not commute")
    validate_rhlp_certificate(cert0)
    p0 = restrict_square(h_k, h_l, i, f, 0)
    if (
        cert0.problem.top != p0.top
        or cert0.problem.bottom != p0.bottom
    ):
        raise LiftingError("certificate does not solve the time-0 square")

    x = f.domain
    k_gens = {i.assignment[g].generator for g in i.domain.pres.gens}
    glue = merge_assignments(
        transport_assignment(l_cyl.end0, cert0.lift),
        transport_assignment(i_cyl, h_k),
    )
    pres1 = prism_presentation(i.codomain, k_gens, 0)
    g_map = extend_via_steps(pres1.ambient, glue, pres1.steps, x)
    l1 = compose_maps(l_cyl.end1, g_map)

    obj = rh(i)
    r_cyl = cylinder(obj.space)
    i0_cyl = product_map(obj.i0, identity_map(delta(1)), l_cyl.prod, r_cyl.prod)
    i1_cyl = product_map(obj.i1, identity_map(delta(1)), l_cyl.prod, r_cyl.prod)
    fold_gens = (
        {obj.i0.assignment[g].generator for g in i.codomain.pres.gens}
        | {obj.i1.assignment[g].generator for g in i.codomain.pres.gens}
        | {obj.k_incl.assignment[g].generator for g in i.domain.pres.gens}
    )
    glue2 = merge_assignments(
        transport_assignment(r_cyl.end0, cert0.rh_homotopy),
        transport_assignment(i0_cyl, compose_maps(g_map, f)),
        transport_assignment(i1_cyl, h_l),
    )
    pres2 = prism_presentation(obj.space, fold_gens, 0)
    j_map = extend_via_steps(pres2.ambient, glue2, pres2.steps, f.codomain)
    rh_homotopy1 = compose_maps(r_cyl.end1, j_map)

    p1 = restrict_square(h_k, h_l, i, f, 1)
    cert1 = RhlpCertificate(
        problem=p1,
        lift=l1,
        cyl_homotopy=obj.to_cylinder_homotopy(rh_homotopy1),
        rh_homotopy=rh_homotopy1,
    )
    return validate_rhlp_certificate(cert1)


def presented_inclusion(pres, domain: FiniteSpace) -> SimplicialMap:
    """The inclusion a presentation exhibits, rebased on a caller-supplied
    copy of its domain (same generators)."""
    verify_cell_presentation(pres)
    if isinstance(pres, RetractPresentation):
        return pres.claimed
    dims = {g: pres.ambient.pres.dims[g] for g in pres.start}
    if {g: d for g, d in domain.pres.dims.items()} != dims:
        raise CellPresentationError("domain does not match the presented start")
    return SimplicialMap(
        domain, pres.ambient, {g: generator_ref(g, d) for g, d in dims.items()}
    )


def rhlp_for_anodyne(
    pres: CellPresentation,
    f: SimplicialMap,
    top: SimplicialMap,
    bottom: SimplicialMap,
    bound: int,
) -> RhlpCertificate:
    """A homotopy-lifting certificate against a presented acyclic cofibration
    between bounded-fibrant ends: lift with the domain's fillers, then build
    the relative homotopy with the codomain's fillers."""
    i = presented_inclusion(pres, top.domain)
    p = LiftingProblem(i=i, f=f, top=top, bottom=bottom).validate()
    lift = extend_over_anodyne(top, pres, bound)
    l_space = i.codomain
    l_cyl = cylinder(l_space)
    fl = compose_maps(lift, f)
    k_cyl = cylinder(i.domain)
    const_k = compose_maps(k_cyl.proj, compose_maps(i, bottom))
    i_cyl = product_map(i, identity_map(delta(1)), k_cyl.prod, l_cyl.prod)
    glue = merge_assignments(
        transport_assignment(l_cyl.end0, fl),
        transport_assignment(l_cyl.end1, bottom),
        transport_assignment(i_cyl, const_k),
    )
    q_pres = interval_pushout_product(pres)
    h = extend_via_steps(q_pres.ambient, glue, q_pres.steps, f.codomain)
    obj = rh(i)
    cert = RhlpCertificate(
        problem=p,
        lift=lift,
        cyl_homotopy=h,
        rh_homotopy=obj.from_cylinder_homotopy(h),
    )
    return validate_rhlp_certificate(cert)


def _edge_cylinder_values(
    m_space: FiniteSpace, homotopy: SimplicialMap, lo: int, hi: int
) -> dict:
    """Values of a triangle-cylinder map on the (lo, hi) edge region, read off
    a normal cylinder homotopy."""
    prod = product(m_space, delta(2)).space
    cyl = cylinder(m_space)
    out = {}
    for g in prod.pres.gens:
        a, t = prod.gen_simplex[g]
        verts = [int(v) for v in t.generator.split(".")]
        if not set(verts) <= {lo, hi}:
            continue
        relabel = {lo: 0, hi: 1}
        seq = tuple(relabel[verts[t.degeneracy(p)]] for p in range(t.dim + 1))
        t1 = delta_simplex(1, seq)
        ref = cyl.space.from_underlying(prod.pres.dims[g], (a, t1))
        out[g] = homotopy(prod.pres.dims[g], ref)
    return out


def concatenate_homotopies_rel(
    h_ab: SimplicialMap,
    h_bc: SimplicialMap,
    sub_gens,
    bound: int,
) -> SimplicialMap:
    """Compose two cylinder homotopies (sharing their middle end and constant
    on a subcomplex) into one, filling the inner-horn cylinder with the
    codomain's fillers."""
    cyl = cylinder_of_homotopy(h_ab)
    m_space = cyl.prod.pr1.codomain
    y = h_ab.codomain
    if compose_maps(cyl.end1, h_ab) != compose_maps(cyl.end0, h_bc):
        raise LiftingError("homotopies do not share their middle end")
    prod = product(m_space, delta(2)).space
    sub = set(sub_gens)
    const_values = {}
    first = compose_maps(cyl.end0, h_ab)
    for g in prod.pres.gens:
        a, t = prod.gen_simplex[g]
        if a.generator in sub:
            # constant in the triangle direction: evaluate the end map at the
            # base component
            const_values[g] = first(prod.pres.dims[g], a)
    glue = merge_assignments(
        _edge_cylinder_values(m_space, h_ab, 0, 1),
        _edge_cylinder_values(m_space, h_bc, 1, 2),
        const_values,
    )
    pres = horn21_pushout_product(m_space, sub)
    phi = extend_via_steps(pres.ambient, glue, pres.steps, y)
    out = {}
    cylm = cylinder(m_space)
    for g in cylm.space.pres.gens:
        a, t = cylm.space.gen_simplex[g]
        verts = [int(v) for v in t.generator.split(".")]
        seq = tuple((0, 2)[verts[t.degeneracy(p)]] for p in range(t.dim + 1))
        t2 = delta_simplex(2, seq)
        ref = prod.from_underlying(cylm.space.pres.dims[g], (a, t2))
        out[g] = phi(cylm.space.pres.dims[g], ref)
    return SimplicialMap(cylm.space, y, out)


def cylinder_of_homotopy(h: SimplicialMap) -> CylinderResult:
    base = h.domain.underlying.a
    return cylinder(base)


def compose_rhlp(
    i: SimplicialMap,
    j: SimplicialMap,
    f: SimplicialMap,
    top: SimplicialMap,
    bottom: SimplicialMap,
    bound: int,
) -> RhlpCertificate:
    """A certificate for the composite of two subcomplex inclusions, given
    that certificates exist against each factor: solve against the first,
    push the homotopy out to the big cylinder with the codomain's fillers,
    solve the corrected square against the second, and concatenate the two
    relative homotopies."""
    k_space, l_space, m_space = i.domain, i.codomain, j.codomain
    ji = compose_maps(i, j)
    p = LiftingProblem(i=ji, f=f, top=top, bottom=bottom).validate()

    p1 = LiftingProblem(i=i, f=f, top=top, bottom=compose_maps(j, bottom)).validate()
    cert_i = solve_rhlp(p1)
    if cert_i is None:
        raise SearchExhausted("no certificate against the first inclusion")

    # extend h on M x {1} glued with the first homotopy over L x delta(1)
    m_cyl = cylinder(m_space)
    l_cyl = cylinder(l_space)
    j_cyl = product_map(j, identity_map(delta(1)), l_cyl.prod, m_cyl.prod)
    l_gens = {j.assignment[g].generator for g in l_space.pres.gens}
    glue = merge_assignments(
        transport_assignment(m_cyl.end1, bottom),
        transport_assignment(j_cyl, cert_i.cyl_homotopy),
    )
    pres_mid = prism_presentation(m_space, l_gens, 1)
    j_hom = extend_via_steps(pres_mid.ambient, glue, pres_mid.steps, f.codomain)
    m_map = compose_maps(m_cyl.end0, j_hom)

    p3 = LiftingProblem(i=j, f=f, top=cert_i.lift, bottom=m_map).validate()
    cert_j = solve_rhlp(p3)
    if cert_j is None:
        raise SearchExhausted("no certificate against the second inclusion")

    k_gens = {ji.assignment[g].generator for g in k_space.pres.gens}
    total_h = concatenate_homotopies_rel(cert_j.cyl_homotopy, j_hom, k_gens, bound)
    obj = rh(ji)
    cert = RhlpCertificate(
        problem=p,
        lift=cert_j.lift,
        cyl_homotopy=total_h,
        rh_homotopy=obj.from_cylinder_homotopy(total_h),
    )
    return validate_rhlp_certificate(cert)
