import pytest

from kanlift.maps import (
    SimplicialMap,
    compose_maps,
    constant_map,
    identity_map,
    inclusion,
)
from kanlift.spaces import (
    boundary_space,
    delta,
    discrete,
    empty_space,
    generator_ref,
    horn_space,
)
from kanlift.constructions import (
    coskeleton0,
    cyclic_group,
    cylinder,
    nerve,
)
from kanlift.anodyne import (
    CellPresentation,
    CellPresentationError,
    HornStep,
    RetractPresentation,
    cone_presentation,
    cone_relative_presentation,
    compose_presentations,
    compose_rhlp,
    extend_over_anodyne,
    extend_through_contractible,
    horn21_pushout_product,
    horn_presentation,
    identity_presentation,
    interval_pushout_product,
    is_contractible,
    prism_presentation,
    restrict_square,
    rhlp_for_anodyne,
    transport_rhlp,
    verify_cell_presentation,
)
from kanlift.lifting import LiftingProblem, solve_rhlp, validate_rhlp_certificate

PT = generator_ref("0", 0)


def to_point(space):
    return constant_map(space, delta(0), PT)


def nerve_z2():
    return nerve(cyclic_group(2), "Z2")


# --- presentation verification -----------------------------------------------------


def test_identity_presentation_verifies():
    pres = identity_presentation(delta(2))
    incl = verify_cell_presentation(pres)
    assert incl.domain.pres.dims == delta(2).pres.dims


def test_horn_presentations_verify():
    for n in (1, 2, 3):
        for k in range(n + 1):
            verify_cell_presentation(horn_presentation(n, k))


def test_prism_presentations_verify():
    cases = [
        (delta(1), set(boundary_space(1).pres.dims)),
        (delta(2), set(horn_space(2, 1).pres.dims)),
        (delta(2), set(boundary_space(2).pres.dims)),
        (delta(1), set()),
    ]
    for b, sub in cases:
        for e in (0, 1):
            verify_cell_presentation(prism_presentation(b, sub, e))


def test_interval_pushout_products_verify():
    for n in (1, 2):
        for k in range(n + 1):
            verify_cell_presentation(interval_pushout_product(horn_presentation(n, k)))


def test_horn21_pushout_products_verify():
    cases = [
        (delta(0), set()),
        (delta(1), set()),
        (delta(1), set(boundary_space(1).pres.dims)),
        (delta(2), set(boundary_space(2).pres.dims)),
    ]
    for m, sub in cases:
        verify_cell_presentation(horn21_pushout_product(m, sub))


def test_cone_presentations_verify():
    for m in [delta(0), delta(1), delta(2), horn_space(2, 1), horn_space(3, 2)]:
        verify_cell_presentation(cone_presentation(m))


def test_cone_relative_presentations_verify():
    for i in [
        inclusion(boundary_space(1), delta(1)),
        inclusion(horn_space(2, 1), delta(2)),
        inclusion(boundary_space(2), delta(2)),
        SimplicialMap(empty_space(), delta(0), {}),
    ]:
        verify_cell_presentation(cone_relative_presentation(i))


def test_wrong_attachment_rejected_with_step_index():
    # swap the horn index so the free face is already present
    good = horn_presentation(2, 1)
    bad = CellPresentation(
        good.ambient, good.start, (HornStep(2, 0, good.steps[0].top),)
    )
    with pytest.raises(CellPresentationError) as err:
        verify_cell_presentation(bad)
    assert err.value.step_index == 0


def test_incomplete_presentation_rejected():
    pres = CellPresentation(delta(1), frozenset({"0", "1"}), ())
    with pytest.raises(CellPresentationError):
        verify_cell_presentation(pres)


def test_composition_of_presentations():
    from kanlift.spaces import subspace

    # vertex 0 -> edge 01 -> delta(2), all sharing delta(2) generator names
    edge = subspace(delta(2), ["0", "1", "0.1"], ("test", "edge01"))
    first = CellPresentation(
        edge, frozenset({"0"}), (HornStep(1, 0, generator_ref("0.1", 1)),)
    )
    verify_cell_presentation(first)
    second = CellPresentation(
        delta(2),
        frozenset({"0", "1", "0.1"}),
        (
            HornStep(1, 0, generator_ref("1.2", 1)),
            HornStep(2, 1, generator_ref("0.1.2", 2)),
        ),
    )
    verify_cell_presentation(second)
    composed = compose_presentations(first, second)
    verify_cell_presentation(composed)
    assert composed.start == frozenset({"0"})
    # mismatched endpoints are rejected
    with pytest.raises(CellPresentationError):
        compose_presentations(second, first)


def test_retract_presentation_verifies():
    # the identity of delta(0) as a retract of horn(1,0) -> delta(1)
    inner = horn_presentation(1, 0)
    k = horn_space(1, 0)  # a single point named "0"
    claimed = identity_map(delta(0))
    sec_dom = SimplicialMap(delta(0), k, {"0": generator_ref("0", 0)})
    ret_dom = SimplicialMap(k, delta(0), {"0": generator_ref("0", 0)})
    sec_cod = SimplicialMap(delta(0), delta(1), {"0": generator_ref("0", 0)})
    ret_cod = constant_map(delta(1), delta(0), PT)
    pres = RetractPresentation(
        inner=inner,
        claimed=claimed,
        sec_dom=sec_dom,
        ret_dom=ret_dom,
        sec_cod=sec_cod,
        ret_cod=ret_cod,
    )
    verify_cell_presentation(pres)
    # a broken retraction is rejected
    bad = RetractPresentation(
        inner=inner,
        claimed=claimed,
        sec_dom=sec_dom,
        ret_dom=ret_dom,
        sec_cod=SimplicialMap(delta(0), delta(1), {"0": generator_ref("1", 0)}),
        ret_cod=ret_cod,
    )
    with pytest.raises(CellPresentationError):
        verify_cell_presentation(bad)


# --- extension over presented inclusions ----------------------------------------------


def test_extend_over_horn_in_nerve():
    n2 = nerve_z2()
    base = ("o", ())
    u = SimplicialMap(
        horn_space(2, 1),
        n2,
        {"0": base, "1": base, "2": base, "0.1": ("o", ("g1",)), "1.2": ("o", ("g1",))},
    ).validate()
    ext = extend_over_anodyne(u, horn_presentation(2, 1))
    ext.validate()
    # the composite around the horn multiplies in the group
    assert ext.assignment["0.2"] == ("o", ("g0",))


def test_extend_over_retract():
    inner = horn_presentation(1, 0)
    x = discrete(("a", "b"))
    pres = RetractPresentation(
        inner=inner,
        claimed=identity_map(delta(0)),
        sec_dom=SimplicialMap(delta(0), horn_space(1, 0), {"0": generator_ref("0", 0)}),
        ret_dom=SimplicialMap(horn_space(1, 0), delta(0), {"0": PT}),
        sec_cod=SimplicialMap(delta(0), delta(1), {"0": generator_ref("0", 0)}),
        ret_cod=constant_map(delta(1), delta(0), PT),
    )
    u = SimplicialMap(delta(0), x, {"0": generator_ref("a", 0)})
    ext = extend_over_anodyne(u, pres)
    assert ext(0, PT) == generator_ref("a", 0)


# --- contractibility and the coned extensions ------------------------------------------


def test_is_contractible():
    assert is_contractible(delta(1)) is not None
    assert is_contractible(horn_space(2, 1)) is not None
    assert is_contractible(discrete(("a", "b"))) is None
    assert is_contractible(empty_space()) is None


def test_extend_through_contractible_point_domain():
    x = coskeleton0(("a", "b"))
    f = SimplicialMap(delta(0), x, {"0": ("a",)})
    null_h, ext = extend_through_contractible(
        f, identity_map(delta(0)), f, inclusion(delta(0), delta(0)), 2
    )
    assert ext(0, PT) == ("a",)


def test_extend_through_contractible_horn_into_nerve():
    n2 = nerve_z2()
    base = ("o", ())
    u = SimplicialMap(
        horn_space(2, 1),
        n2,
        {"0": base, "1": base, "2": base, "0.1": ("o", ("g1",)), "1.2": ("o", ("g1",))},
    ).validate()
    null_h, ext = extend_through_contractible(
        u, identity_map(horn_space(2, 1)), u, inclusion(horn_space(2, 1), delta(2)), 4
    )
    ext.validate()
    assert compose_maps(inclusion(horn_space(2, 1), delta(2)), ext) == u
    # the null-homotopy ends at a constant map
    cyl = cylinder(horn_space(2, 1))
    end1 = compose_maps(cyl.end1, null_h)
    values = {end1.assignment[g] for g in horn_space(2, 1).pres.gens if horn_space(2, 1).pres.dims[g] == 0}
    assert len(values) == 1


def test_extend_through_contractible_boundary_into_coskeleton():
    x = coskeleton0(("a", "b"))
    f = SimplicialMap(boundary_space(1), x, {"0": ("a",), "1": ("b",)}).validate()
    null_h, ext = extend_through_contractible(
        f, _interval_factor(f), _interval_proj(x), inclusion(boundary_space(1), delta(1)), 3
    )
    ext.validate()
    assert compose_maps(inclusion(boundary_space(1), delta(1)), ext) == f


def _interval_factor(f):
    return SimplicialMap(
        boundary_space(1),
        delta(1),
        {"0": generator_ref("0", 0), "1": generator_ref("1", 0)},
    )


def _interval_proj(x):
    return SimplicialMap(
        delta(1), x, {"0": ("a",), "1": ("b",), "0.1": ("a", "b")}
    ).validate()


def test_extend_through_contractible_rejects_bad_factorization():
    x = coskeleton0(("a", "b"))
    f = SimplicialMap(boundary_space(1), x, {"0": ("a",), "1": ("b",)}).validate()
    wrong_proj = SimplicialMap(
        delta(1), x, {"0": ("b",), "1": ("a",), "0.1": ("b", "a")}
    ).validate()
    with pytest.raises(Exception):
        extend_through_contractible(
            f, _interval_factor(f), wrong_proj, inclusion(boundary_space(1), delta(1)), 3
        )


# --- certificate transport along homotopies of squares ----------------------------------


def _swap_homotopy():
    x = coskeleton0(("a", "b"))
    kcyl = cylinder(boundary_space(1))
    assignment = {}
    for g in kcyl.space.pres.gens:
        a, t = kcyl.space.gen_simplex[g]
        from kanlift.maps import delta_vertices

        tv = delta_vertices(t)
        first = "a" if a.generator == "0" else "b"
        second = "b" if a.generator == "0" else "a"
        assignment[g] = tuple(first if tt == 0 else second for tt in tv)
    return SimplicialMap(kcyl.space, x, assignment).validate()


def test_transport_rhlp_swapped_endpoints():
    x = coskeleton0(("a", "b"))
    f = to_point(x)
    i = inclusion(boundary_space(1), delta(1))
    h_k = _swap_homotopy()
    h_l = constant_map(cylinder(delta(1)).space, delta(0), PT)
    p0 = restrict_square(h_k, h_l, i, f, 0)
    cert0 = solve_rhlp(p0)
    assert cert0 is not None
    cert1 = transport_rhlp(h_k, h_l, i, f, cert0, 4)
    validate_rhlp_certificate(cert1)
    # the transported certificate solves the time-1 square
    p1 = restrict_square(h_k, h_l, i, f, 1)
    assert cert1.problem.top == p1.top and cert1.problem.bottom == p1.bottom


def test_transport_rhlp_constant_homotopy_roundtrip():
    x = coskeleton0(("a", "b"))
    f = to_point(x)
    i = inclusion(boundary_space(1), delta(1))
    top = SimplicialMap(boundary_space(1), x, {"0": ("a",), "1": ("b",)}).validate()
    kcyl = cylinder(boundary_space(1))
    h_k = compose_maps(kcyl.proj, top)
    h_l = constant_map(cylinder(delta(1)).space, delta(0), PT)
    cert0 = solve_rhlp(restrict_square(h_k, h_l, i, f, 0))
    cert1 = transport_rhlp(h_k, h_l, i, f, cert0, 4)
    validate_rhlp_certificate(cert1)
    assert cert1.problem.top == cert0.problem.top


def test_transport_rhlp_rejects_invalid_certificate():
    x = coskeleton0(("a", "b"))
    f = to_point(x)
    i = inclusion(boundary_space(1), delta(1))
    h_k = _swap_homotopy()
    h_l = constant_map(cylinder(delta(1)).space, delta(0), PT)
    p0 = restrict_square(h_k, h_l, i, f, 0)
    cert0 = solve_rhlp(p0)
    broken = type(cert0)(
        problem=cert0.problem,
        lift=constant_map(delta(1), x, ("a",)),
        cyl_homotopy=cert0.cyl_homotopy,
        rh_homotopy=cert0.rh_homotopy,
    )
    with pytest.raises(Exception):
        transport_rhlp(h_k, h_l, i, f, broken, 4)


# --- certificates from filler replays -----------------------------------------------------


def test_rhlp_for_anodyne_horn_in_nerve():
    n2 = nerve_z2()
    base = ("o", ())
    u = SimplicialMap(
        horn_space(2, 1),
        n2,
        {"0": base, "1": base, "2": base, "0.1": ("o", ("g1",)), "1.2": ("o", ("g0",))},
    ).validate()
    cert = rhlp_for_anodyne(
        horn_presentation(2, 1), to_point(n2), u, to_point(delta(2)), 4
    )
    validate_rhlp_certificate(cert)


def test_rhlp_for_anodyne_identity():
    x = discrete(("a", "b"))
    pres = identity_presentation(delta(0))
    top = SimplicialMap(delta(0), x, {"0": generator_ref("a", 0)})
    cert = rhlp_for_anodyne(pres, identity_map(x), top, top, 2)
    validate_rhlp_certificate(cert)
    assert cert.lift == top


def test_rhlp_for_anodyne_discrete_targets():
    x = discrete(("a",))
    y = discrete(("p", "q"))
    f = SimplicialMap(x, y, {"a": generator_ref("p", 0)})
    for n, k in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]:
        top = constant_map(horn_space(n, k), x, generator_ref("a", 0))
        bottom = constant_map(delta(n), y, generator_ref("p", 0))
        cert = rhlp_for_anodyne(horn_presentation(n, k), f, top, bottom, n + 2)
        validate_rhlp_certificate(cert)


# --- composite certificates -----------------------------------------------------------------


def test_compose_rhlp_vertex_then_edge():
    x = coskeleton0(("a", "b"))
    f = to_point(x)
    i = SimplicialMap(empty_space(), delta(0), {})
    j = SimplicialMap(delta(0), delta(1), {"0": generator_ref("0", 0)})
    top = SimplicialMap(empty_space(), x, {})
    bottom = constant_map(delta(1), delta(0), PT)
    cert = compose_rhlp(i, j, f, top, bottom, 4)
    validate_rhlp_certificate(cert)


def test_compose_rhlp_identity_second_factor():
    x = coskeleton0(("a", "b"))
    f = to_point(x)
    i = inclusion(boundary_space(1), delta(1))
    j = identity_map(delta(1))
    top = SimplicialMap(boundary_space(1), x, {"0": ("a",), "1": ("b",)}).validate()
    bottom = constant_map(delta(1), delta(0), PT)
    cert = compose_rhlp(i, j, f, top, bottom, 4)
    validate_rhlp_certificate(cert)
    assert compose_maps(compose_maps(i, j), cert.lift) == top
