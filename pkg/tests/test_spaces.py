import pytest

from kanlift.ordinals import OrdinalMap, all_monotone, coface, codegeneracy, identity
from kanlift.spaces import (
    FinitePresentation,
    FiniteSpace,
    PresentationError,
    SimplexRef,
    boundary_space,
    delta,
    discrete,
    empty_space,
    generator_ref,
    horn_space,
    isomorphic,
    sphere,
    subspace,
    vertex_id,
)

# --- independent oracles ----------------------------------------------------
# Level counts of the standard objects, computed straight from monotone maps.
# A level-n simplex of delta(m) is a monotone [n] -> [m]; it lies in the
# boundary iff not surjective, and in the k-horn iff its image misses some
# vertex other than k.


def oracle_delta_level(m, n):
    return sum(1 for _ in all_monotone(n, m))


def oracle_boundary_level(m, n):
    return sum(1 for f in all_monotone(n, m) if not f.is_surjective)


def oracle_horn_level(m, k, n):
    count = 0
    for f in all_monotone(n, m):
        missed = set(range(m + 1)) - set(f.values)
        if any(j != k for j in missed):
            count += 1
    return count


def oracle_nondegenerate(m, n, kind, k=None):
    # non-degenerate level-n simplices are the injective monotone maps
    count = 0
    for f in all_monotone(n, m):
        if not f.is_injective:
            continue
        missed = set(range(m + 1)) - set(f.values)
        if kind == "delta":
            count += 1
        elif kind == "boundary" and missed:
            count += 1
        elif kind == "horn" and any(j != k for j in missed):
            count += 1
    return count


# --- tests -------------------------------------------------------------------


def test_delta_levels_match_monotone_enumeration():
    for m in range(5):
        for n in range(5):
            assert delta(m).level_count(n) == oracle_delta_level(m, n)


def test_delta1_level1_is_3():
    assert delta(1).level_count(1) == 3


def test_boundary_and_horn_levels_match_oracle():
    for m in range(1, 5):
        for n in range(5):
            assert boundary_space(m).level_count(n) == oracle_boundary_level(m, n)
            for k in range(m + 1):
                assert horn_space(m, k).level_count(n) == oracle_horn_level(m, k, n)


def test_nondegenerate_counts_match_oracle():
    for m in range(1, 5):
        for n in range(5):
            assert delta(m).nondegenerate_count(n) == oracle_nondegenerate(m, n, "delta")
            assert boundary_space(m).nondegenerate_count(n) == oracle_nondegenerate(
                m, n, "boundary"
            )
            for k in range(m + 1):
                assert horn_space(m, k).nondegenerate_count(n) == oracle_nondegenerate(
                    m, n, "horn", k
                )


def test_boundary2_generator_counts():
    b = boundary_space(2)
    assert b.nondegenerate_count(0) == 3
    assert b.nondegenerate_count(1) == 3
    assert b.nondegenerate_count(2) == 0


def test_horn21_generator_counts():
    h = horn_space(2, 1)
    assert h.nondegenerate_count(0) == 3
    assert h.nondegenerate_count(1) == 2


def test_sphere_counts_and_conventions():
    assert sphere(-1).level_count(3) == 0
    assert sphere(0).nondegenerate_count(0) == 2
    s1 = sphere(1)
    assert s1.nondegenerate_count(0) == 1
    assert s1.nondegenerate_count(1) == 1


def test_empty_space_levels():
    for n in range(4):
        assert empty_space().level_count(n) == 0


def test_face_of_standard_edge():
    d1 = delta(1)
    edge = generator_ref("0.1", 1)
    assert d1.face(1, 1, edge) == generator_ref("0", 0)
    assert d1.face(0, 1, edge) == generator_ref("1", 0)


def test_degeneracy_then_face_is_identity():
    d2 = delta(2)
    for v in ["0", "1", "2"]:
        ref = generator_ref(v, 0)
        up = d2.degenerate(0, 0, ref)
        assert d2.face(0, 1, up) == ref
        assert d2.face(1, 1, up) == ref


def test_apply_functorial_on_delta2():
    d2 = delta(2)
    top = generator_ref("0.1.2", 2)
    # d_0 s_0 = id on level-1 simplices, through apply
    for x in d2.level(1):
        assert d2.face(0, 2, d2.degenerate(0, 1, x)) == x
    # contravariant functoriality: apply(compose(f, g), x) == apply(f, apply(g, x))
    from kanlift.ordinals import compose

    g = coface(2, 1)  # [1] -> [2]
    f = codegeneracy(1, 0)  # [2] -> [1]
    assert d2.apply(compose(f, g), top) == d2.apply(f, d2.apply(g, top))


def test_simplicial_identities_validated_on_fixtures():
    for space in [delta(3), boundary_space(3), horn_space(3, 1), sphere(2)]:
        space.presentation.check_identities(space)


def test_presentation_rejects_identity_violation():
    # a 2-cell whose faces do not share vertices correctly
    dims = {"a": 0, "b": 0, "c": 0, "e": 1, "f": 1, "g": 1, "T": 2}
    mk = lambda g: generator_ref(g, 0)
    faces = {
        "e": (mk("b"), mk("a")),
        "f": (mk("c"), mk("a")),
        "g": (mk("c"), mk("b")),
        # wrong order: d0 and d2 swapped relative to the simplicial identities
        "T": (generator_ref("e", 1), generator_ref("f", 1), generator_ref("g", 1)),
    }
    pres = FinitePresentation(dims, faces)
    space = FiniteSpace(pres, ("test", "bad"))
    with pytest.raises(PresentationError):
        pres.check_identities(space)


def test_presentation_rejects_unknown_face_target():
    with pytest.raises(PresentationError):
        FinitePresentation(
            {"e": 1, "a": 0},
            {"e": (generator_ref("a", 0), generator_ref("missing", 0))},
        )


def test_normalize_round_trip():
    d2 = delta(2)
    for n in range(4):
        for x in d2.level(n):
            n0, x0, s = d2.normalize(n, x)
            assert not (n0 > 0 and d2.is_degenerate(n0, x0))
            assert d2.apply(s, x0) == x


def test_isomorphic_reflexive():
    for space in [delta(2), boundary_space(2), horn_space(2, 0), sphere(1), discrete(("a", "b"))]:
        phi = isomorphic(space, space)
        assert phi is not None and all(phi[g] == g for g in phi)


def test_isomorphic_symmetric_on_renamed_copy():
    d1 = delta(1)
    renamed = FiniteSpace(
        FinitePresentation(
            {"x": 0, "y": 0, "e": 1},
            {"e": (generator_ref("y", 0), generator_ref("x", 0))},
        ),
        ("test", "interval"),
    )
    assert isomorphic(d1, renamed) is not None
    assert isomorphic(renamed, d1) is not None


def test_not_isomorphic_different_generator_counts():
    two_points = discrete(("a", "b"))
    assert isomorphic(delta(1), two_points) is None
    assert isomorphic(delta(0), two_points) is None


def test_subspace_closure_check():
    d2 = delta(2)
    with pytest.raises(ValueError):
        subspace(d2, ["0.1"], ("test", "open-edge"))
    sub = subspace(d2, ["0", "1", "0.1"], ("test", "edge"))
    assert sub.nondegenerate_count(1) == 1


def test_vertex_id_format():
    assert vertex_id((0, 2)) == "0.2"


def test_level_order_is_canonical_and_stable():
    b = boundary_space(2)
    assert b.level(1) == b.level(1)
    assert list(b.level(1)) == sorted(b.level(1), key=lambda r: (r.generator, r.degeneracy.values))
