import pytest

from grpdtest import fincat
from grpdtest import presheaf as ps
from grpdtest.errors import DiscretenessViolation, FunctorialityViolation, NaturalityViolation


def test_representable_values(cat):
    D2 = cat("delta2")
    y1 = ps.representable(D2, "1")
    assert [len(y1.value(a).objects) for a in D2.objects] == [1, 1, 0]
    assert y1.kind == "set"


def test_global_sections_of_representables(cat):
    # with a terminal object t, sections of y(a) correspond to maps t -> a
    for name in ("e", "delta1", "delta2", "meet3_op", "delta1xdelta1"):
        A = cat(name)
        t = fincat.extremal_objects(A)[0][0]
        for a in A.objects:
            assert len(ps.global_sections(ps.representable(A, a))) == len(A.hom(t, a))


def test_terminal_and_constant(cat):
    A = cat("delta1")
    T = ps.terminal(A)
    assert all(len(T.value(a).objects) == 1 for a in A.objects)
    K = ps.constant(A, cat("BG2"))
    assert K.kind == "grpd"
    assert ps.constant(A, cat("delta1")).kind == "cat"
    assert ps.constant(A, cat("discrete2")).kind == "set"


def test_set_presheaf_rejects_nondiscrete(cat):
    A = cat("e")
    with pytest.raises(DiscretenessViolation):
        ps.SetPresheaf(A, {"pt": cat("J")}, {"id_pt": fincat.identity_functor(cat("J"))})


def test_missing_action(cat):
    A = cat("delta1")
    with pytest.raises(FunctorialityViolation):
        ps.CatPresheaf(A, {a: cat("e") for a in A.objects}, {})


def test_product_and_projections(cat):
    A = cat("delta1")
    X, Y = ps.representable(A, "1"), ps.constant(A, cat("BG2"))
    P = ps.product(X, Y)
    assert [len(P.value(a).morphisms) for a in A.objects] == [2, 2]
    for side, factor in ((0, X), (1, Y)):
        pr = ps.product_projection(P, factor, side)
        assert pr.target is factor


def test_morphism_naturality_checked(cat):
    A = cat("delta1")
    y0, y1 = ps.representable(A, "0"), ps.representable(A, "1")
    maps = list(ps.presheaf_morphisms(y0, y1))
    assert len(maps) == len(A.hom("0", "1")) == 1
    assert list(ps.presheaf_morphisms(y1, y0)) == []
    K = ps.constant(A, cat("discrete2"))
    D = K.value("0")
    swap = fincat.FinFunctor(D, D, {"x0": "x1", "x1": "x0"}, {"id_x0": "id_x1", "id_x1": "id_x0"})
    with pytest.raises(NaturalityViolation):
        ps.PresheafMorphism(K, K, {"0": swap, "1": fincat.identity_functor(D)})
    twice = ps.PresheafMorphism(K, K, {"0": swap, "1": swap})
    assert twice.after(twice).same_as(ps.identity_morphism(K))


def test_restrict_functoriality(cat):
    A, B = cat("delta1"), cat("delta2")
    u = next(iter(fincat.functors(A, B)))
    X = ps.representable(B, "2")
    R = ps.restrict(u, X)
    for f in A.morphisms:
        assert R.action(f) == X.action(u.mor(f))
    ident = ps.identity_morphism(X)
    assert ps.restrict_morphism(u, ident).same_as(ps.identity_morphism(R))


def test_two_morphisms_and_inverse(cat):
    A = cat("e")
    J = ps.constant(A, cat("J"))
    phis = list(ps.presheaf_morphisms(J, J))
    assert len(phis) == 4
    const0 = next(p for p in phis if p["pt"].ob("0") == p["pt"].ob("1") == "0")
    const1 = next(p for p in phis if p["pt"].ob("0") == p["pt"].ob("1") == "1")
    cells = ps.two_morphisms(const0, const1)
    assert len(cells) == 1
    inv = cells[0].inverse()
    assert ps.is_two_morphism(const1, const0, inv.components)


def test_delta1_contractibility(cat):
    I = ps.delta1_interval()
    for name, expected in (("e", True), ("delta2", True), ("meet3", True), ("discrete2", False),
                           ("BG2", False)):
        assert ps.is_contractible(I, cat(name)) is expected, name
    assert ps.try_contractible(I, cat("delta2"), cap=3) is None


def test_homotopy_relation(cat):
    I = ps.delta1_interval()
    D1 = cat("delta1")
    maps = list(fincat.functors(D1, D1))
    for f in maps:
        assert ps.enumerate_homotopies(I, f, f).homotopic
        for g in maps:
            fg = ps.enumerate_homotopies(I, f, g).homotopic
            assert fg == ps.enumerate_homotopies(I, g, f).homotopic
    assert ps.enumerate_homotopies(I, maps[0], maps[-1]).classes == 1


def test_interval_points_validated(cat):
    from grpdtest.errors import ValidationError

    with pytest.raises(ValidationError):
        ps.Interval(cat("delta1"), "0", "7", ambient="cat")
