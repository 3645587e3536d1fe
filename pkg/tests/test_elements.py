import pytest

from grpdtest import fincat
from grpdtest import elements as el
from grpdtest import presheaf as ps
from grpdtest.errors import ValidationError


def test_terminal_gives_base(cat):
    for name in ("delta2", "J", "idem", "BG2"):
        A = cat(name)
        assert fincat.are_isomorphic(el.elements(ps.terminal(A)).total, A)


def test_representable_gives_slice(cat):
    for name in ("delta2", "meet3", "idem"):
        A = cat(name)
        for a in A.objects:
            S, _ = fincat.slice(fincat.identity_functor(A), a)
            assert fincat.are_isomorphic(el.elements(ps.representable(A, a)).total, S)


def test_constant_gives_product(cat):
    A = cat("delta1")
    for cname in ("discrete2", "BG2", "delta1"):
        C = cat(cname)
        E = el.grothendieck(ps.constant(A, C))
        assert fincat.are_isomorphic(E.total, fincat.product(A, C))


def test_sizes_match_count(cat):
    # |objects| = sum |X(a)|; |arrows| = sum over f: a -> a2 of |X(a2)|
    A = cat("delta2")
    X = ps.product(ps.representable(A, "1"), ps.representable(A, "2"))
    E = el.elements(X)
    assert len(E.total.objects) == sum(len(X.value(a).objects) for a in A.objects)
    assert len(E.total.morphisms) == sum(len(X.value(A.tgt(f)).objects) for f in A.morphisms)


def test_zeta_is_fibration_and_ids(cat):
    X = ps.constant(cat("delta1"), cat("BG2"))
    E = el.elements(X)
    assert fincat.is_grothendieck_fibration(E.zeta)
    v = E.objects[("0", "pt")]
    assert v == el.element_id("0", "pt") and E.object_of(v) == ("0", "pt")
    for key, ident in E.arrows.items():
        assert E.arrow_of(ident) == key
    assert E.sidecar()


def test_elements_rejects_cat_valued(cat):
    with pytest.raises(ValidationError):
        el.elements(ps.constant(cat("e"), cat("delta1")))


def test_elements_map_functorial(cat):
    A = cat("delta1")
    y0, y1 = ps.representable(A, "0"), ps.representable(A, "1")
    phi = next(iter(ps.presheaf_morphisms(y0, y1)))
    F = el.elements_map(phi)
    assert F.dom == el.elements(y0).total and F.cod == el.elements(y1).total
    ident = el.elements_map(ps.identity_morphism(y1))
    assert ident == fincat.identity_functor(el.elements(y1).total)


def test_base_change_square(cat):
    B = cat("delta2")
    X = ps.product(ps.representable(B, "2"), ps.constant(B, cat("BG2")))
    for u in fincat.functors(cat("delta1"), B):
        assert el.base_change_square(u, X).is_pullback


def test_iterated_elements(cat):
    P = cat("delta1xdelta1")
    for a in P.objects:
        res = el.iterated_elements_check(ps.representable(P, a))
        assert res.iso.is_isomorphism()
    res = el.iterated_elements_check(ps.constant(P, cat("BG2")))
    assert len(res.left.objects) == len(res.right.objects) == 4


def test_iterated_needs_product(cat):
    with pytest.raises(ValidationError):
        el.iterated_elements_check(ps.terminal(cat("delta2")))
