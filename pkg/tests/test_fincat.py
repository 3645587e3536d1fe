import itertools
from math import comb

import pytest

from grpdtest import fincat
from grpdtest.errors import (
    AssociativityViolation,
    FunctorialityViolation,
    IdentityViolation,
    InvalidPosetRelation,
    MissingComposite,
    SizeExceeded,
)
from grpdtest.fincat import FinCategory, FinFunctor


def monotone_maps(m, n):
    """Brute-force count of monotone maps [m] -> [n]."""
    return sum(all(a <= b for a, b in zip(f, f[1:]))
               for f in itertools.product(range(n + 1), repeat=m + 1))


@pytest.mark.parametrize("m,n", [(0, 0), (1, 1), (2, 1), (1, 3), (3, 2)])
def test_functors_between_ordinals(m, n):
    got = sum(1 for _ in fincat.functors(fincat.delta(m), fincat.delta(n)))
    assert got == monotone_maps(m, n) == comb(m + n + 1, n)


def test_functors_into_product_square():
    square = fincat.product(fincat.delta(1), fincat.delta(1))
    assert sum(1 for _ in fincat.functors(fincat.delta(3), square)) == monotone_maps(3, 1) ** 2 == 25


def test_functor_cap():
    with pytest.raises(SizeExceeded):
        list(fincat.functors(fincat.delta(3), fincat.delta(3), cap=5))


def test_delta_shape():
    D = fincat.delta(2)
    assert len(D.objects) == 3
    assert len(D.morphisms) == 6
    assert D.compose("1_2", "0_1") == "0_2"


def test_poset_rejects_cycle():
    with pytest.raises(InvalidPosetRelation):
        fincat.poset(["a", "b"], [("a", "b"), ("b", "a")])


def _two_arrows(compose):
    return FinCategory(["x"], {"id_x": ("x", "x"), "s": ("x", "x")}, {"x": "id_x"}, compose,
                       fill_identities=True)


def test_missing_composite():
    with pytest.raises(MissingComposite):
        _two_arrows({})


def test_valid_monoid_and_associativity():
    assert len(_two_arrows({("s", "s"): "s"}).morphisms) == 2
    with pytest.raises((AssociativityViolation, IdentityViolation)):
        FinCategory(["x"], {"id_x": ("x", "x"), "s": ("x", "x"), "t": ("x", "x")}, {"x": "id_x"},
                    {("s", "s"): "t", ("s", "t"): "s", ("t", "s"): "t", ("t", "t"): "t"},
                    fill_identities=True)


def test_functoriality_checked():
    D1 = fincat.delta(1)
    BG2 = fincat.cyclic_group(2)
    with pytest.raises(FunctorialityViolation):
        FinFunctor(BG2, D1, {o: "0" for o in BG2.objects},
                   {m: ("0_1" if not BG2.is_identity(m) else "id_0") for m in BG2.morphisms})


def test_product_and_projections():
    P = fincat.product(fincat.delta(1), fincat.cyclic_group(2))
    assert len(P.objects) == 2 and len(P.morphisms) == 3 * 2
    for side in (0, 1):
        pr = fincat.projection(P, side)
        assert pr.cod == P.factors[side]
    d = fincat.diagonal(fincat.delta(1))
    assert fincat.projection(d.cod, 0).after(d) == fincat.identity_functor(fincat.delta(1))


def test_coproduct_and_opposite():
    D = fincat.coproduct(fincat.delta(1), fincat.terminal())
    assert len(fincat.connected_components(D)) == 2
    op = fincat.opposite(fincat.delta(1))
    assert fincat.extremal_objects(op) == (["0"], ["1"])


def test_extremal_and_iso_classes(cat):
    assert fincat.extremal_objects(cat("delta2")) == (["2"], ["0"])
    assert fincat.extremal_objects(cat("discrete2")) == ([], [])
    assert len(fincat.iso_classes(cat("J"))) == 1
    assert len(fincat.iso_classes(cat("delta2"))) == 3


def test_slice_sizes(cat):
    D2 = cat("delta2")
    ident = fincat.identity_functor(D2)
    for b, size in (("0", 1), ("1", 2), ("2", 3)):
        S, proj = fincat.slice(ident, b)
        assert len(S.objects) == size
        assert fincat.extremal_objects(S)[0]


def test_natural_transformations(cat):
    D1 = cat("delta1")
    fs = list(fincat.functors(D1, D1))
    counts = {(F.ob("0"), F.ob("1"), G.ob("0"), G.ob("1")): len(fincat.natural_transformations(F, G))
              for F in fs for G in fs}
    # a transformation exists iff F <= G pointwise, and is then unique
    for (f0, f1, g0, g1), n in counts.items():
        assert n == int(f0 <= g0 and f1 <= g1)


def test_grothendieck_fibration_projection(cat):
    P = fincat.product(cat("delta1"), cat("BG2"))
    assert fincat.is_grothendieck_fibration(fincat.projection(P, 0))
    # 0 -> 1 in Delta_1 viewed over the terminal category is a fibration too
    assert fincat.is_grothendieck_fibration(fincat.to_terminal(cat("delta1")))


def test_find_isomorphism(cat):
    assert fincat.are_isomorphic(fincat.opposite(cat("delta2")), cat("delta2"))
    assert not fincat.are_isomorphic(cat("meet3"), cat("meet3_op"))
    iso = fincat.find_isomorphism(fincat.opposite(cat("meet3")), cat("meet3_op"))
    assert iso is not None and iso.is_isomorphism()
