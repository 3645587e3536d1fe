import pytest

from grpdtest import cosets, fincat, grpd
from grpdtest.grpd import GroupPresentation, TRIVIAL_GROUP, group_compare, word_from_strings


def word(text):
    """Letters are generators; uppercase means inverse."""
    return word_from_strings([c if c.islower() else f"{c.lower()}^-1" for c in text])


def pres(gens, *rels):
    return GroupPresentation(tuple(gens), tuple(word(r) for r in rels))


def von_dyck(p, q, r):
    return pres("ab", "a" * p, "b" * q, "ab" * r)


# orders of the finite triangle groups <a, b | a^p, b^q, (ab)^r>
@pytest.mark.parametrize("pqr,order", [((2, 2, 3), 6), ((2, 3, 3), 12), ((2, 3, 4), 24), ((2, 3, 5), 60),
                                       ((2, 2, 5), 10)])
def test_coset_enumeration_orders(pqr, order):
    P = von_dyck(*pqr)
    table = cosets.enumerate_cosets(P.generators, P.relators)
    assert table is not None and table.size == order


def test_coset_budget():
    P = pres("ab", "abAB")  # free abelian of rank 2: infinite
    assert cosets.enumerate_cosets(P.generators, P.relators, budget=500) is None


def test_word_helpers():
    assert grpd.free_reduce(word("abBAc")) == word("c")
    assert grpd.invert_word(word("ab")) == word("BA")
    assert grpd.cyclic_reduce(word("abA")) == word("b")
    assert grpd.word_to_strings(word("aB")) == ["a", "b^-1"]


def test_abelianization():
    assert str(grpd.abelianization(von_dyck(2, 3, 3))) == "Z/3"
    assert grpd.abelianization(pres("ab", "abAB")).free_rank == 2
    assert grpd.abelianization(TRIVIAL_GROUP).free_rank == 0


def test_group_compare():
    assert group_compare(von_dyck(2, 3, 5), TRIVIAL_GROUP).is_no
    assert group_compare(pres("a", "a"), TRIVIAL_GROUP).is_yes
    Z6 = pres("a", "aaaaaa")
    Z2xZ3 = pres("ab", "aa", "bbb", "abAB")
    v = group_compare(Z6, Z2xZ3)
    assert v.is_yes
    assert grpd.check_isomorphism_evidence(Z6, v)
    assert group_compare(von_dyck(2, 2, 3), Z6).is_no


def test_group_compare_unknown_on_budget():
    # Z and BS(1, 2) share the abelianization Z and are both infinite
    assert group_compare(pres("a"), pres("ab", "abABB"), budget=200).is_unknown


def test_simplify_keeps_group():
    P = pres("abc", "c", "aB")
    Q = grpd.simplify(P)
    assert len(Q.generators) <= 1
    assert group_compare(Q, pres("a")).answer == group_compare(P, pres("a")).answer


def test_localize_and_vertex_group(cat):
    G = grpd.localize(cat("BG3"))
    assert str(grpd.abelianization(grpd.vertex_group(G))) == "Z/3"
    assert len(grpd.localize(cat("discrete2")).components) == 2
    assert group_compare(grpd.vertex_group(grpd.localize(cat("delta2"))), TRIVIAL_GROUP).is_yes


def test_unknown_component(cat):
    from grpdtest.errors import UnknownComponent

    with pytest.raises(UnknownComponent):
        grpd.vertex_group(grpd.localize(cat("e")), component=5)


def test_core_and_discrete(cat):
    core = grpd.core(cat("delta2"))
    assert grpd.is_discrete(core)
    assert grpd.is_groupoid(cat("J")) and not grpd.is_groupoid(cat("delta1"))


@pytest.mark.parametrize("name,answer", [
    ("delta1", "Yes"), ("BG2", "No"), ("idem", "Yes"), ("J", "Yes"), ("discrete2", "No"),
    ("meet3", "Yes"), ("delta1xdelta1", "Yes"),
])
def test_w1_to_point(cat, name, answer):
    assert grpd.w1_class(fincat.to_terminal(cat(name), cat("e"))).answer.value == answer


def test_w1_between_groupoids(cat):
    BG3 = cat("BG3")
    inv = fincat.FinFunctor(BG3, BG3, {"pt": "pt"}, {"id_pt": "id_pt", "s": "s2", "s2": "s"})
    assert grpd.w1_class(inv).is_yes
    trivial = fincat.constant_functor(BG3, BG3, "pt")
    assert grpd.w1_class(trivial).is_no
    assert grpd.groupoid_equivalence(fincat.to_terminal(cat("J"), cat("e"))).is_yes
