import pytest

from grpdtest import adjoints, fincat, homology as hm, testcat
from grpdtest import presheaf as ps
from grpdtest.errors import CatalogEntryLacksTerminal


def test_hierarchy_of_point(cat):
    e = cat("e")
    rep = testcat.check_hierarchy(e, catalog=[("e", e), ("delta1", cat("delta1"))])
    assert rep.aspherical.is_yes
    assert rep.totally_aspherical.is_yes
    assert rep.local_test.is_no
    assert rep.weak_test.is_no
    assert rep.cross_check and rep.implications_hold()
    assert rep.local_test.answer == rep.local_test_classical.answer
    assert rep.to_dict()["catalog"] == ["e", "delta1"]


@pytest.mark.parametrize("name", ["delta1", "delta2", "J", "idem", "BG2", "discrete2", "meet3"])
def test_hierarchy_is_coherent(cat, name):
    rep = testcat.check_hierarchy(cat(name), weak_test=False)
    assert rep.implications_hold()
    assert rep.cross_check
    assert rep.local_test.answer == rep.local_test_classical.answer


def test_local_test_fails_at_the_point(cat):
    # el(e x L) for L = I*(Delta_1) over e is two isolated points
    i = adjoints.slice_diagram(cat("e"))
    L = adjoints.lawvere_interval(i).carrier
    assert testcat.is_aspherical_presheaf(L).is_no
    assert testcat.is_locally_aspherical(ps.terminal(cat("e"))).is_yes


def test_totally_aspherical(cat):
    assert testcat.is_totally_aspherical(cat("delta1xdelta1")).is_yes
    assert testcat.is_totally_aspherical(cat("discrete2")).is_no


def test_catalog_entry_needs_terminal(cat):
    with pytest.raises(CatalogEntryLacksTerminal):
        testcat.weak_test_evidence(cat("e"), [("discrete2", cat("discrete2"))])


def test_default_catalog(cat):
    names = [n for n, _ in testcat.default_catalog()]
    assert names[:2] == ["e", "delta1"]
    assert all(fincat.extremal_objects(C)[0] for _, C in testcat.default_catalog())


def test_multiplication_table_exact():
    table = testcat.multiplication_table(adjoints.delta1_multiplication())
    assert table == {(a, b): str(int(a) + int(b) - int(a) * int(b)) for a in "01" for b in "01"}


def test_verify_multiplicative_detects_wrong_op(cat):
    assert testcat.verify_multiplicative(testcat.delta1_multiplicative())
    D1 = cat("delta1")
    P = fincat.product(D1, D1)
    # projection to the first factor: 0 is not a left unit
    bad = testcat.delta1_multiplicative(fincat.projection(P, 0))
    res = testcat.verify_multiplicative(bad)
    assert not res and res.failing == "left unit"


@pytest.mark.parametrize("name", ["e", "delta1", "delta2", "BG2", "idem"])
def test_lawvere_multiplicative(cat, name):
    assert testcat.verify_multiplicative(testcat.lawvere_multiplicative(cat(name)))


def test_strong_separation(cat):
    A = cat("delta1")
    L = adjoints.lawvere_interval(adjoints.slice_diagram(A))
    assert testcat.is_strongly_separating(L)
    family = [ps.terminal(A), ps.representable(A, "0"), ps.representable(A, "1")]
    assert testcat.strongly_separating_on(L, family)
    J = ps.Interval(cat("J"), "0", "1", ambient="cat")
    assert not testcat.is_strongly_separating(J)
    JX = ps.constant(A, cat("J"))
    Jp = ps.Interval(JX, {a: "0" for a in A.objects}, {a: "1" for a in A.objects})
    assert not testcat.strongly_separating_on(Jp, family)


def test_canonical_iso_suite(cat):
    A = cat("delta2")
    X = ps.product(ps.representable(A, "2"), ps.constant(A, cat("BG2")))
    for a in A.objects:
        rep = testcat.canonical_iso_suite(A, X, a)
        assert rep.ok
        assert rep.sizes[0] == rep.sizes[1] == rep.sizes[2]
    Y = ps.terminal(A)
    phi = ps.to_terminal_morphism(ps.representable(A, "1"), Y)
    assert testcat.canonical_iso_suite(A, ps.representable(A, "1"), "2", phi).ok


def test_weak_test_on_winf(cat):
    e = cat("e")
    assert testcat.weak_test_evidence(e, [("e", e)], hm.WINF).is_yes
