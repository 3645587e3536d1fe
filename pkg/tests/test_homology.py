from math import comb

import pytest

from grpdtest import fincat, homology as hm
from grpdtest import presheaf as ps


def cyclic_group_homology(n, k):
    """H_k(Z/n): Z in degree 0, Z/n in odd degrees, 0 otherwise."""
    if k == 0:
        return (1, [])
    return (0, [n] if k % 2 and n > 1 else [])


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_nerve_sizes_of_ordinals(n):
    # nondegenerate k-simplices of N(Delta_n) are (k+1)-subsets of n+1 points
    N = hm.nerve(fincat.delta(n), 4)
    assert N.sizes() == [comb(n + 1, k + 1) for k in range(5)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_nerve_sizes_of_cyclic_groups(n):
    N = hm.nerve(fincat.cyclic_group(n), 4)
    assert N.sizes() == [(n - 1) ** k for k in range(5)]


def test_spot_values(cat):
    assert hm.nerve(cat("delta1"), 3).sizes() == [2, 1, 0, 0]
    assert hm.nerve(cat("BG2"), 3).sizes() == [1, 1, 1, 1]
    assert hm.nerve(cat("e"), 5).sizes() == [1, 0, 0, 0, 0, 0]


def test_boundary_squares_to_zero(cat):
    for name in ("delta3", "BG3", "idem", "J", "delta1xdelta1", "meet3"):
        assert hm.chain_complex(hm.nerve(cat(name), 4)).is_complex(), name


def test_bg2_boundaries_alternate(cat):
    # hand computation: d_k on the single k-chain is 0 for odd k and 2 for even k
    cc = hm.chain_complex(hm.nerve(cat("BG2"), 4))
    assert [cc.boundaries[k] for k in range(1, 5)] == [[[0]], [[2]], [[0]], [[2]]]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_group_homology(n):
    H = hm.homology(fincat.cyclic_group(n), 3)
    assert [(g.betti, g.torsion) for g in H.groups[:4]] == [cyclic_group_homology(n, k) for k in range(4)]
    assert not H.groups[4].valid


def test_bg2_report_text(cat):
    assert str(hm.homology(cat("BG2"), 3)) == "H0=Z, H1=Z/2, H2=0, H3=Z/2"


def test_points_and_components(cat):
    for name in ("e", "delta1", "delta2", "delta3", "J", "idem", "meet3"):
        assert hm.homology(cat(name), 3).reduced_is_zero(), name
    assert str(hm.homology(cat("discrete2"), 2)[0]) == "Z^2"


def test_euler_characteristic(cat):
    # full nerve of a finite poset: alternating sums of ranks and Betti numbers agree
    for name in ("delta2", "meet3", "delta1xdelta1"):
        C = cat(name)
        d = len(C.objects)
        sizes = hm.nerve(C, d).sizes()
        H = hm.homology(C, d)
        assert sum((-1) ** k * s for k, s in enumerate(sizes)) == \
            sum((-1) ** k * g.betti for k, g in enumerate(H.groups[:d + 1]))


def test_localizer_spec():
    with pytest.raises(ValueError):
        hm.LocalizerSpec("w2")
    with pytest.raises(ValueError):
        hm.LocalizerSpec("w1", budget=0)


@pytest.mark.parametrize("name,w1,winf", [
    ("e", "Yes", "Yes"), ("delta1", "Yes", "Yes"), ("BG2", "No", "No"), ("discrete2", "No", "No"),
    ("J", "Yes", "Yes"), ("idem", "Yes", "Yes"), ("meet3", "Yes", "Yes"),
])
def test_is_aspherical(cat, name, w1, winf):
    C = cat(name)
    assert hm.is_aspherical(C, hm.W1).answer.value == w1
    assert hm.is_aspherical(C, hm.WINF).answer.value == winf


def test_empty_not_aspherical():
    assert hm.is_aspherical(fincat.empty()).is_no


def test_crown_has_a_hole():
    crown = fincat.poset(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    assert str(hm.homology(crown, 2)[1]) == "Z"
    assert hm.is_aspherical(crown, hm.WINF).is_no
    assert hm.is_aspherical(crown, hm.W1).is_no


def test_winf_certificate_and_unknown():
    # a < b > c < d has no extremal object but is Delta_1-contractible
    zigzag = fincat.poset(["a", "b", "c", "d"], [("a", "b"), ("c", "b"), ("c", "d")])
    assert hm.is_aspherical(zigzag, hm.WINF).evidence["reason"] == "Delta_1-contractible"
    capped = hm.LocalizerSpec("winf", contract_cap=1)
    assert hm.is_aspherical(zigzag, capped).is_unknown
    assert hm.is_aspherical(zigzag, hm.W1).is_yes


def test_weak_equivalence(cat):
    e = cat("e")
    for loc in (hm.W1, hm.WINF):
        assert hm.weak_equivalence(fincat.to_terminal(cat("delta2"), e), loc).is_yes
        assert hm.weak_equivalence(fincat.to_terminal(cat("BG2"), e), loc).is_no
    assert hm.is_aspherical_morphism(fincat.to_terminal(cat("meet3"), e)).is_yes


def test_thomason_check(cat):
    A = cat("delta1")
    J = cat("J")
    F = fincat.to_terminal(J, cat("e"))
    phi = ps.PresheafMorphism(ps.constant(A, J), ps.constant(A, cat("e")), {a: F for a in A.objects})
    rec = hm.thomason_check(phi)
    assert rec.consistent and rec.total.is_yes
    assert all(v.is_yes for v in rec.pointwise.values())
