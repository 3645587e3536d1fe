"""Randomized laws checked with Hypothesis."""

import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from grpdtest import fincat, grpd, homology as hm, io, snf
from grpdtest import elements as el
from grpdtest import presheaf as ps

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def posets(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = {p for p in pairs if draw(st.booleans())}
    # transitive closure
    changed = True
    while changed:
        extra = {(a, d) for (a, b), (c, d) in itertools.product(chosen, chosen) if b == c} - chosen
        chosen |= extra
        changed = bool(extra)
    return fincat.poset([f"p{i}" for i in range(n)], [(f"p{i}", f"p{j}") for i, j in chosen])


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@SETTINGS
@given(matrices)
def test_smith_normal_form(M):
    U, D, V = snf.smith_normal_form(M)
    assert snf.matmul(snf.matmul(U, M), V) == D
    assert abs(snf.determinant(U)) == 1 and abs(snf.determinant(V)) == 1
    assert snf.is_smith_form(D)


@SETTINGS
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_determinant_product(M):
    # the product of invariant factors of a square matrix is |det|
    factors = snf.invariant_factors(M)
    det = abs(snf.determinant(M))
    if len(factors) < 3:
        assert det == 0
    else:
        prod = 1
        for f in factors:
            prod *= f
        assert prod == det


@SETTINGS
@given(posets())
def test_boundary_squares_to_zero(P):
    assert hm.chain_complex(hm.nerve(P, 3)).is_complex()


@SETTINGS
@given(posets())
def test_h0_counts_components_and_h1_is_abelianized_pi1(P):
    H = hm.homology(P, 2)
    assert H[0].betti == len(fincat.connected_components(P))
    G = grpd.localize(P)
    ab = grpd.abelianization(grpd.vertex_group(G, 0))
    if len(G.components) == 1:
        assert (H[1].betti, H[1].torsion) == (ab.free_rank, list(ab.torsion))


@SETTINGS
@given(st.integers(2, 6))
def test_h1_of_cyclic_group_is_abelianized_pi1(n):
    C = fincat.cyclic_group(n)
    ab = grpd.abelianization(grpd.vertex_group(grpd.localize(C)))
    assert hm.homology(C, 1)[1].torsion == list(ab.torsion) == [n]


@SETTINGS
@given(posets())
def test_category_round_trip(P):
    assert io.loads(io.dumps(P)) == P
    text = io.dumps(P)
    assert io.dumps(io.loads(text)) == text


@SETTINGS
@given(posets(4), st.data())
def test_presheaf_round_trip(P, data):
    a, b = data.draw(st.sampled_from(P.objects)), data.draw(st.sampled_from(P.objects))
    X = ps.product(ps.representable(P, a), ps.representable(P, b))
    Y = io.loads(io.dumps(X))
    assert Y.same_as(X)


@SETTINGS
@given(posets(4), st.data())
def test_elements_map_is_functorial(P, data):
    a = data.draw(st.sampled_from(P.objects))
    above = [b for b in P.objects if P.hom(a, b)]
    b = data.draw(st.sampled_from(above))
    ya, yb = ps.representable(P, a), ps.representable(P, b)
    phi = next(iter(ps.presheaf_morphisms(ya, yb)))
    T = ps.terminal(P)
    psi = ps.to_terminal_morphism(yb, T)
    Ea, Eb, ET = el.elements(ya), el.elements(yb), el.elements(T)
    whole = el.elements_map(psi.after(phi), Ea, ET)
    assert whole == el.elements_map(psi, Eb, ET).after(el.elements_map(phi, Ea, Eb))


@SETTINGS
@given(posets(4), posets(3), st.data())
def test_restrict_is_functorial(P, Q, data):
    u = data.draw(st.sampled_from(list(fincat.functors(fincat.delta(1), P))))
    v = data.draw(st.sampled_from(list(itertools.islice(fincat.functors(P, Q), 50))))
    X = ps.representable(Q, data.draw(st.sampled_from(Q.objects)))
    assert ps.restrict(v.after(u), X).same_as(ps.restrict(u, ps.restrict(v, X)))


@SETTINGS
@given(posets(3))
def test_homotopy_is_an_equivalence_relation(P):
    I = ps.delta1_interval()
    maps = list(fincat.functors(fincat.delta(1), P))[:6]
    rel = {(i, j): ps.enumerate_homotopies(I, f, g).homotopic
           for i, f in enumerate(maps) for j, g in enumerate(maps)}
    n = len(maps)
    for i in range(n):
        assert rel[i, i]
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]


@SETTINGS
@given(posets(3), st.integers(2, 3))
def test_two_morphism_inverses(P, n):
    # constant presheaf on the contractible groupoid with n objects
    objs = [f"o{k}" for k in range(n)]
    morphisms = {f"{x}>{y}": (x, y) for x in objs for y in objs if x != y}
    morphisms.update({f"id_{x}": (x, x) for x in objs})
    comp = {}
    for x, y, z in itertools.product(objs, repeat=3):
        g = f"id_{y}" if y == z else f"{y}>{z}"
        f = f"id_{x}" if x == y else f"{x}>{y}"
        comp[(g, f)] = f"id_{x}" if x == z else f"{x}>{z}"
    C = fincat.FinCategory(objs, morphisms, {x: f"id_{x}" for x in objs}, comp)
    X = ps.constant(P, C)
    sections = ps.global_sections(X)
    c0 = ps.constant_morphism(X, X, sections[0])
    c1 = ps.constant_morphism(X, X, sections[-1])
    cells = ps.two_morphisms(c0, c1)
    assert len(cells) == 1
    inv = cells[0].inverse()
    assert ps.is_two_morphism(c1, c0, inv.components)
    for a, t in cells[0].components.items():
        for x, m in t.components.items():
            assert C.is_identity(C.compose(inv.components[a].components[x], m))


@SETTINGS
@given(posets(4))
def test_w1_two_out_of_three(P):
    e = fincat.terminal()
    to_e = fincat.to_terminal(P, e)
    for x in P.objects:
        s = fincat.FinFunctor(e, P, {e.objects[0]: x}, {e.morphisms[0]: P.identity(x)})
        verdicts = [grpd.w1_class(s).answer, grpd.w1_class(to_e).answer, grpd.w1_class(to_e.after(s)).answer]
        decided = [v.value for v in verdicts]
        if "Unknown" not in decided:
            assert decided.count("Yes") != 2
