"""Checkers for the test-category hierarchy, interval diagnostics and the
canonical isomorphisms relating products with representables, restrictions
to slices and slices of the projection."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import fincat
from .adjoints import (
    CatDiagram,
    I_star,
    delta1_multiplication,
    lawvere_interval,
    slice_diagram,
    transported_multiplication,
)
from .elements import elements, elements_map
from .errors import CatalogEntryLacksTerminal, IsoVerificationFailed, ValidationError
from .fincat import DEFAULT_CAP, FinCategory, FinFunctor, pair_id
from .grpd import ident_id
from .homology import W1, LocalizerSpec, is_aspherical
from .presheaf import (
    CatPresheaf,
    Interval,
    MultiplicativeInterval,
    PresheafMorphism,
    constant_morphism,
    product,
    product_morphism,
    identity_morphism,
    representable,
    restrict,
    restrict_morphism,
    to_terminal_morphism,
    two_morphisms,
)
from .verdict import Verdict, conjunction


def is_totally_aspherical(A: FinCategory, loc: LocalizerSpec = W1) -> Verdict:
    """``A`` aspherical and every slice of the diagonal over ``(a, b)``
    aspherical."""
    AA = fincat.product(A, A)
    diag = fincat.diagonal(A, AA)
    parts = [("A", is_aspherical(A, loc))]
    for a in A.objects:
        for b in A.objects:
            S, _ = fincat.slice(diag, pair_id(a, b))
            parts.append((pair_id(a, b), is_aspherical(S, loc)))
    return conjunction(parts, check="diagonal slices")


def is_locally_aspherical(X: CatPresheaf, loc: LocalizerSpec = W1) -> Verdict:
    """``el(a x X)`` aspherical for every object ``a``."""
    A = X.base
    parts = [(a, is_aspherical(elements(product(representable(A, a), X)).total, loc)) for a in A.objects]
    return conjunction(parts, check="products with representables")


def is_aspherical_presheaf(X: CatPresheaf, loc: LocalizerSpec = W1) -> Verdict:
    return is_aspherical(elements(X).total, loc)


# -- weak test evidence ----------------------------------------------------------------


def default_catalog() -> list[tuple[str, FinCategory]]:
    from .corpus import load_category

    return [(n, load_category(n)) for n in ("e", "delta1", "delta2", "delta1xdelta1", "meet3_op")]


def weak_test_evidence(A: FinCategory, catalog: Sequence[tuple[str, FinCategory]] | None = None,
                       loc: LocalizerSpec = W1, *, cap: int = DEFAULT_CAP) -> Verdict:
    """Asphericity of ``I_A*(C)`` for each ``C`` of a finite catalog of
    categories with terminal objects.  A Yes only covers the catalog."""
    catalog = list(catalog) if catalog is not None else default_catalog()
    for name, C in catalog:
        if not fincat.extremal_objects(C)[0]:
            raise CatalogEntryLacksTerminal(f"catalog entry {name!r} has no terminal object")
    i = slice_diagram(A)
    parts = [(name, is_aspherical(elements(I_star(i, C, cap=cap)).total, loc)) for name, C in catalog]
    return conjunction(parts, catalog=[n for n, _ in catalog], catalog_bounded=True)


# -- hierarchy ------------------------------------------------------------------------


@dataclass
class HierarchyReport:
    base: str
    localizer: LocalizerSpec
    aspherical: Verdict
    totally_aspherical: Verdict
    local_test: Verdict
    local_test_classical: Verdict
    test: Verdict
    strict_test: Verdict
    weak_test: Verdict | None
    cross_check: bool
    catalog: list[str] = field(default_factory=list)

    def implications_hold(self) -> bool:
        ok = not (self.strict_test.is_yes and self.test.is_no)
        ok &= not (self.test.is_yes and (self.local_test.is_no or self.aspherical.is_no))
        return ok

    def verdicts(self) -> dict[str, Verdict]:
        out = {
            "aspherical": self.aspherical,
            "totally_aspherical": self.totally_aspherical,
            "local_test": self.local_test,
            "test": self.test,
            "strict_test": self.strict_test,
        }
        if self.weak_test is not None:
            out["weak_test_evidence"] = self.weak_test
        return out

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "localizer": self.localizer.to_dict(),
            "verdicts": {k: v.to_dict() for k, v in self.verdicts().items()},
            "local_test_paths_agree": self.local_test.answer == self.local_test_classical.answer,
            "cross_check_istar_equals_istar_discrete": self.cross_check,
            "catalog": self.catalog,
            "implications_hold": self.implications_hold(),
        }


def check_hierarchy(A: FinCategory, loc: LocalizerSpec = W1, *, catalog=None, weak_test: bool = True,
                    cap: int = DEFAULT_CAP) -> HierarchyReport:
    i = slice_diagram(A)
    L = I_star(i, fincat.delta(1), cap=cap)
    Ld = I_star(i, fincat.delta(1), discrete=True, cap=cap)
    aspherical = is_aspherical(A, loc)
    local = is_locally_aspherical(L, loc)
    local_classical = is_locally_aspherical(Ld, loc)
    test = conjunction([("local_test", local), ("aspherical", aspherical)])
    total = is_totally_aspherical(A, loc)
    strict = conjunction([("totally_aspherical", total),
                          ("elements_of_interval", is_aspherical(elements(L).total, loc))])
    names: list[str] = []
    weak = None
    if weak_test:
        cat = list(catalog) if catalog is not None else default_catalog()
        names = [n for n, _ in cat]
        weak = weak_test_evidence(A, cat, loc, cap=cap)
    return HierarchyReport(A.name or "A", loc, aspherical, total, local, local_classical, test, strict,
                           weak, L.same_as(Ld), names)


# -- intervals ---------------------------------------------------------------------------


@dataclass
class Separation:
    separating: bool
    witness: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.separating


def is_strongly_separating(I: Interval) -> Separation:
    """``i0`` and ``i1`` lie in distinct isomorphism classes at every object.

    A 2-cell between the constant maps from a nonempty ``X`` restricts along
    any element ``x: a -> X`` to one from the representable ``a``, which is
    an isomorphism ``i0_a ~ i1_a`` in ``I(a)``.
    """
    if I.ambient == "cat":
        C = I.carrier
        for m in C.hom(I.i0, I.i1):
            if C.is_iso(m):
                return Separation(False, ("*", m))
        return Separation(True)
    for a in I.carrier.base.objects:
        V = I.carrier.value(a)
        for m in V.hom(I.i0[a], I.i1[a]):
            if V.is_iso(m):
                return Separation(False, (a, m))
    return Separation(True)


def strongly_separating_on(I: Interval, family: Iterable[CatPresheaf]) -> Separation:
    """The defining condition checked directly on each presheaf of ``family``:
    a nonempty ``X`` admits no 2-cell between the two constant maps."""
    for n, X in enumerate(family):
        if X.is_empty():
            continue
        c0 = constant_morphism(X, I.carrier, I.i0)
        c1 = constant_morphism(X, I.carrier, I.i1)
        if two_morphisms(c0, c1):
            return Separation(False, (str(n), X.name or "X"))
    return Separation(True)


@dataclass
class MultiplicativeCheck:
    ok: bool
    failing: str | None = None
    at: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_op(op: FinFunctor, V: FinCategory, p0: str, p1: str, where: str) -> MultiplicativeCheck:
    for x in V.objects:
        if op.ob(pair_id(p0, x)) != x:
            return MultiplicativeCheck(False, "left unit", f"{where}:{x}")
        if op.ob(pair_id(p1, x)) != p1:
            return MultiplicativeCheck(False, "left absorbing", f"{where}:{x}")
    i0, i1 = V.identity(p0), V.identity(p1)
    for m in V.morphisms:
        if op.mor(pair_id(i0, m)) != m:
            return MultiplicativeCheck(False, "left unit", f"{where}:{m}")
        if op.mor(pair_id(i1, m)) != i1:
            return MultiplicativeCheck(False, "left absorbing", f"{where}:{m}")
    return MultiplicativeCheck(True)


def verify_multiplicative(L: MultiplicativeInterval) -> MultiplicativeCheck:
    """``Lambda(i0, -) = id`` and ``Lambda(i1, -) = i1``, pointwise."""
    I = L.interval
    if I.ambient == "cat":
        return _check_op(L.op, I.carrier, I.i0, I.i1, "*")
    for a in I.carrier.base.objects:
        res = _check_op(L.op[a], I.carrier.value(a), I.i0[a], I.i1[a], a)
        if not res:
            return res
    return MultiplicativeCheck(True)


def delta1_multiplicative(op: FinFunctor | None = None) -> MultiplicativeInterval:
    from .presheaf import delta1_interval

    return MultiplicativeInterval(delta1_interval(), op or delta1_multiplication())


def multiplication_table(op: FinFunctor) -> dict[tuple[str, str], str]:
    A, B = op.dom.factors
    return {(a, b): op.ob(pair_id(a, b)) for a in A.objects for b in B.objects}


def lawvere_multiplicative(A: FinCategory) -> MultiplicativeInterval:
    """``I_A*(Delta_1)`` with the operation transported from ``Delta_1``."""
    return transported_multiplication(slice_diagram(A))


# -- canonical isomorphisms ---------------------------------------------------------------


@dataclass
class IsoSuiteReport:
    sizes: tuple[int, int, int]
    isomorphisms: bool
    natural: bool

    @property
    def ok(self) -> bool:
        return self.isomorphisms and self.natural

    def to_dict(self) -> dict:
        return {"sizes": list(self.sizes), "isomorphisms": self.isomorphisms, "natural": self.natural}


class _Triple:
    """``el(a x X)``, ``el(X|A/a)`` and ``el(X)/a`` with their common
    description by triples ``(b, p: b -> a, x)``."""

    def __init__(self, A: FinCategory, X: CatPresheaf, a: str):
        self.A, self.X, self.a = A, X, a
        self.ya = representable(A, a)
        self.E1 = elements(product(self.ya, X))
        S, pi = fincat.slice(fincat.identity_functor(A), a)
        self.S, self.pi = S, pi
        self.E2 = elements(restrict(pi, X))
        self.EX = elements(X)
        self.E3, _ = fincat.slice(self.EX.zeta, a)

    def objects(self):
        for (b, px), v in self.E1.objects.items():
            p, x = self.E1.presheaf.value(b).labels[px]
            yield (b, p, x), v

    def arrows(self):
        for (g, k, px2), v in self.E1.arrows.items():
            b2 = self.A.tgt(g)
            p2, x2 = self.E1.presheaf.value(b2).labels[px2]
            _, kk = self.E1.presheaf.value(self.A.src(g)).labels[k]
            yield (g, kk, p2, x2), v

    def ids(self, triple):
        b, p, x = triple
        return (self.E1.objects[(b, pair_id(p, x))], self.E2.objects[(pair_id(b, p), x)],
                pair_id(self.EX.objects[(b, x)], p))

    def arrow_ids(self, quad):
        g, k, p2, x2 = quad
        A = self.A
        p = A.compose(p2, g)
        e1 = self.E1.arrows[(g, pair_id(ident_id(p), k), pair_id(p2, x2))]
        e2 = self.E2.arrows[(f"({g},{p},{p2})", k, x2)]
        e3 = f"({self.EX.arrows[(g, k, x2)]},{p},{p2})"
        return e1, e2, e3

    def functors(self) -> tuple[FinFunctor, FinFunctor]:
        o12, o23, m12, m23 = {}, {}, {}, {}
        for triple, _ in self.objects():
            i1, i2, i3 = self.ids(triple)
            o12[i1], o23[i2] = i2, i3
        for quad, _ in self.arrows():
            e1, e2, e3 = self.arrow_ids(quad)
            m12[e1], m23[e2] = e2, e3
        try:
            t12 = FinFunctor(self.E1.total, self.E2.total, o12, m12)
            t23 = FinFunctor(self.E2.total, self.E3, o23, m23)
        except ValidationError as exc:
            raise IsoVerificationFailed(f"canonical comparison is not a functor: {exc}") from exc
        if not (t12.is_isomorphism() and t23.is_isomorphism()):
            raise IsoVerificationFailed("canonical comparison is not bijective")
        return t12, t23


def canonical_iso_suite(A: FinCategory, X: CatPresheaf, a: str,
                        morphism: PresheafMorphism | None = None) -> IsoSuiteReport:
    """Build ``el(a x X) ~ el(X|A/a) ~ el(X)/a`` and check naturality along
    ``morphism: X -> Y`` (default: ``X -> *``)."""
    if X.base != A:
        raise ValidationError("presheaf must live over A")
    T = _Triple(A, X, a)
    t12, t23 = T.functors()
    psi = morphism or to_terminal_morphism(X)
    U = _Triple(A, psi.target, a)
    u12, u23 = U.functors()

    f1 = elements_map(product_morphism(identity_morphism(T.ya), psi, T.E1.presheaf, U.E1.presheaf),
                      T.E1, U.E1)
    f2 = elements_map(restrict_morphism(T.pi, psi, T.E2.presheaf, U.E2.presheaf), T.E2, U.E2)
    fx = elements_map(psi, T.EX, U.EX)
    o3 = {}
    for o in T.E3.objects:
        e, p = T.E3.labels[o]
        o3[o] = pair_id(fx.ob(e), p)
    m3 = {}
    for m in T.E3.morphisms:
        s, t = T.E3.ends(m)
        m3[m] = f"({fx.mor(T.E3.labels[m])},{T.E3.labels[s][1]},{T.E3.labels[t][1]})"
    f3 = FinFunctor(T.E3, U.E3, o3, m3, check=False)
    natural = (u12.after(f1).key() == f2.after(t12).key() and u23.after(f2).key() == f3.after(t23).key())
    return IsoSuiteReport((len(T.E1.total.objects), len(T.E2.total.objects), len(T.E3.objects)), True, natural)
