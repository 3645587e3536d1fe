"""Categories of elements, the Grothendieck construction and base change.

An object of the total category is a pair ``(a, x)`` with ``x`` an object of
``X(a)``.  A morphism ``(a, x) -> (a2, x2)`` is a pair ``(f, k)`` with
``f: a -> a2`` and ``k: x -> X(f)(x2)``; its id also records ``x2`` because
``X(f)`` need not be injective on objects.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fincat
from .errors import IsoSearchFailed, ValidationError
from .fincat import FinCategory, FinFunctor, pair_id
from .presheaf import CatPresheaf, PresheafMorphism, restrict


def element_id(a: str, x: str) -> str:
    return pair_id(a, x)


def arrow_id(f: str, k: str, x2: str) -> str:
    return f"({f},{k},{x2})"


@dataclass
class ElementsResult:
    total: FinCategory
    zeta: FinFunctor
    presheaf: CatPresheaf
    objects: dict[tuple[str, str], str]
    arrows: dict[tuple[str, str, str], str]

    def object_of(self, ident: str) -> tuple[str, str]:
        return self.total.labels[ident]

    def arrow_of(self, ident: str) -> tuple[str, str, str]:
        return self.total.labels[ident]

    def sidecar(self) -> dict:
        return {
            "objects": {v: list(k) for k, v in self.objects.items()},
            "morphisms": {v: list(k) for k, v in self.arrows.items()},
        }


def grothendieck(X: CatPresheaf, name: str | None = None) -> ElementsResult:
    """Total category of a Cat-valued presheaf with its projection to the base."""
    A = X.base
    objects: dict[tuple[str, str], str] = {}
    for a in A.objects:
        for x in X.value(a).objects:
            objects[(a, x)] = element_id(a, x)

    arrows: dict[tuple[str, str, str], str] = {}
    ends: dict[str, tuple[str, str]] = {}
    labels: dict[str, tuple] = {v: k for k, v in objects.items()}
    for f in A.morphisms:
        a, a2 = A.ends(f)
        Xf = X.action(f)
        Va = X.value(a)
        for x2 in X.value(a2).objects:
            y = Xf.ob(x2)
            for x in Va.objects:
                for k in Va.hom(x, y):
                    m = arrow_id(f, k, x2)
                    arrows[(f, k, x2)] = m
                    ends[m] = (objects[(a, x)], objects[(a2, x2)])
                    labels[m] = (f, k, x2)

    identities = {objects[(a, x)]: arrows[(A.identity(a), X.value(a).identity(x), x)]
                  for (a, x) in objects}

    by_source: dict[str, list[tuple[str, str, str]]] = {}
    for key, m in arrows.items():
        by_source.setdefault(ends[m][0], []).append(key)

    comp: dict[tuple[str, str], str] = {}
    for (f, k, x2), m in arrows.items():
        a2 = A.tgt(f)
        Xf = X.action(f)
        Va = X.value(A.src(f))
        for (f2, k2, x3) in by_source[objects[(a2, x2)]]:
            # (f2, k2) . (f, k) = (f2 . f, X(f)(k2) . k)
            kk = Va.compose(Xf.mor(k2), k)
            comp[(arrows[(f2, k2, x3)], m)] = arrows[(A.compose(f2, f), kk, x3)]

    total = FinCategory(list(objects.values()), ends, identities, comp,
                        name=name or f"el({X.name or 'X'})", labels=labels, validate=False)
    zeta = FinFunctor(total, A, {v: k[0] for k, v in objects.items()},
                      {v: k[0] for k, v in arrows.items()}, check=False)
    return ElementsResult(total, zeta, X, objects, arrows)


def elements(X: CatPresheaf, name: str | None = None) -> ElementsResult:
    """Category of elements of a Set- or groupoid-valued presheaf."""
    if X.kind == "cat":
        raise ValidationError("elements needs a groupoid-valued presheaf; use grothendieck")
    return grothendieck(X, name=name)


def elements_map(phi: PresheafMorphism, source: ElementsResult | None = None,
                 target: ElementsResult | None = None) -> FinFunctor:
    """The functor ``(a, x) |-> (a, phi_a(x))``, ``(f, k) |-> (f, phi_a(k))``."""
    source = source or grothendieck(phi.source)
    target = target or grothendieck(phi.target)
    A = phi.source.base
    omap = {v: target.objects[(a, phi[a].ob(x))] for (a, x), v in source.objects.items()}
    mmap = {}
    for (f, k, x2), v in source.arrows.items():
        a, a2 = A.ends(f)
        mmap[v] = target.arrows[(f, phi[a].mor(k), phi[a2].ob(x2))]
    return FinFunctor(source.total, target.total, omap, mmap, check=False)


@dataclass
class BaseChange:
    lam: FinFunctor
    is_pullback: bool
    detail: str


def base_change_square(u: FinFunctor, X: CatPresheaf) -> BaseChange:
    """``lam: el(u*X) -> el(X)`` and whether the square with ``u`` and the two
    projections is a strict pullback."""
    E1 = grothendieck(restrict(u, X))
    E2 = grothendieck(X)
    omap = {v: E2.objects[(u.ob(a), x)] for (a, x), v in E1.objects.items()}
    mmap = {v: E2.arrows[(u.mor(f), k, x2)] for (f, k, x2), v in E1.arrows.items()}
    lam = FinFunctor(E1.total, E2.total, omap, mmap, check=False)

    # fiber products of the tables
    fib_obj = {(a, e) for a in u.dom.objects for e in E2.total.objects if u.ob(a) == E2.zeta.ob(e)}
    fib_mor = {(f, m) for f in u.dom.morphisms for m in E2.total.morphisms if u.mor(f) == E2.zeta.mor(m)}
    got_obj = [(E1.zeta.ob(x), lam.ob(x)) for x in E1.total.objects]
    got_mor = [(E1.zeta.mor(m), lam.mor(m)) for m in E1.total.morphisms]
    if len(set(got_obj)) != len(got_obj) or set(got_obj) != fib_obj:
        return BaseChange(lam, False, "objects are not the fiber product")
    if len(set(got_mor)) != len(got_mor) or set(got_mor) != fib_mor:
        return BaseChange(lam, False, "morphisms are not the fiber product")
    for x in E1.total.objects:
        if u.ob(E1.zeta.ob(x)) != E2.zeta.ob(lam.ob(x)):
            return BaseChange(lam, False, f"square does not commute at {x}")
    return BaseChange(lam, True, "strict pullback")


def fibrewise_elements(X: CatPresheaf) -> CatPresheaf:
    """For ``X`` on ``A x B``, the Cat-valued presheaf ``a |-> el(X(a, -))`` on ``A``."""
    P = X.base
    if P.factors is None:
        raise ValidationError("base carries no product structure")
    A, B = P.factors
    totals = {}
    for a in A.objects:
        ida = A.identity(a)
        j = FinFunctor(B, P, {b: pair_id(a, b) for b in B.objects},
                       {g: pair_id(ida, g) for g in B.morphisms}, check=False)
        totals[a] = grothendieck(restrict(j, X), name=f"el({a})")
    actions = {}
    for f in A.morphisms:
        a, a2 = A.ends(f)
        src, tgt = totals[a2], totals[a]
        omap, mmap = {}, {}
        for (b, x), v in src.objects.items():
            Xf = X.action(pair_id(f, B.identity(b)))
            omap[v] = tgt.objects[(b, Xf.ob(x))]
        for (g, k, x2), v in src.arrows.items():
            b, b2 = B.ends(g)
            Xf = X.action(pair_id(f, B.identity(b)))
            Xf2 = X.action(pair_id(f, B.identity(b2)))
            mmap[v] = tgt.arrows[(g, Xf.mor(k), Xf2.ob(x2))]
        actions[f] = FinFunctor(src.total, tgt.total, omap, mmap, check=False)
    return CatPresheaf(A, {a: totals[a].total for a in A.objects}, actions, name="el_B")


@dataclass
class IteratedElements:
    left: FinCategory
    right: FinCategory
    iso: FinFunctor


def iterated_elements_check(X: CatPresheaf) -> IteratedElements:
    """Compare ``el_{AxB}(X)`` with ``int_A el_B(X)`` through an explicit
    isomorphism."""
    left = grothendieck(X)
    Y = fibrewise_elements(X)
    right = grothendieck(Y)
    A, B = X.base.factors
    omap, mmap = {}, {}
    for (a, y), v in right.objects.items():
        b, x = Y.value(a).labels[y]
        omap[v] = left.objects[(pair_id(a, b), x)]
    for (f, m, y2), v in right.arrows.items():
        a = A.src(f)
        a2 = A.tgt(f)
        g, k, _ = Y.value(a).labels[m]
        _, x2 = Y.value(a2).labels[y2]
        mmap[v] = left.arrows.get((pair_id(f, g), k, x2))
    try:
        if None in mmap.values():
            raise ValidationError("unmatched morphism")
        iso = FinFunctor(right.total, left.total, omap, mmap)
        if not iso.is_isomorphism():
            raise ValidationError("not bijective")
    except ValidationError:
        found = fincat.find_isomorphism(right.total, left.total)
        if found is None:
            raise IsoSearchFailed("no isomorphism between the iterated and direct constructions")
        iso = found
    return IteratedElements(left.total, right.total, iso)
