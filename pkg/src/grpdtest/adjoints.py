"""Right adjoints ``i*`` and ``I*`` along a diagram ``i: A -> Cat``, the
counit, the adjunction bijection for the slice diagram, the slice
isomorphism and the sieve classifier of a strongly separating interval."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import fincat
from .elements import ElementsResult, elements, elements_map
from .errors import (
    FunctorialityViolation,
    IsoVerificationFailed,
    MissingTerminalObject,
    NotStronglySeparating,
    ValidationError,
)
from .fincat import DEFAULT_CAP, FinCategory, FinFunctor, NatTransf, pair_id
from .grpd import FinGroupoid, ident_id
from .presheaf import (
    CatPresheaf,
    GrpdPresheaf,
    Interval,
    MultiplicativeInterval,
    PresheafMorphism,
    SetPresheaf,
    identity_morphism,
    presheaf_morphisms,
    product,
)


# -- diagrams -------------------------------------------------------------------


class CatDiagram:
    """A strict functor ``i: A -> Cat`` with optional chosen terminal objects."""

    def __init__(self, base: FinCategory, assignment: Mapping[str, FinCategory],
                 action: Mapping[str, FinFunctor], terminals: Mapping[str, str] | None = None,
                 *, check: bool = True, name: str | None = None):
        self.base = base
        self.assignment = dict(assignment)
        self.action = dict(action)
        self.terminals = dict(terminals) if terminals else None
        self.name = name
        if check:
            self._check()

    def _check(self) -> None:
        A = self.base
        for a in A.objects:
            if a not in self.assignment:
                raise ValidationError(f"no category assigned to {a!r}")
        for f in A.morphisms:
            F = self.action.get(f)
            if F is None:
                raise FunctorialityViolation(f"no functor given for {f!r}")
            a, a2 = A.ends(f)
            if F.dom != self.assignment[a] or F.cod != self.assignment[a2]:
                raise FunctorialityViolation(f"functor for {f!r} has the wrong type")
            F._check()
        for a in A.objects:
            F = self.action[A.identity(a)]
            if any(F.omap[x] != x for x in F.dom.objects) or any(F.mmap[m] != m for m in F.dom.morphisms):
                raise FunctorialityViolation(f"identity of {a!r} does not act as the identity")
        for (g, f), h in A.compose_table.items():
            G = self.action[g].after(self.action[f])
            if G.omap != self.action[h].omap or G.mmap != self.action[h].mmap:
                raise FunctorialityViolation(f"i({g} . {f}) != i({g}) . i({f})")
        if self.terminals is not None:
            for a in A.objects:
                e = self.terminals.get(a)
                C = self.assignment[a]
                if e not in C.objects or any(len(C.hom(x, e)) != 1 for x in C.objects):
                    raise MissingTerminalObject(f"{e!r} is not terminal in i({a})")

    def __call__(self, a: str) -> FinCategory:
        return self.assignment[a]

    def terminal(self, a: str) -> str:
        if self.terminals is None:
            raise MissingTerminalObject("the diagram declares no terminal objects")
        return self.terminals[a]

    def can(self, f: str) -> str:
        """The unique morphism ``i(f)(e_a) -> e_a2`` in ``i(a2)``."""
        a, a2 = self.base.ends(f)
        C2 = self.assignment[a2]
        (m,) = C2.hom(self.action[f].ob(self.terminal(a)), self.terminal(a2))
        return m


def slice_diagram(A: FinCategory) -> CatDiagram:
    """``a |-> A/a`` with post-composition; ``e_a = (a, id_a)``."""
    ident = fincat.identity_functor(A)
    slices = {a: fincat.slice(ident, a)[0] for a in A.objects}
    action = {}
    for f in A.morphisms:
        a, a2 = A.ends(f)
        S, S2 = slices[a], slices[a2]
        omap = {o: pair_id(S.labels[o][0], A.compose(f, S.labels[o][1])) for o in S.objects}
        mmap = {}
        for m in S.morphisms:
            s, t = S.ends(m)
            mmap[m] = f"({S.labels[m]},{A.compose(f, S.labels[s][1])},{A.compose(f, S.labels[t][1])})"
        action[f] = FinFunctor(S, S2, omap, mmap, check=False)
    terminals = {a: pair_id(a, A.identity(a)) for a in A.objects}
    return CatDiagram(A, slices, action, terminals, check=False, name=f"slices({A.name})")


def slice_object(A: FinCategory, f: str) -> str:
    """``(b, f)`` as an object of ``A/tgt(f)``."""
    return pair_id(A.src(f), f)


def slice_arrow(A: FinCategory, g: str, q2: str) -> str:
    """``g: (b, q2 . g) -> (b2, q2)`` as a morphism of ``A/tgt(q2)``."""
    return f"({g},{A.compose(q2, g)},{q2})"


# -- hom-groupoids -----------------------------------------------------------------


class HomGroupoid(FinGroupoid):
    """Functors ``C -> D`` and natural isomorphisms; the payloads live in
    ``labels``."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.functor_ids = {self.labels[x].key(): x for x in self.objects}
        self.transf_ids = {(self.src(m), self.tgt(m), self.labels[m].key()): m for m in self.morphisms}

    def functor(self, x: str) -> FinFunctor:
        return self.labels[x]

    def transf(self, m: str) -> NatTransf:
        return self.labels[m]

    def id_of_functor(self, F: FinFunctor) -> str:
        return self.functor_ids[F.key()]

    def id_of_transf(self, t: NatTransf) -> str:
        return self.transf_ids[(self.id_of_functor(t.source), self.id_of_functor(t.target), t.key())]


def hom_groupoid(C: FinCategory, D: FinCategory, *, discrete: bool = False,
                 cap: int = DEFAULT_CAP) -> HomGroupoid:
    """Functors ``C -> D`` with natural isomorphisms (only identities when
    ``discrete``), composed vertically."""
    funs = list(fincat.functors(C, D, cap=cap))
    names = [f"F{k}" for k in range(len(funs))]
    labels: dict[str, object] = dict(zip(names, funs))
    morphisms: dict[str, tuple[str, str]] = {}
    identities = {}
    for j, F in enumerate(funs):
        for k, G in enumerate(funs):
            if discrete and j != k:
                continue
            n = 0
            for t in fincat.natural_transformations(F, G, iso_only=True, cap=cap):
                if j == k and all(D.is_identity(c) for c in t.components.values()):
                    m = ident_id(names[j])
                    identities[names[j]] = m
                elif discrete:
                    continue
                else:
                    m = f"{names[j]}=>{names[k]}#{n}"
                    n += 1
                morphisms[m] = (names[j], names[k])
                labels[m] = t
    index = {(s, t, labels[m].key()): m for m, (s, t) in morphisms.items()}
    comp = {}
    for f, (s, t) in morphisms.items():
        for g, (s2, t2) in morphisms.items():
            if s2 != t:
                continue
            sig, tau = labels[f], labels[g]
            key = tuple(D.compose(tau.components[x], sig.components[x]) for x in C.objects)
            comp[(g, f)] = index[(s, t2, key)]
    return HomGroupoid(names, morphisms, identities, comp, labels=labels, validate=False,
                       name=f"Hom({C.name},{D.name})")


def whisker(t: NatTransf, F: FinFunctor) -> NatTransf:
    """``t F``: components ``t_{F(x)}``."""
    return NatTransf(t.source.after(F), t.target.after(F), {x: t.components[F.ob(x)] for x in F.dom.objects})


def postwhisker(G: FinFunctor, t: NatTransf) -> NatTransf:
    """``G t``: components ``G(t_x)``."""
    return NatTransf(G.after(t.source), G.after(t.target), {x: G.mor(c) for x, c in t.components.items()})


def I_star(i: CatDiagram, C: FinCategory, *, discrete: bool = False, cap: int = DEFAULT_CAP) -> GrpdPresheaf:
    """``a |-> Hom(i(a), C)``: the groupoid of functors and natural isos, or
    with ``discrete`` the set of functors."""
    A = i.base
    values = {a: hom_groupoid(i(a), C, discrete=discrete, cap=cap) for a in A.objects}
    actions = {}
    for f in A.morphisms:
        a, a2 = A.ends(f)
        H, H2, F = values[a], values[a2], i.action[f]
        omap = {p: H.id_of_functor(H2.functor(p).after(F)) for p in H2.objects}
        mmap = {m: H.id_of_transf(whisker(H2.transf(m), F)) for m in H2.morphisms}
        actions[f] = FinFunctor(H2, H, omap, mmap, check=False)
    cls = SetPresheaf if discrete else GrpdPresheaf
    tag = "i*" if discrete else "I*"
    return cls(A, values, actions, check=False, name=f"{tag}({C.name})")


def I_star_map(i: CatDiagram, G: FinFunctor, source: GrpdPresheaf | None = None,
               target: GrpdPresheaf | None = None) -> PresheafMorphism:
    """``I*(G): I*(C) -> I*(D)`` by post-composition."""
    source = source or I_star(i, G.dom)
    target = target or I_star(i, G.cod)
    comps = {}
    for a in i.base.objects:
        H, H2 = source.value(a), target.value(a)
        omap = {p: H2.id_of_functor(G.after(H.functor(p))) for p in H.objects}
        mmap = {m: H2.id_of_transf(postwhisker(G, H.transf(m))) for m in H.morphisms}
        comps[a] = FinFunctor(H, H2, omap, mmap, check=False)
    return PresheafMorphism(source, target, comps, check=False)


# -- counit ------------------------------------------------------------------------


def counit_alpha(i: CatDiagram, C: FinCategory, IC: GrpdPresheaf | None = None,
                 E: ElementsResult | None = None) -> FinFunctor:
    """``alpha(a, p) = p(e_a)``; ``(f, sigma) |-> p2(can_f) . sigma_{e_a}``."""
    if i.terminals is None:
        raise MissingTerminalObject("the diagram declares no terminal objects")
    IC = IC or I_star(i, C)
    E = E or elements(IC)
    A = i.base
    omap = {v: IC.value(a).functor(p).ob(i.terminal(a)) for (a, p), v in E.objects.items()}
    mmap = {}
    for (f, s, p2), v in E.arrows.items():
        a, a2 = A.ends(f)
        sigma = IC.value(a).transf(s)
        q = IC.value(a2).functor(p2)
        mmap[v] = C.compose(q.mor(i.can(f)), sigma.components[i.terminal(a)])
    return FinFunctor(E.total, C, omap, mmap, check=True, name="alpha")


# -- adjunction for the slice diagram ---------------------------------------------


class SliceAdjunction:
    """The bijection ``Hom(el(X), C) ~ Hom(X, I*(C))`` for ``i = A/-``."""

    def __init__(self, A: FinCategory, *, cap: int = DEFAULT_CAP):
        self.A = A
        self.i = slice_diagram(A)
        self.cap = cap

    def transpose(self, F: FinFunctor, X: CatPresheaf, E: ElementsResult, IC: GrpdPresheaf) -> PresheafMorphism:
        A, C = self.A, F.cod
        comps = {}
        for a in A.objects:
            S, H, Va = self.i(a), IC.value(a), X.value(a)

            def functor_at(x):
                omap, mmap = {}, {}
                for o in S.objects:
                    b, q = S.labels[o]
                    omap[o] = F.ob(E.objects[(b, X.action(q).ob(x))])
                for m in S.morphisms:
                    s, t = S.ends(m)
                    g = S.labels[m]
                    q, q2 = S.labels[s][1], S.labels[t][1]
                    y = X.action(q).ob(x)
                    mmap[m] = F.mor(E.arrows[(g, X.value(S.labels[s][0]).identity(y), X.action(q2).ob(x))])
                return FinFunctor(S, C, omap, mmap, check=False)

            omap = {x: H.id_of_functor(functor_at(x)) for x in Va.objects}
            mmap = {}
            for k in Va.morphisms:
                x, y = Va.ends(k)
                comp = {}
                for o in S.objects:
                    b, q = S.labels[o]
                    Xq = X.action(q)
                    comp[o] = F.mor(E.arrows[(A.identity(b), Xq.mor(k), Xq.ob(y))])
                t = NatTransf(functor_at(x), functor_at(y), comp)
                mmap[k] = H.id_of_transf(t)
            comps[a] = FinFunctor(Va, H, omap, mmap, check=False)
        return PresheafMorphism(X, IC, comps, check=False)

    def untranspose(self, phi: PresheafMorphism, E: ElementsResult, C: FinCategory) -> FinFunctor:
        A, IC = self.A, phi.target
        omap = {}
        for (a, x), v in E.objects.items():
            omap[v] = IC.value(a).functor(phi[a].ob(x)).ob(self.i.terminal(a))
        mmap = {}
        for (f, k, x2), v in E.arrows.items():
            a, a2 = A.ends(f)
            q = IC.value(a2).functor(phi[a2].ob(x2))
            sigma = IC.value(a).transf(phi[a].mor(k))
            can = f"({f},{f},{A.identity(a2)})"
            mmap[v] = C.compose(q.mor(can), sigma.components[self.i.terminal(a)])
        return FinFunctor(E.total, C, omap, mmap, check=False)

    def unit(self, X: CatPresheaf, E: ElementsResult | None = None) -> PresheafMorphism:
        E = E or elements(X)
        IE = I_star(self.i, E.total, cap=self.cap)
        return self.transpose(fincat.identity_functor(E.total), X, E, IE)

    def counit(self, C: FinCategory, IC: GrpdPresheaf | None = None) -> FinFunctor:
        IC = IC or I_star(self.i, C, cap=self.cap)
        E = elements(IC)
        return self.untranspose(identity_morphism(IC), E, C)


@dataclass
class AdjunctionReport:
    left_size: int
    right_size: int
    bijective: bool
    round_trip: bool
    triangle_left: bool
    triangle_right: bool
    counit_is_alpha: bool
    table: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.bijective and self.round_trip and self.triangle_left and self.triangle_right
                and self.counit_is_alpha)

    def to_dict(self) -> dict:
        return {
            "left_size": self.left_size,
            "right_size": self.right_size,
            "bijective": self.bijective,
            "round_trip": self.round_trip,
            "triangle_left": self.triangle_left,
            "triangle_right": self.triangle_right,
            "counit_is_alpha": self.counit_is_alpha,
            "table": [list(p) for p in self.table],
        }


def adjunction_transpose(X: CatPresheaf, C: FinCategory, direction: str = "forward",
                         *, cap: int = DEFAULT_CAP) -> AdjunctionReport:
    """Enumerate both hom-sets, build the bijection and check both triangle
    identities on this instance.

    ``table`` lists index pairs ``(functor, presheaf morphism)``; with
    ``direction="backward"`` it is computed from the presheaf side.
    """
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    adj = SliceAdjunction(X.base, cap=cap)
    E = elements(X)
    IC = I_star(adj.i, C, cap=cap)
    left = list(fincat.functors(E.total, C, cap=cap))
    right = list(presheaf_morphisms(X, IC, cap=cap))
    left_index = {F.key(): n for n, F in enumerate(left)}
    right_index = {phi.key(): n for n, phi in enumerate(right)}

    round_trip = True
    fwd: list[tuple[int, int]] = []
    for n, F in enumerate(left):
        phi = adj.transpose(F, X, E, IC)
        m = right_index.get(phi.key())
        if m is None:
            round_trip = False
            continue
        fwd.append((n, m))
        if adj.untranspose(phi, E, C).key() != F.key():
            round_trip = False
    bwd: list[tuple[int, int]] = []
    for m, phi in enumerate(right):
        F = adj.untranspose(phi, E, C)
        n = left_index.get(F.key())
        if n is None:
            round_trip = False
            continue
        bwd.append((n, m))
        if adj.transpose(F, X, E, IC).key() != phi.key():
            round_trip = False
    bijective = (len(left) == len(right) and sorted(fwd) == sorted(bwd)
                 and len({m for _, m in fwd}) == len(fwd) == len(left))

    # eps_{el X} . el(eta_X) = id
    eta = adj.unit(X, E)
    E_eta = elements(eta.target)
    eps = adj.counit(E.total, eta.target)
    tri_left = eps.after(elements_map(eta, E, E_eta)).key() == fincat.identity_functor(E.total).key()

    # I*(eps_C) . eta_{I*C} = id
    EC = elements(IC)
    eps_C = adj.untranspose(identity_morphism(IC), EC, C)
    eta_IC = adj.unit(IC, EC)
    back = I_star_map(adj.i, eps_C, eta_IC.target, IC)
    tri_right = back.after(eta_IC).same_as(identity_morphism(IC))

    alpha = counit_alpha(adj.i, C, IC, EC)
    counit_is_alpha = alpha.key() == eps_C.key()
    table = fwd if direction == "forward" else bwd
    return AdjunctionReport(len(left), len(right), bijective, round_trip, tri_left, tri_right,
                            counit_is_alpha, sorted(table))


# -- slice isomorphism ----------------------------------------------------------


@dataclass
class SliceIso:
    theta: FinFunctor
    source: FinCategory
    target: FinCategory


def theta_slice_iso(i: CatDiagram, C: FinCategory, c: str, *, cap: int = DEFAULT_CAP) -> SliceIso:
    """``theta: el(I*(C/c)) -> el(I*(C))/c``, ``(a, q) |-> ((a, pi q), q(e_a))``,
    verified to be an isomorphism."""
    Cc, pi = fincat.slice(fincat.identity_functor(C), c)
    Ic = I_star(i, Cc, cap=cap)
    IC = I_star(i, C, cap=cap)
    Ec, E = elements(Ic), elements(IC)
    alpha = counit_alpha(i, C, IC, E)
    T, _ = fincat.slice(alpha, c)
    omap, mmap, over = {}, {}, {}
    for (a, p), v in Ec.objects.items():
        q = Ic.value(a).functor(p)
        over[v] = Cc.labels[q.ob(i.terminal(a))][1]
        base = E.objects[(a, IC.value(a).id_of_functor(pi.after(q)))]
        omap[v] = pair_id(base, over[v])
    for (f, s, p2), v in Ec.arrows.items():
        a, a2 = i.base.ends(f)
        sigma = Ic.value(a).transf(s)
        q2 = Ic.value(a2).functor(p2)
        m = E.arrows[(f, IC.value(a).id_of_transf(postwhisker(pi, sigma)),
                      IC.value(a2).id_of_functor(pi.after(q2)))]
        src, tgt = Ec.total.ends(v)
        mmap[v] = f"({m},{over[src]},{over[tgt]})"
    try:
        theta = FinFunctor(Ec.total, T, omap, mmap)
    except ValidationError as exc:
        raise IsoVerificationFailed(f"theta is not a functor: {exc}") from exc
    if not theta.is_isomorphism():
        raise IsoVerificationFailed("theta is not bijective")
    return SliceIso(theta, Ec.total, T)


# -- the interval I_A*(Delta_1) and sieves ------------------------------------------


def lawvere_interval(i: CatDiagram, *, discrete: bool = False) -> Interval:
    """``I*(Delta_1)`` with the constant functors at 0 and 1 as endpoints."""
    D1 = fincat.delta(1)
    L = I_star(i, D1, discrete=discrete)
    points = []
    for eps in ("0", "1"):
        points.append({a: L.value(a).id_of_functor(fincat.constant_functor(i(a), D1, eps))
                       for a in i.base.objects})
    return Interval(L, points[0], points[1], ambient="presheaf")


def delta1_multiplication() -> FinFunctor:
    """``(a, b) |-> a + b - ab`` on ``Delta_1``."""
    D1 = fincat.delta(1)
    P = fincat.product(D1, D1)
    table = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    omap = {pair_id(str(a), str(b)): str(v) for (a, b), v in table.items()}
    mmap = {}
    for m in P.morphisms:
        s, t = P.ends(m)
        mmap[m] = D1.hom(omap[s], omap[t])[0]
    return FinFunctor(P, D1, omap, mmap, name="Lambda")


def transported_multiplication(i: CatDiagram, I: Interval | None = None,
                               op: FinFunctor | None = None) -> MultiplicativeInterval:
    """The image of a binary operation on ``Delta_1`` under ``I*``, precomposed
    with ``I*(D1) x I*(D1) ~ I*(D1 x D1)``."""
    I = I or lawvere_interval(i)
    op = op or delta1_multiplication()
    L = I.carrier
    sq = product(L, L)
    comps = {}
    for a in i.base.objects:
        H, P = L.value(a), sq.value(a)
        omap, mmap = {}, {}
        for o in P.objects:
            p, q = P.labels[o]
            omap[o] = H.id_of_functor(op.after(fincat.pairing(H.functor(p), H.functor(q), op.dom)))
        for m in P.morphisms:
            s, t = P.labels[m]
            sig, tau = H.transf(s), H.transf(t)
            src = op.after(fincat.pairing(sig.source, tau.source, op.dom))
            tgt = op.after(fincat.pairing(sig.target, tau.target, op.dom))
            comp = {x: op.mor(pair_id(sig.components[x], tau.components[x])) for x in i(a).objects}
            mmap[m] = H.id_of_transf(NatTransf(src, tgt, comp))
        comps[a] = FinFunctor(P, H, omap, mmap, check=False)
    return MultiplicativeInterval(I, PresheafMorphism(sq, L, comps), sq)


@dataclass
class SieveResult:
    u: FinFunctor
    phi: PresheafMorphism
    zero_set: list[str]
    squares_commute: bool
    interval_morphism: bool


def _iso_class_of(G: FinCategory, x: str, y: str) -> str | None:
    for m in G.hom(x, y):
        if G.is_iso(m):
            return m
    return None


def sieve_classifier(I: Interval, *, cap: int = DEFAULT_CAP) -> SieveResult:
    """The canonical morphism of intervals ``I -> I_A*(Delta_1)`` classifying
    the sieve of elements isomorphic to ``i0``."""
    X = I.carrier
    A = X.base
    for a in A.objects:
        m = _iso_class_of(X.value(a), I.i0[a], I.i1[a])
        if m is not None:
            raise NotStronglySeparating(f"i0 and i1 are isomorphic in I({a}) via {m}")
    E = elements(X)
    D1 = fincat.delta(1)
    omap = {}
    for (a, x), v in E.objects.items():
        omap[v] = "0" if _iso_class_of(X.value(a), x, I.i0[a]) is not None else "1"
    mmap = {}
    for m in E.total.morphisms:
        s, t = E.total.ends(m)
        arrows = D1.hom(omap[s], omap[t])
        if not arrows:
            raise ValidationError(f"the i0-class is not a sieve at {m}")
        mmap[m] = arrows[0]
    u = FinFunctor(E.total, D1, omap, mmap, name="u")
    squares = all(omap[E.objects[(a, I.i0[a])]] == "0" and omap[E.objects[(a, I.i1[a])]] == "1"
                  for a in A.objects)
    adj = SliceAdjunction(A, cap=cap)
    L = lawvere_interval(adj.i)
    phi = adj.transpose(u, X, E, L.carrier)
    phi._check()
    is_morphism = all(phi[a].ob(I.i0[a]) == L.i0[a] and phi[a].ob(I.i1[a]) == L.i1[a] for a in A.objects)
    zero = sorted(v for v, o in omap.items() if o == "0")
    return SieveResult(u, phi, zero, squares, is_morphism)

