"""Set-, groupoid- and category-valued presheaves over a finite base, their
strict morphisms and 2-morphisms, and intervals with the homotopy relation
they generate.

A presheaf ``X`` on ``A`` sends ``f: a -> a2`` to a functor
``X(f): X(a2) -> X(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from . import fincat
from .errors import (
    DiscretenessViolation,
    FunctorialityViolation,
    NaturalityViolation,
    SizeExceeded,
    ValidationError,
)
from .fincat import DEFAULT_CAP, FinCategory, FinFunctor, NatTransf, pair_id
from .grpd import FinGroupoid, discrete_groupoid, is_discrete, is_groupoid


def _same_map(F: FinFunctor, G: FinFunctor) -> bool:
    return F.omap == G.omap and F.mmap == G.mmap


class CatPresheaf:
    """A strict functor ``A^op -> Cat``."""

    kind = "cat"

    def __init__(self, base: FinCategory, values: Mapping[str, FinCategory],
                 actions: Mapping[str, FinFunctor], *, check: bool = True, name: str | None = None):
        self.base = base
        self.values = {a: self._coerce(a, values[a]) for a in base.objects}
        self.actions = dict(actions)
        self.name = name
        if check:
            self._check()

    def _coerce(self, a: str, C: FinCategory) -> FinCategory:
        return C

    def _check(self) -> None:
        A = self.base
        for f in A.morphisms:
            F = self.actions.get(f)
            if F is None:
                raise FunctorialityViolation(f"no action given for {f!r}")
            a, a2 = A.ends(f)
            if F.dom != self.values[a2] or F.cod != self.values[a]:
                raise FunctorialityViolation(f"action of {f!r} must be a functor X({a2}) -> X({a})")
            F._check()
        for a in A.objects:
            F = self.actions[A.identity(a)]
            if any(F.omap[x] != x for x in F.dom.objects) or any(F.mmap[m] != m for m in F.dom.morphisms):
                raise FunctorialityViolation(f"identity of {a!r} does not act as the identity")
        for (g, f), h in A.compose_table.items():
            # X(g . f) = X(f) . X(g)
            if not _same_map(self.actions[h], self.actions[f].after(self.actions[g])):
                raise FunctorialityViolation(f"X({g} . {f}) != X({f}) . X({g})")

    def value(self, a: str) -> FinCategory:
        return self.values[a]

    def action(self, f: str) -> FinFunctor:
        return self.actions[f]

    def same_as(self, other: "CatPresheaf") -> bool:
        """Structural equality of bases, values and actions."""
        return (self.base == other.base
                and all(self.values[a] == other.values[a] for a in self.base.objects)
                and all(_same_map(self.actions[f], other.actions[f]) for f in self.base.morphisms))

    def is_empty(self) -> bool:
        return all(V.is_empty() for V in self.values.values())

    def __repr__(self) -> str:
        sizes = {a: len(self.values[a].objects) for a in self.base.objects}
        return f"<{type(self).__name__} {self.name or ''} over {self.base.name}: {sizes}>"


class GrpdPresheaf(CatPresheaf):
    kind = "grpd"

    def _coerce(self, a, C):
        if not is_groupoid(C):
            raise ValidationError(f"value at {a!r} is not a groupoid")
        return FinGroupoid.from_category(C)


class SetPresheaf(GrpdPresheaf):
    kind = "set"

    def _coerce(self, a, C):
        if not is_discrete(C):
            raise DiscretenessViolation(f"value at {a!r} has non-identity morphisms")
        return super()._coerce(a, C)


_KINDS = {"cat": CatPresheaf, "grpd": GrpdPresheaf, "set": SetPresheaf}


def _meet_kind(*xs: CatPresheaf) -> type:
    rank = {"set": 0, "grpd": 1, "cat": 2}
    return _KINDS[max((x.kind for x in xs), key=rank.__getitem__)]


def embed_discrete(S: SetPresheaf) -> GrpdPresheaf:
    return GrpdPresheaf(S.base, S.values, S.actions, check=False, name=S.name)


def as_cat_presheaf(X: CatPresheaf) -> CatPresheaf:
    return CatPresheaf(X.base, X.values, X.actions, check=False, name=X.name)


# -- morphisms ---------------------------------------------------------------


class PresheafMorphism:
    """A strict natural transformation: one functor per base object."""

    def __init__(self, source: CatPresheaf, target: CatPresheaf, components: Mapping[str, FinFunctor],
                 *, check: bool = True):
        if source.base != target.base:
            raise ValidationError("presheaves live over different bases")
        self.source = source
        self.target = target
        self.components = dict(components)
        if check:
            self._check()

    def _check(self) -> None:
        X, Y, A = self.source, self.target, self.source.base
        for a in A.objects:
            F = self.components.get(a)
            if F is None or F.dom != X.value(a) or F.cod != Y.value(a):
                raise NaturalityViolation(f"component at {a!r} has the wrong type")
        for f in A.morphisms:
            a, a2 = A.ends(f)
            left = Y.action(f).after(self.components[a2])
            right = self.components[a].after(X.action(f))
            if not _same_map(left, right):
                raise NaturalityViolation(f"naturality fails at {f!r}")

    def __getitem__(self, a: str) -> FinFunctor:
        return self.components[a]

    def after(self, other: "PresheafMorphism") -> "PresheafMorphism":
        return PresheafMorphism(other.source, self.target,
                                {a: self.components[a].after(other.components[a]) for a in self.source.base.objects},
                                check=False)

    def same_as(self, other: "PresheafMorphism") -> bool:
        return all(_same_map(self.components[a], other.components[a]) for a in self.source.base.objects)

    def key(self) -> tuple:
        return tuple(self.components[a].key() for a in self.source.base.objects)


def identity_morphism(X: CatPresheaf) -> PresheafMorphism:
    return PresheafMorphism(X, X, {a: fincat.identity_functor(X.value(a)) for a in X.base.objects}, check=False)


@dataclass
class TwoMorphism:
    source: PresheafMorphism
    target: PresheafMorphism
    components: dict[str, NatTransf] = field(default_factory=dict)

    def inverse(self) -> "TwoMorphism":
        comps = {}
        for a, t in self.components.items():
            D = t.source.cod
            comps[a] = NatTransf(t.target, t.source, {x: D.inverse(c) for x, c in t.components.items()})
        return TwoMorphism(self.target, self.source, comps)


def is_two_morphism(phi: PresheafMorphism, psi: PresheafMorphism, comps: Mapping[str, NatTransf]) -> bool:
    X, Y, A = phi.source, phi.target, phi.source.base
    for f in A.morphisms:
        a, a2 = A.ends(f)
        for x2 in X.value(a2).objects:
            if comps[a].components[X.action(f).ob(x2)] != Y.action(f).mor(comps[a2].components[x2]):
                return False
    return True


def two_morphisms(phi: PresheafMorphism, psi: PresheafMorphism, *, cap: int = DEFAULT_CAP) -> list[TwoMorphism]:
    """Every invertible strict 2-morphism ``phi => psi``."""
    A = phi.source.base
    per_object = {a: fincat.natural_transformations(phi[a], psi[a], iso_only=True, cap=cap) for a in A.objects}
    objs = list(A.objects)
    out: list[TwoMorphism] = []
    chosen: dict[str, NatTransf] = {}
    X, Y = phi.source, phi.target

    def ok():
        for f in A.morphisms:
            a, a2 = A.ends(f)
            if a in chosen and a2 in chosen:
                for x2 in X.value(a2).objects:
                    if chosen[a].components[X.action(f).ob(x2)] != Y.action(f).mor(chosen[a2].components[x2]):
                        return False
        return True

    def go(k):
        if k == len(objs):
            out.append(TwoMorphism(phi, psi, dict(chosen)))
            return
        a = objs[k]
        for t in per_object[a]:
            chosen[a] = t
            if ok():
                go(k + 1)
            del chosen[a]

    go(0)
    return out


def presheaf_morphisms(X: CatPresheaf, Y: CatPresheaf, *, cap: int = DEFAULT_CAP,
                       fixed_omap: Mapping[str, Mapping[str, str]] | None = None,
                       fixed_mmap: Mapping[str, Mapping[str, str]] | None = None) -> Iterator[PresheafMorphism]:
    """Enumerate strict morphisms ``X -> Y``, optionally with prescribed
    partial components."""
    A = X.base
    fixed_omap = fixed_omap or {}
    fixed_mmap = fixed_mmap or {}
    objs = list(A.objects)
    chosen: dict[str, FinFunctor] = {}
    budget = fincat._Budget(cap)

    def ok(a):
        for f in A.morphisms:
            s, t = A.ends(f)
            if a not in (s, t) or s not in chosen or t not in chosen:
                continue
            left = Y.action(f).after(chosen[t])
            right = chosen[s].after(X.action(f))
            if not _same_map(left, right):
                return False
        return True

    def go(k):
        if k == len(objs):
            yield PresheafMorphism(X, Y, dict(chosen), check=False)
            return
        a = objs[k]
        for F in fincat.functors(X.value(a), Y.value(a), cap=cap, fixed_omap=fixed_omap.get(a),
                                 fixed_mmap=fixed_mmap.get(a)):
            budget.tick()
            chosen[a] = F
            if ok(a):
                yield from go(k + 1)
            del chosen[a]

    yield from go(0)


# -- constructors --------------------------------------------------------------


def _point() -> FinGroupoid:
    return FinGroupoid.from_category(fincat.terminal())


def terminal(A: FinCategory) -> SetPresheaf:
    pt = _point()
    ident = fincat.identity_functor(pt)
    return SetPresheaf(A, {a: pt for a in A.objects}, {f: ident for f in A.morphisms}, check=False,
                       name="terminal")


def constant(A: FinCategory, C: FinCategory) -> CatPresheaf:
    ident = fincat.identity_functor(C)
    cls = SetPresheaf if is_discrete(C) else GrpdPresheaf if is_groupoid(C) else CatPresheaf
    return cls(A, {a: C for a in A.objects}, {f: ident for f in A.morphisms}, check=False,
               name=f"const({C.name})")


def representable(A: FinCategory, a: str) -> SetPresheaf:
    """``b |-> Hom_A(b, a)`` as discrete groupoids; ``f: b -> b2`` acts by
    precomposition."""
    values = {b: discrete_groupoid(A.hom(b, a)) for b in A.objects}
    actions = {}
    for f in A.morphisms:
        b, b2 = A.ends(f)
        omap = {p: A.compose(p, f) for p in A.hom(b2, a)}
        mmap = {ident: f"id[{A.compose(p, f)}]" for p, ident in ((p, f"id[{p}]") for p in A.hom(b2, a))}
        actions[f] = FinFunctor(values[b2], values[b], omap, mmap, check=False)
    return SetPresheaf(A, values, actions, check=False, name=f"y({a})")


def product(X: CatPresheaf, Y: CatPresheaf) -> CatPresheaf:
    if X.base != Y.base:
        raise ValidationError("presheaves live over different bases")
    A = X.base
    values = {a: fincat.product(X.value(a), Y.value(a)) for a in A.objects}
    actions = {}
    for f in A.morphisms:
        a, a2 = A.ends(f)
        actions[f] = fincat.product_functor(X.action(f), Y.action(f), values[a2], values[a])
    name = f"{X.name}x{Y.name}" if X.name and Y.name else None
    return _meet_kind(X, Y)(A, values, actions, check=False, name=name)


def product_projection(P: CatPresheaf, factor: CatPresheaf, side: int) -> PresheafMorphism:
    """Projection of ``P = product(X, Y)`` onto ``factor`` (``X`` for side 0)."""
    comps = {a: fincat.projection(P.value(a), side) for a in P.base.objects}
    return PresheafMorphism(P, factor, comps, check=False)


def product_morphism(phi: PresheafMorphism, psi: PresheafMorphism,
                     source: CatPresheaf | None = None, target: CatPresheaf | None = None) -> PresheafMorphism:
    source = source or product(phi.source, psi.source)
    target = target or product(phi.target, psi.target)
    comps = {a: fincat.product_functor(phi[a], psi[a], source.value(a), target.value(a))
             for a in source.base.objects}
    return PresheafMorphism(source, target, comps, check=False)


def restrict(u: FinFunctor, X: CatPresheaf) -> CatPresheaf:
    """``u^* X = X . u``."""
    if X.base != u.cod:
        raise ValidationError("presheaf base must be the codomain of u")
    values = {a: X.value(u.ob(a)) for a in u.dom.objects}
    actions = {f: X.action(u.mor(f)) for f in u.dom.morphisms}
    return type(X)(u.dom, values, actions, check=False, name=f"{X.name}|" if X.name else None)


def restrict_morphism(u: FinFunctor, phi: PresheafMorphism, source: CatPresheaf | None = None,
                      target: CatPresheaf | None = None) -> PresheafMorphism:
    source = source or restrict(u, phi.source)
    target = target or restrict(u, phi.target)
    return PresheafMorphism(source, target, {a: phi[u.ob(a)] for a in u.dom.objects}, check=False)


def to_terminal_morphism(X: CatPresheaf, T: SetPresheaf | None = None) -> PresheafMorphism:
    T = T or terminal(X.base)
    return PresheafMorphism(X, T, {a: fincat.to_terminal(X.value(a), T.value(a)) for a in X.base.objects},
                            check=False)


def global_sections(X: CatPresheaf, *, cap: int = DEFAULT_CAP) -> list[dict[str, str]]:
    """Compatible families ``a |-> x_a`` with ``X(f)(x_a2) == x_a``, i.e. the
    morphisms from the terminal presheaf."""
    A = X.base
    objs = list(A.objects)
    out: list[dict[str, str]] = []
    chosen: dict[str, str] = {}
    budget = fincat._Budget(cap)

    def ok(a):
        for f in A.morphisms:
            s, t = A.ends(f)
            if a in (s, t) and s in chosen and t in chosen:
                if X.action(f).ob(chosen[t]) != chosen[s]:
                    return False
        return True

    def go(k):
        if k == len(objs):
            out.append(dict(chosen))
            return
        a = objs[k]
        for x in X.value(a).objects:
            budget.tick()
            chosen[a] = x
            if ok(a):
                go(k + 1)
            del chosen[a]

    go(0)
    return out


def point_morphism(X: CatPresheaf, section: Mapping[str, str], T: SetPresheaf | None = None) -> PresheafMorphism:
    T = T or terminal(X.base)
    comps = {}
    for a in X.base.objects:
        pt = T.value(a)
        x = section[a]
        comps[a] = FinFunctor(pt, X.value(a), {pt.objects[0]: x}, {pt.morphisms[0]: X.value(a).identity(x)},
                              check=False)
    return PresheafMorphism(T, X, comps)


def constant_morphism(X: CatPresheaf, Y: CatPresheaf, section: Mapping[str, str]) -> PresheafMorphism:
    """``X -> * -> Y`` through the global section ``section`` of ``Y``."""
    comps = {a: fincat.constant_functor(X.value(a), Y.value(a), section[a]) for a in X.base.objects}
    return PresheafMorphism(X, Y, comps, check=False)


# -- intervals ---------------------------------------------------------------------


@dataclass
class Interval:
    """An interval ``(I, i0, i1)``.

    ``ambient`` is ``"cat"`` (carrier a FinCategory, points object ids) or
    ``"presheaf"`` (carrier a presheaf, points global sections given as
    ``{a: object}`` maps).
    """

    carrier: FinCategory | CatPresheaf
    i0: str | Mapping[str, str]
    i1: str | Mapping[str, str]
    ambient: str = "presheaf"

    def __post_init__(self):
        if self.ambient == "cat":
            if not isinstance(self.carrier, FinCategory):
                raise ValidationError("a Cat interval needs a category carrier")
            for p in (self.i0, self.i1):
                if p not in self.carrier.objects:
                    raise ValidationError(f"point {p!r} is not an object of the carrier")
        elif self.ambient == "presheaf":
            if not isinstance(self.carrier, CatPresheaf):
                raise ValidationError("a presheaf interval needs a presheaf carrier")
            self.i0 = dict(self.i0)
            self.i1 = dict(self.i1)
            for p in (self.i0, self.i1):
                point_morphism(self.carrier, p)
        else:
            raise ValidationError(f"unknown ambient {self.ambient!r}")

    def point(self, eps: int):
        return self.i0 if eps == 0 else self.i1


@dataclass
class MultiplicativeInterval:
    interval: Interval
    op: FinFunctor | PresheafMorphism
    square: FinCategory | CatPresheaf | None = None


def delta1_interval() -> Interval:
    return Interval(fincat.delta(1), "0", "1", ambient="cat")


# -- homotopies ------------------------------------------------------------------


@dataclass
class HomotopyResult:
    homotopies: list
    homotopic: bool
    classes: int


class _UnionFind:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, k):
        while self.parent[k] != k:
            self.parent[k] = self.parent[self.parent[k]]
            k = self.parent[k]
        return k

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _cat_homotopy_edges(I: Interval, X: FinCategory, Y: FinCategory, cap: int):
    P = fincat.product(I.carrier, X)
    for h in fincat.functors(P, Y, cap=cap):
        ends = []
        for p in (I.i0, I.i1):
            ip = I.carrier.identity(p)
            ends.append(FinFunctor(X, Y, {x: h.ob(pair_id(p, x)) for x in X.objects},
                                   {m: h.mor(pair_id(ip, m)) for m in X.morphisms}, check=False))
        yield h, ends[0], ends[1]


def _psh_homotopy_edges(I: Interval, X: CatPresheaf, Y: CatPresheaf, cap: int):
    P = product(I.carrier, X)
    for h in presheaf_morphisms(P, Y, cap=cap):
        ends = []
        for p in (I.i0, I.i1):
            comps = {}
            for a in X.base.objects:
                ip = I.carrier.value(a).identity(p[a])
                comps[a] = FinFunctor(X.value(a), Y.value(a),
                                      {x: h[a].ob(pair_id(p[a], x)) for x in X.value(a).objects},
                                      {m: h[a].mor(pair_id(ip, m)) for m in X.value(a).morphisms}, check=False)
            ends.append(PresheafMorphism(X, Y, comps, check=False))
        yield h, ends[0], ends[1]


def enumerate_homotopies(I: Interval, f, g, *, cap: int = DEFAULT_CAP) -> HomotopyResult:
    """All I-homotopies from ``f`` to ``g`` and whether the two are
    I-homotopic (equivalence relation generated on the whole hom-set)."""
    if I.ambient == "cat":
        X, Y = f.dom, f.cod
        vertices = [F.key() for F in fincat.functors(X, Y, cap=cap)]
        edges = _cat_homotopy_edges(I, X, Y, cap)
    else:
        X, Y = f.source, f.target
        vertices = [F.key() for F in presheaf_morphisms(X, Y, cap=cap)]
        edges = _psh_homotopy_edges(I, X, Y, cap)
    uf = _UnionFind(vertices)
    direct = []
    fk, gk = f.key(), g.key()
    for h, start, end in edges:
        uf.union(start.key(), end.key())
        if start.key() == fk and end.key() == gk:
            direct.append(h)
    classes = len({uf.find(v) for v in vertices})
    return HomotopyResult(direct, uf.find(fk) == uf.find(gk), classes)


def is_contractible(I: Interval, X, *, cap: int = DEFAULT_CAP) -> bool:
    """Is ``id_X`` I-homotopic to a morphism factoring through the terminal
    object?"""
    if I.ambient == "cat":
        if X.is_empty():
            return False
        ident = fincat.identity_functor(X)
        vertices = [F.key() for F in fincat.functors(X, X, cap=cap)]
        constants = {fincat.constant_functor(X, X, x).key() for x in X.objects}
        edges = _cat_homotopy_edges(I, X, X, cap)
    else:
        ident = identity_morphism(X)
        sections = global_sections(X, cap=cap)
        if not sections:
            return False
        vertices = [F.key() for F in presheaf_morphisms(X, X, cap=cap)]
        constants = {constant_morphism(X, X, s).key() for s in sections}
        edges = _psh_homotopy_edges(I, X, X, cap)
    uf = _UnionFind(vertices)
    for _, start, end in edges:
        uf.union(start.key(), end.key())
    root = uf.find(ident.key())
    return any(uf.find(c) == root for c in constants)


def try_contractible(I: Interval, X, cap: int) -> bool | None:
    """``is_contractible`` under a cap; ``None`` when the search is too big."""
    try:
        return is_contractible(I, X, cap=cap)
    except SizeExceeded:
        return None
