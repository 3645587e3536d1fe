"""Finite categories stored as total composition tables, plus functors,
natural transformations and the standard constructions on them.

Composition follows the usual convention: ``C.compose(g, f)`` is ``g . f`` and
requires ``tgt(f) == src(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping

from .errors import (
    AssociativityViolation,
    FunctorialityViolation,
    IdentityViolation,
    IllTypedComposite,
    InvalidPosetRelation,
    MissingComposite,
    NaturalityViolation,
    SizeExceeded,
    ValidationError,
)

DEFAULT_CAP = 10**6


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


class FinCategory:
    """A finite category given by explicit tables.

    ``morphisms`` maps each morphism id to its ``(src, tgt)``; ``identities``
    maps objects to identity morphisms; ``compose`` maps composable pairs
    ``(g, f)`` to ``g . f``.  When ``fill_identities`` is set, composites
    involving an identity may be omitted and are filled in.

    ``labels`` optionally attaches a payload (a functor, a pair, ...) to object
    and morphism ids; it does not take part in equality.  ``factors`` records
    the two factors when the category was built as a product.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Mapping[str, tuple[str, str]],
        identities: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
        *,
        name: str | None = None,
        fill_identities: bool = False,
        labels: Mapping[str, Any] | None = None,
        factors: tuple["FinCategory", "FinCategory"] | None = None,
        validate: bool = True,
    ):
        self.objects: tuple[str, ...] = tuple(objects)
        self.morphisms: tuple[str, ...] = tuple(morphisms)
        self._ends: dict[str, tuple[str, str]] = {m: tuple(st) for m, st in morphisms.items()}
        self._ident: dict[str, str] = dict(identities)
        self._comp: dict[tuple[str, str], str] = dict(compose)
        self.name = name
        self.labels: dict[str, Any] = dict(labels or {})
        self.factors = factors
        if len(set(self.objects)) != len(self.objects):
            raise ValidationError("duplicate object ids")
        if fill_identities:
            for m, (s, t) in self._ends.items():
                if s in self._ident and t in self._ident:
                    self._comp.setdefault((m, self._ident[s]), m)
                    self._comp.setdefault((self._ident[t], m), m)
        self._hom: dict[tuple[str, str], tuple[str, ...]] = {}
        self._out: dict[str, list[str]] = {x: [] for x in self.objects}
        self._id_set = frozenset(self._ident.values())
        if validate:
            self._check()
        for m in self.morphisms:
            s, t = self._ends[m]
            self._hom.setdefault((s, t), ())
            self._hom[(s, t)] += (m,)
            self._out[s].append(m)

    # -- validation -------------------------------------------------------

    def _check(self) -> None:
        obs = set(self.objects)
        for m, (s, t) in self._ends.items():
            if s not in obs or t not in obs:
                raise ValidationError(f"morphism {m!r} has unknown endpoint")
        for x in self.objects:
            i = self._ident.get(x)
            if i is None or i not in self._ends:
                raise IdentityViolation(f"object {x!r} has no identity morphism")
            if self._ends[i] != (x, x):
                raise IdentityViolation(f"identity {i!r} of {x!r} is not an endomorphism of {x!r}")
        by_src: dict[str, list[str]] = {x: [] for x in self.objects}
        for m, (s, _) in self._ends.items():
            by_src[s].append(m)
        for (g, f), h in self._comp.items():
            if f not in self._ends or g not in self._ends or h not in self._ends:
                raise ValidationError(f"compose entry ({g!r}, {f!r}) -> {h!r} uses an unknown morphism")
            if self._ends[f][1] != self._ends[g][0]:
                raise IllTypedComposite(f"({g!r}, {f!r}) are not composable: tgt({f})={self._ends[f][1]!r}, src({g})={self._ends[g][0]!r}")
            if self._ends[h] != (self._ends[f][0], self._ends[g][1]):
                raise IllTypedComposite(f"composite of ({g!r}, {f!r}) is {h!r} with wrong endpoints")
        for f, (_, t) in self._ends.items():
            for g in by_src[t]:
                if (g, f) not in self._comp:
                    raise MissingComposite(f"missing composite for composable pair ({g!r}, {f!r})")
        for f, (s, t) in self._ends.items():
            if self._comp[(f, self._ident[s])] != f or self._comp[(self._ident[t], f)] != f:
                raise IdentityViolation(f"unit law fails for {f!r}")
        for f, (_, t) in self._ends.items():
            for g in by_src[t]:
                gf = self._comp[(g, f)]
                for h in by_src[self._ends[g][1]]:
                    if self._comp[(h, gf)] != self._comp[(self._comp[(h, g)], f)]:
                        raise AssociativityViolation(f"associativity fails on ({h!r}, {g!r}, {f!r})")

    # -- accessors --------------------------------------------------------

    def src(self, m: str) -> str:
        return self._ends[m][0]

    def tgt(self, m: str) -> str:
        return self._ends[m][1]

    def ends(self, m: str) -> tuple[str, str]:
        return self._ends[m]

    def identity(self, x: str) -> str:
        return self._ident[x]

    def is_identity(self, m: str) -> bool:
        return m in self._id_set

    def compose(self, g: str, f: str) -> str:
        try:
            return self._comp[(g, f)]
        except KeyError:
            raise IllTypedComposite(f"({g!r}, {f!r}) are not composable") from None

    def compose_path(self, *ms: str) -> str:
        """Compose right-to-left: ``compose_path(h, g, f) == h . g . f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    def out_of(self, x: str) -> list[str]:
        return self._out[x]

    @property
    def compose_table(self) -> dict[tuple[str, str], str]:
        return dict(self._comp)

    @property
    def identities(self) -> dict[str, str]:
        return dict(self._ident)

    def non_identities(self) -> list[str]:
        return [m for m in self.morphisms if m not in self._id_set]

    def inverse(self, m: str) -> str | None:
        s, t = self._ends[m]
        for n in self.hom(t, s):
            if self._comp[(n, m)] == self._ident[s] and self._comp[(m, n)] == self._ident[t]:
                return n
        return None

    def is_iso(self, m: str) -> bool:
        return self.inverse(m) is not None

    def is_empty(self) -> bool:
        return not self.objects

    def __len__(self) -> int:
        return len(self.objects)

    def key(self) -> tuple:
        return (
            self.objects,
            tuple((m, self._ends[m]) for m in self.morphisms),
            tuple(sorted(self._ident.items())),
            tuple(sorted(self._comp.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self is other or (
            set(self.objects) == set(other.objects)
            and self._ends == other._ends
            and self._ident == other._ident
            and self._comp == other._comp
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.objects), frozenset(self._ends.items())))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


class FinFunctor:
    """A functor between finite categories, checked exhaustively on creation."""

    def __init__(self, dom: FinCategory, cod: FinCategory, omap: Mapping[str, str],
                 mmap: Mapping[str, str], *, check: bool = True, name: str | None = None):
        self.dom = dom
        self.cod = cod
        self.omap = dict(omap)
        self.mmap = dict(mmap)
        self.name = name
        if check:
            self._check()

    def _check(self) -> None:
        D, C = self.dom, self.cod
        for x in D.objects:
            if self.omap.get(x) not in set(C.objects):
                raise FunctorialityViolation(f"object {x!r} has no valid image")
        for m in D.morphisms:
            n = self.mmap.get(m)
            if n is None or n not in C._ends:
                raise FunctorialityViolation(f"morphism {m!r} has no valid image")
            s, t = D.ends(m)
            if C.ends(n) != (self.omap[s], self.omap[t]):
                raise FunctorialityViolation(f"image of {m!r} has wrong endpoints")
        for x in D.objects:
            if self.mmap[D.identity(x)] != C.identity(self.omap[x]):
                raise FunctorialityViolation(f"identity of {x!r} not preserved")
        for (g, f), h in D._comp.items():
            if C.compose(self.mmap[g], self.mmap[f]) != self.mmap[h]:
                raise FunctorialityViolation(f"composite ({g!r}, {f!r}) not preserved")

    def ob(self, x: str) -> str:
        return self.omap[x]

    def mor(self, m: str) -> str:
        return self.mmap[m]

    def after(self, other: "FinFunctor") -> "FinFunctor":
        """``self . other``."""
        if other.cod != self.dom:
            raise ValidationError("functors are not composable")
        return FinFunctor(other.dom, self.cod,
                          {x: self.omap[y] for x, y in other.omap.items()},
                          {m: self.mmap[n] for m, n in other.mmap.items()}, check=False)

    def key(self) -> tuple:
        return (tuple(self.omap[x] for x in self.dom.objects),
                tuple(self.mmap[m] for m in self.dom.morphisms))

    def is_isomorphism(self) -> bool:
        return (len(set(self.omap.values())) == len(self.cod.objects) == len(self.dom.objects)
                and len(set(self.mmap.values())) == len(self.cod.morphisms) == len(self.dom.morphisms))

    def inverse(self) -> "FinFunctor":
        if not self.is_isomorphism():
            raise ValidationError("functor is not an isomorphism")
        return FinFunctor(self.cod, self.dom, {v: k for k, v in self.omap.items()},
                          {v: k for k, v in self.mmap.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.omap == other.omap and self.mmap == other.mmap

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"<FinFunctor {self.name or ''} {self.omap}>"


@dataclass(frozen=True)
class NatTransf:
    """A natural transformation ``source => target``; components indexed by
    objects of the common domain."""

    source: FinFunctor
    target: FinFunctor
    components: Mapping[str, str] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "components", dict(self.components))
        F, G, D = self.source, self.target, self.source.cod
        for x in F.dom.objects:
            c = self.components.get(x)
            if c is None or D.ends(c) != (F.ob(x), G.ob(x)):
                raise NaturalityViolation(f"component at {x!r} has wrong type")
        for m in F.dom.morphisms:
            s, t = F.dom.ends(m)
            if D.compose(G.mor(m), self.components[s]) != D.compose(self.components[t], F.mor(m)):
                raise NaturalityViolation(f"naturality square fails at {m!r}")

    @property
    def is_iso(self) -> bool:
        return all(self.source.cod.is_iso(c) for c in self.components.values())

    def key(self) -> tuple:
        return tuple(self.components[x] for x in self.source.dom.objects)


# -- standard constructions ---------------------------------------------


def terminal() -> FinCategory:
    return FinCategory(["pt"], {"id_pt": ("pt", "pt")}, {"pt": "id_pt"}, {}, name="e",
                       fill_identities=True)


def empty() -> FinCategory:
    return FinCategory([], {}, {}, {}, name="empty")


def poset(elements: Iterable[str], relation: Iterable[tuple[str, str]], name: str | None = None) -> FinCategory:
    """The poset category; ``relation`` lists pairs ``x <= y`` and is closed
    reflexively but must already be transitive and antisymmetric."""
    elements = [str(e) for e in elements]
    le = {(str(x), str(y)) for x, y in relation} | {(x, x) for x in elements}
    for x, y in le:
        if x not in elements or y not in elements:
            raise InvalidPosetRelation(f"pair ({x!r}, {y!r}) mentions an unknown element")
        if x != y and (y, x) in le:
            raise InvalidPosetRelation(f"antisymmetry fails for {x!r}, {y!r}")
    for (x, y), (y2, z) in itertools.product(le, le):
        if y == y2 and (x, z) not in le:
            raise InvalidPosetRelation(f"transitivity fails: {x!r} <= {y!r} <= {z!r}")

    def mid(x, y):
        return f"id_{x}" if x == y else f"{x}_{y}"

    order = {x: i for i, x in enumerate(elements)}
    pairs = sorted(le, key=lambda p: (order[p[0]], order[p[1]]))
    morphisms = {mid(x, y): (x, y) for x, y in pairs}
    comp = {}
    for x, y in pairs:
        for y2, z in pairs:
            if y == y2:
                comp[(mid(y, z), mid(x, y))] = mid(x, z)
    return FinCategory(elements, morphisms, {x: mid(x, x) for x in elements}, comp, name=name)


def delta(n: int) -> FinCategory:
    """The ordinal ``{0 < 1 < ... < n}``."""
    els = [str(i) for i in range(n + 1)]
    return poset(els, [(str(i), str(j)) for i in range(n + 1) for j in range(i, n + 1)], name=f"Delta{n}")


def discrete(n: int) -> FinCategory:
    return poset([f"x{i}" for i in range(n)], [], name=f"discrete{n}")


def cyclic_group(n: int) -> FinCategory:
    """BG for the cyclic group of order ``n``; ``s`` is the generator."""
    if n < 1:
        raise ValidationError("group order must be positive")

    def mid(k):
        k %= n
        return "id_pt" if k == 0 else ("s" if k == 1 else f"s{k}")

    morphisms = {mid(k): ("pt", "pt") for k in range(n)}
    comp = {(mid(i), mid(j)): mid(i + j) for i in range(n) for j in range(n)}
    return FinCategory(["pt"], morphisms, {"pt": "id_pt"}, comp, name=f"BG{n}")


def idempotent_monoid() -> FinCategory:
    """The monoid ``{1, s}`` with ``s.s = s``, as a one-object category."""
    return FinCategory(["pt"], {"id_pt": ("pt", "pt"), "s": ("pt", "pt")}, {"pt": "id_pt"},
                       {("s", "s"): "s"}, name="idem", fill_identities=True)


def free_iso() -> FinCategory:
    """The contractible groupoid on two objects, ``u: 0 -> 1`` and ``v = u^-1``."""
    morphisms = {"id_0": ("0", "0"), "id_1": ("1", "1"), "u": ("0", "1"), "v": ("1", "0")}
    comp = {("v", "u"): "id_0", ("u", "v"): "id_1"}
    return FinCategory(["0", "1"], morphisms, {"0": "id_0", "1": "id_1"}, comp, name="J",
                       fill_identities=True)


def product(A: FinCategory, B: FinCategory) -> FinCategory:
    objects = [pair_id(a, b) for a in A.objects for b in B.objects]
    morphisms = {}
    labels = {}
    for f in A.morphisms:
        for g in B.morphisms:
            m = pair_id(f, g)
            morphisms[m] = (pair_id(A.src(f), B.src(g)), pair_id(A.tgt(f), B.tgt(g)))
            labels[m] = (f, g)
    for a in A.objects:
        for b in B.objects:
            labels[pair_id(a, b)] = (a, b)
    identities = {pair_id(a, b): pair_id(A.identity(a), B.identity(b)) for a in A.objects for b in B.objects}
    comp = {}
    for (f2, f1), f in A._comp.items():
        for (g2, g1), g in B._comp.items():
            comp[(pair_id(f2, g2), pair_id(f1, g1))] = pair_id(f, g)
    name = f"({A.name}x{B.name})" if A.name and B.name else None
    return FinCategory(objects, morphisms, identities, comp, name=name, labels=labels,
                       factors=(A, B), validate=False)


def coproduct(A: FinCategory, B: FinCategory) -> FinCategory:
    def tag(side, x):
        return f"{side}{x}"

    objects = [tag("L", a) for a in A.objects] + [tag("R", b) for b in B.objects]
    morphisms = {tag("L", m): tuple(tag("L", x) for x in A.ends(m)) for m in A.morphisms}
    morphisms.update({tag("R", m): tuple(tag("R", x) for x in B.ends(m)) for m in B.morphisms})
    identities = {tag("L", a): tag("L", A.identity(a)) for a in A.objects}
    identities.update({tag("R", b): tag("R", B.identity(b)) for b in B.objects})
    comp = {(tag("L", g), tag("L", f)): tag("L", h) for (g, f), h in A._comp.items()}
    comp.update({(tag("R", g), tag("R", f)): tag("R", h) for (g, f), h in B._comp.items()})
    name = f"({A.name}+{B.name})" if A.name and B.name else None
    return FinCategory(objects, morphisms, identities, comp, name=name, validate=False)


def opposite(A: FinCategory) -> FinCategory:
    morphisms = {m: (A.tgt(m), A.src(m)) for m in A.morphisms}
    comp = {(f, g): h for (g, f), h in A._comp.items()}
    return FinCategory(A.objects, morphisms, A.identities, comp,
                       name=f"{A.name}^op" if A.name else None, validate=False)


STANDARD = {
    "terminal": terminal,
    "empty": empty,
    "delta": delta,
    "discrete": discrete,
    "cyclic_group": cyclic_group,
    "idempotent_monoid": idempotent_monoid,
    "free_iso": free_iso,
    "product": product,
    "coproduct": coproduct,
    "opposite": opposite,
    "poset": poset,
}


def build_standard(name: str, *params) -> FinCategory:
    """Look up a named constructor, e.g. ``build_standard("delta", 2)``."""
    try:
        ctor = STANDARD[name]
    except KeyError:
        raise ValidationError(f"unknown standard category {name!r}") from None
    return ctor(*params)


# -- functors -------------------------------------------------------------


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, check=False)


def constant_functor(C: FinCategory, D: FinCategory, d: str) -> FinFunctor:
    i = D.identity(d)
    return FinFunctor(C, D, {x: d for x in C.objects}, {m: i for m in C.morphisms}, check=False)


def to_terminal(C: FinCategory, e: FinCategory | None = None) -> FinFunctor:
    e = e or terminal()
    return constant_functor(C, e, e.objects[0])


def projection(P: FinCategory, side: int) -> FinFunctor:
    """Projection of a product category onto factor ``side`` (0 or 1)."""
    A = P.factors[side]
    return FinFunctor(P, A, {x: P.labels[x][side] for x in P.objects},
                      {m: P.labels[m][side] for m in P.morphisms}, check=False)


def pairing(F: FinFunctor, G: FinFunctor, P: FinCategory | None = None) -> FinFunctor:
    """``<F, G>: C -> A x B``."""
    P = P or product(F.cod, G.cod)
    return FinFunctor(F.dom, P, {x: pair_id(F.ob(x), G.ob(x)) for x in F.dom.objects},
                      {m: pair_id(F.mor(m), G.mor(m)) for m in F.dom.morphisms}, check=False)


def product_functor(F: FinFunctor, G: FinFunctor, dom: FinCategory | None = None,
                    cod: FinCategory | None = None) -> FinFunctor:
    dom = dom or product(F.dom, G.dom)
    cod = cod or product(F.cod, G.cod)
    return FinFunctor(dom, cod,
                      {x: pair_id(F.ob(dom.labels[x][0]), G.ob(dom.labels[x][1])) for x in dom.objects},
                      {m: pair_id(F.mor(dom.labels[m][0]), G.mor(dom.labels[m][1])) for m in dom.morphisms},
                      check=False)


def diagonal(A: FinCategory, AA: FinCategory | None = None) -> FinFunctor:
    AA = AA or product(A, A)
    return FinFunctor(A, AA, {a: pair_id(a, a) for a in A.objects},
                      {m: pair_id(m, m) for m in A.morphisms}, check=False)


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.cap:
            raise SizeExceeded(f"search exceeded cap of {self.cap} candidates")


def functors(C: FinCategory, D: FinCategory, *, cap: int = DEFAULT_CAP,
             fixed_omap: Mapping[str, str] | None = None,
             fixed_mmap: Mapping[str, str] | None = None) -> Iterator[FinFunctor]:
    """Enumerate every functor ``C -> D`` (optionally extending a partial
    assignment) by backtracking; raises SizeExceeded past ``cap`` candidates."""
    budget = _Budget(cap)
    fixed_omap = dict(fixed_omap or {})
    fixed_mmap = dict(fixed_mmap or {})
    for m, n in fixed_mmap.items():
        s, t = C.ends(m)
        ds, dt = D.ends(n)
        for x, y in ((s, ds), (t, dt)):
            if fixed_omap.setdefault(x, y) != y:
                return
    objs = list(C.objects)
    mors = [m for m in C.non_identities() if m not in fixed_mmap]
    # constraints (g, f, h) checked once the last of the three is assigned
    position = {m: i for i, m in enumerate(mors)}
    checks: dict[int, list[tuple[str, str, str]]] = {i: [] for i in range(-1, len(mors))}
    for (g, f), h in C._comp.items():
        last = max(position.get(g, -1), position.get(f, -1), position.get(h, -1))
        checks[last].append((g, f, h))
    edges = [(C.src(m), C.tgt(m)) for m in C.non_identities()]

    omap: dict[str, str] = {}
    mmap: dict[str, str] = {}

    def image(m):
        if m in mmap:
            return mmap[m]
        return D.identity(omap[C.src(m)]) if C.is_identity(m) else fixed_mmap[m]

    def consistent(i):
        for g, f, h in checks[i]:
            if D.compose(image(g), image(f)) != image(h):
                return False
        return True

    def assign_objects(k):
        if k == len(objs):
            if not consistent(-1):
                return
            yield from assign_morphisms(0)
            return
        x = objs[k]
        cands = [fixed_omap[x]] if x in fixed_omap else D.objects
        for y in cands:
            budget.tick()
            omap[x] = y
            if all(D.hom(omap[s], omap[t]) for s, t in edges if s in omap and t in omap):
                yield from assign_objects(k + 1)
            del omap[x]

    def assign_morphisms(i):
        if i == len(mors):
            full = {m: image(m) for m in C.morphisms}
            yield FinFunctor(C, D, dict(omap), full, check=False)
            return
        m = mors[i]
        for n in D.hom(omap[C.src(m)], omap[C.tgt(m)]):
            budget.tick()
            mmap[m] = n
            if consistent(i):
                yield from assign_morphisms(i + 1)
            del mmap[m]

    yield from assign_objects(0)


def natural_transformations(F: FinFunctor, G: FinFunctor, iso_only: bool = False, *,
                            cap: int = DEFAULT_CAP) -> list[NatTransf]:
    """All natural transformations ``F => G`` by exhaustive search."""
    C, D = F.dom, F.cod
    budget = _Budget(cap)
    objs = list(C.objects)
    comps: dict[str, str] = {}
    out: list[NatTransf] = []
    mors = C.non_identities()

    def ok():
        for m in mors:
            s, t = C.ends(m)
            if s in comps and t in comps:
                if D.compose(G.mor(m), comps[s]) != D.compose(comps[t], F.mor(m)):
                    return False
        return True

    def go(k):
        if k == len(objs):
            out.append(NatTransf(F, G, dict(comps)))
            return
        x = objs[k]
        for c in D.hom(F.ob(x), G.ob(x)):
            budget.tick()
            if iso_only and not D.is_iso(c):
                continue
            comps[x] = c
            if ok():
                go(k + 1)
            del comps[x]

    go(0)
    return out


def identity_transformation(F: FinFunctor) -> NatTransf:
    return NatTransf(F, F, {x: F.cod.identity(F.ob(x)) for x in F.dom.objects})


# -- slices, extremal objects, iso classes ---------------------------------


def slice(u: FinFunctor, b: str) -> tuple[FinCategory, FinFunctor]:
    """The comma category ``A/b`` of ``u: A -> B`` over ``b``: objects are
    pairs ``(a, q: u(a) -> b)``; returns it with the projection to ``A``."""
    A, B = u.dom, u.cod
    if b not in B.objects:
        raise ValidationError(f"{b!r} is not an object of the codomain")
    objects = []
    labels: dict[str, Any] = {}
    for a in A.objects:
        for q in B.hom(u.ob(a), b):
            o = pair_id(a, q)
            objects.append(o)
            labels[o] = (a, q)
    morphisms: dict[str, tuple[str, str]] = {}
    identities = {}
    for o in objects:
        a, q = labels[o]
        for f in A.out_of(a):
            a2 = A.tgt(f)
            for q2 in B.hom(u.ob(a2), b):
                if B.compose(q2, u.mor(f)) == q:
                    m = f"({f},{q},{q2})"
                    morphisms[m] = (o, pair_id(a2, q2))
                    labels[m] = f
                    if A.is_identity(f):
                        identities[o] = m
    comp = {}
    for f_id, (o1, o2) in morphisms.items():
        for g_id in (m for m, (s, _) in morphisms.items() if s == o2):
            h = A.compose(labels[g_id], labels[f_id])
            comp[(g_id, f_id)] = f"({h},{labels[o1][1]},{labels[morphisms[g_id][1]][1]})"
    S = FinCategory(objects, morphisms, identities, comp, labels=labels, validate=False,
                    name=f"{A.name}/{b}" if A.name else None)
    proj = FinFunctor(S, A, {o: labels[o][0] for o in objects}, {m: labels[m] for m in morphisms}, check=False)
    return S, proj


def extremal_objects(C: FinCategory) -> tuple[list[str], list[str]]:
    """(terminal objects, initial objects)."""
    terminal_obs = [t for t in C.objects if all(len(C.hom(x, t)) == 1 for x in C.objects)]
    initial_obs = [i for i in C.objects if all(len(C.hom(i, x)) == 1 for x in C.objects)]
    return terminal_obs, initial_obs


def iso_classes(C: FinCategory) -> list[list[str]]:
    parent = {x: x for x in C.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in C.morphisms:
        s, t = C.ends(m)
        if s != t and C.is_iso(m):
            ra, rb = find(s), find(t)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    classes: dict[str, list[str]] = {}
    for x in C.objects:
        classes.setdefault(find(x), []).append(x)
    return list(classes.values())


def connected_components(C: FinCategory) -> list[list[str]]:
    """Components of the underlying undirected graph, each sorted, listed by
    smallest member."""
    parent = {x: x for x in C.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in C.morphisms:
        ra, rb = find(C.src(m)), find(C.tgt(m))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    comps: dict[str, list[str]] = {}
    for x in sorted(C.objects):
        comps.setdefault(find(x), []).append(x)
    return sorted(comps.values(), key=lambda c: c[0])


# -- fibrations -------------------------------------------------------------


@dataclass
class FibrationResult:
    is_fibration: bool
    lifts: dict[tuple[str, str], str]
    failure: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.is_fibration


def is_cartesian(u: FinFunctor, phi: str) -> bool:
    """Check the universal property of ``phi: y -> x`` against every
    ``psi: z -> x`` and every ``h`` with ``u(phi) . h = u(psi)``."""
    E, B = u.dom, u.cod
    y, x = E.ends(phi)
    g = u.mor(phi)
    for z in E.objects:
        for psi in E.hom(z, x):
            for h in B.hom(u.ob(z), u.ob(y)):
                if B.compose(g, h) != u.mor(psi):
                    continue
                factor = [chi for chi in E.hom(z, y) if u.mor(chi) == h and E.compose(phi, chi) == psi]
                if len(factor) != 1:
                    return False
    return True


def is_grothendieck_fibration(u: FinFunctor) -> FibrationResult:
    E, B = u.dom, u.cod
    lifts: dict[tuple[str, str], str] = {}
    for x in E.objects:
        for g in B.morphisms:
            if B.tgt(g) != u.ob(x):
                continue
            found = None
            for y in E.objects:
                if u.ob(y) != B.src(g):
                    continue
                for phi in E.hom(y, x):
                    if u.mor(phi) == g and is_cartesian(u, phi):
                        found = phi
                        break
                if found:
                    break
            if found is None:
                return FibrationResult(False, lifts, (g, x))
            lifts[(g, x)] = found
    return FibrationResult(True, lifts)


# -- isomorphism search ------------------------------------------------------


def find_isomorphism(C: FinCategory, D: FinCategory, *, cap: int = DEFAULT_CAP) -> FinFunctor | None:
    """Search for an isomorphism of categories ``C -> D``; deterministic."""
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None

    def profile(K, x):
        return (sorted(len(K.hom(x, y)) for y in K.objects), sorted(len(K.hom(y, x)) for y in K.objects),
                len(K.hom(x, x)))

    pc = {x: profile(C, x) for x in C.objects}
    pd = {y: profile(D, y) for y in D.objects}
    budget = _Budget(cap)
    objs = list(C.objects)
    omap: dict[str, str] = {}

    def objects_ok():
        for x in omap:
            for y in omap:
                if len(C.hom(x, y)) != len(D.hom(omap[x], omap[y])):
                    return False
        return True

    def go(k):
        if k == len(objs):
            for F in functors(C, D, cap=cap, fixed_omap=omap):
                if F.is_isomorphism():
                    return F
            return None
        x = objs[k]
        used = set(omap.values())
        for y in D.objects:
            if y in used or pc[x] != pd[y]:
                continue
            budget.tick()
            omap[x] = y
            if objects_ok():
                r = go(k + 1)
                if r is not None:
                    return r
            del omap[x]
        return None

    return go(0)


def are_isomorphic(C: FinCategory, D: FinCategory) -> bool:
    return find_isomorphism(C, D) is not None
