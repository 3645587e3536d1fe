"""Nerves, normalized chain complexes, integral homology and the asphericity
oracles for the localizers W1 (exact) and W-infinity (evidence only)."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fincat
from .elements import elements_map, grothendieck
from .fincat import FinCategory, FinFunctor
from .grpd import DEFAULT_BUDGET, TRIVIAL_GROUP, group_compare, localize, vertex_group, w1_class
from .presheaf import PresheafMorphism, delta1_interval, try_contractible
from .snf import invariant_factors
from .verdict import Verdict, conjunction

Simplex = tuple[str, ...]


@dataclass
class TruncatedNerve:
    """Nondegenerate simplices up to ``dimension``.

    Degree 0 holds 1-tuples of objects; degree ``k > 0`` holds chains of ``k``
    composable non-identity morphisms in application order.  ``faces[k][j]``
    lists ``(index, sign)`` pairs for the nondegenerate faces of simplex
    ``j``; degenerate faces are omitted.
    """

    category: FinCategory
    dimension: int
    simplices: list[list[Simplex]]
    faces: list[list[list[tuple[int, int]]]]

    def sizes(self) -> list[int]:
        return [len(s) for s in self.simplices]


def _face(C: FinCategory, s: Simplex, i: int) -> Simplex | None:
    k = len(s)
    if k == 1:
        return (C.tgt(s[0]),) if i == 0 else (C.src(s[0]),)
    if i == 0:
        return s[1:]
    if i == k:
        return s[:-1]
    h = C.compose(s[i], s[i - 1])
    if C.is_identity(h):
        return None
    return s[:i - 1] + (h,) + s[i + 1:]


def nerve(C: FinCategory, d: int) -> TruncatedNerve:
    if d < 0:
        raise ValueError("dimension must be non-negative")
    arrows = C.non_identities()
    out_of: dict[str, list[str]] = {x: [] for x in C.objects}
    for m in arrows:
        out_of[C.src(m)].append(m)
    simplices: list[list[Simplex]] = [[(x,) for x in C.objects]]
    if d >= 1:
        simplices.append([(m,) for m in arrows])
    for _ in range(2, d + 1):
        simplices.append([s + (m,) for s in simplices[-1] for m in out_of[C.tgt(s[-1])]])
    faces: list[list[list[tuple[int, int]]]] = [[[] for _ in simplices[0]]]
    for k in range(1, d + 1):
        index = {s: j for j, s in enumerate(simplices[k - 1])}
        per = []
        for s in simplices[k]:
            entries = []
            for i in range(k + 1):
                f = _face(C, s, i)
                if f is not None:
                    entries.append((index[f], -1 if i % 2 else 1))
            per.append(entries)
        faces.append(per)
    return TruncatedNerve(C, d, simplices, faces)


@dataclass
class ChainComplex:
    """``boundaries[k]`` is the matrix of ``d_k: C_k -> C_{k-1}`` (rows indexed
    by ``(k-1)``-simplices); ``boundaries[0]`` is empty."""

    ranks: list[int]
    boundaries: list[list[list[int]]]

    def is_complex(self) -> bool:
        for k in range(2, len(self.ranks)):
            A, B = self.boundaries[k - 1], self.boundaries[k]
            for r in range(self.ranks[k - 2]):
                for c in range(self.ranks[k]):
                    if sum(A[r][j] * B[j][c] for j in range(self.ranks[k - 1])):
                        return False
        return True


def chain_complex(N: TruncatedNerve) -> ChainComplex:
    ranks = N.sizes()
    boundaries: list[list[list[int]]] = [[]]
    for k in range(1, len(ranks)):
        M = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for j, entries in enumerate(N.faces[k]):
            for i, sign in entries:
                M[i][j] += sign
        boundaries.append(M)
    return ChainComplex(ranks, boundaries)


@dataclass
class HomologyGroup:
    betti: int
    torsion: list[int]
    valid: bool = True

    def __str__(self) -> str:
        parts = (["Z" if self.betti == 1 else f"Z^{self.betti}"] if self.betti else [])
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion


@dataclass
class HomologyReport:
    groups: list[HomologyGroup]
    bound: int

    def __getitem__(self, k: int) -> HomologyGroup:
        return self.groups[k]

    def reduced_is_zero(self) -> bool:
        return (self.groups[0].betti == 1 and not self.groups[0].torsion
                and all(g.is_zero for g in self.groups[1:self.bound + 1]))

    def to_dict(self) -> dict:
        return {str(k): {"betti": g.betti, "torsion": g.torsion, "valid": g.valid}
                for k, g in enumerate(self.groups)}

    def __str__(self) -> str:
        return ", ".join(f"H{k}={g}" for k, g in enumerate(self.groups[:self.bound + 1]))


def homology(C: FinCategory, d: int) -> HomologyReport:
    """Integral homology of the normalized nerve, exact in degrees ``<= d``.

    Degree ``d + 1`` is included with ``valid=False``: its cycles are known but
    its boundaries need ``(d + 2)``-simplices.
    """
    if d < 0:
        raise ValueError("bound must be non-negative")
    cc = chain_complex(nerve(C, d + 1))
    ranks = cc.ranks
    factors = [[]] + [invariant_factors(cc.boundaries[k], ranks[k]) for k in range(1, len(ranks))]
    groups = []
    for k in range(d + 2):
        rank_out = len(factors[k]) if k > 0 else 0
        if k + 1 < len(ranks):
            into = factors[k + 1]
            groups.append(HomologyGroup(ranks[k] - rank_out - len(into), [t for t in into if t > 1]))
        else:
            groups.append(HomologyGroup(ranks[k] - rank_out, [], valid=False))
    return HomologyReport(groups, d)


# -- localizers and asphericity ----------------------------------------------------


@dataclass(frozen=True)
class LocalizerSpec:
    """``kind`` is ``"w1"`` (exact) or ``"winf"`` (evidence).  ``budget``
    bounds coset enumeration, ``dim`` the homology degree and
    ``contract_cap`` the Delta_1-contractibility search."""

    kind: str = "w1"
    budget: int = DEFAULT_BUDGET
    dim: int = 3
    contract_cap: int = 20_000

    def __post_init__(self):
        if self.kind not in ("w1", "winf"):
            raise ValueError(f"unknown localizer {self.kind!r}")
        if self.budget <= 0 or self.dim < 1 or self.contract_cap <= 0:
            raise ValueError("budgets must be positive")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "budget": self.budget, "dim": self.dim}


W1 = LocalizerSpec("w1")
WINF = LocalizerSpec("winf")


def _sufficient(C: FinCategory) -> Verdict | None:
    terminals, initials = fincat.extremal_objects(C)
    if terminals:
        return Verdict.yes(reason="terminal object", object=terminals[0])
    if initials:
        return Verdict.yes(reason="initial object", object=initials[0])
    return None


def is_aspherical(C: FinCategory, loc: LocalizerSpec = W1) -> Verdict:
    if C.is_empty():
        return Verdict.no(reason="empty category", components=0)
    quick = _sufficient(C)
    if quick is not None:
        return quick
    components = fincat.connected_components(C)
    if len(components) > 1:
        return Verdict.no(reason="not connected", components=len(components),
                          representatives=[c[0] for c in components])
    G = localize(C)
    pi1 = group_compare(vertex_group(G), TRIVIAL_GROUP, loc.budget)
    if loc.kind == "w1":
        if pi1.is_yes:
            return Verdict.yes(reason="connected with trivial fundamental group",
                               pi1=vertex_group(G).to_dict())
        if pi1.is_no:
            return Verdict.no(reason="nontrivial fundamental group", pi1=vertex_group(G).to_dict(),
                              cause=pi1.evidence)
        return Verdict.unknown(reason="fundamental group undecided", pi1=vertex_group(G).to_dict())
    H = homology(C, loc.dim)
    if not H.reduced_is_zero():
        return Verdict.no(reason="nonzero reduced homology", homology=H.to_dict(), bound=loc.dim)
    if pi1.is_no:
        return Verdict.no(reason="nontrivial fundamental group", pi1=vertex_group(G).to_dict(),
                          cause=pi1.evidence)
    contractible = try_contractible(delta1_interval(), C, loc.contract_cap)
    if contractible:
        return Verdict.yes(reason="Delta_1-contractible")
    return Verdict.unknown(reason="no sufficient certificate", homology_bound=loc.dim,
                           pi1_trivial=pi1.is_yes, contractibility_searched=contractible is not None)


def is_aspherical_morphism(u: FinFunctor, loc: LocalizerSpec = W1) -> Verdict:
    """Every slice ``A/b`` aspherical."""
    parts = [(b, is_aspherical(fincat.slice(u, b)[0], loc)) for b in u.cod.objects]
    return conjunction(parts, check="slices")


def weak_equivalence(u: FinFunctor, loc: LocalizerSpec = W1) -> Verdict:
    """Is ``u`` in the localizer?  Exact for W1; evidence for W-infinity."""
    if loc.kind == "w1":
        return w1_class(u, loc.budget)
    if u.is_isomorphism():
        return Verdict.yes(reason="isomorphism of categories")
    w1 = w1_class(u, loc.budget)
    if w1.is_no:
        return Verdict.no(reason="not a W1-equivalence", cause=w1.evidence)
    Hs, Ht = homology(u.dom, loc.dim), homology(u.cod, loc.dim)
    for k in range(loc.dim + 1):
        if (Hs[k].betti, Hs[k].torsion) != (Ht[k].betti, Ht[k].torsion):
            return Verdict.no(reason="homology differs", degree=k, source=str(Hs[k]), target=str(Ht[k]))
    slices = is_aspherical_morphism(u, loc)
    if slices.is_yes:
        return Verdict.yes(reason="aspherical morphism", slices=slices.evidence)
    ends = (is_aspherical(u.dom, loc), is_aspherical(u.cod, loc))
    if all(v.is_yes for v in ends):
        return Verdict.yes(reason="source and target aspherical")
    return Verdict.unknown(reason="no certificate", homology_bound=loc.dim)


@dataclass
class ThomasonRecord:
    pointwise: dict[str, Verdict]
    total: Verdict
    consistent: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"pointwise": {a: v.to_dict() for a, v in self.pointwise.items()},
                "total": self.total.to_dict(), "consistent": self.consistent}


def thomason_check(phi: PresheafMorphism, loc: LocalizerSpec = W1) -> ThomasonRecord:
    """Pointwise verdicts for ``phi_a`` and the verdict for the induced
    functor of Grothendieck constructions."""
    pointwise = {a: weak_equivalence(phi[a], loc) for a in phi.source.base.objects}
    total = weak_equivalence(elements_map(phi, grothendieck(phi.source), grothendieck(phi.target)), loc)
    violated = all(v.is_yes for v in pointwise.values()) and total.is_no
    return ThomasonRecord(pointwise, total, not violated)
