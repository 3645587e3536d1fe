"""JSON documents for categories, functors, presheaves, presheaf morphisms,
diagrams and intervals.

Every document is ``{"kind": ..., "body": ...}``.  Identities are implied:
``morphisms`` lists only non-identity arrows and ``compose`` only composites
of two non-identity arrows, as ``[g, f, g.f]`` triples.  A category body may
instead be the string ``"corpus:<name>"``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Mapping

from . import fincat
from .adjoints import CatDiagram
from .errors import ParseError, ValidationError
from .fincat import FinCategory, FinFunctor
from .presheaf import (
    CatPresheaf,
    GrpdPresheaf,
    Interval,
    MultiplicativeInterval,
    PresheafMorphism,
    SetPresheaf,
    product,
)

KINDS = ("category", "functor", "presheaf", "morphism", "diagram", "interval")
_ID = re.compile(r"\S+")
_PRESHEAF_TYPES = {"set": SetPresheaf, "grpd": GrpdPresheaf, "cat": CatPresheaf}


def _need(body: Mapping, key: str, where: str, kind=None):
    if not isinstance(body, Mapping) or key not in body:
        raise ParseError(f"missing field {key!r}", field=f"{where}.{key}")
    value = body[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"field {key!r} has the wrong type", field=f"{where}.{key}")
    return value


def _ident(x: Any, where: str) -> str:
    if not isinstance(x, str) or not _ID.fullmatch(x):
        raise ParseError(f"invalid id {x!r}", field=where)
    return x


# -- categories ----------------------------------------------------------------------


def category_from_body(body: Any, where: str = "body") -> FinCategory:
    if isinstance(body, str):
        if body.startswith("corpus:"):
            from .corpus import load_category

            return load_category(body[len("corpus:"):])
        raise ParseError(f"unknown category reference {body!r}", field=where)
    objects = [_ident(x, f"{where}.objects") for x in _need(body, "objects", where, list)]
    raw = body.get("morphisms", {})
    if isinstance(raw, list):
        # long form: [{"id": .., "src": .., "tgt": ..}, ...]
        try:
            raw = {m["id"]: [m["src"], m["tgt"]] for m in raw}
        except (TypeError, KeyError):
            raise ParseError("morphism entries need id, src and tgt", field=f"{where}.morphisms") from None
    if not isinstance(raw, Mapping):
        raise ParseError("morphisms must map ids to [source, target]", field=f"{where}.morphisms")
    morphisms = {}
    for m, ends in raw.items():
        if not (isinstance(ends, list) and len(ends) == 2):
            raise ParseError(f"morphism {m!r} needs [source, target]", field=f"{where}.morphisms.{m}")
        morphisms[_ident(m, f"{where}.morphisms")] = (_ident(ends[0], f"{where}.morphisms.{m}"),
                                                      _ident(ends[1], f"{where}.morphisms.{m}"))
    identities = body.get("identities") or {x: f"id_{x}" for x in objects}
    if not isinstance(identities, Mapping):
        raise ParseError("identities must map objects to ids", field=f"{where}.identities")
    for x, i in identities.items():
        if i in morphisms:
            raise ParseError(f"identity {i!r} is also listed as a morphism", field=f"{where}.identities")
        morphisms[_ident(i, f"{where}.identities")] = (x, x)
    comp = {}
    for n, triple in enumerate(body.get("compose", [])):
        if not (isinstance(triple, list) and len(triple) == 3 and all(isinstance(t, str) for t in triple)):
            raise ParseError(f"malformed compose triple {triple!r}", field=f"{where}.compose[{n}]")
        g, f, h = triple
        if (g, f) in comp:
            raise ParseError(f"duplicate compose triple {triple!r}", field=f"{where}.compose[{n}]")
        comp[(g, f)] = h
    for x in objects:
        if x not in identities:
            raise ParseError(f"object {x!r} has no identity", field=f"{where}.identities")
    C = FinCategory(objects, morphisms, identities, comp, name=body.get("name"), fill_identities=True)
    if "factors" in body:
        raw_factors = _need(body, "factors", where, list)
        if len(raw_factors) != 2:
            raise ParseError("factors must list two categories", field=f"{where}.factors")
        A, B = (category_from_body(f, f"{where}.factors[{n}]") for n, f in enumerate(raw_factors))
        P = fincat.product(A, B)
        if P != C:
            raise ValidationError("category is not the declared product of its factors")
        # keep the document's ordering; only the product structure is added
        C.labels.update(P.labels)
        C.factors = P.factors
    return C


def category_to_body(C: FinCategory) -> dict:
    idents = set(C.identities.values())
    body: dict[str, Any] = {}
    if C.name:
        body["name"] = C.name
    body["objects"] = list(C.objects)
    body["morphisms"] = {m: list(C.ends(m)) for m in C.morphisms if m not in idents}
    if any(C.identity(x) != f"id_{x}" for x in C.objects):
        body["identities"] = dict(C.identities)
    body["compose"] = [[g, f, h] for (g, f), h in C.compose_table.items()
                       if g not in idents and f not in idents]
    if C.factors is not None:
        body["factors"] = [category_to_body(F) for F in C.factors]
    return body


# -- functors -------------------------------------------------------------------------


def functor_from_body(body: Any, dom: FinCategory, cod: FinCategory, where: str = "body") -> FinFunctor:
    omap = dict(_need(body, "omap", where, Mapping))
    mmap = dict(body.get("mmap", {}))
    for x in dom.objects:
        if x not in omap:
            raise ValidationError(f"object {x!r} has no image ({where})")
        if omap[x] not in cod.objects:
            raise ValidationError(f"image of {x!r} is not an object of the codomain ({where})")
        mmap.setdefault(dom.identity(x), cod.identity(omap[x]))
    unknown = set(omap) - set(dom.objects) | set(mmap) - set(dom.morphisms)
    if unknown:
        raise ValidationError(f"functor mentions undefined ids {sorted(unknown)} ({where})")
    return FinFunctor(dom, cod, omap, mmap)


def functor_to_body(F: FinFunctor) -> dict:
    idents = set(F.dom.identities.values())
    return {"omap": dict(F.omap), "mmap": {m: n for m, n in F.mmap.items() if m not in idents}}


# -- presheaves -----------------------------------------------------------------------


def presheaf_from_body(body: Any, where: str = "body") -> CatPresheaf:
    if isinstance(body, Mapping) and "construct" in body:
        return _construct(body, where)
    A = category_from_body(_need(body, "base", where), f"{where}.base")
    cls = _PRESHEAF_TYPES.get(body.get("type", "grpd"))
    if cls is None:
        raise ParseError(f"unknown presheaf type {body.get('type')!r}", field=f"{where}.type")
    raw_values = _need(body, "values", where, Mapping)
    unknown = set(raw_values) - set(A.objects)
    if unknown:
        raise ValidationError(f"values given at undefined base objects {sorted(unknown)}")
    values = {}
    for a in A.objects:
        if a not in raw_values:
            raise ValidationError(f"no value at base object {a!r}")
        values[a] = category_from_body(raw_values[a], f"{where}.values.{a}")
    raw_actions = body.get("actions", {})
    unknown = set(raw_actions) - set(A.morphisms)
    if unknown:
        raise ValidationError(f"actions given for undefined base morphisms {sorted(unknown)}")
    actions = {}
    for f in A.morphisms:
        a, a2 = A.ends(f)
        if f in raw_actions:
            actions[f] = functor_from_body(raw_actions[f], values[a2], values[a], f"{where}.actions.{f}")
        elif A.is_identity(f):
            actions[f] = fincat.identity_functor(values[a])
        else:
            raise ValidationError(f"no action given for base morphism {f!r}")
    return cls(A, values, actions, name=body.get("name"))


def _construct(body: Mapping, where: str) -> CatPresheaf:
    from . import adjoints, presheaf

    what = body["construct"]
    A = category_from_body(_need(body, "base", where), f"{where}.base")
    if what == "terminal":
        return presheaf.terminal(A)
    if what == "representable":
        return presheaf.representable(A, _need(body, "object", where, str))
    if what == "constant":
        return presheaf.constant(A, category_from_body(_need(body, "value", where), f"{where}.value"))
    if what == "istar":
        target = category_from_body(_need(body, "target", where), f"{where}.target")
        return adjoints.I_star(adjoints.slice_diagram(A), target, discrete=bool(body.get("discrete")))
    if what == "product":
        parts = [presheaf_from_body(p, f"{where}.factors[{n}]") for n, p in enumerate(_need(body, "factors", where, list))]
        out = parts[0]
        for p in parts[1:]:
            out = product(out, p)
        return out
    raise ParseError(f"unknown construction {what!r}", field=f"{where}.construct")


def presheaf_to_body(X: CatPresheaf) -> dict:
    A = X.base
    body: dict[str, Any] = {"type": X.kind}
    if X.name:
        body["name"] = X.name
    body["base"] = category_to_body(A)
    body["values"] = {a: category_to_body(X.value(a)) for a in A.objects}
    body["actions"] = {f: functor_to_body(X.action(f)) for f in A.morphisms if not A.is_identity(f)}
    return body


def morphism_from_body(body: Any, where: str = "body") -> PresheafMorphism:
    X = presheaf_from_body(_need(body, "source", where), f"{where}.source")
    Y = presheaf_from_body(_need(body, "target", where), f"{where}.target")
    raw = _need(body, "components", where, Mapping)
    comps = {a: functor_from_body(raw.get(a), X.value(a), Y.value(a), f"{where}.components.{a}")
             for a in X.base.objects}
    return PresheafMorphism(X, Y, comps)


def morphism_to_body(phi: PresheafMorphism) -> dict:
    return {"source": presheaf_to_body(phi.source), "target": presheaf_to_body(phi.target),
            "components": {a: functor_to_body(F) for a, F in phi.components.items()}}


# -- diagrams and intervals --------------------------------------------------------------


def diagram_from_body(body: Any, where: str = "body") -> CatDiagram:
    if isinstance(body, Mapping) and body.get("construct") == "slices":
        from .adjoints import slice_diagram

        return slice_diagram(category_from_body(_need(body, "base", where), f"{where}.base"))
    A = category_from_body(_need(body, "base", where), f"{where}.base")
    raw = _need(body, "assignment", where, Mapping)
    assignment = {a: category_from_body(raw[a], f"{where}.assignment.{a}") for a in A.objects if a in raw}
    raw_action = body.get("action", {})
    action = {}
    for f in A.morphisms:
        a, a2 = A.ends(f)
        if a not in assignment or a2 not in assignment:
            raise ValidationError(f"no category assigned to an end of {f!r}")
        if f in raw_action:
            action[f] = functor_from_body(raw_action[f], assignment[a], assignment[a2], f"{where}.action.{f}")
        elif A.is_identity(f):
            action[f] = fincat.identity_functor(assignment[a])
        else:
            raise ValidationError(f"no functor given for base morphism {f!r}")
    return CatDiagram(A, assignment, action, body.get("terminals"))


def diagram_to_body(i: CatDiagram) -> dict:
    A = i.base
    body = {"base": category_to_body(A),
            "assignment": {a: category_to_body(i(a)) for a in A.objects},
            "action": {f: functor_to_body(i.action[f]) for f in A.morphisms if not A.is_identity(f)}}
    if i.terminals:
        body["terminals"] = dict(i.terminals)
    return body


def interval_from_body(body: Any, where: str = "body") -> Interval | MultiplicativeInterval:
    ambient = body.get("ambient", "presheaf") if isinstance(body, Mapping) else None
    if ambient == "cat":
        C = category_from_body(_need(body, "carrier", where), f"{where}.carrier")
        I = Interval(C, _need(body, "i0", where, str), _need(body, "i1", where, str), ambient="cat")
        if "op" in body:
            sq = fincat.product(C, C)
            return MultiplicativeInterval(I, functor_from_body(body["op"], sq, C, f"{where}.op"), sq)
        return I
    if ambient != "presheaf":
        raise ParseError(f"unknown ambient {ambient!r}", field=f"{where}.ambient")
    X = presheaf_from_body(_need(body, "carrier", where), f"{where}.carrier")
    I = Interval(X, _need(body, "i0", where, Mapping), _need(body, "i1", where, Mapping), ambient="presheaf")
    if "op" in body:
        sq = product(X, X)
        raw = _need(body, "op", where, Mapping)
        comps = {a: functor_from_body(raw.get(a), sq.value(a), X.value(a), f"{where}.op.{a}")
                 for a in X.base.objects}
        return MultiplicativeInterval(I, PresheafMorphism(sq, X, comps), sq)
    return I


def interval_to_body(I: Interval | MultiplicativeInterval) -> dict:
    L = I if isinstance(I, MultiplicativeInterval) else None
    I = L.interval if L else I
    if I.ambient == "cat":
        body = {"ambient": "cat", "carrier": category_to_body(I.carrier), "i0": I.i0, "i1": I.i1}
        if L:
            body["op"] = functor_to_body(L.op)
        return body
    body = {"ambient": "presheaf", "carrier": presheaf_to_body(I.carrier), "i0": dict(I.i0), "i1": dict(I.i1)}
    if L:
        body["op"] = {a: functor_to_body(F) for a, F in L.op.components.items()}
    return body


# -- documents ---------------------------------------------------------------------------

_READERS = {
    "category": category_from_body,
    "presheaf": presheaf_from_body,
    "morphism": morphism_from_body,
    "diagram": diagram_from_body,
    "interval": interval_from_body,
}


def kind_of(value: Any) -> str:
    if isinstance(value, FinCategory):
        return "category"
    if isinstance(value, FinFunctor):
        return "functor"
    if isinstance(value, CatPresheaf):
        return "presheaf"
    if isinstance(value, PresheafMorphism):
        return "morphism"
    if isinstance(value, CatDiagram):
        return "diagram"
    if isinstance(value, (Interval, MultiplicativeInterval)):
        return "interval"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def loads(text: str) -> Any:
    """Parse and validate a document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    kind = _need(doc, "kind", "document", str)
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", field="kind", line=_line_of(text, '"kind"'))
    body = _need(doc, "body", "document")
    try:
        if kind == "functor":
            dom = category_from_body(_need(body, "dom", "body"), "body.dom")
            cod = category_from_body(_need(body, "cod", "body"), "body.cod")
            return functor_from_body(body, dom, cod)
        return _READERS[kind](body)
    except ParseError as exc:
        if exc.line is None and exc.field:
            exc.line = _line_of(text, exc.field.rsplit(".", 1)[-1].split("[")[0])
        raise


def _line_of(text: str, needle: str) -> int | None:
    for n, line in enumerate(text.splitlines(), 1):
        if f'"{needle}"' in line:
            return n
    return None


def load(path: str | Path) -> Any:
    return loads(Path(path).read_text())


def to_document(value: Any) -> dict:
    kind = kind_of(value)
    if kind == "category":
        body = category_to_body(value)
    elif kind == "functor":
        body = {"dom": category_to_body(value.dom), "cod": category_to_body(value.cod), **functor_to_body(value)}
    elif kind == "presheaf":
        body = presheaf_to_body(value)
    elif kind == "morphism":
        body = morphism_to_body(value)
    elif kind == "diagram":
        body = diagram_to_body(value)
    else:
        body = interval_to_body(value)
    return {"kind": kind, "body": body}


def dumps(value: Any) -> str:
    return json.dumps(to_document(value), indent=2, sort_keys=False) + "\n"
