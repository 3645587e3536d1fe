"""Seeded generators of presheaves and pointwise W1-equivalences."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import corpus, fincat
from .fincat import FinCategory, FinFunctor
from .presheaf import (
    CatPresheaf,
    PresheafMorphism,
    constant,
    identity_morphism,
    product,
    product_morphism,
    representable,
    terminal,
)

SMALL_BASES = ("e", "delta1", "delta2", "J", "BG2", "idem", "discrete2", "meet3", "delta1xdelta1")


def presheaf_family(A: FinCategory, rng: random.Random, count: int = 3) -> list[CatPresheaf]:
    """``count`` presheaves over ``A`` drawn from terminal, representable,
    products of representables and products with a constant groupoid."""
    objs = list(A.objects)
    makers = [
        lambda: terminal(A),
        lambda: representable(A, rng.choice(objs)),
        lambda: product(representable(A, rng.choice(objs)), representable(A, rng.choice(objs))),
        lambda: product(representable(A, rng.choice(objs)), constant(A, corpus.load_category("BG2"))),
        lambda: constant(A, corpus.load_category(rng.choice(["J", "BG2", "discrete2"]))),
    ]
    return [rng.choice(makers)() for _ in range(count)]


def _named(name: str) -> FinCategory:
    return corpus.load_category(name)


def w1_equivalences() -> list[tuple[str, FinFunctor]]:
    """A fixed stock of functors known to be W1-equivalences."""
    out: list[tuple[str, FinFunctor]] = []
    e = _named("e")
    for n in ("delta1", "delta2", "idem", "J", "meet3", "meet3_op", "delta1xdelta1"):
        C = _named(n)
        out.append((f"{n}->e", fincat.to_terminal(C, e)))
    for n in ("e", "BG2", "BG3", "discrete2", "J"):
        C = _named(n)
        out.append((f"id_{n}", fincat.identity_functor(C)))
    J = _named("J")
    out.append(("swap_J", FinFunctor(J, J, {"0": "1", "1": "0"}, {"id_0": "id_1", "id_1": "id_0", "u": "v", "v": "u"})))
    BG3 = _named("BG3")
    out.append(("inv_BG3", FinFunctor(BG3, BG3, {"pt": "pt"}, {"id_pt": "id_pt", "s": "s2", "s2": "s"})))
    D2 = _named("discrete2")
    out.append(("swap_discrete2", FinFunctor(D2, D2, {"x0": "x1", "x1": "x0"}, {"id_x0": "id_x1", "id_x1": "id_x0"})))
    D1 = _named("delta1")
    for p in ("0", "1"):
        out.append((f"e->delta1@{p}", FinFunctor(e, D1, {"pt": p}, {"id_pt": f"id_{p}"})))
    out.append(("e->J", FinFunctor(e, J, {"pt": "0"}, {"id_pt": "id_0"})))
    return out


@dataclass
class ThomasonInstance:
    label: str
    base: str
    phi: PresheafMorphism


def thomason_instances(count: int, seed: int = 0) -> list[ThomasonInstance]:
    """Pointwise W1-equivalences ``id_S x const(F): S x C -> S x D``."""
    rng = random.Random(seed)
    stock = w1_equivalences()
    out = []
    for n in range(count):
        base = rng.choice(SMALL_BASES)
        A = _named(base)
        objs = list(A.objects)
        S = rng.choice([
            terminal(A),
            representable(A, rng.choice(objs)),
            product(representable(A, rng.choice(objs)), representable(A, rng.choice(objs))),
        ])
        label, F = rng.choice(stock)
        cF = PresheafMorphism(constant(A, F.dom), constant(A, F.cod),
                              {a: F for a in A.objects}, check=False)
        phi = product_morphism(identity_morphism(S), cF)
        out.append(ThomasonInstance(f"{n}:{base}:{S.name}:{label}", base, phi))
    return out
