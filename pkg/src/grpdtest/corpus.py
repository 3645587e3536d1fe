"""The built-in corpus of documents shipped with the package."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import Any

from .fincat import FinCategory

CATEGORIES = ("e", "delta1", "delta2", "delta3", "delta1xdelta1", "J", "BG2", "BG3", "idem",
              "discrete2", "meet3", "meet3_op")


def names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__package__).joinpath("data").iterdir()
                  if p.name.endswith(".json"))


def path(name: str):
    p = resources.files(__package__).joinpath("data").joinpath(f"{name}.json")
    if not p.is_file():
        raise KeyError(f"no corpus document named {name!r}")
    return p


def text(name: str) -> str:
    return path(name).read_text()


@lru_cache(maxsize=None)
def load(name: str) -> Any:
    from .io import loads

    return loads(text(name))


def load_category(name: str) -> FinCategory:
    C = load(name)
    if not isinstance(C, FinCategory):
        raise KeyError(f"corpus document {name!r} is not a category")
    return C


def categories() -> list[tuple[str, FinCategory]]:
    return [(n, load_category(n)) for n in CATEGORIES]
