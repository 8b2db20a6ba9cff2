"""Type-A weights in Young (row-length) and Dynkin coordinates.

Young coordinates are canonical everywhere in the package; Dynkin labels
only appear at the API and serialization boundaries.  All integer
arithmetic is done with Python ints, so dimensions are exact at any size.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidWeightError

__all__ = [
    "YoungWeight",
    "DynkinLabel",
    "young_to_dynkin",
    "dynkin_to_young",
    "weyl_vector",
    "su_normalize",
    "spacings",
    "vandermonde",
    "weyl_dimension",
    "parse_int_list",
    "parse_float_list",
    "weight_from_json",
]


def _as_int(v) -> int:
    if isinstance(v, bool):
        raise InvalidWeightError(f"boolean is not a weight component: {v!r}")
    iv = int(v)
    if iv != v:
        raise InvalidWeightError(f"weight component must be an integer, got {v!r}")
    return iv


@dataclass(frozen=True, order=True, init=False)
class YoungWeight:
    """Dominant weight of U(n): a weakly decreasing tuple of nonnegative ints."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        p = tuple(_as_int(v) for v in parts)
        if not p:
            raise InvalidWeightError("a weight needs at least one part")
        if any(v < 0 for v in p):
            raise InvalidWeightError(f"negative part in {p}")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise InvalidWeightError(f"parts must be weakly decreasing: {p}")
        object.__setattr__(self, "parts", p)

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        """Number of boxes of the Young diagram."""
        return sum(self.parts)

    @property
    def is_su_normalized(self) -> bool:
        return self.parts[-1] == 0

    def scaled(self, s: int) -> "YoungWeight":
        return YoungWeight(s * v for v in self.parts)

    def plus_rho(self) -> tuple[int, ...]:
        """alpha + rho_n as a plain tuple (strictly decreasing)."""
        n = self.rank
        return tuple(v + n - 1 - i for i, v in enumerate(self.parts))

    def to_json(self) -> dict:
        return {"young": list(self.parts)}

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.parts)) + "}"


@dataclass(frozen=True, order=True, init=False)
class DynkinLabel:
    """Components of a weight in the fundamental-weight basis."""

    labels: tuple[int, ...]

    def __init__(self, labels: Iterable[int]):
        lab = tuple(_as_int(v) for v in labels)
        if any(v < 0 for v in lab):
            raise InvalidWeightError(f"negative Dynkin label in {lab}")
        object.__setattr__(self, "labels", lab)

    def to_json(self) -> dict:
        return {"dynkin": list(self.labels)}

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.labels)) + ")"


def young_to_dynkin(w: YoungWeight) -> DynkinLabel:
    p = w.parts
    return DynkinLabel(p[i] - p[i + 1] for i in range(len(p) - 1))


def dynkin_to_young(d: DynkinLabel | Sequence[int]) -> YoungWeight:
    """SU-normalized Young weight whose i-th part is the sum of labels from i on."""
    if not isinstance(d, DynkinLabel):
        d = DynkinLabel(d)
    lab = d.labels
    parts = [sum(lab[i:]) for i in range(len(lab))] + [0]
    return YoungWeight(parts)


def weyl_vector(n: int) -> YoungWeight:
    if n < 1:
        raise InvalidWeightError(f"rank must be positive, got {n}")
    return YoungWeight(range(n - 1, -1, -1))


def su_normalize(w: YoungWeight) -> YoungWeight:
    """Delete all full-height columns, i.e. subtract the last part."""
    last = w.parts[-1]
    if last == 0:
        return w
    return YoungWeight(v - last for v in w.parts)


def spacings(b: Sequence[float]) -> tuple:
    """Shift a spectrum so that its last entry is zero."""
    b = tuple(b)
    if any(b[i] < b[i + 1] for i in range(len(b) - 1)):
        raise InvalidWeightError(f"spectrum must be weakly decreasing: {b}")
    return tuple(v - b[-1] for v in b)


def vandermonde(x: Sequence) -> float | int:
    """Product of (x_i - x_j) over i < j; exact when the entries are ints."""
    return math.prod(a - b for a, b in combinations(tuple(x), 2))


def weyl_dimension(alpha: YoungWeight | Sequence[int]) -> int:
    """Dimension of the U(n) irrep of highest weight alpha."""
    if not isinstance(alpha, YoungWeight):
        alpha = YoungWeight(alpha)
    n = alpha.rank
    num = vandermonde(alpha.plus_rho())
    den = vandermonde(weyl_vector(n).parts)
    q, r = divmod(num, den)
    assert r == 0, (alpha, num, den)
    return q


def parse_int_list(text: str) -> list[int]:
    """Parse '6,4,3,0' (spaces allowed) into a list of ints."""
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as exc:
        raise InvalidWeightError(f"cannot parse integer list {text!r}") from exc


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as exc:
        raise InvalidWeightError(f"cannot parse real list {text!r}") from exc


def weight_from_json(obj: dict) -> YoungWeight:
    """Inverse of ``to_json`` for both {"young": [...]} and {"dynkin": [...]}."""
    if "young" in obj:
        return YoungWeight(obj["young"])
    if "dynkin" in obj:
        return dynkin_to_young(obj["dynkin"])
    raise InvalidWeightError(f"expected a 'young' or 'dynkin' key, got {sorted(obj)}")
