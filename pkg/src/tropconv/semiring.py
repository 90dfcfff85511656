"""Exact scalars of the completed tropical semifield.

Two isomorphic models are supported and kept strictly apart:

* max-plus:  (Q + {-oo}, max, +) with neutral elements -oo and 0,
* max-times: (Q>0 + {0}, max, *) with neutral elements 0 and 1.

A scalar is Bottom (the additive unit, written ``zero``), a Finite
exact rational payload, or Top (``inf``).  Scalars carry their model so
that cross-model arithmetic raises instead of silently mixing semantics.
All payloads are `fractions.Fraction`; every comparison is exact and
there is no floating point anywhere in the core.

Top obeys the completed-semifield conventions, in particular
Bottom * Top = Bottom, and never appears inside vectors; it exists only
for boundary-set bookkeeping.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]

_BOT = 0
_FIN = 1
_TOP = 2


class Model(enum.Enum):
    MAX_PLUS = "max-plus"
    MAX_TIMES = "max-times"

    @classmethod
    def parse(cls, text: str) -> "Model":
        for m in cls:
            if m.value == text:
                return m
        raise ValueError(f"unknown model {text!r} (expected 'max-plus' or 'max-times')")


class ModelMismatchError(ValueError):
    """Raised when scalars from different models meet in one operation."""


class InternalInconsistencyError(RuntimeError):
    """A structural theorem failed on validated data; this is a bug, not bad input."""


@dataclass(frozen=True)
class TScalar:
    """One element of the completed tropical semifield."""

    model: Model
    kind: int
    payload: Fraction | None = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def bottom(model: Model) -> "TScalar":
        return TScalar(model, _BOT)

    @staticmethod
    def top(model: Model) -> "TScalar":
        return TScalar(model, _TOP)

    @staticmethod
    def finite(model: Model, value: RationalLike) -> "TScalar":
        q = Fraction(value)
        if model is Model.MAX_TIMES and q <= 0:
            raise ValueError(f"max-times payload must be a positive rational, got {q}")
        return TScalar(model, _FIN, q)

    @staticmethod
    def unit(model: Model) -> "TScalar":
        return TScalar(model, _FIN, Fraction(0) if model is Model.MAX_PLUS else Fraction(1))

    # -- predicates ----------------------------------------------------

    @property
    def is_bottom(self) -> bool:
        return self.kind == _BOT

    @property
    def is_finite(self) -> bool:
        return self.kind == _FIN

    @property
    def is_top(self) -> bool:
        return self.kind == _TOP

    # -- total order: Bottom < every Finite < Top ----------------------

    def _key(self):
        return (self.kind, self.payload if self.kind == _FIN else Fraction(0))

    def __lt__(self, other: "TScalar") -> bool:
        _require_same_model(self, other)
        return self._key() < other._key()

    def __le__(self, other: "TScalar") -> bool:
        _require_same_model(self, other)
        return self._key() <= other._key()

    def __gt__(self, other: "TScalar") -> bool:
        return other < self

    def __ge__(self, other: "TScalar") -> bool:
        return other <= self

    def __repr__(self) -> str:
        return f"TScalar({self.model.value}, {format_scalar(self)})"


def _require_same_model(a: TScalar, b: TScalar) -> None:
    if a.model is not b.model:
        raise ModelMismatchError(f"cannot combine {a.model.value} with {b.model.value}")


def t_add(a: TScalar, b: TScalar) -> TScalar:
    """Tropical addition: the maximum in the total order.

    Idempotent; Bottom is neutral and Top absorbing.
    """
    _require_same_model(a, b)
    return b if a._key() <= b._key() else a


def t_mul(a: TScalar, b: TScalar) -> TScalar:
    """Tropical multiplication (rational + or * depending on the model).

    Bottom absorbs everything, including Top; Top times anything
    non-Bottom is Top.
    """
    _require_same_model(a, b)
    if a.kind == _BOT or b.kind == _BOT:
        return TScalar(a.model, _BOT)
    if a.kind == _TOP or b.kind == _TOP:
        return TScalar(a.model, _TOP)
    if a.model is Model.MAX_PLUS:
        return TScalar(a.model, _FIN, a.payload + b.payload)
    return TScalar(a.model, _FIN, a.payload * b.payload)


def t_inv(a: TScalar) -> TScalar:
    """Multiplicative inverse, extended by inv(Top)=Bottom, inv(Bottom)=Top.

    The Top/Bottom extension exists only so that complement
    normalisation can flip degenerate boundary thresholds.
    """
    if a.kind == _BOT:
        return TScalar(a.model, _TOP)
    if a.kind == _TOP:
        return TScalar(a.model, _BOT)
    if a.model is Model.MAX_PLUS:
        return TScalar(a.model, _FIN, -a.payload)
    return TScalar(a.model, _FIN, 1 / a.payload)


def t_div(a: TScalar, b: TScalar) -> TScalar:
    """a * inv(b); only used with Finite b."""
    return t_mul(a, t_inv(b))


def t_max(values, model: Model) -> TScalar:
    """Tropical sum of an iterable (Bottom for the empty sum)."""
    acc = TScalar.bottom(model)
    for v in values:
        acc = t_add(acc, v)
    return acc


# -- textual forms -----------------------------------------------------
#
# "zero" is Bottom, "inf" is Top, anything else is an exact rational
# "p" or "p/q".  In max-times a numeric 0 also denotes Bottom (the model
# has no finite zero payload); negative numerics are rejected there.


def parse_scalar(token: str, model: Model) -> TScalar:
    text = token.strip()
    if text == "zero":
        return TScalar.bottom(model)
    if text == "inf":
        return TScalar.top(model)
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad scalar token {token!r}: {exc}") from None
    if model is Model.MAX_TIMES:
        if q == 0:
            return TScalar.bottom(model)
        if q < 0:
            raise ValueError(f"negative scalar {token!r} is not a max-times value")
    return TScalar(model, _FIN, q)


def format_scalar(a: TScalar) -> str:
    """Canonical token: 'zero' / 'inf' / exact fraction."""
    if a.kind == _BOT:
        return "zero"
    if a.kind == _TOP:
        return "inf"
    return str(a.payload)


def format_scalar_compact(a: TScalar) -> str:
    """Model-aware display form; Bottom prints as '0' in max-times."""
    if a.kind == _BOT and a.model is Model.MAX_TIMES:
        return "0"
    return format_scalar(a)
