"""Local Euler factors prod (1 - m X)^-1, X = q^-s, stored as multisets of Satake monomials."""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .characters import Character
from .errors import InputError
from .satake import SatakeMonomial

__all__ = ["EulerFactor", "EulerFactorError", "Pole", "SpecializedFactor", "tate_factor", "specialize"]


class EulerFactorError(InputError):
    pass


@dataclass(frozen=True)
class EulerFactor:
    """Inverse of a product of linear factors (1 - m X), one per monomial m.

    ``terms`` is the canonical sorted multiset: (monomial, multiplicity) pairs.
    """

    terms: tuple[tuple[SatakeMonomial, int], ...] = ()

    @classmethod
    def from_monomials(cls, monomials: Iterable[SatakeMonomial]) -> EulerFactor:
        return cls._from_counter(Counter(monomials))

    @classmethod
    def _from_counter(cls, counts: Counter) -> EulerFactor:
        terms = sorted(((m, n) for m, n in counts.items() if n > 0), key=lambda t: t[0].sort_key())
        return cls(tuple(terms))

    @classmethod
    def one(cls) -> EulerFactor:
        return cls()

    def counter(self) -> Counter:
        return Counter(dict(self.terms))

    def monomials(self) -> list[SatakeMonomial]:
        return [m for m, n in self.terms for _ in range(n)]

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.terms)

    def is_one(self) -> bool:
        return not self.terms

    def multiplicity(self, monomial: SatakeMonomial) -> int:
        return self.counter()[monomial]

    def __mul__(self, other: EulerFactor) -> EulerFactor:
        return EulerFactor._from_counter(self.counter() + other.counter())

    def __pow__(self, n: int) -> EulerFactor:
        if n < 0:
            raise EulerFactorError("negative powers of an Euler factor are not Euler factors")
        return EulerFactor._from_counter(Counter({m: k * n for m, k in self.terms}))

    def divides(self, other: EulerFactor) -> bool:
        """True if ``self`` divides ``other``, i.e. multiset inclusion."""
        theirs = other.counter()
        return all(theirs[m] >= n for m, n in self.terms)

    def quotient(self, divisor: EulerFactor) -> EulerFactor:
        """``self / divisor``; requires ``divisor.divides(self)``."""
        if not divisor.divides(self):
            raise EulerFactorError(f"{divisor} does not divide {self}")
        return EulerFactor._from_counter(self.counter() - divisor.counter())

    def specialize(self, q: float, unit_values: Mapping[str, complex] | None = None) -> SpecializedFactor:
        if not q > 1:
            raise EulerFactorError(f"q must be > 1, got {q}")
        unit_values = unit_values or {}
        missing = sorted({u.name for m in self.monomials() for u, _ in m.units} - set(unit_values))
        if missing:
            raise EulerFactorError("unbound unit symbols: " + ", ".join(missing))
        values = [m.evaluate(q, unit_values) for m in self.monomials()]
        return SpecializedFactor(float(q), tuple(values))

    def to_dict(self) -> dict:
        return {"monomials": [dict(m.to_dict(), multiplicity=n) for m, n in self.terms]}

    @classmethod
    def from_dict(cls, data: Mapping) -> EulerFactor:
        counts: Counter = Counter()
        for item in data.get("monomials", ()):
            counts[SatakeMonomial.from_dict(item)] += int(item.get("multiplicity", 1))
        return cls._from_counter(counts)

    def __str__(self):
        from .notation import print_factor

        return print_factor(self)


def tate_factor(chi: Character) -> EulerFactor:
    """L(s, chi): trivial for ramified chi, otherwise (1 - chi(varpi) X)^-1."""
    if not chi.is_unramified():
        return EulerFactor()
    return EulerFactor(((chi.satake_value(), 1),))


def tate_product(chars: Iterable[Character]) -> EulerFactor:
    result = EulerFactor()
    for chi in chars:
        result = result * tate_factor(chi)
    return result


@dataclass(frozen=True)
class Pole:
    x: complex
    multiplicity: int
    re_s: float

    def to_dict(self) -> dict:
        return {"X": [self.x.real, self.x.imag], "re_s": self.re_s, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class SpecializedFactor:
    """A numeric specialization; ``values`` are the specialized monomials."""

    q: float
    values: tuple[complex, ...]

    def __call__(self, x: complex) -> complex:
        denominator = 1
        for m in self.values:
            denominator *= 1 - m * x
        return 1 / denominator

    def poles(self, rel_tol: float = 1e-12) -> list[Pole]:
        """Poles X = 1/m with multiplicity, sorted by Re(s).

        s is determined only modulo 2 pi i / log q; the real part
        Re(s) = -log|X| / log q is reported.
        """
        groups: list[list] = []
        for m in self.values:
            if m == 0:
                continue
            x = 1 / m
            for group in groups:
                if cmath.isclose(group[0], x, rel_tol=rel_tol, abs_tol=rel_tol):
                    group[1] += 1
                    break
            else:
                groups.append([x, 1])
        poles = [Pole(x, n, -math.log(abs(x)) / math.log(self.q)) for x, n in groups]
        poles.sort(key=lambda p: (p.re_s, p.x.imag))
        return poles


def specialize(f: EulerFactor, q: float, unit_values: Mapping[str, complex] | None = None) -> SpecializedFactor:
    return f.specialize(q, unit_values)


def poles_in_x(handle: SpecializedFactor) -> list[Pole]:
    return handle.poles()
