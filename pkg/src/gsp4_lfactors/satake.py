"""Symbolic Satake parameters: signed monomials in abstract units and q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class UnitSymbol:
    """The value at the uniformizer of an unramified generator.

    ``order`` is set when the generator has finite order, in which case the
    unit is a root of unity and exponents are reduced modulo ``order``.
    """

    name: str
    order: int | None = None


@dataclass(frozen=True)
class SatakeMonomial:
    sign: int = 1
    units: tuple[tuple[UnitSymbol, int], ...] = ()
    q_exponent: Fraction = Fraction(0)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        merged: dict[UnitSymbol, int] = {}
        for unit, exp in self.units:
            merged[unit] = merged.get(unit, 0) + exp
        units = []
        for unit in sorted(merged):
            exp = merged[unit]
            if unit.order is not None:
                exp %= unit.order
            if exp:
                units.append((unit, exp))
        object.__setattr__(self, "units", tuple(units))
        object.__setattr__(self, "q_exponent", Fraction(self.q_exponent))

    def __mul__(self, other: SatakeMonomial) -> SatakeMonomial:
        return SatakeMonomial(
            self.sign * other.sign,
            self.units + other.units,
            self.q_exponent + other.q_exponent,
        )

    def inverse(self) -> SatakeMonomial:
        return SatakeMonomial(
            self.sign,
            tuple((u, -e) for u, e in self.units),
            -self.q_exponent,
        )

    def is_one(self) -> bool:
        return self.sign == 1 and not self.units and self.q_exponent == 0

    def sort_key(self):
        return (-self.q_exponent, self.sign,
                tuple((u.name, u.order or 0, e) for u, e in self.units))

    def evaluate(self, q: float, unit_values) -> complex:
        """Numeric value; ``q**(1/2)`` is the positive real root."""
        value = complex(self.sign) * float(q) ** float(self.q_exponent)
        for unit, exp in self.units:
            try:
                value *= complex(unit_values[unit.name]) ** exp
            except KeyError:
                raise KeyError(f"no value bound for unit {unit.name!r}") from None
        return value

    def to_dict(self) -> dict:
        return {
            "sign": self.sign,
            "units": [[u.name, u.order, e] for u, e in self.units],
            "q_exponent": str(self.q_exponent),
        }

    @classmethod
    def from_dict(cls, data: dict) -> SatakeMonomial:
        units = tuple((UnitSymbol(name, order), int(exp))
                      for name, order, exp in data.get("units", ()))
        return cls(int(data.get("sign", 1)), units, Fraction(data.get("q_exponent", "0")))

    def __str__(self):
        parts = [] if self.sign == 1 else ["-1"]
        for unit, exp in self.units:
            parts.append(f"u_{unit.name}" if exp == 1 else f"u_{unit.name}^{exp}")
        if self.q_exponent:
            parts.append(f"q^({self.q_exponent})")
        return "*".join(parts) or "1"
