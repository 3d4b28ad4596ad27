"""Smooth characters of k^x and K^x as elements of a finitely presented abelian group.

A :class:`CharacterContext` fixes the quadratic extension K/k and a list of
declared generators (the named characters sigma, xi, chi, ...).  Characters
are kept in a normal form in which equality of normal forms is equality in
the group: substitution rules are expanded, exponents of finite-order
generators are reduced, and the exponent of chi_{K/k} is taken mod 2.

Characters of K^x are products of declared abstract K-generators and a norm
pullback rho o N_{K/k}.  Since chi_{K/k} o N_{K/k} is trivial, the pulled back
character is stored modulo chi_{K/k}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError
from .satake import SatakeMonomial, UnitSymbol

__all__ = [
    "CharacterError",
    "ExtensionDatum",
    "Word",
    "GeneratorDecl",
    "KGeneratorDecl",
    "CharacterContext",
    "Character",
    "CharacterK",
    "norm_pullback",
    "satake_value",
    "RESERVED_NAMES",
]

# Words with a fixed meaning in the notation; they cannot name generators.
RESERVED_NAMES = frozenset({
    "nu", "x", "St", "St_G", "one", "one_G", "L", "delta", "tau", "theta",
    "S", "T", "norm", "s", "cusp_generic", "cusp_nongeneric", "chi_Kk",
})
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class CharacterError(InputError):
    """Invalid declaration or operation in the character algebra."""


def _frac(value) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise CharacterError(f"malformed rational {value!r}") from None


@dataclass(frozen=True)
class ExtensionDatum:
    kind: str = "unramified"
    label: str = "K"

    def __post_init__(self):
        if self.kind not in ("unramified", "ramified"):
            raise CharacterError(f"extension kind must be 'unramified' or 'ramified', got {self.kind!r}")

    @property
    def unramified(self) -> bool:
        return self.kind == "unramified"


@dataclass(frozen=True)
class Word:
    """An unnormalized product of generators, a power of nu and of chi_{K/k}."""

    gens: tuple[tuple[str, int], ...] = ()
    nu: Fraction = Fraction(0)
    chi: int = 0

    @classmethod
    def of(cls, gens: Mapping[str, int] | Iterable[tuple[str, int]] = (), nu=0, chi=0) -> Word:
        items = gens.items() if isinstance(gens, Mapping) else gens
        return cls(tuple((str(g), int(e)) for g, e in items), _frac(nu), int(chi))

    def to_dict(self) -> dict:
        return {"gens": [[g, e] for g, e in self.gens], "nu": str(self.nu), "chi_Kk": self.chi}

    @classmethod
    def from_dict(cls, data: Mapping) -> Word:
        return cls.of([(g, e) for g, e in data.get("gens", ())],
                      data.get("nu", "0"), data.get("chi_Kk", 0))


@dataclass(frozen=True)
class GeneratorDecl:
    """A named character of k^x.

    Either free (optionally of finite ``order``) or defined by a substitution
    ``eq`` in terms of other generators, nu and chi_{K/k}.  Free generators
    must declare their ramification; for substituted ones it is derived.
    """

    name: str
    ramified: bool | None = None
    order: int | None = None
    eq: Word | None = None

    def to_dict(self) -> dict:
        out: dict = {"name": self.name}
        if self.ramified is not None:
            out["ramified"] = self.ramified
        if self.order is not None:
            out["order"] = self.order
        if self.eq is not None:
            out["eq"] = self.eq.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> GeneratorDecl:
        eq = data.get("eq")
        return cls(data["name"], data.get("ramified"), data.get("order"),
                   Word.from_dict(eq) if eq is not None else None)


@dataclass(frozen=True)
class KGeneratorDecl:
    """An abstract character of K^x with a declared restriction to k^x."""

    name: str
    restriction: Word = Word()
    ramified: bool = False

    def to_dict(self) -> dict:
        return {"name": self.name, "restriction": self.restriction.to_dict(), "ramified": self.ramified}

    @classmethod
    def from_dict(cls, data: Mapping) -> KGeneratorDecl:
        return cls(data["name"], Word.from_dict(data.get("restriction", {})), bool(data.get("ramified", False)))


class CharacterContext:
    """Frozen declaration context for characters of k^x and K^x."""

    def __init__(self, extension: ExtensionDatum | str = "unramified",
                 generators: Iterable[GeneratorDecl] = (),
                 k_generators: Iterable[KGeneratorDecl] = (),
                 any_rational_nu: bool = False):
        if isinstance(extension, str):
            extension = ExtensionDatum(extension)
        self.extension = extension
        self.any_rational_nu = any_rational_nu
        self.declarations: tuple[GeneratorDecl, ...] = tuple(generators)
        self.k_declarations: tuple[KGeneratorDecl, ...] = tuple(k_generators)

        self._seen: set[str] = set()
        self._decl: dict[str, GeneratorDecl] = {}
        for decl in self.declarations:
            self._check_name(decl.name)
            if decl.order is not None and decl.eq is not None:
                raise CharacterError(f"{decl.name}: a generator has either a finite order or a substitution, not both")
            if decl.order is not None and int(decl.order) < 1:
                raise CharacterError(f"{decl.name}: finite order must be >= 1")
            if decl.eq is None and decl.ramified is None:
                raise CharacterError(f"{decl.name}: ramification must be declared (unramified or ramified)")
            self._decl[decl.name] = decl
        self._free = [d.name for d in self.declarations if d.eq is None]
        self._index = {name: i for i, name in enumerate(self._free)}
        self._expansion: dict[str, tuple[dict[str, int], Fraction, int]] = {}
        for decl in self.declarations:
            self._expand(decl.name, ())
        self._ramified = {name: bool(self._decl[name].ramified) for name in self._free}
        for decl in self.declarations:
            if decl.eq is not None:
                derived = not self.gen(decl.name).is_unramified()
                if decl.ramified is not None and decl.ramified != derived:
                    raise CharacterError(
                        f"{decl.name}: declared {'ramified' if decl.ramified else 'unramified'} "
                        f"but its substitution is {'ramified' if derived else 'unramified'}")

        self._kdecl: dict[str, KGeneratorDecl] = {}
        self._kindex: dict[str, int] = {}
        for decl in self.k_declarations:
            self._check_name(decl.name)
            self._kdecl[decl.name] = decl
            self._kindex[decl.name] = len(self._kindex)
        self._krestriction = {d.name: self.from_word(d.restriction) for d in self.k_declarations}

    def _check_name(self, name: str) -> None:
        if not isinstance(name, str) or not _NAME_RE.match(name):
            raise CharacterError(f"invalid generator name {name!r}")
        if name in RESERVED_NAMES:
            raise CharacterError(f"{name!r} is a reserved word")
        if name in self._seen:
            raise CharacterError(f"duplicate name {name!r}")
        self._seen.add(name)

    def _expand(self, name: str, stack: tuple[str, ...]):
        if name in self._expansion:
            return self._expansion[name]
        if name not in self._decl:
            raise CharacterError(f"unknown generator {name!r}")
        if name in stack:
            raise CharacterError("cyclic substitution: " + " -> ".join(stack + (name,)))
        decl = self._decl[name]
        if decl.eq is None:
            result = ({name: 1}, Fraction(0), 0)
        else:
            gens: dict[str, int] = {}
            nu, chi = Fraction(decl.eq.nu), decl.eq.chi
            for g, e in decl.eq.gens:
                sub_gens, sub_nu, sub_chi = self._expand(g, stack + (name,))
                for h, f in sub_gens.items():
                    gens[h] = gens.get(h, 0) + e * f
                nu += e * sub_nu
                chi += e * sub_chi
            result = (gens, nu, chi % 2)
        self._expansion[name] = result
        return result

    # -- constructors -----------------------------------------------------

    def character(self, gens: Mapping[str, int] | Iterable[tuple[str, int]] = (), nu=0, chi=0) -> Character:
        """Normal form of the product of the given generator powers, nu**nu and chi_{K/k}**chi."""
        items = gens.items() if isinstance(gens, Mapping) else gens
        total: dict[str, int] = {}
        nu = _frac(nu)
        chi = int(chi)
        for g, e in items:
            if g not in self._decl:
                raise CharacterError(f"unknown generator {g!r}")
            sub_gens, sub_nu, sub_chi = self._expansion[g]
            for h, f in sub_gens.items():
                total[h] = total.get(h, 0) + e * f
            if sub_nu:
                nu += e * sub_nu
            chi += e * sub_chi
        return self._normal(total, nu, chi)

    def _normal(self, total: dict[str, int], nu: Fraction, chi: int) -> Character:
        # ``total`` holds exponents of free generators only.
        if not self.any_rational_nu and nu.denominator > 2:
            raise CharacterError(f"nu exponent {nu} is not a half-integer")
        reduced = []
        for h, e in total.items():
            order = self._decl[h].order
            if order is not None:
                e %= order
            if e:
                reduced.append((h, e))
        reduced.sort(key=lambda item: self._index[item[0]])
        return Character(self, tuple(reduced), nu, chi % 2)

    def from_word(self, word: Word) -> Character:
        return self.character(word.gens, word.nu, word.chi)

    def gen(self, name: str) -> Character:
        return self.character({name: 1})

    def nu(self, exponent=1) -> Character:
        return self.character((), exponent, 0)

    def chi_kk(self) -> Character:
        return self.character((), 0, 1)

    def trivial(self) -> Character:
        return Character(self, (), Fraction(0), 0)

    def kgen(self, name: str) -> CharacterK:
        if name not in self._kdecl:
            raise CharacterError(f"unknown K-character {name!r}")
        return CharacterK(self, ((name, 1),), self.trivial())

    def k_character(self, kgens: Mapping[str, int] | Iterable[tuple[str, int]] = (),
                    base: Character | None = None) -> CharacterK:
        items = kgens.items() if isinstance(kgens, Mapping) else kgens
        total: dict[str, int] = {}
        for g, e in items:
            if g not in self._kdecl:
                raise CharacterError(f"unknown K-character {g!r}")
            total[g] = total.get(g, 0) + int(e)
        reduced = sorted(((g, e) for g, e in total.items() if e), key=lambda item: self._kindex[item[0]])
        base = self.trivial() if base is None else self._own(base)
        return CharacterK(self, tuple(reduced), base._strip_chi())

    def norm(self, rho: Character) -> CharacterK:
        return CharacterK(self, (), self._own(rho)._strip_chi())

    def k_trivial(self) -> CharacterK:
        return CharacterK(self, (), self.trivial())

    def _own(self, a: Character) -> Character:
        if not isinstance(a, Character):
            raise CharacterError(f"expected a Character, got {type(a).__name__}")
        if a.ctx is not self:
            raise CharacterError("character belongs to a different context")
        return a

    # -- queries ----------------------------------------------------------

    def has_generator(self, name: str) -> bool:
        return name in self._decl

    def has_k_generator(self, name: str) -> bool:
        return name in self._kdecl

    def declaration(self, name: str) -> GeneratorDecl:
        return self._decl[name]

    def k_declaration(self, name: str) -> KGeneratorDecl:
        return self._kdecl[name]

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.declarations)

    @property
    def k_generator_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.k_declarations)

    def is_ramified_generator(self, name: str) -> bool:
        return self._ramified[name]

    def k_restriction(self, name: str) -> Character:
        return self._krestriction[name]

    def with_declarations(self, generators: Iterable[GeneratorDecl] = (),
                          k_generators: Iterable[KGeneratorDecl] = ()) -> CharacterContext:
        """A new context with additional declarations appended."""
        return CharacterContext(self.extension, self.declarations + tuple(generators),
                                self.k_declarations + tuple(k_generators), self.any_rational_nu)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "extension": {"kind": self.extension.kind, "label": self.extension.label},
            "generators": [d.to_dict() for d in self.declarations],
            "k_generators": [d.to_dict() for d in self.k_declarations],
        }
        if self.any_rational_nu:
            out["any_rational_nu"] = True
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> CharacterContext:
        ext = data.get("extension", "unramified")
        if isinstance(ext, Mapping):
            ext = ExtensionDatum(ext.get("kind", "unramified"), ext.get("label", "K"))
        return cls(ext,
                   [GeneratorDecl.from_dict(d) for d in data.get("generators", ())],
                   [KGeneratorDecl.from_dict(d) for d in data.get("k_generators", ())],
                   bool(data.get("any_rational_nu", False)))

    def character_from_dict(self, data: Mapping) -> Character:
        return self.character([(g, e) for g, e in data.get("gens", ())], data.get("nu", "0"), data.get("chi_Kk", 0))

    def k_character_from_dict(self, data: Mapping) -> CharacterK:
        return self.k_character([(g, e) for g, e in data.get("kgens", ())],
                                self.character_from_dict(data.get("base", {})))

    def __repr__(self):
        names = ", ".join(self.generator_names)
        return f"CharacterContext({self.extension.kind}, [{names}])"


def _power_text(name: str, exp: int) -> str:
    return name if exp == 1 else f"{name}^{{{exp}}}"


@dataclass(frozen=True, eq=False)
class Character:
    """A smooth character of k^x in normal form."""

    ctx: CharacterContext = field(repr=False)
    gens: tuple[tuple[str, int], ...]
    nu_exponent: Fraction
    chi_exponent: int

    def _key(self):
        return (self.gens, self.nu_exponent, self.chi_exponent)

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.ctx is other.ctx and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _check(self, other: Character) -> None:
        if not isinstance(other, Character):
            raise CharacterError(f"expected a Character, got {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise CharacterError("characters belong to different contexts")

    def __mul__(self, other: Character) -> Character:
        self._check(other)
        if not other.gens and not other.nu_exponent and not other.chi_exponent:
            return self
        total = dict(self.gens)
        for g, e in other.gens:
            total[g] = total.get(g, 0) + e
        return self.ctx._normal(total, self.nu_exponent + other.nu_exponent, self.chi_exponent + other.chi_exponent)

    def __pow__(self, n: int) -> Character:
        if n == 1:
            return self
        return self.ctx._normal({g: e * n for g, e in self.gens}, self.nu_exponent * n, self.chi_exponent * n)

    def inverse(self) -> Character:
        return self ** -1

    def __truediv__(self, other: Character) -> Character:
        self._check(other)
        return self * other.inverse()

    def is_trivial(self) -> bool:
        return not self.gens and self.nu_exponent == 0 and self.chi_exponent == 0

    def is_unramified(self) -> bool:
        if self.chi_exponent and not self.ctx.extension.unramified:
            return False
        return not any(self.ctx.is_ramified_generator(g) for g, _ in self.gens)

    def _strip_chi(self) -> Character:
        if not self.chi_exponent:
            return self
        return Character(self.ctx, self.gens, self.nu_exponent, 0)

    def satake_value(self) -> SatakeMonomial:
        """Value at a uniformizer, nu(varpi) = q^-1 and chi_{K/k}(varpi) = -1."""
        if not self.is_unramified():
            raise CharacterError(f"{self} is ramified; it has no Satake parameter")
        units = tuple((UnitSymbol(g, self.ctx.declaration(g).order), e) for g, e in self.gens)
        return SatakeMonomial(-1 if self.chi_exponent else 1, units, -self.nu_exponent)

    def to_dict(self) -> dict:
        return {"gens": [[g, e] for g, e in self.gens], "nu": str(self.nu_exponent), "chi_Kk": self.chi_exponent}

    def to_word(self) -> Word:
        return Word(self.gens, self.nu_exponent, self.chi_exponent)

    def __str__(self):
        parts = []
        if self.nu_exponent == 1:
            parts.append("nu")
        elif self.nu_exponent:
            parts.append(f"nu^{{{self.nu_exponent}}}")
        parts.extend(_power_text(g, e) for g, e in self.gens)
        if self.chi_exponent:
            parts.append("chi_{K/k}")
        return " ".join(parts) or "1"


@dataclass(frozen=True, eq=False)
class CharacterK:
    """A character of K^x: prod(abstract K-generators) * (base o N_{K/k})."""

    ctx: CharacterContext = field(repr=False)
    kgens: tuple[tuple[str, int], ...]
    base: Character

    def _key(self):
        return (self.kgens, self.base._key())

    def __eq__(self, other):
        if not isinstance(other, CharacterK):
            return NotImplemented
        return self.ctx is other.ctx and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __mul__(self, other: CharacterK) -> CharacterK:
        if not isinstance(other, CharacterK) or other.ctx is not self.ctx:
            raise CharacterError("K-characters belong to different contexts")
        return self.ctx.k_character(self.kgens + other.kgens, self.base * other.base)

    def __pow__(self, n: int) -> CharacterK:
        return self.ctx.k_character([(g, e * n) for g, e in self.kgens], self.base ** n)

    def inverse(self) -> CharacterK:
        return self ** -1

    def __truediv__(self, other: CharacterK) -> CharacterK:
        return self * other.inverse()

    def is_trivial(self) -> bool:
        return not self.kgens and self.base.is_trivial()

    def is_norm_pullback(self) -> bool:
        return not self.kgens

    def restrict_to_base(self) -> Character:
        """Restriction to k^x; N_{K/k}(a) = a^2 for a in k^x."""
        result = self.base ** 2
        for g, e in self.kgens:
            result = result * self.ctx.k_restriction(g) ** e
        return result

    def to_dict(self) -> dict:
        return {"kgens": [[g, e] for g, e in self.kgens], "base": self.base.to_dict()}

    def __str__(self):
        parts = []
        if not self.base.is_trivial():
            parts.append(f"norm({self.base})")
        parts.extend(_power_text(g, e) for g, e in self.kgens)
        return " ".join(parts) or "1"


def norm_pullback(rho: Character) -> CharacterK:
    return rho.ctx.norm(rho)


def satake_value(a: Character) -> SatakeMonomial:
    return a.satake_value()
