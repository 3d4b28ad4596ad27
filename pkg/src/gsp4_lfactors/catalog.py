"""Irreducible representations of GL(2,k) and GSp(4,k) in Sally-Tadic / Roberts-Schmidt notation.

Representations are immutable values holding the inducing characters and
GL(2) data exactly as the classification tables display them.  The
classification is presupposed: apart from arity, quadraticity of xi and the
trivial central character demanded for type XI, irreducibility side
conditions are not re-derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .characters import Character, CharacterK
from .errors import InputError, UndeclaredFlagError

__all__ = [
    "TYPE_SYMBOLS", "SCHEMA", "GENERIC_TYPES", "EXTENDED_SK_TYPES", "ODD_RESIDUE_TYPES",
    "DeclaredPredicate", "PrincipalSeries", "Special", "OneDimensional", "Cuspidal",
    "OpaqueCuspidal", "GSp4Rep", "BesselDatum", "make_rep", "central_character", "twist",
    "is_generic", "is_extended_sk",
]

TYPE_SYMBOLS = (
    "I", "IIa", "IIb", "IIIa", "IIIb", "IVa", "IVb", "IVc", "IVd",
    "Va", "Vb", "Vc", "Vd", "VIa", "VIb", "VIc", "VId", "VII", "VIIIa", "VIIIb",
    "IXa", "IXb", "X", "XIa", "XIb", "CuspGeneric", "Va*", "XIa*", "CuspOtherNonGeneric",
)

SCHEMA: dict[str, tuple[str, ...]] = {
    "I": ("chi1", "chi2", "sigma"),
    **{t: ("chi", "sigma") for t in ("IIa", "IIb", "IIIa", "IIIb")},
    **{t: ("sigma",) for t in ("IVa", "IVb", "IVc", "IVd", "VIa", "VIb", "VIc", "VId")},
    **{t: ("xi", "sigma") for t in ("Va", "Vb", "Vc", "Vd")},
    "VII": ("chi", "pi"),
    "VIIIa": ("pi",), "VIIIb": ("pi",),
    "IXa": ("xi", "pi"), "IXb": ("xi", "pi"),
    "X": ("pi", "sigma"), "XIa": ("pi", "sigma"), "XIb": ("pi", "sigma"),
    "Va*": ("sigma", "xi"), "XIa*": ("sigma", "pi"),
    "CuspGeneric": ("data",), "CuspOtherNonGeneric": ("data",),
}

GENERIC_TYPES = frozenset({"I", "IIa", "IIIa", "IVa", "Va", "VIa", "VII", "VIIIa", "IXa", "X", "XIa", "CuspGeneric"})
EXTENDED_SK_TYPES = frozenset({"IIb", "Vb", "Vc", "Vd", "VIb", "VIc", "VId", "XIb", "Va*", "XIa*"})
# L-factors for these rows are only known for odd residue characteristic.
ODD_RESIDUE_TYPES = frozenset({"Va*", "XIa*", "CuspGeneric", "CuspOtherNonGeneric"})

_SIGMA_SLOT = frozenset(t for t, params in SCHEMA.items() if "sigma" in params)
_PI_SLOT = frozenset({"VII", "VIIIa", "VIIIb", "IXa", "IXb"})


@dataclass(frozen=True)
class DeclaredPredicate:
    """A yes/no fact about characters Lambda of K^x that cannot be computed here.

    Used for Waldspurger data Hom_T(pi, Lambda) != 0 and for the Bessel
    models of opaque cuspidal representations: an explicit per-Lambda
    override list, falling back to ``default``.
    """

    default: bool | None = None
    overrides: tuple[tuple[CharacterK, bool], ...] = ()
    label: str = "Waldspurger flag"

    def value(self, lam: CharacterK, subject: str = "") -> bool:
        for key, flag in self.overrides:
            if key == lam:
                return flag
        if self.default is None:
            where = f" of {subject}" if subject else ""
            raise UndeclaredFlagError(f"undeclared {self.label}{where} for Lambda = {lam}")
        return self.default

    def is_declared(self, lam: CharacterK) -> bool:
        return self.default is not None or any(key == lam for key, _ in self.overrides)

    def to_dict(self) -> dict:
        return {"default": self.default, "overrides": [[str(k), v] for k, v in self.overrides]}


class GL2Rep:
    """Common interface of the irreducible GL(2,k) representations used here."""

    kind = ""

    def central_character(self) -> Character:
        raise NotImplementedError

    def twist(self, mu: Character) -> GL2Rep:
        raise NotImplementedError

    @property
    def is_generic(self) -> bool:
        return self.kind != "one_dim"

    @property
    def is_discrete_series(self) -> bool:
        return self.kind in ("special", "cuspidal")

    def __str__(self):
        from .notation import print_gl2

        return print_gl2(self)


@dataclass(frozen=True)
class PrincipalSeries(GL2Rep):
    mu1: Character
    mu2: Character
    kind = "principal"

    def __post_init__(self):
        ratio = self.mu1 / self.mu2
        ctx = ratio.ctx
        if ratio == ctx.nu(1) or ratio == ctx.nu(-1):
            raise InputError(f"{self.mu1} x {self.mu2} is reducible (mu1/mu2 = nu^(+-1))")

    def central_character(self) -> Character:
        return self.mu1 * self.mu2

    def twist(self, mu: Character) -> PrincipalSeries:
        return PrincipalSeries(mu * self.mu1, mu * self.mu2)


@dataclass(frozen=True)
class Special(GL2Rep):
    """The twisted Steinberg representation mu St."""

    mu: Character
    kind = "special"

    def central_character(self) -> Character:
        return self.mu ** 2

    def twist(self, mu: Character) -> Special:
        return Special(mu * self.mu)


@dataclass(frozen=True)
class OneDimensional(GL2Rep):
    """mu o det."""

    mu: Character
    kind = "one_dim"

    def central_character(self) -> Character:
        return self.mu ** 2

    def twist(self, mu: Character) -> OneDimensional:
        return OneDimensional(mu * self.mu)


@dataclass(frozen=True)
class Cuspidal(GL2Rep):
    """shift (x) pi for a declared cuspidal pi.

    ``omega``, ``waldspurger`` (Hom_T(pi, Lambda) != 0), ``jl`` (the same for
    the Jacquet-Langlands transfer) and ``dihedral`` (mu, mu' for pi = pi(mu))
    describe the declared, unshifted pi.  ``jl=None`` means the
    Tunnell-Saito dichotomy: Hom_T(pi^JL, Lambda) != 0 iff Hom_T(pi, Lambda) = 0.
    """

    name: str
    omega: Character
    waldspurger: DeclaredPredicate = DeclaredPredicate()
    jl: DeclaredPredicate | None = None
    dihedral: tuple[CharacterK, CharacterK] | None = None
    shift: Character | None = None
    kind = "cuspidal"

    def __post_init__(self):
        if self.shift is None:
            object.__setattr__(self, "shift", self.omega.ctx.trivial())
        if self.dihedral is not None:
            mu, mu_conj = self.dihedral
            if mu == mu_conj:
                raise InputError(f"{self.name}: dihedral parameter must differ from its Galois conjugate")
            if mu.restrict_to_base() != mu_conj.restrict_to_base():
                raise InputError(f"{self.name}: mu and its Galois conjugate must agree on k^x")

    @property
    def base(self) -> Cuspidal:
        return Cuspidal(self.name, self.omega, self.waldspurger, self.jl, self.dihedral)

    def central_character(self) -> Character:
        return self.shift ** 2 * self.omega

    def twist(self, mu: Character) -> Cuspidal:
        return Cuspidal(self.name, self.omega, self.waldspurger, self.jl, self.dihedral, mu * self.shift)

    def _unshift(self, lam: CharacterK) -> CharacterK:
        return lam.ctx.norm(self.shift.inverse()) * lam

    def hom_torus(self, lam: CharacterK) -> bool:
        """Hom_T(pi, Lambda) != 0 for this (possibly shifted) pi."""
        return self.waldspurger.value(self._unshift(lam), self.name)

    def hom_torus_jl(self, lam: CharacterK) -> bool:
        """Hom_T(pi^JL, Lambda) != 0."""
        lam = self._unshift(lam)
        if self.jl is not None and self.jl.is_declared(lam):
            return self.jl.value(lam, self.name + "^JL")
        return not self.waldspurger.value(lam, self.name)

    def dihedral_parameters(self) -> tuple[CharacterK, CharacterK] | None:
        if self.dihedral is None:
            return None
        pullback = self.shift.ctx.norm(self.shift)
        return (self.dihedral[0] * pullback, self.dihedral[1] * pullback)


@dataclass(frozen=True)
class OpaqueCuspidal:
    """A cuspidal GSp(4) representation known only through declared data."""

    name: str
    omega: Character
    models: DeclaredPredicate = DeclaredPredicate(label="Bessel-model declaration")
    shift: Character | None = None

    def __post_init__(self):
        if self.shift is None:
            object.__setattr__(self, "shift", self.omega.ctx.trivial())

    def central_character(self) -> Character:
        return self.shift ** 2 * self.omega

    def twist(self, mu: Character) -> OpaqueCuspidal:
        return OpaqueCuspidal(self.name, self.omega, self.models, mu * self.shift)

    def has_model(self, lam: CharacterK) -> bool:
        return self.models.value(lam.ctx.norm(self.shift.inverse()) * lam, self.name)


@dataclass(frozen=True)
class GSp4Rep:
    """A classified irreducible representation: type symbol plus parameters."""

    type: str
    params: tuple[tuple[str, Any], ...] = field(default=())

    def __getitem__(self, key: str):
        for name, value in self.params:
            if name == key:
                return value
        raise KeyError(f"type {self.type} has no parameter {key!r}")

    def get(self, key: str, default=None):
        try:
            return self[key]
        except KeyError:
            return default

    @property
    def ctx(self):
        first = self.params[0][1]
        return first.ctx if isinstance(first, Character) else first.omega.ctx

    def replace(self, **changes) -> GSp4Rep:
        values = dict(self.params)
        values.update(changes)
        return make_rep(self.type, **values)

    def __str__(self):
        from .notation import print_rep

        return print_rep(self)


def _require_character(type_: str, name: str, value) -> None:
    if not isinstance(value, Character):
        raise InputError(f"{type_}: parameter {name} must be a character, got {type(value).__name__}")


def make_rep(type_: str, **params) -> GSp4Rep:
    """Construct a GSp(4) representation, validating arity and parameter kinds."""
    if type_ not in SCHEMA:
        raise InputError(f"unknown type symbol {type_!r}")
    expected = SCHEMA[type_]
    if set(params) != set(expected):
        raise InputError(f"type {type_} takes parameters ({', '.join(expected)}), got ({', '.join(sorted(params))})")
    ctx = None
    for name in expected:
        value = params[name]
        if name == "pi":
            if not isinstance(value, Cuspidal):
                raise InputError(f"{type_}: parameter pi must be a cuspidal GL(2) representation")
            value_ctx = value.omega.ctx
        elif name == "data":
            if not isinstance(value, OpaqueCuspidal):
                raise InputError(f"{type_}: parameter data must be an opaque cuspidal datum")
            value_ctx = value.omega.ctx
        else:
            _require_character(type_, name, value)
            value_ctx = value.ctx
        if ctx is None:
            ctx = value_ctx
        elif value_ctx is not ctx:
            raise InputError(f"{type_}: parameters belong to different contexts")
    if "xi" in params:
        xi = params["xi"]
        if not (xi ** 2).is_trivial() or xi.is_trivial():
            raise InputError(f"{type_}: xi = {xi} must be a non-trivial quadratic character")
    if type_ in ("XIa", "XIb", "XIa*") and not params["pi"].central_character().is_trivial():
        raise InputError(f"{type_}: pi must have trivial central character")
    return GSp4Rep(type_, tuple((name, params[name]) for name in expected))


def central_character(pi: GSp4Rep) -> Character:
    t = pi.type
    if t == "I":
        return pi["chi1"] * pi["chi2"] * pi["sigma"] ** 2
    if t in ("IIa", "IIb"):
        return pi["chi"] ** 2 * pi["sigma"] ** 2
    if t in ("IIIa", "IIIb"):
        return pi["chi"] * pi["sigma"] ** 2
    if t == "VII":
        return pi["chi"] * pi["pi"].central_character()
    if t in ("VIIIa", "VIIIb"):
        return pi["pi"].central_character()
    if t in ("IXa", "IXb"):
        return pi["xi"] * pi["pi"].central_character()
    if t in ("X", "XIa", "XIb"):
        return pi["pi"].central_character() * pi["sigma"] ** 2
    if t in ("CuspGeneric", "CuspOtherNonGeneric"):
        return pi["data"].central_character()
    # IV, V, VI, Va*, XIa*: the nu and xi factors of the inducing data cancel.
    return pi["sigma"] ** 2


def twist(mu: Character, pi: GSp4Rep) -> GSp4Rep:
    """mu (x) pi; the sigma slot (or the GL(2) parameter of Klingen type) absorbs mu."""
    if pi.type in _SIGMA_SLOT:
        return pi.replace(sigma=mu * pi["sigma"])
    if pi.type in _PI_SLOT:
        return pi.replace(pi=pi["pi"].twist(mu))
    return pi.replace(data=pi["data"].twist(mu))


def is_generic(pi: GSp4Rep) -> bool:
    return pi.type in GENERIC_TYPES


def is_extended_sk(pi: GSp4Rep) -> bool:
    return pi.type in EXTENDED_SK_TYPES


@dataclass(frozen=True)
class BesselDatum:
    """Anisotropic Bessel datum (Lambda, psi) for the context's extension K/k.

    psi is always non-trivial on S, so only Lambda is a free datum.
    """

    lam: CharacterK
    psi_nondegenerate: bool = True

    def __post_init__(self):
        if not isinstance(self.lam, CharacterK):
            raise InputError("Lambda must be a character of K^x")
        if not self.psi_nondegenerate:
            raise InputError("psi must be non-degenerate (non-trivial on S)")

    @property
    def extension(self):
        return self.lam.ctx.extension

    @property
    def restriction(self) -> Character:
        return self.lam.restrict_to_base()


def all_types() -> Iterable[str]:
    return iter(TYPE_SYMBOLS)
