"""Anisotropic Bessel models, (H, rho)-functionals and spinor L-factors.

All answers are table lookups (see :mod:`tables`).  The only derived rule
is the twist identity for the regular factor at general mu:

    L_reg(s, Pi, Lambda, mu) = L_reg(s, mu (x) Pi, (mu o N) Lambda, 1),

which follows from lambda_G(t_a) = N_{K/k}(a) in the zeta integral.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import tables
from .catalog import (GSp4Rep, BesselDatum, ODD_RESIDUE_TYPES, central_character, twist)
from .characters import Character, CharacterK
from .errors import InputError, NoBesselModelError, UndeclaredFlagError
from .euler import EulerFactor, tate_product

__all__ = [
    "LambdaCondition", "LFactorTriple", "LFactorResult", "anisotropic_lambda_condition",
    "has_anisotropic_bessel", "bessel_trace", "h_functional_dim", "l_exceptional", "l_regular",
    "l_full_anisotropic", "l_full_any_model", "lfactor_query",
]

WALDSPURGER_CAVEAT = "depends on declared Waldspurger data"


@dataclass(frozen=True)
class LambdaCondition:
    """The Lambda column of one anisotropic-table row, instantiated for a representation.

    ``kind`` is none, all, all_except or exactly; ``chars`` lists the
    exceptions or the admitted characters; ``test`` is an optional extra
    predicate on Lambda coming from declared Waldspurger-type data.  Every
    kind other than none carries the constraint Lambda|k^x = omega.
    """

    row: str
    kind: str
    omega: Character
    chars: tuple[CharacterK, ...] = ()
    guard: str = ""
    guard_holds: Optional[bool] = None
    test: Optional[Callable[[CharacterK], bool]] = field(default=None, compare=False)
    test_text: str = ""

    def check(self, lam: CharacterK) -> tuple[bool, list[str]]:
        """Whether Lambda satisfies the condition, with a trace of each step."""
        trace = [f"row {self.row}: Lambda {tables.ANISOTROPIC[self.row].lambda_text}"]
        if self.guard:
            trace.append(f"guard '{self.guard}' {'holds' if self.guard_holds else 'fails'}")
        restriction = lam.restrict_to_base()
        if restriction != self.omega:
            trace.append(f"Lambda|k^x = {restriction} differs from the central character {self.omega}")
            return False, trace
        trace.append(f"Lambda|k^x = central character {self.omega}")
        if self.kind == "none":
            trace.append("no anisotropic Bessel model for this row")
            return False, trace
        if self.kind == "all_except" and lam in self.chars:
            trace.append(f"Lambda = {lam} is excluded")
            return False, trace
        if self.kind == "exactly" and lam not in self.chars:
            allowed = ", ".join(str(c) for c in self.chars)
            trace.append(f"Lambda = {lam} is not among {{{allowed}}}")
            return False, trace
        if self.test is not None:
            ok = self.test(lam)
            trace.append(f"declared '{self.test_text}' is {'true' if ok else 'false'}")
            if not ok:
                return False, trace
        trace.append("anisotropic Bessel model exists")
        return True, trace

    def admits(self, lam: CharacterK) -> bool:
        return self.check(lam)[0]

    def to_dict(self) -> dict:
        out = {"row": self.row, "kind": "waldspurger_filtered" if self.test else self.kind,
               "chars": [str(c) for c in self.chars], "omega": str(self.omega)}
        if self.test:
            out["base_kind"] = self.kind
            out["filter"] = self.test_text
        if self.guard:
            out["guard"] = self.guard
            out["guard_holds"] = self.guard_holds
        return out


def anisotropic_lambda_condition(pi: GSp4Rep, ext=None) -> LambdaCondition:
    """Lambda column of the anisotropic table for ``pi`` over the extension of its context."""
    if ext is not None and ext != pi.ctx.extension:
        raise InputError("the extension must be the one fixed by the character context")
    return _lambda_condition(pi)


@functools.lru_cache(maxsize=1024)
def _lambda_condition(pi: GSp4Rep) -> LambdaCondition:
    ctx = pi.ctx
    t = pi.type
    omega = central_character(pi)
    N = ctx.norm
    chi_kk = ctx.chi_kk()

    def cond(kind, chars=(), **kw):
        return LambdaCondition(t, kind, omega, tuple(chars), **kw)

    def guarded(chars, guard, holds, **kw):
        return cond("exactly" if holds else "none", chars if holds else (), guard=guard, guard_holds=holds, **kw)

    if t in ("I", "IIIa", "VII"):
        return cond("all")
    if t in ("IIIb", "IVc", "IVd", "VIc", "VId"):
        return cond("none")
    if t == "IIa":
        return cond("all_except", [N(pi["chi"] * pi["sigma"])])
    if t == "IIb":
        return cond("exactly", [N(pi["chi"] * pi["sigma"])])
    if t in ("IVa", "VIa"):
        return cond("all_except", [N(pi["sigma"])])
    if t in ("IVb", "VIb"):
        return cond("exactly", [N(pi["sigma"])])
    if t == "Va":
        return cond("all_except", [N(pi["sigma"]), N(pi["xi"] * pi["sigma"])])
    if t == "Vb":
        return guarded([N(pi["sigma"])], "xi != chi_{K/k}", pi["xi"] != chi_kk)
    if t == "Vc":
        return guarded([N(pi["xi"] * pi["sigma"])], "xi != chi_{K/k}", pi["xi"] != chi_kk)
    if t in ("Vd", "Va*"):
        return guarded([N(pi["sigma"])], "xi = chi_{K/k}", pi["xi"] == chi_kk)
    if t in ("VIIIa", "VIIIb"):
        cusp = pi["pi"]
        want = t == "VIIIa"
        return cond("all", test=lambda lam: cusp.hom_torus(lam) == want,
                    test_text="Hom_T(pi, Lambda) != 0" if want else "Hom_T(pi, Lambda) = 0")
    if t in ("IXa", "IXb"):
        holds = pi["xi"] == chi_kk
        if not holds:
            return cond("all" if t == "IXa" else "none", guard="xi = chi_{K/k}", guard_holds=False)
        params = pi["pi"].dihedral_parameters()
        if params is None:
            raise UndeclaredFlagError(f"{t}: xi = chi_{{K/k}} requires the dihedral parameters mu, mu' of pi")
        kind = "all_except" if t == "IXa" else "exactly"
        return cond(kind, params, guard="xi = chi_{K/k}", guard_holds=True)
    if t in ("X", "XIa"):
        twisted = pi["pi"].twist(pi["sigma"])
        kw = dict(test=twisted.hom_torus, test_text="Hom_T(sigma pi, Lambda) != 0")
        if t == "X":
            return cond("all", **kw)
        return cond("all_except", [N(pi["sigma"])], **kw)
    if t == "XIb":
        holds = pi["pi"].hom_torus(ctx.k_trivial())
        return guarded([N(pi["sigma"])], "Hom_T(pi, 1) != 0", holds)
    if t == "XIa*":
        holds = pi["pi"].hom_torus_jl(ctx.k_trivial())
        return guarded([N(pi["sigma"])], "Hom_T(pi^JL, 1) != 0", holds)
    if t in ("CuspGeneric", "CuspOtherNonGeneric"):
        data = pi["data"]
        return cond("all", test=data.has_model, test_text=f"Bessel model of {data.name}")
    raise InputError(f"no anisotropic-table row for type {t!r}")


def _lam(pi: GSp4Rep, bd) -> CharacterK:
    lam = bd.lam if isinstance(bd, BesselDatum) else bd
    if not isinstance(lam, CharacterK):
        raise InputError("Lambda must be a character of K^x")
    if lam.ctx is not pi.ctx:
        raise InputError("Lambda and the representation belong to different contexts")
    return lam


def bessel_trace(pi: GSp4Rep, bd) -> tuple[bool, list[str]]:
    return anisotropic_lambda_condition(pi).check(_lam(pi, bd))


def has_anisotropic_bessel(pi: GSp4Rep, bd) -> bool:
    return bessel_trace(pi, bd)[0]


def h_functional_dim(pi: GSp4Rep, rho: Character, ext=None) -> int:
    """Dimension (0 or 1) of (H, rho o lambda_G)-equivariant functionals."""
    ctx = pi.ctx
    if ext is not None and ext != ctx.extension:
        raise InputError("the extension must be the one fixed by the character context")
    t = pi.type
    row = tables.H_FUNCTIONALS.get(t) or tables.H_FUNCTIONALS_CUSPIDAL.get(t)
    if row is None:
        return 0
    chi_kk = ctx.chi_kk()
    if t in ("Vb", "Vc") and pi["xi"] == chi_kk:
        return 0
    if t in ("Vd", "Va*") and pi["xi"] != chi_kk:
        return 0
    if t == "XIb" and not pi["pi"].hom_torus(ctx.k_trivial()):
        return 0
    if t == "XIa*" and not pi["pi"].hom_torus_jl(ctx.k_trivial()):
        return 0
    return int(rho in row.rhos(pi))


def _require_model(pi: GSp4Rep, lam: CharacterK) -> None:
    ok, trace = bessel_trace(pi, lam)
    if not ok:
        raise NoBesselModelError(f"{pi.type}: no anisotropic Bessel model for Lambda = {lam} ({trace[-1]})")


def _mu_or_trivial(pi: GSp4Rep, mu) -> Character:
    return pi.ctx.trivial() if mu is None else mu


def l_exceptional(pi: GSp4Rep, bd, mu: Character | None = None) -> EulerFactor:
    """Exceptional factor: the mu-column for general mu, the anisotropic table at mu = 1."""
    lam = _lam(pi, bd)
    _require_model(pi, lam)
    return _exceptional(pi, _mu_or_trivial(pi, mu))


def _exceptional(pi: GSp4Rep, mu: Character) -> EulerFactor:
    if mu.is_trivial():
        return tate_product(tables.ANISOTROPIC[pi.type].exceptional(pi))
    if pi.type in tables.EXCEPTIONAL_MU:
        return tate_product(tables.EXCEPTIONAL_MU[pi.type].exceptional(pi, mu))
    if pi.type in ("Va*", "XIa*"):
        raise InputError(f"{pi.type}: the exceptional factor is tabulated only for mu = 1; "
                         "use the packet identities for general mu")
    return EulerFactor()


def l_regular(pi: GSp4Rep, bd, mu: Character | None = None) -> EulerFactor:
    """Regular factor: anisotropic table at mu = 1, the twist identity otherwise."""
    lam = _lam(pi, bd)
    _require_model(pi, lam)
    return _regular(pi, _mu_or_trivial(pi, mu))


def _regular(pi: GSp4Rep, mu: Character) -> EulerFactor:
    if not mu.is_trivial():
        pi = twist(mu, pi)
    return tate_product(tables.ANISOTROPIC[pi.type].regular(pi))


@dataclass(frozen=True)
class LFactorTriple:
    regular: EulerFactor
    exceptional: EulerFactor

    @property
    def full(self) -> EulerFactor:
        return self.regular * self.exceptional

    def to_dict(self) -> dict:
        return {"regular": str(self.regular), "exceptional": str(self.exceptional), "full": str(self.full)}


def l_full_anisotropic(pi: GSp4Rep, bd, mu: Character | None = None) -> LFactorTriple:
    lam = _lam(pi, bd)
    _require_model(pi, lam)
    mu = _mu_or_trivial(pi, mu)
    return LFactorTriple(_regular(pi, mu), _exceptional(pi, mu))


def l_full_any_model(pi: GSp4Rep, mu: Character | None = None) -> EulerFactor:
    """Full-table entry, valid for every Bessel model (split or anisotropic)."""
    mu = _mu_or_trivial(pi, mu)
    if not mu.is_trivial():
        pi = twist(mu, pi)
    row = tables.FULL[pi.type]
    if row.full is None:
        raise NoBesselModelError(f"{pi.type}: no Bessel model")
    return tate_product(row.full(pi))


def caveats(pi: GSp4Rep) -> list[str]:
    notes = []
    if pi.type in ODD_RESIDUE_TYPES:
        notes.append(f"{pi.type}: {tables.ODD_RESIDUE}")
    if any(name in ("pi", "data") for name, _ in pi.params) and pi.type != "VII":
        notes.append(f"{pi.type}: {WALDSPURGER_CAVEAT}")
    return notes


@dataclass(frozen=True)
class LFactorResult:
    pi: GSp4Rep
    lam: CharacterK
    mu: Character
    trace: tuple[str, ...]
    triple: LFactorTriple
    caveats: tuple[str, ...]

    def to_dict(self) -> dict:
        from .notation import rep_to_dict

        return {"type": self.pi.type, "rep": str(self.pi), "parameters": rep_to_dict(self.pi)["params"],
                "lambda": str(self.lam), "mu": str(self.mu), "condition_trace": list(self.trace),
                **self.triple.to_dict(), "caveats": list(self.caveats)}


def lfactor_query(pi: GSp4Rep, lam: CharacterK, mu: Character | None = None) -> LFactorResult:
    """Everything the lfactor command reports; raises NoBesselModelError with the failed step."""
    lam = _lam(pi, lam)
    mu = _mu_or_trivial(pi, mu)
    ok, trace = bessel_trace(pi, lam)
    if not ok:
        raise NoBesselModelError(f"no anisotropic Bessel model: {trace[-1]}")
    triple = l_full_anisotropic(pi, lam, mu)
    return LFactorResult(pi, lam, mu, tuple(trace), triple, tuple(caveats(pi)))
