"""The classification tables as data.

Each row stores its factors as functions from a representation (and, for
the exceptional mu-column, a twisting character mu) to the list of
characters whose Tate factors make up the Euler factor.  Lookups go
through the module-level dictionaries at call time so that a row can be
swapped out (see :func:`patched_row`), which the self-test of the
verification suite relies on.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional

from .catalog import GSp4Rep

CharList = Callable[[GSp4Rep], list]
MuCharList = Callable[[GSp4Rep, object], list]


def _nu(pi: GSp4Rep, r) -> object:
    return pi.ctx.nu(Fraction(r))


def _s(pi, r=0):
    """nu^r sigma"""
    return _nu(pi, r) * pi["sigma"]


def _xs(pi, r=0):
    """nu^r xi sigma"""
    return _nu(pi, r) * pi["xi"] * pi["sigma"]


# ---------------------------------------------------------------------------
# Anisotropic Bessel models: Lambda column and the factors at mu = 1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnisotropicRow:
    type: str
    printed: str
    lambda_text: str
    regular: Optional[CharList]
    exceptional: Optional[CharList]
    caveat: str = ""


ODD_RESIDUE = "requires odd residue characteristic"

ANISOTROPIC: dict[str, AnisotropicRow] = {r.type: r for r in [
    AnisotropicRow("I", "chi_1 x chi_2 |x sigma", "all",
                   lambda p: [p["sigma"], p["chi1"] * p["sigma"], p["chi2"] * p["sigma"],
                              p["chi1"] * p["chi2"] * p["sigma"]],
                   lambda p: []),
    AnisotropicRow("IIa", "chi St |x sigma", "all != (chi sigma) o N",
                   lambda p: [p["sigma"], p["chi"] ** 2 * p["sigma"], _nu(p, "1/2") * p["chi"] * p["sigma"]],
                   lambda p: []),
    AnisotropicRow("IIb", "chi one |x sigma", "(chi sigma) o N",
                   lambda p: [p["sigma"], p["chi"] ** 2 * p["sigma"], _nu(p, "-1/2") * p["chi"] * p["sigma"]],
                   lambda p: [_nu(p, "1/2") * p["chi"] * p["sigma"]]),
    AnisotropicRow("IIIa", "chi |x sigma St", "all",
                   lambda p: [_nu(p, "1/2") * p["chi"] * p["sigma"], _s(p, "1/2")],
                   lambda p: []),
    AnisotropicRow("IIIb", "chi |x sigma one", "none", None, None),
    AnisotropicRow("IVa", "sigma St_G", "all != sigma o N", lambda p: [_s(p, "3/2")], lambda p: []),
    AnisotropicRow("IVb", "L(nu^{2}, nu^{-1} sigma St)", "sigma o N",
                   lambda p: [_s(p, "3/2"), _s(p, "-1/2")], lambda p: []),
    AnisotropicRow("IVc", "L(nu^{3/2} St, nu^{-3/2} sigma)", "none", None, None),
    AnisotropicRow("IVd", "sigma one_G", "none", None, None),
    AnisotropicRow("Va", "delta([xi, nu xi], nu^{-1/2} sigma)", "all != sigma o N, (xi sigma) o N",
                   lambda p: [_s(p, "1/2"), _xs(p, "1/2")], lambda p: []),
    AnisotropicRow("Vb", "L(nu^{1/2} xi St, nu^{-1/2} sigma)", "sigma o N if xi != chi_{K/k}",
                   lambda p: [_s(p, "-1/2"), _xs(p, "1/2")], lambda p: [_s(p, "1/2")]),
    AnisotropicRow("Vc", "L(nu^{1/2} xi St, nu^{-1/2} xi sigma)", "(xi sigma) o N if xi != chi_{K/k}",
                   lambda p: [_s(p, "1/2"), _xs(p, "-1/2")], lambda p: [_xs(p, "1/2")]),
    AnisotropicRow("Vd", "L(nu xi, xi |x nu^{-1/2} sigma)", "sigma o N if xi = chi_{K/k}",
                   lambda p: [_s(p, "-1/2"), _xs(p, "-1/2")], lambda p: [_s(p, "1/2"), _xs(p, "1/2")]),
    AnisotropicRow("VIa", "tau(S, nu^{-1/2} sigma)", "all != sigma o N",
                   lambda p: [_s(p, "1/2"), _s(p, "1/2")], lambda p: []),
    AnisotropicRow("VIb", "tau(T, nu^{-1/2} sigma)", "sigma o N", lambda p: [_s(p, "1/2")], lambda p: [_s(p, "1/2")]),
    AnisotropicRow("VIc", "L(nu^{1/2} St, nu^{-1/2} sigma)", "none", None, None),
    AnisotropicRow("VId", "L(nu, 1 |x nu^{-1/2} sigma)", "none", None, None),
    AnisotropicRow("VII", "chi |x pi", "all", lambda p: [], lambda p: []),
    AnisotropicRow("VIIIa", "tau(S, pi)", "all with Hom_T(pi, Lambda) != 0", lambda p: [], lambda p: []),
    AnisotropicRow("VIIIb", "tau(T, pi)", "all with Hom_T(pi, Lambda) = 0", lambda p: [], lambda p: []),
    AnisotropicRow("IXa", "delta(nu xi, nu^{-1/2} pi(mu))", "all, except mu, mu' if xi = chi_{K/k}",
                   lambda p: [], lambda p: []),
    AnisotropicRow("IXb", "L(nu xi, nu^{-1/2} pi(mu))", "mu, mu' if xi = chi_{K/k}", lambda p: [], lambda p: []),
    AnisotropicRow("X", "pi |x sigma", "all with Hom_T(sigma pi, Lambda) != 0",
                   lambda p: [p["sigma"], p["pi"].central_character() * p["sigma"]], lambda p: []),
    AnisotropicRow("XIa", "delta(nu^{1/2} pi, nu^{-1/2} sigma)", "all != sigma o N if Hom_T(sigma pi, Lambda) != 0",
                   lambda p: [_s(p, "1/2")], lambda p: []),
    AnisotropicRow("XIb", "L(nu^{1/2} pi, nu^{-1/2} sigma)", "sigma o N if Hom_T(pi, 1) != 0",
                   lambda p: [_s(p, "-1/2")], lambda p: [_s(p, "1/2")]),
    AnisotropicRow("CuspGeneric", "cusp_generic(NAME)", "declared", lambda p: [], lambda p: [], ODD_RESIDUE),
    AnisotropicRow("Va*", "theta(sigma St, xi sigma St)", "sigma o N for xi = chi_{K/k}",
                   lambda p: [], lambda p: [_s(p, "1/2"), _xs(p, "1/2")], ODD_RESIDUE),
    AnisotropicRow("XIa*", "theta(sigma St, sigma pi)", "sigma o N for Hom_T(pi^JL, 1) != 0",
                   lambda p: [], lambda p: [_s(p, "1/2")], ODD_RESIDUE),
    AnisotropicRow("CuspOtherNonGeneric", "cusp_nongeneric(NAME)", "declared", lambda p: [], lambda p: [], ODD_RESIDUE),
]}

# ---------------------------------------------------------------------------
# The full spinor factor, independent of the Bessel model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FullRow:
    type: str
    full: Optional[CharList]  # None: no Bessel model at all
    caveat: str = ""


FULL: dict[str, FullRow] = {r.type: r for r in [
    FullRow("I", lambda p: [p["sigma"], p["chi1"] * p["sigma"], p["chi2"] * p["sigma"],
                              p["chi1"] * p["chi2"] * p["sigma"]]),
    FullRow("IIa", lambda p: [p["sigma"], p["chi"] ** 2 * p["sigma"], _nu(p, "1/2") * p["chi"] * p["sigma"]]),
    FullRow("IIb", lambda p: [p["sigma"], p["chi"] ** 2 * p["sigma"], _nu(p, "-1/2") * p["chi"] * p["sigma"],
                                _nu(p, "1/2") * p["chi"] * p["sigma"]]),
    FullRow("IIIa", lambda p: [_nu(p, "1/2") * p["chi"] * p["sigma"], _s(p, "1/2")]),
    FullRow("IIIb", lambda p: [_nu(p, "1/2") * p["chi"] * p["sigma"], _s(p, "1/2"),
                                 _nu(p, "-1/2") * p["chi"] * p["sigma"], _s(p, "-1/2")]),
    FullRow("IVa", lambda p: [_s(p, "3/2")]),
    FullRow("IVb", lambda p: [_s(p, "3/2"), _s(p, "-1/2")]),
    FullRow("IVc", lambda p: [_s(p, "3/2"), _s(p, "1/2"), _s(p, "-3/2")]),
    FullRow("IVd", None),
    FullRow("Va", lambda p: [_s(p, "1/2"), _xs(p, "1/2")]),
    FullRow("Vb", lambda p: [_xs(p, "1/2"), _s(p, "1/2"), _s(p, "-1/2")]),
    FullRow("Vc", lambda p: [_s(p, "1/2"), _xs(p, "1/2"), _xs(p, "-1/2")]),
    FullRow("Vd", lambda p: [_s(p, "1/2"), _xs(p, "1/2"), _s(p, "-1/2"), _xs(p, "-1/2")]),
    FullRow("VIa", lambda p: [_s(p, "1/2"), _s(p, "1/2")]),
    FullRow("VIb", lambda p: [_s(p, "1/2"), _s(p, "1/2")]),
    FullRow("VIc", lambda p: [_s(p, "1/2"), _s(p, "1/2"), _s(p, "-1/2")]),
    FullRow("VId", lambda p: [_s(p, "1/2"), _s(p, "1/2"), _s(p, "-1/2"), _s(p, "-1/2")]),
    FullRow("VII", lambda p: []),
    FullRow("VIIIa", lambda p: []),
    FullRow("VIIIb", lambda p: []),
    FullRow("IXa", lambda p: []),
    FullRow("IXb", lambda p: []),
    FullRow("X", lambda p: [p["sigma"], p["pi"].central_character() * p["sigma"]]),
    FullRow("XIa", lambda p: [_s(p, "1/2")]),
    FullRow("XIb", lambda p: [_s(p, "1/2"), _s(p, "-1/2")]),
    FullRow("CuspGeneric", lambda p: [], ODD_RESIDUE),
    FullRow("Va*", lambda p: [_s(p, "1/2"), _xs(p, "1/2")], ODD_RESIDUE),
    FullRow("XIa*", lambda p: [_s(p, "1/2")], ODD_RESIDUE),
    FullRow("CuspOtherNonGeneric", lambda p: [], ODD_RESIDUE),
]}

# ---------------------------------------------------------------------------
# Exceptional factor with its dependence on mu
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalMuRow:
    type: str
    condition: str
    lambda_text: str
    exceptional: MuCharList


def _ms(p, mu, r="1/2"):
    return mu * _s(p, r)


EXCEPTIONAL_MU: dict[str, ExceptionalMuRow] = {r.type: r for r in [
    ExceptionalMuRow("IIb", "", "(chi sigma) o N", lambda p, mu: [mu * _nu(p, "1/2") * p["chi"] * p["sigma"]]),
    ExceptionalMuRow("Vb", "xi != chi_{K/k}", "sigma o N", lambda p, mu: [_ms(p, mu)]),
    ExceptionalMuRow("Vc", "xi != chi_{K/k}", "(xi sigma) o N", lambda p, mu: [mu * _xs(p, "1/2")]),
    ExceptionalMuRow("Vd", "xi = chi_{K/k}", "sigma o N", lambda p, mu: [_ms(p, mu), mu * _xs(p, "1/2")]),
    ExceptionalMuRow("VIb", "", "sigma o N", lambda p, mu: [_ms(p, mu)]),
    ExceptionalMuRow("XIb", "pi_T != 0", "sigma o N", lambda p, mu: [_ms(p, mu)]),
]}

# ---------------------------------------------------------------------------
# Characters rho with a non-zero (H, rho o lambda_G)-functional
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HFunctionalRow:
    type: str
    condition: str
    rho_text: str
    rhos: CharList


H_FUNCTIONALS: dict[str, HFunctionalRow] = {r.type: r for r in [
    HFunctionalRow("IIb", "", "chi sigma", lambda p: [p["chi"] * p["sigma"]]),
    HFunctionalRow("Vb", "xi != chi_{K/k}", "sigma", lambda p: [p["sigma"]]),
    HFunctionalRow("Vc", "xi != chi_{K/k}", "xi sigma", lambda p: [p["xi"] * p["sigma"]]),
    HFunctionalRow("Vd", "xi = chi_{K/k}", "sigma, xi sigma", lambda p: [p["sigma"], p["xi"] * p["sigma"]]),
    HFunctionalRow("VIb", "", "sigma", lambda p: [p["sigma"]]),
    HFunctionalRow("XIb", "pi_T != 0", "sigma", lambda p: [p["sigma"]]),
]}

# The two cuspidal lifts with an exceptional pole, by the same criterion.
H_FUNCTIONALS_CUSPIDAL: dict[str, HFunctionalRow] = {r.type: r for r in [
    HFunctionalRow("Va*", "xi = chi_{K/k}", "sigma, xi sigma", lambda p: [p["sigma"], p["xi"] * p["sigma"]]),
    HFunctionalRow("XIa*", "Hom_T(pi^JL, 1) != 0", "sigma", lambda p: [p["sigma"]]),
]}

# ---------------------------------------------------------------------------
# Endoscopic and Saito-Kurokawa packet rows (constructors live in :mod:`packets`)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PacketRow:
    key: str
    pi1: str
    pi2: str
    plus: str
    plus_type: str
    minus: str
    minus_type: str


ENDOSCOPIC = (
    PacketRow("principal-principal", "mu_1 x mu_2", "mu_3 x mu_4",
              "mu_3 mu_1^{-1} x mu_4 mu_1^{-1} |x mu_1", "I", "", ""),
    PacketRow("principal-special", "mu_1 x mu_2", "mu St", "mu mu_1^{-1} St |x mu_1", "IIa", "", ""),
    PacketRow("principal-cuspidal", "mu_1 x mu_2", "cuspidal", "mu_1^{-1} pi_2 |x mu_1", "X", "", ""),
    PacketRow("special-special-equal", "mu St", "mu St", "tau(S, nu^{-1/2} mu)", "VIa",
              "tau(T, nu^{-1/2} mu)", "VIb"),
    PacketRow("special-special-twisted", "xi mu St", "mu St", "delta([xi, nu xi], nu^{-1/2} mu)", "Va",
              "theta(mu St, xi mu St)", "Va*"),
    PacketRow("cuspidal-special", "cuspidal", "mu St", "delta(nu^{1/2} mu^{-1} pi_1, nu^{-1/2} mu)", "XIa",
              "theta(mu St, pi_1)", "XIa*"),
    PacketRow("cuspidal-equal", "cuspidal", "cuspidal = pi_1", "tau(S, pi_1)", "VIIIa", "tau(T, pi_1)", "VIIIb"),
    PacketRow("cuspidal-distinct", "cuspidal", "cuspidal != pi_1", "cuspidal", "CuspGeneric",
              "theta(pi_1, pi_2)", "CuspOtherNonGeneric"),
)

SAITO_KUROKAWA = (
    PacketRow("principal", "mu x mu^{-1}", "", "mu one |x mu^{-1}", "IIb", "", ""),
    PacketRow("steinberg", "St", "", "L(nu^{1/2} St, nu^{-1/2})", "VIc", "tau(T, nu^{-1/2})", "VIb"),
    PacketRow("twisted-steinberg", "xi St", "", "L(nu^{1/2} xi St, nu^{-1/2})", "Vb",
              "theta(St, xi St)", "Va*"),
    PacketRow("cuspidal", "cuspidal", "", "L(nu^{1/2} pi, nu^{-1/2})", "XIb", "theta(St, pi)", "XIa*"),
)


TABLES = {"exceptional_mu": EXCEPTIONAL_MU, "h_functionals": H_FUNCTIONALS,
          "anisotropic": ANISOTROPIC, "full": FULL}


@contextlib.contextmanager
def patched_row(table: str, type_: str, **changes):
    """Temporarily replace fields of one row of a lookup table (test harness only)."""
    registry = TABLES[table]
    original = registry[type_]
    registry[type_] = replace(original, **changes)
    try:
        yield registry[type_]
    finally:
        registry[type_] = original
