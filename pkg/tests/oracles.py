"""Independent oracles for the test suite.

``PAPER_*`` are hand transcriptions of the published tables.  A Tate factor
L(s, nu^a g1 g2 ...) is written (a, "g1 g2 ..."); every name is a free
unramified generator (xi of order 2) of a generic instance, and the
central character of the cuspidal pi is the free generator ``eta``.
``signature`` turns a computed EulerFactor into the same shape without
going through the printer or parser, and ``numeric_poles`` finds poles by
a dense root scan of the denominator polynomial with numpy.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

import numpy as np

H = Fraction(1, 2)
TH = Fraction(3, 2)

# type: (regular, exceptional) at mu = 1; None where the row admits no anisotropic model.
PAPER_ANISOTROPIC = {
    "I": ([(0, "sigma"), (0, "chi1 sigma"), (0, "chi2 sigma"), (0, "chi1 chi2 sigma")], []),
    "IIa": ([(0, "sigma"), (0, "chi chi sigma"), (H, "chi sigma")], []),
    "IIb": ([(0, "sigma"), (0, "chi chi sigma"), (-H, "chi sigma")], [(H, "chi sigma")]),
    "IIIa": ([(H, "chi sigma"), (H, "sigma")], []),
    "IIIb": None,
    "IVa": ([(TH, "sigma")], []),
    "IVb": ([(TH, "sigma"), (-H, "sigma")], []),
    "IVc": None,
    "IVd": None,
    "Va": ([(H, "sigma"), (H, "xi sigma")], []),
    "Vb": ([(-H, "sigma"), (H, "xi sigma")], [(H, "sigma")]),
    "Vc": ([(H, "sigma"), (-H, "xi sigma")], [(H, "xi sigma")]),
    "Vd": ([(-H, "sigma"), (-H, "xi sigma")], [(H, "sigma"), (H, "xi sigma")]),
    "VIa": ([(H, "sigma"), (H, "sigma")], []),
    "VIb": ([(H, "sigma")], [(H, "sigma")]),
    "VIc": None,
    "VId": None,
    "VII": ([], []),
    "VIIIa": ([], []),
    "VIIIb": ([], []),
    "IXa": ([], []),
    "IXb": ([], []),
    "X": ([(0, "sigma"), (0, "eta sigma")], []),
    "XIa": ([(H, "sigma")], []),
    "XIb": ([(-H, "sigma")], [(H, "sigma")]),
    "CuspGeneric": ([], []),
    "Va*": ([], [(H, "sigma"), (H, "xi sigma")]),
    "XIa*": ([], [(H, "sigma")]),
    "CuspOtherNonGeneric": ([], []),
}

# Full factor for every Bessel model; None: no Bessel model.
PAPER_FULL = {
    "I": [(0, "sigma"), (0, "chi1 sigma"), (0, "chi2 sigma"), (0, "chi1 chi2 sigma")],
    "IIa": [(0, "sigma"), (0, "chi chi sigma"), (H, "chi sigma")],
    "IIb": [(0, "sigma"), (0, "chi chi sigma"), (-H, "chi sigma"), (H, "chi sigma")],
    "IIIa": [(H, "chi sigma"), (H, "sigma")],
    "IIIb": [(H, "chi sigma"), (H, "sigma"), (-H, "chi sigma"), (-H, "sigma")],
    "IVa": [(TH, "sigma")],
    "IVb": [(TH, "sigma"), (-H, "sigma")],
    "IVc": [(TH, "sigma"), (H, "sigma"), (-TH, "sigma")],
    "IVd": None,
    "Va": [(H, "sigma"), (H, "xi sigma")],
    "Vb": [(H, "xi sigma"), (H, "sigma"), (-H, "sigma")],
    "Vc": [(H, "sigma"), (H, "xi sigma"), (-H, "xi sigma")],
    "Vd": [(H, "sigma"), (H, "xi sigma"), (-H, "sigma"), (-H, "xi sigma")],
    "VIa": [(H, "sigma"), (H, "sigma")],
    "VIb": [(H, "sigma"), (H, "sigma")],
    "VIc": [(H, "sigma"), (H, "sigma"), (-H, "sigma")],
    "VId": [(H, "sigma"), (H, "sigma"), (-H, "sigma"), (-H, "sigma")],
    "VII": [],
    "VIIIa": [],
    "VIIIb": [],
    "IXa": [],
    "IXb": [],
    "X": [(0, "sigma"), (0, "eta sigma")],
    "XIa": [(H, "sigma")],
    "XIb": [(H, "sigma"), (-H, "sigma")],
    "CuspGeneric": [],
    "Va*": [(H, "sigma"), (H, "xi sigma")],
    "XIa*": [(H, "sigma")],
    "CuspOtherNonGeneric": [],
}

# Exceptional factor at general mu.
PAPER_EXCEPTIONAL_MU = {
    "IIb": [(H, "mu chi sigma")],
    "Vb": [(H, "mu sigma")],
    "Vc": [(H, "mu xi sigma")],
    "Vd": [(H, "mu sigma"), (H, "mu xi sigma")],
    "VIb": [(H, "mu sigma")],
    "XIb": [(H, "mu sigma")],
}

# Characters rho with a non-zero (H, rho o lambda_G)-functional.
PAPER_H_FUNCTIONALS = {
    "IIb": ["chi sigma"],
    "Vb": ["sigma"],
    "Vc": ["xi sigma"],
    "Vd": ["sigma", "xi sigma"],
    "VIb": ["sigma"],
    "XIb": ["sigma"],
}

PAPER_ROW_COUNTS = {"exceptional_mu": 6, "h_functionals": 6, "anisotropic": 29, "full": 29,
                    "endoscopic": 8, "saito_kurokawa": 4}

PAPER_EXTENDED_SK = {"IIb", "Vb", "Vc", "Vd", "VIb", "VIc", "VId", "XIb", "Va*", "XIa*"}
PAPER_GENERIC = {"I", "IIa", "IIIa", "IVa", "Va", "VIa", "VII", "VIIIa", "IXa", "X", "XIa", "CuspGeneric"}

ORDER_TWO = {"xi"}


def _units(names: str) -> frozenset:
    counts = Counter(names.split())
    out = {}
    for name, e in counts.items():
        if name in ORDER_TWO:
            e %= 2
        if e:
            out[name] = e
    return frozenset(out.items())


def paper_signature(entries) -> Counter:
    """Multiset of (nu exponent, units) for a transcribed product of Tate factors."""
    return Counter((Fraction(a), _units(names)) for a, names in entries)


def signature(factor, sign_name: str | None = None) -> Counter:
    """The same shape for a computed EulerFactor, read from the Satake monomials.

    A sign -1 (a factor chi_{K/k}) is read as the unit ``sign_name``; this is
    how xi = chi_{K/k} instances are compared with the transcriptions.
    """
    out = Counter()
    for m, n in factor.terms:
        units = {u.name: e for u, e in m.units}
        if m.sign == -1:
            assert sign_name is not None, "unexpected chi_{K/k} in a generic instance"
            units[sign_name] = 1
        out[(-Fraction(m.q_exponent), frozenset(units.items()))] += n
    return out


def numeric_poles(values, q: float, cluster_tol: float = 1e-3):
    """Poles of prod (1 - m X)^-1 from np.roots of the expanded denominator.

    Returns (Re(s), multiplicity) pairs sorted by Re(s).  Roots closer than
    ``cluster_tol`` (relative) form one pole; the cluster mean is used, which
    is accurate to machine precision even for multiple roots (np.roots spreads a root of multiplicity k by about eps**(1/k)).
    """
    poly = np.array([1.0 + 0j])
    for m in values:
        poly = np.polymul(poly, np.array([-complex(m), 1.0]))
    roots = list(np.roots(poly)) if len(poly) > 1 else []
    clusters: list[list] = []
    for r in roots:
        for c in clusters:
            if abs(c[0] - r) <= cluster_tol * max(1.0, abs(r)):
                c.append(r)
                break
        else:
            clusters.append([r])
    poles = [(-math.log(abs(sum(c) / len(c))) / math.log(q), len(c)) for c in clusters]
    return sorted(poles)
