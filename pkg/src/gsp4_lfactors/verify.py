"""Cross-table consistency suite behind ``gsp4-lfactors verify``.

Every check compares two independently encoded pieces of data over seeded
random instantiations (see :mod:`instances`):

    factorization   regular * exceptional = full, per anisotropic row
    poles           exceptional pole at nu^{1/2} rho  <=>  H-functional for rho
    extended_sk     exactly the extended Saito-Kurokawa types have exceptional poles
    twist           mu-column of the exceptional factor = untwisted factor of mu (x) Pi
    endoscopic      full factors of endoscopic packets = L(pi1 x mu) L(pi2 x mu)
    saito_kurokawa  full factors of Saito-Kurokawa packets
    sk_minus        SK minus member = endoscopic minus member of (pi, St)

Rows run one after another in table order, so the report is deterministic
for a given seed.
"""

from __future__ import annotations

import contextlib
import random
from dataclasses import dataclass, field

from . import tables
from .bessel import anisotropic_lambda_condition, h_functional_dim, l_exceptional, l_full_anisotropic, \
    l_full_any_model
from .catalog import (EXTENDED_SK_TYPES, GENERIC_TYPES, TYPE_SYMBOLS, Cuspidal, DeclaredPredicate, PrincipalSeries,
                      Special, twist)
from .characters import CharacterContext, ExtensionDatum, GeneratorDecl, Word
from .errors import GSp4Error, InputError
from .euler import tate_factor, tate_product
from .instances import MU_MODES, Instance, instantiate, mode_declaration
from .packets import endoscopic_packet, sk_packet, verify_packet_identity

__all__ = ["CRITERIA", "Failure", "VerifyReport", "run_verification", "inject_fault", "expected_witnesses"]

CRITERIA = ("factorization", "poles", "extended_sk", "twist", "endoscopic", "saito_kurokawa", "sk_minus")

# Modes and flags that satisfy a row's guard; every other attempt is left unpinned
# so that both outcomes of each guard are exercised.
GUARD_BIAS = {
    "Vb": ({"xi": "order2"}, {}),
    "Vc": ({"xi": "order2"}, {}),
    "Vd": ({"xi": "chi_Kk"}, {}),
    "Va*": ({"xi": "chi_Kk"}, {}),
    "IXb": ({"xi": "chi_Kk"}, {"dihedral": True}),
    "XIb": ({}, {"hom": True}),
    "XIa*": ({}, {"jl": True}),
    "XIa": ({}, {"hom": True}),
    "X": ({}, {"hom": True}),
}


def expected_witnesses() -> frozenset[str]:
    """Extended Saito-Kurokawa types that admit an anisotropic model."""
    return frozenset(t for t in EXTENDED_SK_TYPES if tables.ANISOTROPIC[t].regular is not None)


@dataclass(frozen=True)
class Failure:
    criterion: str
    row: str
    detail: str
    instance: str = ""

    def __str__(self):
        text = f"FAIL {self.criterion} row {self.row}: {self.detail}"
        return text + (f"\n    instance: {self.instance}" if self.instance else "")


@dataclass
class VerifyReport:
    seed: int
    checks: dict[str, int] = field(default_factory=lambda: dict.fromkeys(CRITERIA, 0))
    failures: list[Failure] = field(default_factory=list)
    admissible: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.checks.values())

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, criterion: str, row: str, passed: bool, detail="", instance="") -> None:
        """``detail`` may be a zero-argument callable and ``instance`` an Instance; both are
        rendered only when the check fails."""
        self.checks[criterion] += 1
        if not passed:
            detail = detail() if callable(detail) else detail
            instance = instance.describe() if isinstance(instance, Instance) else instance
            self.failures.append(Failure(criterion, row, detail, instance))

    def summary(self) -> str:
        if self.ok:
            return f"all {self.total} checks passed"
        rows = sorted({f.row for f in self.failures})
        return f"{len(self.failures)} of {self.total} checks failed; rows: {', '.join(rows)}"

    def to_dict(self) -> dict:
        return {"seed": self.seed, "checks": dict(self.checks), "total": self.total,
                "admissible_instances": dict(self.admissible),
                "failures": [{"criterion": f.criterion, "row": f.row, "detail": f.detail, "instance": f.instance}
                             for f in self.failures],
                "verdict": "pass" if self.ok else "fail"}


def _rng(seed: int, *labels) -> random.Random:
    return random.Random(":".join(map(str, (seed,) + labels)))


def _admissible(inst: Instance) -> list:
    cond = anisotropic_lambda_condition(inst.rep)
    return [lam for lam in inst.lambdas if cond.check(lam)[0]]


def _instances_with_model(type_: str, rng: random.Random, wanted: int, max_attempts: int, **kw):
    """Instances of ``type_``, stopping once ``wanted`` of them admit some Lambda."""
    bias_modes, bias_flags = GUARD_BIAS.get(type_, ({}, {}))
    found = 0
    for attempt in range(max_attempts):
        if attempt % 2:
            inst = instantiate(type_, rng, modes=dict(bias_modes, **kw.get("modes", {})),
                               flags=dict(bias_flags, **kw.get("flags", {})))
        else:
            inst = instantiate(type_, rng, **kw)
        lams = _admissible(inst)
        found += bool(lams)
        yield inst, lams
        if found >= wanted:
            return


# ---------------------------------------------------------------------------
# factorization, poles, extended_sk
# ---------------------------------------------------------------------------

def _check_factorization(report: VerifyReport, per_row: int, witnesses: set) -> None:
    for type_ in TYPE_SYMBOLS:
        row = tables.ANISOTROPIC[type_]
        if row.regular is None:
            continue
        rng = _rng(report.seed, "factorization", type_)
        count = 0
        for inst, lams in _instances_with_model(type_, rng, per_row, 40 * per_row):
            count += bool(lams)
            full = l_full_any_model(inst.rep)
            for lam in lams:
                triple = l_full_anisotropic(inst.rep, lam)
                report.record("factorization", type_, triple.full == full,
                              lambda: f"Lambda = {lam}: regular {triple.regular} * exceptional {triple.exceptional} "
                              f"!= full {full}", inst)
                if not triple.exceptional.is_one():
                    witnesses.add(type_)
                if type_ in GENERIC_TYPES:
                    report.record("extended_sk", type_, triple.exceptional.is_one(),
                                  lambda: f"generic type with exceptional factor {triple.exceptional}", inst)
        report.admissible[type_] = count
        report.record("factorization", type_, count >= per_row,
                      lambda: f"only {count} admissible instantiations (wanted {per_row})")


def _rho_candidates(inst: Instance) -> list:
    ctx = inst.ctx
    base = [ctx.trivial()]
    for name in ("sigma", "chi", "xi", "chi1", "chi2"):
        if ctx.has_generator(name):
            base.append(ctx.gen(name))
    rhos = list(base)
    if ctx.has_generator("sigma"):
        s = ctx.gen("sigma")
        rhos += [g * s for g in base[2:]]
        rhos += [ctx.chi_kk() * s, ctx.nu(1) * s, ctx.nu(-1) * s]
    unique = []
    for rho in rhos:
        if rho.is_unramified() and rho not in unique:
            unique.append(rho)
    return unique


def _check_poles(report: VerifyReport, per_type: int) -> None:
    for type_ in TYPE_SYMBOLS:
        rng = _rng(report.seed, "poles", type_)
        for inst, _ in _instances_with_model(type_, rng, per_type, 20 * per_type):
            cond = anisotropic_lambda_condition(inst.rep)
            ctx = inst.ctx
            for rho in _rho_candidates(inst):
                lam = ctx.norm(rho)
                if cond.check(lam)[0]:
                    target = (ctx.nu("1/2") * rho).satake_value()
                    mult = l_exceptional(inst.rep, lam).multiplicity(target)
                else:
                    mult = 0
                dim = h_functional_dim(inst.rep, rho)
                report.record("poles", type_, (mult == 1) == (dim == 1),
                              lambda: f"rho = {rho}: multiplicity of L(s, nu^{{1/2}} rho) is {mult}, "
                              f"H-functional dimension {dim}", inst)


def _check_witnesses(report: VerifyReport, witnesses: set) -> None:
    expected = expected_witnesses()
    for type_ in sorted(expected | witnesses):
        report.record("extended_sk", type_, (type_ in witnesses) == (type_ in expected),
                      "exceptional factor observed" if type_ in witnesses else "no exceptional factor observed")


# ---------------------------------------------------------------------------
# twist covariance
# ---------------------------------------------------------------------------

def _check_twist(report: VerifyReport, per_row: int) -> None:
    for type_, row in tables.EXCEPTIONAL_MU.items():
        rng = _rng(report.seed, "twist", type_)
        count = 0
        for attempt in range(40 * per_row):
            if count >= per_row:
                break
            modes = {"mu": MU_MODES[attempt % len(MU_MODES)]}
            inst = instantiate(type_, rng, ext="unramified" if modes["mu"] == "chi_Kk" else None, modes=modes)
            lams = _admissible(inst)
            if not lams:
                continue
            count += 1
            mu, ctx = inst.mu, inst.ctx
            for lam in lams:
                expected = tate_product(row.exceptional(inst.rep, mu))
                try:
                    got = l_exceptional(twist(mu, inst.rep), ctx.norm(mu) * lam)
                except GSp4Error as exc:
                    got = f"error: {exc}"
                report.record("twist", type_, got == expected,
                              lambda: f"mu = {mu}, Lambda = {lam}: mu-column {expected} != twisted factor {got}",
                              inst)
        report.record("twist", type_, count >= per_row, f"only {count} admissible instantiations")


# ---------------------------------------------------------------------------
# packets
# ---------------------------------------------------------------------------

_FREE_MODES = ("unramified", "ramified", "order2", "shifted")
_XI_MODES = ("chi_Kk", "order2", "order2r")


def _packet_context(rng: random.Random, modes: dict[str, str], derived=()) -> CharacterContext:
    ext = "unramified" if "chi_Kk" in modes.values() else rng.choice(("unramified", "ramified"))
    decls = [GeneratorDecl("eta", ramified=False)]
    decls += [mode_declaration(n, m, rng.choice(("1/2", "-1/2", "1"))) for n, m in modes.items()]
    decls += list(derived)
    return CharacterContext(ExtensionDatum(ext), decls)


def _cusp(ctx, name, omega, rng) -> Cuspidal:
    return Cuspidal(name, omega, DeclaredPredicate(rng.random() < 0.5))


def _packet_sources(key: str, rng: random.Random):
    """(context, pi1, pi2) realizing an endoscopic row, or (context, pi) for a Saito-Kurokawa row."""
    pick = rng.choice
    mu_mode = pick(MU_MODES)
    if key == "principal-principal":
        ctx = _packet_context(rng, {"mu1": pick(_FREE_MODES), "mu2": pick(_FREE_MODES), "mu3": pick(_FREE_MODES),
                                    "mu": mu_mode},
                              [GeneratorDecl("mu4", eq=Word.of({"mu1": 1, "mu2": 1, "mu3": -1}))])
        g = ctx.gen
        return ctx, (PrincipalSeries(g("mu1"), g("mu2")), PrincipalSeries(g("mu3"), g("mu4")))
    if key == "principal-special":
        ctx = _packet_context(rng, {"m": pick(_FREE_MODES), "mu1": pick(_FREE_MODES), "mu": mu_mode},
                              [GeneratorDecl("mu2", eq=Word.of({"m": 2, "mu1": -1}))])
        g = ctx.gen
        return ctx, (PrincipalSeries(g("mu1"), g("mu2")), Special(g("m")))
    if key == "principal-cuspidal":
        ctx = _packet_context(rng, {"mu1": pick(_FREE_MODES), "mu2": pick(_FREE_MODES), "mu": mu_mode})
        g = ctx.gen
        return ctx, (PrincipalSeries(g("mu1"), g("mu2")), _cusp(ctx, "pi2", g("mu1") * g("mu2"), rng))
    if key == "special-special-equal":
        ctx = _packet_context(rng, {"m": pick(_FREE_MODES), "mu": mu_mode})
        return ctx, (Special(ctx.gen("m")), Special(ctx.gen("m")))
    if key == "special-special-twisted":
        ctx = _packet_context(rng, {"m": pick(_FREE_MODES), "xi": pick(_XI_MODES), "mu": mu_mode})
        g = ctx.gen
        return ctx, (Special(g("xi") * g("m")), Special(g("m")))
    if key == "cuspidal-special":
        ctx = _packet_context(rng, {"m": pick(_FREE_MODES), "mu": mu_mode})
        g = ctx.gen
        return ctx, (_cusp(ctx, "pi1", g("m") ** 2, rng), Special(g("m")))
    if key == "cuspidal-equal":
        ctx = _packet_context(rng, {"w": pick(_FREE_MODES), "mu": mu_mode})
        cusp = _cusp(ctx, "pi1", ctx.gen("w"), rng)
        return ctx, (cusp, cusp)
    if key == "cuspidal-distinct":
        ctx = _packet_context(rng, {"w": pick(_FREE_MODES), "mu": mu_mode})
        return ctx, (_cusp(ctx, "pi1", ctx.gen("w"), rng), _cusp(ctx, "pi2", ctx.gen("w"), rng))
    if key == "principal":
        ctx = _packet_context(rng, {"m": pick(_FREE_MODES), "mu": mu_mode})
        return ctx, (PrincipalSeries(ctx.gen("m"), ctx.gen("m").inverse()),)
    if key == "steinberg":
        ctx = _packet_context(rng, {"mu": mu_mode})
        return ctx, (Special(ctx.trivial()),)
    if key == "twisted-steinberg":
        ctx = _packet_context(rng, {"xi": pick(_XI_MODES), "mu": mu_mode})
        return ctx, (Special(ctx.gen("xi")),)
    if key == "cuspidal":
        ctx = _packet_context(rng, {"mu": mu_mode})
        return ctx, (_cusp(ctx, "pi", ctx.trivial(), rng),)
    raise ValueError(f"unknown packet row {key!r}")


def _check_packets(report: VerifyReport, per_row: int) -> None:
    for criterion, rows, build in (("endoscopic", tables.ENDOSCOPIC, endoscopic_packet),
                                   ("saito_kurokawa", tables.SAITO_KUROKAWA, sk_packet)):
        for row in rows:
            rng = _rng(report.seed, criterion, row.key)
            done = 0
            for _ in range(10 * per_row):
                if done >= per_row:
                    break
                try:
                    ctx, sources = _packet_sources(row.key, rng)
                    packet = build(*sources)
                except InputError:
                    continue  # a degenerate draw, e.g. mu1 / mu2 = nu
                done += 1
                where = f"{packet.source_text()}, mu = {ctx.gen('mu')}"
                report.record(criterion, row.key, packet.row == row.key,
                              f"packet classified as row {packet.row}", where)
                types = (packet.plus.type, packet.minus.type if packet.minus else "")
                report.record(criterion, row.key, types == (row.plus_type, row.minus_type),
                              f"members have types {types}", where)
                try:
                    result = verify_packet_identity(packet, ctx.gen("mu"))
                except GSp4Error as exc:
                    report.record(criterion, row.key, False, f"error: {exc}", where)
                    continue
                for check in result.checks:
                    report.record(criterion, row.key, check.equal,
                                  f"{check.member} member {check.rep}: {check.lhs} != {check.rhs}", where)
                if criterion == "saito_kurokawa" and packet.minus is not None:
                    pi = sources[0]
                    endo = endoscopic_packet(pi, Special(ctx.trivial()))
                    report.record("sk_minus", row.key, endo.minus == packet.minus,
                                  f"SK minus {packet.minus} != endoscopic minus {endo.minus}", where)
            report.record(criterion, row.key, done >= per_row, f"only {done} packets built")


# ---------------------------------------------------------------------------
# driver and fault injection
# ---------------------------------------------------------------------------

def run_verification(seed: int = 0, per_row: int = 100, twist_per_row: int = 50, poles_per_type: int = 30,
                     packets_per_row: int = 20) -> VerifyReport:
    report = VerifyReport(seed)
    witnesses: set[str] = set()
    _check_factorization(report, per_row, witnesses)
    _check_poles(report, poles_per_type)
    _check_witnesses(report, witnesses)
    _check_twist(report, twist_per_row)
    _check_packets(report, packets_per_row)
    return report


def _spurious(pi, *rest):
    return pi.ctx.nu(7)


def _corrupt(fn, drop: bool):
    if drop:
        return lambda *args: list(fn(*args))[1:]
    return lambda *args: list(fn(*args)) + [_spurious(*args)]


@contextlib.contextmanager
def inject_fault(spec: str):
    """Corrupt one row, given as TYPE or TABLE:TYPE (table defaults to anisotropic)."""
    table, _, type_ = spec.rpartition(":")
    table = table or "anisotropic"
    if table not in tables.TABLES:
        raise InputError(f"unknown table {table!r}; choose from {', '.join(sorted(tables.TABLES))}")
    registry = tables.TABLES[table]
    if type_ not in registry:
        raise InputError(f"table {table} has no row {type_!r}")
    fieldname = {"anisotropic": "regular", "full": "full", "exceptional_mu": "exceptional",
                 "h_functionals": "rhos"}[table]
    original = getattr(registry[type_], fieldname)
    if original is None:
        raise InputError(f"row {type_} of table {table} has no entry to corrupt")
    with tables.patched_row(table, type_, **{fieldname: _corrupt(original, table == "h_functionals")}) as row:
        yield row

