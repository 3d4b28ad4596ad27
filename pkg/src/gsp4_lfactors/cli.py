"""Command-line interface: ``gsp4-lfactors COMMAND [options]``.

Commands
    lfactor   regular, exceptional and full spinor factors for an anisotropic Bessel model
    poles     numeric poles of a factor for given q and unit values
    hdim      dimension of the (H, rho o lambda_G)-functionals
    packet    L-factor identity of an endoscopic or Saito-Kurokawa packet
    verify    the cross-table consistency suite
    export    machine-readable dump of all lookup tables

Exit codes: 0 success, 1 input error, 2 no Bessel model, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import tables
from .bessel import (anisotropic_lambda_condition, caveats, h_functional_dim, l_full_anisotropic, l_full_any_model,
                     lfactor_query)
from .catalog import TYPE_SYMBOLS, Cuspidal, DeclaredPredicate, OpaqueCuspidal
from .characters import CharacterContext, ExtensionDatum, GeneratorDecl, KGeneratorDecl
from .errors import InputError, NoBesselModelError
from .euler import tate_product
from .instances import instantiate
from .notation import (Scope, parse_character, parse_factor, parse_gl2, parse_k_character, parse_rep, print_factor,
                       rep_from_dict, unicode_text)
from .packets import endoscopic_packet, sk_packet, verify_packet_identity

EXIT_OK, EXIT_INPUT, EXIT_NO_MODEL, EXIT_VERIFY = 0, 1, 2, 3

YES = {"yes": True, "true": True, "1": True, "no": False, "false": False, "0": False}


# ---------------------------------------------------------------------------
# declarations
# ---------------------------------------------------------------------------

def _fields(text: str, what: str) -> tuple[str, list[tuple[str, str]]]:
    name, *rest = text.split(":")
    if not name:
        raise InputError(f"{what} declaration {text!r} has no name")
    items = []
    for item in rest:
        key, sep, value = item.partition("=")
        items.append((key.strip(), value.strip() if sep else ""))
    return name.strip(), items


def _flag(value: str, where: str) -> bool:
    try:
        return YES[value.lower()]
    except KeyError:
        raise InputError(f"{where}: expected yes or no, got {value!r}") from None


def _declare(ctx: CharacterContext, text: str) -> CharacterContext:
    """Add NAME[:unramified|:ramified][:order=N][:eq=EXPR] to ``ctx``."""
    name, items = _fields(text, "generator")
    ramified, order, eq = None, None, None
    for key, value in items:
        if key in ("unramified", "ramified") and not value:
            ramified = key == "ramified"
        elif key == "order":
            try:
                order = int(value)
            except ValueError:
                raise InputError(f"{name}: order must be an integer, got {value!r}") from None
        elif key == "eq":
            eq = parse_character(value, Scope(ctx)).to_word()
        else:
            raise InputError(f"{name}: unknown declaration field {key!r}")
    if eq is None and ramified is None:
        ramified = False
    return ctx.with_declarations([GeneratorDecl(name, ramified, order, eq)])


def _declare_k(ctx: CharacterContext, text: str) -> CharacterContext:
    """Add NAME[:restriction=EXPR][:ramified] to ``ctx``."""
    name, items = _fields(text, "K-character")
    restriction, ramified = ctx.trivial().to_word(), False
    for key, value in items:
        if key == "restriction":
            restriction = parse_character(value, Scope(ctx)).to_word()
        elif key in ("ramified", "unramified") and not value:
            ramified = key == "ramified"
        else:
            raise InputError(f"{name}: unknown declaration field {key!r}")
    return ctx.with_declarations(k_generators=[KGeneratorDecl(name, restriction, ramified)])


def _predicate(scope: Scope, items, key: str, label: str) -> DeclaredPredicate | None:
    default, overrides, seen = None, [], False
    for k, value in items:
        base, _, at = k.partition("@")
        if base != key:
            continue
        seen = True
        if at:
            overrides.append((parse_k_character(at, scope), _flag(value, k)))
        else:
            default = _flag(value, k)
    return DeclaredPredicate(default, tuple(overrides), label) if seen else None


def _known_fields(name: str, items, allowed) -> None:
    for key, _ in items:
        if key.partition("@")[0] not in allowed:
            raise InputError(f"{name}: unknown declaration field {key!r}")


def _declare_cusp(scope: Scope, text: str) -> None:
    """NAME[:omega=EXPR][:hom=yes|no][:hom@KEXPR=yes|no][:jl=..][:jl@KEXPR=..][:dihedral=KEXPR,KEXPR]"""
    name, items = _fields(text, "cuspidal")
    _known_fields(name, items, ("omega", "hom", "jl", "dihedral"))
    values = dict(items)
    omega = parse_character(values.get("omega", "1"), scope)
    dihedral = None
    if "dihedral" in values:
        parts = values["dihedral"].split(",")
        if len(parts) != 2:
            raise InputError(f"{name}: dihedral takes two K-characters mu,mu'")
        dihedral = tuple(parse_k_character(p, scope) for p in parts)
    hom = _predicate(scope, items, "hom", "Waldspurger flag") or DeclaredPredicate()
    jl = _predicate(scope, items, "jl", "Jacquet-Langlands flag")
    scope.add_cusp(Cuspidal(name, omega, hom, jl, dihedral))


def _declare_opaque(scope: Scope, text: str) -> None:
    """NAME[:omega=EXPR][:models=yes|no][:models@KEXPR=yes|no]"""
    name, items = _fields(text, "opaque")
    _known_fields(name, items, ("omega", "models"))
    omega = parse_character(dict(items).get("omega", "1"), scope)
    models = _predicate(scope, items, "models", "Bessel-model declaration") \
        or DeclaredPredicate(label="Bessel-model declaration")
    scope.add_opaque(OpaqueCuspidal(name, omega, models))


def build_scope(args) -> Scope:
    declared = args.declare or args.declare_k or args.declare_cusp or args.declare_opaque
    if args.context:
        if declared:
            raise InputError("--context cannot be combined with --declare options")
        try:
            with open(args.context) as fh:
                return Scope.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read context {args.context}: {exc}") from None
    ctx = CharacterContext(ExtensionDatum(args.extension))
    for text in args.declare or ():
        ctx = _declare(ctx, text)
    for text in args.declare_k or ():
        ctx = _declare_k(ctx, text)
    scope = Scope(ctx)
    for text in args.declare_cusp or ():
        _declare_cusp(scope, text)
    for text in args.declare_opaque or ():
        _declare_opaque(scope, text)
    return scope


def _rep(args, scope: Scope):
    if args.rep is None:
        raise InputError("--rep is required")
    text = args.rep.strip()
    if text.startswith("{"):
        try:
            return rep_from_dict(json.loads(text), scope)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"malformed representation record: {exc}") from None
    return parse_rep(text, scope)


def _mu(args, scope: Scope):
    return parse_character(args.mu, scope) if args.mu else scope.ctx.trivial()


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _emit(args, record: dict, lines: list[str]) -> None:
    if args.format == "structured":
        print(json.dumps(record, indent=2, ensure_ascii=not args.unicode))
        return
    text = "\n".join(lines)
    print(unicode_text(text) if args.unicode else text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_lfactor(args) -> int:
    scope = build_scope(args)
    pi = _rep(args, scope)
    cond = anisotropic_lambda_condition(pi)
    if cond.kind == "none":
        guard = f"; guard '{cond.guard}' fails" if cond.guard else ""
        raise NoBesselModelError(f"no anisotropic Bessel model for {pi.type}: the row admits no Lambda{guard}")
    if args.lam is None:
        raise InputError("--lambda is required")
    result = lfactor_query(pi, parse_k_character(args.lam, scope), _mu(args, scope))
    record = result.to_dict()
    lines = [f"representation: {pi}  [{pi.type}]", f"Lambda: {result.lam}", f"mu: {result.mu}"]
    lines += [f"  condition: {step}" for step in result.trace]
    lines += [f"regular: {record['regular']}", f"exceptional: {record['exceptional']}", f"full: {record['full']}"]
    lines += [f"note: {c}" for c in result.caveats]
    _emit(args, record, lines)
    return EXIT_OK


def _bindings(args) -> dict[str, complex]:
    out = {}
    for item in args.bind or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--bind expects UNIT=VALUE, got {item!r}")
        name = name.strip()
        name = name[2:] if name.startswith("u_") else name
        try:
            out[name] = complex(value.strip().replace(" ", ""))
        except ValueError:
            raise InputError(f"--bind {name}: not a number: {value!r}") from None
    return out


def cmd_poles(args) -> int:
    scope = build_scope(args)
    if args.factor:
        factor, label = parse_factor(args.factor, scope), "factor"
    else:
        pi = _rep(args, scope)
        mu = _mu(args, scope)
        if args.part == "full" and args.lam is None:
            factor = l_full_any_model(pi, mu)
        else:
            if args.lam is None:
                raise InputError(f"--lambda is required for the {args.part} factor")
            triple = l_full_anisotropic(pi, parse_k_character(args.lam, scope), mu)
            factor = {"full": triple.full, "regular": triple.regular, "exceptional": triple.exceptional}[args.part]
        label = f"{args.part} factor of {pi}"
    if args.q is None:
        raise InputError("--q is required")
    poles = factor.specialize(args.q, _bindings(args)).poles()
    record = {"factor": print_factor(factor), "q": args.q, "poles": [p.to_dict() for p in poles]}
    lines = [f"{label}: {print_factor(factor)}"]
    lines += [f"Re(s) = {p.re_s:.12g}  multiplicity {p.multiplicity}  X = {p.x:.12g}" for p in poles]
    if not poles:
        lines.append("no poles")
    _emit(args, record, lines)
    return EXIT_OK


def cmd_hdim(args) -> int:
    scope = build_scope(args)
    pi = _rep(args, scope)
    if not args.rho:
        raise InputError("--rho is required")
    rho = parse_character(args.rho, scope)
    dim = h_functional_dim(pi, rho)
    _emit(args, {"type": pi.type, "rep": str(pi), "rho": str(rho), "dim": dim, "caveats": caveats(pi)},
          [f"dim Hom_H(Pi, rho o lambda_G) = {dim}  for Pi = {pi}, rho = {rho}"])
    return EXIT_OK


def cmd_packet(args) -> int:
    scope = build_scope(args)
    if bool(args.endoscopic) == bool(args.sk):
        raise InputError("give exactly one of --endoscopic PI1 PI2 or --sk PI")
    if args.endoscopic:
        packet = endoscopic_packet(*(parse_gl2(t, scope) for t in args.endoscopic))
    else:
        packet = sk_packet(parse_gl2(args.sk, scope))
    report = verify_packet_identity(packet, _mu(args, scope))
    record = report.to_dict()
    lines = [f"{packet.source_text()}: row {packet.row}, mu = {report.mu}"]
    for c in report.checks:
        lines.append(f"  {c.member}: {c.rep}  [{c.rep.type}]")
        lines.append(f"    L(s, Pi, mu) = {c.lhs}")
        lines.append(f"    product      = {c.rhs}   ({'equal' if c.equal else 'UNEQUAL'})")
    lines.append(f"verdict: {report.verdict}")
    _emit(args, record, lines)
    return EXIT_OK if report.verdict == "equal" else EXIT_VERIFY


def cmd_verify(args) -> int:
    from .verify import inject_fault, run_verification

    if args.inject_fault:
        with inject_fault(args.inject_fault):
            report = run_verification(args.seed)
    else:
        report = run_verification(args.seed)
    lines = [str(f) for f in report.failures] + [report.summary()]
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def _generic_instance(type_: str):
    """Free unramified characters (xi of order 2) and a cuspidal pi with free central character."""
    modes = dict.fromkeys(("sigma", "chi", "chi1", "chi2", "mu"), "unramified")
    modes["xi"] = "order2"
    flags = {"omega_pi": "eta", "hom": True, "jl": None, "dihedral": False, "models": True}
    return instantiate(type_, random.Random(0), ext="unramified", modes=modes, flags=flags)


def _formula(fn, *args) -> str:
    return print_factor(tate_product(fn(*args)))


def export_tables() -> dict:
    """All six lookup tables with per-row guards and caveats."""
    generic = {t: _generic_instance(t) for t in TYPE_SYMBOLS}
    exceptional_mu = [{"type": t, "rep": str(generic[t].rep), "condition": r.condition, "lambda": r.lambda_text,
                       "exceptional": _formula(r.exceptional, generic[t].rep, generic[t].mu)}
                      for t, r in tables.EXCEPTIONAL_MU.items()]
    h_rows = [{"type": t, "rep": str(generic[t].rep), "condition": r.condition, "rho": r.rho_text}
              for t, r in tables.H_FUNCTIONALS.items()]
    h_extra = [{"type": t, "rep": str(generic[t].rep), "condition": r.condition, "rho": r.rho_text}
               for t, r in tables.H_FUNCTIONALS_CUSPIDAL.items()]
    anisotropic = []
    for t, r in tables.ANISOTROPIC.items():
        rep = generic[t].rep
        anisotropic.append({
            "type": t, "rep": r.printed, "lambda": r.lambda_text,
            "regular": None if r.regular is None else _formula(r.regular, rep),
            "exceptional": None if r.exceptional is None else _formula(r.exceptional, rep),
            "caveat": r.caveat or None})
    full = [{"type": t, "rep": tables.ANISOTROPIC[t].printed,
             "full": None if r.full is None else _formula(r.full, generic[t].rep), "caveat": r.caveat or None}
            for t, r in tables.FULL.items()]

    def packet_rows(rows):
        return [{"row": r.key, "pi1": r.pi1, "pi2": r.pi2 or None, "plus": r.plus, "plus_type": r.plus_type,
                 "minus": r.minus or None, "minus_type": r.minus_type or None} for r in rows]

    return {"tables": [
        {"name": "exceptional_mu", "title": "exceptional factor L_ex(s, Pi, Lambda, mu) of the extended "
                                            "Saito-Kurokawa types", "rows": exceptional_mu},
        {"name": "h_functionals", "title": "characters rho with a non-zero (H, rho o lambda_G)-functional",
         "rows": h_rows, "supplementary_rows": h_extra},
        {"name": "anisotropic", "title": "anisotropic Bessel models and L-factors at mu = 1",
         "rows": anisotropic},
        {"name": "full", "title": "full spinor L-factor, valid for every Bessel model", "rows": full},
        {"name": "endoscopic", "title": "endoscopic L-packets", "rows": packet_rows(tables.ENDOSCOPIC)},
        {"name": "saito_kurokawa", "title": "Saito-Kurokawa packets", "rows": packet_rows(tables.SAITO_KUROKAWA)},
    ]}


def cmd_export(args) -> int:
    data = export_tables()
    lines = []
    for table in data["tables"]:
        lines.append(f"== {table['name']}: {table['title']} ({len(table['rows'])} rows)")
        for row in table["rows"] + table.get("supplementary_rows", []):
            lines.append("  " + "  |  ".join(f"{k}: {v}" for k, v in row.items() if v not in (None, "")))
    _emit(args, data, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("declarations")
    g.add_argument("--extension", choices=("unramified", "ramified"), default="unramified",
                   help="kind of the quadratic extension K/k")
    g.add_argument("--declare", action="append", metavar="NAME[:unramified|:ramified][:order=N][:eq=EXPR]",
                   help="declare a character of k^x (repeatable, in order)")
    g.add_argument("--declare-k", action="append", metavar="NAME[:restriction=EXPR][:ramified]",
                   help="declare an abstract character of K^x with given restriction to k^x")
    g.add_argument("--declare-cusp", action="append",
                   metavar="NAME[:omega=EXPR][:hom=yes|no][:hom@LAMBDA=yes|no][:jl=..][:dihedral=M,M']",
                   help="declare a cuspidal GL(2) representation and its Waldspurger data")
    g.add_argument("--declare-opaque", action="append", metavar="NAME[:omega=EXPR][:models=yes|no]",
                   help="declare an opaque cuspidal GSp(4) datum")
    g.add_argument("--context", metavar="FILE.json", help="read all declarations from a structured record")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--unicode", action="store_true", help="render nu, xi, |x with Unicode symbols")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # Usage errors are input errors (exit 1); exit 2 is reserved for "no model".
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gsp4-lfactors",
                     description="Spinor L-factors of GSp(4) representations via Bessel models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lfactor", help="L-factors for an anisotropic Bessel model")
    _common(p)
    p.add_argument("--rep", help="representation in the ASCII notation, or a JSON record")
    p.add_argument("--lambda", dest="lam", help="character Lambda of K^x")
    p.add_argument("--mu", help="twisting character mu of k^x (default 1)")
    p.set_defaults(func=cmd_lfactor)

    p = sub.add_parser("poles", help="numeric poles of an L-factor")
    _common(p)
    p.add_argument("--rep")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--factor", help="an Euler factor such as 'L(s, nu^{1/2} sigma)^2' instead of --rep")
    p.add_argument("--part", choices=("full", "regular", "exceptional"), default="full")
    p.add_argument("--q", type=float, help="residue field size")
    p.add_argument("--bind", action="append", metavar="UNIT=VALUE", help="value of an unramified generator at "
                                                                         "the uniformizer")
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("hdim", help="dimension of (H, rho o lambda_G)-functionals")
    _common(p)
    p.add_argument("--rep")
    p.add_argument("--rho")
    p.set_defaults(func=cmd_hdim)

    p = sub.add_parser("packet", help="check the L-factor identity of a packet")
    _common(p)
    p.add_argument("--endoscopic", nargs=2, metavar=("PI1", "PI2"))
    p.add_argument("--sk", metavar="PI")
    p.add_argument("--mu")
    p.set_defaults(func=cmd_packet)

    p = sub.add_parser("verify", help="run the cross-table consistency suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", metavar="[TABLE:]TYPE", help=argparse.SUPPRESS)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--unicode", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="dump all lookup tables")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--unicode", action="store_true")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoBesselModelError as exc:
        print(f"no model: {exc}", file=sys.stderr)
        return EXIT_NO_MODEL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
