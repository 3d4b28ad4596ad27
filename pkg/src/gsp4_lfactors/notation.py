"""ASCII notation for characters, representations and Euler factors.

Grammar (whitespace separates tokens and is otherwise ignored)::

    character := factor (['*'] factor)*
    factor    := atom [exponent]
    atom      := GENERATOR | 'nu' | 'chi_{K/k}' | '1' | '(' character ')'
    exponent  := '^{' ['-'] INT ['/' INT] '}' | '^' ['-'] INT
    kchar     := kfactor (['*'] kfactor)*
    kfactor   := 'norm' '(' character ')' [exponent] | KGENERATOR [exponent] | '1' | '(' kchar ')'

    rep   := induced | NAMED '(' args ')'
    arg   := factor* [head]          head := 'St' | 'one' | 'St_G' | 'one_G' | CUSP
    induced := arg 'x' arg '|x' arg | arg '|x' arg | arg

A cuspidal GL(2) representation is written as a declared name, optionally
preceded by a twisting character ("nu^{-1/2} pi").  Representation shapes
follow the printed forms of the classification (see :data:`SHAPES`); the
type is read off the shape, as described in :func:`parse_rep`.

Only :class:`NotationError` escapes the parsing functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .catalog import (Cuspidal, DeclaredPredicate, GL2Rep, GSp4Rep, OneDimensional, OpaqueCuspidal,
                      PrincipalSeries, Special, make_rep)
from .characters import Character, CharacterContext, CharacterK, RESERVED_NAMES
from .errors import InputError
from .euler import EulerFactor, tate_factor

__all__ = [
    "NotationError", "Scope", "SHAPES", "parse_character", "parse_k_character", "parse_rep", "parse_gl2",
    "parse_factor", "print_rep", "print_gl2", "print_factor", "print_character", "unicode_text",
    "rep_to_dict", "rep_from_dict",
]

MAX_DEPTH = 64
MAX_DIGITS = 60

# Printed shape of every type; used for documentation, export and error messages.
SHAPES = {
    "I": "chi_1 x chi_2 |x sigma",
    "IIa": "chi St |x sigma",
    "IIb": "chi one |x sigma",
    "IIIa": "chi |x sigma St",
    "IIIb": "chi |x sigma one",
    "IVa": "sigma St_G",
    "IVb": "L(nu^{2}, nu^{-1} sigma St)",
    "IVc": "L(nu^{3/2} St, nu^{-3/2} sigma)",
    "IVd": "sigma one_G",
    "Va": "delta([xi, nu xi], nu^{-1/2} sigma)",
    "Vb": "L(nu^{1/2} xi St, nu^{-1/2} sigma)",
    "Vc": "L(nu^{1/2} xi St, nu^{-1/2} xi sigma)",
    "Vd": "L(nu xi, xi |x nu^{-1/2} sigma)",
    "VIa": "tau(S, nu^{-1/2} sigma)",
    "VIb": "tau(T, nu^{-1/2} sigma)",
    "VIc": "L(nu^{1/2} St, nu^{-1/2} sigma)",
    "VId": "L(nu, 1 |x nu^{-1/2} sigma)",
    "VII": "chi |x pi",
    "VIIIa": "tau(S, pi)",
    "VIIIb": "tau(T, pi)",
    "IXa": "delta(nu xi, nu^{-1/2} pi)",
    "IXb": "L(nu xi, nu^{-1/2} pi)",
    "X": "pi |x sigma",
    "XIa": "delta(nu^{1/2} pi, nu^{-1/2} sigma)",
    "XIb": "L(nu^{1/2} pi, nu^{-1/2} sigma)",
    "CuspGeneric": "cusp_generic(NAME)",
    "Va*": "theta(sigma St, xi sigma St)",
    "XIa*": "theta(sigma St, sigma pi)",
    "CuspOtherNonGeneric": "cusp_nongeneric(NAME)",
}


class NotationError(InputError):
    """Parse error; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message: str, offset: int = 0, candidates: tuple[str, ...] = ()):
        self.offset = offset
        self.candidates = candidates
        super().__init__(f"{message} (at byte {offset})")


# ---------------------------------------------------------------------------
# Scope: the character context plus declared GL(2) cuspidal data
# ---------------------------------------------------------------------------

@dataclass
class Scope:
    ctx: CharacterContext
    cusps: dict[str, Cuspidal] = field(default_factory=dict)
    opaques: dict[str, OpaqueCuspidal] = field(default_factory=dict)

    def _check_new(self, name: str) -> None:
        if name in RESERVED_NAMES or name in self.cusps or name in self.opaques \
                or self.ctx.has_generator(name) or self.ctx.has_k_generator(name):
            raise InputError(f"name {name!r} is reserved or already declared")
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
            raise InputError(f"invalid name {name!r}")

    def add_cusp(self, cusp: Cuspidal) -> Cuspidal:
        self._check_new(cusp.name)
        if cusp.omega.ctx is not self.ctx:
            raise InputError(f"{cusp.name}: central character from another context")
        self.cusps[cusp.name] = cusp
        return cusp

    def add_opaque(self, data: OpaqueCuspidal) -> OpaqueCuspidal:
        self._check_new(data.name)
        self.opaques[data.name] = data
        return data

    def cusp(self, name: str) -> Cuspidal:
        return self.cusps[name]

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        def pred(p):
            return None if p is None else {"default": p.default,
                                           "overrides": [[str(k), v] for k, v in p.overrides]}
        return {
            "context": self.ctx.to_dict(),
            "cusps": [{"name": c.name, "omega": str(c.omega), "waldspurger": pred(c.waldspurger),
                       "jl": pred(c.jl), "dihedral": [str(m) for m in c.dihedral] if c.dihedral else None}
                      for c in self.cusps.values()],
            "opaques": [{"name": o.name, "omega": str(o.omega), "models": pred(o.models)}
                        for o in self.opaques.values()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Scope:
        scope = cls(CharacterContext.from_dict(data.get("context", {})))
        for item in data.get("cusps", ()):
            scope.add_cusp(Cuspidal(
                item["name"], parse_character(item.get("omega", "1"), scope),
                scope.predicate(item.get("waldspurger")) or DeclaredPredicate(),
                scope.predicate(item.get("jl"), "Jacquet-Langlands flag"),
                tuple(parse_k_character(m, scope) for m in item["dihedral"]) if item.get("dihedral") else None))
        for item in data.get("opaques", ()):
            scope.add_opaque(OpaqueCuspidal(
                item["name"], parse_character(item.get("omega", "1"), scope),
                scope.predicate(item.get("models"), "Bessel-model declaration")
                or DeclaredPredicate(label="Bessel-model declaration")))
        return scope

    def predicate(self, data, label: str = "Waldspurger flag") -> DeclaredPredicate | None:
        if data is None:
            return None
        if isinstance(data, bool):
            return DeclaredPredicate(data, (), label)
        overrides = tuple((parse_k_character(k, self), bool(v)) for k, v in data.get("overrides", ()))
        default = data.get("default")
        return DeclaredPredicate(None if default is None else bool(default), overrides, label)


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, SYM, CHI, END
    text: str
    offset: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<CHI>chi_\{K/k\})
  | (?P<NAME>[A-Za-z][A-Za-z0-9_]*)
  | (?P<INT>[0-9]+)
  | (?P<SYM>\|x|[()\[\],*^{}/+-])
""", re.VERBOSE)


def _tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    byte = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise NotationError(f"unexpected character {text[pos]!r}", byte)
        kind = m.lastgroup
        if kind != "ws":
            word = m.group()
            if kind == "INT" and len(word) > MAX_DIGITS:
                raise NotationError("integer literal too long", byte)
            tokens.append(Token(kind, word, byte))
        byte += len(m.group().encode("utf-8"))
        pos = m.end()
    tokens.append(Token("END", "", byte))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

HEADS = ("St", "one", "St_G", "one_G")
NAMED = ("L", "delta", "tau", "theta", "cusp_generic", "cusp_nongeneric")


@dataclass
class Arg:
    """A parsed argument: a character (with its written factor list) and an optional head."""

    char: Character
    factors: tuple
    head: str | None = None
    cusp: Cuspidal | None = None
    offset: int = 0


class _Parser:
    def __init__(self, text, scope: Scope):
        if isinstance(text, (bytes, bytearray)):
            try:
                text = bytes(text).decode("utf-8")
            except UnicodeDecodeError as exc:
                raise NotationError("input is not valid UTF-8", exc.start) from None
        if not isinstance(text, str):
            raise NotationError(f"expected text, got {type(text).__name__}")
        self.scope = scope
        self.ctx = scope.ctx
        self.tokens = _tokenize(text)
        self.i = 0
        self.depth = 0

    # -- token helpers ----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, *texts) -> bool:
        return self.tok.kind != "END" and self.tok.text in texts

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != "END":
            self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise NotationError(f"expected {text!r}, found {found!r}", self.tok.offset)
        return self.advance()

    def error(self, message: str, tok: Token | None = None, candidates=()) -> NotationError:
        return NotationError(message, (tok or self.tok).offset, tuple(candidates))

    def end(self) -> None:
        if self.tok.kind != "END":
            raise self.error(f"unexpected {self.tok.text!r}")

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")

    def leave(self):
        self.depth -= 1

    # -- numbers ----------------------------------------------------------

    def exponent(self) -> Fraction | None:
        if not self.at("^"):
            return None
        self.advance()
        braced = self.at("{")
        if braced:
            self.advance()
        start = self.tok
        sign = 1
        if self.at("-", "+"):
            sign = -1 if self.advance().text == "-" else 1
        if self.tok.kind != "INT":
            raise self.error("malformed exponent")
        value = Fraction(int(self.advance().text))
        if braced and self.at("/"):
            self.advance()
            if self.tok.kind != "INT":
                raise self.error("malformed rational")
            denominator = int(self.advance().text)
            if denominator == 0:
                raise self.error("malformed rational: zero denominator", start)
            value /= denominator
        if braced:
            self.expect("}")
        return sign * value

    def int_exponent(self, tok: Token) -> int:
        e = self.exponent()
        if e is None:
            return 1
        if e.denominator != 1:
            raise self.error(f"exponent of {tok.text} must be an integer", tok)
        return int(e)

    # -- characters -------------------------------------------------------

    def starts_factor(self) -> bool:
        tok = self.tok
        if tok.kind == "CHI" or (tok.kind == "INT" and tok.text == "1") or self.at("("):
            return True
        return tok.kind == "NAME" and (tok.text == "nu" or self.ctx.has_generator(tok.text))

    def factor(self) -> tuple[Character, tuple]:
        tok = self.tok
        ctx = self.ctx
        if tok.kind == "CHI":
            self.advance()
            e = self.int_exponent(tok)
            return ctx.chi_kk() ** e, ("chi", e)
        if tok.kind == "INT" and tok.text == "1":
            self.advance()
            self.int_exponent(tok)
            return ctx.trivial(), ("1", 1)
        if self.at("("):
            self.advance()
            self.enter()
            inner, written = self.character()
            self.leave()
            self.expect(")")
            e = self.int_exponent(tok)
            return inner ** e, ("()", written, e)
        if tok.kind == "NAME" and tok.text == "nu":
            self.advance()
            e = self.exponent()
            e = Fraction(1) if e is None else e
            try:
                return ctx.nu(e), ("nu", e)
            except InputError as exc:
                raise self.error(str(exc), tok) from None
        if tok.kind == "NAME" and ctx.has_generator(tok.text):
            self.advance()
            e = self.int_exponent(tok)
            return ctx.gen(tok.text) ** e, (tok.text, e)
        if tok.kind == "NAME" and not self._known(tok.text):
            raise self.error(f"unknown name {tok.text!r}")
        raise self.error(f"expected a character, found {tok.text or 'end of input'!r}")

    def _known(self, name: str) -> bool:
        return (name in RESERVED_NAMES or name in self.scope.cusps or name in self.scope.opaques
                or self.ctx.has_k_generator(name) or name in NAMED or name in HEADS)

    def character(self) -> tuple[Character, tuple]:
        value, first = self.factor()
        written = [first]
        while True:
            if self.at("*"):
                self.advance()
                c, w = self.factor()
            elif self.starts_factor():
                c, w = self.factor()
            else:
                break
            value = value * c
            written.append(w)
        return value, tuple(written)

    def k_factor(self) -> CharacterK:
        tok = self.tok
        ctx = self.ctx
        if tok.kind == "NAME" and tok.text == "norm":
            self.advance()
            self.expect("(")
            self.enter()
            rho, _ = self.character()
            self.leave()
            self.expect(")")
            return ctx.norm(rho) ** self.int_exponent(tok)
        if tok.kind == "NAME" and ctx.has_k_generator(tok.text):
            self.advance()
            return ctx.kgen(tok.text) ** self.int_exponent(tok)
        if tok.kind == "INT" and tok.text == "1":
            self.advance()
            self.int_exponent(tok)
            return ctx.k_trivial()
        if self.at("("):
            self.advance()
            self.enter()
            inner = self.k_character()
            self.leave()
            self.expect(")")
            return inner ** self.int_exponent(tok)
        if tok.kind == "NAME" and ctx.has_generator(tok.text):
            raise self.error(f"{tok.text!r} is a character of k^x; write norm({tok.text}) for its pullback")
        if tok.kind == "NAME" and not self._known(tok.text):
            raise self.error(f"unknown name {tok.text!r}")
        raise self.error(f"expected a character of K^x, found {tok.text or 'end of input'!r}")

    def k_character(self) -> CharacterK:
        value = self.k_factor()
        while True:
            if self.at("*"):
                self.advance()
            elif not (self.tok.kind in ("NAME", "INT") or self.at("(")):
                break
            value = value * self.k_factor()
        return value

    # -- representation arguments -----------------------------------------

    def arg(self) -> Arg:
        start = self.tok
        char, written = self.ctx.trivial(), ()
        if self.starts_factor():
            char, written = self.character()
        tok = self.tok
        if tok.kind == "NAME" and tok.text in HEADS:
            self.advance()
            return Arg(char, written, tok.text, offset=start.offset)
        if tok.kind == "NAME" and tok.text in self.scope.cusps:
            self.advance()
            return Arg(char, written, "cusp", self.scope.cusps[tok.text].twist(char), start.offset)
        if tok.kind == "NAME" and not self._known(tok.text):
            raise self.error(f"unknown name {tok.text!r}")
        if not written:
            raise self.error(f"expected an argument, found {tok.text or 'end of input'!r}")
        return Arg(char, written, None, offset=start.offset)

    def gl2(self) -> GL2Rep:
        a = self.arg()
        if a.head is None and self.at("x"):
            self.advance()
            b = self.arg()
            self._plain(b)
            return PrincipalSeries(a.char, b.char)
        if a.head == "St":
            return Special(a.char)
        if a.head == "one":
            return OneDimensional(a.char)
        if a.head == "cusp":
            return a.cusp
        raise NotationError("expected a GL(2) representation: 'a x b', 'c St', 'c one' or a cuspidal name",
                            a.offset)

    def _plain(self, a: Arg) -> Character:
        if a.head is not None:
            raise NotationError("expected a character here", a.offset)
        return a.char

    def _cusp(self, a: Arg) -> Cuspidal:
        if a.head != "cusp":
            raise NotationError("expected a cuspidal GL(2) representation here", a.offset)
        return a.cusp

    # -- representations --------------------------------------------------

    def rep(self) -> GSp4Rep:
        tok = self.tok
        if tok.kind == "NAME" and tok.text in NAMED and self.peek().text == "(":
            self.advance()
            self.advance()
            self.enter()
            result = getattr(self, "_named_" + tok.text)(tok)
            self.leave()
            self.expect(")")
            return result
        return self._induced()

    def _induced(self) -> GSp4Rep:
        a = self.arg()
        if a.head is None and self.at("x"):
            self.advance()
            b = self.arg()
            self.expect("|x")
            c = self.arg()
            return make_rep("I", chi1=a.char, chi2=self._plain(b), sigma=self._plain(c))
        if self.at("|x"):
            bar = self.advance()
            c = self.arg()
            if a.head == "cusp":
                return make_rep("X", pi=a.cusp, sigma=self._plain(c))
            if a.head == "St" and c.head is None:
                return make_rep("IIa", chi=a.char, sigma=c.char)
            if a.head == "one" and c.head is None:
                return make_rep("IIb", chi=a.char, sigma=c.char)
            if a.head is None and c.head == "St":
                return make_rep("IIIa", chi=a.char, sigma=c.char)
            if a.head is None and c.head == "one":
                return make_rep("IIIb", chi=a.char, sigma=c.char)
            if a.head is None and c.head == "cusp":
                return make_rep("VII", chi=a.char, pi=c.cusp)
            raise self.error("no representation type has this induced shape", bar,
                             ("I", "IIa", "IIb", "IIIa", "IIIb", "VII", "X"))
        if a.head == "St_G":
            return make_rep("IVa", sigma=a.char)
        if a.head == "one_G":
            return make_rep("IVd", sigma=a.char)
        raise NotationError("expected a representation", a.offset)

    def _named_L(self, name: Token) -> GSp4Rep:
        nu = self.ctx.nu
        a = self.arg()
        self.expect(",")
        if a.head == "cusp":
            b = self.arg()
            return make_rep("XIb", pi=a.cusp.twist(nu("-1/2")), sigma=self._plain(b) * nu("1/2"))
        if a.head == "St":
            b = self.arg()
            second = self._plain(b)
            if a.char == nu("3/2"):
                return make_rep("IVc", sigma=second * nu("3/2"))
            xi = a.char * nu("-1/2")
            if xi.is_trivial():
                return make_rep("VIc", sigma=second * nu("1/2"))
            xi_written = tuple(w for w in a.factors if w[0] != "nu")
            k = len(xi_written)
            if k and b.factors[:1] == (("nu", Fraction(-1, 2)),) and b.factors[1:1 + k] == xi_written:
                return make_rep("Vc", xi=xi, sigma=second * nu("1/2") * xi)
            return make_rep("Vb", xi=xi, sigma=second * nu("1/2"))
        if a.head is not None:
            raise NotationError(f"L(...) cannot start with {a.head!r}", a.offset, ("IVb", "IVc", "Vb", "Vc", "VIc"))
        b = self.arg()
        if b.head == "St":
            if a.char != nu(2):
                raise NotationError("L(a, b St) requires a = nu^{2}", a.offset, ("IVb",))
            return make_rep("IVb", sigma=b.char * nu(1))
        if b.head == "cusp":
            return make_rep("IXb", xi=a.char * nu(-1), pi=b.cusp.twist(nu("1/2")))
        if b.head is None and self.at("|x"):
            self.advance()
            c = self.arg()
            sigma = self._plain(c) * nu("1/2")
            xi = a.char * nu(-1)
            if xi.is_trivial():
                if not b.char.is_trivial():
                    raise NotationError("L(nu, b |x c) requires b = 1", b.offset, ("VId",))
                return make_rep("VId", sigma=sigma)
            if b.char != xi:
                raise NotationError("L(nu xi, xi' |x c) requires xi' = xi", b.offset, ("Vd",))
            return make_rep("Vd", xi=xi, sigma=sigma)
        raise NotationError("no L(...) shape matches", name.offset, ("IVb", "IVc", "Vb", "Vc", "Vd", "VIc",
                                                                    "VId", "IXb", "XIb"))

    def _named_delta(self, name: Token) -> GSp4Rep:
        nu = self.ctx.nu
        if self.at("["):
            self.advance()
            a = self._plain(self.arg())
            self.expect(",")
            b = self._plain(self.arg())
            self.expect("]")
            if b != nu(1) * a:
                raise self.error("delta([xi, nu xi], ...) requires the second entry to be nu times the first",
                                 name)
            self.expect(",")
            c = self._plain(self.arg())
            return make_rep("Va", xi=a, sigma=c * nu("1/2"))
        a = self.arg()
        self.expect(",")
        b = self.arg()
        if a.head == "cusp":
            return make_rep("XIa", pi=a.cusp.twist(nu("-1/2")), sigma=self._plain(b) * nu("1/2"))
        if a.head is None and b.head == "cusp":
            return make_rep("IXa", xi=a.char * nu(-1), pi=b.cusp.twist(nu("1/2")))
        raise NotationError("no delta(...) shape matches", name.offset, ("Va", "IXa", "XIa"))

    def _named_tau(self, name: Token) -> GSp4Rep:
        which = self.tok
        if not self.at("S", "T"):
            raise self.error("tau(...) takes S or T as its first argument")
        self.advance()
        self.expect(",")
        a = self.arg()
        if a.head == "cusp":
            return make_rep("VIIIa" if which.text == "S" else "VIIIb", pi=a.cusp)
        return make_rep("VIa" if which.text == "S" else "VIb", sigma=self._plain(a) * self.ctx.nu("1/2"))

    def _named_theta(self, name: Token) -> GSp4Rep:
        a = self.arg()
        if a.head != "St":
            raise NotationError("theta(...) starts with 'sigma St'", a.offset, ("Va*", "XIa*"))
        self.expect(",")
        b = self.arg()
        if b.head == "St":
            return make_rep("Va*", sigma=a.char, xi=b.char / a.char)
        if b.head == "cusp":
            return make_rep("XIa*", sigma=a.char, pi=b.cusp.twist(a.char.inverse()))
        raise NotationError("no theta(...) shape matches", b.offset, ("Va*", "XIa*"))

    def _opaque(self, type_: str) -> GSp4Rep:
        tok = self.tok
        if tok.kind != "NAME" or tok.text not in self.scope.opaques:
            raise self.error(f"undeclared opaque cuspidal representation {tok.text!r}")
        self.advance()
        data = self.scope.opaques[tok.text]
        if self.at(","):
            self.advance()
            shift, _ = self.character()
            data = data.twist(shift)
        return make_rep(type_, data=data)

    def _named_cusp_generic(self, name: Token) -> GSp4Rep:
        return self._opaque("CuspGeneric")

    def _named_cusp_nongeneric(self, name: Token) -> GSp4Rep:
        return self._opaque("CuspOtherNonGeneric")

    # -- Euler factors ----------------------------------------------------

    def factor_product(self) -> EulerFactor:
        result = EulerFactor()
        if self.tok.kind == "INT" and self.tok.text == "1" and self.peek().kind == "END":
            self.advance()
            return result
        while self.tok.kind != "END":
            tok = self.expect("L")
            self.expect("(")
            if not self.at("s"):
                raise self.error("expected 's'")
            self.advance()
            self.expect(",")
            chi, _ = self.character()
            self.expect(")")
            e = self.int_exponent(tok)
            if e < 0:
                raise self.error("negative power of an Euler factor", tok)
            result = result * tate_factor(chi) ** e
            if self.at("*"):
                self.advance()
        return result


def _run(text, scope, method: str, *args):
    if isinstance(scope, CharacterContext):
        scope = Scope(scope)
    parser = _Parser(text, scope)
    try:
        result = getattr(parser, method)(*args)
        parser.end()
        return result
    except NotationError:
        raise
    except (InputError, ArithmeticError, RecursionError) as exc:
        raise NotationError(str(exc), parser.tok.offset) from None


def parse_character(text, scope) -> Character:
    return _run(text, scope, "character")[0]


def parse_k_character(text, scope) -> CharacterK:
    return _run(text, scope, "k_character")


def parse_rep(text, scope) -> GSp4Rep:
    """Parse a representation; the type is read off the shape of the text.

    L(a St, b) is VIc when a = nu^{1/2}, IVc when a = nu^{3/2}, and otherwise
    Vb or Vc with xi = nu^{-1/2} a.  It is Vc exactly when b is written as
    nu^{-1/2}, then the factors of xi as written in a, then sigma.
    """
    return _run(text, scope, "rep")


def parse_gl2(text, scope) -> GL2Rep:
    return _run(text, scope, "gl2")


def parse_factor(text, scope) -> EulerFactor:
    return _run(text, scope, "factor_product")


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

def print_character(c: Character) -> str:
    return str(c)


def _cat(*parts: str) -> str:
    """Juxtapose printed characters, dropping trivial ones."""
    kept = [p for p in parts if p and p != "1"]
    return " ".join(kept) or "1"


def _cusp_text(pi: Cuspidal) -> str:
    return pi.name if pi.shift.is_trivial() else f"{pi.shift} {pi.name}"


def print_gl2(pi: GL2Rep) -> str:
    if isinstance(pi, PrincipalSeries):
        return f"{pi.mu1} x {pi.mu2}"
    if isinstance(pi, Special):
        return f"{pi.mu} St"
    if isinstance(pi, OneDimensional):
        return f"{pi.mu} one"
    return _cusp_text(pi)


def _with_head(c: Character, head: str) -> str:
    return f"{c} {head}"


def print_rep(pi: GSp4Rep, unicode: bool = False) -> str:
    text = _print_rep(pi)
    return unicode_text(text) if unicode else text


def _print_rep(pi: GSp4Rep) -> str:
    t = pi.type
    ctx = pi.ctx
    nu = ctx.nu

    def sigma_shift(r):
        return str(nu(r) * pi["sigma"])

    if t == "I":
        return f"{pi['chi1']} x {pi['chi2']} |x {pi['sigma']}"
    if t == "IIa":
        return f"{_with_head(pi['chi'], 'St')} |x {pi['sigma']}"
    if t == "IIb":
        return f"{_with_head(pi['chi'], 'one')} |x {pi['sigma']}"
    if t == "IIIa":
        return f"{pi['chi']} |x {_with_head(pi['sigma'], 'St')}"
    if t == "IIIb":
        return f"{pi['chi']} |x {_with_head(pi['sigma'], 'one')}"
    if t == "IVa":
        return _with_head(pi["sigma"], "St_G")
    if t == "IVd":
        return _with_head(pi["sigma"], "one_G")
    if t == "IVb":
        return f"L(nu^{{2}}, {_with_head(nu(-1) * pi['sigma'], 'St')})"
    if t == "IVc":
        return f"L(nu^{{3/2}} St, {sigma_shift('-3/2')})"
    if t == "Va":
        xi = pi["xi"]
        return f"delta([{xi}, {nu(1) * xi}], {sigma_shift('-1/2')})"
    if t == "Vb":
        xi_text = str(pi["xi"])
        second = sigma_shift("-1/2")
        prefix = "nu^{-1/2} " + xi_text
        if second == prefix or second.startswith(prefix + " "):
            # Would read as the Vc shape; move the nu-power to the end.
            second = _cat(str(pi["sigma"]), "nu^{-1/2}")
        return f"L(nu^{{1/2}} {xi_text} St, {second})"
    if t == "Vc":
        return f"L(nu^{{1/2}} {pi['xi']} St, {_cat('nu^{-1/2}', str(pi['xi']), str(pi['sigma']))})"
    if t == "Vd":
        return f"L({nu(1) * pi['xi']}, {pi['xi']} |x {sigma_shift('-1/2')})"
    if t in ("VIa", "VIb"):
        return f"tau({'S' if t == 'VIa' else 'T'}, {sigma_shift('-1/2')})"
    if t == "VIc":
        return f"L(nu^{{1/2}} St, {sigma_shift('-1/2')})"
    if t == "VId":
        return f"L(nu, 1 |x {sigma_shift('-1/2')})"
    if t == "VII":
        return f"{pi['chi']} |x {_cusp_text(pi['pi'])}"
    if t in ("VIIIa", "VIIIb"):
        return f"tau({'S' if t == 'VIIIa' else 'T'}, {_cusp_text(pi['pi'])})"
    if t in ("IXa", "IXb"):
        head = "delta" if t == "IXa" else "L"
        return f"{head}({nu(1) * pi['xi']}, {_cusp_text(pi['pi'].twist(nu('-1/2')))})"
    if t == "X":
        return f"{_cusp_text(pi['pi'])} |x {pi['sigma']}"
    if t in ("XIa", "XIb"):
        head = "delta" if t == "XIa" else "L"
        return f"{head}({_cusp_text(pi['pi'].twist(nu('1/2')))}, {sigma_shift('-1/2')})"
    if t == "Va*":
        return f"theta({_with_head(pi['sigma'], 'St')}, {_with_head(pi['xi'] * pi['sigma'], 'St')})"
    if t == "XIa*":
        return f"theta({_with_head(pi['sigma'], 'St')}, {_cusp_text(pi['pi'].twist(pi['sigma']))})"
    data = pi["data"]
    head = "cusp_generic" if t == "CuspGeneric" else "cusp_nongeneric"
    if data.shift.is_trivial():
        return f"{head}({data.name})"
    return f"{head}({data.name}, {data.shift})"


def _monomial_text(m) -> str:
    parts = []
    nu_exp = -m.q_exponent
    if nu_exp == 1:
        parts.append("nu")
    elif nu_exp:
        parts.append(f"nu^{{{nu_exp}}}")
    for unit, e in m.units:
        parts.append(unit.name if e == 1 else f"{unit.name}^{{{e}}}")
    if m.sign == -1:
        parts.append("chi_{K/k}")
    return " ".join(parts) or "1"


def print_factor(f: EulerFactor, unicode: bool = False) -> str:
    """Canonical text: "L(s, expr)" per distinct monomial, "^n" for multiplicity, "1" if trivial."""
    if f.is_one():
        return "1"
    parts = []
    for m, n in f.terms:
        text = f"L(s, {_monomial_text(m)})"
        parts.append(text if n == 1 else f"{text}^{n}")
    text = " ".join(parts)
    return unicode_text(text) if unicode else text


_UNICODE = {
    "nu": "ν", "xi": "ξ", "sigma": "σ", "chi": "χ", "mu": "μ", "pi": "π",
    "rho": "ρ", "omega": "ω", "delta": "δ", "tau": "τ", "theta": "θ",
    "one": "\U0001d7cf", "one_G": "\U0001d7cf_G", "x": "×", "lam": "Λ",
}


def unicode_text(text: str) -> str:
    """Render ASCII notation with Greek letters, the semidirect-product sign and the times sign."""
    text = text.replace("|x", "⋊").replace("chi_{K/k}", "χ_{K/k}")
    return re.sub(r"\b[A-Za-z_]+\b", lambda m: _UNICODE.get(m.group(), m.group()), text)


# ---------------------------------------------------------------------------
# Structured records
# ---------------------------------------------------------------------------

def _param_to_dict(value) -> dict:
    if isinstance(value, Character):
        return {"character": value.to_dict(), "text": str(value)}
    if isinstance(value, Cuspidal):
        return {"cusp": value.name, "shift": value.shift.to_dict()}
    return {"opaque": value.name, "shift": value.shift.to_dict()}


def rep_to_dict(pi: GSp4Rep) -> dict:
    return {"type": pi.type, "text": str(pi), "params": {name: _param_to_dict(v) for name, v in pi.params}}


def rep_from_dict(data: Mapping, scope: Scope) -> GSp4Rep:
    """Inverse of :func:`rep_to_dict`; a bare {"text": ...} record, or an lfactor
    record with its "rep" field, is parsed."""
    if "params" not in data:
        return parse_rep(data["text"] if "text" in data else data["rep"], scope)
    ctx = scope.ctx
    params = {}
    for name, value in data["params"].items():
        if "character" in value:
            params[name] = ctx.character_from_dict(value["character"])
        elif "cusp" in value:
            params[name] = scope.cusp(value["cusp"]).twist(ctx.character_from_dict(value.get("shift", {})))
        elif "opaque" in value:
            params[name] = scope.opaques[value["opaque"]].twist(ctx.character_from_dict(value.get("shift", {})))
        else:
            raise InputError(f"malformed parameter record for {name!r}")
    return make_rep(data["type"], **params)
