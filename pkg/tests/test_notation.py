import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsp4_lfactors.catalog import TYPE_SYMBOLS, Cuspidal, DeclaredPredicate, make_rep
from gsp4_lfactors.characters import Word
from gsp4_lfactors.euler import tate_factor
from gsp4_lfactors.instances import instances
from gsp4_lfactors.notation import (SHAPES, NotationError, Scope, parse_character, parse_factor, parse_gl2,
                                    parse_k_character, parse_rep, print_factor, print_rep, rep_from_dict,
                                    rep_to_dict)
from helpers import make_ctx

CTX = make_ctx(sigma=None, chi=None, chi_1=None, chi_2=None, xi=2, r="ramified", mu=None,
               tw=Word.of({"sigma": 1}, "1/2"))
SCOPE = Scope(CTX)
SCOPE.add_cusp(Cuspidal("pi", CTX.trivial(), DeclaredPredicate(True)))
G, NU = CTX.gen, CTX.nu

# -- spec examples ------------------------------------------------------------


def test_parse_vb():
    assert parse_rep("L(nu^{1/2} xi St, nu^{-1/2} sigma)", SCOPE) == make_rep("Vb", xi=G("xi"), sigma=G("sigma"))


def test_parse_type_i():
    assert parse_rep("chi_1 x chi_2 |x sigma", SCOPE) == \
        make_rep("I", chi1=G("chi_1"), chi2=G("chi_2"), sigma=G("sigma"))


def test_print_vib():
    assert print_rep(make_rep("VIb", sigma=G("sigma"))) == "tau(T, nu^{-1/2} sigma)"
    assert parse_rep("tau(T, nu^{-1/2} sigma)", SCOPE) == make_rep("VIb", sigma=G("sigma"))


def test_print_factors():
    assert print_factor(tate_factor(CTX.trivial()) ** 0) == "1"
    assert print_factor(tate_factor(NU("1/2") * G("sigma")) ** 2) == "L(s, nu^{1/2} sigma)^2"


def test_unicode_printing():
    text = print_rep(make_rep("IIa", chi=G("chi"), sigma=G("sigma")), unicode=True)
    assert text == "χ St ⋊ σ"


# -- characters ---------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("sigma", G("sigma")),
    ("nu^{1/2} sigma", NU("1/2") * G("sigma")),
    ("sigma * chi^{-1}", G("sigma") / G("chi")),
    ("(sigma chi)^2", (G("sigma") * G("chi")) ** 2),
    ("xi^3", G("xi")),
    ("chi_{K/k} chi_{K/k}", CTX.trivial()),
    ("tw", NU("1/2") * G("sigma")),
    ("1", CTX.trivial()),
    ("nu^-1", NU(-1)),
])
def test_parse_character(text, expected):
    assert parse_character(text, SCOPE) == expected


def test_parse_k_character():
    assert parse_k_character("norm(sigma) norm(chi)^{-1}", SCOPE) == CTX.norm(G("sigma") / G("chi"))


def test_parse_gl2():
    assert str(parse_gl2("chi x sigma", SCOPE)) == "chi x sigma"
    assert str(parse_gl2("nu^{1/2} pi", SCOPE)) == "nu^{1/2} pi"


@pytest.mark.parametrize("text, offset, fragment", [
    ("sigma * foo", 8, "unknown name 'foo'"),
    ("nu^{1/0}", 4, "rational"),
    ("sigma $", 6, "unexpected character"),
    ("nu^{1/3}", 0, "half-integer"),
    ("(sigma", 6, "expected ')'"),
])
def test_character_errors_carry_byte_offsets(text, offset, fragment):
    with pytest.raises(NotationError) as info:
        parse_character(text, SCOPE)
    assert fragment in str(info.value)
    assert info.value.offset == offset


def test_offsets_count_bytes_not_code_points():
    with pytest.raises(NotationError) as info:
        parse_character("σσ $", SCOPE)
    assert info.value.offset == 0
    with pytest.raises(NotationError) as info:
        parse_character("sigma σ", SCOPE)
    assert info.value.offset == 6
    with pytest.raises(NotationError) as info:
        parse_rep("theta(sigma St, foo)", SCOPE)
    assert info.value.offset == 16


def test_ambiguous_or_unknown_shapes():
    with pytest.raises(NotationError):
        parse_rep("L(sigma, sigma)", SCOPE)
    with pytest.raises(NotationError):
        parse_rep("frob(sigma)", SCOPE)


def test_invalid_utf8_bytes():
    with pytest.raises(NotationError, match="UTF-8"):
        parse_rep(b"sigma \xff", SCOPE)


# -- factors ------------------------------------------------------------------

def test_factor_round_trip():
    f = tate_factor(NU("1/2") * G("sigma")) ** 2 * tate_factor(CTX.chi_kk() * G("mu"))
    assert parse_factor(print_factor(f), SCOPE) == f


# -- round trips --------------------------------------------------------------

def test_every_type_has_a_shape():
    assert set(SHAPES) == set(TYPE_SYMBOLS)


@pytest.mark.parametrize("type_", TYPE_SYMBOLS)
def test_round_trip_on_random_instances(type_):
    for inst in instances(type_, 60, seed=11):
        text = print_rep(inst.rep)
        again = parse_rep(text, inst.scope)
        assert again == inst.rep, (text, inst.describe())
        assert print_rep(again) == text
        assert rep_from_dict(rep_to_dict(inst.rep), inst.scope) == inst.rep
        assert rep_from_dict({"text": text}, inst.scope) == inst.rep


@pytest.mark.parametrize("type_", TYPE_SYMBOLS)
def test_scope_round_trip(type_):
    inst = instances(type_, 1, seed=5)[0]
    scope = Scope.from_dict(inst.scope.to_dict())
    assert print_rep(parse_rep(print_rep(inst.rep), scope)) == print_rep(inst.rep)


NAMES = ("sigma", "chi", "chi_1", "xi", "r", "mu", "tw", "nu", "chi_{K/k}")


@st.composite
def character_words(draw):
    parts = []
    for _ in range(draw(st.integers(1, 8))):
        name = draw(st.sampled_from(NAMES))
        kind = draw(st.sampled_from(("plain", "int", "half", "paren")))
        if kind == "int":
            parts.append(f"{name}^{{{draw(st.integers(-5, 5))}}}")
        elif kind == "half" and name == "nu":
            parts.append(f"nu^{{{draw(st.integers(-9, 9))}/2}}")
        elif kind == "paren":
            parts.append(f"({name} {draw(st.sampled_from(NAMES))})^{draw(st.integers(0, 3))}")
        else:
            parts.append(name)
    return draw(st.sampled_from((" ", " * "))).join(parts)


@settings(max_examples=1000, deadline=None)
@given(character_words())
def test_fuzzed_character_round_trip(text):
    c = parse_character(text, SCOPE)
    printed = str(c)
    assert parse_character(printed, SCOPE) == c
    assert str(parse_character(printed, SCOPE)) == printed


PARSERS = (parse_character, parse_k_character, parse_rep, parse_gl2, parse_factor)
ALPHABET = st.sampled_from(list("()[]{},*^/|x-+ 0123456789") + ["nu", "St", "sigma", "L", "tau", "pi", "delta",
                                                                  "chi_{K/k}", "norm", "one", "theta", "T", "S"])


@settings(max_examples=500, deadline=None)
@given(st.lists(ALPHABET, max_size=30).map("".join), st.sampled_from(PARSERS))
def test_token_soup_raises_only_notation_errors(text, parser):
    try:
        parser(text, SCOPE)
    except NotationError as exc:
        assert 0 <= exc.offset <= len(text.encode("utf-8"))


@settings(max_examples=500, deadline=None)
@given(st.binary(max_size=64), st.sampled_from(PARSERS))
def test_arbitrary_bytes_raise_only_notation_errors(data, parser):
    try:
        parser(data, SCOPE)
    except NotationError:
        pass


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=64), st.sampled_from(PARSERS))
def test_arbitrary_text_raises_only_notation_errors(text, parser):
    try:
        parser(text, SCOPE)
    except NotationError:
        pass


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(NotationError):
        parse_character("(" * 5000 + "sigma" + ")" * 5000, SCOPE)
    with pytest.raises(NotationError):
        parse_character("nu^{" + "9" * 500 + "}", SCOPE)
