from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from simuniv.atoms import BOTTOM, AtomSyntaxError, canonical_sorted, format_atom, parse_atom, parse_atoms

atoms = st.recursive(
    st.one_of(
        st.integers(-50, 50),
        st.fractions(max_denominator=7),
        st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,5}", fullmatch=True),
        st.text(alphabet='ab ,()"\\x', max_size=5),
        st.just(BOTTOM),
    ),
    lambda inner: st.lists(inner, min_size=2, max_size=3).map(tuple),
    max_leaves=6,
)


@given(atoms)
def test_format_parse_round_trip(x):
    assert parse_atom(format_atom(x)) == x


def test_canonical_order_puts_bottom_first_then_numbers_then_strings():
    assert canonical_sorted(["b", 2, BOTTOM, (0, 1), Fraction(1, 2)]) == [
        BOTTOM, Fraction(1, 2), 2, "b", (0, 1)
    ]


def test_parse_list():
    assert parse_atoms('0, 1 (a, 2) "x y" -1/2') == [0, 1, ("a", 2), "x y", Fraction(-1, 2)]


def test_bottom_spellings():
    assert parse_atom("⊥") is BOTTOM
    assert parse_atom("bot") is BOTTOM


@pytest.mark.parametrize("bad", ["(1, 2", "'open", "1 2", ""])
def test_syntax_errors(bad):
    with pytest.raises(AtomSyntaxError):
        parse_atom(bad)
