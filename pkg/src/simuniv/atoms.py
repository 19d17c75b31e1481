"""Element labels: canonical ordering, the bottom behavior, and text rendering.

Every finite set in the library holds *atoms*: ints, exact fractions,
strings, the distinguished ``BOTTOM`` value, or tuples of atoms.  Sets are
kept in canonical order so that every search is deterministic.
"""
from fractions import Fraction
import re


class _Bottom:
    """The behavior of a run that did not halt within its budget."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "⊥"

    def __reduce__(self):
        return (_Bottom, ())

    def __hash__(self):
        return hash("simuniv.BOTTOM")

    def __eq__(self, other):
        return other is self


BOTTOM = _Bottom()


def canonical_key(x):
    """Total order key over atoms of mixed type."""
    if x is BOTTOM:
        return (0,)
    if isinstance(x, (bool, int, Fraction)):
        return (1, x)
    if isinstance(x, float):
        return (1, Fraction(x))
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, tuple(canonical_key(i) for i in x))
    return (9, type(x).__name__, repr(x))


def canonical_sorted(items):
    return sorted(items, key=canonical_key)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.+\-=]*\Z")


def format_atom(x):
    """Render an atom in the instance-file value syntax (parseable back)."""
    if x is BOTTOM:
        return "⊥"
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, str):
        if _IDENT.match(x) and x not in ("I", "bot"):
            return x
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(x, tuple):
        return "(" + ", ".join(format_atom(i) for i in x) + ")"
    raise TypeError(f"cannot render atom {x!r}")


class AtomSyntaxError(ValueError):
    pass


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<lpar>\()|(?P<rpar>\))|(?P<comma>,)|
        (?P<str>"(?:[^"\\]|\\.)*")|
        (?P<num>-?\d+(?:/\d+)?)|
        (?P<bot>⊥)|
        (?P<ident>[A-Za-z_][A-Za-z0-9_.+\-=]*)
    )""",
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise AtomSyntaxError(f"unexpected input at {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


def _parse(tokens, i):
    kind, val = tokens[i]
    if kind == "lpar":
        items = []
        i += 1
        if tokens[i][0] == "rpar":
            return (), i + 1
        while True:
            item, i = _parse(tokens, i)
            items.append(item)
            if i >= len(tokens):
                raise AtomSyntaxError("unterminated tuple")
            if tokens[i][0] == "comma":
                i += 1
                if tokens[i][0] == "rpar":
                    return tuple(items), i + 1
                continue
            if tokens[i][0] == "rpar":
                return tuple(items), i + 1
            raise AtomSyntaxError(f"expected ',' or ')' but got {tokens[i][1]!r}")
    if kind == "num":
        if "/" in val:
            return Fraction(val), i + 1
        return int(val), i + 1
    if kind == "str":
        body = val[1:-1]
        return re.sub(r"\\(.)", r"\1", body), i + 1
    if kind == "bot" or (kind == "ident" and val == "bot"):
        return BOTTOM, i + 1
    if kind == "ident":
        return val, i + 1
    raise AtomSyntaxError(f"unexpected token {val!r}")


def parse_atoms(text):
    """Parse a comma- or whitespace-separated sequence of atoms."""
    tokens = _tokenize(text)
    out = []
    i = 0
    while i < len(tokens):
        if tokens[i][0] == "comma":
            i += 1
            continue
        try:
            item, i = _parse(tokens, i)
        except IndexError:
            raise AtomSyntaxError(f"truncated value in {text!r}") from None
        out.append(item)
    return out


def parse_atom(text):
    items = parse_atoms(text)
    if len(items) != 1:
        raise AtomSyntaxError(f"expected exactly one value in {text!r}")
    return items[0]
