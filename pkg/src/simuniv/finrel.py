"""Finite sets and relations: the copy-delete category every diagram is evaluated in.

Objects are tensor products of named finite sets.  Products are flat: the
elements of ``A @ (B @ C)`` and ``(A @ B) @ C`` are the same 3-tuples, so no
associators are needed.  The monoidal unit is the empty product, whose
single element is ``()``.

Morphisms are relations given extensionally by their pairs.  Both sides of a
pair are coordinate tuples, one coordinate per factor.  Functions are the
relations whose ``kind`` says so; the flag is always recomputed.

>>> A = FiniteSet("A", [0, 1])
>>> (copy(A) >> tensor(identity(A), delete(A))) == identity(A)
True
"""
from dataclasses import dataclass, field
from enum import Enum
import itertools
import math

from .atoms import canonical_key, canonical_sorted, format_atom
from .errors import DomainMismatch, TypeMismatch


class FiniteSet:
    """A named finite carrier with canonically ordered, distinct elements.

    Equality ignores the name: two sets are equal when they hold the same labels.
    """

    __slots__ = ("_name", "_elements", "_index", "_hash")

    def __init__(self, name, elements):
        elements = list(elements)
        ordered = tuple(canonical_sorted(elements))
        if len(set(ordered)) != len(ordered):
            seen, dups = set(), []
            for x in ordered:
                if x in seen:
                    dups.append(x)
                seen.add(x)
            raise ValueError(f"duplicate elements in set {name!r}: {dups}")
        self._name = name
        self._elements = ordered
        self._index = {x: i for i, x in enumerate(ordered)}
        self._hash = hash(ordered)

    @property
    def name(self):
        return self._name

    @property
    def elements(self):
        return self._elements

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return len(self._elements)

    def __contains__(self, x):
        try:
            return x in self._index
        except TypeError:
            return False

    def index(self, x):
        return self._index[x]

    def __eq__(self, other):
        return isinstance(other, FiniteSet) and self._elements == other._elements

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteSet({self._name!r}, {list(self._elements)!r})"

    def __matmul__(self, other):
        return ProductObject([self, other])


class ProductObject:
    """Tensor product of finite sets; ``ProductObject([])`` is the unit ``I``."""

    __slots__ = ("_factors", "_elements")

    def __init__(self, factors=()):
        flat = []
        for f in factors:
            if isinstance(f, ProductObject):
                flat.extend(f.factors)
            elif isinstance(f, FiniteSet):
                flat.append(f)
            else:
                raise TypeError(f"not a finite set or product: {f!r}")
        self._factors = tuple(flat)
        self._elements = None

    @property
    def factors(self):
        return self._factors

    @property
    def arity(self):
        return len(self._factors)

    @property
    def size(self):
        return math.prod(len(f) for f in self._factors)

    @property
    def elements(self):
        if self._elements is None:
            self._elements = tuple(itertools.product(*(f.elements for f in self._factors)))
        return self._elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.size

    def __contains__(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == len(self._factors)
            and all(c in f for c, f in zip(x, self._factors))
        )

    def wrap(self, value):
        """Coordinate tuple for a user value: bare atom for one factor, tuple otherwise."""
        if len(self._factors) == 1:
            return (value,)
        return tuple(value)

    def unwrap(self, coords):
        if len(self._factors) == 1:
            return coords[0]
        return coords

    def __eq__(self, other):
        return isinstance(other, ProductObject) and self._factors == other._factors

    def __hash__(self):
        return hash(self._factors)

    def __matmul__(self, other):
        return ProductObject([self, other])

    @property
    def label(self):
        if not self._factors:
            return "I"
        return " * ".join(f.name for f in self._factors)

    def __repr__(self):
        return f"ProductObject({self.label})"


UNIT = ProductObject(())


def as_object(x):
    if isinstance(x, ProductObject):
        return x
    if isinstance(x, FiniteSet):
        return ProductObject([x])
    raise TypeError(f"not a finite set or product: {x!r}")


class Kind(str, Enum):
    RELATION = "relation"
    PARTIAL_FUNCTION = "partial-function"
    TOTAL_FUNCTION = "total-function"


class RelMorphism:
    """A relation ``dom -> cod`` between products of finite sets."""

    __slots__ = ("_dom", "_cod", "_pairs", "_fwd", "_kind", "_hash")

    def __init__(self, dom, cod, pairs, check=True):
        dom, cod = as_object(dom), as_object(cod)
        pairs = frozenset((tuple(x), tuple(y)) for x, y in pairs)
        if check:
            for x, y in pairs:
                if x not in dom:
                    raise DomainMismatch(f"{x!r} is not an element of {dom.label}")
                if y not in cod:
                    raise DomainMismatch(f"{y!r} is not an element of {cod.label}")
        fwd = {}
        for x, y in pairs:
            fwd.setdefault(x, set()).add(y)
        self._dom = dom
        self._cod = cod
        self._pairs = pairs
        self._fwd = {x: frozenset(ys) for x, ys in fwd.items()}
        self._kind = None
        self._hash = None

    @classmethod
    def from_pairs(cls, dom, cod, pairs):
        """Build from user-level values: bare atoms on single-factor sides."""
        dom, cod = as_object(dom), as_object(cod)
        return cls(dom, cod, [(dom.wrap(x), cod.wrap(y)) for x, y in pairs])

    @classmethod
    def from_function(cls, dom, cod, fn):
        """Tabulate ``fn`` over ``dom``; ``fn`` receives unpacked coordinates.

        A return value of ``None`` leaves the argument unrelated (partiality).
        """
        dom, cod = as_object(dom), as_object(cod)
        pairs = []
        for x in dom:
            y = fn(*x)
            if y is not None:
                pairs.append((x, cod.wrap(y)))
        return cls(dom, cod, pairs)

    @property
    def dom(self):
        return self._dom

    @property
    def cod(self):
        return self._cod

    @property
    def pairs(self):
        return self._pairs

    def image(self, x):
        """All codomain tuples related to the domain tuple ``x``."""
        return self._fwd.get(x, frozenset())

    def apply(self, *coords):
        """Unwrapped images of the given domain coordinates."""
        return frozenset(self._cod.unwrap(y) for y in self.image(tuple(coords)))

    def __call__(self, *coords):
        ys = self.image(tuple(coords))
        if len(ys) != 1:
            raise ValueError(
                f"{coords!r} has {len(ys)} images; calling needs exactly one"
            )
        (y,) = ys
        return self._cod.unwrap(y)

    @property
    def kind(self):
        if self._kind is None:
            if any(len(ys) > 1 for ys in self._fwd.values()):
                self._kind = Kind.RELATION
            elif len(self._fwd) == self._dom.size:
                self._kind = Kind.TOTAL_FUNCTION
            else:
                self._kind = Kind.PARTIAL_FUNCTION
        return self._kind

    @property
    def is_function(self):
        return self.kind is Kind.TOTAL_FUNCTION

    @property
    def is_partial_function(self):
        return self.kind is not Kind.RELATION

    @property
    def is_injective(self):
        seen = set()
        for x, y in self._pairs:
            if y in seen:
                return False
            seen.add(y)
        return True

    @property
    def is_surjective(self):
        return len({y for _, y in self._pairs}) == self._cod.size

    def support(self):
        """Domain tuples with at least one image, canonically ordered."""
        return sorted(self._fwd, key=canonical_key)

    def table(self):
        """``[(x, [y, ...]), ...]`` in canonical order, unrelated ``x`` omitted."""
        return [
            (x, sorted(self._fwd[x], key=canonical_key))
            for x in self.support()
        ]

    def __eq__(self, other):
        return (
            isinstance(other, RelMorphism)
            and self._dom == other._dom
            and self._cod == other._cod
            and self._pairs == other._pairs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._dom, self._cod, self._pairs))
        return self._hash

    def __rshift__(self, other):
        return compose(self, other)

    def __matmul__(self, other):
        return tensor(self, other)

    def __len__(self):
        return len(self._pairs)

    def __repr__(self):
        body = ", ".join(
            f"{format_atom(self._dom.unwrap(x))}->{format_atom(self._cod.unwrap(y))}"
            for x, ys in self.table()
            for y in ys
        )
        return f"RelMorphism({self._dom.label} -> {self._cod.label}: {{{body}}})"


def compose(f, g):
    """Sequential composite: first ``f``, then ``g``."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose: cod {f.cod.label} != dom {g.dom.label}")
    pairs = set()
    for x, y in f.pairs:
        for z in g.image(y):
            pairs.add((x, z))
    return RelMorphism(f.dom, g.cod, pairs, check=False)


def tensor(f, g):
    """Parallel composite on flattened product tuples."""
    pairs = [
        (x + x2, y + y2) for x, y in f.pairs for x2, y2 in g.pairs
    ]
    return RelMorphism(f.dom @ g.dom, f.cod @ g.cod, pairs, check=False)


def identity(A):
    A = as_object(A)
    return RelMorphism(A, A, [(x, x) for x in A], check=False)


def copy(A):
    """``a -> (a, a)``."""
    A = as_object(A)
    return RelMorphism(A, A @ A, [(x, x + x) for x in A], check=False)


def delete(A):
    """``a -> ()``, the unique map into the unit."""
    A = as_object(A)
    return RelMorphism(A, UNIT, [(x, ()) for x in A], check=False)


def swap(A, B):
    """Symmetry ``A * B -> B * A``."""
    A, B = as_object(A), as_object(B)
    k = A.arity
    return RelMorphism(
        A @ B, B @ A, [(x, x[k:] + x[:k]) for x in A @ B], check=False
    )


def projection(obj, indices):
    """Keep the listed coordinates of ``obj`` (in the given order)."""
    obj = as_object(obj)
    indices = tuple(indices)
    cod = ProductObject([obj.factors[i] for i in indices])
    return RelMorphism(
        obj, cod, [(x, tuple(x[i] for i in indices)) for x in obj], check=False
    )


def pairing(f, g):
    """``x -> (f(x), g(x))``, i.e. copy followed by ``f (x) g``."""
    if f.dom != g.dom:
        raise DomainMismatch(f"pairing needs equal domains: {f.dom.label} vs {g.dom.label}")
    return compose(copy(f.dom), tensor(f, g))


def subsumes(f, g):
    """True iff every pair of ``g`` is a pair of ``f``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch(
            f"subsumes needs equal types: {f.dom.label} -> {f.cod.label} "
            f"vs {g.dom.label} -> {g.cod.label}"
        )
    return g.pairs <= f.pairs


def first_difference(f, g):
    """First domain tuple (canonical order) where ``f`` and ``g`` disagree, else None."""
    for x in f.dom:
        if f.image(x) != g.image(x):
            return x
    return None


def all_functions(dom, cod):
    """Every total function ``dom -> cod``, in canonical (lexicographic) order."""
    dom, cod = as_object(dom), as_object(cod)
    xs = dom.elements
    for ys in itertools.product(cod.elements, repeat=len(xs)):
        yield RelMorphism(dom, cod, zip(xs, ys), check=False)


@dataclass(frozen=True)
class LawResult:
    name: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class LawReport:
    carrier: object
    results: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def check_cd_laws(A, copy_map=None, delete_map=None):
    """Check the comonoid laws for copy/delete on ``A``.

    ``copy_map``/``delete_map`` default to the generated structure maps; pass
    your own to test a candidate.  Failing laws carry the first offending
    element of ``A`` (unwrapped) as witness.
    """
    A = as_object(A)
    cp = copy(A) if copy_map is None else copy_map
    dl = delete(A) if delete_map is None else delete_map
    if cp.dom != A or cp.cod != A @ A:
        raise TypeMismatch(f"copy must be {A.label} -> {A.label} * {A.label}")
    if dl.dom != A or dl.cod != UNIT:
        raise TypeMismatch(f"delete must be {A.label} -> I")
    idA = identity(A)

    def law(name, lhs, rhs):
        x = first_difference(lhs, rhs)
        return LawResult(name, x is None, None if x is None else A.unwrap(x))

    def total(name, m):
        for x in A:
            if len(m.image(x)) != 1:
                return LawResult(name, False, A.unwrap(x))
        return LawResult(name, True)

    results = (
        total("copy-total-function", cp),
        total("delete-total-function", dl),
        law("coassociativity", cp >> (cp @ idA), cp >> (idA @ cp)),
        law("cocommutativity", cp >> swap(A, A), cp),
        law("counit-left", cp >> (dl @ idA), idA),
        law("counit-right", cp >> (idA @ dl), idA),
    )
    return LawReport(A, results)
