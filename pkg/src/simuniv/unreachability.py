"""Diagonal arguments: unreachable behaviors from self-reference and negation.

Self-reference comes either directly from an isomorphism ``T ~ C`` or
indirectly from a universal simulator whose programs are isomorphic to
contexts.  Combined with a fixed-point-free ``g: B -> B`` the diagonal
``h(c) = g(eval(iota(c), c))`` is reached by no target.

Isomorphisms ``X ~ C`` are oriented with ``forward: X -> C``.
"""
from dataclasses import dataclass
import itertools
import math

from .config import search_limit
from .errors import (
    NotUniversal,
    PreconditionFailed,
    RealizerFound,
    SearchSpaceTooLarge,
    TypeMismatch,
)
from .finrel import FiniteSet, ProductObject, RelMorphism, identity
from .simulator import EvalInstance, Simulator, reachable_behaviors
from .universality import Mode, check_universality


class Iso:
    """A bijection with its inverse, both stored as total functions."""

    def __init__(self, forward, backward=None):
        if not (forward.is_function and forward.is_injective and forward.is_surjective):
            raise TypeMismatch("isomorphism leg must be a bijective total function")
        if backward is None:
            backward = RelMorphism(forward.cod, forward.dom, [(y, x) for x, y in forward.pairs])
        if (forward >> backward) != identity(forward.dom) or (
            backward >> forward
        ) != identity(forward.cod):
            raise TypeMismatch("isomorphism legs are not mutually inverse")
        self.forward = forward
        self.backward = backward

    @classmethod
    def from_pairs(cls, X, Y, pairs):
        return cls(RelMorphism.from_pairs(X, Y, pairs))

    def __eq__(self, other):
        return isinstance(other, Iso) and self.forward == other.forward

    __hash__ = None

    def oriented(self, X, C):
        """Return the iso with ``forward: X -> C``, flipping if needed."""
        if self.forward.dom.factors == (X,) and self.forward.cod.factors == (C,):
            return self
        if self.forward.dom.factors == (C,) and self.forward.cod.factors == (X,):
            return Iso(self.backward, self.forward)
        raise TypeMismatch(
            f"iso is {self.forward.dom.label} -> {self.forward.cod.label}, "
            f"expected {X.name} ~ {C.name}"
        )


def _behaviors_of(x):
    if isinstance(x, EvalInstance):
        return x.behaviors
    if isinstance(x, FiniteSet):
        return x
    raise TypeError(f"expected an instance or a finite set, got {x!r}")


def is_fixed_point_free(g):
    if not g.is_function or g.dom != g.cod:
        return False
    return all(g(*x) != x[0] for x in g.dom)


def find_fixed_point_free(instance_or_behaviors):
    """First fixed-point-free ``g: B -> B``, or ``None`` if every endomap has one.

    Bijections are tried first, in lexicographic order of their value
    tables, so ``{0, 1}`` gives negation and ``{0, 1, 2}`` the 3-cycle
    ``0 -> 1 -> 2 -> 0``.  A fixed-point-free endomap exists iff ``|B| != 1``.
    """
    B = _behaviors_of(instance_or_behaviors)
    xs = B.elements
    for perm in itertools.permutations(xs):
        if all(a != b for a, b in zip(xs, perm)):
            return RelMorphism.from_pairs(B, B, zip(xs, perm))
    return None


@dataclass(frozen=True)
class TraceStep:
    """Why target ``target`` cannot realize the diagonal: they differ at ``context``."""

    target: object
    context: object
    target_value: object
    diagonal_value: object
    program: object = None


@dataclass(frozen=True)
class DiagonalCertificate:
    construction: str
    instance: object
    diagonal: RelMorphism
    endo: RelMorphism
    trace: tuple
    reduction: RelMorphism = None

    def verify(self):
        """Re-check: ``g`` fixed-point-free, ``h`` unreachable, trace consistent."""
        if not is_fixed_point_free(self.endo):
            return False
        if self.diagonal in reachable_behaviors(self.instance):
            return False
        for step in self.trace:
            if self.instance.outcomes(step.target, step.context) != {step.target_value}:
                return False
            if self.diagonal(step.context) != step.diagonal_value:
                return False
            if self.endo(step.target_value) != step.diagonal_value:
                return False
        return {s.target for s in self.trace} == set(self.instance.targets)


def _check_endo(instance, g):
    B = instance.behaviors
    if g.dom.factors != (B,) or g.cod.factors != (B,):
        raise TypeMismatch(f"endo must be {B.name} -> {B.name}")
    if not g.is_function:
        raise PreconditionFailed("endo must be a total function")
    for b in B:
        if g(b) == b:
            raise PreconditionFailed(
                f"endo has the fixed point {b!r}; the diagonal argument needs none"
            )


def _check_functional(instance):
    if not instance.deterministic_total:
        raise PreconditionFailed(
            "diagonal constructions need a deterministic total evaluation"
        )


def _full_reachability(instance):
    rows = {instance.row(t) for t in instance.targets if instance.row(t).is_function}
    return len(rows) == len(instance.behaviors) ** len(instance.contexts)


def diagonal_direct(instance, iso, g):
    """Unreachable ``h(c) = g(eval(iota(c), c))`` from ``iso: T ~ C``."""
    _check_functional(instance)
    if _full_reachability(instance):
        raise PreconditionFailed(
            "every function C -> B is reachable, so T cannot be isomorphic to C"
        )
    _check_endo(instance, g)
    T, C, B = instance.targets, instance.contexts, instance.behaviors
    iso = iso.oriented(T, C)
    iota = iso.backward
    h = RelMorphism.from_function(C, B, lambda c: g(instance.eval(iota(c), c)))
    trace = []
    for t in T:
        if instance.row(t) == h:
            raise RealizerFound(f"target {t!r} realizes the diagonal", target=t)
        c0 = iso.forward(t)
        trace.append(TraceStep(t, c0, instance.eval(t, c0), h(c0)))
    cert = DiagonalCertificate("direct", instance, h, g, tuple(trace))
    if not cert.verify():
        raise AssertionError("diagonal certificate failed re-verification")
    return cert


def diagonal_via_universal(s, iso, g, mode=Mode.STRICT):
    """Unreachable ``h(c) = g(eval(s(iota(c), c)))`` from a universal ``s`` with ``P ~ C``."""
    mode = Mode(mode)
    if mode is not Mode.STRICT:
        raise PreconditionFailed(
            "the indirect diagonal is implemented for strict universality only"
        )
    inst = s.instance
    _check_functional(inst)
    _check_endo(inst, g)
    if not s.morphism.is_function:
        raise PreconditionFailed("the simulator must be a total function P * C -> T * C")
    P, C, B = s.programs, inst.contexts, inst.behaviors
    if len(P) != len(C):
        raise PreconditionFailed(f"no isomorphism P ~ C: |P| = {len(P)}, |C| = {len(C)}")
    iso = iso.oriented(P, C)
    verdict = check_universality(s, mode)
    if not verdict.universal:
        raise NotUniversal(
            f"simulator is not universal (counterexample {verdict.counterexample!r})",
            verdict=verdict,
        )
    r = verdict.witness
    iota = iso.backward
    h = RelMorphism.from_function(C, B, lambda c: g(s.behavior(iota(c))(c)))
    trace = []
    for t in inst.targets:
        if inst.row(t) == h:
            raise RealizerFound(f"target {t!r} realizes the diagonal", target=t)
        p = r(t)
        c0 = iso.forward(p)
        trace.append(TraceStep(t, c0, inst.eval(t, c0), h(c0), program=p))
    cert = DiagonalCertificate("universal", inst, h, g, tuple(trace), reduction=r)
    if not cert.verify():
        raise AssertionError("diagonal certificate failed re-verification")
    return cert


@dataclass(frozen=True)
class CantorReport:
    instance: str
    compilers: int
    context_reductions: int
    simulators: int
    universal_found: int
    endo: RelMorphism
    counterexamples: tuple  # (compiler index, reduction index, target)

    @property
    def holds(self):
        return self.universal_found == 0


def _cantor_shape(instance, limit):
    _check_functional(instance)
    T, C, B = instance.targets, instance.contexts, instance.behaviors
    if len(B) < 2:
        raise PreconditionFailed("need |B| >= 2 for a fixed-point-free endo")
    if not _full_reachability(instance) or len(T) != len(B) ** len(C):
        raise PreconditionFailed("need T = B^C with every function realized exactly once")
    n_comp = len(T) ** len(C)
    n_red = len(C) ** (len(C) ** 2)
    total = n_comp * n_red
    cap = search_limit(limit)
    if total > cap:
        raise SearchSpaceTooLarge(
            f"{total} simulators with P = C exceed the limit {cap}", estimate=total, limit=cap
        )
    return n_comp, n_red


def cantor_simulator(instance, compiler_index, reduction_index):
    """Simulator number ``(i, j)`` in the enumeration used by ``cantor_nogo``."""
    T, C = instance.targets, instance.contexts
    P = FiniteSet("P", C.elements)
    comp = _nth(T.elements, len(C), compiler_index)
    PC = ProductObject([P, C])
    red = _nth(C.elements, len(PC.elements), reduction_index)
    compiler = RelMorphism(P, T, [((p,), (t,)) for p, t in zip(P, comp)])
    reduction = RelMorphism(PC, C, [(x, (c,)) for x, c in zip(PC.elements, red)])
    return Simulator(instance, compiler, reduction, name=f"cantor[{compiler_index},{reduction_index}]")


def _nth(values, length, index):
    out = []
    for _ in range(length):
        index, k = divmod(index, len(values))
        out.append(values[k])
    return tuple(reversed(out))


def cantor_nogo(instance, limit=None):
    """Enumerate every simulator with ``P = C`` and confirm none is universal.

    Universality of each candidate is decided by comparing its family of
    behavior tables with the set of all target rows (not via
    ``check_universality``, so the two can cross-check each other).
    """
    n_comp, n_red = _cantor_shape(instance, limit)
    T, C = instance.targets, instance.contexts
    g = find_fixed_point_free(instance)
    rows = {t: tuple(instance.eval(t, c) for c in C) for t in T}
    PC = tuple(itertools.product(C.elements, C.elements))
    index_of = {x: i for i, x in enumerate(PC)}
    universal = 0
    counterexamples = []
    for i, comp in enumerate(itertools.product(T.elements, repeat=len(C))):
        for j, red in enumerate(itertools.product(C.elements, repeat=len(PC))):
            family = set()
            for p, t in zip(C.elements, comp):
                family.add(tuple(instance.eval(t, red[index_of[(p, c)]]) for c in C))
            missing = next((t for t in T if rows[t] not in family), None)
            if missing is None:
                universal += 1
            else:
                counterexamples.append((i, j, missing))
    return CantorReport(
        instance.name, n_comp, n_red, n_comp * n_red, universal, g, tuple(counterexamples)
    )


def cantor_search_size(instance):
    T, C = instance.targets, instance.contexts
    return math.prod([len(T) ** len(C), len(C) ** (len(C) ** 2)])
