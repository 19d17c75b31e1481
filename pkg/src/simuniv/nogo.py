"""The spectrum-size no-go criterion.

``t2 >= t`` in the context-reduction preorder when some pre-processing of
contexts lets ``t2`` reproduce ``t``'s behavior.  A valuation that is
monotone along this preorder cannot grow under simulation, so a target
valued above every target in a simulator's compiler image cannot be
simulated by it.
"""
from dataclasses import dataclass, field

from .config import pmap, search_limit
from .errors import PreconditionFailed, SearchSpaceTooLarge, WitnessNotMonotone
from .simulator import compiler_image
from .universality import Mode


def spectrum(instance, t):
    """Set of behavior values ``t`` attains over all contexts."""
    return frozenset(b for _, (b,) in instance.row(t).pairs)


def spectrum_size(instance, t):
    return len(spectrum(instance, t))


@dataclass(frozen=True)
class ContextReductionPreorder:
    instance: object
    mode: Mode
    relation: frozenset
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    def geq(self, t2, t):
        return (t2, t) in self.relation


def _reproduces_strict(instance, t2, t):
    """Pointwise choice of ``phi(c)``: a context where ``t2`` matches ``t`` at ``c``."""
    by_outcome = {}
    for c2 in instance.contexts:
        by_outcome.setdefault(instance.outcomes(t2, c2), c2)
    phi = []
    for c in instance.contexts:
        c2 = by_outcome.get(instance.outcomes(t, c))
        if c2 is None:
            return None
        phi.append(c2)
    return tuple(phi)


def _reproduces_lax(instance, t2, t):
    """With relational ``phi`` it suffices to send each ``c`` to every context."""
    if spectrum(instance, t) <= spectrum(instance, t2):
        everything = tuple(instance.contexts)
        return tuple(everything if instance.outcomes(t, c) else () for c in instance.contexts)
    return None


def build_preorder(instance, mode=Mode.LAX, limit=None, threads=None):
    """Full context-reduction preorder on ``T``.

    Because ``phi`` acts pointwise, a total ``phi`` exists iff one can be
    chosen context by context; the search is ``|T|^2 |C|^2`` rather than
    ``|C|^|C|`` per pair.
    """
    mode = Mode(mode)
    T, C = instance.targets, instance.contexts
    work = len(T) ** 2 * max(1, len(C)) ** 2
    cap = search_limit(limit) * 100
    if work > cap:
        raise SearchSpaceTooLarge(
            f"preorder construction needs ~{work} comparisons (limit {cap})",
            estimate=work, limit=cap,
        )
    test = _reproduces_strict if mode is Mode.STRICT else _reproduces_lax
    pairs = [(t2, t) for t2 in T for t in T]
    found = pmap(lambda pr: test(instance, *pr), pairs, threads)
    relation = frozenset(pr for pr, phi in zip(pairs, found) if phi is not None)
    witnesses = {pr: phi for pr, phi in zip(pairs, found) if phi is not None}
    return ContextReductionPreorder(instance, mode, relation, witnesses)


@dataclass(frozen=True)
class MonotoneWitness:
    name: str
    valuation: dict

    def __call__(self, t):
        return self.valuation[t]


def spectrum_witness(instance):
    return MonotoneWitness(
        "spectrum-size", {t: spectrum_size(instance, t) for t in instance.targets}
    )


def monotonicity_violation(w, preorder):
    """First pair ``(t2, t)`` with ``t2 >= t`` but ``w(t2) < w(t)``, else None."""
    T = preorder.instance.targets
    for t2 in T:
        for t in T:
            if preorder.geq(t2, t) and w(t2) < w(t):
                return (t2, t)
    return None


@dataclass(frozen=True)
class NoGoCertificate:
    simulator: object
    witness: str
    mode: Mode
    max_over_image: int
    beating_target: object
    beating_value: int
    image_valuations: tuple


@dataclass(frozen=True)
class Inconclusive:
    simulator: object
    witness: str
    mode: Mode
    max_over_image: object
    image_valuations: tuple
    reason: str


def check_nogo(s, w, mode=Mode.LAX, preorder=None):
    """Certify non-universality of ``s`` from a monotone witness, or give up.

    The criterion never proves universality.  Requires a functional
    compiler; strict mode additionally needs total compiler and context
    reduction, since only then does strict simulation land inside the
    strict preorder.
    """
    mode = Mode(mode)
    inst = s.instance
    if not s.compiler.is_partial_function:
        raise PreconditionFailed("the no-go criterion needs a function-valued compiler")
    if mode is Mode.STRICT and not (s.compiler.is_function and s.context_reduction.is_function):
        raise PreconditionFailed(
            "strict-mode no-go needs total compiler and context reduction; use lax mode"
        )
    missing = [t for t in inst.targets if t not in w.valuation]
    if missing:
        raise PreconditionFailed(f"witness {w.name!r} has no value for {missing[0]!r}")
    if preorder is None:
        preorder = build_preorder(inst, mode)
    bad = monotonicity_violation(w, preorder)
    if bad is not None:
        t2, t = bad
        raise WitnessNotMonotone(
            f"witness {w.name!r} is not order-preserving: {t2!r} >= {t!r} "
            f"but {w(t2)} < {w(t)}",
            pair=bad,
        )
    image = [t for t in inst.targets if t in compiler_image(s)]
    table = tuple((t, w(t)) for t in image)
    if not image:
        return Inconclusive(s.name, w.name, mode, None, table, "compiler image is empty")
    s_max = max(v for _, v in table)
    for t in inst.targets:
        if w(t) > s_max:
            return NoGoCertificate(s.name, w.name, mode, s_max, t, w(t), table)
    return Inconclusive(
        s.name, w.name, mode, s_max, table, "no target is valued above the image maximum"
    )
