"""Simulator morphisms and the parsimony preorder.

A morphism ``s -> s2`` is a pair ``(r, q)`` with ``r: P2 -> P`` a total
function on programs and ``q: T*C -> T*C`` a post-processing such that

  (i)  ``s2 = (r (x) id_C) ; s ; q``            (factorization)
  (ii) ``behavior(s2, p2)`` equals (strict) or contains (lax)
       ``behavior(s, r(p2))`` for every program ``p2``   (behavior condition)

``s2`` is at least as parsimonious as ``s`` when such a morphism exists.
"""
from dataclasses import dataclass, field
from enum import Enum
import itertools
import math

from .config import search_limit
from .errors import NotUniversal, SearchSpaceTooLarge, TypeMismatch
from .finrel import ProductObject, RelMorphism, identity, tensor
from .universality import Mode, admits, check_universality

CONDITION_SET = "factorization+behavior"


@dataclass(frozen=True)
class SimMorphism:
    source: object
    target: object
    program_pre: RelMorphism
    post_proc: RelMorphism

    def program_map(self):
        return {p2: p for (p2,), ys in self.program_pre.table() for (p,) in ys}


@dataclass(frozen=True)
class NonExistence:
    """Exhaustion record: no morphism ``source -> target`` exists."""

    source: object
    target: object
    mode: Mode
    full_space: int
    behavior_compatible: int
    enumerated: int
    reason: str
    blocking_program: object = None
    fiber_failures: tuple = ()
    conditions: str = CONDITION_SET


def _check_types(s, s2):
    if s.instance is not s2.instance and s.instance != s2.instance:
        raise TypeMismatch("simulator morphisms need both simulators on the same instance")


def identity_morphism(s):
    TC = ProductObject([s.instance.targets, s.instance.contexts])
    return SimMorphism(s, s, identity(s.programs), identity(TC))


def compose_morphisms(m1, m2):
    """``m1: s -> s2`` followed by ``m2: s2 -> s3``."""
    if m1.target != m2.source:
        raise TypeMismatch("morphisms are not composable")
    return SimMorphism(
        m1.source,
        m2.target,
        m2.program_pre >> m1.program_pre,
        m1.post_proc >> m2.post_proc,
    )


def verify_morphism(m, mode=Mode.STRICT):
    """Check factorization and the behavior condition by enumeration."""
    s, s2 = m.source, m.target
    _check_types(s, s2)
    inst = s.instance
    TC = ProductObject([inst.targets, inst.contexts])
    r, q = m.program_pre, m.post_proc
    if r.dom.factors != (s2.programs,) or r.cod.factors != (s.programs,):
        raise TypeMismatch(
            f"program pre-processing is {r.dom.label} -> {r.cod.label}, "
            f"expected {s2.programs.name} -> {s.programs.name}"
        )
    if q.dom != TC or q.cod != TC:
        raise TypeMismatch(f"post-processing must be {TC.label} -> {TC.label}")
    if not r.is_function:
        return False
    if (tensor(r, identity(inst.contexts)) >> s.morphism >> q) != s2.morphism:
        return False
    return all(
        admits(s2.behavior(p2), s.behavior(r(p2)), mode) for p2 in s2.programs
    )


def _fiber_residual(s, s2, choice):
    """Largest ``q`` on the image of ``(r (x) id) ; s`` with ``q . M <= s2``.

    Returns ``(q_on_image, failure)``; ``failure`` is ``None`` when the
    residual reproduces ``s2`` exactly, otherwise the first offending
    ``(p2, c)`` with the fiber data that breaks it.
    """
    C = s.instance.contexts
    M = {}
    hits = {}
    for p2, p in zip(s2.programs, choice):
        for c in C:
            xs = s.run(p, c)
            M[(p2, c)] = xs
            want = s2.run(p2, c)
            for x in xs:
                if x in hits:
                    hits[x] &= want
                else:
                    hits[x] = set(want)
    for key, xs in M.items():
        got = set()
        for x in xs:
            got |= hits[x]
        if got != s2.run(*key):
            return hits, (key, tuple(sorted(xs)))
    return hits, None


def find_morphism(s, s2, mode=Mode.STRICT, limit=None):
    """First morphism ``s -> s2`` in canonical order, or a ``NonExistence`` record.

    Program maps are restricted to behavior-compatible choices; for each,
    the post-processing exists iff the fiber residual reproduces ``s2``.
    Raises ``SearchSpaceTooLarge`` when the compatible space exceeds ``limit``.
    """
    mode = Mode(mode)
    _check_types(s, s2)
    inst = s.instance
    TC = ProductObject([inst.targets, inst.contexts])
    programs2 = s2.programs.elements
    full = len(s.programs) ** len(programs2)
    candidates = []
    for p2 in programs2:
        b2 = s2.behavior(p2)
        cands = tuple(p for p in s.programs if admits(b2, s.behavior(p), mode))
        if not cands:
            return NonExistence(
                s.name, s2.name, mode, full, 0, 0,
                "no program of the source matches the behavior of a target program",
                blocking_program=p2,
            )
        candidates.append(cands)
    compatible = math.prod(len(c) for c in candidates)
    cap = search_limit(limit)
    if compatible > cap:
        raise SearchSpaceTooLarge(
            f"{compatible} behavior-compatible program maps exceed the limit {cap}",
            estimate=compatible, limit=cap,
        )
    failures = []
    enumerated = 0
    for choice in itertools.product(*candidates):
        enumerated += 1
        hits, failure = _fiber_residual(s, s2, choice)
        if failure is not None:
            failures.append((choice, failure))
            continue
        r = RelMorphism(s2.programs, s.programs, [((p2,), (p,)) for p2, p in zip(programs2, choice)])
        pairs = [(x, y) for x, ys in hits.items() for y in ys]
        pairs += [(x, x) for x in TC if x not in hits]
        m = SimMorphism(s, s2, r, RelMorphism(TC, TC, pairs, check=False))
        if not verify_morphism(m, mode):
            raise AssertionError("morphism search produced a witness that fails verification")
        return m
    return NonExistence(
        s.name, s2.name, mode, full, compatible, enumerated,
        "post-processing cannot be consistent on a fiber for any compatible program map",
        fiber_failures=tuple(failures),
    )


@dataclass(frozen=True)
class NaiveResult:
    found: SimMorphism = None
    program_maps: int = 0
    behavior_ok: int = 0
    post_nodes: int = 0


def naive_morphism_search(s, s2, mode=Mode.STRICT):
    """Independent oracle for ``find_morphism`` on small instances.

    Walks every total program map ``P2 -> P`` and checks the behavior
    condition through the composite ``(r (x) id) ; s ; eval``; for survivors
    it backtracks over function-valued post-processings on the image, one
    point at a time, checking each factorization constraint once all its
    points are assigned.  Only functional ``q`` are explored, which loses
    nothing when ``s2`` is a function.
    """
    mode = Mode(mode)
    inst = s.instance
    C = inst.contexts
    TC = ProductObject([inst.targets, inst.contexts])
    values = TC.elements
    target_behavior = s2.morphism >> inst.eval
    programs2 = s2.programs.elements
    result = NaiveResult()
    maps = ok = nodes = 0
    for choice in itertools.product(s.programs.elements, repeat=len(programs2)):
        maps += 1
        r = RelMorphism(s2.programs, s.programs, [((p2,), (p,)) for p2, p in zip(programs2, choice)], check=False)
        reduced = tensor(r, identity(C)) >> s.morphism
        got_behavior = reduced >> inst.eval
        good = True
        for p2 in programs2:
            a = RelMorphism(C, inst.behaviors, [((c,), y) for c in C for y in target_behavior.image((p2, c))], check=False)
            b = RelMorphism(C, inst.behaviors, [((c,), y) for c in C for y in got_behavior.image((p2, c))], check=False)
            if not admits(a, b, mode):
                good = False
                break
        if not good:
            continue
        ok += 1
        points = sorted({x for _, x in reduced.pairs}, key=TC.elements.index)
        position = {x: i for i, x in enumerate(points)}
        constraints = {}
        for key in itertools.product(programs2, C.elements):
            xs = reduced.image(key)
            last = max((position[x] for x in xs), default=-1)
            constraints.setdefault(last, []).append((key, xs))
        if any(s2.run(*key) for key, _ in constraints.get(-1, [])):
            continue
        assignment = {}

        def extend(i):
            nonlocal nodes
            if i == len(points):
                return True
            for v in values:
                nodes += 1
                assignment[points[i]] = v
                if all({assignment[x] for x in xs} == s2.run(*key) for key, xs in constraints.get(i, [])):
                    if extend(i + 1):
                        return True
            del assignment[points[i]]
            return False

        if extend(0):
            pairs = [(x, assignment[x]) for x in points] + [(x, x) for x in TC if x not in assignment]
            m = SimMorphism(s, s2, r, RelMorphism(TC, TC, pairs, check=False))
            return NaiveResult(m, maps, ok, nodes)
    return NaiveResult(None, maps, ok, nodes)


class Relation(str, Enum):
    AT_LEAST_FORWARD = "s' >= s"
    AT_LEAST_BACKWARD = "s >= s'"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"
    STRICT_FORWARD = "strict(s' > s)"
    STRICT_BACKWARD = "strict(s > s')"


@dataclass(frozen=True)
class ParsimonyVerdict:
    relation: Relation
    mode: Mode
    forward: object  # s -> s2: SimMorphism, NonExistence, or None if undetermined
    backward: object
    conditions: str = CONDITION_SET
    notes: tuple = field(default_factory=tuple)


def _search(s, s2, mode, limit):
    try:
        return find_morphism(s, s2, mode, limit)
    except SearchSpaceTooLarge:
        return None


def compare_parsimony(s, s2, mode=Mode.STRICT, limit=None):
    """Classify ``(s, s2)`` in the parsimony preorder.

    Both must be universal in ``mode``.  Strictness needs a found morphism
    one way and an exhaustion record the other way; an undetermined
    direction (search limit hit) yields the non-strict classes.
    """
    mode = Mode(mode)
    for sim in (s, s2):
        v = check_universality(sim, mode)
        if not v.universal:
            raise NotUniversal(
                f"simulator {sim.name!r} is not {mode.value}-universal "
                f"(counterexample target {v.counterexample!r})",
                verdict=v,
            )
    fwd = _search(s, s2, mode, limit)
    bwd = _search(s2, s, mode, limit)
    f_ok, b_ok = isinstance(fwd, SimMorphism), isinstance(bwd, SimMorphism)
    f_no, b_no = isinstance(fwd, NonExistence), isinstance(bwd, NonExistence)
    if f_ok and b_ok:
        rel = Relation.EQUIVALENT
    elif f_ok and b_no:
        rel = Relation.STRICT_FORWARD
    elif b_ok and f_no:
        rel = Relation.STRICT_BACKWARD
    elif f_ok:
        rel = Relation.AT_LEAST_FORWARD
    elif b_ok:
        rel = Relation.AT_LEAST_BACKWARD
    elif f_no and b_no:
        rel = Relation.INCOMPARABLE
    else:
        raise SearchSpaceTooLarge("neither direction could be decided within the search limit")
    return ParsimonyVerdict(rel, mode, fwd, bwd)
