"""Deciding universality by searching for a reduction ``T -> P``.

A simulator is universal when some reduction makes its behavior match the
trivial simulator's: strictly (equal relations) or laxly (the simulator's
behavior contains the target's).
"""
from dataclasses import dataclass
from enum import Enum

from .config import pmap
from .errors import TypeMismatch
from .finrel import RelMorphism, identity, tensor


class Mode(str, Enum):
    STRICT = "strict"
    LAX = "lax"


def admits(candidate, required, mode):
    """Does behavior ``candidate`` stand in for ``required`` under ``mode``?"""
    if Mode(mode) is Mode.STRICT:
        return candidate.pairs == required.pairs
    return required.pairs <= candidate.pairs


def admissible_programs(s, t, mode=Mode.STRICT):
    """Programs whose behavior equals (strict) or contains (lax) ``eval(t, -)``."""
    row = s.instance.row(t)
    return tuple(p for p in s.programs if admits(s.behavior(p), row, mode))


@dataclass(frozen=True)
class UniversalityVerdict:
    universal: bool
    mode: Mode
    witness: RelMorphism = None
    counterexample: object = None
    admissible: tuple = ()
    targets_checked: tuple = ()

    def witness_table(self):
        if self.witness is None:
            return []
        return [(t, p) for (t,), ys in self.witness.table() for (p,) in ys]


def _targets(s, targets):
    T = s.instance.targets
    if targets is None:
        return tuple(T)
    chosen = set(targets)
    unknown = chosen - set(T)
    if unknown:
        raise TypeMismatch(f"not targets of the instance: {sorted(map(repr, unknown))}")
    return tuple(t for t in T if t in chosen)


def check_universality(s, mode=Mode.STRICT, targets=None, threads=None):
    """Search for a reduction; return a verdict with witness or counterexample.

    ``targets`` restricts the check to a subset of ``T`` (universality
    relative to that subset).  The witness sends each target to its least
    admissible program and is re-verified before it is returned.
    """
    mode = Mode(mode)
    ts = _targets(s, targets)
    s.behaviors  # fill the cache before any worker threads start
    table = tuple(pmap(lambda t: (t, admissible_programs(s, t, mode)), ts, threads))
    for t, progs in table:
        if not progs:
            return UniversalityVerdict(False, mode, None, t, table, ts)
    r = RelMorphism(
        s.instance.targets, s.programs, [((t,), (progs[0],)) for t, progs in table]
    )
    if not verify_reduction(s, r, mode, targets=ts):
        raise AssertionError("reduction search produced a witness that fails verification")
    return UniversalityVerdict(True, mode, r, None, table, ts)


def verify_reduction(s, r, mode=Mode.STRICT, targets=None):
    """Independently re-check ``eval . s . (r (x) id_C)`` against ``eval``.

    Strict mode needs ``r`` to be a function on the checked targets and the
    composite to equal ``eval`` there; lax mode accepts any relation whose
    composite contains ``eval``.
    """
    mode = Mode(mode)
    inst = s.instance
    if r.dom.factors != (inst.targets,) or r.cod.factors != (s.programs,):
        raise TypeMismatch(
            f"reduction is {r.dom.label} -> {r.cod.label}, expected "
            f"{inst.targets.name} -> {s.programs.name}"
        )
    ts = _targets(s, targets)
    if mode is Mode.STRICT and any(len(r.image((t,))) != 1 for t in ts):
        return False
    wanted = set(ts)
    restricted = RelMorphism(
        r.dom, r.cod, [(x, y) for x, y in r.pairs if x[0] in wanted], check=False
    )
    composite = tensor(restricted, identity(inst.contexts)) >> s.morphism >> inst.eval
    for t in ts:
        for c in inst.contexts:
            got = composite.image((t, c))
            want = inst.eval.image((t, c))
            if mode is Mode.STRICT and got != want:
                return False
            if mode is Mode.LAX and not want <= got:
                return False
    return True
