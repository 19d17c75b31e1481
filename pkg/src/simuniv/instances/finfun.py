"""The finite-function family: targets are all functions ``C -> B``."""
import itertools

from ..errors import SearchSpaceTooLarge
from ..finrel import FiniteSet, ProductObject, RelMorphism
from ..simulator import EvalInstance, Simulator

MAX_FUNCTIONS = 64


def finfun_instance(context_size, behavior_size, name=None):
    """``T = B^C`` as value tuples ``(t(0), ..., t(n-1))`` and ``eval(t, c) = t[c]``."""
    count = behavior_size ** context_size
    if count > MAX_FUNCTIONS:
        raise SearchSpaceTooLarge(
            f"|B|^|C| = {count} exceeds {MAX_FUNCTIONS}", estimate=count, limit=MAX_FUNCTIONS
        )
    C = FiniteSet("C", range(context_size))
    B = FiniteSet("B", range(behavior_size))
    T = FiniteSet("T", itertools.product(B.elements, repeat=context_size))
    ev = RelMorphism(
        ProductObject([T, C]), B, [((t, c), (t[c],)) for t in T for c in C], check=False
    )
    return EvalInstance(T, C, B, ev, name=name or f"finfun({context_size},{behavior_size})")


def finfun_singleton(instance, keep=None, name="singleton"):
    """Singleton simulator on a finite-function instance with ``C = B``.

    Programs are indices into ``T``; every program compiles to the identity
    target ``u`` and the context reduction applies the indexed function,
    so program ``p`` behaves like ``T[p]``.  ``keep`` selects a subset of
    program indices.
    """
    T, C = instance.targets, instance.contexts
    if tuple(C) != tuple(instance.behaviors):
        raise ValueError("the singleton construction needs C = B")
    u = tuple(C)
    if u not in T:
        raise ValueError("identity function is not a target")
    indices = range(len(T)) if keep is None else sorted(keep)
    P = FiniteSet("P", indices)
    compiler = RelMorphism(P, T, [((p,), (u,)) for p in P])
    phi = T.elements
    reduction = RelMorphism(
        ProductObject([P, C]), C, [((p, c), (phi[p][c],)) for p in P for c in C]
    )
    return Simulator(instance, compiler, reduction, name=name)
