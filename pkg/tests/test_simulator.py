import threading

import pytest
from hypothesis import given, strategies as st

from simuniv.errors import TypeMismatch, UnknownProgram
from simuniv.finrel import FiniteSet, ProductObject, RelMorphism, copy, identity, tensor
from simuniv.simulator import (
    Simulator,
    compiler_image,
    reachable_behaviors,
    trivial_simulator,
)
from strategies import eval_instances, simulators


def composite_behavior(s, p):
    """Oracle: behavior(p) read off the explicit composite (s ; eval) at p."""
    full = s.morphism >> s.instance.eval
    C, B = s.instance.contexts, s.instance.behaviors
    return RelMorphism(C, B, [((c,), y) for (p2, c), y in full.pairs if p2 == p])


@given(st.data())
def test_behavior_equals_composite(data):
    inst = data.draw(eval_instances(total=data.draw(st.booleans())))
    s = data.draw(simulators(inst, total=data.draw(st.booleans())))
    for p in s.programs:
        assert s.behavior(p) == composite_behavior(s, p)


@given(st.data())
def test_assembled_morphism_is_copy_then_legs(data):
    inst = data.draw(eval_instances())
    s = data.draw(simulators(inst, total=False))
    P, C = s.programs, inst.contexts
    expected = tensor(copy(P), identity(C)) >> tensor(s.compiler, s.context_reduction)
    assert s.morphism == expected
    # the target coordinate depends on p only
    for (p, c), (t, _) in s.morphism.pairs:
        assert (t,) in s.compiler.image((p,))


@given(eval_instances(total=False))
def test_trivial_behaviors_are_rows(inst):
    s = trivial_simulator(inst)
    for t in inst.targets:
        assert s.behavior(t) == inst.row(t)


@given(st.data())
def test_compiler_image_and_surjectivity(data):
    inst = data.draw(eval_instances())
    s = data.draw(simulators(inst))
    image = compiler_image(s)
    assert image <= set(inst.targets)
    assert (image == set(inst.targets)) == s.compiler.is_surjective


@given(eval_instances())
def test_reachable_behaviors_bound(inst):
    n = len(reachable_behaviors(inst))
    assert n <= min(len(inst.targets), len(inst.behaviors) ** len(inst.contexts))


def test_type_mismatch_lists_problems():
    T, C, B = FiniteSet("T", [0]), FiniteSet("C", [0, 1]), FiniteSet("B", [0])
    from simuniv.simulator import EvalInstance

    inst = EvalInstance(T, C, B, RelMorphism(ProductObject([T, C]), B, []))
    P = FiniteSet("P", ["a"])
    with pytest.raises(TypeMismatch, match="compiler cod"):
        Simulator(inst, RelMorphism(P, C, []), RelMorphism(ProductObject([P, C]), C, []))
    with pytest.raises(TypeMismatch, match="context reduction dom"):
        Simulator(inst, RelMorphism(P, T, []), RelMorphism(ProductObject([P, T]), C, []))


def test_unknown_program():
    from simuniv.instances.finfun import finfun_instance

    s = trivial_simulator(finfun_instance(1, 2))
    with pytest.raises(UnknownProgram):
        s.behavior("nope")


def test_behaviors_safe_under_concurrent_first_access():
    from simuniv.instances.finfun import finfun_instance

    inst = finfun_instance(2, 3)
    s = trivial_simulator(inst)
    results = []

    def work():
        results.append({p: s.behavior(p) for p in s.programs})

    threads = [threading.Thread(target=work) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(r == results[0] for r in results)
