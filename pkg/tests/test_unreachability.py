import random

import pytest
from hypothesis import given, strategies as st

from simuniv.errors import PreconditionFailed, SearchSpaceTooLarge, TypeMismatch
from simuniv.finrel import FiniteSet, RelMorphism, identity
from simuniv.instances.finfun import finfun_instance
from simuniv.scenarios import and_instance, indicator_universal, random_diagonal_instance
from simuniv.simulator import reachable_behaviors
from simuniv.unreachability import (
    Iso,
    cantor_nogo,
    cantor_simulator,
    diagonal_direct,
    diagonal_via_universal,
    find_fixed_point_free,
    is_fixed_point_free,
)
from simuniv.universality import check_universality


def negation():
    B = FiniteSet("B", [0, 1])
    return RelMorphism.from_pairs(B, B, [(0, 1), (1, 0)])


def test_and_example():
    inst, iso = and_instance()
    cert = diagonal_direct(inst, iso, negation())
    assert [cert.diagonal(c) for c in inst.contexts] == [1, 0]
    assert cert.verify()
    rows = {tuple(r(c) for c in inst.contexts) for r in reachable_behaviors(inst)}
    assert (1, 0) not in rows


def test_identity_endo_rejected():
    inst, iso = and_instance()
    with pytest.raises(PreconditionFailed):
        diagonal_direct(inst, iso, identity(inst.behaviors))


def test_iso_orientation_is_normalized():
    inst, iso = and_instance()
    flipped = Iso(iso.backward)
    assert diagonal_direct(inst, flipped, negation()).diagonal == diagonal_direct(inst, iso, negation()).diagonal


def test_iso_must_be_bijective():
    T = FiniteSet("T", [0, 1])
    with pytest.raises(TypeMismatch):
        Iso.from_pairs(T, T, [(0, 0), (1, 0)])


def test_fixed_point_free_search():
    assert find_fixed_point_free(FiniteSet("B", [0, 1])) == negation()
    B3 = FiniteSet("B", [0, 1, 2])
    g = find_fixed_point_free(B3)
    assert [g(b) for b in B3] == [1, 2, 0]
    assert find_fixed_point_free(FiniteSet("B", ["x"])) is None


@given(st.integers(0, 10**6))
def test_random_direct_diagonals_are_unreachable(seed):
    rng = random.Random(seed)
    inst, iso = random_diagonal_instance(rng)
    g = find_fixed_point_free(inst)
    cert = diagonal_direct(inst, iso, g)
    assert is_fixed_point_free(cert.endo)
    table = tuple(cert.diagonal(c) for c in inst.contexts)
    rows = {tuple(inst.eval(t, c) for c in inst.contexts) for t in inst.targets}
    assert table not in rows
    # h = g . eval . (iota, id)
    for c in inst.contexts:
        assert cert.diagonal(c) == g(inst.eval(iso.backward(c), c))


def test_full_reachability_is_refused():
    with pytest.raises(PreconditionFailed):
        diagonal_direct(finfun_instance(1, 2), None, negation())


def test_via_universal():
    sim, iso = indicator_universal()
    cert = diagonal_via_universal(sim, iso, negation())
    assert [cert.diagonal(c) for c in sim.instance.contexts] == [0, 0, 0, 0]
    assert cert.verify()
    assert cert.reduction is not None
    with pytest.raises(PreconditionFailed):
        diagonal_via_universal(sim, iso, negation(), mode="lax")


def test_via_universal_needs_universality():
    from simuniv.simulator import Simulator

    sim, iso = indicator_universal()
    stuck = Simulator(sim.instance, RelMorphism.from_pairs(sim.programs, sim.instance.targets,
                                                         [(p, "e0") for p in sim.programs]),
                      sim.context_reduction)
    from simuniv.errors import NotUniversal

    with pytest.raises(NotUniversal):
        diagonal_via_universal(stuck, iso, negation())


def test_cantor_finfun_2_2():
    inst = finfun_instance(2, 2)
    report = cantor_nogo(inst)
    assert report.simulators == 256 and report.universal_found == 0 and report.holds


def test_cantor_sampled_cross_check():
    inst = finfun_instance(2, 2)
    report = cantor_nogo(inst)
    rng = random.Random(7)
    missing = {(i, j): t for i, j, t in report.counterexamples}
    for _ in range(32):
        i, j = rng.randrange(report.compilers), rng.randrange(report.context_reductions)
        v = check_universality(cantor_simulator(inst, i, j), "strict")
        assert not v.universal
        assert (i, j) in missing


def test_cantor_contrapositive_small_shapes():
    for n, m in [(1, 2), (1, 3), (2, 2)]:
        assert cantor_nogo(finfun_instance(n, m)).holds


def test_cantor_refuses_large_spaces():
    with pytest.raises(SearchSpaceTooLarge):
        cantor_nogo(finfun_instance(3, 2))
