from fractions import Fraction
import itertools

import pytest
from hypothesis import given, strategies as st

from simuniv.errors import ConfigMismatch, QuantizationOverflow
from simuniv.instances.spin import (
    SpinSystem,
    disjoint_union,
    ising_system,
    relabel_levels,
    spin_energy,
    spin_instance,
    spin_spectrum,
)


@st.composite
def spin_systems(draw, max_spins=3, name="S"):
    levels = draw(st.lists(st.integers(2, 3), min_size=1, max_size=max_spins))
    interactions = []
    for _ in range(draw(st.integers(0, 3))):
        k = draw(st.integers(1, len(levels)))
        sites = draw(st.permutations(range(len(levels))))[:k]
        space = itertools.product(*(range(levels[i]) for i in sites))
        table = {cfg: draw(st.fractions(-3, 3, max_denominator=4)) for cfg in space}
        interactions.append((sites, table))
    return SpinSystem.build(name, levels, interactions)


def test_ising_energies():
    ferro = ising_system("f", 2, couplings={(0, 1): 1})
    assert spin_energy(ferro, (1, 1)) == 1 and spin_energy(ferro, (0, 1)) == -1
    field = ising_system("h", 2, fields={0: 1, 1: 2})
    assert spin_spectrum(field) == [-3, -1, 1, 3]


@given(spin_systems(name="a"), spin_systems(name="b"), st.data())
def test_energy_is_additive_over_disjoint_union(a, b, data):
    u = disjoint_union(a, b)
    ca = data.draw(st.tuples(*(st.integers(0, l - 1) for l in a.levels)))
    cb = data.draw(st.tuples(*(st.integers(0, l - 1) for l in b.levels)))
    assert spin_energy(u, ca + cb) == spin_energy(a, ca) + spin_energy(b, cb)


@given(spin_systems(), st.data())
def test_level_relabeling_keeps_the_spectrum(system, data):
    perms = [data.draw(st.permutations(range(l))) for l in system.levels]
    moved = relabel_levels(system, perms)
    assert spin_spectrum(moved) == spin_spectrum(system)
    cfg = data.draw(st.tuples(*(st.integers(0, l - 1) for l in system.levels)))
    assert spin_energy(moved, tuple(p[v] for p, v in zip(perms, cfg))) == spin_energy(system, cfg)


def test_config_mismatch():
    s = ising_system("s", 2)
    with pytest.raises(ConfigMismatch):
        spin_energy(s, (0, 1, 0))
    with pytest.raises(ConfigMismatch):
        spin_energy(s, (0, 2))


def test_tables_must_be_total():
    with pytest.raises(ValueError):
        SpinSystem.build("bad", [2, 2], [((0, 1), {(0, 0): 1})])
    with pytest.raises(ValueError):
        SpinSystem.build("bad", [2], [((0, 0), {(0, 0): 1, (1, 1): 0, (0, 1): 0, (1, 0): 0})])


def test_heterogeneous_instance_is_partial():
    a = ising_system("two", 2, couplings={(0, 1): 1})
    b = ising_system("three", 3, fields={2: Fraction(1, 2)})
    inst = spin_instance([a, b])
    assert len(inst.contexts) == 4 + 8
    assert inst.outcomes("two", (0, 0, 0)) == frozenset()
    assert inst.outcomes("three", (0, 0, 1)) == {Fraction(1, 2)}
    assert inst.functional and not inst.deterministic_total


def test_quantization_overflow():
    s = ising_system("fine", 1, fields={0: Fraction(1, 1000)})
    with pytest.raises(QuantizationOverflow):
        spin_instance([s], max_denominator=100)
