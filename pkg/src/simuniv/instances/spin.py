"""Finite spin systems with exact (rational) energies."""
from dataclasses import dataclass
from fractions import Fraction
import itertools

from ..errors import ConfigMismatch, QuantizationOverflow
from ..finrel import FiniteSet, ProductObject, RelMorphism
from ..simulator import EvalInstance, Simulator


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Interaction:
    """Local energy table on the spins ``sites``; total over their configurations."""

    sites: tuple
    table: tuple  # ((local configuration, energy), ...) in configuration order

    def energy(self, cfg):
        local = tuple(cfg[i] for i in self.sites)
        return dict(self.table)[local]


@dataclass(frozen=True)
class SpinSystem:
    name: str
    levels: tuple
    interactions: tuple = ()

    def __post_init__(self):
        if not self.levels or any(int(l) < 2 for l in self.levels):
            raise ValueError(f"{self.name}: every spin needs at least 2 levels")
        n = len(self.levels)
        for inter in self.interactions:
            if len(set(inter.sites)) != len(inter.sites):
                raise ValueError(f"{self.name}: duplicate spin in interaction {inter.sites}")
            if any(not 0 <= i < n for i in inter.sites):
                raise ValueError(f"{self.name}: interaction {inter.sites} out of range")
            space = set(itertools.product(*(range(self.levels[i]) for i in inter.sites)))
            keys = [k for k, _ in inter.table]
            if set(keys) != space or len(keys) != len(space):
                raise ValueError(
                    f"{self.name}: table on {inter.sites} must cover each local configuration once"
                )

    @classmethod
    def build(cls, name, levels, interactions=()):
        """``interactions``: iterable of ``(sites, {local_cfg: energy})``."""
        built = []
        for sites, table in interactions:
            sites = tuple(sites)
            rows = tuple(sorted((tuple(k), _frac(v)) for k, v in dict(table).items()))
            built.append(Interaction(sites, rows))
        return cls(name, tuple(int(l) for l in levels), tuple(built))

    @property
    def spin_count(self):
        return len(self.levels)

    def configurations(self):
        return itertools.product(*(range(l) for l in self.levels))

    def accepts(self, cfg):
        return len(cfg) == len(self.levels) and all(
            isinstance(v, int) and 0 <= v < l for v, l in zip(cfg, self.levels)
        )


def sigma(level):
    """Ising sign of a binary level: 0 -> -1, 1 -> +1."""
    return 2 * level - 1


def ising_system(name, n, couplings=None, fields=None):
    """Binary spins with energy ``sum J_ij s_i s_j + sum h_i s_i``."""
    interactions = []
    for (i, j), J in sorted((couplings or {}).items()):
        table = {(a, b): _frac(J) * sigma(a) * sigma(b) for a in (0, 1) for b in (0, 1)}
        interactions.append(((i, j), table))
    for i, h in sorted((fields or {}).items()):
        interactions.append(((i,), {(a,): _frac(h) * sigma(a) for a in (0, 1)}))
    return SpinSystem.build(name, (2,) * n, interactions)


def spin_energy(system, cfg):
    cfg = tuple(cfg)
    if not system.accepts(cfg):
        raise ConfigMismatch(
            f"configuration {cfg!r} does not match {system.name} with levels {system.levels}"
        )
    return sum((inter.energy(cfg) for inter in system.interactions), Fraction(0))


def spin_spectrum(system):
    return sorted({spin_energy(system, c) for c in system.configurations()})


def disjoint_union(a, b, name=None):
    shift = a.spin_count
    moved = tuple(
        Interaction(tuple(i + shift for i in inter.sites), inter.table)
        for inter in b.interactions
    )
    return SpinSystem(name or f"{a.name}+{b.name}", a.levels + b.levels, a.interactions + moved)


def relabel_levels(system, perms):
    """Apply a per-spin permutation of levels (``perms[i][old] = new``)."""
    out = []
    for inter in system.interactions:
        rows = tuple(
            sorted(
                (tuple(perms[i][v] for i, v in zip(inter.sites, k)), e)
                for k, e in inter.table
            )
        )
        out.append(Interaction(inter.sites, rows))
    return SpinSystem(system.name, system.levels, tuple(out))


def spin_instance(systems, max_denominator=10**6, name="spin"):
    """Targets are system names; contexts are configurations of every shape present.

    ``eval(t, c)`` is the energy of system ``t`` in configuration ``c`` and is
    empty when ``c`` does not fit ``t``.
    """
    systems = list(systems)
    names = [s.name for s in systems]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate system names: {names}")
    shapes = sorted({s.levels for s in systems})
    configs = sorted({c for shape in shapes for c in itertools.product(*(range(l) for l in shape))})
    pairs = []
    energies = set()
    for s in systems:
        for c in configs:
            if s.accepts(c):
                e = spin_energy(s, c)
                if e.denominator > max_denominator:
                    raise QuantizationOverflow(
                        f"energy {e} of {s.name} at {c} needs denominator > {max_denominator}"
                    )
                energies.add(e)
                pairs.append(((s.name, c), (e,)))
    T = FiniteSet("T", names)
    C = FiniteSet("C", configs)
    B = FiniteSet("B", energies)
    ev = RelMorphism(ProductObject([T, C]), B, pairs, check=False)
    return EvalInstance(T, C, B, ev, name=name)


def spin_parameter_simulator(instance, programs, name="spin-model"):
    """Programs are parameter records naming a system; contexts pass through unchanged.

    ``programs`` maps program label -> system name.  The context reduction is
    defined only where the configuration fits the compiled system.
    """
    P = FiniteSet("P", programs)
    compiler = RelMorphism(P, instance.targets, [((p,), (programs[p],)) for p in P])
    reduction = RelMorphism(
        ProductObject([P, instance.contexts]),
        instance.contexts,
        [
            ((p, c), (c,))
            for p in P
            for c in instance.contexts
            if instance.outcomes(programs[p], c)
        ],
    )
    return Simulator(instance, compiler, reduction, name=name)
