"""Ready-made instances and simulators used by the CLI demos, walkthroughs and tests."""
from dataclasses import dataclass
from importlib import resources
import random

from .atoms import BOTTOM
from .finrel import FiniteSet, ProductObject, RelMorphism
from .instances.finfun import finfun_instance, finfun_singleton
from .instances.spin import ising_system, spin_instance, spin_parameter_simulator
from .instances.turing import RunBudget, binary_strings, execute, tm_run
from .instances.utm import (
    DEFAULT_BOUNDS,
    encode_machine,
    pair,
    stored_profile,
    universal_machine,
)
from .simulator import EvalInstance, Simulator
from .unreachability import Iso

DEFAULT_TM_BUDGET = RunBudget(max_steps=50, max_input_length=3, max_output_length=6)
INTERPRETER = "U"


def data_text(filename):
    return resources.files("simuniv.data").joinpath(filename).read_text(encoding="utf-8")


def load_bundled(filename):
    from .docformat import loads

    return loads(data_text(filename))


def tm_corpus():
    """The bundled machine corpus, in file order."""
    from .docformat import loads

    return list(loads(data_text("tm_corpus.inst")).machines.values())


@dataclass
class TMUniversalSetup:
    """A finitized universal-machine simulator.

    Targets are the corpus machines plus the interpreter ``U``.  Contexts
    are the short inputs plus every ``<encode(t), c>``; corpus targets are
    evaluated only on short inputs, ``U`` only on paired ones.  The
    simulator compiles every program to ``U`` and reduces ``c`` to
    ``<p, c>``, so universality is checked over the corpus targets.
    """

    instance: EvalInstance
    simulator: Simulator
    machines: list
    encoding: RelMorphism  # T -> P, defined on corpus targets
    interpreter: object
    budget: RunBudget
    interpreter_budget: dict  # program -> step budget granted to U
    corpus: tuple


def tm_universal_setup(machines, budget=DEFAULT_TM_BUDGET, bounds=DEFAULT_BOUNDS,
                       profile=None, name="turing-universal"):
    machines = list(machines)
    names = [m.name for m in machines]
    if INTERPRETER in names or len(set(names)) != len(names):
        raise ValueError(f"machine names must be distinct and differ from {INTERPRETER!r}")
    profile = profile or stored_profile()
    u = universal_machine(bounds)
    code = {m.name: encode_machine(m, bounds) for m in machines}
    if len(set(code.values())) != len(code):
        raise ValueError("two corpus machines share an encoding")
    short = list(binary_strings(budget.max_input_length))
    paired = {(p, c): pair(p, c) for p in code.values() for c in short}
    steps_for = {p: profile.budget(len(p), budget.max_steps) for p in code.values()}

    T = FiniteSet("T", names + [INTERPRETER])
    C = FiniteSet("C", short + list(paired.values()))
    P = FiniteSet("P", code.values())
    evals = []
    for m in machines:
        for c in short:
            evals.append(((m.name, c), (tm_run(m, c, budget),)))
    for (p, c), word in paired.items():
        out = execute(u, word, steps_for[p], budget.max_output_length).output
        evals.append(((INTERPRETER, word), (out,)))
    B = FiniteSet("B", {y for _, (y,) in evals} | set(binary_strings(budget.max_output_length)) | {BOTTOM})
    ev = RelMorphism(ProductObject([T, C]), B, evals, check=False)
    inst = EvalInstance(T, C, B, ev, name=name)

    compiler = RelMorphism(P, T, [((p,), (INTERPRETER,)) for p in P])
    reduction = RelMorphism(
        ProductObject([P, C]), C, [((p, c), (paired[(p, c)],)) for (p, c) in paired]
    )
    sim = Simulator(inst, compiler, reduction, name=name)
    encoding = RelMorphism(T, P, [((n,), (code[n],)) for n in names])
    return TMUniversalSetup(inst, sim, machines, encoding, u, budget, steps_for, tuple(names))


@dataclass(frozen=True)
class SweepResult:
    runs: int
    halting: int
    matches: int
    mismatches: tuple  # (machine, input, direct output, interpreter output)


def corpus_sweep(machines, max_input_length=4, max_steps=50, bounds=DEFAULT_BOUNDS,
                 profile=None, u=None):
    """Compare ``U`` on ``<encode(t), c>`` against direct runs of ``t`` that halt."""
    profile = profile or stored_profile()
    u = u or universal_machine(bounds)
    runs = halting = matches = 0
    bad = []
    for m in machines:
        p = encode_machine(m, bounds)
        for c in binary_strings(max_input_length):
            runs += 1
            direct = execute(m, c, max_steps)
            if direct.status != "halted":
                continue
            halting += 1
            sim = execute(u, pair(p, c), profile.budget(len(p), max_steps)).output
            if sim == direct.output:
                matches += 1
            else:
                bad.append((m.name, c, direct.output, sim))
    return SweepResult(runs, halting, matches, tuple(bad))


# ------------------------------------------------------------------ spin


def spin_scenario():
    """Two Ising couplings against a two-spin field model.

    The couplings have spectrum ``{-1, 1}``; the field-only system with
    ``h = (1, 2)`` has the four energies ``-3, -1, 1, 3``.
    """
    ferro = ising_system("J=+1", 2, couplings={(0, 1): 1})
    anti = ising_system("J=-1", 2, couplings={(0, 1): -1})
    field = ising_system("field(1,2)", 2, fields={0: 1, 1: 2})
    inst = spin_instance([ferro, anti, field], name="spin")
    sim = spin_parameter_simulator(inst, {"J=+1": "J=+1", "J=-1": "J=-1"}, name="coupling-only")
    return inst, sim


# ------------------------------------------------------------------ diagonals


def and_instance():
    """Targets ``{0, 1}`` with ``eval = AND`` on contexts ``{0, 1}``."""
    T = FiniteSet("T", [0, 1])
    C = FiniteSet("C", [0, 1])
    B = FiniteSet("B", [0, 1])
    ev = RelMorphism.from_function(ProductObject([T, C]), B, lambda t, c: t & c)
    inst = EvalInstance(T, C, B, ev, name="and")
    iso = Iso.from_pairs(T, C, [(0, 0), (1, 1)])
    return inst, iso


def indicator_universal(n=4):
    """Universal simulator with ``P = C = {0..n-1}`` over indicator targets.

    Target ``e{k}`` outputs 1 exactly at context ``k``; program ``p``
    compiles to ``e{p}`` and leaves the context alone.
    """
    C = FiniteSet("C", range(n))
    T = FiniteSet("T", [f"e{k}" for k in range(n)])
    B = FiniteSet("B", [0, 1])
    ev = RelMorphism.from_function(ProductObject([T, C]), B, lambda t, c: int(t == f"e{c}"))
    inst = EvalInstance(T, C, B, ev, name="indicators")
    P = FiniteSet("P", range(n))
    compiler = RelMorphism(P, T, [((p,), (f"e{p}",)) for p in P])
    reduction = RelMorphism(ProductObject([P, C]), C, [((p, c), (c,)) for p in P for c in C])
    sim = Simulator(inst, compiler, reduction, name="indicator-sim")
    iso = Iso.from_pairs(P, C, [(k, k) for k in range(n)])
    return sim, iso


# ------------------------------------------------------------------ finfun


def finfun_scenario(context_size=2, behavior_size=2):
    """FinFun(n, m) with its trivial simulator, the singleton, and a truncation."""
    from .simulator import trivial_simulator

    inst = finfun_instance(context_size, behavior_size, name=f"finfun({context_size},{behavior_size})")
    trivial = trivial_simulator(inst, name="trivial")
    singleton = finfun_singleton(inst, name="singleton")
    truncated = finfun_singleton(inst, keep=range(len(inst.targets) - 1), name="truncated")
    return inst, trivial, singleton, truncated


# ------------------------------------------------------------------ random


def random_instance(rng, max_targets=4, max_contexts=4, max_behaviors=3, functional=True,
                    name="random"):
    """A small random instance; total deterministic eval unless ``functional`` is False."""
    T = FiniteSet("T", [f"t{i}" for i in range(rng.randint(1, max_targets))])
    C = FiniteSet("C", range(rng.randint(1, max_contexts)))
    B = FiniteSet("B", range(rng.randint(1, max_behaviors)))
    pairs = []
    for t in T:
        for c in C:
            if functional:
                pairs.append(((t, c), (rng.choice(B.elements),)))
            else:
                for b in B:
                    if rng.random() < 0.4:
                        pairs.append(((t, c), (b,)))
    ev = RelMorphism(ProductObject([T, C]), B, pairs)
    return EvalInstance(T, C, B, ev, name=name)


def random_simulator(rng, instance, max_programs=4, total=True, name="random-sim"):
    """Random compiler and context reduction; partial where ``total`` is False."""
    T, C = instance.targets, instance.contexts
    P = FiniteSet("P", [f"p{i}" for i in range(rng.randint(1, max_programs))])
    comp, red = [], []
    for p in P:
        if total or rng.random() < 0.8:
            comp.append(((p,), (rng.choice(T.elements),)))
        for c in C:
            if total or rng.random() < 0.8:
                red.append(((p, c), (rng.choice(C.elements),)))
    compiler = RelMorphism(P, T, comp)
    reduction = RelMorphism(ProductObject([P, C]), C, red)
    return Simulator(instance, compiler, reduction, name=name)


def random_diagonal_instance(rng, size=None, behaviors=None):
    """Random total instance with ``|T| = |C|`` plus a random bijection ``T ~ C``."""
    n = size or rng.randint(1, 4)
    m = behaviors or rng.randint(2, 3)
    T = FiniteSet("T", [f"t{i}" for i in range(n)])
    C = FiniteSet("C", range(n))
    B = FiniteSet("B", range(m))
    ev = RelMorphism.from_function(ProductObject([T, C]), B, lambda t, c: rng.randrange(m))
    inst = EvalInstance(T, C, B, ev, name="random-diagonal")
    image = list(C.elements)
    rng.shuffle(image)
    return inst, Iso.from_pairs(T, C, list(zip(T.elements, image)))


def seeded(seed):
    return random.Random(seed)
