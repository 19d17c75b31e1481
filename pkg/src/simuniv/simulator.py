"""Evaluation instances and simulators (compiler + context reduction)."""
from .errors import TypeMismatch, UnknownProgram
from .finrel import (
    FiniteSet,
    ProductObject,
    RelMorphism,
    as_object,
    copy,
    identity,
    projection,
    tensor,
)


class EvalInstance:
    """Targets ``T``, contexts ``C``, behaviors ``B`` and ``eval: T * C -> B``.

    ``eval`` may be partial or multi-valued; ``functional`` reports whether
    each target's row is a partial function.
    """

    def __init__(self, targets, contexts, behaviors, eval, name=None):
        if eval.dom != ProductObject([targets, contexts]) or eval.cod != as_object(behaviors):
            raise TypeMismatch(
                f"eval is {eval.dom.label} -> {eval.cod.label}, expected "
                f"{targets.name} * {contexts.name} -> {behaviors.name}"
            )
        self.targets = targets
        self.contexts = contexts
        self.behaviors = behaviors
        self.eval = eval
        self.name = name
        self._rows = {}

    @property
    def functional(self):
        return self.eval.is_partial_function

    @property
    def deterministic_total(self):
        return self.eval.is_function

    def outcomes(self, t, c):
        return frozenset(b for (b,) in self.eval.image((t, c)))

    def row(self, t):
        """``eval(t, -)`` as a relation ``C -> B``."""
        row = self._rows.get(t)
        if row is None:
            if t not in self.targets:
                raise KeyError(f"{t!r} is not a target")
            row = RelMorphism(
                self.contexts,
                self.behaviors,
                [((c,), y) for c in self.contexts for y in self.eval.image((t, c))],
                check=False,
            )
            self._rows[t] = row
        return row

    def __eq__(self, other):
        return (
            isinstance(other, EvalInstance)
            and self.targets == other.targets
            and self.contexts == other.contexts
            and self.behaviors == other.behaviors
            and self.eval == other.eval
        )

    def __hash__(self):
        return hash(self.eval)

    def __repr__(self):
        return (
            f"EvalInstance({self.name!r}, |T|={len(self.targets)}, "
            f"|C|={len(self.contexts)}, |B|={len(self.behaviors)})"
        )


class Simulator:
    """A program set with a compiler ``P -> T`` and context reduction ``P * C -> C``.

    The assembled morphism ``P * C -> T * C`` copies the program into both
    legs: ``(copy_P (x) id_C) ; (compiler (x) context_reduction)``.
    """

    def __init__(self, instance, compiler, context_reduction, name=None):
        T, C = instance.targets, instance.contexts
        problems = []
        if compiler.dom.arity != 1:
            problems.append(f"compiler dom is {compiler.dom.label}, expected a program set P")
        if compiler.cod != as_object(T):
            problems.append(f"compiler cod is {compiler.cod.label}, expected {T.name}")
        if not problems:
            P = compiler.dom.factors[0]
            if context_reduction.dom != ProductObject([P, C]):
                problems.append(
                    f"context reduction dom is {context_reduction.dom.label}, "
                    f"expected {P.name} * {C.name}"
                )
            if context_reduction.cod != as_object(C):
                problems.append(
                    f"context reduction cod is {context_reduction.cod.label}, expected {C.name}"
                )
        if problems:
            raise TypeMismatch("; ".join(problems))
        self.instance = instance
        self.programs = compiler.dom.factors[0]
        self.compiler = compiler
        self.context_reduction = context_reduction
        self.name = name
        self._morphism = None
        self._behaviors = None

    @property
    def morphism(self):
        if self._morphism is None:
            P, C = self.programs, self.instance.contexts
            self._morphism = tensor(copy(P), identity(C)) >> tensor(
                self.compiler, self.context_reduction
            )
        return self._morphism

    def run(self, p, c):
        """Set of ``(t, c')`` pairs the simulator relates ``(p, c)`` to."""
        return self.morphism.image((p, c))

    def _compute_behaviors(self):
        inst = self.instance
        out = {}
        for p in self.programs:
            targets = [t for (t,) in self.compiler.image((p,))]
            pairs = []
            for c in inst.contexts:
                for (c2,) in self.context_reduction.image((p, c)):
                    for t in targets:
                        for b in inst.eval.image((t, c2)):
                            pairs.append(((c,), b))
            out[p] = RelMorphism(inst.contexts, inst.behaviors, pairs, check=False)
        return out

    @property
    def behaviors(self):
        """Mapping program -> behavior relation ``C -> B`` (computed once)."""
        if self._behaviors is None:
            self._behaviors = self._compute_behaviors()
        return self._behaviors

    def behavior(self, p):
        try:
            return self.behaviors[p]
        except KeyError:
            raise UnknownProgram(f"{p!r} is not a program of {self.name or 'simulator'}") from None

    def __eq__(self, other):
        return (
            isinstance(other, Simulator)
            and self.instance == other.instance
            and self.compiler == other.compiler
            and self.context_reduction == other.context_reduction
        )

    def __hash__(self):
        return hash((self.compiler, self.context_reduction))

    def __repr__(self):
        return f"Simulator({self.name!r}, |P|={len(self.programs)})"


def assemble_simulator(instance, compiler, context_reduction, name=None):
    return Simulator(instance, compiler, context_reduction, name=name)


def trivial_simulator(instance, name="trivial"):
    """Programs are the targets; compiler ``id_T``; context reduction ``(t, c) -> c``."""
    T, C = instance.targets, instance.contexts
    P = FiniteSet(f"P_{T.name}", T.elements)
    compiler = RelMorphism(P, T, [((t,), (t,)) for t in T], check=False)
    reduction = projection(ProductObject([P, C]), [1])
    return Simulator(instance, compiler, reduction, name=name)


def compiler_image(s):
    return frozenset(t for _, (t,) in s.compiler.pairs)


def behavior(s, p):
    return s.behavior(p)


def reachable_behaviors(instance):
    """``{eval(t, -) : t in T}`` as a set of relations ``C -> B``."""
    return frozenset(instance.row(t) for t in instance.targets)


def relabel_programs(s, mapping, name=None):
    """Re-code programs through the bijection ``mapping`` (old -> new)."""
    new = FiniteSet(s.programs.name, [mapping[p] for p in s.programs])
    if len(new) != len(s.programs):
        raise ValueError("relabeling must be injective")
    compiler = RelMorphism(
        new, s.compiler.cod, [((mapping[p],), y) for (p,), y in s.compiler.pairs]
    )
    C = s.instance.contexts
    reduction = RelMorphism(
        ProductObject([new, C]),
        C,
        [((mapping[p], c), y) for (p, c), y in s.context_reduction.pairs],
    )
    return Simulator(s.instance, compiler, reduction, name=name or s.name)

