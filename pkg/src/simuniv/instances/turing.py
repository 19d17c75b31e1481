"""Single-tape Turing machines run under a step budget.

The tape is two-way infinite and starts with the input written from cell 0,
where the head begins.  On halting, the output is the maximal non-blank
word containing the head cell; if the head sits on a blank, the word that
starts immediately to its right (possibly empty).  Runs that exhaust the
step budget, get stuck in a non-halting state, or produce an over-long
output evaluate to ``BOTTOM``.
"""
from dataclasses import dataclass
import itertools

from ..atoms import BOTTOM
from ..errors import InputTooLong
from ..finrel import FiniteSet, ProductObject, RelMorphism
from ..simulator import EvalInstance

BLANK = "_"
BINARY = ("0", "1", BLANK)
MOVES = {"L": -1, "R": 1, "S": 0}


class TuringMachine:
    """States, tape alphabet, a partial transition table, start and halting states.

    ``transitions`` maps ``(state, symbol)`` to ``(state, symbol, move)`` with
    ``move`` in ``L``, ``R``, ``S``.  Equality ignores ``name``.
    """

    def __init__(self, name, states, alphabet, transitions, start, halting):
        self.name = name
        self.states = tuple(states)
        self.alphabet = tuple(alphabet)
        self.start = start
        self.halting = tuple(h for h in self.states if h in set(halting))
        table = dict(transitions)
        state_set, symbols = set(self.states), set(self.alphabet)
        if len(state_set) != len(self.states):
            raise ValueError(f"{name}: duplicate states")
        if start not in state_set:
            raise ValueError(f"{name}: start state {start!r} is not declared")
        if set(halting) - state_set:
            raise ValueError(f"{name}: undeclared halting states {set(halting) - state_set}")
        if not {"0", "1", BLANK} <= symbols:
            raise ValueError(f"{name}: the alphabet must contain 0, 1 and {BLANK}")
        for (q, a), (q2, b, m) in table.items():
            if q not in state_set or q2 not in state_set:
                raise ValueError(f"{name}: transition {(q, a)} uses an undeclared state")
            if a not in symbols or b not in symbols:
                raise ValueError(f"{name}: transition {(q, a)} uses an undeclared symbol")
            if m not in MOVES:
                raise ValueError(f"{name}: bad move {m!r}")
            if q in self.halting:
                raise ValueError(f"{name}: halting state {q!r} has an outgoing transition")
        self.transitions = tuple(sorted(table.items()))
        self._delta = {k: (q2, b, MOVES[m]) for k, (q2, b, m) in table.items()}
        self._hash = None

    @classmethod
    def from_rules(cls, name, rules, start, halting, states=None, alphabet=BINARY):
        """Build from lines ``state symbol -> state symbol move``."""
        table = {}
        seen = [start]
        for line in rules:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            lhs, rhs = line.split("->")
            q, a = lhs.split()
            q2, b, m = rhs.split()
            if (q, a) in table:
                raise ValueError(f"{name}: duplicate rule for {(q, a)}")
            table[(q, a)] = (q2, b, m)
            seen += [q, q2]
        if states is None:
            states = list(dict.fromkeys(seen + list(halting)))
        return cls(name, states, alphabet, table, start, halting)

    def rules(self):
        return [f"{q} {a} -> {q2} {b} {m}" for (q, a), (q2, b, m) in self.transitions]

    def __eq__(self, other):
        return isinstance(other, TuringMachine) and (
            self.states, self.alphabet, self.transitions, self.start, self.halting
        ) == (other.states, other.alphabet, other.transitions, other.start, other.halting)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.states, self.alphabet, self.transitions, self.start))
        return self._hash

    def __repr__(self):
        return f"TuringMachine({self.name!r}, {len(self.states)} states, {len(self.transitions)} rules)"


@dataclass(frozen=True)
class RunBudget:
    max_steps: int
    max_input_length: int
    max_output_length: int

    def __post_init__(self):
        if self.max_steps < 0 or self.max_input_length < 0 or self.max_output_length < 0:
            raise ValueError("budget fields must be non-negative")


@dataclass(frozen=True)
class RunResult:
    output: object  # str, or BOTTOM
    steps: int
    status: str  # "halted", "budget", "stuck", "output-too-long"


def execute(m, word, max_steps, max_output_length=None):
    """Run ``m`` on ``word``; report the output (or ``BOTTOM``) and steps taken."""
    delta = m._delta
    halting = frozenset(m.halting)
    tape = {i: a for i, a in enumerate(word) if a != BLANK}
    pos = 0
    state = m.start
    steps = 0
    while state not in halting:
        if steps >= max_steps:
            return RunResult(BOTTOM, steps, "budget")
        move = delta.get((state, tape.get(pos, BLANK)))
        if move is None:
            return RunResult(BOTTOM, steps, "stuck")
        state, sym, d = move
        if sym == BLANK:
            tape.pop(pos, None)
        else:
            tape[pos] = sym
        pos += d
        steps += 1
    out = _read_output(tape, pos)
    if max_output_length is not None and len(out) > max_output_length:
        return RunResult(BOTTOM, steps, "output-too-long")
    return RunResult(out, steps, "halted")


def _read_output(tape, pos):
    if pos not in tape:
        pos += 1
        if pos not in tape:
            return ""
    lo = pos
    while lo - 1 in tape:
        lo -= 1
    hi = pos
    while hi + 1 in tape:
        hi += 1
    return "".join(tape[i] for i in range(lo, hi + 1))


def tm_run(m, word, budget):
    if len(word) > budget.max_input_length:
        raise InputTooLong(f"input of length {len(word)} exceeds {budget.max_input_length}")
    return execute(m, word, budget.max_steps, budget.max_output_length).output


def binary_strings(max_length):
    """All binary strings of length ``<= max_length``, shortest first."""
    for n in range(max_length + 1):
        for bits in itertools.product("01", repeat=n):
            yield "".join(bits)


def tm_instance(machines, budget, name="turing"):
    """Targets are machine names; ``eval(t, c) = tm_run(t, c)``, total thanks to ``BOTTOM``."""
    machines = list(machines)
    names = [m.name for m in machines]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate machine names: {names}")
    inputs = list(binary_strings(budget.max_input_length))
    T = FiniteSet("T", names)
    C = FiniteSet("C", inputs)
    pairs = []
    outputs = set(binary_strings(budget.max_output_length)) | {BOTTOM}
    for m in machines:
        for c in inputs:
            y = tm_run(m, c, budget)
            outputs.add(y)
            pairs.append(((m.name, c), (y,)))
    B = FiniteSet("B", outputs)
    ev = RelMorphism(ProductObject([T, C]), B, pairs, check=False)
    return EvalInstance(T, C, B, ev, name=name)
