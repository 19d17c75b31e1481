"""Machine encoding, program/input pairing, and a universal interpreter machine.

Encoding (for machines over ``0 1 _`` with at most ``max_states`` states):
states are numbered with the start state first; each state contributes a
block of ``1 + 3 * E`` bits: its halting flag, then one entry per read
symbol ``0, 1, _`` of ``E = 1 + k + 2 + 2`` bits (defined flag, next
state in ``k`` bits, written symbol, move).  Undefined entries are all
zeros.

Pairing: ``<p, c>`` writes each bit ``b`` of ``p`` as ``0b``, then ``11``,
then ``c``; the separator is the first pair starting with ``1``.

The interpreter ``U`` keeps the simulated state index and the symbol under
the simulated head in its finite control.  Per simulated step it walks to
the program, looks up the entry, walks back to the marked head cell, and
applies it.  The simulated tape lives to the right of the separator; when
the simulated head leaves it on the left, the whole region is shifted
right by one cell.
"""
from dataclasses import dataclass
import json
import math
from importlib import resources

from ..errors import BoundsExceeded, DecodeError
from .turing import BINARY, BLANK, TuringMachine, execute

SYMBOL_CODE = {"0": "00", "1": "01", BLANK: "10"}
MOVE_CODE = {"L": "00", "R": "01", "S": "10"}
_SYMBOL = {v: k for k, v in SYMBOL_CODE.items()}
_MOVE = {v: k for k, v in MOVE_CODE.items()}


@dataclass(frozen=True)
class UTMBounds:
    max_states: int = 8

    @property
    def state_bits(self):
        return max(1, math.ceil(math.log2(self.max_states)))

    @property
    def entry_bits(self):
        return 1 + self.state_bits + 4

    @property
    def block_bits(self):
        return 1 + 3 * self.entry_bits


DEFAULT_BOUNDS = UTMBounds()


def encode_machine(m, bounds=DEFAULT_BOUNDS):
    if set(m.alphabet) != set(BINARY):
        raise BoundsExceeded(f"{m.name}: alphabet must be exactly 0, 1, {BLANK}")
    order = [m.start] + [q for q in m.states if q != m.start]
    if len(order) > bounds.max_states:
        raise BoundsExceeded(f"{m.name}: {len(order)} states exceed {bounds.max_states}")
    index = {q: i for i, q in enumerate(order)}
    table = dict(m.transitions)
    k = bounds.state_bits
    bits = []
    for q in order:
        bits.append("1" if q in m.halting else "0")
        for a in BINARY:
            rule = table.get((q, a))
            if rule is None:
                bits.append("0" * bounds.entry_bits)
            else:
                q2, b, mv = rule
                bits.append("1" + format(index[q2], f"0{k}b") + SYMBOL_CODE[b] + MOVE_CODE[mv])
    return "".join(bits)


def decode_machine(bits, bounds=DEFAULT_BOUNDS, name="decoded"):
    """Exact inverse of ``encode_machine`` on canonical encodings."""
    if set(bits) - {"0", "1"}:
        raise DecodeError("encoding must be binary")
    W, E, k = bounds.block_bits, bounds.entry_bits, bounds.state_bits
    if not bits or len(bits) % W:
        raise DecodeError(f"length {len(bits)} is not a positive multiple of {W}")
    n = len(bits) // W
    if n > bounds.max_states:
        raise DecodeError(f"{n} states exceed {bounds.max_states}")
    states = [f"q{i}" for i in range(n)]
    halting, table = [], {}
    for i in range(n):
        block = bits[i * W:(i + 1) * W]
        if block[0] == "1":
            halting.append(states[i])
        for j, a in enumerate(BINARY):
            entry = block[1 + j * E:1 + (j + 1) * E]
            if entry[0] == "0":
                if set(entry) != {"0"}:
                    raise DecodeError(f"undefined entry of q{i} on {a!r} is not zero-padded")
                continue
            q2 = int(entry[1:1 + k], 2)
            b = _SYMBOL.get(entry[1 + k:3 + k])
            mv = _MOVE.get(entry[3 + k:5 + k])
            if q2 >= n or b is None or mv is None:
                raise DecodeError(f"invalid entry of q{i} on {a!r}")
            table[(states[i], a)] = (states[q2], b, mv)
    try:
        return TuringMachine(name, states, BINARY, table, states[0], halting)
    except ValueError as exc:
        raise DecodeError(str(exc)) from None


def pair(p, c):
    if set(p) - {"0", "1"} or set(c) - {"0", "1"}:
        raise ValueError("pair() takes binary strings")
    return "".join("0" + b for b in p) + "11" + c


def unpair(s):
    i = 0
    bits = []
    while i + 1 < len(s):
        if s[i] == "1":
            if s[i + 1] != "1":
                break
            return "".join(bits), s[i + 2:]
        bits.append(s[i + 1])
        i += 2
    raise DecodeError(f"{s!r} is not a well-formed pair")


# interpreter work symbols
SEP = "S"
VISITED_BLANK = "B"
MARK = {"0": "a0", "1": "a1", VISITED_BLANK: "aB"}
UNMARK = {v: k for k, v in MARK.items()}
U_ALPHABET = ("0", "1", BLANK, SEP, VISITED_BLANK, "a0", "a1", "aB")
_READ_INDEX = {"0": 0, "1": 1, VISITED_BLANK: 2, BLANK: 2}
_PLAIN = {"0": "0", "1": "1", BLANK: VISITED_BLANK}


def _control(bounds):
    """Transition function of the interpreter's finite control."""
    W, E, k = bounds.block_bits, bounds.entry_bits, bounds.state_bits

    def step(ctrl, a):
        tag = ctrl[0]
        if tag == "init":
            if a == "0":
                return ("init_bit",), a, "R"
            if a == "1":
                return ("sep2",), SEP, "R"
        elif tag == "init_bit":
            if a in "01":
                return ("init",), a, "R"
        elif tag == "sep2":
            if a == "1":
                return ("land", 0), SEP, "R"
        elif tag == "land":
            q = ctrl[1]
            if a in ("0", "1", VISITED_BLANK, BLANK):
                sym = VISITED_BLANK if a == BLANK else a
                return ("rewind", q, _READ_INDEX[a]), MARK[sym], "S"
            if a == SEP:
                return ("ext_right", q), a, "R"
        elif tag == "rewind":
            q, s = ctrl[1:]
            if a == BLANK:
                return ("seek_halt", 2 * q * W + 1, s), a, "R"
            return ctrl, a, "L"
        elif tag == "seek_halt":
            n, s = ctrl[1:]
            if a not in "01":
                return None
            if n > 0:
                return ("seek_halt", n - 1, s), a, "R"
            if a == "1":
                return ("clean_rewind",), a, "L"
            return ("seek_entry", 2 * (1 + s * E) - 1), a, "R"
        elif tag == "seek_entry":
            n = ctrl[1]
            if a not in "01":
                return None
            if n > 0:
                return ("seek_entry", n - 1), a, "R"
            if a == "1":
                return ("read", 1, ""), a, "R"
            return None  # no rule: the simulated machine is stuck
        elif tag == "read":
            n, bits = ctrl[1:]
            if a not in "01":
                return None
            if n > 0:
                return ("read", n - 1, bits), a, "R"
            bits += a
            if len(bits) < k + 4:
                return ("read", 1, bits), a, "R"
            q2 = int(bits[:k], 2)
            w = _SYMBOL.get(bits[k:k + 2])
            mv = _MOVE.get(bits[k + 2:k + 4])
            if w is None or mv is None or q2 >= bounds.max_states:
                return None
            return ("to_head", q2, w, mv), a, "R"
        elif tag == "to_head":
            q2, w, mv = ctrl[1:]
            if a in ("0", "1", SEP, VISITED_BLANK):
                return ctrl, a, "R"
            if a in UNMARK:
                return ("land", q2), _PLAIN[w], mv
        elif tag == "ext_right":
            if a in ("0", "1", VISITED_BLANK):
                return ctrl, a, "R"
            if a == BLANK:
                return ("ext_carry", ctrl[1]), a, "L"
        elif tag == "ext_carry":
            q = ctrl[1]
            if a in ("0", "1", VISITED_BLANK):
                return ("ext_put", q, a), a, "R"
            if a == SEP:
                return ("ext_new", q), a, "R"
        elif tag == "ext_put":
            return ("ext_back", ctrl[1]), ctrl[2], "L"
        elif tag == "ext_back":
            return ("ext_carry", ctrl[1]), a, "L"
        elif tag == "ext_new":
            return ("rewind", ctrl[1], 2), MARK[VISITED_BLANK], "S"
        elif tag == "clean_rewind":
            if a in "01":
                return ctrl, a, "L"
            if a == BLANK:
                return ("clean_erase",), a, "R"
        elif tag == "clean_erase":
            if a in "01":
                return ctrl, BLANK, "R"
            if a == SEP:
                return ("clean_erase_sep",), BLANK, "R"
        elif tag == "clean_erase_sep":
            if a == SEP:
                return ("clean_sweep",), BLANK, "R"
        elif tag == "clean_sweep":
            if a == VISITED_BLANK:
                return ctrl, BLANK, "R"
            if a in ("0", "1") or a in UNMARK:
                return ctrl, a, "R"
            if a == BLANK:
                return ("clean_find",), a, "L"
        elif tag == "clean_find":
            if a in ("0", "1", BLANK):
                return ctrl, a, "L"
            if a in UNMARK:
                plain = UNMARK[a]
                return ("halt",), BLANK if plain == VISITED_BLANK else plain, "S"
        return None

    return step


def _name(ctrl):
    return ":".join(str(x) for x in ctrl)


def universal_machine(bounds=DEFAULT_BOUNDS):
    """The interpreter ``U`` as an explicit transition table over ``U_ALPHABET``."""
    step = _control(bounds)
    start = ("init",)
    seen = {start}
    frontier = [start]
    table = {}
    while frontier:
        ctrl = frontier.pop()
        if ctrl == ("halt",):
            continue
        for a in U_ALPHABET:
            out = step(ctrl, a)
            if out is None:
                continue
            nxt, b, mv = out
            table[(_name(ctrl), a)] = (_name(nxt), b, mv)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    states = sorted(_name(c) for c in seen)
    states.remove(_name(start))
    states.insert(0, _name(start))
    return TuringMachine("U", states, U_ALPHABET, table, _name(start), [_name(("halt",))])


@dataclass(frozen=True)
class OverheadProfile:
    """``steps_U <= slope * |p| * steps_t + offset`` (``|p|`` in program bits)."""

    slope: float
    offset: int
    samples: int

    def budget(self, program_bits, steps):
        return math.ceil(self.slope * program_bits * steps + self.offset)


def measure_overhead(machines, inputs, bounds=DEFAULT_BOUNDS, max_steps=10_000, u=None):
    """Fit the affine overhead profile on halting runs of ``machines`` over ``inputs``."""
    u = u or universal_machine(bounds)
    samples = []
    for m in machines:
        p = encode_machine(m, bounds)
        for c in inputs:
            direct = execute(m, c, max_steps)
            if direct.status != "halted":
                continue
            sim = execute(u, pair(p, c), 10**9)
            if sim.output != direct.output:
                raise AssertionError(f"interpreter disagrees with {m.name} on {c!r}")
            samples.append((len(p), direct.steps, sim.steps))
    moving = [(n, s, su) for n, s, su in samples if s > 0]
    slope = max((su / (n * s) for n, s, su in moving), default=0.0)
    slope = math.ceil(slope * 100) / 100
    offset = max(math.ceil(su - slope * n * s) for n, s, su in samples)
    return OverheadProfile(slope, max(offset, 0), len(samples))


def stored_profile():
    text = resources.files("simuniv.data").joinpath("utm_profile.json").read_text()
    data = json.loads(text)
    return OverheadProfile(data["slope"], data["offset"], data["samples"])
