import pytest
from hypothesis import given, strategies as st

from simuniv.atoms import BOTTOM
from simuniv.errors import BoundsExceeded, DecodeError, InputTooLong
from simuniv.instances.turing import RunBudget, TuringMachine, binary_strings, execute, tm_instance, tm_run
from simuniv.instances.utm import (
    DEFAULT_BOUNDS,
    UTMBounds,
    decode_machine,
    encode_machine,
    pair,
    stored_profile,
    universal_machine,
    unpair,
)
from simuniv.scenarios import DEFAULT_TM_BUDGET, corpus_sweep, tm_corpus, tm_universal_setup
from simuniv.universality import check_universality, verify_reduction

bits = st.text(alphabet="01", max_size=12)


@pytest.fixture(scope="module")
def corpus():
    return {m.name: m for m in tm_corpus()}


@pytest.fixture(scope="module")
def u():
    return universal_machine()


def test_corpus_shape(corpus):
    assert len(corpus) >= 10
    assert all(len(m.states) <= 6 for m in corpus.values())


@pytest.mark.parametrize(
    "name, word, out",
    [
        ("identity", "0110", "0110"),
        ("bitflip", "0110", "1001"),
        ("eraser", "0110", ""),
        ("append1", "01", "011"),
        ("increment", "011", "100"),
        ("increment", "11", "100"),
        ("prepend0", "1", "01"),
        ("parity", "0111", "1"),
        ("behead", "101", "01"),
        ("mod3", "110", "0"),
        ("mod3", "111", "1"),
    ],
)
def test_corpus_outputs(corpus, name, word, out):
    assert tm_run(corpus[name], word, RunBudget(100, 8, 8)) == out


def test_bottom_cases(corpus):
    budget = RunBudget(100, 8, 8)
    assert tm_run(corpus["loop"], "0", budget) is BOTTOM
    assert execute(corpus["zeros"], "01", 100).status == "stuck"
    assert tm_run(corpus["append1"], "0101", RunBudget(100, 4, 4)) is BOTTOM
    with pytest.raises(InputTooLong):
        tm_run(corpus["identity"], "0101", RunBudget(10, 3, 4))


def test_zero_step_budget_returns_input_only_for_halting_start(corpus):
    assert tm_run(corpus["identity"], "01", RunBudget(0, 2, 2)) == "01"
    assert tm_run(corpus["bitflip"], "01", RunBudget(0, 2, 2)) is BOTTOM


def test_machine_validation():
    with pytest.raises(ValueError):
        TuringMachine.from_rules("m", ["q0 0 -> q1 0 R"], "q0", ["q0"])
    with pytest.raises(ValueError):
        TuringMachine.from_rules("m", ["q0 2 -> q0 0 R"], "q0", [])
    with pytest.raises(ValueError):
        TuringMachine.from_rules("m", ["q0 0 -> q0 0 X"], "q0", [])


def test_tm_instance_is_total(corpus):
    inst = tm_instance(corpus.values(), RunBudget(30, 2, 4))
    assert inst.deterministic_total
    assert len(inst.contexts) == 7


def test_run_is_deterministic(corpus):
    from simuniv.config import pmap

    jobs = [(m, c) for m in corpus.values() for c in binary_strings(3)]
    one = pmap(lambda j: execute(j[0], j[1], 50), jobs, 1)
    four = pmap(lambda j: execute(j[0], j[1], 50), jobs, 4)
    assert one == four


def test_encoding_round_trip_and_injective(corpus):
    codes = {name: encode_machine(m) for name, m in corpus.items()}
    assert len(set(codes.values())) == len(codes)
    for name, m in corpus.items():
        assert decode_machine(codes[name]) == m
        assert len(codes[name]) % DEFAULT_BOUNDS.block_bits == 0


def test_encoding_bounds():
    big = TuringMachine.from_rules("big", [f"q{i} 0 -> q{i + 1} 0 R" for i in range(3)], "q0", ["q3"])
    with pytest.raises(BoundsExceeded):
        encode_machine(big, UTMBounds(max_states=2))
    with pytest.raises(DecodeError):
        decode_machine("0101")
    with pytest.raises(DecodeError):
        decode_machine("0" + "1" * (DEFAULT_BOUNDS.block_bits - 1))


@given(bits, bits, bits, bits)
def test_pairing_is_injective(p, c, p2, c2):
    assert unpair(pair(p, c)) == (p, c)
    if (p, c) != (p2, c2):
        assert pair(p, c) != pair(p2, c2)


def test_interpreter_matches_direct_runs(corpus, u):
    sweep = corpus_sweep(corpus.values(), max_input_length=3, u=u)
    assert sweep.halting > 100
    assert sweep.mismatches == ()


def test_interpreter_fails_where_the_machine_does(corpus, u):
    prof = stored_profile()
    for name in ("loop", "zeros", "leftwalk"):
        p = encode_machine(corpus[name])
        assert execute(u, pair(p, "1"), prof.budget(len(p), 50)).output is BOTTOM


def test_universal_setup_is_universal_on_the_corpus(corpus):
    setup = tm_universal_setup(corpus.values(), DEFAULT_TM_BUDGET)
    v = check_universality(setup.simulator, "strict", targets=setup.corpus)
    assert v.universal
    assert verify_reduction(setup.simulator, setup.encoding, "strict", targets=setup.corpus)
    # the interpreter's own row is outside the finitized context set
    assert not check_universality(setup.simulator, "strict").universal
