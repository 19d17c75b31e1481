import pytest
from hypothesis import given, strategies as st

from simuniv.atoms import format_atom
from simuniv.docformat import DocumentError, loads
from simuniv.scenarios import data_text
from strategies import eval_instances, simulators

BUNDLED = ["finfun.inst", "spin.inst", "and.inst", "indicators.inst", "tm_corpus.inst", "turing.inst"]


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_round_trip(name):
    doc = loads(data_text(name))
    text = doc.dumps()
    again = loads(text)
    assert again == doc
    assert again.dumps() == text


def write_morphism(name, sig, m):
    lines = [f"[morphism {name}: {sig}]"]
    for x, y in sorted(m.pairs, key=repr):
        lines.append(f"{format_atom(m.dom.unwrap(x))} -> {format_atom(m.cod.unwrap(y))}")
    return lines


@given(st.data())
def test_random_documents_round_trip(data):
    inst = data.draw(eval_instances(max_size=3, total=False))
    s = data.draw(simulators(inst, total=False))
    lines = []
    for key, S in (("T", inst.targets), ("C", inst.contexts), ("B", inst.behaviors), ("P", s.programs)):
        lines += [f"[set {key}]", ", ".join(format_atom(x) for x in S)]
    lines += write_morphism("ev", "T * C -> B", inst.eval)
    lines += ["[instance H]", "targets = T", "contexts = C", "behaviors = B", "eval = ev"]
    lines += write_morphism("comp", "P -> T", s.compiler)
    lines += write_morphism("red", "P * C -> C", s.context_reduction)
    lines += ["[simulator S]", "instance = H", "compiler = comp", "context_reduction = red"]
    doc = loads("\n".join(lines))
    assert doc.simulators["S"] == s
    assert loads(doc.dumps()) == doc


def test_relation_rows_allowed():
    doc = loads("[set A]\n0 1\n[morphism r: A -> A]\n0 -> 0\n0 -> 1\n")
    assert len(doc.morphisms["r"]) == 2


def test_unit_signature():
    doc = loads("[set A]\n0 1\n[morphism d: A -> I]\n0 -> ()\n1 -> ()\n")
    assert doc.morphisms["d"].is_function


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("[set A]\n1\n[set A]\n2\n", 3, "duplicate name"),
        ("[set A]\n1\n[morphism f: A -> Q]\n", 3, "unknown set"),
        ("[set A]\n1\n[morphism f: A -> A]\n1 -> 2\n", 3, "not an element"),
        ("[set A]\n1\n[morphism f: A * A -> A]\n1 -> 1\n", 4, "2-tuple"),
        ("stray\n", 1, "before the first section"),
        ("[bogus x]\n", 1, "unknown section kind"),
        ("[finfun F]\ncontexts = 2\n", 1, "behaviors"),
        ("[set A]\n(1, 2\n", 1, "unterminated"),
        ("[finfun F]\ncontexts = 2\nbehaviors = 2\n[simulator s]\ntrivial = G\n", 5, "unknown instance"),
    ],
)
def test_errors_carry_line_numbers(text, line, message):
    with pytest.raises(DocumentError, match=message) as err:
        loads(text)
    assert err.value.line == line


def test_simulator_type_errors_are_reported():
    text = "\n".join([
        "[set T]", "a", "[set C]", "0", "[set B]", "0",
        "[morphism ev: T * C -> B]", "(a, 0) -> 0",
        "[instance H]", "targets = T", "contexts = C", "behaviors = B", "eval = ev",
        "[morphism comp: C -> C]", "0 -> 0",
        "[morphism red: C * C -> C]", "(0, 0) -> 0",
        "[simulator S]", "instance = H", "compiler = comp", "context_reduction = red",
    ])
    with pytest.raises(DocumentError, match="compiler cod"):
        loads(text)
