"""Instance files: a line-oriented text format with ``[kind name]`` section headers.

Grammar (``#`` starts a comment; blank lines are ignored)::

    [set NAME]                       atoms, comma/whitespace separated
    [morphism NAME: A * B -> C]      one pair per line:  x -> y   (I is the unit)
    [instance NAME]                  targets = T / contexts = C / behaviors = B / eval = m
    [finfun NAME]                    contexts = n / behaviors = m
    [spin NAME]                      levels = l1 l2 ... then, per interaction,
                                     "coupling i j = J", "field i = h", or
                                     "interaction i j ..." followed by "(a, b, ...) = e" rows
    [spin_instance NAME]             systems = s1 s2 ... / max_denominator = N
    [machine NAME]                   states = ... / start = q / halting = ... /
                                     rules "q a -> q' b M"
    [budget NAME]                    max_steps / max_input_length / max_output_length
    [tm_instance NAME]               machines = ... / budget = b
    [tm_universal NAME]              machines = ... / budget = b / max_states = k
    [simulator NAME]                 trivial = INST
                                   | finfun_singleton = INST [keep = i j ...]
                                   | instance = INST / compiler = m / context_reduction = m
                                     optional: targets = t1 t2 ... (restrict checks)
    [spin_simulator NAME]            instance = INST, then rows "program -> system"
    [iso NAME: X -> Y]               forward pairs, one per line
    [witness NAME]                   instance = INST, then rows "target -> integer"

Generated sections (``finfun``, ``spin_instance``, ``tm_instance``,
``tm_universal``) register their instance under NAME and its sets as
``NAME.T``, ``NAME.C`` and ``NAME.B``.  References must be declared first.
"""
from dataclasses import dataclass
from fractions import Fraction
import re

from .atoms import AtomSyntaxError, format_atom, parse_atom, parse_atoms
from .errors import SimunivError
from .finrel import FiniteSet, ProductObject, RelMorphism
from .instances.finfun import finfun_instance, finfun_singleton
from .instances.spin import Interaction, SpinSystem, spin_instance, spin_parameter_simulator
from .instances.turing import RunBudget, TuringMachine, tm_instance
from .nogo import MonotoneWitness
from .simulator import EvalInstance, Simulator, trivial_simulator
from .unreachability import Iso

FORMAT_VERSION = 1


class DocumentError(SimunivError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class Section:
    kind: str
    name: str
    signature: str
    lines: list  # (line number, text)
    line: int


_HEADER = re.compile(r"^\[\s*([A-Za-z_]+)\s+([^\]:]+?)\s*(?::\s*(.*?))?\s*\]\s*$")


def _sections(text):
    out = []
    current = None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            current = Section(m.group(1), m.group(2).strip(), (m.group(3) or "").strip(), [], n)
            out.append(current)
        elif line.startswith("["):
            raise DocumentError(f"malformed section header {line!r}", n)
        elif current is None:
            raise DocumentError("content before the first section header", n)
        else:
            current.lines.append((n, line))
    return out


def _keyvals(sec, allowed, rows_ok=False):
    kv, rows = {}, []
    for n, line in sec.lines:
        if "->" in line or not re.match(r"^[A-Za-z_]+\s*=", line):
            if not rows_ok:
                raise DocumentError(f"unexpected line in [{sec.kind} {sec.name}]: {line!r}", n)
            rows.append((n, line))
            continue
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in allowed:
            raise DocumentError(f"unknown key {key!r} in [{sec.kind} {sec.name}]", n)
        if key in kv:
            raise DocumentError(f"duplicate key {key!r}", n)
        kv[key] = (n, val)
    return kv, rows


def _need(sec, kv, key):
    if key not in kv:
        raise DocumentError(f"[{sec.kind} {sec.name}] needs '{key} = ...'", sec.line)
    return kv[key]


class InstanceDocument:
    """Declarations of one instance file, resolved into library objects."""

    def __init__(self):
        self.sets = {}
        self.morphisms = {}
        self.instances = {}
        self.simulators = {}
        self.systems = {}
        self.machines = {}
        self.budgets = {}
        self.isos = {}
        self.witnesses = {}
        self.scopes = {}  # simulator name -> targets its checks are restricted to
        self.setups = {}  # tm_universal name -> TMUniversalSetup
        self._decls = []  # (kind, name, payload) in file order
        self._names = set()

    # ---------------------------------------------------------------- lookup
    def _ref(self, table, name, what, line):
        try:
            return table[name]
        except KeyError:
            raise DocumentError(f"unknown {what} {name!r}", line) from None

    def _claim(self, name, line):
        if name in self._names:
            raise DocumentError(f"duplicate name {name!r}", line)
        self._names.add(name)

    def _object(self, text, line):
        text = text.strip()
        if text == "I":
            return ProductObject(())
        return ProductObject([self._ref(self.sets, s.strip(), "set", line) for s in text.split("*")])

    def _register_instance(self, name, inst, line):
        self._claim(name, line)
        self.instances[name] = inst
        for key, s in (("T", inst.targets), ("C", inst.contexts), ("B", inst.behaviors)):
            self.sets[f"{name}.{key}"] = s

    def __eq__(self, other):
        if not isinstance(other, InstanceDocument):
            return False
        fields = ("sets", "morphisms", "instances", "simulators", "systems", "machines",
                  "budgets", "isos", "witnesses", "scopes")
        return all(getattr(self, f) == getattr(other, f) for f in fields) and [
            (k, n) for k, n, _ in self._decls
        ] == [(k, n) for k, n, _ in other._decls]

    # ---------------------------------------------------------------- loading
    def _load_section(self, sec):
        handler = getattr(self, f"_load_{sec.kind}", None)
        if handler is None:
            raise DocumentError(f"unknown section kind {sec.kind!r}", sec.line)
        try:
            handler(sec)
        except DocumentError:
            raise
        except (SimunivError, ValueError, AtomSyntaxError, KeyError) as exc:
            raise DocumentError(f"[{sec.kind} {sec.name}]: {exc}", sec.line) from None

    def _load_set(self, sec):
        self._claim(sec.name, sec.line)
        elements = []
        for n, line in sec.lines:
            elements += parse_atoms(line)
        self.sets[sec.name] = FiniteSet(sec.name, elements)
        self._decls.append(("set", sec.name, None))

    def _load_morphism(self, sec):
        self._claim(sec.name, sec.line)
        if "->" not in sec.signature:
            raise DocumentError("morphism header needs ': DOM -> COD'", sec.line)
        dom_text, cod_text = sec.signature.split("->", 1)
        dom, cod = self._object(dom_text, sec.line), self._object(cod_text, sec.line)
        pairs = []
        for n, line in sec.lines:
            if "->" not in line:
                raise DocumentError(f"expected 'x -> y', got {line!r}", n)
            lhs, rhs = line.split("->", 1)
            x, y = parse_atom(lhs), parse_atom(rhs)
            try:
                pairs.append((_coords(dom, x), _coords(cod, y)))
            except ValueError as exc:
                raise DocumentError(str(exc), n) from None
        try:
            m = RelMorphism(dom, cod, pairs)
        except SimunivError as exc:
            raise DocumentError(f"morphism {sec.name}: {exc}", sec.line) from None
        self.morphisms[sec.name] = m
        self._decls.append(("morphism", sec.name, (dom_text.strip(), cod_text.strip())))

    def _load_instance(self, sec):
        kv, _ = _keyvals(sec, {"targets", "contexts", "behaviors", "eval"})
        refs = {}
        for key, table, what in (("targets", self.sets, "set"), ("contexts", self.sets, "set"),
                                 ("behaviors", self.sets, "set"), ("eval", self.morphisms, "morphism")):
            n, val = _need(sec, kv, key)
            refs[key] = (val, self._ref(table, val, what, n))
        inst = EvalInstance(refs["targets"][1], refs["contexts"][1], refs["behaviors"][1],
                            refs["eval"][1], name=sec.name)
        self._claim(sec.name, sec.line)
        self.instances[sec.name] = inst
        self._decls.append(("instance", sec.name, {k: v[0] for k, v in refs.items()}))

    def _load_finfun(self, sec):
        kv, _ = _keyvals(sec, {"contexts", "behaviors"})
        nc, nb = int(_need(sec, kv, "contexts")[1]), int(_need(sec, kv, "behaviors")[1])
        self._register_instance(sec.name, finfun_instance(nc, nb, name=sec.name), sec.line)
        self._decls.append(("finfun", sec.name, {"contexts": nc, "behaviors": nb}))

    def _load_spin(self, sec):
        self._claim(sec.name, sec.line)
        levels = None
        interactions = []
        current = None
        for n, line in sec.lines:
            if line.startswith("levels"):
                levels = [int(x) for x in line.split("=", 1)[1].split()]
            elif line.startswith("coupling"):
                lhs, val = line[len("coupling"):].split("=")
                i, j = (int(x) for x in lhs.split())
                J = Fraction(val.strip())
                interactions.append(((i, j), {(a, b): J * (2 * a - 1) * (2 * b - 1)
                                              for a in (0, 1) for b in (0, 1)}))
                current = None
            elif line.startswith("field"):
                lhs, val = line[len("field"):].split("=")
                i = int(lhs)
                h = Fraction(val.strip())
                interactions.append(((i,), {(a,): h * (2 * a - 1) for a in (0, 1)}))
                current = None
            elif line.startswith("interaction"):
                current = ({}, tuple(int(x) for x in line.split()[1:]))
                interactions.append((current[1], current[0]))
            elif "=" in line and current is not None:
                cfg, val = line.rsplit("=", 1)
                local = parse_atom(cfg)
                local = local if isinstance(local, tuple) else (local,)
                current[0][local] = Fraction(val.strip())
            else:
                raise DocumentError(f"unexpected line in spin system: {line!r}", n)
        if levels is None:
            raise DocumentError("spin system needs 'levels = ...'", sec.line)
        self.systems[sec.name] = SpinSystem.build(sec.name, levels, interactions)
        self._decls.append(("spin", sec.name, None))

    def _load_spin_instance(self, sec):
        kv, _ = _keyvals(sec, {"systems", "max_denominator"})
        n, names = _need(sec, kv, "systems")
        systems = [self._ref(self.systems, s, "spin system", n) for s in names.split()]
        md = int(kv["max_denominator"][1]) if "max_denominator" in kv else 10**6
        self._register_instance(sec.name, spin_instance(systems, md, name=sec.name), sec.line)
        self._decls.append(("spin_instance", sec.name, {"systems": names.split(), "max_denominator": md}))

    def _load_machine(self, sec):
        self._claim(sec.name, sec.line)
        kv, rows = _keyvals(sec, {"states", "start", "halting", "alphabet"}, rows_ok=True)
        start = _need(sec, kv, "start")[1]
        halting = kv["halting"][1].split() if "halting" in kv else []
        states = kv["states"][1].split() if "states" in kv else None
        alphabet = kv["alphabet"][1].split() if "alphabet" in kv else ("0", "1", "_")
        m = TuringMachine.from_rules(sec.name, [r for _, r in rows], start, halting,
                                     states=states, alphabet=alphabet)
        self.machines[sec.name] = m
        self._decls.append(("machine", sec.name, None))

    def _load_budget(self, sec):
        self._claim(sec.name, sec.line)
        keys = ("max_steps", "max_input_length", "max_output_length")
        kv, _ = _keyvals(sec, set(keys))
        self.budgets[sec.name] = RunBudget(*(int(_need(sec, kv, k)[1]) for k in keys))
        self._decls.append(("budget", sec.name, None))

    def _machines_and_budget(self, sec, kv):
        n, names = _need(sec, kv, "machines")
        machines = [self._ref(self.machines, m, "machine", n) for m in names.split()]
        n, b = _need(sec, kv, "budget")
        return names.split(), machines, b, self._ref(self.budgets, b, "budget", n)

    def _load_tm_instance(self, sec):
        kv, _ = _keyvals(sec, {"machines", "budget"})
        names, machines, bname, budget = self._machines_and_budget(sec, kv)
        self._register_instance(sec.name, tm_instance(machines, budget, name=sec.name), sec.line)
        self._decls.append(("tm_instance", sec.name, {"machines": names, "budget": bname}))

    def _load_tm_universal(self, sec):
        from .scenarios import tm_universal_setup
        from .instances.utm import UTMBounds

        kv, _ = _keyvals(sec, {"machines", "budget", "max_states"})
        names, machines, bname, budget = self._machines_and_budget(sec, kv)
        k = int(kv["max_states"][1]) if "max_states" in kv else 8
        setup = tm_universal_setup(machines, budget, UTMBounds(k), name=sec.name)
        self._register_instance(sec.name, setup.instance, sec.line)
        self.simulators[sec.name] = setup.simulator
        self.scopes[sec.name] = tuple(names)
        self.setups[sec.name] = setup
        self._decls.append(("tm_universal", sec.name, {"machines": names, "budget": bname, "max_states": k}))

    def _load_simulator(self, sec):
        kv, _ = _keyvals(sec, {"trivial", "finfun_singleton", "keep", "instance", "compiler",
                               "context_reduction", "targets"})
        if "trivial" in kv:
            n, inst_name = kv["trivial"]
            sim = trivial_simulator(self._ref(self.instances, inst_name, "instance", n), name=sec.name)
            payload = {"trivial": inst_name}
        elif "finfun_singleton" in kv:
            n, inst_name = kv["finfun_singleton"]
            keep = [int(x) for x in kv["keep"][1].split()] if "keep" in kv else None
            sim = finfun_singleton(self._ref(self.instances, inst_name, "instance", n), keep, name=sec.name)
            payload = {"finfun_singleton": inst_name, "keep": keep}
        else:
            n, inst_name = _need(sec, kv, "instance")
            inst = self._ref(self.instances, inst_name, "instance", n)
            n, cname = _need(sec, kv, "compiler")
            comp = self._ref(self.morphisms, cname, "morphism", n)
            n, rname = _need(sec, kv, "context_reduction")
            red = self._ref(self.morphisms, rname, "morphism", n)
            sim = Simulator(inst, comp, red, name=sec.name)
            payload = {"instance": inst_name, "compiler": cname, "context_reduction": rname}
        self._claim(sec.name, sec.line)
        self.simulators[sec.name] = sim
        if "targets" in kv:
            self.scopes[sec.name] = tuple(parse_atoms(kv["targets"][1]))
            payload["targets"] = self.scopes[sec.name]
        self._decls.append(("simulator", sec.name, payload))

    def _load_spin_simulator(self, sec):
        kv, rows = _keyvals(sec, {"instance"}, rows_ok=True)
        n, inst_name = _need(sec, kv, "instance")
        inst = self._ref(self.instances, inst_name, "instance", n)
        programs = {}
        for n, line in rows:
            lhs, rhs = line.split("->", 1)
            programs[parse_atom(lhs)] = parse_atom(rhs)
        self._claim(sec.name, sec.line)
        self.simulators[sec.name] = spin_parameter_simulator(inst, programs, name=sec.name)
        self._decls.append(("spin_simulator", sec.name, {"instance": inst_name, "programs": programs}))

    def _load_iso(self, sec):
        self._claim(sec.name, sec.line)
        if "->" not in sec.signature:
            raise DocumentError("iso header needs ': X -> Y'", sec.line)
        x_text, y_text = (s.strip() for s in sec.signature.split("->", 1))
        X = self._ref(self.sets, x_text, "set", sec.line)
        Y = self._ref(self.sets, y_text, "set", sec.line)
        pairs = []
        for n, line in sec.lines:
            lhs, rhs = line.split("->", 1)
            pairs.append((parse_atom(lhs), parse_atom(rhs)))
        self.isos[sec.name] = Iso.from_pairs(X, Y, pairs)
        self._decls.append(("iso", sec.name, (x_text, y_text)))

    def _load_witness(self, sec):
        kv, rows = _keyvals(sec, {"instance"}, rows_ok=True)
        n, inst_name = _need(sec, kv, "instance")
        self._ref(self.instances, inst_name, "instance", n)
        values = {}
        for n, line in rows:
            lhs, rhs = line.split("->", 1)
            values[parse_atom(lhs)] = int(rhs)
        self._claim(sec.name, sec.line)
        self.witnesses[sec.name] = MonotoneWitness(sec.name, values)
        self._decls.append(("witness", sec.name, {"instance": inst_name}))

    # ---------------------------------------------------------------- dumping
    def dumps(self):
        out = [f"# simuniv instance file, format version {FORMAT_VERSION}"]
        for kind, name, payload in self._decls:
            out.append("")
            out.extend(getattr(self, f"_dump_{kind}")(name, payload))
        return "\n".join(out) + "\n"

    def _dump_set(self, name, _):
        s = self.sets[name]
        return [f"[set {name}]", ", ".join(format_atom(x) for x in s)] if len(s) else [f"[set {name}]"]

    def _dump_morphism(self, name, sig):
        m = self.morphisms[name]
        lines = [f"[morphism {name}: {sig[0]} -> {sig[1]}]"]
        for x, ys in m.table():
            for y in ys:
                lines.append(f"{format_atom(m.dom.unwrap(x))} -> {format_atom(m.cod.unwrap(y))}")
        return lines

    def _dump_instance(self, name, refs):
        return [f"[instance {name}]"] + [f"{k} = {refs[k]}" for k in ("targets", "contexts", "behaviors", "eval")]

    def _dump_finfun(self, name, p):
        return [f"[finfun {name}]", f"contexts = {p['contexts']}", f"behaviors = {p['behaviors']}"]

    def _dump_spin(self, name, _):
        s = self.systems[name]
        lines = [f"[spin {name}]", "levels = " + " ".join(map(str, s.levels))]
        for inter in s.interactions:
            lines.append("interaction " + " ".join(map(str, inter.sites)))
            for cfg, e in inter.table:
                lines.append(f"{format_atom(cfg)} = {format_atom(e)}")
        return lines

    def _dump_spin_instance(self, name, p):
        return [f"[spin_instance {name}]", "systems = " + " ".join(p["systems"]),
                f"max_denominator = {p['max_denominator']}"]

    def _dump_machine(self, name, _):
        m = self.machines[name]
        return [f"[machine {name}]", "states = " + " ".join(m.states),
                "alphabet = " + " ".join(m.alphabet), f"start = {m.start}",
                "halting = " + " ".join(m.halting)] + m.rules()

    def _dump_budget(self, name, _):
        b = self.budgets[name]
        return [f"[budget {name}]", f"max_steps = {b.max_steps}",
                f"max_input_length = {b.max_input_length}", f"max_output_length = {b.max_output_length}"]

    def _dump_tm_instance(self, name, p):
        return [f"[tm_instance {name}]", "machines = " + " ".join(p["machines"]), f"budget = {p['budget']}"]

    def _dump_tm_universal(self, name, p):
        return [f"[tm_universal {name}]", "machines = " + " ".join(p["machines"]),
                f"budget = {p['budget']}", f"max_states = {p['max_states']}"]

    def _dump_simulator(self, name, p):
        lines = [f"[simulator {name}]"]
        for key, val in p.items():
            if key == "keep":
                if val is not None:
                    lines.append("keep = " + " ".join(map(str, val)))
            elif key == "targets":
                lines.append("targets = " + ", ".join(format_atom(t) for t in val))
            else:
                lines.append(f"{key} = {val}")
        return lines

    def _dump_spin_simulator(self, name, p):
        lines = [f"[spin_simulator {name}]", f"instance = {p['instance']}"]
        for prog, system in p["programs"].items():
            lines.append(f"{format_atom(prog)} -> {format_atom(system)}")
        return lines

    def _dump_iso(self, name, sig):
        iso = self.isos[name]
        lines = [f"[iso {name}: {sig[0]} -> {sig[1]}]"]
        for (x,), ys in iso.forward.table():
            lines.append(f"{format_atom(x)} -> {format_atom(ys[0][0])}")
        return lines

    def _dump_witness(self, name, p):
        w = self.witnesses[name]
        inst = self.instances[p["instance"]]
        lines = [f"[witness {name}]", f"instance = {p['instance']}"]
        for t in inst.targets:
            if t in w.valuation:
                lines.append(f"{format_atom(t)} -> {w.valuation[t]}")
        return lines


def _coords(obj, value):
    if obj.arity == 1:
        return (value,)
    if not isinstance(value, tuple) or len(value) != obj.arity:
        raise ValueError(f"{format_atom(value) if isinstance(value, tuple) else value!r} "
                         f"is not a {obj.arity}-tuple for {obj.label}")
    return value


def loads(text):
    doc = InstanceDocument()
    for sec in _sections(text):
        doc._load_section(sec)
    return doc


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(doc):
    return doc.dumps()
