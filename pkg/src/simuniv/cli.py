"""Command-line front end.

Exit codes: 0 positive verdict (universal, certificate found, relation
decided), 1 negative verdict, 2 input or usage error, 3 inconclusive.
Every witness is re-verified before it is reported.
"""
import argparse
import json
import sys
import time

from .atoms import format_atom
from .config import search_limit
from .docformat import DocumentError, load, loads
from .errors import SimunivError
from .nogo import Inconclusive, check_nogo, spectrum_witness
from .parsimony import NonExistence, Relation, SimMorphism, compare_parsimony, verify_morphism
from .scenarios import data_text
from .universality import Mode, check_universality, verify_reduction

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3
REPORT_VERSION = 1


def _fmt(x):
    return format_atom(x)


def _pick(table, name, what):
    if name is None:
        if len(table) != 1:
            raise SimunivError(f"choose a {what}: {', '.join(table) or 'none declared'}")
        return next(iter(table.items()))
    if name not in table:
        raise SimunivError(f"no {what} named {name!r} (have: {', '.join(table) or 'none'})")
    return name, table[name]


def _load_doc(path):
    if path.startswith("bundled:"):
        return loads(data_text(path[len("bundled:"):]))
    return load(path)


# ------------------------------------------------------------------ reports


def universality_report(doc, sim_name, mode, targets=None, threads=None):
    name, s = _pick(doc.simulators, sim_name, "simulator")
    scope = targets or doc.scopes.get(name)
    v = check_universality(s, mode, targets=scope, threads=threads)
    report = {
        "command": "check-universality",
        "simulator": name,
        "mode": v.mode.value,
        "universal": v.universal,
        "targets_checked": [_fmt(t) for t in v.targets_checked],
        "programs": len(s.programs),
    }
    if v.universal:
        if not verify_reduction(s, v.witness, v.mode, targets=scope):
            raise AssertionError("reduction failed re-verification")
        report["witness"] = [[_fmt(t), _fmt(p)] for t, p in v.witness_table()]
        report["verified"] = True
    else:
        report["counterexample"] = _fmt(v.counterexample)
        report["admissible_programs"] = 0
    return report, EXIT_OK if v.universal else EXIT_NEGATIVE


def _morphism_summary(x, mode):
    if isinstance(x, SimMorphism):
        if not verify_morphism(x, mode):
            raise AssertionError("morphism failed re-verification")
        return {
            "found": True,
            "program_map": [[_fmt(a), _fmt(b)] for a, b in x.program_map().items()],
            "post_processing": [[_fmt(a), " | ".join(_fmt(y) for y in ys)]
                                for a, ys in _post_rows(x.post_proc)],
        }
    if isinstance(x, NonExistence):
        return {
            "found": False,
            "full_space": x.full_space,
            "behavior_compatible": x.behavior_compatible,
            "enumerated": x.enumerated,
            "reason": x.reason,
        }
    return {"found": None, "reason": "search limit reached"}


_RELATION_TEXT = {
    Relation.AT_LEAST_FORWARD: "B >= A",
    Relation.AT_LEAST_BACKWARD: "A >= B",
    Relation.EQUIVALENT: "equivalent",
    Relation.INCOMPARABLE: "incomparable",
    Relation.STRICT_FORWARD: "strict: B > A",
    Relation.STRICT_BACKWARD: "strict: A > B",
}


def _post_rows(q):
    return [(q.dom.unwrap(x), [q.cod.unwrap(y) for y in ys]) for x, ys in q.table()]


def parsimony_report(doc, a, b, mode, limit=None):
    a, sa = _pick(doc.simulators, a, "simulator")
    b, sb = _pick(doc.simulators, b, "simulator")
    v = compare_parsimony(sa, sb, mode, limit)
    report = {
        "command": "compare-parsimony",
        "A": a,
        "B": b,
        "mode": v.mode.value,
        "relation": _RELATION_TEXT[v.relation],
        "conditions": v.conditions,
        "A->B": _morphism_summary(v.forward, v.mode),
        "B->A": _morphism_summary(v.backward, v.mode),
    }
    return report, EXIT_OK


def nogo_report(doc, sim_name, witness, mode, threads=None):
    name, s = _pick(doc.simulators, sim_name, "simulator")
    if witness == "spectrum-size":
        w = spectrum_witness(s.instance)
    else:
        _, w = _pick(doc.witnesses, witness, "witness")
    from .nogo import build_preorder

    out = check_nogo(s, w, mode, preorder=build_preorder(s.instance, mode, threads=threads))
    report = {
        "command": "check-nogo",
        "simulator": name,
        "witness": w.name,
        "mode": Mode(mode).value,
        "image_valuations": [[_fmt(t), v] for t, v in out.image_valuations],
        "max_over_image": out.max_over_image,
    }
    if isinstance(out, Inconclusive):
        report.update(certificate=False, reason=out.reason)
        return report, EXIT_INCONCLUSIVE
    report.update(certificate=True, beating_target=_fmt(out.beating_target),
                  beating_value=out.beating_value)
    return report, EXIT_OK


def unreachability_report(doc, via, instance=None, iso=None, endo=None, simulator=None, limit=None):
    from .unreachability import (
        cantor_nogo,
        diagonal_direct,
        diagonal_via_universal,
        find_fixed_point_free,
    )

    report = {"command": "check-unreachability", "via": via}
    if via == "cantor":
        name, inst = _pick(doc.instances, instance, "instance")
        r = cantor_nogo(inst, limit)
        report.update(instance=name, compilers=r.compilers, context_reductions=r.context_reductions,
                      simulators=r.simulators, universal_found=r.universal_found, holds=r.holds)
        if r.holds:
            report["summary"] = f"no universal simulator with P ~ C; {r.simulators} simulators enumerated"
        return report, EXIT_OK if r.holds else EXIT_NEGATIVE
    if via == "direct":
        name, inst = _pick(doc.instances, instance, "instance")
        report["instance"] = name
    else:
        name, s = _pick(doc.simulators, simulator, "simulator")
        inst = s.instance
        report["simulator"] = name
    _, i = _pick(doc.isos, iso, "iso")
    g = doc.morphisms[endo] if endo else find_fixed_point_free(inst)
    if g is None:
        raise SimunivError("behaviors admit no fixed-point-free endomap")
    cert = diagonal_direct(inst, i, g) if via == "direct" else diagonal_via_universal(s, i, g)
    report.update(
        endo=[[_fmt(x), _fmt(g(x))] for x in inst.behaviors],
        diagonal=[[_fmt(c), _fmt(cert.diagonal(c))] for c in inst.contexts],
        trace=[
            {"target": _fmt(st.target), "context": _fmt(st.context),
             "target_value": _fmt(st.target_value), "diagonal_value": _fmt(st.diagonal_value)}
            for st in cert.trace
        ],
        verified=cert.verify(),
    )
    return report, EXIT_OK


def demo_report(name, threads=None):
    if name == "turing":
        from .scenarios import corpus_sweep

        doc = _load_doc("bundled:turing.inst")
        sweep = corpus_sweep(doc.setups["TM"].machines)
        report, code = universality_report(doc, "TM", Mode.STRICT, threads=threads)
        report["corpus_sweep"] = {
            "inputs": "all binary strings of length <= 4",
            "runs": sweep.runs,
            "halting_runs": sweep.halting,
            "matches": sweep.matches,
            "mismatches": len(sweep.mismatches),
        }
        if sweep.mismatches:
            code = EXIT_NEGATIVE
        return report, code
    if name == "spin":
        doc = _load_doc("bundled:spin.inst")
        return nogo_report(doc, "couplings", "spectrum-size", Mode.LAX, threads=threads)
    if name == "parsimony":
        doc = _load_doc("bundled:finfun.inst")
        return parsimony_report(doc, "trivial", "singleton", Mode.STRICT)
    if name == "diagonal":
        doc = _load_doc("bundled:and.inst")
        return unreachability_report(doc, "direct", endo="not")
    if name == "cantor":
        from .instances.finfun import finfun_instance
        from .docformat import InstanceDocument

        doc = InstanceDocument()
        doc.instances["finfun(2,2)"] = finfun_instance(2, 2)
        return unreachability_report(doc, "cantor")
    raise SimunivError(f"unknown demo {name!r}")


# ------------------------------------------------------------------ output


def render(report):
    lines = []
    for key, val in report.items():
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            lines.append(f"{key}:")
            for row in val:
                if isinstance(row, dict):
                    lines.append("  " + ", ".join(f"{k}={v}" for k, v in row.items()))
                else:
                    lines.append("  " + " -> ".join(str(x) for x in row))
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            for k, v in val.items():
                if isinstance(v, list):
                    lines.append(f"  {k}:")
                    lines.extend("    " + " -> ".join(str(x) for x in row) for row in v)
                else:
                    lines.append(f"  {k}: {v}")
        elif isinstance(val, list):
            lines.append(f"{key}: {', '.join(str(x) for x in val)}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def build_parser():
    def common(parser, default):
        kw = {} if default else {"default": argparse.SUPPRESS}
        parser.add_argument("--json", action="store_true", help="machine-readable output", **kw)
        parser.add_argument("--threads", type=int, help="worker threads (default: SIMUNIV_THREADS or 1)",
                            **(kw or {"default": None}))
        parser.add_argument("--limit", type=int, help="search-space limit (default: SIMUNIV_SEARCH_LIMIT)",
                            **(kw or {"default": None}))
        parser.add_argument("--timing", action="store_true", help="add wall-clock time to the report", **kw)

    ap = argparse.ArgumentParser(prog="simuniv", description="Decide simulator properties on finite instances.")
    common(ap, True)
    shared = argparse.ArgumentParser(add_help=False)
    common(shared, False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[shared])

    p = add("check-universality", help="search for a reduction T -> P")
    p.add_argument("file")
    p.add_argument("simulator", nargs="?")
    p.add_argument("--mode", choices=["strict", "lax"], default="strict")
    p.add_argument("--targets", nargs="+", help="restrict the check to these targets")

    p = add("compare-parsimony", help="classify two universal simulators")
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mode", choices=["strict", "lax"], default="strict")

    p = add("check-nogo", help="monotone-witness non-universality certificate")
    p.add_argument("file")
    p.add_argument("simulator", nargs="?")
    p.add_argument("--witness", default="spectrum-size")
    p.add_argument("--mode", choices=["strict", "lax"], default="lax")

    p = add("check-unreachability", help="diagonal constructions")
    p.add_argument("file")
    p.add_argument("--via", choices=["direct", "universal", "cantor"], default="direct")
    p.add_argument("--instance")
    p.add_argument("--simulator")
    p.add_argument("--iso")
    p.add_argument("--endo", help="morphism B -> B (default: first fixed-point-free map)")

    p = add("demo", help="run a bundled scenario")
    p.add_argument("name", choices=["turing", "spin", "parsimony", "diagonal", "cantor"])

    p = add("show", help="print the canonical form of an instance file")
    p.add_argument("file")

    p = add("measure-overhead", help="refit the interpreter overhead profile")
    p.add_argument("--max-input-length", type=int, default=4)
    p.add_argument("--output")
    return ap


def _run(args):
    if args.command == "check-universality":
        doc = _load_doc(args.file)
        targets = None
        if args.targets:
            from .atoms import parse_atom

            targets = tuple(parse_atom(t) for t in args.targets)
        return universality_report(doc, args.simulator, args.mode, targets, args.threads)
    if args.command == "compare-parsimony":
        return parsimony_report(_load_doc(args.file), args.a, args.b, args.mode, args.limit)
    if args.command == "check-nogo":
        return nogo_report(_load_doc(args.file), args.simulator, args.witness, args.mode, args.threads)
    if args.command == "check-unreachability":
        return unreachability_report(_load_doc(args.file), args.via, args.instance, args.iso,
                                     args.endo, args.simulator, args.limit)
    if args.command == "demo":
        return demo_report(args.name, args.threads)
    if args.command == "show":
        return {"text": _load_doc(args.file).dumps()}, EXIT_OK
    if args.command == "measure-overhead":
        from .instances.turing import binary_strings
        from .instances.utm import measure_overhead
        from .scenarios import tm_corpus

        prof = measure_overhead(tm_corpus(), list(binary_strings(args.max_input_length)))
        report = {"command": "measure-overhead", "slope": prof.slope, "offset": prof.offset,
                  "samples": prof.samples, "inputs_max_length": args.max_input_length, "max_states": 8}
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                json.dump({k: v for k, v in report.items() if k != "command"}, fh, indent=2)
                fh.write("\n")
        return report, EXIT_OK
    raise SimunivError(f"unknown command {args.command}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.limit is not None:
        search_limit(args.limit)  # validates
        import os

        os.environ["SIMUNIV_SEARCH_LIMIT"] = str(args.limit)
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_ERROR
    start = time.perf_counter()
    try:
        report, code = _run(args)
    except (SimunivError, DocumentError, OSError) as exc:
        if args.json:
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = {"report_version": REPORT_VERSION, **report} if args.command != "show" else report
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    if args.command == "show" and not args.json:
        sys.stdout.write(report["text"])
    elif args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
