"""
Running machines through a universal interpreter
================================================

Every corpus machine is encoded as a bit string, paired with an input, and
handed to the interpreter ``U``.  Wherever the machine halts within its
budget, ``U`` must print the same output.
"""

from simuniv.instances.turing import binary_strings, execute
from simuniv.instances.utm import encode_machine, pair, stored_profile, universal_machine
from simuniv.scenarios import DEFAULT_TM_BUDGET, tm_corpus, tm_universal_setup
from simuniv.universality import check_universality

machines = tm_corpus()
u = universal_machine()
print(f"{len(machines)} machines; U has {len(u.states)} states and {len(u.transitions)} rules")

# the step budget granted to U grows with program length and simulated steps
profile = stored_profile()
print(f"interpreter budget: {profile.slope} * |p| * steps + {profile.offset}")

# one machine, step by step
inc = next(m for m in machines if m.name == "increment")
p = encode_machine(inc)
for word in ["0", "1", "011", "111"]:
    direct = execute(inc, word, 50)
    via_u = execute(u, pair(p, word), profile.budget(len(p), 50))
    print(f"increment({word!r}) = {direct.output!r} in {direct.steps} steps; "
          f"U agrees: {via_u.output == direct.output} ({via_u.steps} steps)")

# the whole corpus on inputs up to length 4
mismatches = 0
halting = 0
for m in machines:
    code = encode_machine(m)
    for c in binary_strings(4):
        d = execute(m, c, 50)
        if d.status == "halted":
            halting += 1
            mismatches += execute(u, pair(code, c), profile.budget(len(code), 50)).output != d.output
print(f"{halting} halting runs, {mismatches} mismatches")

# as a simulator: programs are encodings, every program compiles to U
setup = tm_universal_setup(machines, DEFAULT_TM_BUDGET)
verdict = check_universality(setup.simulator, "strict", targets=setup.corpus)
print("universal over the corpus:", verdict.universal)
for t, code in verdict.witness_table()[:3]:
    print(f"  {t:10s} -> {code[:30]}...")
