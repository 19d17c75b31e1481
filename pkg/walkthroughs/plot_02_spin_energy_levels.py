"""
Counting energy levels
======================

A simulator whose programs only reach two-level systems cannot reproduce a
four-level one: the number of distinct energies never grows under context
reduction.
"""

from simuniv.instances.spin import spin_spectrum
from simuniv.nogo import build_preorder, check_nogo, spectrum_witness
from simuniv.scenarios import spin_scenario
from simuniv.universality import check_universality

inst, sim = spin_scenario()
for name in inst.targets:
    energies = sorted({b for (t, _), (b,) in inst.eval.pairs if t == name})
    print(f"{name:12s} energies {[str(e) for e in energies]}")

w = spectrum_witness(inst)
pre = build_preorder(inst, "lax")
print("who simulates whom:", sorted((a, b) for a, b in pre.relation if a != b))

cert = check_nogo(sim, w)
print(f"S_max over the compiler image = {cert.max_over_image}; "
      f"{cert.beating_target} has {cert.beating_value} levels")

# the certificate agrees with a direct search for a reduction
for mode in ("strict", "lax"):
    v = check_universality(sim, mode)
    print(f"{mode}: universal = {v.universal}, first unreachable target = {v.counterexample}")
