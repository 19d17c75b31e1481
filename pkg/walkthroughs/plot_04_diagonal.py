"""
A behavior no target reaches
============================

With targets identified with contexts and a map ``g`` without fixed points,
``h(c) = g(eval(c, c))`` differs from every target somewhere.
"""

from simuniv.scenarios import and_instance, indicator_universal
from simuniv.unreachability import diagonal_direct, diagonal_via_universal, find_fixed_point_free

inst, iso = and_instance()
g = find_fixed_point_free(inst)
cert = diagonal_direct(inst, iso, g)
print("h =", {c: cert.diagonal(c) for c in inst.contexts})
for step in cert.trace:
    print(f"  target {step.target} gives {step.target_value} at {step.context}, h gives {step.diagonal_value}")

# the same through a universal simulator whose programs are the contexts
sim, code = indicator_universal()
cert = diagonal_via_universal(sim, code, find_fixed_point_free(sim.instance))
print("via a universal simulator, h =", [cert.diagonal(c) for c in sim.instance.contexts])
print("certificate re-checks:", cert.verify())
