"""
A single universal target is more parsimonious
===============================================

On the four functions ``{0,1} -> {0,1}`` the trivial simulator compiles each
program to its own target; the singleton simulator compiles everything to
the identity and does the work in the context reduction.  A morphism exists
from the first to the second but not back.
"""

from simuniv.instances.finfun import finfun_instance, finfun_singleton
from simuniv.parsimony import compare_parsimony, find_morphism, naive_morphism_search
from simuniv.simulator import compiler_image, trivial_simulator

inst = finfun_instance(2, 2)
trivial = trivial_simulator(inst)
singleton = finfun_singleton(inst)
print("compiler images:", sorted(compiler_image(trivial)), "vs", sorted(compiler_image(singleton)))

m = find_morphism(trivial, singleton)
print("program map (singleton program -> trivial program):", m.program_map())
print("post-processing on (t, c):")
for t in inst.targets:
    print("  ", [(c, m.post_proc(t, c)) for c in inst.contexts])

no = find_morphism(singleton, trivial)
print(f"back: none among {no.full_space} program maps "
      f"({no.behavior_compatible} behavior-compatible): {no.reason}")

# brute force agrees
naive = naive_morphism_search(singleton, trivial)
print(f"naive search: {naive.program_maps} maps tried, found = {naive.found is not None}")

print("verdict:", compare_parsimony(trivial, singleton).relation.value)
