"""
No universal simulator with programs = contexts
===============================================

When every function ``C -> B`` is a target, no simulator with ``P = C`` is
universal.  For two contexts and two behaviors there are 256 candidates;
all of them are checked.
"""

from simuniv.instances.finfun import finfun_instance
from simuniv.unreachability import cantor_nogo, cantor_search_size, cantor_simulator
from simuniv.universality import check_universality

for shape in [(1, 2), (1, 3), (2, 2)]:
    inst = finfun_instance(*shape)
    report = cantor_nogo(inst)
    print(f"FinFun{shape}: {report.simulators} simulators, {report.universal_found} universal")

inst = finfun_instance(2, 2)
report = cantor_nogo(inst)
i, j, missing = report.counterexamples[100]
print(f"simulator {i},{j} misses target {missing}:",
      check_universality(cantor_simulator(inst, i, j)).counterexample)

print("FinFun(3, 2) would need", cantor_search_size(finfun_instance(3, 2)), "simulators")
