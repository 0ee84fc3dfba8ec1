"""
Deterministic vectors: one fault at a time, then a compacted pool
=================================================================
"""

from bistlab.atpg import UNTESTABLE, build_deterministic_pool, podem
from bistlab.faultsim import (
    Fault,
    collapse_faults,
    enumerate_faults,
    fault_name,
)
from bistlab.netlist import full_scan_transform, load_bench, parse_bench

net = full_scan_transform(load_bench("s27"))
fs = collapse_faults(enumerate_faults(net), net)

# A single fault first. The search drives the fault site to its
# opposite value and drags the difference to an output; the returned
# vector is always re-checked by the fault simulator.
f = fs.all[0]
vec = podem(net, f)
print(f"{fault_name(net, f)} SA{f.stuck}: vector {vec.as_string()}")

# Redundant logic produces faults no input can expose. The verdict is a
# proof, not a timeout:
redundant = parse_bench("""
INPUT(a)
OUTPUT(z)
na = NOT(a)
z = AND(a, na)
""", "contra")
z = redundant.net_id("z")
print("z SA0 in a AND NOT(a):", podem(redundant, Fault(z, 0)))

# The pool builder runs the search across every live fault and then
# keeps only vectors that still add coverage, most useful first.
pool = build_deterministic_pool(net, fs)
print(f"\ns27 pool: {len(pool)} vectors for {len(fs)} fault classes"
      f" ({fs.untestable_count()} proven untestable)")
for v, n in zip(pool.vectors, pool.detects_at_build):
    print(f"  {v.as_string()}  detects {n:2d} new")

# The first vector alone carries a third of the coverage; that is
# the one worth scanning in first when every reseed costs a full
# scan-chain load.
