"""
Stuck-at faults: enumeration, collapsing, parallel simulation
=============================================================
"""

import random

from bistlab.faultsim import (
    collapse_faults,
    enumerate_faults,
    fault_name,
    fault_simulate,
)
from bistlab.netlist import load_bench
from bistlab.simcore import PatternBatch

net = load_bench("c17")

# Two faults per gate output plus two per gate input pin.
fs = enumerate_faults(net)
print("c17 fault universe:", len(fs), "faults")

# Structural equivalence cuts that down before any simulation runs:
# a stuck value at a controlling input is indistinguishable from the
# matching stuck value at the output.
fs = collapse_faults(fs, net)
print("after collapsing:  ", len(fs), "classes")
print("sample sites:", [fault_name(net, f) for f in fs.all[:5]])

# One simulation pass handles one pattern per bit lane; Python ints
# have no fixed width, so the batch can be as wide as it likes.
rng = random.Random(7)
words = [rng.getrandbits(5) for _ in range(16)]
batch = PatternBatch.from_scan_words(net, words)
counts = fault_simulate(net, batch, fs)

print("\nper-pattern new detections:", counts)
print("coverage after one batch: "
      f"{fs.detected_count()}/{len(fs)} = {fs.coverage():.3f}")

# Detected faults are dropped: feeding the same batch again finds
# nothing new, and costs almost nothing.
again = fault_simulate(net, batch, fs)
print("same batch again:", sum(again), "new detections")

# Each detected fault remembers which pattern caught it first.
caught = sorted(fs.detector.items())[:5]
for i, at in caught:
    print(f"  {fault_name(net, fs.all[i])} SA{fs.all[i].stuck}"
          f" first seen by pattern {at}")
