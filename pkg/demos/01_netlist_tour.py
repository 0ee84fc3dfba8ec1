"""
Reading a .bench netlist and getting it ready for test
======================================================

s27 is the smallest of the bundled circuits: 4 inputs, 1 output, three
flip-flops, ten logic gates. Everything downstream (fault simulation,
pattern generation, the campaign itself) works on a purely
combinational core, so the flip-flops have to go first.
"""

from bistlab.netlist import (
    circuit_profile,
    full_scan_transform,
    levelize,
    load_bench,
    to_bench,
)

net = load_bench("s27")
print("as parsed:", net.name)
print("  inputs: ", [net.net_names[i] for i in net.input_nets])
print("  outputs:", [net.net_names[o] for o in net.output_nets])
print("  gates:  ", len(net.gates), "of which DFF:",
      sum(1 for g in net.gates if g.kind == "DFF"))

# Full-scan: every flip-flop becomes a pseudo primary input (its state
# is scanned in) plus a pseudo primary output (its next-state function
# is observed). The pairs stay aligned, which matters when a register
# spans the whole chain.
scanned = full_scan_transform(net)
profile = circuit_profile(scanned)
print("\nafter scan transform:")
print("  scan length:", profile.scan_length, "(PIs + PPIs)")
print("  observed:   ", len(scanned.output_nets), "(POs + PPOs)")

# Levelization orders gates so every input is computed before it is
# consumed; the order is stable, so reruns give identical files.
ordered = levelize(scanned)
print("  levelized gate order:",
      [g.name for g in ordered.gates][:6], "...")

# The transform round-trips through the text format.
text = to_bench(scanned)
print("\nfirst lines of the scan version:")
for line in text.splitlines()[:8]:
    print(" ", line)
