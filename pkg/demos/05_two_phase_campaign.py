"""
A full two-phase campaign on s27, event by event
================================================

The flow: scan in the best deterministic vector, let the generator
free-run from it, and reseed only when the stream goes stale. Early on
(phase 1) each generated pattern also compresses the previous response,
costing 2 clocks; once coverage crosses th1 the campaign switches to
1-clock patterns and keeps its detection data from unload snapshots.
"""

from bistlab.netlist import load_bench
from bistlab.scheduler import CampaignConfig, export_event_log, run_campaign

result = run_campaign(load_bench("s27"), CampaignConfig(seed=1))

print(result.summary())
print("\nthresholds:", result.thresholds)
print("generator schedule masks:", [bin(m) for m in result.schedule])

print("\nevent log:")
print(export_event_log(result), end="")

# Reading it: cycle deltas are 7 for a scan load (the chain is 7 cells),
# 2 for a phase-1 pattern, 1 for a phase-2 pattern. The identity
#
#   cycles == PMDV*scan + 2*PRTP1 + PRTP2
#
# holds at every line; the campaign asserts it internally after every
# event, so a broken charge would crash the run, not skew the report.
a = result.accounting
print(f"\ncheck: {a.pmdv}*7 + 2*{a.prtp_ph1} + {a.prtp_ph2} ="
      f" {a.pmdv * 7 + 2 * a.prtp_ph1 + a.prtp_ph2} == {a.cycles}")

# For comparison, scanning in every deterministic vector the provider
# generated (no free-running at all) would have cost ADV * scan:
print(f"scan-everything cost would be {a.adv * 7} cycles;"
      f" the campaign paid {a.cycles}")
