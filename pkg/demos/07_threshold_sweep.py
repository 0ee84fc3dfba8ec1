"""
What the thresholds trade away
==============================

th1 decides when the campaign stops paying 2 clocks per pattern for
response compression; th2/th3 decide how long a dry spell the generator
gets before a reseed. Sweeping them on one circuit shows the shape of
the trade: reseed too eagerly and PMDV (scan loads, 7 cycles each here)
dominates; too patiently and the pattern counters bloat instead.
"""

from bistlab.netlist import load_bench
from bistlab.scheduler import CampaignConfig, run_campaign

net = load_bench("s27")

print(f"{'th1':>5} {'th2':>4} | {'PMDV':>4} {'PRTP1':>5} {'PRTP2':>5}"
      f" {'cycles':>6}  outcome")
for th1 in (0.0, 0.5, 0.85, 1.0):
    for th2 in (1, 4, 16):
        r = run_campaign(net, CampaignConfig(seed=1, th1=th1, th2=th2))
        a = r.accounting
        print(f"{th1:>5} {th2:>4} | {a.pmdv:>4} {a.prtp_ph1:>5}"
              f" {a.prtp_ph2:>5} {a.cycles:>6}  {r.terminated_by}")

# th1=0 skips phase 1 entirely (every generated pattern costs 1 clock,
# but detection then leans on signature snapshots in real hardware);
# th1=1.0 never leaves phase 1, so the whole free-run pays the 2-clock
# price. The defaults sit between the extremes.
