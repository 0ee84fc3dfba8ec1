"""
The pattern generator register, from polynomial to pattern stream
=================================================================
"""

from bistlab.registers import (
    BilboMode,
    IpBilbo,
    IpBilboConfig,
    Polynomial,
    RegisterState,
    default_schedule,
    is_primitive,
    next_lfsr,
)

# x^3 + x + 1 is maximal length: starting anywhere, the register walks
# all 2^3 - 1 nonzero states before repeating.
p = Polynomial.from_exponents([3, 1, 0], check_primitive=True)
print("polynomial:", p)

s = RegisterState(3, 0b001)
orbit = [s.bits]
for _ in range(6):
    s = next_lfsr(s, p)
    orbit.append(s.bits)
print("orbit from 001:", " -> ".join(f"{b:03b}" for b in orbit))

# Not every polynomial qualifies. x^4 + x^2 + 1 factors, and the proof
# says so instead of silently producing a short cycle.
ok, why = is_primitive(4, 0b0101)
print("\nx^4 + x^2 + 1 primitive?", ok, "--", why)

# Every scan length needs a polynomial of exactly that degree. The
# shipped table covers the common ones, two per degree.
sched = default_schedule(7)
print("\ndegree-7 schedule:", [str(q) for q in sched])

# The generator interleaves the schedule and runs in two modes:
# indirect (ms=0) compresses the previous response first and costs two
# clocks per pattern, direct (ms=1) costs one.
gen = IpBilbo(IpBilboConfig(sched))
print("\nseed pattern:", f"{gen.state.bits:07b}")
for mode in (BilboMode(0), BilboMode(0), BilboMode(1), BilboMode(1)):
    cycles = gen.next_pattern(mode, response=0)
    print(f"ms={mode.ms}: {gen.state.bits:07b}  ({cycles} clock(s))")

# Scanning in a deterministic vector overwrites the register, so the
# same hardware is the reseeding mechanism; no extra seed store needed.
gen.load(0b1010101)
print("after reseed:", f"{gen.state.bits:07b}")
