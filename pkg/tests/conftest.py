import os
import random

import pytest

from bistlab.atpg import TestVector
from bistlab.netlist import full_scan_transform, load_bench, parse_bench

TestVector.__test__ = False  # dataclass, not a test case

_KINDS2 = ("AND", "OR", "NAND", "NOR", "XOR", "XNOR")


def random_bench(rng, max_gates=12, name="rnd"):
    """A small random combinational .bench text, topologically ordered.

    Every sink net becomes an output so nothing is trivially
    unobservable; an occasional internal net is also promoted to an
    output to exercise observed-stem handling.
    """
    n_pi = rng.randint(2, 5)
    nets = [f"i{k}" for k in range(n_pi)]
    lines = [f"INPUT({n})" for n in nets]
    gates = []
    for k in range(rng.randint(1, max_gates)):
        out = f"g{k}"
        if rng.random() < 0.2:
            kind = rng.choice(("NOT", "BUFF"))
            ins = [rng.choice(nets)]
        else:
            kind = rng.choice(_KINDS2)
            ins = [rng.choice(nets) for _ in range(rng.randint(2, 3))]
        gates.append((out, kind, ins))
        nets.append(out)
    read = {n for _, _, ins in gates for n in ins}
    outs = [n for n, _, _ in gates if n not in read]
    if not outs:
        outs = [gates[-1][0]]
    extra = [n for n, _, _ in gates if n in read]
    if extra and rng.random() < 0.5:
        outs.append(rng.choice(extra))
    lines += [f"OUTPUT({n})" for n in outs]
    lines += [f"{o} = {k}({', '.join(ins)})" for o, k, ins in gates]
    return "\n".join(lines) + "\n"


def random_circuit(rng, max_gates=12, name="rnd"):
    return parse_bench(random_bench(rng, max_gates, name), name=name)


@pytest.fixture(scope="session")
def s27():
    return full_scan_transform(load_bench("s27"))


@pytest.fixture(scope="session")
def s27_raw():
    return load_bench("s27")


@pytest.fixture(scope="session")
def c17():
    return load_bench("c17")


def bench_or_skip(name):
    """Load a benchmark that is not bundled; skip honestly if absent.

    Looks through BENCH_DIR like the resolver does. The big published
    circuits cannot be shipped with this package, so the tests that
    need them state the gap instead of faking the data.
    """
    try:
        return full_scan_transform(load_bench(name))
    except FileNotFoundError:
        pytest.skip(
            f"benchmark {name} not available: not bundled and not found in"
            f" BENCH_DIR={os.environ.get('BENCH_DIR', '<unset>')};"
            " provide the circuit file to run this check"
        )
