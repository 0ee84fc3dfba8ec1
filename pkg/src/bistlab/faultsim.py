"""Single stuck-at fault simulation over pattern batches.

The fault universe is the checkpoint-style uncollapsed set: both
polarities on every gate output net (stem faults) and on every gate
input connection (branch faults). Simulation is parallel-pattern,
single-fault: the good machine is evaluated once per batch, then each
live fault propagates only through its cone of influence, lane masks in
plain ints. Detection means a difference at any PO or PPO.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .simcore import _evaluate


@dataclass(frozen=True)
class Fault:
    """Stuck-at fault. branch is None for a stem, else (gate_pos, pin)."""
    net: int
    stuck: int
    branch: tuple = None

    def sort_key(self):
        b = (-1, -1) if self.branch is None else self.branch
        return (self.net, 0 if self.branch is None else 1, b, self.stuck)


class FaultSet:
    """Fault list plus detection bookkeeping. Single writer at a time.

    detected[i] flips to 1 at most once; detector maps fault index to
    the global index of the first detecting pattern. untestable[i] is
    set by test generation when a fault is proven redundant.
    """

    def __init__(self, faults):
        self.all = tuple(faults)
        self.detected = bytearray(len(self.all))
        self.untestable = bytearray(len(self.all))
        self.detector = {}
        self._index = {f: i for i, f in enumerate(self.all)}

    def __len__(self):
        return len(self.all)

    def index_of(self, fault):
        return self._index[fault]

    def mark_detected(self, i, pattern_idx):
        if not self.detected[i]:
            self.detected[i] = 1
            self.detector[i] = pattern_idx

    def mark_untestable(self, i):
        self.untestable[i] = 1

    def detected_count(self):
        return sum(self.detected)

    def untestable_count(self):
        return sum(self.untestable)

    def undetected_indices(self, include_untestable=False):
        return [i for i in range(len(self.all))
                if not self.detected[i]
                and (include_untestable or not self.untestable[i])]

    def coverage(self):
        """Detected fraction of the whole set."""
        return self.detected_count() / len(self.all) if self.all else 1.0

    def testable_coverage(self):
        """Detected fraction of faults not proven untestable."""
        live = len(self.all) - self.untestable_count()
        return self.detected_count() / live if live else 1.0


def enumerate_faults(net):
    """Uncollapsed universe in deterministic gate order."""
    faults = []
    for pos, g in enumerate(net.gates):
        for pin, nid in enumerate(g.inputs):
            faults.append(Fault(nid, 0, (pos, pin)))
            faults.append(Fault(nid, 1, (pos, pin)))
        faults.append(Fault(g.output, 0))
        faults.append(Fault(g.output, 1))
    return FaultSet(faults)


# Stuck value at a gate input forcing the output: kind -> (in, out).
_GATE_EQUIV = {
    "AND": ((0, 0),),
    "NAND": ((0, 1),),
    "OR": ((1, 1),),
    "NOR": ((1, 0),),
    "NOT": ((0, 1), (1, 0)),
    "BUFF": ((0, 0), (1, 1)),
}


def collapse_faults(fs, net):
    """Structural equivalence collapsing.

    Classes are built over the full universe (controlling-input rules
    plus stem/branch identity on unobserved single-reader nets), then
    each fault in fs maps to its class representative. Idempotent.
    """
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for pos, g in enumerate(net.gates):
        for pin, nid in enumerate(g.inputs):
            for sv, ov in _GATE_EQUIV.get(g.kind, ()):
                union(Fault(nid, sv, (pos, pin)), Fault(g.output, ov))

    observed = set(net.output_nets)
    fanout = net.fanout()
    for g in net.gates:
        nid = g.output
        if nid not in observed and len(fanout[nid]) == 1:
            pos, pin = fanout[nid][0]
            union(Fault(nid, 0), Fault(nid, 0, (pos, pin)))
            union(Fault(nid, 1), Fault(nid, 1, (pos, pin)))

    classes = {}
    for f in fs.all:
        classes.setdefault(find(f), []).append(f)
    reps = sorted((min(members, key=Fault.sort_key) for members in classes.values()),
                  key=Fault.sort_key)
    out = FaultSet(reps)
    for root, members in classes.items():
        rep = min(members, key=Fault.sort_key)
        hits = [fs.detector[fs.index_of(m)] for m in members
                if fs.detected[fs.index_of(m)]]
        i = out.index_of(rep)
        if hits:
            out.mark_detected(i, min(hits))
        if all(fs.untestable[fs.index_of(m)] for m in members):
            out.mark_untestable(i)
    return out


def _fault_effect(net, good, full, fault, fanout, observed):
    """Propagate one fault through its cone.

    Returns (det_mask, fval): lanes where any observed net differs, and
    the faulty values of every net that diverged.
    """
    gates = net.gates
    forced = full if fault.stuck else 0
    fval = {}
    det = 0
    heap = []
    seen = set()

    def push(pos):
        if pos not in seen:
            seen.add(pos)
            heapq.heappush(heap, pos)

    if fault.branch is None:
        if forced == good[fault.net]:
            return 0, fval
        fval[fault.net] = forced
        if fault.net in observed:
            det |= forced ^ good[fault.net]
        for pos, _pin in fanout[fault.net]:
            push(pos)
    else:
        if forced == good[fault.net]:
            return 0, fval
        push(fault.branch[0])

    while heap:
        pos = heapq.heappop(heap)
        g = gates[pos]
        k = g.kind
        vals = []
        for pin, nid in enumerate(g.inputs):
            if fault.branch == (pos, pin):
                vals.append(forced)
            else:
                vals.append(fval.get(nid, good[nid]))
        if k == "AND" or k == "NAND":
            v = full
            for x in vals:
                v &= x
            if k == "NAND":
                v ^= full
        elif k == "OR" or k == "NOR":
            v = 0
            for x in vals:
                v |= x
            if k == "NOR":
                v ^= full
        elif k == "XOR" or k == "XNOR":
            v = 0
            for x in vals:
                v ^= x
            if k == "XNOR":
                v ^= full
        elif k == "NOT":
            v = vals[0] ^ full
        else:
            v = vals[0]
        if v != good[g.output]:
            fval[g.output] = v
            if g.output in observed:
                det |= v ^ good[g.output]
            for rpos, _pin in fanout[g.output]:
                push(rpos)
    return det, fval


def fault_simulate(net, batch, fs, drop=True, pattern_base=0):
    """Simulate every live fault against the batch.

    Updates fs in place and returns per-lane newly-detected counts;
    when several lanes detect the same fault the earliest lane claims
    it. pattern_base is added to the lane index for detector records.
    drop=False re-propagates already-detected faults (for detection
    matrices) without recounting them.
    """
    good = _evaluate(net, batch)
    full = (1 << batch.width) - 1
    observed = set(net.output_nets)
    fanout = net.fanout()
    counts = [0] * batch.width
    for i, f in enumerate(fs.all):
        if drop and fs.detected[i]:
            continue
        det, _ = _fault_effect(net, good, full, f, fanout, observed)
        if det and not fs.detected[i]:
            lane = (det & -det).bit_length() - 1
            fs.mark_detected(i, pattern_base + lane)
            counts[lane] += 1
    return counts


def faulty_response_word(net, word, fault):
    """Response word of the faulty machine for one scan word."""
    from .simcore import PatternBatch

    batch = PatternBatch.from_scan_words(net, [word])
    good = _evaluate(net, batch)
    fanout = net.fanout()
    observed = set(net.output_nets)
    _, fval = _fault_effect(net, good, 1, fault, fanout, observed)
    w = 0
    for j, nid in enumerate(net.output_nets):
        w |= fval.get(nid, good[nid]) << j
    return w


def fault_name(net, fault):
    """Stable human-readable site name."""
    stem = net.net_names[fault.net]
    if fault.branch is None:
        return stem
    pos, pin = fault.branch
    return f"{stem}/{net.gates[pos].name}.{pin}"


def export_faults(net, fs):
    """One line per fault: 'site SA0|SA1 [DETECTED@idx]'."""
    lines = []
    for i, f in enumerate(fs.all):
        line = f"{fault_name(net, f)} SA{f.stuck}"
        if fs.detected[i]:
            line += f" DETECTED@{fs.detector[i]}"
        lines.append(line)
    return "\n".join(lines) + "\n"
