"""Two-valued logic simulation of the combinational core.

simulate_batch packs one pattern per bit lane into plain Python ints, so
a batch of W patterns costs one pass over the gates regardless of W.
simulate_serial is the scalar reference evaluator; it shares no logic
with the batch path and is the oracle the batch engine is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass


class WidthMismatch(ValueError):
    """Batch inputs do not line up with the netlist's input nets."""


@dataclass
class PatternBatch:
    """width lanes of input values; bits[net_id] holds lane i at bit i."""
    width: int
    bits: dict

    @classmethod
    def from_scan_words(cls, net, words):
        """Pack scan words (bit j = j-th input net, PIs then PPIs)."""
        inputs = net.input_nets
        bits = {nid: 0 for nid in inputs}
        for lane, w in enumerate(words):
            if w >> len(inputs):
                raise WidthMismatch(
                    f"scan word {w:#x} wider than {len(inputs)} inputs")
            for j, nid in enumerate(inputs):
                bits[nid] |= ((w >> j) & 1) << lane
        return cls(len(words), bits)


@dataclass
class ResponseBatch:
    """Observed values per lane; bits[net_id] over POs then PPOs."""
    width: int
    bits: dict

    def scan_words(self, net):
        """Repack as response words (bit j = j-th output net)."""
        outs = net.output_nets
        words = []
        for lane in range(self.width):
            w = 0
            for j, nid in enumerate(outs):
                w |= ((self.bits[nid] >> lane) & 1) << j
            words.append(w)
        return words


def _evaluate(net, batch):
    """Forward pass; returns lane-mask values for every net id."""
    full = (1 << batch.width) - 1
    values = [0] * net.n_nets
    for nid, lanes in batch.bits.items():
        values[nid] = lanes
    for g in net.gates:
        ins = g.inputs
        k = g.kind
        if k == "AND" or k == "NAND":
            v = full
            for i in ins:
                v &= values[i]
            if k == "NAND":
                v ^= full
        elif k == "OR" or k == "NOR":
            v = 0
            for i in ins:
                v |= values[i]
            if k == "NOR":
                v ^= full
        elif k == "XOR" or k == "XNOR":
            v = 0
            for i in ins:
                v ^= values[i]
            if k == "XNOR":
                v ^= full
        elif k == "NOT":
            v = values[ins[0]] ^ full
        elif k == "BUFF":
            v = values[ins[0]]
        else:
            raise WidthMismatch(f"cannot simulate sequential element {g.name}; "
                                "run full_scan_transform first")
        values[g.output] = v
    return values


def simulate_batch(net, batch):
    """Evaluate all lanes at once. Batch keys must equal the input nets."""
    if set(batch.bits) != set(net.input_nets):
        missing = set(net.input_nets) - set(batch.bits)
        extra = set(batch.bits) - set(net.input_nets)
        raise WidthMismatch(f"batch inputs do not match netlist inputs "
                            f"(missing {len(missing)}, extra {len(extra)})")
    if batch.width < 1:
        raise WidthMismatch("empty batch")
    values = _evaluate(net, batch)
    return ResponseBatch(batch.width, {nid: values[nid] for nid in net.output_nets})


def simulate_serial(net, assignment):
    """Scalar reference evaluator.

    assignment maps input net id -> 0/1; returns {output net id -> 0/1}.
    Used as the oracle for simulate_batch and in tiny campaigns.
    """
    if set(assignment) != set(net.input_nets):
        raise WidthMismatch("assignment does not match netlist inputs")
    val = dict(assignment)
    for nid, b in assignment.items():
        if b not in (0, 1):
            raise WidthMismatch(f"non-boolean value {b!r} for net {nid}")
    for g in net.gates:
        if g.kind == "DFF":
            raise WidthMismatch(f"cannot simulate sequential element {g.name}; "
                                "run full_scan_transform first")
    for g in net.gates:
        try:
            xs = [val[i] for i in g.inputs]
        except KeyError as exc:
            raise WidthMismatch(
                f"gate {g.name} reads net {exc.args[0]} before it is driven; "
                "levelize the netlist first") from None
        if g.kind == "AND":
            v = int(all(xs))
        elif g.kind == "NAND":
            v = int(not all(xs))
        elif g.kind == "OR":
            v = int(any(xs))
        elif g.kind == "NOR":
            v = int(not any(xs))
        elif g.kind == "XOR":
            v = sum(xs) % 2
        elif g.kind == "XNOR":
            v = (sum(xs) + 1) % 2
        elif g.kind == "NOT":
            v = 1 - xs[0]
        elif g.kind == "BUFF":
            v = xs[0]
        else:
            raise WidthMismatch(f"no scalar rule for {g.kind} gate {g.name}")
        val[g.output] = v
    return {nid: val[nid] for nid in net.output_nets}
