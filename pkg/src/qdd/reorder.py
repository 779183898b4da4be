"""Swap elimination by qubit relabeling.

A SWAP gate only moves information between wires, so instead of simulating
it the pass can delete it and relabel everything that comes later. The pass
tracks a permutation: mapping[q] is the wire of the transformed circuit that
holds what the original circuit keeps on wire q. Deleting SWAP(a, b) updates
the tracking by exchanging the images of a and b; every surviving gate after
the deletion point is rewritten onto the mapped wires.

Modes:
  none      keep the circuit as is,
  trailing  delete only the maximal run of SWAPs at the very end,
  all       scan left to right, deleting every SWAP and relabeling the rest.

The transformed circuit's output_permutation composes the pass permutation
with whatever permutation the input already carried, so amplitude queries in
original labels keep working through permute_bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .circuit import Circuit, Gate, GateKind, QubitPermutation, relabel_gate


class ReorderMode(str, Enum):
    NONE = "none"
    TRAILING = "trailing"
    ALL = "all"


@dataclass(frozen=True)
class ReorderReport:
    """What one pass invocation did; output_permutation covers this pass only."""

    swaps_removed: int
    output_permutation: QubitPermutation
    mode: ReorderMode


def permute_bits(perm: QubitPermutation, bits: str) -> str:
    """Bitstring to query on the transformed circuit for original-label bits.

    Original qubit q's value lands at position perm.mapping[q] of the result.
    """
    n = len(perm)
    if len(bits) != n:
        raise ValueError(f"bitstring length {len(bits)} does not match permutation size {n}")
    out = [""] * n
    for q, ch in enumerate(bits):
        out[perm.mapping[q]] = ch
    return "".join(out)


def _swap_wires(mapping: list[int], gate: Gate) -> None:
    a, b = gate.targets
    mapping[a], mapping[b] = mapping[b], mapping[a]


def reorder(circuit: Circuit, mode: ReorderMode) -> tuple[Circuit, ReorderReport]:
    """Apply the pass; returns the transformed circuit and a report."""
    mode = ReorderMode(mode)
    n = circuit.num_qubits
    identity = QubitPermutation.identity(n)
    if mode is ReorderMode.NONE:
        return circuit, ReorderReport(0, identity, mode)

    if mode is ReorderMode.TRAILING:
        cut = len(circuit.gates)
        while cut > 0 and circuit.gates[cut - 1].kind is GateKind.SWAP:
            cut -= 1
        kept = circuit.gates[:cut]
        mapping = list(range(n))
        for g in circuit.gates[cut:]:
            _swap_wires(mapping, g)
        pass_perm = QubitPermutation(tuple(mapping))
        total = circuit.output_permutation.then(pass_perm)
        report = ReorderReport(len(circuit.gates) - cut, pass_perm, mode)
        return Circuit(n, kept, total), report

    mapping = list(range(n))
    perm = identity
    removed = 0
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind is GateKind.SWAP:
            _swap_wires(mapping, g)
            perm = QubitPermutation(tuple(mapping))
            removed += 1
        elif perm.is_identity:
            out.append(g)
        else:
            out.append(relabel_gate(g, perm))
    total = circuit.output_permutation.then(perm)
    report = ReorderReport(removed, perm, mode)
    return Circuit(n, tuple(out), total), report
