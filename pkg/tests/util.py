"""Shared test helpers: seeded random circuits with a guaranteed SWAP share."""

from __future__ import annotations

import math
import random

from qdd.circuit import (
    Circuit,
    Gate,
    GateKind,
    cp,
    cx,
    h,
    mcp,
    p,
    rz,
    s,
    sdg,
    swap,
    t,
    tdg,
    x,
    y,
    z,
)

_SINGLE = (h, x, y, z, s, sdg, t, tdg)


def random_circuit(
    rng: random.Random,
    *,
    max_qubits: int = 8,
    max_depth: int = 40,
    min_swap_fraction: float = 0.2,
) -> Circuit:
    """Random circuit with at least min_swap_fraction SWAP gates.

    Swap positions are chosen up front so the guarantee holds by
    construction instead of by rejection sampling.
    """
    n = rng.randint(2, max_qubits)
    depth = rng.randint(1, max_depth)
    num_swaps = max(1, math.ceil(depth * min_swap_fraction))
    swap_slots = set(rng.sample(range(depth), min(num_swaps, depth)))

    gates: list[Gate] = []
    for slot in range(depth):
        if slot in swap_slots:
            a, b = rng.sample(range(n), 2)
            gates.append(swap(a, b))
            continue
        roll = rng.random()
        if roll < 0.45:
            builder = rng.choice(_SINGLE)
            gates.append(builder(rng.randrange(n)))
        elif roll < 0.60:
            builder = rng.choice((p, rz))
            gates.append(builder(rng.uniform(-math.pi, math.pi), rng.randrange(n)))
        elif roll < 0.80:
            a, b = rng.sample(range(n), 2)
            gates.append(cx(a, b))
        elif roll < 0.95 or n < 3:
            a, b = rng.sample(range(n), 2)
            gates.append(cp(rng.uniform(-math.pi, math.pi), a, b))
        else:
            k = rng.randint(2, min(3, n - 1))
            wires = rng.sample(range(n), k + 1)
            gates.append(mcp(rng.uniform(-math.pi, math.pi), wires[:-1], wires[-1]))
    return Circuit(n, tuple(gates))


def swap_fraction(circuit: Circuit) -> float:
    if not circuit.gates:
        return 0.0
    swaps = sum(1 for g in circuit.gates if g.kind is GateKind.SWAP)
    return swaps / len(circuit.gates)
