"""Builders for the benchmark circuit families.

All builders are deterministic. Bit order follows the package convention:
qubit 0 is the most significant bit of a basis index, so qft(n) with final
swaps implements the DFT matrix in natural index order, and the phase
estimation readout is the binary expansion of the phase numerator with
counting qubit 0 as its most significant bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, Gate, cp, cx, dagger, h, swap, x


def ghz(n: int) -> Circuit:
    """H on qubit 0 followed by a CX chain: (|0...0> + |1...1>)/sqrt(2)."""
    if n < 1:
        raise ValueError(f"ghz needs n >= 1, got {n}")
    gates = [h(0)]
    gates += [cx(q, q + 1) for q in range(n - 1)]
    return Circuit(n, tuple(gates))


def qft(n: int, with_final_swaps: bool = True) -> Circuit:
    """Textbook quantum Fourier transform.

    Per qubit q (top to bottom): H(q), then CP(pi/2^(t-q)) with control t for
    every t below q. With final swaps the circuit equals the DFT matrix in
    this package's bit order; without them the output arrives bit-reversed.
    """
    if n < 1:
        raise ValueError(f"qft needs n >= 1, got {n}")
    gates: list[Gate] = []
    for q in range(n):
        gates.append(h(q))
        for t in range(q + 1, n):
            gates.append(cp(math.pi / (1 << (t - q)), t, q))
    if with_final_swaps:
        for q in range(n // 2):
            gates.append(swap(q, n - 1 - q))
    return Circuit(n, tuple(gates))


def entangled_qft(n: int) -> Circuit:
    """GHZ preparation followed by qft(n, with_final_swaps=True)."""
    return Circuit(n, ghz(n).gates + qft(n, True).gates)


def inverse_qft(n: int) -> Circuit:
    """Exact dagger of qft(n, True): the swaps first, then the reversed cascade."""
    forward = qft(n, True)
    return Circuit(n, tuple(dagger(g) for g in reversed(forward.gates)))


@dataclass(frozen=True)
class QpeSpec:
    """Phase estimation instance: m counting qubits, phase k/2^m."""

    counting_qubits: int
    phase_numerator: int

    def __post_init__(self) -> None:
        m = self.counting_qubits
        if m < 1:
            raise ValueError(f"counting_qubits must be >= 1, got {m}")
        if not 0 <= self.phase_numerator < (1 << m):
            raise ValueError(
                f"phase_numerator must be in [0, 2^{m}), got {self.phase_numerator}"
            )

    @property
    def theta(self) -> float:
        return 2.0 * math.pi * self.phase_numerator / (1 << self.counting_qubits)

    def expected_readout(self) -> str:
        """Counting-register outcome, qubit 0 as the most significant bit."""
        return format(self.phase_numerator, f"0{self.counting_qubits}b")


def qpe(spec: QpeSpec) -> Circuit:
    """Phase estimation of P(theta) on its |1> eigenstate, theta = 2*pi*k/2^m.

    Counting qubit j controls P(2^(m-1-j) * theta): with inverse_qft defined
    as the dagger of qft-with-swaps, this exponent assignment is the one that
    makes the pre-inverse-QFT state an exact DFT image of |k>, so the readout
    is deterministic. Each angle is reduced exactly via an integer shift and
    modulus before the single float division.
    """
    m = spec.counting_qubits
    k = spec.phase_numerator
    gates = [x(m)]
    gates += [h(j) for j in range(m)]
    modulus = 1 << m
    for j in range(m):
        shifted = (k << (m - 1 - j)) % modulus
        gates.append(cp(2.0 * math.pi * shifted / modulus, j, m))
    gates += list(inverse_qft(m).gates)
    return Circuit(m + 1, tuple(gates))


FAMILIES = ("ghz", "qft", "entangled_qft", "inverse_qft", "qpe")


def build_family(name: str, n: int, phase_numerator: int | None = None) -> Circuit:
    """Uniform constructor used by the command line and the bench harness.

    For qpe, n counts the counting register; the circuit has n+1 qubits and
    the phase numerator defaults to 2^(n-1)+1 (1 for n=1), a generic pattern
    with both end bits set.
    """
    if phase_numerator is not None and name != "qpe":
        raise ValueError("phase_numerator only applies to the qpe family")
    if name == "ghz":
        return ghz(n)
    if name == "qft":
        return qft(n, True)
    if name == "entangled_qft":
        return entangled_qft(n)
    if name == "inverse_qft":
        return inverse_qft(n)
    if name == "qpe":
        if phase_numerator is None:
            phase_numerator = (1 << (n - 1)) + 1 if n > 1 else 1
        return qpe(QpeSpec(n, phase_numerator))
    raise ValueError(f"unknown circuit family {name!r} (choose from {', '.join(FAMILIES)})")
