"""Dense reference simulator: the ground truth everything else is checked against."""

import math
import random

import numpy as np
import pytest

from qdd.circuit import Circuit, cp, cx, h, mcp, p, swap, x, z
from qdd.oracle import MAX_ORACLE_QUBITS, DenseState, max_abs_diff, simulate_dense
from util import random_circuit

INV_SQRT2 = 1 / math.sqrt(2)


def test_empty_circuit_is_all_zeros_state():
    st = simulate_dense(Circuit(3, ()))
    assert st.amplitude("000") == 1
    assert st.amplitude("010") == 0
    assert st.norm() == pytest.approx(1.0)


def test_h_then_cx_builds_bell_pair():
    st = simulate_dense(Circuit(2, (h(0), cx(0, 1))))
    assert st.amplitude("00") == pytest.approx(INV_SQRT2)
    assert st.amplitude("11") == pytest.approx(INV_SQRT2)
    assert st.amplitude("01") == 0 and st.amplitude("10") == 0


def test_bit_order_qubit0_is_msb():
    # X on qubit 0 must set the leftmost bit
    st = simulate_dense(Circuit(3, (x(0),)))
    assert st.amplitude("100") == 1
    st = simulate_dense(Circuit(3, (x(2),)))
    assert st.amplitude("001") == 1


def test_controlled_phase_only_hits_11():
    c = Circuit(2, (x(0), x(1), cp(math.pi / 2, 0, 1)))
    st = simulate_dense(c)
    assert st.amplitude("11") == pytest.approx(1j)
    c = Circuit(2, (x(0), cp(math.pi / 2, 0, 1)))
    st = simulate_dense(c)
    assert st.amplitude("10") == pytest.approx(1.0)


def test_mcp_applies_phase_on_all_ones():
    c = Circuit(3, (x(0), x(1), x(2), mcp(math.pi, [0, 1], 2)))
    st = simulate_dense(c)
    assert st.amplitude("111") == pytest.approx(-1.0)


def test_swap_moves_amplitude():
    c = Circuit(3, (x(0), swap(0, 2)))
    st = simulate_dense(c)
    assert st.amplitude("001") == 1


def test_unitarity_preserves_norm_on_random_circuits():
    rng = random.Random(20260819)
    for _ in range(25):
        c = random_circuit(rng, max_qubits=5, max_depth=25)
        st = simulate_dense(c)
        assert st.norm() == pytest.approx(1.0, abs=1e-9)


def test_agrees_with_explicit_matrix_chain():
    # independent check: multiply full 2^n matrices in order
    rng = random.Random(7)
    for _ in range(10):
        c = random_circuit(rng, max_qubits=4, max_depth=12)
        n = c.num_qubits
        psi = np.zeros(2**n, dtype=complex)
        psi[0] = 1.0
        from qdd.circuit import gate_unitary

        for g in c.gates:
            full = _embed(gate_unitary(g), g.wires, n)
            psi = full @ psi
        st = simulate_dense(c)
        assert max_abs_diff(st, psi) < 1e-12


def _embed(u: np.ndarray, wires: tuple[int, ...], n: int) -> np.ndarray:
    """Dense n-qubit embedding built index-by-index, no tensordot."""
    k = len(wires)
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    rest = [q for q in range(n) if q not in wires]
    for col in range(dim):
        bits = format(col, f"0{n}b")
        sub_col = int("".join(bits[w] for w in wires), 2)
        for sub_row in range(2**k):
            if u[sub_row, sub_col] == 0:
                continue
            row_bits = list(bits)
            sub = format(sub_row, f"0{k}b")
            for i, w in enumerate(wires):
                row_bits[w] = sub[i]
            row = int("".join(row_bits), 2)
            out[row, col] += u[sub_row, sub_col]
    return out


def test_refuses_oversized_registers():
    with pytest.raises(ValueError, match="dense"):
        simulate_dense(Circuit(MAX_ORACLE_QUBITS + 1, ()))


def test_rejects_invalid_circuit():
    with pytest.raises(ValueError):
        simulate_dense(Circuit(2, (h(5),)))


def test_max_abs_diff_accepts_arrays_and_states():
    a = DenseState(np.array([1.0, 0.0], dtype=complex), 1)
    b = np.array([1.0, 1e-10], dtype=complex)
    assert max_abs_diff(a, b) == pytest.approx(1e-10)


def test_amplitude_rejects_bad_strings():
    st = simulate_dense(Circuit(2, ()))
    with pytest.raises(ValueError):
        st.amplitude("0")
    with pytest.raises(ValueError):
        st.amplitude("02")
