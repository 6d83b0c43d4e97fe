"""Dense statevector simulation and the brute-force unitary oracle.

Amplitude indexing follows the register layout convention: the value of
qubit q sits at bit position (width-1-q) of the basis index, so qubit 0 is
the most significant bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, RegisterLayout, lower
from .gates import PRIMITIVE_MATRICES

MAX_SIM_QUBITS = 24
MAX_UNITARY_QUBITS = 12
NORM_TOL = 1e-10


@dataclass
class Statevector:
    width: int
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if self.amps.size != 2 ** self.width:
            raise ValueError("amplitude count does not match width")

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def zero_state(width: int) -> Statevector:
    amps = np.zeros(2 ** width, dtype=complex)
    amps[0] = 1.0
    return Statevector(width, amps)


def basis_state(width: int, index: int) -> Statevector:
    if not 0 <= index < 2 ** width:
        raise ValueError(f"basis index {index} out of range for width {width}")
    amps = np.zeros(2 ** width, dtype=complex)
    amps[index] = 1.0
    return Statevector(width, amps)


def _apply_gate(amps: np.ndarray, width: int, gate) -> np.ndarray:
    u = PRIMITIVE_MATRICES[gate.kind]
    t = amps.reshape((2,) * width)
    qs = gate.qubits
    if len(qs) == 1:
        t = np.moveaxis(t, qs[0], 0)
        t = np.tensordot(u, t, axes=([1], [0]))
        t = np.moveaxis(t, 0, qs[0])
    else:
        a, b = qs
        t = np.moveaxis(t, (a, b), (0, 1))
        t = np.tensordot(u.reshape(2, 2, 2, 2), t, axes=([2, 3], [0, 1]))
        t = np.moveaxis(t, (0, 1), (a, b))
    return np.ascontiguousarray(t).reshape(-1)


def run(c: Circuit, input_state: int | Statevector = 0, check_norm_each: bool = False) -> Statevector:
    """Apply all gates in order to a basis state (default all-zero).

    Macros are lowered automatically.  The final norm is always checked;
    ``check_norm_each`` additionally asserts unit norm after every gate.
    """
    if c.width > MAX_SIM_QUBITS:
        raise ValueError(f"width {c.width} exceeds simulation cap {MAX_SIM_QUBITS}")
    if isinstance(input_state, Statevector):
        if input_state.width != c.width:
            raise ValueError("input state width mismatch")
        amps = input_state.amps.copy()
    else:
        amps = basis_state(c.width, input_state).amps
    lc = c if c.is_lowered else lower(c)
    for g in lc.gates:
        amps = _apply_gate(amps, c.width, g)
        if check_norm_each:
            norm = np.sqrt(np.sum(np.abs(amps) ** 2))
            if abs(norm - 1.0) > NORM_TOL:
                raise AssertionError(f"norm drifted to {norm} after {g}")
    sv = Statevector(c.width, amps)
    if abs(sv.norm() - 1.0) > NORM_TOL:
        raise AssertionError(f"final norm {sv.norm()} outside tolerance")
    return sv


def unitary_of(c: Circuit) -> np.ndarray:
    """Assemble the full matrix column by column (widths up to 12 qubits)."""
    if c.width > MAX_UNITARY_QUBITS:
        raise ValueError(f"width {c.width} exceeds unitary cap {MAX_UNITARY_QUBITS}")
    dim = 2 ** c.width
    lc = c if c.is_lowered else lower(c)
    mat = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        mat[:, col] = run(lc, col).amps
    return mat


def success_probability(sv: Statevector, layout: RegisterLayout) -> float:
    """Total probability of outcomes whose pattern register reads all zero."""
    if layout.width != sv.width:
        raise ValueError("layout width mismatch")
    idx = np.arange(sv.amps.size)
    third = (idx >> layout.ancilla) & ((1 << layout.M) - 1)
    return float(np.sum(sv.probabilities()[third == 0]))


def grover_theoretical(m: int, N: int, r: int) -> float:
    """Closed-form success probability sin^2((2r+1) asin(sqrt(m/N)))."""
    if not 0 <= m <= N:
        raise ValueError("match count must be in 0..N")
    theta = math.asin(math.sqrt(m / N))
    return math.sin((2 * r + 1) * theta) ** 2


def sample(sv: Statevector, shots: int, seed: int = 0) -> np.ndarray:
    """Multinomial outcome counts for ``shots`` draws; shots=0 returns exact probabilities."""
    probs = sv.probabilities()
    probs = probs / probs.sum()
    if shots == 0:
        return probs
    if shots < 0:
        raise ValueError("shots must be nonnegative")
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, probs)


def register_support_check(
    sv: Statevector,
    layout: RegisterLayout,
    registers=("second", "third"),
    tolerance: float = 1e-10,
) -> tuple[bool, float]:
    """Probability mass on components where any named register is nonzero.

    Returns (mass < tolerance, mass).
    """
    if layout.width != sv.width:
        raise ValueError("layout width mismatch")
    idx = np.arange(sv.amps.size)
    nonzero = np.zeros(sv.amps.size, dtype=bool)
    for name in registers:
        reg = layout.register(name)
        for q in reg:
            nonzero |= ((idx >> (sv.width - 1 - q)) & 1).astype(bool)
    leaked = float(np.sum(sv.probabilities()[nonzero]))
    return leaked < tolerance, leaked
