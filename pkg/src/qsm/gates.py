"""Gate set: primitive Clifford+T gates plus macro gates with registered lowerings.

Conventions used throughout the package:

* Qubit 0 is the most significant bit of a basis index.
* A gate's matrix is written over its own qubit list with the first listed
  qubit as the most significant bit.  For controlled gates the controls come
  before the targets; a controlled-swap is ordered [control, wire-a, wire-b].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class GateKind(Enum):
    # primitives
    X = "X"
    Z = "Z"
    H = "H"
    S = "S"
    S_DG = "S_DG"
    T = "T"
    T_DG = "T_DG"
    CNOT = "CNOT"
    CZ = "CZ"
    # macros, lowered by circuit.lower()
    SWAP = "SWAP"
    TOFFOLI = "TOFFOLI"
    FREDKIN = "FREDKIN"
    RP_TOFFOLI = "RP_TOFFOLI"
    RP_FREDKIN = "RP_FREDKIN"
    MCZ = "MCZ"

    @property
    def is_macro(self) -> bool:
        return self in _MACROS


_MACROS = frozenset(
    {GateKind.SWAP, GateKind.TOFFOLI, GateKind.FREDKIN,
     GateKind.RP_TOFFOLI, GateKind.RP_FREDKIN, GateKind.MCZ}
)

PRIMITIVE_KINDS = frozenset(k for k in GateKind if not k.is_macro)

# Fixed arity per kind; MCZ arity depends on the control count k.
_ARITY = {
    GateKind.X: 1, GateKind.Z: 1, GateKind.H: 1,
    GateKind.S: 1, GateKind.S_DG: 1, GateKind.T: 1, GateKind.T_DG: 1,
    GateKind.CNOT: 2, GateKind.CZ: 2, GateKind.SWAP: 2,
    GateKind.TOFFOLI: 3, GateKind.FREDKIN: 3,
    GateKind.RP_TOFFOLI: 3, GateKind.RP_FREDKIN: 3,
}

# T <-> T_DG and S <-> S_DG; every other kind is an involution.  The two
# relative-phase macros are involutions because their registered lowerings
# realize Hermitian unitaries (checked by the test suite).
INVERSE_KIND = {
    GateKind.T: GateKind.T_DG, GateKind.T_DG: GateKind.T,
    GateKind.S: GateKind.S_DG, GateKind.S_DG: GateKind.S,
}

_SQ2 = 1.0 / np.sqrt(2.0)
_OMEGA = np.exp(1j * np.pi / 4)

PRIMITIVE_MATRICES = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Z: np.diag([1, -1]).astype(complex),
    GateKind.H: np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    GateKind.S: np.diag([1, 1j]).astype(complex),
    GateKind.S_DG: np.diag([1, -1j]).astype(complex),
    GateKind.T: np.diag([1, _OMEGA]).astype(complex),
    GateKind.T_DG: np.diag([1, np.conj(_OMEGA)]).astype(complex),
    GateKind.CNOT: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
}


def mcz_arity(k: int) -> int:
    """Wire count of an MCZ gate with k controls (k-2 helper wires for k >= 3)."""
    if k < 1:
        raise ValueError(f"MCZ needs at least one control, got k={k}")
    return k + 1 if k <= 2 else 2 * k - 1


@dataclass(frozen=True)
class Gate:
    """One gate instance: a kind applied to an ordered tuple of qubit indices.

    ``k`` and ``mode`` are only meaningful for MCZ gates; ``mode`` selects the
    helper-wire contract ("clean": wires must arrive as 0, "borrowed": wires in
    any state are restored).
    """

    kind: GateKind
    qubits: tuple[int, ...]
    k: int | None = None
    mode: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubit in {self.kind.name} {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        if self.kind is GateKind.MCZ:
            if self.k is None:
                raise ValueError("MCZ gate requires a control count k")
            if self.mode not in ("clean", "borrowed"):
                raise ValueError(f"MCZ mode must be clean|borrowed, got {self.mode!r}")
            if len(self.qubits) != mcz_arity(self.k):
                raise ValueError(
                    f"MCZ(k={self.k}) expects {mcz_arity(self.k)} wires, got {len(self.qubits)}"
                )
        else:
            if self.k is not None or self.mode is not None:
                raise ValueError(f"{self.kind.name} does not take k/mode")
            if len(self.qubits) != _ARITY[self.kind]:
                raise ValueError(
                    f"{self.kind.name} expects {_ARITY[self.kind]} qubits, got {len(self.qubits)}"
                )

    @property
    def is_macro(self) -> bool:
        return self.kind.is_macro

    def inverse(self) -> "Gate":
        return Gate(INVERSE_KIND.get(self.kind, self.kind), self.qubits, self.k, self.mode)


def gate(kind: GateKind, *qubits: int, **kw) -> Gate:
    return Gate(kind, tuple(qubits), **kw)


# --- registered lowering templates -----------------------------------------
#
# A template is a sequence of (kind, wire-slot tuple) over abstract slots
# 0..arity-1.  The two controlled-swap templates are the 7-T and the 4-T
# constructions: both wrap a (relative-phase) Toffoli in a CNOT pair that
# turns the double-flip into a swap of the two target wires.

_TOFFOLI_TEMPLATE = (
    (GateKind.H, (2,)),
    (GateKind.CNOT, (1, 2)),
    (GateKind.T_DG, (2,)),
    (GateKind.CNOT, (0, 2)),
    (GateKind.T, (2,)),
    (GateKind.CNOT, (1, 2)),
    (GateKind.T_DG, (2,)),
    (GateKind.CNOT, (0, 2)),
    (GateKind.T, (1,)),
    (GateKind.T, (2,)),
    (GateKind.H, (2,)),
    (GateKind.CNOT, (0, 1)),
    (GateKind.T, (0,)),
    (GateKind.T_DG, (1,)),
    (GateKind.CNOT, (0, 1)),
)

# Four T gates, all on the last wire; the control is touched by one CNOT only,
# which is what lets same-stage gates share T layers without helper wires.
_RP_TOFFOLI_TEMPLATE = (
    (GateKind.H, (2,)),
    (GateKind.T, (2,)),
    (GateKind.CNOT, (1, 2)),
    (GateKind.T_DG, (2,)),
    (GateKind.CNOT, (0, 2)),
    (GateKind.T, (2,)),
    (GateKind.CNOT, (1, 2)),
    (GateKind.T_DG, (2,)),
    (GateKind.H, (2,)),
)


def _wrap_swap(template) -> tuple:
    wrap = (GateKind.CNOT, (2, 1))
    return (wrap, *((k, tuple(s)) for k, s in template), wrap)


MACRO_TEMPLATES = {
    GateKind.SWAP: (
        (GateKind.CNOT, (0, 1)),
        (GateKind.CNOT, (1, 0)),
        (GateKind.CNOT, (0, 1)),
    ),
    GateKind.TOFFOLI: _TOFFOLI_TEMPLATE,
    GateKind.RP_TOFFOLI: _RP_TOFFOLI_TEMPLATE,
    GateKind.FREDKIN: _wrap_swap(_TOFFOLI_TEMPLATE),
    GateKind.RP_FREDKIN: _wrap_swap(_RP_TOFFOLI_TEMPLATE),
}
