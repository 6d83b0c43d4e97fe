"""Clifford+T decompositions and the relative-phase controlled-swap algebra.

The two headline constructions, both on wires (control, a, b):

* ``fredkin_7t``    - exact controlled-swap, 7 T gates, T-depth 5.
* ``rp_fredkin_4t`` - controlled-swap up to per-basis-state phases, 4 T gates,
  T-depth 4, matrix diag(1,1,1,1,1,[[0,i],[-i,0]],-1).

A relative-phase controlled-swap RF factors as RF = F.D1 = D2.F with F the
exact gate and D1, D2 diagonal; ``phase_profile`` recovers D1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, lower, remap
from .gates import Gate, GateKind, MACRO_TEMPLATES, mcz_arity
from .simulator import unitary_of

DIAG_TOL = 1e-10


def _template_circuit(kind: GateKind) -> Circuit:
    gates = tuple(Gate(k, slots) for k, slots in MACRO_TEMPLATES[kind])
    return Circuit(3, gates)


def toffoli_7t() -> Circuit:
    """Doubly-controlled X on (c1, c2, t) from the standard 7-T network."""
    return _template_circuit(GateKind.TOFFOLI)


def rp_toffoli_4t() -> Circuit:
    """Relative-phase doubly-controlled X: diag(1,1,1,1,1,-1,[[0,-i],[i,0]])."""
    return _template_circuit(GateKind.RP_TOFFOLI)


def fredkin_7t() -> Circuit:
    """Exact controlled-swap on (control, a, b); T-count 7, T-depth 5, 8 CNOTs."""
    return _template_circuit(GateKind.FREDKIN)


def rp_fredkin_4t() -> Circuit:
    """Relative-phase controlled-swap; T-count 4, T-depth 4, 5 CNOTs."""
    return _template_circuit(GateKind.RP_FREDKIN)


def _has_rp_toffoli_shape(u: np.ndarray) -> bool:
    # diagonal except an anti-diagonal 2x2 block in rows/cols 6, 7
    expect = np.zeros((8, 8), dtype=bool)
    expect[np.arange(6), np.arange(6)] = True
    expect[6, 7] = expect[7, 6] = True
    nonzero = np.abs(u) > DIAG_TOL
    return bool(np.array_equal(nonzero, expect))


def _has_rp_fredkin_shape(u: np.ndarray) -> bool:
    # diagonal except an anti-diagonal 2x2 block in rows/cols 5, 6
    expect = np.zeros((8, 8), dtype=bool)
    for i in (0, 1, 2, 3, 4, 7):
        expect[i, i] = True
    expect[5, 6] = expect[6, 5] = True
    nonzero = np.abs(u) > DIAG_TOL
    return bool(np.array_equal(nonzero, expect))


def rp_fredkin_from_rp_toffoli(rtof: Circuit) -> Circuit:
    """Wrap a relative-phase doubly-controlled X in two CNOTs to obtain a
    relative-phase controlled-swap.

    The input must act on 3 wires as a diagonal matrix apart from an
    anti-diagonal block in rows/cols 6 and 7; this is checked with the matrix
    oracle.  The same wrapping maps the exact Toffoli to the exact
    controlled-swap.
    """
    if rtof.width != 3:
        raise ValueError("expected a 3-wire circuit")
    u = unitary_of(rtof)
    if not _has_rp_toffoli_shape(u):
        raise ValueError("input is not a relative-phase doubly-controlled X")
    wrap = Gate(GateKind.CNOT, (2, 1))
    return Circuit(3, (wrap, *rtof.gates, wrap))


_FREDKIN_PERM = (0, 1, 2, 3, 4, 6, 5, 7)


def fredkin_matrix() -> np.ndarray:
    mat = np.zeros((8, 8), dtype=complex)
    for col, row in enumerate(_FREDKIN_PERM):
        mat[row, col] = 1.0
    return mat


@dataclass(frozen=True)
class PhaseProfile:
    """Eight unit-modulus phases characterizing a relative-phase controlled-swap."""

    zs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.zs) != 8:
            raise ValueError("a phase profile has exactly 8 entries")
        if any(abs(abs(z) - 1.0) > 1e-12 for z in self.zs):
            raise ValueError("phase profile entries must have unit modulus")

    def __getitem__(self, i: int) -> complex:
        return self.zs[i]

    def __iter__(self):
        return iter(self.zs)


def phase_profile(rfred: Circuit) -> PhaseProfile:
    """Diagonal factor D1 with RF = F.D1, F the exact controlled-swap.

    Raises if F^dagger . U(rfred) has any off-diagonal residue, i.e. the input
    is not a relative-phase controlled-swap.
    """
    if rfred.width != 3:
        raise ValueError("expected a 3-wire circuit")
    u = unitary_of(rfred)
    residue = fredkin_matrix().conj().T @ u
    off = residue - np.diag(np.diag(residue))
    if np.max(np.abs(off)) >= DIAG_TOL:
        raise ValueError("input is not a relative-phase controlled-swap")
    return PhaseProfile(tuple(np.diag(residue)))


def mcz(k: int, mode: str = "clean") -> Circuit:
    """Phase flip on |1...1> of k controls plus one target.

    Wires: controls 0..k-1, target k, then helper wires (k-2 of them for
    k >= 3).  ``mode`` fixes the helper-wire contract:

    * "clean":    helpers must arrive as |0> and are returned as |0>;
      an AND ladder of relative-phase doubly-controlled X gates feeds one
      exact doubly-controlled Z.  T-count 8(k-2)+7 for k >= 2.
    * "borrowed": helpers may hold any state and are restored; each ladder
      level toggles twice, the target level needs exact gates.  T-count
      16k-26 for k >= 3.
    """
    if k < 1:
        raise ValueError("need at least one control")
    if mode not in ("clean", "borrowed"):
        raise ValueError(f"unknown ancilla mode {mode!r}")
    if k == 1:
        return Circuit(2, (Gate(GateKind.CZ, (0, 1)),))
    target = k
    if k == 2:
        return Circuit(
            3,
            (
                Gate(GateKind.H, (target,)),
                Gate(GateKind.TOFFOLI, (0, 1, target)),
                Gate(GateKind.H, (target,)),
            ),
        )
    helpers = list(range(k + 1, 2 * k - 1))
    gates: list[Gate] = [Gate(GateKind.H, (target,))]
    if mode == "clean":
        compute = [Gate(GateKind.RP_TOFFOLI, (0, 1, helpers[0]))]
        for j in range(1, k - 2):
            compute.append(Gate(GateKind.RP_TOFFOLI, (j + 1, helpers[j - 1], helpers[j])))
        gates += compute
        gates.append(Gate(GateKind.TOFFOLI, (helpers[-1], k - 1, target)))
        gates += [g for g in reversed(compute)]
    else:
        top = Gate(GateKind.TOFFOLI, (k - 1, helpers[-1], target))
        down = [
            Gate(GateKind.RP_TOFFOLI, (j + 1, helpers[j - 1], helpers[j]))
            for j in range(k - 3, 0, -1)
        ]
        bottom = Gate(GateKind.RP_TOFFOLI, (0, 1, helpers[0]))
        half = [top, *down, bottom, *reversed(down)]
        gates += half + half
    gates.append(Gate(GateKind.H, (target,)))
    return Circuit(2 * k - 1, tuple(gates))
