"""Circuit container, register layout, and the compose/invert/lower passes."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .gates import Gate, GateKind, MACRO_TEMPLATES, PRIMITIVE_KINDS


@dataclass(frozen=True)
class RegisterLayout:
    """Index bookkeeping for the three search registers plus helper wires.

    Wires 0..n-1 hold the shift index (wire 0 = most significant bit), wires
    n..n+N-1 hold the data string in subscript order, wires n+N..n+N+M-1 hold
    the pattern, and any helper wires are appended after that.
    """

    n: int
    N: int
    M: int
    ancilla: int = 0

    def __post_init__(self):
        if self.n < 0 or self.N != 2 ** self.n:
            raise ValueError(f"data width must be 2**n, got N={self.N}, n={self.n}")
        if not (1 <= self.M <= self.N):
            raise ValueError(f"pattern width must be in 1..N, got M={self.M}")
        if self.ancilla < 0:
            raise ValueError("ancilla count must be nonnegative")

    @property
    def width(self) -> int:
        return self.n + self.N + self.M + self.ancilla

    @property
    def first_register(self) -> range:
        return range(0, self.n)

    @property
    def second_register(self) -> range:
        return range(self.n, self.n + self.N)

    @property
    def third_register(self) -> range:
        return range(self.n + self.N, self.n + self.N + self.M)

    @property
    def ancilla_register(self) -> range:
        return range(self.n + self.N + self.M, self.width)

    def register(self, name: str) -> range:
        try:
            return {
                "first": self.first_register,
                "second": self.second_register,
                "third": self.third_register,
                "ancilla": self.ancilla_register,
            }[name]
        except KeyError:
            raise ValueError(f"unknown register {name!r}") from None

    def decode_index(self, index: int) -> tuple[int, str, str, str]:
        """Split a basis index into (shift value, data bits, pattern bits, ancilla bits)."""
        bits = format(index, f"0{self.width}b")
        k = int(bits[: self.n], 2) if self.n else 0
        data = bits[self.n : self.n + self.N]
        patt = bits[self.n + self.N : self.n + self.N + self.M]
        return k, data, patt, bits[self.n + self.N + self.M :]

    def encode_index(self, k: int, data: str, pattern: str, anc: str = "") -> int:
        anc = anc or "0" * self.ancilla
        bits = format(k, f"0{self.n}b") if self.n else ""
        return int(bits + data + pattern + anc, 2)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over a fixed wire count.  Immutable once built."""

    width: int
    gates: tuple[Gate, ...]
    layout: RegisterLayout | None = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits, default=-1) >= self.width:
                raise ValueError(f"gate {g} exceeds circuit width {self.width}")
        if self.layout is not None and self.layout.width != self.width:
            raise ValueError("layout width does not match circuit width")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def gate_counts(self) -> Counter:
        return Counter(g.kind for g in self.gates)

    def count(self, *kinds: GateKind) -> int:
        wanted = set(kinds)
        return sum(1 for g in self.gates if g.kind in wanted)

    @property
    def is_lowered(self) -> bool:
        return all(not g.is_macro for g in self.gates)


def circuit(width: int, gates=(), layout: RegisterLayout | None = None) -> Circuit:
    return Circuit(width, tuple(gates), layout)


def compose(a: Circuit, b: Circuit) -> Circuit:
    """a's gates followed by b's gates; widths must agree."""
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} != {b.width}")
    return Circuit(a.width, a.gates + b.gates, a.layout or b.layout)


def concat(*circs: Circuit) -> Circuit:
    if not circs:
        raise ValueError("concat needs at least one circuit")
    out = circs[0]
    for c in circs[1:]:
        out = compose(out, c)
    return out


def invert(c: Circuit) -> Circuit:
    """Reverse the gate order and replace every gate by its inverse kind."""
    return Circuit(c.width, tuple(g.inverse() for g in reversed(c.gates)), c.layout)


def remap(c: Circuit, mapping: dict[int, int] | list[int], new_width: int | None = None) -> Circuit:
    """Rewire a circuit onto new wire indices (used to embed sub-blocks)."""
    if isinstance(mapping, list):
        mapping = dict(enumerate(mapping))
    width = new_width if new_width is not None else max(mapping.values()) + 1
    gates = tuple(
        Gate(g.kind, tuple(mapping[q] for q in g.qubits), g.k, g.mode) for g in c.gates
    )
    return Circuit(width, gates)


def _expand_controlled_swap_run(run: list[Gate]) -> list[Gate]:
    # Same-control controlled-swaps on disjoint wire pairs commute, so a run
    # is expanded layer-interleaved: this leaves every T layer of the run
    # aligned and the per-gate middle CNOTs adjacent (one fan-out column).
    # The closing CNOT layer is emitted in reversed gate order so the run
    # never ends on the wire the next stage starts with.
    template = MACRO_TEMPLATES[run[0].kind]
    last = len(template) - 1
    out = []
    for pos, (kind, slots) in enumerate(template):
        members = reversed(run) if pos == last and len(run) > 1 else run
        for g in members:
            out.append(Gate(kind, tuple(g.qubits[s] for s in slots)))
    return out


def _expand_mcz(g: Gate) -> list[Gate]:
    from .synthesis import mcz  # deferred: synthesis builds Circuits

    ladder = mcz(g.k, g.mode)
    return list(remap(ladder, list(g.qubits), max(g.qubits) + 1).gates)


def lower(c: Circuit) -> Circuit:
    """Expand every macro gate into primitives; unitary is preserved exactly.

    Runs of consecutive same-kind controlled-swaps that share their control and
    act on disjoint wire pairs are expanded interleaved (see
    ``_expand_controlled_swap_run``); all other macros expand gate by gate.
    """
    out: list[Gate] = []
    gates = list(c.gates)
    i = 0
    while i < len(gates):
        g = gates[i]
        if g.kind in (GateKind.FREDKIN, GateKind.RP_FREDKIN):
            run = [g]
            used = set(g.qubits[1:])
            j = i + 1
            while (
                j < len(gates)
                and gates[j].kind is g.kind
                and gates[j].qubits[0] == g.qubits[0]
                and not (set(gates[j].qubits[1:]) & used)
            ):
                used |= set(gates[j].qubits[1:])
                run.append(gates[j])
                j += 1
            out.extend(_expand_controlled_swap_run(run))
            i = j
        elif g.kind is GateKind.MCZ:
            gates[i : i + 1] = _expand_mcz(g)  # ladder may contain macros
        elif g.is_macro:
            template = MACRO_TEMPLATES[g.kind]
            out.extend(Gate(k, tuple(g.qubits[s] for s in slots)) for k, slots in template)
            i += 1
        else:
            out.append(g)
            i += 1
    return Circuit(c.width, tuple(out), c.layout)


# --- serialization ----------------------------------------------------------

def circuit_to_dict(c: Circuit) -> dict:
    doc: dict = {"width": c.width}
    if c.layout is not None:
        lay = c.layout
        doc["layout"] = {"n": lay.n, "N": lay.N, "M": lay.M, "ancilla": lay.ancilla}
    gates = []
    for g in c.gates:
        entry: dict = {"kind": g.kind.value, "qubits": list(g.qubits)}
        if g.k is not None:
            entry["k"] = g.k
        if g.mode is not None:
            entry["mode"] = g.mode
        gates.append(entry)
    doc["gates"] = gates
    return doc


def circuit_from_dict(doc: dict) -> Circuit:
    layout = None
    if doc.get("layout"):
        lay = doc["layout"]
        layout = RegisterLayout(lay["n"], lay["N"], lay["M"], lay.get("ancilla", 0))
    gates = tuple(
        Gate(GateKind(e["kind"]), tuple(e["qubits"]), e.get("k"), e.get("mode"))
        for e in doc["gates"]
    )
    return Circuit(doc["width"], gates, layout)


def dumps(c: Circuit, indent: int | None = None) -> str:
    return json.dumps(circuit_to_dict(c), indent=indent)


def loads(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))


_QASM_NAMES = {
    GateKind.X: "x", GateKind.Z: "z", GateKind.H: "h",
    GateKind.S: "s", GateKind.S_DG: "sdg",
    GateKind.T: "t", GateKind.T_DG: "tdg",
    GateKind.CNOT: "cx", GateKind.CZ: "cz",
}


def to_qasm(c: Circuit) -> str:
    """OPENQASM 2.0 text (h/x/z/s/sdg/t/tdg/cx/cz subset); macros are lowered first."""
    lc = c if c.is_lowered else lower(c)
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{lc.width}];",
    ]
    for g in lc.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{_QASM_NAMES[g.kind]} {args};")
    return "\n".join(lines) + "\n"
