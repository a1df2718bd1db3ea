"""Line-oriented circuit files: parsing, serialization, execution.

A program looks like::

    # entangle a pair and read it out
    QUBITS 2
    H 0
    CNOT 0 1
    MEASURE Z all SHOTS=1000 SEED=7

``QUBITS`` must come first.  Gate lines name a registered gate, its qubit
operands, then any numeric parameters.  ``MEASURE`` is optional but must
be last; it names a Pauli observable, the measured qubits (or ``all``),
and the shot count and seed.  ``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gates, measure
from .statevec import StateVector, new_basis_state


class CircuitParseError(ValueError):
    """Raised with the offending line number for any malformed program."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


# name -> (qubit operands, numeric parameters)
GATE_SIGNATURES = {
    "I": (1, 0),
    "X": (1, 0),
    "Y": (1, 0),
    "Z": (1, 0),
    "H": (1, 0),
    "RX": (1, 1),
    "RY": (1, 1),
    "RZ": (1, 1),
    "R": (1, 4),
    "CNOT": (2, 0),
    "CU": (2, 8),
}

MEASURE_OBSERVABLES = ("X", "Y", "Z")


@dataclass(frozen=True)
class Instruction:
    gate: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()


@dataclass(frozen=True)
class MeasureDirective:
    observable: str
    targets: tuple[int, ...] | None  # None means every qubit in order
    shots: int
    seed: int


@dataclass(frozen=True)
class CircuitProgram:
    n_qubits: int
    instructions: tuple[Instruction, ...]
    measure: MeasureDirective | None = None


def gate_matrix(inst: Instruction) -> np.ndarray:
    """The 2x2 matrix a gate line denotes (the applied part for CNOT/CU)."""
    name = inst.gate
    if name in ("I", "X", "Y", "Z"):
        return gates.pauli(name)
    if name == "H":
        return gates.hadamard()
    if name == "RX":
        return gates.rotation_gate((1, 0, 0), inst.params[0])
    if name == "RY":
        return gates.rotation_gate((0, 1, 0), inst.params[0])
    if name == "RZ":
        return gates.rotation_gate((0, 0, 1), inst.params[0])
    if name == "R":
        nx, ny, nz, theta = inst.params
        return gates.rotation_gate((nx, ny, nz), theta)
    if name == "CNOT":
        return gates.pauli("X")
    if name == "CU":
        p = inst.params
        m = np.array(
            [[p[0] + 1j * p[1], p[2] + 1j * p[3]], [p[4] + 1j * p[5], p[6] + 1j * p[7]]]
        )
        return gates.as_unitary(m)
    raise ValueError(f"unknown gate {name!r}")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_circuit(text: str) -> CircuitProgram:
    """Parse a program, validating every line against the gate registry."""
    n_qubits: int | None = None
    instructions: list[Instruction] = []
    directive: MeasureDirective | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].upper()
        if directive is not None:
            raise CircuitParseError(lineno, "MEASURE must be the last statement")
        if head == "QUBITS":
            if n_qubits is not None:
                raise CircuitParseError(lineno, "duplicate QUBITS declaration")
            if len(tokens) != 2:
                raise CircuitParseError(lineno, "QUBITS takes exactly one count")
            try:
                n_qubits = int(tokens[1])
            except ValueError:
                raise CircuitParseError(lineno, f"bad qubit count {tokens[1]!r}") from None
            if n_qubits < 1:
                raise CircuitParseError(lineno, "qubit count must be positive")
            continue
        if n_qubits is None:
            raise CircuitParseError(lineno, "QUBITS must come before any instruction")
        if head == "MEASURE":
            directive = _parse_measure(tokens, lineno, n_qubits)
            continue
        if head not in GATE_SIGNATURES:
            raise CircuitParseError(lineno, f"unknown gate {tokens[0]!r}")
        n_ops, n_params = GATE_SIGNATURES[head]
        if len(tokens) != 1 + n_ops + n_params:
            raise CircuitParseError(
                lineno,
                f"{head} takes {n_ops} qubit(s) and {n_params} parameter(s), got {len(tokens) - 1} tokens",
            )
        try:
            qubits = tuple(int(t) for t in tokens[1 : 1 + n_ops])
        except ValueError:
            raise CircuitParseError(lineno, "qubit operands must be integers") from None
        for q in qubits:
            if not 0 <= q < n_qubits:
                raise CircuitParseError(lineno, f"qubit {q} out of range (register has {n_qubits})")
        if len(set(qubits)) != len(qubits):
            raise CircuitParseError(lineno, "qubit operands must be distinct")
        try:
            params = tuple(float(t) for t in tokens[1 + n_ops :])
        except ValueError:
            raise CircuitParseError(lineno, "parameters must be numbers") from None
        inst = Instruction(head, qubits, params)
        try:
            gate_matrix(inst)  # fail fast on bad axes or non-unitary CU blocks
        except ValueError as exc:
            raise CircuitParseError(lineno, str(exc)) from None
        instructions.append(inst)
    if n_qubits is None:
        raise CircuitParseError(0, "program has no QUBITS declaration")
    return CircuitProgram(n_qubits, tuple(instructions), directive)


def _parse_measure(tokens: list[str], lineno: int, n_qubits: int) -> MeasureDirective:
    if len(tokens) < 4:
        raise CircuitParseError(lineno, "MEASURE needs an observable, targets, SHOTS= and SEED=")
    obs = tokens[1].upper()
    if obs not in MEASURE_OBSERVABLES:
        raise CircuitParseError(lineno, f"observable must be one of {MEASURE_OBSERVABLES}")
    kv: dict[str, int] = {}
    rest: list[str] = []
    for tok in tokens[2:]:
        if "=" in tok:
            key, _, val = tok.partition("=")
            try:
                kv[key.upper()] = int(val)
            except ValueError:
                raise CircuitParseError(lineno, f"bad value in {tok!r}") from None
        else:
            rest.append(tok)
    if set(kv) != {"SHOTS", "SEED"}:
        raise CircuitParseError(lineno, "MEASURE requires exactly SHOTS= and SEED=")
    if kv["SHOTS"] < 1:
        raise CircuitParseError(lineno, "SHOTS must be positive")
    if not rest:
        raise CircuitParseError(lineno, "MEASURE needs target qubits or 'all'")
    if len(rest) == 1 and rest[0].lower() == "all":
        targets = None
    else:
        try:
            targets = tuple(int(t) for t in rest)
        except ValueError:
            raise CircuitParseError(lineno, "targets must be qubit indices or 'all'") from None
        for q in targets:
            if not 0 <= q < n_qubits:
                raise CircuitParseError(lineno, f"measured qubit {q} out of range")
        if len(set(targets)) != len(targets):
            raise CircuitParseError(lineno, "measured qubits must be distinct")
    return MeasureDirective(obs, targets, kv["SHOTS"], kv["SEED"])


def serialize_circuit(program: CircuitProgram) -> str:
    """Canonical text form; parsing it back gives an equal program."""
    lines = [f"QUBITS {program.n_qubits}"]
    for inst in program.instructions:
        parts = [inst.gate, *map(str, inst.qubits), *(repr(p) for p in inst.params)]
        lines.append(" ".join(parts))
    if program.measure is not None:
        d = program.measure
        targets = "all" if d.targets is None else " ".join(map(str, d.targets))
        lines.append(f"MEASURE {d.observable} {targets} SHOTS={d.shots} SEED={d.seed}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ShotRecord:
    shot_index: int
    eigenvalue: int     # product of the per-qubit outcomes
    basis_string: str   # one character per measured qubit, '0' <-> +1


@dataclass
class CircuitResult:
    state: StateVector          # state after the gates, before any readout
    shots: list[ShotRecord]


def apply_program(program: CircuitProgram, state: StateVector | None = None) -> StateVector:
    """Run just the gate list, starting from ``|0...0>`` unless given a state."""
    if state is None:
        state = new_basis_state(program.n_qubits, 0)
    if state.n_qubits != program.n_qubits:
        raise ValueError("state size does not match the program")
    for inst in program.instructions:
        m = gate_matrix(inst)
        if len(inst.qubits) == 1:
            gates.apply_single(state, m, inst.qubits[0])
        else:
            gates.apply_controlled(state, m, inst.qubits[0], inst.qubits[1])
    return state


def run_circuit(program: CircuitProgram) -> CircuitResult:
    """Execute gates and, if present, the measurement directive.

    Each shot restarts from the post-gate state and measures the listed
    qubits one after another, so later outcomes see the collapse from
    earlier ones.  The record keeps the per-shot eigenvalue product and
    the outcome bit string (qubit order as listed, '0' for +1).
    """
    state = apply_program(program)
    shots: list[ShotRecord] = []
    d = program.measure
    if d is not None:
        targets = tuple(range(program.n_qubits)) if d.targets is None else d.targets
        obs = gates.pauli(d.observable)
        rng = measure.make_rng(d.seed)
        for index in range(d.shots):
            work = state.copy()
            bits = []
            product = 1
            for q in targets:
                out = measure.measure_projective(work, obs, rng, target=q)
                work = out.post_state
                s = 1 if out.eigenvalue > 0 else -1
                product *= s
                bits.append("0" if s > 0 else "1")
            shots.append(ShotRecord(index, product, "".join(bits)))
    return CircuitResult(state, shots)
