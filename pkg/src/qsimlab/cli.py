"""Batch command-line driver.

Five subcommands: ``circuit`` (run a circuit file), ``epr`` (paired
analyzer sampling), ``doubleslit`` and ``propagator`` (lattice descriptor
runs), and ``limits`` (closed-form table).  Every run writes its outputs
plus a JSON manifest recording the command, input hash, seed, and
constants version into the output directory, which defaults to the
``QSIMLAB_OUTDIR`` environment variable and then the working directory.

Exit codes: 0 on success, 1 for domain errors (bad values, malformed
files), 2 for usage errors (argparse).  Identical seeds give byte
identical output files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__, circuits, entangle, limits, measure, pathint, statevec

OUTDIR_ENV = "QSIMLAB_OUTDIR"

# Significant digits for raw amplitudes and for derived real quantities.
AMP_DIGITS = 17
REAL_DIGITS = 12


def _fmt_amp(x: float) -> str:
    return format(float(x), f".{AMP_DIGITS}g")


def _fmt_real(x: float) -> str:
    return format(float(x), f".{REAL_DIGITS}g")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(
    outdir: Path,
    prefix: str,
    command: str,
    outputs: list[str],
    seed: int | None,
    input_path: Path | None = None,
) -> Path:
    manifest = {
        "command": command,
        "input_sha256": _sha256(input_path) if input_path is not None else None,
        "seed": seed,
        "constants_version": limits.CONSTANTS_VERSION,
        "outputs": outputs,
        "version": __version__,
    }
    path = outdir / f"{prefix}_manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _write_csv(path: Path, header: list[str], rows, seed: int | None = None) -> None:
    lines = []
    if seed is not None:
        lines.append(f"# seed={seed}")
    lines.append(",".join(header))
    lines.extend(",".join(str(c) for c in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _outdir(args) -> Path:
    chosen = args.outdir or os.environ.get(OUTDIR_ENV) or "."
    path = Path(chosen)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _cmd_circuit(args) -> int:
    outdir = _outdir(args)
    source = Path(args.file)
    program = circuits.parse_circuit(source.read_text())
    result = circuits.run_circuit(program)
    outputs = []
    state_path = outdir / "circuit_state.json"
    state_path.write_text(statevec.to_json(result.state) + "\n")
    outputs.append(state_path.name)
    seed = program.measure.seed if program.measure is not None else None
    if program.measure is not None:
        shots_path = outdir / "circuit_shots.csv"
        _write_csv(
            shots_path,
            ["shot_index", "eigenvalue", "basis_string"],
            ((s.shot_index, s.eigenvalue, s.basis_string) for s in result.shots),
            seed=seed,
        )
        outputs.append(shots_path.name)
    _write_manifest(outdir, "circuit", "circuit", outputs, seed, input_path=source)
    print(f"circuit: {len(result.shots)} shots -> {outdir}")
    return 0


def _cmd_epr(args) -> int:
    outdir = _outdir(args)
    rng = measure.make_rng(args.seed)
    record = entangle.epr_sample(args.angle_a, args.angle_b, args.shots, rng)
    path = outdir / "epr.csv"
    c = record.counts
    row = (
        _fmt_real(record.angle_a),
        _fmt_real(record.angle_b),
        c[(1, 1)],
        c[(1, -1)],
        c[(-1, 1)],
        c[(-1, -1)],
        _fmt_real(record.empirical_correlation),
    )
    _write_csv(
        path,
        ["angle_a", "angle_b", "n_pp", "n_pm", "n_mp", "n_mm", "empirical_correlation"],
        [row],
        seed=args.seed,
    )
    _write_manifest(outdir, "epr", "epr", [path.name], args.seed)
    print(f"epr: correlation {record.empirical_correlation:+.4f} -> {path}")
    return 0


def _field_rows(fields: dict[int, pathint.AmplitudeField]):
    for slice_index, field in sorted(fields.items()):
        mass = field.probabilities()
        for site, amp in enumerate(field.values):
            yield (
                slice_index,
                site,
                _fmt_amp(amp.real),
                _fmt_amp(amp.imag),
                _fmt_real(mass[site]),
            )


def _run_lattice_command(args, name: str, require_slits: bool) -> int:
    outdir = _outdir(args)
    source = Path(args.config)
    desc = json.loads(source.read_text())
    if require_slits and "slits" not in desc:
        raise ValueError(f"{name} descriptor needs a slits block")
    if not require_slits:
        desc.pop("slits", None)
    fields = pathint.run_descriptor(desc)
    path = outdir / f"{name}.csv"
    _write_csv(path, ["slice", "site", "re", "im", "probability"], _field_rows(fields))
    _write_manifest(outdir, name, name, [path.name], None, input_path=source)
    print(f"{name}: {len(fields)} slice(s) -> {path}")
    return 0


def _cmd_doubleslit(args) -> int:
    return _run_lattice_command(args, "doubleslit", require_slits=True)


def _cmd_propagator(args) -> int:
    return _run_lattice_command(args, "propagator", require_slits=False)


def _cmd_limits(args) -> int:
    outdir = _outdir(args)
    table = limits.limits_table(
        mass=args.mass,
        temperature=args.temperature,
        bits=args.bits,
        bandwidth=args.bandwidth,
        signal_power=args.signal_power,
        noise_power=args.noise_power,
    )
    if args.format == "json":
        text = json.dumps({k: float(_fmt_real(v)) for k, v in table.items()}, indent=2)
        path = outdir / "limits.json"
    else:
        width = max(len(k) for k in table)
        text = "\n".join(f"{k.ljust(width)}  {_fmt_real(v)}" for k, v in table.items())
        path = outdir / "limits.txt"
    path.write_text(text + "\n")
    _write_manifest(outdir, "limits", "limits", [path.name], None)
    print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsimlab", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--outdir",
        default=None,
        help=f"output directory (default: ${OUTDIR_ENV} or the working directory)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("circuit", help="run a circuit file")
    p.add_argument("--file", required=True, help="circuit program path")
    p.set_defaults(func=_cmd_circuit)

    p = sub.add_parser("epr", help="sample paired analyzer measurements on the singlet")
    p.add_argument("--angle-a", type=float, required=True)
    p.add_argument("--angle-b", type=float, required=True)
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_epr)

    p = sub.add_parser("doubleslit", help="two-slit lattice interference from a descriptor")
    p.add_argument("--config", required=True, help="JSON experiment descriptor")
    p.set_defaults(func=_cmd_doubleslit)

    p = sub.add_parser("propagator", help="plain lattice propagation from a descriptor")
    p.add_argument("--config", required=True, help="JSON experiment descriptor")
    p.set_defaults(func=_cmd_propagator)

    p = sub.add_parser("limits", help="closed-form physical limits table")
    p.add_argument("--mass", type=float, default=None, help="kg")
    p.add_argument("--temperature", type=float, default=None, help="K")
    p.add_argument("--bits", type=float, default=1.0, help="bits erased (with --temperature)")
    p.add_argument("--bandwidth", type=float, default=None, help="Hz")
    p.add_argument("--signal-power", type=float, default=None)
    p.add_argument("--noise-power", type=float, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_limits)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
