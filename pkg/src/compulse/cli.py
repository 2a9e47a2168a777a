"""Batch command-line front end.

Angles on the command line and in sequence files are degrees.
Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

import argparse
import math
import sys

import numpy as np

from . import library as lib
from .analysis import SweepSpec, measure_order, sweep
from .pulses import SequenceFileError, format_sequence, read_sequence, realize_sequence
from .rotor import compose, phase_distance, rot, zrot
from .two_qubit import CouplingGate, TwoSpinSystem, controlled_z, ising_target, spin_echo_coupling

VERIFY_SEED = 20260101


class UsageError(Exception):
    pass


# name -> parameter signature, in display order
GENERATORS = {
    "naive": "theta, phi",
    "corpse": "theta, phi; n1=1 n2=1 n3=0",
    "tycko90": "phi (theta fixed at 90)",
    "bb1-before": "theta, phi; |theta| <= 720",
    "bb1-after": "theta, phi; |theta| <= 720",
    "bb1-mid": "theta, phi; |theta| <= 720",
    "composite-z": "theta (phi ignored)",
    "bb1-ising": "theta; |theta| <= 720, two-qubit, axis=coupling",
    "ising": "theta; two-qubit, axis=coupling",
}
TWO_QUBIT = {"bb1-ising", "ising"}

_PLACEMENT = {"bb1-before": "before", "bb1-after": "after", "bb1-mid": "middle"}


def _need_theta(args):
    if args.theta is None:
        raise UsageError(f"--theta is required for --seq {args.seq}")
    return math.radians(args.theta)


def build(name, args):
    """Return ``(gate, target, target_label)`` for a built-in generator."""
    phi = math.radians(args.phi)
    try:
        if name == "tycko90":
            if args.theta is not None and args.theta != 90:
                raise UsageError("tycko90 is a fixed 90 degree pulse")
            return lib.tycko90(phi), rot(math.pi / 2, phi), f"rot(90,{args.phi:g})"
        theta = _need_theta(args)
        if name == "naive":
            gate = lib.naive(theta, phi)
        elif name == "corpse":
            gate = lib.corpse(theta, phi)
        elif name in _PLACEMENT:
            gate = lib.bb1(theta, phi, _PLACEMENT[name])
        elif name == "composite-z":
            return lib.composite_z(theta), zrot(theta), f"zrot({args.theta:g})"
        elif name in TWO_QUBIT:
            gate = CouplingGate("bb1" if name == "bb1-ising" else "naive", theta)
            return gate, gate.target, f"exp(-i*{args.theta:g}deg*2IzSz)"
        else:
            raise UsageError(f"unknown sequence {name!r}; run 'list' for the available names")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return gate, rot(theta, phi), f"rot({args.theta:g},{args.phi:g})"


def _resolve(args):
    if args.file is not None:
        try:
            seq = read_sequence(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        if args.theta is None:
            return seq, realize_sequence(seq), "zero-error propagator"
        return seq, rot(math.radians(args.theta), math.radians(args.phi)), \
            f"rot({args.theta:g},{args.phi:g})"
    return build(args.seq, args)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def fmt12(x):
    # 12 significant digits, trailing zeros kept
    return format(float(x) + 0.0, "#.12g")


def cmd_list(args):
    width = max(map(len, GENERATORS))
    return "".join(f"{name:<{width}}  ({sig})\n" for name, sig in GENERATORS.items())


def cmd_synth(args):
    if args.seq in TWO_QUBIT:
        raise UsageError(f"{args.seq} is a two-qubit gate and has no pulse-sequence file form")
    gate, _, _ = build(args.seq, args)
    return format_sequence(gate)


def _sweep_spec(args):
    try:
        return SweepSpec(args.axis, args.start, args.stop, args.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_axis(gate, axis):
    two = isinstance(gate, CouplingGate)
    if axis == "coupling" and not two:
        raise UsageError("axis=coupling is valid only for two-qubit gates (bb1-ising, ising)")
    if axis != "coupling" and two:
        raise UsageError(f"two-qubit gates only support axis=coupling, not {axis}")


def cmd_sweep(args):
    gate, target, target_label = _resolve(args)
    spec = _sweep_spec(args)
    _check_axis(gate, spec.axis)
    res = sweep(gate, target, spec, target_label)
    lines = [
        f"# sequence={res.sequence_label}",
        f"# target={res.target_label}",
        f"# axis={spec.axis}",
        "error_value,fidelity",
    ]
    lines += [f"{fmt12(x)},{fmt12(f)}" for x, f in res.rows]
    return "\n".join(lines) + "\n"


def cmd_order(args):
    gate, target, _ = _resolve(args)
    spec = _sweep_spec(args)
    _check_axis(gate, spec.axis)
    lo, hi = sorted((abs(args.fit_min), abs(args.fit_max)))
    if lo <= 0:
        raise UsageError("--fit-min and --fit-max must be nonzero")
    if hi > max(abs(spec.start), abs(spec.stop)) * (1 + 1e-12):
        raise UsageError("fit range extends beyond the sweep range")
    try:
        fit = measure_order(gate, target, spec.axis, (lo, hi), max(args.points, 5))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return (f"sequence={gate.label} axis={spec.axis} fit=[{lo:g},{hi:g}]\n"
            f"slope={fit.slope:.2f} r2={fit.r_squared:.6f} points={fit.points}\n")


def verify_checks(seed=VERIFY_SEED):
    """Exact identities as ``(name, residual, tolerance)`` triples."""
    checks = []
    d = math.radians
    for deg in (30, 90, 180, 270):
        r = phase_distance(realize_sequence(lib.composite_z(d(deg))), zrot(d(deg)))
        checks.append((f"composite-Z {deg} residual", r, 1e-12))
    cz = controlled_z()
    checks.append(("controlled-Z residual",
                   float(np.max(np.abs(cz - np.diag([1, 1, 1, -1])))), 1e-12))
    for deg in (45, 90, 180):
        w = compose(rot(p.theta, p.phi) for p in lib.w1(d(deg)))
        checks.append((f"W1({deg}) identity residual", phase_distance(w, np.eye(2)), 1e-12))
    for deg in (45, 90, 180):
        r = phase_distance(realize_sequence(lib.corpse(d(deg))), rot(d(deg), 0.0))
        checks.append((f"CORPSE {deg} zero-error residual", r, 1e-12))
    rng = np.random.default_rng(seed)
    J = 10.0
    worst = 0.0
    for nu_i, nu_s in rng.uniform(-500.0, 500.0, size=(20, 2)):
        u = spin_echo_coupling(TwoSpinSystem(nu_i, nu_s, J), 1 / (2 * J))
        worst = max(worst, phase_distance(u, ising_target(math.pi / 2)))
    checks.append(("spin-echo residual", worst, 1e-10))
    return checks


def cmd_verify(args):
    checks = verify_checks(args.seed)
    lines = [f"# seed={args.seed}"]
    ok = True
    for name, residual, tol in checks:
        passed = residual <= tol
        ok &= passed
        lines.append(f"{'PASS' if passed else 'FAIL'} {name} = {residual:.3e} (tol {tol:g})")
    lines.append("all checks passed" if ok else "verification FAILED")
    return "\n".join(lines) + "\n", 0 if ok else 1


def _add_source(p, with_file=True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--seq", metavar="NAME", help="built-in generator name")
    if with_file:
        src.add_argument("--file", metavar="PATH", help="sequence file ('theta_deg phase_deg' per line)")
    p.add_argument("--theta", type=float, metavar="DEG", help="target flip angle in degrees")
    p.add_argument("--phi", type=float, default=0.0, metavar="DEG", help="phase in degrees (default 0)")


def _add_sweep(p):
    p.add_argument("--axis", required=True, choices=("epsilon", "offres", "coupling"))
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--out", metavar="FILE")


def make_parser():
    parser = argparse.ArgumentParser(
        prog="compulse", description="Composite-pulse gate synthesis and robustness analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list built-in generators")

    p = sub.add_parser("synth", help="write a generator's pulse sequence file")
    _add_source(p, with_file=False)
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("sweep", help="fidelity sweep as CSV")
    _add_source(p)
    _add_sweep(p)

    p = sub.add_parser("order", help="fit the infidelity order")
    _add_source(p)
    _add_sweep(p)
    p.add_argument("--fit-min", type=float, required=True)
    p.add_argument("--fit-max", type=float, required=True)

    p = sub.add_parser("verify", help="check exact identities")
    p.add_argument("--seed", type=int, default=VERIFY_SEED)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    status = 0
    try:
        if args.command == "list":
            out = cmd_list(args)
        elif args.command == "synth":
            out = cmd_synth(args)
        elif args.command == "sweep":
            out = cmd_sweep(args)
        elif args.command == "order":
            out = cmd_order(args)
        else:
            out, status = cmd_verify(args)
    except (UsageError, SequenceFileError) as exc:
        print(f"compulse {args.command}: error: {exc}", file=sys.stderr)
        return 2
    _emit(out, getattr(args, "out", None))
    return status


if __name__ == "__main__":
    sys.exit(main())
