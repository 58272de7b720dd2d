"""Command-line front end.

    concurrence-bounds eval STATE.json [--bounds phi,ppt,realign] [--detection-tol X] [--tol X]
    concurrence-bounds sweep [--q2 0.5] [--q4 0.01] [--theta-min 0] [--theta-max pi/4]
                             [--steps 200] [--out FILE] [--closed-form]
    concurrence-bounds threshold {phi,ppt,realign,witness} [--q2] [--q4] [--tol 1e-6]
    concurrence-bounds selftest [--level quick|full] [--seed 0]

State files are JSON: ``{"dim": N, "matrix": [[[re, im], ...], ...]}`` with
N^2 rows of N^2 ``[re, im]`` pairs. Exit codes: 0 success, 1 invalid input or
arguments, 2 numerical failure or failed self-test.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import astuple, dataclass
from pathlib import Path

import numpy as np

from . import bounds, selftest, states
from .bipartite import STATE_TOL, DensityMatrix
from .errors import InvalidParams, InvalidStateError, NoConvergenceError, NumericalFailure

SWEEP_HEADER = ("theta", "q1", "q3", "bound_phi", "bound_ppt", "bound_realign", "bound_witness")
BOUND_NAMES = ("phi", "ppt", "realign", "witness")


class CliError(Exception):
    """Invalid input or arguments; maps to exit code 1."""


class NoCrossing(ValueError):
    pass


# -- state files --------------------------------------------------------------


def load_state(path, tol: float = STATE_TOL) -> DensityMatrix:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidStateError(f"cannot read {path}: {exc.strerror}", "readable") from exc
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"{path} is not valid JSON: {exc}", "schema") from exc
    return state_from_document(doc, tol)


def state_from_document(doc, tol: float = STATE_TOL) -> DensityMatrix:
    if not isinstance(doc, dict) or "dim" not in doc or "matrix" not in doc:
        raise InvalidStateError('state document needs keys "dim" and "matrix"', "schema")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidStateError(f'"dim" must be a positive integer, got {dim!r}', "schema")
    rows = doc["matrix"]
    size = dim * dim
    if not isinstance(rows, list) or len(rows) != size:
        raise InvalidStateError(f'"matrix" must have {size} rows', "shape")
    m = np.empty((size, size), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise InvalidStateError(f"row {i} must have {size} entries", "shape")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise InvalidStateError(f"entry ({i}, {j}) must be a [re, im] pair of numbers", "schema")
            m[i, j] = complex(entry[0], entry[1])
    return DensityMatrix.from_matrix(m, dim, tol=tol)


def state_document(rho: DensityMatrix) -> dict:
    return {
        "dim": rho.dim,
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in rho.matrix],
    }


def dump_state(rho: DensityMatrix, path) -> None:
    Path(path).write_text(json.dumps(state_document(rho)))


# -- the example-family slice -------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    theta: float
    q1: float
    q3: float
    bound_phi: float
    bound_ppt: float
    bound_realign: float
    bound_witness: float


def slice_bounds(q2: float, q4: float, theta: float, closed_form: bool = False) -> SweepRow:
    q = states.slice_to_params(states.ThetaSlice(q2, q4, theta))
    if closed_form:
        phi, ppt, rea = states.closed_phi(q), states.closed_ppt(q), states.closed_realign(q)
    else:
        rep = bounds.bound_report(states.hou_state(q))
        phi, ppt, rea = rep.phi_bound, rep.ppt_bound, rep.realign_bound
    return SweepRow(theta, q.q1, q.q3, phi, ppt, rea, states.closed_witness(q))


def theta_grid(theta_min: float, theta_max: float, steps: int) -> np.ndarray:
    return np.linspace(theta_min, theta_max, steps)


def sweep_rows(q2=0.5, q4=0.01, theta_min=0.0, theta_max=math.pi / 4, steps=200, closed_form=False):
    if steps < 2:
        raise InvalidParams(f"steps must be >= 2, got {steps}")
    if theta_min > theta_max:
        raise InvalidParams(f"theta_min {theta_min} exceeds theta_max {theta_max}")
    return [slice_bounds(q2, q4, float(t), closed_form) for t in theta_grid(theta_min, theta_max, steps)]


def write_sweep_csv(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for row in rows:
        w.writerow([repr(float(x)) for x in astuple(row)])


def find_threshold(
    name: str,
    q2: float = 0.5,
    q4: float = 0.01,
    tol: float = 1e-6,
    detection_tol: float = bounds.DETECTION_TOL,
    closed_form: bool = False,
    theta_min: float = 0.0,
    theta_max: float = math.pi / 4,
) -> float:
    """Smallest theta (to within ``tol``) at which the named bound exceeds ``detection_tol``.

    Assumes one crossing on [theta_min, theta_max]; raises NoCrossing when the
    bound already detects at theta_min or never detects at theta_max.
    """
    if name not in BOUND_NAMES:
        raise InvalidParams(f"unknown bound {name!r}; choose from {', '.join(BOUND_NAMES)}")
    field_name = f"bound_{name}"

    def detects(theta):
        return getattr(slice_bounds(q2, q4, theta, closed_form), field_name) > detection_tol

    if detects(theta_min):
        raise NoCrossing(f"{name} bound already detects entanglement at theta={theta_min}")
    if not detects(theta_max):
        raise NoCrossing(f"{name} bound does not detect entanglement anywhere on [{theta_min}, {theta_max}]")
    lo, hi = theta_min, theta_max
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if detects(mid):
            hi = mid
        else:
            lo = mid
    return hi


# -- commands -----------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:#.12g}"


def _parse_bounds(spec: str) -> list[str]:
    names = [s.strip() for s in spec.split(",") if s.strip()]
    bad = [s for s in names if s not in BOUND_NAMES]
    if bad or not names:
        raise CliError(f"--bounds accepts a comma list of {','.join(BOUND_NAMES)}; got {spec!r}")
    return names


def cmd_eval(args, out) -> int:
    names = _parse_bounds(args.bounds)
    if "witness" in names:
        raise CliError("the witness bound has a closed form only for the example family; it is not available in eval")
    rho = load_state(args.input, tol=args.tol)
    rep = bounds.bound_report(rho, detection_tol=args.detection_tol)
    print(f"n = {rep.n}", file=out)
    for name in names:
        print(f"{name}_trace_norm = {_fmt(getattr(rep, f'{name}_trace_norm'))}", file=out)
        print(f"{name}_bound = {_fmt(rep.bound(name))}", file=out)
    detected = [k for k in names if k in rep.detected_by]
    print(f"detected_by = {','.join(detected) if detected else '(none)'}", file=out)
    return 0


def cmd_sweep(args, out) -> int:
    rows = sweep_rows(args.q2, args.q4, args.theta_min, args.theta_max, args.steps, args.closed_form)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_sweep_csv(rows, fh)
    else:
        write_sweep_csv(rows, out)
    return 0


def cmd_threshold(args, out) -> int:
    try:
        theta = find_threshold(
            args.bound, args.q2, args.q4, args.tol, args.detection_tol, args.closed_form
        )
    except NoCrossing as exc:
        raise CliError(f"no crossing: {exc}") from exc
    print(_fmt(theta), file=out)
    return 0


def cmd_selftest(args, out) -> int:
    for r in selftest.run_suites(args.level, args.seed):
        status = "ok" if r.passed else "FAIL"
        print(f"{r.name:<26} {r.total - r.failures}/{r.total} {status}", file=out)
        if not r.passed:
            print(json.dumps({"suite": r.name, "counterexample": r.counterexample}), file=out)
            return 2
    print("all suites passed", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="concurrence-bounds", description="Concurrence lower bounds for N x N bipartite states.")
    sub = p.add_subparsers(dest="command", required=True)

    def slice_args(sp):
        sp.add_argument("--q2", type=float, default=0.5)
        sp.add_argument("--q4", type=float, default=0.01)
        sp.add_argument("--closed-form", action="store_true", help="use the closed-form expressions instead of numerics")
        sp.add_argument("--detection-tol", type=float, default=bounds.DETECTION_TOL)

    e = sub.add_parser("eval", help="evaluate bounds for a state file")
    e.add_argument("input")
    e.add_argument("--bounds", default="phi,ppt,realign")
    e.add_argument("--detection-tol", type=float, default=bounds.DETECTION_TOL)
    e.add_argument("--tol", type=float, default=STATE_TOL, help="state validation tolerance")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("sweep", help="write the theta sweep of the example family as CSV")
    slice_args(s)
    s.add_argument("--theta-min", type=float, default=0.0)
    s.add_argument("--theta-max", type=float, default=math.pi / 4)
    s.add_argument("--steps", type=int, default=200)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    t = sub.add_parser("threshold", help="bisect for the detection threshold in theta")
    t.add_argument("bound", choices=BOUND_NAMES)
    slice_args(t)
    t.add_argument("--tol", type=float, default=1e-6)
    t.set_defaults(func=cmd_threshold)

    st = sub.add_parser("selftest", help="run the sampled property suites")
    st.add_argument("--level", choices=("quick", "full"), default="quick")
    st.add_argument("--seed", type=int, default=0)
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args, out)
    except InvalidStateError as exc:
        print(f"error: invalid state ({exc.invariant}): {exc}", file=sys.stderr)
        return 1
    except (CliError, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericalFailure, NoConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
