"""Command-line interface: geodesics, transport, and verification suites.

All commands read JSON (from --in or stdin where input is required) and
emit a JSON report:

    {
      "schema_version": 1,
      "command": "...",
      "inputs": {...},            # echo of the parsed input and flags
      "results": [ {"name", "residual", "tolerance", "passed"}, ... ],
      "outputs": {...},           # command-specific payload
      "passed": true/false,
      "wall_time_s": ...
    }

Reports are deterministic for a fixed configuration and seed apart from
the wall_time_s field; randomized suites draw from numpy's PCG64
generator seeded with --seed.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
parse errors.

Points are encoded as {"omega1": [[...]], "omega2": [[...]]} with real
matrices; complex scalars and arrays use [re, im] pairs.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
import time

import numpy as np

from ._point import SiegelPoint, standard_point
from .errors import SiegelFlowError
from .sections import (
    CorrectedSection,
    HalfFormFrame,
    coherent_state,
    difference_norm,
    fock_coefficients,
    from_fock_coefficients,
    inner_product,
    norm,
    section_from_json,
    section_to_json,
)
from .siegel import geodesic_between, geodesic_eval
from .suites import SUITES
from .sympl import MetaplecticElement
from .transport import (
    metaplectic_act,
    transport_corrected,
    transport_kernel_apply,
    transport_ode,
    transport_poly_standard,
)

SCHEMA_VERSION = 1


def _parse_point(data: dict) -> SiegelPoint:
    return SiegelPoint(np.asarray(data["omega1"], dtype=float), np.asarray(data["omega2"], dtype=float))


def _point_json(p: SiegelPoint) -> dict:
    return {"omega1": p.omega1.tolist(), "omega2": p.omega2.tolist()}


def _load_input(args) -> dict:
    text = sys.stdin.read() if args.input in (None, "-") else open(args.input).read()
    return json.loads(text)


def _emit(report: dict, out_path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _report(command: str, inputs: dict, results: list[dict], outputs: dict, t0: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "outputs": outputs,
        "passed": all(r["passed"] for r in results),
        "wall_time_s": round(time.time() - t0, 6),
    }


def cmd_geodesic(args) -> int:
    t0 = time.time()
    data = _load_input(args)
    omega = _parse_point(data["omega"])
    omega_p = _parse_point(data["omega_p"])
    spec = geodesic_between(omega, omega_p)
    residual = spec.endpoint_residual()
    samples = {
        f"{t:.2f}": _point_json(geodesic_eval(spec, t)) for t in (0.0, 0.25, 0.5, 0.75, 1.0)
    }
    tol = args.tol if args.tol is not None else 1e-8
    results = [
        {
            "name": "geodesic/endpoint_round_trip",
            "residual": float(residual),
            "tolerance": tol,
            "passed": bool(residual <= tol),
        }
    ]
    outputs = {
        "g": {k: getattr(spec.g, k).tolist() for k in "abcd"},
        "lambda": spec.lam.tolist(),
        "samples": samples,
    }
    report = _report("geodesic", data, results, outputs, t0)
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def _parse_state(data: dict, omega: SiegelPoint):
    state = data.get("state", {"alpha": [[0.0, 0.0]] * omega.n})
    if "alpha" in state:
        arr = np.asarray(state["alpha"], dtype=float)
        alpha = arr[:, 0] + 1j * arr[:, 1]
        return alpha, coherent_state(alpha, omega)
    return None, section_from_json(state["section"])


def cmd_transport(args) -> int:
    t0 = time.time()
    data = _load_input(args)
    omega = _parse_point(data["omega"])
    omega_p = _parse_point(data["omega_p"])
    alpha, psi = _parse_state(data, omega)
    results: list[dict] = []
    outputs: dict = {}

    if args.corrected:
        res = transport_corrected(CorrectedSection(psi, HalfFormFrame(omega)), omega_p)
        outputs["transport"] = res.to_json()
        moved = res.corrected()
    elif args.kernel in ("bergman", "holomorphic"):
        out = transport_kernel_apply(psi, omega, omega_p, args.kernel)
        outputs["transport"] = {"section": section_to_json(out)}
        moved = out
    else:
        res = transport_corrected(CorrectedSection(psi, HalfFormFrame(omega)), omega_p)
        outputs["transport"] = {"section": section_to_json(res.section), "scale": res.scale_used}
        moved = res.section

    if args.ode_check:
        if omega.n != 1:
            raise SiegelFlowError("--ode-check supports n = 1")
        spec = geodesic_between(omega, omega_p)
        mp = MetaplecticElement.principal_lift(spec.g)
        pulled = metaplectic_act(mp.inverse(), psi)
        coeffs = fock_coefficients(pulled, args.trunc)
        start = from_fock_coefficients(coeffs, standard_point(1))
        lam = float(spec.lam[0])
        closed = transport_poly_standard(start, lam, 1.0)
        ode = transport_ode(start, lam, 1.0, args.ode_steps, n_basis=max(4 * args.trunc, 128))
        c_closed = fock_coefficients(closed, args.trunc)
        c_ode = fock_coefficients(ode, args.trunc)
        resid = float(np.linalg.norm(c_ode - c_closed) / np.linalg.norm(c_closed))
        results.append(
            {"name": "transport/ode_vs_closed_form", "residual": resid,
             "tolerance": 1e-6, "passed": bool(resid <= 1e-6)}
        )

    if args.triangle:
        omega_pp = _parse_point(data["omega_pp"])
        start = CorrectedSection(psi, HalfFormFrame(omega))
        around = transport_corrected(
            transport_corrected(
                transport_corrected(start, omega_p).corrected(), omega_pp
            ).corrected(),
            omega,
        ).corrected()
        resid = difference_norm(around, start) / norm(psi)
        hol = inner_product(psi, around.section) * around.halfform.phase / inner_product(psi, psi)
        results.append(
            {"name": "transport/triangle_holonomy_identity", "residual": float(resid),
             "tolerance": 1e-8, "passed": bool(resid <= 1e-8)}
        )
        outputs["triangle_holonomy"] = [float(hol.real), float(hol.imag)]

    if not results:
        results.append({"name": "transport/completed", "residual": 0.0, "tolerance": 1.0, "passed": True})
    report = _report("transport", {**data, "flags": {
        "corrected": bool(args.corrected), "kernel": args.kernel,
        "ode_check": bool(args.ode_check), "triangle": bool(args.triangle)}},
        results, outputs, t0)
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def cmd_verify(args) -> int:
    t0 = time.time()
    fn = SUITES[args.suite]
    params = inspect.signature(fn).parameters
    kwargs = {}
    if "seed" in params:
        kwargs["seed"] = args.seed
    if "nodes" in params:
        kwargs["nodes"] = args.nodes
    rows = fn(**kwargs)
    if args.tol is not None:
        rows = [
            {**r, "tolerance": args.tol, "passed": bool(r["residual"] <= args.tol)}
            for r in rows
        ]
    outputs = {}
    if args.suite == "limits":
        from .sections import CorrectedSection as _CS, HalfFormFrame as _HF, vacuum as _vac
        from .siegel import geodesic_between as _geo
        from ._point import diagonal_point as _diag
        from .transforms import limit_transport_to_bargmann, limit_transport_to_fourier

        spec = _geo(standard_point(1), _diag([float(np.exp(2.0))]))
        psi = _CS(_vac(standard_point(1)), _HF(standard_point(1)))
        ts = [2.0, 3.0, 4.0, 5.0, 6.0, 8.0]
        outputs["bargmann_limit"] = limit_transport_to_bargmann(psi, spec, [-t for t in ts]).to_json()
        outputs["fourier_limit"] = limit_transport_to_fourier(psi, spec, ts).to_json()
    report = _report("verify", {"suite": args.suite, "seed": args.seed}, rows, outputs, t0)
    _emit(report, args.out)
    if not report["passed"]:
        first = next(r for r in rows if not r["passed"])
        print(
            f"verification failed: {first['name']} residual {first['residual']:.3e} "
            f"> {first['tolerance']:.1e}",
            file=sys.stderr,
        )
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelflow",
        description="Geodesic transport of Gaussian states and its boundary transforms.",
    )
    parser.add_argument("--n", type=int, default=1, choices=range(1, 5), help="default dimension")
    parser.add_argument("--seed", type=int, default=42, help="seed for randomized checks")
    parser.add_argument("--tol", type=float, default=None, help="tolerance override")
    parser.add_argument("--nodes", type=int, default=64, help="quadrature nodes per dimension")
    parser.add_argument("--trunc", type=int, default=32, help="Fock truncation")
    parser.add_argument("--out", type=str, default=None, help="write the report to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    p_geo = sub.add_parser("geodesic", help="normal form of the geodesic between two points")
    p_geo.add_argument("--in", dest="input", default=None, help="input JSON file (default stdin)")
    p_geo.set_defaults(func=cmd_geodesic)

    p_tr = sub.add_parser("transport", help="transport a state between two points")
    p_tr.add_argument("--in", dest="input", default=None)
    p_tr.add_argument("--corrected", action="store_true", help="include the half-form correction")
    p_tr.add_argument("--kernel", choices=("closed", "bergman", "holomorphic"), default="closed")
    p_tr.add_argument("--ode-check", action="store_true", help="cross-check against the Fock ODE")
    p_tr.add_argument("--ode-steps", type=int, default=10000)
    p_tr.add_argument("--triangle", action="store_true", help="run the flatness check (needs omega_pp)")
    p_tr.set_defaults(func=cmd_transport)

    p_ver = sub.add_parser("verify", help="run a named verification suite")
    p_ver.add_argument("suite", choices=sorted(SUITES))
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except SiegelFlowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
