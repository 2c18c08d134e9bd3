"""Command-line entry points.

Exit codes: 0 success (for reproduce-appendix, all checks green), 2 for
argument problems, 1 for numerical failures; failures also print one
machine-readable JSON object on stderr.
"""

import argparse
import sys

import numpy as np

from .errors import HenonRingsError, TooShort
from .floquet import floquet_eigensolve, floquet_report
from .henon import (MAP_HENON, MAP_HENON_MOD, PlanarPoint, classify_orbit,
                    iterate)
from .params import params_from_beta_c, params_from_resonant
from .presets import get_preset
from .search import find_exotic, find_herman
from .serialize import (canonical_json, floquet_to_dict, orbit_from_dict,
                        orbit_to_dict, report_to_dict, trace_to_dict,
                        write_trace_csv)
from .spectral import (CONV_HAT, convert, evaluate, initial_guess,
                       newton_solve, tail_residual)
from .vfield import KIND_XHAT, ModelField, field_components


def _complex(text):
    try:
        return complex(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not a complex number: %r" % text)


def _print(doc):
    sys.stdout.write(canonical_json(doc) + "\n")


def cmd_solve(args):
    orbit = newton_solve(initial_guess(args.tau, args.w1, args.level, N=args.N),
                         jacobian=args.jacobian)
    _print(orbit_to_dict(orbit))
    return 0


def cmd_floquet(args):
    if args.orbit is not None:
        import json
        with open(args.orbit) as fh:
            orbit = orbit_from_dict(json.load(fh))
    else:
        orbit = newton_solve(initial_guess(args.tau, args.w1, "fine", N=args.N))
    if args.report:
        text, ok = floquet_report(orbit, N_prime=args.n_prime)
        sys.stdout.write(text)
        return 0 if ok else 1
    _print(floquet_to_dict(floquet_eigensolve(orbit)))
    return 0


def _iterate_setup(args):
    if args.preset is not None:
        preset = get_preset(args.preset)
        params, seed, kind = preset.params, preset.seed, preset.map
        n = args.n if args.n is not None else preset.n
    else:
        if args.beta is not None:
            if args.c is None:
                raise ValueError("--beta requires --c")
            params = params_from_beta_c(args.beta, args.c)
        elif args.tau is not None:
            params = params_from_resonant(args.tau, args.mbeta, args.delta)
        else:
            raise ValueError("need --preset, --beta/--c, or --tau/--mbeta/--delta")
        if args.seed_z is None or args.seed_w is None:
            raise ValueError("explicit parameters need --seed-z and --seed-w")
        seed = PlanarPoint(args.seed_z, args.seed_w)
        kind = args.map
        n = args.n if args.n is not None else 5000
    if args.seed_z is not None and args.seed_w is not None:
        seed = PlanarPoint(args.seed_z, args.seed_w)
    return params, seed, kind, n


def cmd_iterate(args):
    params, seed, kind, n = _iterate_setup(args)
    trace = iterate(seed, kind, params, n, escape_radius=args.escape_radius)
    if trace.status.bounded:
        try:
            cls = classify_orbit(trace)
            trace.rotation_estimate = cls.rotation_estimate
            trace.attraction_gap = cls.attraction_gap
        except TooShort:
            pass
    if args.json:
        _print(trace_to_dict(trace, include_points=True))
    else:
        write_trace_csv(trace, args.csv)
        _print(trace_to_dict(trace, include_points=False))
    return 0


def cmd_find_exotic(args):
    report = find_exotic(args.mbeta, args.tau, args.delta, args.n)
    if args.emit_trace and report.trace is not None:
        write_trace_csv(report.trace, args.emit_trace)
    _print(report_to_dict(report))
    return 0


def cmd_find_herman(args):
    report = find_herman(args.mbeta0, args.phi, args.delta, args.tau_guess,
                         n_iters=args.n)
    if args.emit_trace and report.trace is not None:
        write_trace_csv(report.trace, args.emit_trace)
    _print(report_to_dict(report))
    return 0


_SPECTRAL_GOLDEN = [
    # (label, extractor, expected, tolerance)
    ("g", lambda o: complex(o.g), -0.8345538969681955, 1e-9),
    ("z[0]", lambda o: complex(o.z_coeffs[o.N]), 0.8345538969681958, 1e-8),
    # harmonic labels count multiples of g: z carriers are 3kg, w carriers
    # (3k+1)g, so the -3g and +3g z-harmonics sit at k = -1, +1, and the
    # -2g and +4g w-harmonics likewise.
    ("z{-3g}", lambda o: complex(o.z_coeffs[o.N - 1]), -1.1509120242609674, 1e-8),
    ("z{+3g}", lambda o: complex(o.z_coeffs[o.N + 1]), 0.2975168076254836, 1e-8),
    ("w{-2g}", lambda o: complex(o.w_coeffs[o.N - 1]), 0.6229635928580461, 1e-8),
    ("w{+4g}", lambda o: complex(o.w_coeffs[o.N + 1]), 0.16858848756603534, 1e-8),
    ("l1(z)", lambda o: float(np.sum(np.abs(o.z_coeffs))), 2.495127140332043, 1e-8),
    ("l1(w)", lambda o: float(np.sum(np.abs(o.w_coeffs))), 2.3543381748256222, 1e-8),
    ("z(0)", lambda o: complex(evaluate(o, 0.0)[0]), 0.1144256218278379, 1e-8),
    ("w(0)", lambda o: complex(evaluate(o, 0.0)[1]), 2.3543381748256222, 1e-8),
]

_XHAT_PIN = (-3.728971421315655, -0.26938912797026227)


def cmd_reproduce(args):
    ok_all = True
    lines = ["reproduce-appendix: canonical solve tau=1, N=12, w1=1.4"]
    orbit = newton_solve(initial_guess(1.0, 1.4, "fine", N=12))
    for label, take, want, tol in _SPECTRAL_GOLDEN:
        got = take(orbit)
        ok = abs(got - want) < tol
        ok_all = ok_all and ok
        lines.append("  %-8s %.16g  (want %.16g @ %g)  %s"
                     % (label, complex(got).real, want, tol,
                        "PASS" if ok else "FAIL"))
    tail = tail_residual(orbit, args.n_prime)
    ok = tail < 1e-7
    ok_all = ok_all and ok
    lines.append("  %-8s %.3e  (< 1e-7)  %s"
                 % ("tail", tail, "PASS" if ok else "FAIL"))
    sys.stdout.write("\n".join(lines) + "\n")

    text, ok = floquet_report(orbit, N_prime=args.n_prime)
    ok_all = ok_all and ok
    sys.stdout.write(text)

    orbit7 = newton_solve(initial_guess(1.0, 1.4, "fine", N=7))
    p0 = evaluate(convert(orbit7, CONV_HAT), 0.0)
    X0 = field_components(ModelField(KIND_XHAT, orbit7.tauhat()), p0)
    dev = max(abs(X0[0] - _XHAT_PIN[0]), abs(X0[1] - _XHAT_PIN[1]))
    ok = dev < 1e-6
    ok_all = ok_all and ok
    sys.stdout.write("  %-8s (%.9f, %.9f)  (N=7 pin @ 1e-6)  %s\n"
                     % ("Xhat(p0)", X0[0].real, X0[1].real,
                        "PASS" if ok else "FAIL"))
    sys.stdout.write("all checks %s\n" % ("PASS" if ok_all else "FAIL"))
    return 0 if ok_all else 1


def cmd_serve(args):
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="henon-rings",
        description="Periodic-orbit solver, Floquet analysis and orbit "
                    "exploration for the quadratic map family")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-periodic", help="spectral Newton solve of the model orbit")
    p.add_argument("--tau", type=_complex, default=complex(1.0))
    p.add_argument("--w1", type=float, default=1.4)
    p.add_argument("--N", type=int, default=12)
    p.add_argument("--level", choices=["coarse", "fine"], default="fine")
    p.add_argument("--jacobian", choices=["fd", "analytic"], default="fd")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("floquet", help="Floquet data for the model orbit")
    p.add_argument("--tau", type=_complex, default=complex(1.0))
    p.add_argument("--w1", type=float, default=1.4)
    p.add_argument("--N", type=int, default=12)
    p.add_argument("--n-prime", type=int, default=24)
    p.add_argument("--orbit", help="path to a solved orbit JSON (skips the solve)")
    p.add_argument("--report", action="store_true",
                   help="print the pass/fail table instead of JSON")
    p.set_defaults(func=cmd_floquet)

    p = sub.add_parser("iterate", help="iterate a map and export the trace")
    p.add_argument("--preset")
    p.add_argument("--beta", type=_complex)
    p.add_argument("--c", type=_complex)
    p.add_argument("--tau", type=_complex)
    p.add_argument("--mbeta", type=_complex, default=complex(1.0))
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--map", choices=[MAP_HENON, MAP_HENON_MOD], default=MAP_HENON)
    p.add_argument("--seed-z", type=_complex)
    p.add_argument("--seed-w", type=_complex)
    p.add_argument("--n", type=int)
    p.add_argument("--escape-radius", type=float, default=10.0)
    p.add_argument("--csv", default="trace.csv")
    p.add_argument("--json", action="store_true",
                   help="print the full trace as JSON instead of writing CSV")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("find-exotic", help="conservative rotation-domain recipe")
    p.add_argument("--mbeta", type=float, default=1.0)
    p.add_argument("--tau", type=_complex, default=complex(1.0))
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--emit-trace", help="write the underlying trace CSV here")
    p.set_defaults(func=cmd_find_exotic)

    p = sub.add_parser("find-herman", help="dissipative ring recipe")
    p.add_argument("--mbeta0", type=float, required=True)
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--tau-guess", type=_complex, required=True)
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--emit-trace")
    p.set_defaults(func=cmd_find_herman)

    p = sub.add_parser("reproduce-appendix",
                       help="re-derive the recorded golden values, pass/fail table")
    p.add_argument("--n-prime", type=int, default=24)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8777)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HenonRingsError as exc:
        payload = {"error": exc.kind, "message": str(exc)}
        for extra in ("iterations", "final_l1"):
            if getattr(exc, extra, None) is not None:
                payload[extra] = getattr(exc, extra)
        sys.stderr.write(canonical_json(payload) + "\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(canonical_json({"error": "bad-argument",
                                         "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
