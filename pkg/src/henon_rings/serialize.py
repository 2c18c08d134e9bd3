"""Canonical JSON/CSV forms of the domain types.

One dumper is shared by the CLI and the HTTP service so the two paths
produce byte-identical documents: keys sorted, no insignificant
whitespace, every float printed with %.17g (17 significant digits round-
trip a double exactly).  Complex scalars become [re, im] pairs;
coefficient tables become [k, re, im] triples keyed by harmonic index.
"""

import csv
import json
import math

import numpy as np

from .henon import OrbitStatus, OrbitTrace, PlanarPoint
from .params import Params
from .spectral import FourierOrbit

SCHEMA_VERSION = 1


def canonical_json(obj):
    out = []
    _write(obj, out.append)
    return "".join(out)


def _write(o, emit):
    if o is None:
        emit("null")
    elif isinstance(o, bool):
        emit("true" if o else "false")
    elif isinstance(o, (int, np.integer)):
        emit(str(int(o)))
    elif isinstance(o, (float, np.floating)):
        x = float(o)
        if not math.isfinite(x):
            raise ValueError("non-finite float in payload")
        emit("%.17g" % x)
    elif isinstance(o, str):
        emit(json.dumps(o))
    elif isinstance(o, (list, tuple)):
        emit("[")
        for i, v in enumerate(o):
            if i:
                emit(",")
            _write(v, emit)
        emit("]")
    elif isinstance(o, dict):
        emit("{")
        for i, k in enumerate(sorted(o)):
            if i:
                emit(",")
            if not isinstance(k, str):
                raise TypeError("object keys must be strings")
            emit(json.dumps(k))
            emit(":")
            _write(o[k], emit)
        emit("}")
    else:
        raise TypeError("cannot serialize %r" % type(o))


def cpair(z):
    z = complex(z)
    return [z.real, z.imag]


def _cx(pair):
    return complex(pair[0], pair[1])


def _table(coeffs, N):
    return [[k - N, coeffs[k].real, coeffs[k].imag]
            for k in range(2 * N + 1)]


def _coeffs(table, N):
    arr = np.zeros(2 * N + 1, dtype=complex)
    for k, re, im in table:
        arr[int(k) + N] = complex(re, im)
    return arr


def params_to_dict(p):
    return {
        "schema_version": SCHEMA_VERSION,
        "tau": cpair(p.tau), "mbeta": cpair(p.mbeta), "delta": float(p.delta),
        "alpha": cpair(p.alpha), "beta": cpair(p.beta), "c": cpair(p.c),
        "lambda1": cpair(p.lambda1), "lambda2": cpair(p.lambda2),
        "t_plus": cpair(p.t_plus), "t_minus": cpair(p.t_minus),
    }


def params_from_dict(d):
    return Params(tau=_cx(d["tau"]), mbeta=_cx(d["mbeta"]),
                  delta=float(d["delta"]), alpha=_cx(d["alpha"]),
                  beta=_cx(d["beta"]), c=_cx(d["c"]),
                  lambda1=_cx(d["lambda1"]), lambda2=_cx(d["lambda2"]),
                  t_plus=_cx(d["t_plus"]), t_minus=_cx(d["t_minus"]))


def orbit_to_dict(o):
    return {
        "schema_version": SCHEMA_VERSION,
        "N": o.N,
        "tau": cpair(o.tau),
        "w1": cpair(o.w1),
        "g": cpair(o.g),
        "z": _table(o.z_coeffs, o.N),
        "w": _table(o.w_coeffs, o.N),
        "convention": o.convention,
    }


def orbit_from_dict(d):
    N = int(d["N"])
    return FourierOrbit(N=N, g=_cx(d["g"]), w1=_cx(d["w1"]),
                        z_coeffs=_coeffs(d["z"], N),
                        w_coeffs=_coeffs(d["w"], N),
                        tau=_cx(d["tau"]), convention=d["convention"])


def floquet_to_dict(f):
    return {
        "schema_version": SCHEMA_VERSION,
        "N": f.N,
        "g": cpair(f.g),
        "lambda1": cpair(f.lambda1),
        "lambda2": cpair(f.lambda2),
        "u1": _table(f.u1, f.N), "v1": _table(f.v1, f.N),
        "u2": _table(f.u2, f.N), "v2": _table(f.v2, f.N),
        "P0": [[cpair(f.P0[i, j]) for j in (0, 1)] for i in (0, 1)],
        "P0_inv": [[cpair(f.P0_inv[i, j]) for j in (0, 1)] for i in (0, 1)],
        "det_P0": cpair(f.det_P0),
        "eig_residuals": [float(f.eig_residuals[0]), float(f.eig_residuals[1])],
    }


def floquet_from_dict(d):
    from .floquet import FloquetData
    N = int(d["N"])
    mat = lambda rows: np.array([[_cx(rows[i][j]) for j in (0, 1)]
                                 for i in (0, 1)], dtype=complex)
    return FloquetData(N=N, g=_cx(d["g"]), lambda1=_cx(d["lambda1"]),
                       lambda2=_cx(d["lambda2"]),
                       u1=_coeffs(d["u1"], N), v1=_coeffs(d["v1"], N),
                       u2=_coeffs(d["u2"], N), v2=_coeffs(d["v2"], N),
                       P0=mat(d["P0"]), P0_inv=mat(d["P0_inv"]),
                       det_P0=_cx(d["det_P0"]),
                       eig_residuals=(float(d["eig_residuals"][0]),
                                      float(d["eig_residuals"][1])))


def status_to_dict(s):
    return {"kind": s.kind, "step": s.step}


def status_from_dict(d):
    return OrbitStatus(kind=d["kind"], step=d.get("step"))


def trace_to_dict(t, include_points=True):
    d = {
        "schema_version": SCHEMA_VERSION,
        "params": params_to_dict(t.params),
        "seed": {"z": cpair(t.seed[0]), "w": cpair(t.seed[1])},
        "n_steps": t.n_steps,
        "status": status_to_dict(t.status),
        "rotation_estimate": t.rotation_estimate,
        "attraction_gap": t.attraction_gap,
    }
    if include_points:
        d["points"] = [[p[0].real, p[0].imag, p[1].real, p[1].imag]
                       for p in t.points]
    return d


def trace_from_dict(d):
    pts = d.get("points", [])
    points = np.array([[complex(a, b), complex(c, e)] for a, b, c, e in pts],
                      dtype=complex).reshape(len(pts), 2)
    return OrbitTrace(points=points, params=params_from_dict(d["params"]),
                      seed=PlanarPoint(_cx(d["seed"]["z"]), _cx(d["seed"]["w"])),
                      n_steps=int(d["n_steps"]),
                      status=status_from_dict(d["status"]),
                      rotation_estimate=d.get("rotation_estimate"),
                      attraction_gap=d.get("attraction_gap"))


def report_to_dict(r, include_points=False):
    d = {
        "schema_version": SCHEMA_VERSION,
        "target": r.target,
        "verdict": r.verdict,
        "reason": r.reason,
        "params": params_to_dict(r.params) if r.params is not None else None,
        "orbit": orbit_to_dict(r.orbit) if r.orbit is not None else None,
        "seed_hint": (None if r.seed_hint is None
                      else {"z": cpair(r.seed_hint[0]), "w": cpair(r.seed_hint[1])}),
        "im_g_residual": r.im_g_residual,
        "trace": (None if r.trace is None
                  else trace_to_dict(r.trace, include_points=include_points)),
    }
    return d


def report_from_dict(d):
    from .search import SearchReport
    return SearchReport(
        target=d["target"], verdict=d["verdict"], reason=d.get("reason", ""),
        params=params_from_dict(d["params"]) if d.get("params") else None,
        orbit=orbit_from_dict(d["orbit"]) if d.get("orbit") else None,
        seed_hint=(PlanarPoint(_cx(d["seed_hint"]["z"]), _cx(d["seed_hint"]["w"]))
                   if d.get("seed_hint") else None),
        im_g_residual=d.get("im_g_residual"),
        trace=trace_from_dict(d["trace"]) if d.get("trace") else None)


def point_record(step, p):
    """One NDJSON record of a streamed orbit point."""
    return {"step": step, "z": cpair(p[0]), "w": cpair(p[1])}


def write_trace_csv(trace, path):
    """points to CSV (step,re_z,im_z,re_w,im_w) plus a .meta.json sidecar."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "re_z", "im_z", "re_w", "im_w"])
        for i, p in enumerate(trace.points):
            writer.writerow([i, "%.17g" % p[0].real, "%.17g" % p[0].imag,
                             "%.17g" % p[1].real, "%.17g" % p[1].imag])
    meta = trace_to_dict(trace, include_points=False)
    meta_path = path + ".meta.json"
    with open(meta_path, "w") as fh:
        fh.write(canonical_json(meta))
    return meta_path


def read_trace_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    with open(path + ".meta.json") as fh:
        meta = json.load(fh)
    pts = [[complex(float(r[1]), float(r[2])), complex(float(r[3]), float(r[4]))]
           for r in rows[1:]]
    meta["points"] = [[p[0].real, p[0].imag, p[1].real, p[1].imag] for p in pts]
    return trace_from_dict(meta)
