"""Local HTTP service wrapping the solver, Floquet analysis and iteration.

Success bodies are produced by the same canonical serializer as the CLI, so
a solve or floquet document fetched over HTTP is byte-identical to the one
the command line prints.  Error responses use three status codes: 400 for
payloads that fail schema validation, 422 for numerical failures (the body
carries the error-kind taxonomy), 404 for unknown jobs.
"""

import threading
import uuid

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response, StreamingResponse
from fastapi.middleware.cors import CORSMiddleware

from .errors import HenonRingsError, TooShort
from .henon import (BOUNDED, MAP_HENON, MAP_HENON_MOD, OrbitStatus,
                    OrbitTrace, PlanarPoint, classify_orbit, iterate)
from .params import params_from_beta_c, params_from_resonant
from .presets import build_preset, load_registry
from .search import find_exotic, find_herman
from .serialize import (SCHEMA_VERSION, canonical_json, cpair, floquet_to_dict,
                        orbit_from_dict, orbit_to_dict, params_to_dict,
                        point_record, report_to_dict, status_to_dict)
from .spectral import initial_guess, newton_solve
from .floquet import floquet_eigensolve

_MAX_ITER = 1_000_000
_CHUNK = 100          # points per flushed NDJSON chunk
_READOUT_EVERY = 1000


class SchemaViolation(Exception):
    pass


def _require(cond, msg):
    if not cond:
        raise SchemaViolation(msg)


def _check_keys(payload, allowed):
    _require(isinstance(payload, dict), "payload must be a JSON object")
    extra = set(payload) - set(allowed)
    _require(not extra, "unknown fields: %s" % ", ".join(sorted(extra)))


def _cnum(payload, key, default=None):
    if key not in payload:
        _require(default is not None, "missing field %r" % key)
        return default
    v = payload[key]
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if (isinstance(v, list) and len(v) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                    for x in v)):
        return complex(v[0], v[1])
    raise SchemaViolation("field %r must be a number or [re, im] pair" % key)


def _fnum(payload, key, default=None):
    if key not in payload:
        _require(default is not None, "missing field %r" % key)
        return default
    v = payload[key]
    _require(isinstance(v, (int, float)) and not isinstance(v, bool),
             "field %r must be a number" % key)
    return float(v)


def _inum(payload, key, default=None, lo=1, hi=_MAX_ITER):
    if key not in payload:
        _require(default is not None, "missing field %r" % key)
        return default
    v = payload[key]
    _require(isinstance(v, int) and not isinstance(v, bool),
             "field %r must be an integer" % key)
    _require(lo <= v <= hi, "field %r out of range [%d, %d]" % (key, lo, hi))
    return v


def _choice(payload, key, choices, default):
    v = payload.get(key, default)
    _require(v in choices, "field %r must be one of %s" % (key, sorted(choices)))
    return v


class JobRegistry:
    """In-memory store of finished operation results, keyed by uuid4."""

    def __init__(self):
        self._lock = threading.Lock()
        self._jobs = {}

    def put(self, kind, result):
        jid = str(uuid.uuid4())
        with self._lock:
            self._jobs[jid] = {"kind": kind, "status": "done", "result": result}
        return jid

    def get(self, jid):
        with self._lock:
            return self._jobs.get(jid)


def _canonical_response(doc, job_id):
    return Response(content=canonical_json(doc) + "\n",
                    media_type="application/json",
                    headers={"X-Job-Id": job_id})


def _solve_from_payload(payload):
    tau = _cnum(payload, "tau", complex(1.0))
    N = _inum(payload, "N", 12, lo=1, hi=64)
    w1 = _fnum(payload, "w1", 1.4)
    level = _choice(payload, "level", ("coarse", "fine"), "fine")
    jacobian = _choice(payload, "jacobian", ("fd", "analytic"), "fd")
    return newton_solve(initial_guess(tau, w1, level, N=N), jacobian=jacobian)


def _iterate_inputs(payload, registry):
    _check_keys(payload, ("preset", "map", "beta", "c", "tau", "mbeta",
                          "delta", "seed", "n", "escape_radius"))
    seed = None
    if "seed" in payload:
        s = payload["seed"]
        _require(isinstance(s, dict) and set(s) <= {"z", "w"},
                 "seed must be an object with fields z and w")
        seed = PlanarPoint(_cnum(s, "z"), _cnum(s, "w"))
    if "preset" in payload:
        name = payload["preset"]
        _require(isinstance(name, str) and name in registry,
                 "unknown preset %r" % payload["preset"])
        preset = build_preset(name, registry[name])
        params, kind = preset.params, preset.map
        n = _inum(payload, "n", preset.n)
        if seed is None:
            seed = preset.seed
    elif "beta" in payload:
        params = params_from_beta_c(_cnum(payload, "beta"), _cnum(payload, "c"))
        kind = _choice(payload, "map", (MAP_HENON, MAP_HENON_MOD), MAP_HENON)
        n = _inum(payload, "n", 5000)
        _require(seed is not None, "explicit parameters need a seed")
    elif "tau" in payload:
        params = params_from_resonant(_cnum(payload, "tau"),
                                      _cnum(payload, "mbeta", complex(1.0)),
                                      _fnum(payload, "delta", 0.01))
        kind = _choice(payload, "map", (MAP_HENON, MAP_HENON_MOD), MAP_HENON)
        n = _inum(payload, "n", 5000)
        _require(seed is not None, "explicit parameters need a seed")
    else:
        raise SchemaViolation("payload needs preset, beta/c or tau/mbeta/delta")
    escape = _fnum(payload, "escape_radius", 10.0)
    _require(escape > 0, "escape_radius must be positive")
    return kind, params, seed, n, escape


def _stream_orbit(kind, params, seed, n, escape_radius):
    """NDJSON generator: header, point records, readouts, final status."""
    header = {
        "kind": "header", "schema_version": SCHEMA_VERSION, "map": kind,
        "n": n, "escape_radius": escape_radius,
        "params": params_to_dict(params),
        "seed": {"z": cpair(seed[0]), "w": cpair(seed[1])},
    }
    lines = [canonical_json(header)]
    collected = []
    final_status = BOUNDED
    offset = 0
    first = True
    current = seed
    while True:
        m = min(_CHUNK, n - offset)
        if m <= 0:
            break
        seg = iterate(current, kind, params, m, escape_radius=escape_radius)
        for j in range(0 if first else 1, len(seg.points)):
            p = seg.points[j]
            lines.append(canonical_json(point_record(offset + j, p)))
            collected.append(p)
        first = False
        if not seg.status.bounded:
            final_status = OrbitStatus(seg.status.kind, offset + seg.status.step)
            break
        offset += m
        current = PlanarPoint(seg.points[-1][0], seg.points[-1][1])
        if len(collected) % _READOUT_EVERY < _CHUNK and len(collected) >= 1000:
            cls = _classify_points(collected, params, seed)
            if cls is not None:
                lines.append(canonical_json({
                    "kind": "readout", "step": len(collected) - 1,
                    "rotation_estimate": cls.rotation_estimate,
                    "attraction_gap": cls.attraction_gap,
                    "closed_curve_score": cls.closed_curve_score,
                }))
        if len(lines) >= _CHUNK:
            yield "\n".join(lines) + "\n"
            lines = []
        if offset >= n:
            break
    cls = _classify_points(collected, params, seed)
    final = {
        "kind": "status", "schema_version": SCHEMA_VERSION,
        "status": status_to_dict(final_status),
        "n_points": len(collected),
        "rotation_estimate": None if cls is None else cls.rotation_estimate,
        "attraction_gap": None if cls is None else cls.attraction_gap,
    }
    lines.append(canonical_json(final))
    yield "\n".join(lines) + "\n"


def _classify_points(collected, params, seed):
    import numpy as np
    if len(collected) < 500:
        return None
    trace = OrbitTrace(points=np.asarray(collected, dtype=complex),
                       params=params, seed=seed,
                       n_steps=len(collected) - 1, status=BOUNDED)
    try:
        return classify_orbit(trace)
    except TooShort:
        return None


def create_app():
    app = FastAPI(title="henon-rings", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    jobs = JobRegistry()

    @app.exception_handler(SchemaViolation)
    async def _schema_handler(request: Request, exc: SchemaViolation):
        return JSONResponse(status_code=400, content={
            "schema_version": SCHEMA_VERSION,
            "error": "schema-violation", "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _body_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={
            "schema_version": SCHEMA_VERSION,
            "error": "schema-violation", "message": "malformed request body"})

    @app.exception_handler(HenonRingsError)
    async def _numerical_handler(request: Request, exc: HenonRingsError):
        content = {"schema_version": SCHEMA_VERSION,
                   "error": exc.kind, "message": str(exc)}
        for extra in ("iterations", "final_l1"):
            value = getattr(exc, extra, None)
            if value is not None:
                content[extra] = value
        return JSONResponse(status_code=422, content=content)

    @app.get("/api/presets")
    def presets():
        return JSONResponse({"schema_version": SCHEMA_VERSION,
                             "presets": load_registry()})

    @app.get("/api/jobs/{job_id}")
    def job(job_id: str):
        record = jobs.get(job_id)
        if record is None:
            return JSONResponse(status_code=404, content={
                "schema_version": SCHEMA_VERSION,
                "error": "unknown-job", "message": "no job %s" % job_id})
        return JSONResponse({"schema_version": SCHEMA_VERSION, "id": job_id,
                             "kind": record["kind"], "status": record["status"],
                             "result": record["result"]})

    @app.post("/api/solve")
    def solve(payload: dict = Body(...)):
        _check_keys(payload, ("tau", "N", "w1", "level", "jacobian"))
        orbit = _solve_from_payload(payload)
        doc = orbit_to_dict(orbit)
        return _canonical_response(doc, jobs.put("solve", doc))

    @app.post("/api/floquet")
    def floquet(payload: dict = Body(...)):
        _check_keys(payload, ("job_id", "orbit", "tau", "N", "w1"))
        if "job_id" in payload:
            record = jobs.get(payload["job_id"])
            if record is None:
                return JSONResponse(status_code=404, content={
                    "schema_version": SCHEMA_VERSION, "error": "unknown-job",
                    "message": "no job %s" % payload["job_id"]})
            _require(record["kind"] == "solve",
                     "job %s is not a solve result" % payload["job_id"])
            orbit = orbit_from_dict(record["result"])
        elif "orbit" in payload:
            _require(isinstance(payload["orbit"], dict),
                     "field 'orbit' must be an object")
            try:
                orbit = orbit_from_dict(payload["orbit"])
            except (KeyError, TypeError, IndexError):
                raise SchemaViolation("field 'orbit' is not a valid orbit document")
        else:
            orbit = _solve_from_payload(payload)
        doc = floquet_to_dict(floquet_eigensolve(orbit))
        return _canonical_response(doc, jobs.put("floquet", doc))

    @app.post("/api/iterate")
    def iterate_stream(payload: dict = Body(...)):
        registry = load_registry()
        kind, params, seed, n, escape = _iterate_inputs(payload, registry)
        # One probe step before the stream commits to a 200: parameter-level
        # failures (degenerate multipliers) must surface as 422, and the
        # status line cannot change once the response has started.
        iterate(seed, kind, params, 1, escape_radius=escape)
        return StreamingResponse(_stream_orbit(kind, params, seed, n, escape),
                                 media_type="application/x-ndjson")

    @app.post("/api/search/exotic")
    def search_exotic(payload: dict = Body(...)):
        _check_keys(payload, ("mbeta", "tau", "delta", "n_iters"))
        report = find_exotic(_cnum(payload, "mbeta", complex(1.0)),
                             _cnum(payload, "tau", complex(1.0)),
                             _fnum(payload, "delta"),
                             _inum(payload, "n_iters", 5000))
        doc = report_to_dict(report)
        return _canonical_response(doc, jobs.put("search-exotic", doc))

    @app.post("/api/search/herman")
    def search_herman(payload: dict = Body(...)):
        _check_keys(payload, ("mbeta0", "phi", "delta", "tau_guess", "n_iters"))
        report = find_herman(_fnum(payload, "mbeta0"),
                             _fnum(payload, "phi"),
                             _fnum(payload, "delta"),
                             _cnum(payload, "tau_guess"),
                             n_iters=_inum(payload, "n_iters", 5000))
        doc = report_to_dict(report)
        return _canonical_response(doc, jobs.put("search-herman", doc))

    return app
