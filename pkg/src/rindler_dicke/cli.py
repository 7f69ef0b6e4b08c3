"""Command-line front end: ``sweep``, ``eval`` and ``verify``.

Settings are merged from built-in defaults, then a JSON config file
(``--config`` or the ``RINDLER_DICKE_CONFIG`` path), then explicit flags.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import dataclass, field
import datetime
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__, amplitudes as amp, specfun, verify
from ._backend import BACKEND
from .errors import ConfigError, RindlerDickeError
from .kinematics import C_LIGHT, DimensionlessParams, PhysicalParams, planck_factor

SI_VARS = ("d", "a", "omega", "nu")
DIMENSIONLESS_VARS = ("kd", "xi", "kappa")
PROB_OUTPUTS = ("P_s", "P_a", "P_single", "P_e1e2")
AMP_OUTPUTS = ("alpha", "beta")
ALL_OUTPUTS = PROB_OUTPUTS + AMP_OUTPUTS
AMP_COLUMNS = {
    "alpha": ("alpha_plus", "alpha_minus"),
    "beta": ("beta_LL", "beta_RR", "beta_RL", "beta_LR"),
}

DEFAULTS = {
    "mode": "dimensionless",
    "var": None,
    "start": None,
    "stop": None,
    "points": 101,
    "outputs": None,
    "out": None,
    "output_file": None,
    "units": "angular",
    "timestamp": True,
    "normalize": None,
    "jobs": 1,
    "tol": None,
    # dimensionless fixed values
    "xi": 1.0,
    "kappa": 0.1,
    "kd": 0.0,
    "kd1": 0.0,
    "coupling": 1.0,
    # SI fixed values; a = None means a = omega c, so that xi = 1
    "a": None,
    "omega": 1e9,
    "nu": None,
    "nu_ratio": 0.1,
    "chi": 1e7,
    "d1": 0.0,
    "d2": 0.0,
    # verify
    "grid_xi": None,
    "grid_kappa": None,
    "oracle": True,
}

CONFIG_ENV = "RINDLER_DICKE_CONFIG"


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    points: int
    fixed: object
    outputs: tuple
    mode: str
    normalize: bool = False

    def __post_init__(self):
        allowed = SI_VARS if self.mode == "si" else DIMENSIONLESS_VARS
        if self.mode not in ("si", "dimensionless"):
            raise ConfigError(f"mode must be si or dimensionless, got {self.mode!r}")
        if self.variable not in allowed:
            raise ConfigError(f"--var in {self.mode} mode must be one of {', '.join(allowed)}")
        if int(self.points) != self.points or self.points < 2:
            raise ConfigError("points must be an integer >= 2")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start < self.stop):
            raise ConfigError("need finite start < stop")
        bad = [o for o in self.outputs if o not in ALL_OUTPUTS]
        if bad or not self.outputs:
            raise ConfigError(f"outputs must be a non-empty subset of {', '.join(ALL_OUTPUTS)}")

    def grid(self):
        return np.linspace(self.start, self.stop, int(self.points))

    def header(self):
        cols = [self.variable]
        for o in self.outputs:
            if o in AMP_OUTPUTS:
                for name in AMP_COLUMNS[o]:
                    cols += [name + "_re", name + "_im"]
            else:
                cols.append(o)
                if o == "P_e1e2":
                    cols.append("valid")
        return cols + ["error"]


@dataclass
class SweepResult:
    header: list
    rows: list
    metadata: dict = field(default_factory=dict)


def _with(params, **changes):
    return type(params)(**{**params.__dict__, **changes})


def _point_params(spec, value):
    p = spec.fixed
    if spec.variable == "d":
        return _with(p, d2=p.d1 + value)
    return _with(p, **{spec.variable: value})


def _eval_row(args):
    spec, value = args
    row = {spec.variable: float(value), "error": ""}
    try:
        p = _point_params(spec, value)
        dp = amp.dimensionless(p)
        for o in spec.outputs:
            if o == "P_s":
                row[o] = amp.prob_symmetric(p)
            elif o == "P_a":
                row[o] = amp.prob_antisymmetric(p)
            elif o == "P_single":
                row[o] = amp.prob_single_atom(p)
            elif o == "P_e1e2":
                r = amp.prob_double_excitation(p)
                row[o] = r.value
                row["valid"] = r.valid
            elif o == "alpha":
                row["alpha_plus"] = complex(amp.alpha_pm("+", dp))
                row["alpha_minus"] = complex(amp.alpha_pm("-", dp))
            elif o == "beta":
                row["beta_LL"] = complex(amp.beta_ll(dp))
                row["beta_RR"] = complex(amp.beta_rr(dp))
                row["beta_RL"] = complex(amp.beta_rl(dp))
                row["beta_LR"] = complex(amp.beta_lr(dp))
    except RindlerDickeError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _normalize(rows, spec):
    # one scale for P_s, P_a, P_single (the largest prefactor * n(xi) on the
    # grid, i.e. the in-phase P_s), its square for the fourth-order P_e1e2
    scale = 0.0
    for r in rows:
        if r["error"]:
            continue
        p = amp.dimensionless(_point_params(spec, r[spec.variable]))
        scale = max(scale, amp.prob_prefactor(p) * planck_factor(p.xi))
    if scale == 0:
        return 0.0
    for r in rows:
        for o in ("P_s", "P_a", "P_single"):
            if o in r:
                r[o] /= scale
        if "P_e1e2" in r:
            r["P_e1e2"] /= scale * scale
    return scale


def cmd_sweep(spec, jobs=1):
    """Evaluate the requested outputs on the grid; row order follows the grid."""
    args = [(spec, v) for v in spec.grid()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_eval_row, args))
    else:
        rows = [_eval_row(a) for a in args]
    scale = _normalize(rows, spec) if spec.normalize else None
    meta = {
        "version": __version__,
        "backend": BACKEND,
        "mode": spec.mode,
        "variable": spec.variable,
        "start": spec.start,
        "stop": spec.stop,
        "points": int(spec.points),
        "outputs": list(spec.outputs),
        "fixed": {k: v for k, v in spec.fixed.__dict__.items()},
        "normalization": (
            f"P_s, P_a, P_single divided by {scale!r}; P_e1e2 by its square" if spec.normalize else "none"
        ),
        "series_tol": specfun.DEFAULT_TOL,
    }
    if spec.mode == "si":
        meta["units"] = "omega, nu, chi in rad/s; a in m/s^2; d in m; probabilities absolute"
    return SweepResult(header=spec.header(), rows=rows, metadata=meta)


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _meta_value(v):
    if isinstance(v, float):
        return "%.17g" % v
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def write_csv(result, fh, timestamp=None):
    """Plain CSV with '#' metadata lines above the header row."""
    for k, v in result.metadata.items():
        fh.write(f"# {k}: {_meta_value(v)}\n")
    if timestamp:
        fh.write(f"# timestamp: {timestamp}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(result.header)
    for r in result.rows:
        out = []
        for col in result.header:
            if col.endswith("_re") or col.endswith("_im"):
                z = r.get(col[:-3])
                v = "nan" if z is None else _fmt(z.real if col.endswith("_re") else z.imag)
            elif col == "error":
                v = r["error"]
            else:
                v = r.get(col)
                v = "nan" if v is None else _fmt(v)
            out.append(v)
        w.writerow(out)


def read_csv(text):
    """Parse CSV written by ``write_csv``; returns (metadata lines, header, rows)."""
    lines = text.splitlines()
    meta = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    reader = csv.reader(body)
    header = next(reader)
    rows = []
    for rec in reader:
        row = {}
        for col, v in zip(header, rec):
            if col == "error":
                row[col] = v
            elif col == "valid":
                row[col] = v == "true"
            else:
                row[col] = float(v)
        rows.append(row)
    return meta, header, rows


def _json_num(v):
    return v if math.isfinite(v) else None


def _json_row(r):
    out = {}
    for k, v in r.items():
        if isinstance(v, complex):
            out[k] = {"re": _json_num(v.real), "im": _json_num(v.imag)}
        elif isinstance(v, float):
            out[k] = _json_num(v)
        else:
            out[k] = v
    return out


def sweep_document(result, timestamp=None):
    meta = dict(result.metadata)
    if timestamp:
        meta["timestamp"] = timestamp
    return {
        "command": "sweep",
        "metadata": meta,
        "header": result.header,
        "rows": [_json_row(r) for r in result.rows],
    }


def _amp_dict(z):
    return amp.ComplexAmplitude(z).as_dict()


def cmd_eval(params, outputs=ALL_OUTPUTS):
    """Single-point evaluation returned as a JSON-ready dict."""
    bad = [o for o in outputs if o not in ALL_OUTPUTS]
    if bad:
        raise ConfigError(f"unknown outputs: {', '.join(bad)}")
    dp = amp.dimensionless(params)
    doc = {
        "command": "eval",
        "version": __version__,
        "params": dict(params.__dict__),
        "dimensionless": dict(dp.__dict__),
        "probabilities": {},
        "amplitudes": {},
    }
    probs = doc["probabilities"]
    if "P_s" in outputs:
        probs["P_s"] = amp.prob_symmetric(params)
    if "P_a" in outputs:
        probs["P_a"] = amp.prob_antisymmetric(params)
    if "P_single" in outputs:
        probs["P_single"] = amp.prob_single_atom(params)
    if "P_e1e2" in outputs:
        r = amp.prob_double_excitation(params)
        probs["P_e1e2"] = {"value": r.value, "valid": r.valid, "bracket": r.bracket}
        probs["P_e1e2_recombined"] = amp.prob_double_excitation_recombined(params)
    amps = doc["amplitudes"]
    if "alpha" in outputs:
        first = amp.first_order_amplitudes(dp)
        for name, v in first.__dict__.items():
            amps[name] = _amp_dict(v)
    if "beta" in outputs:
        second = amp.second_order_amplitudes(dp)
        for name, v in second.__dict__.items():
            amps[name] = v if name == "phi_RL" else _amp_dict(v)
    dicke = amp.dicke_decomposition(params)
    doc["dicke"] = {
        name: {**_amp_dict(v), "photons": amp.DickeDecomposition.photon_content[name]} for name, v in dicke.items()
    }
    return doc


def cmd_verify(grid=None, tol=None, jobs=1, oracle_checks=True):
    return verify.run(grid=grid, tol=tol, jobs=jobs, oracle_checks=oracle_checks)


# ---------------------------------------------------------------- settings


def load_config(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = sorted(set(data) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return data


def resolve_settings(ns):
    """defaults < config file < flags."""
    settings = dict(DEFAULTS)
    path = getattr(ns, "config", None) or os.environ.get(CONFIG_ENV)
    if path:
        settings.update(load_config(path))
    for k, v in vars(ns).items():
        if k in DEFAULTS and v is not None:
            settings[k] = v
    if settings["outputs"] is None:
        settings["outputs"] = list(ALL_OUTPUTS if getattr(ns, "command", None) == "eval" else PROB_OUTPUTS)
    if isinstance(settings["outputs"], str):
        settings["outputs"] = [s.strip() for s in settings["outputs"].split(",") if s.strip()]
    return settings


def _fixed_params(s):
    if s["mode"] == "si":
        f = 2 * math.pi if s["units"] == "cyclic" else 1.0
        omega = s["omega"] * f
        nu = s["nu"] * f if s["nu"] is not None else s["nu_ratio"] * omega
        a = s["a"] if s["a"] is not None else omega * C_LIGHT
        return PhysicalParams(a=a, omega=omega, nu=nu, chi=s["chi"] * f, d1=s["d1"], d2=s["d2"])
    return DimensionlessParams(s["xi"], s["kappa"], s["kd"], kd1=s["kd1"], coupling=s["coupling"])


def _default_range(var, fixed):
    if var == "d":
        return 0.0, 2 * fixed.wavelength
    if var == "kd":
        return 0.0, 4 * math.pi
    if var == "xi":
        return 0.25, 4.0
    if var == "kappa":
        return 0.05, 1.0
    if var == "a":
        base = fixed.omega * fixed.c
        return base / 4, base * 4
    if var == "omega":
        base = fixed.a / fixed.c
        return base / 4, base * 4
    if var == "nu":
        base = fixed.a / fixed.c
        return base / 20, base
    raise ConfigError(f"unknown sweep variable {var!r}")


def build_sweep_spec(s, explicit=()):
    """Turn merged settings into a SweepSpec.  ``explicit`` lists flags given on the command line."""
    mode = s["mode"]
    if mode not in ("si", "dimensionless"):
        raise ConfigError(f"mode must be si or dimensionless, got {mode!r}")
    var = s["var"] or ("d" if mode == "si" else "kd")
    allowed = SI_VARS if mode == "si" else DIMENSIONLESS_VARS
    if var not in allowed:
        raise ConfigError(f"--var in {mode} mode must be one of {', '.join(allowed)}")
    if var in explicit or (var == "d" and "d2" in explicit):
        raise ConfigError(f"--{var} is fixed on the command line but is also the sweep variable")
    try:
        fixed = _fixed_params(s)
    except RindlerDickeError as exc:
        raise ConfigError(str(exc)) from exc
    lo, hi = _default_range(var, fixed)
    start = lo if s["start"] is None else float(s["start"])
    stop = hi if s["stop"] is None else float(s["stop"])
    normalize = s["normalize"]
    if normalize is None:
        normalize = mode == "dimensionless"
    return SweepSpec(
        variable=var,
        start=start,
        stop=stop,
        points=s["points"],
        fixed=fixed,
        outputs=tuple(s["outputs"]),
        mode=mode,
        normalize=bool(normalize),
    )


def _parse_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rindler-dicke",
        description="Excitation probabilities of uniformly accelerated two-level atoms.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV} if set)")
    common.add_argument("--show-config", action="store_true", help="print the merged settings and exit")
    common.add_argument("--output-file", help="write output here instead of stdout")
    common.add_argument("--jobs", type=int, help="worker processes (default 1)")
    common.add_argument("--tol", type=float, help="verify: replace every check tolerance")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--mode", choices=("dimensionless", "si"))
    params.add_argument("--outputs", help="comma list from " + ",".join(ALL_OUTPUTS))
    units = params.add_mutually_exclusive_group()
    units.add_argument("--angular", dest="units", action="store_const", const="angular",
                       help="omega, nu, chi are angular rates in rad/s (default)")
    units.add_argument("--cyclic", dest="units", action="store_const", const="cyclic",
                       help="omega, nu, chi are given in Hz and multiplied by 2 pi")
    g = params.add_argument_group("dimensionless parameters")
    for name, helptext in (
        ("xi", "omega c / a"),
        ("kappa", "nu c / a"),
        ("kd", "k (d2 - d1)"),
        ("kd1", "k d1, phase of the first atom"),
        ("coupling", "g = chi W c / a"),
    ):
        g.add_argument("--" + name, type=float, help=helptext)
    g = params.add_argument_group("SI parameters")
    for name, helptext in (
        ("a", "proper acceleration, m/s^2 (default: omega c, i.e. xi = 1)"),
        ("omega", "atomic transition frequency"),
        ("nu", "field-mode frequency (default: nu-ratio * omega)"),
        ("nu-ratio", "nu / omega when --nu is not given"),
        ("chi", "coupling strength"),
        ("d1", "offset of atom 1, m"),
        ("d2", "offset of atom 2, m"),
    ):
        g.add_argument("--" + name, type=float, help=helptext)

    sp = sub.add_parser("sweep", parents=[common, params], help="tabulate outputs over a parameter grid")
    sp.add_argument("--var", help="sweep variable: d, a, omega, nu (si) or kd, xi, kappa (dimensionless)")
    sp.add_argument("--start", type=float)
    sp.add_argument("--stop", type=float)
    sp.add_argument("--points", type=int)
    sp.add_argument("--out", choices=("csv", "json"))
    sp.add_argument("--no-timestamp", dest="timestamp", action="store_false", default=None)
    norm = sp.add_mutually_exclusive_group()
    norm.add_argument("--normalize", dest="normalize", action="store_true", default=None,
                      help="scale probabilities to unit peak (default in dimensionless mode)")
    norm.add_argument("--absolute", dest="normalize", action="store_false",
                      help="report absolute probabilities (default in si mode)")

    ep = sub.add_parser("eval", parents=[common, params], help="evaluate everything at one point (JSON)")
    ep.add_argument("--out", choices=("json",))

    vp = sub.add_parser("verify", parents=[common], help="closed forms against quadrature and identities")
    vp.add_argument("--out", choices=("table", "json"))
    vp.add_argument("--grid-xi", type=_parse_list, help="comma list overriding the xi grid")
    vp.add_argument("--grid-kappa", type=_parse_list, help="comma list overriding the kappa grid")
    vp.add_argument("--no-oracle", dest="oracle", action="store_false", default=None,
                    help="skip the quadrature comparisons")
    return parser


def _explicit_flags(argv):
    names = set()
    for tok in argv:
        if tok.startswith("--"):
            names.add(tok[2:].split("=", 1)[0].replace("-", "_"))
    return names


def _emit(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _timestamp(settings):
    if not settings["timestamp"]:
        return None
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def _run(ns, argv):
    s = resolve_settings(ns)
    if ns.show_config:
        shown = {k: v for k, v in s.items()}
        _emit(json.dumps(shown, indent=2, sort_keys=True) + "\n", s["output_file"])
        return 0
    jobs = int(s["jobs"])
    if jobs < 1:
        raise ConfigError("--jobs must be >= 1")

    if ns.command == "sweep":
        spec = build_sweep_spec(s, _explicit_flags(argv))
        result = cmd_sweep(spec, jobs=jobs)
        ts = _timestamp(s)
        if (s["out"] or "csv") == "csv":
            buf = io.StringIO()
            write_csv(result, buf, ts)
            _emit(buf.getvalue(), s["output_file"])
        else:
            _emit(json.dumps(sweep_document(result, ts), indent=2) + "\n", s["output_file"])
        return 0

    if ns.command == "eval":
        try:
            params = _fixed_params(s)
        except RindlerDickeError as exc:
            raise ConfigError(str(exc)) from exc
        doc = cmd_eval(params, tuple(s["outputs"]))
        _emit(json.dumps(doc, indent=2) + "\n", s["output_file"])
        return 0

    grid = None
    if s["grid_xi"] is not None or s["grid_kappa"] is not None:
        grid = {
            "xi": tuple(s["grid_xi"] if s["grid_xi"] is not None else verify.DEFAULT_GRID["xi"]),
            "kappa": tuple(s["grid_kappa"] if s["grid_kappa"] is not None else verify.DEFAULT_GRID["kappa"]),
        }
    report = cmd_verify(grid=grid, tol=s["tol"], jobs=jobs, oracle_checks=bool(s["oracle"]))
    if (s["out"] or "table") == "json":
        doc = {"command": "verify", "version": __version__, "backend": BACKEND, **report.as_dict()}
        for c in doc["checks"]:
            c["max_error"] = _json_num(c["max_error"])
        _emit(json.dumps(doc, indent=2) + "\n", s["output_file"])
    else:
        _emit(report.table() + "\n", s["output_file"])
    if not report.passed:
        print("verify failed: " + ", ".join(report.failed), file=sys.stderr)
        return 1
    return 0


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return _run(ns, argv)
    except ConfigError as exc:
        print(f"rindler-dicke: configuration error: {exc}", file=sys.stderr)
        return 2
