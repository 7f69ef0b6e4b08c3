"""Analytic-versus-numeric verification suite behind ``rindler-dicke verify``."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import math
import time

import numpy as np

from . import amplitudes as amp
from . import oracle, specfun
from .errors import ConfigError, RindlerDickeError
from .kinematics import (
    PhysicalParams,
    DimensionlessParams,
    planck_factor,
    to_dimensionless,
    unruh_temperature,
)

DEFAULT_GRID = {"xi": (0.25, 0.5, 1.0, 2.0, 4.0), "kappa": (0.05, 0.1, 0.5, 1.0)}

TOLERANCES = {
    "gamma_modulus": 1e-12,
    "gamma_recurrence": 1e-11,
    "kummer": 1e-10,
    "incomplete_gamma": 1e-8,
    "damped_closed_form": 1e-10,
    "alpha_oracle": 1e-6,
    "beta_oracle": 1e-4,
    "conjugacy_analytic": 1e-12,
    "conjugacy_oracle": 1e-8,
    "interference": 1e-25,
    "sum_rule": 1e-12,
    "thermal_law": 1e-12,
    "n_scaling": 1e-12,
    "double_excitation_bridge": 1e-12,
}


@dataclass
class CheckResult:
    name: str
    max_error: float
    tolerance: float
    passed: bool
    seconds: float
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)
    negative_brackets: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failed(self):
        return [c.name for c in self.checks if not c.passed]

    def table(self):
        lines = [f"{'check':28s} {'max error':>11s} {'tolerance':>10s} {'time/s':>7s}  status"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{c.name:28s} {c.max_error:11.3e} {c.tolerance:10.1e} {c.seconds:7.2f}  {status}  {c.detail}")
        if self.negative_brackets:
            lines.append(f"negative joint-probability brackets at {len(self.negative_brackets)} points:")
            for xi, kappa, kd, b in self.negative_brackets:
                lines.append(f"  xi={xi:g} kappa={kappa:g} kd={kd:g} bracket={b:.3e}")
        else:
            lines.append("negative joint-probability brackets: none on the grid")
        lines.extend(self.notes)
        lines.append("verify: " + ("all checks passed" if self.passed else "FAILED: " + ", ".join(self.failed)))
        return "\n".join(lines)

    def as_dict(self):
        return {
            "passed": self.passed,
            "checks": [c.__dict__.copy() for c in self.checks],
            "negative_brackets": [
                {"xi": float(xi), "kappa": float(k), "kd": float(kd), "bracket": float(b)}
                for xi, k, kd, b in self.negative_brackets
            ],
            "notes": list(self.notes),
        }


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _oracle_point(args):
    xi, kappa, cfg = args
    dp = DimensionlessParams(xi, kappa)
    out = {"xi": xi, "kappa": kappa}
    try:
        out["alpha+"] = oracle.alpha_numeric("+", dp, cfg)
        out["alpha-"] = oracle.alpha_numeric("-", dp, cfg)
        for ch in ("LL", "RR", "RL"):
            out[ch] = oracle.beta_numeric(ch, dp, cfg)
    except RindlerDickeError as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
    return out


def _timed(report, name, tol, fn):
    t0 = time.perf_counter()
    try:
        err, detail = fn()
    except RindlerDickeError as exc:
        err, detail = math.inf, f"{type(exc).__name__}: {exc}"
    if not math.isfinite(err):
        passed = False
    else:
        passed = bool(err <= tol)
    report.checks.append(CheckResult(name, float(err), tol, passed, time.perf_counter() - t0, detail))


def check_gamma_modulus():
    xs = np.geomspace(0.01, 50, 200)
    err = max(_rel(abs(specfun.gamma(1j * x)) ** 2, specfun.gamma_abs_imag_sq(x)) for x in xs)
    return err, "200 log-spaced x in [0.01, 50]"


def check_gamma_recurrence():
    rng = np.random.default_rng(12345)
    err = 0.0
    n = 0
    while n < 400:
        z = complex(rng.uniform(-14, 14), rng.uniform(-14, 14))
        if abs(z) > 20 or min(abs(z + k) for k in range(0, 30)) < 0.1:
            continue
        err = max(err, _rel(specfun.gamma(z + 1), z * specfun.gamma(z)))
        n += 1
    return err, "400 random z, |z| <= 20"


def check_kummer():
    err = 0.0
    for xi in np.linspace(0.05, 5, 50):
        a, b = 2j * xi, 1j * xi
        err = max(err, _rel(specfun.hyp2f1_at_minus1(a, b, 1 + a - b), specfun.kummer_2f1(a, b)))
    return err, "a=2i xi, b=i xi, 50 xi in [0.05, 5]"


def check_incomplete_gamma():
    rng = np.random.default_rng(2024)
    err = 0.0
    for _ in range(40):
        s = complex(rng.uniform(0.2, 3), rng.uniform(-3, 3))
        z = rng.uniform(0.01, 5)
        err = max(err, _rel(specfun.lower_incomplete_gamma(s, z), oracle.incomplete_gamma_numeric(s, z)))
    return err, "40 random (s, z)"


def damped_test_points():
    """20 (s, eps) pairs with s = +-i xi + delta."""
    pts = []
    for xi in (0.25, 1.0, 2.5, 4.0, 5.0):
        for delta, eps in ((0.0, 0.05), (0.3, 0.2), (0.0, 0.0125), (0.7, 0.1)):
            pts.append((complex(delta, xi), eps))
    return pts


def check_damped_closed_form(cfg):
    err = 0.0
    for s, eps in damped_test_points():
        for sigma in (1, -1):
            ss = complex(s.real, sigma * s.imag)
            num = oracle.damped_power_integral(ss, eps, sigma, cfg)
            err = max(err, _rel(num, oracle.damped_power_closed_form(ss, eps, sigma)))
    return err, "20 (s, eps) pairs, both oscillation signs"


def _grid_points(grid):
    return [(xi, k) for xi in grid["xi"] for k in grid["kappa"]]


def run(grid=None, tol=None, cfg=None, jobs=1, oracle_checks=True):
    """Run every check; ``tol`` replaces all tolerances when given."""
    grid = DEFAULT_GRID if grid is None else grid
    if not grid or not grid.get("xi") or not grid.get("kappa"):
        raise ConfigError("verification grid must contain at least one xi and one kappa")
    cfg = cfg or oracle.DEFAULT_CONFIG
    tols = {k: (tol if tol is not None else v) for k, v in TOLERANCES.items()}
    report = VerifyReport()
    points = _grid_points(grid)

    _timed(report, "gamma_modulus", tols["gamma_modulus"], check_gamma_modulus)
    _timed(report, "gamma_recurrence", tols["gamma_recurrence"], check_gamma_recurrence)
    _timed(report, "kummer", tols["kummer"], check_kummer)
    _timed(report, "incomplete_gamma", tols["incomplete_gamma"], check_incomplete_gamma)
    _timed(report, "damped_closed_form", tols["damped_closed_form"], lambda: check_damped_closed_form(cfg))

    if oracle_checks:
        t0 = time.perf_counter()
        args = [(xi, k, cfg) for xi, k in points]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                numeric = list(pool.map(_oracle_point, args))
        else:
            numeric = [_oracle_point(a) for a in args]
        share = (time.perf_counter() - t0) / 2
        _oracle_checks(report, numeric, tols, share)

    _timed(report, "conjugacy_analytic", tols["conjugacy_analytic"], lambda: _conjugacy_analytic(points))
    _timed(report, "interference", tols["interference"], _interference)
    _timed(report, "sum_rule", tols["sum_rule"], _sum_rule)
    _timed(report, "thermal_law", tols["thermal_law"], _thermal_law)
    _timed(report, "n_scaling", tols["n_scaling"], _n_scaling)
    _timed(report, "double_excitation_bridge", tols["double_excitation_bridge"], lambda: _bridge(points))
    _joint_probability_report(report, points)
    return report


def _oracle_checks(report, numeric, tols, share):
    errors = [n for n in numeric if "error" in n]
    good = [n for n in numeric if "error" not in n]
    detail = f"{len(good)} grid points"
    if errors:
        detail += "; failed at " + "; ".join(f"xi={n['xi']:g} kappa={n['kappa']:g}: {n['error']}" for n in errors)
    a_err = b_err = c_err = 0.0
    for n in good:
        dp = DimensionlessParams(n["xi"], n["kappa"])
        a_err = max(a_err, _rel(n["alpha+"], amp.alpha_pm("+", dp)), _rel(n["alpha-"], amp.alpha_pm("-", dp)))
        b_err = max(
            b_err,
            _rel(n["LL"], amp.beta_ll(dp)),
            _rel(n["RR"], amp.beta_rr(dp)),
            _rel(n["RL"], amp.beta_rl(dp)),
        )
        c_err = max(c_err, _rel(n["RR"], n["LL"].conjugate()), _rel(n["alpha+"], n["alpha-"].conjugate()))
    if errors:
        a_err = b_err = c_err = math.inf
    for name, err, t in (
        ("alpha_oracle", a_err, share / 5),
        ("beta_oracle", b_err, share * 9 / 5),
        ("conjugacy_oracle", c_err, 0.0),
    ):
        ok = bool(math.isfinite(err) and err <= tols[name])
        report.checks.append(CheckResult(name, float(err), tols[name], ok, t, detail))


def _conjugacy_analytic(points):
    err = 0.0
    for xi, k in points:
        dp = DimensionlessParams(xi, k)
        err = max(
            err,
            _rel(amp.beta_lr(dp), amp.beta_rl(dp).conjugate()),
            _rel(amp.beta_rr(dp), amp.beta_ll(dp).conjugate()),
            _rel(amp.alpha_pm("+", dp), amp.alpha_pm("-", dp).conjugate()),
        )
    return err, "beta_LR = conj beta_RL, beta_RR = conj beta_LL"


def interference_params(chi=1e7, omega=1e9, nu_ratio=0.1, d=0.0):
    """omega = 1e9 rad/s, nu = 0.1 omega, chi = 1e7, with a chosen so that xi = 1."""
    return PhysicalParams(a=omega * 299792458.0, omega=omega, nu=nu_ratio * omega, chi=chi, d1=0.0, d2=d)


def _interference():
    base = interference_params()
    lam = base.wavelength
    ds = np.linspace(0, 2 * lam, 401)
    rows = [(amp.prob_symmetric(interference_params(d=d)), amp.prob_antisymmetric(interference_params(d=d))) for d in ds]
    ps = np.array([r[0] for r in rows])
    pa = np.array([r[1] for r in rows])
    peak = ps.max()
    kd = base.k * ds
    shape = max(
        np.max(np.abs(ps - peak * np.cos(kd / 2) ** 2)) / peak,
        np.max(np.abs(pa - peak * np.sin(kd / 2) ** 2)) / peak,
    )
    zeros = max(
        amp.prob_symmetric(interference_params(d=lam / 2)),
        amp.prob_symmetric(interference_params(d=1.5 * lam)),
        amp.prob_antisymmetric(interference_params(d=0.0)),
        amp.prob_antisymmetric(interference_params(d=lam)),
        amp.prob_antisymmetric(interference_params(d=2 * lam)),
    ) / peak
    if shape > 1e-12:
        return max(zeros, shape), f"cos^2/sin^2 shape off by {shape:.2e}"
    return zeros, f"zeros relative to peak; shape error {shape:.1e}"


def _sum_rule():
    vals = []
    for kd in np.linspace(0, 4 * math.pi, 301):
        dp = DimensionlessParams(1.0, 0.1, kd)
        vals.append(amp.prob_symmetric(dp) + amp.prob_antisymmetric(dp))
    vals = np.array(vals)
    return float((vals.max() - vals.min()) / vals.max()), "P_s + P_a over kd in [0, 4 pi]"


def _thermal_law():
    err = 0.0
    for xi in np.linspace(0.5, 3, 26):
        dp = DimensionlessParams(xi, 0.1, 0.7, coupling=0.3)
        expect = amp.prob_prefactor(dp) * planck_factor(xi) / 2
        err = max(err, _rel(amp.prob_single_atom(dp), expect))
    for a in (1e17, 2.466e20, 3e22):
        p = PhysicalParams(a=a, omega=1e9 * a / 3e17, nu=1e8)
        xi = to_dimensionless(p).xi
        ratio = p.hbar * p.omega / (p.kB * unruh_temperature(p))
        err = max(err, _rel(ratio, 2 * math.pi * xi))
    return err, "P_single vs prefactor n(xi)/2 and hbar omega/(kB T_U) vs 2 pi xi"


def _n_scaling():
    err = 0.0
    rng = np.random.default_rng(7)
    for xi in (0.5, 1.0, 2.0):
        dp = DimensionlessParams(xi, 0.3, coupling=0.2)
        for n in range(1, 13):
            kds = list(rng.uniform(0, 2 * math.pi, n))
            chans = amp.single_excitation_channels(n, kds, dp)
            total = sum(float(np.sum(v)) for v in chans.values())
            err = max(err, _rel(total, amp.prob_one_of_n(n, dp)))
    return err, "n = 1..12, random offsets"


def _bridge(points):
    err = 0.0
    for xi, k in points:
        for kd in np.linspace(0, 2 * math.pi, 9):
            dp = DimensionlessParams(xi, k, kd)
            rl = amp.beta_rl(dp)
            lhs = abs((rl + amp.beta_lr(dp)) * math.cos(kd)) ** 2
            rhs = 4 * abs(rl) ** 2 * math.cos(rl.phase) ** 2 * math.cos(kd) ** 2
            err = max(err, _rel(lhs, rhs))
    return err, "|(bRL+bLR)cos kd|^2 vs 4|bRL|^2 cos^2(phi) cos^2 kd"


def _joint_probability_report(report, points):
    worst = 0.0
    where = None
    for xi, k in points:
        for kd in np.linspace(0, math.pi, 5):
            dp = DimensionlessParams(xi, k, kd)
            r = amp.prob_double_excitation(dp)
            if not r.valid:
                report.negative_brackets.append((xi, k, kd, r.bracket))
            rc = amp.prob_double_excitation_recombined(dp)
            d = _rel(r.value, rc)
            if d > worst:
                worst, where = d, (xi, k, kd)
    if where is not None:
        report.notes.append(
            "joint probability, closed-form bracket vs squared norm of the |e> sector: "
            f"max relative difference {worst:.3e} at xi={where[0]:g} kappa={where[1]:g} kd={where[2]:g} (informational)"
        )
