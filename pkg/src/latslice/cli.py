"""Command-line front end: scans, spot checks, and verification suites.

Output schema
-------------
CSV: provenance lines prefixed with `#` (version, command, config echo, seed),
then exactly one header line, then data rows; floats carry 17 significant
digits.  JSON: one object {"header": ..., "rows": [...]} holding the same
provenance and rows.  `--plot PATH` additionally renders a log-log figure for
the scan commands; plot failures warn on stderr and never change the exit
status.

Exit codes: 0 success, 1 internal numerical failure, 2 invalid configuration,
3 enumeration budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .asymptotics import (
    TorusQuadrature,
    constrained_power_law_fit,
    fit_power_law,
    geometric_rho_grid,
    lower_exponent,
    offset_panel,
    panel_sup_remainders,
    remainder_fourier_coeff,
    upper_exponent,
)
from .fourier import (
    QuadratureError,
    TailToleranceError,
    chi_hat,
    default_epsilon,
    poisson_sum_approx,
)
from .lattice import (
    DEFAULT_BUDGET,
    EnumerationBudgetError,
    SliceConfig,
    TorusOffset,
    remainder_scan,
    slice_volume,
    unit_ball_volume,
)
from .paraboloid import (
    LandauQuery,
    ParaboloidQuery,
    euler_maclaurin_exact,
    faulhaber_sum,
    landau_ids_direct,
    landau_ids_via_paraboloid,
    landau_leading_h3,
    paraboloid_asymptotic,
    paraboloid_measure,
)
from .specfun import GammaPoleError

__all__ = ["RunConfig", "main", "run"]

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_BAD_CONFIG = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict
    output_format: str = "csv"
    plot: str | None = None
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _fmt_vector(coords) -> str:
    return ":".join(format(float(c), ".17g") for c in coords)


def _parse_vector(text: str, k: int, label: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != k:
        raise ValueError(f"{label} {text!r} has {len(parts)} components, need {k}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad {label} component in {text!r}") from exc


def _parse_offsets(text: str, k: int, seed: int) -> tuple[TorusOffset, ...]:
    """Explicit `a:b,c:d` offset list, or `random:N` drawn from the seeded RNG."""
    if text.startswith("random:"):
        try:
            count = int(text.split(":", 1)[1])
        except ValueError as exc:
            raise ValueError(f"bad offset count in {text!r}") from exc
        return offset_panel(k, count, seed=seed)
    return tuple(TorusOffset(_parse_vector(chunk, k, "offset"))
                 for chunk in text.split(","))


def _emit(record: dict, columns: Sequence[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(record, out, indent=2, allow_nan=False)
        out.write("\n")
        return
    header = record["header"]
    out.write(f"# latslice {header['version']}\n")
    out.write(f"# command: {header['command']}\n")
    for key, val in header["config"].items():
        out.write(f"# {key}: {val}\n")
    for key, val in header.items():
        if key in ("version", "command", "config"):
            continue
        out.write(f"# {key}: {val}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in record["rows"]:
        writer.writerow([_fmt(row[c]) for c in columns])


def _maybe_plot(cfg: RunConfig, series, guides=(), ylabel="magnitude", title=None) -> None:
    if cfg.plot is None:
        return
    try:
        from .plots import save_loglog_plot

        save_loglog_plot(cfg.plot, series, guides=guides, ylabel=ylabel, title=title)
    except Exception as exc:  # plotting must never change the exit status
        print(f"warning: plot failed: {exc}", file=sys.stderr)


# ---------------------------------------------------------------------------
# command implementations: each returns (record, columns, plot closure or None)
# ---------------------------------------------------------------------------


def _header(cfg: RunConfig, config_echo: dict, **extras) -> dict:
    header = {
        "version": __version__,
        "command": cfg.command,
        "config": config_echo,
        "seed": cfg.seed,
        "threads": cfg.threads,
    }
    header.update(extras)
    return header


def _cmd_slice(cfg: RunConfig):
    p = cfg.params
    sc = SliceConfig(p["d"], p["k"])
    rho = p["rho"]
    offsets = _parse_offsets(p["offsets"], sc.k, cfg.seed) if sc.k >= 1 else (TorusOffset(()),)
    rows = []
    for off in offsets:
        vol = slice_volume(sc, off, rho, budget=p["budget"])
        rows.append({
            "d": sc.d, "k": sc.k, "rho": rho, "offset": _fmt_vector(off.coords),
            "volume": vol, "remainder": vol - unit_ball_volume(sc.d) * rho**sc.d,
        })
    echo = {"d": sc.d, "k": sc.k, "rho": _fmt(rho),
            "offsets": ",".join(_fmt_vector(o.coords) for o in offsets),
            "budget": p["budget"]}
    record = {"header": _header(cfg, echo), "rows": rows}
    return record, ["d", "k", "rho", "offset", "volume", "remainder"], None


def _cmd_remainder_scan(cfg: RunConfig):
    p = cfg.params
    sc = SliceConfig(p["d"], p["k"])
    grid = geometric_rho_grid(p["rho_min"], p["rho_max"], p["per_octave"])
    offsets = _parse_offsets(p["offsets"], sc.k, cfg.seed)
    samples = remainder_scan(sc, offsets, grid, budget=p["budget"], threads=cfg.threads)
    rows = [{
        "d": sc.d, "k": sc.k, "rho": s.rho, "offset": _fmt_vector(s.offset.coords),
        "volume": s.volume, "remainder": s.remainder,
    } for s in samples]
    echo = {"d": sc.d, "k": sc.k, "rho_min": _fmt(p["rho_min"]),
            "rho_max": _fmt(p["rho_max"]), "per_octave": p["per_octave"],
            "offsets": ",".join(_fmt_vector(o.coords) for o in offsets),
            "budget": p["budget"]}
    record = {"header": _header(cfg, echo), "rows": rows}

    def plot():
        per_off: dict[str, tuple[list, list]] = {}
        for row in rows:
            xs, ys = per_off.setdefault(row["offset"], ([], []))
            xs.append(row["rho"])
            ys.append(abs(row["remainder"]))
        series = [(off, xs, ys) for off, (xs, ys) in per_off.items()]
        _maybe_plot(cfg, series, ylabel="|remainder|",
                    title=f"remainder scan d={sc.d} k={sc.k}")

    return record, ["d", "k", "rho", "offset", "volume", "remainder"], plot


def _cmd_exponent_fit(cfg: RunConfig):
    p = cfg.params
    sc = SliceConfig(p["d"], p["k"])
    grid = geometric_rho_grid(p["rho_min"], p["rho_max"], p["per_octave"])
    offsets = _parse_offsets(p["offsets"], sc.k, cfg.seed)
    sups = panel_sup_remainders(sc, offsets, grid, budget=p["budget"],
                                threads=cfg.threads)
    fit = fit_power_law(sups)
    pred = upper_exponent(sc.d, sc.k)
    low = lower_exponent(sc.d, sc.k, p["eps_slack"]) if sc.k >= 1 else None
    rows = [{"rho": rho, "sup_abs_remainder": mag} for rho, mag in sups]
    echo = {"d": sc.d, "k": sc.k, "rho_min": _fmt(p["rho_min"]),
            "rho_max": _fmt(p["rho_max"]), "per_octave": p["per_octave"],
            "offsets": ",".join(_fmt_vector(o.coords) for o in offsets),
            "budget": p["budget"], "eps_slack": _fmt(p["eps_slack"])}
    extras = {
        "fitted_slope": _fmt(fit.slope),
        "fitted_intercept": _fmt(fit.intercept),
        "r_squared": _fmt(fit.r_squared),
        "n_points": fit.n_points,
        "predicted_upper_exponent": _fmt(pred.exponent),
        "predicted_log_factor": pred.log_factor,
        "within_upper_slack": fit.slope <= pred.exponent + 0.1,
    }
    if low is not None:
        con = constrained_power_law_fit(sups, low.exponent)
        extras["predicted_lower_exponent"] = _fmt(low.exponent)
        extras["constrained_r_squared"] = _fmt(con.r_squared)
        extras["constrained_amplitude"] = _fmt(con.amplitude)
    record = {"header": _header(cfg, echo, **extras), "rows": rows}

    def plot():
        xs = [r for r, _ in sups]
        ys = [m for _, m in sups]
        guides = [(fit.slope, fit.intercept, f"fit slope {fit.slope:.3f}"),
                  (pred.exponent, fit.intercept,
                   f"predicted upper {pred.exponent:.3f}")]
        _maybe_plot(cfg, [("panel sup |R|", xs, ys)], guides=guides,
                    ylabel="sup |remainder|",
                    title=f"exponent fit d={sc.d} k={sc.k}")

    return record, ["rho", "sup_abs_remainder"], plot


def _cmd_poisson_check(cfg: RunConfig):
    p = cfg.params
    sc = SliceConfig(p["d"], p["k"])
    rho = p["rho"]
    eps = default_epsilon(sc, rho) if p["eps"] == "auto" else float(p["eps"])
    offsets = _parse_offsets(p["offsets"], sc.k, cfg.seed)
    rows = []
    for off in offsets:
        vol = slice_volume(sc, off, rho, budget=p["budget"])
        lo = poisson_sum_approx(sc, off, rho, eps, sign="minus")
        hi = poisson_sum_approx(sc, off, rho, eps, sign="plus")
        rows.append({
            "d": sc.d, "k": sc.k, "rho": rho, "offset": _fmt_vector(off.coords),
            "eps": eps, "volume": vol,
            "lower": lo.value, "upper": hi.value,
            "tail_lower": lo.tail_bound, "tail_upper": hi.tail_bound,
            "bracket_ok": lo.value - lo.tail_bound <= vol <= hi.value + hi.tail_bound,
        })
    echo = {"d": sc.d, "k": sc.k, "rho": _fmt(rho), "eps": _fmt(eps),
            "offsets": ",".join(_fmt_vector(o.coords) for o in offsets),
            "budget": p["budget"]}
    record = {"header": _header(cfg, echo), "rows": rows}
    cols = ["d", "k", "rho", "offset", "eps", "volume", "lower", "upper",
            "tail_lower", "tail_upper", "bracket_ok"]
    return record, cols, None


def _cmd_fourier_coeff(cfg: RunConfig):
    p = cfg.params
    sc = SliceConfig(p["d"], p["k"])
    rho = p["rho"]
    gamma = tuple(int(round(c)) for c in _parse_vector(p["gamma"], sc.k, "gamma"))
    quad = TorusQuadrature(points_per_dim=p["points"], mc_samples=p["mc_samples"],
                           seed=cfg.seed)
    coeff = remainder_fourier_coeff(sc, rho, gamma, quad, budget=p["budget"])
    gnorm = math.sqrt(sum(g * g for g in gamma))
    predicted = (0.0 if gnorm == 0.0
                 else rho**sc.d * unit_ball_volume(sc.l) * chi_hat(sc, rho * gnorm))
    rows = [{
        "d": sc.d, "k": sc.k, "rho": rho, "gamma": ":".join(str(g) for g in gamma),
        "coeff_real": coeff.real, "coeff_imag": coeff.imag,
        "predicted": predicted, "abs_error": abs(coeff - predicted),
    }]
    echo = {"d": sc.d, "k": sc.k, "rho": _fmt(rho),
            "gamma": ":".join(str(g) for g in gamma),
            "points": p["points"], "mc_samples": p["mc_samples"],
            "budget": p["budget"]}
    record = {"header": _header(cfg, echo), "rows": rows}
    cols = ["d", "k", "rho", "gamma", "coeff_real", "coeff_imag", "predicted",
            "abs_error"]
    return record, cols, None


def _cmd_paraboloid(cfg: RunConfig):
    p = cfg.params
    q = ParaboloidQuery(p["d"], p["k"], p["rho"])
    measure = paraboloid_measure(q, budget=p["budget"])
    value, yardstick = paraboloid_asymptotic(q.d, q.k, q.rho)
    rows = [{
        "d": q.d, "k": q.k, "rho": q.rho, "measure": measure,
        "expansion": value, "yardstick": yardstick,
        "difference": measure - value,
    }]
    echo = {"d": q.d, "k": q.k, "rho": _fmt(q.rho), "budget": p["budget"]}
    record = {"header": _header(cfg, echo), "rows": rows}
    return record, ["d", "k", "rho", "measure", "expansion", "yardstick",
                    "difference"], None


def _cmd_landau(cfg: RunConfig):
    p = cfg.params
    q = LandauQuery(p["d"], p["lam"])
    value = landau_ids_direct(q)
    via = landau_ids_via_paraboloid(q) if q.d >= 3 else None
    leading = landau_leading_h3(q.lam) if (q.d == 3 and q.lam >= 1.0) else None
    rows = [{"d": q.d, "lambda": q.lam, "value": value,
             "via_paraboloid": via, "leading_h3": leading}]
    echo = {"d": q.d, "lambda": _fmt(q.lam)}
    record = {"header": _header(cfg, echo), "rows": rows}
    return record, ["d", "lambda", "value", "via_paraboloid", "leading_h3"], None


# ---------------------------------------------------------------------------
# verify suites: quick spot versions of the module invariants
# ---------------------------------------------------------------------------


def _suite_identities() -> list[tuple[str, bool, str]]:
    results = []
    worst = 0.0
    for d in range(1, 9):
        for k in range(0, d + 1):
            sc = SliceConfig(d, k)
            got = chi_hat(sc, 0.0) * unit_ball_volume(sc.l)
            worst = max(worst, abs(got - unit_ball_volume(d)))
    results.append(("transform normalization d<=8", worst <= 1e-10, f"max err {worst:.2e}"))
    s = slice_volume(SliceConfig(2, 2), TorusOffset((0.0, 0.0)), 2.5)
    results.append(("unit slice count (2,2) rho=2.5", s == 21.0, f"got {s}"))
    ok = all(euler_maclaurin_exact(d, (d - 1) // 4, a) == faulhaber_sum((d - 1) // 2, a)
             for d in (3, 5, 7) for a in (0, 5, 1000))
    results.append(("power-sum expansion exactness", ok, "d in {3,5,7}"))
    got = landau_ids_direct(LandauQuery(3, 4.0))
    want = (math.sqrt(3.0) + 1.0) / (2.0 * math.pi**2)
    results.append(("Landau d=3 hand value", abs(got - want) < 1e-15, f"err {abs(got-want):.1e}"))
    return results


def _suite_sandwich() -> list[tuple[str, bool, str]]:
    results = []
    for (d, k) in ((2, 1), (3, 2)):
        sc = SliceConfig(d, k)
        off = TorusOffset((0.3,) * k)
        rho = 10.0
        eps = default_epsilon(sc, rho)
        s = slice_volume(sc, off, rho)
        lo = poisson_sum_approx(sc, off, rho, eps, sign="minus")
        hi = poisson_sum_approx(sc, off, rho, eps, sign="plus")
        ok = lo.value - lo.tail_bound <= s <= hi.value + hi.tail_bound
        results.append((f"sandwich ({d},{k}) rho=10", ok,
                        f"S={s:.6g} in [{lo.value - lo.tail_bound:.6g}, "
                        f"{hi.value + hi.tail_bound:.6g}]"))
    return results


def _suite_exponents() -> list[tuple[str, bool, str]]:
    sc = SliceConfig(2, 1)
    from .asymptotics import dyadic_rho_grid

    sups = panel_sup_remainders(sc, offset_panel(1, 16, seed=0), dyadic_rho_grid(4, 9))
    fit = fit_power_law(sups)
    ok = fit.slope <= upper_exponent(2, 1).exponent + 0.2
    return [("(2,1) sup-remainder slope (short scan)", ok,
             f"slope {fit.slope:.3f} vs 0.5 + 0.2 slack")]


def _suite_fourier() -> list[tuple[str, bool, str]]:
    sc = SliceConfig(2, 1)
    quad = TorusQuadrature(points_per_dim=8192)
    z = remainder_fourier_coeff(sc, 7.3, (0,), quad)
    r1 = ("mean-zero coefficient (2,1)", abs(z) <= 1e-5, f"|c0| = {abs(z):.2e}")
    c = remainder_fourier_coeff(sc, 7.3, (1,), quad)
    want = 7.3**2 * unit_ball_volume(sc.l) * chi_hat(sc, 7.3)
    rel = abs(c - want) / abs(want)
    r2 = ("coefficient identity (2,1) gamma=1", rel <= 1e-4, f"rel {rel:.2e}")
    return [r1, r2]


def _suite_landau() -> list[tuple[str, bool, str]]:
    rng = np.random.default_rng(0)
    worst = 0.0
    for d in (3, 4, 5):
        for lam in 1.0 + 999.0 * rng.random(30):
            if abs((lam - 1.0) / 2.0 - round((lam - 1.0) / 2.0)) < 1e-6:
                continue
            a = landau_ids_direct(LandauQuery(d, float(lam)))
            b = landau_ids_via_paraboloid(LandauQuery(d, float(lam)))
            worst = max(worst, abs(a - b) / abs(a))
    r1 = ("cross-formula agreement d in {3,4,5}", worst <= 1e-9, f"worst rel {worst:.2e}")
    lams = np.linspace(1.0, 100.0, 500)
    vals = [landau_ids_direct(LandauQuery(3, float(l))) for l in lams]
    mono = all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))
    r2 = ("IDS monotone in lambda (d=3)", mono, "500-point grid")
    return [r1, r2]


_SUITES = {
    "identities": _suite_identities,
    "sandwich": _suite_sandwich,
    "exponents": _suite_exponents,
    "fourier": _suite_fourier,
    "landau": _suite_landau,
}


def _cmd_verify(cfg: RunConfig):
    name = cfg.params["suite"]
    suites = list(_SUITES) if name == "all" else [name]
    rows = []
    for suite in suites:
        for label, ok, detail in _SUITES[suite]():
            rows.append({"suite": suite, "check": label,
                         "status": "PASS" if ok else "FAIL", "detail": detail})
    echo = {"suite": name}
    record = {"header": _header(cfg, echo), "rows": rows}
    return record, ["suite", "check", "status", "detail"], None


COMMANDS = {
    "slice": _cmd_slice,
    "remainder-scan": _cmd_remainder_scan,
    "exponent-fit": _cmd_exponent_fit,
    "poisson-check": _cmd_poisson_check,
    "fourier-coeff": _cmd_fourier_coeff,
    "paraboloid": _cmd_paraboloid,
    "landau": _cmd_landau,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig, out=None) -> int:
    """Execute a run configuration, writing the report to `out` (default stdout)."""
    out = out if out is not None else sys.stdout
    try:
        record, columns, plot = COMMANDS[cfg.command](cfg)
    except EnumerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (QuadratureError, TailToleranceError, GammaPoleError,
            FloatingPointError, OverflowError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    _emit(record, columns, cfg.output_format, out)
    if plot is not None and cfg.plot is not None:
        plot()
    if cfg.command == "verify":
        failed = [r for r in record["rows"] if r["status"] == "FAIL"]
        return EXIT_NUMERICAL if failed else EXIT_OK
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latslice",
        description="Ball slice volumes over lattices of planes, their "
                    "remainder asymptotics, and the Landau-level density of states.",
    )
    parser.add_argument("--version", action="version", version=f"latslice {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, *, threads=True):
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--plot", default=None, metavar="PATH")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if threads:
            sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("slice", help="slice volume and remainder at one radius")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rho", type=float, required=True)
    sp.add_argument("--offsets", default=None,
                    help="a:b,c:d vectors or random:N (default: the zero offset)")
    common(sp, threads=False)

    sp = sub.add_parser("remainder-scan", help="remainder over a geometric rho grid")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rho-min", type=float, required=True)
    sp.add_argument("--rho-max", type=float, required=True)
    sp.add_argument("--per-octave", type=int, default=8)
    sp.add_argument("--offsets", default=None)
    common(sp)

    sp = sub.add_parser("exponent-fit", help="fit the growth exponent of sup |R|")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rho-min", type=float, required=True)
    sp.add_argument("--rho-max", type=float, required=True)
    sp.add_argument("--per-octave", type=int, default=8)
    sp.add_argument("--offsets", default="random:32")
    sp.add_argument("--eps-slack", type=float, default=0.1,
                    help="slack for the d = 1 mod 4 lower exponent")
    common(sp)

    sp = sub.add_parser("poisson-check", help="sandwich bracket via truncated dual sums")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rho", type=float, required=True)
    sp.add_argument("--eps", default="auto",
                    help="mollification width, or auto for the balanced default")
    sp.add_argument("--offsets", default=None)
    common(sp, threads=False)

    sp = sub.add_parser("fourier-coeff", help="torus Fourier coefficient of the remainder")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rho", type=float, required=True)
    sp.add_argument("--gamma", required=True, help="integer vector a:b")
    sp.add_argument("--points", type=int, default=64,
                    help="midpoint points per dimension (k <= 2)")
    sp.add_argument("--mc-samples", type=int, default=100000,
                    help="Monte Carlo samples (k >= 3)")
    common(sp, threads=False)

    sp = sub.add_parser("paraboloid", help="paraboloid measure vs its expansion")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rho", type=float, required=True)
    common(sp, threads=False)

    sp = sub.add_parser("landau", help="Landau Hamiltonian IDS at one energy")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, required=True)
    common(sp, threads=False)

    sp = sub.add_parser("verify", help="run spot-check suites")
    sp.add_argument("--suite", choices=sorted(_SUITES) + ["all"], default="all")
    common(sp, threads=False)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(args).items()
              if k not in ("command", "format", "plot", "seed", "threads")}
    if "offsets" in params and params["offsets"] is None:
        k = params.get("k", 1)
        params["offsets"] = ":".join(["0"] * max(k, 1))
    return RunConfig(
        command=args.command,
        params=params,
        output_format=args.format,
        plot=args.plot,
        seed=args.seed,
        threads=getattr(args, "threads", 1),
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
