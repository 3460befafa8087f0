"""Command-line front end: ``gpchaos COMMAND [flags]`` or ``gpchaos --config run.yaml``."""
from __future__ import annotations

import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import csvio, figures
from .config import COMMANDS, RunConfig, describe, parse_args
from .errors import GridMiss, ParseError, ValidationError
from .indicators import (lyapunov, phase_portrait, poincare_section, potential_profile,
                         wavefunction_profile)
from .integrator import integrate
from .model import CASES, State
from .regimes import GridAxis, Regime, RegimeMap, classify, regime_bands, scan

log = logging.getLogger("gpchaos")

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2


def _initial(cfg):
    return State(cfg.x0, cfg.phi0, cfg.y0)


def _to_stdout(cfg):
    return cfg.out is None or cfg.out == "-"


def _figure_path(out, suffix=".png"):
    return str(Path(out).with_suffix(suffix))


def _plot(cfg, fn, *args, **kw):
    if cfg.plot and not _to_stdout(cfg):
        from . import plotting
        getattr(plotting, fn)(*args, _figure_path(cfg.out), **kw)


def _meta(cfg, **extra):
    meta = describe(cfg)
    meta.update(extra)
    return meta


def _termination(flag):
    return "blowup" if flag else "completed"


def run_simulate(cfg):
    traj = integrate(cfg.model, _initial(cfg), cfg.integrator)
    csvio.write(cfg.out, ["x", "phi", "y"], zip(traj.x, traj.phi, traj.y),
                _meta(cfg, termination=traj.termination.value))
    _plot(cfg, "plot_xy", traj.phi, traj.y, xlabel=r"$\phi$", ylabel=r"$\phi'$")


def run_portrait(cfg):
    pts, traj = phase_portrait(cfg.model, _initial(cfg), cfg.integrator, cfg.discard_fraction)
    csvio.write(cfg.out, ["phi", "y"], pts, _meta(cfg, termination=traj.termination.value))
    _plot(cfg, "plot_xy", pts[:, 0], pts[:, 1], xlabel=r"$\phi$", ylabel=r"$\phi'$")


def run_poincare(cfg):
    sec = poincare_section(cfg.model, _initial(cfg), cfg.integrator, cfg.section_period,
                           cfg.section_x0)
    csvio.write(cfg.out, ["phi", "y"], sec.points,
                _meta(cfg, termination=_termination(sec.terminated_early), points=len(sec)))
    _plot(cfg, "plot_xy", sec.phi, sec.y, xlabel=r"$\phi$", ylabel=r"$\phi'$", points=True)


def run_potential(cfg):
    x_max = cfg.x_end if cfg.x_max is None else cfg.x_max
    prof = potential_profile(cfg.model.potential, cfg.x_min, x_max, cfg.n)
    csvio.write(cfg.out, ["x", "V"], prof, _meta(cfg))
    _plot(cfg, "plot_xy", prof[:, 0], prof[:, 1], xlabel="$x$", ylabel="$V(x)$")


def run_wavefunction(cfg):
    prof, traj = wavefunction_profile(cfg.model, _initial(cfg), cfg.integrator)
    csvio.write(cfg.out, ["x", "phi"], prof, _meta(cfg, termination=traj.termination.value))
    _plot(cfg, "plot_xy", prof[:, 0], prof[:, 1], xlabel="$x$", ylabel=r"$\phi(x)$")


def _lyapunov(cfg, model=None):
    return lyapunov(cfg.method, model or cfg.model, _initial(cfg), cfg.x_end, cfg.delta0,
                    cfg.renorm_interval, cfg.discard, step=cfg.step,
                    blowup_threshold=cfg.blowup_threshold, adaptive=cfg.adaptive)


def run_lyapunov(cfg):
    res = _lyapunov(cfg)
    regime = classify(res.lambda_max, res.diverged, cfg.thresholds)
    csvio.write(cfg.out, ["x", "running_lambda"], zip(res.x_renorm, res.history),
                _meta(cfg, lambda_max=res.lambda_max, diverged=res.diverged,
                      n_renorms=res.n_renorms, regime=regime.label))
    _plot(cfg, "plot_lyapunov_history", res)


def _scan(cfg, case, v_grid=None, f_grid=None):
    return scan(case, v_grid or cfg.v_grid, f_grid or cfg.f_grid, cfg.integrator,
                cfg.lyapunov_config, cfg.thresholds, workers=cfg.workers)


def _scan_meta(rmap):
    return {**rmap.metadata, "regime_codes": "0=Regular 1=SmallChaos 2=StrongChaos 3=GlobalChaos"}


def write_scan(rmap, out, plot=True):
    """Main CSV (labels) plus the plot-ready ``.grid.csv`` (regime codes)."""
    meta = _scan_meta(rmap)
    rows = list(rmap.cells())
    csvio.write(out, ["V", "F", "lambda_max", "diverged", "regime"],
                [(v, f, lam, d, r.label) for v, f, lam, d, r in rows], meta)
    if out is not None and out != "-":
        grid = str(Path(out).with_suffix("")) + ".grid.csv"
        csvio.write(grid, ["V", "F", "lambda_max", "regime_code"],
                    [(v, f, lam, int(r)) for v, f, lam, d, r in rows], meta)
        if plot:
            from . import plotting
            plotting.plot_regime_map(rmap, _figure_path(out))


def run_scan(cfg):
    write_scan(_scan(cfg, CASES[cfg.case] if cfg.case else _explicit_case(cfg)), cfg.out,
               cfg.plot)


def _explicit_case(cfg):
    from .model import CasePreset
    return CasePreset("custom", cfg.model)


def read_scan(path):
    """Rebuild a RegimeMap from a scan CSV written by ``write_scan``."""
    meta, header, rows = csvio.read(path)
    if header != ["V", "F", "lambda_max", "diverged", "regime"]:
        raise ParseError(f"{path}: not a scan CSV (header {header})")
    v_axis = np.unique([float(r[0]) for r in rows])
    f_axis = np.unique([float(r[1]) for r in rows])
    shape = (len(v_axis), len(f_axis))
    lam = np.full(shape, math.nan)
    reg = np.zeros(shape, dtype=int)
    div = np.zeros(shape, dtype=bool)
    for r in rows:
        i = np.searchsorted(v_axis, float(r[0]))
        j = np.searchsorted(f_axis, float(r[1]))
        lam[i, j] = float(r[2])
        div[i, j] = r[3] == "1"
        reg[i, j] = int(Regime.from_label(r[4]))
    return RegimeMap(meta.get("case", "?"), v_axis, f_axis, lam, reg, div, meta)


def run_bands(cfg):
    if cfg.grid:
        rmap = read_scan(cfg.grid)
    else:
        v = GridAxis(cfg.v_fixed, cfg.v_fixed, 1.0)
        rmap = _scan(cfg, CASES[cfg.case] if cfg.case else _explicit_case(cfg), v_grid=v)
    bands = regime_bands(rmap, cfg.v_fixed)
    csvio.write(cfg.out, ["f_lo", "f_hi", "regime"],
                [(lo, hi, r.label) for (lo, hi), r in bands], _meta(cfg))


def _panel_row(cfg, case, label, V, F):
    m = CASES[case].at(V, F)
    s0 = _initial(cfg)
    portrait, _ = phase_portrait(m, s0, cfg.integrator, cfg.discard_fraction)
    section = poincare_section(m, s0, cfg.integrator, cfg.section_period).points
    pot = potential_profile(m.potential, cfg.x0, cfg.x_end, cfg.n)
    wave, _ = wavefunction_profile(m, s0, cfg.integrator)
    return {"label": f"{label}: V={V:g}, F={F:g}", "portrait": portrait, "section": section,
            "potential": pot, "wavefunction": wave}


def run_reproduce_figure(cfg):
    from . import plotting
    outdir = Path("figures" if _to_stdout(cfg) else cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    wanted = figures.ALL_FIGURES if cfg.figure == "all" else (cfg.figure,)
    for fig in wanted:
        if fig in figures.DOMAIN_FIGURES:
            case = figures.DOMAIN_FIGURES[fig]
            log.info("figure %s: scanning case %s", fig, case)
            write_scan(_scan(cfg, CASES[case]), str(outdir / f"fig{fig}_case{case}_scan.csv"),
                       cfg.plot)
        elif fig in figures.PANEL_FIGURES:
            case, points = figures.PANEL_FIGURES[fig]
            rows = []
            for label, V, F in points:
                log.info("figure %s: row %s", fig, label)
                row = _panel_row(cfg, case, label, V, F)
                rows.append(row)
                meta = _meta(cfg, case=case, V=V, F=F, row=label)
                stem = outdir / f"fig{fig}_{label}"
                csvio.write(f"{stem}_portrait.csv", ["phi", "y"], row["portrait"], meta)
                csvio.write(f"{stem}_poincare.csv", ["phi", "y"], row["section"], meta)
                csvio.write(f"{stem}_potential.csv", ["x", "V"], row["potential"], meta)
                csvio.write(f"{stem}_wavefunction.csv", ["x", "phi"], row["wavefunction"], meta)
            if cfg.plot:
                plotting.plot_indicator_panels(rows, outdir / f"fig{fig}_case{case}.png")
        elif fig == figures.CURVE_FIGURE:
            curves = {}
            f_axis = cfg.f_grid.values()
            for case in CASES:
                lam = []
                for F in f_axis:
                    lam.append(_lyapunov(cfg, CASES[case].at(figures.CURVE_V, float(F))).lambda_max)
                curves[case] = (f_axis, np.array(lam))
            rows = [(float(F), *(curves[c][1][k] for c in CASES)) for k, F in enumerate(f_axis)]
            csvio.write(str(outdir / f"fig{fig}_lyapunov.csv"), ["F", *[f"lambda_{c}" for c in CASES]],
                        rows, _meta(cfg, V=figures.CURVE_V))
            if cfg.plot:
                plotting.plot_lyapunov_curves(curves, outdir / f"fig{fig}_lyapunov.png")
        else:
            raise ValidationError(f"figure must be one of {', '.join(figures.ALL_FIGURES)} or all")


DISPATCH = {
    "simulate": run_simulate,
    "portrait": run_portrait,
    "poincare": run_poincare,
    "potential": run_potential,
    "wavefunction": run_wavefunction,
    "lyapunov": run_lyapunov,
    "scan": run_scan,
    "bands": run_bands,
    "reproduce-figure": run_reproduce_figure,
}
assert set(DISPATCH) == set(COMMANDS)


def run(cfg: RunConfig) -> int:
    """Execute one validated configuration; blow-ups are reported in the data, not as failures."""
    if not _to_stdout(cfg) and cfg.command != "reproduce-figure":
        parent = os.path.dirname(os.path.abspath(cfg.out))
        os.makedirs(parent, exist_ok=True)
    DISPATCH[cfg.command](cfg)
    return EXIT_OK


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except (ParseError, ValidationError, GridMiss) as exc:
        print(f"gpchaos: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"gpchaos: IOError: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
