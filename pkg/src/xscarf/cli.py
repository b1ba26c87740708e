"""Command-line front end: figure presets, CSV/SVG emission, validation.

Commands
--------
potential, spectrum, wavefunction, weights, mandel, autocorr, density,
evolve, validate. Presets populate a command's flags with the parameter
sets behind the reference figures; explicit flags override preset values.

Exit codes: 0 success, 1 invalid flags or unknown preset, 2 inadmissible
(alpha, beta, m), 3 numerical failure (singularity / non-convergence).

CSV cells are written with 17 significant digits and newline endings, so
re-running a command reproduces its file byte for byte. Every CSV gets a
JSON metadata sidecar (<out>.meta.json) recording parameters, truncation
tails, normalization discrepancies, and any skipped points or curves.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__, dynamics, mass, validation
from .errors import AdmissibilityError, ConvergenceError, DomainError, SingularityError
from .grids import GridSpec, default_grid
from .polynomials import XmParams, admissible
from .scarf import SystemParams, energy, hamiltonian_eigenvalue, v_eff
from .dynamics import bound_states

COMMANDS = (
    "potential", "spectrum", "wavefunction", "weights", "mandel",
    "autocorr", "density", "evolve", "validate",
)

EXIT_OK, EXIT_FLAGS, EXIT_INADMISSIBLE, EXIT_NUMERICAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on bad flags; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_FLAGS)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def write_csv(path: str, header: Sequence[str], columns: Sequence[np.ndarray]) -> None:
    rows = len(columns[0])
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            fh.write(",".join(_fmt(float(c[i])) for c in columns) + "\n")


def write_meta(path: str, meta: Dict) -> None:
    with open(path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_svg(path: str, header: Sequence[str], columns: Sequence[np.ndarray]) -> None:
    """Minimal polyline rendering of each y-column against the first column."""
    w, h, pad = 720, 480, 45
    xs = np.asarray(columns[0], dtype=float)
    ys_all = [np.asarray(c, dtype=float) for c in columns[1:]]
    finite = np.concatenate([y[np.isfinite(y)] for y in ys_all]) if ys_all else np.array([0.0])
    x0, x1 = float(np.min(xs)), float(np.max(xs))
    y0, y1 = float(np.min(finite)), float(np.max(finite))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    strokes = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
               "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<rect x="{pad}" y="{pad}" width="{w - 2 * pad}" height="{h - 2 * pad}" '
        'fill="none" stroke="#999"/>',
    ]

    def sx(v):
        return pad + (v - x0) / (x1 - x0) * (w - 2 * pad)

    def sy(v):
        return h - pad - (v - y0) / (y1 - y0) * (h - 2 * pad)

    for idx, y in enumerate(ys_all):
        ok = np.isfinite(y)
        pts = " ".join(f"{sx(float(a)):.2f},{sy(float(b)):.2f}" for a, b in zip(xs[ok], y[ok]))
        color = strokes[idx % len(strokes)]
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>')
        parts.append(
            f'<text x="{w - pad - 120}" y="{pad + 16 + 14 * idx}" font-size="11" '
            f'fill="{color}">{header[idx + 1]}</text>'
        )
    parts.append(f'<text x="{pad}" y="{h - 12}" font-size="11" fill="#333">{header[0]}</text>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# presets

_DENSITY_TIMES = ((0.0, "t0"), (0.25, "tqtr"), (0.5, "thalf"), (1.0, "trev"))

_FIG3_SETS = {
    # region: list of (alpha, beta); m in {0, 1} curves where sigma > -1/2
    "A": [(-0.4, -1.0 / 3.0), (-2.0 / 3.0, -1.0 / 3.0), (-0.8, -1.0 / 3.0), (-0.9, -1.0 / 3.0)],
    "B": [(-0.6, -0.75), (-0.45, -0.75), (-0.25, -0.75), (-0.1, -0.75)],
    "C": [(0.5, 1.5), (1.0, 2.0), (0.25, 1.25), (2.0, 3.0)],
    "D": [(2.0, 1.0), (1.5, 0.5), (3.0, 1.5), (5.0, 2.0)],
}


def _preset_table() -> Dict[str, Dict]:
    t: Dict[str, Dict] = {}
    for kind in ("wos", "ws"):
        t[f"fig1-{kind}"] = dict(
            command="potential", alpha=1.0, beta=2.0, m="0..3", mass=kind,
            lam=1.0, points=1000,
        )
    for J in (5, 10, 20, 40):
        t[f"fig2-J{J}"] = dict(command="weights", alpha=1.0, beta=2.0, J=float(J),
                               nmax=50, m="0..2")
    for region in "ABCD":
        t[f"fig3-{region}"] = dict(command="mandel", region=region, points=400)
    for J in (10, 20, 40, 80):
        t[f"fig4-J{J}"] = dict(command="autocorr", alpha=1.5, beta=2.5, J=float(J),
                               nmax=50, m="0..2")
    t["fig5"] = dict(command="density", alpha=1.0, beta=2.0, J=20.0, nmax=50,
                     mass="constant", m="0..1", points=2001, frames=_DENSITY_TIMES)
    for tag, lam in (("A", 0.25), ("B", 1.0), ("C", 2.0)):
        t[f"fig6-{tag}"] = dict(command="density", alpha=1.0, beta=2.0, J=20.0, nmax=50,
                                mass="wos", lam=lam, m="0..1", points=2001,
                                frames=_DENSITY_TIMES)
        t[f"fig7-{tag}"] = dict(command="density", alpha=1.0, beta=2.0, J=20.0, nmax=50,
                                mass="ws", lam=lam, m="0..1", points=2001,
                                frames=_DENSITY_TIMES)
    for m in (0, 1):
        fig = 8 + m
        for tag, lam, pts in (("A", 0.5, 2001), ("B", 2.0, 3001), ("C", 4.0, 6001)):
            t[f"fig{fig}-{tag}"] = dict(command="evolve", alpha=1.0, beta=2.0, J=20.0,
                                        nmax=50, mass="wos", lam=lam, m=str(m), points=pts)
    return t


PRESETS = _preset_table()


def preset(name: str) -> Dict:
    """Fully populated flag set for a documented preset name."""
    if name not in PRESETS:
        known = ", ".join(sorted(PRESETS))
        raise KeyError(f"unknown preset {name!r}; available: {known}")
    return dict(PRESETS[name])


# ---------------------------------------------------------------------------
# flag plumbing

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--m", type=str, default=None, help="codimension; int or range like 0..3")
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--mass", choices=mass.KINDS, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--J", type=float, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--range", dest="xrange", type=float, nargs=2, default=None,
                   metavar=("LO", "HI"))
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--trace", type=float, nargs=3, default=None,
                   metavar=("T0", "T1", "SAMPLES"))
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("csv", "svg"), default=None)
    p.add_argument("--preset", type=str, default=None)


_DEFAULTS = dict(
    alpha=1.0, beta=2.0, m="0", k=1.0, omega=1.0, mass="constant", lam=1.0,
    J=20.0, nmax=50, points=1001, xrange=None, t=0.0, trace=None, out=None,
    format="csv", region=None, frames=None,
)


def _merge_config(args: argparse.Namespace) -> Dict:
    cfg = dict(_DEFAULTS)
    if args.preset:
        cfg.update(preset(args.preset))
    for key in ("alpha", "beta", "m", "k", "omega", "mass", "lam", "J", "nmax",
                "points", "xrange", "t", "trace", "out", "format"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg["preset"] = args.preset
    return cfg


def _parse_m(spec: str) -> List[int]:
    spec = str(spec)
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def _profile(cfg: Dict) -> mass.MassProfile:
    return mass.make_profile(cfg["mass"], cfg["lam"])


def _system(cfg: Dict, m: int) -> SystemParams:
    return SystemParams(XmParams(cfg["alpha"], cfg["beta"], m), k=cfg["k"], omega=cfg["omega"])


def _grid_xs(cfg: Dict, profile: mass.MassProfile) -> np.ndarray:
    if cfg["xrange"] is not None:
        lo, hi = cfg["xrange"]
        return GridSpec(cfg["points"], lo, hi).xs()
    return default_grid(profile, cfg["k"], cfg["points"]).xs()


def _meta_base(cfg: Dict, command: str) -> Dict:
    return {
        "command": command,
        "version": __version__,
        "preset": cfg.get("preset"),
        "alpha": cfg["alpha"],
        "beta": cfg["beta"],
        "m": cfg["m"],
        "k": cfg["k"],
        "omega": cfg["omega"],
        "mass": cfg["mass"],
        "lambda": cfg["lam"],
        "J": cfg["J"],
        "nmax": cfg["nmax"],
        "points": cfg["points"],
    }


def _emit(cfg: Dict, path: str, header, columns, meta) -> None:
    write_csv(path, header, columns)
    write_meta(path, meta)
    if cfg["format"] == "svg":
        write_svg(os.path.splitext(path)[0] + ".svg", header, columns)
    print(f"wrote {path}")


def _require_admissible_cli(cfg: Dict, m: int) -> SystemParams:
    params = _system(cfg, m)
    ok, why = admissible(params.x)
    if not ok:
        raise AdmissibilityError(f"(alpha={cfg['alpha']}, beta={cfg['beta']}, m={m}): {why}")
    return params


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("EOP_THREADS", "4")))
    except ValueError:
        return 4


# ---------------------------------------------------------------------------
# command bodies

def cmd_potential(cfg: Dict) -> int:
    profile = _profile(cfg)
    ms = _parse_m(cfg["m"])
    base = cfg["out"] or "potential.csv"
    for m in ms:
        params = _system(cfg, m)
        xs = _grid_xs(cfg, profile)
        vals = np.empty_like(xs)
        skipped = []
        for i, xi in enumerate(xs):
            try:
                vals[i] = v_eff(params, profile, float(xi))
            except (SingularityError, DomainError):
                vals[i] = np.nan
                skipped.append(float(xi))
        keep = np.isfinite(vals)
        path = base if len(ms) == 1 else base.replace(".csv", f"_m{m}.csv")
        meta = _meta_base(cfg, "potential")
        meta.update({"m": m, "skipped_singular_points": skipped})
        _emit(cfg, path, ["x", "V_eff"], [xs[keep], vals[keep]], meta)
    return EXIT_OK


def cmd_spectrum(cfg: Dict) -> int:
    ms = _parse_m(cfg["m"])
    params = _require_admissible_cli(cfg, ms[0])
    ns = np.arange(cfg["nmax"] + 1)
    e_gk = np.array([energy(params, int(n)) for n in ns], dtype=float)
    e_well = np.array([hamiltonian_eigenvalue(params, int(n)) for n in ns], dtype=float)
    path = cfg["out"] or "spectrum.csv"
    meta = _meta_base(cfg, "spectrum")
    meta["note"] = "e_nu is the coherent-state ladder; e_well_nu the potential's eigenvalue"
    _emit(cfg, path, ["nu", "e_nu", "e_well_nu"], [ns.astype(float), e_gk, e_well], meta)
    return EXIT_OK


def cmd_wavefunction(cfg: Dict) -> int:
    profile = _profile(cfg)
    ms = _parse_m(cfg["m"])
    params = _require_admissible_cli(cfg, ms[0])
    xs = _grid_xs(cfg, profile)
    states = bound_states(params, profile, cfg["nmax"])
    cols = [xs] + [np.asarray(s.psi(xs), dtype=float) for s in states]
    header = ["x"] + [f"psi_{s.level}" for s in states]
    path = cfg["out"] or "wavefunction.csv"
    meta = _meta_base(cfg, "wavefunction")
    meta["m"] = ms[0]
    meta["norm_quadrature"] = {s.level: s.norm_quadrature for s in states}
    meta["renormalized_levels"] = [s.level for s in states if s.renormalized]
    _emit(cfg, path, header, cols, meta)
    return EXIT_OK


def cmd_weights(cfg: Dict) -> int:
    ms = _parse_m(cfg["m"])
    ns = np.arange(cfg["nmax"] + 1, dtype=float)
    cols = [ns]
    header = ["n"]
    meta = _meta_base(cfg, "weights")
    tails = {}
    skipped = []
    for m in ms:
        params = _system(cfg, m)
        if params.sigma <= -0.5:
            skipped.append(m)
            continue
        cols.append(dynamics.weights(params, cfg["J"], cfg["nmax"]))
        header.append(f"weight_m{m}" if len(ms) > 1 else "weight")
        tails[str(m)] = dynamics.truncation_tail(params, cfg["J"], cfg["nmax"])
    if len(cols) == 1:
        raise DomainError("no m value with sigma > -1/2; nothing to emit")
    meta["truncation_tail"] = tails
    meta["skipped_m_sigma_out_of_domain"] = skipped
    _emit(cfg, cfg["out"] or "weights.csv", header, cols, meta)
    return EXIT_OK


def cmd_mandel(cfg: Dict) -> int:
    meta = _meta_base(cfg, "mandel")
    if cfg.get("region"):
        sets = _FIG3_SETS[cfg["region"]]
        lo, hi = (cfg["xrange"] if cfg["xrange"] else
                  ((0.002, 2.0) if cfg["region"] in "AB" else (0.01, 50.0)))
        Js = np.linspace(lo, hi, cfg["points"])
        cols = [Js]
        header = ["J"]
        skipped = []
        for alpha, beta in sets:
            for m in (0, 1):
                params = SystemParams(XmParams(alpha, beta, m), k=cfg["k"], omega=cfg["omega"])
                tag = f"a{alpha:g}_b{beta:g}_m{m}".replace("-", "neg")
                if params.sigma <= -0.5:
                    skipped.append(tag)
                    continue
                cols.append(np.array([dynamics.mandel(params, float(J)) for J in Js]))
                header.append(f"Q_{tag}")
        meta["region"] = cfg["region"]
        meta["skipped_curves_sigma_out_of_domain"] = skipped
        meta["note"] = ("curves with sigma <= -1/2 are outside the coherent-state "
                        "domain (bessel order <= -1) and are skipped")
        _emit(cfg, cfg["out"] or f"mandel_{cfg['region']}.csv", header, cols, meta)
        return EXIT_OK
    ms = _parse_m(cfg["m"])
    lo, hi = cfg["xrange"] if cfg["xrange"] else (0.01, 50.0)
    Js = np.linspace(lo, hi, cfg["points"])
    cols = [Js]
    header = ["J"]
    for m in ms:
        params = _system(cfg, m)
        cols.append(np.array([dynamics.mandel(params, float(J)) for J in Js]))
        header.append(f"Q_m{m}" if len(ms) > 1 else "Q")
    _emit(cfg, cfg["out"] or "mandel.csv", header, cols, meta)
    return EXIT_OK


def cmd_autocorr(cfg: Dict) -> int:
    ms = _parse_m(cfg["m"])
    meta = _meta_base(cfg, "autocorr")
    cols = []
    header = []
    tails = {}
    for m in ms:
        params = _require_admissible_cli(cfg, m)
        spec = dynamics.coherent_state(params, cfg["J"], cfg["nmax"])
        scales = dynamics.timescales(params, cfg["J"])
        if cfg["trace"] is not None:
            t0, t1, samples = cfg["trace"]
            ts = np.linspace(t0, t1, int(samples))
        else:
            ts = np.linspace(0.0, scales.t_rev, 2049)
        a = dynamics.autocorrelation_sq(spec, ts)
        suffix = f"_m{m}" if len(ms) > 1 else ""
        cols += [ts / scales.t_cl, np.asarray(a)]
        header += [f"t_over_Tcl{suffix}", f"autocorr_sq{suffix}"]
        tails[str(m)] = spec.tail
        meta[f"timescales_m{m}"] = {"t_cl": scales.t_cl, "t_rev": scales.t_rev, "n_bar": scales.n_bar}
    meta["truncation_tail"] = tails
    _emit(cfg, cfg["out"] or "autocorr.csv", header, cols, meta)
    return EXIT_OK


def _density_frames(cfg: Dict, m: int, frame_times: List[Tuple[float, str]]):
    profile = _profile(cfg)
    params = _require_admissible_cli(cfg, m)
    spec = dynamics.coherent_state(params, cfg["J"], cfg["nmax"])
    scales = dynamics.timescales(params, cfg["J"])
    xs = _grid_xs(cfg, profile)

    def one(frac_tag):
        frac, tag = frac_tag
        return tag, dynamics.density(spec, profile, xs, frac)

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        frames = list(pool.map(one, frame_times))
    return xs, frames, spec, scales


def cmd_density(cfg: Dict) -> int:
    ms = _parse_m(cfg["m"])
    base = cfg["out"] or "density.csv"
    frames_spec = cfg.get("frames")
    for m in ms:
        params = _require_admissible_cli(cfg, m)
        scales = dynamics.timescales(params, cfg["J"])
        if frames_spec:
            times = [(frac * scales.t_rev, tag) for frac, tag in frames_spec]
        else:
            times = [(cfg["t"], "t")]
        xs, frames, spec, scales = _density_frames(cfg, m, times)
        header = ["x"] + [f"density_{tag}" for tag, _ in frames]
        cols = [xs] + [f for _, f in frames]
        path = base if len(ms) == 1 else base.replace(".csv", f"_m{m}.csv")
        meta = _meta_base(cfg, "density")
        meta.update({
            "m": m,
            "frame_times": {tag: t for (t, tag) in times},
            "truncation_tail": spec.tail,
            "timescales": {"t_cl": scales.t_cl, "t_rev": scales.t_rev, "n_bar": scales.n_bar},
        })
        _emit(cfg, path, header, cols, meta)
    return EXIT_OK


def cmd_evolve(cfg: Dict) -> int:
    ms = _parse_m(cfg["m"])
    base = cfg["out"] or "evolve.csv"
    for m in ms:
        params = _require_admissible_cli(cfg, m)
        scales = dynamics.timescales(params, cfg["J"])
        if cfg["trace"] is not None:
            t0, t1, samples = cfg["trace"]
            times = [(t, f"f{i}") for i, t in enumerate(np.linspace(t0, t1, int(samples)))]
        else:
            # one classical period sampled at eighths
            times = [(i / 8.0 * scales.t_cl, f"f{i}") for i in range(9)]
        xs, frames, spec, scales = _density_frames(cfg, m, times)
        header = ["x"] + [f"density_{tag}" for tag, _ in frames]
        cols = [xs] + [f for _, f in frames]
        path = base if len(ms) == 1 else base.replace(".csv", f"_m{m}.csv")
        meta = _meta_base(cfg, "evolve")
        meta.update({
            "m": m,
            "frame_times": {tag: t for (t, tag) in times},
            "truncation_tail": spec.tail,
            "timescales": {"t_cl": scales.t_cl, "t_rev": scales.t_rev, "n_bar": scales.n_bar},
        })
        _emit(cfg, path, header, cols, meta)
    return EXIT_OK


def cmd_validate(cfg: Dict) -> int:
    results = validation.run_all()
    width = max(len(r.name) for r in results)
    fails = 0
    for r in results:
        print(f"{r.status:<6} {r.name:<{width}}  {r.detail}")
        if r.status == "FAIL":
            fails += 1
    xfails = sum(1 for r in results if r.status == "XFAIL")
    print(f"\n{len(results)} checks: {len(results) - fails - xfails} passed, "
          f"{fails} failed, {xfails} expected-defect (see decisions ledger)")
    return EXIT_OK if fails == 0 else EXIT_FLAGS


_HANDLERS = {
    "potential": cmd_potential,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "weights": cmd_weights,
    "mandel": cmd_mandel,
    "autocorr": cmd_autocorr,
    "density": cmd_density,
    "evolve": cmd_evolve,
    "validate": cmd_validate,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="xscarf", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"{name} command")
        _add_common(p)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_FLAGS
    if args.preset and PRESETS[args.preset]["command"] != args.command:
        print(
            f"error: preset {args.preset!r} belongs to command "
            f"{PRESETS[args.preset]['command']!r}",
            file=sys.stderr,
        )
        return EXIT_FLAGS
    try:
        return _HANDLERS[args.command](cfg)
    except AdmissibilityError as exc:
        print(f"inadmissible parameters: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except (SingularityError, ConvergenceError) as exc:
        print(f"numerical failure in {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DomainError as exc:
        print(f"parameter out of domain: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
