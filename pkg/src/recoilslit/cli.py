"""Command-line front end: ``recoilslit {pattern,eraser,sweep,oracle}``.

Exit codes: 0 success, 1 validation/tolerance failure, 2 configuration
error, 3 numerical-domain error (grid too small, unphysical overlap).
"""

import argparse
import logging
import math
import sys
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .analysis import duality_sweep, extract_visibility
from .detector import make_correlated_pair, overlap
from .errors import CoverageError, DomainError, RecoilSlitError
from .eraser import QBasisState, conditional_pattern, marginal_pattern
from .grid import GridSpec
from .output import emit, render_csv
from .spectral import compare_with_oracle
from .wavepacket import SlitGeometry, fringe_width, synthesize_pattern

log = logging.getLogger("recoilslit")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

NORM_WARN_TOL = 1e-6


class ConfigError(RecoilSlitError, ValueError):
    pass


def parse_complex(text):
    """``"re,im"`` or a plain real number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im' or a real number, got {text!r}")


@dataclass
class RunConfig:
    command: str
    epsilon: float = 1.0
    d: float = 10.0
    wavelength: float = 1.0
    distance: float = 1000.0
    c1: complex = complex(1 / math.sqrt(2))
    c2: complex = complex(1 / math.sqrt(2))
    theta: float = 0.0
    grid_n: int = 4096
    grid_extent: float = 1024.0
    steps: int = 101
    out: str = None
    svg: str = None

    @classmethod
    def from_args(cls, args):
        cfg = cls(
            command=args.command, epsilon=args.epsilon, d=args.d, wavelength=args.wavelength,
            distance=args.distance, c1=args.c1, c2=args.c2, theta=args.theta,
            grid_n=args.grid_n, grid_extent=args.grid_extent, steps=args.steps,
            out=args.out, svg=args.svg,
        )
        cfg.validate()
        return cfg

    def validate(self):
        for name in ("epsilon", "d", "wavelength"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"--{name if name != 'wavelength' else 'lambda'} must be positive")
        if not (math.isfinite(self.distance) and self.distance >= 0):
            raise ConfigError("--distance must be non-negative")
        if not math.isfinite(self.theta):
            raise ConfigError("--theta must be finite")
        norm2 = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if not (math.isfinite(norm2) and norm2 > 0):
            raise ConfigError("--c1 and --c2 cannot both vanish")
        if abs(norm2 - 1.0) > NORM_WARN_TOL:
            warnings.warn(f"|c1|^2 + |c2|^2 = {norm2:.6g}; renormalizing", stacklevel=2)
        if abs(norm2 - 1.0) > 0:
            scale = 1.0 / math.sqrt(norm2)
            self.c1, self.c2 = self.c1 * scale, self.c2 * scale
        try:
            self.grid()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if not (self.grid_extent > 0 and math.isfinite(self.grid_extent)):
            raise ConfigError("--grid-extent must be positive")
        if self.command == "sweep" and self.steps < 2:
            raise ConfigError("--steps must be at least 2")

    def geometry(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return SlitGeometry(self.epsilon, self.d, self.wavelength, self.distance)

    def grid(self):
        return GridSpec(self.grid_extent, self.grid_n)

    def comment_lines(self):
        lines = [f"recoilslit {self.command}"]
        for key, value in asdict(self).items():
            if key in ("command", "out", "svg"):
                continue
            lines.append(f"{key}={value!r}")
        return lines


def _report(cfg, text):
    stream = sys.stderr if cfg.out in (None, "-") else sys.stdout
    print(text, file=stream)


def cmd_pattern(cfg):
    geom = cfg.geometry()
    d1, d2 = make_correlated_pair(cfg.c1, cfg.c2)
    d2 = d2.with_phase(cfg.theta)
    pattern = synthesize_pattern(geom, d1, d2, cfg.grid())
    vis = extract_visibility(pattern)
    ov = overlap(d1, d2)
    comments = cfg.comment_lines() + [
        f"overlap={ov!r}",
        f"visibility={vis.value!r} no_fringes={vis.no_fringes}",
        f"fringe_width={fringe_width(geom)!r}",
    ]
    emit(render_csv(["x", "intensity"], zip(pattern.xs, pattern.intensities), comments), cfg.out)
    if cfg.svg:
        from .plotting import plot_pattern

        plot_pattern(cfg.svg, pattern.xs, pattern.intensities, title=f"|<d1|d2>| = {abs(ov):.3f}")
    _report(cfg, f"visibility {vis.value:.9f}{' (no fringes)' if vis.no_fringes else ''}")
    return EXIT_OK


def cmd_eraser(cfg):
    """Here ``c1``/``c2`` are the eraser-basis weights g1, g2 of the joint state."""
    geom = cfg.geometry()
    grid = cfg.grid()
    q = QBasisState(cfg.c1, cfg.c2, cfg.theta, cfg.theta)
    p1 = conditional_pattern(geom, "q1", grid, cfg.theta)
    p2 = conditional_pattern(geom, "q2", grid, cfg.theta)
    pm = marginal_pattern(geom, q, grid)
    vis = [extract_visibility(p).value for p in (p1, p2, pm)]
    comments = cfg.comment_lines() + [
        "c1, c2 are the eraser-basis weights of the q1 and q2 branches",
        "visibility q1={!r} q2={!r} marginal={!r}".format(*vis),
    ]
    rows = zip(pm.xs, p1.intensities, p2.intensities, pm.intensities)
    emit(render_csv(["x", "q1", "q2", "marginal"], rows, comments), cfg.out)
    if cfg.svg:
        from .plotting import plot_eraser

        plot_eraser(cfg.svg, pm.xs, p1.intensities, p2.intensities, pm.intensities)
    _report(cfg, "visibility q1 {:.9f} q2 {:.9f} marginal {:.9f}".format(*vis))
    return EXIT_OK


def cmd_sweep(cfg):
    geom = cfg.geometry()
    reports = duality_sweep(geom, cfg.steps, cfg.grid(), theta=cfg.theta)
    rows = [
        (r.c1, r.D, r.V, r.v2_plus_d2, r.dP2, r.dQ2, r.uncertainty_sum) for r in reports
    ]
    worst = max(r.v2_plus_d2 - 1.0 for r in reports)
    min_sum = min(r.uncertainty_sum for r in reports)
    summary = f"max(V^2+D^2-1)={worst!r} min(dP^2+dQ^2)={min_sum!r}"
    columns = ["c1", "D", "V", "V2_plus_D2", "dP2", "dQ2", "dP2_plus_dQ2"]
    emit(render_csv(columns, rows, cfg.comment_lines() + [summary]), cfg.out)
    if cfg.svg:
        from .plotting import plot_sweep

        plot_sweep(cfg.svg, [r.D for r in reports], [r.V for r in reports])
    _report(cfg, summary)
    return EXIT_OK


def cmd_oracle(cfg):
    geom = cfg.geometry()
    report = compare_with_oracle(geom, cfg.grid(), ov=np.exp(1j * cfg.theta))
    lines = [
        f"amplitude relative Linf  {report.amplitude_error:.3e}  (tol {report.AMPLITUDE_TOL:g})",
        f"pattern relative Linf    {report.pattern_error:.3e}  (tol {report.AMPLITUDE_TOL:g})",
        f"integrated intensity err {report.norm_error:.3e}  (tol {report.NORM_TOL:g})",
        f"norm drift               {report.unitarity_error:.3e}  (tol {report.NORM_TOL:g})",
    ]
    if math.isfinite(report.fringe_width_analytic):
        lines.append(
            f"fringe width analytic {report.fringe_width_analytic:.9g} measured "
            f"{report.fringe_width_measured:.9g} rel err {report.fringe_rel_error:.3e} (tol 1%)"
        )
    else:
        lines.append("fringe width: n/a (tau = 0, no propagation)")
    failures = report.failures()
    lines.append("FAIL: " + "; ".join(failures) if failures else "PASS")
    text = "\n".join(lines) + "\n"
    if cfg.out not in (None, "-"):
        emit(text, cfg.out)
    sys.stdout.write(text)
    return EXIT_FAIL if failures else EXIT_OK


COMMANDS = {"pattern": cmd_pattern, "eraser": cmd_eraser, "sweep": cmd_sweep, "oracle": cmd_oracle}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="recoilslit", description="Which-way double-slit experiment with a recoiling slit."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=float, default=1.0, help="slit packet half-width")
    common.add_argument("--d", type=float, default=10.0, help="slit separation")
    common.add_argument("--lambda", dest="wavelength", type=float, default=1.0, help="de Broglie wavelength")
    common.add_argument("--distance", type=float, default=1000.0, help="slit-to-screen distance L")
    common.add_argument("--c1", type=parse_complex, default=complex(1 / math.sqrt(2)), help="'re,im' or real")
    common.add_argument("--c2", type=parse_complex, default=complex(1 / math.sqrt(2)), help="'re,im' or real")
    common.add_argument("--theta", type=float, default=0.0, help="extra relative phase (radians)")
    common.add_argument("--grid-n", type=int, default=4096, help="grid samples (power of two)")
    common.add_argument("--grid-extent", type=float, default=1024.0, help="grid half-width X")
    common.add_argument("--steps", type=int, default=101, help="sweep points")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--svg", default=None, help="also render an SVG figure here")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("pattern", parents=[common], help="screen pattern for detector coefficients c1, c2")
    sub.add_parser("eraser", parents=[common], help="conditional and marginal eraser patterns")
    sub.add_parser("sweep", parents=[common], help="duality sweep over c1 in [1/sqrt2, 1]")
    sub.add_parser("oracle", parents=[common], help="closed forms against grid propagation")
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = lambda msg, *a, **k: log.warning("%s", msg)
        try:
            cfg = RunConfig.from_args(args)
        except ConfigError as exc:
            print(f"recoilslit: config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        try:
            return COMMANDS[cfg.command](cfg)
        except (CoverageError, DomainError) as exc:
            print(f"recoilslit: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        except RecoilSlitError as exc:
            print(f"recoilslit: {exc}", file=sys.stderr)
            return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
