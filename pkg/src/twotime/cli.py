"""Command-line scenario runner: deterministic CSV tables and checked summaries.

Every subcommand is deterministic under a fixed seed (default 20240001,
chosen so the shipped reference tables regenerate exactly) and exits 0 only
when all of its built-in assertions pass. Numeric output uses 12 significant
digits. The default output directory can be set with the TWOTIME_OUT
environment variable.
"""

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import correlators, dynamics, gaussian, qcore, realism, spinlab

DEFAULT_SEED = 20240001
DEFAULT_SAMPLES = 10000
DEFAULT_R_LIST = (0.2, 0.5, 0.8, 1.0)
OUT_ENV_VAR = "TWOTIME_OUT"
BOUND_TOL = 1e-9

SCATTER_HEADER = ("r", "theta", "phi", "irr_spin", "irr_torque")
CURVE_HEADER = ("r", "phi", "irr_spin", "irr_torque")
LAMBDA_HEADER = ("theta", "nu_norm", "min_eigenvalue", "physical")


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    out_dir: Path = Path(".")
    fmt: str = "csv"

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.fmt not in ("csv", "tsv"):
            raise ValueError(f"format must be csv or tsv, got {self.fmt!r}")
        self.out_dir = Path(self.out_dir)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _write_table(cfg: RunConfig, stem: str, header, rows) -> Path:
    try:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        path = cfg.out_dir / f"{stem}.{cfg.fmt}"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, delimiter="," if cfg.fmt == "csv" else "\t", lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise SystemExit(f"error: cannot write to {cfg.out_dir}: {exc}")
    return path


def cmd_figure1(cfg: RunConfig, r_list) -> int:
    """Write the irreality trade-off scan and verify the purity bound row by row."""
    rows = spinlab.figure1_scan(r_list, cfg.samples, cfg.seed)
    scatter = [r for r in rows if not r.is_curve]
    curves = [r for r in rows if r.is_curve]
    scatter_path = _write_table(
        cfg, "figure1_scatter", SCATTER_HEADER,
        [(row.r, row.theta, row.phi, row.irr_spin, row.irr_torque) for row in scatter],
    )
    curves_path = _write_table(
        cfg, "figure1_curves", CURVE_HEADER,
        [(row.r, row.phi, row.irr_spin, row.irr_torque) for row in curves],
    )
    min_slack = math.inf
    worst = None
    for row in rows:
        slack = row.irr_spin + row.irr_torque - row.bound_rhs
        if slack < min_slack:
            min_slack, worst = slack, row
    print(f"wrote {len(scatter)} scatter rows to {scatter_path}")
    print(f"wrote {len(curves)} curve rows to {curves_path}")
    print(f"min bound slack {min_slack:.6e} over {len(rows)} rows")
    if min_slack < -BOUND_TOL:
        print(f"FAIL: bound violated at {worst}", file=sys.stderr)
        return 1
    return 0


def cmd_lambda(cfg: RunConfig, theta_steps: int) -> int:
    """Tabulate the conditional operator's Bloch norm over a theta grid."""
    if theta_steps < 2:
        raise SystemExit(f"error: --theta-steps must be >= 2, got {theta_steps}")
    alpha = (np.eye(2, dtype=complex) - qcore.SIGMA_Z) / 2.0
    channel = dynamics.ChannelFamily(np.zeros((2, 2), dtype=complex))
    rows = []
    max_norm_defect = 0.0
    physical_thetas = []
    for i in range(1, theta_steps + 1):
        theta = i * math.pi / theta_steps
        direction = (math.sin(theta), 0.0, math.cos(theta))
        _, nu_norm = spinlab.bloch_lambda_nu(direction)
        report = correlators.lambda_operator(alpha, qcore.bloch_to_state(direction), 0.0, channel)
        rows.append((theta, nu_norm, report.min_eigenvalue, report.physical))
        max_norm_defect = max(max_norm_defect, abs(nu_norm - 1.0 / abs(math.sin(theta / 2.0))))
        if report.physical:
            physical_thetas.append(theta)
    path = _write_table(cfg, "lambda", LAMBDA_HEADER, rows)
    fraction = len(physical_thetas) / theta_steps
    print(f"wrote {theta_steps} rows to {path}")
    print(f"fraction of physical points: {fraction:.6g} (expected {1 / theta_steps:.6g}, theta = pi only)")
    ok = max_norm_defect <= 1e-10 and physical_thetas == [rows[-1][0]]
    if not ok:
        print(
            f"FAIL: norm defect {max_norm_defect:.3e}, physical thetas {physical_thetas}",
            file=sys.stderr,
        )
        return 1
    return 0


def _random_state(dim, rng):
    return qcore.random_density_matrix(dim, rng)


def _random_instance(dim, rng):
    a = qcore.Observable(qcore.random_hermitian(dim, rng))
    b = qcore.Observable(qcore.random_hermitian(dim, rng))
    channel = dynamics.ChannelFamily(qcore.random_hermitian(dim, rng))
    t1 = rng.uniform(0.0, 1.0)
    t2 = t1 + rng.uniform(0.1, 1.0)
    return a, b, channel, t1, t2, _random_state(dim, rng)


def _random_pm1_instance(rng):
    def axis_observable():
        n = rng.standard_normal(3)
        n /= np.linalg.norm(n)
        return qcore.Observable(n[0] * qcore.SIGMA_X + n[1] * qcore.SIGMA_Y + n[2] * qcore.SIGMA_Z)

    channel = dynamics.ChannelFamily(qcore.random_hermitian(2, rng))
    t1 = rng.uniform(0.0, 1.0)
    t2 = t1 + rng.uniform(0.1, 1.0)
    return axis_observable(), axis_observable(), channel, t1, t2, _random_state(2, rng)


def _dephased_start_instance(dim, rng):
    # Preparation chosen so the evolved state at t1 is already diagonal in
    # the first observable's eigenbasis; the two correlator routes coincide.
    a, b, channel, t1, t2, _ = _random_instance(dim, rng)
    weights = rng.uniform(0.1, 1.0, len(a.spectrum))
    weights /= weights.sum()
    rho_t1 = sum(w * p / p.trace().real for w, p in zip(weights, a.projectors))
    rho0 = qcore.DensityMatrix(channel.propagate_state(rho_t1, -t1))
    return a, b, channel, t1, t2, rho0


def _gap(instance) -> float:
    a, b, channel, t1, t2, rho0 = instance
    tpm = correlators.tpm_correlator(a, b, t1, t2, channel, rho0)
    op = correlators.TwoTimeOperator("product", a, b, t1, t2, channel)
    return abs(tpm - correlators.heisenberg_correlator(op, rho0))


def cmd_tpm_gap(cfg: RunConfig, dim: int, trials: int) -> int:
    """Compare the protocol and Heisenberg correlators over random instances."""
    rng = np.random.default_rng(cfg.seed)
    ok = True
    eq4_gap = max(_gap(_dephased_start_instance(dim, rng)) for _ in range(10))
    print(f"d={dim}: max gap over 10 dephased-start instances: {eq4_gap:.3e} (expected <= 1e-10)")
    ok &= eq4_gap <= 1e-10
    if dim == 2:
        max_gap = max(_gap(_random_pm1_instance(rng)) for _ in range(trials))
        print(f"d=2: max gap over {trials} random +-1-spectrum instances: {max_gap:.3e} (expected <= 1e-10)")
        ok &= max_gap <= 1e-10
    else:
        max_gap = max(_gap(_random_instance(3, rng)) for _ in range(trials))
        print(f"d=3: max gap over {trials} random instances: {max_gap:.3e}")
        fx = correlators.qutrit_gap_fixture()
        tpm = correlators.tpm_correlator(fx.A, fx.B, fx.t1, fx.t2, fx.channel, fx.rho0)
        op = correlators.TwoTimeOperator("product", fx.A, fx.B, fx.t1, fx.t2, fx.channel)
        heis = correlators.heisenberg_correlator(op, fx.rho0)
        print(f"d=3 fixture: protocol {tpm:.12g}, Heisenberg {heis:.12g}, gap {abs(tpm - heis):.6g} (expected > 1e-6)")
        ok &= abs(tpm - heis) > 1e-6
    return 0 if ok else 1


def _check(name: str, ok: bool, detail: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return ok


def _report_torque_bound(cfg: RunConfig) -> bool:
    rows = spinlab.figure1_scan(DEFAULT_R_LIST, cfg.samples, cfg.seed)
    min_slack = min(r.irr_spin + r.irr_torque - r.bound_rhs for r in rows)
    return _check(
        "torque-bound",
        min_slack >= -BOUND_TOL,
        f"min bound slack {min_slack:.6e} over {len(rows)} rows (tolerance -1e-09)",
    )


def _report_eigenprep(cfg: RunConfig) -> bool:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for index in range(100):
        dim = 2 if index % 2 == 0 else 3
        kind = "product" if index % 4 < 2 else "sum"
        a, b, channel, t1, t2, _ = _random_instance(dim, rng)
        op = correlators.TwoTimeOperator(kind, a, b, t1, t2, channel)
        realized = correlators.realize(op)
        for k in range(len(realized.spectrum)):
            j = realism.irreality(realized, correlators.prepare_eigenstate(op, k)).irreality
            worst = max(worst, abs(j))
    return _check(
        "eigenprep",
        worst <= 1e-10,
        f"max irreality in eigenstate preparations {worst:.3e} over 100 operators (tolerance 1e-10)",
    )


def _random_gaussian_prep(rng) -> gaussian.GaussianPrep:
    dx = math.exp(rng.uniform(-1.0, 1.0))
    dp = (0.5 / dx) * math.exp(rng.uniform(0.0, 1.5))
    c_max = math.sqrt(dx**2 * dp**2 - 0.25)
    corr = rng.uniform(-1.0, 1.0) * 0.999 * c_max
    return gaussian.GaussianPrep(
        x0=rng.uniform(-2.0, 2.0), p0=rng.uniform(-2.0, 2.0), dx=dx, dp=dp, xp_corr=corr
    )


def _report_displacement(cfg: RunConfig) -> bool:
    rng = np.random.default_rng(cfg.seed)
    min_product = math.inf
    min_weighted = math.inf
    spread_defect = 0.0
    for _ in range(1000):
        prep = _random_gaussian_prep(rng)
        particle = gaussian.FreeParticle(math.exp(rng.uniform(-1.0, 1.0)))
        t1 = rng.uniform(0.0, 2.0)
        t2 = t1 + rng.uniform(0.01, 3.0)
        report = gaussian.uncertainty_report(prep, particle, t1, t2)
        min_product = min(min_product, report.product_slack)
        min_weighted = min(min_weighted, report.weighted_slack)
        _, spread = gaussian.displacement_stats(prep, particle, t1, t2)
        spread_defect = max(spread_defect, abs(spread - prep.dp * (t2 - t1) / particle.mass))
    ok = min_product >= -1e-12 and min_weighted >= -1e-12 and spread_defect == 0.0
    return _check(
        "displacement",
        ok,
        f"min product slack {min_product:.6e}, min weighted slack {min_weighted:.6e}, "
        f"spread formula defect {spread_defect:.1e} over 1000 preparations (tolerance -1e-12)",
    )


def _report_precession(cfg: RunConfig) -> bool:
    rng = np.random.default_rng(cfg.seed)
    closed_vs_channel = 0.0
    field_component = 0.0
    derivative_defect = 0.0
    step = 1e-5
    for _ in range(100):
        h = rng.standard_normal(3)
        h /= np.linalg.norm(h)
        tau = rng.uniform(-4.0 * math.pi, 4.0 * math.pi)
        channel = spinlab.precession_channel(h)
        evolved = spinlab.pauli_heisenberg(spinlab.PrecessionConfig(h, tau))
        torque = spinlab.instantaneous_torque(h, tau)
        plus = spinlab.pauli_heisenberg(spinlab.PrecessionConfig(h, tau + step))
        minus = spinlab.pauli_heisenberg(spinlab.PrecessionConfig(h, tau - step))
        field_dot_torque = sum(h[i] * torque[i] for i in range(3))
        field_component = max(field_component, np.max(np.abs(field_dot_torque)))
        for i, sigma_i in enumerate(qcore.SIGMA):
            via_channel = channel.propagate_observable(sigma_i, tau)
            closed_vs_channel = max(closed_vs_channel, np.max(np.abs(evolved[i] - via_channel)))
            finite_diff = (plus[i] - minus[i]) / (2.0 * step)
            derivative_defect = max(derivative_defect, np.max(np.abs(finite_diff - torque[i])))
    ok = closed_vs_channel <= 1e-12 and field_component <= 1e-12 and derivative_defect <= 1e-8
    return _check(
        "precession",
        ok,
        f"closed form vs channel {closed_vs_channel:.3e} (<= 1e-12), "
        f"field component of torque {field_component:.3e} (<= 1e-12), "
        f"finite-difference defect {derivative_defect:.3e} (<= 1e-8) over 100 draws",
    )


_REPORTS = {
    "torque-bound": _report_torque_bound,
    "eigenprep": _report_eigenprep,
    "displacement": _report_displacement,
    "precession": _report_precession,
}


def cmd_report(cfg: RunConfig, name: str) -> int:
    return 0 if _REPORTS[name](cfg) else 1


def _parse_r_list(text: str):
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid radius list {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("radius list is empty")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twotime",
        description="Two-time observable scenarios: scans, gap comparisons, and invariant reports.",
    )
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed (default %(default)s)")
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="samples per band (default %(default)s)")
    parser.add_argument(
        "--out", default=os.environ.get(OUT_ENV_VAR, "."),
        help="output directory (default $" + OUT_ENV_VAR + " or the working directory)",
    )
    parser.add_argument("--format", choices=("csv", "tsv"), default="csv", help="table format (default %(default)s)")
    commands = parser.add_subparsers(dest="command", required=True)

    p_fig = commands.add_parser("figure1", help="irreality trade-off scan over Bloch bands")
    p_fig.add_argument("--r-list", type=_parse_r_list, default=list(DEFAULT_R_LIST),
                       help="comma-separated band radii (default 0.2,0.5,0.8,1.0)")

    p_lam = commands.add_parser("lambda", help="conditional-operator Bloch norm over a theta grid")
    p_lam.add_argument("--theta-steps", type=int, default=180, help="grid points on (0, pi] (default %(default)s)")

    p_gap = commands.add_parser("tpm-gap", help="protocol vs Heisenberg correlator gaps")
    p_gap.add_argument("--dim", type=int, choices=(2, 3), default=2, help="Hilbert space dimension")
    p_gap.add_argument("--trials", type=int, default=1000, help="random instances (default %(default)s)")

    p_rep = commands.add_parser("report", help="run one invariant suite and print pass/fail")
    p_rep.add_argument("name", choices=sorted(_REPORTS))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(seed=args.seed, samples=args.samples, out_dir=Path(args.out), fmt=args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "figure1":
        return cmd_figure1(cfg, args.r_list)
    if args.command == "lambda":
        return cmd_lambda(cfg, args.theta_steps)
    if args.command == "tpm-gap":
        return cmd_tpm_gap(cfg, args.dim, args.trials)
    return cmd_report(cfg, args.name)


if __name__ == "__main__":
    sys.exit(main())
