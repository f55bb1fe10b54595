"""Command-line front end: SNR sweeps, validation reports, asymptote tables.

Output is CSV with a fixed column order and 9-significant-digit floats, so
identical configuration and seed give byte-identical files regardless of
worker count.

Exit codes: 0 success, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from relaysec import analytics
from relaysec.errors import NumericError, RelaysecError
from relaysec.model import (
    TOPOLOGY_1,
    Topology,
    db_to_linear,
    topology_to_stats,
)
from relaysec.montecarlo import (
    RngStream,
    empirical_cdf_ks,
    estimate_esr,
    estimate_event_probability,
    sample_channels,
)
from relaysec.sinr import (
    PRELOG,
    SchemeKind,
    SinrMethod,
    baseline_sinrs,
    highsnr_sinrs,
    secrecy_rate_from_pair,
)
from relaysec.specfun import bessel_k1, bessel_k1_quadrature, k1_series, lah

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

SWEEP_HEADER = "snr_db,scheme,method,esr_bits,std_error,n_samples,seed"

#: Closed-form methods that only exist for the three-hop scheme.
CLOSED_FORM_METHODS = ("closed-form-lb", "asymptote")
MC_METHODS = {m.value: m for m in SinrMethod}
ALL_METHODS = tuple(MC_METHODS) + CLOSED_FORM_METHODS

SCHEME_BY_NAME = {k.value: k for k in SchemeKind}


class UsageError(RelaysecError):
    """Bad flags or config file content."""


def fmt(x: float) -> str:
    """Fixed 9-significant-digit float formatting for stable CSV."""
    return f"{x:.9g}"


@dataclass
class SweepSpec:
    """Everything one CLI invocation needs."""

    topology: Topology = TOPOLOGY_1
    snr_start_db: float = 0.0
    snr_stop_db: float = 60.0
    snr_step_db: float = 5.0
    schemes: list[SchemeKind] = field(default_factory=lambda: [SchemeKind.THREE_HOP])
    methods: list[str] = field(default_factory=lambda: ["mc-exact", "closed-form-lb"])
    n_samples: int = 1_000_000
    seed: int = 1
    workers: int = 1
    output: str | None = None

    def __post_init__(self) -> None:
        if self.snr_step_db <= 0:
            raise UsageError(f"SNR step must be > 0 dB, got {self.snr_step_db}")
        if self.snr_start_db > self.snr_stop_db:
            raise UsageError("SNR start must not exceed SNR stop")
        if self.n_samples < 1:
            raise UsageError(f"sample count must be >= 1, got {self.n_samples}")
        if self.workers < 1:
            raise UsageError(f"worker count must be >= 1, got {self.workers}")
        for m in self.methods:
            if m not in ALL_METHODS:
                raise UsageError(f"unknown method {m!r}; choose from {ALL_METHODS}")

    def snr_points_db(self) -> list[float]:
        count = int(math.floor((self.snr_stop_db - self.snr_start_db) / self.snr_step_db + 1e-9)) + 1
        return [self.snr_start_db + i * self.snr_step_db for i in range(count)]


# ---------------------------------------------------------------------------
# Config file: one "key = value" per line, '#' starts a comment.  Keys match
# the long flag names (topology, pathloss, snr, samples, seed, scheme,
# method, workers, output); scheme and method take comma-separated lists.
# Flags override file values.
# ---------------------------------------------------------------------------

def parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
                key, _, val = line.partition("=")
                values[key.strip()] = val.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


def _parse_topology(text: str, pathloss: float) -> Topology:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"topology must be 'xS,xR1,xR2,xD', got {text!r}")
    try:
        xs = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad topology coordinate in {text!r}") from exc
    return Topology(*xs, n=pathloss)


def _parse_snr(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"SNR range must be 'start:stop:step' in dB, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), float(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad SNR range {text!r}") from exc


def _parse_schemes(names: list[str]) -> list[SchemeKind]:
    out = []
    for name in names:
        if name not in SCHEME_BY_NAME:
            raise UsageError(f"unknown scheme {name!r}; choose from {sorted(SCHEME_BY_NAME)}")
        out.append(SCHEME_BY_NAME[name])
    return out


def build_spec(args: argparse.Namespace) -> SweepSpec:
    """Merge config-file values and flags (flags win) into a SweepSpec."""
    cfg = parse_config_file(args.config) if args.config else {}

    def pick(flag_value, key: str, default):
        if flag_value is not None:
            return flag_value
        if key in cfg:
            return cfg[key]
        return default

    pathloss = float(pick(args.pathloss, "pathloss", TOPOLOGY_1.n))
    topo_text = pick(args.topology, "topology", None)
    if topo_text is None:
        topology = Topology(TOPOLOGY_1.x_s, TOPOLOGY_1.x_r1, TOPOLOGY_1.x_r2, TOPOLOGY_1.x_d, pathloss)
    else:
        topology = _parse_topology(topo_text, pathloss)

    start, stop, step = _parse_snr(str(pick(args.snr, "snr", "0:60:5")))

    schemes = args.scheme if args.scheme else None
    if schemes is None and "scheme" in cfg:
        schemes = [s.strip() for s in cfg["scheme"].split(",") if s.strip()]
    methods = args.method if args.method else None
    if methods is None and "method" in cfg:
        methods = [m.strip() for m in cfg["method"].split(",") if m.strip()]

    try:
        return SweepSpec(
            topology=topology,
            snr_start_db=start,
            snr_stop_db=stop,
            snr_step_db=step,
            schemes=_parse_schemes(schemes) if schemes else [SchemeKind.THREE_HOP],
            methods=list(methods) if methods else ["mc-exact", "closed-form-lb"],
            n_samples=int(pick(args.samples, "samples", 1_000_000)),
            seed=int(pick(args.seed, "seed", 1)),
            workers=int(pick(args.workers, "workers", 1)),
            output=pick(args.output, "output", None),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _method_applies(scheme: SchemeKind, method: str) -> bool:
    if scheme is SchemeKind.THREE_HOP:
        return True
    return method == SinrMethod.EXACT.value


def cmd_sweep(spec: SweepSpec, out) -> int:
    """One CSV row per (SNR point, scheme, applicable method)."""
    status = EXIT_OK
    print(SWEEP_HEADER, file=out)
    m_hops = topology_to_stats(spec.topology, 1.0)
    for snr_db in spec.snr_points_db():
        rho = db_to_linear(snr_db)
        stats = topology_to_stats(spec.topology, rho)
        for scheme in spec.schemes:
            for method in spec.methods:
                if not _method_applies(scheme, method):
                    continue
                try:
                    if method in MC_METHODS:
                        est = estimate_esr(stats, scheme, MC_METHODS[method],
                                           spec.n_samples, spec.seed, spec.workers)
                        row = (fmt(snr_db), scheme.value, method, fmt(est.mean),
                               fmt(est.std_error), str(est.n_samples), str(est.seed))
                    elif method == "closed-form-lb":
                        val = analytics.esr_lower_bound(stats)
                        row = (fmt(snr_db), scheme.value, method, fmt(val), fmt(0.0), "0", str(spec.seed))
                    else:  # asymptote
                        val = analytics.esr_asymptote(rho, m_hops.m_g, m_hops.m_h, m_hops.m_f)
                        row = (fmt(snr_db), scheme.value, method, fmt(val), fmt(0.0), "0", str(spec.seed))
                except NumericError as exc:
                    print(f"numeric failure at {snr_db} dB / {scheme.value} / {method}: {exc}",
                          file=sys.stderr)
                    row = (fmt(snr_db), scheme.value, method, "nan", "nan", "0", str(spec.seed))
                    status = EXIT_NUMERIC
                print(",".join(row), file=out)
    return status


def cmd_asymptote(spec: SweepSpec, out) -> int:
    """High-SNR slope/offset parameters plus the sampled asymptote line."""
    stats = topology_to_stats(spec.topology, 1.0)
    p = analytics.high_snr_offset(stats.m_g, stats.m_h, stats.m_f)
    print("quantity,snr_db,value", file=out)
    print(f"s_infinity,,{fmt(p.s_infinity)}", file=out)
    print(f"s_infinity_two_hop,,{fmt(analytics.TWO_HOP_HIGH_SNR_SLOPE)}", file=out)
    print(f"l_infinity,,{fmt(p.l_infinity)}", file=out)
    print(f"a_term,,{fmt(p.a_term)}", file=out)
    print(f"b_term,,{fmt(p.b_term)}", file=out)
    print(f"c_term,,{fmt(p.c_term)}", file=out)
    for snr_db in spec.snr_points_db():
        val = analytics.esr_asymptote(db_to_linear(snr_db), stats.m_g, stats.m_h, stats.m_f)
        print(f"esr_asymptote,{fmt(snr_db)},{fmt(val)}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

@dataclass
class CheckRow:
    name: str
    closed_form: float
    oracle: float
    tolerance: float
    gating: bool
    note: str = ""

    @property
    def abs_dev(self) -> float:
        return abs(self.closed_form - self.oracle)

    @property
    def rel_dev(self) -> float:
        scale = max(abs(self.oracle), abs(self.closed_form))
        return self.abs_dev / scale if scale > 0 else 0.0

    @property
    def passed(self) -> bool:
        return self.abs_dev <= self.tolerance


def _validate_checks(spec: SweepSpec, quick: bool) -> list[CheckRow]:
    rows: list[CheckRow] = []
    n_mc = 10**5 if quick else 10**6
    n_ks = 10**4 if quick else 10**5

    # Modified Bessel K1 against high-precision quadrature of its integral
    # representation.
    grid = np.logspace(-6, math.log10(50.0), 10 if quick else 50)
    worst = 0.0
    for x in grid:
        ref = bessel_k1_quadrature(float(x))
        worst = max(worst, abs(bessel_k1(float(x)) - ref) / ref)
    rows.append(CheckRow("bessel_k1 max rel err vs integral oracle", worst, 0.0, 1e-9, True))

    # Lah recurrence L(n+1,i) = (n+i) L(n,i) + L(n,i-1).
    bad = 0
    for n in range(1, 10):
        for i in range(1, n + 2):
            lhs = lah(n + 1, i)
            rhs = ((n + i) * lah(n, i) if i <= n else 0) + (lah(n, i - 1) if i >= 2 else 0)
            bad += lhs != rhs
    rows.append(CheckRow("lah recurrence mismatches (n <= 10)", float(bad), 0.0, 0.0, True))

    # K1 series error vs truncation order (informational trend table).
    xs = np.linspace(0.5, 5.0, 19)
    prev = math.inf
    trend_ok = True
    for m in (1, 5, 10, 20, 40):
        err = float(np.mean([abs(k1_series(1.0, x, m) - bessel_k1(x)) / bessel_k1(x) for x in xs]))
        bare = float(np.mean([abs(k1_series(1.0, x, m, include_leading_term=False) - bessel_k1(x))
                              / bessel_k1(x) for x in xs]))
        trend_ok = trend_ok and err <= prev * 1.05
        prev = err
        rows.append(CheckRow(f"k1_series mean rel err, order {m} (bare sum: {bare:.3g})",
                             err, 0.0, math.inf, False))
    rows.append(CheckRow("k1_series error trend non-increasing in order", float(not trend_ok), 0.0, 0.0, True))

    stats30 = topology_to_stats(spec.topology, db_to_linear(30.0))

    # Dominance probability: quadrature oracle vs Monte Carlo (gating) and vs
    # the published series (informational; printed form is not scale-invariant).
    p_oracle = analytics.prob_r1_dominates_oracle(stats30)
    p_mc, p_se = estimate_event_probability(stats30, lambda b: b.gamma_r1_p1 > b.gamma_r2,
                                            n_mc, spec.seed, workers=spec.workers)
    rows.append(CheckRow("P quadrature vs Monte Carlo", p_oracle, p_mc, 3.0 * p_se, True))
    for db in (10.0, 30.0, 50.0):
        st = topology_to_stats(spec.topology, db_to_linear(db))
        sp = analytics.prob_r1_dominates_series(st, 1)
        rows.append(CheckRow(f"P first-term series vs quadrature at {db:.0f} dB",
                             sp.value, analytics.prob_r1_dominates_oracle(st), math.inf, False,
                             note="clamped" if sp.clamped else ""))

    # T1 closed form vs Monte Carlo.
    s = sample_channels(stats30, RngStream(spec.seed, 10**6), n_mc, strictly_positive=True)
    t1_mc = float(np.mean(np.log1p(np.asarray(s.gamma_g) / np.asarray(s.gamma_h))))
    t1_cf = analytics.t1_closed(stats30)
    rows.append(CheckRow("T1 closed form vs Monte Carlo", t1_cf, t1_mc, 0.005 * abs(t1_mc), True))

    # E{XY/(X+Y)} quadrature vs Monte Carlo.
    gen = RngStream(spec.seed, 10**6 + 1).generator()
    xw = -1.3 * np.log(1.0 - gen.random(n_mc))
    yw = -0.7 * np.log(1.0 - gen.random(n_mc))
    ew_mc = float(np.mean(xw * yw / (xw + yw)))
    ew = analytics.expected_harmonic_mean(1.3, 0.7)
    rows.append(CheckRow("E{XY/(X+Y)} quadrature vs Monte Carlo", ew, ew_mc, 0.005 * abs(ew_mc), True))

    # T2: the mean-ratio step is a rough approximation (1/gamma_f has no
    # finite mean), so its Monte Carlo deviation is reported, not gated;
    # the exact E{XY/(X+Y)} inside it is gated above.
    b = highsnr_sinrs(s)
    t2_mc = float(np.mean(np.log1p(b.gamma_r2)))
    t2_cf = analytics.t2(stats30)
    rows.append(CheckRow("T2 mean-ratio vs Monte Carlo", t2_cf, t2_mc, math.inf, False))
    asym_stats = topology_to_stats(Topology(-3.0, -1.0, 1.5, 3.0, spec.topology.n), db_to_linear(30.0))
    rows.append(CheckRow("T2 printed closed form vs mean-ratio (asymmetric case)",
                         analytics.t2_printed(asym_stats), analytics.t2(asym_stats), math.inf, False))

    # Eavesdropping rate scale invariance.
    base = analytics.eavesdrop_rate(stats30).r_e
    worst = max(abs(analytics.eavesdrop_rate(stats30.with_rho(stats30.rho * c)).r_e - base)
                for c in (0.01, 100.0))
    rows.append(CheckRow("eavesdrop rate scale invariance", worst, 0.0, 1e-9, True))

    # ESR lower bound: production reading vs the literal extra pre-factor.
    lb = analytics.esr_lower_bound(stats30)
    literal = max(0.0, lb / (3.0 * math.log(2.0)))
    mc_esr = estimate_esr(stats30, SchemeKind.THREE_HOP, SinrMethod.EXACT, n_mc, spec.seed,
                          spec.workers)
    rows.append(CheckRow("ESR lower bound vs Monte Carlo exact ESR (30 dB)", lb, mc_esr.mean,
                         math.inf, False))
    rows.append(CheckRow("literal extra 1/(3 ln 2) reading vs Monte Carlo", literal, mc_esr.mean,
                         math.inf, False))

    # Ratio / harmonic-mean CDFs vs empirical CDFs (KS distance).  The 0.01
    # budget is calibrated for 1e5 samples; quick mode scales it.
    ks_tol = 0.01 if n_ks >= 10**5 else 1.95 / math.sqrt(n_ks)
    gen = RngStream(spec.seed, 10**6 + 2).generator()
    x1 = -stats30.bar_g * np.log(1.0 - gen.random(n_ks))
    y1 = -stats30.bar_h * np.log(1.0 - gen.random(n_ks))
    ks_z = empirical_cdf_ks(x1 / y1, lambda z: analytics.cdf_ratio(z, stats30.bar_g, stats30.bar_h))
    rows.append(CheckRow("KS distance, ratio CDF", ks_z, 0.0, ks_tol, True))
    ks_w = empirical_cdf_ks(x1 * y1 / (x1 + y1),
                            lambda w: analytics.cdf_harmonic(w, stats30.bar_g, stats30.bar_h))
    rows.append(CheckRow("KS distance, harmonic-mean CDF", ks_w, 0.0, ks_tol, True))

    # Two-hop idle eavesdropper combining sensitivity (selection vs sum).
    st10 = topology_to_stats(spec.topology, db_to_linear(10.0))
    s10 = sample_channels(st10, RngStream(spec.seed, 10**6 + 3), n_mc)
    for combining in ("selection", "sum"):
        gd, gl = baseline_sinrs(s10, SchemeKind.TWO_HOP_CASE_I, combining=combining)
        esr = float(np.mean(secrecy_rate_from_pair(gd, gl, PRELOG[SchemeKind.TWO_HOP_CASE_I])))
        rows.append(CheckRow(f"two-hop ESR with {combining} combining (10 dB)", esr, esr,
                             math.inf, False))

    # Mean-SNR reading cross-check: sampled gain means vs rho * m per link
    # (the corrected reading) on an asymmetric geometry.
    s_asym = sample_channels(asym_stats, RngStream(spec.seed, 10**6 + 4), n_mc)
    for name, mean in (("gamma_h", asym_stats.bar_h), ("gamma_f", asym_stats.bar_f)):
        emp = float(np.mean(np.asarray(getattr(s_asym, name))))
        rows.append(CheckRow(f"sample mean of {name} vs rho*m of its own link", emp, mean,
                             4.0 * mean / math.sqrt(n_mc), True))
    return rows


def cmd_validate(spec: SweepSpec, out, quick: bool = False) -> int:
    """Closed-form-vs-oracle report; nonzero exit if a gating check fails."""
    rows = _validate_checks(spec, quick)
    print("check,closed_form,oracle,abs_dev,rel_dev,tolerance,gating,verdict,note", file=out)
    failed = False
    for r in rows:
        verdict = "pass" if r.passed else ("FAIL" if r.gating else "info")
        if r.gating and not r.passed:
            failed = True
        tol = fmt(r.tolerance) if math.isfinite(r.tolerance) else ""
        print(",".join(["\"" + r.name + "\"", fmt(r.closed_form), fmt(r.oracle), fmt(r.abs_dev),
                        fmt(r.rel_dev), tol, "yes" if r.gating else "no", verdict, r.note]),
              file=out)
    return EXIT_NUMERIC if failed else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing / entry points
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors must exit 2 with a message
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--topology", help="node positions 'xS,xR1,xR2,xD' (default -3,-1,1,3)")
    p.add_argument("--pathloss", type=float, help="path-loss exponent n (default 2.7)")
    p.add_argument("--snr", help="SNR sweep 'start:stop:step' in dB (default 0:60:5)")
    p.add_argument("--scheme", action="append",
                   help="scheme name, repeatable: " + ", ".join(SCHEME_BY_NAME))
    p.add_argument("--method", action="append",
                   help="method name, repeatable: " + ", ".join(ALL_METHODS))
    p.add_argument("--samples", type=int, help="Monte Carlo samples per sweep point (default 1e6)")
    p.add_argument("--seed", type=int, help="RNG seed (default 1)")
    p.add_argument("--workers", type=int, help="worker threads (default 1; does not change results)")
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--output", help="write CSV here instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relaysec",
                     description="Three-hop untrusted-relay secrecy-rate simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, descr in (("sweep", "ESR vs transmit SNR sweep (CSV)"),
                        ("validate", "closed-form vs oracle report"),
                        ("asymptote", "high-SNR slope/offset and asymptote line (CSV)")):
        p = sub.add_parser(name, help=descr)
        _add_common_flags(p)
        if name == "validate":
            p.add_argument("--quick", action="store_true",
                           help="smaller sample sizes for fast smoke runs")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        spec = build_spec(args)
    except (UsageError, RelaysecError) as exc:
        print(f"relaysec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    runner = {"sweep": cmd_sweep,
              "asymptote": cmd_asymptote,
              "validate": lambda s, o: cmd_validate(s, o, quick=getattr(args, "quick", False))}[args.command]
    try:
        if spec.output:
            with open(spec.output, "w", encoding="utf-8", newline="\n") as fh:
                return runner(spec, fh)
        return runner(spec, sys.stdout)
    except NumericError as exc:
        print(f"relaysec: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
