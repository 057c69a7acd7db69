"""Command-line driver.

Exit codes: 0 success, 1 domain error (message names the failed precondition),
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import constructions as C
from .coherence import asymptotic_lower_bounds, check_nu_sufficient_conditions, coherence_report, welch_lower_bound
from .designs import steiner_parameter_solver, steiner_system
from .errors import FrameForgeError
from .frame import Frame
from .linalg import Rng
from .parallel import THREADS_ENV, resolve_threads

DEFAULT_SEED = 0


def _ints(text):
    return [int(t) for t in text.split(",") if t.strip()]


def _emit_records(path, records):
    if path:
        with open(path, "w") as fh:
            for r in records:
                fh.write(json.dumps(r, sort_keys=True) + "\n")


def _seed(args):
    if args.seed is None:
        print(f"note: no --seed given, using default seed {DEFAULT_SEED}", file=sys.stderr)
        return DEFAULT_SEED
    return args.seed


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _rational(x, max_den=1000):
    """'p/q' when x is a small-denominator fraction to 1e-10, else None."""
    fr = Fraction(x).limit_denominator(max_den)
    if abs(float(fr) - x) < 1e-10:
        return str(fr)
    return None


def _table(rows):
    for k, v in rows:
        print(f"{k}={_fmt(v)}")


# build

def _build(args):
    fam = args.construction
    if fam == "steiner":
        d = steiner_system(args.family, v=args.v, q=args.q, n=args.dim)
        kind = {"real": "real_sylvester", "dft": "complex_dft", "auto": "auto"}[args.hadamard]
        rows = _ints(args.rows) if args.rows else None
        f = C.build_steiner_etf(d, kind, rows)
    elif fam == "paley":
        f = C.build_paley_etf(args.p, real=args.real)
    elif fam == "harmonic":
        f = C.build_harmonic(args.n, _ints(args.rows), normalize=not args.raw)
    elif fam == "harmonic-identity":
        f = C.build_harmonic_plus_identity(args.n, _ints(args.rows), args.k)
    elif fam == "vandermonde":
        f = C.build_vandermonde(np.exp(2j * np.pi * np.arange(args.n) / args.n), args.m, normalize=True)
    elif fam == "gabor":
        kind = "steinhaus" if args.steinhaus else "alltop"
        rng = Rng(_seed(args)) if args.steinhaus else None
        f = C.build_gabor(args.m, kind, rng, modulation=args.modulation)
    elif fam == "chirp":
        f = C.build_chirp(args.m)
    elif fam == "spherical":
        rows = _ints(args.rows) if args.rows else C.DIFFERENCE_SET_37
        f = C.build_spherical_2design(args.n, rows)
    elif fam == "code":
        f = C.build_code_frame(args.m, args.t)
    elif fam == "simplex":
        f = C.build_simplex(args.n)
    elif fam == "planar":
        f = C.build_planar(args.n)
    elif fam == "identity-fourier":
        f = C.build_identity_fourier(args.m)
    elif fam == "random":
        f = C.build_random(args.kind, args.m, args.n, Rng(_seed(args)))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(fam)
    text = f.to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"wrote {f.m}x{f.n} {f.family} frame to {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _load(path):
    try:
        return Frame.load(path)
    except OSError as exc:
        raise FrameForgeError(f"cannot read frame file {path!r}: {exc.strerror}") from exc


# analyses

def _analyze(args):
    f = _load(args.frame)
    rep = coherence_report(f)
    cond = check_nu_sufficient_conditions(f)
    rows = [("M", f.m), ("N", f.n), ("family", f.family)] + list(rep.as_dict().items())
    rows += [(f"{k}_exact", _rational(getattr(rep, k))) for k in ("mu", "nu") if _rational(getattr(rep, k))]
    rows += [("mu_over_sqrtM", rep.mu / math.sqrt(f.m)), ("unit_norm", f.unit_norm), ("tight", f.tight),
             ("etf", f.etf), ("cond_i", cond.cond_i), ("cond_ii", cond.cond_ii), ("cond_iii", cond.cond_iii),
             ("log_base", "natural")]
    _table(rows)
    rec = dict(rows)
    _emit_records(args.out, [rec])
    return 0


def _rip(args):
    from .rip import exact_delta, flat_ro, gershgorin_delta, power_delta, restricted_orthogonality

    f = _load(args.frame)
    qs = _ints(args.q)
    records = []
    print(f"{'K':>3} {'method':>12} {'delta':>14}  witness")
    for k in _ints(args.k):
        reps = [exact_delta(f, k, args.budget, args.threads), gershgorin_delta(f, k)]
        reps += [power_delta(f, k, q, args.budget, args.threads) for q in qs]
        for r in reps:
            d = r.as_dict()
            d.pop("runtime_ms")
            records.append(d)
            w = "" if r.witness is None else ",".join(map(str, r.witness))
            print(f"{k:>3} {r.method:>12} {r.delta:>14.10f}  {w}")
        if args.ro:
            th = restricted_orthogonality(f, k, args.budget, args.threads)
            fr = flat_ro(f, k, budget=args.budget)
            print(f"{k:>3} {'theta_K':>12} {th:>14.10f}")
            print(f"{k:>3} {'flat_ro':>12} {fr.theta_hat:>14.10f}  upper={fr.ro_upper:.10f}")
            records.append({"k": k, "theta": th, "theta_hat": fr.theta_hat, "ro_upper": fr.ro_upper})
    _emit_records(args.out, records)
    return 0


def _spark(args):
    from .spark import dft_full_spark_test, spark

    if args.dft is not None:
        if not args.rows:
            raise FrameForgeError("--dft needs --rows")
        rows = _ints(args.rows)
        v = dft_full_spark_test(args.dft, rows, threads=args.threads)
        nec = "passes" if v.uniform else "fails"
        if v.method == "chebotarev":
            print(f"n={args.dft} is prime: every DFT row selection is full spark")
        elif v.method == "dft_uniform" and v.verdict != "necessary_condition_only":
            word = "full spark" if v.verdict == "full_spark" else "NOT full spark"
            print(f"uniform distribution over divisors {nec}; verdict: {word}")
        elif v.method == "brute":
            word = "full spark" if v.verdict == "full_spark" else "NOT full spark"
            line = f"necessary condition {nec}; brute force: {word}"
            if v.witness is not None:
                line += "; witness columns " + ",".join(map(str, v.witness))
            print(line)
        else:
            print(f"necessary condition {nec}; verdict: {v.verdict}")
        _emit_records(args.out, [{"n": args.dft, "rows": rows, **v.as_dict()}])
        return 0
    if not args.frame:
        raise FrameForgeError("give a frame file or --dft N --rows ...")
    f = _load(args.frame)
    r = spark(f, args.budget, args.threads)
    full = (not r.lower_bound) and r.spark >= f.m + 1
    bound = ">=" if r.lower_bound else "="
    print(f"spark {bound} {r.spark}; full spark: {'yes' if full else 'no'}")
    if r.witness is not None:
        print("witness columns " + ",".join(map(str, r.witness)))
    _emit_records(args.out, [r.as_dict()])
    return 0


def _ost(args):
    from .ost import SparseSignal, measure, missed_energy, ost, recovery_error_bound, snr, threshold_rule

    f = _load(args.frame)
    seed = _seed(args)
    floor = math.sqrt(2 * args.sigma ** 2 * math.log(f.n))
    alpha = args.alpha_factor * floor
    records = []
    exact = within = 0
    for trial in range(args.trials):
        rng = Rng(seed).spawn(trial)
        x = SparseSignal.random(f.n, args.k, alpha, rng)
        y = measure(f, x, args.sigma, rng)
        lam = threshold_rule(f, args.sigma, snr(f, x, args.sigma), args.t).lambda_
        res = ost(f, y, lam, x)
        bound = recovery_error_bound(len(res.estimated_support), args.sigma, f.n,
                                     missed_energy(x, res.estimated_support))
        exact += res.support_flags["exact"]
        within += res.l2_error <= bound
        records.append({"seed": seed, "trial": trial, "K": args.k, "lambda": lam,
                        "exact_support": res.support_flags["exact"],
                        "subset_of_true": res.support_flags["subset_of_true"],
                        "l2_error": res.l2_error, "bound": bound})
    _table([("trials", args.trials), ("alpha", alpha), ("exact_support_rate", exact / args.trials),
            ("error_within_bound_rate", within / args.trials)])
    _emit_records(args.out, records)
    return 0


def _flip(args):
    from .coherence import average_coherence
    from .flipping import exhaustive_flip, linear_time_flip

    f = _load(args.frame)
    res = linear_time_flip(f)
    rows = [("nu_before", average_coherence(f)), ("pattern", res.pattern.to_string()),
            ("nu_after", average_coherence(res.frame)),
            ("mu_over_sqrtM", coherence_report(f).mu / math.sqrt(f.m))]
    if args.exhaustive:
        pat, nu = exhaustive_flip(f, threads=args.threads)
        rows += [("exhaustive_pattern", pat.to_string()), ("exhaustive_nu", nu)]
    _table(rows)
    if args.output:
        res.frame.save(args.output)
    _emit_records(args.out, [dict(rows)])
    return 0


def _phase(args):
    from .phase import build_design, complete_graph, phase_error, phaseless_measure, random_regular_graph, recover, star_graph

    f = _load(args.frame)
    seed = _seed(args)
    if args.graph == "complete":
        g = complete_graph(f.n)
    elif args.graph == "star":
        g = star_graph(f.n)
    else:
        g = random_regular_graph(f.n, args.degree, Rng(seed).spawn(10 ** 6))
    design = build_design(f, g)
    errs, records = [], []
    for trial in range(args.trials):
        rng = Rng(seed).spawn(trial)
        x = rng.complex_normal(f.m)
        rec = recover(design, phaseless_measure(design, x))
        e = phase_error(x, rec.estimate)
        errs.append(e)
        records.append({"seed": seed, "trial": trial, "error": e})
    rows = [("measurements", design.count), ("trials", args.trials), ("max_error", max(errs))]
    if g.expansion is not None:
        rows.append(("expansion", g.expansion))
    _table(rows)
    _emit_records(args.out, records)
    return 0


def _fingerprint(args):
    from .fingerprint import CollusionScenario, simulate_detection, theoretical_bounds

    f = _load(args.frame)
    seed = _seed(args)
    coalition = _ints(args.coalition) if args.coalition else list(range(args.k))
    s = CollusionScenario.equal_weights(f.normalized(), coalition, sigma=1.0 / args.gamma_over_sigma, tau=args.tau)
    r = simulate_detection(s, args.trials, Rng(seed))
    b = theoretical_bounds(s)
    rows = [("coalition", ",".join(map(str, coalition))), ("trials", args.trials),
            ("empirical_PI", r.empirical_PI), ("PI_bound", b.PI_bound),
            ("empirical_PII", r.empirical_PII), ("PII_bound", b.PII_bound)]
    _table(rows)
    _emit_records(args.out, [dict(rows)])
    return 0


def _bounds(args):
    m, n = args.m, args.n
    rows = [("M", m), ("N", n), ("welch", welch_lower_bound(m, n))]
    if m >= 2:
        lb = asymptotic_lower_bounds(m, n)
        rows += [("complex_bound", lb.complex_bound), ("real_bound", lb.real_bound)]
        if lb.dim3_bound is not None:
            rows.append(("dim3_bound", lb.dim3_bound))
    if n > m:
        sp = steiner_parameter_solver(m, n)
        rows += [(f"steiner_{k}", v) for k, v in sp.as_dict().items() if k not in ("M", "N")]
    _table(rows)
    _emit_records(args.out, [dict(rows)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frameforge", description="Construct frames and certify their geometry.")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads (default: ${THREADS_ENV}, else all CPUs)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False, out=True):
        if seed:
            sp.add_argument("--seed", type=int, default=None, help=f"random seed (default {DEFAULT_SEED})")
        if out:
            sp.add_argument("--out", help="write JSON records, one object per line")

    b = sub.add_parser("build", help="construct a frame and write it in frame-file format")
    b.add_argument("construction", choices=["steiner", "paley", "harmonic", "harmonic-identity", "vandermonde",
                                            "gabor", "chirp", "spherical", "code", "simplex", "planar",
                                            "identity-fourier", "random"])
    b.add_argument("--family", choices=["2-blocks", "triples", "affine", "projective"], default="2-blocks")
    b.add_argument("--v", type=int)
    b.add_argument("--q", type=int)
    b.add_argument("--dim", type=int, help="geometry dimension n for affine/projective")
    b.add_argument("--hadamard", choices=["real", "dft", "auto"], default="auto")
    b.add_argument("--rows", help="comma-separated row indices")
    b.add_argument("--p", type=int)
    b.add_argument("--real", action="store_true", help="rotate a Paley frame to real form")
    b.add_argument("--n", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--k", type=int, default=1)
    b.add_argument("--t", type=int, default=1)
    b.add_argument("--raw", action="store_true", help="do not normalize harmonic columns")
    b.add_argument("--steinhaus", action="store_true")
    b.add_argument("--modulation", choices=["shifted", "fixed"], default="shifted")
    b.add_argument("--kind", default="normalized_gaussian",
                   choices=["normalized_gaussian", "random_harmonic", "steinhaus_gabor", "rademacher"])
    b.add_argument("-o", "--output")
    common(b, seed=True, out=False)
    b.set_defaults(func=_build)

    a = sub.add_parser("analyze", help="coherence report (SCP-1 uses the natural log)")
    a.add_argument("frame")
    common(a)
    a.set_defaults(func=_analyze)

    r = sub.add_parser("rip", help="restricted isometry certification table")
    r.add_argument("frame")
    r.add_argument("--k", default="2", help="comma-separated sparsity levels")
    r.add_argument("--q", default="1,2,4", help="comma-separated power-method orders")
    r.add_argument("--ro", action="store_true", help="also report theta_K and flat RO")
    r.add_argument("--budget", type=int, default=10 ** 7)
    common(r)
    r.set_defaults(func=_rip)

    s = sub.add_parser("spark", help="spark of a frame, or full-spark test of DFT rows")
    s.add_argument("frame", nargs="?")
    s.add_argument("--dft", type=int)
    s.add_argument("--rows")
    s.add_argument("--budget", type=int, default=10 ** 7)
    common(s)
    s.set_defaults(func=_spark)

    o = sub.add_parser("ost", help="one-step thresholding Monte Carlo")
    o.add_argument("frame")
    o.add_argument("--k", type=int, default=3)
    o.add_argument("--sigma", type=float, default=0.01)
    o.add_argument("--t", type=float, default=0.5)
    o.add_argument("--alpha-factor", type=float, default=20.0,
                   help="entry magnitude in units of sqrt(2 sigma^2 ln N)")
    o.add_argument("--trials", type=int, default=200)
    common(o, seed=True)
    o.set_defaults(func=_ost)

    fl = sub.add_parser("flip", help="linear-time flipping to lower average coherence")
    fl.add_argument("frame")
    fl.add_argument("--exhaustive", action="store_true")
    fl.add_argument("-o", "--output")
    common(fl)
    fl.set_defaults(func=_flip)

    ph = sub.add_parser("phase", help="polarization phase retrieval experiment")
    ph.add_argument("frame")
    ph.add_argument("--graph", choices=["complete", "star", "regular"], default="complete")
    ph.add_argument("--degree", type=int, default=4)
    ph.add_argument("--trials", type=int, default=100)
    common(ph, seed=True)
    ph.set_defaults(func=_phase)

    fp = sub.add_parser("fingerprint", help="collusion detection Monte Carlo vs. bounds")
    fp.add_argument("frame")
    fp.add_argument("--k", type=int, default=2)
    fp.add_argument("--coalition")
    fp.add_argument("--gamma-over-sigma", type=float, default=10.0)
    fp.add_argument("--tau", type=float, default=0.5)
    fp.add_argument("--trials", type=int, default=100000)
    common(fp, seed=True)
    fp.set_defaults(func=_fingerprint)

    bd = sub.add_parser("bounds", help="coherence lower bounds and Steiner parameters for a size")
    bd.add_argument("--m", type=int, required=True)
    bd.add_argument("--n", type=int, required=True)
    common(bd)
    bd.set_defaults(func=_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.threads = resolve_threads(args.threads)
    try:
        return args.func(args)
    except (FrameForgeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
