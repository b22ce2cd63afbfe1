"""Batch command-line entry point.

Subcommands: ``norm``, ``rearrange``, ``kfunc``, ``verify <suite>``,
``gen-corpus``, ``report``.  Exit codes: 0 all checks pass, 1 at least one
check failed, 2 configuration or hypothesis violation.  Identical config and
seed produce byte-identical outputs; no timestamps are written.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import corpus as corpus_mod
from .herz import (
    AnnulusMeasureSequence,
    HerzParams,
    bfs_condition_check,
    embedding_check,
    hl_holder_check,
    hl_norm,
)
from .interp import (
    CoupleSpec,
    WeightedSeq,
    k_functional,
    k_functional_l1_linf,
    retract_L,
    verify_interpolation,
)
from .lorentz import (
    INF,
    LorentzParams,
    equivalence_check,
    lorentz_quasi_norm,
    lorentz_star_norm,
)
from .operators import (
    GridFunction1D,
    annulus_interaction_scan,
    boundedness_sweep,
    grid_hl_norm,
    grid_lp_norm,
    interpolated_boundedness_check,
    out_of_range_witness,
)
from .rearrange import (
    RadialStepFunction,
    average_rearrangement,
    distribution,
    rearrangement,
    sum_bound_check,
)
from .reporting import CheckRecord, render_tsv, summarize, write_report

SUITES = (
    "rearrange",
    "lorentz-equivalence",
    "herz-holder",
    "bfs",
    "example-divergence",
    "embeddings",
    "interp-seq",
    "interp-lorentz",
    "interp-hl",
    "lemma-bound",
    "boundedness",
    "witness",
    "interp-boundedness",
)


class ConfigError(Exception):
    """Configuration or hypothesis violation: exit code 2."""


@dataclass
class SuiteConfig:
    suite: str
    seed: int = 20240801
    size: int = 20
    corpus_path: str | None = None
    a: float | None = None
    p: float = 2.0
    q: float = 1.0
    r: float = 2.0
    theta: float = 0.5
    cutoff: int = 5
    jobs: int = 1
    out: str | None = None
    fmt: str = "json"
    extra: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {SUITES}")
        if self.size < 1:
            raise ConfigError("corpus size must be >= 1")
        if self.cutoff < 1:
            raise ConfigError("cutoff must be >= 1")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")


def _float(x: str) -> float:
    if x in ("inf", "Inf", "INF", "oo"):
        return INF
    return float(x)


def _load_objects(cfg: SuiteConfig, want: type) -> list[Any]:
    if cfg.corpus_path:
        objs = [o for o in corpus_mod.load_corpus(cfg.corpus_path) if isinstance(o, want)]
        if not objs:
            raise ConfigError(f"corpus {cfg.corpus_path} holds no usable records")
        return objs
    if want is RadialStepFunction:
        return corpus_mod.random_step_functions(cfg.size, cfg.seed)
    if want is GridFunction1D:
        from .operators import grid_indicator

        return [grid_indicator(8.0, 4096, -1.0, 1.0)] + corpus_mod.random_grid_functions(
            max(1, cfg.size - 1), cfg.seed, half_width=8.0, n_cells=4096
        )
    raise ConfigError("no default corpus for this suite")


# ---------------------------------------------------------------------------
# suites: each returns a list of zero-argument checks producing records
# ---------------------------------------------------------------------------

Check = Callable[[], list[CheckRecord]]


def _suite_rearrange(cfg: SuiteConfig) -> list[Check]:
    import random

    fns = _load_objects(cfg, RadialStepFunction)
    rng = random.Random(cfg.seed + 1)

    def per_function(i: int, f: RadialStepFunction) -> list[CheckRecord]:
        g = rearrangement(f)
        records = []
        levels = sorted({abs(v) for v in f.values if v != 0}, reverse=True)
        equi = all(
            distribution(f, alpha) == g.superlevel_measure(alpha)
            for w in levels
            for alpha in (w, w / 2, Fraction(0))
        )
        records.append(
            CheckRecord("rearrange", f"equimeasurable[{i}]", {}, passed=equi)
        )
        records.append(
            CheckRecord(
                "rearrange",
                f"mass[{i}]",
                {},
                lhs=float(g.total_mass()),
                rhs=float(f.abs_integral()),
                passed=g.total_mass() == f.abs_integral(),
            )
        )
        return records

    def sum_bound_trials() -> list[CheckRecord]:
        records = []
        nonneg = corpus_mod.random_step_functions(
            5 * max(2, cfg.size // 4), cfg.seed + 2, nonnegative=True
        )
        for trial in range(max(2, cfg.size // 2)):
            fs = [nonneg[(trial * 5 + j) % len(nonneg)] for j in range(5)]
            raw = [rng.random() + 0.05 for _ in fs]
            total = sum(raw)
            cs = [c / total for c in raw]
            cs[-1] = 1.0 - sum(cs[:-1])
            t = Fraction(rng.randint(1, 64), 16)
            rep = sum_bound_check(fs, t, cs)
            records.append(
                CheckRecord(
                    "rearrange",
                    f"sum-bound[{trial}]",
                    {"t": float(t)},
                    lhs=float(rep.lhs),
                    rhs=float(min(rep.rhs_thm, rep.rhs_cor)),
                    passed=rep.passed,
                )
            )
        return records

    checks: list[Check] = [
        (lambda i=i, f=f: per_function(i, f)) for i, f in enumerate(fns)
    ]
    checks.append(sum_bound_trials)
    return checks


def _suite_lorentz_equivalence(cfg: SuiteConfig) -> list[Check]:
    params = LorentzParams(cfg.p, cfg.r)
    if not params.in_sandwich_range:
        raise ConfigError("equivalence requires 1 < p < inf with r >= 1, or p = r = inf")
    fns = _load_objects(cfg, RadialStepFunction)

    def one(i: int, f: RadialStepFunction) -> list[CheckRecord]:
        rep = equivalence_check(f, params)
        return [
            CheckRecord(
                "lorentz-equivalence",
                f"sandwich[{i}]",
                {"p": cfg.p, "r": cfg.r},
                lhs=rep.quasi,
                rhs=rep.star,
                ratio=rep.ratio,
                passed=rep.passed,
            )
        ]

    return [(lambda i=i, f=f: one(i, f)) for i, f in enumerate(fns)]


def _suite_herz_holder(cfg: SuiteConfig) -> list[Check]:
    if not (1 < cfg.p < INF and cfg.q >= 1 and cfg.r >= 1):
        raise ConfigError("pairing requires 1 < p < inf and q, r >= 1")
    fns = _load_objects(cfg, RadialStepFunction)
    weights = cfg.extra.get("a_values", (-0.4, 0.0, 0.4))

    def pair(i: int, a: float) -> list[CheckRecord]:
        f = fns[i % len(fns)]
        g = fns[(i * 7 + 3) % len(fns)]
        rep = hl_holder_check(f, g, HerzParams(a, cfg.p, cfg.q, cfg.r))
        return [
            CheckRecord(
                "herz-holder",
                f"pair[{i},a={a}]",
                {"a": a, "p": cfg.p, "q": cfg.q, "r": cfg.r},
                lhs=rep.integral,
                rhs=rep.bound,
                ratio=rep.ratio,
                passed=rep.passed,
            )
        ]

    checks = []
    for a in weights:
        checks.extend((lambda i=i, a=a: pair(i, a)) for i in range(cfg.size))
    return checks


def _bfs_inputs(cfg: SuiteConfig) -> list[AnnulusMeasureSequence]:
    if cfg.corpus_path:
        seqs = [
            o
            for o in corpus_mod.load_corpus(cfg.corpus_path)
            if isinstance(o, AnnulusMeasureSequence)
        ]
        if not seqs:
            raise ConfigError("corpus holds no annulus trace records")
        return seqs
    finite = AnnulusMeasureSequence.from_dict(
        {-1: Fraction(1, 2), 0: Fraction(1, 2), 1: Fraction(1)}, dim=1
    )
    return [finite, corpus_mod.shell_trace_sequence(cfg.cutoff + 3)]


def _suite_bfs(cfg: SuiteConfig) -> list[Check]:
    a = 1.0 if cfg.a is None else cfg.a
    params = HerzParams(a, cfg.p, cfg.q, cfg.r)
    seqs = _bfs_inputs(cfg)

    def one(i: int, m: AnnulusMeasureSequence) -> list[CheckRecord]:
        rep = bfs_condition_check(m, params, cfg.cutoff)
        expected = "finite" if m.finitely_supported() else None
        ok = rep.verdict == expected if expected else rep.verdict in ("growing", "inconclusive")
        return [
            CheckRecord(
                "bfs",
                f"trace[{i}]",
                {"a": a, "p": cfg.p, "q": cfg.q, "cutoff": cfg.cutoff},
                lhs=rep.partial_a[-1],
                rhs=rep.partial_b[-1],
                passed=ok,
                notes=f"verdict={rep.verdict}",
            )
        ]

    return [(lambda i=i, m=m: one(i, m)) for i, m in enumerate(seqs)]


def _suite_example_divergence(cfg: SuiteConfig) -> list[Check]:
    a = 1.0 if cfg.a is None else cfg.a
    if a <= 0:
        raise ConfigError("the divergence example needs a positive weight exponent")
    params = HerzParams(a, cfg.p, cfg.q, cfg.r)

    def run() -> list[CheckRecord]:
        m = corpus_mod.shell_trace_sequence(cfg.cutoff + 3)
        rep = bfs_condition_check(m, params, cfg.cutoff)
        sums = [x for x in rep.partial_a if x > 0]
        records = [
            CheckRecord(
                "example-divergence",
                "partial-sums",
                {"a": a, "p": cfg.p, "q": cfg.q, "r": cfg.r, "cutoff": cfg.cutoff},
                lhs=sums[-1] if sums else 0.0,
                passed=rep.verdict == "growing",
                notes="partial sums " + ", ".join(f"{x:.3f}" for x in sums),
            ),
            CheckRecord(
                "example-divergence",
                "finite-measure",
                {"cutoff": cfg.cutoff},
                lhs=rep.finite_measure,
                rhs=float(2 * math.pi**2 / 6),
                passed=rep.finite_measure < 2 * math.pi**2 / 6,
                notes="set measure stays below sum 2/u^2",
            ),
        ]
        return records

    return [run]


def _suite_embeddings(cfg: SuiteConfig) -> list[Check]:
    fns = _load_objects(cfg, RadialStepFunction)

    def one(i: int, f: RadialStepFunction) -> list[CheckRecord]:
        records = []
        cases = [
            ("A", HerzParams(0.3, 2.0, 1.5, 1.0), HerzParams(0.3, 2.0, 1.5, 2.0)),
            ("B", HerzParams(1.0, 2.0, 1.0, 2.0), HerzParams(0.0, 2.0, 1.0, 2.0)),
            ("C", HerzParams(0.0, 4.0, 2.0, INF), HerzParams(0.0, 2.0, 2.0, 2.0)),
            ("D", HerzParams(0.0, 2.0, 1.0, 2.0), HerzParams(0.0, 2.0, 2.0, 2.0)),
        ]
        for variant, src, tgt in cases:
            rep = embedding_check(variant, f, src, tgt)
            records.append(
                CheckRecord(
                    "embeddings",
                    f"{variant}[{i}]",
                    {"source": src.label(), "target": tgt.label()},
                    lhs=rep.lhs,
                    rhs=rep.rhs,
                    ratio=rep.ratio,
                    passed=rep.passed,
                    notes=f"constant={rep.constant:.6g}",
                )
            )
        return records

    return [(lambda i=i, f=f: one(i, f)) for i, f in enumerate(fns)]


def _suite_interp_seq(cfg: SuiteConfig) -> list[Check]:
    ys = [WeightedSeq.unit(u) for u in range(-1, 6)]
    ys += [
        WeightedSeq.from_dict({-1: 0.5, 1: 2.0, 3: 0.25}),
        WeightedSeq.from_dict({0: 1.0, 2: 1.0}),
    ]

    def seq_a() -> list[CheckRecord]:
        rep = verify_interpolation(
            "seq-a", ys, theta=cfg.theta, q=cfg.q, a0=0.0, a1=1.0, q0=1.0, q1=1.0
        )
        return [
            CheckRecord(
                "interp-seq",
                "weight-interpolation",
                {"theta": cfg.theta, "q": cfg.q},
                ratio=rep.stability,
                passed=rep.passed,
                notes=f"band={rep.band}",
            )
        ]

    def seq_q() -> list[CheckRecord]:
        rep = verify_interpolation(
            "seq-q", ys, theta=cfg.theta, a0=0.5, a1=0.5, q0=1.0, q1=2.0
        )
        return [
            CheckRecord(
                "interp-seq",
                "exponent-interpolation",
                {"theta": cfg.theta, "q0": 1.0, "q1": 2.0},
                ratio=rep.stability,
                passed=rep.passed,
                notes=f"band={rep.band}",
            )
        ]

    return [seq_a, seq_q]


def _suite_interp_lorentz(cfg: SuiteConfig) -> list[Check]:
    from .rearrange import ball

    measures = cfg.extra.get("measures", (0.25, 1.0, 9.0))
    fns = [ball(1, Fraction(m)) for m in measures]

    def run() -> list[CheckRecord]:
        rep = verify_interpolation(
            "lorentz", fns, theta=cfg.theta, q=cfg.q, t_exponent_bound=40, rel_tol=1e-10
        )
        return [
            CheckRecord(
                "interp-lorentz",
                "endpoint-couple",
                {"theta": cfg.theta, "q": cfg.q},
                ratio=rep.stability,
                passed=rep.passed and abs(rep.band[1] - 1.0) < 1e-6,
                notes=f"band={rep.band}",
            )
        ]

    return [run]


def _suite_interp_hl(cfg: SuiteConfig) -> list[Check]:
    fns = corpus_mod.random_step_functions(4, cfg.seed, nonnegative=True)
    base = LorentzParams(cfg.p, cfg.r)

    def one(suite: str, **kw: Any) -> list[CheckRecord]:
        rep = verify_interpolation(suite, fns, **kw)
        return [
            CheckRecord(
                "interp-hl",
                suite,
                {k: (v.label() if isinstance(v, LorentzParams) else v) for k, v in kw.items()},
                ratio=rep.stability,
                passed=rep.passed,
                notes=f"band={rep.band}",
            )
        ]

    return [
        lambda: one("hl-1", theta=cfg.theta, q=1.5, a0=0.0, a1=1.0, q0=1.0, q1=1.0, base=base),
        lambda: one("hl-2", theta=cfg.theta, a0=0.3, a1=0.3, q0=1.0, q1=INF, base=base),
        lambda: one("hl-3", theta=cfg.theta, a0=0.0, a1=0.5, q0=1.0, q1=1.0),
        lambda: one("hl-4", theta=cfg.theta, a0=0.2, a1=0.2, q0=1.0, q1=1.0),
    ]


def _suite_lemma_bound(cfg: SuiteConfig) -> list[Check]:
    dims = cfg.extra.get("dims", (1, 2, 3))
    pr_grid = cfg.extra.get("pr", ((1.5, 1.0), (2.0, 2.0), (4.0, INF)))
    window = cfg.extra.get("window", (-1, 60))

    def one(dim: int, p: float, r: float) -> list[CheckRecord]:
        rep = annulus_interaction_scan(dim, LorentzParams(p, r), window)
        return [
            CheckRecord(
                "lemma-bound",
                f"scan[N={dim},p={p},r={r}]",
                {"dim": dim, "p": p, "r": r, "window": list(window)},
                lhs=rep.constant,
                passed=rep.passed,
                notes=f"argmax={rep.argmax}",
            )
        ]

    return [
        (lambda dim=dim, p=p, r=r: one(dim, p, r))
        for dim in dims
        for p, r in pr_grid
    ]


def _suite_boundedness(cfg: SuiteConfig) -> list[Check]:
    corpus = _load_objects(cfg, GridFunction1D)

    def one(operator: str) -> list[CheckRecord]:
        rep = boundedness_sweep(operator, corpus)
        records = [
            CheckRecord(
                "boundedness",
                f"{operator}[a={row.a:.4g},p={row.p},q={row.q},r={row.r}]",
                {"a": row.a, "p": row.p, "q": row.q, "r": row.r},
                lhs=row.ratio,
                rhs=row.refined_ratio,
                ratio=row.drift,
                passed=row.passed,
            )
            for row in rep.cells
        ]
        records.extend(
            CheckRecord(
                "boundedness",
                f"{operator}-excluded[{label}]",
                {},
                passed=True,
                notes=reason,
            )
            for label, reason in rep.excluded
        )
        return records

    return [lambda: one("maximal"), lambda: one("hilbert")]


def _suite_witness(cfg: SuiteConfig) -> list[Check]:
    def run() -> list[CheckRecord]:
        rep = out_of_range_witness(cfg.a, cfg.p, cfg.q, cfg.r)
        return [
            CheckRecord(
                "witness",
                "outside-window",
                {"a": rep.a, "p": rep.p, "q": rep.q, "r": rep.r},
                lhs=rep.ratios[0],
                rhs=rep.ratios[-1],
                passed=rep.growing,
                notes="ratios " + ", ".join(f"{x:.5f}" for x in rep.ratios),
            )
        ]

    return [run]


def _suite_interp_boundedness(cfg: SuiteConfig) -> list[Check]:
    corpus = _load_objects(cfg, GridFunction1D)
    a = 0.2 if cfg.a is None else cfg.a

    def run() -> list[CheckRecord]:
        rep = interpolated_boundedness_check("hilbert", cfg.p, cfg.q, a, corpus)
        return [
            CheckRecord(
                "interp-boundedness",
                "diagonal",
                {"p": cfg.p, "q": cfg.q, "a": a},
                lhs=rep.ratio,
                rhs=rep.sweep_ratio,
                ratio=rep.agreement,
                passed=rep.passed,
            )
        ]

    return [run]


_SUITE_BUILDERS: dict[str, Callable[[SuiteConfig], list[Check]]] = {
    "rearrange": _suite_rearrange,
    "lorentz-equivalence": _suite_lorentz_equivalence,
    "herz-holder": _suite_herz_holder,
    "bfs": _suite_bfs,
    "example-divergence": _suite_example_divergence,
    "embeddings": _suite_embeddings,
    "interp-seq": _suite_interp_seq,
    "interp-lorentz": _suite_interp_lorentz,
    "interp-hl": _suite_interp_hl,
    "lemma-bound": _suite_lemma_bound,
    "boundedness": _suite_boundedness,
    "witness": _suite_witness,
    "interp-boundedness": _suite_interp_boundedness,
}


def run_suite(cfg: SuiteConfig) -> tuple[list[CheckRecord], int]:
    """Execute a named suite; returns (records, exit_code)."""
    cfg.validate()
    try:
        checks = _SUITE_BUILDERS[cfg.suite](cfg)
    except (ConfigError, ValueError, OSError) as exc:
        raise ConfigError(str(exc)) from exc
    # checks are pure and independent; results are merged in submission order
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(lambda c: c(), checks))
    else:
        chunks = [c() for c in checks]
    records = [rec for chunk in chunks for rec in chunk]
    code = 0 if all(r.passed for r in records) else 1
    if cfg.out:
        if cfg.fmt == "tsv":
            Path(cfg.out).write_text(render_tsv(records))
        else:
            write_report(records, cfg.out)
    return records, code


# ---------------------------------------------------------------------------
# command-line surface
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--corpus", dest="corpus_path")
    sub.add_argument("--seed", type=int, default=20240801)
    sub.add_argument("--size", type=int, default=20)
    sub.add_argument("--a", type=_float, default=None)
    sub.add_argument("--p", type=_float, default=2.0)
    sub.add_argument("--q", type=_float, default=1.0)
    sub.add_argument("--r", type=_float, default=2.0)
    sub.add_argument("--theta", type=float, default=0.5)
    sub.add_argument("--cutoff", type=int, default=5)
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--out")
    sub.add_argument("--format", dest="fmt", choices=("json", "tsv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="herzlab",
        description="Numerical laboratory for Lorentz-Herz function spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="evaluate a norm on a corpus record")
    p_norm.add_argument("--space", required=True,
                        choices=("lorentz", "lorentz-star", "hl", "hl-star", "lp"))
    p_norm.add_argument("--input", required=True)
    p_norm.add_argument("--index", type=int, default=0)
    p_norm.add_argument("--a", type=_float, default=0.0)
    p_norm.add_argument("--p", type=_float, required=True)
    p_norm.add_argument("--q", type=_float, default=1.0)
    p_norm.add_argument("--r", type=_float, default=None)

    p_re = sub.add_parser("rearrange", help="print the decreasing rearrangement")
    p_re.add_argument("--input", required=True)
    p_re.add_argument("--index", type=int, default=0)
    p_re.add_argument("--points", default=None, help="comma list of t values for f*, f**")

    p_k = sub.add_parser("kfunc", help="export a K-functional curve")
    p_k.add_argument("--input", required=True)
    p_k.add_argument("--index", type=int, default=0)
    p_k.add_argument("--a0", type=_float, default=0.0)
    p_k.add_argument("--q0", type=_float, default=1.0)
    p_k.add_argument("--a1", type=_float, default=1.0)
    p_k.add_argument("--q1", type=_float, default=1.0)
    p_k.add_argument("--base-p", type=_float, default=2.0)
    p_k.add_argument("--base-r", type=_float, default=2.0)
    p_k.add_argument("--l1-linf", action="store_true",
                     help="use the integrable/bounded endpoint couple directly")
    p_k.add_argument("--t-lo", type=float, default=2.0**-10)
    p_k.add_argument("--t-hi", type=float, default=2.0**10)
    p_k.add_argument("--points", type=int, default=64)
    p_k.add_argument("--out")

    p_v = sub.add_parser("verify", help="run a named verification suite")
    p_v.add_argument("suite", choices=SUITES)
    _add_common(p_v)
    p_v.add_argument("--config", help="JSON file with SuiteConfig overrides")

    p_g = sub.add_parser("gen-corpus", help="write a deterministic corpus file")
    p_g.add_argument("--kind", required=True,
                     choices=("characteristic", "shells", "random-step", "grid"))
    p_g.add_argument("--size", type=int, required=True)
    p_g.add_argument("--seed", type=int, default=0)
    p_g.add_argument("--out", required=True)
    p_g.add_argument("--dim", type=int, default=1)
    p_g.add_argument("--measures", default=None, help="comma list for characteristic kind")
    p_g.add_argument("--quadratic-shells", action="store_true",
                     help="emit the quadratic-shell family and its annulus trace")
    p_g.add_argument("--half-width", type=float, default=8.0)
    p_g.add_argument("--cells", type=int, default=1024)

    p_r = sub.add_parser("report", help="reformat or summarize a report file")
    p_r.add_argument("--input", required=True)
    p_r.add_argument("--format", dest="fmt", choices=("json", "tsv", "summary"),
                     default="summary")
    return parser


def _cmd_norm(args: argparse.Namespace) -> int:
    objs = corpus_mod.load_corpus(args.input)
    obj = objs[args.index]
    r = args.r if args.r is not None else args.p
    if isinstance(obj, GridFunction1D):
        if args.space == "lp":
            value = grid_lp_norm(obj, args.p)
        elif args.space == "hl":
            value = grid_hl_norm(obj, HerzParams(args.a, args.p, args.q, r))
        else:
            raise ConfigError("grid records support --space hl or lp")
    elif isinstance(obj, RadialStepFunction):
        if args.space == "lorentz":
            value = lorentz_quasi_norm(obj, LorentzParams(args.p, r))
        elif args.space == "lorentz-star":
            value = lorentz_star_norm(obj, LorentzParams(args.p, r))
        elif args.space == "hl":
            value = hl_norm(obj, HerzParams(args.a, args.p, args.q, r))
        elif args.space == "hl-star":
            value = hl_norm(obj, HerzParams(args.a, args.p, args.q, r), starred=True)
        else:
            value = obj.power_integral(args.p) ** (1.0 / args.p)
    else:
        raise ConfigError("record type has no norm")
    print(f"{value!r}")
    return 0


def _cmd_rearrange(args: argparse.Namespace) -> int:
    objs = corpus_mod.load_corpus(args.input)
    obj = objs[args.index]
    if not isinstance(obj, RadialStepFunction):
        raise ConfigError("rearrange needs a radial step record")
    g = rearrangement(obj)
    print("knots:", " ".join(str(t) for t in g.knots))
    print("levels:", " ".join(str(w) for w in g.levels))
    if args.points:
        for tok in args.points.split(","):
            t = Fraction(tok)
            star = g.value_at(t)
            avg = average_rearrangement(g, t) if t > 0 else g.top_level
            print(f"t={tok}: f*={float(star)!r} f**={float(avg)!r}")
    return 0


def _cmd_kfunc(args: argparse.Namespace) -> int:
    objs = corpus_mod.load_corpus(args.input)
    obj = objs[args.index]
    ts = [
        args.t_lo * (args.t_hi / args.t_lo) ** (i / (args.points - 1))
        for i in range(args.points)
    ]
    if args.l1_linf:
        if not isinstance(obj, RadialStepFunction):
            raise ConfigError("the endpoint couple needs a radial step record")
        ks = [k_functional_l1_linf(obj, t) for t in ts]
    else:
        if isinstance(obj, RadialStepFunction):
            y = retract_L(obj, LorentzParams(args.base_p, args.base_r))
        else:
            raise ConfigError("kfunc needs a radial step record")
        couple = CoupleSpec((args.a0, args.q0), (args.a1, args.q1))
        ks = [k_functional(t, y, couple) for t in ts]
    lines = [f"{t!r}\t{k!r}" for t, k in zip(ts, ks)]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    overrides: dict[str, Any] = {}
    if args.config:
        overrides = json.loads(Path(args.config).read_text())
    cfg = SuiteConfig(
        suite=args.suite,
        seed=overrides.get("seed", args.seed),
        size=overrides.get("size", args.size),
        corpus_path=overrides.get("corpus", args.corpus_path),
        a=overrides.get("a", args.a),
        p=overrides.get("p", args.p),
        q=overrides.get("q", args.q),
        r=overrides.get("r", args.r),
        theta=overrides.get("theta", args.theta),
        cutoff=overrides.get("cutoff", args.cutoff),
        jobs=overrides.get("jobs", args.jobs),
        out=overrides.get("out", args.out),
        fmt=overrides.get("format", args.fmt),
        extra={k: v for k, v in overrides.items()
               if k not in ("seed", "size", "corpus", "a", "p", "q", "r",
                            "theta", "cutoff", "jobs", "out", "format")},
    )
    records, code = run_suite(cfg)
    for rec in records:
        status = "pass" if rec.passed else "FAIL"
        extra = f" {rec.notes}" if rec.notes else ""
        print(f"[{status}] {rec.suite}/{rec.check_id}{extra}")
    s = summarize(records)
    print(f"{s['checks']} checks, {s['failed']} failed")
    return code


def _cmd_gen_corpus(args: argparse.Namespace) -> int:
    measures = None
    if args.measures:
        measures = [float(Fraction(tok)) for tok in args.measures.split(",")]
    objs = corpus_mod.generate_corpus(
        args.kind,
        args.size,
        args.seed,
        dim=args.dim,
        measures=measures,
        quadratic_shells=args.quadratic_shells,
        half_width=args.half_width,
        n_cells=args.cells,
    )
    corpus_mod.save_corpus(objs, args.out)
    print(f"wrote {len(objs)} records to {args.out}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    doc = json.loads(Path(args.input).read_text())
    if args.fmt == "summary":
        s = doc.get("summary", {})
        print(json.dumps(s, indent=2, sort_keys=True))
        return 0 if s.get("passed") else 1
    records = doc.get("records", [])
    if args.fmt == "tsv":
        cols = ["suite", "check_id", "params", "lhs", "rhs", "ratio", "passed", "notes"]
        print("\t".join(cols))
        for rec in records:
            print("\t".join(json.dumps(rec.get(c)) if c == "params" else str(rec.get(c))
                            for c in cols))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "norm": _cmd_norm,
        "rearrange": _cmd_rearrange,
        "kfunc": _cmd_kfunc,
        "verify": _cmd_verify,
        "gen-corpus": _cmd_gen_corpus,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
