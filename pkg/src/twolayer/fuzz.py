"""Randomized sweeps over the library's universally quantified claims.

Each trial generates one random drawing and runs a configurable subset of
checks against it: decomposition validity and width bound, the per-bag
counting audit, layout certificates from exact-pathwidth decompositions,
the |A| <= k*ell*d counting bound, and the per-edge-crossings pathwidth
bound.  Everything is derived from (seed, trial index) by integer
arithmetic, so reports reproduce bit for bit and every failure dump replays
to the same verdict and detail.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace

from .analysis import (
    DEFAULT_PROFILE_CAP,
    DEFAULT_ST_EDGE_CAP,
    check_counting_bound,
    crossings_per_edge,
    max_crossing_set,
    maximum_noncrossing_matching,
)
from .decompose import audit_counting_bounds, certificate_to_json, decompose_drawing
from .errors import GraphError
from .graphs import (
    BipartiteGraph,
    TwoLayerDrawing,
    drawing_from_json,
    drawing_to_json,
    random_drawing,
)
from .layout import layout_decomposition
from .pathdecomp import (
    order_to_decomposition,
    pathwidth_exact,
    validate_decomposition,
)

ALL_CHECKS = ("decompose", "audit", "layout", "counting", "per-edge")

_TRIAL_STRIDE = 1_000_003  # prime; keeps per-trial seeds distinct across seeds


@dataclass(frozen=True)
class FuzzConfig:
    trials: int
    seed: int
    na_range: tuple[int, int] = (0, 8)
    nb_range: tuple[int, int] = (0, 8)
    p_range: tuple[float, float] = (0.0, 1.0)
    checks: tuple[str, ...] = ALL_CHECKS
    layout_vertex_cap: int = 14   # pathwidth DP budget for the layout check
    per_edge_vertex_cap: int = 12
    profile_cap: int = DEFAULT_PROFILE_CAP
    st_edge_cap: int = DEFAULT_ST_EDGE_CAP
    invert_check: str | None = None  # test hook: negate this check's verdict

    def __post_init__(self) -> None:
        unknown = set(self.checks) - set(ALL_CHECKS)
        if unknown:
            raise GraphError(f"unknown checks: {sorted(unknown)}")
        if self.trials < 0:
            raise GraphError("trials must be >= 0")


@dataclass(frozen=True)
class CheckStats:
    run: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0


@dataclass(frozen=True)
class FailureDump:
    """Everything needed to replay one failing trial check."""

    check: str
    trial: int
    trial_seed: int
    drawing_json: str
    certificate_json: str | None
    detail: str
    inverted: bool


@dataclass(frozen=True)
class FuzzReport:
    trials: int
    seed: int
    stats: dict[str, CheckStats] = field(default_factory=dict)
    failures: tuple[FailureDump, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def _trial_drawing(config: FuzzConfig, trial: int) -> tuple[int, TwoLayerDrawing]:
    trial_seed = config.seed * _TRIAL_STRIDE + trial
    rng = random.Random(trial_seed)
    na = rng.randint(*config.na_range)
    nb = rng.randint(*config.nb_range)
    p = rng.uniform(*config.p_range)
    _, drawing = random_drawing(na, nb, p, seed=rng.randrange(1 << 62))
    return trial_seed, drawing


def _run_check(
    check: str, drawing: TwoLayerDrawing, config: FuzzConfig
) -> tuple[bool | None, str, str | None]:
    """(verdict, detail, certificate json); verdict None means skipped."""
    graph = drawing.graph
    if check == "decompose":
        pd, cert = decompose_drawing(
            drawing, config.profile_cap, config.profile_cap, config.st_edge_cap
        )
        bad = validate_decomposition(graph, pd)
        cj = certificate_to_json(cert)
        if bad:
            return False, f"invalid decomposition: {[v.describe() for v in bad]}", cj
        if pd.bags and cert.frontier_exact and pd.width > cert.width_bound:
            return (
                False,
                f"width {pd.width} exceeds bound {cert.width_bound}",
                cj,
            )
        width = pd.width if pd.bags else 0
        return True, f"width {width} within bound {cert.width_bound}", cj

    if check == "audit":
        _, cert = decompose_drawing(
            drawing, config.profile_cap, config.profile_cap, config.st_edge_cap
        )
        report = audit_counting_bounds(drawing, cert)
        cj = certificate_to_json(cert)
        if report.ok:
            return True, "all counting bounds hold", cj
        return False, f"counting violations: {report.violations}", cj

    if check == "layout":
        if not graph.vertices or len(graph.vertices) > config.layout_vertex_cap:
            return None, "skipped: size out of range", None
        _, order = pathwidth_exact(graph, cap=config.layout_vertex_cap)
        pd = order_to_decomposition(graph, order)
        _, cert = layout_decomposition(graph, pd, config.st_edge_cap)
        detail = (
            f"k={cert.k} max_crossing={cert.max_crossing} "
            f"st_ok={cert.st_ok}"
        )
        return cert.max_crossing_ok and cert.st_ok, detail, None

    if check == "counting":
        sub = drop_isolated_a(drawing)
        if not sub.graph.edges:
            return None, "skipped: no edges", None
        k, _ = max_crossing_set(sub)
        ell = len(maximum_noncrossing_matching(sub))
        d = max(sub.graph.degree(v) for v in sub.graph.b)
        report = check_counting_bound(sub, k, ell, d)
        detail = (
            f"|A|={report.observed_a} bound={report.bound} "
            f"hypothesis_failures={list(report.hypothesis_failures)}"
        )
        return report.hypotheses_ok and report.holds, detail, None

    if check == "per-edge":
        if not graph.vertices or len(graph.vertices) > config.per_edge_vertex_cap:
            return None, "skipped: size out of range", None
        c = max(crossings_per_edge(drawing).values(), default=0)
        pw, _ = pathwidth_exact(graph, cap=config.per_edge_vertex_cap)
        return pw <= c + 1, f"pathwidth {pw} vs per-edge max {c}", None

    raise GraphError(f"unknown check {check!r}")


def drop_isolated_a(drawing: TwoLayerDrawing) -> TwoLayerDrawing:
    """Sub-drawing without degree-0 A-vertices; crossing structure is
    untouched because removing isolated vertices removes no edges."""
    g = drawing.graph
    keep = [v for v in g.a if g.degree(v) >= 1]
    graph = BipartiteGraph(tuple(keep), g.b, g.edges)
    kept = set(keep)
    return TwoLayerDrawing(
        graph, tuple(v for v in drawing.order_a if v in kept), drawing.order_b
    )


def run_fuzz(config: FuzzConfig) -> FuzzReport:
    counters = {c: [0, 0, 0, 0] for c in config.checks}  # run/pass/fail/skip
    failures: list[FailureDump] = []
    for trial in range(config.trials):
        trial_seed, drawing = _trial_drawing(config, trial)
        for check in config.checks:
            verdict, detail, cert_json = _run_check(check, drawing, config)
            if verdict is None:
                counters[check][3] += 1
                continue
            inverted = config.invert_check == check
            if inverted:
                verdict = not verdict
            counters[check][0] += 1
            if verdict:
                counters[check][1] += 1
            else:
                counters[check][2] += 1
                failures.append(
                    FailureDump(
                        check=check,
                        trial=trial,
                        trial_seed=trial_seed,
                        drawing_json=drawing_to_json(drawing),
                        certificate_json=cert_json,
                        detail=detail,
                        inverted=inverted,
                    )
                )
    stats = {
        c: CheckStats(run=r, passed=p, failed=f, skipped=s)
        for c, (r, p, f, s) in counters.items()
    }
    return FuzzReport(
        trials=config.trials,
        seed=config.seed,
        stats=stats,
        failures=tuple(failures),
    )


def replay_failure(dump: FailureDump, config: FuzzConfig) -> FailureDump | None:
    """Re-run one dumped trial check; None if it now passes."""
    drawing = drawing_from_json(dump.drawing_json)
    verdict, detail, cert_json = _run_check(dump.check, drawing, config)
    if verdict is None:
        return None
    inverted = config.invert_check == dump.check
    if inverted:
        verdict = not verdict
    if verdict:
        return None
    return replace(dump, detail=detail, certificate_json=cert_json, inverted=inverted)


def report_to_json(report: FuzzReport) -> str:
    payload = {
        "trials": report.trials,
        "seed": report.seed,
        "checks": {
            c: {
                "run": s.run,
                "passed": s.passed,
                "failed": s.failed,
                "skipped": s.skipped,
            }
            for c, s in report.stats.items()
        },
        "failures": [
            {
                "check": d.check,
                "trial": d.trial,
                "trialSeed": d.trial_seed,
                "drawing": json.loads(d.drawing_json),
                "certificate": (
                    json.loads(d.certificate_json) if d.certificate_json else None
                ),
                "detail": d.detail,
                "inverted": d.inverted,
            }
            for d in report.failures
        ],
    }
    return json.dumps(payload, indent=2)
