"""Batch verification of greedy critical sets over families of row swaps.

For every selected swap pair (k, k') and order 2^s the scan computes the
greedy critical set of the row-swapped XOR square directly, then checks that
it is 2-critical, strongly completable, and completable top-down; in theorem
mode it also checks the set equals the recursive construction G(k,k',s).

Work is distributed over a process pool but aggregation is deterministic:
results are reported sorted by (s, k, k') regardless of arrival order.
"""
from __future__ import annotations

import logging
import multiprocessing
import re
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import apply_isotopism, row_swap_isotopism
from .families import build_G, conjecture_pairs, theorem_pairs
from .greedy import gcs
from .solver import StuckError, completes_top_down, strong_complete
from .trades import NotCriticalSetError, is_2_critical
from .twogroup import build_L

log = logging.getLogger(__name__)

MODES = ("theorem", "conjecture")


@dataclass(frozen=True)
class PairResult:
    """Outcome of every check on a single swap pair."""

    s: int
    k: int
    kp: int
    size: int
    critical_2: bool
    strong: bool
    top_down: bool
    matches_construction: Optional[bool]
    seconds: float

    @property
    def ok(self) -> bool:
        return (
            self.critical_2
            and self.strong
            and self.top_down
            and self.matches_construction is not False
        )


@dataclass(frozen=True)
class ScanReport:
    mode: str
    s_values: tuple[int, ...]
    jobs: int
    budget_seconds: Optional[float]
    elapsed_seconds: float
    results: tuple[PairResult, ...]
    skipped: tuple[tuple[int, int, int], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.skipped and all(r.ok for r in self.results)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "s_values": list(self.s_values),
            "jobs": self.jobs,
            "budget_seconds": self.budget_seconds,
            "elapsed_seconds": self.elapsed_seconds,
            "ok": self.ok,
            "results": [
                {
                    "s": r.s,
                    "k": r.k,
                    "kp": r.kp,
                    "size": r.size,
                    "critical_2": r.critical_2,
                    "strong": r.strong,
                    "top_down": r.top_down,
                    "matches_construction": r.matches_construction,
                    "seconds": r.seconds,
                    "ok": r.ok,
                }
                for r in self.results
            ],
            "skipped": [list(t) for t in self.skipped],
        }


def check_pair(task: tuple[int, int, int, str]) -> PairResult:
    """Run the full battery of checks on one (s, k, k') swap pair."""
    s, k, kp, mode = task
    t0 = time.perf_counter()
    n = 1 << s
    square = apply_isotopism(build_L(s), row_swap_isotopism(n, k, kp))
    cset = gcs(square)

    try:
        critical_2 = is_2_critical(cset, square)
    except NotCriticalSetError:
        critical_2 = False

    try:
        strong = strong_complete(cset).result == square
    except StuckError:
        strong = False

    top_ok, trace = completes_top_down(cset)
    top_down = top_ok and trace.result == square

    matches: Optional[bool] = None
    if mode == "theorem":
        matches = build_G(k, kp, s) == cset

    return PairResult(
        s=s,
        k=k,
        kp=kp,
        size=cset.size,
        critical_2=critical_2,
        strong=strong,
        top_down=top_down,
        matches_construction=matches,
        seconds=time.perf_counter() - t0,
    )


def scan_tasks(s_values: Iterable[int], mode: str) -> list[tuple[int, int, int, str]]:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    pair_fn = theorem_pairs if mode == "theorem" else conjecture_pairs
    tasks = []
    for s in sorted(set(s_values)):
        if s < 2:
            raise ValueError(f"scan needs s >= 2, got {s}")
        tasks.extend((s, k, kp, mode) for (k, kp) in pair_fn(s))
    return tasks


def run_scan(
    s_values: Sequence[int],
    mode: str = "theorem",
    jobs: Optional[int] = None,
    budget_seconds: Optional[float] = None,
) -> ScanReport:
    """Scan every pair for the given orders, within an optional time budget.

    When the budget runs out, pairs whose checks have not finished are
    reported in `skipped` rather than silently dropped.
    """
    tasks = scan_tasks(s_values, mode)
    if jobs is None:
        jobs = min(multiprocessing.cpu_count(), max(1, len(tasks)))
    start = time.perf_counter()
    results: list[PairResult] = []
    done: set[tuple[int, int, int]] = set()

    def out_of_time() -> bool:
        return budget_seconds is not None and time.perf_counter() - start > budget_seconds

    if jobs <= 1 or len(tasks) <= 1:
        for task in tasks:
            if out_of_time():
                break
            results.append(check_pair(task))
            done.add(task[:3])
    else:
        with multiprocessing.Pool(processes=jobs) as pool:
            it = pool.imap_unordered(check_pair, tasks)
            for result in it:
                results.append(result)
                done.add((result.s, result.k, result.kp))
                if out_of_time():
                    log.warning("scan budget exhausted after %d/%d pairs", len(done), len(tasks))
                    pool.terminate()
                    break

    skipped = tuple(t[:3] for t in tasks if t[:3] not in done)
    results.sort(key=lambda r: (r.s, r.k, r.kp))
    return ScanReport(
        mode=mode,
        s_values=tuple(sorted(set(s_values))),
        jobs=jobs,
        budget_seconds=budget_seconds,
        elapsed_seconds=time.perf_counter() - start,
        results=tuple(results),
        skipped=skipped,
    )


def render_scan(report: ScanReport) -> str:
    """Tab-separated table, one row per pair, with a trailing summary line."""
    lines = ["s\tk\tkp\tsize\t2critical\tstrong\ttopdown\tconstruction\tseconds"]
    for r in report.results:
        construction = "-" if r.matches_construction is None else str(r.matches_construction).lower()
        lines.append(
            f"{r.s}\t{r.k}\t{r.kp}\t{r.size}\t{str(r.critical_2).lower()}"
            f"\t{str(r.strong).lower()}\t{str(r.top_down).lower()}"
            f"\t{construction}\t{r.seconds:.3f}"
        )
    for s, k, kp in report.skipped:
        lines.append(f"{s}\t{k}\t{kp}\t-\tskipped\tskipped\tskipped\t-\t-")
    status = "ok" if report.ok else "FAILED"
    lines.append(
        f"# {report.mode} scan over s={list(report.s_values)}: "
        f"{len(report.results)} pairs, {len(report.skipped)} skipped, "
        f"{report.elapsed_seconds:.1f}s, {status}"
    )
    return "\n".join(lines) + "\n"


_BUDGET_RE = re.compile(r"^(\d+(?:\.\d+)?)([smh]?)$")


def parse_budget(text: str) -> float:
    """Parse a time budget like '3600s', '60m', '1.5h' or plain seconds."""
    m = _BUDGET_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse budget {text!r}")
    value = float(m.group(1))
    unit = m.group(2) or "s"
    return value * {"s": 1.0, "m": 60.0, "h": 3600.0}[unit]


def parse_s_values(text: str) -> list[int]:
    """Parse order exponents: '3', '2..5', or a comma list '2,3,5'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo_text, hi_text = part.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"no orders in {text!r}")
    return sorted(set(out))
