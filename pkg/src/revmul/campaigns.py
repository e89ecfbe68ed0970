"""Batch searches over ranges of bases with a resumable JSONL record log.

Each base is scanned independently by :func:`scan_base`, a pure function of
``(n, config)``. A single writer emits the per-base record blocks in base
order, so the log is byte-identical for any worker count. A base counts as
done once its ``base_complete`` record is on disk.

Record log layout::

    {"record_type": "header", "config_hash": ..., "config": {...}, "engine_version": ...}
    {"record_type": "solution", "base": 22, "k": 7, "digits": [2, 8, 3, 13, 16], ...}
    {"record_type": "counterexample", ...}
    {"record_type": "anomaly", "reason": ..., ...}
    {"record_type": "base_complete", "base": 22, "tallies": {...}}
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional

from . import __version__
from .analysis import (
    F_RANGE,
    ProjectionOutcome,
    derived_identity_check,
    f_class,
    is_prime,
    kaczynski_project,
    question1_check,
)
from .digits import ArithmeticCapacityError, DigitString, Solution, check_envelope
from .enumeration import EnumerationRequest, enumerate_fast, exists_solution
from .families import is_in_family

log = logging.getLogger(__name__)

KINDS = ("counterexamples", "spectrum", "f1", "survey")
DEFAULT_LENGTHS = {
    "counterexamples": (5,),
    "spectrum": (5,),
    "f1": (5,),
    "survey": (2, 3, 4, 5),
}
# Finding classes that turn a campaign's exit status to "findings present".
HEADLINE_FINDINGS = {
    "counterexamples": {"counterexample"},
    "spectrum": {"counterexample_f_nonzero", "f_minus_one", "f_two"},
    "f1": {"nonfamily_f1"},
    "survey": set(),
}
RECORD_TYPES = ("header", "solution", "counterexample", "anomaly", "base_complete")


class CampaignError(RuntimeError):
    pass


class ConfigMismatchError(CampaignError):
    pass


class CorruptLogError(CampaignError):
    def __init__(self, path, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.line_no = line_no


@dataclass(frozen=True)
class CampaignConfig:
    n_lo: int
    n_hi: int
    kind: str = "spectrum"
    lengths: Optional[tuple[int, ...]] = None
    require_prime_p: bool = False
    workers: int = 1
    output: Optional[Path] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown campaign kind {self.kind!r}; expected one of {KINDS}")
        if not 3 <= self.n_lo <= self.n_hi:
            raise ValueError(f"need 3 <= n_lo <= n_hi, got [{self.n_lo}, {self.n_hi}]")
        if self.lengths is not None:
            object.__setattr__(self, "lengths", tuple(sorted(set(self.lengths))))
        lengths = self.scan_lengths
        if not lengths or any(not 2 <= L <= 7 for L in lengths):
            raise ValueError(f"lengths must be a non-empty subset of 2..7, got {lengths}")
        for L in lengths:
            check_envelope(self.n_hi, L)
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.output is not None:
            object.__setattr__(self, "output", Path(self.output))

    @property
    def scan_lengths(self) -> tuple[int, ...]:
        return DEFAULT_LENGTHS[self.kind] if self.lengths is None else self.lengths

    def bases(self) -> list[int]:
        return [n for n in range(self.n_lo, self.n_hi + 1)
                if not self.require_prime_p or is_prime(n + 1)]

    def identity(self) -> dict[str, Any]:
        """The fields that determine the record stream (not workers or output)."""
        return {
            "kind": self.kind,
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
            "lengths": list(self.scan_lengths),
            "require_prime_p": self.require_prime_p,
        }

    def config_hash(self) -> str:
        blob = json.dumps({**self.identity(), "engine_version": __version__}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CounterexampleRecord:
    base: int
    solution: Solution
    outcome: ProjectionOutcome
    f: Optional[int]
    p_prime: bool

    @classmethod
    def from_record(cls, rec: dict) -> "CounterexampleRecord":
        sol = Solution(DigitString(rec["base"], rec["digits"]), rec["k"])
        outcome = question1_check(sol)
        return cls(rec["base"], sol, outcome, rec["f"], rec["p_prime"])


@dataclass
class CampaignReport:
    config: dict
    config_hash: str
    engine_version: str
    bases: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    anomalies: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def headline_findings(self) -> list[dict]:
        wanted = HEADLINE_FINDINGS[self.config["kind"]]
        return [f for f in self.findings if f["finding"] in wanted]

    @property
    def exit_status(self) -> int:
        if self.anomalies:
            return 4
        return 2 if self.headline_findings else 0

    def to_dict(self, timing: bool = True) -> dict:
        d = dataclasses.asdict(self)
        if not timing:
            d.pop("wall_time")
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        lengths = self.config["lengths"]
        cols = ["base", "p_prime"]
        if self.config["kind"] == "survey":
            cols += [f"exists_{L}" for L in lengths]
        else:
            cols += [f"solutions_{L}" for L in lengths]
            cols += ["counterexamples", "findings", "anomalies", "f_spectrum"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in self.bases:
            t = row["tallies"]
            out = [row["base"], row["p_prime"]]
            if self.config["kind"] == "survey":
                out += [t["exists"][str(L)] for L in lengths]
            else:
                out += [t["solutions"][str(L)] for L in lengths]
                spectrum = ";".join(f"{f}:{c}" for f, c in t["f_spectrum"].items())
                out += [t["counterexamples"], t["findings"], t["anomalies"], spectrum]
            w.writerow(out)
        return buf.getvalue()


# -- per-base scan -----------------------------------------------------------

def _solution_record(sol: Solution, **extra) -> dict:
    n = sol.base
    return {
        "record_type": "solution",
        "base": n,
        "k": sol.k,
        "digits": list(sol.digits.digits),
        "value": sol.value,
        "reversal": sol.reversal,
        "f": None,
        "p_prime": is_prime(n + 1),
        "length": len(sol),
        **extra,
    }


def _f_key(f: Optional[int]) -> str:
    return "unclassified" if f is None else str(f)


def _scan_five(sol: Solution, rec: dict, out: list[dict]) -> None:
    outcome = question1_check(sol)
    fc = outcome.f_class
    rec["f"] = fc.f
    rec["alternating_sum"] = fc.s
    rec["projected"] = list(outcome.projected.digits)
    rec["projection_k"] = outcome.any_k
    rec["same_k"] = outcome.same_k_holds
    findings = rec["findings"]
    if outcome.counterexample:
        findings.append("counterexample" if fc.p_prime else "projection_failure_composite_p")
        if fc.p_prime and fc.f != 0:
            findings.append("counterexample_f_nonzero")
    elif outcome.same_k_only_failure:
        findings.append("same_k_only")
    if fc.f == -1:
        findings.append("f_minus_one")
    elif fc.f == 2:
        findings.append("f_two")
    elif fc.f == 1 and is_in_family(sol) is None:
        findings.append("nonfamily_f1")
    out.append(rec)
    if fc.p_prime and outcome.counterexample:
        out.append({**rec, "record_type": "counterexample"})
    if fc.anomaly:
        out.append({**rec, "record_type": "anomaly",
                    "reason": f"f outside {list(F_RANGE)} with prime p={fc.p}"})
    if fc.f is not None and not derived_identity_check(sol):
        out.append({**rec, "record_type": "anomaly", "reason": "derived identity failed"})


def _scan_three(sol: Solution, rec: dict, out: list[dict]) -> None:
    outcome = kaczynski_project(sol)
    rec["projected"] = list(outcome.projected.digits)
    rec["projection_k"] = outcome.any_k
    rec["same_k"] = outcome.same_k_holds
    out.append(rec)
    if outcome.any_k is None:
        if rec["p_prime"]:
            out.append({**rec, "record_type": "anomaly",
                        "reason": "3-digit solution with prime p does not project to a 2-digit solution"})
        else:
            rec["findings"].append("kaczynski_failure_composite_p")


def _scan_enumerate(n: int, cfg: CampaignConfig) -> list[dict]:
    out: list[dict] = []
    sol_counts = {}
    f_spectrum: Counter = Counter()
    for L in cfg.scan_lengths:
        sols = enumerate_fast(EnumerationRequest(n, L))
        sol_counts[str(L)] = len(sols)
        for sol in sols:
            rec = _solution_record(sol, findings=[])
            if L == 5:
                _scan_five(sol, rec, out)
                f_spectrum[_f_key(rec["f"])] += 1
            elif L == 3:
                _scan_three(sol, rec, out)
            else:
                if L == 4:
                    rec["family_a"] = getattr(is_in_family(sol), "a", None)
                out.append(rec)
    tallies = {
        "solutions": sol_counts,
        "counterexamples": sum(r["record_type"] == "counterexample" for r in out),
        "anomalies": sum(r["record_type"] == "anomaly" for r in out),
        "findings": sum(len(r["findings"]) for r in out if r["record_type"] == "solution"),
        "f_spectrum": dict(sorted(f_spectrum.items())),
    }
    out.append({"record_type": "base_complete", "base": n, "p_prime": is_prime(n + 1),
                "tallies": tallies})
    return out


def _scan_survey(n: int, cfg: CampaignConfig) -> list[dict]:
    out: list[dict] = []
    exists = {L: exists_solution(n, L) for L in cfg.scan_lengths}
    base = {"base": n, "p_prime": is_prime(n + 1)}
    if 2 in exists and 3 in exists and exists[2] != exists[3]:
        out.append({"record_type": "anomaly", **base,
                    "reason": f"exists(2)={exists[2]} but exists(3)={exists[3]}"})
    for L in (4, 5):
        if L in exists and not exists[L]:
            out.append({"record_type": "anomaly", **base,
                        "reason": f"no {L}-digit solution although n >= 3"})
    tallies = {
        "exists": {str(L): v for L, v in exists.items()},
        "anomalies": len(out),
    }
    out.append({"record_type": "base_complete", **base, "tallies": tallies})
    return out


def scan_base(n: int, cfg: CampaignConfig) -> list[dict]:
    """All records for one base, ending with its ``base_complete`` marker."""
    try:
        if cfg.kind == "survey":
            return _scan_survey(n, cfg)
        return _scan_enumerate(n, cfg)
    except ArithmeticCapacityError as exc:
        raise ArithmeticCapacityError(f"base {n}: {exc}") from exc


def _scan_task(args: tuple[int, CampaignConfig]) -> list[dict]:
    return scan_base(*args)


def _scan_all(cfg: CampaignConfig, bases: list[int]) -> Iterator[list[dict]]:
    if cfg.workers == 1 or len(bases) <= 1:
        for n in bases:
            yield scan_base(n, cfg)
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        # map() yields in submission order, which keeps the writer canonical.
        yield from pool.map(_scan_task, [(n, cfg) for n in bases])


# -- log I/O -----------------------------------------------------------------

def _dumps(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"))


def _header(cfg: CampaignConfig) -> dict:
    return {"record_type": "header", "config_hash": cfg.config_hash(),
            "config": cfg.identity(), "engine_version": __version__}


def read_log(path: Path) -> tuple[Optional[dict], list[dict], int]:
    """Parse a record log.

    Returns the header (None if even that was torn), the records of every
    complete base, and the byte offset just past the last ``base_complete``
    line. A torn final line
    (no trailing newline) is treated as an interrupted write and skipped;
    any other unparsable line raises :class:`CorruptLogError`.
    """
    raw = Path(path).read_bytes()
    lines = raw.split(b"\n")
    torn_tail = not raw.endswith(b"\n")
    if not torn_tail:
        lines = lines[:-1]
    header = None
    records: list[dict] = []
    kept: list[dict] = []
    offset = keep_offset = 0
    for i, line in enumerate(lines, start=1):
        last = i == len(lines)
        offset += len(line) + 1
        try:
            rec = json.loads(line)
            if not isinstance(rec, dict) or rec.get("record_type") not in RECORD_TYPES:
                raise ValueError("unknown record type")
        except ValueError as exc:
            if last and torn_tail:
                break
            raise CorruptLogError(path, i, str(exc)) from None
        if i == 1:
            if rec["record_type"] != "header":
                raise CorruptLogError(path, 1, "first line is not a header")
            header = rec
            keep_offset = offset
            continue
        if rec["record_type"] == "header":
            raise CorruptLogError(path, i, "unexpected second header")
        if last and torn_tail:
            break  # parsed by luck but never newline-terminated
        records.append(rec)
        if rec["record_type"] == "base_complete":
            kept.extend(records)
            records = []
            keep_offset = offset
    if records:
        log.info("discarding %d records of an unfinished base", len(records))
    return header, kept, keep_offset


def iter_log(path: Path) -> Iterator[dict]:
    with open(path) as fh:
        for i, line in enumerate(fh, start=1):
            try:
                yield json.loads(line)
            except ValueError as exc:
                raise CorruptLogError(path, i, str(exc)) from None


# -- drivers -----------------------------------------------------------------

def _execute(cfg: CampaignConfig, done: list[dict], fh=None) -> CampaignReport:
    start = time.perf_counter()
    finished = {r["base"] for r in done if r["record_type"] == "base_complete"}
    todo = [n for n in cfg.bases() if n not in finished]
    records = list(done)
    for block in _scan_all(cfg, todo):
        records.extend(block)
        if fh is not None:
            fh.write("".join(_dumps(r) + "\n" for r in block))
            fh.flush()
        log.debug("base %d complete", block[-1]["base"])
    report = build_report(cfg, records)
    report.wall_time = time.perf_counter() - start
    return report


def run_campaign(cfg: CampaignConfig) -> CampaignReport:
    """Fresh run. Overwrites ``cfg.output`` when set."""
    if cfg.output is None:
        return _execute(cfg, [])
    cfg.output.parent.mkdir(parents=True, exist_ok=True)
    with open(cfg.output, "w") as fh:
        fh.write(_dumps(_header(cfg)) + "\n")
        return _execute(cfg, [], fh)


def resume(cfg: CampaignConfig) -> CampaignReport:
    """Continue a partial run in ``cfg.output``; an absent or empty log starts fresh."""
    if cfg.output is None:
        raise CampaignError("resume needs an output path")
    path = cfg.output
    if not path.exists() or path.stat().st_size == 0:
        return run_campaign(cfg)
    header, done, offset = read_log(path)
    if header is None:
        return run_campaign(cfg)
    if header.get("config_hash") != cfg.config_hash():
        raise ConfigMismatchError(
            f"{path} was written by config {header.get('config_hash')}, "
            f"not {cfg.config_hash()}"
        )
    with open(path, "r+") as fh:
        fh.truncate(offset)
        fh.seek(offset)
        return _execute(cfg, done, fh)


def build_report(cfg: CampaignConfig, records: Iterable[dict]) -> CampaignReport:
    report = CampaignReport(config=cfg.identity(), config_hash=cfg.config_hash(),
                            engine_version=__version__)
    records = sorted(records, key=lambda r: r["base"])  # stable: keeps per-base order
    for rec in records:
        kind = rec["record_type"]
        if kind == "base_complete":
            report.bases.append({"base": rec["base"], "p_prime": rec["p_prime"],
                                 "tallies": rec["tallies"]})
        elif kind == "counterexample":
            report.counterexamples.append(_brief(rec))
        elif kind == "anomaly":
            report.anomalies.append({**_brief(rec), "reason": rec["reason"]})
        elif kind == "solution":
            for finding in rec.get("findings", ()):
                report.findings.append({"finding": finding, **_brief(rec)})
    report.summary = _summarise(cfg, report, records)
    return report


def _brief(rec: dict) -> dict:
    keys = ("base", "k", "digits", "f", "p_prime", "projected", "projection_k")
    return {k: rec[k] for k in keys if k in rec}


def _summarise(cfg: CampaignConfig, report: CampaignReport, records: list[dict]) -> dict:
    counts = Counter(f["finding"] for f in report.findings)
    summary: dict[str, Any] = {"findings_by_class": dict(sorted(counts.items()))}
    if cfg.kind == "survey":
        exists = {str(L): [b["base"] for b in report.bases if b["tallies"]["exists"][str(L)]]
                  for L in cfg.scan_lengths}
        summary["bases_with_solutions"] = exists
        summary["mismatches_2_3"] = [a["base"] for a in report.anomalies
                                     if a["reason"].startswith("exists(2)")]
        return summary
    spectrum: Counter = Counter()
    spectrum_prime: Counter = Counter()
    for rec in records:
        if rec["record_type"] == "solution" and rec["length"] == 5:
            spectrum[_f_key(rec["f"])] += 1
            if rec["p_prime"]:
                spectrum_prime[_f_key(rec["f"])] += 1
    by_f: Counter = Counter(_f_key(c["f"]) for c in report.counterexamples)
    summary["f_spectrum"] = dict(sorted(spectrum.items()))
    summary["f_spectrum_prime_p"] = dict(sorted(spectrum_prime.items()))
    summary["counterexamples_by_f"] = dict(sorted(by_f.items()))
    summary["total_solutions"] = {
        str(L): sum(b["tallies"]["solutions"][str(L)] for b in report.bases)
        for L in cfg.scan_lengths
    }
    return summary


# -- named campaigns ---------------------------------------------------------

def _with_kind(cfg: CampaignConfig, kind: str) -> CampaignConfig:
    return cfg if cfg.kind == kind else dataclasses.replace(cfg, kind=kind)


def find_counterexamples(cfg: CampaignConfig) -> list[CounterexampleRecord]:
    cfg = _with_kind(cfg, "counterexamples")
    if 5 not in cfg.scan_lengths:
        raise ValueError("counterexample search needs length 5")
    report = run_campaign(cfg)
    return [CounterexampleRecord.from_record(r) for r in report.counterexamples]


def f_spectrum(cfg: CampaignConfig) -> CampaignReport:
    return run_campaign(_with_kind(cfg, "spectrum"))


def f1_nonfamily_search(cfg: CampaignConfig) -> list[Solution]:
    report = run_campaign(_with_kind(cfg, "f1"))
    return [Solution(DigitString(f["base"], f["digits"]), f["k"])
            for f in report.findings if f["finding"] == "nonfamily_f1"]


def existence_survey(cfg: CampaignConfig) -> CampaignReport:
    return run_campaign(_with_kind(cfg, "survey"))


def default_workers() -> int:
    raw = os.environ.get("REVMUL_WORKERS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise CampaignError(f"REVMUL_WORKERS must be an integer, got {raw!r}") from None
