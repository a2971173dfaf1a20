"""Growth of torsion in branched covers along families of lattices."""
from __future__ import annotations

import csv
import io
import json
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from .alexander import alexander_polynomial, higher_alexander_univariate
from .covers import cover_homology
from .laurent import LaurentPoly, format_poly
from .lattices import Lattice, parse_lattice, shortest_vector
from .linkio import WirtingerPresentation
from .mahler import mahler

CSV_COLUMNS = ("lattice", "m", "min_vec", "betti", "torsion_order", "normalized_log")
_LOG2 = math.log(2)


def log_bigint(n: int) -> float:
    """Natural log of a positive integer of any size, from its top 64 bits."""
    if n <= 0:
        raise ValueError("log of a non-positive integer")
    b = n.bit_length()
    if b <= 64:
        return math.log(n)
    return math.log(n >> (b - 64)) + (b - 64) * _LOG2


@dataclass
class GrowthRecord:
    lattice: str
    m: int
    min_vec: float
    b: int | None
    betti: int | None
    normalized_log: float | None
    error: str | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["b"] = None if self.b is None else str(self.b)
        return d

    @classmethod
    def from_json(cls, d: dict) -> GrowthRecord:
        d = dict(d)
        d["b"] = None if d.get("b") is None else int(d["b"])
        return cls(**d)


@dataclass(frozen=True)
class FamilySpec:
    kind: str  # cyclic | diag | explicit
    size: int = 0
    explicit: tuple[str, ...] = ()

    def lattices(self, d: int) -> list[Lattice]:
        if self.kind == "cyclic":
            if d != 1:
                raise ValueError("cyclic families are for knots (d = 1); use diag for links")
            return [Lattice.cyclic(r) for r in range(1, self.size + 1)]
        if self.kind == "diag":
            return [Lattice.scalar(n, d) for n in range(1, self.size + 1)]
        return [parse_lattice(s, d) for s in self.explicit]

    def label(self) -> str:
        if self.kind == "explicit":
            return "list:" + "|".join(self.explicit)
        return f"{self.kind}:{self.size}"


def parse_family(text: str) -> FamilySpec:
    """``cyclic:60``, ``diag:12`` or ``list:diag:2,3|cols:2,1;-1,2``."""
    m = re.fullmatch(r"\s*(cyclic|diag)\s*:\s*(\d+)\s*", text)
    if m:
        size = int(m.group(2))
        if size < 1:
            raise ValueError("family must be nonempty")
        return FamilySpec(m.group(1), size)
    if text.startswith("list:"):
        items = tuple(s.strip() for s in text[5:].split("|") if s.strip())
        if not items:
            raise ValueError("family must be nonempty")
        return FamilySpec("explicit", len(items), items)
    raise ValueError(f"bad family spec {text!r}")


@dataclass
class GrowthSeries:
    link: str
    family: str
    records: list[GrowthRecord]
    delta: LaurentPoly
    reference_poly: LaurentPoly | None
    reference_log: float | None
    mode: str  # "theorem" or "conjecture" (zero Alexander polynomial)
    note: str = ""

    def __iter__(self) -> Iterator[GrowthRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, k):
        return self.records[k]

    @property
    def failures(self) -> list[GrowthRecord]:
        return [r for r in self.records if r.error]


def _one(args) -> GrowthRecord:
    pres, lam, method = args
    m = lam.index
    try:
        sv = shortest_vector(lam)
    except ValueError:
        sv = float("nan")
    try:
        h = cover_homology(pres, lam, method)
    except Exception as exc:  # recorded, not fatal
        return GrowthRecord(lam.label(), m, sv, None, None, None, f"{type(exc).__name__}: {exc}")
    return GrowthRecord(lam.label(), m, sv, h.torsion_order, h.betti,
                        log_bigint(h.torsion_order) / m)


def reference_polynomial(pres: WirtingerPresentation) -> tuple[LaurentPoly, LaurentPoly | None, str]:
    """(Delta, comparison polynomial or None, mode)."""
    delta = alexander_polynomial(pres)
    if not delta.is_zero():
        return delta, delta, "theorem"
    if pres.d == 1:
        i = 2
        while True:
            di = higher_alexander_univariate(pres, i)
            if not di.is_zero():
                return delta, di, "conjecture"
            i += 1
    return delta, None, "conjecture"


def run_family(pres: WirtingerPresentation, fam: FamilySpec, method: str = "relative",
               threads: int = 1, tol: float = 5e-3, seed: int = 0, link: str = "") -> GrowthSeries:
    lattices = fam.lattices(pres.d)
    if not lattices:
        raise ValueError("family is empty")
    jobs = [(pres, lam, method) for lam in lattices]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(_one, jobs, chunksize=1))
    else:
        records = [_one(j) for j in jobs]
    delta, ref, mode = reference_polynomial(pres)
    ref_log = mahler(ref, tol=tol, seed=seed).log_value if ref is not None else None
    if mode == "theorem":
        note = "comparison target: log M(Delta)"
    elif ref is not None:
        note = f"Delta = 0; comparison target: log M of first nonzero Delta_i = {format_poly(ref)}"
    else:
        note = "Delta = 0 for a link; no comparison value"
    return GrowthSeries(link, fam.label(), records, delta, ref, ref_log, mode, note)


@dataclass
class RateEstimate:
    last: float
    tail_max: float
    reference_log_M: float | None
    abs_gap: float | None
    tail: int

    def to_dict(self) -> dict:
        return asdict(self)


def estimate_rate(series: GrowthSeries | Sequence[GrowthRecord], tail: int,
                  reference_log: float | None = None) -> RateEstimate:
    records = list(series)
    if not records:
        raise ValueError("empty series")
    if not 1 <= tail <= len(records):
        raise ValueError(f"tail must be between 1 and {len(records)}")
    if reference_log is None and isinstance(series, GrowthSeries):
        reference_log = series.reference_log
    vals = [r.normalized_log for r in records[-tail:] if r.normalized_log is not None]
    if not vals:
        raise ValueError("no successful records in the tail")
    last = next(r.normalized_log for r in reversed(records) if r.normalized_log is not None)
    tmax = max(vals)
    gap = None if reference_log is None else abs(tmax - reference_log)
    return RateEstimate(last, tmax, reference_log, gap, tail)


def to_csv(records: Sequence[GrowthRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.lattice, r.m, repr(r.min_vec),
                    "" if r.betti is None else r.betti,
                    "" if r.b is None else str(r.b),
                    "" if r.normalized_log is None else repr(r.normalized_log)])
    return buf.getvalue()


def to_json(records: Sequence[GrowthRecord]) -> str:
    return json.dumps([r.to_json() for r in records], indent=1)


def from_json(text: str) -> list[GrowthRecord]:
    return [GrowthRecord.from_json(d) for d in json.loads(text)]


def emit(series: GrowthSeries | Sequence[GrowthRecord], fmt: str, path) -> None:
    records = list(series)
    if fmt == "csv":
        text = to_csv(records)
    elif fmt == "json":
        text = to_json(records)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", newline="") as fh:
        fh.write(text)
