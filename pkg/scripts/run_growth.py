"""Run the growth experiments and write one CSV per link plus a summary table.

    python scripts/run_growth.py --out results --threads 4
"""
import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from linkgrowth.growth import emit, estimate_rate, parse_family, run_family
from linkgrowth.laurent import format_poly
from linkgrowth.linkio import builtin_link, wirtinger


@dataclass(frozen=True)
class Experiment:
    link: str
    family: str
    tail: int = 10


DEFAULT = (
    Experiment("figure8", "cyclic:60"),
    Experiment("trefoil", "cyclic:60"),
    Experiment("6_2^3", "diag:12", tail=4),
    Experiment("6_2^2", "diag:10", tail=4),
    Experiment("5_1^2", "diag:12", tail=4),
    Experiment("hopf", "diag:12", tail=4),
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--only", nargs="*", help="restrict to these link names")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = []
    for exp in DEFAULT:
        if args.only and exp.link not in args.only:
            continue
        t0 = time.perf_counter()
        series = run_family(wirtinger(builtin_link(exp.link)), parse_family(exp.family),
                            threads=args.threads, link=exp.link)
        emit(series, "csv", out / f"{exp.link.replace('^', '_')}_{exp.family.replace(':', '')}.csv")
        est = estimate_rate(series, exp.tail)
        row = {"link": exp.link, "family": exp.family, "delta": format_poly(series.delta),
               "seconds": round(time.perf_counter() - t0, 2), "failures": len(series.failures),
               **est.to_dict()}
        summary.append(row)
        ref = "n/a" if est.reference_log_M is None else f"{est.reference_log_M:.4f}"
        print(f"{exp.link:8s} {exp.family:10s} last={est.last:.4f} tail_max={est.tail_max:.4f} "
              f"log M={ref} ({row['seconds']}s)")
    (out / "summary.json").write_text(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()
