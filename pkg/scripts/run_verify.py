"""Run the oracle verification grid and write the JSON report.

    python scripts/run_verify.py --max-points 65536 --out report.json
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from irrcount.oracle import DEFAULT_MAX_POINTS, DEFAULT_MAX_POLY, Budget, verify_grid

PARTS = ("F", "Fstar", "P", "cattell", "identities", "lemmas")


@dataclass
class VerifyConfig:
    max_k: int = 16
    max_points: int = DEFAULT_MAX_POINTS
    max_poly: int = DEFAULT_MAX_POLY
    threads: int = 1
    parts: tuple = PARTS
    out: str | None = None


def parse_args(argv=None) -> VerifyConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=16)
    ap.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    ap.add_argument("--max-poly", type=int, default=DEFAULT_MAX_POLY)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--parts", nargs="+", choices=PARTS, default=list(PARTS))
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    return VerifyConfig(a.max_k, a.max_points, a.max_poly, a.threads, tuple(a.parts), a.out)


def main(argv=None) -> int:
    cfg = parse_args(argv)
    budget = Budget(max_points=cfg.max_points, max_poly=cfg.max_poly, threads=cfg.threads)
    report = verify_grid(cfg.max_k, budget, parts=cfg.parts)
    doc = {"config": asdict(cfg), **report.to_dict()}
    text = json.dumps(doc, indent=2)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"{report.totals['pass']} passed, {report.totals['fail']} failed in {report.elapsed:.1f}s",
          file=sys.stderr)
    for c in report.failures():
        print(f"FAIL {c.name} q={c.q} n={c.n} {c.detail}", file=sys.stderr)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
