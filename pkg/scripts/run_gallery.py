"""Run every gallery scenario, re-check its witnesses and write JSON reports.

    python3 scripts/run_gallery.py [--out reports/] [--seed 42] [--only ID ...]
"""

import argparse
import json
import pathlib
import sys
import time

from assprimes import gallery


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reports", help="directory for JSON reports")
    ap.add_argument("--seed", type=int, default=None, help="override every scenario seed")
    ap.add_argument("--only", nargs="*", default=None, help="scenario ids to run")
    args = ap.parse_args(argv)

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failures = 0
    t0 = time.perf_counter()
    for sc in gallery.list_examples():
        if args.only and sc.id not in args.only:
            continue
        overrides = {"seed": args.seed} if args.seed is not None and "seed" in sc.params else {}
        rep = gallery.run_example(sc.id, **overrides)
        rechecked = gallery.recheck(rep)
        (out / f"{sc.id}.json").write_text(json.dumps(rep.to_dict(), indent=2))
        ok = rep.verdict == "pass" and rechecked
        failures += not ok
        levels = sorted({c.level for c in rep.claims})
        print(f"{'PASS' if ok else 'FAIL'}  {sc.id:<24} {len(rep.claims)} claims  "
              f"{rep.elapsed_ms:8.1f} ms  ({', '.join(levels)})")
    print(f"total {time.perf_counter() - t0:.1f} s, {failures} failing")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
