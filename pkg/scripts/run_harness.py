"""Run every applicable certificate check over the built-in corpus.

    python scripts/run_harness.py --seed 0 --budget 200000 --out harness.json
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Optional

from oddeven.certify import certify_instance, format_table, small_corpus
from oddeven.graph import SearchBudget


@dataclass
class HarnessConfig:
    seed: int = 0
    budget: int = 200_000
    max_topes: int = 200
    out: Optional[str] = None


def main(cfg: HarnessConfig) -> int:
    t0 = time.perf_counter()
    corpus = small_corpus(cfg.seed, cfg.max_topes)
    certs = []
    for name, arr in corpus:
        certs.extend(certify_instance(name, arr, SearchBudget(cfg.budget)))
    print(format_table(certs), end="")
    tally = Counter((c.kind, c.verdict) for c in certs)
    print()
    for (kind, verdict), k in sorted(tally.items()):
        print(f"{kind:16s} {verdict:28s} {k}")
    print(f"{len(corpus)} instances, {len(certs)} checks, {time.perf_counter() - t0:.1f}s")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "certificates": [c.to_json() for c in certs]}, fh, indent=2)
    return 1 if any(c.is_bug for c in certs) else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--max-topes", type=int, default=200)
    p.add_argument("--out")
    a = p.parse_args()
    raise SystemExit(main(HarnessConfig(a.seed, a.budget, a.max_topes, a.out)))
