"""Search planar seeds with large |signed invariant| and append a generic plane.

For each line count the best seed is homogenized, a generic central plane
H* is added, and the script reports whether oe(A minus H*) > |T(A/H*)|,
i.e. whether the result is certified non-Hamiltonian despite invariant 0.

    python scripts/seed_search.py --lines 6 7 8 9 10 --budget 1000 --restarts 3
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from oddeven.generators import planar_seed_search, theorem8_assembly


@dataclass
class SeedSearchConfig:
    lines: list = field(default_factory=lambda: [6, 7, 8, 9, 10])
    budget: int = 1000
    restarts: int = 3
    seed: int = 1
    out: str = ""


def main(cfg: SeedSearchConfig) -> None:
    rows = []
    print(f"{'lines':>5} {'|s|':>4} {'planes':>6} {'oe(A-H*)':>8} {'|T(A/H*)|':>9} {'cert':>5} {'time':>6}")
    for n in cfg.lines:
        t0 = time.perf_counter()
        seed = planar_seed_search(n, cfg.budget, cfg.seed, cfg.restarts)
        rep = theorem8_assembly(seed, seed=0)
        ex = rep.extra
        dt = time.perf_counter() - t0
        rows.append({"lines": n, "seed_signed_oe": seed.signed_oe, "planes": rep.arrangement.n, **ex, "seconds": dt})
        print(
            f"{n:5d} {abs(seed.signed_oe):4d} {rep.arrangement.n:6d} {ex['oe_input']:8d} "
            f"{ex['restricted_topes']:9d} {str(ex['certificate']):>5} {dt:6.1f}"
        )
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lines", type=int, nargs="+", default=[6, 7, 8, 9, 10])
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=3)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default="")
    a = p.parse_args()
    main(SeedSearchConfig(a.lines, a.budget, a.restarts, a.seed, a.out))
