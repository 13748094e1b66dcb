"""A short seeded fuzz run, as the ``fuzz`` subcommand does it.

Each corpus item depends only on (seed, index), so rerunning prints the
same summary and the same CSV byte for byte.
"""

import hashlib

from semihilbert.fuzz import FuzzConfig, run_fuzz
from semihilbert.radii import OptimizerConfig

if __name__ == "__main__":
    fcfg = FuzzConfig(seed=1, count=24, dims=(2, 3, 4), rank_deficit=(0, 1))
    res = run_fuzz(fcfg, OptimizerConfig())
    s = res.summary()
    print(f"pairs {s['pairs']}, entries {s['entries']}, violations {s['violations_by_bound']}")
    print("csv sha256", hashlib.sha256(res.to_csv().encode()).hexdigest()[:16])
