# Random families through every cross-check, the same loop the selfcheck
# command runs.
import random
import sys
from collections import Counter

from newtonhodge.oracle import consistency_suite, random_instance

count = int(sys.argv[1]) if len(sys.argv) > 1 else 20
rng = random.Random(0)
tally = Counter()
for i in range(count):
    f = random_instance(rng, max_points=10, max_height=4)
    reports = consistency_suite(f)
    bad = [r.name for r in reports if not r.passed]
    tally["failed" if bad else "passed"] += 1
    print(f"{i:3d} n={f.n} {f.ambient:6s} points={len(f.terms):2d} checks={len(reports):3d}",
          "FAIL " + ", ".join(bad) if bad else "ok")
print(dict(tally))
