"""Recompute the derived stratum fixtures with the slow reference oracle.

    python3 scripts/derive_fixtures.py [--out src/equisym/data/fixtures.json]

Orbit counts, sizes and representatives come from tests/oracles.py (plain
BFS over all automorphisms and move maps); the package's orbit engine is not
used, so the fixtures can check it.
"""

import argparse
import json
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from oracles import bfs_orbits  # noqa: E402

from equisym.group import build_group  # noqa: E402
from equisym.signature import format_signature, parse_signature  # noqa: E402

CASES = [
    # three-dimensional dihedral family, (0; 2^6)
    *[(f"D:{q}", "0;2^6") for q in (2, 3, 4, 5, 6, 7, 11, 13)],
    # four-dimensional dihedral family of order g, (0; 2^6, g/2)
    ("D:2", "0;2^7"), ("D:3", "0;2^6,3"), ("D:4", "0;2^6,4"), ("D:5", "0;2^6,5"), ("D:7", "0;2^6,7"),
    # genus-one quotients, (1; 2^4)
    *[(f"C:{n}", "1;2^4") for n in (4, 6, 8, 10, 12)],
    *[(f"D:{q}", "1;2^4") for q in (2, 3, 4, 5, 7)],
]


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(ROOT / "src/equisym/data/fixtures.json"))
    args = ap.parse_args(argv)
    strata = []
    for spec, text in CASES:
        G = build_group(spec)
        sig = parse_signature(text)
        t0 = time.time()
        classes = bfs_orbits(G.table, sig.h, sig.periods)
        k = 2 * sig.h

        def fmt(v):
            hyp = ",".join(G.name_of(x) for x in v[:k]) or "-"
            return hyp + ";" + ",".join(G.name_of(x) for x in v[k:])

        strata.append({
            "group": spec,
            "signature": format_signature(sig),
            "orbit_count": len(classes),
            "total_vectors": sum(size for _, size in classes),
            "sizes": [size for _, size in classes],
            "representatives": [fmt(v) for v, _ in classes],
            "provenance": "derived",
        })
        print(f"{spec} ({text}): {len(classes)} classes in {time.time() - t0:.1f}s", file=sys.stderr, flush=True)
        # written after every case so a long run leaves usable partial output
        data = {"generator": "scripts/derive_fixtures.py", "strata": strata}
        Path(args.out).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
