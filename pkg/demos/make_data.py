"""Regenerate the JSON inputs in demos/data used by the CLI walkthrough.

    python3 demos/make_data.py
"""

import json
from pathlib import Path

from profcalc.corpus import bool4
from profcalc.fincat import CatFunctor, discrete, terminal, walking_arrow
from profcalc.prof import Profunctor, unit_prof

OUT = Path(__file__).resolve().parent / "data"


def functor_file(f):
    """A functor file carries its source and target categories inline."""
    return {**f.to_json(), "src": f.src.to_json(), "tgt": f.tgt.to_json()}


def arrow_into(M, lo, hi):
    return CatFunctor(walking_arrow(), M, {0: lo, 1: hi}, {(0, 0): (lo, lo), (0, 1): (lo, hi), (1, 1): (hi, hi)})


def build() -> dict:
    A, M = walking_arrow(), bool4()
    broken = A.to_json()
    broken["composition"] = [c for c in broken["composition"] if c["first"] != [1, 1]]
    # H(a, 1) is a single element and H(a, 0) is empty
    H = Profunctor(A, A, {(0, 1): [(1, 1)], (1, 1): [(1, 1)]}, {((0, 1), 1, (1, 1)): (1, 1)}, {})
    X, T = discrete([0, 1]), discrete(["x", "y"])
    d_nocolim = CatFunctor(X, T, {0: "x", 1: "y"}, {("id", 0): ("id", "x"), ("id", 1): ("id", "y")})
    J_nocolim = Profunctor(X, terminal(), {(0, "*"): [0], (1, "*"): [0]}, {}, {})
    return {
        "walking_arrow.json": A.to_json(),
        "broken_category.json": broken,
        "M.json": M.to_json(),
        # 0 -> bottom and 1 -> top preserves binary and empty joins
        "d.json": functor_file(arrow_into(M, 0, 3)),
        # 0 -> {a} misses the empty join, so it is only lax monoidal
        "d_lax.json": functor_file(arrow_into(M, 1, 3)),
        "J.json": unit_prof(A).to_json(),
        "H.json": H.to_json(),
        "d_nocolim.json": functor_file(d_nocolim),
        "J_nocolim.json": J_nocolim.to_json(),
    }


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for name, data in build().items():
        (OUT / name).write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")
        print("wrote", OUT / name)


if __name__ == "__main__":
    main()
