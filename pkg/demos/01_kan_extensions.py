"""Kan extensions of a diagram in a small lattice, computed and then checked.

    python3 demos/01_kan_extensions.py
"""

from profcalc.corpus import bool4
from profcalc.errors import NoUniversalObject
from profcalc.fincat import CatFunctor, chain, discrete, terminal, walking_arrow
from profcalc.kan import check_kan, kan_extend, kan_value_by_search
from profcalc.prof import ProbeBound, Profunctor, companion, composite, unit_prof


def banner(text):
    print(f"\n--- {text}")


# The arrow 0 -> 1 drawn in the lattice of subsets of {a, b} as {a} <= {a, b}.
A, M = walking_arrow(), bool4()
d = CatFunctor(A, M, {0: 1, 1: 3}, {(0, 0): (1, 1), (0, 1): (1, 3), (1, 1): (3, 3)})

banner("profunctors compose by a coend")
U = unit_prof(A)
P = composite(U, U)
print("|hom . hom| per pair:", {pr: len(P.elements(*pr)) for pr in P.pairs()})

banner("extend along the companion of 0 -> 0, 1 -> 2 into the 3-chain")
f = CatFunctor(A, chain(3), {0: 0, 1: 2}, {(0, 0): (0, 0), (0, 1): (0, 2), (1, 1): (2, 2)})
J = companion(f)
cert = kan_extend(d, J, "left")
print("Lan values:", cert.result.on_objects)
print("search oracle:", {b: kan_value_by_search(d, J, b, "left") for b in J.tgt.objects})
rep = check_kan(cert, ProbeBound(2, 2))
print("ordinary layer ok:", rep["ordinary"]["ok"], "after", rep["ordinary"]["checked"], "competing cells")
print("pointwise layer ok:", rep["pointwise"]["ok"], "with", rep["pointwise"]["definition_probes"]["cells"],
      "probe cells")

banner("the right extension along the hom profunctor returns d itself")
print("Ran values:", kan_extend(d, U, "right").result.on_objects)

banner("a weight with no colimit in a discrete target")
X, T = discrete([0, 1]), discrete(["x", "y"])
e = CatFunctor(X, T, {0: "x", 1: "y"}, {("id", 0): ("id", "x"), ("id", 1): ("id", "y")})
W = Profunctor(X, terminal(), {(0, "*"): [0], (1, "*"): [0]}, {}, {})
try:
    kan_extend(e, W, "left")
except NoUniversalObject as exc:
    print("no extension:", exc)
