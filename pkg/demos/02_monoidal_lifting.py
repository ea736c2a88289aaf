"""Lifting a left Kan extension to a monoidal functor between join semilattices.

    python3 demos/02_monoidal_lifting.py
"""

from profcalc.corpus import bool4
from profcalc.errors import PreconditionFailed
from profcalc.fincat import CatFunctor, chain
from profcalc.kan import kan_extend
from profcalc.monad import (beck_chevalley, check_algebra, check_horizontal, check_monad_laws, join_semilattice,
                            lift_kan, monad_exactness, strict_monoidal_functor, thin_monoidal_profunctor,
                            thin_probe_cells, unit_monoidal)
from profcalc.prof import Profunctor, unit_prof

A, M = chain(3), bool4()
Ad, Md = join_semilattice(A), join_semilattice(M)
print("3-chain under joins is a pseudomonoid:", check_algebra(Ad).ok)
print("subsets of {a, b} under union:", check_algebra(Md).ok)

dm = {0: 0, 1: 1, 2: 3}
d = CatFunctor(A, M, dm, {(a, b): (dm[a], dm[b]) for a, b in A.morphisms})
dd = strict_monoidal_functor(d, Ad, Md)

J = unit_prof(A)
print("\nmonad laws on T(hom) at arity 3:", check_monad_laws(J, 3).ok)
print("mu and eta are pointwise left exact:", monad_exactness(J, 3)["ok"])

Jd = unit_monoidal(Ad)
print("hom is a monoidal profunctor:", check_horizontal(Jd).ok)
print("Beck-Chevalley comparison invertible:", beck_chevalley(Jd)[1]["ok"])

cert = kan_extend(d, J, "left")
for mode in ("lax", "colax", "pseudo"):
    kind = "colax" if mode == "colax" else "lax"
    ldata, rep = lift_kan(cert, Jd, dd, Md, mode, probes=thin_probe_cells(cert, Jd, dd, Md, kind, limit=5))
    extra = f", inverse ok: {rep['inverse']['ok']}" if mode == "pseudo" else ""
    print(f"{mode:>6} lift ok: {rep['ok']} ({len(rep['probes'])} probe cells){extra}")

# The total relation on the chain is monoidal, but its structure cell is not exact.
obs = A.objects
T = Profunctor(A, A, {(a, b): [0] for a in obs for b in obs},
               {(p, b, 0): 0 for p in A.morphisms if not A.is_identity(p) for b in obs},
               {(a, q, 0): 0 for q in A.morphisms if not A.is_identity(q) for a in obs})
Td = thin_monoidal_profunctor(T, Ad, Ad)
try:
    lift_kan(kan_extend(d, T, "left"), Td, dd, Md, "colax")
except PreconditionFailed as exc:
    print(f"\ncolax lift along the total relation refused: condition ({exc.condition})")
