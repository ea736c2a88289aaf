"""Integer matrices as a PROP: block factorization, Hopf structure, and the coend presentation.

    python3 demos/03_props_and_hopf.py
"""

import random

from profcalc.props import (HMorphism, adjunction_check, algebra_from_group, alternative_representation,
                            bc_factorize, bc_relate, check_hopf_axioms, coend_equiv, coend_normal_form,
                            extract_hopf, parse_group)

xi = HMorphism.of([[1, -2, 3], [4, 5, -5], [0, 1, 2]])
fac = bc_factorize(xi, [1, 2])
print("xi =", xi.format())
print("blocks:", [b.format() for b in fac.blocks], " zeta:", fac.zeta.format())

rng = random.Random(0)
blocks, zeta = alternative_representation(rng, [1, 2], 3)
rel = bc_relate((blocks, zeta), [1, 2])
print("another representation relates through", [c.format() for c in rel.chis])

print()
for spec in ("Z/2", "Z/4", "Z/2xZ/2", "Z/6"):
    A = algebra_from_group(parse_group(spec), 3)
    rep = check_hopf_axioms(A)
    S = extract_hopf(A).S
    print(f"{spec:>8}: Hopf axioms {rep.ok} over {rep.checked} equations, antipode {[S(x) for x in A.G.elements]}")

cert = adjunction_check(("a", "b"), parse_group("Z/3"))
print(f"\nHopf maps Z^(a,b) -> Z/3: {cert.homomorphisms}, functions {{a,b}} -> Z/3: {cert.functions}, "
      f"bijective {cert.bijective}")

p = (HMorphism.of([[1, 2]]), ("a", "a"))
q = (HMorphism.of([[3]]), ("a",))
v = coend_equiv(p, q)
print("\n(1 2; a a) and (3; a):", v.kind, "normal form", coend_normal_form(p).format())
for m, xs in v.path:
    print("   ", m.format(), xs)
print("(1; a) and (1; b):", coend_equiv((HMorphism.of([[1]]), ("a",)), (HMorphism.of([[1]]), ("b",))).kind)
