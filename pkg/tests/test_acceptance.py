"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (``pytest tests/test_acceptance.py -v``) or directly
(``python3 tests/test_acceptance.py``). Budgets are wall-clock seconds and the
comparisons below are exact: every check is integer or combinatorial, so no
numeric tolerance applies.
"""

import itertools
import json
import random
import sys
import time

import pytest

from profcalc.certify import certify, dumps_certificate
from profcalc.corpus import bool4, equipment_corpus, random_kan_instances, small_categories, span, z2
from profcalc.errors import PreconditionFailed
from profcalc.fincat import CatFunctor, chain, discrete, terminal, walking_arrow
from profcalc.kan import check_kan, kan_extend
from profcalc.monad import (check_T_cell, check_monad_laws, check_morphism, companion_monoidal, join_semilattice,
                            lift_kan, meets, monad_exactness, strict_monoidal_functor, thin_monoidal,
                            thin_monoidal_functor, thin_probe_cells, thin_monoidal_profunctor, unit_monoidal)
from profcalc.prof import Profunctor, ProbeBound, check_equipment_laws, random_profunctor, tabulate
from profcalc.props import (adjunction_check, algebra_from_group, alternative_representation,
                            bc_factorize, bc_relate, check_hopf_axioms, coend_equiv, coend_family,
                            coend_soundness_completeness, coend_normal_form, h_compose, h_tensor, parse_group,
                            random_matrix)

BUDGET = {1: 120.0, 2: None, 3: None, 4: 60.0, 5: None, 6: 10.0, 7: 30.0, 8: None, 9: None}
SMALL = [terminal(), walking_arrow(), discrete([0, 1]), chain(3), z2(), span()]
GROUPS = ["Z/2", "Z/3", "Z/4", "Z/2xZ/2", "Z/6"]


def _timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


# 1. Kan oracle equivalence


def crit_1():
    counts = {"left": 0, "right": 0, "failures": []}
    bound = ProbeBound(3, 3)
    for inst in random_kan_instances(25, seed=0):
        rep = check_kan(kan_extend(inst.d, inst.J, "left"), bound)
        counts["left"] += 1
        if not (rep["ordinary"]["ok"] and rep["pointwise"]["ok"]):
            counts["failures"].append(inst.describe())
    for inst in random_kan_instances(25, seed=1):
        rng = random.Random(inst.seed)
        J = random_profunctor(rng.choice(small_categories()), inst.d.src, 3, rng)
        rep = check_kan(kan_extend(inst.d, J, "right"), bound)
        counts["right"] += 1
        if not (rep["ordinary"]["ok"] and rep["pointwise"]["ok"]):
            counts["failures"].append(inst.describe())
    ok = counts["left"] + counts["right"] >= 50 and not counts["failures"]
    return ok, f"{counts['left']} left + {counts['right']} right instances, {len(counts['failures'])} failures"


# 2. Equipment laws


def crit_2():
    res = check_equipment_laws(equipment_corpus())
    ok = res["ok"] and not res["failures"]
    return ok, (f"{res['companions']} companion, {res['restrictions']} restriction, "
                f"{res['cartesian_display']} cartesian, {res['opcartesian_display']} opcartesian checks; "
                f"{len(res['failures'])} failures")


# 3. Tabulation


def crit_3():
    rng = random.Random(3)
    bad = []
    for _ in range(20):
        J = random_profunctor(rng.choice(SMALL), rng.choice(SMALL), 3, rng)
        rep = tabulate(J).report
        if not all(rep[k]["ok"] for k in ("one_dim", "two_dim", "opcartesian", "jointly_monic")):
            bad.append(J.size())
    return not bad, f"20 profunctors, {len(bad)} failures"


# 4. Monad laws and exactness


def crit_4():
    rng = random.Random(4)
    done, bad = 0, 0
    while done < 12:
        J = random_profunctor(rng.choice(SMALL), rng.choice(SMALL), 2, rng)
        if not 0 < J.size() <= 4:
            continue
        done += 1
        ex = monad_exactness(J, 3, opcartesian_probes=True)
        if not (check_monad_laws(J, 3).ok and ex["ok"]):
            bad += 1
    return bad == 0 and done >= 10, f"{done} profunctors at N = 3, {bad} failures"


# 5. Lifting Kan extensions


def _lift_instances():
    M = bool4()
    Md = join_semilattice(M)
    A3 = chain(3)
    A3d = join_semilattice(A3)
    dm = {0: 0, 1: 1, 2: 3}
    d3 = CatFunctor(A3, M, dm, {(a, b): (dm[a], dm[b]) for a, b in A3.morphisms})
    yield "hom", d3, unit_monoidal(A3d), strict_monoidal_functor(d3, A3d, Md), Md
    A2, B3 = chain(2), chain(3)
    A2d, B3d = join_semilattice(A2), A3d
    f = CatFunctor(A2, B3, {0: 0, 1: 2}, {(0, 0): (0, 0), (1, 1): (2, 2), (0, 1): (0, 2)})
    Jd = companion_monoidal(strict_monoidal_functor(f, A2d, B3d))
    em = {0: 0, 1: 3}
    d2 = CatFunctor(A2, M, em, {(a, b): (em[a], em[b]) for a, b in A2.morphisms})
    yield "companion", d2, Jd, thin_monoidal_functor(d2, A2d, Md, "pseudo"), Md


def _corrupted():
    A, M = chain(3), bool4()
    Ad, Md = join_semilattice(A), join_semilattice(M)
    dm = {0: 0, 1: 1, 2: 3}
    d = CatFunctor(A, M, dm, {(a, b): (dm[a], dm[b]) for a, b in A.morphisms})
    dd = strict_monoidal_functor(d, Ad, Md)
    obs = A.objects
    total = Profunctor(A, A, {(a, b): [0] for a in obs for b in obs},
                       {(p, b, 0): 0 for p in A.morphisms if not A.is_identity(p) for b in obs},
                       {(a, q, 0): 0 for q in A.morphisms if not A.is_identity(q) for a in obs})
    upper = Profunctor(A, A, {(a, b): [0] for a in obs for b in obs if b >= 1},
                       {(p, b, 0): 0 for p in A.morphisms if not A.is_identity(p) for b in (1, 2)},
                       {(a, q, 0): 0 for q in A.morphisms if not A.is_identity(q) and A.src(q) >= 1 for a in obs})
    yield "e", ("colax", "pseudo"), d, thin_monoidal_profunctor(total, Ad, Ad), dd, Md
    yield "p", ("lax", "pseudo"), d, thin_monoidal_profunctor(upper, Ad, thin_monoidal(A, meets(A), name="min")), \
        dd, Md


def crit_5():
    lines, ok = [], True
    for name, d, Jd, dd, Md in _lift_instances():
        cert = kan_extend(d, Jd.base, "left")
        for mode in ("lax", "colax", "pseudo"):
            kind = "colax" if mode == "colax" else "lax"
            probes = thin_probe_cells(cert, Jd, dd, Md, kind, limit=5)
            ldata, rep = lift_kan(cert, Jd, dd, Md, mode, probes=probes)
            good = (rep["ok"] and rep["arity"] == 3 and check_morphism(ldata).ok
                    and check_T_cell(cert.cell, dd, ldata, Jd, unit_monoidal(Md), kind=kind).ok)
            if mode == "pseudo":
                good = good and rep["inverse"]["ok"]
            ok &= good
            lines.append(f"{name}/{mode}")
    for cond, modes, d, Jd, dd, Md in _corrupted():
        for mode in modes:
            try:
                lift_kan(kan_extend(d, Jd.base, "left"), Jd, dd, Md, mode)
                ok = False
            except PreconditionFailed as exc:
                ok &= exc.condition == cond
            lines.append(f"no-{cond}/{mode}")
    return ok, f"{len(lines)} cases: " + ", ".join(lines)


# 6. Beck-Chevalley factorization


def _matmul(a, b, cols):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(cols)] for i in range(len(a))]


def crit_6():
    rng = random.Random(6)
    exact = 0
    for _ in range(200):
        split = [rng.randint(0, 3) for _ in range(rng.randint(1, 3))]
        xi = random_matrix(rng, sum(split), rng.randint(0, 5), -5, 5)
        fac = bc_factorize(xi, split)
        rebuilt = _matmul([list(r) for r in h_tensor(fac.blocks).entries], [list(r) for r in fac.zeta.entries],
                          xi.cols)
        exact += rebuilt == [list(r) for r in xi.entries]
    related = 0
    for _ in range(100):
        split = [rng.randint(0, 3) for _ in range(rng.randint(1, 3))]
        blocks, zeta = alternative_representation(rng, split, rng.randint(1, 5))
        rel = bc_relate((blocks, zeta), split)
        canon = bc_factorize(h_compose(h_tensor(blocks), zeta), split)
        related += all(h_compose(b, c) == x for b, c, x in zip(blocks, rel.chis, canon.blocks))
    return exact == 200 and related == 100, f"{exact}/200 exact factorizations, {related}/100 related"


# 7. Free Hopf adjunction


def crit_7():
    adj = hopf = 0
    for spec in GROUPS:
        G = parse_group(spec)
        for X in ((), ("a",), ("a", "b")):
            c = adjunction_check(X, G)
            adj += c.bijective and c.composites_identity
        rep = check_hopf_axioms(algebra_from_group(G, 3))
        hopf += rep.ok and rep.checked > 0
    return adj == 15 and hopf == 5, f"{adj}/15 adjunctions, {hopf}/5 Hopf structures"


# 8. Coend soundness


def crit_8():
    ok, total, paths = True, 0, 0
    for X in ((), ("a",), ("a", "b")):
        for rows in (1, 2):
            fam = coend_family(2, 2, X, rows)
            total += len(fam)
            out = coend_soundness_completeness(fam, 4, X=X)
            ok &= out["sound"] and out["complete"]
    fam = coend_family(2, 2, ("a", "b"), 1)
    for p, q in itertools.combinations(fam, 2):
        if coend_normal_form(p).coords == coend_normal_form(q).coords:
            v = coend_equiv(p, q, 4, X=("a", "b"))
            paths += 1
            ok &= v.kind == "related" and coend_normal_form(v.path[0]).coords == coend_normal_form(v.path[-1]).coords
    return ok, f"{total} pairs across families, {paths} explicit paths re-checked"


# 9. Determinism


def _fn(f):
    return {**f.to_json(), "src": f.src.to_json(), "tgt": f.tgt.to_json()}


def _certificate_runs():
    inst = next(iter(random_kan_instances(1, seed=0)))
    name, d, Jd, dd, Md = next(_lift_instances())
    yield "kan", {"diagram": _fn(inst.d), "along": inst.J.to_json()}, {"direction": "left", "probe_size": 2}
    yield "tabulate", {"profunctor": inst.J.to_json()}, {"probe_size": 2}
    yield "lift", {"diagram": _fn(d), "along": Jd.base.to_json()}, {"mode": "pseudo", "arity": 3}
    yield "prop", {}, {"action": "bc-factor", "matrix": "1,-2,3;4,5,-5;0,1,2", "split": "1,2"}
    yield "prop", {}, {"action": "hopf", "group": "Z/6", "arity": 3}
    yield "prop", {}, {"action": "adjunction", "group": "Z/2xZ/2", "basis": ["a", "b"]}
    yield "prop", {}, {"action": "coend", "left": "1,2", "left_labels": ["a", "a"], "right": "3",
                       "right_labels": ["a"], "depth": 4}


def crit_9():
    same = 0
    runs = list(_certificate_runs())
    for op, inputs, params in runs:
        a = dumps_certificate(certify(op, inputs, params)[0]).encode()
        b = dumps_certificate(certify(op, inputs, params)[0]).encode()
        same += a == b
    # summaries of the fast criteria are also reproduced byte for byte
    s1 = json.dumps([crit_6()[1], crit_8()[1]], sort_keys=True).encode()
    s2 = json.dumps([crit_6()[1], crit_8()[1]], sort_keys=True).encode()
    return same == len(runs) and s1 == s2, f"{same}/{len(runs)} certificates byte-identical, summaries identical"


CRITERIA = {1: crit_1, 2: crit_2, 3: crit_3, 4: crit_4, 5: crit_5, 6: crit_6, 7: crit_7, 8: crit_8, 9: crit_9}


def evaluate(n):
    ok, detail, secs = _timed(CRITERIA[n])
    budget = BUDGET[n]
    within = budget is None or secs < budget
    verdict = "PASS" if ok and within else "FAIL"
    limit = f"< {budget:.0f} s" if budget else "no budget"
    return ok and within, f"{verdict} criterion {n}: {detail} [{secs:.2f} s, {limit}]"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = evaluate(n)
    with capsys.disabled():
        sys.stdout.write("\n" + line + "\n")
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
