"""Weighted (co)limits and pointwise Kan extensions of Set-valued profunctors.

Left extensions: ``d: A -> M`` along ``J: A -|-> B`` gives ``l: B -> M`` and
``eta: J => 1_M`` over ``(d, l)``; ``l(b)`` is the colimit of ``d`` weighted by
the column ``J(-, b)``. Right extensions: ``d: B -> M`` along ``J`` gives
``r: A -> M`` and ``eps: J => 1_M`` over ``(r, d)``; ``r(a)`` is the limit of
``d`` weighted by the row ``J(a, -)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ._order import thaw
from .errors import IllComposed, NoUniversalObject, NotAKanExtension
from .fincat import (CatFunctor, FinCategory, SetFunctor, category_of_elements, colimit_or_limit,
                     compose_functors, identity_functor, iter_functors, object_functor, terminal,
                     verify_universal_cone)
from .prof import (Cell, Profunctor, ProbeBound, column_weight, composite, induced_cell,
                   is_opcartesian, iter_cells, iter_profunctors, restrict, row_weight, unit_prof,
                   validate_cell, vertical_compose, weight_profunctor)

Weight = SetFunctor


# ---------------------------------------------------------------------------
# Weighted (co)limits
# ---------------------------------------------------------------------------


@dataclass
class WeightedResult:
    apex: object
    cell: Cell
    legs: dict  # (a, u) -> morphism of M
    certificate: list

    def __iter__(self):
        yield self.apex
        yield self.cell
        yield self.certificate


def _as_weight(W, direction: str) -> SetFunctor:
    if isinstance(W, SetFunctor):
        return W
    if isinstance(W, Profunctor):
        if direction == "colimit" and len(W.tgt.objects) == 1:
            return column_weight(W, W.tgt.objects[0])
        if direction == "limit" and len(W.src.objects) == 1:
            return row_weight(W, W.src.objects[0])
    raise IllComposed("weight must be a set-valued functor or a profunctor with a terminal side")


def weight_diagram(W: SetFunctor, d: CatFunctor) -> CatFunctor:
    El, proj = category_of_elements(W)
    return compose_functors(d, proj)


def weighted_colimit(W, d: CatFunctor, direction: str = "colimit") -> WeightedResult:
    """Weighted colimit (contravariant weight on ``dom d``) or limit (covariant weight).

    The defining cell goes from the weight, as a profunctor with one
    terminal side, into ``1_M``.
    """
    W = _as_weight(W, direction)
    if W.base != d.src:
        raise IllComposed("weight and diagram live over different categories")
    if direction == "colimit" and W.variance != "contravariant":
        raise IllComposed("colimits are weighted by contravariant weights")
    if direction == "limit" and W.variance != "covariant":
        raise IllComposed("limits are weighted by covariant weights")
    D = weight_diagram(W, d)
    cone = colimit_or_limit(D, direction)
    M = d.tgt
    P = weight_profunctor(W)
    one = P.tgt if direction == "colimit" else P.src
    (o,) = one.objects
    apex_f = object_functor(M, cone.apex, one)
    if direction == "colimit":
        comps = {(a, o): {u: cone.legs[(a, u)] for u in W.elements(a)} for a in d.src.objects}
        cell = Cell(P, unit_prof(M), d, apex_f, comps, name="colim")
    else:
        comps = {(o, b): {u: cone.legs[(b, u)] for u in W.elements(b)} for b in d.src.objects}
        cell = Cell(P, unit_prof(M), apex_f, d, comps, name="lim")
    return WeightedResult(cone.apex, cell, dict(cone.legs), cone.certificate)


# ---------------------------------------------------------------------------
# Kan extensions
# ---------------------------------------------------------------------------


@dataclass
class KanCertificate:
    direction: str
    d: CatFunctor
    J: Profunctor
    result: CatFunctor
    cell: Cell
    pointwise: bool
    probe_log: list = field(default_factory=list)
    valid: bool = True

    @property
    def unit_or_counit(self) -> Cell:
        return self.cell

    @property
    def M(self) -> FinCategory:
        return self.d.tgt

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "result": self.result.to_json(),
            "cell": self.cell.to_json(),
            "pointwise": self.pointwise,
            "valid": self.valid,
            "probe_log": self.probe_log,
        }


def _factor_cocone(M: FinCategory, apex, legs: Mapping, target, other: Mapping):
    hs = [h for h in M.hom(apex, target) if all(M.compose(h, legs[i]) == other[i] for i in legs)]
    return hs


def _factor_cone(M: FinCategory, apex, legs: Mapping, source, other: Mapping):
    return [h for h in M.hom(source, apex) if all(M.compose(legs[i], h) == other[i] for i in legs)]


def kan_extend(d: CatFunctor, J: Profunctor, direction: str = "left") -> KanCertificate:
    """Pointwise Kan extension computed object by object as a weighted (co)limit."""
    M = d.tgt
    if direction == "left":
        if d.src != J.src:
            raise IllComposed("d must start at the source of J")
        B = J.tgt
        apex, legs = {}, {}
        log = []
        for b in B.objects:
            try:
                res = weighted_colimit(column_weight(J, b), d, "colimit")
            except NoUniversalObject as exc:
                raise NoUniversalObject(f"no weighted colimit at object {b!r}") from exc
            apex[b], legs[b] = res.apex, res.legs
            log.append({"object": thaw(b), "apex": thaw(res.apex), "competitors": len(res.certificate)})
        on_m = {}
        for q in B.morphisms:
            b, b1 = B.src(q), B.tgt(q)
            other = {(a, u): legs[b1][(a, J.ract(a, q, u))] for (a, u) in legs[b]}
            hs = _factor_cocone(M, apex[b], legs[b], apex[b1], other)
            if len(hs) != 1:
                raise NotAKanExtension(f"action of {q!r} does not factor uniquely", q)
            on_m[q] = hs[0]
        l = CatFunctor(B, M, apex, on_m, name="Lan")
        comps = {(a, b): {u: legs[b][(a, u)] for u in J.elements(a, b)} for a, b in J.pairs()}
        eta = Cell(J, unit_prof(M), d, l, comps, name="eta")
        return KanCertificate("left", d, J, l, eta, True, log)
    if direction == "right":
        if d.src != J.tgt:
            raise IllComposed("d must start at the target of J")
        A = J.src
        apex, legs = {}, {}
        log = []
        for a in A.objects:
            try:
                res = weighted_colimit(row_weight(J, a), d, "limit")
            except NoUniversalObject as exc:
                raise NoUniversalObject(f"no weighted limit at object {a!r}") from exc
            apex[a], legs[a] = res.apex, res.legs
            log.append({"object": thaw(a), "apex": thaw(res.apex), "competitors": len(res.certificate)})
        on_m = {}
        for p in A.morphisms:
            a1, a = A.src(p), A.tgt(p)
            other = {(b, u): legs[a1][(b, J.lact(p, b, u))] for (b, u) in legs[a]}
            hs = _factor_cone(M, apex[a], legs[a], apex[a1], other)
            if len(hs) != 1:
                raise NotAKanExtension(f"action of {p!r} does not factor uniquely", p)
            on_m[p] = hs[0]
        r = CatFunctor(A, M, apex, on_m, name="Ran")
        comps = {(a, b): {u: legs[a][(b, u)] for u in J.elements(a, b)} for a, b in J.pairs()}
        eps = Cell(J, unit_prof(M), r, d, comps, name="eps")
        return KanCertificate("right", d, J, r, eps, True, log)
    raise ValueError(f"unknown direction {direction!r}")


def kan_value_by_search(d: CatFunctor, J: Profunctor, x, direction: str = "left") -> list:
    """Objects of ``M`` admitting a universal cell out of the column (row) of ``J`` at ``x``.

    Independent of the category-of-elements route: it enumerates cells of
    profunctors directly and tests the factorization property of the weighted
    (co)limit definition against every competing cell.
    """
    M = d.tgt
    UM = unit_prof(M)
    one = terminal()
    (o,) = one.objects
    if direction == "left":
        R, _ = restrict(J, identity_functor(J.src), object_functor(J.tgt, x, one))
        cand = {m: [c for c in iter_cells(R, UM, d, object_functor(M, m, one))] for m in M.objects}
    else:
        R, _ = restrict(J, object_functor(J.src, x, one), identity_functor(J.tgt))
        cand = {m: [c for c in iter_cells(R, UM, object_functor(M, m, one), d)] for m in M.objects}
    found = []
    for m, cells in cand.items():
        for c in cells:
            ok = True
            for m2, cells2 in cand.items():
                for c2 in cells2:
                    if direction == "left":
                        n = sum(1 for h in M.hom(m, m2)
                                if all(M.compose(h, c(a, o, u)) == c2(a, o, u) for a, _, u in R.all_elements()))
                    else:
                        n = sum(1 for h in M.hom(m2, m)
                                if all(M.compose(c(o, b, u), h) == c2(o, b, u) for _, b, u in R.all_elements()))
                    if n != 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append(m)
                break
    return found


# ---------------------------------------------------------------------------
# Pasting and factorization
# ---------------------------------------------------------------------------


def paste_with_unit(eta: Cell, phi_prime: Cell, P: Profunctor | None = None) -> Cell:
    """``eta . phi'``: ``J . H => 1_M`` sending ``[b, u, h]`` to ``phi'(h) . eta(u)``."""
    J, H = eta.hsrc, phi_prime.hsrc
    M = eta.htgt.src
    P = P or composite(J, H)
    return induced_cell(P, unit_prof(M), eta.f, phi_prime.g,
                        lambda a, c, x: M.compose(phi_prime(x[0], c, x[2]), eta(a, x[0], x[1])))


def paste_with_counit(phi_prime: Cell, eps: Cell, P: Profunctor | None = None) -> Cell:
    """``phi' . eps``: ``H . J => 1_M`` sending ``[a, h, u]`` to ``eps(u) . phi'(h)``."""
    H, J = phi_prime.hsrc, eps.hsrc
    M = eps.htgt.src
    P = P or composite(H, J)
    return induced_cell(P, unit_prof(M), phi_prime.f, eps.g,
                        lambda c, b, x: M.compose(eps(x[0], b, x[2]), phi_prime(c, x[0], x[1])))


def _split_source(cert: KanCertificate, phi: Cell):
    """Return ``(P, H, ordinary)`` for a test cell."""
    J = cert.J
    src = phi.hsrc
    factors = getattr(src, "factors", None)
    if cert.direction == "left" and factors is not None and factors[0] == J:
        return src, factors[1], False
    if cert.direction == "right" and factors is not None and factors[1] == J:
        return src, factors[0], False
    if src == J:
        B = J.tgt if cert.direction == "left" else J.src
        return None, unit_prof(B), True
    raise IllComposed("test cell does not have the shape J . H (or H . J)")


def factor_through_kan(cert: KanCertificate, phi: Cell) -> Cell:
    """The unique ``phi'`` with ``phi = eta . phi'`` (left) or ``phi = phi' . eps`` (right).

    Accepts a test cell out of ``J . H`` (resp. ``H . J``) for the pointwise
    property, or out of ``J`` itself, in which case ``H`` is the unit and
    ``phi'`` is a cell ``1_B => 1_M`` encoding a natural transformation.
    """
    M = cert.M
    J = cert.J
    P, H, ordinary = _split_source(cert, phi)
    cands: dict = {}
    if cert.direction == "left":
        l, eta = cert.result, cert.cell
        k = phi.g
        if phi.f != cert.d:
            raise IllComposed("test cell must lie over d on the left")
        for b, c, h in H.all_elements():
            gens = [(a, u) for a in J.src.objects for u in J.elements(a, b)]
            if ordinary:
                want = {(a, u): phi(a, c, J.ract(a, h, u)) for a, u in gens}
            else:
                want = {(a, u): phi(a, c, P.presentation.cls(a, c, (b, u, h))) for a, u in gens}
            cands[(b, c, h)] = [m for m in M.hom(l.ob(b), k.ob(c))
                                if all(M.compose(m, eta(a, b, u)) == want[(a, u)] for a, u in gens)]
        sols = list(iter_cells(H, unit_prof(M), l, k, candidates=cands, limit=2))
    else:
        r, eps = cert.result, cert.cell
        k = phi.f
        if phi.g != cert.d:
            raise IllComposed("test cell must lie over d on the right")
        for c, a, h in H.all_elements():
            gens = [(b, u) for b in J.tgt.objects for u in J.elements(a, b)]
            if ordinary:
                want = {(b, u): phi(c, b, J.lact(h, b, u)) for b, u in gens}
            else:
                want = {(b, u): phi(c, b, P.presentation.cls(c, b, (a, h, u))) for b, u in gens}
            cands[(c, a, h)] = [m for m in M.hom(k.ob(c), r.ob(a))
                                if all(M.compose(eps(a, b, u), m) == want[(b, u)] for b, u in gens)]
        sols = list(iter_cells(H, unit_prof(M), k, r, candidates=cands, limit=2))
    if len(sols) != 1:
        cert.valid = False
        raise NotAKanExtension(f"{len(sols)} factorizations", thaw(phi.key()))
    out = sols[0]
    # re-verify by recomposition
    if ordinary:
        if cert.direction == "left":
            back = {(a, b): {u: M.compose(out(b, b, J.tgt.identity(b)), cert.cell(a, b, u))
                             for u in J.elements(a, b)} for a, b in J.pairs()}
        else:
            back = {(a, b): {u: M.compose(cert.cell(a, b, u), out(a, a, J.src.identity(a)))
                             for u in J.elements(a, b)} for a, b in J.pairs()}
        same = all(back[(a, b)][u] == phi(a, b, u) for a, b, u in J.all_elements())
    else:
        re = paste_with_unit(cert.cell, out, P) if cert.direction == "left" else paste_with_counit(out, cert.cell, P)
        same = re.key() == phi.key()
    if not same:
        cert.valid = False
        raise NotAKanExtension("recomposition differs from the test cell", thaw(phi.key()))
    return out


def transformation_of(cell: Cell) -> dict:
    """Components ``sigma_b`` of a cell ``1_B => 1_M`` over ``(l, k)``."""
    B = cell.hsrc.src
    return {b: cell(b, b, B.identity(b)) for b in B.objects}


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


def defines_kan(cell: Cell, direction: str, pointwise: bool = True) -> tuple[bool, dict | None]:
    """Does ``cell`` define its boundary functor as a (pointwise) Kan extension?

    The pointwise test is per object: the restricted cell must be a universal
    (co)cone over the category of elements. The ordinary test enumerates
    every competing cell and every candidate transformation.
    """
    J = cell.hsrc
    if pointwise:
        if direction == "left":
            d, l = cell.f, cell.g
            for b in J.tgt.objects:
                W = column_weight(J, b)
                D = weight_diagram(W, d)
                legs = {(a, u): cell(a, b, u) for a in J.src.objects for u in J.elements(a, b)}
                rep = verify_universal_cone(D, l.ob(b), legs, "colimit")
                if not rep.ok:
                    return False, {"object": thaw(b), "law": rep.violations[0].law}
        else:
            r, d = cell.f, cell.g
            for a in J.src.objects:
                W = row_weight(J, a)
                D = weight_diagram(W, d)
                legs = {(b, u): cell(a, b, u) for b in J.tgt.objects for u in J.elements(a, b)}
                rep = verify_universal_cone(D, r.ob(a), legs, "limit")
                if not rep.ok:
                    return False, {"object": thaw(a), "law": rep.violations[0].law}
        return True, None
    res = _ordinary_check(cell, direction)
    return res["ok"], res.get("witness")


def _ordinary_check(cell: Cell, direction: str, max_functors: int | None = None) -> dict:
    J = cell.hsrc
    M = cell.htgt.src
    UM = cell.htgt
    checked = 0
    if direction == "left":
        d, l = cell.f, cell.g
        B = J.tgt
        for k in iter_functors(B, M, limit=max_functors):
            for phi in iter_cells(J, UM, d, k):
                checked += 1
                per = {}
                for b in B.objects:
                    gens = [(a, u) for a in J.src.objects for u in J.elements(a, b)]
                    per[b] = [m for m in M.hom(l.ob(b), k.ob(b))
                              if all(M.compose(m, cell(a, b, u)) == phi(a, b, u) for a, u in gens)]
                n = _count_natural(B, M, l, k, per)
                if n != 1:
                    return {"ok": False, "checked": checked,
                            "witness": {"k": k.to_json(), "cell": thaw(phi.key()), "factorizations": n}}
    else:
        r, d = cell.f, cell.g
        A = J.src
        for k in iter_functors(A, M, limit=max_functors):
            for phi in iter_cells(J, UM, k, d):
                checked += 1
                per = {}
                for a in A.objects:
                    gens = [(b, u) for b in J.tgt.objects for u in J.elements(a, b)]
                    per[a] = [m for m in M.hom(k.ob(a), r.ob(a))
                              if all(M.compose(cell(a, b, u), m) == phi(a, b, u) for b, u in gens)]
                n = _count_natural(A, M, k, r, per)
                if n != 1:
                    return {"ok": False, "checked": checked,
                            "witness": {"k": k.to_json(), "cell": thaw(phi.key()), "factorizations": n}}
    return {"ok": True, "checked": checked}


def _count_natural(B: FinCategory, M: FinCategory, F: CatFunctor, G: CatFunctor, per: Mapping) -> int:
    objs = list(B.objects)
    n = 0
    for choice in itertools.product(*(per[b] for b in objs)):
        s = dict(zip(objs, choice))
        if all(M.compose(s[B.tgt(q)], F.mor(q)) == M.compose(G.mor(q), s[B.src(q)]) for q in B.morphisms):
            n += 1
            if n > 1:
                break
    return n


def _pointwise_def_probes(cert: KanCertificate, max_elements: int) -> dict:
    """Factor every cell ``J . H => 1_M`` for weights ``H: B -|-> 1`` (left) or ``H: 1 -|-> A`` (right)."""
    J, M = cert.J, cert.M
    one = terminal()
    UM = unit_prof(M)
    count = 0
    weights = 0
    if cert.direction == "left":
        Hs = iter_profunctors(J.tgt, one, max_elements)
    else:
        Hs = iter_profunctors(one, J.src, max_elements)
    for H in Hs:
        weights += 1
        P = composite(J, H) if cert.direction == "left" else composite(H, J)
        for m in M.objects:
            k = object_functor(M, m, one)
            cells = iter_cells(P, UM, cert.d, k) if cert.direction == "left" else iter_cells(P, UM, k, cert.d)
            for phi in cells:
                count += 1
                try:
                    factor_through_kan(cert, phi)
                except NotAKanExtension as exc:
                    return {"ok": False, "weights": weights, "cells": count,
                            "witness": {"weight_size": H.size(), "apex": thaw(m), "detail": str(exc)}}
    return {"ok": True, "weights": weights, "cells": count}


def check_kan(cert: KanCertificate, probe_bound: ProbeBound | None = None,
              restrictions: Sequence[CatFunctor] = (), def_probes: bool = True) -> dict:
    """Three layers: ordinary universal property, pointwise property, and restrictions.

    ``restrictions`` are functors ``f`` into the side that ``J`` is restricted
    along (target ``B`` for left extensions, source ``A`` for right ones); for
    each, the restricted cell is checked to define the composite as an
    ordinary and as a pointwise Kan extension, and the two verdicts are
    compared with the pointwise verdict of ``cert``.
    """
    bound = probe_bound or ProbeBound()
    rep: dict = {"direction": cert.direction, "bound": bound.to_json()}
    v = validate_cell(cert.cell)
    rep["cell_valid"] = v.ok
    rep["ordinary"] = _ordinary_check(cert.cell, cert.direction)
    ok, wit = defines_kan(cert.cell, cert.direction, pointwise=True)
    point = {"ok": ok, "objects": len(cert.result.src.objects)}
    if wit:
        point["witness"] = wit
    if def_probes and ok:
        point["definition_probes"] = _pointwise_def_probes(cert, bound.max_elements)
        point["ok"] = point["definition_probes"]["ok"]
    rep["pointwise"] = point
    rlog = []
    for f in restrictions:
        if cert.direction == "left":
            R, cart = restrict(cert.J, identity_functor(cert.J.src), f)
        else:
            R, cart = restrict(cert.J, f, identity_functor(cert.J.tgt))
        c = vertical_compose(cart, cert.cell)
        pw, _ = defines_kan(c, cert.direction, pointwise=True)
        od, _ = defines_kan(c, cert.direction, pointwise=False)
        rlog.append({"pointwise": pw, "ordinary": od, "agrees": pw == od == point["ok"]})
    rep["restrictions"] = {"ok": all(x["agrees"] for x in rlog), "checked": rlog}
    rep["ok"] = bool(v.ok and rep["ordinary"]["ok"] and rep["pointwise"]["ok"] and rep["restrictions"]["ok"])
    cert.probe_log = cert.probe_log + [{"check": {k: rep[k]["ok"] for k in ("ordinary", "pointwise", "restrictions")}}]
    if not rep["ok"]:
        cert.valid = False
    return rep


# ---------------------------------------------------------------------------
# Exactness
# ---------------------------------------------------------------------------


@dataclass
class ExactnessVerdict:
    mode: str
    verdict: bool
    witness: dict | None
    criteria: dict

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {"mode": self.mode, "verdict": self.verdict, "witness": self.witness, "criteria": self.criteria}


def phi_star(phi: Cell, side: str = "right") -> Cell:
    """The comparison whose invertibility makes ``phi`` pointwise exact.

    ``right``: ``J . g_* => K(f, id)``, ``[u, q] -> rho_q(phi u)``.
    ``left``: ``f^* . J => K(id, g)``, ``[p, u] -> lambda_p(phi u)``.
    """
    from .prof import companion, conjoint

    J, K, f, g = phi.hsrc, phi.htgt, phi.f, phi.g
    if side == "right":
        P = composite(J, companion(g))
        R, _ = restrict(K, f, identity_functor(K.tgt))
        return induced_cell(P, R, identity_functor(J.src), identity_functor(K.tgt),
                            lambda a, d, x: K.ract(f.ob(a), x[2], phi(a, x[0], x[1])))
    if side == "left":
        P = composite(conjoint(f), J)
        R, _ = restrict(K, identity_functor(K.src), g)
        return induced_cell(P, R, identity_functor(K.src), identity_functor(J.tgt),
                            lambda c, b, x: K.lact(x[1], g.ob(b), phi(x[0], b, x[2])))
    raise ValueError(side)


def _is_identity_functor(f: CatFunctor) -> bool:
    return f.src == f.tgt and f == identity_functor(f.src)


def cell_exactness(phi: Cell, d: CatFunctor, mode: str = "right_exact", pointwise: bool = True,
                   converse_limit: int | None = None) -> ExactnessVerdict:
    """Decide ``d``-exactness of ``phi: J => K`` over ``(f, g)`` by definition, plus sufficient criteria.

    ``right_exact`` / ``initial`` use ``d: D -> M`` on the right; ``left_exact``
    / ``final`` use ``d: C -> M`` on the left. Initial and final also check the
    converse by enumerating all candidate cells out of ``K``.
    """
    K, f, g = phi.htgt, phi.f, phi.g
    M = d.tgt
    right = mode in ("right_exact", "initial")
    if mode not in ("right_exact", "initial", "left_exact", "final"):
        raise ValueError(f"unknown mode {mode!r}")
    criteria: dict = {}
    side = "right" if right else "left"
    ps = phi_star(phi, side)
    criteria["phi_star_invertible"] = ps.is_bijective()
    if right:
        criteria["opcartesian_identity_left"] = _is_identity_functor(f) and is_opcartesian(phi)
    else:
        criteria["opcartesian_identity_right"] = _is_identity_functor(g) and is_opcartesian(phi)
    if right:
        cert = kan_extend(d, K, "right")
        composite_cell = vertical_compose(phi, cert.cell)
    else:
        cert = kan_extend(d, K, "left")
        composite_cell = vertical_compose(phi, cert.cell)
    ok, wit = defines_kan(composite_cell, side, pointwise)
    witness = None if ok else {"direction": "forward", **(wit or {})}
    verdict = ok
    if ok and mode in ("initial", "final"):
        UM = unit_prof(M)
        checked = 0
        other_side = K.src if right else K.tgt
        for h in iter_functors(other_side, M, limit=converse_limit):
            cells = iter_cells(K, UM, h, d) if right else iter_cells(K, UM, d, h)
            for c in cells:
                checked += 1
                pasted = vertical_compose(phi, c)
                if defines_kan(pasted, side, pointwise)[0] and not defines_kan(c, side, pointwise)[0]:
                    verdict = False
                    witness = {"direction": "converse", "functor": h.to_json(), "cell": thaw(c.key())}
                    break
            if not verdict:
                break
        criteria["converse_checked"] = checked
    return ExactnessVerdict(mode, verdict, witness, criteria)
