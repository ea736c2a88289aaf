"""Set-valued profunctors, their cells, and the equipment structure.

A profunctor ``J: A -|-> B`` has element sets ``J(a, b)``, a left action
``lact(p, b, u)`` for ``p: a' -> a`` sending ``J(a, b) -> J(a', b)``, and a
right action ``ract(a, q, u)`` for ``q: b -> b'`` sending
``J(a, b) -> J(a, b')``. A cell ``J => K`` over functors ``f: A -> C`` and
``g: B -> D`` sends ``J(a, b)`` to ``K(fa, gb)``, commuting with both actions.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from ._csp import CSP
from ._order import ckey, csorted, freeze, thaw
from ._uf import UnionFind
from .errors import (BoundExceeded, CounterexampleFound, IllComposed, StructuralError,
                     WellDefinednessFailure)
from .fincat import (CatFunctor, FinCategory, Report, SetFunctor, compose_functors, discrete,
                     full_subcategory, identity_functor, inclusion_functor, iter_functors,
                     monoid_category, terminal, walking_arrow)


# ---------------------------------------------------------------------------
# Profunctors
# ---------------------------------------------------------------------------


class Profunctor:
    """A finite profunctor with fully tabulated actions."""

    def __init__(self, src: FinCategory, tgt: FinCategory, elements: Mapping,
                 left: Mapping, right: Mapping, name: str = ""):
        self.src = src
        self.tgt = tgt
        self._elems = {}
        for a in src.objects:
            for b in tgt.objects:
                es = elements.get((a, b), ())
                if len(set(es)) != len(es):
                    raise StructuralError(f"duplicate elements at {(a, b)!r}")
                if es:
                    self._elems[(a, b)] = csorted(es)
        for key in elements:
            if not (isinstance(key, tuple) and len(key) == 2 and src.has_object(key[0])
                    and tgt.has_object(key[1])):
                raise StructuralError(f"element key {key!r} does not resolve")
        self._lact = dict(left)
        self._ract = dict(right)
        self.name = name
        self.presentation: QuotientPresentation | None = None
        self._fp = None

    def elements(self, a, b) -> tuple:
        return self._elems.get((a, b), ())

    def pairs(self) -> Iterator[tuple]:
        for a in self.src.objects:
            for b in self.tgt.objects:
                yield a, b

    def all_elements(self) -> Iterator[tuple]:
        for (a, b) in self.pairs():
            for u in self.elements(a, b):
                yield a, b, u

    def size(self) -> int:
        return sum(len(v) for v in self._elems.values())

    def lact(self, p, b, u):
        """``p: a' -> a`` acting ``J(a, b) -> J(a', b)``."""
        if self.src.is_identity(p):
            return u
        return self._lact[(p, b, u)]

    def ract(self, a, q, u):
        """``q: b -> b'`` acting ``J(a, b) -> J(a, b')``."""
        if self.tgt.is_identity(q):
            return u
        return self._ract[(a, q, u)]

    def act(self, p, q, u):
        """``ract(lact(u))`` for ``p: a' -> a`` and ``q: b -> b'``."""
        b = self.tgt.src(q)
        return self.ract(self.src.src(p), q, self.lact(p, b, u))

    def _fingerprint(self):
        if self._fp is None:
            self._fp = (
                tuple((k, self._elems[k]) for k in csorted(self._elems)),
                tuple(sorted(((k, v) for k, v in self._full_left().items()), key=ckey)),
                tuple(sorted(((k, v) for k, v in self._full_right().items()), key=ckey)),
            )
        return self._fp

    def _full_left(self) -> dict:
        A = self.src
        out = {}
        for p in A.morphisms:
            if A.is_identity(p):
                continue
            for b in self.tgt.objects:
                for u in self.elements(A.tgt(p), b):
                    out[(p, b, u)] = self._lact.get((p, b, u))
        return out

    def _full_right(self) -> dict:
        B = self.tgt
        out = {}
        for q in B.morphisms:
            if B.is_identity(q):
                continue
            for a in self.src.objects:
                for u in self.elements(a, B.src(q)):
                    out[(a, q, u)] = self._ract.get((a, q, u))
        return out

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Profunctor):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt and self._fingerprint() == other._fingerprint()

    def __hash__(self) -> int:
        return hash(self._fingerprint())

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Profunctor{label}: {self.size()} elements over {len(self._elems)} pairs>"

    # JSON -------------------------------------------------------------------

    def to_json(self, src_ref=None, tgt_ref=None) -> dict:
        return {
            "src": src_ref if src_ref is not None else self.src.to_json(),
            "tgt": tgt_ref if tgt_ref is not None else self.tgt.to_json(),
            "elements": [[thaw(a), thaw(b), thaw(list(self.elements(a, b)))] for a, b in self.pairs()
                         if self.elements(a, b)],
            "left_action": [{"mor": thaw(p), "obj": thaw(b), "elt": thaw(u), "equals": thaw(v)}
                            for (p, b, u), v in sorted(self._full_left().items(), key=ckey)],
            "right_action": [{"obj": thaw(a), "mor": thaw(q), "elt": thaw(u), "equals": thaw(v)}
                             for (a, q, u), v in sorted(self._full_right().items(), key=ckey)],
        }

    @classmethod
    def from_json(cls, data: Mapping, src: FinCategory, tgt: FinCategory) -> "Profunctor":
        try:
            raw = data["elements"]
            elements: dict = {}
            if isinstance(raw, Mapping):
                for key, es in raw.items():
                    a, b = key.split("|")
                    elements[(freeze(_parse_id(a)), freeze(_parse_id(b)))] = [freeze(e) for e in es]
            else:
                for a, b, es in raw:
                    elements[(freeze(a), freeze(b))] = [freeze(e) for e in es]
            owner = {}
            for (a, b), es in elements.items():
                for e in es:
                    owner.setdefault(e, []).append((a, b))

            def other(entry, side):
                if "obj" in entry:
                    return freeze(entry["obj"])
                places = owner.get(freeze(entry["elt"]), [])
                if len(places) != 1:
                    raise StructuralError(f"element {entry['elt']!r} is ambiguous; give 'obj'")
                return places[0][side]

            left = {(freeze(e["mor"]), other(e, 1), freeze(e["elt"])): freeze(e["equals"])
                    for e in data.get("left_action", [])}
            right = {(other(e, 0), freeze(e["mor"]), freeze(e["elt"])): freeze(e["equals"])
                     for e in data.get("right_action", [])}
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed profunctor data: {exc}") from exc
        return cls(src, tgt, elements, left, right)


def _parse_id(text: str):
    import json

    text = text.strip()
    if text[:1] in "[-0123456789":
        try:
            return json.loads(text)
        except ValueError:
            return text
    return text


def validate_profunctor(J: Profunctor) -> Report:
    rep = Report(subject="profunctor")
    A, B = J.src, J.tgt
    for p in A.morphisms:
        if A.is_identity(p):
            continue
        a1, a = A.src(p), A.tgt(p)
        for b in B.objects:
            for u in J.elements(a, b):
                rep.checked += 1
                if (p, b, u) not in J._lact:
                    raise StructuralError(f"left action of {p!r} on {u!r} missing")
                if J._lact[(p, b, u)] not in J.elements(a1, b):
                    rep.add("left_action_typing", (p, b, u), "image outside J(a', b)")
    for q in B.morphisms:
        if B.is_identity(q):
            continue
        b, b1 = B.src(q), B.tgt(q)
        for a in A.objects:
            for u in J.elements(a, b):
                rep.checked += 1
                if (a, q, u) not in J._ract:
                    raise StructuralError(f"right action of {q!r} on {u!r} missing")
                if J._ract[(a, q, u)] not in J.elements(a, b1):
                    rep.add("right_action_typing", (a, q, u), "image outside J(a, b')")
    if not rep.ok:
        return rep
    for f, g in A.composable_pairs():
        h = A.compose(g, f)
        for b in B.objects:
            for u in J.elements(A.tgt(g), b):
                rep.checked += 1
                if J.lact(h, b, u) != J.lact(f, b, J.lact(g, b, u)):
                    rep.add("left_action_composition", (f, g, b, u), "lambda_{g.f} != lambda_f lambda_g")
    for f, g in B.composable_pairs():
        h = B.compose(g, f)
        for a in A.objects:
            for u in J.elements(a, B.src(f)):
                rep.checked += 1
                if J.ract(a, h, u) != J.ract(a, g, J.ract(a, f, u)):
                    rep.add("right_action_composition", (a, f, g, u), "rho_{g.f} != rho_g rho_f")
    for p in A.morphisms:
        a1, a = A.src(p), A.tgt(p)
        for q in B.morphisms:
            b, b1 = B.src(q), B.tgt(q)
            for u in J.elements(a, b):
                rep.checked += 1
                if J.ract(a1, q, J.lact(p, b, u)) != J.lact(p, b1, J.ract(a, q, u)):
                    rep.add("actions_commute", (p, q, u), "rho_q lambda_p != lambda_p rho_q")
    return rep


# ---------------------------------------------------------------------------
# Constructions of profunctors
# ---------------------------------------------------------------------------


def unit_prof(A: FinCategory) -> Profunctor:
    """``1_A(a, a') = A(a, a')`` with actions given by composition."""

    def build():
        elems = {(a, b): A.hom(a, b) for a in A.objects for b in A.objects if A.hom(a, b)}
        left, right = {}, {}
        for p in A.morphisms:
            for b in A.objects:
                for u in A.hom(A.tgt(p), b):
                    left[(p, b, u)] = A.compose(u, p)
            for a in A.objects:
                for u in A.hom(a, A.src(p)):
                    right[(a, p, u)] = A.compose(p, u)
        return Profunctor(A, A, elems, left, right, name="1")

    return A.memo("unit_prof", build)


@dataclass
class QuotientPresentation:
    """Generators, classes and canonical representatives of a composite."""

    generators: dict  # (a, c) -> list of (b, u, v)
    classes: dict  # (a, c) -> {rep: [members]}
    _find: dict = field(default_factory=dict)  # (a, c, gen) -> rep

    def cls(self, a, c, gen):
        return self._find[(a, c, gen)]

    def to_json(self) -> dict:
        return {
            "classes": [
                {"pair": [thaw(a), thaw(c)], "rep": thaw(r), "members": thaw(ms)}
                for (a, c) in csorted(self.classes)
                for r, ms in sorted(self.classes[(a, c)].items(), key=lambda kv: ckey(kv[0]))
            ]
        }


def compose_prof(J: Profunctor, H: Profunctor) -> tuple[Profunctor, QuotientPresentation]:
    """Composite ``J . H: A -|-> C`` as a coequalizer of pairs ``(u, v)``.

    ``(b', ract(q, u), v) ~ (b, u, lact(q, v))`` for every ``q: b -> b'``; the
    class of each pair is named by its canonical least member.
    """
    if J.tgt != H.src:
        raise IllComposed("middle categories differ")
    A, B, C = J.src, J.tgt, H.tgt
    gens: dict = {}
    classes: dict = {}
    find: dict = {}
    for a in A.objects:
        for c in C.objects:
            gs = [(b, u, v) for b in B.objects for u in J.elements(a, b) for v in H.elements(b, c)]
            if not gs:
                continue
            uf = UnionFind(gs)
            for q in B.morphisms:
                if B.is_identity(q):
                    continue
                b, b1 = B.src(q), B.tgt(q)
                for u in J.elements(a, b):
                    for v in H.elements(b1, c):
                        uf.union((b1, J.ract(a, q, u), v), (b, u, H.lact(q, c, v)))
            cl = uf.classes()
            gens[(a, c)] = gs
            classes[(a, c)] = cl
            for r, ms in cl.items():
                for m in ms:
                    find[(a, c, m)] = r
    Q = QuotientPresentation(gens, classes, find)
    elems = {k: list(v) for k, v in classes.items()}
    left, right = {}, {}
    for p in A.morphisms:
        if A.is_identity(p):
            continue
        a1, a = A.src(p), A.tgt(p)
        for c in C.objects:
            for r, ms in classes.get((a, c), {}).items():
                images = {find[(a1, c, (b, J.lact(p, b, u), v))] for (b, u, v) in ms}
                if len(images) != 1:
                    raise WellDefinednessFailure(f"left action of {p!r} on class {r!r}")
                left[(p, c, r)] = images.pop()
    for s in C.morphisms:
        if C.is_identity(s):
            continue
        c, c1 = C.src(s), C.tgt(s)
        for a in A.objects:
            for r, ms in classes.get((a, c), {}).items():
                images = {find[(a, c1, (b, u, H.ract(b, s, v)))] for (b, u, v) in ms}
                if len(images) != 1:
                    raise WellDefinednessFailure(f"right action of {s!r} on class {r!r}")
                right[(a, s, r)] = images.pop()
    P = Profunctor(A, C, elems, left, right, name=f"({J.name}.{H.name})")
    P.presentation = Q
    P.factors = (J, H)
    return P, Q


def composite(J: Profunctor, H: Profunctor) -> Profunctor:
    return compose_prof(J, H)[0]


def restrict(K: Profunctor, f: CatFunctor, g: CatFunctor) -> tuple[Profunctor, "Cell"]:
    """Restriction ``K(f, g)`` and its cartesian cell ``K(f, g) => K``."""
    if f.tgt != K.src or g.tgt != K.tgt:
        raise IllComposed("restriction functors do not land in K's boundary")
    A, B = f.src, g.src
    elems = {(a, b): K.elements(f.ob(a), g.ob(b)) for a in A.objects for b in B.objects}
    left, right = {}, {}
    for p in A.morphisms:
        if A.is_identity(p):
            continue
        for b in B.objects:
            for u in K.elements(f.ob(A.tgt(p)), g.ob(b)):
                left[(p, b, u)] = K.lact(f.mor(p), g.ob(b), u)
    for q in B.morphisms:
        if B.is_identity(q):
            continue
        for a in A.objects:
            for u in K.elements(f.ob(a), g.ob(B.src(q))):
                right[(a, q, u)] = K.ract(f.ob(a), g.mor(q), u)
    R = Profunctor(A, B, elems, left, right, name=f"{K.name}({f.name},{g.name})")
    comps = {(a, b): {u: u for u in R.elements(a, b)} for a, b in R.pairs()}
    return R, Cell(R, K, f, g, comps)


def column_weight(J: Profunctor, b) -> SetFunctor:
    """``J(-, b)`` as a contravariant set-valued functor on the source."""
    A = J.src
    sets = {a: J.elements(a, b) for a in A.objects}
    action = {(p, u): J.lact(p, b, u) for p in A.morphisms for u in J.elements(A.tgt(p), b)}
    return SetFunctor(A, "contravariant", sets, action)


def row_weight(J: Profunctor, a) -> SetFunctor:
    """``J(a, -)`` as a covariant set-valued functor on the target."""
    B = J.tgt
    sets = {b: J.elements(a, b) for b in B.objects}
    action = {(q, u): J.ract(a, q, u) for q in B.morphisms for u in J.elements(a, B.src(q))}
    return SetFunctor(B, "covariant", sets, action)


def weight_profunctor(W: SetFunctor, one: FinCategory | None = None) -> Profunctor:
    """A contravariant weight on ``A`` as ``A -|-> 1``; a covariant one as ``1 -|-> B``."""
    one = one or terminal()
    (o,) = one.objects
    A = W.base
    if W.variance == "contravariant":
        elems = {(a, o): W.elements(a) for a in A.objects}
        left = {(p, o, u): W.act(p, u) for p in A.morphisms if not A.is_identity(p)
                for u in W.elements(A.tgt(p))}
        return Profunctor(A, one, elems, left, {}, name="W")
    elems = {(o, b): W.elements(b) for b in A.objects}
    right = {(o, q, u): W.act(q, u) for q in A.morphisms if not A.is_identity(q)
             for u in W.elements(A.src(q))}
    return Profunctor(one, A, elems, {}, right, name="W")


# ---------------------------------------------------------------------------
# Cells
# ---------------------------------------------------------------------------


class Cell:
    """A cell ``J => K`` over ``f`` (left) and ``g`` (right)."""

    def __init__(self, hsrc: Profunctor, htgt: Profunctor, f: CatFunctor, g: CatFunctor,
                 components: Mapping, name: str = ""):
        self.hsrc = hsrc
        self.htgt = htgt
        self.f = f
        self.g = g
        self.components = {k: dict(v) for k, v in components.items()}
        self.name = name

    @property
    def vsrc(self) -> CatFunctor:
        return self.f

    @property
    def vtgt(self) -> CatFunctor:
        return self.g

    def __call__(self, a, b, u):
        return self.components[(a, b)][u]

    def key(self) -> tuple:
        J = self.hsrc
        return tuple(self.components[(a, b)][u] for a, b, u in J.all_elements())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cell):
            return NotImplemented
        return (self.hsrc == other.hsrc and self.htgt == other.htgt and self.f == other.f
                and self.g == other.g and self.key() == other.key())

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"<Cell {self.name or 'phi'}: {self.hsrc!r} => {self.htgt!r}>"

    def is_bijective(self) -> bool:
        J, K = self.hsrc, self.htgt
        for a, b in J.pairs():
            tgt = K.elements(self.f.ob(a), self.g.ob(b))
            imgs = [self.components.get((a, b), {}).get(u) for u in J.elements(a, b)]
            if len(set(imgs)) != len(imgs) or set(imgs) != set(tgt):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "components": [[thaw(a), thaw(b), [[thaw(u), thaw(self.components[(a, b)][u])]
                                               for u in self.hsrc.elements(a, b)]]
                           for a, b in self.hsrc.pairs() if self.hsrc.elements(a, b)],
        }

    @classmethod
    def from_json(cls, data: Mapping, J: Profunctor, K: Profunctor, f: CatFunctor, g: CatFunctor) -> "Cell":
        try:
            raw = data["components"]
            comps: dict = {}
            if isinstance(raw, Mapping):
                for key, m in raw.items():
                    a, b = key.split("|")
                    comps[(freeze(_parse_id(a)), freeze(_parse_id(b)))] = {
                        freeze(_parse_id(u)) if isinstance(u, str) and u[:1] == "[" else u: freeze(v)
                        for u, v in m.items()}
            else:
                for a, b, m in raw:
                    comps[(freeze(a), freeze(b))] = {freeze(u): freeze(v) for u, v in m}
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed cell data: {exc}") from exc
        return cls(J, K, f, g, comps)


def validate_cell(phi: Cell) -> Report:
    rep = Report(subject="cell")
    J, K, f, g = phi.hsrc, phi.htgt, phi.f, phi.g
    if f.src != J.src or g.src != J.tgt or f.tgt != K.src or g.tgt != K.tgt:
        rep.add("boundary", ("f", "g"), "vertical functors do not match the horizontal boundaries")
        return rep
    for a, b, u in J.all_elements():
        if (a, b) not in phi.components or u not in phi.components[(a, b)]:
            raise StructuralError(f"cell component at {(a, b, u)!r} missing")
        if phi(a, b, u) not in K.elements(f.ob(a), g.ob(b)):
            rep.add("component_typing", (a, b, u), "image outside K(fa, gb)")
    if not rep.ok:
        return rep
    A, B = J.src, J.tgt
    for p in A.morphisms:
        a1, a = A.src(p), A.tgt(p)
        for b in B.objects:
            for u in J.elements(a, b):
                rep.checked += 1
                if phi(a1, b, J.lact(p, b, u)) != K.lact(f.mor(p), g.ob(b), phi(a, b, u)):
                    rep.add("left_equivariance", (p, b, u), "phi(lambda_p u) != lambda_fp phi(u)")
    for q in B.morphisms:
        b, b1 = B.src(q), B.tgt(q)
        for a in A.objects:
            for u in J.elements(a, b):
                rep.checked += 1
                if phi(a, b1, J.ract(a, q, u)) != K.ract(f.ob(a), g.mor(q), phi(a, b, u)):
                    rep.add("right_equivariance", (a, q, u), "phi(rho_q u) != rho_gq phi(u)")
    return rep


def identity_cell(J: Profunctor) -> Cell:
    return Cell(J, J, identity_functor(J.src), identity_functor(J.tgt),
                {(a, b): {u: u for u in J.elements(a, b)} for a, b in J.pairs()}, name="id")


def functor_cell(f: CatFunctor) -> Cell:
    """The vertical identity cell ``1_f: 1_A => 1_C`` given by ``f`` on homs."""
    A = f.src
    U, V = unit_prof(A), unit_prof(f.tgt)
    return Cell(U, V, f, f, {(a, b): {p: f.mor(p) for p in A.hom(a, b)} for a, b in U.pairs()},
                name=f"1_{f.name}")


def transformation_cell(sigma) -> Cell:
    """A natural transformation ``F => G`` as a cell ``1_A => 1_C`` over ``(F, G)``."""
    F, G = sigma.src, sigma.tgt
    A, C = F.src, F.tgt
    U, V = unit_prof(A), unit_prof(C)
    comps = {(a, b): {p: C.compose(G.mor(p), sigma.components[a]) for p in A.hom(a, b)}
             for a, b in U.pairs()}
    return Cell(U, V, F, G, comps, name="nat")


def vertical_compose(phi: Cell, psi: Cell) -> Cell:
    """``psi . phi``: first ``phi: J => K``, then ``psi: K => L``."""
    if phi.htgt != psi.hsrc:
        raise IllComposed("target of the first cell is not the source of the second")
    f = compose_functors(psi.f, phi.f)
    g = compose_functors(psi.g, phi.g)
    comps = {}
    for a, b in phi.hsrc.pairs():
        fa, gb = phi.f.ob(a), phi.g.ob(b)
        comps[(a, b)] = {u: psi(fa, gb, phi(a, b, u)) for u in phi.hsrc.elements(a, b)}
    return Cell(phi.hsrc, psi.htgt, f, g, comps)


def induced_cell(P: Profunctor, K: Profunctor, f: CatFunctor, g: CatFunctor, gen_map) -> Cell:
    """Cell out of a composite ``P = J . H`` determined on generators.

    ``gen_map(a, c, (b, u, v))`` gives the image of the pair's class; every
    member of a class must agree, otherwise :class:`WellDefinednessFailure`.
    """
    Q = P.presentation
    if Q is None:
        raise IllComposed("source is not a computed composite")
    comps: dict = {}
    for (a, c), cl in Q.classes.items():
        m: dict = {}
        for r, members in cl.items():
            imgs = {gen_map(a, c, x) for x in members}
            if len(imgs) != 1:
                raise WellDefinednessFailure(f"class {r!r} at {(a, c)!r} has images {imgs!r}")
            m[r] = imgs.pop()
        comps[(a, c)] = m
    for a, c in P.pairs():
        comps.setdefault((a, c), {})
    return Cell(P, K, f, g, comps)


def horizontal_compose(phi: Cell, psi: Cell, src_composite: Profunctor | None = None,
                       tgt_composite: Profunctor | None = None) -> Cell:
    """``phi . psi: J . H => K . L`` over ``(f, h)`` for ``phi`` over ``(f, g)`` and ``psi`` over ``(g, h)``."""
    if phi.g != psi.f or phi.hsrc.tgt != psi.hsrc.src or phi.htgt.tgt != psi.htgt.src:
        raise IllComposed("shared vertical boundary differs")
    P = src_composite or composite(phi.hsrc, psi.hsrc)
    R = tgt_composite or composite(phi.htgt, psi.htgt)
    g = phi.g

    def gm(a, c, x):
        b, u, v = x
        fa, hc, gb = phi.f.ob(a), psi.g.ob(c), g.ob(b)
        return R.presentation.cls(fa, hc, (gb, phi(a, b, u), psi(b, c, v)))

    return induced_cell(P, R, phi.f, psi.g, gm)


def compose_cells(phi: Cell, psi: Cell, mode: str = "vertical", **kw) -> Cell:
    if mode == "vertical":
        return vertical_compose(phi, psi)
    if mode == "horizontal":
        return horizontal_compose(phi, psi, **kw)
    raise ValueError(f"unknown mode {mode!r}")


def cells_equal(phi: Cell, psi: Cell) -> bool:
    return phi == psi


# ---------------------------------------------------------------------------
# Isomorphisms, unitors and associators
# ---------------------------------------------------------------------------


@dataclass
class ProfIso:
    """A pair of mutually inverse cells over identity functors."""

    forward: Cell
    backward: Cell

    def verify(self) -> Report:
        rep = Report(subject="isomorphism")
        for c in (self.forward, self.backward):
            rep.extend(validate_cell(c))
        there = vertical_compose(self.forward, self.backward)
        back = vertical_compose(self.backward, self.forward)
        if there.key() != identity_cell(self.forward.hsrc).key():
            rep.add("left_inverse", ("backward.forward",), "not the identity")
        if back.key() != identity_cell(self.backward.hsrc).key():
            rep.add("right_inverse", ("forward.backward",), "not the identity")
        return rep


def left_unitor(J: Profunctor) -> ProfIso:
    """``1_A . J ~= J``."""
    A, B = J.src, J.tgt
    P, Q = compose_prof(unit_prof(A), J)
    fwd = induced_cell(P, J, identity_functor(A), identity_functor(B),
                       lambda a, b, x: J.lact(x[1], b, x[2]))
    bwd = Cell(J, P, identity_functor(A), identity_functor(B),
               {(a, b): {u: Q.cls(a, b, (a, A.identity(a), u)) for u in J.elements(a, b)}
                for a, b in J.pairs()})
    return ProfIso(fwd, bwd)


def right_unitor(J: Profunctor) -> ProfIso:
    """``J . 1_B ~= J``."""
    A, B = J.src, J.tgt
    P, Q = compose_prof(J, unit_prof(B))
    fwd = induced_cell(P, J, identity_functor(A), identity_functor(B),
                       lambda a, b, x: J.ract(a, x[2], x[1]))
    bwd = Cell(J, P, identity_functor(A), identity_functor(B),
               {(a, b): {u: Q.cls(a, b, (b, u, B.identity(b))) for u in J.elements(a, b)}
                for a, b in J.pairs()})
    return ProfIso(fwd, bwd)


def associator(J: Profunctor, H: Profunctor, L: Profunctor) -> ProfIso:
    """``(J . H) . L ~= J . (H . L)``."""
    JH = composite(J, H)
    HL = composite(H, L)
    left = composite(JH, L)
    right = composite(J, HL)
    ida, idd = identity_functor(J.src), identity_functor(L.tgt)

    def fwd_map(a, d, x):
        c, r, w = x  # r is a class (b, u, v) of J.H at (a, c)
        b, u, v = r
        return right.presentation.cls(a, d, (b, u, HL.presentation.cls(b, d, (c, v, w))))

    def bwd_map(a, d, x):
        b, u, s = x  # s is a class (c, v, w) of H.L at (b, d)
        c, v, w = s
        return left.presentation.cls(a, d, (c, JH.presentation.cls(a, c, (b, u, v)), w))

    return ProfIso(induced_cell(left, right, ida, idd, fwd_map),
                   induced_cell(right, left, ida, idd, bwd_map))


# ---------------------------------------------------------------------------
# Companions and conjoints
# ---------------------------------------------------------------------------


@dataclass
class HorizontalOf:
    """Companion or conjoint of a functor with its defining cells.

    Unpacks as ``(profunctor, defining_cell)``.
    """

    side: str
    profunctor: Profunctor
    cartesian: Cell
    opcartesian: Cell

    @property
    def defining_cell(self) -> Cell:
        return self.cartesian if self.side == "companion" else self.opcartesian

    def __iter__(self):
        yield self.profunctor
        yield self.defining_cell


def companion_conjoint(f: CatFunctor, side: str = "companion") -> HorizontalOf:
    """Companion ``f_* = C(f, id)`` or conjoint ``f^* = C(id, f)``.

    The cartesian cell is the restriction cell into ``1_C``; the opcartesian
    cell out of ``1_A`` is ``f`` acting on hom-sets.
    """
    A, C = f.src, f.tgt
    U = unit_prof(C)
    idA, idC = identity_functor(A), identity_functor(C)
    if side == "companion":
        P, cart = restrict(U, f, idC)
        P.name = f"{f.name}_*"
        comps = {(a, b): {p: f.mor(p) for p in A.hom(a, b)} for a in A.objects for b in A.objects}
        opc = Cell(unit_prof(A), P, idA, f, comps, name="opcart")
    elif side == "conjoint":
        P, cart = restrict(U, idC, f)
        P.name = f"{f.name}^*"
        comps = {(a, b): {p: f.mor(p) for p in A.hom(a, b)} for a in A.objects for b in A.objects}
        opc = Cell(unit_prof(A), P, f, idA, comps, name="opcart")
    else:
        raise ValueError(f"unknown side {side!r}")
    cart.name = "cart"
    return HorizontalOf(side, P, cart, opc)


def companion(f: CatFunctor) -> Profunctor:
    return companion_conjoint(f, "companion").profunctor


def conjoint(f: CatFunctor) -> Profunctor:
    return companion_conjoint(f, "conjoint").profunctor


def companion_composite_iso(f: CatFunctor, g: CatFunctor) -> ProfIso:
    """``f_* . g_* ~= (g . f)_*`` via ``[q, r] -> r . g(q)``."""
    B, C = f.tgt, g.tgt
    fs, gs = companion(f), companion(g)
    gf = compose_functors(g, f)
    P, Q = compose_prof(fs, gs)
    target = companion(gf)
    ida, idc = identity_functor(f.src), identity_functor(C)
    fwd = induced_cell(P, target, ida, idc, lambda a, c, x: C.compose(x[2], g.mor(x[1])))
    bwd = Cell(target, P, ida, idc,
               {(a, c): {r: Q.cls(a, c, (f.ob(a), B.identity(f.ob(a)), r)) for r in target.elements(a, c)}
                for a, c in target.pairs()})
    return ProfIso(fwd, bwd)


def cartesian_display(f: CatFunctor, K: Profunctor, g: CatFunctor) -> Cell:
    """The cell ``f_* . K . g^* => K`` over ``(f, g)`` built from two cartesian cells."""
    cf = companion_conjoint(f, "companion").cartesian
    cg = companion_conjoint(g, "conjoint").cartesian
    mid = horizontal_compose(horizontal_compose(cf, identity_cell(K)), cg)
    U1 = unit_prof(K.src)
    inner = composite(U1, K)
    lu = left_unitor(K)
    ru = right_unitor(inner)
    # (1 . K) . 1 => 1 . K => K
    return vertical_compose(vertical_compose(mid, ru.forward), lu.forward)


def opcartesian_display(g: CatFunctor, J: Profunctor, f: CatFunctor) -> Cell:
    """The cell ``J => g^* . J . f_*`` over ``(g, f)`` built from two opcartesian cells.

    Here ``g: B -> D`` acts on the source and ``f: A -> C`` on the target of ``J: B -|-> A``.
    """
    og = companion_conjoint(g, "conjoint").opcartesian
    of = companion_conjoint(f, "companion").opcartesian
    lu = left_unitor(J)
    inner = composite(unit_prof(J.src), J)
    ru = right_unitor(inner)
    to_units = vertical_compose(lu.backward, ru.backward)  # J => (1 . J) . 1
    mid = horizontal_compose(horizontal_compose(og, identity_cell(J)), of)
    return vertical_compose(to_units, mid)


def extension(J: Profunctor, f: CatFunctor, g: CatFunctor) -> tuple[Profunctor, Cell]:
    """Extension of ``J: A -|-> B`` along ``f: A -> C`` and ``g: B -> D``: ``f^* . J . g_*``."""
    cell = opcartesian_display(f, J, g)
    return cell.htgt, cell


# ---------------------------------------------------------------------------
# Enumeration of profunctors and cells
# ---------------------------------------------------------------------------


def iter_cells(J: Profunctor, K: Profunctor, f: CatFunctor, g: CatFunctor,
               candidates: Mapping | None = None, limit: int | None = None) -> Iterator[Cell]:
    """All cells ``J => K`` over ``(f, g)``, in canonical order.

    ``candidates`` optionally restricts the image of an element
    ``(a, b, u)`` to a given collection.
    """
    A, B = J.src, J.tgt
    nodes = list(J.all_elements())
    edges: dict = {n: [] for n in nodes}
    for p in A.morphisms:
        if A.is_identity(p):
            continue
        a1, a = A.src(p), A.tgt(p)
        fp = f.mor(p)
        for b in B.objects:
            gb = g.ob(b)
            for u in J.elements(a, b):
                edges[(a, b, u)].append(((a1, b, J.lact(p, b, u)), 0, fp, gb))
    for q in B.morphisms:
        if B.is_identity(q):
            continue
        b, b1 = B.src(q), B.tgt(q)
        gq = g.mor(q)
        for a in A.objects:
            fa = f.ob(a)
            for u in J.elements(a, b):
                edges[(a, b, u)].append(((a, b1, J.ract(a, q, u)), 1, fa, gq))
    cand = {}
    for n in nodes:
        a, b, _ = n
        base = K.elements(f.ob(a), g.ob(b))
        if candidates is not None and n in candidates:
            allowed = set(candidates[n])
            base = tuple(x for x in base if x in allowed)
        cand[n] = base
    candset = {n: set(v) for n, v in cand.items()}
    assign: dict = {}

    def propagate(node, val, trail) -> bool:
        stack = [(node, val)]
        while stack:
            n, v = stack.pop()
            if n in assign:
                if assign[n] != v:
                    return False
                continue
            if v not in candset[n]:
                return False
            assign[n] = v
            trail.append(n)
            for m, kind, x, y in edges[n]:
                w = K.lact(x, y, v) if kind == 0 else K.ract(x, y, v)
                stack.append((m, w))
        return True

    count = 0

    def rec(i):
        while i < len(nodes) and nodes[i] in assign:
            i += 1
        if i == len(nodes):
            comps: dict = {pair: {} for pair in J.pairs()}
            for (a, b, u), v in assign.items():
                comps[(a, b)][u] = v
            yield Cell(J, K, f, g, comps)
            return
        n = nodes[i]
        for v in cand[n]:
            trail: list = []
            ok = propagate(n, v, trail)
            if ok:
                yield from rec(i + 1)
            for t in trail:
                del assign[t]

    for c in rec(0):
        yield c
        count += 1
        if limit is not None and count >= limit:
            return


def _action_csp(A: FinCategory, B: FinCategory, elems: Mapping) -> CSP:
    variables, domains = [], {}
    for p in A.morphisms:
        if A.is_identity(p):
            continue
        a1, a = A.src(p), A.tgt(p)
        for b in B.objects:
            for u in elems.get((a, b), ()):
                v = ("L", p, b, u)
                variables.append(v)
                domains[v] = elems.get((a1, b), ())
    for q in B.morphisms:
        if B.is_identity(q):
            continue
        b, b1 = B.src(q), B.tgt(q)
        for a in A.objects:
            for u in elems.get((a, b), ()):
                v = ("R", a, q, u)
                variables.append(v)
                domains[v] = elems.get((a, b1), ())
    csp = CSP(variables, domains)

    def lam(asg, p, b, u):
        if u is None:
            return None
        return u if A.is_identity(p) else asg.get(("L", p, b, u))

    def rho(asg, a, q, u):
        if u is None:
            return None
        return u if B.is_identity(q) else asg.get(("R", a, q, u))

    for f, g in A.composable_pairs():
        if A.is_identity(f) or A.is_identity(g):
            continue
        h = A.compose(g, f)
        for b in B.objects:
            for u in elems.get((A.tgt(g), b), ()):
                def c(asg, f=f, g=g, h=h, b=b, u=u):
                    lhs = lam(asg, h, b, u)
                    rhs = lam(asg, f, b, lam(asg, g, b, u))
                    return None if lhs is None or rhs is None else lhs == rhs
                watched = [("L", h, b, u), ("L", g, b, u)]
                watched += [("L", f, b, w) for w in elems.get((A.tgt(f), b), ())]
                csp.add(c, watched)
    for f, g in B.composable_pairs():
        if B.is_identity(f) or B.is_identity(g):
            continue
        h = B.compose(g, f)
        for a in A.objects:
            for u in elems.get((a, B.src(f)), ()):
                def c(asg, f=f, g=g, h=h, a=a, u=u):
                    lhs = rho(asg, a, h, u)
                    rhs = rho(asg, a, g, rho(asg, a, f, u))
                    return None if lhs is None or rhs is None else lhs == rhs
                watched = [("R", a, h, u), ("R", a, f, u)]
                watched += [("R", a, g, w) for w in elems.get((a, B.tgt(f)), ())]
                csp.add(c, watched)
    for p in A.morphisms:
        if A.is_identity(p):
            continue
        a1, a = A.src(p), A.tgt(p)
        for q in B.morphisms:
            if B.is_identity(q):
                continue
            b, b1 = B.src(q), B.tgt(q)
            for u in elems.get((a, b), ()):
                def c(asg, p=p, q=q, a=a, a1=a1, b=b, b1=b1, u=u):
                    lhs = rho(asg, a1, q, lam(asg, p, b, u))
                    rhs = lam(asg, p, b1, rho(asg, a, q, u))
                    return None if lhs is None or rhs is None else lhs == rhs
                watched = [("L", p, b, u), ("R", a, q, u)]
                watched += [("R", a1, q, w) for w in elems.get((a1, b), ())]
                watched += [("L", p, b1, w) for w in elems.get((a, b1), ())]
                csp.add(c, watched)
    return csp


def _feasible_sizes(A: FinCategory, B: FinCategory, sizes: Mapping) -> bool:
    for p in A.morphisms:
        for b in B.objects:
            if sizes[(A.tgt(p), b)] and not sizes[(A.src(p), b)]:
                return False
    for q in B.morphisms:
        for a in A.objects:
            if sizes[(a, B.src(q))] and not sizes[(a, B.tgt(q))]:
                return False
    return True


def _build(A, B, elems, sol) -> Profunctor:
    left = {(k[1], k[2], k[3]): v for k, v in sol.items() if k[0] == "L"}
    right = {(k[1], k[2], k[3]): v for k, v in sol.items() if k[0] == "R"}
    return Profunctor(A, B, elems, left, right)


def iter_profunctors(A: FinCategory, B: FinCategory, max_elements: int,
                     support: Iterable[tuple] | None = None, min_total: int = 0) -> Iterator[Profunctor]:
    """Every profunctor ``A -|-> B`` whose element sets are ``{0, .., n-1}`` with ``n <= max_elements``.

    Pairs outside ``support`` are forced empty.
    """
    pairs = [(a, b) for a in A.objects for b in B.objects]
    allowed = set(pairs) if support is None else set(support)
    ranges = [range(max_elements + 1) if pr in allowed else range(1) for pr in pairs]
    for combo in itertools.product(*ranges):
        if sum(combo) < min_total:
            continue
        sizes = dict(zip(pairs, combo))
        if not _feasible_sizes(A, B, sizes):
            continue
        elems = {pr: tuple(range(n)) for pr, n in sizes.items() if n}
        for sol in _action_csp(A, B, elems).solve():
            yield _build(A, B, elems, sol)


def random_profunctor(A: FinCategory, B: FinCategory, max_elements: int, rng: random.Random,
                      attempts: int = 200, density: float = 0.8) -> Profunctor:
    """A random profunctor with element sets of size at most ``max_elements``."""
    pairs = [(a, b) for a in A.objects for b in B.objects]
    for _ in range(attempts):
        sizes = {pr: (rng.randint(1, max_elements) if rng.random() < density else 0) for pr in pairs}
        # close the support under the actions so that a solution can exist
        changed = True
        while changed:
            changed = False
            for p in A.morphisms:
                for b in B.objects:
                    if sizes[(A.tgt(p), b)] and not sizes[(A.src(p), b)]:
                        sizes[(A.src(p), b)] = 1
                        changed = True
            for q in B.morphisms:
                for a in A.objects:
                    if sizes[(a, B.src(q))] and not sizes[(a, B.tgt(q))]:
                        sizes[(a, B.tgt(q))] = 1
                        changed = True
        elems = {pr: tuple(range(n)) for pr, n in sizes.items() if n}
        for sol in _action_csp(A, B, elems).solve(rng=rng, limit=1):
            return _build(A, B, elems, sol)
    raise BoundExceeded("no random profunctor found within the attempt budget")


# ---------------------------------------------------------------------------
# Universal properties of cells
# ---------------------------------------------------------------------------


@dataclass
class ProbeBound:
    """Limits of the probe family used to test (op)cartesianness and tabulations."""

    max_objects: int = 2
    max_elements: int = 2

    def to_json(self) -> dict:
        return {"max_objects": self.max_objects, "max_elements": self.max_elements}


@dataclass
class UniversalCertificate:
    kind: str
    canonical: bool
    probes: list
    bound: ProbeBound

    @property
    def probe_count(self) -> int:
        return len(self.probes)

    def to_json(self) -> dict:
        return {"kind": self.kind, "canonical_comparison_bijective": self.canonical,
                "bound": self.bound.to_json(), "probes": self.probes}


def _subsets(xs, k):
    for n in range(1, min(k, len(xs)) + 1):
        yield from itertools.combinations(xs, n)


def canonical_comparison(phi: Cell, kind: str) -> Cell:
    """The comparison whose bijectivity characterizes (op)cartesianness in this equipment.

    For ``cartesian`` it is ``phi`` itself viewed against the restriction; for
    ``opcartesian`` it is the induced cell ``f^* . J . g_* => K``.
    """
    if kind == "cartesian":
        return phi
    J, K, f, g = phi.hsrc, phi.htgt, phi.f, phi.g
    ext, ext_cell = extension(J, f, g)
    # ext = (f^* . J) . g_*; classes are ((b, (a, p, u)), q)
    C, D = K.src, K.tgt

    def gm(c, d, x):
        b, r, q = x
        a, p, u = r
        return K.ract(c, q, K.lact(p, g.ob(b), phi(a, b, u)))

    return induced_cell(ext, K, identity_functor(C), identity_functor(D), gm)


def check_universal(phi: Cell, kind: str = "cartesian", probe_bound: ProbeBound | None = None,
                    extra_probes: Sequence = (), raise_on_failure: bool = True) -> UniversalCertificate:
    """Probe the (op)cartesian universal property of ``phi``.

    Every probe enumerates all test cells and all candidate factorizations and
    checks that composing with ``phi`` is a bijection between them.
    Cartesian probes: full subcategories ``X`` of ``A``, ``Y`` of ``B`` with at
    most ``max_objects`` objects and every profunctor ``H: X -|-> Y`` with at
    most ``max_elements`` elements per pair. Opcartesian probes: profunctors
    ``L: C -|-> D`` supported on such subcategories. ``extra_probes`` are
    profunctors of the respective shape over the full categories. The
    canonical comparison is checked as well; it is complete in this equipment
    and the probes are a bounded falsifier.
    """
    bound = probe_bound or ProbeBound()
    J, K, f, g = phi.hsrc, phi.htgt, phi.f, phi.g
    probes: list = []
    canon = canonical_comparison(phi, kind).is_bijective()

    def fail(msg, probe):
        if raise_on_failure:
            raise CounterexampleFound(msg, probe)
        probes.append({"failure": msg, "probe": probe})

    if kind == "cartesian":
        A, B = J.src, J.tgt
        families = []
        for xs in _subsets(A.objects, bound.max_objects):
            X = full_subcategory(A, xs)
            for ys in _subsets(B.objects, bound.max_objects):
                Y = full_subcategory(B, ys)
                families.append((X, Y, iter_profunctors(X, Y, bound.max_elements)))
        for H in extra_probes:
            families.append((H.src, H.tgt, [H]))
        for X, Y, Hs in families:
            h = inclusion_functor(X, A) if X is not A else identity_functor(A)
            k = inclusion_functor(Y, B) if Y is not B else identity_functor(B)
            fh, gk = compose_functors(f, h), compose_functors(g, k)
            for H in Hs:
                tests = {c.key(): c for c in iter_cells(H, K, fh, gk)}
                images: dict = {}
                for c in iter_cells(H, J, h, k):
                    images.setdefault(vertical_compose(c, phi).key(), []).append(c.key())
                desc = {"X": thaw(list(X.objects)), "Y": thaw(list(Y.objects)), "H_size": H.size()}
                for t in tests:
                    n = len(images.get(t, []))
                    if n != 1:
                        fail(f"test cell factors {n} times", {**desc, "test": thaw(t)})
                        break
                else:
                    if set(images) - set(tests):
                        fail("factorization lands outside the test cells", desc)
                    probes.append({**desc, "test_cells": len(tests),
                                   "factorizations": [[thaw(t), thaw(images[t][0])] for t in sorted(tests, key=ckey)]})
    elif kind == "opcartesian":
        C, D = K.src, K.tgt
        idC, idD = identity_functor(C), identity_functor(D)
        families = []
        for xs in _subsets(C.objects, bound.max_objects):
            for ys in _subsets(D.objects, bound.max_objects):
                support = [(x, y) for x in xs for y in ys]
                families.append((xs, ys, iter_profunctors(C, D, bound.max_elements, support=support)))
        for L in extra_probes:
            families.append(("extra", "extra", [L]))
        for xs, ys, Ls in families:
            for L in Ls:
                tests = {c.key(): c for c in iter_cells(J, L, f, g)}
                images: dict = {}
                for c in iter_cells(K, L, idC, idD):
                    images.setdefault(vertical_compose(phi, c).key(), []).append(c.key())
                desc = {"X": thaw(list(xs)), "Y": thaw(list(ys)), "L_size": L.size()}
                for t in tests:
                    n = len(images.get(t, []))
                    if n != 1:
                        fail(f"test cell factors {n} times", {**desc, "test": thaw(t)})
                        break
                else:
                    probes.append({**desc, "test_cells": len(tests),
                                   "factorizations": [[thaw(t), thaw(images[t][0])] for t in sorted(tests, key=ckey)]})
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if not canon:
        fail("canonical comparison is not bijective", {"comparison": kind})
    return UniversalCertificate(kind, canon, probes, bound)


def is_cartesian(phi: Cell) -> bool:
    return phi.is_bijective()


def is_opcartesian(phi: Cell) -> bool:
    return canonical_comparison(phi, "opcartesian").is_bijective()


def factor_through(phi: Cell, psi: Cell, kind: str) -> Cell:
    """Unique factorization of ``psi`` through an (op)cartesian ``phi``.

    ``cartesian``: ``psi: H => K`` over ``(f h, g k)``, returns ``psi'`` with
    ``phi . psi' = psi`` over ``(h, k)`` where ``h, k`` are recovered from
    ``psi`` when the vertical boundaries of ``phi`` are identities, or passed
    in through ``psi.meta``. ``opcartesian``: ``psi: J => L`` over
    ``(h f, k g)``, returns ``chi'`` with ``chi' . phi = psi``.
    """
    if kind == "cartesian":
        h, k = getattr(psi, "meta", (None, None))
        if h is None:
            if phi.f != identity_functor(phi.f.src) or phi.g != identity_functor(phi.g.src):
                raise IllComposed("pass the inner functors in psi.meta")
            h, k = psi.f, psi.g
        J = phi.hsrc
        cands = {}
        for x, y, v in psi.hsrc.all_elements():
            target = psi(x, y, v)
            cands[(x, y, v)] = [u for u in J.elements(h.ob(x), k.ob(y))
                                if phi(h.ob(x), k.ob(y), u) == target]
        sols = list(iter_cells(psi.hsrc, J, h, k, candidates=cands, limit=2))
    elif kind == "opcartesian":
        h, k = getattr(psi, "meta", (None, None))
        if h is None:
            if phi.f != identity_functor(phi.f.src) or phi.g != identity_functor(phi.g.src):
                raise IllComposed("pass the outer functors in psi.meta")
            h, k = psi.f, psi.g
        K = phi.htgt
        cands: dict = {}
        for a, b, u in phi.hsrc.all_elements():
            v = phi(a, b, u)
            node = (phi.f.ob(a), phi.g.ob(b), v)
            cands.setdefault(node, set()).add(psi(a, b, u))
        if any(len(s) > 1 for s in cands.values()):
            raise CounterexampleFound("no factorization: two elements with one image disagree")
        sols = list(iter_cells(K, psi.htgt, h, k, candidates=cands, limit=2))
    else:
        raise ValueError(kind)
    if len(sols) != 1:
        raise CounterexampleFound(f"{len(sols)} factorizations found")
    return sols[0]


# ---------------------------------------------------------------------------
# Tabulations
# ---------------------------------------------------------------------------


def small_category_corpus(max_objects: int = 2) -> list:
    """Small test categories: terminal, discrete, arrow, and two one-object monoids."""
    cats = [terminal(), walking_arrow(),
            monoid_category(["1", "s"], lambda x, y: "1" if x == y else "s", "1", name="Z/2"),
            monoid_category(["1", "e"], lambda x, y: "e" if "e" in (x, y) else "1", "1", name="idem")]
    if max_objects >= 2:
        cats.insert(1, discrete([0, 1]))
    return [c for c in cats if len(c.objects) <= max_objects]


@dataclass
class Tabulation:
    category: FinCategory
    pi_A: CatFunctor
    pi_B: CatFunctor
    pi: Cell
    report: dict

    def __iter__(self):
        yield self.category
        yield self.pi_A
        yield self.pi_B
        yield self.pi
        yield self.report


def tabulation_category(J: Profunctor) -> tuple[FinCategory, CatFunctor, CatFunctor, Cell]:
    A, B = J.src, J.tgt
    objs = [(x, u, y) for x in A.objects for y in B.objects for u in J.elements(x, y)]
    mors = []
    for s in objs:
        x, u, y = s
        for t in objs:
            x1, u1, y1 = t
            for p in A.hom(x, x1):
                for q in B.hom(y, y1):
                    if J.lact(p, y1, u1) == J.ract(x, q, u):
                        mors.append(((p, q, u, u1), s, t))
    ids = {(x, u, y): (A.identity(x), B.identity(y), u, u) for x, u, y in objs}
    by_src: dict = {}
    for m, s, t in mors:
        by_src.setdefault(s, []).append(m)
    comp = {}
    for m, s, t in mors:
        for m2 in by_src.get(t, ()):
            comp[(m, m2)] = (A.compose(m2[0], m[0]), B.compose(m2[1], m[1]), m[2], m2[3])
    T = FinCategory(objs, mors, ids, comp, name="<J>")
    pA = CatFunctor(T, A, {o: o[0] for o in objs}, {m: m[0] for m, _, _ in mors}, name="pi_A")
    pB = CatFunctor(T, B, {o: o[2] for o in objs}, {m: m[1] for m, _, _ in mors}, name="pi_B")
    U = unit_prof(T)
    comps = {}
    for s in objs:
        for t in objs:
            comps[(s, t)] = {m: J.ract(s[0], m[1], s[1]) for m in T.hom(s, t)}
    pi = Cell(U, J, pA, pB, comps, name="pi")
    return T, pA, pB, pi


def check_tabulation_one_dim(J: Profunctor, T, pA, pB, pi, corpus: Sequence[FinCategory]) -> dict:
    """Every cell ``1_X => J`` factors through ``pi`` by exactly one functor ``X -> <J>``."""
    A, B = J.src, J.tgt
    n_cells = 0
    for X in corpus:
        UX = unit_prof(X)
        for fA in iter_functors(X, A):
            for fB in iter_functors(X, B):
                for phi in iter_cells(UX, J, fA, fB):
                    n_cells += 1
                    cands = {x: [(fA.ob(x), u, fB.ob(x)) for u in J.elements(fA.ob(x), fB.ob(x))]
                             for x in X.objects}
                    found = []
                    for F in iter_functors(X, T, object_candidates=cands):
                        if any(pA.mor(F.mor(m)) != fA.mor(m) or pB.mor(F.mor(m)) != fB.mor(m)
                               for m in X.morphisms):
                            continue
                        if all(pi(F.ob(X.src(m)), F.ob(X.tgt(m)), F.mor(m)) == phi(X.src(m), X.tgt(m), m)
                               for m in X.morphisms):
                            found.append(F)
                    if len(found) != 1:
                        return {"ok": False, "cells": n_cells, "witness": {
                            "X": X.name, "factorizations": len(found), "cell": thaw(phi.key())}}
                    canonical = {x: (fA.ob(x), phi(x, x, X.identity(x)), fB.ob(x)) for x in X.objects}
                    if found[0].on_objects != canonical:
                        return {"ok": False, "cells": n_cells, "witness": {"X": X.name, "reason": "non-canonical"}}
    return {"ok": True, "cells": n_cells}


def _unit_cells(X, J, fA, fB):
    return list(iter_cells(unit_prof(X), J, fA, fB))


def check_tabulation_two_dim(J: Profunctor, T, pA, pB, pi, corpus: Sequence[FinCategory],
                             max_elements: int = 1) -> dict:
    """Given ``phi``, ``psi`` into ``J`` and ``xi_A``, ``xi_B`` making the square commute,
    exactly one cell ``xi'`` into ``1_<J>`` projects onto them."""
    A, B = J.src, J.tgt
    UA, UB, UT = unit_prof(A), unit_prof(B), unit_prof(T)
    checked = 0
    legs = {}
    for X in corpus:
        L = []
        for fA in iter_functors(X, A):
            for fB in iter_functors(X, B):
                for phi in _unit_cells(X, J, fA, fB):
                    F = {x: (fA.ob(x), phi(x, x, X.identity(x)), fB.ob(x)) for x in X.objects}
                    Fm = {m: (fA.mor(m), fB.mor(m), F[X.src(m)][1], F[X.tgt(m)][1]) for m in X.morphisms}
                    L.append((fA, fB, phi, CatFunctor(X, T, F, Fm)))
        legs[X.name] = (X, L)
    for xname, (X, LX) in legs.items():
        for yname, (Y, LY) in legs.items():
            for H in iter_profunctors(X, Y, max_elements, min_total=1):
                for fA, fB, phi, F in LX:
                    for gA, gB, psi, G in LY:
                        for xA in iter_cells(H, UA, fA, gA):
                            for xB in iter_cells(H, UB, fB, gB):
                                good = True
                                for x, y, h in H.all_elements():
                                    lhs = J.lact(xA(x, y, h), gB.ob(y), psi(y, y, Y.identity(y)))
                                    rhs = J.ract(fA.ob(x), xB(x, y, h), phi(x, x, X.identity(x)))
                                    if lhs != rhs:
                                        good = False
                                        break
                                if not good:
                                    continue
                                checked += 1
                                cands = {}
                                for x, y, h in H.all_elements():
                                    cands[(x, y, h)] = [m for m in T.hom(F.ob(x), G.ob(y))
                                                        if m[0] == xA(x, y, h) and m[1] == xB(x, y, h)]
                                n = len(list(iter_cells(H, UT, F, G, candidates=cands, limit=2)))
                                if n != 1:
                                    return {"ok": False, "checked": checked,
                                            "witness": {"X": xname, "Y": yname, "factorizations": n}}
    return {"ok": True, "checked": checked}


def check_jointly_monic(J: Profunctor, T, pA, pB, corpus: Sequence[FinCategory], max_elements: int = 1,
                        max_functors: int | None = None) -> dict:
    """Cells into ``1_<J>`` are determined by their two projections."""
    UT = unit_prof(T)
    checked = 0
    functors = {X.name: (X, list(iter_functors(X, T, limit=max_functors))) for X in corpus}
    for xname, (X, FX) in functors.items():
        for yname, (Y, FY) in functors.items():
            for H in iter_profunctors(X, Y, max_elements, min_total=1):
                for F in FX:
                    for G in FY:
                        seen: dict = {}
                        for c in iter_cells(H, UT, F, G):
                            checked += 1
                            proj = tuple((pA.mor(c(x, y, h)), pB.mor(c(x, y, h))) for x, y, h in H.all_elements())
                            if proj in seen and seen[proj] != c.key():
                                return {"ok": False, "checked": checked,
                                        "witness": {"X": xname, "Y": yname, "projection": thaw(proj)}}
                            seen[proj] = c.key()
    return {"ok": True, "checked": checked}


def tabulate(J: Profunctor, probe_bound: ProbeBound | None = None, check: bool = True,
             corpus: Sequence[FinCategory] | None = None, two_dim_corpus: Sequence[FinCategory] | None = None,
             ) -> Tabulation:
    """Tabulation ``<J>``: triples ``(x, u, y)`` and pairs ``(p, q)`` with ``lambda_p u' = rho_q u``.

    The report records the one- and two-dimensional universal properties, the
    joint monicity of the projections, and opcartesianness of ``pi``.
    """
    bound = probe_bound or ProbeBound()
    T, pA, pB, pi = tabulation_category(J)
    report: dict = {"bounded": True}
    if check:
        corpus = corpus if corpus is not None else small_category_corpus(bound.max_objects)
        two = two_dim_corpus if two_dim_corpus is not None else [terminal(), walking_arrow()]
        report["one_dim"] = check_tabulation_one_dim(J, T, pA, pB, pi, corpus)
        report["two_dim"] = check_tabulation_two_dim(J, T, pA, pB, pi, two, max_elements=1)
        report["jointly_monic"] = check_jointly_monic(J, T, pA, pB, [terminal()], max_elements=bound.max_elements)
        try:
            cert = check_universal(pi, "opcartesian", ProbeBound(1, 1))
            report["opcartesian"] = {"ok": True, "probes": cert.probe_count}
        except CounterexampleFound as exc:
            report["opcartesian"] = {"ok": False, "witness": str(exc)}
        report["ok"] = all(report[k]["ok"] for k in ("one_dim", "two_dim", "jointly_monic", "opcartesian"))
    return Tabulation(T, pA, pB, pi, report)


def comma_object(f: CatFunctor, j: CatFunctor, **kw) -> Tabulation:
    """``f / j`` as the tabulation of ``1_A(f, j)``; objects ``(z, u: fz -> jy, y)``."""
    if f.tgt != j.tgt:
        raise IllComposed("comma needs a common target")
    R, _ = restrict(unit_prof(f.tgt), f, j)
    return tabulate(R, **kw)


# ---------------------------------------------------------------------------
# Equipment laws over a corpus
# ---------------------------------------------------------------------------


def _same_profunctor(P: Profunctor, Q: Profunctor) -> bool:
    return P.to_json() == Q.to_json()


def check_equipment_laws(categories: Sequence[FinCategory], max_functors: int | None = None,
                         probe_bound: ProbeBound | None = None, universal_probes: bool = True) -> dict:
    """Companion composition, restriction pseudofunctoriality and the displayed (op)cartesian cells.

    Runs over all composable pairs of functors between the given categories.
    Each failure is logged with the functors involved.
    """
    bound = probe_bound or ProbeBound(1, 1)
    out: dict = {"companions": 0, "restrictions": 0, "cartesian_display": 0, "opcartesian_display": 0,
                 "failures": []}

    def functors(X, Y):
        return list(iter_functors(X, Y, limit=max_functors))

    def fail(law, detail):
        out["failures"].append({"law": law, **detail})

    for A in categories:
        for B in categories:
            fs = functors(A, B)
            for C in categories:
                gs = functors(B, C)
                for i, f in enumerate(fs):
                    for j, g in enumerate(gs):
                        where = {"A": A.name, "B": B.name, "C": C.name, "f": i, "g": j}
                        out["companions"] += 1
                        rep = companion_composite_iso(f, g).verify()
                        if not rep.ok:
                            fail("companion_composition", {**where, "violations": [v.law for v in rep.violations]})
                        # K(g, g)(f, f) = K(g f, g f) with equal cartesian composites
                        K = unit_prof(C)
                        R1, c1 = restrict(K, g, g)
                        R2, c2 = restrict(R1, f, f)
                        gf = compose_functors(g, f)
                        R3, c3 = restrict(K, gf, gf)
                        out["restrictions"] += 1
                        if not _same_profunctor(R2, R3) or vertical_compose(c2, c1).key() != c3.key():
                            fail("restriction_pseudofunctoriality", where)
            for f in fs:
                for K in (unit_prof(B),):
                    where = {"A": A.name, "B": B.name, "f": f.to_json()}
                    cell = cartesian_display(f, K, f)
                    out["cartesian_display"] += 1
                    if not is_cartesian(cell):
                        fail("cartesian_display", where)
                    elif universal_probes:
                        try:
                            check_universal(cell, "cartesian", bound)
                        except CounterexampleFound as exc:
                            fail("cartesian_display_probe", {**where, "detail": str(exc)})
                    J = unit_prof(A)
                    cell = opcartesian_display(f, J, f)
                    out["opcartesian_display"] += 1
                    if not is_opcartesian(cell):
                        fail("opcartesian_display", where)
                    elif universal_probes:
                        try:
                            check_universal(cell, "opcartesian", bound)
                        except CounterexampleFound as exc:
                            fail("opcartesian_display_probe", {**where, "detail": str(exc)})
    out["ok"] = not out["failures"]
    return out
