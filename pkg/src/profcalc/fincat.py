"""Finite categories, functors, natural transformations and brute-force (co)limits.

A :class:`FinCategory` stores its composition table in full. Morphisms are
identified by name within one category; ``compose(g, f)`` is ``g . f`` and is
defined when ``tgt(f) == src(g)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from ._order import ckey, csorted, freeze, thaw
from .errors import BoundExceeded, NoUniversalObject, StructuralError

Obj = Hashable
Mor = Hashable


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def to_json(self) -> dict:
        return {"law": self.law, "witness": thaw(self.witness), "detail": self.detail}


@dataclass
class Report:
    """Outcome of a law check. Empty means every law held."""

    subject: str = ""
    violations: list = field(default_factory=list)
    checked: int = 0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, witness: Sequence, detail: str = "") -> None:
        self.violations.append(Violation(law, tuple(witness), detail))

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)
        self.checked += other.checked
        self.notes.extend(n for n in other.notes if n not in self.notes)

    def laws(self) -> set:
        return {v.law for v in self.violations}

    def to_json(self) -> dict:
        out = {
            "subject": self.subject,
            "ok": self.ok,
            "checked": self.checked,
            "violations": [v.to_json() for v in self.violations],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def __repr__(self) -> str:
        state = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return f"Report({self.subject!r}, {state})"


# ---------------------------------------------------------------------------
# Categories
# ---------------------------------------------------------------------------


class FinCategory:
    """A finite category with a fully materialised composition table.

    Construction only checks that names resolve; the category laws (including
    totality of the table) are checked by :func:`validate`.
    """

    def __init__(
        self,
        objects: Iterable[Obj],
        morphisms: Iterable[tuple[Mor, Obj, Obj]],
        identities: Mapping[Obj, Mor],
        composition: Mapping[tuple[Mor, Mor], Mor],
        name: str = "",
    ):
        objects = list(objects)
        if len(set(objects)) != len(objects):
            raise StructuralError("duplicate object identifiers")
        self.objects: tuple = csorted(objects)
        obset = set(self.objects)
        self._src: dict = {}
        self._tgt: dict = {}
        for m, s, t in morphisms:
            if m in self._src:
                raise StructuralError(f"duplicate morphism {m!r}")
            if s not in obset or t not in obset:
                raise StructuralError(f"morphism {m!r} has unknown endpoint")
            self._src[m], self._tgt[m] = s, t
        self.morphisms: tuple = csorted(self._src)
        self._id: dict = {}
        for x in self.objects:
            if x not in identities:
                raise StructuralError(f"object {x!r} has no identity")
            i = identities[x]
            if i not in self._src:
                raise StructuralError(f"identity {i!r} of {x!r} is not a morphism")
            self._id[x] = i
        self._comp: dict = {}
        for (f, g), h in composition.items():
            for m in (f, g, h):
                if m not in self._src:
                    raise StructuralError(f"composition mentions unknown morphism {m!r}")
            self._comp[(f, g)] = h
        homs: dict = {}
        for m in self.morphisms:
            homs.setdefault((self._src[m], self._tgt[m]), []).append(m)
        self._hom = {k: tuple(v) for k, v in homs.items()}
        self._idset = frozenset(self._id.values())
        self.name = name
        self._key = None
        self._memo: dict = {}

    # basic access -----------------------------------------------------------

    def src(self, m: Mor) -> Obj:
        return self._src[m]

    def tgt(self, m: Mor) -> Obj:
        return self._tgt[m]

    def hom(self, a: Obj, b: Obj) -> tuple:
        return self._hom.get((a, b), ())

    def identity(self, a: Obj) -> Mor:
        return self._id[a]

    def is_identity(self, m: Mor) -> bool:
        return m in self._idset

    def has_object(self, a) -> bool:
        return a in self._id

    def has_morphism(self, m) -> bool:
        return m in self._src

    def compose(self, g: Mor, f: Mor) -> Mor:
        """``g . f`` (apply ``f`` first)."""
        if self._tgt[f] != self._src[g]:
            raise ValueError(f"{g!r} . {f!r} is not composable")
        try:
            return self._comp[(f, g)]
        except KeyError:
            raise ValueError(f"composite {g!r} . {f!r} missing from table") from None

    def then(self, f: Mor, g: Mor) -> Mor:
        return self.compose(g, f)

    def chain(self, *ms: Mor) -> Mor:
        """Compose in diagrammatic order: ``chain(f, g, h) = h . g . f``."""
        out = ms[0]
        for m in ms[1:]:
            out = self.compose(m, out)
        return out

    def composable_pairs(self) -> Iterator[tuple]:
        for f in self.morphisms:
            for g in self.morphisms:
                if self._tgt[f] == self._src[g]:
                    yield f, g

    def composition_table(self) -> dict:
        return dict(self._comp)

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._hom.values())

    def memo(self, key, build: Callable[[], Any]):
        """Pure cache attached to this immutable value."""
        if key not in self._memo:
            self._memo[key] = build()
        return self._memo[key]

    # equality ---------------------------------------------------------------

    def _fingerprint(self):
        if self._key is None:
            self._key = (
                self.objects,
                tuple((m, self._src[m], self._tgt[m]) for m in self.morphisms),
                tuple((x, self._id[x]) for x in self.objects),
                tuple(sorted(self._comp.items(), key=ckey)),
            )
        return self._key

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self._fingerprint() == other._fingerprint()

    def __hash__(self) -> int:
        return hash(self._fingerprint())

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    # JSON -------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "objects": thaw(list(self.objects)),
            "morphisms": [
                {"name": thaw(m), "src": thaw(self._src[m]), "tgt": thaw(self._tgt[m])}
                for m in self.morphisms
            ],
            "identities": [[thaw(x), thaw(self._id[x])] for x in self.objects],
            "composition": [
                {"first": thaw(f), "then": thaw(g), "equals": thaw(h)}
                for (f, g), h in sorted(self._comp.items(), key=ckey)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FinCategory":
        try:
            ids = data["identities"]
            if isinstance(ids, Mapping):
                identities = {freeze(k): freeze(v) for k, v in ids.items()}
            else:
                identities = {freeze(k): freeze(v) for k, v in ids}
            return cls(
                [freeze(x) for x in data["objects"]],
                [(freeze(m["name"]), freeze(m["src"]), freeze(m["tgt"])) for m in data["morphisms"]],
                identities,
                {
                    (freeze(c["first"]), freeze(c["then"])): freeze(c["equals"])
                    for c in data.get("composition", [])
                },
                name=data.get("name", ""),
            )
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"malformed category data: {exc}") from exc


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def terminal(obj: Obj = "*") -> FinCategory:
    return FinCategory([obj], [(("id", obj), obj, obj)], {obj: ("id", obj)},
                       {(("id", obj), ("id", obj)): ("id", obj)}, name="1")


def empty_category() -> FinCategory:
    return FinCategory([], [], {}, {}, name="0")


def discrete(objects: Iterable[Obj]) -> FinCategory:
    objects = list(objects)
    return FinCategory(
        objects,
        [(("id", x), x, x) for x in objects],
        {x: ("id", x) for x in objects},
        {(("id", x), ("id", x)): ("id", x) for x in objects},
        name="discrete",
    )


def poset(elements: Iterable[Obj], leq: Callable[[Obj, Obj], bool], name: str = "poset") -> FinCategory:
    """Thin category with a morphism ``(a, b)`` exactly when ``leq(a, b)``."""
    els = csorted(elements)
    mors = [((a, b), a, b) for a in els for b in els if leq(a, b)]
    present = {m for m, _, _ in mors}
    comp = {}
    for (a, b) in present:
        for (b2, c) in present:
            if b == b2:
                comp[((a, b), (b, c))] = (a, c)
    return FinCategory(els, mors, {a: (a, a) for a in els}, comp, name=name)


def chain(n: int) -> FinCategory:
    return poset(range(n), lambda a, b: a <= b, name=f"[{n}]")


def walking_arrow() -> FinCategory:
    return chain(2)


def monoid_category(elements: Sequence, mult: Callable[[Any, Any], Any], unit, obj: Obj = "*",
                    name: str = "monoid") -> FinCategory:
    """One-object category; ``compose(g, f) = mult(g, f)``."""
    els = list(elements)
    return FinCategory(
        [obj],
        [(e, obj, obj) for e in els],
        {obj: unit},
        {(f, g): mult(g, f) for f in els for g in els},
        name=name,
    )


def parallel_pair() -> FinCategory:
    return FinCategory(
        [0, 1],
        [(("id", 0), 0, 0), (("id", 1), 1, 1), ("s", 0, 1), ("t", 0, 1)],
        {0: ("id", 0), 1: ("id", 1)},
        {
            (("id", 0), ("id", 0)): ("id", 0),
            (("id", 1), ("id", 1)): ("id", 1),
            (("id", 0), "s"): "s",
            (("id", 0), "t"): "t",
            ("s", ("id", 1)): "s",
            ("t", ("id", 1)): "t",
        },
        name="parallel",
    )


def coproduct_category(A: FinCategory, C: FinCategory) -> FinCategory:
    """Disjoint union with objects and morphisms tagged ``(0, -)`` and ``(1, -)``."""
    objs = [(0, a) for a in A.objects] + [(1, c) for c in C.objects]
    mors = [((0, m), (0, A.src(m)), (0, A.tgt(m))) for m in A.morphisms]
    mors += [((1, m), (1, C.src(m)), (1, C.tgt(m))) for m in C.morphisms]
    ids = {(0, a): (0, A.identity(a)) for a in A.objects}
    ids.update({(1, c): (1, C.identity(c)) for c in C.objects})
    comp = {((0, f), (0, g)): (0, h) for (f, g), h in A.composition_table().items()}
    comp.update({((1, f), (1, g)): (1, h) for (f, g), h in C.composition_table().items()})
    return FinCategory(objs, mors, ids, comp, name=f"{A.name}+{C.name}")


def opposite(C: FinCategory) -> FinCategory:
    def build():
        comp = {(g, f): h for (f, g), h in C.composition_table().items()}
        return FinCategory(
            C.objects,
            [(m, C.tgt(m), C.src(m)) for m in C.morphisms],
            {x: C.identity(x) for x in C.objects},
            comp,
            name=f"{C.name}^op",
        )

    return C.memo("opposite", build)


def product_category(A: FinCategory, C: FinCategory) -> FinCategory:
    objs = [(a, c) for a in A.objects for c in C.objects]
    mors = [((f, g), (A.src(f), C.src(g)), (A.tgt(f), C.tgt(g))) for f in A.morphisms for g in C.morphisms]
    ids = {(a, c): (A.identity(a), C.identity(c)) for a, c in objs}
    ca, cc = A.composition_table(), C.composition_table()
    comp = {}
    for (f1, f2), h1 in ca.items():
        for (g1, g2), h2 in cc.items():
            comp[((f1, g1), (f2, g2))] = (h1, h2)
    return FinCategory(objs, mors, ids, comp, name=f"{A.name}x{C.name}")


def full_subcategory(C: FinCategory, objects: Iterable[Obj]) -> FinCategory:
    keep = set(objects)
    mors = [m for m in C.morphisms if C.src(m) in keep and C.tgt(m) in keep]
    mset = set(mors)
    comp = {k: v for k, v in C.composition_table().items() if k[0] in mset and k[1] in mset}
    return FinCategory(
        [x for x in C.objects if x in keep],
        [(m, C.src(m), C.tgt(m)) for m in mors],
        {x: C.identity(x) for x in keep},
        comp,
        name=f"{C.name}|sub",
    )


def isomorphism_between(C: FinCategory, x: Obj, y: Obj):
    """Return a pair ``(f: x -> y, g: y -> x)`` of mutually inverse morphisms, or None."""
    for f in C.hom(x, y):
        for g in C.hom(y, x):
            if C.compose(g, f) == C.identity(x) and C.compose(f, g) == C.identity(y):
                return f, g
    return None


# ---------------------------------------------------------------------------
# Functors and transformations
# ---------------------------------------------------------------------------


class CatFunctor:
    def __init__(self, src: FinCategory, tgt: FinCategory, on_objects: Mapping, on_morphisms: Mapping,
                 name: str = ""):
        self.src = src
        self.tgt = tgt
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        self.name = name

    def ob(self, x: Obj) -> Obj:
        return self.on_objects[x]

    def mor(self, m: Mor) -> Mor:
        return self.on_morphisms[m]

    def then(self, g: "CatFunctor") -> "CatFunctor":
        """``g . self``."""
        return compose_functors(g, self)

    def _fingerprint(self):
        return (
            tuple((x, self.on_objects.get(x)) for x in self.src.objects),
            tuple((m, self.on_morphisms.get(m)) for m in self.src.morphisms),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CatFunctor):
            return NotImplemented
        return (self.src == other.src and self.tgt == other.tgt
                and self._fingerprint() == other._fingerprint())

    def __hash__(self) -> int:
        return hash(self._fingerprint())

    def __repr__(self) -> str:
        label = self.name or "F"
        return f"<CatFunctor {label}: {self.src!r} -> {self.tgt!r}>"

    def to_json(self) -> dict:
        return {
            "on_objects": [[thaw(x), thaw(self.on_objects[x])] for x in self.src.objects],
            "on_morphisms": [[thaw(m), thaw(self.on_morphisms[m])] for m in self.src.morphisms],
        }

    @classmethod
    def from_json(cls, data: Mapping, src: FinCategory, tgt: FinCategory) -> "CatFunctor":
        def pairs(v):
            if isinstance(v, Mapping):
                return {freeze(k): freeze(x) for k, x in v.items()}
            return {freeze(k): freeze(x) for k, x in v}

        try:
            return cls(src, tgt, pairs(data["on_objects"]), pairs(data["on_morphisms"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed functor data: {exc}") from exc


def identity_functor(A: FinCategory) -> CatFunctor:
    return A.memo("identity_functor", lambda: CatFunctor(
        A, A, {x: x for x in A.objects}, {m: m for m in A.morphisms}, name="id"))


def compose_functors(g: CatFunctor, f: CatFunctor) -> CatFunctor:
    """``g . f``."""
    if f.tgt != g.src:
        raise ValueError("functors are not composable")
    return CatFunctor(
        f.src, g.tgt,
        {x: g.on_objects[f.on_objects[x]] for x in f.src.objects},
        {m: g.on_morphisms[f.on_morphisms[m]] for m in f.src.morphisms},
        name=f"{g.name}.{f.name}",
    )


def object_functor(T: FinCategory, t: Obj, one: FinCategory | None = None) -> CatFunctor:
    """The functor from the terminal category picking out ``t``."""
    one = one or terminal()
    (x,) = one.objects
    return CatFunctor(one, T, {x: t}, {one.identity(x): T.identity(t)}, name=f"<{t}>")


def constant_functor(A: FinCategory, T: FinCategory, t: Obj) -> CatFunctor:
    return CatFunctor(A, T, {x: t for x in A.objects}, {m: T.identity(t) for m in A.morphisms},
                      name=f"const {t}")


def to_terminal(A: FinCategory, one: FinCategory | None = None) -> CatFunctor:
    one = one or terminal()
    (x,) = one.objects
    return constant_functor(A, one, x)


def opposite_functor(F: CatFunctor) -> CatFunctor:
    return CatFunctor(opposite(F.src), opposite(F.tgt), F.on_objects, F.on_morphisms, name=f"{F.name}^op")


def product_functor(F: CatFunctor, G: CatFunctor, src=None, tgt=None) -> CatFunctor:
    src = src or product_category(F.src, G.src)
    tgt = tgt or product_category(F.tgt, G.tgt)
    return CatFunctor(
        src, tgt,
        {(a, c): (F.ob(a), G.ob(c)) for a, c in src.objects},
        {(f, g): (F.mor(f), G.mor(g)) for f, g in src.morphisms},
        name=f"{F.name}x{G.name}",
    )


def inclusion_functor(S: FinCategory, C: FinCategory) -> CatFunctor:
    return CatFunctor(S, C, {x: x for x in S.objects}, {m: m for m in S.morphisms}, name="incl")


@dataclass
class NatTransform:
    src: CatFunctor
    tgt: CatFunctor
    components: dict

    def __getitem__(self, x):
        return self.components[x]


def identity_transform(F: CatFunctor) -> NatTransform:
    return NatTransform(F, F, {x: F.tgt.identity(F.ob(x)) for x in F.src.objects})


@dataclass
class SetFunctor:
    """A functor into finite sets, either on ``base`` or on its opposite.

    For ``variance == "contravariant"`` a morphism ``p: a' -> a`` acts
    ``W(a) -> W(a')``; for ``"covariant"`` it acts ``W(a') -> W(a)``.
    ``action`` maps ``(p, u)`` to the image of ``u``.
    """

    base: FinCategory
    variance: str
    sets: dict
    action: dict

    def elements(self, a) -> tuple:
        return self.sets.get(a, ())

    def act(self, p, u):
        return self.action[(p, u)]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _validate_category(C: FinCategory) -> Report:
    rep = Report(subject="category")
    for x in C.objects:
        i = C.identity(x)
        if C.src(i) != x or C.tgt(i) != x:
            rep.add("identity_typing", (i,), f"identity of {x!r} is not an endomorphism of it")
    table = C.composition_table()
    for (f, g), h in sorted(table.items(), key=ckey):
        if C.tgt(f) != C.src(g):
            rep.add("composition_typing", (f, g), "table lists a non-composable pair")
        elif C.src(h) != C.src(f) or C.tgt(h) != C.tgt(g):
            rep.add("composition_typing", (f, g, h), "composite has wrong endpoints")
    pairs = list(C.composable_pairs())
    for f, g in pairs:
        rep.checked += 1
        if (f, g) not in table:
            rep.add("totality", (f, g), "composite missing")
    if not rep.ok:
        return rep
    for f in C.morphisms:
        rep.checked += 2
        if C.compose(C.identity(C.tgt(f)), f) != f:
            rep.add("left_unit", (f,), "id . f != f")
        if C.compose(f, C.identity(C.src(f))) != f:
            rep.add("right_unit", (f,), "f . id != f")
    by_src: dict = {}
    for m in C.morphisms:
        by_src.setdefault(C.src(m), []).append(m)
    for f, g in pairs:
        for h in by_src.get(C.tgt(g), ()):
            rep.checked += 1
            if C.compose(h, C.compose(g, f)) != C.compose(C.compose(h, g), f):
                rep.add("associativity", (f, g, h), "(h.g).f != h.(g.f)")
    return rep


def _validate_functor(F: CatFunctor) -> Report:
    rep = Report(subject="functor")
    A, C = F.src, F.tgt
    for x in A.objects:
        if x not in F.on_objects or not C.has_object(F.on_objects[x]):
            raise StructuralError(f"functor object image of {x!r} does not resolve")
    for m in A.morphisms:
        if m not in F.on_morphisms or not C.has_morphism(F.on_morphisms[m]):
            raise StructuralError(f"functor morphism image of {m!r} does not resolve")
    for m in A.morphisms:
        rep.checked += 1
        fm = F.mor(m)
        if C.src(fm) != F.ob(A.src(m)) or C.tgt(fm) != F.ob(A.tgt(m)):
            rep.add("preserves_endpoints", (m,), "image has wrong endpoints")
    if not rep.ok:
        return rep
    for x in A.objects:
        rep.checked += 1
        if F.mor(A.identity(x)) != C.identity(F.ob(x)):
            rep.add("preserves_identity", (A.identity(x),), "F(id) != id")
    for f, g in A.composable_pairs():
        rep.checked += 1
        if F.mor(A.compose(g, f)) != C.compose(F.mor(g), F.mor(f)):
            rep.add("preserves_composition", (f, g), "F(g.f) != F(g).F(f)")
    return rep


def _validate_transform(t: NatTransform) -> Report:
    rep = Report(subject="transformation")
    F, G = t.src, t.tgt
    A, C = F.src, F.tgt
    for x in A.objects:
        if x not in t.components or not C.has_morphism(t.components[x]):
            raise StructuralError(f"component at {x!r} does not resolve")
    for x in A.objects:
        c = t.components[x]
        rep.checked += 1
        if C.src(c) != F.ob(x) or C.tgt(c) != G.ob(x):
            rep.add("component_typing", (x, c), "component has wrong endpoints")
    if not rep.ok:
        return rep
    for m in A.morphisms:
        rep.checked += 1
        a, b = A.src(m), A.tgt(m)
        if C.compose(t.components[b], F.mor(m)) != C.compose(G.mor(m), t.components[a]):
            rep.add("naturality", (m,), "square does not commute")
    return rep


def _validate_setfunctor(W: SetFunctor) -> Report:
    rep = Report(subject="set-valued functor")
    A = W.base
    contra = W.variance == "contravariant"
    for p in A.morphisms:
        a, b = A.src(p), A.tgt(p)
        dom, cod = (b, a) if contra else (a, b)
        for u in W.elements(dom):
            rep.checked += 1
            if (p, u) not in W.action:
                raise StructuralError(f"action of {p!r} on {u!r} missing")
            if W.action[(p, u)] not in W.elements(cod):
                rep.add("action_typing", (p, u), "image outside target set")
    if not rep.ok:
        return rep
    for x in A.objects:
        for u in W.elements(x):
            rep.checked += 1
            if W.act(A.identity(x), u) != u:
                rep.add("action_unit", (x, u), "identity acts nontrivially")
    for f, g in A.composable_pairs():
        h = A.compose(g, f)
        if contra:
            for u in W.elements(A.tgt(g)):
                rep.checked += 1
                if W.act(h, u) != W.act(f, W.act(g, u)):
                    rep.add("action_composition", (f, g, u), "W(g.f) != W(f)W(g)")
        else:
            for u in W.elements(A.src(f)):
                rep.checked += 1
                if W.act(h, u) != W.act(g, W.act(f, u)):
                    rep.add("action_composition", (f, g, u), "W(g.f) != W(g)W(f)")
    return rep


def validate(entity) -> Report:
    """Check the laws of a category, functor, transformation or set-valued functor.

    Unresolved identifiers raise :class:`StructuralError`; law failures are
    collected in the returned report, each with witness morphisms.
    """
    if isinstance(entity, FinCategory):
        return _validate_category(entity)
    if isinstance(entity, CatFunctor):
        return _validate_functor(entity)
    if isinstance(entity, NatTransform):
        return _validate_transform(entity)
    if isinstance(entity, SetFunctor):
        return _validate_setfunctor(entity)
    if hasattr(entity, "validate"):
        return entity.validate()
    raise TypeError(f"cannot validate {type(entity).__name__}")


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def backtrack(variables: Sequence, domains: Callable[[Any, dict], Iterable],
              checks: Mapping[Any, Sequence[Callable[[dict], bool]]]) -> Iterator[dict]:
    """Generic depth-first search.

    ``domains(var, partial)`` lists candidate values; every callable in
    ``checks[var]`` must accept the partial assignment once ``var`` is set
    (checks should only read variables at or before ``var``).
    """
    n = len(variables)
    assignment: dict = {}

    def rec(i: int):
        if i == n:
            yield dict(assignment)
            return
        v = variables[i]
        for val in domains(v, assignment):
            assignment[v] = val
            if all(c(assignment) for c in checks.get(v, ())):
                yield from rec(i + 1)
            del assignment[v]

    yield from rec(0)


def iter_functors(X: FinCategory, T: FinCategory, object_candidates: Mapping | None = None,
                  limit: int | None = None) -> Iterator[CatFunctor]:
    """All functors ``X -> T`` in canonical order."""
    object_candidates = object_candidates or {}
    obj_vars = [("o", x) for x in X.objects]
    mor_vars = [("m", m) for m in X.morphisms if not X.is_identity(m)]
    variables = obj_vars + mor_vars
    position = {v: i for i, v in enumerate(variables)}

    def image(asg, m):
        if X.is_identity(m):
            return T.identity(asg[("o", X.src(m))])
        return asg[("m", m)]

    def dom(v, asg):
        kind, z = v
        if kind == "o":
            return object_candidates.get(z, T.objects)
        return T.hom(asg[("o", X.src(z))], asg[("o", X.tgt(z))])

    checks: dict = {}
    for f, g in X.composable_pairs():
        h = X.compose(g, f)
        involved = [("m", m) for m in (f, g, h) if not X.is_identity(m)]
        if not involved:
            continue
        last = max(involved, key=position.__getitem__)
        checks.setdefault(last, []).append(
            lambda asg, f=f, g=g, h=h: image(asg, h) == T.compose(image(asg, g), image(asg, f)))
    count = 0
    for asg in backtrack(variables, dom, checks):
        yield CatFunctor(X, T, {x: asg[("o", x)] for x in X.objects},
                         {m: image(asg, m) for m in X.morphisms})
        count += 1
        if limit is not None and count >= limit:
            return


def iter_transformations(F: CatFunctor, G: CatFunctor) -> Iterator[NatTransform]:
    A, C = F.src, F.tgt
    variables = list(A.objects)
    pos = {x: i for i, x in enumerate(variables)}
    checks: dict = {}
    for m in A.morphisms:
        a, b = A.src(m), A.tgt(m)
        last = a if pos[a] >= pos[b] else b
        checks.setdefault(last, []).append(
            lambda asg, m=m, a=a, b=b: C.compose(asg[b], F.mor(m)) == C.compose(G.mor(m), asg[a]))
    for asg in backtrack(variables, lambda x, _: C.hom(F.ob(x), G.ob(x)), checks):
        yield NatTransform(F, G, asg)


# ---------------------------------------------------------------------------
# Elements and (co)limits
# ---------------------------------------------------------------------------


def category_of_elements(W: SetFunctor) -> tuple[FinCategory, CatFunctor]:
    """Category of elements of a set-valued functor, with its projection.

    Objects are pairs ``(a, u)`` with ``u`` in ``W(a)``. For a contravariant
    ``W`` a morphism ``(a, u) -> (a', u')`` is ``p: a -> a'`` with
    ``W(p)(u') == u``; for a covariant ``W`` it is ``p`` with
    ``W(p)(u) == u'``. Morphisms are named ``(p, u, u')``.
    """
    A = W.base
    contra = W.variance == "contravariant"
    objs = [(a, u) for a in A.objects for u in W.elements(a)]
    mors = []
    for p in A.morphisms:
        a, b = A.src(p), A.tgt(p)
        for u in W.elements(a):
            for v in W.elements(b):
                if (W.act(p, v) == u) if contra else (W.act(p, u) == v):
                    mors.append(((p, u, v), (a, u), (b, v)))
    mset = {m for m, _, _ in mors}
    ids = {(a, u): (A.identity(a), u, u) for a, u in objs}
    comp = {}
    by_src: dict = {}
    for m, s, t in mors:
        by_src.setdefault(s, []).append((m, t))
    for m, s, t in mors:
        for m2, t2 in by_src.get(t, ()):
            h = (A.compose(m2[0], m[0]), m[1], m2[2])
            if h not in mset:
                raise StructuralError("set-valued functor is not functorial")
            comp[(m, m2)] = h
    El = FinCategory(objs, mors, ids, comp, name="el")
    proj = CatFunctor(El, A, {o: o[0] for o in objs}, {m: m[0] for m, _, _ in mors}, name="proj")
    return El, proj


@dataclass
class Diagram:
    shape: FinCategory
    functor: CatFunctor

    @property
    def target(self) -> FinCategory:
        return self.functor.tgt

    def validate(self) -> Report:
        return _validate_functor(self.functor)


def iter_cocones(D: CatFunctor, apex: Obj) -> Iterator[dict]:
    """Cocones ``D => const apex`` in canonical order."""
    S, M = D.src, D.tgt
    variables = list(S.objects)
    pos = {x: i for i, x in enumerate(variables)}
    checks: dict = {}
    for s in S.morphisms:
        i, j = S.src(s), S.tgt(s)
        last = i if pos[i] >= pos[j] else j
        checks.setdefault(last, []).append(
            lambda asg, s=s, i=i, j=j: M.compose(asg[j], D.mor(s)) == asg[i])
    yield from backtrack(variables, lambda x, _: M.hom(D.ob(x), apex), checks)


def _factorizations(M: FinCategory, apex, legs: Mapping, other_apex, other_legs: Mapping, objects) -> list:
    out = []
    for h in M.hom(apex, other_apex):
        if all(M.compose(h, legs[i]) == other_legs[i] for i in objects):
            out.append(h)
            if len(out) > 1:
                break
    return out


@dataclass
class UniversalCone:
    """A (co)limit: apex, legs, and the factorization of every competing (co)cone."""

    direction: str
    apex: Obj
    legs: dict
    certificate: list

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "apex": thaw(self.apex),
            "legs": [[thaw(k), thaw(self.legs[k])] for k in csorted(self.legs)],
            "certificate": [
                {"apex": thaw(a), "legs": thaw(l), "factor": thaw(h)} for a, l, h in self.certificate
            ],
        }


def colimit_or_limit(D: Diagram | CatFunctor, direction: str = "colimit",
                     max_cocones: int | None = None) -> UniversalCone:
    """Brute-force (co)limit of a finite diagram in a finite category.

    Returns the canonical-order least universal (co)cone. For a limit the
    legs are morphisms ``apex -> D(i)`` of the original category.
    """
    F = D.functor if isinstance(D, Diagram) else D
    if direction == "limit":
        F = opposite_functor(F)
    elif direction != "colimit":
        raise ValueError(f"unknown direction {direction!r}")
    S, M = F.src, F.tgt
    all_cocones = []
    for m in M.objects:
        for c in iter_cocones(F, m):
            all_cocones.append((m, c))
            if max_cocones is not None and len(all_cocones) > max_cocones:
                raise BoundExceeded(f"more than {max_cocones} cocones")
    objs = S.objects
    for apex, legs in all_cocones:
        cert = []
        for other_apex, other_legs in all_cocones:
            hs = _factorizations(M, apex, legs, other_apex, other_legs, objs)
            if len(hs) != 1:
                break
            cert.append((other_apex, tuple(other_legs[i] for i in objs), hs[0]))
        else:
            return UniversalCone(direction, apex, dict(legs), cert)
    raise NoUniversalObject(f"no {direction} exists in the target")


def verify_universal_cone(D: CatFunctor, apex, legs: Mapping, direction: str = "colimit") -> Report:
    """Independent re-check: every competing (co)cone factors uniquely."""
    rep = Report(subject=f"universal {direction}")
    F = D
    S = D.src
    M = D.tgt
    if direction == "limit":
        S = opposite(D.src)
        M = opposite(D.tgt)
        F = CatFunctor(S, M, D.on_objects, D.on_morphisms)
    for i in S.objects:
        if legs[i] not in M.hom(F.ob(i), apex):
            rep.add("leg_typing", (i, legs[i]), "leg has wrong endpoints")
    for s in S.morphisms:
        if M.compose(legs[S.tgt(s)], F.mor(s)) != legs[S.src(s)]:
            rep.add("cocone_naturality", (s,), "legs do not form a (co)cone")
    if not rep.ok:
        return rep
    for m in M.objects:
        for other in iter_cocones(F, m):
            rep.checked += 1
            n = sum(1 for h in M.hom(apex, m) if all(M.compose(h, legs[i]) == other[i] for i in S.objects))
            if n != 1:
                rep.add("unique_factorization", (m, tuple(other[i] for i in S.objects)),
                        f"{n} factorizations")
                return rep
    return rep


def canonical_iso_objects(M: FinCategory, objs: Iterable) -> list:
    """Group objects into isomorphism classes (canonical order)."""
    classes: list = []
    for x in M.objects if objs is None else objs:
        for cl in classes:
            if isomorphism_between(M, cl[0], x):
                cl.append(x)
                break
        else:
            classes.append([x])
    return classes


def all_subsets(xs: Sequence, max_size: int) -> Iterator[tuple]:
    for k in range(1, max_size + 1):
        yield from itertools.combinations(xs, k)


# ---------------------------------------------------------------------------
# Tuple products and computable categories
# ---------------------------------------------------------------------------


def tuple_product(cats: Sequence[FinCategory], name: str = "") -> FinCategory:
    """Product whose objects and morphisms are plain tuples (one entry per factor)."""
    cats = list(cats)
    objs = list(itertools.product(*(c.objects for c in cats)))
    mors = []
    for ms in itertools.product(*(c.morphisms for c in cats)):
        mors.append((ms, tuple(c.src(m) for c, m in zip(cats, ms)), tuple(c.tgt(m) for c, m in zip(cats, ms))))
    ids = {x: tuple(c.identity(xi) for c, xi in zip(cats, x)) for x in objs}
    by_src: dict = {}
    for m, s, t in mors:
        by_src.setdefault(s, []).append((m, t))
    comp = {}
    for m, s, t in mors:
        for m2, _ in by_src.get(t, ()):
            comp[(m, m2)] = tuple(c.compose(g, f) for c, f, g in zip(cats, m, m2))
    return FinCategory(objs, mors, ids, comp, name=name or "x".join(c.name for c in cats) or "1")


def power_category(A: FinCategory, n: int) -> FinCategory:
    """``A^n`` with tuple objects; ``A^0`` is the terminal category on ``()``."""
    return A.memo(("power", n), lambda: tuple_product([A] * n, name=f"{A.name}^{n}"))


def tuple_functor(fs: Sequence[CatFunctor], src: FinCategory | None = None,
                  tgt: FinCategory | None = None) -> CatFunctor:
    fs = list(fs)
    src = src or tuple_product([f.src for f in fs])
    tgt = tgt or tuple_product([f.tgt for f in fs])
    return CatFunctor(src, tgt,
                      {x: tuple(f.ob(xi) for f, xi in zip(fs, x)) for x in src.objects},
                      {m: tuple(f.mor(mi) for f, mi in zip(fs, m)) for m in src.morphisms})


class ComputableCategory:
    """A category given by an object enumerator and computed hom-sets.

    Every enumeration takes an explicit bound; exceeding it raises
    :class:`BoundExceeded`. Finite fragments can be materialized as
    :class:`FinCategory` values for exhaustive checks.
    """

    def __init__(self, enumerate_objects: Callable[[], Iterable], hom: Callable[[Any, Any], Iterable],
                 compose: Callable[[Any, Any], Any], identity: Callable[[Any], Any], name: str = "",
                 bound: int = 10_000):
        self._enum = enumerate_objects
        self._hom = hom
        self._compose = compose
        self._identity = identity
        self.name = name
        self.bound = bound
        self._cache: dict = {}

    def objects(self, limit: int | None = None) -> list:
        limit = self.bound if limit is None else limit
        out = []
        for x in self._enum():
            out.append(x)
            if len(out) > limit:
                raise BoundExceeded(f"more than {limit} objects in {self.name}")
        return out

    def hom(self, a, b) -> tuple:
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = tuple(self._hom(a, b))
        return self._cache[key]

    def compose(self, g, f):
        return self._compose(g, f)

    def identity(self, a):
        return self._identity(a)

    def fragment(self, objects: Iterable) -> FinCategory:
        objs = list(objects)
        mors = [(m, a, b) for a in objs for b in objs for m in self.hom(a, b)]
        src = {m: a for m, a, _ in mors}
        if len(src) != len(mors):
            raise StructuralError("morphism names are not unique across hom-sets")
        comp = {}
        for f, a, b in mors:
            for c in objs:
                for g in self.hom(b, c):
                    comp[(f, g)] = self._compose(g, f)
        return FinCategory(objs, mors, {a: self._identity(a) for a in objs}, comp, name=f"{self.name}|frag")
