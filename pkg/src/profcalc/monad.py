"""The free strict monoidal category monad on profunctors, truncated at arity N.

Everything T-shaped is handled arity by arity: ``TA`` restricted to
sequences of length ``n`` is the power ``A^n``, ``TJ`` restricted likewise is
``J^n``, and double sequences of a fixed shape form a product of powers.
Because every cell of the monad preserves total length, checking all arities
``<= N`` is exactly checking the truncated monad.

Monoidal structures are unbiased: a tensor for every arity, an associator
per double sequence and a unitor per object, with lax or colax orientation.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from ._order import freeze, thaw
from .errors import (FactorizationFailed, NotAKanExtension, PreconditionFailed,
                     StructuralError)
from .fincat import (CatFunctor, ComputableCategory, FinCategory, Report, compose_functors,
                     discrete, identity_functor, iter_functors, power_category, tuple_functor,
                     tuple_product)
from .kan import KanCertificate, cell_exactness, defines_kan, factor_through_kan, phi_star
from .prof import (Cell, ProfIso, Profunctor, composite, compose_prof, conjoint, induced_cell,
                   is_opcartesian, restrict, tabulation_category, unit_prof, validate_cell)

N_DEFAULT = 3


# ---------------------------------------------------------------------------
# Sequences, shapes and permutations
# ---------------------------------------------------------------------------


def sequences(items: Sequence, N: int, min_len: int = 0) -> Iterator[tuple]:
    for n in range(min_len, N + 1):
        yield from itertools.product(items, repeat=n)


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def double_shapes(N: int, total: int | None = None) -> list:
    """Inner-length tuples with outer length ``<= N`` and total ``<= N`` (or ``== total``)."""
    out = []
    for outer in range(N + 1):
        for t in range(N + 1):
            if total is not None and t != total:
                continue
            out.extend(_compositions(t, outer))
    return out


def triple_shapes(N: int) -> list:
    """Tuples of double shapes with outer length ``<= N`` and total leaves ``<= N``."""
    out = []
    doubles = double_shapes(N)
    for outer in range(N + 1):
        for combo in itertools.product(doubles, repeat=outer):
            if sum(sum(s) for s in combo) <= N:
                out.append(combo)
    return out


def flatten(xss: Sequence[Sequence]) -> tuple:
    return tuple(x for xs in xss for x in xs)


def regroup(flat: Sequence, shape: Sequence[int]) -> tuple:
    out, i = [], 0
    for k in shape:
        out.append(tuple(flat[i:i + k]))
        i += k
    return tuple(out)


def shape_of(xss: Sequence[Sequence]) -> tuple:
    return tuple(len(xs) for xs in xss)


def permute(sigma: Sequence[int], xs: Sequence) -> tuple:
    """``sigma . xs = (x_sigma(0), ..., x_sigma(n-1))``.

    With this convention ``tau . (sigma . xs) = (sigma o tau) . xs``.
    """
    return tuple(xs[i] for i in sigma)


def perm_compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple:
    """``sigma o tau`` as a tuple: ``i -> sigma[tau[i]]``."""
    return tuple(sigma[t] for t in tau)


def block_sum(sigmas: Sequence[Sequence[int]]) -> tuple:
    """Disjoint union of permutations acting on consecutive blocks."""
    out, off = [], 0
    for s in sigmas:
        out.extend(off + i for i in s)
        off += len(s)
    return tuple(out)


def block_permutation(tau: Sequence[int], lengths: Sequence[int]) -> tuple:
    """The permutation of the flattened sequence that moves whole blocks by ``tau``."""
    offs = [0]
    for k in lengths:
        offs.append(offs[-1] + k)
    return tuple(j for i in tau for j in range(offs[i], offs[i] + lengths[i]))


def permutations(n: int) -> list:
    return [tuple(p) for p in itertools.permutations(range(n))]


# ---------------------------------------------------------------------------
# The T image: computable category, per-arity powers, shaped products
# ---------------------------------------------------------------------------


def shaped_category(A: FinCategory, shape) -> FinCategory:
    """Product category for a nested shape: an int ``k`` is ``A^k``, a tuple is a product."""
    if isinstance(shape, int):
        return power_category(A, shape)
    return A.memo(("shaped", shape), lambda: tuple_product([shaped_category(A, s) for s in shape]))


def tuple_prof(profs: Sequence[Profunctor], src: FinCategory | None = None,
               tgt: FinCategory | None = None) -> Profunctor:
    """Coordinatewise product of profunctors; elements and actions are tuples."""
    profs = list(profs)
    src = src or tuple_product([J.src for J in profs])
    tgt = tgt or tuple_product([J.tgt for J in profs])
    elems = {}
    for xs in src.objects:
        for ys in tgt.objects:
            es = list(itertools.product(*(J.elements(x, y) for J, x, y in zip(profs, xs, ys))))
            if es:
                elems[(xs, ys)] = es
    left, right = {}, {}
    for p in src.morphisms:
        if src.is_identity(p):
            continue
        t = src.tgt(p)
        for ys in tgt.objects:
            for u in elems.get((t, ys), ()):
                left[(p, ys, u)] = tuple(J.lact(pi, y, ui) for J, pi, y, ui in zip(profs, p, ys, u))
    for q in tgt.morphisms:
        if tgt.is_identity(q):
            continue
        s = tgt.src(q)
        for xs in src.objects:
            for u in elems.get((xs, s), ()):
                right[(xs, q, u)] = tuple(J.ract(x, qi, ui) for J, x, qi, ui in zip(profs, xs, q, u))
    return Profunctor(src, tgt, elems, left, right, name="x".join(J.name or "J" for J in profs))


def _prof_cache(J: Profunctor) -> dict:
    cache = J.__dict__.get("_tcache")
    if cache is None:
        cache = J.__dict__["_tcache"] = {}
    return cache


def power_prof(J: Profunctor, n: int) -> Profunctor:
    """``J^n: A^n -|-> B^n``, the arity-``n`` slice of ``TJ``."""
    cache = _prof_cache(J)
    if ("power", n) not in cache:
        cache[("power", n)] = tuple_prof([J] * n, power_category(J.src, n), power_category(J.tgt, n))
    return cache[("power", n)]


def shaped_prof(J: Profunctor, shape) -> Profunctor:
    if isinstance(shape, int):
        return power_prof(J, shape)
    cache = _prof_cache(J)
    if ("shaped", shape) not in cache:
        cache[("shaped", shape)] = tuple_prof([shaped_prof(J, s) for s in shape],
                                              shaped_category(J.src, shape), shaped_category(J.tgt, shape))
    return cache[("shaped", shape)]


def power_functor(f: CatFunctor, n: int) -> CatFunctor:
    return tuple_functor([f] * n, power_category(f.src, n), power_category(f.tgt, n))


def flatten_functor(A: FinCategory, shape: Sequence[int]) -> CatFunctor:
    """``mu_A`` restricted to double sequences of the given shape."""
    def build():
        S = shaped_category(A, tuple(shape))
        T = power_category(A, sum(shape))
        return CatFunctor(S, T, {x: flatten(x) for x in S.objects},
                          {m: flatten(m) for m in S.morphisms}, name="mu")
    return A.memo(("flatten", tuple(shape)), build)


def singleton_functor(A: FinCategory) -> CatFunctor:
    """``eta_A: A -> A^1``."""
    def build():
        T = power_category(A, 1)
        return CatFunctor(A, T, {x: (x,) for x in A.objects}, {m: (m,) for m in A.morphisms}, name="eta")
    return A.memo(("singleton",), build)


class TCategory(ComputableCategory):
    """``TA`` truncated at arity ``N``: sequences with coordinatewise homs."""

    def __init__(self, A: FinCategory, N: int = N_DEFAULT, bound: int = 100_000):
        self.base = A
        self.N = N

        def hom(xs, ys):
            if len(xs) != len(ys):
                return ()
            return itertools.product(*(A.hom(x, y) for x, y in zip(xs, ys)))

        def comp(g, f):
            return tuple(A.compose(gi, fi) for gi, fi in zip(g, f))

        super().__init__(lambda: sequences(A.objects, N), hom, comp,
                         lambda xs: tuple(A.identity(x) for x in xs), name=f"T{A.name}", bound=bound)

    def arity(self, n: int) -> FinCategory:
        if n > self.N:
            from .errors import BoundExceeded
            raise BoundExceeded(f"arity {n} exceeds bound {self.N}")
        return power_category(self.base, n)


class TFunctor:
    """``Tf`` acting coordinatewise."""

    def __init__(self, f: CatFunctor, N: int = N_DEFAULT):
        self.base, self.N = f, N

    def ob(self, xs):
        return tuple(self.base.ob(x) for x in xs)

    def mor(self, ps):
        return tuple(self.base.mor(p) for p in ps)

    def arity(self, n: int) -> CatFunctor:
        return power_functor(self.base, n)


class TProfunctor:
    """``TJ``: tuples of elements, coordinatewise actions."""

    def __init__(self, J: Profunctor, N: int = N_DEFAULT):
        self.base, self.N = J, N

    def elements(self, xs, ys) -> list:
        if len(xs) != len(ys):
            return []
        return list(itertools.product(*(self.base.elements(x, y) for x, y in zip(xs, ys))))

    def lact(self, ps, ys, us):
        return tuple(self.base.lact(p, y, u) for p, y, u in zip(ps, ys, us))

    def ract(self, xs, qs, us):
        return tuple(self.base.ract(x, q, u) for x, q, u in zip(xs, qs, us))

    def arity(self, n: int) -> Profunctor:
        return power_prof(self.base, n)


class TCell:
    """``T phi`` acting coordinatewise."""

    def __init__(self, phi: Cell, N: int = N_DEFAULT):
        self.base, self.N = phi, N

    def __call__(self, xs, ys, us):
        return tuple(self.base(x, y, u) for x, y, u in zip(xs, ys, us))

    def arity(self, n: int) -> Cell:
        phi = self.base
        J, K = power_prof(phi.hsrc, n), power_prof(phi.htgt, n)
        comps = {(xs, ys): {us: self(xs, ys, us) for us in J.elements(xs, ys)} for xs, ys in J.pairs()}
        return Cell(J, K, power_functor(phi.f, n), power_functor(phi.g, n), comps, name=f"T{phi.name}")


def apply_T(entity, N: int = N_DEFAULT):
    """Image of a category, functor, profunctor or cell under the truncated monad."""
    if isinstance(entity, FinCategory):
        return TCategory(entity, N)
    if isinstance(entity, CatFunctor):
        return TFunctor(entity, N)
    if isinstance(entity, Profunctor):
        return TProfunctor(entity, N)
    if isinstance(entity, Cell):
        return TCell(entity, N)
    raise TypeError(f"cannot apply T to {type(entity).__name__}")


def check_normality(A: FinCategory, N: int = N_DEFAULT) -> Report:
    """``T 1_A = 1_{TA}`` on the nose, arity by arity."""
    rep = Report(subject=f"normality of T at {A.name}")
    for n in range(N + 1):
        rep.checked += 1
        if power_prof(unit_prof(A), n) != unit_prof(power_category(A, n)):
            rep.add("normality", (n,), "T(1_A) differs from 1_TA")
    return rep


def t_compositor(J: Profunctor, H: Profunctor, n: int) -> ProfIso:
    """The invertible comparison ``J^n . H^n ~ (J.H)^n`` at one arity."""
    L, Q = compose_prof(power_prof(J, n), power_prof(H, n))
    JH, P = compose_prof(J, H)
    R = power_prof(JH, n)
    A, C = J.src, H.tgt

    def fwd(xs, zs, gen):
        ys, us, vs = gen
        return tuple(P.cls(x, z, (y, u, v)) for x, z, y, u, v in zip(xs, zs, ys, us, vs))

    forward = induced_cell(L, R, identity_functor(power_category(A, n)),
                           identity_functor(power_category(C, n)), fwd)
    # class names are least generators, so a tuple of classes yields a generator directly
    comps = {}
    for xs, zs in R.pairs():
        comps[(xs, zs)] = {cs: Q.cls(xs, zs, (tuple(c[0] for c in cs), tuple(c[1] for c in cs),
                                              tuple(c[2] for c in cs)))
                           for cs in R.elements(xs, zs)}
    backward = Cell(R, L, forward.f, forward.g, comps, name="T_comp_inv")
    return ProfIso(forward, backward)


# ---------------------------------------------------------------------------
# Monad cells and laws
# ---------------------------------------------------------------------------


def mu_cell(J: Profunctor, shape: Sequence[int]) -> Cell:
    """``mu_J`` on double sequences of one shape: flattening."""
    shape = tuple(shape)
    cache = _prof_cache(J)
    if ("mu", shape) not in cache:
        S = shaped_prof(J, shape)
        T = power_prof(J, sum(shape))
        comps = {(xs, ys): {us: flatten(us) for us in S.elements(xs, ys)} for xs, ys in S.pairs()}
        cache[("mu", shape)] = Cell(S, T, flatten_functor(J.src, shape), flatten_functor(J.tgt, shape),
                                    comps, name="mu")
    return cache[("mu", shape)]


def eta_cell(J: Profunctor) -> Cell:
    """``eta_J``: singleton insertion ``J => J^1``."""
    cache = _prof_cache(J)
    if "eta" not in cache:
        T = power_prof(J, 1)
        comps = {(x, y): {u: (u,) for u in J.elements(x, y)} for x, y in J.pairs()}
        cache["eta"] = Cell(J, T, singleton_functor(J.src), singleton_functor(J.tgt), comps, name="eta")
    return cache["eta"]


class MonadCells:
    """Family of cells indexed by shape (``mu``) or the single ``eta`` cell."""

    def __init__(self, which: str, cells: Mapping):
        self.which = which
        self.cells = dict(cells)

    def __getitem__(self, shape) -> Cell:
        return self.cells[shape]

    def __iter__(self):
        return iter(self.cells.items())

    def validate(self) -> Report:
        rep = Report(subject=f"{self.which} cells")
        for shape, c in self.cells.items():
            r = validate_cell(c)
            for v in r.violations:
                rep.add(v.law, (shape,) + v.witness, v.detail)
            rep.checked += r.checked + 1
        return rep


def monad_cells(J: Profunctor, which: str = "mu", N: int = N_DEFAULT) -> MonadCells:
    if which == "mu":
        return MonadCells("mu", {s: mu_cell(J, s) for s in double_shapes(N)})
    if which == "eta":
        return MonadCells("eta", {1: eta_cell(J)})
    raise ValueError(f"unknown monad cell {which!r}")


def _nest(flat: Sequence, t) -> tuple:
    """Regroup a flat tuple along a triple shape."""
    out, i = [], 0
    for s in t:
        grp = []
        for k in s:
            grp.append(tuple(flat[i:i + k]))
            i += k
        out.append(tuple(grp))
    return tuple(out)


def check_monad_laws(J: Profunctor, N: int = N_DEFAULT) -> Report:
    """``mu.Tmu = mu.muT`` and ``mu.T eta = id = mu.eta T``, read off the stored cell components."""
    rep = Report(subject="monad laws")
    leaves = list(J.all_elements())
    by_total: dict = {}
    for t in triple_shapes(N):
        by_total.setdefault(sum(sum(s) for s in t), []).append(t)
    for L, shapes in by_total.items():
        combos = [(tuple(c[0] for c in cb), tuple(c[1] for c in cb), tuple(c[2] for c in cb))
                  for cb in itertools.product(leaves, repeat=L)]
        for t in shapes:
            inner = [mu_cell(J, s).components for s in t]
            outer = mu_cell(J, tuple(sum(s) for s in t)).components
            flat_c = mu_cell(J, tuple(k for s in t for k in s)).components
            # slice bounds: per outer block, the inner slices; and the outer blocks themselves
            blocks, pos = [], 0
            for s in t:
                sl = []
                for k in s:
                    sl.append((pos, pos + k))
                    pos += k
                blocks.append(sl)
            outer_sl = [(sl[0][0], sl[-1][1]) if sl else (0, 0) for sl in blocks]
            all_sl = [ab for sl in blocks for ab in sl]
            for X, Y, U in combos:
                rep.checked += 1
                t_mu = tuple(c[(tuple(X[a:b] for a, b in sl), tuple(Y[a:b] for a, b in sl))]
                             [tuple(U[a:b] for a, b in sl)] for c, sl in zip(inner, blocks))
                lhs = outer[(tuple(X[a:b] for a, b in outer_sl), tuple(Y[a:b] for a, b in outer_sl))][t_mu]
                rhs = flat_c[(tuple(X[a:b] for a, b in all_sl), tuple(Y[a:b] for a, b in all_sl))][
                    tuple(U[a:b] for a, b in all_sl)]
                if lhs != rhs:
                    rep.add("mu_associativity", (t, _nest(U, t)), f"{lhs!r} != {rhs!r}")
    eta = eta_cell(J)
    for n in range(N + 1):
        P = power_prof(J, n)
        for xs, ys in P.pairs():
            for us in P.elements(xs, ys):
                rep.checked += 1
                # T eta: each coordinate becomes a singleton; shape (1,...,1)
                t_eta = tuple(eta(x, y, u) for x, y, u in zip(xs, ys, us))
                a = mu_cell(J, (1,) * n)(tuple((x,) for x in xs), tuple((y,) for y in ys), t_eta)
                # eta T: the whole sequence becomes a singleton; shape (n,)
                b = mu_cell(J, (n,))((xs,), (ys,), (us,))
                if a != us:
                    rep.add("mu_T_eta", (n, us), f"{a!r}")
                if b != us:
                    rep.add("mu_eta_T", (n, us), f"{b!r}")
    return rep


def _mu_prime(J: Profunctor, shape: Sequence[int]) -> Cell:
    """Factorisation of ``mu_J`` through the cartesian cell of ``TJ(id, mu_B)``."""
    mu = mu_cell(J, shape)
    R, _ = restrict(mu.htgt, identity_functor(mu.htgt.src), mu.g)
    comps = {k: dict(v) for k, v in mu.components.items()}
    return Cell(mu.hsrc, R, mu.f, identity_functor(mu.hsrc.tgt), comps, name="mu'")


def monad_exactness(J: Profunctor, N: int = N_DEFAULT, opcartesian_probes: bool = False,
                    d_family: Callable[[int], CatFunctor] | None = None) -> dict:
    """Pointwise left exactness of ``mu_J`` and ``eta_J`` at every arity ``<= N``.

    The criterion is invertibility of ``phi_*: f^* . J => K(id, g)``, which is
    the same as opcartesianness of the factorisation through the cartesian
    cell. With ``opcartesian_probes`` the latter is also probed directly; with
    ``d_family`` (arity -> functor ``A^n -> M``) the definition is checked.
    """
    out: dict = {"mu": [], "eta": [], "ok": True}
    for s in double_shapes(N):
        mu = mu_cell(J, s)
        entry = {"shape": list(s), "phi_star_invertible": phi_star(mu, "left").is_bijective()}
        if opcartesian_probes:
            entry["mu_prime_opcartesian"] = is_opcartesian(_mu_prime(J, s))
        if d_family is not None:
            entry["definition"] = bool(cell_exactness(mu, d_family(sum(s)), "left_exact"))
        out["mu"].append(entry)
        out["ok"] &= all(v for k, v in entry.items() if k != "shape")
    eta = eta_cell(J)
    entry = {"arity": 1, "phi_star_invertible": phi_star(eta, "left").is_bijective()}
    if opcartesian_probes:
        R, _ = restrict(eta.htgt, identity_functor(eta.htgt.src), eta.g)
        entry["eta_prime_opcartesian"] = is_opcartesian(
            Cell(eta.hsrc, R, eta.f, identity_functor(J.tgt), eta.components, name="eta'"))
    if d_family is not None:
        entry["definition"] = bool(cell_exactness(eta, d_family(1), "left_exact"))
    out["eta"].append(entry)
    out["ok"] &= all(v for k, v in entry.items() if k != "arity")
    return out


# ---------------------------------------------------------------------------
# Equation helper
# ---------------------------------------------------------------------------


def _check_eq(rep: Report, law: str, witness, lhs: Callable[[], Any], rhs: Callable[[], Any]) -> None:
    rep.checked += 1
    try:
        a = lhs()
        b = rhs()
    except (KeyError, ValueError, StructuralError) as exc:
        rep.add(law, (freeze(witness),), f"ill-typed: {exc}")
        return
    if a != b:
        rep.add(law, (freeze(witness),), f"{a!r} != {b!r}")


def _typed(C: FinCategory, m, a, b) -> bool:
    return C.has_morphism(m) and C.src(m) == a and C.tgt(m) == b


# ---------------------------------------------------------------------------
# Unbiased monoidal categories (lax or colax algebras)
# ---------------------------------------------------------------------------


class MonoidalCategoryData:
    """An unbiased monoidal structure on a finite category, up to arity ``N``.

    ``kind='lax'``: ``assoc(xss): (x)(x)... -> (flat)`` and ``unit(x): x -> (x)``.
    ``kind='colax'``: both reversed. ``symmetry(sigma, xs): (xs) -> (sigma . xs)``.
    """

    def __init__(self, base: FinCategory, tensor_ob: Callable, tensor_mor: Callable, assoc: Callable,
                 unit: Callable, N: int = N_DEFAULT, kind: str = "lax", symmetry: Callable | None = None,
                 name: str = ""):
        if kind not in ("lax", "colax"):
            raise ValueError(f"algebra kind must be lax or colax, not {kind!r}")
        self.base = base
        self._tob, self._tmor = tensor_ob, tensor_mor
        self._assoc, self._unit, self._sym = assoc, unit, symmetry
        self.N = N
        self.kind = kind
        self.name = name or f"({base.name},x)"
        self._memo: dict = {}

    def _cached(self, key, fn):
        try:
            return self._memo[key]
        except KeyError:
            v = self._memo[key] = fn()
            return v

    @property
    def symmetric(self) -> bool:
        return self._sym is not None

    def tensor(self, xs: Sequence):
        xs = tuple(xs)
        try:
            return self._cached(("t", xs), lambda: self._tob(xs))
        except KeyError as exc:
            raise StructuralError(f"tensor undefined at {xs!r}") from exc

    def tensor_mor(self, ps: Sequence):
        ps = tuple(ps)
        try:
            return self._cached(("m", ps), lambda: self._tmor(ps))
        except KeyError as exc:
            raise StructuralError(f"tensor undefined at morphisms {ps!r}") from exc

    def assoc(self, xss: Sequence[Sequence]):
        xss = tuple(tuple(x) for x in xss)
        return self._cached(("a", xss), lambda: self._assoc(xss))

    def unit(self, x):
        return self._cached(("u", x), lambda: self._unit(x))

    def symmetry(self, sigma: Sequence[int], xs: Sequence):
        if self._sym is None:
            raise StructuralError("no symmetry data")
        return self._sym(tuple(sigma), tuple(xs))

    def tensor_functor(self, n: int) -> CatFunctor:
        key = ("tensor_functor", id(self), n)

        def build():
            P = power_category(self.base, n)
            return CatFunctor(P, self.base, {xs: self.tensor(xs) for xs in P.objects},
                              {ps: self.tensor_mor(ps) for ps in P.morphisms}, name=f"tensor{n}")
        return self.base.memo(key, build)

    def with_override(self, which: str, key, value) -> "MonoidalCategoryData":
        """Copy with one structure component replaced (for corruption tests)."""
        key = freeze(key)
        parts = {"tensor": self._tob, "tensor_mor": self._tmor, "assoc": self._assoc, "unit": self._unit,
                 "symmetry": self._sym}
        old = parts[which]
        if which == "symmetry":
            parts[which] = lambda s, xs: value if (s, xs) == key else old(s, xs)
        else:
            parts[which] = lambda k: value if k == key else old(k)
        return MonoidalCategoryData(self.base, parts["tensor"], parts["tensor_mor"], parts["assoc"],
                                    parts["unit"], self.N, self.kind, parts["symmetry"], self.name + "*")

    def to_json(self) -> dict:
        A, N = self.base, self.N
        tensor = {}
        for n in range(N + 1):
            P = power_category(A, n)
            tensor[str(n)] = {
                "objects": [[thaw(xs), thaw(self.tensor(xs))] for xs in P.objects],
                "morphisms": [[thaw(ps), thaw(self.tensor_mor(ps))] for ps in P.morphisms],
            }
        assoc = []
        for s in double_shapes(N):
            for xss in itertools.product(*(power_category(A, k).objects for k in s)):
                assoc.append([thaw(xss), thaw(self.assoc(xss))])
        out = {
            "arity": N,
            "kind": self.kind,
            "tensor": tensor,
            "assoc": assoc,
            "unit": [[thaw(x), thaw(self.unit(x))] for x in A.objects],
        }
        if self.symmetric:
            out["symmetry"] = [[list(s), thaw(xs), thaw(self.symmetry(s, xs))]
                               for n in range(N + 1) for s in permutations(n)
                               for xs in power_category(A, n).objects]
        return out

    @classmethod
    def from_json(cls, data: Mapping, base: FinCategory) -> "MonoidalCategoryData":
        try:
            tob, tmor = {}, {}
            for n, tab in data["tensor"].items():
                for xs, x in tab["objects"]:
                    tob[tuple(freeze(v) for v in xs)] = freeze(x)
                for ps, p in tab["morphisms"]:
                    tmor[tuple(freeze(v) for v in ps)] = freeze(p)
            assoc = {freeze(k): freeze(v) for k, v in data["assoc"]}
            unit = {freeze(k): freeze(v) for k, v in data["unit"]}
            sym = None
            if "symmetry" in data:
                tab = {(tuple(s), freeze(xs)): freeze(m) for s, xs, m in data["symmetry"]}
                sym = lambda s, xs: tab[(s, xs)]  # noqa: E731
            return cls(base, tob.__getitem__, tmor.__getitem__, assoc.__getitem__, unit.__getitem__,
                       int(data.get("arity", N_DEFAULT)), data.get("kind", "lax"), sym)
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed monoidal category data: {exc}") from exc


def _dseqs(A: FinCategory, shape: Sequence[int]) -> Iterator[tuple]:
    return itertools.product(*(power_category(A, k).objects for k in shape))


def _composable_tuples(A: FinCategory, n: int) -> Iterator[tuple]:
    pairs = list(A.composable_pairs())
    for combo in itertools.product(pairs, repeat=n):
        yield tuple(f for f, _ in combo), tuple(g for _, g in combo)


THIN_NOTE = "thin: parallel morphisms (or elements) coincide, so equations follow from typing"


def check_algebra(M: MonoidalCategoryData, exhaustive: bool = False) -> Report:
    """Functoriality, naturality and the three coherence conditions up to arity ``N``.

    In a thin base every equation between parallel morphisms holds once its
    components are well typed, so only typing is enumerated there unless
    ``exhaustive`` is set.
    """
    A, N = M.base, M.N
    rep = Report(subject=f"algebra {M.name}")
    thin = A.is_thin() and not exhaustive
    lax = M.kind == "lax"
    # tensor: typing and functoriality
    for n in range(N + 1):
        P = power_category(A, n)
        for xs in P.objects:
            _check_eq(rep, "tensor_identity", ("identity", xs),
                      lambda: M.tensor_mor(tuple(A.identity(x) for x in xs)),
                      lambda: A.identity(M.tensor(xs)))
        for ps in P.morphisms:
            rep.checked += 1
            try:
                ok = _typed(A, M.tensor_mor(ps), M.tensor(P.src(ps)), M.tensor(P.tgt(ps)))
            except StructuralError:
                ok = False
            if not ok:
                rep.add("tensor_typing", (ps,), "tensor of morphisms has wrong endpoints")
        if not thin:
            for fs, gs in _composable_tuples(A, n):
                _check_eq(rep, "tensor_composition", (fs, gs),
                          lambda: M.tensor_mor(tuple(A.compose(g, f) for f, g in zip(fs, gs))),
                          lambda: A.compose(M.tensor_mor(gs), M.tensor_mor(fs)))
    # associator and unitor typing and naturality
    for s in double_shapes(N):
        for xss in _dseqs(A, s):
            inner = M.tensor(tuple(M.tensor(xs) for xs in xss))
            flat = M.tensor(flatten(xss))
            a, b = (inner, flat) if lax else (flat, inner)
            rep.checked += 1
            if not _typed(A, M.assoc(xss), a, b):
                rep.add("assoc_typing", (xss,), "associator component has wrong endpoints")
        if not thin:
            for pss in itertools.product(*(power_category(A, k).morphisms for k in s)):
                src = tuple(tuple(A.src(p) for p in ps) for ps in pss)
                tgt = tuple(tuple(A.tgt(p) for p in ps) for ps in pss)
                nested = M.tensor_mor(tuple(M.tensor_mor(ps) for ps in pss))
                fl = M.tensor_mor(flatten(pss))
                if lax:
                    _check_eq(rep, "assoc_naturality", pss, lambda: A.compose(M.assoc(tgt), nested),
                              lambda: A.compose(fl, M.assoc(src)))
                else:
                    _check_eq(rep, "assoc_naturality", pss, lambda: A.compose(M.assoc(tgt), fl),
                              lambda: A.compose(nested, M.assoc(src)))
    for x in A.objects:
        a, b = (x, M.tensor((x,))) if lax else (M.tensor((x,)), x)
        rep.checked += 1
        if not _typed(A, M.unit(x), a, b):
            rep.add("unit_typing", (x,), "unitor component has wrong endpoints")
    if not thin:
        for p in A.morphisms:
            x, y = A.src(p), A.tgt(p)
            if lax:
                _check_eq(rep, "unit_naturality", (p,), lambda: A.compose(M.unit(y), p),
                          lambda: A.compose(M.tensor_mor((p,)), M.unit(x)))
            else:
                _check_eq(rep, "unit_naturality", (p,), lambda: A.compose(M.unit(y), M.tensor_mor((p,))),
                          lambda: A.compose(p, M.unit(x)))
    if not rep.ok:
        return rep
    if thin:
        rep.notes.append(THIN_NOTE)
        if M.symmetric:
            rep.extend(_check_symmetry(M, typing_only=True))
        return rep
    # coherence
    for t in triple_shapes(N):
        for xsss in itertools.product(*(list(_dseqs(A, s)) for s in t)):
            flats = tuple(flatten(xss) for xss in xsss)
            tensored = tuple(tuple(M.tensor(xs) for xs in xss) for xss in xsss)
            all_inner = tuple(xs for xss in xsss for xs in xss)
            p1 = M.tensor_mor(tuple(M.assoc(xss) for xss in xsss))
            p2 = M.assoc(flats)
            q1 = M.assoc(tensored)
            q2 = M.assoc(all_inner)
            if lax:
                _check_eq(rep, "coherence_associativity", xsss, lambda: A.compose(p2, p1),
                          lambda: A.compose(q2, q1))
            else:
                _check_eq(rep, "coherence_associativity", xsss, lambda: A.compose(p1, p2),
                          lambda: A.compose(q1, q2))
    for n in range(N + 1):
        for xs in power_category(A, n).objects:
            t = M.tensor(xs)
            if lax:
                _check_eq(rep, "coherence_unit_outer", xs,
                          lambda: A.compose(M.assoc((xs,)), M.unit(t)), lambda: A.identity(t))
                _check_eq(rep, "coherence_unit_inner", xs,
                          lambda: A.compose(M.assoc(tuple((x,) for x in xs)),
                                            M.tensor_mor(tuple(M.unit(x) for x in xs))),
                          lambda: A.identity(t))
            else:
                _check_eq(rep, "coherence_unit_outer", xs,
                          lambda: A.compose(M.unit(t), M.assoc((xs,))), lambda: A.identity(t))
                _check_eq(rep, "coherence_unit_inner", xs,
                          lambda: A.compose(M.tensor_mor(tuple(M.unit(x) for x in xs)),
                                            M.assoc(tuple((x,) for x in xs))),
                          lambda: A.identity(t))
    if M.symmetric:
        rep.extend(_check_symmetry(M))
    return rep


def _check_symmetry(M: MonoidalCategoryData, typing_only: bool = False) -> Report:
    A, N = M.base, M.N
    rep = Report(subject=f"symmetry {M.name}")
    lax = M.kind == "lax"
    thin = A.is_thin()
    for n in range(N + 1):
        perms = permutations(n)
        P = power_category(A, n)
        for xs in P.objects:
            for s in perms:
                rep.checked += 1
                if not _typed(A, M.symmetry(s, xs), M.tensor(xs), M.tensor(permute(s, xs))):
                    rep.add("symmetry_typing", (s, xs), "symmetry component has wrong endpoints")
            if typing_only:
                continue
            _check_eq(rep, "symmetry_identity", xs, lambda: M.symmetry(tuple(range(n)), xs),
                      lambda: A.identity(M.tensor(xs)))
            for s in perms:
                for t in perms:
                    _check_eq(rep, "symmetry_functoriality", (s, t, xs),
                              lambda: A.compose(M.symmetry(t, permute(s, xs)), M.symmetry(s, xs)),
                              lambda: M.symmetry(perm_compose(s, t), xs))
        if not thin:
            for ps in P.morphisms:
                src, tgt = P.src(ps), P.tgt(ps)
                for s in perms:
                    _check_eq(rep, "symmetry_naturality", (s, ps),
                              lambda: A.compose(M.symmetry(s, tgt), M.tensor_mor(ps)),
                              lambda: A.compose(M.tensor_mor(permute(s, ps)), M.symmetry(s, src)))
    if typing_only:
        return rep
    for shape in double_shapes(N):
        for xss in _dseqs(A, shape):
            flat = flatten(xss)
            # disjoint-union square
            for sigmas in itertools.product(*(permutations(k) for k in shape)):
                moved = tuple(permute(s, xs) for s, xs in zip(sigmas, xss))
                inner = M.tensor_mor(tuple(M.symmetry(s, xs) for s, xs in zip(sigmas, xss)))
                big = M.symmetry(block_sum(sigmas), flat)
                if lax:
                    _check_eq(rep, "symmetry_disjoint_union", (sigmas, xss),
                              lambda: A.compose(M.assoc(moved), inner), lambda: A.compose(big, M.assoc(xss)))
                else:
                    _check_eq(rep, "symmetry_disjoint_union", (sigmas, xss),
                              lambda: A.compose(inner, M.assoc(xss)), lambda: A.compose(M.assoc(moved), big))
            # block-permutation square
            outer = tuple(M.tensor(xs) for xs in xss)
            for tau in permutations(len(shape)):
                moved = permute(tau, xss)
                bp = M.symmetry(block_permutation(tau, shape), flat)
                if lax:
                    _check_eq(rep, "symmetry_block_permutation", (tau, xss),
                              lambda: A.compose(M.assoc(moved), M.symmetry(tau, outer)),
                              lambda: A.compose(bp, M.assoc(xss)))
                else:
                    _check_eq(rep, "symmetry_block_permutation", (tau, xss),
                              lambda: A.compose(M.symmetry(tau, outer), M.assoc(xss)),
                              lambda: A.compose(M.assoc(moved), bp))
    return rep


# builders ------------------------------------------------------------------


def joins(P: FinCategory) -> Callable[[Sequence], Any]:
    """n-ary join in a finite poset category; raises if a join is missing."""
    leq = lambda a, b: bool(P.hom(a, b))  # noqa: E731
    table: dict = {}

    def join(xs):
        xs = tuple(xs)
        if xs not in table:
            ubs = [z for z in P.objects if all(leq(x, z) for x in xs)]
            least = [z for z in ubs if all(leq(z, w) for w in ubs)]
            if len(least) != 1:
                raise StructuralError(f"no join of {xs!r}")
            table[xs] = least[0]
        return table[xs]
    return join


def meets(P: FinCategory) -> Callable[[Sequence], Any]:
    leq = lambda a, b: bool(P.hom(a, b))  # noqa: E731
    table: dict = {}

    def meet(xs):
        xs = tuple(xs)
        if xs not in table:
            lbs = [z for z in P.objects if all(leq(z, x) for x in xs)]
            great = [z for z in lbs if all(leq(w, z) for w in lbs)]
            if len(great) != 1:
                raise StructuralError(f"no meet of {xs!r}")
            table[xs] = great[0]
        return table[xs]
    return meet


def thin_monoidal(P: FinCategory, op: Callable[[Sequence], Any], N: int = N_DEFAULT, kind: str = "lax",
                  symmetric: bool = True, name: str = "") -> MonoidalCategoryData:
    """A thin category with an n-ary operation on objects; all coherence maps are forced."""
    def only(a, b):
        hs = P.hom(a, b)
        if not hs:
            raise StructuralError(f"no morphism {a!r} -> {b!r}")
        return hs[0]

    def tmor(ps):
        return only(op(tuple(P.src(p) for p in ps)), op(tuple(P.tgt(p) for p in ps)))

    def assoc(xss):
        inner, flat = op(tuple(op(xs) for xs in xss)), op(flatten(xss))
        return only(inner, flat) if kind == "lax" else only(flat, inner)

    def unit(x):
        return only(x, op((x,))) if kind == "lax" else only(op((x,)), x)

    sym = (lambda s, xs: only(op(xs), op(permute(s, xs)))) if symmetric else None
    return MonoidalCategoryData(P, op, tmor, assoc, unit, N, kind, sym, name or f"({P.name},op)")


def join_semilattice(P: FinCategory, N: int = N_DEFAULT, symmetric: bool = True) -> MonoidalCategoryData:
    """Tensor = n-ary join (empty join = bottom); associator and unitor are identities."""
    return thin_monoidal(P, joins(P), N, "lax", symmetric, name=f"({P.name},join)")


def lattice_poset(elements: Sequence, leq: Callable[[Any, Any], bool], name: str = "L") -> FinCategory:
    from .fincat import poset
    return poset(elements, leq, name=name)


def commutative_monoid_discrete(elements: Sequence, mult: Callable[[Any, Any], Any], unit,
                                N: int = N_DEFAULT, symmetric: bool = True) -> MonoidalCategoryData:
    """Discrete category on a commutative monoid; tensor is the product, coherence maps identities."""
    C = discrete(elements)

    def tob(xs):
        acc = unit
        for x in xs:
            acc = mult(acc, x)
        return acc

    def tmor(ps):
        return C.identity(tob(tuple(C.src(p) for p in ps)))

    sym = (lambda s, xs: C.identity(tob(xs))) if symmetric else None
    return MonoidalCategoryData(C, tob, tmor, lambda xss: C.identity(tob(flatten(xss))),
                                lambda x: C.identity(x), N, "lax", sym, name="(monoid,*)")


# ---------------------------------------------------------------------------
# Weak monoidal functors
# ---------------------------------------------------------------------------


class MonoidalFunctorData:
    """A functor with compositors.

    ``lax``/``pseudo``: ``comp(xs): (f xs) -> f(xs)``; ``colax``: the reverse.
    Pseudo functors carry ``inverse(xs)`` in the colax direction.
    """

    def __init__(self, base: CatFunctor, src: MonoidalCategoryData, tgt: MonoidalCategoryData,
                 kind: str, comp: Callable, inverse: Callable | None = None, name: str = ""):
        if kind not in ("lax", "colax", "pseudo"):
            raise ValueError(f"functor kind must be lax, colax or pseudo, not {kind!r}")
        if kind == "pseudo" and inverse is None:
            raise StructuralError("pseudo functor needs an inverse table")
        self.base, self.src, self.tgt = base, src, tgt
        self.kind = kind
        self._comp, self._inv = comp, inverse
        self.name = name or base.name or "f"

    def comp(self, xs):
        return self._comp(tuple(xs))

    def inverse(self, xs):
        if self._inv is None:
            raise StructuralError(f"{self.name} is not pseudo")
        return self._inv(tuple(xs))

    def lax_comp(self, xs):
        if self.kind == "colax":
            raise PreconditionFailed("lax", f"{self.name} is colax")
        return self.comp(xs)

    def colax_comp(self, xs):
        if self.kind == "colax":
            return self.comp(xs)
        if self.kind == "pseudo":
            return self.inverse(xs)
        raise PreconditionFailed("colax", f"{self.name} is lax")

    @property
    def N(self) -> int:
        return min(self.src.N, self.tgt.N)

    @property
    def strict(self) -> bool:
        C = self.tgt.base
        return all(C.is_identity(self.comp(xs)) for xs in sequences(self.src.base.objects, self.N))

    def table(self) -> list:
        return [[thaw(xs), thaw(self.comp(xs))] for xs in sequences(self.src.base.objects, self.N)]

    def to_json(self) -> dict:
        out = {"functor": self.base.to_json(), "kind": self.kind, "compositors": self.table()}
        if self._inv is not None:
            out["inverse"] = [[thaw(xs), thaw(self.inverse(xs))] for xs in sequences(self.src.base.objects, self.N)]
        return out

    @classmethod
    def from_json(cls, data: Mapping, src: MonoidalCategoryData, tgt: MonoidalCategoryData) -> "MonoidalFunctorData":
        try:
            f = CatFunctor.from_json(data["functor"], src.base, tgt.base)
            comp = {freeze(k): freeze(v) for k, v in data["compositors"]}
            inv = {freeze(k): freeze(v) for k, v in data["inverse"]} if "inverse" in data else None
            return cls(f, src, tgt, data["kind"], comp.__getitem__, inv.__getitem__ if inv else None)
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"malformed monoidal functor data: {exc}") from exc

    def with_override(self, xs, value) -> "MonoidalFunctorData":
        xs = freeze(xs)
        old = self._comp
        return MonoidalFunctorData(self.base, self.src, self.tgt, self.kind,
                                   lambda k: value if k == xs else old(k), self._inv, self.name + "*")


def identity_monoidal_functor(M: MonoidalCategoryData) -> MonoidalFunctorData:
    A = M.base
    idc = lambda xs: A.identity(M.tensor(xs))  # noqa: E731
    return MonoidalFunctorData(identity_functor(A), M, M, "pseudo", idc, idc, name="id")


def strict_monoidal_functor(f: CatFunctor, src: MonoidalCategoryData, tgt: MonoidalCategoryData) -> MonoidalFunctorData:
    C = tgt.base

    def comp(xs):
        a, b = tgt.tensor(tuple(f.ob(x) for x in xs)), f.ob(src.tensor(xs))
        if a != b:
            raise StructuralError(f"{f.name} does not preserve the tensor at {xs!r}")
        return C.identity(a)
    return MonoidalFunctorData(f, src, tgt, "pseudo", comp, comp, name=f.name or "f")


def thin_monoidal_functor(f: CatFunctor, src: MonoidalCategoryData, tgt: MonoidalCategoryData,
                          kind: str = "lax") -> MonoidalFunctorData | None:
    """Forced compositors into a thin category, or ``None`` if some component is missing."""
    C = tgt.base
    N = min(src.N, tgt.N)
    lax_t, colax_t = {}, {}
    for xs in sequences(src.base.objects, N):
        a, b = tgt.tensor(tuple(f.ob(x) for x in xs)), f.ob(src.tensor(xs))
        lax_t[xs] = C.hom(a, b)[0] if C.hom(a, b) else None
        colax_t[xs] = C.hom(b, a)[0] if C.hom(b, a) else None
    if kind == "lax" and None in lax_t.values():
        return None
    if kind == "colax" and None in colax_t.values():
        return None
    if kind == "pseudo" and (None in lax_t.values() or None in colax_t.values()):
        return None
    if kind == "colax":
        return MonoidalFunctorData(f, src, tgt, kind, colax_t.__getitem__)
    return MonoidalFunctorData(f, src, tgt, kind, lax_t.__getitem__,
                               colax_t.__getitem__ if kind == "pseudo" else None)


def check_morphism(F: MonoidalFunctorData) -> Report:
    """Naturality, associativity and unit axioms (and symmetry when both ends are symmetric)."""
    A, C = F.src, F.tgt
    f = F.base
    Cb = C.base
    N = F.N
    rep = Report(subject=f"monoidal functor {F.name} ({F.kind})")
    if A.kind != "lax" or C.kind != "lax":
        raise PreconditionFailed("lax algebras", "weak morphisms are checked between lax algebras")
    kinds = ["lax", "colax"] if F.kind == "pseudo" else [F.kind]
    if F.kind == "pseudo":
        for xs in sequences(A.base.objects, N):
            c, i = F.comp(xs), F.inverse(xs)
            _check_eq(rep, "pseudo_inverse_left", xs, lambda: Cb.compose(i, c), lambda: Cb.identity(Cb.src(c)))
            _check_eq(rep, "pseudo_inverse_right", xs, lambda: Cb.compose(c, i), lambda: Cb.identity(Cb.tgt(c)))
    for kind in kinds:
        lax = kind == "lax"
        m = F.lax_comp if lax else F.colax_comp
        for n in range(N + 1):
            P = power_category(A.base, n)
            for xs in P.objects:
                fx = tuple(f.ob(x) for x in xs)
                a, b = (C.tensor(fx), f.ob(A.tensor(xs)))
                if not lax:
                    a, b = b, a
                rep.checked += 1
                if not _typed(Cb, m(xs), a, b):
                    rep.add(f"{kind}_compositor_typing", (xs,), "compositor has wrong endpoints")
            if not rep.ok:
                return rep
            if not Cb.is_thin():
                for ps in P.morphisms:
                    s, t = P.src(ps), P.tgt(ps)
                    fp = C.tensor_mor(tuple(f.mor(p) for p in ps))
                    ft = f.mor(A.tensor_mor(ps))
                    if lax:
                        _check_eq(rep, "lax_naturality", ps, lambda: Cb.compose(ft, m(s)), lambda: Cb.compose(m(t), fp))
                    else:
                        _check_eq(rep, "colax_naturality", ps, lambda: Cb.compose(fp, m(s)), lambda: Cb.compose(m(t), ft))
        for s in double_shapes(N):
            for xss in _dseqs(A.base, s):
                fxss = tuple(tuple(f.ob(x) for x in xs) for xs in xss)
                inner_t = tuple(A.tensor(xs) for xs in xss)
                flat = flatten(xss)
                if lax:
                    _check_eq(rep, "lax_associativity", xss,
                              lambda: Cb.chain(C.tensor_mor(tuple(m(xs) for xs in xss)), m(inner_t),
                                               f.mor(A.assoc(xss))),
                              lambda: Cb.compose(m(flat), C.assoc(fxss)))
                else:
                    _check_eq(rep, "colax_associativity", xss,
                              lambda: Cb.chain(m(inner_t), C.tensor_mor(tuple(m(xs) for xs in xss)),
                                               C.assoc(fxss)),
                              lambda: Cb.compose(m(flat), f.mor(A.assoc(xss))))
        for x in A.base.objects:
            if lax:
                _check_eq(rep, "lax_unit", (x,), lambda: Cb.compose(m((x,)), C.unit(f.ob(x))),
                          lambda: f.mor(A.unit(x)))
            else:
                _check_eq(rep, "colax_unit", (x,), lambda: Cb.compose(m((x,)), f.mor(A.unit(x))),
                          lambda: C.unit(f.ob(x)))
        if A.symmetric and C.symmetric:
            for n in range(N + 1):
                for xs in power_category(A.base, n).objects:
                    fx = tuple(f.ob(x) for x in xs)
                    for sg in permutations(n):
                        if lax:
                            _check_eq(rep, "lax_symmetry", (sg, xs),
                                      lambda: Cb.compose(f.mor(A.symmetry(sg, xs)), m(xs)),
                                      lambda: Cb.compose(m(permute(sg, xs)), C.symmetry(sg, fx)))
                        else:
                            _check_eq(rep, "colax_symmetry", (sg, xs),
                                      lambda: Cb.compose(C.symmetry(sg, fx), m(xs)),
                                      lambda: Cb.compose(m(permute(sg, xs)), f.mor(A.symmetry(sg, xs))))
    return rep


# ---------------------------------------------------------------------------
# Monoidal profunctors and T-cells
# ---------------------------------------------------------------------------


class MonoidalProfunctorData:
    """A profunctor ``J: A -|-> B`` between algebras with ``J_x(xs, ys, us) in J((xs), (ys))``."""

    def __init__(self, base: Profunctor, src: MonoidalCategoryData, tgt: MonoidalCategoryData,
                 structure: Callable, name: str = ""):
        self.base, self.src, self.tgt = base, src, tgt
        self._st = structure
        self.name = name or base.name or "J"

    @property
    def N(self) -> int:
        return min(self.src.N, self.tgt.N)

    def structure(self, xs, ys, us):
        return self._st(tuple(xs), tuple(ys), tuple(us))

    def leaf_elements(self) -> list:
        return list(self.base.all_elements())

    def arity_elements(self, n: int) -> Iterator[tuple]:
        """``(xs, ys, us)`` for every element of ``J^n``."""
        for combo in itertools.product(self.leaf_elements(), repeat=n):
            yield tuple(c[0] for c in combo), tuple(c[1] for c in combo), tuple(c[2] for c in combo)

    def structure_cell(self, n: int) -> Cell:
        """``J_x`` at arity ``n`` as a cell ``J^n => J`` over the tensor functors."""
        P = power_prof(self.base, n)
        comps = {(xs, ys): {us: self.structure(xs, ys, us) for us in P.elements(xs, ys)} for xs, ys in P.pairs()}
        return Cell(P, self.base, self.src.tensor_functor(n), self.tgt.tensor_functor(n), comps, name="Jx")

    def to_json(self) -> dict:
        return {"structure_maps": [[thaw(xs), thaw(ys), thaw(us), thaw(self.structure(xs, ys, us))]
                                   for n in range(self.N + 1) for xs, ys, us in self.arity_elements(n)]}

    @classmethod
    def from_json(cls, data: Mapping, J: Profunctor, src: MonoidalCategoryData,
                  tgt: MonoidalCategoryData) -> "MonoidalProfunctorData":
        try:
            tab = {(freeze(xs), freeze(ys), freeze(us)): freeze(v) for xs, ys, us, v in data["structure_maps"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed structure maps: {exc}") from exc
        return cls(J, src, tgt, lambda xs, ys, us: tab[(xs, ys, us)])

    def with_override(self, key, value) -> "MonoidalProfunctorData":
        key = freeze(key)
        old = self._st
        return MonoidalProfunctorData(self.base, self.src, self.tgt,
                                      lambda xs, ys, us: value if (xs, ys, us) == key else old(xs, ys, us),
                                      self.name + "*")


def unit_monoidal(M: MonoidalCategoryData) -> MonoidalProfunctorData:
    """``1_M`` with structure maps given by the tensor on morphisms."""
    return MonoidalProfunctorData(unit_prof(M.base), M, M, lambda xs, ys, ps: M.tensor_mor(ps), name="1")


def thin_monoidal_profunctor(J: Profunctor, src: MonoidalCategoryData,
                             tgt: MonoidalCategoryData) -> MonoidalProfunctorData:
    """Structure maps into a profunctor with at most one element per pair (forced)."""
    def st(xs, ys, us):
        es = J.elements(src.tensor(xs), tgt.tensor(ys))
        if not es:
            raise StructuralError(f"J is empty at the tensor of {xs!r}, {ys!r}")
        return es[0]
    return MonoidalProfunctorData(J, src, tgt, st)


def composite_monoidal(Jd: MonoidalProfunctorData, Hd: MonoidalProfunctorData) -> MonoidalProfunctorData:
    """Structure maps of ``J . H``: ``[y_i, u_i, v_i]_i -> [(y), J_x(u), H_x(v)]``."""
    JH, P = compose_prof(Jd.base, Hd.base)

    def st(xs, zs, cs):
        ys = tuple(c[0] for c in cs)
        us = tuple(c[1] for c in cs)
        vs = tuple(c[2] for c in cs)
        gen = (Jd.tgt.tensor(ys), Jd.structure(xs, ys, us), Hd.structure(ys, zs, vs))
        return P.cls(Jd.src.tensor(xs), Hd.tgt.tensor(zs), gen)

    return MonoidalProfunctorData(JH, Jd.src, Hd.tgt, st, name=f"{Jd.name}.{Hd.name}")


def check_composite_well_defined(Jd: MonoidalProfunctorData, Hd: MonoidalProfunctorData) -> Report:
    """The composite structure map does not depend on generator representatives."""
    JH, P = compose_prof(Jd.base, Hd.base)
    rep = Report(subject="composite structure well-definedness")
    N = min(Jd.N, Hd.N)
    J, H = Jd.base, Hd.base
    gens = [(x, z, (y, u, v)) for x in J.src.objects for y in J.tgt.objects for z in H.tgt.objects
            for u in J.elements(x, y) for v in H.elements(y, z)]
    for n in range(N + 1):
        seen: dict = {}
        for combo in itertools.product(gens, repeat=n):
            xs = tuple(g[0] for g in combo)
            zs = tuple(g[1] for g in combo)
            ys = tuple(g[2][0] for g in combo)
            us = tuple(g[2][1] for g in combo)
            vs = tuple(g[2][2] for g in combo)
            cls_ = tuple(P.cls(x, z, g) for x, z, g in zip(xs, zs, (c[2] for c in combo)))
            val = P.cls(Jd.src.tensor(xs), Hd.tgt.tensor(zs),
                        (Jd.tgt.tensor(ys), Jd.structure(xs, ys, us), Hd.structure(ys, zs, vs)))
            key = (xs, zs, cls_)
            rep.checked += 1
            if key in seen and seen[key] != val:
                rep.add("composite_well_defined", (key,), f"{seen[key]!r} != {val!r}")
            seen.setdefault(key, val)
    return rep


def check_horizontal(Jd: MonoidalProfunctorData) -> Report:
    """Typing, equivariance, unit and associativity axioms (and symmetry) of ``J_x``."""
    J, A, B = Jd.base, Jd.src, Jd.tgt
    Ab, Bb = A.base, B.base
    N = Jd.N
    rep = Report(subject=f"monoidal profunctor {Jd.name}")
    lax = A.kind == "lax"
    if A.kind != B.kind:
        raise PreconditionFailed("algebra kinds", "both algebras must have the same orientation")
    for n in range(N + 1):
        PA, PB = power_category(Ab, n), power_category(Bb, n)
        for xs, ys, us in Jd.arity_elements(n):
            rep.checked += 1
            try:
                v = Jd.structure(xs, ys, us)
                ok = v in J.elements(A.tensor(xs), B.tensor(ys))
            except (KeyError, StructuralError):
                ok = False
            if not ok:
                rep.add("structure_typing", (xs, ys, us), "structure map leaves J(x, y)")
                continue
            # equivariance: one non-identity coordinate at a time (enough given functoriality)
            for i in range(n):
                for p in Ab.morphisms:
                    if Ab.tgt(p) != xs[i] or Ab.is_identity(p):
                        continue
                    ps = tuple(p if j == i else Ab.identity(xs[j]) for j in range(n))
                    xs1 = tuple(PA.src(ps))
                    _check_eq(rep, "left_equivariance", (ps, ys, us),
                              lambda: Jd.structure(xs1, ys, tuple(J.lact(q, y, u) for q, y, u in zip(ps, ys, us))),
                              lambda: J.lact(A.tensor_mor(ps), B.tensor(ys), v))
                for q in Bb.morphisms:
                    if Bb.src(q) != ys[i] or Bb.is_identity(q):
                        continue
                    qs = tuple(q if j == i else Bb.identity(ys[j]) for j in range(n))
                    ys1 = tuple(PB.tgt(qs))
                    _check_eq(rep, "right_equivariance", (xs, qs, us),
                              lambda: Jd.structure(xs, ys1, tuple(J.ract(x, q2, u) for x, q2, u in zip(xs, qs, us))),
                              lambda: J.ract(A.tensor(xs), B.tensor_mor(qs), v))
    if not rep.ok:
        return rep
    for x, y, u in Jd.leaf_elements():
        if lax:
            _check_eq(rep, "unit_axiom", (x, y, u), lambda: J.ract(x, B.unit(y), u),
                      lambda: J.lact(A.unit(x), B.tensor((y,)), Jd.structure((x,), (y,), (u,))))
        else:
            _check_eq(rep, "unit_axiom", (x, y, u), lambda: J.lact(A.unit(x), y, u),
                      lambda: J.ract(A.tensor((x,)), B.unit(y), Jd.structure((x,), (y,), (u,))))
    for s in double_shapes(N):
        leaves = [list(Jd.arity_elements(k)) for k in s]
        for combo in itertools.product(*leaves):
            xss = tuple(c[0] for c in combo)
            yss = tuple(c[1] for c in combo)
            uss = tuple(c[2] for c in combo)
            inner_x = tuple(A.tensor(xs) for xs in xss)
            inner_y = tuple(B.tensor(ys) for ys in yss)
            nested = lambda: Jd.structure(inner_x, inner_y,  # noqa: E731
                                          tuple(Jd.structure(xs, ys, us) for xs, ys, us in combo))
            flat = lambda: Jd.structure(flatten(xss), flatten(yss), flatten(uss))  # noqa: E731
            if lax:
                _check_eq(rep, "associativity_axiom", (xss, yss, uss),
                          lambda: J.ract(A.tensor(inner_x), B.assoc(yss), nested()),
                          lambda: J.lact(A.assoc(xss), B.tensor(flatten(yss)), flat()))
            else:
                _check_eq(rep, "associativity_axiom", (xss, yss, uss),
                          lambda: J.lact(A.assoc(xss), B.tensor(inner_y), nested()),
                          lambda: J.ract(A.tensor(flatten(xss)), B.assoc(yss), flat()))
    if A.symmetric and B.symmetric:
        for n in range(N + 1):
            for xs, ys, us in Jd.arity_elements(n):
                for sg in permutations(n):
                    _check_eq(rep, "symmetry_axiom", (sg, xs, ys, us),
                              lambda: J.ract(A.tensor(xs), B.symmetry(sg, ys), Jd.structure(xs, ys, us)),
                              lambda: J.lact(A.symmetry(sg, xs), B.tensor(permute(sg, ys)),
                                             Jd.structure(permute(sg, xs), permute(sg, ys), permute(sg, us))))
    return rep


def check_T_cell(phi: Cell, F: MonoidalFunctorData, G: MonoidalFunctorData, Jd: MonoidalProfunctorData,
                 Kd: MonoidalProfunctorData, kind: str | None = None) -> Report:
    """``lambda_{f_x}(phi(J_x u)) = rho_{g_x}(K_x(phi u))`` (lax) or its colax mirror."""
    K = Kd.base
    C, D = Kd.src, Kd.tgt
    if kind is None:
        kinds = {F.kind, G.kind} - {"pseudo"}
        if len(kinds) > 1:
            raise PreconditionFailed("kinds", "vertical morphisms must be both lax or both colax")
        kind = kinds.pop() if kinds else "lax"
    rep = Report(subject=f"T-cell {phi.name} ({kind})")
    for n in range(Jd.N + 1):
        for xs, ys, us in Jd.arity_elements(n):
            fx = tuple(F.base.ob(x) for x in xs)
            gy = tuple(G.base.ob(y) for y in ys)
            phis = tuple(phi(x, y, u) for x, y, u in zip(xs, ys, us))
            top = lambda: phi(Jd.src.tensor(xs), Jd.tgt.tensor(ys), Jd.structure(xs, ys, us))  # noqa: E731
            bot = lambda: Kd.structure(fx, gy, phis)  # noqa: E731
            if kind == "lax":
                _check_eq(rep, "T_cell_lax", (xs, ys, us),
                          lambda: K.lact(F.lax_comp(xs), G.base.ob(Jd.tgt.tensor(ys)), top()),
                          lambda: K.ract(C.tensor(fx), G.lax_comp(ys), bot()))
            else:
                _check_eq(rep, "T_cell_colax", (xs, ys, us),
                          lambda: K.ract(F.base.ob(Jd.src.tensor(xs)), G.colax_comp(ys), top()),
                          lambda: K.lact(F.colax_comp(xs), D.tensor(gy), bot()))
    return rep


# ---------------------------------------------------------------------------
# Lifting restrictions and tabulations
# ---------------------------------------------------------------------------


def lift_restriction(Kd: MonoidalProfunctorData, F: MonoidalFunctorData,
                     G: MonoidalFunctorData) -> tuple[MonoidalProfunctorData, Cell]:
    """Monoidal structure on ``K(f, g)`` and its cartesian cell.

    ``f`` pseudo, ``g`` lax or pseudo: ``rho_{g_x} . lambda_{f_x^-1} . K_x``.
    ``g`` pseudo, ``f`` colax: ``rho_{g_x^-1} . lambda_{f_x} . K_x``.
    """
    K = Kd.base
    R, cart = restrict(K, F.base, G.base)
    if F.kind == "pseudo" and G.kind in ("lax", "pseudo"):
        fl, gr = F.inverse, G.lax_comp
    elif G.kind == "pseudo" and F.kind == "colax":
        fl, gr = F.colax_comp, G.inverse
    else:
        raise PreconditionFailed("kind", f"restriction along ({F.kind}, {G.kind}) does not lift: "
                                 "one side must be pseudo (f for lax g, g for colax f)")
    D = Kd.tgt

    def st(xs, ys, us):
        fx = tuple(F.base.ob(x) for x in xs)
        gy = tuple(G.base.ob(y) for y in ys)
        v = Kd.structure(fx, gy, us)
        v = K.lact(fl(xs), D.tensor(gy), v)
        return K.ract(F.base.ob(F.src.tensor(xs)), gr(ys), v)

    return MonoidalProfunctorData(R, F.src, G.src, st, name=f"{Kd.name}(f,g)"), cart


def companion_monoidal(F: MonoidalFunctorData) -> MonoidalProfunctorData:
    """``f_* = 1_C(f, id)`` with its lifted structure (``f`` pseudo)."""
    Id = identity_monoidal_functor(F.tgt)
    R, _ = lift_restriction(unit_monoidal(F.tgt), F, Id)
    return R


class TabulationAlgebra:
    def __init__(self, algebra: MonoidalCategoryData, pA: MonoidalFunctorData, pB: MonoidalFunctorData,
                 pi: Cell, unit: MonoidalProfunctorData, report: dict):
        self.algebra, self.pA, self.pB, self.pi, self.unit, self.report = algebra, pA, pB, pi, unit, report

    def __iter__(self):
        yield self.algebra
        yield self.report


def lift_tabulation(Jd: MonoidalProfunctorData, check: bool = True) -> TabulationAlgebra:
    """Coordinatewise monoidal structure on the tabulation of ``J``."""
    J, A, B = Jd.base, Jd.src, Jd.tgt
    if A.kind != B.kind:
        raise PreconditionFailed("algebra kinds", "both algebras must have the same orientation")
    lax = A.kind == "lax"
    T, pA, pB, pi = tabulation_category(J)

    def tob(ts):
        xs, us, ys = tuple(t[0] for t in ts), tuple(t[1] for t in ts), tuple(t[2] for t in ts)
        return (A.tensor(xs), Jd.structure(xs, ys, us), B.tensor(ys))

    def tmor(ms):
        ps, qs = tuple(m[0] for m in ms), tuple(m[1] for m in ms)
        s, t = tob(tuple(T.src(m) for m in ms)), tob(tuple(T.tgt(m) for m in ms))
        return (A.tensor_mor(ps), B.tensor_mor(qs), s[1], t[1])

    def assoc(tss):
        xss = tuple(tuple(t[0] for t in ts) for ts in tss)
        yss = tuple(tuple(t[2] for t in ts) for ts in tss)
        nested = tob(tuple(tob(ts) for ts in tss))
        flat = tob(flatten(tss))
        s, t = (nested, flat) if lax else (flat, nested)
        return (A.assoc(xss), B.assoc(yss), s[1], t[1])

    def unit(t):
        x, u, y = t
        one = tob((t,))
        return (A.unit(x), B.unit(y), u, one[1]) if lax else (A.unit(x), B.unit(y), one[1], u)

    if A.symmetric and B.symmetric:
        def sym(sg, ts):
            s, t = tob(ts), tob(permute(sg, ts))
            xs, ys = tuple(v[0] for v in ts), tuple(v[2] for v in ts)
            return (A.symmetry(sg, xs), B.symmetry(sg, ys), s[1], t[1])
    else:
        sym = None

    alg = MonoidalCategoryData(T, tob, tmor, assoc, unit, Jd.N, A.kind, sym, name="<J>")
    idc_A = lambda ts: A.base.identity(A.tensor(tuple(t[0] for t in ts)))  # noqa: E731
    idc_B = lambda ts: B.base.identity(B.tensor(tuple(t[2] for t in ts)))  # noqa: E731
    PA = MonoidalFunctorData(pA, alg, A, "pseudo", idc_A, idc_A, name="pi_A")
    PB = MonoidalFunctorData(pB, alg, B, "pseudo", idc_B, idc_B, name="pi_B")
    U = unit_monoidal(alg)
    report: dict = {}
    if check:
        ra = check_algebra(alg)
        report["algebra"] = ra.to_json()
        report["pi_A_strict"] = check_morphism(PA).ok if lax else True
        report["pi_B_strict"] = check_morphism(PB).ok if lax else True
        rc = check_T_cell(pi, PA, PB, U, Jd, kind=A.kind)
        report["pi_T_cell"] = rc.to_json()
        report["uniqueness"] = _tabulation_uniqueness(Jd, T, alg).to_json()
        report["ok"] = (ra.ok and report["pi_A_strict"] and report["pi_B_strict"] and rc.ok
                        and report["uniqueness"]["ok"])
    return TabulationAlgebra(alg, PA, PB, pi, U, report)


def _tabulation_uniqueness(Jd: MonoidalProfunctorData, T: FinCategory, alg: MonoidalCategoryData) -> Report:
    """Re-derive the structure from strict projections plus the T-cell condition on ``pi``."""
    A, B = Jd.src, Jd.tgt
    rep = Report(subject="tabulation structure is forced")
    for ts in sequences(T.objects, Jd.N):
        xs, us, ys = tuple(t[0] for t in ts), tuple(t[1] for t in ts), tuple(t[2] for t in ts)
        cands = [o for o in T.objects
                 if o[0] == A.tensor(xs) and o[2] == B.tensor(ys) and o[1] == Jd.structure(xs, ys, us)]
        rep.checked += 1
        if cands != [alg.tensor(ts)]:
            rep.add("forced_tensor", (ts,), f"{len(cands)} candidates")
    for s in double_shapes(Jd.N):
        for tss in _dseqs(T, s):
            a = alg.assoc(tss)
            s0, t0 = T.src(a), T.tgt(a)
            xss = tuple(tuple(t[0] for t in ts) for ts in tss)
            yss = tuple(tuple(t[2] for t in ts) for ts in tss)
            cands = [m for m in T.hom(s0, t0) if m[0] == A.assoc(xss) and m[1] == B.assoc(yss)]
            rep.checked += 1
            if cands != [a]:
                rep.add("forced_assoc", (tss,), f"{len(cands)} candidates")
    return rep


# ---------------------------------------------------------------------------
# Lifting pointwise left Kan extensions
# ---------------------------------------------------------------------------


def _tensor_after_power(Md: MonoidalCategoryData, f: CatFunctor, n: int) -> CatFunctor:
    return compose_functors(Md.tensor_functor(n), power_functor(f, n))


def _tensor_eta_cert(cert: KanCertificate, Md: MonoidalCategoryData, n: int) -> KanCertificate:
    """``1_x . T eta`` at arity ``n``: ``J^n => 1_M`` over ``(x d^n, x l^n)``."""
    J, d, l, eta = cert.J, cert.d, cert.result, cert.cell
    Jn = power_prof(J, n)
    comps = {(xs, ys): {us: Md.tensor_mor(tuple(eta(x, y, u) for x, y, u in zip(xs, ys, us)))
                        for us in Jn.elements(xs, ys)} for xs, ys in Jn.pairs()}
    dn, ln = _tensor_after_power(Md, d, n), _tensor_after_power(Md, l, n)
    cell = Cell(Jn, unit_prof(Md.base), dn, ln, comps, name="x.T eta")
    return KanCertificate("left", dn, Jn, ln, cell, True)


def _eta_structure_cert(cert: KanCertificate, Jd: MonoidalProfunctorData, n: int) -> KanCertificate:
    """``eta . J_x`` at arity ``n``: ``J^n => 1_M`` over ``(d x_A, l x_B)``."""
    J, d, l, eta = cert.J, cert.d, cert.result, cert.cell
    Jn = power_prof(J, n)
    tA, tB = Jd.src.tensor_functor(n), Jd.tgt.tensor_functor(n)
    comps = {(xs, ys): {us: eta(tA.ob(xs), tB.ob(ys), Jd.structure(xs, ys, us)) for us in Jn.elements(xs, ys)}
             for xs, ys in Jn.pairs()}
    dn, ln = compose_functors(d, tA), compose_functors(l, tB)
    cell = Cell(Jn, unit_prof(d.tgt), dn, ln, comps, name="eta.Jx")
    return KanCertificate("left", dn, Jn, ln, cell, True)


def check_preservation(Md: MonoidalCategoryData, cert: KanCertificate, N: int | None = None,
                       per_variable: bool = True) -> dict:
    """Does the tensor of ``M`` preserve the pointwise left Kan extension ``cert``?

    Checked arity by arity: ``x . T eta`` must define ``x . l^n`` as a pointwise
    left Kan extension of ``x . d^n`` along ``J^n``. The per-variable criterion
    is reported alongside.
    """
    if cert.direction != "left" or not cert.pointwise:
        raise PreconditionFailed("pointwise", "a pointwise left Kan certificate is required")
    N = Md.N if N is None else N
    out: dict = {"arities": [], "ok": True, "witness": None}
    for n in range(N + 1):
        c = _tensor_eta_cert(cert, Md, n)
        ok, wit = defines_kan(c.cell, "left", True)
        out["arities"].append({"arity": n, "ok": ok})
        if not ok and out["ok"]:
            out["ok"] = False
            out["witness"] = {"arity": n, **(wit or {})}
    if per_variable:
        out["per_variable"] = _per_variable(Md, cert, N)
    return out


def _per_variable(Md: MonoidalCategoryData, cert: KanCertificate, N: int) -> dict:
    """Each partial tensor ``m -> (m_1, .., m, .., m_n)`` preserves the extension."""
    M = Md.base
    J, d, l, eta = cert.J, cert.d, cert.result, cert.cell
    A, B = J.src, J.tgt
    UM = unit_prof(M)
    checked = 0
    for n in range(1, N + 1):
        for i in range(n):
            for others in itertools.product(M.objects, repeat=n - 1):
                def ins(v, ident):
                    return tuple(others[:i]) + (v,) + tuple(ident(o) for o in others[i:])

                def ob_seq(m):
                    return others[:i] + (m,) + others[i:]

                def mor_seq(p):
                    ids = tuple(M.identity(o) for o in others)
                    return ids[:i] + (p,) + ids[i:]

                dA = CatFunctor(A, M, {a: Md.tensor(ob_seq(d.ob(a))) for a in A.objects},
                                {p: Md.tensor_mor(mor_seq(d.mor(p))) for p in A.morphisms})
                lB = CatFunctor(B, M, {b: Md.tensor(ob_seq(l.ob(b))) for b in B.objects},
                                {q: Md.tensor_mor(mor_seq(l.mor(q))) for q in B.morphisms})
                comps = {(a, b): {u: Md.tensor_mor(mor_seq(eta(a, b, u))) for u in J.elements(a, b)}
                         for a, b in J.pairs()}
                ok, wit = defines_kan(Cell(J, UM, dA, lB, comps), "left", True)
                checked += 1
                if not ok:
                    return {"ok": False, "checked": checked,
                            "witness": {"arity": n, "position": i, "others": thaw(others), **(wit or {})}}
    return {"ok": True, "checked": checked, "witness": None}


def structure_exactness(Jd: MonoidalProfunctorData, d: CatFunctor, N: int | None = None) -> dict:
    """Condition (e): the structure cell of ``J`` is pointwise left ``d``-exact at every arity."""
    N = Jd.N if N is None else N
    out: dict = {"arities": [], "ok": True, "witness": None}
    for n in range(N + 1):
        v = cell_exactness(Jd.structure_cell(n), d, "left_exact", pointwise=True)
        out["arities"].append({"arity": n, "ok": v.verdict, "phi_star_invertible": v.criteria["phi_star_invertible"]})
        if not v.verdict and out["ok"]:
            out["ok"] = False
            out["witness"] = {"arity": n, **(v.witness or {})}
    return out


class LiftResult:
    def __init__(self, ldata: MonoidalFunctorData, report: dict):
        self.ldata, self.report = ldata, report

    def __iter__(self):
        yield self.ldata
        yield self.report


def _factor_compositor(kc: KanCertificate, test: Cell) -> dict:
    try:
        out = factor_through_kan(kc, test)
    except NotAKanExtension as exc:
        raise FactorizationFailed(f"compositor does not factor: {exc}") from exc
    B = test.hsrc.tgt
    return {ys: out(ys, ys, B.identity(ys)) for ys in B.objects}


def lift_kan(cert: KanCertificate, Jd: MonoidalProfunctorData, dd: MonoidalFunctorData,
             Md: MonoidalCategoryData, mode: str = "lax", probes: Iterable | None = None) -> LiftResult:
    """Monoidal structure on the pointwise left Kan extension ``l`` of ``d`` along ``J``.

    ``lax`` needs (p) and factors ``eta(J_x u) . d_x`` through ``x . T eta``;
    ``colax`` needs (e) and factors ``x(eta u) . d_x`` through ``eta . J_x``;
    ``pseudo`` needs both and verifies the two compositors are inverse.
    """
    if mode not in ("lax", "colax", "pseudo"):
        raise ValueError(f"unknown mode {mode!r}")
    if cert.direction != "left" or not cert.pointwise:
        raise PreconditionFailed("pointwise", "a pointwise left Kan certificate is required")
    if not cert.valid:
        raise FactorizationFailed("Kan certificate is marked stale")
    M = Md.base
    N = min(Jd.N, Md.N)
    J, d, l, eta = cert.J, cert.d, cert.result, cert.cell
    if dd.base != d or Jd.base != J:
        raise FactorizationFailed("monoidal data does not match the Kan certificate")
    if not defines_kan(eta, "left", True)[0]:
        cert.valid = False
        raise FactorizationFailed("Kan certificate does not define a pointwise extension")
    report: dict = {"mode": mode, "arity": N}
    lax_t: dict = {}
    colax_t: dict = {}
    if mode in ("lax", "pseudo"):
        pres = check_preservation(Md, cert, N, per_variable=False)
        report["p"] = pres
        if not pres["ok"]:
            raise PreconditionFailed("p", "the tensor of M does not preserve the extension", pres["witness"])
        for n in range(N + 1):
            kc = _tensor_eta_cert(cert, Md, n)
            Jn = kc.J
            tA, tB = Jd.src.tensor_functor(n), Jd.tgt.tensor_functor(n)
            comps = {(xs, ys): {us: M.compose(eta(tA.ob(xs), tB.ob(ys), Jd.structure(xs, ys, us)), dd.lax_comp(xs))
                                for us in Jn.elements(xs, ys)} for xs, ys in Jn.pairs()}
            test = Cell(Jn, unit_prof(M), kc.d, compose_functors(l, tB), comps, name="eta.Jx.d_x")
            lax_t.update(_factor_compositor(kc, test))
    if mode in ("colax", "pseudo"):
        ex = structure_exactness(Jd, d, N)
        report["e"] = ex
        if not ex["ok"]:
            raise PreconditionFailed("e", "the structure cell of J is not pointwise left d-exact", ex["witness"])
        for n in range(N + 1):
            kc = _eta_structure_cert(cert, Jd, n)
            if not defines_kan(kc.cell, "left", True)[0]:
                raise PreconditionFailed("e", "eta . J_x does not define l . x at this arity", {"arity": n})
            Jn = kc.J
            comps = {(xs, ys): {us: M.compose(Md.tensor_mor(tuple(eta(x, y, u) for x, y, u in zip(xs, ys, us))),
                                              dd.colax_comp(xs))
                                for us in Jn.elements(xs, ys)} for xs, ys in Jn.pairs()}
            test = Cell(Jn, unit_prof(M), kc.d, _tensor_after_power(Md, l, n), comps, name="x eta.d_x")
            colax_t.update(_factor_compositor(kc, test))
    if mode == "lax":
        ldata = MonoidalFunctorData(l, Jd.tgt, Md, "lax", lax_t.__getitem__, name="l")
    elif mode == "colax":
        ldata = MonoidalFunctorData(l, Jd.tgt, Md, "colax", colax_t.__getitem__, name="l")
    else:
        ldata = MonoidalFunctorData(l, Jd.tgt, Md, "pseudo", lax_t.__getitem__, colax_t.__getitem__, name="l")
        inv = Report(subject="pseudo compositor inverse")
        for ys in lax_t:
            a, b = lax_t[ys], colax_t[ys]
            _check_eq(inv, "inverse_left", ys, lambda: M.compose(b, a), lambda: M.identity(M.src(a)))
            _check_eq(inv, "inverse_right", ys, lambda: M.compose(a, b), lambda: M.identity(M.tgt(a)))
        report["inverse"] = inv.to_json()
    report["compositors"] = ldata.table()
    morph = check_morphism(ldata)
    report["morphism"] = morph.to_json()
    kind = "colax" if mode == "colax" else "lax"
    tc = check_T_cell(eta, dd, ldata, Jd, unit_monoidal(Md), kind=kind)
    report["eta_T_cell"] = tc.to_json()
    probe_log = []
    for kdata, phi in probes or ():
        sigma = factor_through_kan(cert, phi)
        UB = unit_monoidal(Jd.tgt)
        r = check_T_cell(sigma, ldata, kdata, UB, unit_monoidal(Md), kind=kind)
        probe_log.append({"k": kdata.table(), "ok": r.ok})
    report["probes"] = probe_log
    report["ok"] = (morph.ok and tc.ok and all(p["ok"] for p in probe_log)
                    and report.get("inverse", {"ok": True})["ok"])
    return LiftResult(ldata, report)


def thin_probe_cells(cert: KanCertificate, Jd: MonoidalProfunctorData, dd: MonoidalFunctorData,
                     Md: MonoidalCategoryData, kind: str = "lax", limit: int | None = None) -> list:
    """Monoidal ``k: B -> M`` into a thin ``M`` with a T-cell ``J => 1_M`` over ``(d, k)``."""
    M = Md.base
    J, d = cert.J, cert.d
    out = []
    for k in iter_functors(J.tgt, M):
        kdata = thin_monoidal_functor(k, Jd.tgt, Md, kind)
        if kdata is None:
            continue
        comps = {}
        ok = True
        for a, b in J.pairs():
            if not J.elements(a, b):
                continue
            hs = M.hom(d.ob(a), k.ob(b))
            if not hs:
                ok = False
                break
            comps[(a, b)] = {u: hs[0] for u in J.elements(a, b)}
        if not ok:
            continue
        phi = Cell(J, unit_prof(M), d, k, comps, name="probe")
        if check_T_cell(phi, dd, kdata, Jd, unit_monoidal(Md), kind=kind).ok:
            out.append((kdata, phi))
            if limit is not None and len(out) >= limit:
                break
    return out


# ---------------------------------------------------------------------------
# Beck-Chevalley
# ---------------------------------------------------------------------------


def beck_chevalley(Jd: MonoidalProfunctorData, N: int | None = None) -> tuple[dict, dict]:
    """The cells ``x_A^* . J^n => J(id, x_B)``, ``[p, u] -> lambda_p(J_x u)``, and their invertibility."""
    J, A, B = Jd.base, Jd.src, Jd.tgt
    N = Jd.N if N is None else N
    cells, verdict = {}, {"ok": True, "witness": None, "arities": []}
    for n in range(N + 1):
        tA, tB = A.tensor_functor(n), B.tensor_functor(n)
        P = composite(conjoint(tA), power_prof(J, n))
        R, _ = restrict(J, identity_functor(A.base), tB)

        def gm(a, zs, gen):
            xs, p, us = gen
            return J.lact(p, tB.ob(zs), Jd.structure(xs, zs, us))

        c = induced_cell(P, R, identity_functor(A.base), identity_functor(power_category(B.base, n)), gm)
        cells[n] = c
        ok = c.is_bijective()
        verdict["arities"].append({"arity": n, "bijective": ok})
        if not ok and verdict["ok"]:
            verdict["ok"] = False
            verdict["witness"] = _bc_witness(c, n)
    return cells, verdict


def _bc_witness(c: Cell, n: int) -> dict:
    P, R = c.hsrc, c.htgt
    for a, b in R.pairs():
        src = P.elements(a, b)
        img = [c(a, b, u) for u in src]
        for v in R.elements(a, b):
            if v not in img:
                return {"arity": n, "pair": thaw((a, b)), "element": thaw(v), "defect": "not in image"}
        if len(set(img)) != len(img):
            return {"arity": n, "pair": thaw((a, b)), "defect": "not injective"}
    return {"arity": n, "defect": "unknown"}


def one_object_commutative(elements: Sequence, mult: Callable[[Any, Any], Any], unit,
                           N: int = N_DEFAULT, symmetric: bool = True) -> MonoidalCategoryData:
    """One-object category on a commutative monoid; the tensor multiplies morphisms."""
    from .fincat import monoid_category

    C = monoid_category(elements, mult, unit, obj="*")

    def tmor(ps):
        acc = unit
        for p in ps:
            acc = mult(acc, p)
        return acc

    sym = (lambda s, xs: unit) if symmetric else None
    return MonoidalCategoryData(C, lambda xs: "*", tmor, lambda xss: unit, lambda x: unit, N, "lax", sym,
                                name="(monoid,one object)")
