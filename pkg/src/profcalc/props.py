"""The PROPs F (finite sets) and H (integer matrices), the embedding ``j: F^op -> H``,
Beck-Chevalley block factorization, algebras of H, and free bicommutative Hopf monoids.

Conventions. An F-morphism ``[m] -> [n]`` is a tuple of length ``m`` with values
in ``range(n)``. An H-morphism ``m -> n`` is an ``n x m`` integer matrix.
Symmetries move input position ``i`` to output position ``sigma[i]``, so
``s(sigma) . s(tau) = s(sigma o tau)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .errors import DimensionMismatch, RelationFailed, StructuralError
from .fincat import Report

# ---------------------------------------------------------------------------
# F: skeletal finite sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FMorphism:
    """A function ``[m] -> [n]``; ``values[i]`` is the image of ``i``."""

    m: int
    n: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.m or any(not (0 <= v < self.n) for v in self.values):
            raise DimensionMismatch(f"function values {self.values!r} do not fit [{self.m}] -> [{self.n}]")

    def __call__(self, i: int) -> int:
        return self.values[i]


def f_identity(n: int) -> FMorphism:
    return FMorphism(n, n, tuple(range(n)))


def f_compose(g: FMorphism, f: FMorphism) -> FMorphism:
    """``g . f``."""
    if f.n != g.m:
        raise DimensionMismatch(f"cannot compose [{g.m}]->[{g.n}] after [{f.m}]->[{f.n}]")
    return FMorphism(f.m, g.n, tuple(g.values[v] for v in f.values))


def f_tensor(fs: Sequence[FMorphism]) -> FMorphism:
    """Order-preserving disjoint union."""
    vals, off = [], 0
    for f in fs:
        vals.extend(off + v for v in f.values)
        off += f.n
    return FMorphism(sum(f.m for f in fs), off, tuple(vals))


def f_symmetry(sigma: Sequence[int]) -> FMorphism:
    return FMorphism(len(sigma), len(sigma), tuple(sigma))


def f_functions(m: int, n: int) -> Iterator[FMorphism]:
    for vals in itertools.product(range(n), repeat=m):
        yield FMorphism(m, n, vals)


# ---------------------------------------------------------------------------
# H: integer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HMorphism:
    """An ``rows x cols`` integer matrix, viewed as a morphism ``cols -> rows``."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "HMorphism":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            if not rows:
                raise DimensionMismatch("column count of an empty matrix must be given")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def parse(cls, text: str, cols: int | None = None) -> "HMorphism":
        """Rows separated by ``;``, entries by ``,`` (``"2,3;1,0;0,5"``)."""
        text = text.strip()
        if not text:
            return cls(0, cols or 0, ())
        try:
            rows = [[int(v) for v in r.split(",")] if r.strip() else [] for r in text.split(";")]
        except ValueError as exc:
            raise StructuralError(f"bad matrix syntax {text!r}") from exc
        return cls.of(rows, cols)

    def format(self) -> str:
        return ";".join(",".join(str(v) for v in r) for r in self.entries)

    @property
    def dom(self) -> int:
        return self.cols

    @property
    def cod(self) -> int:
        return self.rows

    def row_block(self, start: int, stop: int) -> "HMorphism":
        return HMorphism(stop - start, self.cols, self.entries[start:stop])

    def transpose(self) -> "HMorphism":
        return HMorphism(self.cols, self.rows, tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                                     for j in range(self.cols)))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.entries]}


def h_identity(n: int) -> HMorphism:
    return HMorphism(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def h_zero(rows: int, cols: int) -> HMorphism:
    return HMorphism(rows, cols, tuple((0,) * cols for _ in range(rows)))


def h_compose(g: HMorphism, f: HMorphism) -> HMorphism:
    """``g . f`` is the matrix product ``g f``."""
    if g.cols != f.rows:
        raise DimensionMismatch(f"cannot multiply {g.rows}x{g.cols} by {f.rows}x{f.cols}")
    return HMorphism(g.rows, f.cols, tuple(
        tuple(sum(g.entries[i][k] * f.entries[k][j] for k in range(g.cols)) for j in range(f.cols))
        for i in range(g.rows)))


def h_tensor(fs: Sequence[HMorphism]) -> HMorphism:
    """Block diagonal."""
    R = sum(f.rows for f in fs)
    C = sum(f.cols for f in fs)
    out = [[0] * C for _ in range(R)]
    r0 = c0 = 0
    for f in fs:
        for i in range(f.rows):
            for j in range(f.cols):
                out[r0 + i][c0 + j] = f.entries[i][j]
        r0 += f.rows
        c0 += f.cols
    return HMorphism(R, C, tuple(tuple(r) for r in out))


def h_symmetry(sigma: Sequence[int]) -> HMorphism:
    """Permutation matrix sending basis vector ``i`` to ``sigma[i]``."""
    n = len(sigma)
    return HMorphism(n, n, tuple(tuple(int(sigma[j] == i) for j in range(n)) for i in range(n)))


def h_stack(fs: Sequence[HMorphism]) -> HMorphism:
    """Vertical stacking of matrices with equal column counts."""
    if not fs:
        raise DimensionMismatch("nothing to stack")
    cols = fs[0].cols
    if any(f.cols != cols for f in fs):
        raise DimensionMismatch("stacked blocks need equal column counts")
    return HMorphism(sum(f.rows for f in fs), cols, tuple(r for f in fs for r in f.entries))


def block_perm(tau: Sequence[int], sizes: Sequence[int]) -> tuple:
    """Permutation of ``sum(sizes)`` points moving block ``i`` to block position ``tau[i]``."""
    k = len(tau)
    inv = [0] * k
    for i, t in enumerate(tau):
        inv[t] = i
    new_off, off = {}, 0
    for pos in range(k):
        new_off[inv[pos]] = off
        off += sizes[inv[pos]]
    out = []
    for i in range(k):
        out.extend(new_off[i] + j for j in range(sizes[i]))
    return tuple(out)


def prop_compose(g, f):
    if isinstance(g, FMorphism):
        return f_compose(g, f)
    return h_compose(g, f)


def prop_tensor(fs: Sequence):
    if fs and isinstance(fs[0], FMorphism):
        return f_tensor(fs)
    return h_tensor(fs)


def prop_symmetry(sigma: Sequence[int], prop: str = "H"):
    return f_symmetry(sigma) if prop == "F" else h_symmetry(sigma)


def check_prop_axioms(prop: str = "H", max_n: int = 3, samples: Sequence | None = None) -> Report:
    """Symmetry functoriality and block-permutation naturality spot checks."""
    rep = Report(subject=f"PROP {prop}")
    comp = f_compose if prop == "F" else h_compose
    sym = f_symmetry if prop == "F" else h_symmetry
    ident = f_identity if prop == "F" else h_identity
    tens = f_tensor if prop == "F" else h_tensor
    for n in range(max_n + 1):
        perms = list(itertools.permutations(range(n)))
        rep.checked += 1
        if sym(tuple(range(n))) != ident(n):
            rep.add("symmetry_identity", (n,))
        for s in perms:
            for t in perms:
                rep.checked += 1
                if comp(sym(s), sym(t)) != sym(tuple(s[i] for i in t)):
                    rep.add("symmetry_functoriality", (s, t))
        for a in range(n + 1):
            rep.checked += 1
            if tens([ident(a), ident(n - a)]) != ident(n):
                rep.add("tensor_identity", (a, n - a))
    for fs in samples or ():
        for tau in itertools.permutations(range(len(fs))):
            dom = [f.m if prop == "F" else f.cols for f in fs]
            cod = [f.n if prop == "F" else f.rows for f in fs]
            lhs = comp(sym(block_perm(tau, cod)), tens(fs))
            moved = [None] * len(fs)
            for i, t in enumerate(tau):
                moved[t] = fs[i]
            rhs = comp(tens(moved), sym(block_perm(tau, dom)))
            rep.checked += 1
            if lhs != rhs:
                rep.add("block_permutation_naturality", (tau, tuple(fs)))
    return rep


# ---------------------------------------------------------------------------
# The embedding j: F^op -> H
# ---------------------------------------------------------------------------


def embed_j(xi: FMorphism) -> HMorphism:
    """A function ``[n] -> [m]`` becomes the ``n x m`` matrix with a 1 at ``(i, xi(i))``."""
    return HMorphism(xi.m, xi.n, tuple(tuple(int(xi.values[i] == j) for j in range(xi.n)) for i in range(xi.m)))


def in_j_image(h: HMorphism) -> bool:
    """Exactly one entry per row, and it equals 1."""
    return all(sum(1 for v in r if v != 0) == 1 and 1 in r for r in h.entries)


def j_preimage(h: HMorphism) -> FMorphism:
    if not in_j_image(h):
        raise RelationFailed("matrix is not in the image of j", h)
    return FMorphism(h.rows, h.cols, tuple(r.index(1) for r in h.entries))


def check_embedding(max_n: int = 3) -> Report:
    """Functoriality ``j(f . g) = j(g) j(f)`` and strict monoidality on small ordinals."""
    rep = Report(subject="embedding j")
    for a, b, c in itertools.product(range(max_n + 1), repeat=3):
        for g in f_functions(a, b):
            for f in f_functions(b, c):
                rep.checked += 1
                if embed_j(f_compose(f, g)) != h_compose(embed_j(g), embed_j(f)):
                    rep.add("j_functoriality", (f.values, g.values))
    for n in range(max_n + 1):
        rep.checked += 1
        if embed_j(f_identity(n)) != h_identity(n):
            rep.add("j_identity", (n,))
    for m1, n1, m2, n2 in itertools.product(range(3), repeat=4):
        if m1 + m2 > max_n + 1:
            continue
        for f in f_functions(m1, n1):
            for g in f_functions(m2, n2):
                rep.checked += 1
                if embed_j(f_tensor([f, g])) != h_tensor([embed_j(f), embed_j(g)]):
                    rep.add("j_monoidal", (f.values, g.values))
    for n in range(max_n + 1):
        for s in itertools.permutations(range(n)):
            inv = [0] * n
            for i, v in enumerate(s):
                inv[v] = i
            rep.checked += 1
            # j reverses direction, so the F-symmetry for sigma^-1 lands on the H-symmetry for sigma
            if embed_j(f_symmetry(tuple(inv))) != h_symmetry(s):
                rep.add("j_symmetric", (s,))
    return rep


# ---------------------------------------------------------------------------
# Beck-Chevalley block factorization
# ---------------------------------------------------------------------------


@dataclass
class BCFactorization:
    blocks: list
    zeta: HMorphism
    split: tuple
    verified: bool

    def to_json(self) -> dict:
        return {"split": list(self.split), "blocks": [b.format() for b in self.blocks],
                "zeta": self.zeta.format(), "verified": self.verified}


def _check_split(rows: int, split: Sequence[int]) -> tuple:
    split = tuple(int(s) for s in split)
    if any(s < 0 for s in split) or sum(split) != rows:
        raise DimensionMismatch(f"split {split!r} does not add up to {rows} rows")
    return split


def stacked_identities(k: int, m: int) -> HMorphism:
    return h_stack([h_identity(m)] * k) if k else HMorphism(0, m, ())


def bc_factorize(xi: HMorphism, split: Sequence[int]) -> BCFactorization:
    """``xi = (xi_1 + ... + xi_k) . zeta`` with row blocks ``xi_i`` and ``zeta`` stacked identities."""
    split = _check_split(xi.rows, split)
    blocks, r = [], 0
    for s in split:
        blocks.append(xi.row_block(r, r + s))
        r += s
    zeta = stacked_identities(len(split), xi.cols)
    ok = in_j_image(zeta) and h_compose(h_tensor(blocks), zeta) == xi if split else xi.rows == 0
    if not ok:
        raise RelationFailed("block factorization does not re-multiply", None)
    return BCFactorization(blocks, zeta, split, True)


@dataclass
class BCRelation:
    chis: list
    checks: dict

    def to_json(self) -> dict:
        return {"chis": [c.format() for c in self.chis], "checks": self.checks}


def bc_relate(rep: tuple, split: Sequence[int], xi: HMorphism | None = None) -> BCRelation:
    """Relate an alternative representation ``(xi'_i, zeta')`` to the canonical one.

    ``chi_i`` is the ``i``-th row block of ``zeta'``; checks that each ``chi_i``
    lies in ``j``'s image, ``zeta' = (chi_1 + ... + chi_k) . zeta`` and
    ``xi_i = xi'_i . chi_i``.
    """
    blocks_alt, zeta_alt = rep
    blocks_alt = list(blocks_alt)
    split = tuple(split)
    if len(blocks_alt) != len(split):
        raise RelationFailed("number of blocks differs from the split", None)
    if not in_j_image(zeta_alt):
        raise RelationFailed("zeta' is not in the image of j", -1)
    inner = [b.cols for b in blocks_alt]
    if sum(inner) != zeta_alt.rows:
        raise RelationFailed("blocks do not match zeta'", -1)
    for i, (b, s) in enumerate(zip(blocks_alt, split)):
        if b.rows != s:
            raise RelationFailed(f"block {i} has {b.rows} rows, split wants {s}", i)
    if xi is None:
        xi = h_compose(h_tensor(blocks_alt), zeta_alt)
    canon = bc_factorize(xi, split)
    m = xi.cols
    chis, r = [], 0
    for k in inner:
        chis.append(zeta_alt.row_block(r, r + k))
        r += k
    checks = {"chi_in_j_image": True, "zeta_relation": True, "block_relation": True}
    for i, c in enumerate(chis):
        if not in_j_image(c):
            raise RelationFailed(f"chi_{i} is not in the image of j", i)
    if h_compose(h_tensor(chis), stacked_identities(len(chis), m)) != zeta_alt:
        raise RelationFailed("zeta' differs from (chi_1 + ... + chi_k) . zeta", -1)
    for i, (b, c, x) in enumerate(zip(blocks_alt, chis, canon.blocks)):
        if h_compose(b, c) != x:
            raise RelationFailed(f"xi_{i} differs from xi'_{i} . chi_{i}", i)
    return BCRelation(chis, checks)


def random_matrix(rng, rows: int, cols: int, lo: int = -5, hi: int = 5) -> HMorphism:
    return HMorphism(rows, cols, tuple(tuple(rng.randint(lo, hi) for _ in range(cols)) for _ in range(rows)))


def alternative_representation(rng, split: Sequence[int], m: int, max_inner: int = 3,
                               lo: int = -5, hi: int = 5) -> tuple:
    """Random ``(xi'_i, zeta')``: functions ``chi_i`` into ``[m]`` and free blocks on their domains."""
    blocks, chis = [], []
    for s in split:
        k = rng.randint(1, max_inner) if m else 0
        chi = FMorphism(k, m, tuple(rng.randrange(m) for _ in range(k)))
        chis.append(embed_j(chi))
        blocks.append(random_matrix(rng, s, k, lo, hi))
    zeta = HMorphism(sum(c.rows for c in chis), m, tuple(r for c in chis for r in c.entries))
    return blocks, zeta


def j_beck_chevalley(max_m: int = 2, max_rows: int = 2, max_k: int = 2, entry_bound: int = 1) -> dict:
    """Bounded check that the Beck-Chevalley comparison for ``j_*`` is invertible.

    Surjectivity: every matrix factors through stacked identities. Injectivity:
    every alternative representation built from ``j``-image blocks relates to
    the canonical one.
    """
    rng_vals = range(-entry_bound, entry_bound + 1)
    out = {"factorized": 0, "related": 0, "ok": True, "witness": None}
    for k in range(1, max_k + 1):
        for split in itertools.product(range(max_rows + 1), repeat=k):
            R = sum(split)
            for m in range(max_m + 1):
                for vals in itertools.product(rng_vals, repeat=R * m):
                    xi = HMorphism(R, m, tuple(tuple(vals[i * m:(i + 1) * m]) for i in range(R)))
                    try:
                        bc_factorize(xi, split)
                        out["factorized"] += 1
                    except RelationFailed as exc:
                        out.update(ok=False, witness={"matrix": xi.format(), "split": list(split), "error": str(exc)})
                        return out
                # injectivity on all representations with inner sizes <= 1 per block
                for inner in itertools.product(range(2), repeat=k):
                    for chis in itertools.product(*(list(f_functions(a, m)) for a in inner)):
                        for bvals in itertools.product(rng_vals, repeat=sum(s * a for s, a in zip(split, inner))):
                            blocks, pos = [], 0
                            for s, a in zip(split, inner):
                                blocks.append(HMorphism(s, a, tuple(tuple(bvals[pos + i * a:pos + (i + 1) * a])
                                                                    for i in range(s))))
                                pos += s * a
                            zeta = HMorphism(sum(inner), m, tuple(r for c in chis for r in embed_j(c).entries))
                            try:
                                bc_relate((blocks, zeta), split)
                                out["related"] += 1
                            except RelationFailed as exc:
                                out.update(ok=False, witness={"split": list(split), "error": str(exc)})
                                return out
    return out


# ---------------------------------------------------------------------------
# Finite abelian groups and algebras of H
# ---------------------------------------------------------------------------


class FiniteAbGroup:
    def __init__(self, elements: Sequence, add: Mapping, zero, neg: Mapping, name: str = "G"):
        self.elements = tuple(elements)
        self._add = dict(add)
        self.zero = zero
        self._neg = dict(neg)
        self.name = name

    def add(self, a, b):
        return self._add[(a, b)]

    def neg(self, a):
        return self._neg[a]

    def sum(self, xs: Iterable):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def times(self, k: int, x):
        """Integer multiple ``k x``."""
        acc = self.zero
        y = x if k >= 0 else self.neg(x)
        for _ in range(abs(k)):
            acc = self.add(acc, y)
        return acc

    def validate(self) -> Report:
        rep = Report(subject=f"abelian group {self.name}")
        E = self.elements
        for a in E:
            rep.checked += 1
            if self.add(a, self.zero) != a or self.add(self.zero, a) != a:
                rep.add("unit", (a,))
            if self.add(a, self.neg(a)) != self.zero:
                rep.add("inverse", (a,))
            for b in E:
                if self.add(a, b) != self.add(b, a):
                    rep.add("commutativity", (a, b))
                for c in E:
                    rep.checked += 1
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                        rep.add("associativity", (a, b, c))
        return rep

    def to_json(self) -> dict:
        return {"name": self.name, "elements": list(self.elements),
                "add": [[a, b, self.add(a, b)] for a in self.elements for b in self.elements]}


def cyclic_group(n: int) -> FiniteAbGroup:
    E = list(range(n))
    return FiniteAbGroup(E, {(a, b): (a + b) % n for a in E for b in E}, 0, {a: (-a) % n for a in E}, name=f"Z/{n}")


def product_group(G: FiniteAbGroup, K: FiniteAbGroup) -> FiniteAbGroup:
    E = [(a, b) for a in G.elements for b in K.elements]
    add = {(x, y): (G.add(x[0], y[0]), K.add(x[1], y[1])) for x in E for y in E}
    return FiniteAbGroup(E, add, (G.zero, K.zero), {x: (G.neg(x[0]), K.neg(x[1])) for x in E},
                         name=f"{G.name}x{K.name}")


def parse_group(spec: str) -> FiniteAbGroup:
    """``"Z/2"``, ``"Z/2xZ/2"``, ...; products associate to the left."""
    parts = [p.strip() for p in spec.split("x")]
    groups = []
    for p in parts:
        if not p.startswith("Z/"):
            raise StructuralError(f"unknown group factor {p!r}")
        try:
            groups.append(cyclic_group(int(p[2:])))
        except ValueError as exc:
            raise StructuralError(f"bad group order in {p!r}") from exc
    G = groups[0]
    for K in groups[1:]:
        G = product_group(G, K)
    return G


class HAlgebra:
    """A symmetric monoidal functor ``H -> (Set, x)`` truncated at ``n_max``: ``n -> G^n``."""

    def __init__(self, G: FiniteAbGroup, n_max: int = 3):
        self.G = G
        self.n_max = n_max

    def carrier(self, n: int) -> list:
        if n > self.n_max:
            from .errors import BoundExceeded
            raise BoundExceeded(f"arity {n} exceeds truncation {self.n_max}")
        return list(itertools.product(self.G.elements, repeat=n))

    def act(self, xi: HMorphism, xs: Sequence) -> tuple:
        if len(xs) != xi.cols:
            raise DimensionMismatch(f"{xi.rows}x{xi.cols} matrix applied to a {len(xs)}-tuple")
        G = self.G
        return tuple(G.sum(G.times(c, x) for c, x in zip(row, xs)) for row in xi.entries)


def algebra_from_group(G: FiniteAbGroup, n_max: int = 3) -> HAlgebra:
    return HAlgebra(G, n_max)


def check_algebra_laws(A: HAlgebra, matrices: Iterable[HMorphism]) -> Report:
    """Functoriality on composable pairs, monoidality on pairs and symmetry compatibility."""
    rep = Report(subject=f"H-algebra on {A.G.name}")
    mats = [x for x in matrices if x.rows <= A.n_max and x.cols <= A.n_max]
    for n in range(A.n_max + 1):
        for xs in A.carrier(n):
            rep.checked += 1
            if A.act(h_identity(n), xs) != tuple(xs):
                rep.add("identity", (n, xs))
            for s in itertools.permutations(range(n)):
                moved = [None] * n
                for i, t in enumerate(s):
                    moved[t] = xs[i]
                rep.checked += 1
                if A.act(h_symmetry(s), xs) != tuple(moved):
                    rep.add("symmetry", (s, xs))
    for f in mats:
        for g in mats:
            if g.cols == f.rows:
                for xs in A.carrier(f.cols):
                    rep.checked += 1
                    if A.act(h_compose(g, f), xs) != A.act(g, A.act(f, xs)):
                        rep.add("functoriality", (g.format(), f.format(), xs))
            if f.cols + g.cols <= A.n_max and f.rows + g.rows <= A.n_max:
                for xs in A.carrier(f.cols):
                    for ys in A.carrier(g.cols):
                        rep.checked += 1
                        if A.act(h_tensor([f, g]), xs + ys) != A.act(f, xs) + A.act(g, ys):
                            rep.add("monoidality", (f.format(), g.format(), xs, ys))
    return rep


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------


def ones_row(n: int) -> HMorphism:
    return HMorphism(1, n, ((1,) * n,))


def ones_col(n: int) -> HMorphism:
    return ones_row(n).transpose()


@dataclass
class HopfData:
    """Unbiased structure maps on a set: ``mu(xs)``, ``delta(x, n)``, antipode ``S``."""

    elements: list
    mu: Callable[[tuple], Any]
    delta: Callable[[Any, int], tuple]
    S: Callable[[Any], Any]
    n_max: int = 3
    name: str = "A"


def extract_hopf(A: HAlgebra) -> HopfData:
    """``mu_n`` is the action of the row ``(1 .. 1)``, ``delta_n`` of its transpose, ``S`` of ``(-1)``."""
    return HopfData(list(A.G.elements), lambda xs: A.act(ones_row(len(xs)), xs)[0],
                    lambda x, n: A.act(ones_col(n), (x,)), lambda x: A.act(HMorphism(1, 1, ((-1,),)), (x,))[0],
                    A.n_max, name=A.G.name)


def check_hopf_axioms(data, n_max: int | None = None) -> Report:
    """Unbiased commutative monoid, cocommutative comonoid, interchange and both antipode squares."""
    if isinstance(data, HAlgebra):
        data = extract_hopf(data)
    N = data.n_max if n_max is None else n_max
    E, mu, delta, S = data.elements, data.mu, data.delta, data.S
    rep = Report(subject=f"Hopf axioms on {data.name}")
    unit = mu(())
    for x in E:
        rep.checked += 1
        if mu((x,)) != x:
            rep.add("monoid_unary", (x,))
        if delta(x, 1) != (x,):
            rep.add("comonoid_unary", (x,))
        if delta(x, 0) != ():
            rep.add("comonoid_counit", (x,))
    for n in range(N + 1):
        for xs in itertools.product(E, repeat=n):
            m = mu(xs)
            for s in itertools.permutations(range(n)):
                rep.checked += 1
                if mu(tuple(xs[i] for i in s)) != m:
                    rep.add("monoid_commutativity", (s, xs))
            # interchange: delta_k . mu_n = mu_n^k . transpose . delta_k^n
            for k in range(N + 1):
                cols = [delta(x, k) for x in xs]
                rep.checked += 1
                if delta(m, k) != tuple(mu(tuple(c[j] for c in cols)) for j in range(k)):
                    rep.add("interchange", (n, k, xs))
    for shape in _double_shapes(N):
        for flat in itertools.product(E, repeat=sum(shape)):
            groups, i = [], 0
            for k in shape:
                groups.append(tuple(flat[i:i + k]))
                i += k
            rep.checked += 1
            if mu(tuple(mu(g) for g in groups)) != mu(flat):
                rep.add("monoid_associativity", (shape, flat))
        for x in E:
            outer = delta(x, len(shape))
            nested = tuple(y for o, k in zip(outer, shape) for y in delta(o, k))
            rep.checked += 1
            if nested != delta(x, sum(shape)):
                rep.add("comonoid_coassociativity", (shape, x))
    for x in E:
        d = delta(x, 2)
        for n in range(2, N + 1):
            dn = delta(x, n)
            for s in itertools.permutations(range(n)):
                rep.checked += 1
                if tuple(dn[i] for i in s) != dn:
                    rep.add("comonoid_cocommutativity", (s, x))
        # eta . epsilon sends every element to the unit
        rep.checked += 2
        if mu((S(d[0]), d[1])) != unit:
            rep.add("antipode_left", (x,), f"mu(S x, x) = {mu((S(d[0]), d[1]))!r}")
        if mu((d[0], S(d[1]))) != unit:
            rep.add("antipode_right", (x,), f"mu(x, S x) = {mu((d[0], S(d[1])))!r}")
    return rep


def _double_shapes(N: int) -> list:
    from .monad import double_shapes
    return double_shapes(N)


def antipode_matrix_identity() -> bool:
    """``(1 1)(-1 0; 0 1)(1; 1) = (0)`` in H, the matrix form of the antipode square."""
    lhs = h_compose(ones_row(2), h_compose(HMorphism.of([[-1, 0], [0, 1]]), ones_col(2)))
    return lhs == HMorphism.of([[0]])


# ---------------------------------------------------------------------------
# Free bicommutative Hopf monoids: Z^(X)
# ---------------------------------------------------------------------------


def _vec(items: Iterable) -> tuple:
    """Canonical sparse vector: sorted ``(basis, coeff)`` pairs, zeros dropped."""
    acc: dict = {}
    for x, c in items:
        acc[x] = acc.get(x, 0) + c
    return tuple(sorted((x, c) for x, c in acc.items() if c != 0))


def vec_add(u: tuple, v: tuple) -> tuple:
    return _vec(list(u) + list(v))


def vec_neg(u: tuple) -> tuple:
    return tuple((x, -c) for x, c in u)


def vec_scale(k: int, u: tuple) -> tuple:
    return _vec((x, k * c) for x, c in u)


@dataclass(frozen=True)
class FreeAbTuple:
    """A tuple of finitely supported integer vectors over an ordered basis."""

    basis: tuple
    coords: tuple

    def __post_init__(self):
        for v in self.coords:
            if any(c == 0 for _, c in v) or list(v) != sorted(v) or any(x not in self.basis for x, _ in v):
                raise StructuralError("coordinates must be canonical sparse vectors over the basis")

    def format(self) -> list:
        return [" + ".join(f"{c}*{x}" for x, c in v) or "0" for v in self.coords]


class FreeHopf:
    """``Z^(X)`` with vector sum, diagonal comultiplication and negation."""

    def __init__(self, X: Sequence):
        self.X = tuple(X)

    def unit_vector(self, x) -> tuple:
        return ((x, 1),)

    def mu(self, vs: Sequence) -> tuple:
        acc: tuple = ()
        for v in vs:
            acc = vec_add(acc, v)
        return acc

    def delta(self, v, n: int) -> tuple:
        return (v,) * n

    def S(self, v) -> tuple:
        return vec_neg(v)

    def sample(self, bound: int = 1) -> list:
        """All vectors with coefficients in ``[-bound, bound]``."""
        return [_vec(zip(self.X, cs)) for cs in itertools.product(range(-bound, bound + 1), repeat=len(self.X))]

    def hopf_data(self, bound: int = 1, n_max: int = 2) -> HopfData:
        return HopfData(self.sample(bound), self.mu, self.delta, self.S, n_max, name=f"Z^({','.join(map(str, self.X))})")


def free_hopf(X: Sequence) -> FreeHopf:
    return FreeHopf(X)


@dataclass
class AdjunctionCertificate:
    X: tuple
    group: str
    functions: int
    homomorphisms: int
    bijective: bool
    composites_identity: bool
    pairs: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"X": list(self.X), "group": self.group, "functions": self.functions,
                "homomorphisms": self.homomorphisms, "bijective": self.bijective,
                "composites_identity": self.composites_identity, "pairs": self.pairs}


def adjunction_check(X: Sequence, G: FiniteAbGroup, sample_bound: int = 1) -> AdjunctionCertificate:
    """Hopf maps ``Z^(X) -> G`` correspond to functions ``X -> G``.

    Homomorphisms are enumerated by basis images, checked additive on the
    bounded sample, and compared as functions on that sample.
    """
    F = free_hopf(X)
    sample = F.sample(sample_bound)

    def extend(images: Mapping):
        return lambda v: G.sum(G.times(c, images[x]) for x, c in v)

    functions = [dict(zip(F.X, vals)) for vals in itertools.product(G.elements, repeat=len(F.X))]
    homs = []
    for vals in itertools.product(G.elements, repeat=len(F.X)):
        h = extend(dict(zip(F.X, vals)))
        additive = all(h(vec_add(u, v)) == G.add(h(u), h(v)) for u in sample for v in sample)
        neg_ok = all(h(vec_neg(u)) == G.neg(h(u)) for u in sample)
        if additive and neg_ok and h(()) == G.zero:
            homs.append(h)

    def restrict(h):
        return {x: h(F.unit_vector(x)) for x in F.X}

    def table(h):
        return tuple(h(v) for v in sample)

    ok = True
    pairs = []
    for f in functions:
        if restrict(extend(f)) != f:
            ok = False
        pairs.append([[str(x), f[x]] for x in F.X])
    for h in homs:
        if table(extend(restrict(h))) != table(h):
            ok = False
    distinct = len({table(h) for h in homs}) == len(homs)
    return AdjunctionCertificate(F.X, G.name, len(functions), len(homs),
                                 len(functions) == len(homs) and distinct, ok, pairs)


# ---------------------------------------------------------------------------
# Coend presentation of the extension along j
# ---------------------------------------------------------------------------


def coend_normal_form(pair: tuple) -> FreeAbTuple:
    """``(xi, xs)`` with ``xi: m -> n`` and ``xs in X^m`` gives coordinates ``sum_j xi_ij x_j``."""
    xi, xs = pair
    if len(xs) != xi.cols:
        raise DimensionMismatch("label tuple length differs from the matrix column count")
    coords = tuple(_vec((x, c) for x, c in zip(xs, row)) for row in xi.entries)
    basis = tuple(sorted(set(xs)))
    return FreeAbTuple(basis, coords)


def _nf_key(pair) -> tuple:
    return coend_normal_form(pair).coords


@dataclass
class CoendVerdict:
    kind: str  # related | normal_forms_equal | distinct
    path: list = field(default_factory=list)
    explored: int = 0

    def to_json(self) -> dict:
        return {"kind": self.kind, "explored": self.explored,
                "path": [[m.format(), list(xs)] for m, xs in self.path]}


def _moves(state, X: Sequence, max_m: int, entry_bound: int) -> Iterator[tuple]:
    """Neighbours of ``(xi, xs)`` under the generating relation ``(xi j(z), xs') ~ (xi, xs' . z)``.

    Expand: ``xs = xs' . z``  gives ``(xi j(z), xs')``.
    Contract: ``xi = B j(z)`` gives ``(B, xs . z)``.
    """
    xi, xs = state
    m, n = xi.cols, xi.rows
    for m2 in range(max_m + 1):
        for z in f_functions(m, m2):
            free = [k for k in range(m2) if k not in z.values]
            fixed: dict = {}
            ok = True
            for i, k in enumerate(z.values):
                if fixed.setdefault(k, xs[i]) != xs[i]:
                    ok = False
                    break
            if not ok:
                continue
            for fill in itertools.product(X, repeat=len(free)):
                lab = dict(fixed)
                lab.update(zip(free, fill))
                new = h_compose(xi, embed_j(z))
                if all(abs(v) <= entry_bound for r in new.entries for v in r):
                    yield new, tuple(lab[k] for k in range(m2))
    for a in range(max_m + 1):
        for z in f_functions(a, m):
            fibers = [[i for i in range(a) if z.values[i] == k] for k in range(m)]
            if any(not fb and any(xi.entries[r][k] for r in range(n)) for k, fb in enumerate(fibers)):
                continue
            # choose B column-by-column; all but the last member of a fiber are free
            choices = []
            for k, fb in enumerate(fibers):
                if not fb:
                    continue
                free_cols = fb[:-1]
                opts = []
                for vals in itertools.product(range(-entry_bound, entry_bound + 1), repeat=n * len(free_cols)):
                    cols = {c: tuple(vals[j * n:(j + 1) * n]) for j, c in enumerate(free_cols)}
                    last = tuple(xi.entries[r][k] - sum(cols[c][r] for c in free_cols) for r in range(n))
                    if all(abs(v) <= entry_bound for v in last):
                        cols[fb[-1]] = last
                        opts.append(cols)
                choices.append(opts)
            for combo in itertools.product(*choices):
                cols: dict = {}
                for c in combo:
                    cols.update(c)
                B = HMorphism(n, a, tuple(tuple(cols[c][r] for c in range(a)) for r in range(n)))
                yield B, tuple(xs[z.values[i]] for i in range(a))


def _state_key(state) -> tuple:
    return state[0].entries, state[0].cols, state[1]


def _bfs(start, X, max_m, entry_bound, depth) -> dict:
    parent = {_state_key(start): None}
    states = {_state_key(start): start}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for s in frontier:
            for t in _moves(s, X, max_m, entry_bound):
                k = _state_key(t)
                if k not in parent:
                    parent[k] = _state_key(s)
                    states[k] = t
                    nxt.append(t)
        frontier = nxt
    return {"parent": parent, "states": states}


def _path_to(tree: dict, key) -> list:
    out = []
    while key is not None:
        out.append(tree["states"][key])
        key = tree["parent"][key]
    return out


def coend_equiv(pair1: tuple, pair2: tuple, depth: int = 4, X: Sequence | None = None, max_m: int = 2,
                entry_bound: int = 4) -> CoendVerdict:
    """Bounded zig-zag search between two representatives.

    Meets in the middle (half the depth from each side). Every edge of a found
    path is re-checked to preserve the normal form. An unsuccessful search
    reports ``normal_forms_equal`` or ``distinct``; the latter only when the
    normal forms differ, so bound exhaustion is never reported as distinct.
    """
    if pair1[0].rows != pair2[0].rows:
        return CoendVerdict("distinct")
    X = tuple(sorted(set(pair1[1]) | set(pair2[1]))) if X is None else tuple(X)
    h1, h2 = (depth + 1) // 2, depth // 2
    t1 = _bfs(pair1, X, max_m, entry_bound, h1)
    t2 = _bfs(pair2, X, max_m, entry_bound, h2)
    common = set(t1["parent"]) & set(t2["parent"])
    explored = len(t1["parent"]) + len(t2["parent"])
    if common:
        meet = min(common, key=lambda k: (len(_path_to(t1, k)) + len(_path_to(t2, k)), repr(k)))
        path = list(reversed(_path_to(t1, meet))) + _path_to(t2, meet)[1:]
        for a, b in zip(path, path[1:]):
            if _nf_key(a) != _nf_key(b):
                raise RelationFailed("zig-zag step changed the normal form", (a, b))
        return CoendVerdict("related", path, explored)
    if _nf_key(pair1) == _nf_key(pair2):
        return CoendVerdict("normal_forms_equal", [], explored)
    return CoendVerdict("distinct", [], explored)


def coend_family(max_entry: int = 2, max_m: int = 2, X: Sequence = ("a", "b"), rows: int = 1) -> list:
    """All pairs ``(xi, xs)`` with entries in ``[0, max_entry]``, ``m <= max_m`` and labels from ``X``."""
    out = []
    for m in range(max_m + 1):
        for vals in itertools.product(range(max_entry + 1), repeat=rows * m):
            xi = HMorphism(rows, m, tuple(tuple(vals[i * m:(i + 1) * m]) for i in range(rows)))
            for xs in itertools.product(X, repeat=m):
                out.append((xi, tuple(xs)))
    return out


def coend_soundness_completeness(pairs: Sequence, depth: int = 4, max_m: int = 2, entry_bound: int = 4,
                                 X: Sequence | None = None) -> dict:
    """Relatedness (path within ``depth``) coincides with normal-form equality on ``pairs``."""
    X = tuple(sorted({x for _, xs in pairs for x in xs})) if X is None else tuple(X)
    half = depth // 2
    trees = [_bfs(p, X, max_m, entry_bound, (depth + 1) // 2) for p in pairs]
    halves = [set(_bfs(p, X, max_m, entry_bound, half)["parent"]) for p in pairs] if half != (depth + 1) // 2 \
        else [set(t["parent"]) for t in trees]
    out = {"pairs": len(pairs), "edges_checked": 0, "sound": True, "complete": True, "witness": None}
    for p, t in zip(pairs, trees):
        nf = _nf_key(p)
        for k, st in t["states"].items():
            out["edges_checked"] += 1
            if _nf_key(st) != nf:
                out["sound"] = False
                out["witness"] = {"start": [p[0].format(), list(p[1])], "reached": [st[0].format(), list(st[1])]}
                return out
    for i, p in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            q = pairs[j]
            if p[0].rows != q[0].rows:
                continue
            related = bool(set(trees[i]["parent"]) & halves[j])
            equal = _nf_key(p) == _nf_key(q)
            if related != equal:
                out["complete" if equal else "sound"] = False
                out["witness"] = {"pair1": [p[0].format(), list(p[1])], "pair2": [q[0].format(), list(q[1])],
                                  "related": related, "normal_forms_equal": equal}
                return out
    return out
