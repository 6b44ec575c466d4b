"""Finite-dimensional exact Lie algebra linear algebra.

Structure constants are built from the root system in a Chevalley-style
basis: magnitudes come from root strings, signs from the extraspecial-pair
normalization, and everything downstream (Takiff doubling, invariant
bilinear forms, intertwiner spaces, the square-zero-extension
classification, and the degree-two singular-vector constraints) is plain
exact linear algebra over Q or a quadratic extension Q(sqrt d).

The Jacobi identity is verified exhaustively for every constructed
algebra in the test suite; nothing here is trusted by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import SparseNullspace, frac, sqrt_rational
from .rootsys import RootSystem, UsageError, Weight, build_root_system, weight
from .qseries import rat_str

Vector = Dict[int, Fraction]  # sparse coefficient vector over the basis


class LieStructure:
    """Explicit structure constants of a finite-dimensional Lie algebra.

    brackets[(i, j)] for i < j maps basis index k to the coefficient of
    x_k in [x_i, x_j]; the i > j values follow by antisymmetry and are
    not stored.  An optional grading labels each basis vector with a
    nonnegative integer (used by the Takiff construction).
    """

    def __init__(
        self,
        labels: Sequence[str],
        brackets: Dict[Tuple[int, int], Vector],
        grading: Optional[Sequence[int]] = None,
        name: str = "",
    ):
        self.dimension = len(labels)
        self.labels = list(labels)
        self.name = name or "lie_algebra"
        self.brackets: Dict[Tuple[int, int], Vector] = {}
        for (i, j), vec in brackets.items():
            if i == j:
                raise UsageError("diagonal bracket entries must be omitted")
            if i > j:
                raise UsageError("store brackets with i < j only")
            clean = {k: frac(c) for k, c in vec.items() if c != 0}
            if clean:
                self.brackets[(i, j)] = clean
        self.grading = list(grading) if grading is not None else [0] * self.dimension

    def bracket_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out: Dict[int, Fraction] = {}
        for i, xi in x.items():
            for j, yj in y.items():
                if i == j:
                    continue
                f = xi * yj
                for k, c in self.bracket_basis(i, j).items():
                    nv = out.get(k, Fraction(0)) + f * c
                    if nv == 0:
                        out.pop(k, None)
                    else:
                        out[k] = nv
        return out

    def ad_matrix(self, i: int) -> List[List[Fraction]]:
        """Matrix of ad(x_i) in the basis: column j holds [x_i, x_j]."""
        n = self.dimension
        m = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            for k, c in self.bracket_basis(i, j).items():
                m[k][j] = c
        return m

    def jacobi_defect(self, i: int, j: int, k: int) -> Vector:
        out: Dict[int, Fraction] = {}
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            inner = self.bracket_basis(a, b)
            for m, cm in inner.items():
                for t, ct in self.bracket_basis(m, c).items():
                    nv = out.get(t, Fraction(0)) + cm * ct
                    if nv == 0:
                        out.pop(t, None)
                    else:
                        out[t] = nv
        return out

    def check_jacobi(self) -> None:
        """Exhaustive Jacobi check over all unordered basis triples."""
        for i, j, k in itertools.combinations(range(self.dimension), 3):
            if self.jacobi_defect(i, j, k):
                raise AssertionError(f"Jacobi fails on triple {(i, j, k)}")

    def __repr__(self) -> str:
        return f"LieStructure({self.name}, dim={self.dimension})"


# ---------------------------------------------------------------------------
# Chevalley-style construction from the root system


def _structure_sign_table(rs: RootSystem):
    """Bracket coefficients N(a, b) for positive-root pairs with a + b a root.

    Magnitude is p + 1 from the root string; the sign is + on each
    extraspecial pair (total order: height then coordinates), and on the
    remaining special pairs follows from the Jacobi identity applied to
    quadruples containing the extraspecial pair.
    """
    pos = list(rs.positive_roots)
    posset = set(pos)
    len2 = {a: rs.norm2(a) for a in pos}
    order_key = {a: (rs.height(a), a) for a in pos}

    def string_down(b: Weight, a: Weight) -> int:
        p = 0
        cur = tuple(x - y for x, y in zip(b, a))
        while cur in posset or weight(-c for c in cur) in posset:
            p += 1
            cur = tuple(x - y for x, y in zip(cur, a))
        return p

    table: Dict[Tuple[Weight, Weight], Fraction] = {}

    def pos_n(a: Weight, b: Weight) -> Fraction:
        if order_key[a] < order_key[b]:
            return table[(a, b)]
        return -table[(b, a)]

    def mixed_n(mu: Weight, nu_neg: Weight) -> Fraction:
        """N(mu, -nu) for positive mu, nu with mu - nu a root."""
        diff = weight(x - y for x, y in zip(mu, nu_neg))
        if diff in posset:
            # mu = nu + diff
            return -(len2[diff] / len2[mu]) * pos_n(nu_neg, diff)
        neg = weight(-c for c in diff)
        # nu = mu + neg
        return (len2[neg] / len2[nu_neg]) * pos_n(neg, mu)

    for gamma in pos:
        if rs.height(gamma) < 2:
            continue
        special = []
        for a in pos:
            b = weight(g - x for g, x in zip(gamma, a))
            if b in posset and order_key[a] < order_key[b]:
                special.append(a)
        special.sort(key=lambda a: order_key[a])
        eps = special[0]
        delta = weight(g - x for g, x in zip(gamma, eps))
        table[(eps, delta)] = Fraction(string_down(delta, eps) + 1)
        for a in special[1:]:
            b = weight(g - x for g, x in zip(gamma, a))
            acc = Fraction(0)
            d_minus_a = weight(x - y for x, y in zip(delta, a))
            if d_minus_a in posset:
                acc += mixed_n(delta, a) * pos_n(d_minus_a, eps)
            e_minus_a = weight(x - y for x, y in zip(eps, a))
            neg_e_minus_a = weight(-c for c in e_minus_a)
            if e_minus_a in posset or neg_e_minus_a in posset:
                # N(-a, eps) * N(eps - a, delta)
                n1 = -mixed_n(eps, a)
                if e_minus_a in posset:
                    n2 = pos_n(e_minus_a, delta)
                else:
                    # N(-(a-eps), delta) with delta - (a-eps) = b
                    n2 = -(len2[b] / len2[delta]) * pos_n(b, neg_e_minus_a)
                acc += n1 * n2
            val = (len2[gamma] / (len2[b] * table[(eps, delta)])) * acc
            expected = string_down(b, a) + 1
            if abs(val) != expected:
                raise AssertionError(
                    f"structure constant magnitude mismatch at {a}+{b}={gamma}"
                )
            table[(a, b)] = val
    return table, pos_n, mixed_n


def chevalley_structure(type_label: str) -> LieStructure:
    """Structure constants of the simple Lie algebra of the given type.

    Basis order: Cartan h_1..h_n (simple coroots), then x_alpha for the
    positive roots by height, then x_{-alpha} in the same order.
    Rank is capped at 4 (the identity checks never need more).
    """
    rs = build_root_system(type_label)
    if rs.rank > 4:
        raise UsageError("chevalley_structure supports rank <= 4")
    table, pos_n, mixed_n = _structure_sign_table(rs)
    n = rs.rank
    pos = list(rs.positive_roots)
    npos = len(pos)
    dim = n + 2 * npos
    idx_pos = {a: n + i for i, a in enumerate(pos)}
    idx_neg = {a: n + npos + i for i, a in enumerate(pos)}
    posset = set(pos)

    def root_index(v: Weight) -> Optional[int]:
        if v in posset:
            return idx_pos[v]
        nv = weight(-c for c in v)
        if nv in posset:
            return idx_neg[nv]
        return None

    def n_coeff(u: Weight, sign_u: int, v: Weight, sign_v: int) -> Fraction:
        """N(su * u, sv * v) for positive roots u, v and signs."""
        if sign_u > 0 and sign_v > 0:
            return pos_n(u, v)
        if sign_u < 0 and sign_v < 0:
            return -pos_n(u, v)
        if sign_u > 0:
            return mixed_n(u, v)
        return -mixed_n(v, u)

    labels = [f"h{i + 1}" for i in range(n)]
    labels += [f"e[{','.join(str(c) for c in rs.root_coords(a))}]" for a in pos]
    labels += [f"f[{','.join(str(c) for c in rs.root_coords(a))}]" for a in pos]

    brackets: Dict[Tuple[int, int], Vector] = {}

    def put(i: int, j: int, vec: Vector) -> None:
        if i == j or not vec:
            return
        if i < j:
            brackets[(i, j)] = {k: frac(c) for k, c in vec.items() if c != 0}
        else:
            brackets[(j, i)] = {k: -frac(c) for k, c in vec.items() if c != 0}

    half_len = {a: rs.norm2(a) / 2 for a in pos}
    # [h_i, x_{+-alpha}] = +-<alpha, alpha_i^vee> x_{+-alpha}
    for i in range(n):
        for a in pos:
            c = frac(a[i])
            if c:
                put(i, idx_pos[a], {idx_pos[a]: c})
                put(i, idx_neg[a], {idx_neg[a]: -c})
    # [x_alpha, x_{-alpha}] = alpha^vee expanded in simple coroots
    for a in pos:
        coords = rs.root_coords(a)
        coro = {
            i: frac(coords[i]) * rs.symmetrizer[i] / half_len[a]
            for i in range(n)
            if coords[i]
        }
        put(idx_pos[a], idx_neg[a], coro)
    # root-root brackets
    signed = [(a, 1) for a in pos] + [(a, -1) for a in pos]
    for (u, su), (v, sv) in itertools.combinations(signed, 2):
        if u == v and su != sv:
            continue  # handled above
        s = weight(su * x + sv * y for x, y in zip(u, v))
        k = root_index(s)
        if k is None:
            continue
        i = idx_pos[u] if su > 0 else idx_neg[u]
        j = idx_pos[v] if sv > 0 else idx_neg[v]
        put(i, j, {k: n_coeff(u, su, v, sv)})

    ls = LieStructure(labels, brackets, name=f"g({rs.type_label})")
    ls.root_system = rs  # type: ignore[attr-defined]
    ls.cartan_size = n  # type: ignore[attr-defined]
    return ls


def takiff(ls: LieStructure) -> LieStructure:
    """Square-zero extension g[t]/(t^2): doubled basis with [xt, yt] = 0."""
    d = ls.dimension
    labels = list(ls.labels) + [f"{s}.t" for s in ls.labels]
    brackets: Dict[Tuple[int, int], Vector] = {}
    for (i, j), vec in ls.brackets.items():
        brackets[(i, j)] = dict(vec)
        brackets[(i, j + d)] = {k + d: c for k, c in vec.items()}
        brackets[(j, i + d)] = {k + d: -c for k, c in vec.items()}
    grading = [0] * d + [1] * d
    return LieStructure(labels, brackets, grading=grading, name=f"takiff({ls.name})")


def abelian(dim: int) -> LieStructure:
    return LieStructure([f"a{i}" for i in range(dim)], {}, name=f"abelian{dim}")


# ---------------------------------------------------------------------------
# invariant bilinear forms


@dataclass(frozen=True)
class BilinearFormSpace:
    algebra: LieStructure
    basis: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]  # symmetric matrices

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "dimension": self.dimension,
            "forms": [
                [[rat_str(x) for x in row] for row in form] for form in self.basis
            ],
        }


def invariant_forms(ls: LieStructure) -> BilinearFormSpace:
    """Exact basis of the invariant symmetric bilinear forms.

    Solves B([x,y],z) + B(y,[x,z]) = 0 over all basis triples by sparse
    null-space computation on the d(d+1)/2 symmetric unknowns.
    """
    d = ls.dimension
    pairs = {(i, j): idx for idx, (i, j) in enumerate(
        (i, j) for i in range(d) for j in range(i, d))}

    def pidx(i: int, j: int) -> int:
        return pairs[(i, j)] if i <= j else pairs[(j, i)]

    ns = SparseNullspace(len(pairs))
    for x in range(d):
        for y in range(d):
            by = ls.bracket_basis(x, y)
            for z in range(y, d):  # B symmetric: (y,z) and (z,y) give the same row
                row: Dict[int, Fraction] = {}
                for k, c in by.items():
                    col = pidx(k, z)
                    row[col] = row.get(col, Fraction(0)) + c
                for k, c in ls.bracket_basis(x, z).items():
                    col = pidx(y, k)
                    row[col] = row.get(col, Fraction(0)) + c
                if row:
                    ns.add_row(row)
    basis = []
    for vec in ns.nullspace():
        form = [[Fraction(0)] * d for _ in range(d)]
        for (i, j), idx in pairs.items():
            form[i][j] = vec[idx]
            form[j][i] = vec[idx]
        basis.append(tuple(tuple(row) for row in form))
    return BilinearFormSpace(ls, tuple(basis))


# ---------------------------------------------------------------------------
# intertwiner spaces


def _rep_matrices(ls: LieStructure, which: str):
    """Representation matrices of every basis element on the chosen module."""
    d = ls.dimension
    if which == "adjoint":
        return [ls.ad_matrix(i) for i in range(d)], d
    if which == "trivial":
        return [[[Fraction(0)]] for _ in range(d)], 1
    if which not in ("alt2_adjoint", "sym2_adjoint"):
        raise UsageError(f"unknown representation {which!r}")
    sym = which == "sym2_adjoint"
    basis_pairs = [(a, b) for a in range(d) for b in range(a if sym else a + 1, d)]
    index = {p: i for i, p in enumerate(basis_pairs)}
    dim = len(basis_pairs)
    mats = []
    for i in range(d):
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for col, (a, b) in enumerate(basis_pairs):
            # x.(a ^ b) = (x.a) ^ b + a ^ (x.b)
            for k, c in ls.bracket_basis(i, a).items():
                _add_pair(m, index, k, b, c, col, sym)
            for k, c in ls.bracket_basis(i, b).items():
                _add_pair(m, index, a, k, c, col, sym)
        mats.append(m)
    return mats, dim


def _add_pair(m, index, u, v, coeff, col, sym):
    if u == v:
        if not sym:
            return
        m[index[(u, v)]][col] += 2 * coeff
        return
    if u > v:
        u, v = v, u
        if not sym:
            coeff = -coeff
    m[index[(u, v)]][col] += coeff


def equivariant_hom_dim(rep_from: str, rep_to: str, ls: LieStructure) -> int:
    """dim Hom_g(V, W) by exact null-space of the intertwiner equations."""
    mats_v, dim_v = _rep_matrices(ls, rep_from)
    mats_w, dim_w = _rep_matrices(ls, rep_to)
    ns = SparseNullspace(dim_w * dim_v)
    for mv, mw in zip(mats_v, mats_w):
        # rho_W(x) T - T rho_V(x) = 0
        for r in range(dim_w):
            for c in range(dim_v):
                row: Dict[int, Fraction] = {}
                for k in range(dim_w):
                    if mw[r][k]:
                        col = k * dim_v + c
                        row[col] = row.get(col, Fraction(0)) + mw[r][k]
                for k in range(dim_v):
                    if mv[k][c]:
                        col = r * dim_v + k
                        row[col] = row.get(col, Fraction(0)) - mv[k][c]
                if row:
                    ns.add_row(row)
    return dim_w * dim_v - ns.rank


# ---------------------------------------------------------------------------
# scalars in a quadratic extension


class QuadExt:
    """a + b sqrt(d) with exact rational a, b and fixed nonsquare d > 0."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = frac(a)
        self.b = frac(b)
        self.d = frac(d)

    def _lift(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise UsageError("mixed quadratic extensions")
            return other
        return QuadExt(other, 0, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadExt(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        nrm = self.a * self.a - self.d * self.b * self.b
        if nrm == 0:
            raise ZeroDivisionError("zero element of the quadratic extension")
        return QuadExt(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        o = self._lift(other)
        return self.a == o.a and self.b == o.b

    def to_json(self) -> dict:
        return {"rational": rat_str(self.a), "radical": rat_str(self.b), "radicand": rat_str(self.d)}

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"


def _scalar_zero(x) -> bool:
    return x.is_zero() if isinstance(x, QuadExt) else frac(x) == 0


def _scalar_json(x):
    return x.to_json() if isinstance(x, QuadExt) else rat_str(x)


# ---------------------------------------------------------------------------
# classification of square-zero-type extensions


@dataclass(frozen=True)
class ExtensionClassification:
    kind: str  # "takiff_iso" | "direct_sum_iso"
    alpha: Fraction
    beta: Fraction
    discriminant: Fraction  # 4 alpha + beta^2
    witnesses: tuple  # coefficient pairs (c1, c2) defining the maps x -> c1 x_1 + c2 x_2
    eigenvalues: tuple  # () for takiff, (p+, p-) otherwise

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": rat_str(self.alpha),
            "beta": rat_str(self.beta),
            "discriminant": rat_str(self.discriminant),
            "witnesses": [[_scalar_json(c) for c in w] for w in self.witnesses],
            "eigenvalues": [_scalar_json(p) for p in self.eigenvalues],
        }


class _DoubledAlgebra:
    """g + g with [x1,y1]=[x,y]1, [x1,y2]=[x,y]2, [x2,y2]=a[x,y]1+b[x,y]2."""

    def __init__(self, base: LieStructure, alpha, beta):
        self.base = base
        self.alpha = alpha
        self.beta = beta

    def bracket(self, x: Tuple, y: Tuple) -> Tuple:
        x1, x2 = x
        y1, y2 = y

        def add(u: Vector, v: Vector) -> Vector:
            out = dict(u)
            for k, c in v.items():
                nv = out.get(k, 0) + c
                if _scalar_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
            return out

        def smul(u: Vector, s) -> Vector:
            if _scalar_zero(s):
                return {}
            return {k: s * c for k, c in u.items()}

        lift = lambda u, v: _bracket_lifted(self.base, u, v)  # noqa: E731
        c11 = lift(x1, y1)
        c12 = add(lift(x1, y2), lift(x2, y1))
        c22 = lift(x2, y2)
        comp1 = add(c11, smul(c22, self.alpha))
        comp2 = add(c12, smul(c22, self.beta))
        return (comp1, comp2)


def _bracket_lifted(base: LieStructure, x: Vector, y: Vector) -> Vector:
    """Base-algebra bracket on vectors with scalars possibly in Q(sqrt d)."""
    out: Dict[int, object] = {}
    for i, xi in x.items():
        for j, yj in y.items():
            if i == j:
                continue
            f = xi * yj
            for k, c in base.bracket_basis(i, j).items():
                nv = out.get(k, 0) + f * c
                if _scalar_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
    return out


def classify_extension(
    alpha, beta, base: Optional[LieStructure] = None
) -> ExtensionClassification:
    """Classify g + ad(g) with [x2,y2] = alpha [x,y]_1 + beta [x,y]_2.

    Discriminant 0 yields a Takiff structure with abelian-image witness
    x -> -beta/2 x_1 + x_2; otherwise two commuting ideal embeddings
    phi_pm with eigenvalue coefficients p_pm = (-beta +- sqrt(disc))/2.
    All homomorphism/ideal checks run exactly and raise on failure.
    """
    alpha, beta = frac(alpha), frac(beta)
    if base is None:
        base = chevalley_structure("A1")
    disc = 4 * alpha + beta * beta
    alg = _DoubledAlgebra(base, alpha, beta)
    d = base.dimension

    def phi_vec(c1, c2, i: int) -> Tuple:
        return ({i: c1} if not _scalar_zero(c1) else {}, {i: c2} if not _scalar_zero(c2) else {})

    def check_hom(c1, c2) -> None:
        for i in range(d):
            for j in range(i + 1, d):
                img = alg.bracket(phi_vec(c1, c2, i), phi_vec(c1, c2, j))
                expect = base.bracket({i: 1}, {j: 1})
                exp1 = {k: c1 * v for k, v in expect.items()}
                exp2 = {k: c2 * v for k, v in expect.items()}
                if not _vec_eq(img[0], exp1) or not _vec_eq(img[1], exp2):
                    raise AssertionError("witness map is not a Lie homomorphism")

    if disc == 0:
        c1, c2 = -beta / 2, Fraction(1)
        # abelian image: [phi x, phi y] = 0
        for i in range(d):
            for j in range(i + 1, d):
                img = alg.bracket(phi_vec(c1, c2, i), phi_vec(c1, c2, j))
                if img[0] or img[1]:
                    raise AssertionError("takiff witness image is not abelian")
        return ExtensionClassification(
            "takiff_iso", alpha, beta, disc, ((c1, c2),), ()
        )
    root = sqrt_rational(disc)
    if root is not None:
        p_plus = (-beta + root) / 2
        p_minus = (-beta - root) / 2
    else:
        p_plus = QuadExt(Fraction(-beta, 2), Fraction(1, 2), disc)
        p_minus = QuadExt(Fraction(-beta, 2), Fraction(-1, 2), disc)
    witnesses = []
    for p in (p_plus, p_minus):
        denom = 2 * p + beta
        if _scalar_zero(denom):
            raise UsageError(f"degenerate denominator 2p + beta = 0 at p = {p}")
        c1 = p / denom
        c2 = (1 if not isinstance(p, QuadExt) else QuadExt(1, 0, disc)) / denom
        check_hom(c1, c2)
        witnesses.append((c1, c2))
    # ideals: [x_1, phi(y)] = phi([x,y]) and [x_2, phi(y)] = (p + beta) phi([x,y])
    for (c1, c2), p in zip(witnesses, (p_plus, p_minus)):
        for i in range(d):
            for j in range(d):
                if i == j:
                    continue
                expect = base.bracket({i: 1}, {j: 1})
                img1 = alg.bracket(({i: 1}, {}), phi_vec(c1, c2, j))
                if not _vec_eq(img1[0], {k: c1 * v for k, v in expect.items()}) or not _vec_eq(
                    img1[1], {k: c2 * v for k, v in expect.items()}
                ):
                    raise AssertionError("first-copy ideal relation fails")
                img2 = alg.bracket(({}, {i: 1}), phi_vec(c1, c2, j))
                s = p + beta
                if not _vec_eq(img2[0], {k: s * c1 * v for k, v in expect.items()}) or not _vec_eq(
                    img2[1], {k: s * c2 * v for k, v in expect.items()}
                ):
                    raise AssertionError("second-copy ideal relation fails")
    # commuting images
    (a1, a2), (b1, b2) = witnesses
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            img = alg.bracket(phi_vec(a1, a2, i), phi_vec(b1, b2, j))
            if img[0] or img[1]:
                raise AssertionError("images of the two witnesses do not commute")
    # spanning: the 2x2 coefficient matrix must be invertible
    det = a1 * b2 - a2 * b1
    if _scalar_zero(det):
        raise AssertionError("witness images do not span")
    return ExtensionClassification(
        "direct_sum_iso", alpha, beta, disc, tuple(witnesses), (p_plus, p_minus)
    )


def _vec_eq(u: Vector, v: Vector) -> bool:
    keys = set(u) | set(v)
    for k in keys:
        du = u.get(k, 0)
        dv = v.get(k, 0)
        diff = du - dv if not isinstance(du, QuadExt) and not isinstance(dv, QuadExt) else (
            (du if isinstance(du, QuadExt) else QuadExt(du, 0, dv.d)) - dv
        )
        if not _scalar_zero(diff):
            return False
    return True


# ---------------------------------------------------------------------------
# degree-two singular-vector constraints


class Poly2:
    """Polynomial in the two level symbols kappa_1, kappa_2 over Q."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Fraction]] = None):
        self.terms: Dict[Tuple[int, int], Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = frac(c)
                if c != 0:
                    self.terms[k] = c

    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): frac(c)})

    @classmethod
    def kappa(cls, factor: int) -> "Poly2":
        return cls({(1, 0) if factor == 0 else (0, 1): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.terms)
        for k, c in other.terms.items():
            nv = out.get(k, Fraction(0)) + c
            if nv == 0:
                out.pop(k, None)
            else:
                out[k] = nv
        return Poly2(out)

    def __neg__(self) -> "Poly2":
        return Poly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other: "Poly2") -> "Poly2":
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                nv = out.get(k, Fraction(0)) + c1 * c2
                if nv == 0:
                    out.pop(k, None)
                else:
                    out[k] = nv
        return Poly2(out)

    def scale(self, c) -> "Poly2":
        c = frac(c)
        return Poly2({k: v * c for k, v in self.terms.items()}) if c else Poly2()

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.terms == other.terms

    def evaluate(self, k1, k2) -> Fraction:
        k1, k2 = frac(k1), frac(k2)
        return sum(
            (c * k1**i * k2**j for (i, j), c in self.terms.items()), Fraction(0)
        )

    def variables(self) -> Tuple[bool, bool]:
        uses1 = any(i for (i, _j) in self.terms)
        uses2 = any(j for (_i, j) in self.terms)
        return uses1, uses2

    def to_json(self) -> list:
        return [
            {"k1_power": i, "k2_power": j, "coeff": rat_str(c)}
            for (i, j), c in sorted(self.terms.items())
        ]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items()):
            s = str(c)
            if i:
                s += f"*k1^{i}" if i > 1 else "*k1"
            if j:
                s += f"*k2^{j}" if j > 1 else "*k2"
            bits.append(s)
        return " + ".join(bits)


# mode symbols: ("e"|"h"|"f", factor, mode_index)
_SL2_BRACKET = {
    ("e", "f"): (("h", 1),),
    ("f", "e"): (("h", -1),),
    ("h", "e"): (("e", 2),),
    ("e", "h"): (("e", -2),),
    ("h", "f"): (("f", -2),),
    ("f", "h"): (("f", 2),),
}


class TwoTriplesModeAlgebra:
    """Mode algebra of two commuting affine sl_2 triples at symbolic levels.

    States are linear combinations of creation-mode monomials applied to
    the vacuum, with Poly2 coefficients in the two levels.  Root vectors
    may be rescaled (e -> s e, f -> t f); the invariant form is fixed by
    <e, f> = 1 and <h, h> = 2 before rescaling.
    """

    def __init__(self, scale_e=(1, 1), scale_f=(1, 1)):
        self.scale_e = tuple(frac(s) for s in scale_e)
        self.scale_f = tuple(frac(t) for t in scale_f)
        for s in self.scale_e + self.scale_f:
            if s == 0:
                raise UsageError("root-vector rescaling must be nonzero")

    def _bracket(self, sym1: str, sym2: str, fac: int):
        base = _SL2_BRACKET.get((sym1, sym2), ())
        s, t = self.scale_e[fac], self.scale_f[fac]
        scale_of = {"e": s, "f": t, "h": Fraction(1)}
        out = []
        for sym, c in base:
            c = frac(c) * scale_of[sym1] * scale_of[sym2] / scale_of[sym]
            out.append((sym, c))
        return out

    def _pairing(self, sym1: str, sym2: str, fac: int) -> Fraction:
        s, t = self.scale_e[fac], self.scale_f[fac]
        if {sym1, sym2} == {"e", "f"}:
            return s * t
        if sym1 == sym2 == "h":
            return Fraction(2)
        return Fraction(0)

    def vacuum(self) -> Dict[tuple, Poly2]:
        return {(): Poly2.const(1)}

    def apply(self, mode, state: Dict[tuple, Poly2]) -> Dict[tuple, Poly2]:
        sym, fac, m = mode
        out: Dict[tuple, Poly2] = {}
        for mono, coeff in state.items():
            if m < 0:
                _state_add(out, (mode,) + mono, coeff)
                continue
            for mono2, poly in self._push(mode, mono).items():
                _state_add(out, mono2, coeff * poly)
        return out

    def _push(self, mode, mono: tuple) -> Dict[tuple, Poly2]:
        """Move an annihilation mode through a creation monomial onto |0>."""
        sym, fac, m = mode
        out: Dict[tuple, Poly2] = {}
        for i, (sym2, fac2, n) in enumerate(mono):
            if fac2 != fac:
                continue
            prefix, suffix = mono[:i], mono[i + 1 :]
            for z, c in self._bracket(sym, sym2, fac):
                mm = m + n
                if mm < 0:
                    _state_add(out, prefix + ((z, fac, mm),) + suffix, Poly2.const(c))
                else:
                    for mono2, poly in self._push((z, fac, mm), suffix).items():
                        _state_add(out, prefix + mono2, poly.scale(c))
            if m + n == 0 and m != 0:
                cp = self._pairing(sym, sym2, fac) * m
                if cp:
                    _state_add(
                        out, prefix + suffix, Poly2.kappa(fac).scale(cp)
                    )
        # annihilation modes (m >= 0, including zero modes) kill the vacuum
        return out


def _state_add(state: Dict[tuple, Poly2], mono: tuple, poly: Poly2) -> None:
    cur = state.get(mono)
    nv = poly if cur is None else cur + poly
    if nv.is_zero():
        state.pop(mono, None)
    else:
        state[mono] = nv


def _rational_roots(coeffs: List[Fraction]) -> List[Fraction]:
    """Roots of a univariate polynomial of degree <= 2 given by coeff list
    [c0, c1, c2, ...]; raises if a root is irrational."""
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg <= 0:
        raise UsageError("constant polynomial has no root set")
    if deg == 1:
        return [-coeffs[0] / coeffs[1]]
    if deg == 2:
        c0, c1, c2 = coeffs
        disc = c1 * c1 - 4 * c2 * c0
        root = sqrt_rational(disc)
        if root is None:
            raise AssertionError("constraint polynomial does not factor over Q")
        return sorted({(-c1 + root) / (2 * c2), (-c1 - root) / (2 * c2)})
    raise UsageError("unexpected degree in constraint polynomial")


@dataclass(frozen=True)
class ConstraintPolynomial:
    """One f^c_1 f^d_1 annihilation constraint on the degree-two vector."""

    pair: str  # "aa" | "bb" | "ab"
    coefficient: str  # which coefficient of the candidate vector it multiplies
    polynomial: Poly2
    root_set: dict

    def to_json(self) -> dict:
        return {
            "pair": self.pair,
            "coefficient": self.coefficient,
            "polynomial": self.polynomial.to_json(),
            "root_set": self.root_set,
        }


def singular_constraints(scale_e=(1, 1), scale_f=(1, 1)) -> List[ConstraintPolynomial]:
    """Annihilation constraints on a weight-(2 theta) degree-two vector.

    The candidate vector is alpha e^a e^a |0> + beta e^a e^b |0> +
    gamma e^b e^b |0> in modes of degree -1; applying the lowering modes
    f^c_1 f^d_1 reduces each monomial to a multiple of |0> whose
    coefficient is an exact polynomial in the two levels.  Cross terms
    vanish identically, so each constraint is reported as the polynomial
    multiplying its matching coefficient, with solved root sets.
    """
    algebra = TwoTriplesModeAlgebra(scale_e, scale_f)
    e_a = ("e", 0, -1)
    e_b = ("e", 1, -1)
    monomials = {
        "alpha": (e_a, e_a),
        "beta": (e_a, e_b),
        "gamma": (e_b, e_b),
    }
    lowering = {"aa": (0, 0), "bb": (1, 1), "ab": (0, 1)}
    matching = {"aa": "alpha", "bb": "gamma", "ab": "beta"}
    out = []
    for pair, (fc, fd) in lowering.items():
        polys: Dict[str, Poly2] = {}
        for name, mono in monomials.items():
            state = {mono: Poly2.const(1)}
            state = algebra.apply(("f", fd, 1), state)
            state = algebra.apply(("f", fc, 1), state)
            for rest, poly in state.items():
                if rest:
                    raise AssertionError("lowering did not land on the vacuum line")
                polys[name] = polys.get(name, Poly2()) + poly
        for name, poly in polys.items():
            if name != matching[pair] and not poly.is_zero():
                raise AssertionError("cross-term constraint did not vanish")
        poly = polys.get(matching[pair], Poly2())
        if poly.is_zero():
            raise AssertionError("matching constraint vanished identically")
        uses1, uses2 = poly.variables()
        if uses1 and uses2:
            # must be a nonzero multiple of kappa_1 kappa_2
            if set(poly.terms) != {(1, 1)}:
                raise AssertionError("mixed constraint is not a multiple of k1*k2")
            root_set = {"product_of": ["kappa1", "kappa2"]}
        else:
            var = "kappa1" if uses1 else "kappa2"
            deg = max(i + j for (i, j) in poly.terms)
            coeffs = [Fraction(0)] * (deg + 1)
            for (i, j), c in poly.terms.items():
                coeffs[i + j] = c
            roots = _rational_roots(coeffs)
            root_set = {"variable": var, "roots": [rat_str(r) for r in roots]}
        out.append(
            ConstraintPolynomial(pair, matching[pair], poly, root_set)
        )
    return out
