"""Exact root-system and weight-lattice data for the finite simple types.

A weight is a plain tuple of rationals (ints where possible) holding its
coordinates in the fundamental-weight basis, so the i-th coordinate of a
weight mu is the pairing <mu, alpha_i^vee>.  All bilinear data derives
from the symmetrized Cartan matrix, normalized so the highest root theta
has (theta, theta) = 2.

Weyl-group operations never materialize W: orbits are enumerated by
breadth-first closure under simple reflections, with parity tracking for
regular orbits (the only place signs are consumed).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .linalg import frac, isqrt_rational_floor, mat_inverse

Weight = Tuple  # coordinates in the fundamental-weight basis (int | Fraction entries)

_SERIES = {"A", "B", "C", "D", "E", "F", "G"}

_DUAL_SERIES = {"A": "A", "B": "C", "C": "B", "D": "D", "E": "E", "F": "F", "G": "G"}


class UsageError(ValueError):
    """Bad input at an API boundary (unknown type, wrong lattice, ...)."""


def _norm_entry(x) -> object:
    x = frac(x)
    return int(x) if x.denominator == 1 else x


def weight(coords: Iterable) -> Weight:
    """Canonicalize a coordinate iterable into a weight tuple."""
    return tuple(_norm_entry(c) for c in coords)


def parse_type_label(label: str) -> Tuple[str, int]:
    s = label.strip().upper().replace("_", "")
    if len(s) < 2 or s[0] not in _SERIES:
        raise UsageError(f"unknown type label {label!r}")
    try:
        rank = int(s[1:])
    except ValueError:
        raise UsageError(f"unknown type label {label!r}") from None
    _check_type(s[0], rank, label)
    return s[0], rank


def _check_type(series: str, rank: int, label: str) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[series]
    if not ok:
        raise UsageError(f"unsupported type label {label!r}")


def cartan_matrix(series: str, rank: int) -> List[List[int]]:
    """Canonical Cartan matrix (Bourbaki node numbering)."""
    a = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if series in ("A", "B", "C"):
        for i in range(rank - 1):
            link(i, i + 1)
        if series == "B" and rank >= 2:
            link(rank - 2, rank - 1, -2, -1)  # alpha_rank short
        if series == "C" and rank >= 2:
            link(rank - 2, rank - 1, -1, -2)  # alpha_rank long
    elif series == "D":
        for i in range(rank - 3):
            link(i, i + 1)
        link(rank - 3, rank - 2)
        link(rank - 3, rank - 1)
    elif series == "E":
        # chain 1-3-4-5-6(-7)(-8), node 2 attached to 4 (Bourbaki)
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for u, v in zip(chain, chain[1:]):
            link(u, v)
        link(1, 3)
    elif series == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif series == "G":
        link(0, 1, -1, -3)  # alpha_1 short, alpha_2 long
    return a


def is_valid_cartan(a: Sequence[Sequence[int]]) -> bool:
    n = len(a)
    for i in range(n):
        if len(a[i]) != n or a[i][i] != 2:
            return False
        for j in range(n):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                return False
    return True


def _symmetrizer(a: Sequence[Sequence[int]]) -> List[Fraction]:
    """d_i = (alpha_i, alpha_i)/2 with max_i d_i = 1, from d_i a_ij = d_j a_ji."""
    n = len(a)
    d: List[Fraction] = [None] * n  # type: ignore[list-item]
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if i != j and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(a[j][i], a[i][j])
                todo.append(j)
    if any(x is None for x in d):
        raise UsageError("Cartan matrix is not indecomposable")
    top = max(d)
    return [x / top for x in d]


class RootSystem:
    """Complete integral/rational data of one simple root system.

    Built from a finite-type Cartan matrix; all derived quantities
    (positive roots, Weyl vectors, dual Coxeter number, lacity, Weyl
    group order) are computed, not table lookups.  Instances are
    immutable after construction and safe to share.
    """

    def __init__(self, cartan: Sequence[Sequence[int]], type_label: str):
        if not is_valid_cartan(cartan):
            raise UsageError("not a generalized Cartan matrix")
        self.type_label = type_label
        self.series, self.rank = parse_type_label(type_label)
        self.cartan_matrix: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(x) for x in row) for row in cartan
        )
        n = self.rank
        if len(cartan) != n:
            raise UsageError("rank does not match Cartan matrix size")
        self.symmetrizer: Tuple[Fraction, ...] = tuple(_symmetrizer(cartan))
        # quadratic_form[i][j] = (omega_i, omega_j) = (A^{-1})_{ij} d_j
        ainv = mat_inverse(cartan)
        self.quadratic_form: Tuple[Tuple[Fraction, ...], ...] = tuple(
            tuple(ainv[i][j] * self.symmetrizer[j] for j in range(n)) for i in range(n)
        )
        # simple root alpha_i has fundamental-weight coords = i-th row of A
        self.simple_roots: Tuple[Weight, ...] = tuple(
            weight(self.cartan_matrix[i]) for i in range(n)
        )
        self._inv_cartan_t = mat_inverse([[cartan[j][i] for j in range(n)] for i in range(n)])
        self._build_positive_roots()
        self.rho: Weight = weight([1] * n)
        self.rho_check: Weight = weight([Fraction(1) / d for d in self.symmetrizer])
        self.highest_root: Weight = self.positive_roots[-1]
        theta_len2 = self.inner(self.highest_root, self.highest_root)
        if theta_len2 != 2:
            raise AssertionError("normalization broke: (theta,theta) != 2")
        self.dual_coxeter: int = int(1 + self.inner(self.rho, self.highest_root))
        self.lacity: int = int(Fraction(1) / min(self.symmetrizer))
        self.weyl_order: int = self._weyl_order_from_heights()

    # -- construction helpers -------------------------------------------------

    def _build_positive_roots(self) -> None:
        n = self.rank
        # track both fundamental-weight coords and simple-root coords
        root_coords: Dict[Weight, Tuple[int, ...]] = {}
        by_height: List[List[Weight]] = [[]]
        for i, alpha in enumerate(self.simple_roots):
            rc = tuple(int(i == j) for j in range(n))
            root_coords[alpha] = rc
            by_height[0].append(alpha)
        h = 0
        while by_height[h]:
            nxt: List[Weight] = []
            for beta in by_height[h]:
                rc = root_coords[beta]
                for i, alpha in enumerate(self.simple_roots):
                    # root string: q = p - <beta, alpha_i^vee> copies upward
                    p = 0
                    down = tuple(b - a for b, a in zip(beta, alpha))
                    while down in root_coords:
                        p += 1
                        down = tuple(b - a for b, a in zip(down, alpha))
                    if p - beta[i] >= 1:
                        up = weight(b + a for b, a in zip(beta, alpha))
                        if up not in root_coords:
                            root_coords[up] = tuple(
                                c + int(i == j) for j, c in enumerate(rc)
                            )
                            nxt.append(up)
            by_height.append(sorted(nxt))
            h += 1
        ordered: List[Weight] = []
        for level in by_height:
            ordered.extend(sorted(level))
        self.positive_roots: Tuple[Weight, ...] = tuple(ordered)
        self._root_coords = root_coords  # positive roots -> simple-root coords
        self._root_set = frozenset(root_coords) | frozenset(
            weight(-c for c in r) for r in root_coords
        )
        self._heights = [len(level) for level in by_height if level]

    def _weyl_order_from_heights(self) -> int:
        # exponents are the conjugate partition of the height histogram
        counts = self._heights
        exponents = [sum(1 for c in counts if c >= i) for i in range(1, counts[0] + 1)]
        order = 1
        for m in exponents:
            order *= m + 1
        return order

    # -- basic queries ---------------------------------------------------------

    def same_as(self, other: "RootSystem") -> bool:
        return (
            isinstance(other, RootSystem)
            and self.type_label == other.type_label
            and self.cartan_matrix == other.cartan_matrix
        )

    def _require_rank(self, lam: Weight) -> None:
        if len(lam) != self.rank:
            raise UsageError("weight has wrong rank for this root system")

    def inner(self, lam: Weight, mu: Weight) -> Fraction:
        """Exact symmetric bilinear form, normalized with (theta,theta)=2."""
        self._require_rank(lam)
        self._require_rank(mu)
        f = self.quadratic_form
        total = Fraction(0)
        for i, li in enumerate(lam):
            if li:
                row = f[i]
                total += li * sum(row[j] * mj for j, mj in enumerate(mu) if mj)
        return frac(total)

    def norm2(self, lam: Weight) -> Fraction:
        return self.inner(lam, lam)

    def height(self, root: Weight) -> int:
        return sum(self._root_coords[root])

    def root_coords(self, root: Weight) -> Tuple[int, ...]:
        """Coordinates of a positive root in the simple-root basis."""
        return self._root_coords[root]

    def is_root(self, v: Weight) -> bool:
        return v in self._root_set

    def is_integral(self, lam: Weight) -> bool:
        self._require_rank(lam)
        return all(frac(c).denominator == 1 for c in lam)

    def in_root_lattice(self, lam: Weight) -> bool:
        """Exact membership test lam in Q (solves against the simple-root basis)."""
        self._require_rank(lam)
        m = [
            sum(self._inv_cartan_t[i][j] * frac(lam[j]) for j in range(self.rank))
            for i in range(self.rank)
        ]
        return all(x.denominator == 1 for x in m)

    def is_dominant(self, lam: Weight) -> bool:
        self._require_rank(lam)
        return all(frac(c) >= 0 for c in lam)

    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    # -- Weyl group machinery --------------------------------------------------

    def reflect(self, i: int, lam: Weight) -> Weight:
        """Simple reflection s_i(lam) = lam - <lam, alpha_i^vee> alpha_i."""
        c = lam[i]
        if c == 0:
            return lam
        alpha = self.simple_roots[i]
        return weight(x - c * a for x, a in zip(lam, alpha))

    def dominant_representative(self, lam: Weight) -> Weight:
        self._require_rank(lam)
        lam = weight(lam)
        while True:
            i = next((k for k, c in enumerate(lam) if frac(c) < 0), None)
            if i is None:
                return lam
            lam = self.reflect(i, lam)

    def weyl_orbit(self, lam: Weight) -> List[Weight]:
        """Full W-orbit of a dominant weight, each element exactly once."""
        self._require_rank(lam)
        if not self.is_dominant(lam):
            raise UsageError("weyl_orbit requires a dominant weight")
        lam = weight(lam)
        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for mu in frontier:
                for i in range(self.rank):
                    nu = self.reflect(i, mu)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
            frontier = nxt
        return sorted(seen)

    def weyl_orbit_signed(self, lam: Weight) -> List[Tuple[Weight, int]]:
        """Orbit of a regular dominant weight with det-parities epsilon(w).

        The parity of an orbit element is well defined exactly when the
        stabilizer is trivial, i.e. lam is regular; this is enforced.
        """
        self._require_rank(lam)
        if not self.is_dominant(lam):
            raise UsageError("weyl_orbit_signed requires a dominant weight")
        if any(frac(c) == 0 for c in lam):
            raise UsageError("weyl_orbit_signed requires a regular weight")
        lam = weight(lam)
        parity = {lam: 1}
        frontier = [lam]
        while frontier:
            nxt = []
            for mu in frontier:
                pm = parity[mu]
                for i in range(self.rank):
                    nu = self.reflect(i, mu)
                    if nu not in parity:
                        parity[nu] = -pm
                        nxt.append(nu)
            frontier = nxt
        return sorted(parity.items())

    def star(self, lam: Weight) -> Weight:
        """Highest weight of the dual representation: -w_0(lam)."""
        self._require_rank(lam)
        if not self.is_dominant(lam):
            raise UsageError("star requires a dominant weight")
        return self.dominant_representative(weight(-frac(c) for c in lam))

    def dominant_weights_in_root_lattice(self, norm_bound) -> List[Weight]:
        """All lam in Q^+ with (lam,lam)/2 <= norm_bound.

        Sorted by (lam,lam), then lexicographically by coordinates.
        """
        bound = frac(norm_bound)
        if bound < 0:
            raise UsageError("norm bound must be nonnegative")
        n = self.rank
        caps = [
            isqrt_rational_floor(2 * bound / self.quadratic_form[i][i]) for i in range(n)
        ]
        found: List[Tuple[Fraction, Weight]] = []
        coords = [0] * n

        def rec(i: int):
            if i == n:
                lam = weight(coords)
                nn = self.norm2(lam)
                if nn <= 2 * bound and self.in_root_lattice(lam):
                    found.append((nn, lam))
                return
            for c in range(caps[i] + 1):
                coords[i] = c
                # partial-norm prune: contributions are all >= 0 for dominant coords
                rec(i + 1)
            coords[i] = 0

        rec(0)
        found.sort()
        return [lam for _, lam in found]

    def weyl_dimension(self, lam: Weight) -> int:
        """Weyl dimension formula, exact."""
        self._require_rank(lam)
        if not self.is_dominant(lam):
            raise UsageError("weyl_dimension requires a dominant weight")
        num = Fraction(1)
        lam_rho = weight(frac(c) + 1 for c in lam)
        for alpha in self.positive_roots:
            num *= self.inner(lam_rho, alpha) / self.inner(self.rho, alpha)
        if num.denominator != 1:
            raise AssertionError("Weyl dimension came out non-integral")
        return int(num)

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label})"


def build_root_system(type_label: str) -> RootSystem:
    """Construct the root system named by a label like "A2", "d4", "G_2"."""
    series, rank = parse_type_label(type_label)
    return RootSystem(cartan_matrix(series, rank), f"{series}{rank}")


def langlands_dual(rs: RootSystem) -> RootSystem:
    """Root system with the transposed Cartan matrix (B <-> C, rest fixed)."""
    n = rs.rank
    transposed = [[rs.cartan_matrix[j][i] for j in range(n)] for i in range(n)]
    dual_label = f"{_DUAL_SERIES[rs.series]}{n}"
    return RootSystem(transposed, dual_label)


def cartan_isomorphic(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """Equality of Cartan matrices up to a simultaneous node permutation."""
    n = len(a)
    if len(b) != n:
        return False

    from itertools import permutations

    rows_a = sorted(tuple(sorted(row)) for row in a)
    rows_b = sorted(tuple(sorted(row)) for row in b)
    if rows_a != rows_b:
        return False
    for perm in permutations(range(n)):
        if all(a[i][j] == b[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            return True
    return False
