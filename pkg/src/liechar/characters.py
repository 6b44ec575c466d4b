"""Character constructors: finite irreducibles, affine Weyl modules,
principal W-algebra modules, the affine denominator, and the level-one
lattice character of simply-laced types.

Finite characters are computed by Freudenthal's multiplicity recursion
(division-free); the Weyl dimension formula and the alternating-orbit-sum
form of the Weyl character formula serve as independent cross-checks in
the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .linalg import frac
from .qseries import (
    GradedCharacter,
    GroupRingContext,
    GroupRingElt,
    LaurentZ,
    RayContext,
    TrivialContext,
    pochhammer_finite,
    pochhammer_inverse,
    series_one,
    series_zero,
)
from .rootsys import RootSystem, UsageError, Weight, weight


@dataclass(frozen=True)
class LevelValue:
    """Exact rational level kappa attached to a root system."""

    value: Fraction
    root_system: RootSystem

    def __post_init__(self):
        object.__setattr__(self, "value", frac(self.value))

    @property
    def shifted(self) -> Fraction:
        """kappa + h_vee; must not vanish for noncritical constructions."""
        return self.value + self.root_system.dual_coxeter

    def require_noncritical(self) -> None:
        if self.shifted == 0:
            raise UsageError("critical level kappa = -h_vee")


def level(rs: RootSystem, value) -> LevelValue:
    return LevelValue(frac(value), rs)


@dataclass(frozen=True)
class FiniteCharacter:
    highest_weight: Weight
    multiplicities: GroupRingElt  # full weight-system character

    def dimension(self) -> int:
        return int(self.multiplicities.dimension())


def _is_weight_of(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    """mu is a weight of L_lam iff its dominant conjugate is <= lam in Q+."""
    dom = rs.dominant_representative(mu)
    diff = tuple(frac(a) - frac(b) for a, b in zip(lam, dom))
    if not rs.in_root_lattice(diff):
        return False
    coords = _root_basis_coords(rs, diff)
    return all(c >= 0 for c in coords)


def _root_basis_coords(rs: RootSystem, v: Weight) -> List[Fraction]:
    return [
        sum(rs._inv_cartan_t[i][j] * frac(v[j]) for j in range(rs.rank))
        for i in range(rs.rank)
    ]


def _dominant_weights_below(rs: RootSystem, lam: Weight) -> List[Tuple[int, Weight]]:
    """Dominant mu with lam - mu in Q+, tagged with the height of lam - mu."""
    found: Dict[Weight, int] = {weight(lam): 0}
    frontier = [weight(lam)]
    while frontier:
        nxt = []
        for mu in frontier:
            h = found[mu]
            for alpha in rs.simple_roots:
                nu = weight(a - b for a, b in zip(mu, alpha))
                if nu not in found and _is_weight_of(rs, lam, nu):
                    found[nu] = h + 1
                    nxt.append(nu)
        frontier = nxt
    doms = [(h, mu) for mu, h in found.items() if rs.is_dominant(mu)]
    doms.sort()
    return doms


def finite_char(rs: RootSystem, lam: Weight) -> FiniteCharacter:
    """Irreducible character of highest weight lam by Freudenthal recursion."""
    lam = weight(lam)
    if not rs.is_dominant(lam) or not rs.is_integral(lam):
        raise UsageError("finite_char requires a dominant integral weight")
    rho = rs.rho
    lam_rho = weight(frac(c) + 1 for c in lam)
    c_top = rs.inner(lam_rho, lam_rho)
    doms = _dominant_weights_below(rs, lam)
    mult: Dict[Weight, Fraction] = {}
    for h, mu in doms:
        if h == 0:
            mult[mu] = Fraction(1)
            continue
        total = Fraction(0)
        for alpha in rs.positive_roots:
            k = 1
            while True:
                nu = weight(frac(m) + k * a for m, a in zip(mu, alpha))
                if not _is_weight_of(rs, lam, nu):
                    break
                total += mult[rs.dominant_representative(nu)] * rs.inner(nu, alpha)
                k += 1
        mu_rho = weight(frac(c) + 1 for c in mu)
        denom = c_top - rs.inner(mu_rho, mu_rho)
        m = 2 * total / denom
        if m.denominator != 1 or m <= 0:
            raise AssertionError("Freudenthal produced a non-positive-integer multiplicity")
        mult[mu] = m
    terms: Dict[Weight, int] = {}
    for mu, m in mult.items():
        for nu in rs.weyl_orbit(mu):
            terms[nu] = int(m)
    return FiniteCharacter(lam, GroupRingElt(terms))


def orbit_alternating_sum(rs: RootSystem, mu: Weight) -> GroupRingElt:
    """A_mu = sum_w eps(w) e^{w(mu)} for regular dominant mu."""
    return GroupRingElt({nu: par for nu, par in rs.weyl_orbit_signed(mu)})


def casimir(rs: RootSystem, lam: Weight) -> Fraction:
    """Casimir eigenvalue (lam, lam + 2 rho)."""
    lam = weight(lam)
    two_rho = weight(2 for _ in range(rs.rank))
    return rs.inner(lam, weight(frac(a) + b for a, b in zip(lam, two_rho)))


def conformal_top_weight(rs: RootSystem, lam: Weight, kappa: LevelValue) -> Fraction:
    """Top conformal weight (lam, lam+2rho) / (2(kappa + h_vee))."""
    kappa.require_noncritical()
    return casimir(rs, lam) / (2 * kappa.shifted)


# ---------------------------------------------------------------------------
# graded characters


def make_context(rs: RootSystem, mode: str = "group_ring", xi: Optional[Weight] = None):
    if mode == "group_ring":
        return GroupRingContext(rs)
    if mode == "trivial":
        return TrivialContext(rs)
    if mode == "ray":
        return RayContext(rs, weight(xi) if xi is not None else rs.rho_check)
    raise UsageError(f"unknown coefficient mode {mode!r}")


def denominator_series(ctx, order) -> GradedCharacter:
    """D = (q;q)^rank prod_{alpha>0} (e^alpha q, e^-alpha q; q), truncated."""
    rs = ctx.rs
    order = frac(order)
    if order < 0:
        raise UsageError("order must be nonnegative")
    result = series_one(ctx, order)
    zero = (0,) * rs.rank
    for _ in range(rs.rank):
        result = result.mul(pochhammer_finite(ctx, zero, 1, order))
    for alpha in rs.positive_roots:
        neg = weight(-c for c in alpha)
        result = result.mul(pochhammer_finite(ctx, alpha, 1, order))
        result = result.mul(pochhammer_finite(ctx, neg, 1, order))
    return result


def denominator_inverse(ctx, order) -> GradedCharacter:
    """1/D: the character of the vacuum Weyl module (any noncritical level)."""
    rs = ctx.rs
    order = frac(order)
    if order < 0:
        raise UsageError("order must be nonnegative")
    result = series_one(ctx, order)
    zero = (0,) * rs.rank
    for _ in range(rs.rank):
        result = result.mul(pochhammer_inverse(ctx, zero, 1, order))
    for alpha in rs.positive_roots:
        neg = weight(-c for c in alpha)
        result = result.mul(pochhammer_inverse(ctx, alpha, 1, order))
        result = result.mul(pochhammer_inverse(ctx, neg, 1, order))
    return result


def coeff_in_context(ctx, gre: GroupRingElt):
    """Map a group-ring coefficient into the target coefficient ring."""
    if isinstance(ctx, GroupRingContext):
        return gre
    if isinstance(ctx, TrivialContext):
        return sum(gre.terms.values())
    lz: Dict[Fraction, object] = {}
    for w, v in gre.terms.items():
        ze = ctx.rs.inner(w, ctx.xi)
        nv = lz.get(ze, 0) + v
        if nv == 0:
            lz.pop(ze, None)
        else:
            lz[ze] = nv
    return LaurentZ(lz)


def weyl_module_char(
    ctx, lam: Weight, kappa: LevelValue, order, inv_d: Optional[GradedCharacter] = None
) -> GradedCharacter:
    """Character of the level-kappa Weyl module with top space L_lam.

    q^{h_kappa(lam)} ch[L_lam] / D, truncated at the requested order.
    A precomputed 1/D (built to at least order - h) can be passed in when
    assembling many of these.
    """
    rs = ctx.rs
    kappa.require_noncritical()
    order = frac(order)
    h = conformal_top_weight(rs, lam, kappa)
    top = coeff_in_context(ctx, finite_char(rs, lam).multiplicities)
    need = order - h
    if need < 0:
        return series_zero(ctx, order)
    if inv_d is None or inv_d.order < need:
        inv_d = denominator_inverse(ctx, need)
    shifted = GradedCharacter(ctx, need, {Fraction(0): top}).shift(h)
    return shifted.mul(inv_d.truncate(need))


def walgebra_module_char(ctx, lam_star: Weight, kappa_star: LevelValue, order) -> GradedCharacter:
    """Character of the principal W-algebra module reduced from a Weyl module.

    q^{(l*,l*+2rho)/(2(k*+h_vee)) + (rho,rho)} (q;q)^{-rank}
        sum_w eps(w) q^{-(w(l*+rho), rho)}.

    Coefficients are weight-free (integers times e^0).  The alternating
    sum's exponents are minimized exactly at w = e, so the series has
    lower bound h* - (lam*, rho); that can be negative for extreme
    levels, which the series representation tolerates.
    """
    rs = ctx.rs
    kappa_star.require_noncritical()
    order = frac(order)
    lam_star = weight(lam_star)
    if not rs.is_dominant(lam_star) or not rs.is_integral(lam_star):
        raise UsageError("walgebra_module_char requires a dominant integral weight")
    h = conformal_top_weight(rs, lam_star, kappa_star)
    rho = rs.rho
    rho_sq = rs.inner(rho, rho)
    lam_rho = weight(frac(c) + 1 for c in lam_star)
    base = h + rho_sq
    alt: Dict[Fraction, object] = {}
    for nu, par in rs.weyl_orbit_signed(lam_rho):
        e = base - rs.inner(nu, rho)
        if e <= order:
            alt[e] = alt.get(e, 0) + par
    alt = {e: c for e, c in alt.items() if c != 0}
    lead = base - rs.inner(lam_rho, rho)
    if lead in alt and alt[lead] != 1:
        raise AssertionError("leading coefficient of the W-module numerator must be 1")
    if lead > order:
        return series_zero(ctx, order)
    numer = GradedCharacter(ctx, order, {e: ctx.scale(ctx.one(), c) for e, c in alt.items()})
    need = order - lead
    euler = series_one(ctx, need)
    zero = (0,) * rs.rank
    for _ in range(rs.rank):
        euler = euler.mul(pochhammer_inverse(ctx, zero, 1, need))
    return numer.mul(euler)


def lattice_theta(ctx, order) -> GradedCharacter:
    """Theta_Q = sum_{lam in Q} q^{(lam,lam)/2} e^lam, truncated."""
    rs = ctx.rs
    order = frac(order)
    terms: Dict[Fraction, GroupRingElt] = {}
    for lam in rs.dominant_weights_in_root_lattice(order):
        e = rs.norm2(lam) / 2
        gre = terms.setdefault(e, GroupRingElt())
        for nu in rs.weyl_orbit(lam):
            gre.terms[nu] = gre.terms.get(nu, 0) + 1
    out: Dict[Fraction, object] = {}
    for e, gre in terms.items():
        out[e] = coeff_in_context(ctx, gre)
    return GradedCharacter(ctx, order, out)


def level_one_char(ctx, order) -> GradedCharacter:
    """Character of the level-one lattice vertex algebra (ADE only):
    Theta_Q / (q;q)^rank."""
    rs = ctx.rs
    if rs.lacity != 1:
        raise UsageError("level-one lattice character requires a simply-laced type")
    order = frac(order)
    if order < 0:
        raise UsageError("order must be nonnegative")
    result = lattice_theta(ctx, order)
    zero = (0,) * rs.rank
    for _ in range(rs.rank):
        result = result.mul(pochhammer_inverse(ctx, zero, 1, order))
    return result


# ---------------------------------------------------------------------------
# tensor-square decompositions


def _strip_highest_weights(rs: RootSystem, char: GroupRingElt) -> Dict[Weight, int]:
    """Decompose a genuine character into irreducibles by repeated stripping."""
    remaining = GroupRingElt(dict(char.terms))
    out: Dict[Weight, int] = {}
    rho = rs.rho
    while not remaining.is_zero():
        best = None
        best_h = None
        for w in remaining.terms:
            h = rs.inner(w, rho)
            if best is None or h > best_h:
                best, best_h = w, h
        c = frac(remaining.terms[best])
        if not rs.is_dominant(best) or c.denominator != 1 or c <= 0:
            raise UsageError("input is not a nonnegative integral character")
        c = int(c)
        out[best] = out.get(best, 0) + c
        remaining = remaining - finite_char(rs, best).multiplicities.scale(c)
    return out


def alt2_decompose(rs: RootSystem, lam: Weight) -> Dict[Weight, int]:
    """Highest weights (with multiplicity) of wedge^2 L_lam."""
    ch = finite_char(rs, lam).multiplicities
    sq = ch * ch
    frob = ch.frobenius(2)
    half = (sq - frob).scale(Fraction(1, 2))
    return _strip_highest_weights(rs, half)


def sym2_decompose(rs: RootSystem, lam: Weight) -> Dict[Weight, int]:
    """Highest weights (with multiplicity) of Sym^2 L_lam."""
    ch = finite_char(rs, lam).multiplicities
    sq = ch * ch
    frob = ch.frobenius(2)
    half = (sq + frob).scale(Fraction(1, 2))
    return _strip_highest_weights(rs, half)
