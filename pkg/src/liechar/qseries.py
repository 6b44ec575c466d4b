"""Truncated formal q-series with group-ring coefficients, exactly.

A GradedCharacter is a finite map {rational exponent -> coefficient}
together with a truncation order N: the stored data determines the
series exactly for every exponent <= N.  Coefficients live in the
integral group ring of the weight lattice (GroupRingElt), or - after
specialization - in Z or in Laurent polynomials in a single variable z.

Exponents are exact Fractions; conformal weights at rational level are
rational, so nothing here ever touches floating point.  Exponents may be
negative (alternating Weyl numerators dip below zero before their
prefactor is absorbed); truncation bookkeeping stays exact either way.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .linalg import frac
from .rootsys import RootSystem, UsageError, Weight, weight


def _norm_scalar(x):
    x = frac(x)
    return int(x) if x.denominator == 1 else x


def rat_str(x) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coord_json(c):
    return c if isinstance(c, int) else rat_str(c)


class GroupRingElt:
    """Element of the group ring of the weight lattice: sum c_mu e^mu.

    Stored sparsely as {weight tuple -> coefficient}; zero coefficients
    are never kept.  Coefficients are integers for honest characters,
    but exact rationals are tolerated in intermediate arithmetic.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Weight, object]] = None):
        self.terms: Dict[Weight, object] = {}
        if terms:
            for w, c in terms.items():
                c = _norm_scalar(c)
                if c != 0:
                    self.terms[weight(w)] = c

    @classmethod
    def monomial(cls, w: Weight, coeff=1) -> "GroupRingElt":
        return cls({weight(w): coeff})

    @classmethod
    def one(cls, rank: int) -> "GroupRingElt":
        return cls({(0,) * rank: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: Weight):
        return self.terms.get(weight(w), 0)

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        out = dict(self.terms)
        for w, c in other.terms.items():
            nc = out.get(w, 0) + c
            if nc == 0:
                out.pop(w, None)
            else:
                out[w] = nc
        res = GroupRingElt()
        res.terms = out
        return res

    def __neg__(self) -> "GroupRingElt":
        res = GroupRingElt()
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        return self + (-other)

    def __mul__(self, other: "GroupRingElt") -> "GroupRingElt":
        out: Dict[Weight, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                nc = out.get(w, 0) + c1 * c2
                if nc == 0:
                    out.pop(w, None)
                else:
                    out[w] = nc
        res = GroupRingElt()
        res.terms = {weight(w): c for w, c in out.items()}
        return res

    def scale(self, c) -> "GroupRingElt":
        c = _norm_scalar(c)
        res = GroupRingElt()
        if c != 0:
            res.terms = {w: _norm_scalar(v * c) for w, v in self.terms.items()}
        return res

    def frobenius(self, k: int) -> "GroupRingElt":
        """Substitute e^mu -> e^{k mu}."""
        return GroupRingElt({tuple(k * c for c in w): v for w, v in self.terms.items()})

    def dimension(self):
        """Sum of coefficients (the dimension, for a character)."""
        return sum(self.terms.values())

    def items_sorted(self) -> List[Tuple[Weight, object]]:
        return sorted(self.terms.items(), key=lambda t: tuple(frac(c) for c in t[0]))

    def to_json(self) -> list:
        return [
            {"weight": [_coord_json(c) for c in w], "coeff": _coord_json(v)}
            for w, v in self.items_sorted()
        ]

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = [f"{c}*e{w}" for w, c in self.items_sorted()]
        return " + ".join(bits)


class LaurentZ:
    """Integer-coefficient Laurent polynomial in one variable z^(rational)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Fraction, object]] = None):
        self.terms: Dict[Fraction, object] = {}
        if terms:
            for e, c in terms.items():
                c = _norm_scalar(c)
                if c != 0:
                    self.terms[frac(e)] = c

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentZ") -> "LaurentZ":
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, 0) + c
            if nc == 0:
                out.pop(e, None)
            else:
                out[e] = nc
        res = LaurentZ()
        res.terms = out
        return res

    def __neg__(self) -> "LaurentZ":
        res = LaurentZ()
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __mul__(self, other: "LaurentZ") -> "LaurentZ":
        out: Dict[Fraction, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                nc = out.get(e, 0) + c1 * c2
                if nc == 0:
                    out.pop(e, None)
                else:
                    out[e] = nc
        res = LaurentZ()
        res.terms = out
        return res

    def scale(self, c) -> "LaurentZ":
        c = _norm_scalar(c)
        res = LaurentZ()
        if c != 0:
            res.terms = {e: _norm_scalar(v * c) for e, v in self.terms.items()}
        return res

    def to_json(self) -> list:
        return [
            {"zexp": rat_str(e), "coeff": _coord_json(c)}
            for e, c in sorted(self.terms.items())
        ]

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentZ) and self.terms == other.terms

    def __repr__(self) -> str:
        return " + ".join(f"{c}*z^{e}" for e, c in sorted(self.terms.items())) or "0"


# ---------------------------------------------------------------------------
# coefficient contexts


class GroupRingContext:
    """Coefficients are GroupRingElt over a fixed root system's weight lattice."""

    kind = "group_ring"

    def __init__(self, rs: RootSystem):
        self.rs = rs

    def one(self):
        return GroupRingElt.one(self.rs.rank)

    def czero(self):
        return GroupRingElt()

    def is_zero(self, c) -> bool:
        return c.is_zero()

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a.scale(c)

    def coeff_json(self, c):
        return c.to_json()

    def matches(self, other) -> bool:
        return isinstance(other, GroupRingContext) and self.rs.same_as(other.rs)

    def describe(self) -> dict:
        return {"coefficients": "group_ring", "type": self.rs.type_label}


class TrivialContext:
    """Coefficients are plain integers: e^mu -> 1."""

    kind = "trivial"

    def __init__(self, rs: RootSystem):
        self.rs = rs

    def one(self):
        return 1

    def czero(self):
        return 0

    def is_zero(self, c) -> bool:
        return c == 0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return _norm_scalar(a * c)

    def coeff_json(self, c):
        return _coord_json(c)

    def matches(self, other) -> bool:
        return isinstance(other, TrivialContext) and self.rs.same_as(other.rs)

    def describe(self) -> dict:
        return {"coefficients": "trivial", "type": self.rs.type_label}


class RayContext:
    """Coefficients are Laurent polynomials: e^mu -> z^{(mu, xi)} for a coweight xi."""

    kind = "ray"

    def __init__(self, rs: RootSystem, xi: Weight):
        self.rs = rs
        self.xi = weight(xi)

    def one(self):
        return LaurentZ({Fraction(0): 1})

    def czero(self):
        return LaurentZ()

    def is_zero(self, c) -> bool:
        return c.is_zero()

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a.scale(c)

    def coeff_json(self, c):
        return c.to_json()

    def matches(self, other) -> bool:
        return (
            isinstance(other, RayContext)
            and self.rs.same_as(other.rs)
            and self.xi == other.xi
        )

    def describe(self) -> dict:
        return {
            "coefficients": "ray",
            "type": self.rs.type_label,
            "xi": [_coord_json(c) for c in self.xi],
        }


# ---------------------------------------------------------------------------
# the truncated series ring


class GradedCharacter:
    """Truncated series sum_d c_d q^d, exact for all exponents <= order."""

    __slots__ = ("context", "order", "terms")

    def __init__(self, context, order, terms: Optional[Dict[Fraction, object]] = None):
        self.context = context
        self.order: Fraction = frac(order)
        self.terms: Dict[Fraction, object] = {}
        if terms:
            for e, c in terms.items():
                e = frac(e)
                if e <= self.order and not context.is_zero(c):
                    self.terms[e] = c

    # -- inspection ----------------------------------------------------------

    def coeff(self, e):
        e = frac(e)
        if e > self.order:
            raise UsageError(f"exponent {e} beyond truncation order {self.order}")
        return self.terms.get(e, self.context.czero())

    def lower_bound(self) -> Fraction:
        """Largest L such that the series is known to vanish below L."""
        return min(self.terms) if self.terms else self.order

    def exponent_denominator(self) -> int:
        den = 1
        for e in self.terms:
            den = den * e.denominator // math.gcd(den, e.denominator)
        return den

    def exponents(self) -> List[Fraction]:
        return sorted(self.terms)

    # -- ring operations -------------------------------------------------------

    def _require_context(self, other: "GradedCharacter") -> None:
        if not self.context.matches(other.context):
            raise UsageError("mismatched series contexts")

    def add(self, other: "GradedCharacter") -> "GradedCharacter":
        self._require_context(other)
        order = min(self.order, other.order)
        out = dict(self.terms)
        ctx = self.context
        for e, c in other.terms.items():
            nc = ctx.add(out.get(e, ctx.czero()), c) if e in out else c
            if ctx.is_zero(nc):
                out.pop(e, None)
            else:
                out[e] = nc
        return GradedCharacter(ctx, order, out)

    def neg(self) -> "GradedCharacter":
        ctx = self.context
        return GradedCharacter(
            ctx, self.order, {e: ctx.scale(c, -1) for e, c in self.terms.items()}
        )

    def sub(self, other: "GradedCharacter") -> "GradedCharacter":
        return self.add(other.neg())

    def mul(self, other: "GradedCharacter") -> "GradedCharacter":
        # completeness: coefficient at d needs f below d - N_g and g below
        # d - N_f to be known zero, so the product is exact up to
        # min(N_f + L_g, N_g + L_f); this reduces to min(N_f, N_g) for the
        # usual series supported in degrees >= 0.
        self._require_context(other)
        ctx = self.context
        lf, lg = min(self.lower_bound(), self.order), min(other.lower_bound(), other.order)
        order = min(self.order + lg, other.order + lf)
        out: Dict[Fraction, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e > order:
                    continue
                p = ctx.mul(c1, c2)
                if e in out:
                    nc = ctx.add(out[e], p)
                    if ctx.is_zero(nc):
                        del out[e]
                    else:
                        out[e] = nc
                elif not ctx.is_zero(p):
                    out[e] = p
        return GradedCharacter(ctx, order, out)

    def scale(self, c) -> "GradedCharacter":
        """Scale by a rational or by a coefficient-ring element."""
        ctx = self.context
        if isinstance(c, (GroupRingElt, LaurentZ)):
            out = {}
            for e, v in self.terms.items():
                nv = ctx.mul(v, c)
                if not ctx.is_zero(nv):
                    out[e] = nv
            return GradedCharacter(ctx, self.order, out)
        return GradedCharacter(
            ctx, self.order, {e: ctx.scale(v, c) for e, v in self.terms.items()}
        )

    def shift(self, e0) -> "GradedCharacter":
        """Multiply by q^{e0} (exact; order shifts along)."""
        e0 = frac(e0)
        return GradedCharacter(
            self.context, self.order + e0, {e + e0: c for e, c in self.terms.items()}
        )

    def truncate(self, order) -> "GradedCharacter":
        order = frac(order)
        if order > self.order:
            raise UsageError("cannot extend a truncated series")
        return GradedCharacter(
            self.context, order, {e: c for e, c in self.terms.items() if e <= order}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedCharacter)
            and self.context.matches(other.context)
            and self.order == other.order
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        bits = [f"({c!r}) q^{e}" for e, c in sorted(self.terms.items())[:6]]
        more = " + ..." if len(self.terms) > 6 else ""
        return f"<series O(q^{self.order}): " + " + ".join(bits) + more + ">"

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "context": self.context.describe(),
            "truncation_order": rat_str(self.order),
            "series": [
                {"exponent": rat_str(e), "terms": self.context.coeff_json(c)}
                for e, c in sorted(self.terms.items())
            ],
        }

    def canonical_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# constructors and specialization


def series_one(ctx, order) -> GradedCharacter:
    order = frac(order)
    if order < 0:
        raise UsageError("order must be nonnegative")
    return GradedCharacter(ctx, order, {Fraction(0): ctx.one()})


def series_zero(ctx, order) -> GradedCharacter:
    return GradedCharacter(ctx, order, {})


def from_group_ring(ctx: GroupRingContext, gre: GroupRingElt, order, at=0) -> GradedCharacter:
    """Embed a group-ring element as the coefficient of q^{at}."""
    return GradedCharacter(ctx, order, {frac(at): gre})


def pochhammer_inverse(ctx, mu: Weight, s, order) -> GradedCharacter:
    """Truncated prod_{p>=0} (1 - e^mu q^{s+p})^{-1}.

    Requires s > 0 so every factor is 1 + (higher order); mu = 0 with
    s = 1 gives the partition generating function.
    """
    s = frac(s)
    order = frac(order)
    if s <= 0:
        raise UsageError("pochhammer_inverse requires shift s > 0")
    if order < 0:
        raise UsageError("order must be nonnegative")
    if isinstance(ctx, GroupRingContext):
        unit = GroupRingElt.monomial(mu)
    elif isinstance(ctx, TrivialContext):
        unit = 1
    else:
        unit = LaurentZ({ctx.rs.inner(weight(mu), ctx.xi): 1})
    result = series_one(ctx, order)
    step = s
    while step <= order:
        # geometric series for (1 - e^mu q^step)^{-1}
        geom: Dict[Fraction, object] = {}
        e = Fraction(0)
        c = ctx.one()
        while e <= order:
            geom[e] = c
            e += step
            c = ctx.mul(c, unit)
        result = result.mul(GradedCharacter(ctx, order, geom))
        step += 1
    return result


def pochhammer_finite(ctx, mu: Weight, s, order) -> GradedCharacter:
    """The finite product of (1 - e^mu q^{s+p}) factors with s+p <= order."""
    s = frac(s)
    order = frac(order)
    if s <= 0:
        raise UsageError("pochhammer requires shift s > 0")
    if isinstance(ctx, GroupRingContext):
        unit = GroupRingElt.monomial(mu)
    elif isinstance(ctx, TrivialContext):
        unit = 1
    else:
        unit = LaurentZ({ctx.rs.inner(weight(mu), ctx.xi): 1})
    result = series_one(ctx, order)
    step = s
    while step <= order:
        factor = GradedCharacter(ctx, order, {Fraction(0): ctx.one(), step: ctx.scale(unit, -1)})
        result = result.mul(factor)
        step += 1
    return result


def specialize(f: GradedCharacter, mode: str, xi: Optional[Weight] = None) -> GradedCharacter:
    """Ring homomorphism to a single-variable series.

    mode "trivial" sends e^mu -> 1; mode "ray" sends e^mu -> z^{(mu, xi)}.
    Specializing an already-specialized series is the identity (trivial on
    trivial) or an error for incompatible requests.
    """
    ctx = f.context
    if mode not in ("trivial", "ray"):
        raise UsageError(f"unknown specialization mode {mode!r}")
    if isinstance(ctx, TrivialContext):
        if mode == "trivial":
            return f
        raise UsageError("cannot ray-specialize an already trivial series")
    if isinstance(ctx, RayContext):
        raise UsageError("cannot re-specialize a ray series")
    rs = ctx.rs
    if mode == "trivial":
        new_ctx = TrivialContext(rs)
        out: Dict[Fraction, object] = {}
        for e, c in f.terms.items():
            val = sum(c.terms.values())
            if val != 0:
                out[e] = _norm_scalar(val)
        return GradedCharacter(new_ctx, f.order, out)
    if xi is None:
        xi = rs.rho_check
    new_ctx = RayContext(rs, xi)
    out = {}
    for e, c in f.terms.items():
        lz: Dict[Fraction, object] = {}
        for w, v in c.terms.items():
            ze = rs.inner(w, new_ctx.xi)
            nv = lz.get(ze, 0) + v
            if nv == 0:
                lz.pop(ze, None)
            else:
                lz[ze] = nv
        val = LaurentZ(lz)
        if not val.is_zero():
            out[e] = val
    return GradedCharacter(new_ctx, f.order, out)


def series_equal(f: GradedCharacter, g: GradedCharacter):
    """Compare two series up to the smaller truncation order.

    Returns None when equal, else the smallest mismatching exponent
    together with both coefficients' canonical JSON.
    """
    f._require_context(g)
    bound = min(f.order, g.order)
    ctx = f.context
    exps = sorted(
        {e for e in f.terms if e <= bound} | {e for e in g.terms if e <= bound}
    )
    for e in exps:
        cf = f.terms.get(e, ctx.czero())
        cg = g.terms.get(e, ctx.czero())
        if not ctx.is_zero(ctx.add(cf, ctx.scale(cg, -1))):
            return e, ctx.coeff_json(cf), ctx.coeff_json(cg)
    return None
