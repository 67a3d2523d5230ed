"""The universal formal group law at a truncation, and its derived series.

The construction goes through the generic logarithm l(v) = v + m1 v^2 +
m2 v^3 + ... over Q[m1, m2, ...]: the formal sum is F(x, y) =
exp(l(x) + l(y)) where exp is the compositional inverse of l.  All
coefficients of F, of the formal inverse i(x) and of the n-series [n]u are
then integer polynomials in the m's; this is asserted rather than assumed,
so a denominator surviving anywhere signals a kernel bug.

The display basis x1..x4 (x1 = 2 m1, x2 = 3 m2, x3 = 2 m3 - 4 m1^3,
x4 = 5 m4) is supported exactly up to weight 4; coefficients of higher
weight are reported in the m-basis only.
"""

from __future__ import annotations

from fractions import Fraction

from .symcore import (GenContext, Generator, ScalarPoly, SeriesVar,
                      TruncSeries)


def m_context(max_weight: int) -> GenContext:
    return GenContext(Generator(f"m{i}", i) for i in range(1, max_weight + 1))


def x_context() -> GenContext:
    return GenContext(Generator(f"x{i}", i) for i in range(1, 5))


V = SeriesVar("v", 1)
U = SeriesVar("u", 1)
X = SeriesVar("x", 1)
Y = SeriesVar("y", 1)


def universal_log(N: int) -> TruncSeries:
    """l(v) = v + m1 v^2 + ... + m_{N-1} v^N, truncated at degree N."""
    if N < 1:
        raise ValueError("truncation must be at least 1")
    ctx = m_context(max(N - 1, 0)) if N > 1 else GenContext(())
    terms = {(1,): ctx.one()}
    for i in range(1, N):
        terms[(i + 1,)] = ctx.gen(f"m{i}")
    return TruncSeries((V,), N, ctx, terms)


def additive_log(N: int) -> TruncSeries:
    """The logarithm of the additive law: l(v) = v (all m_i = 0)."""
    ctx = GenContext(())
    return TruncSeries((V,), N, ctx, {(1,): ctx.one()})


class FglTable:
    """A formal group law presented by its logarithm, with derived series.

    Holds the formal sum F(x, y), the exponential, the formal inverse, and a
    cache of n-series.  Instances are immutable apart from the n-series
    cache, which only ever gains completed entries.
    """

    def __init__(self, log: TruncSeries):
        self.trunc = log.trunc
        self.sctx = log.sctx
        self.log = log
        self.exp = log.reversion()
        lx = log.rename_vars({"v": "x"}).embed((X, Y))
        ly = log.rename_vars({"v": "y"}).embed((X, Y))
        self.F = self.exp.substitute({"v": lx + ly})
        # i(x) = exp(-l(x)), the unique series with x +_F i(x) = 0
        self.inverse = self.exp.substitute(
            {"v": -log.rename_vars({"v": "x"})})
        self._nseries: dict = {}

    def assert_integral(self):
        """Every m-basis coefficient of F and i must be an integer polynomial."""
        for label, s in (("formal sum", self.F), ("formal inverse", self.inverse)):
            for e, c in s.terms.items():
                if not c.is_integral():
                    raise ArithmeticError(
                        f"non-integral coefficient {c} at {e} in {label}")

    def formal_sum(self, a: TruncSeries, b: TruncSeries) -> TruncSeries:
        """a +_F b for series over a common variable context."""
        return self.F.substitute({"x": a, "y": b})

    def formal_inverse_of(self, a: TruncSeries) -> TruncSeries:
        return self.inverse.substitute({"x": a})

    def n_series(self, n: int, var: str = "u") -> TruncSeries:
        """[n]u with [0]u = 0 and [n]u = u +_F [n-1]u."""
        key = (n, var)
        if key in self._nseries:
            return self._nseries[key]
        uvar = SeriesVar(var, 1)
        if n == 0:
            out = TruncSeries.zero((uvar,), self.trunc, self.sctx)
        elif n < 0:
            out = self.formal_inverse_of(self.n_series(-n, var))
        elif n == 1:
            out = TruncSeries.var((uvar,), self.trunc, self.sctx, var)
        else:
            u = TruncSeries.var((uvar,), self.trunc, self.sctx, var)
            out = self.formal_sum(u, self.n_series(n - 1, var))
        self._nseries[key] = out
        return out

    def truncate(self, N: int) -> "FglTable":
        if N == self.trunc:
            return self
        return FglTable(self.log.truncate(N))


_universal_cache: dict = {}


def universal_fgl(N: int) -> FglTable:
    """The universal formal group law to truncation N (cached, sliced)."""
    best = max((k for k in _universal_cache if k >= N), default=None)
    if best is None:
        table = FglTable(universal_log(N))
        table.assert_integral()
        _universal_cache[N] = table
        return table
    table = _universal_cache[best]
    if best == N:
        return table
    return FglTable(universal_log(N))


def additive_fgl(N: int) -> FglTable:
    return FglTable(additive_log(N))


# ---------------------------------------------------------------------------
# The weight <= 4 display basis.

def _x_in_m() -> dict:
    ctx = m_context(4)
    m1, m2, m3, m4 = (ctx.gen(f"m{i}") for i in range(1, 5))
    return {"x1": m1 * 2, "x2": m2 * 3, "x3": m3 * 2 - m1 ** 3 * 4, "x4": m4 * 5}


def _m_in_x() -> dict:
    ctx = x_context()
    x1, x2, x3, x4 = (ctx.gen(f"x{i}") for i in range(1, 5))
    return {"m1": x1.scale(Fraction(1, 2)),
            "m2": x2.scale(Fraction(1, 3)),
            "m3": x3.scale(Fraction(1, 2)) + (x1 ** 3).scale(Fraction(1, 4)),
            "m4": x4.scale(Fraction(1, 5))}


def basis_change(p: ScalarPoly, direction: str) -> ScalarPoly:
    """Triangular substitution between the m-basis and the x display basis.

    Only weight <= 4 generators exist in the dictionary; anything heavier is
    rejected.  The m -> x image of a display coefficient must come out
    integral, which callers may assert via ``is_integral``.
    """
    if direction == "m->x":
        images, target = _m_in_x(), x_context()
        known = set(images)
    elif direction == "x->m":
        images, target = _x_in_m(), m_context(4)
        known = set(images)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    for g in p.ctx.gens:
        used = any(e[p.ctx.index[g.name]] for e in p.terms)
        if used and g.name not in known:
            raise ValueError(
                f"generator {g.name} (weight {g.weight}) is outside the "
                f"weight <= 4 display dictionary")
    squeezed = p.convert(GenContext(g for g in p.ctx.gens if g.name in known)) \
        if any(g.name not in known for g in p.ctx.gens) else p
    return squeezed.substitute(images, target)


def series_to_x(s: TruncSeries, require_integral: bool = True) -> TruncSeries:
    """Rewrite every m-basis coefficient of a series in the x display basis."""
    def conv(c):
        out = basis_change(c, "m->x")
        if require_integral and not out.is_integral():
            raise ArithmeticError(f"display coefficient not integral: {out}")
        return out
    return s.map_coeffs(conv, sctx=x_context())


def series_to_m(s: TruncSeries) -> TruncSeries:
    return s.map_coeffs(lambda c: basis_change(c, "x->m"), sctx=m_context(4))
