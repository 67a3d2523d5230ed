"""Integral polynomial generators for the cobordism coefficient ring.

The coefficients a_ij of the universal formal sum generate, over the
integers, a graded subring of Q[m1, m2, ...] that is polynomial on one
generator per weight.  Quotient-ring arithmetic (reduction mod 2 or mod p)
depends on that integral structure, not on the ambient m-basis: 2*m1 is
"even" in Q[m], but x1 = 2*m1 is a polynomial generator and not divisible
by 2 in the cobordism ring.  This module constructs an explicit generator
per weight and converts polynomials between the m-basis and the generator
basis, with exactness and integrality checked.

Weights 1..4 use the display generators x1..x4; above that we take
g_w = -sum(lam_i * a_{i, w+1-i}) where the integers lam_i realise
d_w = gcd of the binomials C(w+1, i).  Modulo decomposables a_{i, w+1-i}
is -C(w+1, i) m_w, so g_w has leading coefficient d_w m_w, which is what
makes the resulting family a polynomial generating set: d_w is the minimal
positive leading coefficient available in weight w (it is p when w+1 is a
power of the prime p, else 1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .symcore import GenContext, Generator, ScalarPoly
from . import fgl


def _partitions(total: int, max_part: int):
    """Exponent tuples e (1-indexed parts) with sum i*e_i == total."""
    if total == 0:
        yield ()
        return
    for largest in range(min(total, max_part), 0, -1):
        for count in range(total // largest, 0, -1):
            for rest in _partitions(total - largest * count, largest - 1):
                exp = [0] * largest
                exp[largest - 1] = count
                for i, e in enumerate(rest):
                    exp[i] += e
                yield tuple(exp)


def _gcd_combination(values):
    """Integers lam with sum(lam_i * values_i) == gcd(values)."""
    lam = [0] * len(values)
    lam[0] = 1
    g = values[0]
    for i in range(1, len(values)):
        if g == 1:
            break
        old, b = g, values[i]
        g = gcd(old, b)
        # extended gcd of (old, b)
        r0, r1, s0, s1 = old, b, 1, 0
        while r1:
            q, (r0, r1) = r0 // r1, (r1, r0 - (r0 // r1) * r1)
            s0, s1 = s1, s0 - q * s1
        t = (g - s0 * old) // b
        lam = [v * s0 for v in lam]
        lam[i] = t
    return lam


class MuBasis:
    """Generator basis of the cobordism ring through a weight bound."""

    def __init__(self, max_weight: int):
        self.max_weight = max_weight
        self.m_ctx = fgl.m_context(max_weight)
        table = fgl.universal_fgl(max_weight + 1)
        self._a = {}  # (i, j) -> ScalarPoly in the m-basis, weight i+j-1
        for (i, j), c in table.F.terms.items():
            if i >= 1 and j >= 1:
                self._a[(i, j)] = c.convert(self.m_ctx)
        names, weights, exps = [], [], {}
        display = fgl._x_in_m()
        for w in range(1, max_weight + 1):
            if w <= 4:
                name = f"x{w}"
                poly = display[name].convert(self.m_ctx)
            else:
                name = f"g{w}"
                poly = self._construct(w)
            lead = poly.terms.get(self._m_monomial(w), 0)
            if lead != self.content(w):
                raise ArithmeticError(
                    f"generator {name} has leading coefficient {lead}, "
                    f"expected {self.content(w)}")
            names.append(name)
            weights.append(w)
            exps[name] = poly
        self.ctx = GenContext(Generator(n, w) for n, w in zip(names, weights))
        self.expansions = exps
        self._tables: dict = {}
        for (i, j) in self._a:
            self.to_mu(self._a[(i, j)])  # integrality self-check

    # -- construction ------------------------------------------------------

    def _m_monomial(self, w: int):
        e = [0] * len(self.m_ctx.gens)
        e[self.m_ctx.index[f"m{w}"]] = 1
        return tuple(e)

    @staticmethod
    def content(w: int) -> int:
        return gcd(*(comb(w + 1, i) for i in range(1, w + 1))) if w > 1 \
            else comb(2, 1)

    def _construct(self, w: int) -> ScalarPoly:
        binoms = [comb(w + 1, i) for i in range(1, w + 1)]
        lam = _gcd_combination(binoms)
        out = self.m_ctx.zero()
        for i, l in enumerate(lam, start=1):
            if l:
                out = out - self._a[(i, w + 1 - i)] * l
        return out

    def coefficient(self, i: int, j: int) -> ScalarPoly:
        """a_ij, the x^i y^j coefficient of the universal formal sum."""
        if i == 0 or j == 0:
            raise ValueError("a_ij is defined for i, j >= 1")
        return self._a[(i, j)]

    # -- conversion ---------------------------------------------------------

    def _weight_table(self, w: int):
        """Per weight: [(gen exponent tuple, expansion, m-monomial key, lead)]
        sorted by number of generator factors."""
        if w in self._tables:
            return self._tables[w]
        rows = []
        for exp in _partitions(w, min(w, self.max_weight)):
            exp = exp + (0,) * (len(self.ctx.gens) - len(exp))
            poly = self.m_ctx.one()
            lead = 1
            for i, e in enumerate(exp):
                if e:
                    poly = poly * self.expansions[self.ctx.gens[i].name] ** e
                    lead *= self.content(i + 1) ** e
            mkey = tuple(exp)  # positional over m1..mW matches gens order
            rows.append((sum(exp), exp, poly, mkey, lead))
        rows.sort(key=lambda r: (r[0], r[1]))
        self._tables[w] = rows
        return rows

    def to_mu(self, p: ScalarPoly, require_integral: bool = True) -> ScalarPoly:
        """Rewrite an m-basis polynomial in the generator basis.

        Exactness is certified (full reduction to zero); a rational
        coefficient in the output means the element is not integral over
        the generator lattice, which is an error when ``require_integral``.
        """
        if p.ctx != self.m_ctx:
            p = p.convert(self.m_ctx)
        out: dict = {}
        for w in sorted({self.m_ctx.monomial_weight(e) for e in p.terms}):
            comp = p.weight_component(w)
            if w == 0:
                for e, c in comp.terms.items():
                    out[(0,) * len(self.ctx.gens)] = c
                continue
            if w > self.max_weight:
                raise ValueError(f"weight {w} exceeds basis bound {self.max_weight}")
            resid = comp
            for _, exp, expansion, mkey, lead in self._weight_table(w):
                c = resid.terms.get(mkey)
                if c is None:
                    continue
                c = Fraction(c) / lead
                if c.denominator == 1:
                    c = int(c)
                resid = resid - expansion.scale(c)
                out[exp] = c
            if not resid.is_zero():
                raise ArithmeticError(
                    f"conversion left residual {resid} at weight {w}")
        poly = ScalarPoly(self.ctx, {e: c for e, c in out.items() if c})
        if require_integral and not poly.is_integral():
            raise ArithmeticError(f"element is not integral: {poly}")
        return poly

    def from_mu(self, p: ScalarPoly) -> ScalarPoly:
        """Expand a generator-basis polynomial back into the m-basis."""
        return p.substitute(self.expansions, self.m_ctx)

    # -- mixed contexts -------------------------------------------------------

    def extended_ctx(self, extra) -> GenContext:
        return self.ctx.extended(extra)

    def poly_to_mu(self, p: ScalarPoly, target: GenContext) -> ScalarPoly:
        """Convert the m-part of a polynomial over m-gens + extra gens.

        ``target`` must contain the generator basis plus the extra
        generators appearing in p.
        """
        groups: dict = {}
        m_pos = [i for i, g in enumerate(p.ctx.gens) if g.name in self.m_ctx.index]
        o_pos = [i for i, g in enumerate(p.ctx.gens) if g.name not in self.m_ctx.index]
        for e, c in p.terms.items():
            me = [0] * len(self.m_ctx.gens)
            for i in m_pos:
                if e[i]:
                    me[self.m_ctx.index[p.ctx.gens[i].name]] = e[i]
            oe = tuple((p.ctx.gens[i].name, e[i]) for i in o_pos if e[i])
            groups.setdefault(oe, {})[tuple(me)] = c
        out = target.zero()
        for oe, terms in groups.items():
            conv = self.to_mu(ScalarPoly(self.m_ctx, terms)).convert(target)
            mono = target.one()
            for name, e in oe:
                mono = mono * target.gen(name) ** e
            out = out + conv * mono
        return out


@lru_cache(maxsize=4)
def mu_basis(max_weight: int) -> MuBasis:
    return MuBasis(max_weight)
