"""Elimination of the odd orientation generators over the sign Euler class.

In the localized ring  MU[ug, ug^-1, b2g, b4g, ...][[ua]] / [2]ua  the odd
symbols b1g, b3g, ... are not free: writing the two-variable formal sum as
ua +_F t, the identity

    sum_j bjg t^j  ==  sum_j bjg (ua +_F t)^j

holds, and examining the t^(j-1) coefficient for odd j yields j * bjg * ua
plus higher corrections.  Since j is odd and [2]ua = 0 makes every even
integer a multiple of ua, these equations are triangular enough to solve:
each odd bjg becomes a power series in ua whose coefficients are integer
polynomials in the even b's and the cobordism generators.

The solver is a fixed-point iteration that is contracting in the ua-adic
metric; convergence is certified afterwards by substituting the solutions
back into every t-power equation and reducing to zero (the plug-back
residual).  Normal forms are not canonical across different derivations -
two correct answers may look different - so equality against a reference
expansion is always decided in the quotient: reduce the difference of the
two sides, multiplied into the ua-adically complete part of the ring, to
zero.  Scalars live in the generator basis of the cobordism ring, where
divisibility by 2 means what it should.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .symcore import (GenContext, Generator, ScalarPoly, SeriesVar,
                      TruncSeries)
from .quotient import SeriesModRing
from .lazard import mu_basis
from . import fgl

UA = SeriesVar("ua", 1)
T_VAR = SeriesVar("t", 1)


def even_b(k: int) -> str:
    return f"b{k}g"


def _lift(s: TruncSeries, trunc: int) -> TruncSeries:
    """Reinterpret at a higher truncation (callers guarantee the missing
    range is either genuinely zero or never used)."""
    if trunc <= s.trunc:
        return s.truncate(trunc)
    return TruncSeries(s.vars, trunc, s.sctx, dict(s.terms))


@dataclass(frozen=True)
class EliminationSolution:
    index: int                 # odd j
    series: TruncSeries        # bjg as a series in ua, even-b coefficients
    t_order: int               # plug-back verified through this t power
    ua_order: int              # ... and this ua-adic depth


class OddGammaRing:
    """The quotient ring at fixed truncation orders (T in t, D in ua)."""

    def __init__(self, T: int, D: int):
        if T < 1 or D < 1:
            raise ValueError("need T >= 1 and D >= 1")
        self.T = T
        self.D = D
        self.J = T + D                     # odd unknowns solved up to here
        self.N = T + D + 1                 # total degree carried in (ua, t)
        self.mb = mu_basis(self.N - 1)
        self.evens = [k for k in range(2, self.N + 1, 2)]
        self.ctx = self.mb.ctx.extended(
            Generator(even_b(k), k - 2) for k in self.evens)
        table = fgl.universal_fgl(self.N)
        self._table = table
        uat = table.F.rename_vars({"x": "ua", "y": "t"}) \
            .map_coeffs(lambda c: self.mb.poly_to_mu(c, self.ctx),
                        sctx=self.ctx)
        self.formal_shift = uat               # ua +_F t in the b-extended ctx
        two = table.n_series(2, "ua").truncate(D) \
            .map_coeffs(lambda c: self.mb.poly_to_mu(c, self.ctx),
                        sctx=self.ctx)
        self.two_series = two                 # [2]ua
        self.ideal_mod = SeriesModRing(two)   # rewrites 2*ua^k, constants stable
        shifted = two.exact_divide(
            TruncSeries.var((UA,), D, self.ctx, "ua")).embed((UA,), D)
        self.local_mod = SeriesModRing(shifted)   # comparison layer: [2]ua / ua
        self._mp: dict = {}
        self._powers()

    # -- equation data -------------------------------------------------------

    def _powers(self):
        """M'_{ik} = (coeff of t^i in (ua +_F t)^k - [i==k] t^k) / ua."""
        pw = self.formal_shift
        acc = pw
        for k in range(1, self.N + 1):
            if k > 1:
                acc = acc * self.formal_shift
            for i in range(0, min(self.J, self.N) + 1):
                sl = acc.slice_var("t", i)      # series in ua
                if i == k:
                    sl = sl - 1
                if sl.is_zero():
                    continue
                if min(e[0] for e in sl.terms) < 1:
                    raise ArithmeticError("equation term not divisible by ua")
                mp = TruncSeries((UA,), min(sl.trunc - 1, self.D), self.ctx, {
                    (e[0] - 1,): c for e, c in sl.terms.items()
                    if e[0] - 1 <= min(sl.trunc - 1, self.D)})
                self._mp[(i, k)] = mp

    def mprime(self, i: int, k: int) -> TruncSeries:
        return self._mp.get((i, k),
                            TruncSeries.zero((UA,), self.D, self.ctx))

    def zero(self) -> TruncSeries:
        return TruncSeries.zero((UA,), self.D, self.ctx)

    def gen_series(self, name: str) -> TruncSeries:
        return TruncSeries.const((UA,), self.D, self.ctx, self.ctx.gen(name))

    # -- spec surface ---------------------------------------------------------

    def quotient_reduce(self, s: TruncSeries) -> TruncSeries:
        """Canonical form modulo ([2]ua): rewrites exact even multiples at
        positive ua-degrees, leaves constants and odd parts alone."""
        return self.ideal_mod.reduce(s)

    def equals_in_quotient(self, a: TruncSeries, b: TruncSeries) -> bool:
        """Equality after inverting ua, i.e. modulo ([2]ua)/ua; this is the
        comparison layer where 2 itself becomes a multiple of ua."""
        return self.local_mod.is_zero_mod((a - b).truncate(self.D))

    def row_bound(self, i: int) -> int:
        """ua-adic depth at which the t^i equation data is complete; by the
        precision analysis this always covers what row i is used for."""
        return min(self.D, self.N - i - 1)

    def row(self, i: int, with_odd: "dict | None" = None) -> TruncSeries:
        """The t^i equation, divided by ua: sum_k bkg * M'_{ik}.

        Even b's enter as generators; odd b's either stay symbolic (when
        ``with_odd`` is None the returned series lives over an extended
        context) or are substituted from ``with_odd``.
        """
        bound = self.row_bound(i)
        if with_odd is None:
            odd_gens = [Generator(f"b{j}g", j - 2)
                        for j in range(1, self.J + 1, 2)]
            big = self.ctx.extended(odd_gens)
            out = TruncSeries.zero((UA,), bound, big)
            for k in range(1, self.N + 1):
                mp = self.mprime(i, k)
                if mp.is_zero():
                    continue
                name = f"b{k}g"
                coeff = big.gen(name)
                out = out + TruncSeries((UA,), bound, big, {
                    e: c.convert(big) * coeff
                    for e, c in mp.terms.items() if e[0] <= bound})
            return out
        out = TruncSeries.zero((UA,), bound, self.ctx)
        for k in self.evens:
            mp = self.mprime(i, k).truncate(min(bound, self.mprime(i, k).trunc))
            if not mp.is_zero():
                out = out + _lift(mp, bound) * self.ctx.gen(even_b(k))
        for j, s in with_odd.items():
            mp = self.mprime(i, j)
            mp = mp.truncate(min(bound, mp.trunc))
            if not mp.is_zero():
                out = out + _lift(mp, bound) * s.truncate(bound)
        return out

    # -- solving ----------------------------------------------------------------

    def _precision(self, j: int) -> int:
        """s_j only influences certified data below this ua power."""
        return self.D + 1 - max(0, j - self.T - 1)

    def solve_odd(self, jmax: int) -> list[EliminationSolution]:
        """Solve every odd index through jmax; certify by plug-back."""
        if jmax < 1 or jmax % 2 == 0:
            raise ValueError("jmax must be a positive odd index")
        if jmax > self.J:
            raise ValueError(
                f"insufficient depth: ring solves odd indices <= {self.J}")
        odd = list(range(1, self.J + 1, 2))
        inv2 = {j: pow(j, -1, 1 << (self.D + 4)) for j in odd}
        s = {j: self.zero() for j in odd}
        for _ in range(2 * self.D + 6):
            converged = True
            for j in odd:
                r = self.local_mod.reduce(self.row(j - 1, s))
                window = self._precision(j) - 1
                if r.truncate(min(window, r.trunc)).is_zero():
                    continue
                converged = False
                s[j] = self.local_mod.reduce(s[j] - _lift(r, self.D).scale(inv2[j]))
            if converged:
                break
        else:
            raise ArithmeticError(
                "odd-generator elimination did not converge; "
                "increase the ua-adic depth")
        # canonical mod-2 representatives: deterministic and stable under
        # deepening the truncation
        s = {j: self.local_mod.reduce(sj, canonical=True) for j, sj in s.items()}
        report = self.plug_back(s)
        if not report.ok:
            raise ArithmeticError("plug-back residual nonzero after solve")
        return [EliminationSolution(j, s[j], self.T, self.D)
                for j in odd if j <= jmax]

    def plug_back(self, solutions: dict) -> "PlugBackReport":
        rows = {}
        ok = True
        for i in range(0, self.T + 1):
            resid = self.local_mod.reduce(self.row(i, solutions))
            rows[i] = resid
            ok = ok and resid.is_zero()
        return PlugBackReport(self.T, self.D, rows, ok)


@dataclass(frozen=True)
class PlugBackReport:
    t_order: int
    ua_order: int
    residuals: dict
    ok: bool


@lru_cache(maxsize=4)
def odd_gamma_ring(T: int, D: int) -> OddGammaRing:
    return OddGammaRing(T, D)


def solve_odd(jmax: int, D: int, T: int | None = None) -> list[EliminationSolution]:
    """Series for the odd generators through jmax, exact mod ua^(D+1).

    T bounds the t-powers through which the defining identity is certified;
    it defaults to enough rows to pin every requested index.
    """
    if T is None:
        T = jmax + 1
    ring = odd_gamma_ring(T, D)
    return ring.solve_odd(jmax)


def elimination_identity(T: int, D: int) -> list[TruncSeries]:
    """The per-t-power equations (divided by ua), odd b's symbolic."""
    ring = odd_gamma_ring(T, D)
    return [ring.row(i) for i in range(0, T + 1)]
