"""Exact arithmetic kernel: weighted sparse polynomials and truncated series.

Scalars are sparse multivariate polynomials over the rationals, with named
generators carrying a nonnegative grading weight (``m1``, ``x3``, ``b4g``
and so on).  Exponent keys are positional integer tuples relative to a fixed
``GenContext``; coefficients are Python ints, or ``Fraction`` when a
denominator is genuinely present, so every operation is exact.

Series are sparse multivariate power series over such scalars, truncated by
total weighted degree in the series variables: a ``TruncSeries`` with bound
``trunc`` stores exactly the terms of weighted degree <= trunc and all
arithmetic is exact in that range.

Grading convention: series variables count positively, scalar generators
negatively, so a series is homogeneous of weight k when every term satisfies
(series degree) - (scalar weight) == k.  This is the cohomological grading in
half-degrees; the series displayed by the engines built on this kernel are
all homogeneous in this sense, which is asserted liberally to catch
truncation leaks.

Everything here is immutable after construction; the mutating helpers are
private to the constructors.  No global state.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


class ContextMismatchError(ValueError):
    """Operands built over different generator or variable contexts."""


class InexactDivisionError(ArithmeticError):
    """Certified division failed; carries the first obstructing term."""

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class HomogeneityError(ValueError):
    """A series expected to be weight-homogeneous is not."""


def _norm(c):
    """Collapse integral Fractions to int; reject floats."""
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"exact coefficient required, got {type(c).__name__}")


@dataclass(frozen=True)
class Generator:
    name: str
    weight: int


class GenContext:
    """An ordered list of scalar generators with distinct names."""

    __slots__ = ("gens", "index", "weights")

    def __init__(self, gens: Iterable[Generator]):
        gens = tuple(gens)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.gens = gens
        self.index = {g.name: i for i, g in enumerate(gens)}
        self.weights = tuple(g.weight for g in gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, GenContext) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return "GenContext(%s)" % ", ".join(g.name for g in self.gens)

    def zero_exp(self):
        return (0,) * len(self.gens)

    def monomial_weight(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    # -- element constructors -------------------------------------------

    def zero(self) -> "ScalarPoly":
        return ScalarPoly(self, {})

    def const(self, c) -> "ScalarPoly":
        c = _norm(c)
        if c == 0:
            return self.zero()
        return ScalarPoly(self, {self.zero_exp(): c})

    def one(self) -> "ScalarPoly":
        return self.const(1)

    def gen(self, name: str) -> "ScalarPoly":
        i = self.index[name]
        exp = [0] * len(self.gens)
        exp[i] = 1
        return ScalarPoly(self, {tuple(exp): 1})

    def extended(self, extra: Iterable[Generator]) -> "GenContext":
        return GenContext(self.gens + tuple(extra))


def common_context(a: "ScalarPoly", b: "ScalarPoly"):
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise ContextMismatchError(
            f"incompatible generator contexts {a.ctx!r} and {b.ctx!r}")


_TERM_RE = re.compile(r"^([+-])?(\d+(?:/\d+)?)?((?:\*?[A-Za-z_][A-Za-z_0-9]*(?:\^\d+)?)*)$")


class ScalarPoly:
    """Sparse polynomial; ``terms`` maps exponent tuples to coefficients.

    Zero coefficients are never stored; equality is structural.  The
    canonical term order (used by iteration, printing and serialization) is
    graded lexicographic: by monomial weight, then by exponent tuple.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: GenContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    # -- basic predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def constant_term(self):
        return self.terms.get(self.ctx.zero_exp(), 0)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1
                                  and self.ctx.zero_exp() in self.terms)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        common_context(self, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = _norm(s)
            else:
                terms.pop(e, None)
        return ScalarPoly(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        common_context(self, other)
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return ScalarPoly(self.ctx, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        c = _norm(c)
        if c == 0:
            return self.ctx.zero()
        return ScalarPoly(self.ctx, {e: _norm(v * c) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, tuple(self.sorted_terms())))

    # -- grading ----------------------------------------------------------

    def max_weight(self) -> int:
        if not self.terms:
            return 0
        return max(self.ctx.monomial_weight(e) for e in self.terms)

    def homogeneous_weight(self):
        """Weight of a homogeneous polynomial; None for 0, raises otherwise."""
        if not self.terms:
            return None
        ws = {self.ctx.monomial_weight(e) for e in self.terms}
        if len(ws) > 1:
            raise HomogeneityError(f"inhomogeneous polynomial, weights {sorted(ws)}")
        return ws.pop()

    def weight_component(self, w: int) -> "ScalarPoly":
        return ScalarPoly(self.ctx, {
            e: c for e, c in self.terms.items()
            if self.ctx.monomial_weight(e) == w})

    # -- structure helpers -------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda t: (self.ctx.monomial_weight(t[0]), t[0]))

    def substitute(self, images: Mapping[str, "ScalarPoly"],
                   target: GenContext | None = None) -> "ScalarPoly":
        """Replace generators by polynomials.

        Generators not named in ``images`` must exist in the target context
        under the same name.
        """
        if target is None:
            vals = list(images.values())
            target = vals[0].ctx if vals else self.ctx
        out = target.zero()
        gen_images = []
        for g in self.ctx.gens:
            if g.name in images:
                img = images[g.name]
                if img.ctx != target:
                    raise ContextMismatchError("image not in target context")
                gen_images.append(img)
            else:
                gen_images.append(target.gen(g.name))
        for e, c in self.terms.items():
            term = target.const(c)
            for i, ei in enumerate(e):
                if ei:
                    term = term * gen_images[i] ** ei
            out = out + term
        return out

    def convert(self, target: GenContext) -> "ScalarPoly":
        """Re-express in a context containing all generators actually used."""
        out: dict = {}
        for e, c in self.terms.items():
            new = [0] * len(target.gens)
            for i, ei in enumerate(e):
                if ei:
                    name = self.ctx.gens[i].name
                    if name not in target.index:
                        raise ContextMismatchError(
                            f"generator {name} missing from target context")
                    new[target.index[name]] = ei
            out[tuple(new)] = c
        return ScalarPoly(target, out)

    def split_divisible(self, c: int):
        """Split into c*q + r where r keeps every term whose integer
        coefficient is not exactly divisible by c.

        Used by quotient rewriting: only exact integer multiples of the
        leading constant of a relation are rewritten, so terms with
        coefficients prime to c are stable.
        """
        q: dict = {}
        r: dict = {}
        for e, v in self.terms.items():
            if isinstance(v, int) and v % c == 0:
                q[e] = v // c
            else:
                r[e] = v
        return ScalarPoly(self.ctx, q), ScalarPoly(self.ctx, r)

    def split_mod(self, c: int):
        """Split into c*q + r with the integer coefficients of r reduced
        into {0, ..., c-1} (non-integers stay in r untouched)."""
        q: dict = {}
        r: dict = {}
        for e, v in self.terms.items():
            if isinstance(v, int):
                qq, rr = divmod(v, c)
                if qq:
                    q[e] = qq
                if rr:
                    r[e] = rr
            else:
                r[e] = v
        return ScalarPoly(self.ctx, q), ScalarPoly(self.ctx, r)

    def exact_div_const(self, c):
        c = _norm(c)
        return ScalarPoly(self.ctx,
                          {e: _norm(Fraction(v) / c) for e, v in self.terms.items()})

    # -- parsing and printing ----------------------------------------------

    @staticmethod
    def parse(ctx: GenContext, text: str) -> "ScalarPoly":
        """Parse expressions like ``-8*x1^3 + 8*x1*x2 - 7*x3``."""
        s = text.replace(" ", "").replace("−", "-")
        if not s:
            return ctx.zero()
        s = s.replace("-", "+-")
        out = ctx.zero()
        for chunk in s.split("+"):
            if not chunk:
                continue
            m = _TERM_RE.match(chunk)
            if not m or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse term {chunk!r} of {text!r}")
            sign_s, coeff_s, gens_s = m.groups()
            sign = -1 if sign_s == "-" else 1
            if not coeff_s:
                coeff = sign
            elif "/" in coeff_s:
                num, den = coeff_s.split("/")
                coeff = sign * Fraction(int(num), int(den))
            else:
                coeff = sign * int(coeff_s)
            term = ctx.const(coeff)
            if gens_s:
                for factor in gens_s.strip("*").split("*"):
                    if not factor:
                        continue
                    if "^" in factor:
                        name, p = factor.split("^")
                        term = term * ctx.gen(name) ** int(p)
                    else:
                        term = term * ctx.gen(factor)
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, ei in enumerate(e):
                if ei == 1:
                    factors.append(self.ctx.gens[i].name)
                elif ei > 1:
                    factors.append(f"{self.ctx.gens[i].name}^{ei}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        return s

    __repr__ = __str__

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for e, c in self.sorted_terms():
            f = Fraction(c)
            terms.append({"exps": list(e),
                          "num": str(f.numerator),
                          "den": str(f.denominator)})
        return {"gens": [{"name": g.name, "weight": g.weight} for g in self.ctx.gens],
                "terms": terms}

    @staticmethod
    def from_json(data: dict) -> "ScalarPoly":
        ctx = GenContext(Generator(g["name"], g["weight"]) for g in data["gens"])
        terms = {}
        for t in data["terms"]:
            c = _norm(Fraction(int(t["num"]), int(t["den"])))
            if c:
                terms[tuple(t["exps"])] = c
        return ScalarPoly(ctx, terms)


@dataclass(frozen=True)
class SeriesVar:
    name: str
    weight: int


class TruncSeries:
    """Truncated power series with ScalarPoly coefficients.

    ``terms`` maps series exponent tuples (positional, matching ``vars``) to
    scalar polynomials; every stored exponent has total weighted degree
    <= trunc, and arithmetic is exact in that range.
    """

    __slots__ = ("vars", "trunc", "sctx", "terms")

    def __init__(self, vars: tuple, trunc: int, sctx: GenContext, terms: dict):
        self.vars = tuple(vars)
        self.trunc = trunc
        self.sctx = sctx
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(vars, trunc, sctx):
        return TruncSeries(vars, trunc, sctx, {})

    @staticmethod
    def const(vars, trunc, sctx, c) -> "TruncSeries":
        poly = c if isinstance(c, ScalarPoly) else sctx.const(c)
        return TruncSeries(vars, trunc, sctx, {(0,) * len(vars): poly})

    @staticmethod
    def var(vars, trunc, sctx, name) -> "TruncSeries":
        vars = tuple(vars)
        names = [v.name for v in vars]
        exp = [0] * len(vars)
        exp[names.index(name)] = 1
        return TruncSeries(vars, trunc, sctx, {tuple(exp): sctx.one()})

    # -- bookkeeping --------------------------------------------------------

    def wdeg(self, exps) -> int:
        return sum(e * v.weight for e, v in zip(exps, self.vars))

    def _check(self, other):
        if self.vars != other.vars:
            raise ContextMismatchError(
                f"series variables differ: {self.vars} vs {other.vars}")
        if self.trunc != other.trunc:
            raise ContextMismatchError(
                f"mismatched truncation contexts: {self.trunc} vs {other.trunc}")
        if self.sctx != other.sctx:
            raise ContextMismatchError("scalar contexts differ")

    def truncate(self, new_trunc: int) -> "TruncSeries":
        if new_trunc > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {new_trunc}")
        return TruncSeries(self.vars, new_trunc, self.sctx, {
            e: c for e, c in self.terms.items() if self.wdeg(e) <= new_trunc})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> ScalarPoly:
        return self.terms.get((0,) * len(self.vars), self.sctx.zero())

    def coefficient(self, exps) -> ScalarPoly:
        return self.terms.get(tuple(exps), self.sctx.zero())

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.vars == other.vars and self.trunc == other.trunc
                and self.sctx == other.sctx and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, self.trunc,
                     tuple(sorted(self.terms))))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, ScalarPoly)):
            other = TruncSeries.const(self.vars, self.trunc, self.sctx, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return TruncSeries(self.vars, self.trunc, self.sctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.vars, self.trunc, self.sctx,
                           {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ScalarPoly)):
            other = TruncSeries.const(self.vars, self.trunc, self.sctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ScalarPoly)):
            return self.scale(other)
        self._check(other)
        bound = self.trunc
        a = sorted(((self.wdeg(e), e, c) for e, c in self.terms.items()),
                   key=lambda t: t[0])
        b = sorted(((self.wdeg(e), e, c) for e, c in other.terms.items()),
                   key=lambda t: t[0])
        out: dict = {}
        for wa, ea, ca in a:
            for wb, eb, cb in b:
                if wa + wb > bound:
                    break
                key = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                s = out.get(key)
                out[key] = prod if s is None else s + prod
        return TruncSeries(self.vars, self.trunc, self.sctx, out)

    __rmul__ = __mul__

    def scale(self, c):
        if not isinstance(c, ScalarPoly):
            c = self.sctx.const(c)
        return TruncSeries(self.vars, self.trunc, self.sctx,
                           {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative series power")
        out = TruncSeries.const(self.vars, self.trunc, self.sctx, 1)
        for _ in range(n):
            out = out * self
        return out

    # -- substitution -------------------------------------------------------

    def substitute(self, images: Mapping[str, "TruncSeries"]) -> "TruncSeries":
        """Simultaneous substitution of series for series variables.

        Every image must share one variable/scalar context; images for
        variables that actually occur must have zero constant term (so the
        result is again a well-defined truncated series).  Variables without
        an image are carried over by name into the image context.
        """
        some = next(iter(images.values()))
        tvars, trunc, sctx = some.vars, some.trunc, some.sctx
        var_images = []
        for v in self.vars:
            img = images.get(v.name)
            if img is None:
                img = TruncSeries.var(tvars, trunc, sctx, v.name)
            elif img.vars != tvars or img.trunc != trunc or img.sctx != sctx:
                raise ContextMismatchError("substitution images disagree on context")
            var_images.append(img)
        used = {i for e in self.terms for i, ei in enumerate(e) if ei}
        for i in sorted(used):
            if not var_images[i].constant_term().is_zero():
                raise ValueError(
                    f"image of {self.vars[i].name} has nonzero constant term")
        # cache powers of each needed image
        powers: dict = {}
        for i in sorted(used):
            need = max(e[i] for e in self.terms)
            tab = [TruncSeries.const(tvars, trunc, sctx, 1)]
            for _ in range(need):
                tab.append(tab[-1] * var_images[i])
            powers[i] = tab
        out = TruncSeries.zero(tvars, trunc, sctx)
        for e, c in sorted(self.terms.items(), key=lambda t: self.wdeg(t[0])):
            term = TruncSeries.const(tvars, trunc, sctx, c)
            for i, ei in enumerate(e):
                if ei:
                    term = term * powers[i][ei]
            out = out + term
        return out

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """Univariate composition self(inner)."""
        if len(self.vars) != 1:
            raise ValueError("compose requires a univariate outer series")
        if not inner.constant_term().is_zero():
            raise ValueError("inner series has nonzero constant term")
        return self.substitute({self.vars[0].name: inner})

    # -- division -------------------------------------------------------------

    def exact_divide(self, d: "TruncSeries") -> "TruncSeries":
        """Certified division: the returned q satisfies q*d == self exactly
        below the documented output truncation (trunc - wdeg(d) for a
        monomial divisor).  Raises InexactDivisionError otherwise.
        """
        self._check(d)
        if len(d.terms) == 1:
            (de, dc), = d.terms.items()
            if dc.is_constant():
                return self._div_monomial(de, dc.constant_term())
        if not d.constant_term().is_zero():
            c0 = d.constant_term()
            if c0.is_constant():
                return self._div_unit(d)
        raise InexactDivisionError(
            "divisor must be a scalar monomial or have unit constant term")

    def _div_monomial(self, de, dc) -> "TruncSeries":
        out = {}
        for e, c in self.terms.items():
            q = tuple(x - y for x, y in zip(e, de))
            if any(x < 0 for x in q):
                raise InexactDivisionError(
                    f"term {e} not divisible by monomial {de}", obstruction=(e, c))
            out[q] = c.exact_div_const(dc)
        wd = self.wdeg(de)
        return TruncSeries(self.vars, self.trunc - wd, self.sctx, out)

    def _div_unit(self, d: "TruncSeries") -> "TruncSeries":
        c0 = d.constant_term().constant_term()
        rest = d - d.constant_term()
        # q = self * d^{-1} with d^{-1} = (1/c0) * sum (-rest/c0)^k
        inv = TruncSeries.const(self.vars, self.trunc, self.sctx,
                                _norm(Fraction(1, 1) / c0))
        acc = inv
        for _ in range(self.trunc):
            acc = (acc * rest).scale(_norm(Fraction(-1) / c0))
            if acc.is_zero():
                break
            inv = inv + acc
        q = self * inv
        if not (q * d - self).is_zero():
            raise InexactDivisionError("unit division failed to certify")
        return q

    def invert_unit(self) -> "TruncSeries":
        """Inverse of a series with invertible rational constant term."""
        one = TruncSeries.const(self.vars, self.trunc, self.sctx, 1)
        return one.exact_divide(self)

    # -- reversion ---------------------------------------------------------

    def reversion(self) -> "TruncSeries":
        """Compositional inverse g of a univariate f = v + O(v^2).

        Solved degreewise; certified by f(g) == v.
        """
        if len(self.vars) != 1:
            raise ValueError("reversion requires a univariate series")
        v = self.vars[0]
        if not self.constant_term().is_zero():
            raise ValueError("reversion needs zero constant term")
        lin = self.coefficient((1,))
        if not (lin.is_constant() and lin.constant_term() in (1, Fraction(1))):
            raise ValueError("reversion requires unit (=1) linear coefficient")
        ident = TruncSeries.var(self.vars, self.trunc, self.sctx, v.name)
        g = ident
        for k in range(2, self.trunc + 1):
            resid = self.substitute({v.name: g}) - ident
            corr = resid.coefficient((k,))
            if corr.is_zero():
                continue
            g = g - TruncSeries(self.vars, self.trunc, self.sctx,
                                {(k,): corr})
        final = self.substitute({v.name: g}) - ident
        if not final.is_zero():
            raise ArithmeticError("reversion failed to certify")
        return g

    # -- variable surgery -----------------------------------------------------

    def embed(self, new_vars, trunc=None) -> "TruncSeries":
        """View the series in a larger variable context (by name)."""
        new_vars = tuple(new_vars)
        trunc = self.trunc if trunc is None else trunc
        names = [v.name for v in new_vars]
        pos = [names.index(v.name) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(new_vars)
            for p, ei in zip(pos, e):
                new[p] = ei
            ne = tuple(new)
            if sum(x * v.weight for x, v in zip(ne, new_vars)) <= trunc:
                out[ne] = c
        return TruncSeries(new_vars, trunc, self.sctx, out)

    def rename_vars(self, mapping: Mapping[str, str]) -> "TruncSeries":
        new_vars = tuple(SeriesVar(mapping.get(v.name, v.name), v.weight)
                         for v in self.vars)
        return TruncSeries(new_vars, self.trunc, self.sctx, self.terms)

    def slice_var(self, name: str, power: int) -> "TruncSeries":
        """Coefficient of name^power, a series in the remaining variables."""
        i = [v.name for v in self.vars].index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + e[i + 1:]] = c
        return TruncSeries(rest, self.trunc - power * self.vars[i].weight,
                           self.sctx, out)

    def map_coeffs(self, f, sctx=None) -> "TruncSeries":
        out = {}
        for e, c in self.terms.items():
            fc = f(c)
            if not fc.is_zero():
                out[e] = fc
        return TruncSeries(self.vars, self.trunc, sctx or self.sctx, out)

    # -- grading ---------------------------------------------------------------

    def homogeneous_weight(self):
        """Uniform (series degree - scalar weight) over all terms.

        Returns None for the zero series; raises HomogeneityError when mixed.
        """
        ws = set()
        for e, c in self.terms.items():
            sd = self.wdeg(e)
            for ee in c.terms:
                ws.add(sd - c.ctx.monomial_weight(ee))
        if not ws:
            return None
        if len(ws) > 1:
            raise HomogeneityError(f"inhomogeneous series, weights {sorted(ws)}")
        return ws.pop()

    # -- printing / serialization ----------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (self.wdeg(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, ei in enumerate(e):
                if ei == 1:
                    factors.append(self.vars[i].name)
                elif ei > 1:
                    factors.append(f"{self.vars[i].name}^{ei}")
            mono = "*".join(factors)
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if " " in cs else cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            elif " " in cs:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "vars": [{"name": v.name, "weight": v.weight} for v in self.vars],
            "trunc": self.trunc,
            "gens": [{"name": g.name, "weight": g.weight} for g in self.sctx.gens],
            "terms": [{"exps": list(e), "coeff": c.to_json()["terms"]}
                      for e, c in self.sorted_terms()],
        }

    @staticmethod
    def from_json(data: dict) -> "TruncSeries":
        vars = tuple(SeriesVar(v["name"], v["weight"]) for v in data["vars"])
        sctx = GenContext(Generator(g["name"], g["weight"]) for g in data["gens"])
        terms = {}
        for t in data["terms"]:
            poly = ScalarPoly.from_json({"gens": data["gens"], "terms": t["coeff"]})
            if not poly.is_zero():
                terms[tuple(t["exps"])] = poly
        return TruncSeries(vars, data["trunc"], sctx, terms)
