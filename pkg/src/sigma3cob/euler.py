"""Rewriting symmetric series in Chern roots into Euler-class variables.

A series in the two roots u+, u- that is invariant under the swap can be
written uniquely in e1 = u+ + u-, e2 = u+ u- (classical symmetric
reduction, via power sums and Newton's identity).  The Euler classes of the
determinant and identity representations are

    ua = u+ +_F u-    (weight 1),
    ug = u+ u-        (weight 2),

so a second, triangular step solves e1 as a series in (ua, ug) from the
expansion of the formal sum, giving the unique rewriting of the input in
(ua, ug).  A round-trip substitution certifies the result.

Derived relation series: the quotient series {3}ug = [2]u+ [2]u- - u+ u-,
the inverted Euler class i(u+) i(u-), the certified quotient
(ug - i(u+)i(u-)) / (ua ug), the congruence forcing ua ug = 0, and the
wreath-product relation u+ u- - (u+ +_F w)(u- +_F w) with its t-deformed
variant.  Each is weight-homogeneous, which is asserted at every stage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symcore import HomogeneityError, SeriesVar, TruncSeries
from . import fgl

ROOT_P = SeriesVar("u+", 1)
ROOT_M = SeriesVar("u-", 1)
UA = SeriesVar("ua", 1)
UG = SeriesVar("ug", 2)
W = SeriesVar("w", 1)
T = SeriesVar("t", 1)


def root_vars(*extra) -> tuple:
    return (ROOT_P, ROOT_M) + tuple(extra)


def euler_vars(*extra) -> tuple:
    return (UA, UG) + tuple(extra)


def assert_homogeneous(s: TruncSeries, weight: int, label: str):
    got = s.homogeneous_weight()
    if got not in (None, weight):
        raise HomogeneityError(f"{label}: expected weight {weight}, got {got}")


def is_swap_symmetric(s: TruncSeries) -> bool:
    i = [v.name for v in s.vars].index(ROOT_P.name)
    j = [v.name for v in s.vars].index(ROOT_M.name)
    for e, c in s.terms.items():
        f = list(e)
        f[i], f[j] = f[j], f[i]
        if s.terms.get(tuple(f)) != c:
            return False
    return True


def _power_sums(trunc: int, sctx, kmax: int, vars) -> list:
    """p_k = u+^k + u-^k written in (e1, e2) placed as the first two vars."""
    one = TruncSeries.const(vars, trunc, sctx, 1)
    e1 = TruncSeries.var(vars, trunc, sctx, vars[0].name)
    e2 = TruncSeries.var(vars, trunc, sctx, vars[1].name)
    ps = [one.scale(2), e1]
    for _ in range(2, kmax + 1):
        ps.append(e1 * ps[-1] - e2 * ps[-2])
    return ps


def symmetric_to_elementary(s: TruncSeries) -> TruncSeries:
    """Rewrite a swap-symmetric series in the elementary symmetric functions.

    The two root variables are replaced (in place) by e1 (weight 1) and
    e2 (weight 2); spectator variables ride along untouched.
    """
    if not is_swap_symmetric(s):
        raise ValueError("series is not symmetric under the root swap")
    names = [v.name for v in s.vars]
    i, j = names.index(ROOT_P.name), names.index(ROOT_M.name)
    out_vars = tuple(SeriesVar("e1", 1) if k == i else
                     SeriesVar("e2", 2) if k == j else v
                     for k, v in enumerate(s.vars))
    kmax = max((e[i] for e in s.terms), default=0)
    ps = _power_sums(s.trunc, s.sctx, kmax, out_vars)
    out = TruncSeries.zero(out_vars, s.trunc, s.sctx)
    for e, c in s.terms.items():
        a, b = e[i], e[j]
        if a < b:
            continue
        base = [0] * len(out_vars)
        for k, ek in enumerate(e):
            if k not in (i, j):
                base[k] = ek
        base[j] = b  # e2^min(a,b)
        mono = TruncSeries(out_vars, s.trunc, s.sctx,
                           {tuple(base): c})
        if a == b:
            out = out + mono
        else:
            out = out + mono * ps[a - b]
    return out


def _euler_solve(table: fgl.FglTable, trunc: int):
    """e1 as a series in (ua, ug), from ua = (e1-expansion of u+ +_F u-)."""
    roots = root_vars()
    up = TruncSeries.var(roots, trunc, table.sctx, ROOT_P.name)
    um = TruncSeries.var(roots, trunc, table.sctx, ROOT_M.name)
    ua_roots = table.formal_sum(up, um)
    A = symmetric_to_elementary(ua_roots)  # in (e1, e2)
    ev = euler_vars()
    ua = TruncSeries.var(ev, trunc, table.sctx, UA.name)
    ug = TruncSeries.var(ev, trunc, table.sctx, UG.name)
    e1 = ua
    for _ in range(trunc):
        image = A.substitute({"e1": e1, "e2": ug})
        e1 = e1 - (image - ua)
    if not (A.substitute({"e1": e1, "e2": ug}) - ua).is_zero():
        raise ArithmeticError("elementary-symmetric solve failed to certify")
    return e1


def to_euler_basis(s: TruncSeries, table: fgl.FglTable) -> TruncSeries:
    """The unique E(ua, ug, ...) with E(u+ +_F u-, u+ u-, ...) == s."""
    elem = symmetric_to_elementary(s)
    e1_image = _euler_solve(table, s.trunc)
    names = [v.name for v in elem.vars]
    i, j = names.index("e1"), names.index("e2")
    out_vars = tuple(UA if k == i else UG if k == j else v
                     for k, v in enumerate(elem.vars))
    images = {"e1": e1_image.embed(out_vars),
              "e2": TruncSeries.var(out_vars, s.trunc, s.sctx, UG.name)}
    return elem.substitute(images)


def euler_to_roots(E: TruncSeries, table: fgl.FglTable) -> TruncSeries:
    """Substitute ua -> u+ +_F u-, ug -> u+ u- (round-trip oracle)."""
    names = [v.name for v in E.vars]
    i, j = names.index(UA.name), names.index(UG.name)
    out_vars = tuple(ROOT_P if k == i else ROOT_M if k == j else v
                     for k, v in enumerate(E.vars))
    up = TruncSeries.var(out_vars, E.trunc, E.sctx, ROOT_P.name)
    um = TruncSeries.var(out_vars, E.trunc, E.sctx, ROOT_M.name)
    return E.substitute({UA.name: table.formal_sum(up, um), UG.name: up * um})


# ---------------------------------------------------------------------------
# Relation series.


def three_series(N: int, table: fgl.FglTable | None = None) -> TruncSeries:
    """{3}ug = [2]u+ [2]u- - u+ u-, rewritten in (ua, ug).

    Divisible by ug with quotient constant term 3 (both certified).
    """
    if N < 2:
        raise ValueError("need truncation >= 2")
    table = table or fgl.universal_fgl(N)
    roots = root_vars()
    two_p = table.n_series(2, ROOT_P.name).embed(roots)
    two_m = table.n_series(2, ROOT_M.name).embed(roots)
    up = TruncSeries.var(roots, N, table.sctx, ROOT_P.name)
    um = TruncSeries.var(roots, N, table.sctx, ROOT_M.name)
    out = to_euler_basis(two_p * two_m - up * um, table)
    assert_homogeneous(out, 2, "{3}ug")
    inner = out.exact_divide(TruncSeries.var(euler_vars(), N, table.sctx, UG.name))
    if inner.constant_term().constant_term() != 3:
        raise ArithmeticError("quotient by ug does not have constant term 3")
    return out


def three_series_one_variable(N: int, table: fgl.FglTable | None = None,
                              var: str = "v") -> TruncSeries:
    """{3}v: the ua -> 0, ug -> v specialization, a series in one weight-2
    variable."""
    full = three_series(N, table)
    return full.slice_var(UA.name, 0).rename_vars({UG.name: var})


def u_gamma_tilde(N: int, table: fgl.FglTable | None = None) -> TruncSeries:
    """i(u+) i(u-) in the Euler basis."""
    if N < 2:
        raise ValueError("need truncation >= 2")
    table = table or fgl.universal_fgl(N)
    roots = root_vars()
    ip = table.formal_inverse_of(
        TruncSeries.var(roots, N, table.sctx, ROOT_P.name))
    im = table.formal_inverse_of(
        TruncSeries.var(roots, N, table.sctx, ROOT_M.name))
    out = to_euler_basis(ip * im, table)
    assert_homogeneous(out, 2, "inverted Euler class")
    return out


@dataclass(frozen=True)
class GammaDifference:
    quotient: TruncSeries        # (ug - i(u+)i(u-)) / (ua ug)
    difference: TruncSeries      # ug - i(u+)i(u-) in the Euler basis
    root_identity_ok: bool       # u+(u- - i(u+)) + (u+ - i(u-)) i(u+) route
    divisor_verified: bool


def gamma_difference(N: int, table: fgl.FglTable | None = None) -> GammaDifference:
    """Certified quotient of ug - i(u+)i(u-) by ua * ug.

    Also verifies the root-space identity expressing the same difference as
    u+(u- - i(u+)) + (u+ - i(u-)) i(u+).
    """
    if N < 4:
        raise ValueError("need truncation >= 4")
    table = table or fgl.universal_fgl(N)
    ev = euler_vars()
    tilde = u_gamma_tilde(N, table)
    ug = TruncSeries.var(ev, N, table.sctx, UG.name)
    diff = ug - tilde
    assert_homogeneous(diff, 2, "Euler-class difference")
    roots = root_vars()
    up = TruncSeries.var(roots, N, table.sctx, ROOT_P.name)
    um = TruncSeries.var(roots, N, table.sctx, ROOT_M.name)
    ip = table.formal_inverse_of(up)
    im = table.formal_inverse_of(um)
    alt = up * (um - ip) + (up - im) * ip
    root_ok = alt == (up * um - ip * im)
    ua_ug = TruncSeries(ev, N, table.sctx, {(1, 1): table.sctx.one()})
    q = diff.exact_divide(ua_ug)
    verified = (q.embed(ev, N) * ua_ug) == diff.truncate(q.trunc + 3)
    return GammaDifference(q, diff, root_ok, verified)


@dataclass(frozen=True)
class CongruenceReport:
    lhs: TruncSeries
    residual: TruncSeries
    in_ideal: bool


def euag_congruence(N: int, table: fgl.FglTable | None = None) -> CongruenceReport:
    """({3}ug) ua - ([2]ua) ug == ua ug  modulo (ua^2 ug, ua ug^2).

    The two relations of the Borel cohomology presentation therefore force
    ua ug = 0 there.
    """
    if N < 2:
        raise ValueError("need truncation >= 2")
    table = table or fgl.universal_fgl(N)
    ev = euler_vars()
    three = three_series(N, table)
    ua = TruncSeries.var(ev, N, table.sctx, UA.name)
    ug = TruncSeries.var(ev, N, table.sctx, UG.name)
    two_ua = table.n_series(2, UA.name).embed(ev)
    lhs = three * ua - two_ua * ug
    residual = lhs - ua * ug
    in_ideal = all((e[0] >= 2 and e[1] >= 1) or (e[0] >= 1 and e[1] >= 2)
                   for e in residual.terms)
    return CongruenceReport(lhs, residual, in_ideal)


@dataclass(frozen=True)
class WreathRelation:
    relation: TruncSeries        # u+ u- - (u+ +_F w)(u- +_F w), vars (u+, u-, w)
    t_deformed: TruncSeries      # same with every factor shifted by +_F t
    w_quotient: TruncSeries      # relation / w, certified
    t_w_quotient: TruncSeries


def wreath_relation(N: int, table: fgl.FglTable | None = None) -> WreathRelation:
    if N < 2:
        raise ValueError("need truncation >= 2")
    table = table or fgl.universal_fgl(N)
    v3 = root_vars(W)
    up = TruncSeries.var(v3, N, table.sctx, ROOT_P.name)
    um = TruncSeries.var(v3, N, table.sctx, ROOT_M.name)
    w = TruncSeries.var(v3, N, table.sctx, "w")
    rel = up * um - table.formal_sum(up, w) * table.formal_sum(um, w)
    assert_homogeneous(rel, 2, "wreath relation")
    v4 = root_vars(W, T)
    up4 = TruncSeries.var(v4, N, table.sctx, ROOT_P.name)
    um4 = TruncSeries.var(v4, N, table.sctx, ROOT_M.name)
    w4 = TruncSeries.var(v4, N, table.sctx, "w")
    t4 = TruncSeries.var(v4, N, table.sctx, "t")
    rel_t = (table.formal_sum(up4, t4) * table.formal_sum(um4, t4)
             - table.formal_sum(table.formal_sum(up4, w4), t4)
             * table.formal_sum(table.formal_sum(um4, w4), t4))
    wq = rel.exact_divide(TruncSeries.var(v3, N, table.sctx, "w"))
    twq = rel_t.exact_divide(TruncSeries.var(v4, N, table.sctx, "w"))
    return WreathRelation(rel, rel_t, wq, twq)
