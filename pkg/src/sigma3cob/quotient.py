"""Reduction of univariate truncated series modulo a distinguished relation.

All the quotient rings in this project have the shape  B[[v]] / (r)  where
B is a graded polynomial ring over the integers and the relation r has an
integer constant c >= 2 as its lowest coefficient:

    [2]ua           = 2 ua - x1 ua^2 + ...          (offset 1, c = 2)
    [2]ua / ua      = 2 - x1 ua + ...               (offset 0, c = 2)
    [p]v, [p]v / v, {3}v, {3}v / v                  (c = p)

Reduction processes degrees upward: at each degree the terms of the current
coefficient whose integer coefficients are exact multiples of c are
rewritten through the relation (pushing corrections to higher degrees);
terms prime to c are stable.  A single ascending pass is therefore complete
and idempotent, and reduce(a - b) == 0 decides equality in the quotient:
soundness is clear, and any actual multiple g*r has an exactly divisible
lowest coefficient at every stage, so the division never jams on members.
"""

from __future__ import annotations

from .symcore import ScalarPoly, TruncSeries


class SeriesModRing:
    """B[[v]]/(relation) at a fixed truncation, for one series variable."""

    def __init__(self, relation: TruncSeries):
        if len(relation.vars) != 1:
            raise ValueError("relation must be univariate")
        if relation.is_zero():
            raise ValueError("zero relation")
        self.relation = relation
        self.var = relation.vars[0]
        self.trunc = relation.trunc
        self.sctx = relation.sctx
        degs = sorted(e[0] for e in relation.terms)
        self.offset = degs[0]
        lead = relation.terms[(self.offset,)]
        if not lead.is_constant() or not isinstance(lead.constant_term(), int):
            raise ValueError("relation must lead with an integer constant")
        self.const = lead.constant_term()
        if self.const < 2:
            raise ValueError("leading constant must be >= 2")
        self._rel = {e[0]: c for e, c in relation.terms.items()}

    def reduce(self, f: TruncSeries, canonical: bool = False) -> TruncSeries:
        """Single ascending rewriting pass.

        With ``canonical`` every integer coefficient at a rewritable degree
        is represented mod the leading constant (in {0, ..., c-1}), giving a
        unique normal form per residue class; the default only rewrites
        exact multiples, which is what the ideal-membership test needs and
        keeps representatives as typed in.
        """
        if f.vars != (self.var,) or f.sctx != self.sctx:
            raise ValueError("series not over this quotient ring")
        bound = min(f.trunc, self.trunc)
        terms = {e[0]: c for e, c in f.terms.items() if e[0] <= bound}
        for k in range(self.offset, bound + 1):
            cur = terms.get(k)
            if cur is None or cur.is_zero():
                continue
            if canonical:
                q, r = cur.split_mod(self.const)
            else:
                q, r = cur.split_divisible(self.const)
            if q.is_zero():
                continue
            for dk, rc in self._rel.items():
                tgt = k - self.offset + dk
                if tgt > bound:
                    continue
                prev = terms.get(tgt)
                delta = q * rc
                terms[tgt] = (-delta) if prev is None else prev - delta
            # by construction terms[k] is now r
        return TruncSeries((self.var,), bound, self.sctx,
                           {(k,): c for k, c in terms.items() if not c.is_zero()})

    def is_zero_mod(self, f: TruncSeries) -> bool:
        return self.reduce(f).is_zero()

    def equals(self, a: TruncSeries, b: TruncSeries) -> bool:
        return self.is_zero_mod(a - b)
