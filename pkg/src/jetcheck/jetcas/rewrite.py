"""Oriented rewriting of jet expressions modulo equation systems.

A RewriteRule sends one jet variable (the leading derivative an
equation was solved for) to an expression in strictly lower-ranked
jets.  Rules implicitly generate all prolongations: any derivative of
a rule's lhs rewrites to the matching derivative of its rhs.

Rankings are Riquier-style: a lexicographic stack of rows, each row a
nonnegative-integer weighting of derivative orders plus a per-field
offset, followed by a fixed tail (total order, field catalog index,
multi-index).  Rows are additive in the multi-index, so u > v implies
Du > Dv and Du > u: rule application terminates.  The plain orderly
ranking (total order, field index, multi-index) is the zero-row case.

Reduction replaces, repeatedly, the highest-ranked reducible jet by its
fully reduced image; per-jet normal forms are cached on the system, so
reducing many expressions modulo one system shares the work.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .expr import Expression, ExprError


class RewriteError(ValueError):
    pass


class StepBudgetExceeded(RuntimeError):
    """Reduction ran out of steps (distinct from a nonzero remainder)."""

    def __init__(self, message, partial=None, steps=0):
        super().__init__(message)
        self.partial = partial
        self.steps = steps


@dataclass(frozen=True)
class RankRow:
    vars: tuple = ()    # ((var_name, weight), ...)
    fields: tuple = ()  # ((field_name, offset), ...)

    @classmethod
    def of(cls, vars=None, fields=None):
        return cls(
            tuple(sorted((vars or {}).items())),
            tuple(sorted((fields or {}).items())),
        )


class Ranking:
    """Total order on jet variables of one space."""

    def __init__(self, space, rows=()):
        self.space = space
        self.rows = tuple(rows)
        self._row_data = []
        for row in self.rows:
            fweights = dict(row.fields)
            per_field = []
            for f in space.fields:
                weights = dict(row.vars)
                per_field.append(
                    (
                        tuple(weights.get(v, 0) for v in f.depends_on),
                        fweights.get(f.name, 0),
                    )
                )
            self._row_data.append(per_field)

    def key(self, jet):
        fi, mi = jet
        parts = []
        for per_field in self._row_data:
            var_w, f_off = per_field[fi]
            parts.append(sum(w * o for w, o in zip(var_w, mi)) + f_off)
        parts.append(sum(mi))
        parts.append(fi)
        return (*parts, mi)


def orderly_ranking(space):
    """Total derivative order, then field catalog index, then multi-index."""
    return Ranking(space, rows=())


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple  # jet key
    rhs: Expression
    provenance: str = ""


class RewriteSystem:
    def __init__(self, space, rules, ranking=None, name=""):
        self.space = space
        self.name = name
        self.ranking = ranking if ranking is not None else orderly_ranking(space)
        self.rules = tuple(rules)
        self._by_field = {}
        self._prolong_cache = {}
        self._normal_cache = {}
        seen = set()
        for idx, rule in enumerate(self.rules):
            if rule.lhs in seen:
                raise RewriteError(
                    f"duplicate rule lhs {space.jet_name(rule.lhs)}"
                )
            seen.add(rule.lhs)
            self._validate(rule)
            self._by_field.setdefault(rule.lhs[0], []).append((idx, rule))

    def _validate(self, rule):
        space = self.space
        lhs_key = self.ranking.key(rule.lhs)
        fi, mi = rule.lhs
        for jet in rule.rhs.jets():
            if jet[0] == fi and all(a >= b for a, b in zip(jet[1], mi)):
                raise RewriteError(
                    f"rule {space.jet_name(rule.lhs)} has its own derivative "
                    f"{space.jet_name(jet)} in the rhs"
                )
            if not self.ranking.key(jet) < lhs_key:
                raise RewriteError(
                    f"rule {space.jet_name(rule.lhs)} -> ... not decreasing: "
                    f"rhs jet {space.jet_name(jet)} outranks the lhs"
                )

    # -- rule lookup and prolongation ----------------------------------

    def match(self, jet):
        """Rule applying to `jet` (its lhs divides jet), or None."""
        cands = self._by_field.get(jet[0])
        if not cands:
            return None
        fi, mi = jet
        best = None
        best_key = None
        for idx, rule in cands:
            lmi = rule.lhs[1]
            if all(a >= b for a, b in zip(mi, lmi)):
                k = self.ranking.key(rule.lhs)
                if best is None or k > best_key:
                    best, best_key = (idx, rule), k
        return best

    def _prolonged_rhs(self, idx, delta):
        got = self._prolong_cache.get((idx, delta))
        if got is not None:
            return got
        if not any(delta):
            out = self.rules[idx].rhs
        else:
            # peel one derivative and recurse so intermediate stages cache
            pos = next(i for i, d in enumerate(delta) if d)
            lower = list(delta)
            lower[pos] -= 1
            base = self._prolonged_rhs(idx, tuple(lower))
            f = self.space.fields[self.rules[idx].lhs[0]]
            out = base.differentiate(f.depends_on[pos])
        self._prolong_cache[(idx, delta)] = out
        return out

    def reduct(self, jet):
        """One-step image of a reducible jet (prolonged rule rhs)."""
        m = self.match(jet)
        if m is None:
            return None
        idx, rule = m
        delta = tuple(a - b for a, b in zip(jet[1], rule.lhs[1]))
        return self._prolonged_rhs(idx, delta)

    def normal_atom(self, jet, budget):
        """Fully reduced image of one jet variable (cached)."""
        got = self._normal_cache.get(jet)
        if got is not None:
            return got
        raw = self.reduct(jet)
        if raw is None:
            out = Expression.atom(self.space, jet)
        else:
            out, _ = self._reduce_inner(raw, budget)
        self._normal_cache[jet] = out
        return out

    def _reduce_inner(self, e, budget):
        steps = 0
        while True:
            reducible = [j for j in e.jets() if self.match(j) is not None]
            if not reducible:
                return e, steps
            jet = max(reducible, key=self.ranking.key)
            if budget[0] <= 0:
                raise StepBudgetExceeded(
                    f"step budget exhausted in {self.name or 'rewrite system'}",
                    partial=e,
                    steps=steps,
                )
            budget[0] -= 1
            steps += 1
            e = e.subst_jet(jet, self.normal_atom(jet, budget))

    def reduce(self, e, max_steps=100000):
        """Normal form of e modulo the system.

        Returns (normal_form, steps).  Raises StepBudgetExceeded if the
        budget runs out; the partial result rides on the exception.
        """
        budget = [max_steps]
        normal, steps = self._reduce_inner(e, budget)
        return normal, max_steps - budget[0]

    def merged(self, other, ranking=None, name=""):
        """System combining this one's rules with another's."""
        if other.space is not self.space and other.space != self.space:
            raise RewriteError("cannot merge systems over different spaces")
        return RewriteSystem(
            self.space,
            self.rules + other.rules,
            ranking=ranking if ranking is not None else self.ranking,
            name=name or f"{self.name}+{other.name}",
        )


def solve_for(residual, jet, provenance=""):
    """Orient residual = 0 as a rule jet -> rhs; jet must occur linearly."""
    from .expr import _poly_in_var  # reuse the splitter

    space = residual.space
    parts = _poly_in_var(residual.num, jet)
    degs = sorted(d for d, p in parts.items() if p)
    if degs == [0] or jet not in residual.jets():
        raise RewriteError(
            f"residual does not contain {space.jet_name(jet)}"
        )
    if max(degs) != 1:
        raise RewriteError(
            f"residual is nonlinear in {space.jet_name(jet)}"
        )
    A = Expression(space, parts[1])
    B = Expression(space, parts.get(0, {}))
    rhs = (-B) / A
    if jet in rhs.jets():
        raise RewriteError(
            f"could not isolate {space.jet_name(jet)} (appears in denominator)"
        )
    return RewriteRule(jet, rhs, provenance)
