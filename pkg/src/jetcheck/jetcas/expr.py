"""Differential-rational expressions over a variable space.

An Expression is a reduced fraction of multivariate polynomials in jet
variables with exact rational coefficients.  The constructor enforces
the canonical form:

* extension relations (s^2 -> lam, I^2 -> -1) are eliminated from every
  monomial,
* the denominator is extension-free (conjugate rationalisation),
* gcd(numerator, denominator) = 1,
* the denominator is monic under the graded-lex monomial order.

All arithmetic funnels through the constructor, so equality of
canonical forms is equality of rational functions and the zero test is
`num == {}`.  Expressions are immutable and safe to share between
threads or processes.
"""

from __future__ import annotations

from fractions import Fraction

from . import backend as bk
from .gcdpoly import poly_gcd
from .assumptions import record_division

_ONE_POLY = {(): Fraction(1)}


class ExprError(ValueError):
    pass


class EvaluationDomainError(ExprError):
    """A denominator vanished at the evaluation point / substitution."""


def _poly_const(c):
    c = Fraction(c)
    return {(): c} if c else {}


class Expression:
    __slots__ = ("space", "num", "den", "_hash")

    def __init__(self, space, num, den=None, _canonical=False):
        self.space = space
        if den is None:
            den = dict(_ONE_POLY)
        if _canonical:
            self.num = num
            self.den = den
        else:
            self.num, self.den = _canonicalize(space, num, den)
        self._hash = None

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, space):
        return cls(space, {}, dict(_ONE_POLY), _canonical=True)

    @classmethod
    def one(cls, space):
        return cls(space, dict(_ONE_POLY), dict(_ONE_POLY), _canonical=True)

    @classmethod
    def const(cls, space, c):
        return cls(space, _poly_const(c), dict(_ONE_POLY), _canonical=True)

    @classmethod
    def atom(cls, space, key):
        return cls(space, {((key, 1),): Fraction(1)}, dict(_ONE_POLY), _canonical=True)

    @classmethod
    def field(cls, space, name, orders=()):
        return cls.atom(space, space.jet(name, orders))

    # -- basic structure ----------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == _ONE_POLY and self.den == _ONE_POLY

    def is_rational(self):
        return (not self.num or set(self.num) == {()}) and set(self.den) == {()}

    def as_fraction(self):
        if not self.is_rational():
            raise ExprError("not a constant expression")
        if not self.num:
            return Fraction(0)
        return self.num[()] / self.den[()]

    def jets(self):
        """Set of jet keys appearing in numerator or denominator."""
        out = set()
        for p in (self.num, self.den):
            for m in p:
                for g, _ in m:
                    out.add(g)
        return out

    def __len__(self):
        return len(self.num) + len(self.den)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Expression):
            if other.space is not self.space and other.space != self.space:
                raise ExprError("expressions from different variable spaces")
            return other
        if isinstance(other, (int, Fraction)):
            return Expression.const(self.space, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return Expression(self.space, bk.poly_add(self.num, other.num), dict(self.den))
        g = poly_gcd(self.den, other.den)
        if g == _ONE_POLY:
            da, db = self.den, other.den
            num = bk.poly_add(bk.poly_mul(self.num, db), bk.poly_mul(other.num, da))
            return Expression(self.space, num, bk.poly_mul(da, db))
        qa = bk.poly_divexact(self.den, g)
        qb = bk.poly_divexact(other.den, g)
        num = bk.poly_add(bk.poly_mul(self.num, qb), bk.poly_mul(other.num, qa))
        den = bk.poly_mul(self.den, qb)
        return Expression(self.space, num, den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Expression(
            self.space, bk.poly_neg(self.num), dict(self.den), _canonical=True
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Expression.zero(self.space)
        num = bk.poly_mul(self.num, other.num)
        den = bk.poly_mul(self.den, other.den)
        return Expression(self.space, num, den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero expression")
        record_division(self.space, other.num)
        num = bk.poly_mul(self.num, other.den)
        den = bk.poly_mul(self.den, other.num)
        return Expression(self.space, num, den)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return Expression.one(self.space)
        if k < 0:
            inv = Expression.one(self.space).__truediv__(self)
            return inv.__pow__(-k)
        # num/den coprime stays coprime under powers: skip the gcd pass
        num = bk.poly_pow(self.num, k)
        den = bk.poly_pow(self.den, k)
        num, den = _reduce_ext_pair(self.space, num, den)
        num, den = _monic(num, den)
        return Expression(self.space, num, den, _canonical=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if not self.is_rational():
                return False
            return self.as_fraction() == other
        if not isinstance(other, Expression):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (
                    frozenset(self.num.items()),
                    frozenset(self.den.items()),
                )
            )
        return self._hash

    # -- calculus --------------------------------------------------------

    def differentiate(self, var_name, order=1):
        e = self
        for _ in range(order):
            e = _differentiate(e, var_name)
        return e

    def substitute(self, field_map, forbidden=()):
        """Replace fields by expressions; derivatives of substituted
        fields expand through the chain rule.

        field_map: {field_name: Expression-or-rational}.  `forbidden`
        names fields oriented as rewrite lhs elsewhere in the same
        pipeline; substituting one raises to avoid silent inconsistency.
        """
        space = self.space
        bad = set(field_map) & set(forbidden)
        if bad:
            raise ExprError(
                f"substitution targets oriented rewrite lhs fields: {sorted(bad)}"
            )
        images = {}
        for name, rhs in field_map.items():
            if name not in space.field_index:
                raise ExprError(f"undeclared field {name!r}")
            if not isinstance(rhs, Expression):
                rhs = Expression.const(space, rhs)
            images[space.field_index[name]] = rhs
        cache = {}

        def jet_image(key):
            img = cache.get(key)
            if img is not None:
                return img
            fi, mi = key
            base = images.get(fi)
            if base is None:
                img = Expression.atom(space, key)
            else:
                img = base
                f = space.fields[fi]
                for v, o in zip(f.depends_on, mi):
                    img = img.differentiate(v, o)
            cache[key] = img
            return img

        num = _poly_substitute(space, self.num, jet_image)
        den = _poly_substitute(space, self.den, jet_image)
        if den.is_zero():
            raise EvaluationDomainError("substitution sent a denominator to zero")
        return num / den

    def subst_jet(self, key, replacement):
        """Replace a single jet variable by an expression (no chain rule).

        Used by the rewrite engine; `replacement` must not contain `key`.
        """
        space = self.space
        if not isinstance(replacement, Expression):
            replacement = Expression.const(space, replacement)
        num = _poly_subst_var(space, self.num, key, replacement)
        den = _poly_subst_var(space, self.den, key, replacement)
        if den.is_zero():
            raise EvaluationDomainError("rewrite sent a denominator to zero")
        return num / den

    def evaluate(self, point):
        """Exact evaluation at a jet point: {jet_key: Fraction}.

        Returns (re, im) Fractions; I evaluates to the imaginary unit.
        Missing keys default to 0.  Raises EvaluationDomainError when a
        denominator vanishes.
        """
        num = _poly_eval(self.space, self.num, point)
        den = _poly_eval(self.space, self.den, point)
        if den == (0, 0):
            raise EvaluationDomainError("denominator vanished at evaluation point")
        nr, ni = num
        dr, di = den
        q = dr * dr + di * di
        return ((nr * dr + ni * di) / q, (ni * dr - nr * di) / q)

    # -- output ----------------------------------------------------------

    def to_text(self):
        from .parse import expression_to_text

        return expression_to_text(self)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"<Expr {self.to_text()}>"


# -- canonicalization helpers ---------------------------------------------


def _ext_info(space):
    """{field_index: relation poly} for extension generators."""
    info = getattr(space, "_ext_info", None)
    if info is None:
        info = {}
        for i, f in enumerate(space.fields):
            if f.kind == "extension":
                rkind, rval = f.relation
                if rkind == "const":
                    info[i] = _poly_const(rval)
                else:
                    rkey = (space.field_index[rval], (0,) * len(space.fields[space.field_index[rval]].depends_on))
                    info[i] = {((rkey, 1),): Fraction(1)}
        space._ext_info = info
    return info


def _reduce_ext_poly(space, p):
    """Eliminate squared extension generators from every monomial."""
    info = _ext_info(space)
    if not info:
        return p
    while True:
        target = None
        for m in p:
            for (fi, mi), e in m:
                if e >= 2 and fi in info:
                    target = (m, (fi, mi), e)
                    break
            if target:
                break
        if target is None:
            return p
        m, key, e = target
        c = p.pop(m)
        k, r = divmod(e, 2)
        rest = []
        for g, ge in m:
            if g == key:
                if r:
                    rest.append((g, r))
            else:
                rest.append((g, ge))
        rest = tuple(rest)
        repl = bk.poly_pow(info[key[0]], k)
        term = bk.poly_mul_mono(repl, rest, c)
        p = bk.poly_add(p, term)


def _ext_split(p, fi):
    """Split p = a + g*b by the degree (0/1) of extension generator fi."""
    a, b = {}, {}
    for m, c in p.items():
        deg = 0
        rest = []
        for g, e in m:
            if g[0] == fi:
                deg = e
            else:
                rest.append((g, e))
        if deg == 0:
            a[m] = c
        else:
            b[tuple(rest)] = c
    return a, b


def _reduce_ext_pair(space, num, den):
    info = _ext_info(space)
    if info:
        num = _reduce_ext_poly(space, num)
        den = _reduce_ext_poly(space, den)
        # rationalize: conjugate away extension generators from the denominator
        for fi, rel in info.items():
            while any(g[0] == fi for m in den for g, _ in m):
                a, b = _ext_split(den, fi)
                # (a + g b)(a - g b) = a^2 - rel b^2
                conj = bk.poly_sub(
                    a,
                    {bk.mono_mul(m, (((fi, ()), 1),)): c for m, c in b.items()},
                )
                num = _reduce_ext_poly(space, bk.poly_mul(num, conj))
                den = bk.poly_sub(
                    bk.poly_mul(a, a), bk.poly_mul(rel, bk.poly_mul(b, b))
                )
                den = _reduce_ext_poly(space, den)
    return num, den


def _monic(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    _, lc = bk.poly_leading(den)
    if lc != 1:
        inv = 1 / lc
        num = bk.poly_scale(num, inv)
        den = bk.poly_scale(den, inv)
    return num, den


def _canonicalize(space, num, den):
    num, den = _reduce_ext_pair(space, num, den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, dict(_ONE_POLY)
    if den != _ONE_POLY:
        g = poly_gcd(num, den)
        if g != _ONE_POLY and g:
            num = bk.poly_divexact(num, g)
            den = bk.poly_divexact(den, g)
    return _monic(num, den)


# -- calculus helpers -------------------------------------------------------


def _ext_derivative(space, fi, var_name):
    """d(generator)/d(var) via the defining relation g^2 = R:
    dg = dR / (2 g).  Cached per (generator, variable)."""
    cache = getattr(space, "_ext_dcache", None)
    if cache is None:
        cache = {}
        space._ext_dcache = cache
    got = cache.get((fi, var_name))
    if got is not None:
        return got
    f = space.fields[fi]
    rkind, rval = f.relation
    if rkind == "const":
        out = Expression.zero(space)
    else:
        R = Expression.field(space, rval)
        dR = _differentiate(R, var_name)
        if dR.is_zero():
            out = Expression.zero(space)
        else:
            g = Expression.atom(space, (fi, ()))
            out = dR / (Expression.const(space, 2) * g)
    cache[(fi, var_name)] = out
    return out


def _poly_diff(space, p, var_name):
    """Total derivative of a polynomial: (polynomial part, extension part)."""
    out = {}
    ext_parts = None
    vi_cache = {}
    for m, c in p.items():
        for idx, (key, e) in enumerate(m):
            fi, mi = key
            f = space.fields[fi]
            if f.kind == "constant":
                continue
            if f.kind == "extension":
                dg = _ext_derivative(space, fi, var_name)
                if dg.is_zero():
                    continue
                rest = list(m)
                if e == 1:
                    del rest[idx]
                else:
                    rest[idx] = (key, e - 1)
                factor = Expression(
                    space, {tuple(rest): c * e}, dict(_ONE_POLY)
                )
                term = factor * dg
                ext_parts = term if ext_parts is None else ext_parts + term
                continue
            bumped = vi_cache.get(key)
            if bumped is None:
                bumped = space.bump(key, var_name)
                vi_cache[key] = bumped if bumped is not None else False
            if bumped is False or bumped is None:
                continue
            rest = list(m)
            if e == 1:
                del rest[idx]
            else:
                rest[idx] = (key, e - 1)
            newm = bk.mono_mul(tuple(sorted(rest)), ((bumped, 1),))
            cur = out.get(newm)
            nc = c * e
            if cur is None:
                out[newm] = nc
            else:
                s = cur + nc
                if s:
                    out[newm] = s
                else:
                    del out[newm]
    return out, ext_parts


def _differentiate(e, var_name):
    space = e.space
    if var_name not in space.var_index:
        raise ExprError(f"undeclared variable {var_name!r}")
    dn_poly, dn_ext = _poly_diff(space, e.num, var_name)
    if e.den == _ONE_POLY:
        out = Expression(space, dn_poly)
        if dn_ext is not None:
            out = out + dn_ext
        return out
    dd_poly, dd_ext = _poly_diff(space, e.den, var_name)
    dnum = Expression(space, dn_poly)
    if dn_ext is not None:
        dnum = dnum + dn_ext
    dden = Expression(space, dd_poly)
    if dd_ext is not None:
        dden = dden + dd_ext
    # (n/d)' = (n'd - nd')/d^2
    n_expr = Expression(space, dict(e.num))
    d_expr = Expression(space, dict(e.den))
    return (dnum * d_expr - n_expr * dden) / (d_expr * d_expr)


def _poly_substitute(space, p, jet_image):
    """Map a polynomial through per-jet images (Expression-valued)."""
    if not p:
        return Expression.zero(space)
    total = Expression.zero(space)
    pow_cache = {}
    for m, c in p.items():
        term = Expression.const(space, c)
        for key, e in m:
            img = jet_image(key)
            pe = pow_cache.get((key, e))
            if pe is None:
                pe = img ** e
                pow_cache[(key, e)] = pe
            term = term * pe
        total = total + term
    return total


def _poly_in_var(p, key):
    """Split p by powers of one jet variable: {power: poly-without-key}."""
    parts = {}
    for m, c in p.items():
        deg = 0
        rest = []
        for g, e in m:
            if g == key:
                deg = e
            else:
                rest.append((g, e))
        d = parts.setdefault(deg, {})
        rest = tuple(rest)
        cur = d.get(rest)
        d[rest] = c if cur is None else cur + c
    return {
        deg: {m: c for m, c in d.items() if c} for deg, d in parts.items()
    }


def _poly_subst_var(space, p, key, repl):
    parts = _poly_in_var(p, key)
    parts = {d: q for d, q in parts.items() if q}
    if not parts:
        return Expression.zero(space)
    if set(parts) == {0}:
        return Expression(space, parts[0])
    max_d = max(parts)
    acc = Expression(space, parts.get(max_d, {}))
    for d in range(max_d - 1, -1, -1):
        acc = acc * repl + Expression(space, parts.get(d, {}))
    return acc


def _poly_eval(space, p, point):
    re_t, im_t = Fraction(0), Fraction(0)
    info = _ext_info(space)
    for m, c in p.items():
        vr, vi = Fraction(c), Fraction(0)
        for key, e in m:
            fi = key[0]
            f = space.fields[fi]
            if f.kind == "extension" and f.relation == ("const", Fraction(-1)):
                # imaginary unit; extension reduction keeps e <= 1
                for _ in range(e):
                    vr, vi = -vi, vr
                continue
            val = point.get(key)
            if val is None:
                val = point.get(space.jet_name(key), Fraction(0))
            val = Fraction(val)
            for _ in range(e):
                vr, vi = vr * val, vi * val
        re_t += vr
        im_t += vi
    return (re_t, im_t)
