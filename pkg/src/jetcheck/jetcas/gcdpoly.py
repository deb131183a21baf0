"""Multivariate polynomial gcd over Q.

Tiered strategy tuned to the denominators this engine actually
produces (powers of single jet variables and short sums thereof):

1. rational + monomial content extraction,
2. equality / exact-division shortcuts,
3. subresultant pseudo-remainder sequence in a main variable, with
   contents handled recursively.

The result is primitive with integer, gcd-1 coefficients and positive
leading coefficient, times the common monomial/rational content.
"""

from fractions import Fraction
from math import gcd as int_gcd, lcm as int_lcm

from . import backend as bk

_ONE = Fraction(1)


def _content_split(p):
    """p = c * m * primitive. Returns (c: Fraction, m: monomial, primitive)."""
    items = list(p.items())
    num_gcd = 0
    den_lcm = 1
    for _, c in items:
        num_gcd = int_gcd(num_gcd, c.numerator)
        den_lcm = int_lcm(den_lcm, c.denominator)
    c = Fraction(num_gcd, den_lcm)
    # common monomial: min exponent per generator across all terms
    common = dict(items[0][0])
    for m, _ in items[1:]:
        if not common:
            break
        here = dict(m)
        for g in list(common):
            e = here.get(g, 0)
            if e < common[g]:
                if e:
                    common[g] = e
                else:
                    del common[g]
    mono = tuple(sorted(common.items()))
    primitive = {bk.mono_div(m, mono): v / c for m, v in items}
    lead_m, lead_c = bk.poly_leading(primitive)
    if lead_c < 0:
        primitive = bk.poly_neg(primitive)
        c = -c
    return c, mono, primitive


def _mono_gcd(a, b):
    da, db = dict(a), dict(b)
    out = []
    for g, e in a:
        eb = db.get(g, 0)
        if eb:
            out.append((g, min(e, eb)))
    return tuple(sorted(out))


def _frac_gcd(a, b):
    # gcd of two rationals: gcd of numerators over lcm of denominators
    return Fraction(
        int_gcd(abs(a.numerator), abs(b.numerator)),
        int_lcm(a.denominator, b.denominator),
    )


def _generators(p):
    gens = set()
    for m in p:
        for g, _ in m:
            gens.add(g)
    return gens


def _max_deg_in(p, v):
    d = 0
    for m in p:
        for g, e in m:
            if g == v and e > d:
                d = e
    return d


def _to_univar(p, v):
    """Split p into {degree_in_v: coefficient poly without v}."""
    out = {}
    for m, c in p.items():
        deg = 0
        rest = []
        for g, e in m:
            if g == v:
                deg = e
            else:
                rest.append((g, e))
        coeff = out.setdefault(deg, {})
        rest = tuple(rest)
        cur = coeff.get(rest)
        coeff[rest] = c if cur is None else cur + c
    return {d: {m: c for m, c in q.items() if c} for d, q in out.items() if q}


def _from_univar(u, v):
    out = {}
    for d, coeff in u.items():
        vm = ((v, d),) if d else ()
        for m, c in coeff.items():
            out[bk.mono_mul(m, vm)] = c
    return out


def _u_deg(u):
    return max(u) if u else -1


def _u_scale(u, poly):
    return {d: bk.poly_mul(c, poly) for d, c in u.items()}


def _u_sub(a, b):
    out = {d: dict(c) for d, c in a.items()}
    for d, c in b.items():
        cur = out.get(d)
        if cur is None:
            out[d] = bk.poly_neg(c)
        else:
            r = bk.poly_sub(cur, c)
            if r:
                out[d] = r
            else:
                del out[d]
    return out


def _u_shift(u, k):
    return {d + k: c for d, c in u.items()}


def _pseudo_rem(a, b):
    """Pseudo-remainder of univariate-view polys: lc(b)^(da-db+1)*a mod b."""
    da, db = _u_deg(a), _u_deg(b)
    lc_b = b[db]
    r = {d: dict(c) for d, c in a.items()}
    k = da - db + 1
    while r and _u_deg(r) >= db:
        dr = _u_deg(r)
        lc_r = r[dr]
        r = _u_scale(r, lc_b)
        k -= 1
        r = _u_sub(r, _u_shift(_u_scale(b, lc_r), dr - db))
        if _u_deg(r) == dr:  # cancellation guard; should not happen
            raise ArithmeticError("pseudo-division failed to reduce degree")
    for _ in range(k):
        r = _u_scale(r, lc_b)
    return r


def _u_content(u):
    """Gcd of the coefficient polys (recursive multivariate gcd)."""
    polys = sorted(u.values(), key=len)
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p)
        if len(g) == 1 and () in g:
            break
    return g


def _u_divexact_poly(u, d):
    out = {}
    for k, c in u.items():
        q = bk.poly_divexact(c, d)
        if q is None:
            raise ArithmeticError("inexact content division in PRS")
        out[k] = q
    return out


def _prs_gcd(p, q, v):
    """Subresultant PRS gcd of primitive p, q in main variable v."""
    a, b = _to_univar(p, v), _to_univar(q, v)
    if _u_deg(a) < _u_deg(b):
        a, b = b, a
    cont_a, cont_b = _u_content(a), _u_content(b)
    a = _u_divexact_poly(a, cont_a)
    b = _u_divexact_poly(b, cont_b)
    cont = poly_gcd(cont_a, cont_b)
    one = {(): _ONE}
    g, h = dict(one), dict(one)
    while True:
        delta = _u_deg(a) - _u_deg(b)
        r = _pseudo_rem(a, b)
        if not r:
            break
        if _u_deg(r) == 0:
            b = {0: dict(one)}
            break
        divisor = bk.poly_mul(g, bk.poly_pow(h, delta))
        a, b = b, _u_divexact_poly(r, divisor)
        g = a[_u_deg(a)]
        if delta == 0:
            pass  # h unchanged
        elif delta == 1:
            h = dict(g)
        else:
            num = bk.poly_pow(g, delta)
            den = bk.poly_pow(h, delta - 1)
            h = bk.poly_divexact(num, den)
            if h is None:
                raise ArithmeticError("subresultant h update not exact")
    b = _u_divexact_poly(b, _u_content(b))
    core = _from_univar(b, v)
    _, _, core = _content_split(core)
    return bk.poly_mul(cont, core)


def poly_gcd(p, q):
    """Gcd of two polynomials; {(): 1} when coprime, {} only if both zero."""
    if not p and not q:
        return {}
    if not p:
        _, m, prim = _content_split(q)
        return bk.poly_mul_mono(prim, m, _ONE)
    if not q:
        _, m, prim = _content_split(p)
        return bk.poly_mul_mono(prim, m, _ONE)
    _, mp, pp = _content_split(p)
    _, mq, pq = _content_split(q)
    mono = _mono_gcd(mp, mq)
    if pp == pq:
        core = pp
    elif len(pp) == 1 or len(pq) == 1:
        # primitive monomials have empty monomial part: gcd core is 1
        core = {(): _ONE}
    else:
        core = None
        trial = bk.poly_divexact(pp, pq) if len(pp) >= len(pq) else None
        if trial is not None:
            core = pq
        else:
            trial = bk.poly_divexact(pq, pp) if len(pq) >= len(pp) else None
            if trial is not None:
                core = pp
        if core is None:
            shared = _generators(pp) & _generators(pq)
            if not shared:
                core = {(): _ONE}
            else:
                v = min(shared, key=lambda g: _max_deg_in(pp, g) + _max_deg_in(pq, g))
                core = _prs_gcd(pp, pq, v)
    _, _, core = _content_split(core)
    return bk.poly_mul_mono(core, mono, _ONE)
