"""Dict-of-monomials polynomial kernels (pure-Python backend).

A polynomial is a dict mapping monomials to fractions.Fraction
coefficients; the zero polynomial is the empty dict.  A monomial is a
tuple of (generator, exponent) pairs sorted by generator, all exponents
positive; the empty tuple is the monomial 1.  Generators are arbitrary
hashable, totally ordered objects -- the expression layer uses
(field_index, multi_index) tuples.

The monomial order used for leading terms is graded lexicographic:
total degree first, then, walking the union of generators in ascending
generator order, the first differing exponent decides (larger exponent
wins).  This order is multiplicative, which poly_divexact relies on.

jetcheck.jetcas.backend selects either this module or the compiled
_polycore extension at import time; both expose the same functions with
identical semantics.
"""

from fractions import Fraction

BACKEND_NAME = "python"

_ZERO = Fraction(0)


def mono_mul(a, b):
    """Product of two monomials (merge sorted pair tuples)."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ga, ea = a[i]
        gb, eb = b[j]
        if ga == gb:
            out.append((ga, ea + eb))
            i += 1
            j += 1
        elif ga < gb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_deg(m):
    return sum(e for _, e in m)


def mono_divides(d, m):
    """True if monomial d divides monomial m."""
    j = 0
    nm = len(m)
    for g, e in d:
        while j < nm and m[j][0] < g:
            j += 1
        if j >= nm or m[j][0] != g or m[j][1] < e:
            return False
        j += 1
    return True


def mono_div(m, d):
    """Quotient m / d; assumes d divides m."""
    out = []
    j = 0
    for g, e in m:
        if j < len(d) and d[j][0] == g:
            r = e - d[j][1]
            j += 1
            if r:
                out.append((g, r))
        else:
            out.append((g, e))
    return tuple(out)


def mono_cmp(a, b):
    """-1/0/+1 under the graded-lex order described in the module docs."""
    da, db = mono_deg(a), mono_deg(b)
    if da != db:
        return -1 if da < db else 1
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ga, ea = a[i]
        gb, eb = b[j]
        if ga == gb:
            if ea != eb:
                return 1 if ea > eb else -1
            i += 1
            j += 1
        elif ga < gb:
            # a has a positive exponent at an earlier generator
            return 1
        else:
            return -1
    if i < na:
        return 1
    if j < nb:
        return -1
    return 0


def poly_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    get = out.get
    for m, c in b.items():
        cur = get(m)
        if cur is None:
            out[m] = c
        else:
            s = cur + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def poly_sub(a, b):
    if not b:
        return dict(a)
    out = dict(a)
    get = out.get
    for m, c in b.items():
        cur = get(m)
        if cur is None:
            out[m] = -c
        else:
            s = cur - c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def poly_neg(a):
    return {m: -c for m, c in a.items()}


def poly_scale(a, c):
    if not c:
        return {}
    if c == 1:
        return dict(a)
    return {m: v * c for m, v in a.items()}


def poly_mul_mono(a, m, c):
    """a * (c * m) for a single scaled monomial."""
    if not c:
        return {}
    if not m and c == 1:
        return dict(a)
    out = {}
    for ma, ca in a.items():
        out[mono_mul(ma, m)] = ca * c
    return out


def poly_mul(a, b):
    if not a or not b:
        return {}
    if len(b) > len(a):
        a, b = b, a
    if len(b) == 1:
        (m, c), = b.items()
        return poly_mul_mono(a, m, c)
    out = {}
    get = out.get
    items_a = list(a.items())
    for mb, cb in b.items():
        for ma, ca in items_a:
            m = mono_mul(ma, mb)
            c = ca * cb
            cur = get(m)
            if cur is None:
                out[m] = c
            else:
                s = cur + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out


def poly_pow(a, k):
    if k == 0:
        return {(): Fraction(1)}
    if k == 1:
        return dict(a)
    result = None
    base = a
    while k:
        if k & 1:
            result = dict(base) if result is None else poly_mul(result, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


def poly_leading(a):
    """(monomial, coeff) of the leading term under mono_cmp; a nonzero."""
    it = iter(a.items())
    best_m, best_c = next(it)
    for m, c in it:
        if mono_cmp(m, best_m) > 0:
            best_m, best_c = m, c
    return best_m, best_c


def poly_divexact(a, b):
    """a / b if b divides a exactly, else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    lead_b, cb = poly_leading(b)
    b_items = list(b.items())
    q = {}
    r = dict(a)
    while r:
        lead_r, cr = poly_leading(r)
        if not mono_divides(lead_b, lead_r):
            return None
        m = mono_div(lead_r, lead_b)
        c = cr / cb
        q[m] = c
        for mb, vb in b_items:
            mm = mono_mul(m, mb)
            nv = r.get(mm, _ZERO) - c * vb
            if nv:
                r[mm] = nv
            elif mm in r:
                del r[mm]
    return q
