# cython: language_level=3, boundscheck=False, wraparound=False
"""Dict-of-monomials polynomial kernels (compiled backend).

Same data layout and semantics as _polycore_py: polynomials are dicts
mapping sorted (generator, exponent) pair tuples to Fraction
coefficients.  Coefficients stay Python objects (exact rationals); the
win over the pure backend is C-level dispatch in the merge/multiply
inner loops, which dominate reduce-heavy verification runs.
"""

from fractions import Fraction

BACKEND_NAME = "cython"

_ZERO = Fraction(0)


def mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    if na == 0:
        return b
    if nb == 0:
        return a
    out = []
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
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


def mono_deg(tuple m):
    cdef Py_ssize_t i
    total = 0
    for i in range(len(m)):
        total += m[i][1]
    return total


def mono_divides(tuple d, tuple m):
    cdef Py_ssize_t j = 0, nm = len(m)
    for g, e in d:
        while j < nm and m[j][0] < g:
            j += 1
        if j >= nm or m[j][0] != g or m[j][1] < e:
            return False
        j += 1
    return True


def mono_div(tuple m, tuple d):
    cdef Py_ssize_t j = 0, nd = len(d)
    out = []
    for g, e in m:
        if j < nd and d[j][0] == g:
            r = e - d[j][1]
            j += 1
            if r:
                out.append((g, r))
        else:
            out.append((g, e))
    return tuple(out)


def mono_cmp(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    da = mono_deg(a)
    db = mono_deg(b)
    if da != db:
        return -1 if da < db else 1
    while i < na and j < nb:
        ga, ea = a[i]
        gb, eb = b[j]
        if ga == gb:
            if ea != eb:
                return 1 if ea > eb else -1
            i += 1
            j += 1
        elif ga < gb:
            return 1
        else:
            return -1
    if i < na:
        return 1
    if j < nb:
        return -1
    return 0


def poly_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    for m, c in b.items():
        cur = out.get(m)
        if cur is None:
            out[m] = c
        else:
            s = cur + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def poly_sub(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    for m, c in b.items():
        cur = out.get(m)
        if cur is None:
            out[m] = -c
        else:
            s = cur - c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def poly_neg(dict a):
    cdef dict out = {}
    for m, c in a.items():
        out[m] = -c
    return out


def poly_scale(dict a, c):
    if not c:
        return {}
    if c == 1:
        return dict(a)
    cdef dict out = {}
    for m, v in a.items():
        out[m] = v * c
    return out


def poly_mul_mono(dict a, tuple m, c):
    if not c:
        return {}
    if len(m) == 0 and c == 1:
        return dict(a)
    cdef dict out = {}
    for ma, ca in a.items():
        out[mono_mul(ma, m)] = ca * c
    return out


def poly_mul(dict a, dict b):
    if not a or not b:
        return {}
    if len(b) > len(a):
        a, b = b, a
    if len(b) == 1:
        for m, c in b.items():
            return poly_mul_mono(a, m, c)
    cdef dict out = {}
    cdef list items_a = list(a.items())
    cdef Py_ssize_t i, na = len(items_a)
    for mb, cb in b.items():
        for i in range(na):
            ma, ca = items_a[i]
            m = mono_mul(ma, mb)
            c = ca * cb
            cur = out.get(m)
            if cur is None:
                out[m] = c
            else:
                s = cur + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out


def poly_pow(dict a, k):
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


def poly_leading(dict a):
    best_m = None
    best_c = None
    for m, c in a.items():
        if best_m is None or mono_cmp(m, best_m) > 0:
            best_m, best_c = m, c
    return best_m, best_c


def poly_divexact(dict a, dict b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    lead_b, cb = poly_leading(b)
    cdef list b_items = list(b.items())
    cdef dict q = {}
    cdef dict r = dict(a)
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
