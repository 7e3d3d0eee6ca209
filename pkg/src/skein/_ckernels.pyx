# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the sparse Laurent kernels in ``_pykernels``.

Exponents are C longs; coefficients stay Python ints (unbounded).
"""


def poly_add(tuple a, tuple b):
    if not a:
        return b
    if not b:
        return a
    cdef Py_ssize_t i = 0, j = 0, la = len(a), lb = len(b)
    cdef long ea, eb
    cdef list out = []
    cdef tuple pa, pb
    while i < la and j < lb:
        pa = <tuple>a[i]
        pb = <tuple>b[j]
        ea = pa[0]
        eb = pb[0]
        if ea == eb:
            c = pa[1] + pb[1]
            if c:
                out.append((ea, c))
            i += 1
            j += 1
        elif ea < eb:
            out.append(pa)
            i += 1
        else:
            out.append(pb)
            j += 1
    if i < la:
        out.extend(a[i:])
    elif j < lb:
        out.extend(b[j:])
    return tuple(out)


def poly_mul(tuple a, tuple b):
    if not a or not b:
        return ()
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, span, k
    cdef long lo, hi, e, ea
    cdef tuple pa, pb
    if la == 1:
        pa = <tuple>a[0]
        ea = pa[0]
        ca = pa[1]
        return tuple([(ea + <long>(<tuple>p)[0], ca * (<tuple>p)[1]) for p in b])
    if lb == 1:
        pb = <tuple>b[0]
        ea = pb[0]
        cb = pb[1]
        return tuple([(<long>(<tuple>p)[0] + ea, (<tuple>p)[1] * cb) for p in a])
    lo = <long>(<tuple>a[0])[0] + <long>(<tuple>b[0])[0]
    hi = <long>(<tuple>a[la - 1])[0] + <long>(<tuple>b[lb - 1])[0]
    span = hi - lo + 1
    cdef list acc = [0] * span
    for i in range(la):
        pa = <tuple>a[i]
        ea = pa[0]
        ca = pa[1]
        for j in range(lb):
            pb = <tuple>b[j]
            k = ea + <long>pb[0] - lo
            acc[k] = acc[k] + ca * pb[1]
    cdef list out = []
    for k in range(span):
        c = acc[k]
        if c:
            out.append((lo + k, c))
    return tuple(out)


def poly_div_alpha(tuple a):
    """Quotient ``a / (q + q^-1)`` if exact, else ``None``."""
    if not a:
        return ()
    cdef long e, m, r, lo, hi, span, k
    cdef tuple p
    z0 = z1 = z2 = z3 = 0
    for p in a:
        e = p[0]
        c = p[1]
        m = e // 4
        r = e - 4 * m
        if m & 1:
            c = -c
        if r == 0:
            z0 += c
        elif r == 1:
            z1 += c
        elif r == 2:
            z2 += c
        else:
            z3 += c
    if z0 or z1 or z2 or z3:
        return None
    lo = (<tuple>a[0])[0]
    hi = (<tuple>a[len(a) - 1])[0]
    span = hi - lo + 1
    cdef list rem = [0] * span
    for p in a:
        rem[<long>p[0] - lo] = p[1]
    cdef list quot = []
    k = span - 1
    while k >= 4:
        c = rem[k]
        if c:
            rem[k] = 0
            quot.append((lo + k - 2, c))
            rem[k - 4] = rem[k - 4] - c
        k -= 1
    for k in range(min(span, 4)):
        if rem[k]:
            return None
    quot.reverse()
    return tuple(quot)
