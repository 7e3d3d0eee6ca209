"""Pure-Python arithmetic kernels for sparse Laurent polynomials in q^(1/2).

A polynomial is a tuple of ``(doubled_exponent, int)`` pairs sorted by
exponent with no zero coefficients.  The compiled module ``_ckernels``
implements the same three functions.
"""


def poly_add(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    append = out.append
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ea, ca = a[i]
        eb, cb = b[j]
        if ea == eb:
            c = ca + cb
            if c:
                append((ea, c))
            i += 1
            j += 1
        elif ea < eb:
            append(a[i])
            i += 1
        else:
            append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    elif j < lb:
        out.extend(b[j:])
    return tuple(out)


def poly_mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        ea, ca = a[0]
        return tuple((ea + e, ca * c) for e, c in b)
    if len(b) == 1:
        eb, cb = b[0]
        return tuple((e + eb, c * cb) for e, c in a)
    acc = {}
    get = acc.get
    for ea, ca in a:
        for eb, cb in b:
            e = ea + eb
            acc[e] = get(e, 0) + ca * cb
    return tuple(sorted(item for item in acc.items() if item[1]))


def poly_div_alpha(a):
    """Quotient ``a / (q + q^-1)`` if exact, else ``None``."""
    if not a:
        return ()
    # alpha vanishes exactly at the primitive 8th roots of unity for q^(1/2)
    z0 = z1 = z2 = z3 = 0
    for e, c in a:
        m, r = divmod(e, 4)
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
    rem = dict(a)
    lo = a[0][0]
    quot = []
    e = a[-1][0]
    while e >= lo + 4:
        c = rem.pop(e, 0)
        if c:
            quot.append((e - 2, c))
            f = e - 4
            v = rem.get(f, 0) - c
            if v:
                rem[f] = v
            else:
                rem.pop(f, None)
        e -= 1
    if rem:
        return None
    quot.reverse()
    return tuple(quot)
