# cython: language_level=3, boundscheck=False
"""Compiled integer polynomial kernels; mirrors hprig._purekernels."""
from math import gcd


cpdef list poly_mul(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef list out = [0] * (na + nb - 1)
    cdef object ai
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(nb):
            out[i + j] = out[i + j] + ai * b[j]
    return out


cpdef int sign_at(list coeffs, object p, object q):
    cdef Py_ssize_t n = len(coeffs), i
    cdef object acc = coeffs[0]
    cdef object qpow = 1
    for i in range(1, n):
        qpow = qpow * q
        acc = acc * p + coeffs[i] * qpow
    if acc > 0:
        return 1
    if acc < 0:
        return -1
    return 0


cpdef int variations_at(list chain, object p, object q):
    cdef int count = 0, last = 0, s
    cdef list f
    for f in chain:
        s = sign_at(f, p, q)
        if s == 0:
            continue
        if last != 0 and s != last:
            count += 1
        last = s
    return count


cpdef object content(list coeffs):
    cdef object g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


cpdef list primitive(list coeffs):
    cdef object g = content(coeffs)
    if g <= 1:
        return list(coeffs)
    return [c // g for c in coeffs]


cpdef list pseudo_rem(list a, list b):
    cdef list r = list(a)
    cdef object lb = b[0], lr
    cdef Py_ssize_t db = len(b) - 1, delta = len(a) - len(b) + 1, step, j, i
    if delta <= 0:
        return r
    for step in range(delta):
        lr = r[0]
        r = [lb * c for c in r]
        for j in range(1, db + 1):
            r[j] = r[j] - lr * b[j]
        del r[0]
    i = 0
    while i < len(r) and r[i] == 0:
        i += 1
    return r[i:]


cpdef list sturm_chain(list f):
    cdef Py_ssize_t n = len(f) - 1, i, k
    cdef list f0 = primitive(f), f1, chain, a, b, r
    cdef int flip
    if n == 0:
        return [f0]
    f1 = primitive([f[i] * (n - i) for i in range(n)])
    chain = [f0, f1]
    while len(chain[-1]) > 1:
        a = chain[-2]
        b = chain[-1]
        r = pseudo_rem(a, b)
        if not r:
            break
        k = len(a) - len(b) + 1
        flip = -1 if (b[0] < 0 and k % 2 == 1) else 1
        r = primitive(r)
        chain.append([-flip * c for c in r])
    return chain
