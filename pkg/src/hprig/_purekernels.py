"""Pure-Python integer polynomial kernels.

Polynomials are lists of Python ints in descending order (leading
coefficient first). ``hprig._speedups`` provides compiled versions of the
same functions with identical signatures and results.
"""
from math import gcd


def poly_mul(a, b):
    """Convolution of two descending coefficient lists."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def sign_at(coeffs, p, q):
    """Sign of the polynomial at the rational p/q (q > 0).

    Homogeneous Horner: evaluates q**d * f(p/q) without division.
    """
    acc = coeffs[0]
    qpow = 1
    for c in coeffs[1:]:
        qpow *= q
        acc = acc * p + c * qpow
    return (acc > 0) - (acc < 0)


def variations_at(chain, p, q):
    """Number of sign variations of a polynomial chain at p/q, zeros skipped."""
    count = 0
    last = 0
    for f in chain:
        s = sign_at(f, p, q)
        if s == 0:
            continue
        if last != 0 and s != last:
            count += 1
        last = s
    return count


def content(coeffs):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(coeffs):
    """Divide out the integer content, keeping the sign of every entry."""
    g = content(coeffs)
    if g <= 1:
        return list(coeffs)
    return [c // g for c in coeffs]


def pseudo_rem(a, b):
    """Remainder of lc(b)**(deg a - deg b + 1) * a divided by b."""
    r = list(a)
    lb = b[0]
    db = len(b) - 1
    delta = len(a) - len(b) + 1
    if delta <= 0:
        return r
    for _ in range(delta):
        lr = r[0]
        r = [lb * c for c in r]
        for j in range(1, db + 1):
            r[j] -= lr * b[j]
        r.pop(0)
    i = 0
    while i < len(r) and r[i] == 0:
        i += 1
    return r[i:]


def sturm_chain(f):
    """Sturm sequence of f over the integers.

    Each term is primitive and differs from the classical Sturm term
    (negated Euclidean remainder) by a positive factor only, so sign
    variation counts are unchanged.
    """
    n = len(f) - 1
    f0 = primitive(f)
    if n == 0:
        return [f0]
    f1 = primitive([c * (n - i) for i, c in enumerate(f[:-1])])
    chain = [f0, f1]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = pseudo_rem(a, b)
        if not r:
            break
        # prem = lc(b)^k * rem; restore the sign of -rem
        k = len(a) - len(b) + 1
        flip = -1 if (b[0] < 0 and k % 2 == 1) else 1
        r = primitive(r)
        chain.append([-flip * c for c in r])
    return chain
