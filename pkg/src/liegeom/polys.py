"""Polynomial helpers over exact rationals.

Characteristic polynomials come from the Faddeev-LeVerrier recursion (only
divisions by small integers, so results stay exact for Fraction matrices).
Real-root counting uses Sturm chains on the square-free part, which is how
exact mode decides "spectrum is real" / "spectrum is imaginary" without
floating point.

Polynomials are coefficient lists in descending degree order.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import identity, mat_add, mat_mul, mat_scale, mat_trace


def charpoly(M):
    """Coefficients [1, c1, ..., cn] of det(xI - M)."""
    from .scalars import mat_mode, EXACT

    n = len(M)
    mode = mat_mode(M)
    exact = mode == EXACT
    coeffs = [Fraction(1) if exact else 1.0]
    Mk = [row[:] for row in M]
    for k in range(1, n + 1):
        tr = mat_trace(Mk)
        ck = Fraction(-Fraction(tr), k) if exact else -tr / k
        coeffs.append(ck)
        if k < n:
            Mk = mat_mul(M, mat_add(Mk, mat_scale(ck, identity(n, mode))))
    return coeffs


def trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def degree(p) -> int:
    return len(trim(p)) - 1


def poly_eval(p, x):
    acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_divmod(p, q):
    p = [Fraction(c) for c in trim(p)]
    q = [Fraction(c) for c in trim(q)]
    if q == [Fraction(0)]:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    rem = p[:]
    while len(rem) >= len(q) and trim(rem) != [Fraction(0)]:
        rem = trim(rem)
        if len(rem) < len(q):
            break
        f = rem[0] / q[0]
        k = len(rem) - len(q)
        quot[len(quot) - 1 - k] += f
        rem = [rem[i] - f * (q[i] if i < len(q) else Fraction(0)) for i in range(len(rem))]
        rem = rem[1:] if rem and rem[0] == 0 else trim(rem)
    return trim(quot), trim(rem) if rem else [Fraction(0)]


def poly_gcd(p, q):
    a, b = trim([Fraction(c) for c in p]), trim([Fraction(c) for c in q])
    while b != [Fraction(0)]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a[0] != 0:
        a = [c / a[0] for c in a]
    return a


def poly_deriv(p):
    n = len(p) - 1
    if n == 0:
        return [Fraction(0)]
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def squarefree_part(p):
    p = trim([Fraction(c) for c in p])
    if degree(p) == 0:
        return p
    g = poly_gcd(p, poly_deriv(p))
    if degree(g) == 0:
        return p
    q, _ = poly_divmod(p, g)
    return q


def sturm_chain(p):
    chain = [trim(p), trim(poly_deriv(p))]
    while degree(chain[-1]) > 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        if trim(r) == [Fraction(0)]:
            break
        chain.append([-c for c in trim(r)])
    return chain


def _sign_at(p, x):
    """Sign of p at x, where x may be '+inf' or '-inf'."""
    p = trim(p)
    if x == "+inf":
        return (p[0] > 0) - (p[0] < 0)
    if x == "-inf":
        lead = p[0] if degree(p) % 2 == 0 else -p[0]
        return (lead > 0) - (lead < 0)
    v = poly_eval(p, Fraction(x))
    return (v > 0) - (v < 0)


def _variations(chain, x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def count_real_roots(p, lo="-inf", hi="+inf") -> int:
    """Distinct real roots of p in (lo, hi], via a Sturm chain on the
    square-free part."""
    s = squarefree_part(p)
    if degree(s) == 0:
        return 0
    chain = sturm_chain(s)
    return _variations(chain, lo) - _variations(chain, hi)


def spectrum_is_real(M) -> bool:
    """Exact test: every eigenvalue of the rational matrix M is real."""
    s = squarefree_part(charpoly(M))
    return count_real_roots(s) == degree(s)


def spectrum_is_imaginary(M) -> bool:
    """Exact test: every eigenvalue of M is purely imaginary (0 allowed).

    An eigenvalue t of M is imaginary iff t^2 is real and <= 0, so we test
    that M@M has an all-real spectrum with no positive eigenvalue.
    """
    M2 = mat_mul(M, M)
    s = squarefree_part(charpoly(M2))
    if count_real_roots(s) != degree(s):
        return False
    return count_real_roots(s, Fraction(0), "+inf") == 0


def _divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(p, max_candidates=20000):
    """All rational roots of p (exact), or None when the candidate set from
    the rational root theorem would be unreasonably large."""
    p = trim([Fraction(c) for c in p])
    roots = set()
    while p[-1] == 0 and degree(p) > 0:
        roots.add(Fraction(0))
        p = p[:-1]  # factor out x
    if degree(p) == 0:
        return sorted(roots)
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ip = [int(c * den) for c in p]
    cands_n = _divisors(ip[-1])
    cands_d = _divisors(ip[0])
    if len(cands_n) * len(cands_d) > max_candidates:
        return None
    for a in cands_n:
        for b in cands_d:
            for s in (1, -1):
                r = Fraction(s * a, b)
                if poly_eval(p, r) == 0:
                    roots.add(r)
    return sorted(roots)
