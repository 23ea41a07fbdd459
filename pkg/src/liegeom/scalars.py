"""Scalar modes, tolerance policy, and exact/approximate linear algebra.

Two scalar modes exist.  In exact mode every value is an int or a
``fractions.Fraction`` and arithmetic never rounds; in approx mode values
are binary64 floats and all zero/equality decisions go through a
:class:`Tolerances` policy.  The mode is a property of a whole algebra
instance, and a single computation never mixes modes (conversion is an
explicit copy, see :func:`as_mode`).

Matrices are plain lists of row lists; this module provides the dense
kernels every other module builds on: rank (fraction-free Bareiss in
exact mode, scaled partial pivoting in approx mode), reduced row echelon
form, nullspaces, linear solves, determinants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

EXACT = "exact"
APPROX = "approx"
MODES = (EXACT, APPROX)


@dataclass(frozen=True)
class Tolerances:
    """Thresholds used by approx-mode predicates; ignored in exact mode."""

    zero_eps: float = 1e-9
    integrality_eps: float = 1e-6

    def __post_init__(self):
        if self.zero_eps <= 0 or self.integrality_eps <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerances()


def is_exact_value(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}")
    return mode


def as_mode(x, mode: str):
    """Coerce a number (or numeric string) into the given mode's scalar type."""
    if isinstance(x, str):
        return parse_scalar(x, mode)
    if mode == EXACT:
        if is_exact_value(x):
            return Fraction(x)
        if isinstance(x, float):
            if not x.is_integer():
                raise ValueError(
                    f"refusing to coerce non-integral float {x!r} into exact mode; "
                    "pass a Fraction or a 'p/q' string"
                )
            return Fraction(int(x))
        raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")
    return float(x)


def parse_scalar(text: str, mode: str):
    """Parse ``"3/7"``, ``"-2"`` or ``"0.25"``.

    Decimal strings are parsed as exact rationals in exact mode, so corpus
    files round-trip without drift.
    """
    text = text.strip()
    if mode == EXACT:
        return Fraction(text)
    return float(Fraction(text)) if "/" in text else float(text)


def scalar_str(x) -> str:
    if is_exact_value(x):
        return str(Fraction(x))
    return repr(float(x))


def to_float(x) -> float:
    return float(x)


def near_zero(x, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Exact scalars compare against 0; floats against ``tol.zero_eps``."""
    if is_exact_value(x):
        return x == 0
    return abs(x) <= tol.zero_eps


def near_equal(x, y, tol: Tolerances = DEFAULT_TOL) -> bool:
    return near_zero(x - y, tol)


# ---------------------------------------------------------------------------
# vectors and matrices (lists of rows)

def zero_vector(n, mode=EXACT):
    z = Fraction(0) if mode == EXACT else 0.0
    return [z] * n


def zero_matrix(m, n, mode=EXACT):
    return [zero_vector(n, mode) for _ in range(m)]


def identity(n, mode=EXACT):
    one = Fraction(1) if mode == EXACT else 1.0
    M = zero_matrix(n, n, mode)
    for i in range(n):
        M[i][i] = one
    return M


def copy_matrix(M):
    return [row[:] for row in M]


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, u):
    return [c * a for a in u]


def vec_dot(u, v):
    return sum((a * b for a, b in zip(u, v)), start=0 * u[0]) if u else 0


def mat_vec(M, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in M]


def mat_mul(A, B):
    Bt = transpose(B)
    return [[sum(ra[k] * cb[k] for k in range(len(ra))) for cb in Bt] for ra in A]


def mat_add(A, B):
    return [vec_add(a, b) for a, b in zip(A, B)]


def mat_sub(A, B):
    return [vec_sub(a, b) for a, b in zip(A, B)]


def mat_scale(c, A):
    return [vec_scale(c, r) for r in A]


def mat_trace(A):
    return sum(A[i][i] for i in range(len(A)))


def max_abs(M) -> float:
    best = 0.0
    for row in M:
        for x in row:
            a = abs(float(x))
            if a > best:
                best = a
    return best


def vec_is_zero(v, tol: Tolerances = DEFAULT_TOL) -> bool:
    return all(near_zero(x, tol) for x in v)


def mat_is_zero(M, tol: Tolerances = DEFAULT_TOL) -> bool:
    return all(vec_is_zero(r, tol) for r in M)


def mat_mode(M) -> str:
    for row in M:
        for x in row:
            if not is_exact_value(x):
                return APPROX
    return EXACT


def to_float_matrix(M):
    return [[float(x) for x in row] for row in M]


def to_float_vector(v):
    return [float(x) for x in v]


# ---------------------------------------------------------------------------
# rank

def _integerize_rows(M):
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in M:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _rank_exact(M) -> int:
    """Row rank by fraction-free (Bareiss) elimination on integerized rows."""
    m = _integerize_rows(M)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    prev = 1
    r0 = 0
    for col in range(ncols):
        piv = next((r for r in range(r0, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[r0], m[piv] = m[piv], m[r0]
        for r in range(r0 + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[r][c] * m[r0][col] - m[r][col] * m[r0][c]) // prev
            m[r][col] = 0
        prev = m[r0][col]
        rank += 1
        r0 += 1
        if r0 == nrows:
            break
    return rank


def _rank_approx(M, tol: Tolerances) -> int:
    """Numerical rank by scaled partial pivoting.

    A pivot counts while its magnitude stays above ``zero_eps`` relative to
    the largest pivot seen (the overall matrix scale seeds the threshold).
    """
    m = to_float_matrix(M)
    nrows, ncols = len(m), len(m[0]) if m else 0
    scale = max_abs(m)
    if scale == 0.0:
        return 0
    largest = scale
    rank = 0
    r0 = 0
    for col in range(ncols):
        piv, best = None, 0.0
        for r in range(r0, nrows):
            if abs(m[r][col]) > best:
                best, piv = abs(m[r][col]), r
        if piv is None or best <= tol.zero_eps * largest:
            continue
        largest = max(largest, best)
        m[r0], m[piv] = m[piv], m[r0]
        for r in range(r0 + 1, nrows):
            f = m[r][col] / m[r0][col]
            for c in range(col, ncols):
                m[r][c] -= f * m[r0][c]
        rank += 1
        r0 += 1
        if r0 == nrows:
            break
    return rank


def rank(M, tol: Tolerances = DEFAULT_TOL) -> int:
    if not M or not M[0]:
        return 0
    if mat_mode(M) == EXACT:
        return _rank_exact(M)
    return _rank_approx(M, tol)


# ---------------------------------------------------------------------------
# reduced row echelon form and friends

def rref(M, tol: Tolerances = DEFAULT_TOL):
    """Return (rows, pivot_columns) of the reduced row echelon form."""
    if not M or not M[0]:
        return [], []
    mode = mat_mode(M)
    m = copy_matrix(M) if mode == EXACT else to_float_matrix(M)
    nrows, ncols = len(m), len(m[0])
    eps = 0.0 if mode == EXACT else tol.zero_eps * max(max_abs(m), 1.0)
    pivots = []
    r0 = 0
    for col in range(ncols):
        if r0 == nrows:
            break
        if mode == EXACT:
            piv = next((r for r in range(r0, nrows) if m[r][col] != 0), None)
        else:
            piv, best = None, eps
            for r in range(r0, nrows):
                if abs(m[r][col]) > best:
                    best, piv = abs(m[r][col]), r
        if piv is None:
            continue
        m[r0], m[piv] = m[piv], m[r0]
        d = m[r0][col]
        m[r0] = [x / d for x in m[r0]]
        for r in range(nrows):
            if r != r0 and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[r0])]
        pivots.append(col)
        r0 += 1
    rows = m[: len(pivots)]
    if mode == APPROX:
        rows = [[0.0 if abs(x) <= eps else x for x in row] for row in rows]
    return rows, pivots


def nullspace(M, tol: Tolerances = DEFAULT_TOL):
    """Basis rows of the right nullspace {v : M v = 0}."""
    if not M or not M[0]:
        return []
    ncols = len(M[0])
    rows, pivots = rref(M, tol)
    mode = mat_mode(M)
    one = Fraction(1) if mode == EXACT else 1.0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = zero_vector(ncols, mode)
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve(A, b, tol: Tolerances = DEFAULT_TOL):
    """One solution of A x = b (free variables set to 0), or None."""
    aug = [row + [bv] for row, bv in zip(A, b)]
    rows, pivots = rref(aug, tol)
    ncols = len(A[0]) if A else 0
    if ncols in pivots:
        return None
    mode = mat_mode(aug)
    x = zero_vector(ncols, mode)
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return x


def invert(A, tol: Tolerances = DEFAULT_TOL):
    n = len(A)
    aug = [row + idr for row, idr in zip(A, identity(n, mat_mode(A)))]
    rows, pivots = rref(aug, tol)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows]


def det(A, tol: Tolerances = DEFAULT_TOL):
    n = len(A)
    if n == 0:
        return Fraction(1)
    mode = mat_mode(A)
    m = copy_matrix(A) if mode == EXACT else to_float_matrix(A)
    eps = 0.0 if mode == EXACT else tol.zero_eps * max(max_abs(m), 1.0)
    sign = 1
    d = Fraction(1) if mode == EXACT else 1.0
    for col in range(n):
        if mode == EXACT:
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        else:
            piv, best = None, eps
            for r in range(col, n):
                if abs(m[r][col]) > best:
                    best, piv = abs(m[r][col]), r
        if piv is None:
            return Fraction(0) if mode == EXACT else 0.0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        d *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return sign * d


def leading_minors(A, tol: Tolerances = DEFAULT_TOL):
    return [det([row[: k + 1] for row in A[: k + 1]], tol) for k in range(len(A))]


def random_fraction(rng, num_bound=9, den_bound=9) -> Fraction:
    num = rng.randint(-num_bound, num_bound)
    den = rng.randint(1, den_bound)
    return Fraction(num, den)
