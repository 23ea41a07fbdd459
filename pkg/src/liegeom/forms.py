"""Exterior algebra on the dual of a Lie algebra.

KForm stores a degree-k alternating form as a map from strictly increasing
index tuples to coefficients; evaluation on arbitrary tuples picks up the
sign of the sorting permutation.  The differential is the alternating
insertion formula

    df(x_0,...,x_k) = sum_{a<b} (-1)^{a+b} f([x_a, x_b], x_0,...^a...^b...,x_k)

which in degree one reduces to  d(alpha)(x, y) = -alpha([x, y]).  The
twisted differential subtracts theta wedge f and is accepted only for
closed theta.  Cohomology dimensions are rank computations per degree,
with the basis of each degree enumerated in lexicographic tuple order so
matrices are reproducible.
"""

from __future__ import annotations

from itertools import combinations

from .liealg import LieAlgebra
from .scalars import (APPROX, DEFAULT_TOL, EXACT, Tolerances, as_mode,
                      near_zero, rank, scalar_str)


def sort_with_sign(indices):
    """(sorted tuple, permutation sign); sign 0 on repeated indices."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return tuple(sorted(idx)), 0
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return tuple(idx), sign


class KForm:
    """Alternating k-form with coefficients over increasing index tuples."""

    def __init__(self, n, degree, coeffs=None, mode=EXACT, tol=DEFAULT_TOL):
        if degree < 0:
            raise ValueError("negative form degree")
        self.n = n
        self.degree = degree  # degrees above n are allowed and identically 0
        self.mode = mode
        self.tol = tol
        self.coeffs = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError("coefficient key length does not match degree")
            if any(not 0 <= i < n for i in idx):
                raise ValueError("form index out of range")
            key, sign = sort_with_sign(idx)
            if sign == 0:
                continue
            c = as_mode(c, mode) * sign
            if c != 0:
                self.coeffs[key] = self.coeffs.get(key, as_mode(0, mode)) + c
        self.coeffs = {k: v for k, v in self.coeffs.items() if v != 0}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n, degree, mode=EXACT):
        return cls(n, degree, {}, mode)

    @classmethod
    def dual(cls, n, i, mode=EXACT):
        """The basis covector e^i."""
        return cls(n, 1, {(i,): 1}, mode)

    @classmethod
    def from_covector(cls, v, mode=None):
        mode = mode or (EXACT if all(
            isinstance(c, (int,)) or hasattr(c, "denominator") for c in v) else APPROX)
        return cls(len(v), 1, {(i,): c for i, c in enumerate(v) if c != 0}, mode)

    @classmethod
    def constant(cls, n, value, mode=EXACT):
        return cls(n, 0, {(): value}, mode)

    def copy(self):
        return KForm(self.n, self.degree, dict(self.coeffs), self.mode, self.tol)

    def to_approx(self):
        if self.mode == APPROX:
            return self
        return KForm(self.n, self.degree,
                     {k: float(v) for k, v in self.coeffs.items()}, APPROX, self.tol)

    # -- basic algebra ----------------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, as_mode(0, self.mode)) + v
        return KForm(self.n, self.degree, out, self.mode, self.tol)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = as_mode(c, self.mode)
        return KForm(self.n, self.degree,
                     {k: c * v for k, v in self.coeffs.items()}, self.mode, self.tol)

    def __neg__(self):
        return self.scale(-1)

    def _check_compatible(self, other):
        if self.n != other.n:
            raise ValueError("forms live on different ambient dimensions")
        if self.degree != other.degree:
            raise ValueError("forms of different degree")

    def coefficient(self, indices):
        key, sign = sort_with_sign(tuple(indices))
        if sign == 0:
            return as_mode(0, self.mode)
        return sign * self.coeffs.get(key, as_mode(0, self.mode))

    def is_zero(self, tol: Tolerances | None = None) -> bool:
        tol = tol or self.tol
        return all(near_zero(c, tol) for c in self.coeffs.values())

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.coeffs.values()), default=0.0)

    def __eq__(self, other):
        return (isinstance(other, KForm) and self.n == other.n
                and self.degree == other.degree and (self - other).is_zero())

    def __repr__(self):
        if not self.coeffs:
            return f"KForm({self.n}, deg={self.degree}, 0)"
        terms = " + ".join(f"{scalar_str(c)}*e^{list(k)}"
                           for k, c in sorted(self.coeffs.items()))
        return f"KForm({self.n}, deg={self.degree}, {terms})"

    # -- evaluation ---------------------------------------------------------------

    def evaluate(self, *vectors):
        """Multilinear alternating evaluation on column vectors."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of arguments")
        total = as_mode(0, self.mode)
        for key, c in self.coeffs.items():
            # sum over which vector supplies which index, with permutation sign
            total += c * _alt_minor(vectors, key)
        return total

    def wedge(self, other: "KForm") -> "KForm":
        if self.n != other.n:
            raise ValueError("forms live on different ambient dimensions")
        mode = APPROX if APPROX in (self.mode, other.mode) else EXACT
        k = self.degree + other.degree
        out = {}
        for ka, ca in self.coeffs.items():
            for kb, cb in other.coeffs.items():
                key, sign = sort_with_sign(ka + kb)
                if sign == 0:
                    continue
                out[key] = out.get(key, as_mode(0, mode)) + sign * as_mode(ca, mode) * as_mode(cb, mode)
        return KForm(self.n, k, out, mode, self.tol)

    def interior(self, v) -> "KForm":
        """Contraction with the vector v in the first slot."""
        if self.degree == 0:
            raise ValueError("cannot contract a 0-form")
        out = {}
        for key, c in self.coeffs.items():
            for pos, idx in enumerate(key):
                rest = key[:pos] + key[pos + 1:]
                if v[idx] != 0:
                    sign = (-1) ** pos
                    out[rest] = out.get(rest, as_mode(0, self.mode)) + sign * c * v[idx]
        return KForm(self.n, self.degree - 1, out, self.mode, self.tol)

    def wedge_power(self, p) -> "KForm":
        out = KForm.constant(self.n, 1, self.mode)
        for _ in range(p):
            out = out.wedge(self)
        return out


def _alt_minor(vectors, key):
    """det of the submatrix of the vectors' `key` coordinates."""
    k = len(key)
    if k == 0:
        return 1
    if k == 1:
        return vectors[0][key[0]]
    # Laplace expansion is fine for the small degrees used here
    total = 0 * vectors[0][key[0]]
    for p in range(k):
        c = vectors[p][key[0]]
        if c == 0:
            continue
        rest = vectors[:p] + vectors[p + 1:]
        total += ((-1) ** p) * c * _alt_minor(rest, key[1:])
    return total


# -- Chevalley-Eilenberg differential -----------------------------------------

def d(L: LieAlgebra, f: KForm) -> KForm:
    """The exterior differential induced by the Lie bracket."""
    if f.n != L.dim:
        raise ValueError("form does not live on this algebra")
    k = f.degree
    out = {}
    zero = as_mode(0, f.mode)
    for T in combinations(range(L.dim), k + 1):
        total = zero
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                i, j = T[a], T[b]
                comp = L.structure.get((i, j))
                if not comp:
                    continue
                rest = T[:a] + T[a + 1:b] + T[b + 1:]
                sign_ab = (-1) ** (a + b)
                for m, c in comp.items():
                    key, s = sort_with_sign((m,) + rest)
                    if s == 0:
                        continue
                    cf = f.coeffs.get(key)
                    if cf is not None:
                        total += sign_ab * s * c * cf
        if total != 0:
            out[T] = total
    return KForm(L.dim, k + 1, out, f.mode, f.tol)


def is_closed(L: LieAlgebra, f: KForm, tol: Tolerances | None = None) -> bool:
    return d(L, f).is_zero(tol or L.tol)


def d_twisted(L: LieAlgebra, theta: KForm, f: KForm) -> KForm:
    """d f - theta wedge f, defined for closed theta only."""
    if theta.degree != 1:
        raise ValueError("twist must be a 1-form")
    if not is_closed(L, theta):
        raise ValueError("twist form is not closed")
    return d(L, f) - theta.wedge(f)


# -- cohomology -----------------------------------------------------------------

def degree_basis(n, k):
    return list(combinations(range(n), k))


def d_matrix(L: LieAlgebra, k, theta: KForm | None = None):
    """Matrix of d (or d_theta) from degree k to degree k+1, in the
    lexicographic tuple bases."""
    cols_basis = degree_basis(L.dim, k)
    rows_basis = degree_basis(L.dim, k + 1)
    row_index = {T: r for r, T in enumerate(rows_basis)}
    mode = L.mode if theta is None else theta.mode
    cols = []
    for T in cols_basis:
        f = KForm(L.dim, k, {T: 1}, mode, L.tol)
        df = d(L, f) if theta is None else d(L, f) - theta.wedge(f)
        col = [as_mode(0, mode)] * len(rows_basis)
        for key, c in df.coeffs.items():
            col[row_index[key]] = c
        cols.append(col)
    return [[cols[c][r] for c in range(len(cols_basis))]
            for r in range(len(rows_basis))]


def betti(L: LieAlgebra, tol: Tolerances | None = None):
    """dim H^k for k = 0..n with the untwisted differential."""
    tol = tol or L.tol
    n = L.dim
    from math import comb

    ranks = [rank(d_matrix(L, k), tol) if k < n else 0 for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        kernel = comb(n, k) - (ranks[k] if k < n else 0)
        image = ranks[k - 1] if k > 0 else 0
        out.append(kernel - image)
    return out


def twisted_betti(L: LieAlgebra, theta: KForm, tol: Tolerances | None = None):
    """dim H^k_theta for k = 0..n; requires d(theta) = 0."""
    tol = tol or L.tol
    if theta.degree != 1:
        raise ValueError("twist must be a 1-form")
    if not is_closed(L, theta, tol):
        raise ValueError("twist form is not closed")
    n = L.dim
    from math import comb

    ranks = [rank(d_matrix(L, k, theta), tol) if k < n else 0 for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        kernel = comb(n, k) - (ranks[k] if k < n else 0)
        image = ranks[k - 1] if k > 0 else 0
        out.append(kernel - image)
    return out


# -- complex-valued forms (pairs of real forms) ----------------------------------

class ComplexKForm:
    """A complex form as (real part, imaginary part) with complex wedge."""

    def __init__(self, re: KForm, im: KForm):
        re._check_compatible(im)
        self.re = re
        self.im = im
        self.n = re.n
        self.degree = re.degree

    @classmethod
    def from_real(cls, f: KForm):
        return cls(f, KForm.zero(f.n, f.degree, f.mode))

    def wedge(self, other: "ComplexKForm") -> "ComplexKForm":
        re = self.re.wedge(other.re) - self.im.wedge(other.im)
        im = self.re.wedge(other.im) + self.im.wedge(other.re)
        return ComplexKForm(re, im)

    def d(self, L: LieAlgebra) -> "ComplexKForm":
        return ComplexKForm(d(L, self.re), d(L, self.im))

    def is_zero(self, tol: Tolerances | None = None) -> bool:
        return self.re.is_zero(tol) and self.im.is_zero(tol)

    def max_abs(self) -> float:
        return max(self.re.max_abs(), self.im.max_abs())

    def scale(self, c_re, c_im=0):
        re = self.re.scale(c_re) - self.im.scale(c_im)
        im = self.re.scale(c_im) + self.im.scale(c_re)
        return ComplexKForm(re, im)


def serialize_form(f: KForm):
    """Report encoding: list of {indices, coefficient-string} terms."""
    return [{"indices": list(k), "c": scalar_str(v)}
            for k, v in sorted(f.coeffs.items())]


def deserialize_form(n, degree, terms, mode=EXACT, tol=DEFAULT_TOL) -> KForm:
    coeffs = {tuple(t["indices"]): t["c"] for t in terms}
    return KForm(n, degree, coeffs, mode, tol)
