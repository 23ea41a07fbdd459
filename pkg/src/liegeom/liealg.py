"""Lie algebras by structure constants.

A :class:`LieAlgebra` stores only the brackets [e_i, e_j] with i < j and
only their nonzero components; antisymmetry is structural.  Validation
(the Jacobi identity) gates every downstream operation.  :class:`Subspace`
is the shared subspace abstraction (commutator ideal, center, kernels,
orthogonal complements).
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import polys
from .scalars import (APPROX, DEFAULT_TOL, EXACT, Tolerances, as_mode,
                      check_mode, mat_mode, mat_mul, mat_trace, mat_vec,
                      near_zero, nullspace, rank, rref, solve, to_float_matrix,
                      transpose, vec_is_zero, vec_scale, vec_sub, zero_vector)


class Subspace:
    """A subspace of R^n held in reduced row echelon form."""

    def __init__(self, ambient_dim, vectors, tol: Tolerances = DEFAULT_TOL):
        self.ambient_dim = ambient_dim
        self.tol = tol
        vectors = [v for v in vectors if not vec_is_zero(v, tol)]
        if vectors:
            rows, _ = rref(vectors, tol)
            self.rows = rows
        else:
            self.rows = []
        self.dim = len(self.rows)

    @classmethod
    def full(cls, n, mode=EXACT):
        from .scalars import identity

        return cls(n, identity(n, mode))

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    def contains(self, v, tol: Tolerances | None = None) -> bool:
        tol = tol or self.tol
        if vec_is_zero(v, tol):
            return True
        if not self.rows:
            return False
        return rank(self.rows + [list(v)], tol) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.dim == other.dim
                and self.contains_space(other))

    def __hash__(self):
        raise TypeError("Subspace is not hashable")

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.rows + other.rows, self.tol)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Via kernel of the stacked coordinate equations."""
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # v in both spans: v = a.rows^T x = b.rows^T y  ->  kernel trick
        A = transpose(self.rows)
        B = transpose(other.rows)
        stacked = [A[i] + [-b for b in B[i]] for i in range(self.ambient_dim)]
        out = []
        for k in nullspace(stacked, self.tol):
            x = k[: self.dim]
            v = zero_vector(self.ambient_dim, mat_mode(self.rows))
            for c, row in zip(x, self.rows):
                v = [vi + c * ri for vi, ri in zip(v, row)]
            out.append(v)
        return Subspace(self.ambient_dim, out, self.tol)

    def orthogonal_complement(self, gram) -> "Subspace":
        """{v : <v, w> = 0 for all w in self} for the given Gram matrix."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim, mat_mode(gram))
        eqs = mat_mul(self.rows, gram)
        return Subspace(self.ambient_dim, nullspace(eqs, self.tol), self.tol)

    def image(self, M) -> "Subspace":
        return Subspace(self.ambient_dim, [mat_vec(M, r) for r in self.rows], self.tol)

    def coordinates_of(self, v):
        """Coefficients of v in this subspace's row basis, or None."""
        if self.dim == 0:
            return [] if vec_is_zero(v, self.tol) else None
        return solve(transpose(self.rows), list(v), self.tol)


class LieAlgebra:
    """A finite-dimensional Lie algebra given by structure constants.

    ``structure`` maps (i, j) with i < j to {k: c} with [e_i, e_j] =
    sum_k c e_k.  All coefficients live in one scalar mode.
    """

    def __init__(self, dim, structure, labels=None, mode=EXACT,
                 tol: Tolerances = DEFAULT_TOL, validate=True):
        self.dim = dim
        self.mode = check_mode(mode)
        self.tol = tol
        self.labels = list(labels) if labels else [f"e{i+1}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("need one label per basis vector")
        self.structure = {}
        for (i, j), comp in structure.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bad bracket index pair ({i}, {j})")
            if isinstance(comp, dict):
                entries = comp.items()
            else:
                entries = ((k, c) for k, c in enumerate(comp))
            clean = {}
            for k, c in entries:
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target {k} out of range")
                c = as_mode(c, self.mode)
                if c != 0:
                    clean[k] = c
            if clean:
                self.structure[(i, j)] = clean
        self._cache = {}
        if validate:
            defect, triple = self.jacobi_report()
            if not near_zero(defect, tol):
                i, j, k = triple
                raise ValueError(
                    "Jacobi identity fails on "
                    f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]}): "
                    f"defect {defect}"
                )

    # -- construction helpers ------------------------------------------------

    @classmethod
    def abelian(cls, dim, labels=None, mode=EXACT):
        return cls(dim, {}, labels=labels, mode=mode)

    @classmethod
    def from_table(cls, table, labels=None, mode=EXACT, tol=DEFAULT_TOL,
                   validate=True):
        """From a dense table: table[i][j] = vector [e_i, e_j] for i < j."""
        dim = len(table)
        structure = {}
        for i in range(dim):
            for j in range(i + 1, dim):
                structure[(i, j)] = {k: c for k, c in enumerate(table[i][j])}
        return cls(dim, structure, labels=labels, mode=mode, tol=tol,
                   validate=validate)

    def to_approx(self) -> "LieAlgebra":
        if self.mode == APPROX:
            return self
        structure = {ij: {k: float(c) for k, c in comp.items()}
                     for ij, comp in self.structure.items()}
        return LieAlgebra(self.dim, structure, labels=self.labels, mode=APPROX,
                          tol=self.tol, validate=False)

    def _zero(self):
        return zero_vector(self.dim, self.mode)

    # -- brackets ------------------------------------------------------------

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a coefficient vector (any index order)."""
        v = self._zero()
        if i == j:
            return v
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.structure.get((i, j), {}).items():
            v[k] = sign * c
        return v

    def bracket(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length does not match algebra dimension")
        v = self._zero()
        for (i, j), comp in self.structure.items():
            coef = x[i] * y[j] - x[j] * y[i]
            if coef != 0:
                for k, c in comp.items():
                    v[k] += coef * c
        return v

    def ad(self, x):
        """Matrix of y -> [x, y] in the basis."""
        cols = [self.bracket(x, e) for e in _basis(self.dim, self.mode)]
        return transpose(cols)

    def ad_basis(self, i):
        cols = [self.bracket_basis(i, j) for j in range(self.dim)]
        return transpose(cols)

    # -- validation ----------------------------------------------------------

    def jacobi_report(self):
        """(max-norm of the worst Jacobi violation, offending triple)."""
        worst = as_mode(0, self.mode)
        worst_triple = (0, 1, 2) if self.dim >= 3 else (0, 0, 0)
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.bracket_basis(i, j)
                for k in range(j + 1, self.dim):
                    v = self.bracket(bij, _e(self.dim, k, self.mode))
                    v = [a + b for a, b in zip(
                        v, self.bracket(self.bracket_basis(j, k),
                                        _e(self.dim, i, self.mode)))]
                    v = [a + b for a, b in zip(
                        v, self.bracket(self.bracket_basis(k, i),
                                        _e(self.dim, j, self.mode)))]
                    m = max((abs(c) for c in v), default=worst)
                    if m > worst:
                        worst, worst_triple = m, (i, j, k)
        return worst, worst_triple

    def jacobi_defect(self):
        return self.jacobi_report()[0]

    # -- classical invariants --------------------------------------------------

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def center(self) -> Subspace:
        def build():
            stacked = []
            for i in range(self.dim):
                stacked.extend(self.ad_basis(i))
            if not stacked:
                return Subspace.full(self.dim, self.mode)
            return Subspace(self.dim, nullspace(stacked, self.tol), self.tol)

        return self._cached("center", build)

    def commutator_ideal(self) -> Subspace:
        def build():
            vectors = []
            for i in range(self.dim):
                for j in range(i + 1, self.dim):
                    vectors.append(self.bracket_basis(i, j))
            return Subspace(self.dim, vectors, self.tol)

        return self._cached("commutator", build)

    def bracket_spaces(self, a: Subspace, b: Subspace) -> Subspace:
        vectors = [self.bracket(x, y) for x in a.rows for y in b.rows]
        return Subspace(self.dim, vectors, self.tol)

    def derived_series(self):
        series = [Subspace.full(self.dim, self.mode)]
        while True:
            nxt = self.bracket_spaces(series[-1], series[-1])
            if nxt.dim == series[-1].dim:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        return series

    def lower_central_series(self):
        full = Subspace.full(self.dim, self.mode)
        series = [full]
        while True:
            nxt = self.bracket_spaces(full, series[-1])
            if nxt.dim == series[-1].dim:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        return series

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].dim == 0

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].dim == 0

    def nilpotency_step(self):
        s = self.lower_central_series()
        return len(s) - 1 if s[-1].dim == 0 else None

    def solvability_step(self):
        s = self.derived_series()
        return len(s) - 1 if s[-1].dim == 0 else None

    def is_unimodular(self) -> bool:
        return all(near_zero(mat_trace(self.ad_basis(i)), self.tol)
                   for i in range(self.dim))

    # -- complete solvability ---------------------------------------------------

    def is_completely_solvable(self, sample_count=8, seed=0) -> str:
        """'yes' / 'no' / 'unknown'.

        'no' as soon as some sampled ad_x has a nonreal eigenvalue (exact
        Sturm count in exact mode, numpy in approx mode); 'yes' when a full
        flag of ideals of codimension one each is found by iterated common
        eigencovector search over rational eigenvalues; 'unknown' otherwise.
        """
        if not self.is_solvable():
            raise ValueError("complete solvability is only defined for solvable algebras")
        rng = random.Random(seed)
        samples = [_e(self.dim, i, self.mode) for i in range(self.dim)]
        for _ in range(sample_count):
            if self.mode == EXACT:
                samples.append([Fraction(rng.randint(-5, 5)) for _ in range(self.dim)])
            else:
                samples.append([float(rng.randint(-5, 5)) for _ in range(self.dim)])
        for x in samples:
            if not _spectrum_real(self.ad(x), self.mode, self.tol):
                return "no"
        if self.is_nilpotent():
            return "yes"
        if self.mode == APPROX:
            return "unknown"
        return "yes" if self._has_full_ideal_flag() else "unknown"

    def _has_full_ideal_flag(self) -> bool:
        """Search a chain g = a_n > a_{n-1} > ... > 0 of ideals of g, each of
        codimension one in the previous, using rational eigenvalues only."""
        space = Subspace.full(self.dim, self.mode)
        while space.dim > 0:
            ops = [_restrict(self.ad_basis(i), space, self.tol)
                   for i in range(self.dim)]
            if any(op is None for op in ops):
                return False  # not invariant: not an ideal (should not happen)
            f = _common_eigencovector([transpose(op) for op in ops], space.dim,
                                      self.tol)
            if f is None:
                return False
            # new subspace: kernel of f inside `space`
            kernel_local = nullspace([f], self.tol)
            new_rows = []
            for k in kernel_local:
                v = zero_vector(self.dim, self.mode)
                for c, row in zip(k, space.rows):
                    v = [vi + c * ri for vi, ri in zip(v, row)]
                new_rows.append(v)
            space = Subspace(self.dim, new_rows, self.tol)
        return True

    # -- almost abelian ----------------------------------------------------------

    def verify_almost_abelian(self, u: Subspace) -> bool:
        """u is a codimension-one abelian ideal."""
        if u.ambient_dim != self.dim or not Subspace.full(
                self.dim, self.mode).contains_space(u):
            raise ValueError("u is not a subspace of the algebra")
        if u.dim != self.dim - 1:
            return False
        if self.bracket_spaces(u, u).dim != 0:
            return False
        full = Subspace.full(self.dim, self.mode)
        return u.contains_space(self.bracket_spaces(full, u))

    def find_codim1_abelian_ideal(self, seed=0):
        """A witness codimension-one abelian ideal, or None.

        Hyperplanes containing g' are automatically ideals.  The abelian
        condition is solved exactly via linear algebra when dim(g/g') <= 3;
        above that a seeded rational grid is sampled and None means
        "none found", not "nonexistent".
        """
        g1 = self.commutator_ideal()
        if g1.dim == self.dim:
            return None  # no proper ideal contains g'
        if self.bracket_spaces(g1, g1).dim != 0:
            return None  # g' not abelian: no hyperplane above it can be
        q = self.dim - g1.dim
        if q == 1:
            return g1 if self.verify_almost_abelian(g1) else None
        comp = _complement_basis(g1, self.dim, self.mode, self.tol)
        # K: complement vectors commuting with g'
        if g1.dim:
            eqs = []
            for w in comp:
                eqs.append([c for gv in g1.rows for c in self.bracket(w, gv)])
            K = nullspace(transpose(eqs), self.tol) if eqs else []
            K_local = Subspace(q, K, self.tol)
        else:
            K_local = Subspace.full(q, self.mode)

        def lift(local):
            v = zero_vector(self.dim, self.mode)
            for c, w in zip(local, comp):
                v = [vi + c * wi for vi, wi in zip(v, w)]
            return v

        def candidate(w_locals):
            u = Subspace(self.dim, g1.rows + [lift(w) for w in w_locals], self.tol)
            return u if self.verify_almost_abelian(u) else None

        if q == 2:
            # need one complement direction commuting with g' ([w,w]=0 is free)
            for w in K_local.rows:
                u = candidate([w])
                if u is not None:
                    return u
            return None
        if q == 3:
            # W = a 2-plane in the complement; [.,.] on it factors through
            # Lambda^2 (3-dim), so everything is linear in the plane's normal.
            if K_local.dim < 2:
                return None
            if K_local.dim == 2:
                return candidate(K_local.rows)
            pairs = [(0, 1), (0, 2), (1, 2)]
            rowsB = []
            for (a, b) in pairs:
                rowsB.append(self.bracket(comp[a], comp[b]))
            # wedge coordinates m with B(m) = 0; m = (m01, m02, m12)
            for m in nullspace(transpose(rowsB), self.tol):
                # plane with normal f where m = *f: f = (m12, -m02, m01)
                f = [m[2], -m[1], m[0]]
                plane = nullspace([f], self.tol)
                if len(plane) == 2:
                    u = candidate(plane)
                    if u is not None:
                        return u
            return None
        # q > 3: seeded rational sampling only
        rng = random.Random(seed)
        for _ in range(200):
            w_locals = []
            for _ in range(q - 1):
                w_locals.append([as_mode(rng.randint(-3, 3), self.mode)
                                 for _ in range(q)])
            u = Subspace(self.dim, g1.rows + [lift(w) for w in w_locals], self.tol)
            if u.dim == self.dim - 1 and self.verify_almost_abelian(u):
                return u
        return None


# -- helpers -------------------------------------------------------------------

def _e(n, i, mode):
    v = zero_vector(n, mode)
    v[i] = as_mode(1, mode)
    return v


def _basis(n, mode):
    return [_e(n, i, mode) for i in range(n)]


def _spectrum_real(M, mode, tol: Tolerances) -> bool:
    if mode == EXACT:
        return polys.spectrum_is_real(M)
    import numpy as np

    eigs = np.linalg.eigvals(np.array(to_float_matrix(M)))
    scale = max(1.0, max(abs(eigs)) if len(eigs) else 1.0)
    return bool(all(abs(e.imag) <= 1e3 * tol.zero_eps * scale for e in eigs))


def _restrict(M, space: Subspace, tol: Tolerances):
    """Matrix of M restricted to `space` in its row basis; None if the
    subspace is not invariant."""
    if space.dim == 0:
        return []
    cols = []
    for r in space.rows:
        img = mat_vec(M, r)
        coords = space.coordinates_of(img)
        if coords is None:
            return None
        cols.append(coords)
    return transpose(cols)


def _common_eigencovector(mats, dim, tol: Tolerances):
    """A vector f != 0 with Mt f = lambda_t f for every matrix, searching over
    rational eigenvalues; None when no such rational-eigenvalue covector
    exists (or candidates could not be enumerated)."""

    def recurse(space: Subspace, idx):
        if space.dim == 0:
            return None
        if idx == len(mats):
            return space.rows[0]
        M = mats[idx]
        cands = polys.rational_roots(polys.charpoly(M))
        if cands is None:
            return None
        from .scalars import identity, mat_sub, mat_scale

        for lam in cands:
            shifted = mat_sub(M, mat_scale(lam, identity(dim, EXACT)))
            eig = Subspace(dim, nullspace(shifted, tol), tol)
            nxt = space.intersection(eig)
            if nxt.dim > 0:
                out = recurse(nxt, idx + 1)
                if out is not None:
                    return out
        return None

    return recurse(Subspace.full(dim, EXACT), 0)


def _complement_basis(space: Subspace, n, mode, tol: Tolerances):
    """Standard basis vectors completing `space` to the full space."""
    comp = []
    current = Subspace(n, space.rows, tol)
    for i in range(n):
        e = _e(n, i, mode)
        if not current.contains(e):
            comp.append(e)
            current = Subspace(n, current.rows + [e], tol)
    return comp
