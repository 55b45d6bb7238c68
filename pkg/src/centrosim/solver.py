"""Solvers for the coupled block equations XA = DX, C = XBX and friends.

The search ladder for an intertwiner is deliberately simple and fully
deterministic: special candidates (J, I, -J) are tried first, a
one-dimensional solution space is handled by exact rational root finding,
small spaces (dimension <= d_max) by a bounded rational grid, and anything
larger is reported as exhausted.  Every hit is re-verified by independent
matrix multiplication, so the ladder can miss solutions but never return a
wrong one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DimensionError, PreconditionError
from .linalg import gauss_facts, solve_linear
from .matrix import APPROX, EXACT, Matrix, _exchange, scalar_is_zero, split_blocks


def default_grid_values(numer_max=5, denom_max=3):
    """All reduced rationals p/q with |p| <= numer_max, 1 <= q <= denom_max."""
    vals = {Fraction(0)}
    for q in range(1, denom_max + 1):
        for p in range(1, numer_max + 1):
            vals.add(Fraction(p, q))
            vals.add(Fraction(-p, q))
    return tuple(sorted(vals))


@dataclass(frozen=True)
class SearchOptions:
    d_max: int = 3
    grid_numer_max: int = 5
    grid_denom_max: int = 3
    grid_values: tuple | None = None
    max_solutions: int | None = None
    tol: float | None = None

    def grid(self, mode):
        vals = self.grid_values
        if vals is None:
            vals = default_grid_values(self.grid_numer_max, self.grid_denom_max)
        else:
            vals = tuple(sorted(Fraction(v) for v in vals))
        if mode == APPROX:
            return tuple(float(v) for v in vals)
        return vals


@dataclass(frozen=True)
class IntertwinerSolution:
    X: Matrix
    sylvester_residual: Matrix
    quadratic_residual: Matrix
    rank: int
    invertible: bool


@dataclass(frozen=True)
class IntertwinerSearch:
    """Ordered solutions plus the linear-stage data and any diagnostic."""

    solutions: tuple
    basis: tuple
    particular: Matrix | None
    diagnostic: str | None
    discriminant: object = None
    best_residual: float | None = None

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)

    def __getitem__(self, i):
        return self.solutions[i]

    @property
    def invertible_solutions(self):
        return tuple(sol for sol in self.solutions if sol.invertible)


def intertwiner_space(A, D, tol=None):
    """Basis of {X : XA = DX} via the vectorized homogeneous system."""
    if not A.is_square or not D.is_square:
        raise DimensionError("intertwiner space needs square A and D")
    s = A.rows
    m = D.rows
    K, _ = _sylvester_system(A, D)
    facts = gauss_facts(K, tol)
    basis = tuple(_unvec(v, m, s) for v in facts.nullspace)
    # Each basis element is re-verified by an explicit multiplication.
    for N in basis:
        if not (N * A - D * N).is_zero(tol):
            raise PreconditionError("nullspace vector fails XA = DX re-check",
                                    payload=N)
    return basis


def _vec_index(i, j, s):
    return i * s + j


def _unvec(col, m, s):
    return Matrix([[col[_vec_index(i, j, s), 0] for j in range(s)] for i in range(m)],
                  mode=col.mode, cols=s)


def _sylvester_system(A, D):
    """Coefficient rows of (XA - DX) entry (p, q) over row-major vec(X)."""
    s = A.rows
    m = D.rows
    zero = Fraction(0) if A.mode == EXACT else 0.0
    rows = []
    for p in range(m):
        for q in range(s):
            row = [zero] * (m * s)
            for j in range(s):
                row[_vec_index(p, j, s)] += A[j, q]
            for i in range(m):
                row[_vec_index(i, q, s)] -= D[p, i]
            rows.append(row)
    return Matrix(rows, mode=A.mode, cols=m * s), m * s


def _linear_stage(bp, tol):
    """Affine solution set of all linear constraints on X.

    Even parity: the homogeneous Sylvester system alone.  Odd parity folds in
    the center conditions w = X x and y = z X, which are inhomogeneous.
    """
    A, D = bp.A, bp.D
    s = A.rows
    m = D.rows
    K, n_unknowns = _sylvester_system(A, D)
    zero = Fraction(0) if A.mode == EXACT else 0.0
    rows = [list(K.row(i)) for i in range(K.rows)]
    rhs = [zero] * K.rows
    if bp.parity == "odd":
        for p in range(s):
            row = [zero] * n_unknowns
            for j in range(s):
                row[_vec_index(p, j, s)] = bp.x[j, 0]
            rows.append(row)
            rhs.append(bp.w[p, 0])
        for q in range(s):
            row = [zero] * n_unknowns
            for i in range(s):
                row[_vec_index(i, q, s)] = bp.z[0, i]
            rows.append(row)
            rhs.append(bp.y[0, q])
    K_full = Matrix(rows, mode=A.mode, cols=n_unknowns)
    b = Matrix([[v] for v in rhs], mode=A.mode, cols=1)
    particular, basis = solve_linear(K_full, b, tol)
    if particular is not None:
        particular = _unvec(particular, m, s)
    return particular, tuple(_unvec(v, m, s) for v in basis)


def system_residuals(bp, X, tol=None):
    """Residuals of every equation the split imposes on X; exact iff all zero."""
    syl = X * bp.A - bp.D * X
    quad = bp.C - X * bp.B * X
    extras = ()
    if bp.parity == "odd":
        extras = (bp.w - X * bp.x, bp.y - bp.z * X)
    ok = syl.is_zero(tol) and quad.is_zero(tol) and all(e.is_zero(tol) for e in extras)
    return syl, quad, extras, ok


def _make_solution(bp, X, syl, quad, tol):
    facts = gauss_facts(X, tol)
    invertible = X.is_square and facts.rank == X.rows
    return IntertwinerSolution(X=X, sylvester_residual=syl, quadratic_residual=quad,
                               rank=facts.rank, invertible=invertible)


def _residual_norm(mats):
    out = 0.0
    for m in mats:
        if m.rows and m.cols:
            out = max(out, float(m.max_abs()))
    return out


def _rational_sqrt(x):
    """Exact square root of a nonnegative Fraction, or None."""
    if x < 0:
        return None
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def _quadratic_roots(a, b, c, mode, tol):
    """Roots of a t^2 + b t + c = 0 in the working field; None marks irrational."""
    if mode == EXACT:
        if a == 0:
            if b == 0:
                return [], None
            return [Fraction(-c, b)], None
        disc = b * b - 4 * a * c
        root = _rational_sqrt(disc)
        if root is None:
            return [], disc
        return sorted({(-b - root) / (2 * a), (-b + root) / (2 * a)}), None
    t = 1e-9 if tol is None else tol
    thresh = t * max(1.0, abs(a), abs(b), abs(c))
    if abs(a) <= thresh:
        if abs(b) <= thresh:
            return [], None
        return [-c / b], None
    disc = b * b - 4 * a * c
    if disc < 0:
        return [], disc
    root = math.sqrt(disc)
    return sorted({(-b - root) / (2 * a), (-b + root) / (2 * a)}), None


def find_intertwiner(M, parity, s, options=None):
    """Search for X solving the full equation system of the (parity, s) split."""
    opts = options or SearchOptions()
    tol = opts.tol
    bp = split_blocks(M, parity, s)
    mode = M.mode
    m = bp.D.rows

    solutions = []
    seen = []
    best = [math.inf]

    def consider(X):
        for prev in seen:
            same = X.eq(prev, tol) if mode == APPROX else X == prev
            if same:
                return
        syl, quad, extras, ok = system_residuals(bp, X, tol)
        if mode == APPROX:
            best[0] = min(best[0], _residual_norm((syl, quad) + extras))
        if ok:
            solutions.append(_make_solution(bp, X, syl, quad, tol))
            seen.append(X)

    def full():
        return opts.max_solutions is not None and len(solutions) >= opts.max_solutions

    # Special candidates come first, in a fixed order.
    if m == bp.A.rows:
        J = _exchange(m, mode) if m else Matrix.zeros(0, 0, mode)
        for cand in (J, Matrix.identity(m, mode), -J):
            consider(cand)

    particular, basis = _linear_stage(bp, tol)
    d = len(basis)
    diagnostic = None
    discriminant = None

    if particular is None:
        diagnostic = "linear constraints infeasible"
    elif d == 0:
        if not full():
            consider(particular)
        if not any(sol.invertible for sol in solutions):
            diagnostic = "Sylvester space trivial"
    elif d > opts.d_max:
        diagnostic = f"search exhausted: solution space dimension {d} exceeds d_max={opts.d_max}"
    elif d == 1:
        ts, discriminant, line_diag = _solve_on_line(bp, particular, basis[0], mode, tol)
        diagnostic = line_diag
        if discriminant is not None and diagnostic is None:
            diagnostic = "irrational discriminant: no solution over the working field"
        for t in ts:
            if full():
                break
            consider(particular + t * basis[0])
    else:
        _grid_search(bp, particular, basis, opts, mode, tol, consider, full)

    if mode == EXACT:
        best_residual = None
    else:
        best_residual = None if best[0] is math.inf else best[0]
    return IntertwinerSearch(solutions=tuple(solutions), basis=basis,
                             particular=particular, diagnostic=diagnostic,
                             discriminant=discriminant, best_residual=best_residual)


def _solve_on_line(bp, X0, N, mode, tol):
    """Exact parameters t with C = (X0 + tN) B (X0 + tN) on the affine line."""
    R0 = bp.C - X0 * bp.B * X0
    R1 = N * bp.B * X0 + X0 * bp.B * N
    R2 = N * bp.B * N
    for p in range(R0.rows):
        for q in range(R0.cols):
            a, b, c = R2[p, q], R1[p, q], -R0[p, q]
            if not (scalar_is_zero(a, mode, tol) and scalar_is_zero(b, mode, tol)
                    and scalar_is_zero(c, mode, tol)):
                roots, disc = _quadratic_roots(a, b, c, mode, tol)
                return roots, disc, None
    # The quadratic constraint holds identically along the line.
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    return [-one, zero, one], None, "one-parameter solution line; returning representatives"


def _grid_search(bp, X0, basis, opts, mode, tol, consider, full):
    d = len(basis)
    values = opts.grid(mode)
    R0 = bp.C - X0 * bp.B * X0
    Rlin = [N * bp.B * X0 + X0 * bp.B * N for N in basis]
    Rquad = [[Ni * bp.B * Nj for Nj in basis] for Ni in basis]
    rows_, cols_ = R0.rows, R0.cols
    thresh = None
    if mode == APPROX:
        t = 1e-9 if tol is None else tol
        thresh = t * max(1.0, float(bp.C.max_abs()), float(bp.B.max_abs()) ** 2)
    for tvec in product(values, repeat=d):
        if full():
            return
        hit = True
        for p in range(rows_):
            for q in range(cols_):
                v = R0[p, q]
                for i in range(d):
                    v -= tvec[i] * Rlin[i][p, q]
                    for j in range(d):
                        v -= tvec[i] * tvec[j] * Rquad[i][j][p, q]
                if (v != 0) if mode == EXACT else (abs(v) > thresh):
                    hit = False
                    break
            if not hit:
                break
        if hit:
            X = X0
            for i in range(d):
                X = X + tvec[i] * basis[i]
            consider(X)


@dataclass(frozen=True)
class RiccatiWitness:
    orientation: str
    W: Matrix
    residual: Matrix

    def is_exact(self, tol=None):
        return self.residual.is_zero(tol)


def riccati_residual(M, s, W, orientation, tol=None):
    """Residual of C = XA - DX + XBX (lower) or B = YD - AY + YCY (upper)."""
    bp = split_blocks(M, "even", s)
    n = M.rows
    if orientation == "lower":
        if W.shape != (n - s, s):
            raise DimensionError(f"lower witness must be {(n - s, s)}, got {W.shape}")
        residual = bp.C - W * bp.A + bp.D * W - W * bp.B * W
    elif orientation == "upper":
        if W.shape != (s, n - s):
            raise DimensionError(f"upper witness must be {(s, n - s)}, got {W.shape}")
        residual = bp.B - W * bp.D + bp.A * W - W * bp.C * W
    else:
        raise DimensionError(f"orientation must be 'lower' or 'upper', got {orientation!r}")
    return RiccatiWitness(orientation=orientation, W=W, residual=residual)


def singular_certificate(M, s, W, system, tol=None):
    """Check one of the four zero-determinant equation pairs for witness W != 0.

    1: C = XA  and DX = XBX      2: C = -DX and XA = -XBX
    3: B = YD  and AY = YCY      4: B = -AY and YD = -YCY
    """
    if W.is_zero(tol):
        raise PreconditionError("the certificate requires a nonzero witness")
    bp = split_blocks(M, "even", s)
    n = M.rows
    if system in (1, 2):
        if W.shape != (n - s, s):
            raise DimensionError(f"systems 1-2 use X of shape {(n - s, s)}, got {W.shape}")
        if system == 1:
            return bp.C.eq(W * bp.A, tol) and (bp.D * W).eq(W * bp.B * W, tol)
        return bp.C.eq(-(bp.D * W), tol) and (W * bp.A).eq(-(W * bp.B * W), tol)
    if system in (3, 4):
        if W.shape != (s, n - s):
            raise DimensionError(f"systems 3-4 use Y of shape {(s, n - s)}, got {W.shape}")
        if system == 3:
            return bp.B.eq(W * bp.D, tol) and (bp.A * W).eq(W * bp.C * W, tol)
        return bp.B.eq(-(bp.A * W), tol) and (W * bp.D).eq(-(W * bp.C * W), tol)
    raise DimensionError(f"system must be 1, 2, 3 or 4, got {system!r}")
