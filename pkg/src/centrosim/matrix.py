"""Dense matrices over exact rationals or tolerance-compared floats.

Exact mode stores every entry as a ``fractions.Fraction`` (always in lowest
terms with positive denominator).  Approximate mode stores binary64 floats and
compares entries with a relative tolerance.  The two modes never mix inside
one operation; doing so raises :class:`~centrosim.errors.ModeError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, ModeError

EXACT = "exact"
APPROX = "approx"

# Relative tolerance used by approximate-mode comparisons when none is given.
DEFAULT_TOL = 1e-9


def _coerce(value, mode):
    if mode == EXACT:
        if isinstance(value, bool):
            raise ModeError("boolean is not a valid exact scalar")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, float):
            raise ModeError("float entry in exact mode; use approx mode or a 'p/q' string")
        raise ModeError(f"cannot use {type(value).__name__} as an exact scalar")
    if mode == APPROX:
        if isinstance(value, str):
            return float(Fraction(value))
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise ModeError(f"cannot use {type(value).__name__} as an approximate scalar")
    raise ModeError(f"unknown scalar mode {mode!r}")


def _infer_mode(rows):
    for row in rows:
        for value in row:
            if isinstance(value, float):
                return APPROX
    return EXACT


def scalars_eq(a, b, mode, tol=None):
    """Equality of two same-mode scalars; relative tolerance in approx mode."""
    if mode == EXACT:
        return a == b
    if tol is None:
        tol = DEFAULT_TOL
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def scalar_is_zero(a, mode, tol=None):
    if mode == EXACT:
        return a == 0
    return scalars_eq(a, 0.0, mode, tol)


class Matrix:
    """Immutable dense matrix with a fixed scalar mode."""

    __slots__ = ("_data", "_rows", "_cols", "mode")

    def __init__(self, rows, mode=None, cols=None):
        rows = [list(r) for r in rows]
        if mode is None:
            mode = _infer_mode(rows)
        n_rows = len(rows)
        if n_rows == 0:
            n_cols = 0 if cols is None else cols
        else:
            n_cols = len(rows[0])
            if cols is not None and cols != n_cols:
                raise DimensionError("explicit column count disagrees with row data")
            if any(len(r) != n_cols for r in rows):
                raise DimensionError("rows have unequal lengths")
        object.__setattr__(self, "_data",
                           tuple(tuple(_coerce(v, mode) for v in r) for r in rows))
        object.__setattr__(self, "_rows", n_rows)
        object.__setattr__(self, "_cols", n_cols)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, rows, cols, mode=EXACT):
        zero = Fraction(0) if mode == EXACT else 0.0
        return cls([[zero] * cols for _ in range(rows)], mode=mode, cols=cols)

    @classmethod
    def identity(cls, n, mode=EXACT):
        one = Fraction(1) if mode == EXACT else 1.0
        zero = Fraction(0) if mode == EXACT else 0.0
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)],
                   mode=mode, cols=n)

    @property
    def rows(self):
        return self._rows

    @property
    def cols(self):
        return self._cols

    @property
    def shape(self):
        return (self._rows, self._cols)

    @property
    def is_square(self):
        return self._rows == self._cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(self._data[i][j] for i in range(self._rows))

    def to_lists(self):
        return [list(r) for r in self._data]

    def __repr__(self):
        if self._rows == 0 or self._cols == 0:
            return f"Matrix(<empty {self._rows}x{self._cols}>, mode={self.mode!r})"
        body = "; ".join(" ".join(str(v) for v in r) for r in self._data)
        return f"Matrix([{body}], mode={self.mode!r})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.mode == other.mode and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.mode, self._rows, self._cols, self._data))

    def _check_mode(self, other):
        if self.mode != other.mode:
            raise ModeError(f"cannot mix {self.mode} and {other.mode} matrices")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_mode(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._data, other._data)],
                      mode=self.mode, cols=self._cols)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_mode(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._data, other._data)],
                      mode=self.mode, cols=self._cols)

    def __neg__(self):
        return Matrix([[-v for v in r] for r in self._data], mode=self.mode, cols=self._cols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_mode(other)
            if self._cols != other._rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ot = other._data
            out = []
            for r in self._data:
                out_row = []
                for j in range(other._cols):
                    acc = r[0] * ot[0][j] if self._cols else _coerce(0, self.mode)
                    for k in range(1, self._cols):
                        acc += r[k] * ot[k][j]
                    out_row.append(acc)
                out.append(out_row)
            return Matrix(out, mode=self.mode, cols=other._cols)
        scalar = _coerce(other, self.mode)
        return Matrix([[scalar * v for v in r] for r in self._data],
                      mode=self.mode, cols=self._cols)

    def __rmul__(self, other):
        scalar = _coerce(other, self.mode)
        return Matrix([[scalar * v for v in r] for r in self._data],
                      mode=self.mode, cols=self._cols)

    def transpose(self):
        return Matrix([[self._data[i][j] for i in range(self._rows)]
                       for j in range(self._cols)], mode=self.mode, cols=self._rows)

    def trace(self):
        if not self.is_square:
            raise DimensionError("trace requires a square matrix")
        return sum((self._data[i][i] for i in range(self._rows)),
                   _coerce(0, self.mode))

    def submatrix(self, r0, r1, c0, c1):
        """Rows r0..r1-1 and columns c0..c1-1 as a new matrix."""
        return Matrix([r[c0:c1] for r in self._data[r0:r1]],
                      mode=self.mode, cols=c1 - c0)

    def is_zero(self, tol=None):
        return all(scalar_is_zero(v, self.mode, tol) for r in self._data for v in r)

    def eq(self, other, tol=None):
        """Mode-aware equality: exact comparison or relative tolerance."""
        self._check_mode(other)
        if self.shape != other.shape:
            return False
        return all(scalars_eq(a, b, self.mode, tol)
                   for r1, r2 in zip(self._data, other._data)
                   for a, b in zip(r1, r2))

    def max_abs(self):
        return max((abs(v) for r in self._data for v in r), default=_coerce(0, self.mode))


def hstack(*mats):
    mats = [m for m in mats if m.cols > 0 or m.rows > 0]
    if not mats:
        return Matrix.zeros(0, 0)
    n = mats[0].rows
    mode = mats[0].mode
    for m in mats:
        if m.rows != n:
            raise DimensionError("hstack requires equal row counts")
        if m.mode != mode:
            raise ModeError("hstack requires a single mode")
    return Matrix([sum((list(m.row(i)) for m in mats), []) for i in range(n)],
                  mode=mode, cols=sum(m.cols for m in mats))


def vstack(*mats):
    mats = list(mats)
    if not mats:
        return Matrix.zeros(0, 0)
    c = mats[0].cols
    mode = mats[0].mode
    for m in mats:
        if m.cols != c:
            raise DimensionError("vstack requires equal column counts")
        if m.mode != mode:
            raise ModeError("vstack requires a single mode")
    rows = []
    for m in mats:
        rows.extend(list(r) for r in (m.row(i) for i in range(m.rows)))
    return Matrix(rows, mode=mode, cols=c)


def block(rows_of_blocks):
    """Assemble a matrix from a grid of blocks; zero-sized blocks are allowed."""
    return vstack(*(hstack(*row) for row in rows_of_blocks))


def exchange_matrix(n, mode=EXACT):
    """The n-by-n anti-diagonal permutation matrix J."""
    if n < 1:
        raise DimensionError("exchange matrix needs size >= 1")
    return _exchange(n, mode)


def _exchange(n, mode=EXACT):
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    return Matrix([[one if i + j == n - 1 else zero for j in range(n)]
                   for i in range(n)], mode=mode, cols=n)


def is_centrosymmetric(M, tol=None):
    """Entrywise test m[i,j] == m[n-1-i, n-1-j]."""
    if not M.is_square:
        raise DimensionError("centrosymmetry is defined for square matrices")
    n = M.rows
    for i in range(n):
        for j in range(n):
            if not scalars_eq(M[i, j], M[n - 1 - i, n - 1 - j], M.mode, tol):
                return False
    return True


def commutes_with_exchange(M, tol=None):
    """Equivalent characterization: M J == J M."""
    if not M.is_square:
        raise DimensionError("centrosymmetry is defined for square matrices")
    J = _exchange(M.rows, M.mode)
    return (M * J).eq(J * M, tol)


@dataclass(frozen=True)
class BlockPartition:
    """Block view of a square matrix at a split index.

    Even parity: M = [[A, B], [C, D]] with A of size s x s.
    Odd parity (n = 2s+1): corner blocks A, B, C, D of size s x s around a
    center column x (top) / w (bottom), center row y (left) / z (right) and
    center entry mu.
    """

    parity: str
    s: int
    A: Matrix
    B: Matrix
    C: Matrix
    D: Matrix
    x: Matrix | None = None
    w: Matrix | None = None
    y: Matrix | None = None
    z: Matrix | None = None
    mu: object = None


def split_blocks(M, parity, s):
    if not M.is_square:
        raise DimensionError("block split requires a square matrix")
    n = M.rows
    if parity == "even":
        if not 1 <= s < n:
            raise DimensionError(f"even split needs 1 <= s < n, got s={s}, n={n}")
        return BlockPartition(
            parity="even", s=s,
            A=M.submatrix(0, s, 0, s), B=M.submatrix(0, s, s, n),
            C=M.submatrix(s, n, 0, s), D=M.submatrix(s, n, s, n))
    if parity == "odd":
        if s < 1 or n != 2 * s + 1:
            raise DimensionError(f"odd split needs n = 2s+1 with s >= 1, got s={s}, n={n}")
        return BlockPartition(
            parity="odd", s=s,
            A=M.submatrix(0, s, 0, s), B=M.submatrix(0, s, s + 1, n),
            C=M.submatrix(s + 1, n, 0, s), D=M.submatrix(s + 1, n, s + 1, n),
            x=M.submatrix(0, s, s, s + 1), w=M.submatrix(s + 1, n, s, s + 1),
            y=M.submatrix(s, s + 1, 0, s), z=M.submatrix(s, s + 1, s + 1, n),
            mu=M[s, s])
    raise DimensionError(f"parity must be 'even' or 'odd', got {parity!r}")


def assemble_blocks(bp):
    """Inverse of split_blocks."""
    if bp.parity == "even":
        return block([[bp.A, bp.B], [bp.C, bp.D]])
    center = Matrix([[bp.mu]], mode=bp.A.mode)
    return block([[bp.A, bp.x, bp.B], [bp.y, center, bp.z], [bp.C, bp.w, bp.D]])


def blocks_centrosymmetric(bp, tol=None):
    """Block-level centrosymmetry conditions: JA = DJ, C = JBJ (+ center ones)."""
    if bp.A.rows != bp.A.cols or bp.A.shape != bp.D.shape:
        return False
    s = bp.A.rows
    J = _exchange(s, bp.A.mode)
    if not (J * bp.A).eq(bp.D * J, tol):
        return False
    if not bp.C.eq(J * bp.B * J, tol):
        return False
    if bp.parity == "odd":
        if not bp.w.eq(J * bp.x, tol):
            return False
        if not bp.y.eq(bp.z * J, tol):
            return False
    return True


def _scalar_to_json(v, mode):
    if mode == EXACT:
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def matrix_to_json_obj(M):
    return {"rows": [[_scalar_to_json(v, M.mode) for v in M.row(i)]
                     for i in range(M.rows)]}


def matrix_from_json_obj(obj, mode=None):
    """Parse {"rows": [...]}: strings/ints mean exact, floats mean approx."""
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ValueError("matrix JSON must be an object with a 'rows' field")
    rows = obj["rows"]
    if mode is None:
        mode = APPROX if any(isinstance(v, float) for r in rows for v in r) else EXACT
    return Matrix(rows, mode=mode)


def load_matrix(path, mode=None):
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json_obj(json.load(fh), mode=mode)


def save_matrix(M, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json_obj(M), fh, indent=1)
        fh.write("\n")
