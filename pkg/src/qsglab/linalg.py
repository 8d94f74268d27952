"""Exact linear algebra over the Gaussian rationals.

Everything here is exact: scalars are pairs of :class:`fractions.Fraction`,
vectors and matrices are sparse dictionaries, and equality is structural.
Tensor products use a row-major index encoding (leftmost leg varies slowest),
so the basis vector ``e_i (x) e_j`` of ``C^m (x) C^n`` has index ``i * n + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, prod
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple


class OutsideExactField(ValueError):
    """A value (or a quantity derived from one) is not a Gaussian rational."""


def _frac(x) -> Fraction:
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise OutsideExactField(f"{x!r} is not an exact rational")


class Scalar:
    """A Gaussian rational ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            raise OutsideExactField(f"{x!r} is a floating complex number")
        if isinstance(x, str):
            return cls.parse(x)
        return cls(x)

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse ``"p/q"``, ``"p/q+r/si"``, ``"r/si"`` and similar forms."""
        t = text.replace(" ", "").replace("*", "")
        try:
            if not t.endswith("i"):
                return cls(Fraction(t))
            body = t[:-1]
            cut = max(body.rfind("+"), body.rfind("-"))
            re_txt, im_txt = (body[:cut], body[cut:]) if cut > 0 else ("0", body)
            if im_txt in ("", "+", "-"):
                im_txt += "1"
            return cls(Fraction(re_txt), Fraction(im_txt))
        except (ValueError, ZeroDivisionError):
            raise OutsideExactField(f"cannot read {text!r} as a Gaussian rational") from None

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except OutsideExactField:
                return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except OutsideExactField:
                return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except OutsideExactField:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar(a * c)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero scalar")
        c, d = other.re, other.im
        if not d:
            return Scalar(self.re / c, self.im / c)
        n = c * c + d * d
        return self * Scalar(c / n, -d / n)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "" if self.im == 1 else "-" if self.im == -1 else str(self.im)
        if not self.re:
            return f"{im}i"
        sign = "" if self.im < 0 else "+"
        return f"{self.re}{sign}{im}i"


ZERO = Scalar(0)
ONE = Scalar(1)


def exact_sqrt(x: Fraction) -> Optional[Fraction]:
    """Return the non-negative rational square root of ``x`` if it exists."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _clean(entries: Dict[int, object]) -> Dict[int, Scalar]:
    out = {}
    for k, v in entries.items():
        v = Scalar.coerce(v)
        if v:
            out[k] = v
    return out


class SparseVector:
    """A vector of length ``dim`` storing only its nonzero entries."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Optional[Dict[int, object]] = None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        self.entries = _clean(entries or {})
        for i in self.entries:
            if not 0 <= i < dim:
                raise IndexError(f"index {i} out of range for dimension {dim}")

    @classmethod
    def basis(cls, dim: int, i: int) -> "SparseVector":
        return cls(dim, {i: ONE})

    @classmethod
    def from_list(cls, values: Sequence) -> "SparseVector":
        return cls(len(values), dict(enumerate(values)))

    def to_list(self) -> List[Scalar]:
        return [self.entries.get(i, ZERO) for i in range(self.dim)]

    def __getitem__(self, i: int) -> Scalar:
        return self.entries.get(i, ZERO)

    def __iter__(self) -> Iterator[Tuple[int, Scalar]]:
        return iter(sorted(self.entries.items()))

    def __len__(self):
        return self.dim

    def _check(self, other: "SparseVector"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "SparseVector") -> "SparseVector":
        self._check(other)
        out = dict(self.entries)
        for i, v in other.entries.items():
            out[i] = out.get(i, ZERO) + v
        return SparseVector(self.dim, out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-other)

    def __neg__(self) -> "SparseVector":
        return SparseVector(self.dim, {i: -v for i, v in self.entries.items()})

    def scale(self, c) -> "SparseVector":
        c = Scalar.coerce(c)
        return SparseVector(self.dim, {i: c * v for i, v in self.entries.items()})

    def conjugate(self) -> "SparseVector":
        return SparseVector(self.dim, {i: v.conjugate() for i, v in self.entries.items()})

    def inner(self, other: "SparseVector") -> Scalar:
        """``<self, other>``: linear in ``self``, conjugate-linear in ``other``."""
        self._check(other)
        total = ZERO
        small, big = (self.entries, other.entries)
        for i, v in small.items():
            w = big.get(i)
            if w is not None:
                total = total + v * w.conjugate()
        return total

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, frozenset(self.entries.items())))

    def __repr__(self):
        body = ", ".join(f"{i}: {v}" for i, v in self)
        return f"SparseVector({self.dim}, {{{body}}})"


def kron_vectors(x: SparseVector, y: SparseVector) -> SparseVector:
    return SparseVector(
        x.dim * y.dim,
        {i * y.dim + j: a * b for i, a in x.entries.items() for j, b in y.entries.items()},
    )


class LinearMap:
    """Sparse exact matrix, stored column by column.

    ``LinearMap(rows, cols, {(i, j): value})``; zero entries are dropped.
    """

    __slots__ = ("rows", "cols", "_cols")

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[Tuple[int, int], object]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("shape must be non-negative")
        self.rows = rows
        self.cols = cols
        data: Dict[int, Dict[int, Scalar]] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = Scalar.coerce(v)
            if v:
                data.setdefault(j, {})[i] = v
        self._cols = data

    @classmethod
    def _raw(cls, rows: int, cols: int, data: Dict[int, Dict[int, Scalar]]) -> "LinearMap":
        obj = cls.__new__(cls)
        obj.rows, obj.cols = rows, cols
        obj._cols = {j: c for j, c in data.items() if c}
        return obj

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[SparseVector]) -> "LinearMap":
        data = {}
        for j, col in enumerate(columns):
            if col.dim != rows:
                raise ValueError(f"column {j} has dimension {col.dim}, expected {rows}")
            if col.entries:
                data[j] = dict(col.entries)
        return cls._raw(rows, len(columns), data)

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence]) -> "LinearMap":
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
        if any(len(r) != cols for r in matrix):
            raise ValueError("ragged matrix")
        return cls(rows, cols, {(i, j): v for i, r in enumerate(matrix) for j, v in enumerate(r)})

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls._raw(n, n, {j: {j: ONE} for j in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinearMap":
        return cls._raw(rows, cols, {})

    @classmethod
    def row(cls, values: Sequence) -> "LinearMap":
        """A ``1 x n`` map, i.e. a linear functional written as a matrix."""
        return cls(1, len(values), {(0, j): v for j, v in enumerate(values)})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols.values())

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self._cols.get(j, {}).get(i, ZERO)

    def entries(self) -> Iterator[Tuple[int, int, Scalar]]:
        for j in sorted(self._cols):
            col = self._cols[j]
            for i in sorted(col):
                yield i, j, col[i]

    def column(self, j: int) -> SparseVector:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        out = SparseVector.__new__(SparseVector)
        out.dim = self.rows
        out.entries = dict(self._cols.get(j, {}))
        return out

    def columns(self) -> List[SparseVector]:
        return [self.column(j) for j in range(self.cols)]

    def to_dense(self) -> List[List[Scalar]]:
        m = [[ZERO] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries():
            m[i][j] = v
        return m

    def apply(self, x: SparseVector) -> SparseVector:
        if x.dim != self.cols:
            raise ValueError(f"cannot apply {self.rows}x{self.cols} map to vector of dim {x.dim}")
        acc: Dict[int, Scalar] = {}
        for j, c in x.entries.items():
            for i, a in self._cols.get(j, {}).items():
                acc[i] = acc.get(i, ZERO) + a * c
        out = SparseVector.__new__(SparseVector)
        out.dim = self.rows
        out.entries = {i: v for i, v in acc.items() if v}
        return out

    def __matmul__(self, other):
        if isinstance(other, SparseVector):
            return self.apply(other)
        if not isinstance(other, LinearMap):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        data = {}
        for j, bcol in other._cols.items():
            acc: Dict[int, Scalar] = {}
            for k, b in bcol.items():
                acol = self._cols.get(k)
                if not acol:
                    continue
                for i, a in acol.items():
                    acc[i] = acc.get(i, ZERO) + a * b
            acc = {i: v for i, v in acc.items() if v}
            if acc:
                data[j] = acc
        return LinearMap._raw(self.rows, other.cols, data)

    def _check_same(self, other: "LinearMap"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check_same(other)
        data = {j: dict(c) for j, c in self._cols.items()}
        for j, c in other._cols.items():
            col = data.setdefault(j, {})
            for i, v in c.items():
                s = col.get(i, ZERO) + v
                if s:
                    col[i] = s
                else:
                    col.pop(i, None)
        return LinearMap._raw(self.rows, self.cols, data)

    def __neg__(self) -> "LinearMap":
        return self.scale(-ONE)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-other)

    def scale(self, c) -> "LinearMap":
        c = Scalar.coerce(c)
        if not c:
            return LinearMap.zero(self.rows, self.cols)
        return LinearMap._raw(
            self.rows, self.cols, {j: {i: c * v for i, v in col.items()} for j, col in self._cols.items()}
        )

    def transpose(self) -> "LinearMap":
        data: Dict[int, Dict[int, Scalar]] = {}
        for j, col in self._cols.items():
            for i, v in col.items():
                data.setdefault(i, {})[j] = v
        return LinearMap._raw(self.cols, self.rows, data)

    def adjoint(self) -> "LinearMap":
        """Conjugate transpose."""
        data: Dict[int, Dict[int, Scalar]] = {}
        for j, col in self._cols.items():
            for i, v in col.items():
                data.setdefault(i, {})[j] = v.conjugate()
        return LinearMap._raw(self.cols, self.rows, data)

    def conjugate(self) -> "LinearMap":
        return LinearMap._raw(
            self.rows, self.cols, {j: {i: v.conjugate() for i, v in c.items()} for j, c in self._cols.items()}
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    __hash__ = None

    def first_difference(self, other: "LinearMap") -> Optional[int]:
        """Index of the first column on which two same-shape maps differ."""
        self._check_same(other)
        for j in sorted(set(self._cols) | set(other._cols)):
            if self._cols.get(j, {}) != other._cols.get(j, {}):
                return j
        return None

    def __repr__(self):
        return f"LinearMap({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class TensorShape:
    """Dimensions of the legs of a tensor product, leftmost leg slowest."""

    factors: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if any(f <= 0 for f in self.factors):
            raise ValueError("tensor factors must be positive")

    @property
    def total(self) -> int:
        return prod(self.factors)

    def encode(self, idx: Sequence[int]) -> int:
        if len(idx) != len(self.factors):
            raise ValueError("index length does not match number of legs")
        n = 0
        for i, f in zip(idx, self.factors):
            if not 0 <= i < f:
                raise IndexError(f"leg index {i} out of range {f}")
            n = n * f + i
        return n

    def decode(self, n: int) -> Tuple[int, ...]:
        if not 0 <= n < self.total:
            raise IndexError(n)
        out = []
        for f in reversed(self.factors):
            n, r = divmod(n, f)
            out.append(r)
        return tuple(reversed(out))


def tensor(a: LinearMap, b: LinearMap) -> LinearMap:
    """Kronecker product with row-major index convention."""
    data: Dict[int, Dict[int, Scalar]] = {}
    for ja, acol in a._cols.items():
        for jb, bcol in b._cols.items():
            data[ja * b.cols + jb] = {
                ia * b.rows + ib: x * y for ia, x in acol.items() for ib, y in bcol.items()
            }
    return LinearMap._raw(a.rows * b.rows, a.cols * b.cols, data)


def tensor_many(maps: Iterable[LinearMap]) -> LinearMap:
    out = LinearMap.identity(1)
    for m in maps:
        out = tensor(out, m)
    return out


def flip(shape) -> LinearMap:
    """The swap ``x (x) y -> y (x) x`` from ``C^m (x) C^n`` to ``C^n (x) C^m``."""
    if not isinstance(shape, TensorShape):
        shape = TensorShape(tuple(shape))
    if len(shape.factors) != 2:
        raise ValueError(f"flip needs exactly two tensor factors, got {len(shape.factors)}")
    m, n = shape.factors
    return LinearMap._raw(n * m, m * n, {i * n + j: {j * m + i: ONE} for i in range(m) for j in range(n)})


_LEGS = {"12", "13", "23"}


def leg_embed(v: LinearMap, leg_pair, d: int) -> LinearMap:
    """Place an operator on ``C^d (x) C^d`` onto two legs of a threefold product."""
    leg_pair = str(leg_pair)
    if leg_pair not in _LEGS:
        raise ValueError(f"leg pair must be one of 12, 13, 23; got {leg_pair}")
    if v.shape != (d * d, d * d):
        raise ValueError(f"expected a {d * d}x{d * d} operator, got {v.rows}x{v.cols}")
    eye = LinearMap.identity(d)
    if leg_pair == "12":
        return tensor(v, eye)
    if leg_pair == "23":
        return tensor(eye, v)
    s12 = tensor(flip((d, d)), eye)
    return s12 @ tensor(eye, v) @ s12


def leg13_via_23(v: LinearMap, d: int) -> LinearMap:
    """The second expression for the 13-leg: swap legs 2,3 around ``v (x) I``."""
    eye = LinearMap.identity(d)
    s23 = tensor(eye, flip((d, d)))
    return s23 @ tensor(v, eye) @ s23


# row reduction


def rref(rows: Sequence[Dict[int, Scalar]], ncols: int) -> Tuple[List[Dict[int, Scalar]], List[int]]:
    """Reduced row echelon form of sparse rows.

    Pivots are chosen column by column from the left, so the pivot columns are
    the lowest-index columns independent of those before them.
    """
    work = [dict(r) for r in rows if r]
    pivots: List[int] = []
    reduced: List[Dict[int, Scalar]] = []
    for c in range(ncols):
        k = next((idx for idx, r in enumerate(work) if c in r), None)
        if k is None:
            continue
        prow = work.pop(k)
        inv = ONE / prow[c]
        prow = {j: v * inv for j, v in prow.items()}
        for group in (work, reduced):
            for idx, r in enumerate(group):
                f = r.get(c)
                if f is None:
                    continue
                for j, v in prow.items():
                    s = r.get(j, ZERO) - f * v
                    if s:
                        r[j] = s
                    else:
                        r.pop(j, None)
        work = [r for r in work if r]
        reduced.append(prow)
        pivots.append(c)
    return reduced, pivots


def _rows_of(a: LinearMap) -> List[Dict[int, Scalar]]:
    rows: Dict[int, Dict[int, Scalar]] = {}
    for j, col in a._cols.items():
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    return [rows[i] for i in sorted(rows)]


def rank(a: LinearMap) -> int:
    return len(rref(_rows_of(a), a.cols)[1])


def kernel(a: LinearMap) -> List[SparseVector]:
    """Basis of the null space, one vector per free column."""
    reduced, pivots = rref(_rows_of(a), a.cols)
    return _kernel_from(reduced, pivots, a.cols)


def _kernel_from(reduced, pivots, ncols) -> List[SparseVector]:
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: ONE}
        for p, r in zip(pivots, reduced):
            v = r.get(f)
            if v is not None:
                vec[p] = -v
        basis.append(SparseVector(ncols, vec))
    return basis


@dataclass
class AffineSolution:
    """Solution set ``particular + span(kernel)`` of ``A x = b``, or inconsistent."""

    consistent: bool
    particular: Optional[SparseVector] = None
    kernel: List[SparseVector] = field(default_factory=list)

    @property
    def dimension(self) -> Optional[int]:
        return len(self.kernel) if self.consistent else None


def solve_affine(equations: LinearMap, rhs: SparseVector) -> AffineSolution:
    """Solve ``equations @ x == rhs`` exactly by row reduction."""
    if rhs.dim != equations.rows:
        raise ValueError(f"right-hand side has dimension {rhs.dim}, expected {equations.rows}")
    n = equations.cols
    rows: Dict[int, Dict[int, Scalar]] = {i: {} for i in range(equations.rows)}
    for j, col in equations._cols.items():
        for i, v in col.items():
            rows[i][j] = v
    for i, v in rhs.entries.items():
        rows[i][n] = v
    reduced, pivots = rref(list(rows.values()), n + 1)
    if n in pivots:
        return AffineSolution(False)
    particular = SparseVector(n, {p: r[n] for p, r in zip(pivots, reduced) if n in r})
    stripped = [{j: v for j, v in r.items() if j != n} for r in reduced]
    return AffineSolution(True, particular, _kernel_from(stripped, pivots, n))


def inverse(a: LinearMap) -> LinearMap:
    """Exact inverse of a square nonsingular map."""
    if not a.is_square():
        raise ValueError("only square maps are invertible")
    n = a.rows
    rows = _rows_of_all(a)
    for i in range(n):
        rows[i][n + i] = ONE
    reduced, pivots = rref(rows, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("map is singular")
    return LinearMap(n, n, {(i, j - n): v for i, r in enumerate(reduced[:n]) for j, v in r.items() if j >= n})


def _rows_of_all(a: LinearMap) -> List[Dict[int, Scalar]]:
    rows: List[Dict[int, Scalar]] = [{} for _ in range(a.rows)]
    for j, col in a._cols.items():
        for i, v in col.items():
            rows[i][j] = v
    return rows


def is_isometry(v: LinearMap) -> bool:
    return v.adjoint() @ v == LinearMap.identity(v.cols)


def is_unitary(v: LinearMap) -> bool:
    return v.is_square() and is_isometry(v) and v @ v.adjoint() == LinearMap.identity(v.rows)
