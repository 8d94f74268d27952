"""Function algebras of finite sets, comultiplications and their functionals.

A :class:`FunctionAlgebra` is ``C(X)`` for a finite set ``X`` with the
indicator basis ``delta_x``: products are pointwise, the unit is the all-ones
vector and the involution conjugates coefficients.  ``C(X) (x) C(X)`` is again
such an algebra on ``X x X`` under the row-major pairing ``(x, y) -> x*|X|+y``.
Linear maps between these algebras (comultiplications, the operators acting on
``A (x) A``) are plain :class:`~qsglab.linalg.LinearMap` matrices in those bases.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from qsglab.linalg import (
    ONE,
    ZERO,
    LinearMap,
    Scalar,
    SparseVector,
    kron_vectors,
    rank,
    solve_affine,
    tensor,
)

from .semigroup import FiniteSemigroup


@dataclass(frozen=True)
class FunctionAlgebra:
    points: int
    semigroup: Optional[FiniteSemigroup] = None

    @classmethod
    def of(cls, s: FiniteSemigroup) -> "FunctionAlgebra":
        return cls(s.order, s)

    @property
    def dim(self) -> int:
        return self.points

    def basis(self, x: int) -> SparseVector:
        return SparseVector.basis(self.points, x)

    def unit(self) -> SparseVector:
        return SparseVector(self.points, {x: ONE for x in range(self.points)})

    def mul(self, a: SparseVector, b: SparseVector) -> SparseVector:
        if a.dim != self.points or b.dim != self.points:
            raise ValueError("element does not belong to this algebra")
        small, big = (a.entries, b.entries) if len(a.entries) <= len(b.entries) else (b.entries, a.entries)
        return SparseVector(self.points, {x: v * big[x] for x, v in small.items() if x in big})

    def star(self, a: SparseVector) -> SparseVector:
        return a.conjugate()

    def tensor_square(self) -> "FunctionAlgebra":
        return FunctionAlgebra(self.points * self.points)


@dataclass(frozen=True)
class Functional:
    """A linear functional, stored by its values on the basis."""

    values: Tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Scalar.coerce(v) for v in self.values))

    @classmethod
    def evaluation(cls, dim: int, x: int) -> "Functional":
        return cls(tuple(ONE if i == x else ZERO for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.values)

    def __call__(self, a: SparseVector) -> Scalar:
        if a.dim != self.dim:
            raise ValueError("functional and element have different dimensions")
        total = ZERO
        for i, v in a.entries.items():
            total = total + self.values[i] * v
        return total

    def as_row(self) -> LinearMap:
        return LinearMap.row(self.values)

    def scale(self, c) -> "Functional":
        c = Scalar.coerce(c)
        return Functional(tuple(c * v for v in self.values))

    def is_state(self, algebra: FunctionAlgebra) -> bool:
        """Positive and unital; on ``C(X)`` that means a probability vector."""
        if any(not v.is_real or v.re < 0 for v in self.values):
            return False
        return self(algebra.unit()) == ONE


def delta_map(s: FiniteSemigroup) -> LinearMap:
    """Comultiplication of ``C(S)``: ``Delta(delta_z) = sum over xy=z of delta_x (x) delta_y``."""
    n = s.order
    return LinearMap(n * n, n, {(x * n + y, s.mul(x, y)): ONE for x in range(n) for y in range(n)})


def trivial_left(dim: int) -> LinearMap:
    """``a -> a (x) 1``."""
    return LinearMap(dim * dim, dim, {(x * dim + y, x): ONE for x in range(dim) for y in range(dim)})


def trivial_right(dim: int) -> LinearMap:
    """``a -> 1 (x) a``."""
    return LinearMap(dim * dim, dim, {(x * dim + y, y): ONE for x in range(dim) for y in range(dim)})


def _check_comultiplication_shape(delta: LinearMap, dim: int):
    if delta.shape != (dim * dim, dim):
        raise ValueError(f"expected a map {dim} -> {dim * dim}, got {delta.cols} -> {delta.rows}")


def coassoc_check(delta: LinearMap, dim: int) -> bool:
    _check_comultiplication_shape(delta, dim)
    eye = LinearMap.identity(dim)
    return tensor(delta, eye) @ delta == tensor(eye, delta) @ delta


def star_hom_check(
    phi: LinearMap, source: Optional[FunctionAlgebra] = None, target: Optional[FunctionAlgebra] = None
) -> Tuple[bool, Optional[str]]:
    """Check that ``phi`` is a unital *-homomorphism between function algebras.

    Both algebras default to the function algebra matching the map's shape.
    Returns ``(ok, witness)`` where the witness names the first failure.
    """
    source = source or FunctionAlgebra(phi.cols)
    target = target or FunctionAlgebra(phi.rows)
    if phi.shape != (target.dim, source.dim):
        raise ValueError("map shape does not match the algebras")
    if phi @ source.unit() != target.unit():
        return False, "unit not preserved"
    images = phi.columns()
    for i, img in enumerate(images):
        if img.conjugate() != img:
            return False, f"star not preserved on basis element {i}"
        # basis elements are orthogonal idempotents: e_i e_j = delta_ij e_i
        if target.mul(img, img) != img:
            return False, f"product not preserved on basis pair ({i}, {i})"
    for i, a in enumerate(images):
        if not a.entries:
            continue
        for j in range(i + 1, len(images)):
            if target.mul(a, images[j]).entries:
                return False, f"product not preserved on basis pair ({i}, {j})"
    return True, None


def quantum_group_density_check(algebra: FunctionAlgebra, delta: LinearMap) -> Tuple[bool, bool]:
    """Whether ``span{Delta(b)(a (x) 1)}`` and ``span{Delta(b)(1 (x) a)}`` fill ``A (x) A``."""
    d = algebra.dim
    _check_comultiplication_shape(delta, d)
    big = algebra.tensor_square()
    unit = algebra.unit()
    images = delta.columns()
    left, right = [], []
    for a in range(d):
        a_left = kron_vectors(algebra.basis(a), unit)
        a_right = kron_vectors(unit, algebra.basis(a))
        for img in images:
            left.append(big.mul(img, a_left))
            right.append(big.mul(img, a_right))
    full = d * d
    return (
        rank(LinearMap.from_columns(full, left)) == full,
        rank(LinearMap.from_columns(full, right)) == full,
    )


def slice_left(delta: LinearMap, phi: Functional) -> LinearMap:
    """``(phi (x) id) Delta`` as a map ``A -> A``."""
    d = phi.dim
    out = {}
    for i, j, v in delta.entries():
        x, y = divmod(i, d)
        out[(y, j)] = out.get((y, j), ZERO) + phi.values[x] * v
    return LinearMap(d, delta.cols, out)


def slice_right(delta: LinearMap, phi: Functional) -> LinearMap:
    """``(id (x) phi) Delta`` as a map ``A -> A``."""
    d = phi.dim
    out = {}
    for i, j, v in delta.entries():
        x, y = divmod(i, d)
        out[(x, j)] = out.get((x, j), ZERO) + phi.values[y] * v
    return LinearMap(d, delta.cols, out)


def is_haar(algebra: FunctionAlgebra, delta: LinearMap, h: Functional) -> bool:
    """Both invariance identities, with ``h(a) 1`` on the right-hand side."""
    expected = LinearMap.from_columns(algebra.dim, [algebra.unit().scale(v) for v in h.values])
    return slice_left(delta, h) == expected and slice_right(delta, h) == expected


@dataclass(frozen=True)
class HaarResult:
    states: Tuple[Functional, ...]
    unique: bool
    invariant_dimension: int
    consistent: bool


def haar_solve(algebra: FunctionAlgebra, delta: LinearMap) -> HaarResult:
    """All Haar states of ``(A, Delta)``.

    Unknowns are the values ``h(delta_x)``.  The rows encode, for every basis
    element ``z`` and every output coordinate, the two invariance identities,
    plus the normalisation ``h(1) = 1``.  The normalised solution set is at
    most a single point: if ``h`` and ``k`` both solve it then
    ``h * k = k(1) h = h`` and ``h * k = h(1) k = k``.  Positivity is checked
    on that point.
    """
    d = algebra.dim
    _check_comultiplication_shape(delta, d)
    unit = algebra.unit()
    rows = {}
    n_rows = 0

    def add(entries):
        nonlocal n_rows
        rows[n_rows] = entries
        n_rows += 1

    for z in range(d):
        column = delta.column(z)
        lhs_left = [{} for _ in range(d)]
        lhs_right = [{} for _ in range(d)]
        for idx, v in column.entries.items():
            x, y = divmod(idx, d)
            lhs_left[y][x] = lhs_left[y].get(x, ZERO) + v
            lhs_right[x][y] = lhs_right[x].get(y, ZERO) + v
        for coord in range(d):
            for lhs in (lhs_left[coord], lhs_right[coord]):
                eq = dict(lhs)
                eq[z] = eq.get(z, ZERO) - unit[coord]
                add(eq)
    homogeneous = LinearMap(n_rows, d, {(r, c): v for r, eq in rows.items() for c, v in eq.items()})
    invariant_solutions = solve_affine(homogeneous, SparseVector(n_rows))
    add({x: unit[x] for x in range(d)})
    system = LinearMap(n_rows, d, {(r, c): v for r, eq in rows.items() for c, v in eq.items()})
    rhs = SparseVector(n_rows, {n_rows - 1: ONE})
    sol = solve_affine(system, rhs)
    inv_dim = len(invariant_solutions.kernel)
    if not sol.consistent:
        return HaarResult((), False, inv_dim, False)
    # uniqueness argument in the docstring; a nonzero kernel would be a bug
    assert not sol.kernel, "normalised Haar system has a positive-dimensional solution set"
    h = Functional(tuple(sol.particular.to_list()))
    states = (h,) if h.is_state(algebra) else ()
    return HaarResult(states, len(states) == 1, inv_dim, True)


def convolve(rho: Functional, phi: Functional, delta: LinearMap) -> Functional:
    """``(rho * phi)(a) = (rho (x) phi) Delta(a)``."""
    d = rho.dim
    if phi.dim != d:
        raise ValueError("functionals live on different algebras")
    _check_comultiplication_shape(delta, d)
    out = [ZERO] * d
    for i, j, v in delta.entries():
        x, y = divmod(i, d)
        out[j] = out[j] + rho.values[x] * phi.values[y] * v
    return Functional(tuple(out))


def haar_absorption_lambda(h: Functional, rho: Functional, delta: LinearMap) -> Optional[Scalar]:
    """``lambda`` with ``h * rho = rho * h = lambda h``, or ``None`` if not absorbed."""
    left = convolve(h, rho, delta)
    right = convolve(rho, h, delta)
    if left != right:
        return None
    k = next((i for i, v in enumerate(h.values) if v), None)
    if k is None:
        return ZERO if not any(left.values) else None
    lam = left.values[k] / h.values[k]
    return lam if h.scale(lam) == left else None


def is_counit(algebra: FunctionAlgebra, delta: LinearMap, eps: Functional) -> bool:
    d = algebra.dim
    eye = LinearMap.identity(d)
    row = eps.as_row()
    return tensor(row, eye) @ delta == eye and tensor(eye, row) @ delta == eye


def counit_solve(algebra: FunctionAlgebra, delta: LinearMap) -> Optional[Functional]:
    """The counit, searched among point evaluations (the characters of ``C(X)``)."""
    _check_comultiplication_shape(delta, algebra.dim)
    for x in range(algebra.dim):
        eps = Functional.evaluation(algebra.dim, x)
        if is_counit(algebra, delta, eps):
            return eps
    return None
