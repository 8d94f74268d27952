"""GNS construction for states on function algebras and the multiplicative isometry.

Vectors of ``H_h`` are handled in two coordinate systems.  *Quotient
coordinates* expand a class in the classes of the pivot basis elements
chosen by exact row reduction of the Gram matrix.  *Orthonormal coordinates*
come from the factorisation ``M = P^H diag(d) P`` of the quotient Gram matrix;
a vector with quotient coordinates ``c`` has orthonormal coordinates
``diag(d)^(1/2) P c``.  Operators only ever need the ratios
``sqrt(d_i / d_j)``, which are rational for every corpus example; when one is
not, :class:`~qsglab.linalg.OutsideExactField` is raised.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from qsglab.linalg import (
    ONE,
    ZERO,
    LinearMap,
    OutsideExactField,
    Scalar,
    SparseVector,
    exact_sqrt,
    inverse,
    is_isometry,
    is_unitary,
    kernel,
    kron_vectors,
    rank,
    rref,
    tensor,
)

from .algebra import FunctionAlgebra, Functional, is_haar
from .operators import pentagon_check


class NotAState(ValueError):
    pass


class NotHaar(ValueError):
    pass


class RepresentativeInconsistency(RuntimeError):
    """The class of ``Delta(a)(1 (x) b)`` depends on the representatives of ``a, b``."""


@dataclass(frozen=True)
class Frame:
    """``M = P^H diag(d) P`` with ``P`` unit upper triangular."""

    p: LinearMap
    p_inv: LinearMap
    d: Tuple[Fraction, ...]

    @classmethod
    def of(cls, m: LinearMap) -> "Frame":
        n = m.rows
        lower = [[ZERO] * n for _ in range(n)]
        d: List[Scalar] = []
        for j in range(n):
            dj = m[j, j]
            for k in range(j):
                dj = dj - lower[j][k] * lower[j][k].conjugate() * d[k]
            if not dj.is_real or dj.re <= 0:
                raise ValueError("Gram matrix is not positive definite")
            d.append(dj)
            lower[j][j] = ONE
            for i in range(j + 1, n):
                s = m[i, j]
                for k in range(j):
                    s = s - lower[i][k] * lower[j][k].conjugate() * d[k]
                lower[i][j] = s / dj
        p = LinearMap.from_dense(lower).adjoint() if n else LinearMap.zero(0, 0)
        return cls(p, inverse(p) if n else p, tuple(x.re for x in d))

    def tensor(self, other: "Frame") -> "Frame":
        return Frame(
            tensor(self.p, other.p),
            tensor(self.p_inv, other.p_inv),
            tuple(a * b for a in self.d for b in other.d),
        )

    def operator(self, xq: LinearMap, source: "Frame" = None) -> LinearMap:
        """Matrix of an operator in orthonormal coordinates, from quotient coordinates."""
        source = source or self
        y = self.p @ xq @ source.p_inv
        out = {}
        for i, j, v in y.entries():
            ratio = exact_sqrt(self.d[i] / source.d[j])
            if ratio is None:
                raise OutsideExactField(f"sqrt({self.d[i] / source.d[j]}) is irrational")
            out[(i, j)] = v * ratio
        return LinearMap(y.rows, y.cols, out)


@dataclass(frozen=True)
class GnsData:
    algebra_dim: int
    quotient_dim: int
    pivots: Tuple[int, ...]
    representative: LinearMap  # a -> quotient coordinates of its class
    gram: LinearMap  # gram[a, b] = h(b* a)
    inner: LinearMap  # quotient Gram: inner[l, k] = <class p_k, class p_l>
    frame: Frame
    pi: Tuple[LinearMap, ...]  # orthonormal coordinates, one per basis element

    def pi_of(self, a: SparseVector) -> LinearMap:
        out = LinearMap.zero(self.quotient_dim, self.quotient_dim)
        for i, v in a.entries.items():
            out = out + self.pi[i].scale(v)
        return out

    def pi_pi(self, x: SparseVector) -> LinearMap:
        """``(pi (x) pi)(x)`` for ``x`` in ``A (x) A``."""
        r, d = self.quotient_dim, self.algebra_dim
        out = LinearMap.zero(r * r, r * r)
        for idx, v in x.entries.items():
            i, j = divmod(idx, d)
            out = out + tensor(self.pi[i], self.pi[j]).scale(v)
        return out

    def inner_product(self, a: SparseVector, b: SparseVector) -> Scalar:
        """``<class a, class b>`` computed from quotient coordinates."""
        ca, cb = self.representative @ a, self.representative @ b
        return (self.inner @ ca).inner(cb)


def gram_matrix(algebra: FunctionAlgebra, h: Functional) -> LinearMap:
    d = algebra.dim
    basis = [algebra.basis(x) for x in range(d)]
    return LinearMap(
        d, d, {(a, b): h(algebra.mul(algebra.star(basis[b]), basis[a])) for a in range(d) for b in range(d)}
    )


def gns_construct(algebra: FunctionAlgebra, h: Functional) -> GnsData:
    if h.dim != algebra.dim or not h.is_state(algebra):
        raise NotAState("GNS construction needs a state")
    d = algebra.dim
    gram = gram_matrix(algebra, h)
    rows = [{b: gram[a, b] for b in range(d) if gram[a, b]} for a in range(d)]
    reduced, pivots = rref(rows, d)
    r = len(pivots)
    representative = LinearMap(r, d, {(k, j): v for k, row in enumerate(reduced) for j, v in row.items()})
    inner = LinearMap(r, r, {(l, k): gram[pivots[k], pivots[l]] for k in range(r) for l in range(r)})
    frame = Frame.of(inner)
    basis = [algebra.basis(x) for x in range(d)]
    pi = []
    for a in range(d):
        cols = [representative @ algebra.mul(basis[a], basis[p]) for p in pivots]
        pi.append(frame.operator(LinearMap.from_columns(r, cols)))
    return GnsData(d, r, tuple(pivots), representative, gram, inner, frame, tuple(pi))


def verify_gns(algebra: FunctionAlgebra, h: Functional, gns: GnsData) -> Dict[str, bool]:
    """Evaluate every structural identity of a GNS construction."""
    d, r = algebra.dim, gns.quotient_dim
    basis = [algebra.basis(x) for x in range(d)]
    null = kernel(gns.representative)
    kernel_ok = len(null) == d - rank(gns.gram) and all(
        h(algebra.mul(algebra.star(k), k)) == ZERO and (gns.gram @ k).is_zero() for k in null
    )
    gram_ok = all(
        gns.inner_product(basis[a], basis[b]) == gns.gram[a, b] for a in range(d) for b in range(d)
    )
    eye = LinearMap.identity(r)
    unital = gns.pi_of(algebra.unit()) == eye
    mult = all(
        gns.pi_of(algebra.mul(basis[a], basis[b])) == gns.pi[a] @ gns.pi[b] for a in range(d) for b in range(d)
    )
    star = all(gns.pi_of(algebra.star(basis[a])) == gns.pi[a].adjoint() for a in range(d))
    return {
        "null_space": kernel_ok,
        "gram_reconstruction": gram_ok,
        "unital": unital,
        "multiplicative": mult,
        "star": star,
        "dimension_is_gram_rank": r == rank(gns.gram),
    }


@dataclass
class IsometryResult:
    u: LinearMap  # orthonormal coordinates on H_h (x) H_h
    u_quotient: LinearMap
    gns: GnsData
    is_isometry: bool
    is_unitary: bool
    pentagon: bool
    conjugation_identity: bool  # u*(pi (x) pi)(Delta a) u == pi(a) (x) I
    reverse_conjugation: bool  # u (pi(a) (x) I) u* == (pi (x) pi)(Delta a)


def multiplicative_isometry(
    algebra: FunctionAlgebra, delta: LinearMap, h: Functional, gns: GnsData = None
) -> IsometryResult:
    """``u(class a (x) class b) = class of Delta(a)(1 (x) b)`` on ``H_h (x) H_h``.

    ``H_{h (x) h}`` is identified with ``H_h (x) H_h`` through the tensor
    square of the representative map, which is exact because the Gram matrix
    of ``h (x) h`` is the Kronecker square of the Gram matrix of ``h``.
    """
    if not is_haar(algebra, delta, h):
        raise NotHaar("state is not invariant under the comultiplication")
    gns = gns or gns_construct(algebra, h)
    d, r = algebra.dim, gns.quotient_dim
    rr = tensor(gns.representative, gns.representative)
    big = algebra.tensor_square()
    unit = algebra.unit()
    images = delta.columns()

    def klass(a: int, b: int) -> SparseVector:
        return rr @ big.mul(images[a], kron_vectors(unit, algebra.basis(b)))

    u_q = LinearMap.from_columns(r * r, [klass(pa, pb) for pa in gns.pivots for pb in gns.pivots])
    for a in range(d):
        ra = gns.representative.column(a)
        for b in range(d):
            if klass(a, b) != u_q @ kron_vectors(ra, gns.representative.column(b)):
                raise RepresentativeInconsistency(f"basis pair ({a}, {b})")
    frame2 = gns.frame.tensor(gns.frame)
    u = frame2.operator(u_q)
    u_star = u.adjoint()
    eye = LinearMap.identity(r)
    conj = True
    reverse = True
    for a in range(d):
        lifted = gns.pi_pi(images[a])
        side = tensor(gns.pi[a], eye)
        conj = conj and u_star @ lifted @ u == side
        reverse = reverse and u @ side @ u_star == lifted
    return IsometryResult(u, u_q, gns, is_isometry(u), is_unitary(u), pentagon_check(u), conj, reverse)


def isometry_oracle(algebra: FunctionAlgebra, delta: LinearMap, h: Functional, gns: GnsData) -> LinearMap:
    """The same isometry recovered from inner products alone.

    Each entry ``<u(class a_k (x) class a_l), class a_i (x) class a_j>`` is the
    value of ``h (x) h`` on ``(a_i (x) a_j)* Delta(a_k)(1 (x) a_l)``; inverting
    the Gram matrix of the pivot basis turns these into coordinates.  No
    representative map is used.
    """
    d = algebra.dim
    piv = gns.pivots
    r = len(piv)
    big = algebra.tensor_square()
    unit = algebra.unit()
    images = delta.columns()

    def hh(x: SparseVector) -> Scalar:
        total = ZERO
        for idx, v in x.entries.items():
            i, j = divmod(idx, d)
            total = total + h.values[i] * h.values[j] * v
        return total

    entries = {}
    for k, pk in enumerate(piv):
        for l, pl in enumerate(piv):
            z = big.mul(images[pk], kron_vectors(unit, algebra.basis(pl)))
            for i, pi_ in enumerate(piv):
                for j, pj in enumerate(piv):
                    probe = kron_vectors(algebra.basis(pi_), algebra.basis(pj))
                    entries[(i * r + j, k * r + l)] = hh(big.mul(big.star(probe), z))
    ip = LinearMap(r * r, r * r, entries)
    u_q = inverse(tensor(gns.inner, gns.inner)) @ ip
    return gns.frame.tensor(gns.frame).operator(u_q)
