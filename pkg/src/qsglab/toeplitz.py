"""Exact calculus on the Toeplitz monomial algebra.

The unilateral shift ``T`` satisfies ``T*T = 1``, so every word in ``T`` and
``T*`` reduces to a monomial ``T_{n,m} = T^n T*^m``; these span a dense
*-subalgebra.  Elements are finite dictionaries ``{Monomial: Scalar}`` and
elements of the algebraic tensor square are ``{(Monomial, Monomial): Scalar}``.

On the GNS space of the vacuum state ``h`` the classes ``e_k = [T^k]`` form an
orthonormal basis.  Vectors of ``H``, ``H (x) H`` and ``H (x) H (x) H`` are
finitely supported dictionaries keyed by ``k``, ``(i, j)`` and ``(i, j, k)``.
Nothing is truncated: all maps below send finitely supported data to finitely
supported data, and cutoffs only bound the scans in the certificates.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Dict, Iterable, List, NamedTuple, Tuple

from qsglab.linalg import ONE, ZERO, Scalar


class Monomial(NamedTuple):
    n: int
    m: int

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        return monomial_mul(self, other)

    def star(self) -> "Monomial":
        return Monomial(self.m, self.n)

    def __str__(self):
        return f"T_{{{self.n},{self.m}}}"


UNIT = Monomial(0, 0)
T = Monomial(1, 0)
T_STAR = Monomial(0, 1)

Element = Dict[Monomial, Scalar]
Pair = Tuple[Monomial, Monomial]
TensorElement = Dict[Pair, Scalar]
Vec = Dict[int, Scalar]
Vec2 = Dict[Tuple[int, int], Scalar]
Vec3 = Dict[Tuple[int, int, int], Scalar]


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    """``T_{n,m} T_{k,l}``: the inner ``T*^m T^k`` cancels ``min(m, k)`` pairs."""
    n, m = a
    k, l = b
    if k >= m:
        return Monomial(n + k - m, l)
    return Monomial(n, l + m - k)


def _accumulate(pairs: Iterable[Tuple[object, Scalar]]) -> dict:
    out: dict = {}
    for key, c in pairs:
        out[key] = out.get(key, ZERO) + c
    return {k: v for k, v in out.items() if v}


def element(coeffs: Dict[Tuple[int, int], object]) -> Element:
    """Build an element from ``{(n, m): coefficient}``."""
    return _accumulate((Monomial(*k), Scalar.coerce(v)) for k, v in coeffs.items())


def mul(x: Element, y: Element) -> Element:
    return _accumulate((monomial_mul(a, b), c * d) for a, c in x.items() for b, d in y.items())


def star(x: Element) -> Element:
    return {a.star(): c.conjugate() for a, c in x.items()}


def add(x: Element, y: Element) -> Element:
    return _accumulate(list(x.items()) + list(y.items()))


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    return _accumulate(
        ((monomial_mul(a, c), monomial_mul(b, d)), s * t) for (a, b), s in x.items() for (c, d), t in y.items()
    )


def tensor_star(x: TensorElement) -> TensorElement:
    return {(a.star(), b.star()): c.conjugate() for (a, b), c in x.items()}


def toeplitz_delta(x: Element) -> TensorElement:
    """``Delta(T_{n,m}) = T_{n,m} (x) T_{n,m}``, extended linearly."""
    return {(a, a): c for a, c in x.items()}


def toeplitz_haar(x: Element) -> Scalar:
    """Vacuum state: the coefficient of the unit."""
    return x.get(UNIT, ZERO)


def toeplitz_counit(x: Element) -> Scalar:
    """``eps(T_{n,m}) = 1``, so ``eps`` sums the coefficients."""
    total = ZERO
    for c in x.values():
        total = total + c
    return total


def haar_tensor(x: TensorElement) -> Scalar:
    """``(h (x) h)(x)``."""
    total = ZERO
    for (a, b), c in x.items():
        if a == UNIT and b == UNIT:
            total = total + c
    return total


def slice_left(phi: Callable[[Element], Scalar], x: TensorElement) -> Element:
    """``(phi (x) id)(x)``."""
    return _accumulate((b, phi({a: ONE}) * c) for (a, b), c in x.items())


def slice_right(phi: Callable[[Element], Scalar], x: TensorElement) -> Element:
    """``(id (x) phi)(x)``."""
    return _accumulate((a, phi({b: ONE}) * c) for (a, b), c in x.items())


# GNS representation of the vacuum state


def _shift(a: Monomial, k: int):
    n, m = a
    return None if k < m else n + k - m


def gns_action(a: Monomial, v: Vec) -> Vec:
    """``pi(T_{n,m}) e_k = e_{n+k-m}`` when ``k >= m``, else ``0``."""
    return _accumulate((j, c) for k, c in v.items() if (j := _shift(a, k)) is not None)


def gns_action_element(x: Element, v: Vec) -> Vec:
    return _accumulate((j, s * c) for a, s in x.items() for k, c in v.items() if (j := _shift(a, k)) is not None)


def pi_pair(a: Monomial, b: Monomial, v: Vec2) -> Vec2:
    """``(pi(a) (x) pi(b)) v``."""
    out = []
    for (i, j), c in v.items():
        i2, j2 = _shift(a, i), _shift(b, j)
        if i2 is not None and j2 is not None:
            out.append(((i2, j2), c))
    return _accumulate(out)


def pi_tensor(x: TensorElement, v: Vec2) -> Vec2:
    """``(pi (x) pi)(x) v``."""
    out: List[Tuple[Tuple[int, int], Scalar]] = []
    for (a, b), s in x.items():
        out.extend((k, s * c) for k, c in pi_pair(a, b, v).items())
    return _accumulate(out)


def vacuum_class(x: Element) -> Vec:
    """Coordinates of the class of ``x`` in the ``e_k`` basis."""
    return _accumulate((a.n, c) for a, c in x.items() if a.m == 0)


def inner(v: dict, w: dict) -> Scalar:
    """``<v, w>``, conjugate-linear in ``w``."""
    total = ZERO
    for k, c in v.items():
        d = w.get(k)
        if d is not None:
            total = total + c * d.conjugate()
    return total


# the multiplicative isometry and its adjoint


def iso_u(v: Vec2) -> Vec2:
    """``u(e_n (x) e_m) = e_n (x) e_{n+m}``."""
    return {(i, i + j): c for (i, j), c in v.items()}


def iso_u_star(v: Vec2) -> Vec2:
    """``u*(e_n (x) e_j) = e_n (x) e_{j-n}`` for ``j >= n``, else ``0``."""
    return {(i, j - i): c for (i, j), c in v.items() if j >= i}


def on_legs(op: Callable[[Vec2], Vec2], legs: str, v: Vec3) -> Vec3:
    """Apply an operator on ``H (x) H`` to two legs of ``H (x) H (x) H``."""
    out: List[Tuple[Tuple[int, int, int], Scalar]] = []
    for (a, b, c), s in v.items():
        if legs == "12":
            out.extend(((x, y, c), s * t) for (x, y), t in op({(a, b): ONE}).items())
        elif legs == "23":
            out.extend(((a, x, y), s * t) for (x, y), t in op({(b, c): ONE}).items())
        elif legs == "13":
            out.extend(((x, b, y), s * t) for (x, y), t in op({(a, c): ONE}).items())
        else:
            raise ValueError(f"unknown leg pair {legs}")
    return _accumulate(out)


def pentagon_sides(a: int, b: int, c: int) -> Tuple[Vec3, Vec3]:
    v = {(a, b, c): ONE}
    lhs = on_legs(iso_u, "12", on_legs(iso_u, "13", on_legs(iso_u, "23", v)))
    rhs = on_legs(iso_u, "23", on_legs(iso_u, "12", v))
    return lhs, rhs


def pentagon_certificate(cutoff: int) -> dict:
    """Compare both sides of the pentagon on every ``e_a (x) e_b (x) e_c``, indices up to ``cutoff``.

    Each side is also compared with ``e_a (x) e_{a+b} (x) e_{a+b+c}``.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    mismatches = 0
    off_closed_form = 0
    checked = 0
    for a, b, c in product(range(cutoff + 1), repeat=3):
        lhs, rhs = pentagon_sides(a, b, c)
        checked += 1
        if lhs != rhs:
            mismatches += 1
        if lhs != {(a, a + b, a + b + c): ONE}:
            off_closed_form += 1
    return {
        "certificate": "pentagon",
        "cutoff": cutoff,
        "triples_checked": checked,
        "mismatches": mismatches,
        "closed_form": "e_a (x) e_(a+b) (x) e_(a+b+c)",
        "closed_form_mismatches": off_closed_form,
    }


def intertwining_certificate(cutoff: int) -> dict:
    """Intertwining relations of ``u`` with the shift, and the conjugation identity.

    Relations are checked on all ``e_i (x) e_j`` with ``i, j <= cutoff``; the
    conjugation identity ``u* (pi (x) pi)(Delta x) u = pi(x) (x) 1`` also runs
    over every monomial ``T_{n,m}`` with ``n, m <= cutoff``.  The opposite
    orientation ``u (pi(x) (x) 1) u* = (pi (x) pi)(Delta x)`` is counted but
    not required: it fails off the range of ``u``.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    rng = range(cutoff + 1)
    counts = {"shift": 0, "shift_adjoint": 0, "adjoint_relation": 0, "conjugation_identity": 0}
    checked = {k: 0 for k in counts}
    reverse_failures = 0
    for i, j in product(rng, repeat=2):
        v = {(i, j): ONE}
        checked["shift"] += 1
        if iso_u(pi_pair(T, UNIT, v)) != pi_pair(T, T, iso_u(v)):
            counts["shift"] += 1
        checked["shift_adjoint"] += 1
        if iso_u(pi_pair(T_STAR, UNIT, v)) != pi_pair(T_STAR, T_STAR, iso_u(v)):
            counts["shift_adjoint"] += 1
        checked["adjoint_relation"] += 1
        if iso_u_star(pi_pair(T_STAR, T_STAR, v)) != pi_pair(T_STAR, UNIT, iso_u_star(v)):
            counts["adjoint_relation"] += 1
        for n, m in product(rng, repeat=2):
            a = Monomial(n, m)
            lifted = toeplitz_delta({a: ONE})
            checked["conjugation_identity"] += 1
            if iso_u_star(pi_tensor(lifted, iso_u(v))) != pi_pair(a, UNIT, v):
                counts["conjugation_identity"] += 1
            if iso_u(pi_pair(a, UNIT, iso_u_star(v))) != pi_tensor(lifted, v):
                reverse_failures += 1
    return {
        "certificate": "intertwine",
        "cutoff": cutoff,
        "checked": checked,
        "failures": counts,
        "mismatches": sum(counts.values()),
        "reverse_conjugation_failures": reverse_failures,
    }


def cokernel_certificate(cutoff: int) -> dict:
    """The grid vectors ``e_i (x) e_j`` (``j < i <= cutoff``) orthogonal to the range of ``u``.

    Orthogonality is certified by ``u* v = 0``; every other grid vector is
    certified to lie in the range by exhibiting its preimage.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    basis = []
    mismatches = 0
    for i, j in product(range(cutoff + 1), repeat=2):
        v = {(i, j): ONE}
        if j < i:
            basis.append((i, j))
            if iso_u_star(v):
                mismatches += 1
        elif iso_u({(i, j - i): ONE}) != v:
            mismatches += 1
    expected = cutoff * (cutoff + 1) // 2
    return {
        "certificate": "cokernel",
        "cutoff": cutoff,
        "dimension": len(basis),
        "expected_dimension": expected,
        "basis": basis,
        "mismatches": mismatches + (len(basis) != expected),
        "surjective": not basis,
    }


def isometry_certificate(cutoff: int) -> dict:
    """``<u x, u y> = <x, y>``, ``u*u = 1`` and ``uu*`` = projection onto ``{j >= i}`` on the grid."""
    grid = [(i, j) for i, j in product(range(cutoff + 1), repeat=2)]
    images = {p: iso_u({p: ONE}) for p in grid}
    mismatches = 0
    for p in grid:
        if iso_u_star(images[p]) != {p: ONE}:
            mismatches += 1
        expected = {p: ONE} if p[1] >= p[0] else {}
        if iso_u(iso_u_star({p: ONE})) != expected:
            mismatches += 1
        for q in grid:
            if inner(images[p], images[q]) != (ONE if p == q else ZERO):
                mismatches += 1
    return {"certificate": "isometry", "cutoff": cutoff, "pairs_checked": len(grid) ** 2, "mismatches": mismatches}


def iso_u_oracle(n: int, m: int, reach: int) -> Vec2:
    """Class of ``Delta(T^n)(1 (x) T^m)`` found from ``h (x) h`` inner products alone.

    Coordinates against ``[T^i (x) T^j]`` for ``i, j <= reach`` are computed as
    ``(h (x) h)((T^i (x) T^j)* x)``; the result is accepted only if its norm
    matches ``(h (x) h)(x* x)``, which certifies that nothing lies outside the
    probed block.
    """
    x = tensor_mul(toeplitz_delta({Monomial(n, 0): ONE}), {(UNIT, Monomial(m, 0)): ONE})
    coords: Vec2 = {}
    for i, j in product(range(reach + 1), repeat=2):
        probe = tensor_star({(Monomial(i, 0), Monomial(j, 0)): ONE})
        c = haar_tensor(tensor_mul(probe, x))
        if c:
            coords[(i, j)] = c
    if inner(coords, coords) != haar_tensor(tensor_mul(tensor_star(x), x)):
        raise ValueError(f"probe block of size {reach} does not capture the class")
    return coords


# the counit operators W^L, W^R and their primed companions on pure tensors


def wl(p: Pair) -> Pair:
    return (p[0], p[0])


def wr(p: Pair) -> Pair:
    return (p[1], p[1])


def wl_prime(p: Pair) -> Pair:
    return (p[0], UNIT)


def wr_prime(p: Pair) -> Pair:
    return (UNIT, p[1])


def flipped(op: Callable[[Pair], Pair]) -> Callable[[Pair], Pair]:
    """``Sigma op Sigma``."""
    return lambda p: op((p[1], p[0]))[::-1]


def apply_pair_map(op: Callable[[Pair], Pair], x: TensorElement) -> TensorElement:
    """Linear extension of an operator that maps monomial pairs to monomial pairs.

    Valid for the four counit operators because ``eps`` is 1 on every monomial.
    """
    return _accumulate((op(p), c) for p, c in x.items())


def toeplitz_wl_wr(p: Pair) -> Tuple[Pair, Pair]:
    return wl(p), wr(p)


def _pentagon_holds(op: Callable[[Pair], Pair], a: Monomial, b: Monomial, c: Monomial) -> bool:
    # W23, then W13, then W12
    y, z = op((b, c))
    x, z = op((a, z))
    x, y = op((x, y))
    lhs = (x, y, z)
    # W12, then W23
    x, y = op((a, b))
    y, z = op((y, c))
    return lhs == (x, y, z)


def wops_certificate(cutoff: int, hom_cutoff: int = 3) -> dict:
    """Counit-operator identities on all monomials ``T_{n,m}`` with ``n, m <= cutoff``.

    Pentagon checks run over all triples of such monomials; the other
    identities over monomials and pairs.  The *-homomorphism property is
    checked on pairs of pairs with indices up to ``hom_cutoff``.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    monos = [Monomial(n, m) for n, m in product(range(cutoff + 1), repeat=2)]
    pairs = [(a, b) for a in monos for b in monos]
    delta_l = lambda a: (a, UNIT)  # noqa: E731
    delta_r = lambda a: (UNIT, a)  # noqa: E731
    d = {
        "delta_eq_wl_deltaL": all(wl(delta_l(a)) == (a, a) for a in monos),
        "delta_eq_wr_deltaR": all(wr(delta_r(a)) == (a, a) for a in monos),
        "pentagon_wl": all(_pentagon_holds(wl, a, b, c) for a in monos for b in monos for c in monos),
        "pentagon_wr": all(_pentagon_holds(wr, a, b, c) for a in monos for b in monos for c in monos),
        "pentagon_flipped_wr": all(
            _pentagon_holds(flipped(wr), a, b, c) for a in monos for b in monos for c in monos
        ),
        "wl_idempotent": all(wl(wl(p)) == wl(p) for p in pairs),
        "wr_idempotent": all(wr(wr(p)) == wr(p) for p in pairs),
        "wl_wr_equals_wr": all(wl(wr(p)) == wr(p) for p in pairs),
        "wr_wl_equals_wl": all(wr(wl(p)) == wl(p) for p in pairs),
        "wl_prime_delta_eq_deltaL": all(wl_prime((a, a)) == delta_l(a) for a in monos),
        "wr_prime_delta_eq_deltaR": all(wr_prime((a, a)) == delta_r(a) for a in monos),
        "wl_wl_prime_equals_wl": all(wl(wl_prime(p)) == wl(p) for p in pairs),
        "wr_wr_prime_equals_wr": all(wr(wr_prime(p)) == wr(p) for p in pairs),
        "wl_prime_idempotent": all(wl_prime(wl_prime(p)) == wl_prime(p) for p in pairs),
        "wr_prime_idempotent": all(wr_prime(wr_prime(p)) == wr_prime(p) for p in pairs),
    }
    small = [Monomial(n, m) for n, m in product(range(min(cutoff, hom_cutoff) + 1), repeat=2)]
    small_pairs = [(a, b) for a in small for b in small]
    for name, op in (("wl_star_hom", wl), ("wr_star_hom", wr)):
        d[name] = all(
            op((monomial_mul(p[0], q[0]), monomial_mul(p[1], q[1])))
            == tuple(monomial_mul(s, t) for s, t in zip(op(p), op(q)))
            for p in small_pairs
            for q in small_pairs
        ) and all(op((p[0].star(), p[1].star())) == tuple(s.star() for s in op(p)) for p in small_pairs)
    identities = {
        "delta_factorization": d["delta_eq_wl_deltaL"] and d["delta_eq_wr_deltaR"],
        "pentagon_wl": d["pentagon_wl"],
        "pentagon_wr": d["pentagon_wr"],
        "wl_idempotent": d["wl_idempotent"],
        "wr_idempotent": d["wr_idempotent"],
        "wl_wr_equals_wr": d["wl_wr_equals_wr"],
        "wr_wl_equals_wl": d["wr_wl_equals_wl"],
        "primed_identities": all(
            d[k]
            for k in (
                "wl_prime_delta_eq_deltaL",
                "wr_prime_delta_eq_deltaR",
                "wl_wl_prime_equals_wl",
                "wr_wr_prime_equals_wr",
                "wl_prime_idempotent",
                "wr_prime_idempotent",
            )
        ),
    }
    return {
        "certificate": "wops",
        "cutoff": cutoff,
        "monomials": len(monos),
        "identities": identities,
        "details": d,
        "mismatches": sum(1 for k, v in d.items() if not v and k != "pentagon_wr"),
    }
