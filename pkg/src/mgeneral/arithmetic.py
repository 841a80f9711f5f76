"""Arithmetic characterization of m-general sets.

A set is m-general exactly when, for every length-m coefficient vector
with entries summing to zero (not all zero), no m distinct points of the
set satisfy the corresponding linear equation.  This module provides that
oracle independently of the geometric rank computation, plus the weak
B_k / B_k predicates and the k-sum injectivity check that drives the
counting bound.

Coefficient vectors whose support has size <= 2 never have solutions in
distinct points (a single nonzero entry cannot sum to zero; two nonzero
entries force equality of two distinct points), so only supports of size
>= 3 are ever enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Iterator, Sequence

from .affine import PointSet
from .field import Field

__all__ = [
    "CoeffVector",
    "apply_form",
    "sum_zero_vectors",
    "nonzero_sum_vectors",
    "count_nonzero_sum_vectors",
    "weakly_avoids",
    "is_m_general_arithmetic",
    "is_weak_bk",
    "is_bk",
    "verify_ksum_injectivity",
]

KIND_SUM_ZERO = "sum_zero"
KIND_NONZERO_SUM = "nonzero_sum"


@dataclass(frozen=True)
class CoeffVector:
    """A validated coefficient vector over F_q.

    kind `sum_zero`: entries sum to 0 and are not identically zero.
    kind `nonzero_sum`: every entry is nonzero and the entries sum to gamma.
    """

    field: Field
    coeffs: tuple[int, ...]
    kind: str
    gamma: int | None = None

    def __post_init__(self):
        f = self.field
        total = 0
        for c in self.coeffs:
            if not 0 <= c < f.q:
                raise ValueError(f"coefficient out of range: {c}")
            total = f.add(total, c)
        if self.kind == KIND_SUM_ZERO:
            if total != 0:
                raise ValueError("sum_zero vector: entries must sum to 0")
            if not any(self.coeffs):
                raise ValueError("sum_zero vector: entries must not be identically 0")
        elif self.kind == KIND_NONZERO_SUM:
            if any(c == 0 for c in self.coeffs):
                raise ValueError("nonzero_sum vector: all entries must be nonzero")
            if total != self.gamma:
                raise ValueError(f"nonzero_sum vector: entries sum to {total}, not {self.gamma}")
        else:
            raise ValueError(f"unknown coefficient vector kind: {self.kind}")

    @classmethod
    def sum_zero(cls, field: Field, coeffs: Sequence[int]) -> "CoeffVector":
        return cls(field, tuple(coeffs), KIND_SUM_ZERO)

    @classmethod
    def nonzero_sum(cls, field: Field, coeffs: Sequence[int], gamma: int) -> "CoeffVector":
        return cls(field, tuple(coeffs), KIND_NONZERO_SUM, gamma)

    def __len__(self) -> int:
        return len(self.coeffs)


def _combo(field: Field, coeffs: Sequence[int], pts: Sequence[tuple]) -> tuple:
    """The linear combination sum_j coeffs[j] * pts[j], coordinatewise."""
    n = len(pts[0])
    out = [0] * n
    for c, p in zip(coeffs, pts):
        if c == 0:
            continue
        for i in range(n):
            if p[i]:
                out[i] = field.add(out[i], field.mul(c, p[i]))
    return tuple(out)


def apply_form(c: CoeffVector, xs: Sequence[Sequence[int]]) -> tuple:
    """Evaluate the linear form given by c at a tuple of points."""
    if len(xs) != len(c.coeffs):
        raise ValueError(f"form has {len(c.coeffs)} slots, got {len(xs)} points")
    pts = [tuple(p) for p in xs]
    if len({len(p) for p in pts}) != 1:
        raise ValueError("points must share an ambient dimension")
    return _combo(c.field, c.coeffs, pts)


def sum_zero_vectors(field: Field, t: int) -> Iterator[CoeffVector]:
    """All length-t vectors summing to 0, not identically 0; q^(t-1) - 1 of them."""
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    for prefix in product(field.elements(), repeat=t - 1):
        total = 0
        for c in prefix:
            total = field.add(total, c)
        last = field.neg(total)
        if last == 0 and not any(prefix):
            continue
        yield CoeffVector(field, prefix + (last,), KIND_SUM_ZERO)


def nonzero_sum_vectors(field: Field, k: int, gamma: int) -> Iterator[CoeffVector]:
    """All length-k vectors with every entry nonzero summing to gamma."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if k == 1:
        if gamma != 0:
            yield CoeffVector(field, (gamma,), KIND_NONZERO_SUM, gamma)
        return
    nonzero = range(1, field.q)
    for prefix in product(nonzero, repeat=k - 1):
        total = 0
        for c in prefix:
            total = field.add(total, c)
        last = field.sub(gamma, total)
        if last == 0:
            continue
        yield CoeffVector(field, prefix + (last,), KIND_NONZERO_SUM, gamma)


def count_nonzero_sum_vectors(q: int, k: int, gamma_is_zero: bool) -> int:
    """Exact count of length-k all-nonzero vectors with a fixed sum.

    Recurrence on (count for sum 0, count for any fixed nonzero sum): the
    last entry is either the missing amount or any other nonzero value.
    """
    zero_ct, nonzero_ct = 1, 0  # k = 0: only the empty vector sums to 0
    for _ in range(k):
        zero_ct, nonzero_ct = (q - 1) * nonzero_ct, zero_ct + (q - 2) * nonzero_ct
    return zero_ct if gamma_is_zero else nonzero_ct


def _support_hits(field: Field, coeffs: Sequence[int], A: PointSet) -> bool:
    """Is there a tuple of len(coeffs) distinct points with combination 0?

    coeffs must be all-nonzero.  Distinct assignments are enumerated as
    subset x distinct-permutation-of-coefficients, which covers exactly the
    injective tuples.
    """
    t = len(coeffs)
    if t > len(A):
        return False
    zero = (0,) * A.n
    perms = sorted(set(permutations(coeffs)))
    for subset in combinations(A.points, t):
        for cs in perms:
            if _combo(field, cs, subset) == zero:
                return True
    return False


def weakly_avoids(A: PointSet, c: CoeffVector) -> bool:
    """True iff no tuple of t distinct points of A satisfies the form = 0."""
    if c.kind != KIND_SUM_ZERO:
        raise ValueError("weakly_avoids expects a sum_zero coefficient vector")
    support = tuple(x for x in c.coeffs if x != 0)
    if len(support) <= 2:
        return True
    return not _support_hits(c.field, support, A)


def is_m_general_arithmetic(A: PointSet, m: int) -> bool:
    """The m-general test via weak avoidance of every zero-sum form of length m.

    Requires |A| >= m.  The equivalence with the geometric predicate is
    established for 3 <= m <= n; callers may use the full geometric range
    3 <= m <= n+2, where the two oracles are still required to agree.

    A length-m vector restricted to its support (size t, 3 <= t <= m) gives
    the same avoidance condition, and padding back up needs only m - t spare
    distinct points, guaranteed by |A| >= m; so supports are enumerated as
    all-nonzero zero-sum multisets of each length t.
    """
    if not 3 <= m <= A.n + 2:
        raise ValueError(f"m out of range: need 3 <= m <= n+2, got m={m}, n={A.n}")
    if len(A) < m:
        raise ValueError(f"arithmetic test needs |A| >= m, got |A|={len(A)}, m={m}")
    field = A.field
    nonzero = range(1, field.q)
    for t in range(3, m + 1):
        if t > len(A):
            break
        for ms in combinations_with_replacement(nonzero, t):
            total = 0
            for c in ms:
                total = field.add(total, c)
            if total != 0:
                continue
            if _support_hits(field, ms, A):
                return False
    return True


def _subset_sum(field: Field, pts: Sequence[tuple], n: int) -> tuple:
    out = [0] * n
    for p in pts:
        for i in range(n):
            out[i] = field.add(out[i], p[i])
    return tuple(out)


def is_weak_bk(A: PointSet, k: int) -> bool:
    """True iff all k-subsets of A (distinct elements) have distinct sums."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    field = A.field
    if field.q == 2:
        # sums become XORs of integer encodings
        codes = [A.encode(p) for p in A.points]
        seen_codes = set()
        for subset in combinations(codes, k):
            s = 0
            for c in subset:
                s ^= c
            if s in seen_codes:
                return False
            seen_codes.add(s)
        return True
    seen: dict[tuple, tuple] = {}
    for subset in combinations(A.points, k):
        s = _subset_sum(field, subset, A.n)
        if s in seen:
            return False
        seen[s] = subset
    return True


def is_bk(A: PointSet, k: int) -> bool:
    """True iff all k-multisets of A have distinct sums up to permutation.

    In characteristic 2 a doubled element cancels, so multisets reducing to
    the same odd-multiplicity support are deemed trivially equal-sum (the
    a + a = b + b convention for Sidon sets in even characteristic).
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    field = A.field
    char2 = field.p == 2
    seen: dict[tuple, tuple] = {}
    for ms in combinations_with_replacement(A.points, k):
        if char2:
            key_src = tuple(p for p in set(ms) if ms.count(p) % 2 == 1)
            key = tuple(sorted(key_src))
        else:
            key = ms
        s = _subset_sum(field, ms, A.n)
        if s in seen and seen[s] != key:
            return False
        seen[s] = key
    return True


def verify_ksum_injectivity(A: PointSet, k: int, gamma: int) -> bool:
    """Injectivity of (coefficients, increasing k-tuple) -> weighted sum.

    Coefficients range over all-nonzero length-k vectors summing to gamma
    and tuples over k-subsets of A in canonical order.  Holds whenever A is
    2k-general.  For q > 2 gamma must be nonzero; over F_2 the gamma = 0
    family is the all-ones vector for even k, recovering distinct k-subset
    sums.
    """
    field = A.field
    if field.q > 2 and gamma == 0:
        raise ValueError("gamma must be nonzero for q > 2")
    coeff_list = [c.coeffs for c in nonzero_sum_vectors(field, k, gamma)]
    seen: dict[tuple, tuple] = {}
    for subset in combinations(A.points, k):
        for cs in coeff_list:
            img = _combo(field, cs, subset)
            key = (cs, subset)
            if img in seen and seen[img] != key:
                return False
            seen[img] = key
    return True
