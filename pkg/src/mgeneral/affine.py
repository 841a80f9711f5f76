"""Points of AG(n,q), affine rank, and the geometric m-general predicate.

A set is m-general when no m of its points lie on a common (m-2)-flat,
i.e. every m-subset is affinely independent.  For sets smaller than m the
predicate degrades to checking all size-|A| subsets, which is the unique
hereditary extension and what the incremental search relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .field import Field, field_from_q_spec

__all__ = [
    "PointSet",
    "affine_rank",
    "is_affinely_independent",
    "is_m_general",
    "add_point_preserves",
    "read_point_set",
    "write_point_set",
]

Point = tuple  # length-n tuple of canonical field-element ints

FORMAT_LINE = "format=1"


@dataclass(frozen=True)
class PointSet:
    """A duplicate-free set of points of F_q^n in canonical (lex) order."""

    field: Field
    n: int
    points: tuple[Point, ...]

    @classmethod
    def of(cls, field: Field, n: int, points: Iterable[Sequence[int]]) -> "PointSet":
        seen = set()
        pts = []
        for p in points:
            p = tuple(int(c) for c in p)
            if len(p) != n:
                raise ValueError(f"point has {len(p)} coords, ambient needs {n}")
            if any(not 0 <= c < field.q for c in p):
                raise ValueError(f"coordinate out of range for q={field.q}: {p}")
            if p not in seen:
                seen.add(p)
                pts.append(p)
        return cls(field, n, tuple(sorted(pts)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.points)

    def with_point(self, p: Sequence[int]) -> "PointSet":
        return PointSet.of(self.field, self.n, self.points + (tuple(p),))

    def encode(self, p: Sequence[int]) -> int:
        """Integer encoding with the first coordinate most significant, so
        numeric order on codes equals lexicographic order on points."""
        acc = 0
        for c in p:
            acc = acc * self.field.q + c
        return acc


def _row_rank(field: Field, rows: list[list[int]]) -> int:
    """Rank over F_q by Gaussian elimination; pivot = first nonzero in column order."""
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, v) for v in rows[r]]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f != 0:
                rows[i] = [
                    field.sub(v, field.mul(f, w)) for v, w in zip(rows[i], rows[r])
                ]
        r += 1
        if r == len(rows):
            break
    return r


def _rank_of_points(field: Field, pts: Sequence[Point]) -> int:
    base = pts[0]
    rows = [[field.sub(c, b) for c, b in zip(p, base)] for p in pts[1:]]
    return _row_rank(field, rows)


def affine_rank(ps: PointSet) -> int:
    """Dimension of the affine hull of the set."""
    if not ps.points:
        raise ValueError("affine_rank: empty set")
    return _rank_of_points(ps.field, ps.points)


def is_affinely_independent(ps: PointSet) -> bool:
    if not ps.points:
        raise ValueError("is_affinely_independent: empty set")
    return affine_rank(ps) == len(ps) - 1


def _independent(field: Field, pts: Sequence[Point]) -> bool:
    return _rank_of_points(field, pts) == len(pts) - 1


def _check_m_range(m: int, n: int) -> None:
    if not 3 <= m <= n + 2:
        raise ValueError(f"m out of range: need 3 <= m <= n+2, got m={m}, n={n}")


def _sidon_ok_char2(codes: Sequence[int]) -> bool:
    """q=2, m=4 fast path: no two distinct pairs share an XOR (pairwise sum)."""
    seen = set()
    for i, a in enumerate(codes):
        for b in codes[i + 1 :]:
            s = a ^ b
            if s in seen:
                return False
            seen.add(s)
    return True


def is_m_general(A: PointSet, m: int, fast_path: bool = True) -> bool:
    """True iff every subset of size min(m, |A|) is affinely independent.

    For |A| >= m this is exactly the no-m-points-on-an-(m-2)-flat condition;
    affine independence is hereditary, so the single subset size suffices.
    """
    _check_m_range(m, A.n)
    if fast_path and A.field.q == 2 and m == 4:
        return _sidon_ok_char2([A.encode(p) for p in A.points])
    s = min(m, len(A))
    if s <= 2:
        return True
    field = A.field
    for subset in combinations(A.points, s):
        if not _independent(field, subset):
            return False
    return True


# kept as the documented spelling of the geometric oracle
is_m_general_geometric = is_m_general


def add_point_preserves(A: PointSet, p: Sequence[int], m: int) -> bool:
    """Incremental test: does A + {p} stay m-general, checking only subsets
    through p?  Assumes A itself is already m-general."""
    _check_m_range(m, A.n)
    p = tuple(int(c) for c in p)
    if p in A:
        raise ValueError(f"point already in set: {p}")
    field = A.field
    if field.q == 2 and m == 4:
        codes = [A.encode(x) for x in A.points]
        pc = A.encode(p)
        seen = set()
        for i, a in enumerate(codes):
            for b in codes[i + 1 :]:
                seen.add(a ^ b)
        new = set()
        for a in codes:
            s = pc ^ a
            if s in seen or s in new:
                return False
            new.add(s)
        return True
    s = min(m, len(A) + 1)
    if s <= 2:
        return True
    for rest in combinations(A.points, s - 1):
        if not _independent(field, rest + (p,)):
            return False
    return True


# -- set files ----------------------------------------------------------------
#
# Line 1: `format=1`; then optional `#` comment lines; then a header
# `q-spec n m` with q-spec = `p^d:modulus-id`; then one point per line,
# coordinates as canonical integers separated by spaces.


def write_point_set(path, A: PointSet, m: int, comments: Sequence[str] = ()) -> None:
    lines = [FORMAT_LINE]
    lines += [f"# {c}" for c in comments]
    lines.append(f"{A.field.q_spec} {A.n} {m}")
    lines += [" ".join(str(c) for c in p) for p in A.points]
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def read_point_set(path) -> tuple[PointSet, int]:
    """Read a set file; returns (point set, declared m)."""
    if hasattr(path, "read"):
        text = path.read()
    else:
        with open(path) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != FORMAT_LINE:
        raise ValueError(f"set file must start with `{FORMAT_LINE}`")
    body = [ln for ln in lines[1:] if not ln.lstrip().startswith("#")]
    if not body:
        raise ValueError("set file missing header line `q-spec n m`")
    header = body[0].split()
    if len(header) != 3:
        raise ValueError(f"bad set file header: {body[0]!r}")
    field = field_from_q_spec(header[0])
    n, m = int(header[1]), int(header[2])
    pts = [[int(tok) for tok in ln.split()] for ln in body[1:]]
    return PointSet.of(field, n, pts), m
