"""Independent brute-force oracles used to cross-validate the library.

Everything here is deliberately written from the definitions, sharing no
algorithmic machinery with the package: multiplication is schoolbook
polynomial arithmetic, affine dependence enumerates coefficient vectors,
inverses are found by scanning, and the search oracle is an unpruned DFS
with no symmetry reduction.
"""

from __future__ import annotations

from itertools import combinations, product


def naive_mul(field, a: int, b: int) -> int:
    """Schoolbook polynomial product mod the field modulus."""
    p, d = field.p, field.d
    ca = [(a // p**i) % p for i in range(d)]
    cb = [(b // p**i) % p for i in range(d)]
    prod = [0] * (2 * d - 1)
    for i in range(d):
        for j in range(d):
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p
    mod = list(field.modulus)
    for top in range(len(prod) - 1, d - 1, -1):
        coef = prod[top]
        if coef:
            for i in range(d + 1):
                prod[top - d + i] = (prod[top - d + i] - coef * mod[i]) % p
    return sum(prod[i] * p**i for i in range(d))


_inv_cache: dict = {}


def naive_inv(field, a: int) -> int:
    """Multiplicative inverse found by scanning all elements."""
    key = (field.p, field.d, field.modulus, a)
    hit = _inv_cache.get(key)
    if hit is not None:
        return hit
    for b in range(1, field.q):
        if naive_mul(field, a, b) == 1:
            _inv_cache[key] = b
            return b
    raise AssertionError(f"no inverse for {a}")


def dependent_by_enumeration(field, pts) -> bool:
    """Affine dependence straight from the definition: some nonzero
    coefficient vector summing to 0 kills the points.  Exponential in
    len(pts); only for tiny instances."""
    n = len(pts[0])
    for coeffs in product(range(field.q), repeat=len(pts)):
        if not any(coeffs):
            continue
        total = 0
        for c in coeffs:
            total = field.add(total, c)
        if total != 0:
            continue
        out = [0] * n
        for c, pt in zip(coeffs, pts):
            for i in range(n):
                out[i] = field.add(out[i], field.mul(c, pt[i]))
        if not any(out):
            return True
    return False


def rank_oracle(field, pts) -> int:
    """Row-echelon rank of {p - p0}, written independently of the library."""
    base = pts[0]
    rows = [[field.sub(c, b) for c, b in zip(p, base)] for p in pts[1:]]
    rank = 0
    ncols = len(base)
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = naive_inv(field, rows[rank][col])
        rows[rank] = [field.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def m_general_oracle(field, pts, m: int) -> bool:
    """Every subset of size min(m, |pts|) affinely independent, via rank_oracle."""
    s = min(m, len(pts))
    if s <= 2:
        return True
    for sub in combinations(pts, s):
        if rank_oracle(field, sub) != s - 1:
            return False
    return True


def sidon_oracle_q2(codes) -> bool:
    """Distinct pair XORs over distinct elements, plain set version."""
    seen = set()
    for i, a in enumerate(codes):
        for b in codes[i + 1 :]:
            s = a ^ b
            if s in seen:
                return False
            seen.add(s)
    return True


def brute_force_max(field, n: int, m: int, node_budget: int = 10_000_000,
                    time_budget: float | None = None):
    """Unpruned DFS over every m-general subset: no origin fixing, no best
    bound, no cap.  Returns (max size, lex-least maximum witness, nodes) or
    None when a budget runs out.

    The tree is the set of all m-general subsets in canonical order, so the
    first witness reached at the maximum size is the lexicographically least.
    """
    import time as _time

    deadline = None if time_budget is None else _time.monotonic() + time_budget
    q = field.q
    total = q**n
    decoded = []
    for code in range(total):
        coords, c = [], code
        for _ in range(n):
            coords.append(c % q)
            c //= q
        decoded.append(tuple(reversed(coords)))

    use_sidon = q == 2 and m == 4
    best = {"size": 0, "witness": (), "nodes": 0}

    def feasible(chosen_pts, cand_pt) -> bool:
        s = min(m, len(chosen_pts) + 1)
        if s <= 2:
            return True
        for rest in combinations(chosen_pts, s - 1):
            if rank_oracle(field, rest + (cand_pt,)) != s - 1:
                return False
        return True

    def dfs(codes, pts, sums, start) -> bool:
        best["nodes"] += 1
        if best["nodes"] > node_budget:
            return False
        if deadline is not None and best["nodes"] % 256 == 0 and _time.monotonic() > deadline:
            return False
        if len(codes) > best["size"]:
            best["size"] = len(codes)
            best["witness"] = tuple(decoded[c] for c in codes)
        for code in range(start, total):
            if use_sidon:
                new = {code ^ a for a in codes}
                if new & sums:
                    continue
                codes.append(code)
                if not dfs(codes, pts, sums | new, code + 1):
                    return False
                codes.pop()
            else:
                cand = decoded[code]
                if not feasible(pts, cand):
                    continue
                codes.append(code)
                pts.append(cand)
                if not dfs(codes, pts, sums, code + 1):
                    return False
                codes.pop()
                pts.pop()
        return True

    completed = dfs([], [], set(), 0)
    if not completed:
        return None
    return best["size"], best["witness"], best["nodes"]


def finite_difference(fn, t: float, eps: float = 1e-7) -> float:
    return (fn(t + eps) - fn(t - eps)) / (2 * eps)
