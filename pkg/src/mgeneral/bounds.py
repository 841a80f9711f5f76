"""Upper and lower bounds on r_m(n,q), the maximum size of an m-general set.

Three bound families:

* the counting bound with k = floor(m/2):
      k * q^(n/k) / ((q-1)^(1-2/k) * (q-2)^(1/k))   for q > 2,
      (k!)^(1/k) * 2^(n/k) + k                      for q = 2;
* its refined form, solving  L * C(x, k) <= q^n  exactly for real x, where
  L is the exact number of all-nonzero length-k coefficient vectors with a
  fixed nonzero sum (L = 1 for q = 2, where unordered k-subset sums must be
  distinct);
* Bennett's bound  2m + m * (min_t h(t))^n  with
      h(t) = t^(-(q-1)/m) * (1 - t^q) / (1 - t),
  valid when q is odd or m and q are both even, minimized by ternary search
  on the convex h.

Growth-rate (mu) bounds follow: 1/floor(m/2) from the counting bound and
log_q(min h) from Bennett's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arithmetic import count_nonzero_sum_vectors

__all__ = [
    "BoundReport",
    "bound_main",
    "refined_bound",
    "h_eval",
    "h_deriv",
    "minimize_h",
    "bennett_bound",
    "mu_upper_main",
    "mu_upper_bennett",
    "bennett_lower_estimate",
    "bound_report",
    "reports_to_csv",
    "table1_grid",
    "table2_rows",
    "TABLE1_Q_COLUMNS",
    "TABLE1_M_ROWS",
]


def _check_main_pre(n: int, q: int, m: int) -> None:
    if m < 4:
        raise ValueError(f"counting bound needs m >= 4, got m={m}")
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    if q < 2:
        raise ValueError(f"need a prime power q >= 2, got q={q}")


def bound_main(n: int, q: int, m: int) -> float:
    """Closed-form counting upper bound on |A| for an m-general A in F_q^n."""
    _check_main_pre(n, q, m)
    k = m // 2
    if q == 2:
        return math.factorial(k) ** (1 / k) * 2 ** (n / k) + k
    return k * q ** (n / k) / ((q - 1) ** (1 - 2 / k) * (q - 2) ** (1 / k))


def _falling_binomial(x: float, k: int) -> float:
    """C(x, k) = x(x-1)...(x-k+1)/k! for real x."""
    acc = 1.0
    for i in range(k):
        acc *= x - i
    return acc / math.factorial(k)


def refined_bound(n: int, q: int, m: int) -> float:
    """Largest real x with L * C(x, k) <= q^n; tighter than bound_main.

    L is the exact coefficient-vector count (an implementation strengthening
    over its provable lower bound (q-1)^(k-2) * (q-2)), or 1 when q = 2.
    """
    _check_main_pre(n, q, m)
    k = m // 2
    L = 1 if q == 2 else count_nonzero_sum_vectors(q, k, gamma_is_zero=False)
    target = float(q) ** n / L
    lo, hi = float(k - 1), float(k)
    while _falling_binomial(hi, k) < target:
        lo, hi = hi, 2 * hi
    for _ in range(200):
        mid = (lo + hi) / 2
        if _falling_binomial(mid, k) <= target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, hi):
            break
    return (lo + hi) / 2


def h_eval(q: int, m: int, t: float) -> float:
    """h(t) = t^(-(q-1)/m) * (1 - t^q)/(1 - t) on (0, 1)."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0,1), got {t}")
    return t ** (-(q - 1) / m) * (1.0 - t**q) / (1.0 - t)


def h_deriv(q: int, m: int, t: float) -> float:
    """Closed-form derivative of h; sign change brackets the minimizer."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0,1), got {t}")
    bracket = (q + m - 1) * t - (q - 1) - t**q * ((q - 1) * (m - 1) * (1.0 - t) + m)
    return t ** (-(q - 1) / m - 1.0) / (m * (1.0 - t) ** 2) * bracket


def minimize_h(q: int, m: int, tol: float = 1e-12, max_iter: int = 200):
    """Ternary search for min_t h(t) on (0,1); h is convex there.

    Returns (t_star, h(t_star), iterations).
    """
    lo, hi = 0.0, 1.0
    it = 0
    while hi - lo > tol and it < max_iter:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if h_eval(q, m, m1) <= h_eval(q, m, m2):
            hi = m2
        else:
            lo = m1
        it += 1
    t_star = (lo + hi) / 2.0
    return t_star, h_eval(q, m, t_star), it


def _check_bennett_pre(q: int, m: int, n: int | None = None) -> None:
    if not (q % 2 == 1 or (m % 2 == 0 and q % 2 == 0)):
        raise ValueError(
            f"parity hypothesis violated: need q odd, or m and q both even (q={q}, m={m})"
        )
    if n is not None and not 3 <= m <= n + 2:
        raise ValueError(f"need 3 <= m <= n+2, got m={m}, n={n}")
    if m < 3:
        raise ValueError(f"need m >= 3, got m={m}")


def bennett_bound(n: int, q: int, m: int):
    """Bennett's bound 2m + m*(min h)^n; returns (bound, t_star)."""
    _check_bennett_pre(q, m, n)
    t_star, h_min, _ = minimize_h(q, m)
    return 2 * m + m * h_min**n, t_star


def mu_upper_main(m: int) -> float:
    """Growth-rate bound 1/floor(m/2), independent of q."""
    if m < 4:
        raise ValueError(f"counting bound needs m >= 4, got m={m}")
    return 1.0 / (m // 2)


def mu_upper_bennett(q: int, m: int) -> float:
    """Growth-rate bound log_q(min h) from Bennett's bound."""
    _check_bennett_pre(q, m)
    _, h_min, _ = minimize_h(q, m)
    return math.log(h_min) / math.log(q)


def bennett_lower_estimate(n: int, q: int, m: int) -> float:
    """Lower estimate m*(m/q)^((q-1)n/m) for Bennett's bound, valid once the
    minimizer lies in (1/m, q/m), detected via the derivative signs."""
    _check_bennett_pre(q, m)
    if not (h_deriv(q, m, 1.0 / m) < 0 and q / m < 1 and h_deriv(q, m, q / m) > 0):
        raise ValueError(
            f"estimate not applicable at q={q}, m={m}: "
            "need h'(1/m) < 0 and h'(q/m) > 0"
        )
    return m * (m / q) ** ((q - 1) * n / m)


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """Evaluated bounds at one (n, q, m); None marks inapplicable fields.

    main/refined/mu_main need m >= 4; the bennett fields need the parity
    hypothesis (q odd, or m and q both even).
    """

    n: int
    q: int
    m: int
    k: int
    main: float | None
    refined: float | None
    bennett: float | None
    t_star: float | None
    mu_main: float | None
    mu_bennett: float | None


def bound_report(n: int, q: int, m: int) -> BoundReport:
    k = m // 2
    main = refined = mu_main = None
    if m >= 4:
        main = bound_main(n, q, m)
        refined = refined_bound(n, q, m)
        mu_main = mu_upper_main(m)
    bennett = t_star = mu_bennett = None
    if q % 2 == 1 or (m % 2 == 0 and q % 2 == 0):
        bennett, t_star = bennett_bound(n, q, m)
        mu_bennett = mu_upper_bennett(q, m)
    return BoundReport(n, q, m, k, main, refined, bennett, t_star, mu_main, mu_bennett)


def _fmt(x: float | None) -> str:
    return "NA" if x is None else f"{x:.6g}"


CSV_HEADER = "q,m,n,k,main,refined,bennett,t_star,mu_main,mu_bennett"


def reports_to_csv(reports) -> str:
    lines = ["format=1", CSV_HEADER]
    for r in reports:
        lines.append(
            f"{r.q},{r.m},{r.n},{r.k},{_fmt(r.main)},{_fmt(r.refined)},"
            f"{_fmt(r.bennett)},{_fmt(r.t_star)},{_fmt(r.mu_main)},{_fmt(r.mu_bennett)}"
        )
    return "\n".join(lines) + "\n"


# -- published-table reproduction ----------------------------------------------

TABLE1_Q_COLUMNS = (2, 3, 4, 5, 7, 8, 9, 11)
TABLE1_M_ROWS = (3, 4, 5, 6, 7, 8)


def round_half_up(x: float, places: int = 3) -> float:
    shift = 10**places
    return math.floor(x * shift + 0.5) / shift


def table1_grid() -> dict[tuple[int, int], float]:
    """Recomputed log_q(min h) for each applicable (m, q) cell, rounded
    half-up to 3 decimals."""
    grid = {}
    for m in TABLE1_M_ROWS:
        for q in TABLE1_Q_COLUMNS:
            if q % 2 == 1 or (m % 2 == 0 and q % 2 == 0):
                grid[(m, q)] = round_half_up(mu_upper_bennett(q, m))
    return grid


def table2_rows() -> list[tuple[int, str]]:
    """(m, cell) rows for m = 4..8; cells are 1/floor(m/2) with the ceiling
    convention at 3 decimals, printed in the leading-dot style."""
    rows = []
    for m in range(4, 9):
        k = m // 2
        milli = -(-1000 // k)  # ceil(1000/k), exact in integers
        rows.append((m, f".{milli:03d}"))
    return rows
