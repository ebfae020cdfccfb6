"""Recurrence tables for the coloring guarantees and rigorous exponent checks.

Two integer tables, both with F(0) = 1:

    rec4: F(k+1) = F(k) + F(floor(k/4))   (the main guarantee)
    rec2: F(k+1) = F(k) + F(floor(k/2))   (the simpler pivot-on-0 guarantee)

The closed form log2 F_rec4(k) <= (log2 4k)^2 / 4 is checked rigorously:
log2 of a table value is bracketed from its bit length plus the leading
64 bits (truncation error below 2**-63, total stated slack under 1e-9),
comparisons carry a 1e-6 safety margin, and near-ties escalate to exact
integer arithmetic instead of trusting floats.  The comparison target is
the Mubayi-Vishwanathan exponent ((log2 k)^2 + log2 k) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TABLE_KINDS = ("rec4", "rec2")
DEFAULT_CHECK_K = 1 << 16
LOG2_SAFETY = 1e-6
_BRACKET_SLACK = 1e-9


@dataclass(frozen=True)
class BoundTable:
    kind: str
    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def k_max(self) -> int:
        return len(self.values) - 1


def build_table(kind: str, k_max: int) -> BoundTable:
    """Unroll one of the two recurrences up to index k_max, exactly.

    Values are plain Python integers, so no precision is lost no matter
    how large k_max gets.
    """
    if kind not in TABLE_KINDS:
        raise ValueError(f"unknown table kind {kind!r}, expected one of {TABLE_KINDS}")
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    shift = 2 if kind == "rec4" else 1
    vals = [1]
    for k in range(k_max):
        vals.append(vals[k] + vals[k >> shift])
    return BoundTable(kind, tuple(vals))


def closed_form_exponent(k: int) -> float:
    """(log2 4k)^2 / 4, the closed-form exponent bounding log2 F_rec4(k)."""
    if k < 1:
        raise ValueError("closed-form exponent is defined for k >= 1")
    return math.log2(4 * k) ** 2 / 4


def mv_exponent(k: int) -> float:
    """((log2 k)^2 + log2 k) / 2, the Mubayi-Vishwanathan exponent."""
    if k < 1:
        raise ValueError("Mubayi-Vishwanathan exponent is defined for k >= 1")
    lg = math.log2(k)
    return (lg * lg + lg) / 2


def exponent_ratio(k: int) -> float:
    """closed_form_exponent / mv_exponent; tends to 1/2 from above."""
    if k < 2:
        raise ValueError("ratio needs k >= 2 so the denominator is positive")
    return closed_form_exponent(k) / mv_exponent(k)


def log2_bracket(x: int) -> tuple[float, float]:
    """Rigorous (lo, hi) bounds on log2 of a positive integer.

    Computed as bit_length - 64 plus log2 of the leading 64 bits; the
    truncated tail contributes less than log2(1 + 2**-63) and float
    rounding is covered by the stated slack, so hi - lo stays far below
    1e-9 in relative terms.
    """
    if x <= 0:
        raise ValueError("log2 bracket needs a positive integer")
    b = x.bit_length()
    if b <= 64:
        v = math.log2(x)
        return v - _BRACKET_SLACK, v + _BRACKET_SLACK
    top = x >> (b - 64)
    lo = (b - 64) + math.log2(top)
    hi = (b - 64) + math.log2(top + 1)
    return lo - _BRACKET_SLACK, hi + _BRACKET_SLACK


def _scaled_floor_log2(x: int, s: int) -> int:
    # floor(2**s * log2 x) via one exact integer power
    return (x ** (1 << s)).bit_length() - 1


def closed_form_holds(k: int, value: int) -> bool:
    """Decide rigorously whether log2(value) <= (log2 4k)^2 / 4.

    Floats answer when the two sides are at least the safety margin apart;
    otherwise the comparison escalates to exact integer arithmetic.  When
    4k is a power of two the right side is rational and the check becomes
    value**4 <= 2**(t*t); otherwise both sides are bracketed by integer
    powering at increasing precision.
    """
    if k < 1:
        raise ValueError("closed-form check is defined for k >= 1")
    if value < 1:
        raise ValueError("table values are positive")
    lo, hi = log2_bracket(value)
    rhs = closed_form_exponent(k)
    if hi <= rhs - LOG2_SAFETY:
        return True
    if lo >= rhs + LOG2_SAFETY:
        return False
    kk = 4 * k
    if kk & (kk - 1) == 0:
        t = kk.bit_length() - 1
        return value**4 <= 1 << (t * t)
    for s in (8, 12, 16):
        q = 1 << s
        p = _scaled_floor_log2(kk, s)  # q*log2(4k) in [p, p+1)
        pv = _scaled_floor_log2(value, s)  # q*log2(value) in [pv, pv+1)
        # compare 4*q^2*log2(value) against q^2*(log2 4k)^2 via the brackets
        if 4 * q * (pv + 1) <= p * p:
            return True
        if 4 * q * pv >= (p + 1) * (p + 1):
            return False
    raise AssertionError(
        "closed-form comparison inconclusive at 16 fractional bits; "
        "the sides are equal to within 2**-16 without being the exact power-of-two case"
    )


@dataclass(frozen=True)
class ExponentRow:
    k: int
    log2_value: float | None
    closed_form: float
    mv: float
    passed: bool


@dataclass(frozen=True)
class ExponentReport:
    k_lo: int
    k_hi: int
    checked: int
    rows: tuple[ExponentRow, ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_bound_chain(k_max: int = DEFAULT_CHECK_K) -> ExponentReport:
    """Check every link of the bound chain on the tables up to k_max.

    (a) rec4[k] <= (ceil(3k/4) + 1) * rec4[floor(k/4)]   for k >= 4
    (b) rec4[k] <= k * rec4[floor(k/4)]                  for k >= 4
    (c) log2 rec4[k] <= (log2 4k)^2 / 4                  for k >= 1, rigorously
    (d) rec4[k] <= rec2[k] <= 2^k                        for all k
    (e) the base values rec4[1..3] = 2, 3, 4 directly

    Every k in range is checked; any failure lands in `failures` with its
    k.  One row per k >= 1 records the exponent columns.
    """
    if k_max < 4:
        raise ValueError("the chain check needs k_max >= 4")
    rec4 = build_table("rec4", k_max)
    rec2 = build_table("rec2", k_max)
    failures: list[str] = []
    rows: list[ExponentRow] = []
    for base_k, expected in ((1, 2), (2, 3), (3, 4)):
        if rec4[base_k] != expected:
            failures.append(f"(e) k={base_k}: rec4 is {rec4[base_k]}, expected {expected}")
    for k in range(k_max + 1):
        ok_here = True
        if k >= 4:
            coeff = (3 * k + 3) // 4 + 1  # ceil(3k/4) + 1
            quarter = rec4[k >> 2]
            if rec4[k] > coeff * quarter:
                failures.append(f"(a) k={k}: rec4[k] > (ceil(3k/4)+1)*rec4[k//4]")
                ok_here = False
            if rec4[k] > k * quarter:
                failures.append(f"(b) k={k}: rec4[k] > k*rec4[k//4]")
                ok_here = False
        if k >= 1 and not closed_form_holds(k, rec4[k]):
            failures.append(f"(c) k={k}: log2 rec4[k] exceeds the closed form")
            ok_here = False
        r2 = rec2[k]
        if rec4[k] > r2 or not (r2.bit_length() <= k or r2 == 1 << k):
            failures.append(f"(d) k={k}: rec4[k] <= rec2[k] <= 2^k broke")
            ok_here = False
        if k >= 1:
            lo, hi = log2_bracket(rec4[k])
            rows.append(
                ExponentRow(
                    k=k,
                    log2_value=(lo + hi) / 2,
                    closed_form=closed_form_exponent(k),
                    mv=mv_exponent(k),
                    passed=ok_here,
                )
            )
    return ExponentReport(
        k_lo=0,
        k_hi=k_max,
        checked=k_max + 1,
        rows=tuple(rows),
        failures=tuple(failures),
    )


def compare_mubayi_vishwanathan(
    k_lo: int, k_hi: int, max_rows: int = 4096
) -> ExponentReport:
    """Compare the closed-form exponent against Mubayi-Vishwanathan on a range.

    Every k in [k_lo, k_hi] is evaluated and any k where the closed form
    fails to improve (for k >= 10 it always should) is recorded as a
    failure.  `rows` holds at most max_rows evenly spread sample rows so
    million-point ranges stay cheap to report; the check itself is never
    sampled.
    """
    if k_lo < 1 or k_hi < k_lo:
        raise ValueError("need 1 <= k_lo <= k_hi")
    span = k_hi - k_lo + 1
    stride = max(1, span // max_rows)
    rows: list[ExponentRow] = []
    failures: list[str] = []
    log2 = math.log2
    for k in range(k_lo, k_hi + 1):
        lg = log2(k)
        mv = (lg * lg + lg) / 2
        lg4 = lg + 2.0
        cf = lg4 * lg4 / 4
        improved = cf < mv
        if k >= 10 and not improved:
            failures.append(f"k={k}: closed form {cf:.9f} does not beat MV {mv:.9f}")
        if (k - k_lo) % stride == 0 or k == k_hi:
            rows.append(
                ExponentRow(k=k, log2_value=None, closed_form=cf, mv=mv, passed=improved)
            )
    return ExponentReport(
        k_lo=k_lo,
        k_hi=k_hi,
        checked=span,
        rows=tuple(rows),
        failures=tuple(failures),
    )
