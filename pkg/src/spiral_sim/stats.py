"""Welch t, one-way ANOVA, Pearson r and simple regression from first principles.

Only statistics and degrees of freedom are computed. Significance is
judged against embedded two-sided p = 0.001 critical values; when the
exact df falls between table rows the next-smaller row is used, which can
only make the check stricter.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateVariance, InsufficientData


class StatKind(str, Enum):
    WELCH_T = "welch_t"
    ANOVA_F = "anova_f"
    PEARSON_R = "pearson_r"
    LINREG_R2 = "linreg_r2"


@dataclass(frozen=True)
class StatResult:
    statistic: float
    df: float | tuple[float, float]
    kind: StatKind
    exceeds_p001: bool
    note: str = ""

    def df_text(self) -> str:
        if isinstance(self.df, tuple):
            return ";".join(f"{d:.9g}" for d in self.df)
        return f"{self.df:.9g}"


# two-sided t_{0.9995}(df)
_T_DF = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20,
    21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 35, 40, 45, 50, 60, 70, 80, 90,
    100, 120, 150, 200, 250, 300, 400, 500, 1000,
]
_T_CRIT = [
    636.6192, 31.5991, 12.924, 8.6103, 6.8688, 5.9588, 5.4079, 5.0413,
    4.7809, 4.5869, 4.437, 4.3178, 4.2208, 4.1405, 4.0728, 4.015, 3.9651,
    3.9216, 3.8834, 3.8495, 3.8193, 3.7921, 3.7676, 3.7454, 3.7251, 3.7066,
    3.6896, 3.6739, 3.6594, 3.646, 3.5911, 3.551, 3.5203, 3.496, 3.4602,
    3.435, 3.4163, 3.4019, 3.3905, 3.3735, 3.3566, 3.3398, 3.3299, 3.3233,
    3.315, 3.3101, 3.3003,
]

# upper 0.001 point of F(df1, df2), df1 = 1..6
_F_DF2 = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 25, 30, 40, 50, 60, 80, 100,
    120, 150, 200, 250, 297, 300, 400, 500, 1000,
]
_F_CRIT = {
    1: [405284.0679, 998.5003, 167.0292, 74.1373, 47.1808, 35.5075, 29.2452,
        25.4148, 22.8571, 21.0396, 18.6433, 16.5874, 14.8188, 13.8767, 13.293,
        12.6094, 12.2221, 11.973, 11.6714, 11.4954, 11.3802, 11.2666, 11.1545,
        11.088, 11.0462, 11.044, 10.9893, 10.9567, 10.8919],
    2: [499999.5, 999.0, 148.5, 61.2456, 37.1223, 27.0, 21.689, 18.4937,
        16.3871, 14.9054, 12.9737, 11.3391, 9.9526, 9.2225, 8.7734, 8.2508,
        7.9564, 7.7678, 7.5401, 7.4077, 7.3211, 7.2359, 7.1519, 7.1022, 7.0709,
        7.0693, 7.0284, 7.0041, 6.9557],
    3: [540379.2016, 999.1666, 141.1085, 56.1772, 33.2025, 23.7033, 18.7723,
        15.8295, 13.9018, 12.5527, 10.8042, 9.3353, 8.0984, 7.4511, 7.0545,
        6.5945, 6.3364, 6.1712, 5.9723, 5.8568, 5.7814, 5.7072, 5.6341, 5.5909,
        5.5637, 5.5623, 5.5268, 5.5057, 5.4637],
    4: [562499.5833, 999.2499, 137.1004, 53.4358, 31.085, 21.9235, 17.198,
        14.3916, 12.5603, 11.2828, 9.6327, 8.2527, 7.096, 6.4931, 6.1245,
        5.6981, 5.4593, 5.3067, 5.1231, 5.0167, 4.9472, 4.8788, 4.8116, 4.7719,
        4.7469, 4.7456, 4.7129, 4.6935, 4.6549],
    5: [576404.5558, 999.2999, 134.58, 51.7116, 29.7524, 20.8027, 16.2058,
        13.4847, 11.7137, 10.4807, 8.8921, 7.5674, 6.4606, 5.8851, 5.5339,
        5.1283, 4.9013, 4.7565, 4.5824, 4.4815, 4.4157, 4.351, 4.2874, 4.2497,
        4.2261, 4.2249, 4.194, 4.1756, 4.1391],
    6: [585937.1111, 999.3333, 132.8475, 50.525, 28.8344, 20.0297, 15.5208,
        12.858, 11.1281, 9.9256, 8.3788, 7.0917, 6.0186, 5.4617, 5.1223,
        4.7306, 4.5117, 4.3721, 4.2043, 4.1071, 4.0437, 3.9815, 3.9203, 3.8841,
        3.8613, 3.8601, 3.8305, 3.8128, 3.7777],
}


def _lookup(dfs: list, values: list, df: float) -> float:
    i = bisect.bisect_right(dfs, df) - 1
    if i < 0:
        return math.inf
    return values[i]


def t_critical_p001(df: float) -> float:
    return _lookup(_T_DF, _T_CRIT, df)


def f_critical_p001(df1: float, df2: float) -> float:
    row = _F_CRIT.get(int(df1)) if float(df1).is_integer() else None
    if row is None:
        raise ValueError(f"no F table row for df1={df1}")
    return _lookup(_F_DF2, row, df2)


def _arr(xs) -> np.ndarray:
    return np.asarray(xs, dtype=np.float64).ravel()


def mean_sd(xs: Sequence[float]) -> tuple[float, float]:
    x = _arr(xs)
    if len(x) < 2:
        raise InsufficientData("need at least 2 values for a sample sd")
    m = x.mean()
    return float(m), float(math.sqrt(((x - m) ** 2).sum() / (len(x) - 1)))


def welch_t(a: Sequence[float], b: Sequence[float]) -> StatResult:
    x, y = _arr(a), _arr(b)
    if len(x) < 2 or len(y) < 2:
        raise InsufficientData("each sample needs at least 2 values")
    ma, sa = mean_sd(x)
    mb, sb = mean_sd(y)
    va, vb = sa * sa / len(x), sb * sb / len(y)
    if va + vb == 0:
        raise DegenerateVariance("both samples have zero variance")
    t = (ma - mb) / math.sqrt(va + vb)
    df = (va + vb) ** 2 / (va * va / (len(x) - 1) + vb * vb / (len(y) - 1))
    return StatResult(t, df, StatKind.WELCH_T, abs(t) > t_critical_p001(df))


def anova_oneway(groups: Sequence[Sequence[float]]) -> StatResult:
    gs = [_arr(g) for g in groups]
    if len(gs) < 2 or any(len(g) < 2 for g in gs):
        raise InsufficientData("need >= 2 groups of >= 2 values")
    total = np.concatenate(gs)
    grand = total.mean()
    ssb = sum(len(g) * (g.mean() - grand) ** 2 for g in gs)
    ssw = sum(((g - g.mean()) ** 2).sum() for g in gs)
    k, n = len(gs), len(total)
    df1, df2 = k - 1, n - k
    if ssw == 0:
        if ssb == 0:
            raise DegenerateVariance("no variance within or between groups")
        f = math.inf
    else:
        f = float((ssb / df1) / (ssw / df2))
    try:
        exceeds = f > f_critical_p001(df1, df2)
    except ValueError:
        exceeds = False
    return StatResult(f, (float(df1), float(df2)), StatKind.ANOVA_F, exceeds)


def _check_pair(x, y):
    x, y = _arr(x), _arr(y)
    if len(x) != len(y):
        raise ValueError("series lengths differ")
    if len(x) < 3:
        raise InsufficientData("need at least 3 pairs")
    return x, y


def pearson_r(x: Sequence[float], y: Sequence[float]) -> StatResult:
    x, y = _check_pair(x, y)
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = (dx * dx).sum(), (dy * dy).sum()
    if sxx == 0 or syy == 0:
        raise DegenerateVariance("constant series")
    r = float((dx * dy).sum() / math.sqrt(sxx * syy))
    r = max(-1.0, min(1.0, r))
    df = len(x) - 2
    # t = r sqrt(df / (1 - r^2))
    t = math.inf if abs(r) == 1 else abs(r) * math.sqrt(df / (1 - r * r))
    return StatResult(r, float(df), StatKind.PEARSON_R, t > t_critical_p001(df))


class LinearFit(NamedTuple):
    slope: float
    intercept: float
    r2: float
    flat: bool  # y constant: R^2 undefined, reported as 0

    def as_stat(self, n: int) -> StatResult:
        df2 = n - 2
        if self.flat:
            exceeds = False
        elif self.r2 >= 1:
            exceeds = True
        else:
            exceeds = self.r2 / (1 - self.r2) * df2 > f_critical_p001(1, df2)
        return StatResult(self.r2, (1.0, float(df2)), StatKind.LINREG_R2, exceeds)


def linreg_r2(x: Sequence[float], y: Sequence[float]) -> LinearFit:
    """Ordinary least squares of y on x with R^2 = 1 - SS_res / SS_tot."""
    x, y = _check_pair(x, y)
    dx, dy = x - x.mean(), y - y.mean()
    sxx = (dx * dx).sum()
    if sxx == 0:
        raise DegenerateVariance("constant x")
    slope = float((dx * dy).sum() / sxx)
    intercept = float(y.mean() - slope * x.mean())
    ss_tot = (dy * dy).sum()
    if ss_tot == 0:
        return LinearFit(slope, intercept, 0.0, True)
    resid = y - (intercept + slope * x)
    r2 = float(1 - (resid * resid).sum() / ss_tot)
    return LinearFit(slope, intercept, min(max(r2, 0.0), 1.0), False)
