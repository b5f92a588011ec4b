"""Independent oracles the tests check the package against.

Everything here is deliberately implemented through a different
route than the code under test: bit-reversal radical inverse for
the quasi-random generator, Simpson quadrature of the F density
for the CDF, a Maclaurin erf series for the normal quantile, and
closed-form variance decompositions for the benchmark models.
"""

from __future__ import annotations

import math


def van_der_corput(index: int) -> float:
    """Base-2 radical inverse of ``index`` (bit reversal)."""
    result = 0.0
    denom = 1.0
    while index:
        denom *= 2.0
        result += (index & 1) / denom
        index >>= 1
    return result


def f_density(t: float, d1: float, d2: float) -> float:
    if t <= 0.0:
        return 0.0
    log_pdf = (
        math.lgamma((d1 + d2) / 2) - math.lgamma(d1 / 2) - math.lgamma(d2 / 2)
        + (d1 / 2) * math.log(d1 / d2)
        + (d1 / 2 - 1) * math.log(t)
        - ((d1 + d2) / 2) * math.log(1 + d1 * t / d2)
    )
    return math.exp(log_pdf)


def f_cdf_quadrature(x: float, d1: int, d2: int, panels: int = 20000) -> float:
    """P(F <= x) by composite Simpson on the substitution t = u^2.

    The substitution absorbs the t^(d1/2 - 1) endpoint singularity:
    the integrand 2*u*pdf(u^2) equals 2*K*u^(d1-1)*(1 + d1 u^2/d2)^-s,
    smooth on [0, sqrt(x)] for every d1 >= 1 (constant 2*K at u=0
    when d1 == 1).
    """
    if x <= 0.0:
        return 0.0
    upper = math.sqrt(x)
    n = panels if panels % 2 == 0 else panels + 1
    h = upper / n
    log_k = (
        math.lgamma((d1 + d2) / 2) - math.lgamma(d1 / 2) - math.lgamma(d2 / 2)
        + (d1 / 2) * math.log(d1 / d2)
    )
    k_const = math.exp(log_k)

    def g(u: float) -> float:
        return (
            2.0 * k_const * u ** (d1 - 1)
            * (1.0 + d1 * u * u / d2) ** (-(d1 + d2) / 2.0)
        )

    acc = g(0.0) + g(upper)
    for i in range(1, n):
        acc += (4.0 if i % 2 else 2.0) * g(i * h)
    return acc * h / 3.0


def erf_series(x: float) -> float:
    """Maclaurin series for erf with explicit convergence cut."""
    if x < 0:
        return -erf_series(-x)
    if x > 6.0:
        return 1.0
    total = 0.0
    term = x
    n = 0
    while abs(term) > 1e-18 * max(abs(total), 1.0) and n < 500:
        total += term / (2 * n + 1)
        n += 1
        term *= -x * x / n
    return total * 2.0 / math.sqrt(math.pi)


def erfc_continued_fraction(x: float, terms: int = 60) -> float:
    """Laplace continued fraction for erfc, accurate for x >= 3.

    The Maclaurin erf series cancels catastrophically there, so the
    tail oracle needs this second route.
    """
    v = 1.0 / (2.0 * x * x)
    acc = 0.0
    for n in range(terms, 0, -1):
        acc = n * v / (1.0 + acc)
    return math.exp(-x * x) / (x * math.sqrt(math.pi)) / (1.0 + acc)


def normal_cdf_series(x: float) -> float:
    z = x / math.sqrt(2.0)
    if z <= -3.0:
        return 0.5 * erfc_continued_fraction(-z, terms=160)
    if z >= 3.0:
        return 1.0 - 0.5 * erfc_continued_fraction(z, terms=160)
    return 0.5 * (1.0 + erf_series(z))


def normal_ppf_bisect(p: float, tol: float = 1e-13) -> float:
    # Bisect the lower tail only: 1 - p is exact for p > 0.5 and the
    # cdf there never suffers the 1 - tiny cancellation.
    if p > 0.5:
        return -normal_ppf_bisect(1.0 - p, tol)
    lo, hi = -40.0, 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if normal_cdf_series(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ishigami_analytic(a: float = 7.0, b: float = 0.1):
    """(S1, ST, total variance) from the closed-form decomposition."""
    pi4 = math.pi ** 4
    pi8 = math.pi ** 8
    v1 = (1.0 + b * pi4 / 5.0) ** 2 / 2.0
    v2 = a * a / 8.0
    v13 = 8.0 * b * b * pi8 / 225.0
    total = a * a / 8.0 + b * pi4 / 5.0 + b * b * pi8 / 18.0 + 0.5
    s1 = (v1 / total, v2 / total, 0.0)
    st = ((v1 + v13) / total, v2 / total, v13 / total)
    return s1, st, total


def g_function_analytic(a):
    """(S1, ST) for the product benchmark with coefficients a."""
    partial = [1.0 / (3.0 * (1.0 + ai) ** 2) for ai in a]
    total = 1.0
    for v in partial:
        total *= 1.0 + v
    total -= 1.0
    s1 = [v / total for v in partial]
    st = []
    for i, v in enumerate(partial):
        rest = 1.0
        for j, w in enumerate(partial):
            if j != i:
                rest *= 1.0 + w
        st.append(v * rest / total)
    return s1, st
