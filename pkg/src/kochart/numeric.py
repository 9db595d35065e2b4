"""Integer helpers and truncated integer power series.

Every index formula in the chart constructors reduces to 2-adic valuations,
binary digit sums, and a handful of piecewise functions; they are collected
here together with an exact truncated power-series type used for the
free-part bookkeeping.
"""
from __future__ import annotations

from dataclasses import dataclass, field


def nu(n: int) -> int:
    """2-adic valuation of n >= 1."""
    if n < 1:
        raise ValueError(f"nu undefined for {n}")
    return (n & -n).bit_length() - 1


def alpha(n: int) -> int:
    """Number of 1's in the binary expansion of n >= 0."""
    if n < 0:
        raise ValueError(f"alpha undefined for {n}")
    return bin(n).count("1")


def lg(n: int) -> int:
    """Floor of log2(n), with lg(0) = -1."""
    if n < 0:
        raise ValueError(f"lg undefined for {n}")
    return n.bit_length() - 1


def J(k: int, i: int) -> int:
    """2^k - 4*(2^nu(i) + i), for k, i >= 1."""
    if k < 1 or i < 1:
        raise ValueError("J requires k >= 1 and i >= 1")
    return 2 ** k - 4 * (2 ** nu(i) + i)


def f_b(b: int, i: int) -> int:
    """Piecewise selector in {0,1,2} controlling edge-summand shapes.

    For i = 0: 1 if b = 0, else 0.  For i >= 1 write j = lg(i); then the
    value is 0 on an initial segment of [2^j, 2^{j+1}), 1 at the single
    index 2^j + (b+j-1)/4 when b+j = 1 mod 4, and 2 on the rest.
    Brackets are floor division (also for negative numerators).
    """
    if not 0 <= b <= 3:
        raise ValueError(f"f_b requires 0 <= b <= 3, got {b}")
    if i < 0:
        raise ValueError(f"f_b requires i >= 0, got {i}")
    if i == 0:
        return 1 if b == 0 else 0
    j = lg(i)
    if 2 ** j <= i <= 2 ** j + (b + j - 2) // 4:
        return 0
    if (b + j) % 4 == 1 and i == 2 ** j + (b + j - 1) // 4:
        return 1
    return 2


def h_k(k: int, x: int) -> int:
    """Height cutoff 4a - k + {0,1,2,3} where x = 8a + b with 2 <= b <= 9."""
    if k < 2:
        raise ValueError(f"h_k requires k >= 2, got {k}")
    if x < 2:
        raise ValueError(f"h_k requires x >= 2, got {x}")
    a, b = divmod(x - 2, 8)
    b += 2
    if b == 2:
        c = 0
    elif b == 3:
        c = 1
    elif b == 4:
        c = 2
    else:
        c = 3
    return 4 * a - k + c


@dataclass(frozen=True)
class PoincareSeries:
    """Integer polynomial, authoritative only through truncation_degree.

    Coefficients above the truncation degree are dropped; zero coefficients
    are never stored.
    """

    coeffs: dict[int, int] = field(default_factory=dict)
    truncation_degree: int = 0

    def __post_init__(self):
        clean = {e: c for e, c in self.coeffs.items()
                 if c != 0 and 0 <= e <= self.truncation_degree}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_coeffs(cls, pairs, truncation_degree):
        return cls(dict(pairs), truncation_degree)

    @classmethod
    def one(cls, truncation_degree):
        return cls({0: 1}, truncation_degree)

    @classmethod
    def monomial(cls, exponent, truncation_degree, coeff=1):
        return cls({exponent: coeff}, truncation_degree)

    def __getitem__(self, exponent: int) -> int:
        if exponent > self.truncation_degree:
            raise IndexError(f"series truncated at {self.truncation_degree}")
        return self.coeffs.get(exponent, 0)

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        deg = min(self.truncation_degree, other.truncation_degree)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return PoincareSeries(out, deg)

    def __sub__(self, other: "PoincareSeries") -> "PoincareSeries":
        deg = min(self.truncation_degree, other.truncation_degree)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) - c
        return PoincareSeries(out, deg)

    def __mul__(self, other: "PoincareSeries") -> "PoincareSeries":
        deg = min(self.truncation_degree, other.truncation_degree)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e <= deg:
                    out[e] = out.get(e, 0) + c1 * c2
        return PoincareSeries(out, deg)

    def exact_div(self, q: "PoincareSeries") -> "PoincareSeries":
        """Power-series quotient; q must have constant term 1."""
        if q.coeffs.get(0, 0) != 1:
            raise ValueError("exact_div requires unit constant term")
        deg = min(self.truncation_degree, q.truncation_degree)
        out: dict[int, int] = {}
        for e in range(deg + 1):
            acc = self.coeffs.get(e, 0)
            for d, c in q.coeffs.items():
                if 0 < d <= e:
                    acc -= c * out.get(e - d, 0)
            if acc:
                out[e] = acc
        return PoincareSeries(out, deg)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"x^{e}")
            else:
                terms.append(f"{c}x^{e}")
        return " + ".join(terms)
