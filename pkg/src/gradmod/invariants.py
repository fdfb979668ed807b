"""Numerical invariants read off Hilbert data: h-polynomial, e_i, splitting type."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .errors import IdentityViolation, TruncationError
from .poly import parse_polynomial
from .truncated import Presentation

_BIG_PRIME = (1 << 61) - 1


def times_one_minus_z(coeffs: Sequence[int], power: int) -> list[int]:
    """Coefficients of (1 - z)^power * sum(coeffs[n] z^n), same length."""
    out = list(coeffs)
    for _ in range(power):
        out = [out[n] - (out[n - 1] if n else 0) for n in range(len(out))]
    return out


def divide_one_minus_z(coeffs: Sequence[int], power: int) -> list[int] | None:
    """Exact quotient of a polynomial by (1 - z)^power, or None."""
    cur = list(coeffs)
    for _ in range(power):
        while cur and cur[-1] == 0:
            cur.pop()
        if not cur:
            return []
        # q(z)(1 - z) = cur(z): q_n = sum_{k <= n} cur_k
        q, acc = [], 0
        for c in cur[:-1]:
            acc += c
            q.append(acc)
        if acc + cur[-1] != 0:
            return None
        cur = q
    while cur and cur[-1] == 0:
        cur.pop()
    return cur


def poly_add(a: Sequence[int], b: Sequence[int], sign: int = 1) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + sign * (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def one_minus_z_power(k: int) -> list[int]:
    return [(-1) ** i * comb(k, i) for i in range(k + 1)]


def format_zpoly(coeffs: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            zp = "z" if i == 1 else f"z^{i}"
            body = zp if mag == 1 else f"{mag}*{zp}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def parse_zpoly(text: str) -> list[int]:
    """Integer polynomial in z, e.g. ``3 + 4*z + (1 - z)^4``."""
    f = parse_polynomial(text, ["z"], _BIG_PRIME)
    out = [0] * (int(f.degree()) + 1 if not f.is_zero() else 0)
    for e, c in f.terms.items():
        out[e[0]] = c if c <= _BIG_PRIME // 2 else c - _BIG_PRIME
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class HPolynomial:
    """Numerator of the Hilbert series, H(z) = h(z) / (1 - z)^dim."""

    coeffs: tuple[int, ...]
    dim: int

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ValueError("h-polynomial must be normalized with a nonzero top coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def e(self) -> int:
        return sum(self.coeffs)

    def e_list(self, upto: int | None = None) -> list[int]:
        """e_i = h^(i)(1) / i! for i = 0..upto (default: dim)."""
        upto = self.dim if upto is None else upto
        return [sum(comb(j, i) * c for j, c in enumerate(self.coeffs)) for i in range(upto + 1)]

    def series(self, n: int) -> list[int]:
        """Hilbert function values H(0..n)."""
        s = list(self.coeffs[: n + 1]) + [0] * max(0, n + 1 - len(self.coeffs))
        for _ in range(self.dim):
            acc, out = 0, []
            for c in s:
                acc += c
                out.append(acc)
            s = out
        return s

    def __str__(self) -> str:
        return format_zpoly(self.coeffs)

    def matches(self, coeffs: Sequence[int]) -> bool:
        return tuple(coeffs) == self.coeffs


def h_polynomial_from_values(values: Sequence[int], dim: int) -> HPolynomial:
    """h-polynomial from H(0..D).

    The numerator is accepted once at least dim + 2 trailing coefficients
    vanish inside the window; otherwise TruncationError asks for a larger D.
    """
    num = times_one_minus_z(values, dim)
    last = max((i for i, c in enumerate(num) if c), default=None)
    if last is None:
        raise IdentityViolation("Hilbert function vanishes identically")
    if len(num) - 1 - last < dim + 2:
        raise TruncationError(f"h-numerator not stabilized within D={len(values) - 1}")
    return HPolynomial(tuple(num[: last + 1]), dim)


@dataclass(frozen=True)
class SplittingType:
    """Exponents a_1 <= ... <= a_r of M_d = sum Q'/(y^{a_i}) over the residual DVR."""

    a: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.a)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.a)) + ")"


def splitting_from_hilbert(values: Sequence[int]) -> SplittingType:
    """Invert #{i : a_i > n} = H(n) for a length-finite module over a DVR."""
    vals = list(values)
    while vals and vals[-1] == 0:
        vals.pop()
    if any(b > a for a, b in zip(vals, vals[1:])):
        raise IdentityViolation(f"dimension-zero Hilbert function {vals} is not non-increasing")
    a: list[int] = []
    for k in range(1, len(vals) + 1):
        nxt = vals[k] if k < len(vals) else 0
        a.extend([k] * (vals[k - 1] - nxt))
    return SplittingType(tuple(sorted(a)))


def basic_invariants(P: Presentation) -> tuple[int, int, int, int]:
    """(mu, i(M), order of det, dim)."""
    return P.r, P.min_order, P.det_order, P.dim


@dataclass(frozen=True)
class EBound:
    holds: bool
    equality: bool


def check_e_bound(e: int, mu: int, iM: int) -> EBound:
    """e(M) >= mu(M) * i(M); raises if the inequality fails."""
    if e < mu * iM:
        raise IdentityViolation(f"multiplicity bound violated: e={e} < mu*i={mu * iM}")
    return EBound(True, e == mu * iM)


@dataclass
class InvariantReport:
    """Everything reported for one module; seed-independent by construction."""

    mu: int
    iM: int
    det_order: int
    dim: int
    e: int
    e_list: list[int]
    h: HPolynomial
    hilbert: list[int]
    red: int
    a: SplittingType
    b_poly: list[int]
    r_poly: list[int]
    h_tilde: list[int]
    depth: int
    cm: bool
    h_tower: list[HPolynomial]
    rho: list[int]
    vv: list[int]
    series_constraint: tuple[int, int, int] | None
    annihilator_order: int | None
    verdict: object = None
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "i": self.iM,
            "det_order": self.det_order,
            "dim": self.dim,
            "e": self.e,
            "e_list": list(self.e_list),
            "h": str(self.h),
            "h_coeffs": list(self.h.coeffs),
            "hilbert": list(self.hilbert),
            "red": self.red,
            "a": list(self.a.a),
            "b": format_zpoly(self.b_poly),
            "r": format_zpoly(self.r_poly),
            "h_tilde": format_zpoly(self.h_tilde),
            "depth": self.depth,
            "cm": self.cm,
            "h_tower": [str(h) for h in self.h_tower],
            "rho": list(self.rho),
            "vv": list(self.vv),
            "vv_sum": sum(self.vv),
            "series_constraint": list(self.series_constraint) if self.series_constraint else None,
            "annihilator_order": self.annihilator_order,
            "verdict": self.verdict.to_dict() if self.verdict is not None else None,
            "checks": dict(self.checks),
        }
