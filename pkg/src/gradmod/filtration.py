"""b-polynomials, Singh's equality, and the Ratliff-Rush filtration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import IdentityViolation, TruncationError
from .invariants import (
    HPolynomial,
    divide_one_minus_z,
    one_minus_z_power,
    poly_add,
    poly_mul,
    times_one_minus_z,
)
from .linalg import EchelonSpan, LinearMap, preimage_space
from .truncated import TruncatedModule, colon_quotient_lengths


@dataclass(frozen=True)
class BPolynomial:
    """b_n(x, M) = l((m^{n+1} M : x) / m^n M), as a finite coefficient list."""

    coeffs: tuple[int, ...]
    form: str = ""

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def last_nonzero(self) -> int:
        """Largest n with b_n != 0, or -1."""
        return max((i for i, c in enumerate(self.coeffs) if c), default=-1)

    @property
    def total(self) -> int:
        return sum(self.coeffs)


def b_from_h(h_M: HPolynomial, h_N: HPolynomial) -> list[int] | None:
    """(h_N - h_M) / (1 - z)^dim(M) when it is a polynomial, else None."""
    diff = poly_add(h_N.coeffs, h_M.coeffs, -1)
    return divide_one_minus_z(diff, h_M.dim)


def colon_b_values(module: TruncatedModule, xmap: LinearMap, nmax: int) -> list[int]:
    return colon_quotient_lengths(module, [xmap], nmax)


@dataclass(frozen=True)
class SinghResult:
    b: BPolynomial
    colon_values: tuple[int, ...]
    identity_holds: bool
    er_transfer_holds: bool


def singh_check(module: TruncatedModule, h_M: HPolynomial, h_N: HPolynomial,
                xmap: LinearMap, form: str = "") -> SinghResult | None:
    """Compare colon lengths with (h_N - h_M)/(1 - z)^r coefficientwise.

    Returns None when the quotient is not a polynomial (x is then not
    superficial).  ``identity_holds`` is False only on a genuine mismatch
    between the two routes, which points at a truncation bug.
    """
    b = b_from_h(h_M, h_N)
    if b is None or any(c < 0 for c in b):
        return None
    values = colon_b_values(module, xmap, module.D - 1)
    padded = list(b) + [0] * max(0, len(values) - len(b))
    holds = len(b) <= len(values) and all(values[n] == padded[n] for n in range(len(values)))
    holds = holds and (not values or values[0] == 0)
    r = h_M.dim
    er_M = h_M.e_list(r)[r]
    er_N = h_N.e_list(r)[r]
    er_ok = er_M == er_N - (-1) ** r * sum(b)
    trimmed = tuple(values[: max(len(b), 1)]) if holds else tuple(values)
    return SinghResult(BPolynomial(tuple(b), form), trimmed, holds, er_ok)


def _colon_by_maximal(module: TruncatedModule, target: EchelonSpan, floor: int) -> EchelonSpan:
    """(target :_M m), knowing the answer contains m^floor M."""
    maps = [module.variable_map(i) for i in range(module.P.nvars)]
    part = preimage_space(module.below(floor), maps, target)
    return part.extend(module.power_span(floor).rows.values())


def ratliff_rush_chain(module: TruncatedModule, n: int, i: int) -> EchelonSpan:
    """(m^{n+i} M : m^i) computed as i nested colons by the maximal ideal."""
    if n + i > module.D + 1:
        raise TruncationError(f"colon band n+i={n + i} exceeds D+1={module.D + 1}")
    cur = module.power_span(n + i)
    for step in range(1, i + 1):
        cur = _colon_by_maximal(module, cur, n + i - step)
    return cur


def ratliff_rush(module: TruncatedModule, n: int, k0: int) -> EchelonSpan:
    """Stabilized union of (m^{n+i} M : m^i).

    ``k0`` is 1 + the last index with b_k(x, M) != 0 for a superficial x.
    Once n + i >= k0 each further colon step is an equality, so the union is
    reached at i = max(0, k0 - n); one more step is computed and compared.
    """
    i = max(0, k0 - n)
    s_i = ratliff_rush_chain(module, n, i)
    s_next = ratliff_rush_chain(module, n, i + 1)
    if s_i != s_next:
        raise IdentityViolation(f"Ratliff-Rush colon did not stabilize at n={n}, i={i}")
    if not s_i.contains(module.power_span(n)):
        raise IdentityViolation("Ratliff-Rush closure lost m^n M")
    return s_i


@dataclass(frozen=True)
class RatliffRushData:
    spans: tuple[EchelonSpan, ...]
    r_poly: tuple[int, ...]
    h_tilde: tuple[int, ...]
    k0: int


def r_and_tilde(module: TruncatedModule, h: HPolynomial, k0: int) -> RatliffRushData:
    """r_M(z), h~_M(z), and the check h = h~ + (1 - z)^{dim+1} r_M."""
    D = module.D
    if k0 > D:
        raise TruncationError(f"Ratliff-Rush band k0={k0} exceeds D={D}")
    top = min(max(k0, 1) + 1, D)
    spans = [ratliff_rush(module, n, k0) for n in range(top + 1)]
    r = [spans[n + 1].rank - module.power_span(n + 1).rank for n in range(top)]
    while r and r[-1] == 0:
        r.pop()
    if any(c < 0 for c in r):
        raise IdentityViolation("negative Ratliff-Rush gap")
    tilde_values = [spans[n].rank - spans[n + 1].rank for n in range(top)]
    tilde_values += module.hilbert[top:]
    num = times_one_minus_z(tilde_values, h.dim)
    expected = poly_add(h.coeffs, poly_mul(one_minus_z_power(h.dim + 1), r), -1)
    padded = expected + [0] * (len(num) - len(expected))
    if len(expected) > len(num) or list(num) != padded:
        raise IdentityViolation("h = h~ + (1-z)^(d+1) r_M failed",
                                {"h": list(h.coeffs), "r": r, "tilde_numerator": num})
    return RatliffRushData(tuple(spans), tuple(r), tuple(expected), k0)


def colon_identity_check(module: TruncatedModule, xmap: LinearMap, rr: RatliffRushData) -> tuple[bool, int | None]:
    """(RR(n+1) : x) = RR(n) for n >= 1 while the closure differs from m^n M.

    Past that range both sides are powers of m and the identity reduces to
    b_n(x, M) = 0, which the Singh check already covers.
    """
    for n in range(1, len(rr.spans) - 1):
        lhs = preimage_space(module.below(n), [xmap], rr.spans[n + 1])
        lhs = lhs.extend(module.power_span(n).rows.values())
        if lhs != rr.spans[n]:
            return False, n
    return True, None
