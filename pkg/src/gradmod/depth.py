"""depth G(M) from h-polynomials along a certified superficial tower."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import IdentityViolation
from .invariants import HPolynomial


@dataclass(frozen=True)
class DepthCertificate:
    depth: int
    h_tower: tuple[HPolynomial, ...]
    agreement_index: int
    regular_prefix: int | None = None
    r_zero_prefix: int | None = None

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "h_tower": [str(h) for h in self.h_tower],
            "agreement_index": self.agreement_index,
            "regular_prefix": self.regular_prefix,
            "r_zero_prefix": self.r_zero_prefix,
        }


def depth_G(h_tower: Sequence[HPolynomial]) -> DepthCertificate:
    """Sally descent: depth G(M) >= c + 1 iff h(M_c) = h(M_{c+1}).

    ``h_tower`` lists h(M_0), ..., h(M_d).  The agreements must form a prefix
    of the levels; a gap means a superficial element slipped through.
    """
    tower = tuple(h_tower)
    dim = len(tower) - 1
    if dim == 0:
        return DepthCertificate(0, tower, -1)
    agree = [tower[c].coeffs == tower[c + 1].coeffs for c in range(dim)]
    prefix = 0
    while prefix < dim and agree[prefix]:
        prefix += 1
    if any(agree[prefix:]):
        raise IdentityViolation("h-agreement along the tower is not nested",
                                {"h_tower": [str(h) for h in tower]})
    return DepthCertificate(prefix, tower, prefix - 1)


def cm_flag(cert: DepthCertificate, dim: int) -> bool:
    return dim == 0 or cert.depth == dim


def leading_true(flags: Sequence[bool]) -> int:
    n = 0
    for f in flags:
        if not f:
            break
        n += 1
    return n


def cross_certify(cert: DepthCertificate, b_zero: Sequence[bool], r_zero: Sequence[bool]) -> DepthCertificate:
    """Check depth against two independent lower-bound routes.

    ``b_zero[t]`` says b(x_{t+1}, M_t) vanishes, i.e. x_{t+1}* is regular on
    G(M_t); ``r_zero[t]`` says r_{M_t}(z) = 0, i.e. depth G(M_t) > 0.  Each
    route's leading run of True values must equal the depth.
    """
    reg = leading_true(b_zero)
    rz = leading_true(r_zero)
    if reg != cert.depth or rz != cert.depth:
        raise IdentityViolation("depth routes disagree", {
            "depth": cert.depth, "regular_prefix": reg, "r_zero_prefix": rz,
            "b_zero": list(b_zero), "r_zero": list(r_zero),
            "h_tower": [str(h) for h in cert.h_tower]})
    for t, (b, r) in enumerate(zip(b_zero, r_zero)):
        if b != r:
            raise IdentityViolation(f"level {t}: regular element and r_M = 0 disagree")
    return DepthCertificate(cert.depth, cert.h_tower, cert.agreement_index, reg, rz)
