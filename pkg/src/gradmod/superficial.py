"""phi-superficial sequences and the quotient tower M = M_0 -> M_1 -> ... -> M_d."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import CertificationError, IdentityViolation, InconclusiveError, TruncationError
from .filtration import BPolynomial, SinghResult, singh_check
from .invariants import HPolynomial, h_polynomial_from_values
from .poly import LinearChange, MultiPolynomial, inverse_mod_p
from .truncated import Presentation, TruncatedModule

MAX_DEGREE = 40
RETRIES = 25


def default_degree(P: Presentation) -> int:
    return max(3 * P.maxdeg + 6, 12)


def next_degree(D: int) -> int | None:
    if D >= MAX_DEGREE:
        return None
    return min(MAX_DEGREE, 2 * D)


@dataclass
class Level:
    """One module of the tower with its certified Hilbert data."""

    P: Presentation
    module: TruncatedModule
    h: HPolynomial

    @property
    def dim(self) -> int:
        return self.P.dim

    def regrow(self) -> Level:
        """Same module on a larger window (raises when the cap is reached)."""
        D = next_degree(self.module.D)
        if D is None:
            raise InconclusiveError(f"window cap D={MAX_DEGREE} reached")
        return analyze_level(self.P, D)


def analyze_level(P: Presentation, D: int | None = None) -> Level:
    """Build the truncated module, growing D until the h-numerator settles."""
    D = D or default_degree(P)
    while True:
        module = TruncatedModule(P, D)
        try:
            h = h_polynomial_from_values(module.hilbert, P.dim)
            return Level(P, module, h)
        except TruncationError:
            D = next_degree(D)
            if D is None:
                raise InconclusiveError(f"h-polynomial did not stabilize by D={MAX_DEGREE}") from None


def quotient_change(coeffs: list[int], p: int) -> LinearChange:
    """Invertible substitution under which the form ``coeffs`` becomes the last variable."""
    n = len(coeffs)
    c = [a % p for a in coeffs]
    if not any(c):
        raise ValueError("zero linear form")
    last = n - 1
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    k = last if c[last] else next(i for i, a in enumerate(c) if a)
    inv = pow(c[k], -1, p)
    row = [0] * n
    for i in range(n):
        if i != k and i != last:
            row[i] = -c[i] * inv % p
    if k == last:
        row[last] = inv
    else:
        row[last] = inv
        rows[last] = [int(j == k) for j in range(n)]
    rows[k] = row
    return LinearChange(rows, p)


def quotient_once(P: Presentation, x: MultiPolynomial) -> tuple[Presentation, LinearChange]:
    """P modulo x: change coordinates so x is the last variable, then drop it."""
    if x.order() != 1 or x.degree() != 1:
        raise ValueError("expected a linear form")
    coeffs = x.linear_coefficients()
    T = quotient_change(coeffs, P.p)
    names = list(P.names)
    if coeffs[-1] % P.p == 0:
        # the old last variable now sits in the slot of the first pivot
        k = next(i for i, a in enumerate(coeffs) if a % P.p)
        names[k] = P.names[-1]
    forms = T.forms(P.p)
    rows = [[f.substitute_linear(forms).eliminate_last() for f in row] for row in P.rows]
    return Presentation(rows, names[:-1]), T


def push_form(coeffs: list[int], T: LinearChange) -> list[int]:
    """Image of a linear form on the next tower level."""
    p = T.p
    n = T.size
    out = [sum(coeffs[i] * T.matrix[i][j] for i in range(n)) % p for j in range(n)]
    return out[:-1]


def lift_form(coeffs: list[int], T: LinearChange) -> list[int]:
    """A preimage of a next-level form: a with a^T T = (coeffs, 0)."""
    p = T.p
    inv = inverse_mod_p(T.matrix, p)
    target = list(coeffs) + [0]
    n = T.size
    return [sum(target[j] * inv[j][i] for j in range(n)) % p for i in range(n)]


@dataclass
class FormCertificate:
    level: int
    form: str
    attempts: int
    entry_orders: bool
    det_order: bool
    e_preserved: bool
    b_polynomial: bool
    singh: bool
    er_transfer: bool
    rejected: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SuperficialSequence:
    forms: list[list[int]]
    lifted: list[list[int]]
    seed: int
    certificates: list[FormCertificate]
    tower: list[Level]
    changes: list[LinearChange]
    singh: list[SinghResult]

    def ideal_forms(self, level: int) -> list[list[int]]:
        """Generators of J at ``level``: the remaining forms lifted to that level."""
        out = []
        for s in range(level, len(self.forms)):
            c = list(self.forms[s])
            for t in range(s - 1, level - 1, -1):
                c = lift_form(c, self.changes[t])
            out.append(c)
        return out

    @property
    def b_polys(self) -> list[BPolynomial]:
        return [s.b for s in self.singh]


def _structural_checks(P: Presentation, Q: Presentation) -> tuple[bool, bool]:
    orders_ok = P.entry_orders() == Q.entry_orders()
    det_ok = P.det_order == Q.det_order
    return orders_ok, det_ok


def certify_phi_superficial(level: Level, x: MultiPolynomial, D: int | None = None):
    """Check x against the phi-superficial conditions.

    Returns ``(certificate_fields, next_level, singh)``; ``next_level`` is None
    when some check failed, and ``certificate_fields['failed']`` names it.
    """
    P = level.P
    result = {"entry_orders": False, "det_order": False, "e_preserved": False,
              "b_polynomial": False, "singh": False, "er_transfer": False, "failed": None}
    try:
        Q, T = quotient_once(P, x)
    except Exception as exc:  # determinant vanished: not a parameter
        result["failed"] = f"quotient: {exc}"
        return result, None, None
    orders_ok, det_ok = _structural_checks(P, Q)
    result["entry_orders"], result["det_order"] = orders_ok, det_ok
    if not orders_ok:
        result["failed"] = "entry orders"
        return result, None, None
    if not det_ok:
        result["failed"] = "det order"
        return result, None, None
    nxt = analyze_level(Q, D)
    d = P.dim
    if level.h.e_list(d - 1)[: d] != nxt.h.e_list(d - 1)[: d]:
        result["failed"] = "Hilbert coefficients"
        return result, None, None
    result["e_preserved"] = True
    xmap = level.module.mult_map(x)
    singh = singh_check(level.module, level.h, nxt.h, xmap, x.to_str(P.names))
    if singh is None:
        result["failed"] = "b-polynomial"
        return result, None, None
    result["b_polynomial"] = True
    if not singh.identity_holds:
        raise IdentityViolation("Singh's equality failed", {
            "form": x.to_str(P.names), "b_from_h": list(singh.b.coeffs),
            "colon": list(singh.colon_values)})
    result["singh"] = True
    if not singh.er_transfer_holds:
        raise IdentityViolation("e_r transfer formula failed", {"form": x.to_str(P.names)})
    result["er_transfer"] = True
    return result, (nxt, T), singh


def random_form(nvars: int, p: int, rng: random.Random) -> list[int]:
    while True:
        c = [rng.randrange(p) for _ in range(nvars)]
        if any(c):
            return c


def build_tower(P: Presentation, seed: int = 0, D: int | None = None,
                top: Level | None = None, retries: int = RETRIES) -> SuperficialSequence:
    """Certified maximal phi-superficial sequence and its quotient tower."""
    rng = random.Random(seed)
    level = top or analyze_level(P, D)
    tower = [level]
    forms, certs, changes, singhs = [], [], [], []
    for t in range(P.dim):
        rejected = []
        for attempt in range(1, retries + 1):
            coeffs = random_form(level.P.nvars, P.p, rng)
            x = MultiPolynomial.linear_form(coeffs, P.p)
            while True:
                try:
                    fields_, nxt, singh = certify_phi_superficial(level, x)
                    break
                except TruncationError:
                    level = level.regrow()
                    tower[-1] = level
            if nxt is not None:
                break
            rejected.append(f"{x.to_str(level.P.names)}: {fields_['failed']}")
        else:
            raise CertificationError(f"no superficial element at level {t} after {retries} tries", rejected)
        nxt_level, T = nxt
        fields_.pop("failed")
        certs.append(FormCertificate(t, x.to_str(level.P.names), attempt, rejected=rejected, **fields_))
        forms.append(coeffs)
        changes.append(T)
        singhs.append(singh)
        tower.append(nxt_level)
        level = nxt_level
    lifted = []
    for s in range(len(forms)):
        c = list(forms[s])
        for t in range(s - 1, -1, -1):
            c = lift_form(c, changes[t])
        lifted.append(c)
    return SuperficialSequence(forms, lifted, seed, certs, tower, changes, singhs)
