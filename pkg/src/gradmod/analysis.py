"""Full analysis of one presentation: tower, depth, filtrations, identities, verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .depth import cm_flag, cross_certify, depth_G
from .errors import IdentityViolation, TruncationError
from .filtration import colon_b_values, colon_identity_check, r_and_tilde, singh_check
from .invariants import InvariantReport, check_e_bound, splitting_from_hilbert
from .poly import MultiPolynomial
from .superficial import Level, SuperficialSequence, analyze_level, build_tower, quotient_once
from .truncated import (
    Presentation,
    ReductionData,
    colon_quotient_length,
    colon_quotient_lengths,
    graded_quotient_lengths,
    submodule_lengths,
    vv_lengths,
)
from .verdicts import ModuleSummary, classify, series_constraint_check, verify_annihilator


@dataclass
class CertificationLog:
    """Seed-dependent details, kept out of the report."""

    seed: int
    forms: list[str] = field(default_factory=list)
    lifted_forms: list[str] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)
    windows: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _grow(tower: list[Level], t: int, fn: Callable):
    """Run fn on level t, enlarging its window on TruncationError."""
    while True:
        try:
            return fn(tower[t].module)
        except TruncationError:
            tower[t] = tower[t].regrow()


def _form_maps(module, forms: list[list[int]]):
    p = module.p
    return [module.mult_map(MultiPolynomial.linear_form(c, p)) for c in forms]


def _free_values(mu: int, dim: int, n: int) -> int:
    return mu * comb(n + dim, dim)


def analyze(P: Presentation, seed: int = 0, D: int | None = None,
            annihilator: MultiPolynomial | None = None) -> tuple[InvariantReport, CertificationLog]:
    """Compute every reported invariant and run the identity suite.

    Raises IdentityViolation when any identity fails, CertificationError when
    no superficial element is found, InconclusiveError at the window cap.
    """
    d = P.dim
    top = analyze_level(P, D)
    seq: SuperficialSequence = build_tower(P, seed, D, top)
    tower = list(seq.tower)
    checks: dict[str, object] = {}
    log = CertificationLog(seed)
    names = P.names
    for t, c in enumerate(seq.forms):
        log.forms.append(MultiPolynomial.linear_form(c, P.p).to_str(tower[t].P.names))
        log.lifted_forms.append(MultiPolynomial.linear_form(seq.lifted[t], P.p).to_str(names))
    log.certificates = [c.to_dict() for c in seq.certificates]

    # every certified form passed the Singh and e_r checks on the way in
    checks["singh_equality"] = True
    checks["er_transfer"] = True
    checks["b0_zero"] = all(not s.b.coeffs or s.b.coeffs[0] == 0 for s in seq.singh)
    if not checks["b0_zero"]:
        raise IdentityViolation("b_0 != 0 for a certified form")

    h_tower = [lvl.h for lvl in tower]
    cert = depth_G(h_tower)

    # reduction data at every level, with J the remaining forms
    red_data: list[ReductionData] = []
    for t in range(d + 1):
        forms = seq.ideal_forms(t)
        red_data.append(_grow(tower, t, lambda m: submodule_lengths(m, _form_maps(m, forms))))

    # Ratliff-Rush data and colon identity at each positive-dimensional level
    rr_list = []
    b_zero, r_zero = [], []
    for t in range(d):
        b = seq.singh[t].b
        k0 = b.last_nonzero + 1

        def rr_fn(m, t=t, k0=k0):
            return r_and_tilde(m, tower[t].h, k0)

        rr = _grow(tower, t, rr_fn)
        m = tower[t].module
        xmap = _form_maps(m, [seq.ideal_forms(t)[0]])[0]
        ok, bad = colon_identity_check(m, xmap, rr)
        if not ok:
            raise IdentityViolation(f"Ratliff-Rush colon identity failed at level {t}, n={bad}")
        rr_list.append(rr)
        b_zero.append(b.is_zero())
        r_zero.append(not rr.r_poly)
    checks["rr_decomposition"] = True
    checks["colon_identity"] = True
    cert = cross_certify(cert, b_zero, r_zero)
    checks["depth_r_zero"] = True

    # rho_1(M_t, J) = b_1(x, M_t) + rho_1(M_{t+1}, J-bar)
    for t in range(d):
        m = tower[t].module
        xmap = _form_maps(m, [seq.ideal_forms(t)[0]])[0]
        b1 = colon_quotient_length(m, [xmap], 1)
        lhs = red_data[t].rho[1] if len(red_data[t].rho) > 1 else 0
        rhs_next = red_data[t + 1].rho[1] if len(red_data[t + 1].rho) > 1 else 0
        if lhs != b1 + rhs_next:
            raise IdentityViolation(f"rho_1 sequence failed at level {t}",
                                    {"rho1": lhs, "b1": b1, "rho1_next": rhs_next})
    checks["rho1_sequence"] = True

    # alternating-length identity on dimension-two levels
    checks["alternating_length"] = "n/a"
    for t in range(d):
        if tower[t].dim != 2:
            continue
        _alternating_identity(tower, seq, red_data, t)
        checks["alternating_length"] = True

    level0 = tower[0]
    mu, iM, det_order = P.r, P.min_order, P.det_order
    h = level0.h
    red = red_data[0].red

    series = None
    if red <= 2 and d >= 0:
        series = graded_quotient_lengths(level0.module, red_data[0])
        series_constraint_check(series)
        checks["series_constraint"] = True
    else:
        checks["series_constraint"] = "n/a"

    # assertions from the general theory
    if h.coeffs[0] != mu:
        raise IdentityViolation(f"h_0 = {h.coeffs[0]} differs from mu = {mu}")
    checks["h0_equals_mu"] = True
    for lvl in tower:
        if lvl.dim == 1 and any(c < 0 for c in lvl.h.coeffs):
            raise IdentityViolation(f"negative h-coefficient in dimension one: {lvl.h}")
    checks["h_nonnegative_dim1"] = True
    for n in range(min(iM, level0.module.D + 1)):
        if level0.module.hilbert[n] != _free_values(mu, d, n):
            raise IdentityViolation(f"H({n}) differs from the free value below i(M)")
    checks["free_initial_hilbert"] = True
    bound = check_e_bound(h.e, mu, iM)
    checks["e_bound"] = "equality" if bound.equality else True
    for lvl in tower[1:]:
        if lvl.h.e != h.e or lvl.P.r != mu or lvl.P.min_order != iM or lvl.P.det_order != det_order:
            raise IdentityViolation("tower level changed e, mu, i or det order")

    ann_order = None
    if annihilator is not None:
        if not verify_annihilator(P, annihilator):
            raise IdentityViolation("supplied annihilator does not kill M")
        ann_order = int(annihilator.order())
        checks["annihilator"] = True
        if ann_order == 3 and red > 2:
            raise IdentityViolation(f"red = {red} > 2 over a ring of multiplicity 3")

    bottom = tower[d]
    a = splitting_from_hilbert(bottom.module.hilbert)
    if a.total != h.e or len(a.a) != mu:
        raise IdentityViolation(f"splitting type {a} inconsistent with e={h.e}, mu={mu}")

    log.windows = [lvl.module.D for lvl in tower]

    b_poly = list(seq.singh[0].b.coeffs) if d else []
    while b_poly and b_poly[-1] == 0:
        b_poly.pop()
    r_poly = list(rr_list[0].r_poly) if d else []
    h_tilde = list(rr_list[0].h_tilde) if d else list(h.coeffs)
    rho = list(red_data[0].rho[: red + 1])
    vv = vv_lengths(level0.module, red_data[0])[: max(red, 1)]

    report = InvariantReport(
        mu=mu, iM=iM, det_order=det_order, dim=d, e=h.e, e_list=h.e_list(d), h=h,
        hilbert=h.series(h.degree + d + 1), red=red, a=a, b_poly=b_poly, r_poly=r_poly,
        h_tilde=h_tilde, depth=cert.depth, cm=cm_flag(cert, d), h_tower=h_tower,
        rho=rho, vv=vv, series_constraint=series, annihilator_order=ann_order, checks=checks,
    )
    report.verdict = classify(summary_of(report))
    return report, log


def summary_of(report: InvariantReport) -> ModuleSummary:
    return ModuleSummary(mu=report.mu, dim=report.dim, depth=report.depth, h=tuple(report.h.coeffs),
                         a=tuple(report.a.a), e=report.e, iM=report.iM, det_order=report.det_order,
                         red=report.red, annihilator_order=report.annihilator_order)


def _alternating_identity(tower: list[Level], seq: SuperficialSequence,
                          red_data: list[ReductionData], t: int) -> None:
    """l(m^nM : J / m^{n-1}M) - b_{n-1}(x) + b_n(x) - rho_n(M) + rho_n(M-bar) = 0."""
    m = tower[t].module
    x, y = _form_maps(m, seq.ideal_forms(t))
    nmax = min(m.D, tower[t + 1].module.D) - 1
    b = colon_b_values(m, x, nmax)
    rho, rho_bar = red_data[t].rho, red_data[t + 1].rho
    colons = colon_quotient_lengths(m, [x, y], nmax - 1)
    for n in range(1, nmax + 1):
        colon = colons[n - 1]
        rb = rho_bar[n] if n < len(rho_bar) else 0
        r = rho[n] if n < len(rho) else 0
        total = colon - b[n - 1] + b[n] - r + rb
        if total != 0:
            raise IdentityViolation(f"alternating-length identity failed at level {t}, n={n}",
                                    {"colon": colon, "b": b[n - 1: n + 1], "rho": r, "rho_bar": rb})


def analyze_text(text: str, seed: int = 0, D: int | None = None):
    from .inputfile import parse_input

    inp = parse_input(text)
    return analyze(inp.presentation, seed, D, inp.annihilator)




def regular_sequence(P: Presentation, variables: list[str], D: int | None = None) -> bool:
    """True when the named variables, in order, form a G(M)-regular sequence.

    Each variable must be superficial with b identically zero: then h does
    not change on passing to the quotient and the colon lengths all vanish.
    """
    level = analyze_level(P, D)
    for name in variables:
        if name not in level.P.names:
            raise ValueError(f"unknown variable {name!r}")
        x = MultiPolynomial.variable(level.P.names.index(name), level.P.nvars, level.P.p)
        Q, _ = quotient_once(level.P, x)
        nxt = analyze_level(Q, D)
        singh = singh_check(level.module, level.h, nxt.h, level.module.mult_map(x), name)
        if singh is None or not singh.identity_holds or not singh.b.is_zero():
            return False
        level = nxt
    return True
