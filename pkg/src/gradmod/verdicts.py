"""Classification tables for depth G(M) and h_M(z), and checks against them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import IdentityViolation
from .invariants import format_zpoly, parse_zpoly
from .poly import MultiPolynomial, poly_adjugate
from .truncated import Presentation

# Each admissible outcome is (depth deficit, h); deficit 0 means Cohen-Macaulay.
MU2_TABLE = {
    (1, 1): [(0, "2")],
    (1, 2): [(0, "2 + z"), (1, "2 + z^2")],
    (1, 3): [(0, "2 + z + z^2")],
    (2, 2): [(0, "2 + 2*z")],
    (2, 3): [(0, "2 + 2*z + z^2")],
    (3, 3): [(0, "2 + 2*z + 2*z^2")],
}

MU3_TABLE = {
    (1, 1, 1): [(0, "3")],
    (1, 1, 2): [(0, "3 + z"), (1, "3 + z^2")],
    (1, 1, 3): [(0, "3 + z + z^2")],
    (1, 2, 2): [(0, "3 + 2*z"), (1, "3 + z + z^2"), (2, "3 + 3*z^2 - z^3")],
    (1, 2, 3): [(0, "3 + 2*z + z^2"), (1, "3 + z + 2*z^2")],
    (2, 2, 2): [(0, "3 + 3*z")],
    (1, 3, 3): [(0, "3 + 2*z + 2*z^2"), (1, "3 + z + 3*z^2")],
    (2, 2, 3): [(0, "3 + 3*z + z^2")],
    (2, 3, 3): [(0, "3 + 3*z + 2*z^2")],
    (3, 3, 3): [(0, "3 + 3*z + 3*z^2")],
}

# mu = 4 over a ring of multiplicity 3, keyed by e(M).
MU4_E3_TABLE = {
    4: ((1, 1, 1, 1), [(0, "4")]),
    5: ((1, 1, 1, 2), [(0, "4 + z"), (1, "4 + z^2")]),
    6: ((1, 1, 2, 2), [(0, "4 + 2*z"), (1, "4 + z + z^2"), (1, "4 + 2*z^2"), (2, "4 + 3*z^2 - z^3")]),
    7: ((1, 2, 2, 2), [(0, "4 + 3*z"), (1, "4 + 2*z + z^2"), (2, "4 + z + 3*z^2 - z^3"),
                       (3, "3 + 4*z + (1 - z)^4")]),
    8: ((2, 2, 2, 2), [(0, "4 + 4*z")]),
}


@dataclass(frozen=True)
class ModuleSummary:
    """The inputs the verdict engine reads."""

    mu: int
    dim: int
    depth: int
    h: tuple[int, ...]
    a: tuple[int, ...]
    e: int
    iM: int
    det_order: int
    red: int
    annihilator_order: int | None = None


@dataclass
class StratumCheck:
    name: str
    expected: list[str]
    ok: bool

    def to_dict(self) -> dict:
        return {"stratum": self.name, "expected": self.expected, "ok": self.ok}


@dataclass
class Verdict:
    stratum: str
    expected: list[str]
    actual: str
    matches: bool | None
    checks: list[StratumCheck] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "stratum": self.stratum,
            "expected": self.expected,
            "actual": self.actual,
            "matches": self.matches,
            "checks": [c.to_dict() for c in self.checks],
        }


def _depth_label(depth: int, dim: int) -> str:
    if depth == dim:
        return "CM"
    return f"depth {depth}"


def _table_check(name: str, entries, s: ModuleSummary) -> StratumCheck:
    admissible = []
    for deficit, h in entries:
        depth = s.dim - deficit
        if depth < 0:
            continue
        admissible.append((depth, tuple(parse_zpoly(h))))
    ok = (s.depth, s.h) in admissible
    return StratumCheck(name, [f"{_depth_label(d, s.dim)}: {format_zpoly(h)}" for d, h in admissible], ok)


def _bound_check(name: str, deficit: int, s: ModuleSummary) -> StratumCheck:
    bound = max(0, s.dim - deficit)
    return StratumCheck(name, [f"depth >= {bound}"], s.depth >= bound)


def _near_minimal_check(s: ModuleSummary) -> StratumCheck:
    """e = mu*i + 1: h = mu(1 + ... + z^{i-1}) + z^s with s >= i, CM iff s = i."""
    i = s.iM
    h = list(s.h)
    shape_ok = len(h) > i and all(c == s.mu for c in h[:i])
    tail = h[i:]
    s_deg = None
    if shape_ok:
        nz = [k for k, c in enumerate(tail) if c]
        shape_ok = len(nz) == 1 and tail[nz[0]] == 1
        if shape_ok:
            s_deg = i + nz[0]
    ok = shape_ok and s.depth >= max(0, s.dim - 1) and ((s.depth == s.dim) == (s_deg == i))
    stem = " + ".join([f"{s.mu}*z^{k}" if k else str(s.mu) for k in range(i)])
    return StratumCheck("e = mu*i + 1", [f"h = {stem} + z^s, s >= {i}; CM iff s = {i}; depth >= {max(0, s.dim - 1)}"], ok)


def classify(s: ModuleSummary) -> Verdict:
    """Collect every stratum the module falls in and check each one."""
    checks: list[StratumCheck] = []
    if s.mu == 2 and s.red <= 2:
        if s.a in MU2_TABLE:
            checks.append(_table_check(f"mu=2, a={s.a}", MU2_TABLE[s.a], s))
        else:
            checks.append(_bound_check("mu=2, red<=2", 1, s))
    if s.mu == 3 and s.red <= 2:
        if s.a in MU3_TABLE:
            checks.append(_table_check(f"mu=3, a={s.a}", MU3_TABLE[s.a], s))
        else:
            checks.append(_bound_check("mu=3, red<=2", 2, s))
    if s.mu == 4 and s.annihilator_order == 3:
        row = MU4_E3_TABLE.get(s.e)
        if row is not None and row[0] == s.a:
            checks.append(_table_check(f"mu=4, e(A)=3, e={s.e}", row[1], s))
        else:
            checks.append(_bound_check("mu=4, e(A)=3", 3, s))
    if s.det_order == s.mu + 1 and s.red <= 2:
        checks.append(_table_check(f"det order = mu+1", [(0, f"{s.mu} + z"), (1, f"{s.mu} + z^2")], s))
    if s.e == s.mu * s.iM + 1 and s.det_order >= 2:
        checks.append(_near_minimal_check(s))
    if s.e == s.mu * s.iM:
        checks.append(StratumCheck("e = mu*i", ["CM"], s.depth == s.dim))
    actual = f"{_depth_label(s.depth, s.dim)}: {format_zpoly(s.h)}"
    if not checks:
        return Verdict("unclassified", [], actual, None, [])
    return Verdict(checks[0].name, checks[0].expected, actual, all(c.ok for c in checks), checks)


def verify_annihilator(P: Presentation, f: MultiPolynomial) -> bool:
    """True when f * e_j lies in im(phi) for every j, i.e. det | f * adj(phi)."""
    if f.is_zero():
        return False
    det = P.det
    adj = poly_adjugate(P.rows)
    return all((f * entry).divisible_by(det) for row in adj for entry in row)


def series_constraint_check(lengths: Sequence[int]) -> bool:
    """beta <= alpha <= mu for (mu, alpha, beta) of G(M)/(x*)G(M)."""
    mu, alpha, beta = lengths
    if not beta <= alpha <= mu:
        raise IdentityViolation(f"series constraint violated: mu={mu}, alpha={alpha}, beta={beta}")
    return True


@dataclass
class CorpusRow:
    file: str
    name: str
    expected: str
    computed: str
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _expected_depth(value: str, dim: int) -> int:
    return dim if value.strip().upper() == "CM" else int(value)


def check_corpus_file(path, seed: int = 0) -> CorpusRow:
    """Analyze one corpus file and compare with its expected block."""
    from .analysis import analyze, regular_sequence
    from .inputfile import read_input

    inp = read_input(path)
    name = inp.name or str(path)
    exp = inp.expected
    report, _ = analyze(inp.presentation, seed, None, inp.annihilator)
    notes = []
    ok = True
    want = []
    if "depth" in exp:
        depth = _expected_depth(exp["depth"], report.dim)
        want.append(f"depth {exp['depth']}")
        if depth != report.depth:
            ok = False
            notes.append("depth differs")
    if "h" in exp:
        want.append(f"h = {format_zpoly(parse_zpoly(exp['h']))}")
        if tuple(parse_zpoly(exp["h"])) != report.h.coeffs:
            ok = False
            notes.append("h differs")
    if "regular" in exp:
        regs = [v.strip() for v in exp["regular"].split(",")]
        want.append(f"regular {', '.join(regs)}")
        if not regular_sequence(inp.presentation, regs):
            ok = False
            notes.append(f"{', '.join(regs)} not G(M)-regular")
    if inp.annihilator is not None:
        notes.append(f"annihilated by {inp.annihilator_text}")
    if report.verdict is not None and report.verdict.matches is False:
        ok = False
        notes.append("verdict mismatch")
    label = "CM" if report.cm else f"depth {report.depth}"
    computed = f"{label}, h = {report.h}"
    return CorpusRow(str(path), name, "; ".join(want), computed, ok, "; ".join(notes))


def verify_corpus(paths, seed: int = 0) -> list[CorpusRow]:
    return [check_corpus_file(p, seed) for p in paths]
