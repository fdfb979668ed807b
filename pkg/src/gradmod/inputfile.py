"""Line-based input format.

    # comment
    name = Case (1)(4)
    prime = 32003
    vars = x, y
    matrix = [[y^2, 0],
              [x, y]]
    annihilator = y^3

    [expected]
    depth = 0
    h = 2 + z^2

Keys are ``key = value``; a matrix may continue over several lines until
its brackets balance.  Everything after ``[expected]`` is a free key/value
block used by corpus files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PresentationError
from .poly import DEFAULT_PRIME, MultiPolynomial, PolynomialSyntaxError, is_prime, parse_polynomial
from .truncated import Presentation

KNOWN_KEYS = ("name", "prime", "vars", "matrix", "annihilator")


class InputSyntaxError(PresentationError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class InputFile:
    vars: list[str]
    entries: list[list[str]]
    presentation: Presentation
    prime: int = DEFAULT_PRIME
    name: str | None = None
    annihilator_text: str | None = None
    annihilator: MultiPolynomial | None = None
    expected: dict[str, str] = field(default_factory=dict)
    comments: list[str] = field(default_factory=list)

    @property
    def r(self) -> int:
        return self.presentation.r


def _split_matrix(chars: list[tuple[str, int, int]], start_line: int) -> list[list[tuple[str, int, int]]]:
    """Split ``[[a, b], [c, d]]`` into rows of (entry text, line, column)."""
    text = "".join(c for c, _, _ in chars)
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise InputSyntaxError("matrix must be a bracketed list of rows", start_line)
    rows: list[list[tuple[str, int, int]]] = []
    depth = 0
    row: list[tuple[str, int, int]] | None = None
    buf: list[tuple[str, int, int]] = []

    def flush():
        s = "".join(c for c, _, _ in buf).strip()
        if not s:
            pos = buf[0] if buf else chars[-1]
            raise InputSyntaxError("empty matrix entry", pos[1], pos[2])
        first = next(p for p in buf if not p[0].isspace())
        row.append((s, first[1], first[2]))
        buf.clear()

    for ch, ln, col in chars:
        if ch == "[":
            depth += 1
            if depth == 2:
                row = []
                buf.clear()
            elif depth > 2:
                raise InputSyntaxError("too many nested brackets", ln, col)
            continue
        if ch == "]":
            if depth == 2:
                flush()
                rows.append(row)
                row = None
            depth -= 1
            if depth < 0:
                raise InputSyntaxError("unbalanced ']'", ln, col)
            continue
        if depth == 2:
            if ch == ",":
                flush()
            else:
                buf.append((ch, ln, col))
        elif depth == 1 and not (ch.isspace() or ch == ","):
            raise InputSyntaxError(f"unexpected {ch!r} between rows", ln, col)
    if depth != 0:
        raise InputSyntaxError("unbalanced brackets in matrix", start_line)
    return rows


def parse_input(text: str) -> InputFile:
    """Parse and validate an input file; errors carry line and column."""
    fields: dict[str, tuple[str, int, int]] = {}
    expected: dict[str, str] = {}
    comments: list[str] = []
    matrix_chars: list[tuple[str, int, int]] | None = None
    matrix_line = 0
    in_expected = False
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        raw = lines[i]
        lineno = i + 1
        i += 1
        stripped = raw.split("#", 1)[0].strip()
        if raw.strip().startswith("#"):
            comments.append(raw.strip()[1:].strip())
            continue
        if not stripped:
            continue
        if stripped == "[expected]":
            in_expected = True
            continue
        if "=" not in stripped:
            raise InputSyntaxError("expected 'key = value'", lineno, 1)
        key, value = stripped.split("=", 1)
        key = key.strip()
        vcol = raw.index("=") + 2 + (len(value) - len(value.lstrip()))
        value = value.strip()
        if in_expected:
            expected[key] = value
            continue
        if key not in KNOWN_KEYS:
            raise InputSyntaxError(f"unknown key {key!r}", lineno, 1)
        if key in fields or (key == "matrix" and matrix_chars is not None):
            raise InputSyntaxError(f"duplicate key {key!r}", lineno, 1)
        if key == "matrix":
            matrix_line = lineno
            start = raw.index("=") + 1
            matrix_chars = [(c, lineno, start + k + 1) for k, c in enumerate(raw.split("#", 1)[0][start:])]
            balance = value.count("[") - value.count("]")
            while balance > 0 and i < len(lines):
                nxt = lines[i].split("#", 1)[0]
                matrix_chars.append(("\n", i, len(lines[i - 1]) + 1))
                matrix_chars.extend((c, i + 1, k + 1) for k, c in enumerate(nxt))
                balance += nxt.count("[") - nxt.count("]")
                i += 1
            continue
        fields[key] = (value, lineno, vcol)

    if "vars" not in fields:
        raise InputSyntaxError("missing 'vars'", len(lines) or 1)
    if matrix_chars is None:
        raise InputSyntaxError("missing 'matrix'", len(lines) or 1)
    prime = DEFAULT_PRIME
    if "prime" in fields:
        value, ln, col = fields["prime"]
        try:
            prime = int(value)
        except ValueError:
            raise InputSyntaxError(f"prime must be an integer, got {value!r}", ln, col) from None
        if not is_prime(prime):
            raise InputSyntaxError(f"{prime} is not prime", ln, col)
    value, ln, col = fields["vars"]
    names = [v.strip() for v in value.split(",")]
    if not names or any(not n.isidentifier() for n in names):
        raise InputSyntaxError(f"bad variable list {value!r}", ln, col)
    if len(set(names)) != len(names):
        raise InputSyntaxError("repeated variable name", ln, col)

    rows = _split_matrix(matrix_chars, matrix_line)
    polys, entries = [], []
    for row in rows:
        prow, erow = [], []
        for s, eln, ecol in row:
            try:
                prow.append(parse_polynomial(s, names, prime, eln, ecol - 1))
            except PolynomialSyntaxError as exc:
                raise InputSyntaxError(str(exc).rsplit(" (line", 1)[0], exc.line, exc.column) from None
            erow.append(" ".join(s.split()))
        polys.append(prow)
        entries.append(erow)
    if any(len(r) != len(rows) for r in rows):
        raise InputSyntaxError("matrix must be square", matrix_line)
    for r_idx, prow in enumerate(polys):
        for c_idx, f in enumerate(prow):
            if f.order() == 0:
                _, eln, ecol = rows[r_idx][c_idx]
                raise InputSyntaxError(
                    f"presentation not minimal: entry {entries[r_idx][c_idx]!r} has a unit term", eln, ecol)
    try:
        P = Presentation(polys, names)
    except PresentationError as exc:
        raise InputSyntaxError(str(exc), matrix_line) from None

    ann = ann_text = None
    if "annihilator" in fields:
        ann_text, ln, col = fields["annihilator"]
        try:
            ann = parse_polynomial(ann_text, names, prime, ln, col - 1)
        except PolynomialSyntaxError as exc:
            raise InputSyntaxError(str(exc).rsplit(" (line", 1)[0], exc.line, exc.column) from None
        if ann.is_zero():
            raise InputSyntaxError("annihilator must be nonzero", ln, col)
        ann_text = " ".join(ann_text.split())
    name = fields["name"][0] if "name" in fields else None
    return InputFile(names, entries, P, prime, name, ann_text, ann, expected, comments)


def render(inp: InputFile) -> str:
    """Canonical text for an InputFile; parse(render(x)) reproduces x."""
    out = [f"# {c}" if c else "#" for c in inp.comments]
    if inp.name is not None:
        out.append(f"name = {inp.name}")
    out.append(f"prime = {inp.prime}")
    out.append("vars = " + ", ".join(inp.vars))
    rows = ["[" + ", ".join(r) + "]" for r in inp.entries]
    pad = " " * len("matrix = [")
    out.append("matrix = [" + (",\n" + pad).join(rows) + "]")
    if inp.annihilator_text is not None:
        out.append(f"annihilator = {inp.annihilator_text}")
    if inp.expected:
        out.append("")
        out.append("[expected]")
        out.extend(f"{k} = {v}" for k, v in inp.expected.items())
    return "\n".join(out) + "\n"


def read_input(path) -> InputFile:
    with open(path, encoding="utf-8") as fh:
        return parse_input(fh.read())
