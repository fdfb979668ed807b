"""Sparse multivariate polynomials over a prime field F_p.

Polynomials are immutable.  Terms are stored as ``{exponent tuple: residue}``
with no zero coefficients.  The order ``v(f)`` is the least total degree of a
term, ``inf`` for the zero polynomial.
"""

from __future__ import annotations

import ast
import math
from functools import reduce
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

DEFAULT_PRIME = 32003
INF = math.inf

Exponent = tuple[int, ...]


class StructuralError(ValueError):
    """Operands are incompatible (variable count, modulus, singular change)."""


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def monomial_key(e: Exponent) -> tuple:
    """Sort key: total degree first, then lex with x_1 > x_2 > ... ."""
    return (sum(e), tuple(-a for a in e))


def monomials_of_degree(nvars: int, deg: int) -> list[Exponent]:
    """All exponent vectors of total degree ``deg`` in monomial_key order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=monomial_key)
    return out


def monomials_up_to(nvars: int, deg: int) -> list[Exponent]:
    out: list[Exponent] = []
    for k in range(deg + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class MultiPolynomial:
    __slots__ = ("terms", "nvars", "p", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None, nvars: int, p: int = DEFAULT_PRIME):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != nvars:
                raise StructuralError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(a < 0 for a in e):
                raise StructuralError(f"negative exponent in {e}")
            c %= p
            if c:
                clean[e] = c
        self.terms: dict[Exponent, int] = dict(sorted(clean.items(), key=lambda t: monomial_key(t[0])))
        self.nvars = nvars
        self.p = p
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, p: int = DEFAULT_PRIME) -> MultiPolynomial:
        return cls({}, nvars, p)

    @classmethod
    def constant(cls, c: int, nvars: int, p: int = DEFAULT_PRIME) -> MultiPolynomial:
        return cls({(0,) * nvars: c}, nvars, p)

    @classmethod
    def variable(cls, i: int, nvars: int, p: int = DEFAULT_PRIME) -> MultiPolynomial:
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, p)

    @classmethod
    def monomial(cls, e: Exponent, c: int = 1, p: int = DEFAULT_PRIME) -> MultiPolynomial:
        return cls({tuple(e): c}, len(e), p)

    @classmethod
    def linear_form(cls, coeffs: Sequence[int], p: int = DEFAULT_PRIME) -> MultiPolynomial:
        n = len(coeffs)
        return cls({tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)}, n, p)

    # basic protocol -----------------------------------------------------

    def _check(self, other: MultiPolynomial) -> None:
        if self.nvars != other.nvars:
            raise StructuralError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.p != other.p:
            raise StructuralError(f"modulus mismatch: {self.p} vs {other.p}")

    def _coerce(self, other) -> MultiPolynomial:
        if isinstance(other, MultiPolynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return MultiPolynomial.constant(other, self.nvars, self.p)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPolynomial.constant(other, self.nvars, self.p)
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.p, tuple(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPolynomial({self.to_str()!r}, nvars={self.nvars}, p={self.p})"

    def __str__(self) -> str:
        return self.to_str()

    # arithmetic ---------------------------------------------------------

    def __add__(self, other) -> MultiPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = (t.get(e, 0) + c) % self.p
        return MultiPolynomial(t, self.nvars, self.p)

    __radd__ = __add__

    def __neg__(self) -> MultiPolynomial:
        return MultiPolynomial({e: -c for e, c in self.terms.items()}, self.nvars, self.p)

    def __sub__(self, other) -> MultiPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> MultiPolynomial:
        return (-self) + other

    def __mul__(self, other) -> MultiPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        t: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                t[e] = (t.get(e, 0) + c1 * c2) % p
        return MultiPolynomial(t, self.nvars, p)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPolynomial:
        if k < 0:
            raise ValueError("negative power")
        result = MultiPolynomial.constant(1, self.nvars, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> MultiPolynomial:
        return MultiPolynomial({e: c * a for e, a in self.terms.items()}, self.nvars, self.p)

    # invariants ---------------------------------------------------------

    def order(self) -> float | int:
        """Least total degree of a term; ``inf`` for zero."""
        if not self.terms:
            return INF
        return min(sum(e) for e in self.terms)

    def degree(self) -> float | int:
        if not self.terms:
            return -INF
        return max(sum(e) for e in self.terms)

    def homogeneous_part(self, k: int) -> MultiPolynomial:
        return MultiPolynomial({e: c for e, c in self.terms.items() if sum(e) == k}, self.nvars, self.p)

    def initial_form(self) -> MultiPolynomial:
        if not self.terms:
            return self
        return self.homogeneous_part(self.order())

    def truncate(self, deg: int) -> MultiPolynomial:
        """Drop all terms of total degree > deg."""
        return MultiPolynomial({e: c for e, c in self.terms.items() if sum(e) <= deg}, self.nvars, self.p)

    def linear_coefficients(self) -> list[int]:
        """Coefficients of a degree-1 form (only degree-1 terms are read)."""
        out = [0] * self.nvars
        for e, c in self.terms.items():
            if sum(e) == 1:
                out[e.index(1)] = c
        return out

    # substitution -------------------------------------------------------

    def substitute_linear(self, forms: Sequence[MultiPolynomial]) -> MultiPolynomial:
        """Replace variable i by ``forms[i]`` (all forms share one target ring)."""
        if len(forms) != self.nvars:
            raise StructuralError("need one form per variable")
        if not forms:
            return self
        target = forms[0]
        powers: dict[tuple[int, int], MultiPolynomial] = {}

        def pw(i: int, k: int) -> MultiPolynomial:
            key = (i, k)
            if key not in powers:
                powers[key] = forms[i] ** k
            return powers[key]

        acc = MultiPolynomial.zero(target.nvars, target.p)
        for e, c in self.terms.items():
            term = MultiPolynomial.constant(c, target.nvars, target.p)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            acc = acc + term
        return acc

    def apply_change(self, change: LinearChange) -> MultiPolynomial:
        if change.size != self.nvars:
            raise StructuralError("change size does not match variable count")
        return self.substitute_linear(change.forms(self.p))

    def eliminate_last(self) -> MultiPolynomial:
        """Set the last variable to zero and drop it."""
        if self.nvars == 0:
            raise StructuralError("no variable to eliminate")
        return MultiPolynomial(
            {e[:-1]: c for e, c in self.terms.items() if e[-1] == 0}, self.nvars - 1, self.p
        )

    # division -----------------------------------------------------------

    def leading(self) -> tuple[Exponent, int]:
        e = max(self.terms, key=monomial_key)
        return e, self.terms[e]

    def divmod(self, g: MultiPolynomial) -> tuple[MultiPolynomial, MultiPolynomial]:
        """Multivariate division by one polynomial under degree-lex order.

        The remainder is zero exactly when ``g`` divides ``self`` in F_p[x].
        """
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        ge, gc = g.leading()
        ginv = pow(gc, -1, p)
        rem = dict(self.terms)
        quot: dict[Exponent, int] = {}
        out_rem: dict[Exponent, int] = {}
        while rem:
            e = max(rem, key=monomial_key)
            c = rem.pop(e)
            if all(a >= b for a, b in zip(e, ge)):
                qe = tuple(a - b for a, b in zip(e, ge))
                qc = c * ginv % p
                quot[qe] = (quot.get(qe, 0) + qc) % p
                for te, tc in g.terms.items():
                    if te == ge:
                        continue
                    ne = _add_exp(qe, te)
                    v = (rem.get(ne, 0) - qc * tc) % p
                    if v:
                        rem[ne] = v
                    else:
                        rem.pop(ne, None)
            else:
                out_rem[e] = c
        return MultiPolynomial(quot, self.nvars, p), MultiPolynomial(out_rem, self.nvars, p)

    def divisible_by(self, g: MultiPolynomial) -> bool:
        return self.divmod(g)[1].is_zero()

    # text ---------------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(names) if names else default_names(self.nvars)
        half = self.p // 2
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: monomial_key(t[0])):
            sign = "+"
            if c > half:
                sign, c = "-", self.p - c
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(c)] + factors)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


class LinearChange:
    """Invertible linear substitution: variable i becomes ``sum_j matrix[i][j] * y_j``."""

    def __init__(self, matrix: Sequence[Sequence[int]], p: int = DEFAULT_PRIME):
        self.matrix = tuple(tuple(int(a) % p for a in row) for row in matrix)
        self.size = len(self.matrix)
        self.p = p
        if any(len(row) != self.size for row in self.matrix):
            raise StructuralError("linear change must be square")
        if det_mod_p(self.matrix, p) == 0:
            raise StructuralError("linear change is singular")

    @classmethod
    def identity(cls, n: int, p: int = DEFAULT_PRIME) -> LinearChange:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def permutation(cls, perm: Sequence[int], p: int = DEFAULT_PRIME) -> LinearChange:
        """Variable i becomes variable perm[i]."""
        n = len(perm)
        return cls([[int(perm[i] == j) for j in range(n)] for i in range(n)], p)

    def forms(self, p: int | None = None) -> list[MultiPolynomial]:
        p = p or self.p
        return [MultiPolynomial.linear_form(row, p) for row in self.matrix]


def det_mod_p(matrix: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in matrix]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            f = a[r][col] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def inverse_mod_p(matrix: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Gauss-Jordan inverse of a square matrix over F_p."""
    n = len(matrix)
    a = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise StructuralError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def poly_det(matrix: Sequence[Sequence[MultiPolynomial]]) -> MultiPolynomial:
    """Determinant by Laplace expansion along rows, memoised on column subsets."""
    n = len(matrix)
    if n == 0:
        raise StructuralError("empty matrix")
    proto = matrix[0][0]
    memo: dict[tuple[int, frozenset], MultiPolynomial] = {}

    def minor(row: int, cols: frozenset) -> MultiPolynomial:
        if row == n:
            return MultiPolynomial.constant(1, proto.nvars, proto.p)
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = MultiPolynomial.zero(proto.nvars, proto.p)
        ordered = sorted(cols)
        for k, c in enumerate(ordered):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols - {c})
            term = entry * sub
            acc = acc + (term if k % 2 == 0 else -term)
        memo[key] = acc
        return acc

    return minor(0, frozenset(range(n)))


def poly_adjugate(matrix: Sequence[Sequence[MultiPolynomial]]) -> list[list[MultiPolynomial]]:
    n = len(matrix)
    proto = matrix[0][0]
    if n == 1:
        return [[MultiPolynomial.constant(1, proto.nvars, proto.p)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[matrix[a][b] for b in range(n) if b != j] for a in range(n) if a != i]
            d = poly_det(sub)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


def default_names(nvars: int) -> list[str]:
    base = ["x", "y", "z", "t", "u", "v", "w"]
    if nvars <= len(base):
        return base[:nvars]
    return [f"x{i + 1}" for i in range(nvars)]


# parsing ------------------------------------------------------------------

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow)


def parse_polynomial(text: str, names: Sequence[str], p: int = DEFAULT_PRIME,
                     line: int = 1, column_offset: int = 0) -> MultiPolynomial:
    """Parse ``y^2 + 3*x*y`` style text (``+ - * ^``, integers, identifiers)."""
    names = list(names)
    nvars = len(names)
    index = {n: i for i, n in enumerate(names)}
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"cannot parse {text.strip()!r}: {exc.msg}", line,
                                    column_offset + (exc.offset or 0)) from None

    def err(node, msg):
        return PolynomialSyntaxError(msg, line, column_offset + getattr(node, "col_offset", 0) + 1)

    def ev(node) -> MultiPolynomial:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return MultiPolynomial.constant(node.value, nvars, p)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise err(node, f"unknown variable {node.id!r}")
            return MultiPolynomial.variable(index[node.id], nvars, p)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise err(node, "exponent must be a non-negative integer")
                return ev(node.left) ** node.right.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            return a * b
        raise err(node, f"unsupported syntax in {text.strip()!r}")

    return ev(tree)


def product(polys: Iterable[MultiPolynomial]) -> MultiPolynomial:
    return reduce(lambda a, b: a * b, polys)
