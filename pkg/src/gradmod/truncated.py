"""Truncated model of M = coker(phi).

The free module F = R^r is cut off at degree D, and V is the image of phi
in F / n^{D+1} F.  One reduced echelon form of V, with coordinates ordered by
ascending degree, gives a normal-form basis of M / m^{D+1} M: the non-pivot
coordinates.  A non-pivot coordinate of degree k spans a slot of
m^k M / m^{k+1} M, so m^n M corresponds to the non-pivot coordinates of
degree >= n.  Every length computed here is linear algebra in that basis
(the "quotient coordinates").
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .errors import PresentationError, TruncationError
from .linalg import EchelonSpan, LinearMap, Vector, preimage_space, rank_of
from .poly import (
    INF,
    MultiPolynomial,
    default_names,
    monomials_up_to,
    parse_polynomial,
    poly_det,
)


class Presentation:
    """Square matrix phi over F_p[x_1..x_{d+1}]; columns are the relations."""

    def __init__(self, phi: Sequence[Sequence[MultiPolynomial]], names: Sequence[str] | None = None):
        rows = [tuple(row) for row in phi]
        r = len(rows)
        if r == 0 or any(len(row) != r for row in rows):
            raise PresentationError("matrix must be square and non-empty")
        first = rows[0][0]
        self.nvars = first.nvars
        self.p = first.p
        for row in rows:
            for f in row:
                if f.nvars != self.nvars or f.p != self.p:
                    raise PresentationError("entries live in different rings")
                if f.order() == 0:
                    raise PresentationError("presentation not minimal: an entry has a unit term")
        self.rows = tuple(rows)
        self.r = r
        self.names = tuple(names) if names else tuple(default_names(self.nvars))
        if len(self.names) != self.nvars:
            raise PresentationError("variable name count does not match")
        if self.det.is_zero():
            raise PresentationError("determinant is zero")

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], names: Sequence[str], p: int) -> Presentation:
        return cls([[parse_polynomial(s, names, p) for s in row] for row in rows], names)

    @property
    def dim(self) -> int:
        return self.nvars - 1

    @cached_property
    def det(self) -> MultiPolynomial:
        return poly_det(self.rows)

    @property
    def det_order(self) -> int:
        return self.det.order()

    def entry_orders(self) -> tuple[tuple, ...]:
        return tuple(tuple(f.order() for f in row) for row in self.rows)

    @property
    def min_order(self) -> int:
        """i(M): the largest i with every entry in n^i."""
        return min(f.order() for row in self.rows for f in row)

    @property
    def maxdeg(self) -> int:
        return max(int(f.degree()) for row in self.rows for f in row if not f.is_zero())

    def column(self, j: int) -> list[MultiPolynomial]:
        return [self.rows[i][j] for i in range(self.r)]

    def map_entries(self, fn) -> Presentation:
        return Presentation([[fn(f) for f in row] for row in self.rows])

    def to_text(self) -> str:
        body = ", ".join("[" + ", ".join(f.to_str(self.names) for f in row) + "]" for row in self.rows)
        return f"[{body}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, Presentation) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Presentation({self.to_text()})"


@dataclass(frozen=True)
class TruncationWindow:
    D: int
    safe_degree: int


class FreeIndex:
    """Coordinates (monomial, component) of F / n^{D+1} F, degree first."""

    def __init__(self, nvars: int, r: int, D: int):
        self.nvars, self.r, self.D = nvars, r, D
        self.monomials = monomials_up_to(nvars, D)
        self.position = {m: i for i, m in enumerate(self.monomials)}
        self.size = len(self.monomials) * r
        self.degree_start = []
        for k in range(D + 2):
            self.degree_start.append(
                next((i * r for i, m in enumerate(self.monomials) if sum(m) >= k), self.size)
            )

    def index(self, mono: tuple[int, ...], comp: int) -> int:
        return self.position[mono] * self.r + comp

    def label(self, idx: int) -> tuple[tuple[int, ...], int]:
        return self.monomials[idx // self.r], idx % self.r

    def degree(self, idx: int) -> int:
        return sum(self.monomials[idx // self.r])


def _image_vectors(P: Presentation, fidx: FreeIndex) -> list[Vector]:
    D = fidx.D
    out = []
    for j in range(P.r):
        col = P.column(j)
        o = min(f.order() for f in col)
        if o == INF or o > D:
            continue
        for m in monomials_up_to(P.nvars, D - o):
            v: Vector = {}
            for i, f in enumerate(col):
                for e, c in f.terms.items():
                    ee = tuple(a + b for a, b in zip(e, m))
                    if sum(ee) <= D:
                        v[fidx.index(ee, i)] = c
            if v:
                out.append(v)
    return out


def image_span(P: Presentation, D: int) -> EchelonSpan:
    """(im phi + n^{D+1} F) / n^{D+1} F as an echelon span in F / n^{D+1} F."""
    if D < 1:
        raise TruncationError("truncation degree must be at least 1")
    fidx = FreeIndex(P.nvars, P.r, D)
    return EchelonSpan.from_vectors(_image_vectors(P, fidx), fidx.size, P.p)


class TruncatedModule:
    """M / m^{D+1} M in normal-form coordinates (the filtration cache)."""

    def __init__(self, P: Presentation, D: int):
        if D < 1:
            raise TruncationError("truncation degree must be at least 1")
        self.P = P
        self.D = D
        self.p = P.p
        self.window = TruncationWindow(D, D)
        self.free = FreeIndex(P.nvars, P.r, D)
        self.image = EchelonSpan.from_vectors(_image_vectors(P, self.free), self.free.size, P.p)
        pivots = self.image.rows
        self.basis_cols = [c for c in range(self.free.size) if c not in pivots]
        self.qpos = {c: q for q, c in enumerate(self.basis_cols)}
        self.qdeg = [self.free.degree(c) for c in self.basis_cols]
        self.size = len(self.basis_cols)
        self.q_start = []
        for k in range(D + 2):
            self.q_start.append(next((q for q, d in enumerate(self.qdeg) if d >= k), self.size))
        self.hilbert = [self.q_start[k + 1] - self.q_start[k] for k in range(D + 1)]
        self._nf_cache: dict[int, Vector] = {}
        self._var_maps: dict[int, LinearMap] = {}

    # normal forms -------------------------------------------------------

    def nf_unit(self, c: int) -> Vector:
        """Quotient coordinates of the ambient unit vector at index c."""
        v = self._nf_cache.get(c)
        if v is None:
            q = self.qpos.get(c)
            if q is not None:
                v = {q: 1}
            else:
                row = self.image.rows[c]
                p = self.p
                v = {self.qpos[k]: (-a) % p for k, a in row.items() if k != c}
            self._nf_cache[c] = v
        return v

    def nf(self, v: Mapping[int, int]) -> Vector:
        out: Vector = {}
        p = self.p
        for c, a in v.items():
            for q, b in self.nf_unit(c).items():
                s = (out.get(q, 0) + a * b) % p
                if s:
                    out[q] = s
                else:
                    out.pop(q, None)
        return out

    def generator(self, j: int) -> Vector:
        """Class of the j-th free generator e_j."""
        return self.nf_unit(self.free.index((0,) * self.P.nvars, j))

    # multiplication -----------------------------------------------------

    def mult_map(self, f: MultiPolynomial) -> LinearMap:
        """Multiplication by f on M / m^{D+1} M."""
        if f.nvars != self.P.nvars:
            raise ValueError("form lives in a different ring")
        if f.terms and all(sum(e) == 1 for e in f.terms):
            coeffs = f.linear_coefficients()
            idx = [i for i, c in enumerate(coeffs) if c]
            return LinearMap.linear_combination([coeffs[i] for i in idx], [self.variable_map(i) for i in idx])
        cols: dict[int, Vector] = {}
        for q, c in enumerate(self.basis_cols):
            mono, comp = self.free.label(c)
            amb: Vector = {}
            for e, a in f.terms.items():
                ee = tuple(x + y for x, y in zip(mono, e))
                if sum(ee) <= self.D:
                    amb[self.free.index(ee, comp)] = a
            col = self.nf(amb)
            if col:
                cols[q] = col
        return LinearMap(cols, self.size, self.size, self.p)

    def variable_map(self, i: int) -> LinearMap:
        m = self._var_maps.get(i)
        if m is None:
            cols: dict[int, Vector] = {}
            for q, c in enumerate(self.basis_cols):
                if self.qdeg[q] >= self.D:
                    continue
                mono, comp = self.free.label(c)
                shifted = list(mono)
                shifted[i] += 1
                col = self.nf_unit(self.free.index(tuple(shifted), comp))
                if col:
                    cols[q] = col
            m = LinearMap(cols, self.size, self.size, self.p)
            self._var_maps[i] = m
        return m

    # subspaces ----------------------------------------------------------

    def power_span(self, n: int) -> EchelonSpan:
        """m^n M (mod m^{D+1} M) in quotient coordinates."""
        n = max(0, n)
        start = self.q_start[min(n, self.D + 1)]
        return EchelonSpan.coordinate(range(start, self.size), self.size, self.p)

    def below(self, n: int) -> EchelonSpan:
        """Coordinates of degree < n: a complement of m^n M."""
        n = max(0, n)
        return EchelonSpan.coordinate(range(self.q_start[min(n, self.D + 1)]), self.size, self.p)

    def span(self, vectors) -> EchelonSpan:
        return EchelonSpan.from_vectors(vectors, self.size, self.p)

    def _check(self, n: int) -> None:
        if n < 0 or n > self.window.safe_degree:
            raise TruncationError(f"degree {n} outside certified window [0, {self.window.safe_degree}]")

    def hilbert_values(self) -> list[int]:
        return list(self.hilbert)


def hilbert_value(module: TruncatedModule, n: int) -> int:
    """l(m^n M / m^{n+1} M)."""
    module._check(n)
    return module.hilbert[n]


def colon_space(module: TruncatedModule, maps: Sequence[LinearMap], n: int) -> EchelonSpan:
    """(m^{n+1} M :_M (maps)) modulo nothing, as a subspace of M / m^{D+1} M."""
    module._check(n)
    part = preimage_space(module.below(n), maps, module.power_span(n + 1))
    return part.extend(module.power_span(n).rows.values())


def colon_length(module: TruncatedModule, n: int, x: MultiPolynomial | LinearMap) -> int:
    """b_n(x, M) = l((m^{n+1} M : x) / m^n M)."""
    xm = module.mult_map(x) if isinstance(x, MultiPolynomial) else x
    return colon_quotient_length(module, [xm], n)


def colon_quotient_length(module: TruncatedModule, maps: Sequence[LinearMap], n: int) -> int:
    """l((m^{n+1} M : (maps)) / m^n M)."""
    if n < 0:
        return 0
    module._check(n)
    src = module.q_start[n]
    cut = module.q_start[min(n + 1, module.D + 1)]
    images = []
    for q in range(src):
        acc: Vector = {}
        for j, f in enumerate(maps):
            for k, a in f.columns.get(q, {}).items():
                if k < cut:
                    acc[j * module.size + k] = a
        images.append(acc)
    # rank-nullity: the colon quotient is the kernel of v -> (f(v) mod m^{n+1} M)
    return src - rank_of(images, module.p)


def colon_quotient_lengths(module: TruncatedModule, maps: Sequence[LinearMap], nmax: int) -> list[int]:
    """l((m^{n+1} M : (maps)) / m^n M) for n = 0..nmax in one pass.

    Images are kept in a leftmost-pivot echelon form with the maps
    interleaved per coordinate, so the rank of the projection below any
    degree cut is the number of pivots below it.  Sources only grow with n,
    so the echelon form is extended rather than rebuilt.
    """
    nmax = min(nmax, module.D - 1)
    if nmax < 0:
        return []
    module._check(nmax)
    k = len(maps)
    p = module.p
    rows: dict[int, Vector] = {}
    pivots: list[int] = []
    out = []
    done = 0
    for n in range(nmax + 1):
        src = module.q_start[n]
        for q in range(done, src):
            w: Vector = {}
            for j, f in enumerate(maps):
                for c, a in f.columns.get(q, {}).items():
                    w[c * k + j] = a
            while w:
                c = min(w)
                row = rows.get(c)
                if row is None:
                    inv = pow(w[c], -1, p)
                    rows[c] = {i: a * inv % p for i, a in w.items()}
                    pivots.append(c)
                    break
                a = w[c]
                for i, b in row.items():
                    s = (w.get(i, 0) - a * b) % p
                    if s:
                        w[i] = s
                    else:
                        w.pop(i, None)
        done = src
        cut = module.q_start[n + 1] * k
        out.append(src - sum(1 for c in pivots if c < cut))
    return out


@dataclass(frozen=True)
class ReductionData:
    """Lengths rho_n = l(m^{n+1} M / J m^n M) and the spans J m^n M."""

    rho: tuple[int, ...]
    red: int
    jm_ranks: tuple[int, ...]
    jm_pivots: tuple[tuple[int, ...], ...]


def submodule_lengths(module: TruncatedModule, J: Sequence[LinearMap]) -> ReductionData:
    """rho_n for n = 0..D-1 together with the reduction number.

    A truncated rho_k = 0 with k < D forces m^{k+1} M = J m^k M by Nakayama,
    and then every value for n <= D - 1 is exact.
    """
    D = module.D
    spans: list[EchelonSpan] = [None] * (D + 1)
    acc = EchelonSpan(module.size, module.p)
    for n in range(D, -1, -1):
        new = []
        for q in range(module.q_start[n], module.q_start[n + 1]):
            for f in J:
                col = f.columns.get(q)
                if col:
                    new.append(col)
        acc = acc.extend(new)
        spans[n] = acc
    rho = []
    for n in range(D):
        rho.append(module.size - module.q_start[n + 1] - spans[n].rank)
    red = next((k for k, v in enumerate(rho) if v == 0), None)
    if red is None:
        raise TruncationError(f"reduction number not reached inside window D={D}")
    jm_pivots = tuple(tuple(sorted(s.rows)) for s in spans)
    return ReductionData(tuple(rho), red, tuple(s.rank for s in spans), jm_pivots)


def vv_lengths(module: TruncatedModule, data: ReductionData) -> list[int]:
    """l((m^{n+1} M cap J M) / J m^n M) for n = 0..D-1."""
    jm = data.jm_pivots[0]
    total = len(jm)
    out = []
    for n in range(module.D):
        cut = module.q_start[n + 1]
        inside = total - sum(1 for c in jm if c < cut)
        out.append(inside - data.jm_ranks[n])
    return out


def graded_quotient_lengths(module: TruncatedModule, data: ReductionData) -> tuple[int, int, int]:
    """(l(M/mM), l(mM/(m^2M + JM)), l(m^2M/(m^3M + JmM)))."""
    if module.D < 2:
        raise TruncationError("need D >= 2")
    q = module.q_start
    alpha = module.hilbert[1] - sum(1 for c in data.jm_pivots[0] if q[1] <= c < q[2])
    beta = module.hilbert[2] - sum(1 for c in data.jm_pivots[1] if q[2] <= c < q[3])
    return module.hilbert[0], alpha, beta
