"""Exact sparse linear algebra over F_p.

Vectors are plain ``dict[int, int]`` maps from coordinate index to a nonzero
residue.  Coordinates are ordered by index, and callers arrange indices so
that ascending index means ascending degree.  The leftmost nonzero coordinate
of a vector is its *leading* coordinate.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

Vector = dict[int, int]


def axpy(y: Vector, a: int, x: Mapping[int, int], p: int) -> None:
    """In place ``y += a * x`` modulo p, dropping zeros."""
    for k, v in x.items():
        s = (y.get(k, 0) + a * v) % p
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scale(x: Mapping[int, int], a: int, p: int) -> Vector:
    a %= p
    if not a:
        return {}
    return {k: v * a % p for k, v in x.items()}


def add_vectors(vectors: Iterable[tuple[int, Mapping[int, int]]], p: int) -> Vector:
    """Linear combination ``sum(c * v)`` of (coefficient, vector) pairs."""
    out: Vector = {}
    for c, v in vectors:
        if c % p:
            axpy(out, c, v, p)
    return out


def unit(i: int) -> Vector:
    return {i: 1}


class EchelonSpan:
    """Fully reduced row-echelon basis of a subspace of F_p^ambient.

    ``rows`` maps each pivot coordinate to its basis row.  Every row has
    coefficient 1 at its pivot and no entries at any other pivot, so the
    basis is canonical and two spans are equal exactly when their rows are.
    Instances are treated as immutable once built.
    """

    __slots__ = ("ambient", "p", "rows")

    def __init__(self, ambient: int, p: int, rows: dict[int, Vector] | None = None):
        self.ambient = ambient
        self.p = p
        self.rows: dict[int, Vector] = rows if rows is not None else {}

    @classmethod
    def from_vectors(cls, vectors: Iterable[Mapping[int, int]], ambient: int, p: int) -> EchelonSpan:
        return cls(ambient, p).extend(vectors)

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient: int, p: int) -> EchelonSpan:
        """Span of the unit vectors at ``indices``."""
        return cls(ambient, p, {i: {i: 1} for i in indices})

    @classmethod
    def full(cls, ambient: int, p: int) -> EchelonSpan:
        return cls.coordinate(range(ambient), ambient, p)

    # construction -------------------------------------------------------

    def _insert_leading(self, rows: dict[int, Vector], v: Mapping[int, int]) -> int | None:
        """Reduce ``v`` by leading coordinates; store it if independent."""
        p = self.p
        w = dict(v)
        while w:
            c = min(w)
            row = rows.get(c)
            if row is None:
                inv = pow(w[c], -1, p)
                rows[c] = {k: a * inv % p for k, a in w.items()}
                return c
            axpy(w, -w[c], row, p)
        return None

    @staticmethod
    def _back_substitute(rows: dict[int, Vector], p: int, dirty: set[int] | None = None) -> None:
        # Descending pivots: rows with larger pivots are already fully reduced,
        # so subtracting them introduces no pivot coordinates.
        for c in sorted(rows, reverse=True):
            if dirty is not None and c not in dirty:
                continue
            row = rows[c]
            hits = [k for k in row if k != c and k in rows]
            if not hits:
                continue
            row = dict(row)
            for k in hits:
                a = row.get(k)
                if a:
                    axpy(row, -a, rows[k], p)
            rows[c] = row

    def extend(self, vectors: Iterable[Mapping[int, int]]) -> EchelonSpan:
        """Return the span of this space together with ``vectors``."""
        rows = dict(self.rows)
        added = False
        for v in vectors:
            if v and self._insert_leading(rows, v) is not None:
                added = True
        if not added:
            return self
        # Any row may now carry a new pivot coordinate in its tail.
        self._back_substitute(rows, self.p)
        return EchelonSpan(self.ambient, self.p, rows)

    # queries ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[Vector]:
        return [self.rows[c] for c in sorted(self.rows)]

    def reduce(self, v: Mapping[int, int]) -> Vector:
        """Normal form of ``v``: the unique representative with no pivot entries."""
        w = dict(v)
        p = self.p
        for c in [k for k in w if k in self.rows]:
            a = w.get(c)
            if a:
                axpy(w, -a, self.rows[c], p)
        return w

    def member(self, v: Mapping[int, int]) -> bool:
        return not self.reduce(v)

    def contains(self, other: EchelonSpan) -> bool:
        return all(self.member(r) for r in other.rows.values())

    def count_pivots(self, lo: int, hi: int) -> int:
        """Number of pivots in the index range [lo, hi)."""
        return sum(1 for c in self.rows if lo <= c < hi)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EchelonSpan):
            return NotImplemented
        return self.ambient == other.ambient and self.p == other.p and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ambient, self.p, tuple(sorted(self.rows))))

    def __repr__(self) -> str:
        return f"EchelonSpan(rank={self.rank}, ambient={self.ambient})"


def span(vectors: Iterable[Mapping[int, int]], ambient: int, p: int) -> EchelonSpan:
    return EchelonSpan.from_vectors(vectors, ambient, p)


def independent_count(base: EchelonSpan, vectors: Iterable[Mapping[int, int]]) -> int:
    """How many of ``vectors`` are independent modulo ``base`` (in sequence)."""
    rows = dict(base.rows)
    n = 0
    for v in vectors:
        if v and base._insert_leading(rows, v) is not None:
            n += 1
    return n


def dim_quotient(U: EchelonSpan, W: EchelonSpan) -> int:
    """dim(U + W) - dim(W)."""
    if U.ambient != W.ambient:
        raise ValueError("ambient dimension mismatch")
    return independent_count(W, U.rows.values())


def intersection_dim(U: EchelonSpan, W: EchelonSpan) -> int:
    return U.rank - dim_quotient(U, W)


class LinearMap:
    """Sparse linear map given by the images of unit vectors."""

    __slots__ = ("columns", "source_dim", "target_dim", "p")

    def __init__(self, columns: dict[int, Vector], source_dim: int, target_dim: int, p: int):
        self.columns = columns
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.p = p

    def __call__(self, v: Mapping[int, int]) -> Vector:
        out: Vector = {}
        for k, a in v.items():
            col = self.columns.get(k)
            if col:
                axpy(out, a, col, self.p)
        return out

    @staticmethod
    def linear_combination(coeffs: Sequence[int], maps: Sequence[LinearMap]) -> LinearMap:
        first = maps[0]
        p = first.p
        cols: dict[int, Vector] = {}
        for c, m in zip(coeffs, maps):
            if not c % p:
                continue
            for k, col in m.columns.items():
                acc = cols.setdefault(k, {})
                axpy(acc, c, col, p)
        cols = {k: v for k, v in cols.items() if v}
        return LinearMap(cols, first.source_dim, first.target_dim, p)


def rank_of(vectors: Iterable[Mapping[int, int]], p: int) -> int:
    """Rank of a list of vectors.

    Pivots are taken at the largest coordinate.  That choice does not affect
    the rank, and on degree-raising maps it keeps fill-in far lower than
    leftmost pivots do.
    """
    rows: dict[int, Vector] = {}
    for v in vectors:
        w = dict(v)
        while w:
            c = max(w)
            row = rows.get(c)
            if row is None:
                inv = pow(w[c], -1, p)
                rows[c] = {k: a * inv % p for k, a in w.items()}
                break
            axpy(w, -w[c], row, p)
    return len(rows)


def kernel_combinations(vectors: Sequence[Mapping[int, int]], p: int) -> list[Vector]:
    """Basis of {c : sum c_i vectors[i] = 0}, as sparse coefficient vectors.

    Each vector is tagged with a unit coefficient at a negative coordinate.
    Pivots are taken at the largest coordinate, so tags are eliminated last
    and a row with only tags left is a kernel element.
    """
    rows: dict[int, Vector] = {}
    kernel: list[Vector] = []
    for i, v in enumerate(vectors):
        w = dict(v)
        w[-1 - i] = 1
        while True:
            c = max(w)
            if c < 0:
                kernel.append({-1 - k: a for k, a in w.items()})
                break
            row = rows.get(c)
            if row is None:
                inv = pow(w[c], -1, p)
                rows[c] = {k: a * inv % p for k, a in w.items()}
                break
            axpy(w, -w[c], row, p)
    return kernel


def preimage_space(W: EchelonSpan, maps: Sequence[Callable[[Mapping[int, int]], Vector]],
                   target: EchelonSpan) -> EchelonSpan:
    """{v in W : f(v) in target for every f in maps}."""
    if not maps:
        return W
    basis = W.basis()
    stride = target.ambient
    stacked = []
    for w in basis:
        acc: Vector = {}
        for j, f in enumerate(maps):
            for k, a in target.reduce(f(w)).items():
                acc[j * stride + k] = a
        stacked.append(acc)
    p = W.p
    kernel = kernel_combinations(stacked, p)
    vecs = [add_vectors(((a, basis[i]) for i, a in c.items()), p) for c in kernel]
    return EchelonSpan.from_vectors(vecs, W.ambient, p)
