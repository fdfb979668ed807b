"""Randomized search: sample presentations, analyze them, bin the outcomes."""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import CertificationError, IdentityViolation, InconclusiveError, PresentationError
from .poly import DEFAULT_PRIME, MultiPolynomial, default_names, monomials_up_to
from .truncated import Presentation


@dataclass(frozen=True)
class SearchParams:
    mu: int
    nvars: int
    samples: int
    seed: int = 0
    max_entry_degree: int = 3
    filter_red: int | None = None
    p: int = DEFAULT_PRIME
    zero_rate: float = 0.4
    max_terms: int = 2


@dataclass
class SampleResult:
    index: int
    status: str  # "ok", "filtered", "inconclusive", "degenerate", "violation"
    key: tuple | None = None
    matches: bool | None = None
    stratum: str = ""
    matrix: str = ""
    message: str = ""


@dataclass
class Bin:
    mu: int
    iM: int
    e: int
    a: tuple[int, ...]
    depth: int
    h: str
    count: int = 0
    stratum: str = ""
    matches: bool | None = None
    example: str = ""

    def to_dict(self) -> dict:
        return {"mu": self.mu, "i": self.iM, "e": self.e, "a": list(self.a), "depth": self.depth,
                "h": self.h, "count": self.count, "stratum": self.stratum, "matches": self.matches,
                "example": self.example}


@dataclass
class SearchResult:
    params: SearchParams
    bins: list[Bin] = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)
    violations: list[SampleResult] = field(default_factory=list)

    @property
    def contradictions(self) -> list[Bin]:
        return [b for b in self.bins if b.matches is False]

    def to_dict(self) -> dict:
        return {
            "params": dict(self.params.__dict__),
            "counts": dict(self.counts),
            "bins": [b.to_dict() for b in self.bins],
            "contradictions": len(self.contradictions),
            "violations": [v.__dict__ for v in self.violations],
        }


def random_entry(rng: random.Random, nvars: int, maxdeg: int, p: int, max_terms: int) -> MultiPolynomial:
    """A sparse polynomial with no constant term and degree <= maxdeg."""
    monos = [m for m in monomials_up_to(nvars, maxdeg) if sum(m)]
    # favour few variables so that the splitting types vary
    k = rng.randint(1, max_terms)
    terms = {}
    for m in rng.sample(monos, min(k, len(monos))):
        terms[m] = rng.randrange(1, p)
    return MultiPolynomial(terms, nvars, p)


def random_presentation(rng: random.Random, params: SearchParams) -> Presentation | None:
    """Random square matrix; None when the determinant vanishes."""
    r, n, p = params.mu, params.nvars, params.p
    rows = []
    for _ in range(r):
        row = []
        for _ in range(r):
            if rng.random() < params.zero_rate:
                row.append(MultiPolynomial.zero(n, p))
            else:
                row.append(random_entry(rng, n, params.max_entry_degree, p, params.max_terms))
        rows.append(row)
    try:
        return Presentation(rows, default_names(n))
    except PresentationError:
        return None


def sample_seed(seed: int, index: int) -> int:
    return random.Random(f"{seed}:{index}").getrandbits(63)


def run_sample(params: SearchParams, index: int) -> SampleResult:
    from .analysis import analyze

    s = sample_seed(params.seed, index)
    rng = random.Random(s)
    P = random_presentation(rng, params)
    if P is None:
        return SampleResult(index, "degenerate")
    text = P.to_text()
    try:
        report, _ = analyze(P, seed=s)
    except (InconclusiveError, CertificationError) as exc:
        return SampleResult(index, "inconclusive", matrix=text, message=str(exc))
    except IdentityViolation as exc:
        return SampleResult(index, "violation", matrix=text, message=str(exc))
    if params.filter_red is not None and report.red > params.filter_red:
        return SampleResult(index, "filtered", matrix=text)
    key = (report.mu, report.iM, report.e, tuple(report.a.a), report.depth, str(report.h))
    v = report.verdict
    return SampleResult(index, "ok", key, v.matches, v.stratum, text)


def _run_chunk(args) -> list[SampleResult]:
    params, indices = args
    return [run_sample(params, i) for i in indices]


def search(params: SearchParams, jobs: int = 1) -> SearchResult:
    """Analyze ``params.samples`` random presentations; deterministic in the seed."""
    indices = list(range(params.samples))
    if jobs > 1 and len(indices) > 1:
        chunks = [indices[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, [(params, c) for c in chunks if c]))
        results = sorted((r for part in parts for r in part), key=lambda r: r.index)
    else:
        results = _run_chunk((params, indices))
    out = SearchResult(params)
    bins: dict[tuple, Bin] = {}
    for res in results:
        out.counts[res.status] += 1
        if res.status == "violation":
            out.violations.append(res)
        if res.status != "ok":
            continue
        b = bins.get(res.key)
        if b is None:
            mu, iM, e, a, depth, h = res.key
            b = bins[res.key] = Bin(mu, iM, e, a, depth, h, stratum=res.stratum,
                                    matches=res.matches, example=res.matrix)
        b.count += 1
        if res.matches is False:
            b.matches = False
    out.bins = sorted(bins.values(), key=lambda b: (b.mu, b.iM, b.e, b.a, -b.depth, b.h))
    return out
