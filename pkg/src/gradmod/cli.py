"""Command line: ``gradmod analyze | verify | search``."""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import click

from .errors import GradmodError, IdentityViolation
from .invariants import format_zpoly

EXIT_USAGE = 2


def bundled_corpus() -> list[Path]:
    root = resources.files("gradmod") / "corpus"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".txt"))


def corpus_files(directory: str | None) -> list[Path]:
    if directory is None:
        return bundled_corpus()
    return sorted(Path(directory).glob("*.txt"))


def render_report(report, log=None) -> str:
    d = report.to_dict()
    lines = [
        f"mu(M)            {d['mu']}",
        f"i(M)             {d['i']}",
        f"order of det     {d['det_order']}",
        f"dim M            {d['dim']}",
        f"e(M)             {d['e']}",
        f"e_0..e_d         {', '.join(map(str, d['e_list']))}",
        f"h_M(z)           {d['h']}",
        f"red(M)           {d['red']}",
        f"splitting type   ({', '.join(map(str, d['a']))})",
        f"b(z)             {d['b']}",
        f"r_M(z)           {d['r']}",
        f"h~_M(z)          {d['h_tilde']}",
        f"depth G(M)       {d['depth']}",
        f"Cohen-Macaulay   {'yes' if d['cm'] else 'no'}",
        f"h along tower    {' | '.join(d['h_tower'])}",
    ]
    if d["series_constraint"]:
        mu, a, b = d["series_constraint"]
        lines.append(f"G(M)/J series    {format_zpoly([mu, a, b])}")
    if d["annihilator_order"] is not None:
        lines.append(f"e(A)             {d['annihilator_order']}")
    v = d["verdict"]
    if v is not None:
        status = {True: "matches", False: "CONTRADICTS", None: "n/a"}[v["matches"]]
        lines.append(f"verdict          {v['stratum']}: {status}")
        for c in v["checks"]:
            lines.append(f"  {c['stratum']}: {'; '.join(c['expected'])} [{'ok' if c['ok'] else 'FAIL'}]")
    lines.append("checks           " + ", ".join(f"{k}={v}" for k, v in d["checks"].items()))
    if log is not None:
        lines.append(f"seed             {log.seed}")
        lines.append(f"forms            {', '.join(log.forms) or '-'}")
        lines.append(f"windows D        {', '.join(map(str, log.windows))}")
    return "\n".join(lines)


def _fail(exc: GradmodError) -> None:
    click.echo(f"error: {exc}", err=True)
    if isinstance(exc, IdentityViolation) and exc.details:
        click.echo(json.dumps(exc.details, indent=2, default=str), err=True)
    sys.exit(exc.exit_code)


@click.group()
def main() -> None:
    """Invariants of associated graded modules of MCM modules over hypersurfaces."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", default=0, show_default=True, help="Seed for the superficial sequence.")
@click.option("--trunc-degree", "trunc_degree", type=click.IntRange(min=1), default=None,
              help="Initial truncation degree D.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def analyze(file: str, seed: int, trunc_degree: int | None, as_json: bool) -> None:
    """Analyze the presentation in FILE."""
    from .analysis import analyze as run
    from .inputfile import read_input

    try:
        inp = read_input(file)
        report, log = run(inp.presentation, seed, trunc_degree, inp.annihilator)
    except GradmodError as exc:
        _fail(exc)
        return
    if as_json:
        click.echo(json.dumps({"report": report.to_dict(), "log": log.to_dict()}, indent=2))
    else:
        if inp.name:
            click.echo(inp.name)
        click.echo(render_report(report, log))


@main.command()
@click.option("--corpus", "corpus_dir", type=click.Path(file_okay=False), default=None,
              help="Directory of corpus files (default: the bundled corpus).")
@click.option("--json", "as_json", is_flag=True)
def verify(corpus_dir: str | None, as_json: bool) -> None:
    """Compare computed (depth, h) with the expected values of each corpus file."""
    from .verdicts import verify_corpus

    files = corpus_files(corpus_dir)
    if not files:
        click.echo("error: no corpus files found", err=True)
        sys.exit(EXIT_USAGE)
    try:
        rows = verify_corpus(files)
    except GradmodError as exc:
        _fail(exc)
        return
    passed = sum(r.passed for r in rows)
    if as_json:
        click.echo(json.dumps({"rows": [r.to_dict() for r in rows], "passed": passed, "total": len(rows)}, indent=2))
    else:
        width = max(len(r.name) for r in rows)
        for r in rows:
            mark = "PASS" if r.passed else "FAIL"
            note = f"  ({r.note})" if r.note else ""
            click.echo(f"{mark}  {r.name:<{width}}  expected {r.expected or '-'}; got {r.computed}{note}")
        click.echo(f"{passed}/{len(rows)} passed")
    if passed != len(rows):
        sys.exit(1)


@main.command()
@click.option("--mu", type=click.IntRange(min=1), required=True, help="Matrix size.")
@click.option("--nvars", type=click.IntRange(min=1), required=True, help="Number of variables.")
@click.option("--samples", type=click.IntRange(min=0), required=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--filter-red", "filter_red", type=int, default=None, help="Keep only red(M) <= K.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--max-entry-degree", "max_entry_degree", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def search(mu: int, nvars: int, samples: int, seed: int, filter_red: int | None, jobs: int,
           max_entry_degree: int, as_json: bool) -> None:
    """Sample random presentations and bin them by (mu, i, e, a, depth, h)."""
    from .search import SearchParams, search as run

    params = SearchParams(mu=mu, nvars=nvars, samples=samples, seed=seed,
                          max_entry_degree=max_entry_degree, filter_red=filter_red)
    result = run(params, jobs)
    if as_json:
        click.echo(json.dumps(result.to_dict(), indent=2))
    else:
        click.echo("  count  mu  i   e  a             depth  h                  verdict")
        for b in result.bins:
            status = {True: "ok", False: "CONTRADICTION", None: "unclassified"}[b.matches]
            a = "(" + ",".join(map(str, b.a)) + ")"
            click.echo(f"  {b.count:5d}  {b.mu:2d}  {b.iM:<2d} {b.e:2d}  {a:<13} {b.depth:5d}  {b.h:<18} {status}")
        summary = ", ".join(f"{k}={v}" for k, v in sorted(result.counts.items()))
        click.echo(f"samples: {samples}; {summary or 'none'}; contradictions: {len(result.contradictions)}")
        for v in result.violations:
            click.echo(f"identity violation on {v.matrix}: {v.message}", err=True)
    if result.violations:
        sys.exit(4)
    if result.contradictions:
        sys.exit(1)


if __name__ == "__main__":
    main()
