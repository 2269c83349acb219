"""
CLI for betashift.

Usage:
    $ betashift expand --poly "x^2-x-1" --interval 3/2,7/4
    $ betashift cover "11(10)" --format dot
    $ betashift compare "(110)" "(20)" --json
    $ betashift compare --batch pairs.txt

Exit codes: 0 success, 1 domain error, 2 usage error (including sequences
and polynomials that do not parse).
"""

import json
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from .config import OUTPUT_FORMATS, get_config
from .errors import BetaShiftError, ParseError
from .seq import GRAMMAR, GeneratingSequence

app = typer.Typer(
    name="betashift",
    help="Covers, invariants and flow equivalence of sofic beta-shifts",
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(
        None, "--log-level", "-l", help="Log level (default from BETASHIFT_LOG_LEVEL)"
    ),
):
    """Exact computations on beta-shifts given by generating sequences."""
    from .log import configure_logging

    with _domain_errors():
        configure_logging(log_level or get_config().log_level)


@contextmanager
def _domain_errors() -> Iterator[None]:
    from .arith import POLYNOMIAL_GRAMMAR

    try:
        yield
    except ParseError as exc:
        err_console.print(f"[red]Usage error:[/red] {escape(str(exc))}")
        err_console.print(f"[dim]sequence: {escape(GRAMMAR)}[/dim]")
        err_console.print(f"[dim]polynomial: {escape(POLYNOMIAL_GRAMMAR)}[/dim]")
        raise typer.Exit(2)
    except BetaShiftError as exc:
        err_console.print(f"[red]Error:[/red] {escape(str(exc))}")
        raise typer.Exit(1)


def _sequence(text: str) -> GeneratingSequence:
    """Parse and validate a sequence argument; ``@name`` reads the catalog."""
    from .catalog import get_sequence, list_sequences
    from .seq import parse_generating

    if text.startswith("@"):
        g = get_sequence(text[1:])
        if g is None:
            raise ParseError(
                f"unknown catalog entry {text!r}; known: {', '.join(list_sequences())}"
            )
        return g
    return parse_generating(text)


def _format(fmt: Optional[str], json_output: bool) -> str:
    if json_output:
        return "json"
    chosen = fmt or get_config().output_format
    if chosen not in OUTPUT_FORMATS:
        err_console.print(
            f"[red]Usage error:[/red] unknown format {escape(chosen)!s}; "
            f"choose from {', '.join(OUTPUT_FORMATS)}"
        )
        raise typer.Exit(2)
    return chosen


def _emit(
    fmt: str,
    data: Dict[str, Any],
    text: Callable[[], None],
    dot: Optional[Callable[[], str]] = None,
) -> None:
    if fmt == "json":
        typer.echo(json.dumps(data, indent=2))
    elif fmt == "dot":
        if dot is None:
            err_console.print("[red]Usage error:[/red] dot output is available for cover, fiber and reduce")
            raise typer.Exit(2)
        typer.echo(dot(), nl=False)
    else:
        text()


FORMAT_OPTION = typer.Option(None, "--format", "-f", help="Output format: text, json or dot")
JSON_OPTION = typer.Option(False, "--json", help="Output as JSON (same as --format json)")


@app.command("expand")
def expand_cmd(
    poly: str = typer.Option(..., "--poly", "-p", help="Minimal polynomial of beta, e.g. x^2-x-1"),
    interval: str = typer.Option(..., "--interval", "-i", help="Isolating interval lo,hi"),
    max_digits: Optional[int] = typer.Option(None, "--max-digits", "-n", help="Digit bound"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """
    Beta-expansion of 1.

    Example:
        betashift expand --poly "x^2-x-1" --interval 3/2,7/4
    """
    from .arith import AlgebraicNumber, beta_expansion_of_one, parse_interval, parse_polynomial

    fmt = _format(fmt, json_output)
    with _domain_errors():
        beta = AlgebraicNumber(parse_polynomial(poly), parse_interval(interval))
        result = beta_expansion_of_one(beta, max_digits)

    def text() -> None:
        console.print(Panel(
            f"[bold]Digits:[/bold] {' '.join(map(str, result.digits[:80]))}"
            f"{' ...' if len(result.digits) > 80 else ''}\n"
            f"[bold]Status:[/bold] {escape(repr(result))}",
            title="[bold cyan]Expansion of 1[/bold cyan]",
            border_style="cyan",
        ))

    _emit(fmt, result.to_dict(), text)


@app.command("genseq")
def genseq_cmd(
    poly: str = typer.Option(..., "--poly", "-p", help="Minimal polynomial of beta"),
    interval: str = typer.Option(..., "--interval", "-i", help="Isolating interval lo,hi"),
    max_digits: Optional[int] = typer.Option(None, "--max-digits", "-n", help="Digit bound"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Generating sequence g(beta) of an algebraic beta."""
    from .arith import (
        AlgebraicNumber,
        beta_expansion_of_one,
        generating_sequence_from_expansion,
        parse_interval,
        parse_polynomial,
    )
    from .seq import classify

    fmt = _format(fmt, json_output)
    with _domain_errors():
        beta = AlgebraicNumber(parse_polynomial(poly), parse_interval(interval))
        expansion = beta_expansion_of_one(beta, max_digits)
        g = generating_sequence_from_expansion(expansion)

    data = {**g.to_dict(), "class": classify(g).value, "expansion": expansion.to_dict()}
    _emit(fmt, data, lambda: console.print(f"{escape(str(g))}  [dim]{classify(g).value}[/dim]"))


@app.command("beta")
def beta_cmd(
    seq: str = typer.Argument(..., help="Generating sequence, e.g. '11(10)' or @name"),
    precision: Optional[str] = typer.Option(None, "--precision", help="Interval width as a rational, e.g. 1/1000000"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Rational interval around beta for a generating sequence."""
    from .arith import beta_from_generating, entropy, generating_polynomial
    from .config import parse_rational

    fmt = _format(fmt, json_output)
    with _domain_errors():
        g = _sequence(seq)
        width = parse_rational(precision) if precision else None
        interval = beta_from_generating(g, width)
        log_beta = entropy(g, width)
        poly = generating_polynomial(g)

    data = {
        "sequence": str(g),
        "interval": interval.to_dict(),
        "polynomial": poly,
        "entropy": log_beta.to_dict(),
    }

    bounds = escape(f"[{interval.lo}, {interval.hi}]")

    def text() -> None:
        console.print(Panel(
            f"[bold]Sequence:[/bold] {escape(str(g))}\n"
            f"[bold]Beta in:[/bold] {bounds}\n"
            f"[bold]Approx:[/bold] {float(interval.midpoint):.12f}\n"
            f"[bold]Polynomial:[/bold] {escape(str(poly))}\n"
            f"[bold]Entropy:[/bold] {float(log_beta.midpoint):.12f}",
            title="[bold cyan]Beta[/bold cyan]",
            border_style="cyan",
        ))

    _emit(fmt, data, text)


@app.command("validate")
def validate_cmd(
    seq: str = typer.Argument(..., help="Sequence to check, e.g. '1101101(0101100)'"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Check the generating-sequence criterion and normalize."""
    from .seq import classify, parse_sequence, validate_expansion, validate_generating

    fmt = _format(fmt, json_output)
    with _domain_errors():
        s = parse_sequence(seq) if not seq.startswith("@") else _sequence(seq)
        g = validate_generating(s)

    data = {
        **g.to_dict(),
        "n": g.n,
        "p": g.p,
        "class": classify(g).value,
        "is_expansion": validate_expansion(g),
    }

    def text() -> None:
        console.print(f"[green]valid[/green] {escape(str(g))}  n={g.n} p={g.p}  {classify(g).value}")

    _emit(fmt, data, text)


def _adjacency_table(title: str, names, cells) -> Table:
    table = Table(title=title)
    table.add_column("")
    for name in names:
        table.add_column(name, justify="center")
    for name, row in zip(names, cells):
        table.add_row(name, *(",".join(map(str, cell)) or "·" for cell in row))
    return table


@app.command("cover")
def cover_cmd(
    seq: str = typer.Argument(..., help="Generating sequence or @name"),
    multiplicity: Optional[int] = typer.Option(
        None, "--multiplicity", "-m", help="Also count presentations of periodic words up to this period"
    ),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Right Fischer cover."""
    from .covers import covering_multiplicity, fischer_cover

    fmt = _format(fmt, json_output)
    with _domain_errors():
        g = _sequence(seq)
        cover = fischer_cover(g)
        report = covering_multiplicity(g, multiplicity) if multiplicity else None

    data = cover.to_dict()
    if report is not None:
        data["multiplicity"] = report.to_dict()

    def text() -> None:
        graph = cover.graph
        console.print(_adjacency_table(
            f"Fischer cover of {g}: {graph.vertex_count} vertices, {len(graph.edges)} edges",
            graph.names,
            graph.symbolic_adjacency(),
        ))
        if report is not None:
            witnesses = ", ".join(str(w) for w, _ in report.witnesses)
            console.print(f"[bold]Max presentations:[/bold] {report.max_preimages} ({escape(witnesses)})")

    _emit(fmt, data, text, cover.to_dot)


@app.command("fiber")
def fiber_cmd(
    seq: str = typer.Argument(..., help="Generating sequence or @name"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Fiber product cover with its involution."""
    from .covers import fiber_product_cover

    fmt = _format(fmt, json_output)
    with _domain_errors():
        cover = fiber_product_cover(_sequence(seq))

    def text() -> None:
        graph = cover.graph
        names = graph.names
        console.print(_adjacency_table(
            f"Fiber product cover: {graph.vertex_count} vertices, {len(graph.edges)} edges",
            names,
            graph.symbolic_adjacency(),
        ))
        swaps = ", ".join(
            f"{names[v]}<->{names[w]}" for v, w in enumerate(cover.involution) if v < w
        )
        console.print(f"[bold]Involution:[/bold] {escape(swaps) or 'identity'}")

    _emit(fmt, cover.to_dict(), text, cover.to_dot)


@app.command("invariants")
def invariants_cmd(
    seq: str = typer.Argument(..., help="Generating sequence or @name"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Period sums, Bowen-Franks groups and the closed-form check."""
    from .invariants import verify_closed_forms

    fmt = _format(fmt, json_output)
    with _domain_errors():
        report = verify_closed_forms(_sequence(seq))

    def text() -> None:
        lines = [
            f"[bold]S:[/bold] {report.S}",
            f"[bold]N:[/bold] {report.N}",
            f"[bold]BF(A_F):[/bold] {report.bf_fischer}",
        ]
        if report.bf_fiber is not None:
            lines.append(f"[bold]BF(A_P):[/bold] {report.bf_fiber}")
        status = "[green]closed forms match[/green]" if report.matches else "[red]MISMATCH[/red]"
        lines.append(status)
        lines.extend(f"  {escape(m)}" for m in report.mismatches)
        console.print(Panel("\n".join(lines), title="[bold cyan]Invariants[/bold cyan]",
                            border_style="cyan" if report.matches else "red"))

    _emit(fmt, report.to_dict(), text)
    raise typer.Exit(0 if report.matches else 1)


@app.command("reduce")
def reduce_cmd(
    seq: str = typer.Argument(..., help="Strictly sofic generating sequence or @name"),
    emit_steps: Optional[bool] = typer.Option(
        None, "--emit-steps/--no-emit-steps", help="Stream every reduction step"
    ),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Reduce the fiber product cover to its normal form."""
    from .moves import binarize
    from .reduce import reduce_fiber_cover

    fmt = _format(fmt, json_output)
    if emit_steps is None:
        emit_steps = get_config().emit_steps
    with _domain_errors():
        g = _sequence(seq)
        if not g.is_binary:
            g = binarize(g).after
        graph, log = reduce_fiber_cover(g)

    if emit_steps:
        for i, step in enumerate(log.steps, 1):
            if fmt == "dot":
                typer.echo(step.graph.to_dot(f"step{i}"), nl=False)
            elif fmt == "json":
                typer.echo(json.dumps(step.to_dict()))
            else:
                console.print(
                    f"[dim]{i:3d}[/dim] {step.op} {escape(', '.join(step.args))}: "
                    f"{step.graph.vertex_count} vertices, {len(step.graph.edges)} edges, "
                    f"BF {step.bf_after}"
                )

    data = {"graph": graph.to_dict(), "log": log.to_dict()}

    def text() -> None:
        final = log.steps[-1].bf_after if log.steps else None
        console.print(Panel(
            f"[bold]Canonical form:[/bold] {escape(str(log.sequence))}\n"
            f"[bold]Steps:[/bold] {len(log.steps)}\n"
            f"[bold]Normal form:[/bold] {graph.vertex_count} vertices, {len(graph.edges)} edges, "
            f"{len(graph.strongly_connected_components())} components\n"
            f"[bold]BF:[/bold] {final if final is not None else '-'}",
            title="[bold cyan]Fiber reduction[/bold cyan]",
            border_style="cyan",
        ))

    _emit(fmt, data, text, lambda: graph.to_dot("reduced"))


@app.command("canonical")
def canonical_cmd(
    seq: str = typer.Argument(..., help="Generating sequence or @name"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Canonical form and the moves reaching it."""
    from .decide import reduce_to_canonical

    fmt = _format(fmt, json_output)
    with _domain_errors():
        g = _sequence(seq)
        canonical, trace = reduce_to_canonical(g)

    data = {"input": str(g), "canonical": str(canonical), "trace": trace.to_dict()}

    def text() -> None:
        console.print(f"[bold]{escape(str(canonical))}[/bold]")
        for move in trace:
            console.print(f"  [dim]{escape(str(move))}[/dim]")

    _emit(fmt, data, text)


def _verdict_line(first: str, second: str, verdict) -> str:
    detail = ""
    if verdict.witness is not None:
        values = " vs ".join(map(str, verdict.witness["values"]))
        detail = f" {verdict.witness['invariant']}: {values}"
    elif verdict.reduced_pair is not None:
        detail = f" reduced to {verdict.reduced_pair[0]} and {verdict.reduced_pair[1]}"
    return f"{first} {second} {verdict.outcome.value}{detail}"


def _compare_batch(path: Path, fmt: str) -> None:
    from .decide import compare
    from .parallel import ParallelRunner

    pairs: List[List[str]] = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            pairs.append(line.split())

    def work(pair: List[str]):
        if len(pair) != 2:
            raise ParseError(f"expected two sequences per line, got {' '.join(pair)!r}")
        return compare(_sequence(pair[0]), _sequence(pair[1]))

    results = ParallelRunner(get_config().workers).map(work, pairs)
    failed = False
    records = []
    for pair, result in zip(pairs, results):
        if isinstance(result, Exception):
            failed = True
            records.append({"pair": pair, "error": str(result)})
            if fmt != "json":
                err_console.print(f"{escape(' '.join(pair))} [red]error:[/red] {escape(str(result))}")
        else:
            records.append({"pair": pair, **result.to_dict()})
            if fmt != "json":
                console.print(escape(_verdict_line(pair[0], pair[1], result)))
    if fmt == "json":
        typer.echo(json.dumps(records, indent=2))
    raise typer.Exit(1 if failed else 0)


@app.command("compare")
def compare_cmd(
    seq1: Optional[str] = typer.Argument(None, help="First generating sequence"),
    seq2: Optional[str] = typer.Argument(None, help="Second generating sequence"),
    batch: Optional[Path] = typer.Option(
        None, "--batch", "-b", exists=True, dir_okay=False, help="File with two sequences per line"
    ),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """
    Decide flow equivalence: Equivalent, Distinct or Unknown.

    Example:
        betashift compare "(110)" "(20)"
    """
    from .decide import compare

    fmt = _format(fmt, json_output)
    if batch is not None:
        _compare_batch(batch, fmt)
    if seq1 is None or seq2 is None:
        err_console.print("[red]Usage error:[/red] compare needs SEQ1 SEQ2 or --batch FILE")
        raise typer.Exit(2)

    with _domain_errors():
        verdict = compare(_sequence(seq1), _sequence(seq2))

    def text() -> None:
        console.print(escape(_verdict_line(seq1, seq2, verdict)))
        if verdict.background_theory:
            console.print("[dim]finite type is a flow invariant (standard theory)[/dim]")
        for trace in verdict.traces or ():
            for move in trace:
                console.print(f"  [dim]{escape(str(move))}[/dim]")

    _emit(fmt, verdict.to_dict(), text)


@app.command("equivariant")
def equivariant_cmd(
    seq1: str = typer.Argument(..., help="First strictly sofic sequence"),
    seq2: str = typer.Argument(..., help="Second strictly sofic sequence"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Equivariant flow equivalence of the fiber product covers."""
    from .reduce import equivariant_fiber_compare

    fmt = _format(fmt, json_output)
    with _domain_errors():
        result = equivariant_fiber_compare(_sequence(seq1), _sequence(seq2))

    def text() -> None:
        answer = "[green]true[/green]" if result else "[red]false[/red]"
        console.print(f"{answer}  S1={result.S1} S2={result.S2}")

    _emit(fmt, result.to_dict(), text)


@app.command("oracle-check")
def oracle_check_cmd(
    seq: str = typer.Argument(..., help="Generating sequence or @name"),
    length: int = typer.Option(6, "--len", "-L", min=1, help="Check words up to this length"),
    fmt: Optional[str] = FORMAT_OPTION,
    json_output: bool = JSON_OPTION,
):
    """Compare the Fischer cover language with the suffix criterion."""
    from .covers import language_oracle_diff

    fmt = _format(fmt, json_output)
    with _domain_errors():
        g = _sequence(seq)
        diffs = [language_oracle_diff(g, L) for L in range(1, length + 1)]

    failures = [d for d in diffs if not d.is_empty]
    data = {"sequence": str(g), "max_length": length, "diff": [d.to_dict() for d in failures]}

    def text() -> None:
        if not failures:
            console.print(f"[green]languages agree[/green] for {escape(str(g))} up to length {length}")
        for d in failures:
            console.print(
                f"[red]length {d.length}[/red] cover only: {', '.join(d.only_in_cover) or '-'}; "
                f"criterion only: {', '.join(d.only_in_criterion) or '-'}"
            )

    _emit(fmt, data, text)
    raise typer.Exit(1 if failures else 0)


@app.command("catalog")
def catalog_cmd(
    json_output: bool = JSON_OPTION,
):
    """List the named sequences usable as @name."""
    from .catalog import get_sequence, list_sequences

    entries = {name: str(get_sequence(name)) for name in list_sequences()}
    if json_output:
        typer.echo(json.dumps(entries, indent=2))
        return
    table = Table(title="Catalog")
    table.add_column("name")
    table.add_column("sequence")
    for name, text in entries.items():
        table.add_row(name, escape(text))
    console.print(table)


@app.command("version")
def version():
    """Show version."""
    from . import __version__
    console.print(f"betashift version {__version__}")


if __name__ == "__main__":
    app()
