"""Command-line driver: ``charsum <command> ...``.

Exit codes: 0 success, 2 usage error, 3 capacity error, 4 verification failure.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import circuits, groups, search
from .characters import (
    CharacterSum,
    FunctionTable,
    and_product_construction,
    and_table,
    sum_table,
)
from .forms import FormatError, parse_form, witt_decompose, witt_normal_form

EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_VERIFY = 4


class Failure(click.ClickException):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.exit_code = code

    def show(self, file=None):
        click.echo(f"error: {self.format_message()}", err=True)


def _form(text: str, n: int):
    try:
        return parse_form(text, n)
    except (FormatError, ValueError) as exc:
        raise Failure(str(exc), EXIT_USAGE) from exc


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _chart(hist: search.Histogram, path: str, title: str) -> None:
    import matplotlib

    matplotlib.use("svg")
    import matplotlib.pyplot as plt

    xs = sorted(hist.bins)
    norm = hist.normalized()
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar(xs, [norm[s] for s in xs], width=0.8)
    ax.set_xlabel("support")
    ax.set_ylabel("functions per 100,000")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


n_option = click.option("--n", "n", type=click.IntRange(1, 16), required=True, help="Number of variables.")


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Quadratic forms over Z2, characters over Z3 and 2-weight experiments."""


@main.command()
@click.argument("form")
@n_option
def decompose(form: str, n: int):
    """Witt decomposition of FORM."""
    click.echo(str(witt_decompose(_form(form, n))))


@main.command()
@click.argument("form")
@n_option
def rank(form: str, n: int):
    """Witt rank of FORM."""
    click.echo(str(witt_decompose(_form(form, n)).rank))


@main.command("normal-form")
@click.argument("form")
@n_option
def normal_form(form: str, n: int):
    """Witt normal form of FORM."""
    click.echo(str(witt_normal_form(_form(form, n))))


@main.command("bfs-and")
@click.option("--n", "n", type=int, default=4, show_default=True)
@click.option("--generators", type=click.Choice(["quadratic", "linear"]), default="quadratic",
              show_default=True)
@click.option("--target", default=None, help="Target table string (default AND_n).")
def bfs_and(n: int, generators: str, target: str | None):
    """Exact minimum number of characters summing to AND_n (n <= 4)."""
    try:
        t = FunctionTable.parse(target) if target else and_table(n)
        witness = search.bfs_min_weight(t, generators)
    except search.CapacityError as exc:
        raise Failure(str(exc), EXIT_CAPACITY) from exc
    except FormatError as exc:
        raise Failure(str(exc), EXIT_USAGE) from exc
    click.echo(f"n={t.n}\ngenerators={generators}")
    click.echo(f"weight={witness.weight}")
    click.echo(f"target={witness.target}")
    click.echo(f"sum={witness.sum}")
    click.echo("verified=true")


@main.command()
@click.option("--n", "n", type=click.IntRange(1, 16), default=6, show_default=True)
@click.option("--w", "w", type=click.IntRange(1), required=True)
@click.option("--samples", type=click.IntRange(1), default=100_000, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(1), default=1, show_default=True)
@click.option("--output", "-o", default=None)
@click.option("--chart", default=None, help="Also write an SVG bar chart here.")
def sample(n, w, samples, seed, workers, output, chart):
    """Support histogram of random 2-weight W functions."""
    hist = search.sample_histogram(n, w, samples, seed, workers=workers)
    _emit(hist.to_csv(), output)
    if chart:
        _chart(hist, chart, f"supports of {samples} random sums, n={n}, w={w}")


@main.command("enumerate-w3")
@click.option("--output", "-o", default=None)
@click.option("--chart", default=None, help="Also write an SVG bar chart here.")
def enumerate_w3(output, chart):
    """Exact weighted support distribution of 2-weight 3 functions at n = 6."""
    hist = search.enumerate_weight3(6)
    _emit(hist.to_csv(), output)
    if chart:
        _chart(hist, chart, "all 2-weight 3 functions, n=6 (normalized)")


@main.command()
@click.option("--n", "n", type=click.IntRange(1, 6), default=6, show_default=True)
@click.option("--w", "w", type=click.IntRange(1), default=3, show_default=True)
@click.option("--samples", type=click.IntRange(1), default=10_000_000, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(1), default=1, show_default=True)
@click.option("--output", "-o", default=None)
def grid(n, w, samples, seed, workers, output):
    """(ones, twos) occupancy grid of random 2-weight W functions."""
    g = search.occupancy_grid(n, w, samples, seed, workers=workers)
    header = f"# n={n} w={w} samples={samples} seed={seed}\n"
    _emit(header + str(g) + "\n", output)


@main.command("verify-and")
@click.option("--n", "n", type=click.IntRange(2, 16), required=True)
def verify_and(n: int):
    """Build the product construction for AND_n and check it pointwise."""
    if n % 2:
        raise Failure("n must be even", EXIT_USAGE)
    s = and_product_construction(n)
    ok = s.weight == 2 ** (n // 2) and sum_table(s) == and_table(n)
    click.echo(f"n={n}\nterms={s.weight}\nsum={s}\nverified={'true' if ok else 'false'}")
    if not ok:
        raise Failure("construction does not sum to AND", EXIT_VERIFY)


@main.command()
@click.option("--to", "to", type=click.Choice(["circuit", "characters"]), required=True)
@click.argument("source")
@click.option("--n", "n", type=click.IntRange(1, 16), default=None,
              help="Variable count (required for --to circuit).")
@click.option("--depth", type=click.Choice(["auto", "2", "3"]), default="auto", show_default=True)
def convert(to, source, n, depth):
    """Translate between character sums and MOD3/MOD2(/AND2) netlists.

    For --to circuit SOURCE is a sum string ("x1+1 ; x2"); for --to
    characters it is a netlist file ('-' reads stdin).
    """
    try:
        if to == "circuit":
            if n is None:
                raise Failure("--n is required with --to circuit", EXIT_USAGE)
            s = CharacterSum.parse(source, n)
            linear = all(q.quad == 0 for q in s.terms)
            if depth == "2" or (depth == "auto" and linear):
                c = circuits.characters_to_depth2(s)
            else:
                c = circuits.characters_to_depth3(s)
            click.echo(circuits.format_netlist(c), nl=False)
        else:
            text = sys.stdin.read() if source == "-" else Path(source).read_text()
            c = circuits.parse_netlist(text)
            if depth == "2":
                s = circuits.depth2_to_characters(c)
            else:
                s = circuits.depth3_to_characters(c)
            click.echo(str(s))
    except (FormatError, circuits.ShapeError, circuits.StructureError, ValueError) as exc:
        raise Failure(str(exc), EXIT_USAGE) from exc


@main.command("scan-pairs")
@click.argument("pool_file", type=click.Path(exists=True, dir_okay=False))
def scan_pairs(pool_file):
    """Index pairs (i,j) of POOL_FILE tables that sum to AND."""
    try:
        pool = [FunctionTable.parse(line) for line in Path(pool_file).read_text().split()
                if line.strip()]
    except FormatError as exc:
        raise Failure(str(exc), EXIT_USAGE) from exc
    pairs = search.scan_complementary_pairs(pool)
    click.echo(f"# pool={len(pool)} pairs={len(pairs)}")
    for i, j in pairs:
        click.echo(f"{i},{j}")
    if pairs:
        click.echo(f"NOTICE: found {len(pairs)} pair(s) summing to AND", err=True)


@main.group()
def g72():
    """The group G72 and programs over it."""


@g72.command("verify")
def g72_verify():
    """Check the twelve defining relations and the group order."""
    rels = groups.check_relations()
    for rel, ok in rels.items():
        click.echo(f"{rel}: {'ok' if ok else 'FAIL'}")
    order = len(groups.closure(groups.g72_generators().values()))
    s3 = len(groups.closure(groups.s3_generators().values()))
    click.echo(f"order={order}\ns3_order={s3}")
    if not all(rels.values()) or order != 72 or s3 != 6:
        raise Failure("group check failed", EXIT_VERIFY)


@g72.command("eval")
@click.argument("program_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("bits")
def g72_eval(program_file, bits):
    """Run a program file on the input BITS (e.g. 0110)."""
    try:
        text = Path(program_file).read_text()
        group = "G72"
        for line in text.splitlines():
            if line.strip().startswith("group="):
                group = line.split("=", 1)[1].strip()
        prog = groups.parse_program(text)
        element, accepted = groups.eval_program(prog, bits)
    except (FormatError, ValueError, IndexError) as exc:
        raise Failure(str(exc), EXIT_USAGE) from exc
    click.echo(f"element={groups.format_element(element, group)}")
    click.echo(f"cycles={element}")
    click.echo(f"accepted={'true' if accepted else 'false'}")


if __name__ == "__main__":
    main()
