"""
braidcheck command line
Every subcommand is a thin adapter over the library: it parses braid words, calls one
operation and prints the documented JSON (or a plain rendering with --plain).

Exit codes: 0 on success, 1 on domain errors (diagnostic on standard error), 2 on usage
errors. equal and check with --quiet print nothing and exit 0/1 for true/false.
"""

import logging
from typing import Any, Iterator, List, Optional, Sequence

import click
from dotenv import load_dotenv

from braid_core import (
    BraidError,
    BraidWord,
    WordFormatError,
    delete_strands,
    is_pure,
    perm,
    reflect,
    rotate180,
)
from cabling import cable, derive_all
from garside import equals, normal_form
from interchange import (
    FAMILY_BOUND,
    classify,
    equivalence_class,
    family,
    family_self_check,
    hexagon_check,
    hexagon_check_mirror,
    hexagon_words,
    is_interchanging,
    obstruction_screens,
)
from links import braiding_obstruction_report, closure_summary
from models import CertificateVerdict, SearchConfig
from search import DEFAULT_WORKERS, coset_property_sample, report_lines, run_search
from utils import setup_logging, to_json

load_dotenv()
logger = logging.getLogger(__name__)


def parse_word(text: str) -> BraidWord:
    return BraidWord.from_text(text)


def _int_list(text: str) -> List[int]:
    try:
        return [int(token) for token in text.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter(f"expected comma separated integers, got {text!r}")


class WordType(click.ParamType):
    """A braid word in "n: k1 k2 ..." form

    Malformed words are domain errors (exit 1), not usage errors.
    """

    name = "word"

    def convert(self, value, param, ctx):
        if isinstance(value, BraidWord):
            return value
        return parse_word(value)


WORD = WordType()


class BraidcheckGroup(click.Group):
    """Turns domain and I/O failures into click errors so they exit 1"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (BraidError, OSError) as e:
            logger.info(f"Command failed: {str(e)}")
            raise click.ClickException(str(e)) from e


def words_from(word: Optional[BraidWord], file_path: Optional[str]) -> Iterator[BraidWord]:
    """The single WORD argument, or one word per line of --file"""
    if (word is None) == (file_path is None):
        raise click.UsageError("Give exactly one of WORD or --file")
    if word is not None:
        yield word
        return
    with open(file_path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                yield parse_word(text)
            except WordFormatError as e:
                raise WordFormatError(f"{file_path}:{number}: {str(e)}")


def emit(record: Any, plain: str) -> None:
    ctx = click.get_current_context()
    click.echo(plain if ctx.obj.get("plain") else to_json(record))


def batch_option(func):
    func = click.option(
        "--file", "file_path", type=click.Path(dir_okay=False),
        help="Read one word per line and emit JSON lines",
    )(func)
    return click.argument("word", type=WORD, required=False)(func)


def quiet_option(func):
    return click.option(
        "--quiet", is_flag=True, help="Print nothing; exit 0 for true, 1 for false"
    )(func)


@click.group(cls=BraidcheckGroup)
@click.option("--plain", is_flag=True, help="Human readable output instead of JSON")
@click.option("--verbose", "-v", is_flag=True, help="Log progress to standard error")
@click.pass_context
def cli(ctx, plain: bool, verbose: bool):
    """Braid group computations for unital interchanging braids"""
    setup_logging("INFO" if verbose else None)
    ctx.ensure_object(dict)
    ctx.obj["plain"] = plain


@cli.command()
@batch_option
def normalize(word, file_path):
    """Left-greedy normal form"""
    for b in words_from(word, file_path):
        nf = normal_form(b)
        emit(nf, f"Delta^{nf.delta_power} * [{nf.to_word().plain()}]")


@cli.command()
@click.argument("u", type=WORD)
@click.argument("v", type=WORD)
@quiet_option
@click.pass_context
def equal(ctx, u, v, quiet):
    """Do U and V represent the same braid?"""
    result = equals(u, v)
    if quiet:
        ctx.exit(0 if result else 1)
    emit({"u": str(u), "v": str(v), "equal": result}, "true" if result else "false")


@cli.command("perm")
@batch_option
def perm_command(word, file_path):
    """Permutation of the strands"""
    for b in words_from(word, file_path):
        p = perm(b)
        emit(
            {
                "word": str(b),
                "images": list(p.images),
                "cycles": str(p),
                "cycle_type": list(p.cycle_type()),
                "pure": is_pure(b),
            },
            str(p),
        )


@cli.command()
@batch_option
@click.option("--strands", "-s", required=True, help="Strands to delete, e.g. 1,4")
def delete(word, file_path, strands):
    """Sub-braid left after deleting strands (named by initial position)"""
    dead = _int_list(strands)
    for b in words_from(word, file_path):
        result = delete_strands(b, dead)
        emit({"word": str(b), "deleted": sorted(set(dead)), "result": str(result)}, result.plain())


@cli.command()
@batch_option
@click.option("--mirror", is_flag=True, help="Left-right reflection instead of the half turn")
def rotate(word, file_path, mirror):
    """Rotate the diagram by 180 degrees"""
    for b in words_from(word, file_path):
        result = reflect(b) if mirror else rotate180(b)
        emit({"word": str(b), "result": str(result)}, result.plain())


@cli.command("cable")
@batch_option
@click.option("--widths", "-w", required=True, help="Cable widths, one per strand, e.g. 2,1")
def cable_command(word, file_path, widths):
    """Replace each strand by parallel strands"""
    parsed = _int_list(widths)
    for b in words_from(word, file_path):
        result = cable(b, parsed)
        emit({"word": str(b), "widths": parsed, "result": str(result)}, result.plain())


@cli.command()
@batch_option
def derive(word, file_path):
    """The derived six-strand braids Lb, Rb, L'b, R'b"""
    for b in words_from(word, file_path):
        report = derive_all(b)
        emit(
            report,
            f"L  = {report.L}\nR  = {report.R}\nL' = {report.Lp}\nR' = {report.Rp}\n"
            f"Lb = Rb: {report.internal_assoc}\nL'b = R'b: {report.external_assoc}",
        )


@cli.command()
@batch_option
@quiet_option
@click.pass_context
def check(ctx, word, file_path, quiet):
    """Full interchanging check"""
    all_interchanging = True
    for b in words_from(word, file_path):
        report = is_interchanging(b)
        all_interchanging = all_interchanging and report.interchanging
        if not quiet:
            emit(report, f"{b}: {'interchanging' if report.interchanging else 'not interchanging'}")
    if quiet:
        ctx.exit(0 if all_interchanging else 1)


@cli.command("classify")
@batch_option
def classify_command(word, file_path):
    """Place a braid in the family b(n, sign) or give the reason it is not interchanging"""
    for b in words_from(word, file_path):
        result = classify(b, is_interchanging(b))
        plain = result.label
        if result.in_family:
            plain += f" {equivalence_class(result).value}"
        emit(result, plain)


@cli.command()
@batch_option
def screens(word, file_path):
    """Obstruction screens A, B and C"""
    for b in words_from(word, file_path):
        verdicts = obstruction_screens(b)
        emit(
            {"word": str(b), "screens": [v.model_dump(mode="json") for v in verdicts]},
            "\n".join(v.label for v in verdicts),
        )


@cli.command()
@click.option("--power", "-k", "k", type=int, required=True, help="Odd power of the braiding")
@click.option("--mirror", is_flag=True, help="Check the second hexagon instead")
def hexagon(k, mirror):
    """Hexagon axiom for the braiding raised to an odd power"""
    if mirror:
        holds = hexagon_check_mirror(k)
        emit({"k": k, "hexagon": "second", "holds": holds}, str(holds).lower())
        return
    legs, cabled = hexagon_words(k)
    holds = hexagon_check(k)
    emit(
        {"k": k, "hexagon": "first", "holds": holds, "legs": str(legs), "cabled": str(cabled)},
        f"{legs.plain()}  vs  {cabled.plain()}: {str(holds).lower()}",
    )


@cli.command()
@batch_option
def closure(word, file_path):
    """Components and linking numbers of the closure"""
    for b in words_from(word, file_path):
        summary = closure_summary(b)
        lk = ", ".join(
            f"lk({p.first},{p.second})={p.linking_number}" for p in summary.pairwise_lk
        )
        emit(summary, f"components {summary.components} {lk}".strip())


@cli.command()
@click.option("--power", "-k", "k", type=int, required=True, help="Odd power of the braiding")
def obstruction(k):
    """Closures of (s1 s3)^k and (s2 s1 s3 s2)^k, which a braiding would have to conjugate"""
    report = braiding_obstruction_report(k)
    obstructed = report.verdict is CertificateVerdict.DISTINCT_CLOSURES
    emit(
        {"k": k, "obstructed": obstructed, "certificate": report.model_dump(mode="json")},
        f"{report.verdict.value}: {'; '.join(report.reasons)}" if report.reasons else report.verdict.value,
    )


@cli.command()
@click.option("--max-len", type=click.IntRange(min=1), required=True, help="Longest word to enumerate")
@click.option("--workers", type=click.IntRange(min=1), default=DEFAULT_WORKERS, show_default=True)
@click.option("--no-screens", is_flag=True, help="Skip the profile and obstruction prefilters")
@click.option("--output", "output_path", type=click.Path(dir_okay=False), help="Write JSON lines here")
def search(max_len, workers, no_screens, output_path):
    """Exhaustive search of B4 words up to a length"""
    report = run_search(
        SearchConfig(
            max_len=max_len,
            screens_enabled=not no_screens,
            workers=workers,
            output_path=output_path,
        )
    )
    ctx = click.get_current_context()
    if ctx.obj.get("plain"):
        for c in report.interchanging:
            click.echo(f"{c.witness}  {c.classification.label}")
        click.echo(
            f"{report.words_enumerated} words, {report.candidates} candidates, "
            f"{len(report.interchanging)} interchanging classes, {len(report.anomalies)} anomalies"
        )
        return
    for line in report_lines(report):
        click.echo(line)


@cli.command("coset-sample")
@click.option("--max-h", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--max-k", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=DEFAULT_WORKERS, show_default=True)
@click.option("--output", "output_path", type=click.Path(dir_okay=False), help="Write JSON lines here")
def coset_sample(max_h, max_k, workers, output_path):
    """Check Lb = Rb across a box of the double coset"""
    report = coset_property_sample(max_h, max_k, workers=workers, output_path=output_path)
    emit(
        report.model_dump(mode="json", exclude={"samples"}),
        f"{report.sampled} sampled, {len(report.violations)} violations",
    )


@cli.command("family")
@click.option("-n", "n", type=click.IntRange(min=0), help="Index of a single member")
@click.option("--sign", type=click.Choice(["+", "-"]), default="+", show_default=True)
@click.option("--bound", type=click.IntRange(min=0), default=FAMILY_BOUND, show_default=True,
              help="Self-check every member up to this index")
def family_command(n, sign, bound):
    """A family member b(n, sign), or a self-check of the family"""
    if n is not None:
        b = family(n, sign)
        result = classify(b)
        emit(
            {"n": n, "sign": sign, "word": str(b), "class": equivalence_class(result).value},
            b.plain(),
        )
        return
    for row in family_self_check(bound):
        emit(row, f"b({row['n']},{row['sign']}) {row['word']}  "
                  f"interchanging={row['interchanging']} rotation={row['rotation_invariant']} "
                  f"coset={row['double_coset']}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="braidcheck",
                      standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
