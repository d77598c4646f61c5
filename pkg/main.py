import json
import logging
import os
import sys

import click
from pydantic import ValidationError

# Add src directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "src"))

from src.commands.dispatch import EXIT_USAGE, dispatch
from src.commands.render import render, write_report
from src.models.command import Command
from src.models.report import AxiomMode, CentralizerStrategy, CheckResult, OutputFormat, Report
from src.utils.config import config
from src.utils.logger import log_error, setup_logging


def _run(ctx: click.Context, **fields) -> None:
    """Validate the options into a Command, dispatch it and exit with its code."""
    try:
        command = Command(**fields)
    except ValidationError as exc:
        message = exc.errors()[0]["msg"]
        log_error(message, fields.get("verb"))
        error = CheckResult(name="input", passed=False, detail=message)
        report = Report(command=str(fields.get("verb")), checks=[error], data={"error": message})
        write_report(render(report, fields.get("output_format", OutputFormat.TEXT)), fields.get("output"))
        ctx.exit(EXIT_USAGE)
    ctx.exit(dispatch(command))


def report_options(func):
    """Output format, output path and timing, shared by every verb."""
    func = click.option("--timing", is_flag=True, help="Include timing_ms in the report.")(func)
    func = click.option(
        "--output", type=click.Path(dir_okay=False), default=None, help="Write the report here instead of stdout."
    )(func)
    return click.option(
        "--format",
        "output_format",
        type=click.Choice([f.value for f in OutputFormat]),
        default=config.DEFAULT_OUTPUT_FORMAT,
        show_default=True,
    )(func)


def system_options(func):
    func = click.option("--file", type=click.Path(dir_okay=False), default=None, help="Structure-constant JSON file.")(func)
    return click.option(
        "--system", default=None, help="Catalog system, e.g. so3, bilinear(3), direct_sum(S2,abelian(1))."
    )(func)


def algebra_options(func):
    func = click.option("--file", type=click.Path(dir_okay=False), default=None, help="Multiplication-table JSON file.")(func)
    return click.option("--algebra", default=None, help="Catalog algebra: cubic, FxF, idempotent, matrix2, octonions.")(func)


@click.group()
@click.option("--debug", is_flag=True, help="Log at DEBUG level and print the configuration summary.")
def cli(debug: bool):
    """Lie triple systems, their enveloping algebras and nucleus computations."""
    if debug:
        config.LOG_LEVEL = "DEBUG"
    setup_logging()
    if not config.validate_config():
        logging.getLogger(__name__).warning("continuing with an invalid configuration")
    if debug:
        click.echo(json.dumps(config.get_config_summary(), indent=2, sort_keys=True), err=True)


@cli.command()
@system_options
@click.option("--mode", type=click.Choice([m.value for m in AxiomMode]), default=AxiomMode.LTS.value, show_default=True)
@report_options
@click.pass_context
def axioms(ctx, system, file, mode, output_format, output, timing):
    """Check the L.t.s., Bol or Malcev axioms on all basis tuples."""
    _run(ctx, verb="axioms", system=system, file=file, mode=mode, output_format=output_format, output=output, timing=timing)


@cli.command()
@system_options
@click.option("--scale", type=int, default=1, show_default=True, help="Build the envelope of (V, scale*[ , , ]).")
@report_options
@click.pass_context
def envelope(ctx, system, file, scale, output_format, output, timing):
    """Build the Lie envelope D(V,V) + V."""
    _run(ctx, verb="envelope", system=system, file=file, scale=scale, output_format=output_format, output=output, timing=timing)


@cli.command()
@system_options
@click.argument("left")
@click.argument("right")
@report_options
@click.pass_context
def mul(ctx, system, file, left, right, output_format, output, timing):
    """Multiply two U(V) expressions such as "e*f + 1/2 e" and "f"."""
    _run(
        ctx,
        verb="mul",
        system=system,
        file=file,
        expressions=[left, right],
        output_format=output_format,
        output=output,
        timing=timing,
    )


@cli.command()
@system_options
@click.option("--degree", type=int, default=None, help="Degree bound N (default DEFAULT_DEGREE).")
@click.option(
    "--strategy",
    type=click.Choice([s.value for s in CentralizerStrategy]),
    default=CentralizerStrategy.GRADED.value,
    show_default=True,
)
@report_options
@click.pass_context
def centralizer(ctx, system, file, degree, strategy, output_format, output, timing):
    """Elements of U(V) of degree <= N commuting with V."""
    _run(
        ctx,
        verb="centralizer",
        system=system,
        file=file,
        degree=degree,
        strategy=strategy,
        output_format=output_format,
        output=output,
        timing=timing,
    )


@cli.command()
@algebra_options
@report_options
@click.pass_context
def nuclei(ctx, algebra, file, output_format, output, timing):
    """Nuclei, center and generalized alternative nuclei of a unital algebra."""
    _run(ctx, verb="nuclei", algebra=algebra, file=file, output_format=output_format, output=output, timing=timing)


@cli.command()
@algebra_options
@click.option("--vector", "vectors", multiple=True, help="Coordinates of a vector spanning V, e.g. 0,1,0.")
@click.option("--strict", is_flag=True, help="Stop at the first failed hypothesis.")
@report_options
@click.pass_context
def decompose(ctx, algebra, file, vectors, strict, output_format, output, timing):
    """Split A into a central part without nilpotents and a nilpotent ideal."""
    _run(
        ctx,
        verb="decompose",
        algebra=algebra,
        file=file,
        vectors=list(vectors),
        strict=strict,
        output_format=output_format,
        output=output,
        timing=timing,
    )


@cli.command()
@click.argument("target")
@click.option("--max-n", type=int, default=None, help="Exponent or size bound of the run.")
@click.option("--degree", type=int, default=None, help="Degree bound of the run.")
@click.option("--cases", type=int, default=None, help="Random cases per check (default RANDOM_CASES).")
@click.option("--seed", type=int, default=None, help="Seed for random cases (default RANDOM_SEED).")
@click.option("--system", default=None, help="System for lemma-suite.")
@report_options
@click.pass_context
def verify(ctx, target, max_n, degree, cases, seed, system, output_format, output, timing):
    """Run a named verification, e.g. commutator-s2 or centralizer-conjecture."""
    _run(
        ctx,
        verb="verify",
        target=target,
        max_n=max_n,
        degree=degree,
        cases=cases,
        seed=seed,
        system=system,
        output_format=output_format,
        output=output,
        timing=timing,
    )


@cli.command()
@click.argument("name", required=False)
@report_options
@click.pass_context
def catalog(ctx, name, output_format, output, timing):
    """List the catalog, or show one system or algebra."""
    _run(ctx, verb="catalog", target=name, output_format=output_format, output=output, timing=timing)


def main():
    cli()


if __name__ == "__main__":
    main()
