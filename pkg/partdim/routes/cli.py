import logging
from typing import Optional

import click

from partdim.config import configure_logging
from partdim.errors import InputError
from partdim.service.certificate_store import ServiceResponse
from partdim.service.dimension_service import BRUTE, CONSTRUCT, TREE, DimensionService
from partdim.service.run_logger import RunLogger
from partdim.service.sweep_service import SUITES
from partdim.utils import parse_int_range

logger = logging.getLogger(__name__)


def _emit(ctx: click.Context, response: ServiceResponse) -> None:
    """Print the report, write the operation log, and exit with the response status"""
    options = ctx.obj
    if response.data is not None:
        if options["format"] == "json":
            click.echo(response.data.render_json(options["timings"]), nl=False)
        else:
            click.echo(response.data.render_text(options["timings"]), nl=False)
    if response.error:
        click.echo(f"error: {response.error}", err=True)

    run_logger: RunLogger = options["run_logger"]
    if options["oplog"]:
        with open(options["oplog"], "w") as f:
            f.write(run_logger.export_log_json())
    if options["replay_script"]:
        with open(options["replay_script"], "w") as f:
            f.write(run_logger.generate_python_script())
    ctx.exit(response.status_code)


def _service(ctx: click.Context) -> DimensionService:
    return DimensionService(run_logger=ctx.obj["run_logger"])


def _range_option(ctx: click.Context, param: click.Parameter, value: Optional[str]):
    if value is None:
        return None
    try:
        return parse_int_range(value)
    except InputError as e:
        raise click.BadParameter(str(e))


@click.group()
@click.option("--log-json", is_flag=True, help="Emit log records as JSON on stderr.")
@click.option("--oplog", type=click.Path(dir_okay=False), help="Write the operation log as JSON.")
@click.option("--replay-script", type=click.Path(dir_okay=False),
              help="Write a Python script that re-runs the logged library calls.")
@click.option("--timings", is_flag=True, help="Add wall-clock seconds per step to reports.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
@click.pass_context
def cli(ctx: click.Context, log_json: bool, oplog: Optional[str], replay_script: Optional[str],
        timings: bool, fmt: str) -> None:
    """Exact k-metric and k-partition dimension of small connected graphs."""
    if log_json:
        configure_logging(json_format=True)
    ctx.obj = {
        "oplog": oplog,
        "replay_script": replay_script,
        "timings": timings,
        "format": fmt,
        "run_logger": RunLogger(),
    }


@cli.command()
@click.argument("family")
@click.argument("params", nargs=-1, type=int)
@click.option("-o", "--out", type=click.Path(dir_okay=False), help="Graph file to write.")
@click.option("--seed", type=int, help="Seed for random_tree.")
@click.pass_context
def gen(ctx: click.Context, family: str, params, out: Optional[str], seed: Optional[int]) -> None:
    """Generate a named graph family (path, cycle, wheel, ...)."""
    _emit(ctx, _service(ctx).cmd_gen(family, params, out, seed))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def dims(ctx: click.Context, graph: str) -> None:
    """Dimensional values d, d*, twin classes, clique number and varsigma."""
    _emit(ctx, _service(ctx).cmd_dims(graph))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", type=int, required=True)
@click.option("--brute", "mode", flag_value=BRUTE, default=True, help="Exhaustive search (default).")
@click.option("--construct", "mode", flag_value=CONSTRUCT, help="Path or tree construction.")
@click.option("-o", "--out", type=click.Path(dir_okay=False), help="Partition certificate to write.")
@click.option("--force", is_flag=True, help="Ignore the brute-force size limit.")
@click.pass_context
def pd(ctx: click.Context, graph: str, k: int, mode: str, out: Optional[str], force: bool) -> None:
    """k-partition dimension with a certificate partition."""
    _emit(ctx, _service(ctx).cmd_pd(graph, k, mode, out, force))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", type=int, required=True)
@click.option("--brute", "mode", flag_value=BRUTE, default=True, help="Exhaustive search (default).")
@click.option("--tree", "mode", flag_value=TREE, help="Closed formula for trees.")
@click.option("--force", is_flag=True, help="Ignore the brute-force size limit.")
@click.pass_context
def dim(ctx: click.Context, graph: str, k: int, mode: str, force: bool) -> None:
    """k-metric dimension."""
    _emit(ctx, _service(ctx).cmd_dim(graph, k, mode, force))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", type=int, required=True)
@click.pass_context
def verify(ctx: click.Context, graph: str, partition: str, k: int) -> None:
    """Check that a partition file is a k-partition generator."""
    _emit(ctx, _service(ctx).cmd_verify(graph, partition, k))


@cli.command()
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--n", "sizes", callback=_range_option, help="Size or range, e.g. 6 or 3..9. For exhaustive a single N means 2..N.")
@click.option("--count", type=int, default=100, show_default=True, help="Random trees to draw.")
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--large", callback=_range_option,
              help="Tree sizes checked by construction only (trees suite).")
@click.option("--construct-up-to", type=int, default=0,
              help="Verify the path construction up to this n (paths suite).")
@click.option("--jobs", type=int, help="Worker processes (default PARTDIM_JOBS).")
@click.option("--progress", is_flag=True, help="Show a progress bar on stderr.")
@click.pass_context
def sweep(ctx: click.Context, suite: str, sizes, count: int, seed: int, large, construct_up_to: int,
          jobs: Optional[int], progress: bool) -> None:
    """Run a theorem-check suite and print a pass/fail table."""
    response = _service(ctx).cmd_sweep(
        suite, sizes=sizes, count=count, seed=seed, large=large or (),
        construct_up_to=construct_up_to, jobs=jobs, progress=progress,
    )
    _emit(ctx, response)
