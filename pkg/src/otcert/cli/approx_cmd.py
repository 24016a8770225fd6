"""otcert approx: empirical approximation experiments."""

from pathlib import Path

import click

from otcert.cli.main import (
    EXISTING,
    EXIT_INFEASIBLE,
    EXIT_NOT_MONOTONE,
    EXIT_PARSE,
    PATH,
    cli,
    fail,
    record_run,
)
from otcert.config import ToolkitConfig


@cli.command()
@click.argument("config_path", type=EXISTING)
@click.option("--out", "out_path", type=PATH, default=None, help="Report file [default: stdout]")
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)
@click.option("--seed", type=int, default=None, help="Override the config's seed")
@click.pass_obj
def approx(
    config: ToolkitConfig,
    config_path: Path,
    out_path: Path | None,
    fmt: str,
    seed: int | None,
) -> None:
    """Run the sample-solve-certify schedule described by CONFIG_PATH (YAML or JSON)."""
    import asyncio

    import yaml

    from otcert.approximation.report import load_approx_config, report_to_csv
    from otcert.approximation.runner import arun_approximation, run_approximation
    from otcert.errors import (
        DegenerateTransformError,
        InfeasibleError,
        NotMonotoneError,
        UnsupportedSpecError,
    )

    try:
        experiment = load_approx_config(config_path)
    except (OSError, ValueError, yaml.YAMLError) as e:
        fail(f"Invalid experiment config {config_path}: {e}", EXIT_PARSE)
    if seed is not None:
        experiment = experiment.model_copy(update={"seed": seed})

    args = (experiment.mu, experiment.nu, experiment.cost, experiment.schedule, experiment.seed)
    params = {"config": str(config_path), "seed": experiment.seed, "workers": config.workers}
    files = (config_path, out_path)
    try:
        if config.workers > 1:
            report = asyncio.run(arun_approximation(*args, tol=experiment.tol))
        else:
            report = run_approximation(*args, tol=experiment.tol)
    except (UnsupportedSpecError, DegenerateTransformError) as e:
        fail(str(e), EXIT_PARSE)
    except NotMonotoneError as e:
        click.echo(f"Sampled plan failed certification: {e}", err=True)
        record_run(
            config,
            "approx",
            params,
            "violated",
            EXIT_NOT_MONOTONE,
            tol=experiment.tol,
            artifacts=files,
        )
        return
    except InfeasibleError as e:
        click.echo(f"Sampled problem is infeasible: {e}", err=True)
        record_run(config, "approx", params, "infeasible", EXIT_INFEASIBLE, artifacts=files)
        return

    content = report_to_csv(report) if fmt == "csv" else report.model_dump_json(indent=2)
    if out_path is not None:
        out_path.write_text(content)
    else:
        click.echo(content, nl=False if fmt == "csv" else True)

    final = report.final()
    click.echo(
        f"n={final.n} cost={final.cost:.6g} dual_gap={final.dual_gap:.3g}"
        + (f" reference={report.reference:.6g}" if report.reference is not None else ""),
        err=True,
    )
    record_run(
        config,
        "approx",
        params,
        "completed",
        tol=experiment.tol,
        result={"n": final.n, "cost": final.cost, "dual_gap": final.dual_gap},
        artifacts=files,
    )
