"""otcert check: c-cyclical monotonicity certificate for a plan's support."""

from pathlib import Path

import click

from otcert.cli.main import (
    EXISTING,
    EXIT_INFINITE_SUPPORT,
    EXIT_NOT_MONOTONE,
    EXIT_OK,
    EXIT_PARSE,
    check_plan_shape,
    cli,
    fail,
    load_costs,
    load_plan_file,
    measure_options,
    record_run,
)
from otcert.config import ToolkitConfig


@cli.command()
@click.argument("plan_path", type=EXISTING)
@click.argument("cost_path", type=EXISTING)
@measure_options
@click.option("--tol", type=float, default=None, help="Cycle tolerance [default: 1e-9 or config]")
@click.option("--exhaustive", is_flag=True, help="Enumerate every cycle (at most 7 pairs)")
@click.pass_obj
def check(
    config: ToolkitConfig,
    plan_path: Path,
    cost_path: Path,
    mu_path: Path | None,
    nu_path: Path | None,
    tol: float | None,
    exhaustive: bool,
) -> None:
    """Certify the support of PLAN as c-monotone under COST, or print an improving cycle."""
    from otcert.errors import IndexOutOfRangeError, InfiniteOnSupportError, SizeExceededError
    from otcert.monotonicity.checker import brute_check, check_c_monotone
    from otcert.monotonicity.loader import dump_certificate
    from otcert.monotonicity.models import Monotone

    tol = config.tol if tol is None else tol
    plan = load_plan_file(plan_path)
    costs, _, _ = load_costs(cost_path, mu_path, nu_path)
    check_plan_shape(plan, costs)
    params = {"plan": str(plan_path), "cost": str(cost_path), "exhaustive": exhaustive}
    files = (plan_path, cost_path, mu_path, nu_path)

    try:
        if exhaustive:
            certificate = brute_check(plan.support(), costs, tol=tol)
        else:
            certificate = check_c_monotone(plan.support(), costs, tol)
    except InfiniteOnSupportError as e:
        click.echo(f"Plan puts mass on an infinite cost at {e.pair}", err=True)
        record_run(
            config,
            "check",
            params,
            "infinite_support",
            EXIT_INFINITE_SUPPORT,
            tol=tol,
            artifacts=files,
        )
        return
    except (IndexOutOfRangeError, SizeExceededError, ValueError) as e:
        fail(str(e), EXIT_PARSE)

    click.echo(dump_certificate(certificate))
    monotone = isinstance(certificate, Monotone)
    if not monotone:
        click.echo(
            f"Support is not c-monotone: cycle of length {len(certificate.cycle)} "
            f"improves cost by {certificate.improvement:.12g}",
            err=True,
        )
    record_run(
        config,
        "check",
        params,
        certificate.verdict,
        EXIT_OK if monotone else EXIT_NOT_MONOTONE,
        tol=tol,
        result={"certificate": certificate.model_dump(mode="json")},
        artifacts=files,
    )
