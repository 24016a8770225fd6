"""otcert certify: full optimality audit of a proposed plan."""

from pathlib import Path

import click

from otcert.cli.main import (
    EXISTING,
    EXIT_INFINITE_SUPPORT,
    EXIT_NOT_MONOTONE,
    EXIT_PARSE,
    cli,
    echo_json,
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
@click.option("--tol", type=float, default=None, help="Check tolerance [default: 1e-9]")
@click.option("--gap-tol", type=float, default=None, help="Duality gap tolerance [default: 1e-8]")
@click.pass_obj
def certify(
    config: ToolkitConfig,
    plan_path: Path,
    cost_path: Path,
    mu_path: Path | None,
    nu_path: Path | None,
    tol: float | None,
    gap_tol: float | None,
) -> None:
    """Certify PLAN optimal under COST through marginals, support, cycles and duality.

    Without --mu/--nu the marginals are uniform over the rows and columns of COST.
    """
    from otcert.certify.engine import CertificationContext, CertificationEngine
    from otcert.measures.models import DiscreteMeasure

    plan = load_plan_file(plan_path)
    costs, mu, nu = load_costs(cost_path, mu_path, nu_path)
    n, m = costs.shape
    if mu is None:
        mu = DiscreteMeasure.uniform(list(range(n)))
    if nu is None:
        nu = DiscreteMeasure.uniform(list(range(m)))

    context = CertificationContext(
        mu,
        nu,
        costs,
        tol=config.tol if tol is None else tol,
        gap_tol=config.gap_tol if gap_tol is None else gap_tol,
        construction_tol=config.construction_tol,
    )
    result = CertificationEngine().evaluate(plan, context)
    echo_json(result.model_dump(mode="json"))

    params = {"plan": str(plan_path), "cost": str(cost_path)}
    files = (plan_path, cost_path, mu_path, nu_path)
    summary = {"passed": result.passed, "failed": result.failed_checks()}
    if result.passed:
        record_run(
            config,
            "certify",
            params,
            "certified",
            tol=context.tol,
            result=summary,
            artifacts=files,
        )
        return

    click.echo(f"Certification failed: {result.failure_reason}", err=True)
    failed = set(result.failed_checks())
    if "marginals" in failed:
        code = EXIT_PARSE
    elif "finite_support" in failed:
        code = EXIT_INFINITE_SUPPORT
    else:
        code = EXIT_NOT_MONOTONE
    record_run(
        config,
        "certify",
        params,
        "rejected",
        code,
        tol=context.tol,
        result=summary,
        artifacts=files,
    )
