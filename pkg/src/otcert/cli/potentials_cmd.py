"""otcert potentials: Kantorovich potentials from a c-monotone support."""

import json
from pathlib import Path

import click

from otcert.cli.main import (
    EXISTING,
    EXIT_INFINITE_SUPPORT,
    EXIT_NOT_MONOTONE,
    EXIT_OK,
    EXIT_PARSE,
    PATH,
    cli,
    echo_json,
    fail,
    load_costs,
    measure_options,
    record_run,
)
from otcert.config import ToolkitConfig


@cli.command()
@click.argument("support_path", type=EXISTING)
@click.argument("cost_path", type=EXISTING)
@measure_options
@click.option("--out", "out_path", type=PATH, default=None, help="Write the potential pair here")
@click.option("--root", "root_index", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=None, help="Verification tolerance [default: 1e-9]")
@click.pass_obj
def potentials(
    config: ToolkitConfig,
    support_path: Path,
    cost_path: Path,
    mu_path: Path | None,
    nu_path: Path | None,
    out_path: Path | None,
    root_index: int,
    tol: float | None,
) -> None:
    """Build potentials (phi, psi) on SUPPORT, a plan or a {"pairs": ...} file.

    Prints the dual value, and the duality gap when SUPPORT is a plan.
    """
    from pydantic import ValidationError

    from otcert.errors import (
        DegenerateTransformError,
        IndexOutOfRangeError,
        InfiniteOnSupportError,
        NotMonotoneError,
        RootOutOfRangeError,
    )
    from otcert.measures.costs import plan_cost
    from otcert.measures.models import dump_cost_value
    from otcert.monotonicity.models import SupportSet, Violated
    from otcert.potentials.construction import build_potentials
    from otcert.potentials.duality import dual_value, verify_feasibility
    from otcert.potentials.loader import save_potentials
    from otcert.potentials.models import dump_potential_value
    from otcert.solver.models import TransportPlan

    tol = config.tol if tol is None else tol
    costs, mu, nu = load_costs(cost_path, mu_path, nu_path)
    try:
        data = json.loads(support_path.read_text())
        plan = TransportPlan.model_validate(data) if "entries" in data else None
        gamma = plan.support() if plan is not None else SupportSet.model_validate(data)
    except (OSError, ValueError, ValidationError, TypeError) as e:
        fail(f"Could not load support {support_path}: {e}", EXIT_PARSE)

    params = {"support": str(support_path), "cost": str(cost_path), "root": root_index}
    files = (support_path, cost_path, mu_path, nu_path, out_path)
    try:
        pair = build_potentials(gamma, costs, root_index, config.construction_tol)
    except NotMonotoneError as e:
        click.echo(json.dumps(Violated.from_cycle(e.cycle, tol).model_dump(mode="json"), indent=2))
        click.echo(f"No potentials exist: {e}", err=True)
        record_run(
            config,
            "potentials",
            params,
            "violated",
            EXIT_NOT_MONOTONE,
            tol=tol,
            artifacts=files,
        )
        return
    except InfiniteOnSupportError as e:
        click.echo(f"Support sits on an infinite cost at {e.pair}", err=True)
        record_run(
            config,
            "potentials",
            params,
            "infinite_support",
            EXIT_INFINITE_SUPPORT,
            artifacts=files,
        )
        return
    except (IndexOutOfRangeError, RootOutOfRangeError, DegenerateTransformError) as e:
        fail(str(e), EXIT_PARSE)

    if out_path is not None:
        save_potentials(pair, out_path)

    report = verify_feasibility(pair, costs, tol)
    summary: dict = {"feasibility": report.model_dump(mode="json")}
    if mu is not None and nu is not None:
        summary["dual_value"] = dump_potential_value(dual_value(pair, mu, nu))
    elif plan is not None:
        summary["dual_value"] = dump_potential_value(
            dual_value(pair, plan.row_sums(), plan.col_sums())
        )
    if plan is not None:
        primal = plan_cost(plan, costs)
        summary["plan_cost"] = dump_cost_value(primal)
        dual = summary["dual_value"]
        if isinstance(dual, float) and primal != float("inf"):
            summary["gap"] = primal - dual
    echo_json(summary)

    if not report.passed:
        click.echo("Potentials failed verification: " + "; ".join(report.failures), err=True)
    record_run(
        config,
        "potentials",
        params,
        "verified" if report.passed else "unverified",
        EXIT_OK if report.passed else EXIT_NOT_MONOTONE,
        tol=tol,
        result=summary,
        artifacts=files,
    )
