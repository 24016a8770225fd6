"""otcert solve: exact solution of a discrete transport problem."""

from pathlib import Path

import click

from otcert.cli.main import (
    EXISTING,
    EXIT_INFEASIBLE,
    EXIT_PARSE,
    PATH,
    cli,
    fail,
    load_costs,
    record_run,
)
from otcert.config import ToolkitConfig


def format_cost(value: float) -> str:
    return format(value, ".15g")


@cli.command()
@click.argument("mu_path", type=EXISTING)
@click.argument("nu_path", type=EXISTING)
@click.argument("cost_path", type=EXISTING)
@click.option("--out", "out_path", type=PATH, default=None, help="Write the optimal plan here")
@click.option(
    "--method",
    type=click.Choice(["flow", "hungarian", "brute"]),
    default="flow",
    show_default=True,
    help="hungarian and brute need uniform measures of equal size",
)
@click.pass_obj
def solve(
    config: ToolkitConfig,
    mu_path: Path,
    nu_path: Path,
    cost_path: Path,
    out_path: Path | None,
    method: str,
) -> None:
    """Solve the transport problem (MU, NU, COST) exactly and print its cost."""
    import numpy as np

    from otcert.errors import InfeasibleError, SizeExceededError
    from otcert.measures.models import dump_cost_value
    from otcert.solver.assignment import solve_assignment
    from otcert.solver.brute import brute_force_optimal
    from otcert.solver.flow import solve_transport
    from otcert.solver.loader import save_plan

    costs, mu, nu = load_costs(cost_path, mu_path, nu_path)
    assert mu is not None and nu is not None
    if costs.shape != (mu.size, nu.size):
        fail(
            f"Cost is {costs.shape[0]}x{costs.shape[1]} but measures have "
            f"{mu.size} and {nu.size} atoms",
            EXIT_PARSE,
        )

    params = {"mu": str(mu_path), "nu": str(nu_path), "cost": str(cost_path), "method": method}
    files = (mu_path, nu_path, cost_path, out_path)
    if method != "flow":
        uniform = all(np.allclose(m.weights_array(), 1.0 / m.size) for m in (mu, nu))
        if mu.size != nu.size or not uniform:
            fail(f"--method {method} needs uniform measures of equal size", EXIT_PARSE)

    try:
        if method == "hungarian":
            result = solve_assignment(costs)
        elif method == "brute":
            result = brute_force_optimal(costs)
        else:
            result = solve_transport(costs, mu.weights_array(), nu.weights_array())
    except InfeasibleError as e:
        click.echo(f"Problem is infeasible: {e}", err=True)
        record_run(config, "solve", params, "infeasible", EXIT_INFEASIBLE, artifacts=files)
        return
    except SizeExceededError as e:
        fail(str(e), EXIT_PARSE)

    if out_path is not None:
        save_plan(result.plan, out_path)
    click.echo(f"cost {format_cost(result.cost)}")
    record_run(
        config,
        "solve",
        params,
        "solved",
        result={"cost": dump_cost_value(result.cost), "method": result.method.value},
        artifacts=files,
    )
