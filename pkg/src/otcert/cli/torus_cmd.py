"""otcert torus: the cyclic diagonal-versus-shift counterexample."""

import click

from otcert.cli.main import EXIT_NOT_MONOTONE, EXIT_PARSE, cli, echo_json, fail, record_run
from otcert.config import ToolkitConfig


@cli.command()
@click.argument("size", type=int)
@click.option(
    "--which",
    type=click.Choice(["gamma1", "gamma2"]),
    default="gamma1",
    show_default=True,
    help="gamma1 is the diagonal plan, gamma2 the rotation plan",
)
@click.option("--shift", "shift_steps", type=int, default=1, show_default=True)
@click.option("--tol", type=float, default=None, help="Cycle tolerance [default: 1e-9]")
@click.pass_obj
def torus(
    config: ToolkitConfig, size: int, which: str, shift_steps: int, tol: float | None
) -> None:
    """Certify the diagonal plan on SIZE torus grid points, or refute the rotation plan."""
    from otcert.measures.costs import plan_cost
    from otcert.monotonicity.checker import check_c_monotone
    from otcert.monotonicity.models import Monotone
    from otcert.potentials.construction import build_potentials
    from otcert.potentials.duality import dual_value
    from otcert.torus import TorusPlan, build_torus_instance

    tol = config.tol if tol is None else tol
    try:
        instance = build_torus_instance(size, shift_steps)
    except ValueError as e:
        fail(str(e), EXIT_PARSE)

    selected = TorusPlan(which)
    costs = instance.costs()
    plan = instance.plan(selected)
    certificate = check_c_monotone(instance.support(selected), costs, tol)
    summary: dict = {
        "size": size,
        "which": which,
        "plan_cost": plan_cost(plan, costs),
        "certificate": certificate.model_dump(mode="json"),
    }
    params = {"size": size, "which": which, "shift": shift_steps}

    if isinstance(certificate, Monotone):
        pair = build_potentials(instance.support(selected), costs, tol=config.construction_tol)
        dual = dual_value(pair, plan.row_sums(), plan.col_sums())
        summary["dual_value"] = dual
        summary["gap"] = summary["plan_cost"] - dual
        echo_json(summary)
        record_run(config, "torus", params, "monotone", tol=tol, result=summary)
        return

    echo_json(summary)
    drift = instance.shift_period() * (instance.cost.shift_cost - instance.cost.diag_cost)
    click.echo(
        f"No potential pair has equality on {which}: chaining "
        "phi(x) >= phi(x + shift) + (shift cost - diagonal cost) "
        f"around the {instance.shift_period()}-cycle gives phi(x) >= phi(x) + {drift:g}",
        err=True,
    )
    record_run(config, "torus", params, "violated", EXIT_NOT_MONOTONE, tol=tol, result=summary)
