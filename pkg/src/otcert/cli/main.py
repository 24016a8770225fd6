"""Click CLI group for otcert, with exit codes and shared file handling."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from pathlib import Path
from typing import TYPE_CHECKING, NoReturn

import click

if TYPE_CHECKING:
    import numpy as np

    from otcert.config import ToolkitConfig
    from otcert.measures.models import DiscreteMeasure
    from otcert.solver.models import TransportPlan

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INFEASIBLE = 2
EXIT_NOT_MONOTONE = 3
EXIT_INFINITE_SUPPORT = 4

PATH = click.Path(path_type=Path, dir_okay=False)
EXISTING = click.Path(path_type=Path, dir_okay=False, exists=True)


class ParseErrorGroup(click.Group):
    """Click group whose usage errors (bad options, missing files) exit with EXIT_PARSE."""

    def make_context(self, *args, **kwargs) -> click.Context:
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = EXIT_PARSE
            raise

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_PARSE
            raise


@click.group(cls=ParseErrorGroup)
@click.version_option(package_name="otcert")
@click.option("--config", "config_path", type=EXISTING, default=None, help="YAML toolkit config")
@click.option("--ledger", "ledger_path", type=PATH, default=None, help="Append runs to this ledger")
@click.pass_context
def cli(ctx: click.Context, config_path: Path | None, ledger_path: Path | None) -> None:
    """otcert: solve and certify discrete optimal transport problems."""
    import yaml

    from otcert.config import load_config

    try:
        config = load_config(config_path)
    except (OSError, ValueError, yaml.YAMLError) as e:
        click.echo(f"Invalid config: {e}", err=True)
        raise SystemExit(EXIT_PARSE) from e
    if ledger_path is not None:
        config = config.model_copy(update={"ledger_path": ledger_path})
    ctx.obj = config


def fail(message: str, code: int) -> NoReturn:
    click.echo(message, err=True)
    raise SystemExit(code)


def record_run(
    config: ToolkitConfig,
    command: str,
    params: dict,
    outcome: str,
    exit_code: int = EXIT_OK,
    tol: float | None = None,
    result: dict | None = None,
    artifacts: Iterable[Path | None] = (),
) -> None:
    """Append the run to the ledger when one is configured, then exit with exit_code.

    Files named in artifacts are digested into the entry; None entries are skipped.
    """
    if config.ledger_path is not None:
        from otcert.ledger.logger import RunLedger

        RunLedger(config.ledger_path).log(
            command=command,
            params=params,
            outcome=outcome,
            exit_code=exit_code,
            tol=tol,
            result=result,
            artifacts=[p for p in artifacts if p is not None],
        )
    if exit_code != EXIT_OK:
        raise SystemExit(exit_code)


def load_costs(
    cost_path: Path,
    mu_path: Path | None,
    nu_path: Path | None,
) -> tuple[np.ndarray, DiscreteMeasure | None, DiscreteMeasure | None]:
    """Materialize a cost file; analytic costs need both measure files."""
    from otcert.measures.costs import cost_matrix, cost_matrix_from_spec
    from otcert.measures.loader import load_cost_spec, load_measure
    from otcert.measures.models import ExplicitMatrix, TorusShift

    try:
        spec = load_cost_spec(cost_path)
        mu = load_measure(mu_path) if mu_path else None
        nu = load_measure(nu_path) if nu_path else None
        if isinstance(spec, TorusShift):
            for measure in (mu, nu):
                if measure is not None:
                    measure.check_torus()
        if isinstance(spec, ExplicitMatrix | TorusShift):
            return cost_matrix_from_spec(spec), mu, nu
        if mu is None or nu is None:
            fail(f"{spec.kind} cost needs --mu and --nu measure files", EXIT_PARSE)
        return cost_matrix(spec, mu, nu), mu, nu
    except (OSError, ValueError) as e:
        fail(f"Could not load cost {cost_path}: {e}", EXIT_PARSE)


def load_plan_file(path: Path) -> TransportPlan:
    from otcert.solver.loader import load_plan

    try:
        return load_plan(path)
    except (OSError, ValueError) as e:
        fail(f"Could not load plan {path}: {e}", EXIT_PARSE)


def check_plan_shape(plan: TransportPlan, costs: np.ndarray) -> None:
    if (plan.n_rows, plan.n_cols) != costs.shape:
        fail(
            f"Plan is {plan.n_rows}x{plan.n_cols} but cost is {costs.shape[0]}x{costs.shape[1]}",
            EXIT_PARSE,
        )


def echo_json(data: dict) -> None:
    import json

    click.echo(json.dumps(data, indent=2))


def measure_options(f: Callable) -> Callable:
    """--mu/--nu measure files, required when the cost is analytic."""
    f = click.option("--nu", "nu_path", type=EXISTING, default=None, help="nu measure file")(f)
    return click.option("--mu", "mu_path", type=EXISTING, default=None, help="mu measure file")(f)
