"""CLI entrypoint for otcert."""

import otcert.cli.approx_cmd  # noqa: F401
import otcert.cli.certify_cmd  # noqa: F401
import otcert.cli.check_cmd  # noqa: F401
import otcert.cli.ledger_cmd  # noqa: F401
import otcert.cli.potentials_cmd  # noqa: F401
import otcert.cli.solve_cmd  # noqa: F401
import otcert.cli.torus_cmd  # noqa: F401
from otcert.cli.main import cli


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
