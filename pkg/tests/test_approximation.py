"""Tests for empirical sampling, reference costs and approximation runs."""

from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from otcert.approximation.models import (
    ApproxConfig,
    ConvergenceReport,
    ConvergenceRow,
    GridTorus,
    PointCloud,
    Uniform,
)
from otcert.approximation.reference import quantile, reference_cost_1d
from otcert.approximation.report import (
    CSV_FIELDS,
    load_approx_config,
    read_report_csv,
    read_report_json,
    report_to_csv,
    write_report_csv,
    write_report_json,
)
from otcert.approximation.runner import arun_approximation, run_approximation, run_row
from otcert.approximation.sampling import row_streams, sample_empirical
from otcert.errors import NotMonotoneError, UnsupportedSpecError
from otcert.measures.costs import plan_cost
from otcert.measures.models import ExplicitMatrix, PNorm, SquaredEuclidean, TorusShift
from otcert.solver.assignment import solve_assignment

CLOUD = PointCloud(points=[0.0, 0.25, 1.0], weights=[0.5, 0.25, 0.25])


def make_report(seed: int = 7, reference: float | None = 1.0) -> ConvergenceReport:
    rows = [
        ConvergenceRow(n=10, cost=1.25, dual_gap=0.0, wall_ms=3.5),
        ConvergenceRow(n=20, cost=1.0625, dual_gap=1e-12, wall_ms=9.0),
    ]
    return ConvergenceReport(rows=rows, reference=reference, seed=seed)


# --- Sampling ---


class TestSampleEmpirical:
    def test_uniform_weights(self):
        mu = sample_empirical(Uniform(), 40, seed=1)
        assert mu.size == 40
        assert mu.weights[0] == pytest.approx(1 / 40)
        assert len(set(mu.weights)) == 1

    def test_deterministic_per_seed(self):
        a = sample_empirical(Uniform(dim=2), 30, seed=5)
        b = sample_empirical(Uniform(dim=2), 30, seed=5)
        c = sample_empirical(Uniform(dim=2), 30, seed=6)
        assert a == b
        assert a != c

    def test_uniform_bounds_and_dimension(self):
        mu = sample_empirical(Uniform(lo=-2.0, hi=3.0, dim=3), 100, seed=2)
        pts = mu.points_array()
        assert pts.shape == (100, 3)
        assert pts.min() >= -2.0 and pts.max() < 3.0

    def test_uniform_mean(self):
        mu = sample_empirical(Uniform(), 20_000, seed=3)
        assert mu.points_array().mean() == pytest.approx(0.5, abs=0.01)

    def test_single_atom_cloud(self):
        mu = sample_empirical(PointCloud(points=[[2.0, 3.0]]), 5, seed=0)
        assert set(mu.points) == {(2.0, 3.0)}

    def test_cloud_draws_its_atoms(self):
        mu = sample_empirical(CLOUD, 200, seed=4)
        assert set(mu.points) <= {(0.0,), (0.25,), (1.0,)}

    def test_grid_torus_on_grid(self):
        pts = sample_empirical(GridTorus(size=8), 50, seed=0).points_array()
        np.testing.assert_allclose(pts * 8, np.round(pts * 8))
        assert pts.min() >= 0.0 and pts.max() < 1.0

    def test_zero_size(self):
        with pytest.raises(ValueError):
            sample_empirical(Uniform(), 0, seed=0)

    def test_row_streams_independent(self):
        mu_seq, nu_seq = row_streams(0, 10)
        a = sample_empirical(Uniform(), 10, mu_seq)
        b = sample_empirical(Uniform(), 10, nu_seq)
        assert a != b


# --- Specs ---


class TestSpecs:
    def test_uniform_bounds_checked(self):
        with pytest.raises(ValidationError):
            Uniform(lo=1.0, hi=1.0)

    def test_config_schedule_increasing(self):
        with pytest.raises(ValidationError):
            ApproxConfig(
                mu=Uniform(), nu=Uniform(), cost=SquaredEuclidean(), schedule=[10, 10, 20]
            )

    def test_config_schedule_nonempty(self):
        with pytest.raises(ValidationError):
            ApproxConfig(mu=Uniform(), nu=Uniform(), cost=SquaredEuclidean(), schedule=[])

    def test_config_discriminates_kinds(self):
        config = ApproxConfig(
            mu={"kind": "point_cloud", "points": [[0.0], [1.0]]},
            nu={"kind": "grid_torus", "size": 4},
            cost={"kind": "pnorm", "p": 1},
            schedule=[2, 4],
        )
        assert isinstance(config.mu, PointCloud)
        assert isinstance(config.nu, GridTorus)
        assert config.seed == 0

    def test_report_rejects_negative_gap(self):
        with pytest.raises(ValidationError):
            ConvergenceReport(
                rows=[ConvergenceRow(n=1, cost=0.0, dual_gap=-1e-6, wall_ms=0.0)], seed=0
            )

    def test_report_rows_sorted(self):
        rows = [
            ConvergenceRow(n=20, cost=0.0, dual_gap=0.0, wall_ms=0.0),
            ConvergenceRow(n=10, cost=0.0, dual_gap=0.0, wall_ms=0.0),
        ]
        with pytest.raises(ValidationError):
            ConvergenceReport(rows=rows, seed=0)


# --- Reference costs ---


class TestReference:
    def test_identical_uniforms(self):
        assert reference_cost_1d(Uniform(), Uniform(), SquaredEuclidean()) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_shifted_uniform(self):
        cost = reference_cost_1d(Uniform(), Uniform(lo=1.0, hi=2.0), SquaredEuclidean())
        assert cost == pytest.approx(1.0, abs=1e-9)

    def test_uniform_against_point(self):
        point = PointCloud(points=[0.0])
        assert reference_cost_1d(Uniform(), point, SquaredEuclidean()) == pytest.approx(
            1 / 3, abs=1e-6
        )

    def test_pnorm_one(self):
        cost = reference_cost_1d(Uniform(), Uniform(lo=0.5, hi=1.5), PNorm(p=1))
        assert cost == pytest.approx(0.5, abs=1e-9)

    def test_cloud_quantile(self):
        t = np.array([0.1, 0.5, 0.6, 0.8])
        np.testing.assert_array_equal(quantile(CLOUD, t), [0.0, 0.0, 0.25, 1.0])

    def test_multidimensional_unsupported(self):
        with pytest.raises(UnsupportedSpecError):
            reference_cost_1d(Uniform(dim=2), Uniform(dim=2), SquaredEuclidean())

    def test_matrix_cost_unsupported(self):
        with pytest.raises(UnsupportedSpecError):
            reference_cost_1d(Uniform(), Uniform(), TorusShift(size=3))


# --- Runs ---


class TestRunApproximation:
    def test_identical_clouds_cost_zero(self):
        report = run_approximation(CLOUD, CLOUD, SquaredEuclidean(), [5, 10, 20], seed=0)
        assert [row.cost for row in report.rows] == [0.0, 0.0, 0.0]
        assert report.reference == pytest.approx(0.0, abs=1e-12)

    def test_shifted_uniform_converges(self):
        report = run_approximation(
            Uniform(), Uniform(lo=1.0, hi=2.0), SquaredEuclidean(), [10, 50, 200], seed=0
        )
        assert [row.n for row in report.rows] == [10, 50, 200]
        assert report.final().cost == pytest.approx(1.0, abs=0.2)
        assert report.reference == pytest.approx(1.0, abs=1e-9)

    def test_rows_certified(self):
        report = run_approximation(
            Uniform(dim=2), Uniform(lo=0.5, hi=1.5, dim=2), SquaredEuclidean(), [8, 16, 32], 3
        )
        assert [row.n for row in report.rows] == [8, 16, 32]
        assert all(abs(row.dual_gap) <= 1e-8 for row in report.rows)
        assert report.reference is None

    def test_uncertified_row_raises(self, monkeypatch):
        from otcert.approximation import runner

        def worst_assignment(costs):
            result = solve_assignment(costs.max() - costs)
            return result.model_copy(update={"cost": plan_cost(result.plan, costs)})

        monkeypatch.setattr(runner, "solve_assignment", worst_assignment)
        with pytest.raises(NotMonotoneError):
            run_row(Uniform(), Uniform(lo=1.0, hi=2.0), SquaredEuclidean(), 6, seed=0)

    def test_shifted_uniform_over_many_seeds(self):
        schedule = [50, 100, 200, 400, 800]
        finals = []
        errors = {n: [] for n in schedule}
        for seed in range(20):
            report = run_approximation(
                Uniform(), Uniform(lo=1.0, hi=2.0), SquaredEuclidean(), schedule, seed=seed
            )
            assert all(row.dual_gap <= 1e-8 for row in report.rows)
            for row in report.rows:
                errors[row.n].append(abs(row.cost - report.reference))
            finals.append(report.final().cost)

        assert abs(np.median(finals) - 1.0) <= 0.05
        medians = [np.median(errors[n]) for n in schedule]
        assert medians[-1] < medians[0]

    def test_reproducible(self):
        args = (Uniform(), Uniform(lo=0.5, hi=2.0), PNorm(p=1.5), [4, 9])
        first = run_approximation(*args, seed=11)
        second = run_approximation(*args, seed=11)
        assert [r.cost for r in first.rows] == [r.cost for r in second.rows]

    def test_row_seeded_by_n(self):
        row = run_row(Uniform(), Uniform(lo=1.0, hi=2.0), SquaredEuclidean(), 12, seed=2)
        report = run_approximation(
            Uniform(), Uniform(lo=1.0, hi=2.0), SquaredEuclidean(), [5, 12], seed=2
        )
        assert report.final().cost == row.cost

    def test_matrix_cost_rejected(self):
        with pytest.raises(UnsupportedSpecError):
            run_approximation(
                Uniform(), Uniform(), ExplicitMatrix(values=[[0.0]]), [1, 2], seed=0
            )

    def test_bad_schedule(self):
        with pytest.raises(ValueError):
            run_approximation(Uniform(), Uniform(), SquaredEuclidean(), [5, 3], seed=0)

    async def test_concurrent_matches_sequential(self):
        args = (Uniform(), Uniform(lo=1.0, hi=2.0), SquaredEuclidean(), [6, 12, 24])
        sequential = run_approximation(*args, seed=5)
        concurrent = await arun_approximation(*args, seed=5)
        assert [(r.n, r.cost, r.dual_gap) for r in concurrent.rows] == [
            (r.n, r.cost, r.dual_gap) for r in sequential.rows
        ]
        assert concurrent.reference == sequential.reference


# --- Report files ---


def test_csv_layout():
    lines = report_to_csv(make_report()).splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    assert lines[1].startswith("10,1.25,0.0,")
    assert lines[-2] == "# seed=7"
    assert lines[-1] == "# reference=1.0"


def test_csv_without_reference():
    text = report_to_csv(make_report(reference=None))
    assert "# reference=" not in text


def test_csv_file_round_trip(tmp_path: Path):
    report = make_report()
    write_report_csv(report, tmp_path / "report.csv")
    assert read_report_csv(tmp_path / "report.csv") == report


def test_csv_round_trip_of_real_run(tmp_path: Path):
    report = run_approximation(
        Uniform(), Uniform(lo=1.0, hi=2.0), SquaredEuclidean(), [4, 8], seed=3
    )
    write_report_csv(report, tmp_path / "report.csv")
    assert read_report_csv(tmp_path / "report.csv") == report


def test_json_file_round_trip(tmp_path: Path):
    report = make_report(reference=None)
    write_report_json(report, tmp_path / "report.json")
    assert read_report_json(tmp_path / "report.json") == report


def test_load_approx_config(tmp_path: Path):
    path = tmp_path / "exp.yaml"
    path.write_text(
        "mu: {kind: uniform}\n"
        "nu: {kind: uniform, lo: 1.0, hi: 2.0}\n"
        "cost: {kind: sqeuclidean}\n"
        "schedule: [10, 100]\n"
        "seed: 42\n"
    )
    config = load_approx_config(path)
    assert config.schedule == (10, 100)
    assert config.seed == 42
    assert config.nu == Uniform(lo=1.0, hi=2.0)


def test_load_approx_config_missing(tmp_path: Path):
    with pytest.raises(FileNotFoundError):
        load_approx_config(tmp_path / "nope.yaml")


def test_load_approx_config_not_mapping(tmp_path: Path):
    path = tmp_path / "exp.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValueError):
        load_approx_config(path)
