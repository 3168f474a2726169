import math

import pytest

from batchgcd import (
    PlantedGroundTruth,
    TimingSeries,
    VerificationError,
    fit_scaling,
    generate_dataset,
    golden_section_minimize,
    run_sweep,
    speedup_series,
    time_algorithm,
)
from batchgcd.bench import (
    read_timings_csv,
    write_fits_csv,
    write_speedup_csv,
    write_timings_csv,
)


class TestTimeAlgorithm:
    def test_returns_cpu_seconds(self):
        modulus_set, truth = generate_dataset(32, 64, 4, seed=1)
        for algorithm in ("binary-tree", "remainder-tree"):
            seconds = time_algorithm(algorithm, modulus_set, truth)
            assert isinstance(seconds, float)
            assert seconds >= 0.0

    def test_unknown_algorithm(self):
        modulus_set, truth = generate_dataset(4, 32, 0, seed=1)
        with pytest.raises(ValueError):
            time_algorithm("naive", modulus_set, truth)

    def test_rejects_sample_on_truth_mismatch(self):
        modulus_set, truth = generate_dataset(16, 64, 4, seed=2)
        a, b, prime = truth.weak_pairs[0]
        lying = PlantedGroundTruth(
            [(a, b, prime + 2)] + truth.weak_pairs[1:], truth.total_shared_factors
        )
        with pytest.raises(VerificationError):
            time_algorithm("binary-tree", modulus_set, lying)


class TestRunSweep:
    def test_structure_and_progress(self):
        calls = []
        binary, remainder = run_sweep(
            [16, 32, 64],
            64,
            4,
            seed=5,
            progress=lambda alg, m, t: calls.append((alg, m)),
        )
        assert binary.algorithm == "binary-tree"
        assert remainder.algorithm == "remainder-tree"
        assert [m for m, _ in binary.samples] == [16, 32, 64]
        assert [m for m, _ in remainder.samples] == [16, 32, 64]
        assert binary.bit_size == remainder.bit_size == 64
        assert binary.num_weak == remainder.num_weak == 4
        assert binary.seed == remainder.seed == 5
        assert len(calls) == 6
        assert all(t >= 0 for _, t in binary.samples + remainder.samples)

    def test_sizes_deduplicated_and_sorted(self):
        binary, _ = run_sweep([32, 16, 32], 64, 2, seed=1)
        assert [m for m, _ in binary.samples] == [16, 32]

    def test_rejects_empty_sizes(self):
        with pytest.raises(ValueError):
            run_sweep([], 64, 2, seed=1)

    def test_rejects_bad_repeats(self):
        with pytest.raises(ValueError):
            run_sweep([16], 64, 2, seed=1, repeats=0)


class TestFitScaling:
    def test_recovers_noiseless_parameters(self):
        xs = [1000, 2000, 5000, 10000, 20000, 50000, 100000]
        fit = fit_scaling([(x, x**1.5 + 2 * x + 3) for x in xs])
        assert abs(fit.a - 1.5) / 1.5 < 1e-6
        assert abs(fit.b - 2.0) / 2.0 < 1e-6
        assert abs(fit.c - 3.0) / 3.0 < 1e-6
        assert fit.residual_sum_squares < 1e-9

    def test_constant_series_is_predicted_exactly(self):
        # y = c0 has the exact representation x^1 - x + c0
        fit = fit_scaling([(x, 7.0) for x in (10, 20, 40, 80, 160)])
        for x in (10, 20, 40, 80, 160):
            assert abs(fit.evaluate(x) - 7.0) < 1e-6
        assert abs(fit.c - 7.0) < 1e-6

    def test_predictions_are_finite(self):
        fit = fit_scaling([(x, 0.001 * x * math.log(x)) for x in (8, 16, 32, 64, 128)])
        assert all(math.isfinite(fit.evaluate(x)) for x in (8, 16, 32, 64, 128))
        assert 0.5 <= fit.a <= 2.5

    @pytest.mark.parametrize(
        "samples",
        [
            [(1, 1), (2, 2), (3, 3)],
            [(0, 1), (2, 2), (3, 3), (4, 4)],
            [(-1, 1), (2, 2), (3, 3), (4, 4)],
            [(1, 0), (2, 2), (3, 3), (4, 4)],
            [(2, 1), (2, 2), (3, 3), (4, 4)],
        ],
    )
    def test_rejects_bad_samples(self, samples):
        with pytest.raises(ValueError):
            fit_scaling(samples)


class TestGoldenSection:
    def test_finds_the_minimum(self):
        # the quadratic is float-flat within ~2e-9 of its minimum, so the
        # bracket can wander there no matter how small the tolerance
        mid, _ = golden_section_minimize(lambda x: (x - 1.3) ** 2 + 0.5, 0.5, 2.5, 1e-10)
        assert abs(mid - 1.3) < 1e-6

    def test_best_so_far_never_increases(self):
        _, trace = golden_section_minimize(lambda x: (x - 2.0) ** 4, 0.5, 2.5, 1e-8)
        assert all(later <= earlier for earlier, later in zip(trace, trace[1:]))

    def test_rejects_empty_interval(self):
        with pytest.raises(ValueError):
            golden_section_minimize(lambda x: x, 2.0, 2.0, 1e-8)


class TestSpeedupSeries:
    def test_identical_series_means_ratio_one(self):
        samples = [(16, 0.5), (32, 1.0)]
        binary = TimingSeries("binary-tree", 64, 4, 0, list(samples))
        remainder = TimingSeries("remainder-tree", 64, 4, 0, list(samples))
        speedup = speedup_series(binary, remainder)
        assert speedup.points == [(16, 1.0), (32, 1.0)]
        assert speedup.mean_ratio == 1.0

    def test_rejects_mismatched_grids(self):
        binary = TimingSeries("binary-tree", 64, 4, 0, [(16, 0.5)])
        remainder = TimingSeries("remainder-tree", 64, 4, 0, [(32, 1.0)])
        with pytest.raises(ValueError):
            speedup_series(binary, remainder)

    def test_rejects_mismatched_parameters(self):
        binary = TimingSeries("binary-tree", 64, 4, 0, [(16, 0.5)])
        remainder = TimingSeries("remainder-tree", 64, 8, 0, [(16, 1.0)])
        with pytest.raises(ValueError):
            speedup_series(binary, remainder)


class TestCsvRoundTrips:
    def test_timings_round_trip(self, tmp_path):
        path = tmp_path / "t.csv"
        series = [
            TimingSeries("binary-tree", 64, 4, 9, [(16, 0.25), (32, 0.5)]),
            TimingSeries("remainder-tree", 64, 4, 9, [(16, 0.75), (32, 1.5)]),
        ]
        write_timings_csv(path, series)
        loaded = read_timings_csv(path)
        assert sorted(loaded, key=lambda s: s.algorithm) == series
        header = path.read_text().splitlines()[0]
        assert header == "algorithm,bits,weak,M,cpu_seconds,seed"

    def test_read_rejects_missing_columns(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("algorithm,bits,weak\nbinary-tree,64,4\n")
        with pytest.raises(ValueError):
            read_timings_csv(path)

    def test_read_rejects_malformed_rows(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text(
            "algorithm,bits,weak,M,cpu_seconds,seed\nbinary-tree,64,4,not-a-number,0.5,0\n"
        )
        with pytest.raises(ValueError):
            read_timings_csv(path)

    def test_fits_csv_format(self, tmp_path):
        path = tmp_path / "f.csv"
        series = TimingSeries("binary-tree", 1024, 100, 0, [(5000, 1.0)])
        fit = fit_scaling([(x, x**1.2 + 0.5 * x + 2) for x in (8, 16, 32, 64)])
        write_fits_csv(path, [(series, fit)])
        lines = path.read_text().splitlines()
        assert lines[0] == "algorithm,bits,weak,a,b,c,rss"
        row = lines[1].split(",")
        assert row[0] == "binary-tree"
        assert abs(float(row[3]) - fit.a) == 0.0

    def test_speedup_csv_format(self, tmp_path):
        path = tmp_path / "s.csv"
        binary = TimingSeries("binary-tree", 64, 4, 0, [(16, 0.5)])
        remainder = TimingSeries("remainder-tree", 64, 4, 0, [(16, 1.5)])
        write_speedup_csv(path, speedup_series(binary, remainder))
        lines = path.read_text().splitlines()
        assert lines[0] == "M,ratio"
        m, ratio = lines[1].split(",")
        assert int(m) == 16 and abs(float(ratio) - 3.0) < 1e-12
