import pytest

from hankelorder import ExperimentSpec, list_experiments, run_experiment

EXPECTED_NAMES = [
    "fig2_first_order",
    "fig3_pole_proximity",
    "fig1_table1_y5",
    "fig4_high_order_sin",
    "fig5_high_order_exp",
    "sec33_nonhomogeneous",
    "offset_effect",
    "echelon_effect",
]


def parse_sections(text: str) -> dict[str, list[list[str]]]:
    """Split an experiment CSV into {section name: data rows (split on commas)}."""
    sections: dict[str, list[list[str]]] = {}
    current = None
    expect_header = False
    for line in text.splitlines():
        if line.startswith("# section: "):
            current = line.removeprefix("# section: ").strip()
            sections[current] = []
            expect_header = True
        elif line.startswith("#"):
            continue
        elif current is not None:
            if expect_header:
                expect_header = False  # column header row
            else:
                sections[current].append(line.split(","))
    return sections


class TestRegistry:
    def test_contains_fig2(self):
        assert "fig2_first_order" in [name for name, _, _ in list_experiments()]

    def test_count_is_eight(self):
        assert len(list_experiments()) == 8

    def test_stable_order(self):
        assert [name for name, _, _ in list_experiments()] == EXPECTED_NAMES

    def test_every_name_round_trips_within_time_budget(self, tmp_path):
        import time

        for name, _, _ in list_experiments():
            start = time.perf_counter()
            summary = run_experiment(ExperimentSpec(name), tmp_path / f"{name}.csv")
            elapsed = time.perf_counter() - start
            assert summary.status == "ok"
            assert (tmp_path / f"{name}.csv").exists()
            assert elapsed < 60.0, name

    def test_unknown_name_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="fig2_first_order"):
            run_experiment(ExperimentSpec("bogus"), tmp_path / "x.csv")

    def test_unknown_parameter_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="nope"):
            run_experiment(
                ExperimentSpec("fig2_first_order", {"nope": 1}), tmp_path / "x.csv"
            )


class TestHeaders:
    def test_parameters_and_seed_echoed(self, tmp_path):
        path = tmp_path / "fig2.csv"
        run_experiment(ExperimentSpec("fig2_first_order"), path)
        text = path.read_text()
        assert "# experiment: fig2_first_order" in text
        assert "# seed: 20" in text
        assert "# param count: 40" in text
        assert "# param q: 0.5" in text
        assert "# artifact_version:" in text

    def test_override_echoed(self, tmp_path):
        path = tmp_path / "fig1.csv"
        run_experiment(ExperimentSpec("fig1_table1_y5", {"p_max": 12}), path)
        assert "# param p_max: 12" in path.read_text()

    def test_seed_override_echoed(self, tmp_path):
        path = tmp_path / "fig3.csv"
        run_experiment(ExperimentSpec("fig3_pole_proximity", seed=77), path)
        assert "# seed: 77" in path.read_text()


class TestFig2:
    def test_every_row_has_rank_one(self, tmp_path):
        path = tmp_path / "fig2.csv"
        summary = run_experiment(ExperimentSpec("fig2_first_order"), path)
        assert summary.headline == "order=1"
        rows = parse_sections(path.read_text())["sweep"]
        assert len(rows) == 9
        assert all(row[1] == "1" for row in rows)


class TestFig3:
    def test_grid_shape_and_q0(self, tmp_path):
        path = tmp_path / "fig3.csv"
        summary = run_experiment(ExperimentSpec("fig3_pole_proximity"), path)
        assert summary.headline.startswith("q0=")
        q0 = int(summary.headline.removeprefix("q0="))
        assert q0 > 8
        rows = parse_sections(path.read_text())["rank_grid"]
        assert len(rows) == 3 * 16 * 7  # noise levels x q x n

    def test_noise_free_rows_have_rank_two(self, tmp_path):
        path = tmp_path / "fig3.csv"
        run_experiment(ExperimentSpec("fig3_pole_proximity"), path)
        rows = parse_sections(path.read_text())["rank_grid"]
        clean = [r for r in rows if float(r[0]) == 0.0]
        assert all(int(r[3]) in (1, 2) for r in clean)
        assert any(int(r[3]) == 2 for r in clean)


class TestFig1Table1:
    def test_headline_order_five_and_sections(self, tmp_path):
        path = tmp_path / "fig1.csv"
        summary = run_experiment(ExperimentSpec("fig1_table1_y5"), path)
        assert summary.headline == "order=5"
        sections = parse_sections(path.read_text())
        assert set(sections) == {"hokalman_sweep", "aic", "covdet"}
        assert len(sections["aic"]) == 10
        assert len(sections["covdet"]) == 7


class TestFig5:
    def test_extended_condition_is_monotone(self, tmp_path):
        path = tmp_path / "fig5.csv"
        run_experiment(ExperimentSpec("fig5_high_order_exp"), path)
        rows = parse_sections(path.read_text())["condition_extended"]
        conds = [float(r[1]) for r in rows]
        assert [int(r[0]) for r in rows] == list(range(2, 11))
        assert all(b > a for a, b in zip(conds, conds[1:]))
        assert conds[-1] > 1e20  # far beyond the float64 SVD saturation point


class TestSec33:
    def test_all_three_ranks_are_two(self, tmp_path):
        path = tmp_path / "sec33.csv"
        summary = run_experiment(ExperimentSpec("sec33_nonhomogeneous"), path)
        assert summary.headline == "rank=2;aug_bottom=2;aug_right=2"
        rows = parse_sections(path.read_text())["ranks"]
        assert [(r[0], r[3]) for r in rows] == [
            ("unaugmented", "2"),
            ("augmented_bottom", "2"),
            ("augmented_right", "2"),
        ]


class TestOffsetEffect:
    def test_onsets_reported_for_every_trial(self, tmp_path):
        path = tmp_path / "offset.csv"
        summary = run_experiment(ExperimentSpec("offset_effect"), path)
        sections = parse_sections(path.read_text())
        assert len(sections["onsets"]) == 50
        favourable = int(summary.headline.split(":")[1].split("/")[0])
        assert favourable > 25

    def test_noise_free_sweeps_show_orders_one_and_two(self, tmp_path):
        path = tmp_path / "offset.csv"
        run_experiment(ExperimentSpec("offset_effect"), path)
        rows = parse_sections(path.read_text())["noise_free_sweep"]
        plain = [int(r[2]) for r in rows if r[0] == "plain"]
        offset = [int(r[2]) for r in rows if r[0] == "offset"]
        assert plain == [1] * 9
        assert offset == [2] * 9


class TestEchelonEffect:
    def test_comparison_rows(self, tmp_path):
        path = tmp_path / "echelon.csv"
        summary = run_experiment(ExperimentSpec("echelon_effect"), path)
        rows = parse_sections(path.read_text())["comparison"]
        assert len(rows) == 9
        assert summary.headline.startswith("svd_rank=")


class TestDeterminism:
    @pytest.mark.parametrize("name", ["fig3_pole_proximity", "offset_effect", "echelon_effect"])
    def test_noisy_experiments_are_byte_identical_across_reruns(self, tmp_path, name):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run_experiment(ExperimentSpec(name), a)
        run_experiment(ExperimentSpec(name), b)
        assert a.read_bytes() == b.read_bytes()
