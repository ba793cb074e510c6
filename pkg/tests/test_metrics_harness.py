import numpy as np
import pytest

from truthful_nsga.benchmarks import BenchmarkSpec
from truthful_nsga.cli import main
from truthful_nsga.core import ConfigError
from truthful_nsga.experiments import (
    CSV_HEADER,
    ExperimentConfig,
    Cell,
    derive_seed,
    format_csv,
    get_preset,
    read_csv,
    run_preset,
    with_overrides,
)
from truthful_nsga.metrics import aggregate, best_possible_mei, mei, mei_bound, median, nearest_rank

from oracles import onemax_f1_values_sorted


def omm_values(f1, n):
    return np.array([(a, n - a) for a in f1])


@pytest.mark.parametrize(
    "f1, n, expected",
    [
        (range(11), 10, 1),
        ([0, 3, 7, 10], 10, 4),
        ([0, 10], 10, 10),
        ([0, 0, 10, 3, 3, 7], 10, 4),
        ([5], 10, 5),
    ],
)
def test_mei_examples(f1, n, expected):
    assert mei(omm_values(f1, n), n) == expected


def test_mei_matches_gap_oracle():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(1, 60))
        f1 = rng.integers(0, n + 1, size=rng.integers(1, 20))
        v = onemax_f1_values_sorted([(a, n - a) for a in f1], n)
        expected = max(b - a for a, b in zip(v, v[1:]))
        assert mei(omm_values(f1, n), n) == expected


def test_mei_bounds():
    assert mei_bound(101, 26) == pytest.approx(8.08)
    assert mei_bound(10, 30) == 1.0
    assert best_possible_mei(101, 26) == 5


def test_order_statistics():
    assert median([1, 2, 3]) == 2
    assert median([1, 2, 3, 4]) == 2.5
    data = list(range(1, 21))
    assert nearest_rank(data, 0.25) == 5
    assert nearest_rank(data, 0.75) == 15


def _rows(values, **extra):
    base = dict(preset="p", algo="a", benchmark="omm", n=10, m=2, k="", N=11, metric="evaluations_to_cover", generation="")
    base.update(extra)
    return [dict(base, run=i, seed=100 + i, value=v) for i, v in enumerate(values)]


def test_aggregate_groups_and_statistics():
    rows = _rows(range(1, 21)) + _rows([7, 9], n=20)
    q1 = aggregate(rows, "q1")
    assert [(r["n"], r["value"]) for r in q1] == [(10, "5"), (20, "7")]
    q3 = aggregate(rows, "q3")
    assert [r["value"] for r in q3] == ["15", "9"]
    med = aggregate(rows, "median")
    assert [r["value"] for r in med] == ["10.5", "8"]
    assert all(r["metric"] == "evaluations_to_cover:median" and r["run"] == "" for r in med)


def test_aggregate_skips_empty_values_and_groups():
    rows = _rows(["", 4, ""]) + _rows(["", ""], n=30)
    out = aggregate(rows, "median")
    assert len(out) == 1 and out[0]["value"] == "4"


def test_aggregate_rejects_unknown_statistic():
    with pytest.raises(ValueError):
        aggregate(_rows([1]), "mean")


def test_derive_seed_depends_on_every_part():
    base = derive_seed(0, "fig1", "nsga2-t", 25, 8, 0)
    assert base == derive_seed(0, "fig1", "nsga2-t", 25, 8, 0)
    others = {
        derive_seed(1, "fig1", "nsga2-t", 25, 8, 0),
        derive_seed(0, "fig2", "nsga2-t", 25, 8, 0),
        derive_seed(0, "fig1", "gsemo", 25, 8, 0),
        derive_seed(0, "fig1", "nsga2-t", 26, 8, 0),
        derive_seed(0, "fig1", "nsga2-t", 25, 8, 1),
    }
    assert base not in others and len(others) == 5
    assert 0 <= base < 2**64


def _tiny_cover():
    return ExperimentConfig(
        "tiny", "omm", ns=(6, 8), cells=(Cell("nsga2-t", 1), Cell("gsemo", None)), runs=3, budget=20_000
    )


def test_cover_preset_rows_and_determinism():
    cfg = _tiny_cover()
    text = format_csv(run_preset(cfg))
    assert text == format_csv(run_preset(cfg))
    rows = read_csv(text)
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 2 * 2 * 3
    assert {r["metric"] for r in rows} == {"evaluations_to_cover"}
    assert all(r["value"] for r in rows)
    assert text.count("\r") == 0


def test_parallel_matches_serial():
    cfg = _tiny_cover()
    assert format_csv(run_preset(cfg, jobs=2)) == format_csv(run_preset(cfg))


def test_mei_preset_rows_are_anchored():
    cfg = ExperimentConfig(
        "tiny-mei", "omm", ns=(21,), cells=(Cell("nsga2-t-seq", 1 / 4),), runs=2,
        kind="mei", windows=((1, 5), (40, 42)),
    )
    rows = run_preset(cfg)
    anchors = [r for r in rows if r["metric"] == "extremes_generation"]
    assert len(anchors) == 2 and all(isinstance(r["value"], int) for r in anchors)
    gens = [r["generation"] for r in rows if r["metric"] == "mei" and r["run"] == 0]
    assert gens == [1, 2, 3, 4, 5, 40, 41, 42]
    N = 6
    assert all(best_possible_mei(21, N) <= r["value"] <= 21 for r in rows if r["metric"] == "mei")


def test_presets_exist_and_validate():
    for name in ("fig1", "fig1-small", "fig2", "fig2-small", "fig3", "fig3-small"):
        assert get_preset(name).name == name
    fig3 = get_preset("fig3")
    sizes = sorted({c.population_size(BenchmarkSpec("omm", 601)) for c in fig3.cells})
    assert sizes == [76, 151, 301]
    assert fig3.windows == ((1, 100), (3001, 3100))
    small = get_preset("fig3-small")
    assert {c.population_size(BenchmarkSpec("omm", 61)) for c in small.cells} == {16}
    with pytest.raises(ConfigError):
        get_preset("fig9")
    with pytest.raises(ConfigError):
        ExperimentConfig("x", "omm", ns=(5,), cells=(), kind="mei", windows=((5, 3),))
    assert with_overrides(small, runs=None, master_seed=4).master_seed == 4


def test_cli_run_and_aggregate(tmp_path, capsys):
    out = tmp_path / "r.csv"
    argv = ["run", "--algo", "nsga2-t", "--benchmark", "omm", "--n", "8", "--runs", "3", "--seed", "7", "--out", str(out)]
    assert main(argv) == 0
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first
    assert len(read_csv(first.decode())) == 3
    assert main(argv[:-2] + ["--aggregate"]) == 0
    stats = read_csv(capsys.readouterr().out)
    assert [r["metric"] for r in stats] == [
        "evaluations_to_cover:median", "evaluations_to_cover:q1", "evaluations_to_cover:q3"
    ]


def test_cli_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("algo: gsemo\nbenchmark: lotz\nn: 6\nruns: 2\n")
    assert main(["run", "--config", str(cfg)]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert {r["algo"] for r in rows} == {"gsemo"} and len(rows) == 2
    # command-line flags win over the file
    assert main(["run", "--config", str(cfg), "--runs", "1"]) == 0
    assert len(read_csv(capsys.readouterr().out)) == 1
    cfg.write_text("colour: blue\n")
    assert main(["run", "--config", str(cfg)]) == 2


def test_cli_errors(capsys):
    assert main(["preset", "no-such-preset"]) == 2
    assert "unknown preset" in capsys.readouterr().err
    assert main(["run", "--benchmark", "ojzj", "--n", "6"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["run", "--algo", "moead"])
    assert exc.value.code == 2


def test_cli_list_presets(capsys):
    assert main(["list-presets"]) == 0
    assert "fig3-small" in capsys.readouterr().out
