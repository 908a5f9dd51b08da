import pathlib

import pytest

import ogw

SCENARIOS = pathlib.Path(__file__).resolve().parents[2] / "scenarios"


def test_cantor_round_trip():
    for n in range(200):
        j, i = ogw.cantor_unpair(n)
        assert ogw.cantor_pair(j, i) == n


def test_streams_and_solvers():
    assert ogw.stream_take("1,0:p 2,3", 5) == [1, 0, 2, 3, 2]
    assert ogw.lpo("c 1") == 1
    assert ogw.lpo("5,0:c 3") == 0
    assert ogw.lpo_star(["c 1", "1,0:c 1"]) == [1, 0]
    assert ogw.min("7,3:c 5") == 3
    assert ogw.lim2("0,1:c 1") == 1
    with pytest.raises(ValueError):
        ogw.lim2("p 0,1")
    with pytest.raises(ValueError):
        ogw.stream_take("x 1", 3)


def test_orders():
    assert ogw.zx_compare([5, 0], [0, 1]) == -1
    assert ogw.zx_compare([0, 2], [0, 2]) == 0
    assert ogw.kb_compare([0, 3], [0]) == -1
    assert ogw.kb_compare([1], [0]) == 1


def test_corpus_epsilon_matches_wf():
    labels = ogw.corpus_labels()
    assert len(labels) == 10
    for label in labels:
        assert ogw.group_epsilon(label) == ogw.wf(label)


def test_arch_representatives():
    reps = ogw.arch_representatives(2, 8, 2)
    assert len(reps) == 3 and reps[0] == 0


def test_reductions():
    assert ogw.run_wf_reduction("wf<=og_epsilon", "zigzag")["answer"] == [1]
    assert ogw.run_wf_reduction("og_epsilon<=wf", "lopsided")["answer"] == [0]
    r = ogw.run_lpo_star(["c 1", "1,0:c 1"])
    assert r["answer"] == [2, 1, 0]
    assert any(line.startswith("oracle") for line in r["transcript"])
    assert ogw.run_chi("m(c 0;c 1|c 1)")["sigma2"] is True
    with pytest.raises(RuntimeError):
        ogw.run_lpo_star(["c 1", "c 1", "c 1"], budget=2)


def test_falsify():
    r = ogw.falsify("lpo_pair_vs_wf", "constant", rounds=1)
    assert r["found"] and r["round"] == 1
    r = ogw.falsify("lim2_pair_vs_wf_min", "min-ignoring", rounds=2)
    assert r["found"] and r["round"] <= 2


def test_scenarios(tmp_path):
    a = ogw.run_scenario(str(SCENARIOS / "reductions.scn"), str(tmp_path / "a"))
    b = ogw.run_scenario(str(SCENARIOS / "reductions.scn"), str(tmp_path / "b"))
    assert a == b and a.endswith("ok\n")
    for f in (tmp_path / "a").iterdir():
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()
    with pytest.raises(AssertionError):
        ogw.run_scenario(str(SCENARIOS / "wrong-epsilon.scn"))
