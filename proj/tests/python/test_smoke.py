"""Smoke tests for the compiled rewardlab module."""

import math

import pytest

import rewardlab as rl


def test_parse_completion():
    p = rl.parse_completion("<reasoning>2+2=4</reasoning><answer>4</answer>")
    assert p.has_reasoning_tag and p.has_answer_tag
    assert p.reasoning == "2+2=4"
    assert p.answer_numeric == pytest.approx(4.0)

    empty = rl.parse_completion("no tags")
    assert empty.answer_text is None
    assert empty.answer_numeric is None


def test_extract_number():
    assert rl.extract_number("The answer is $1,234.50") == pytest.approx(1234.50)
    assert rl.extract_number("no digits") is None


def test_hard_reward():
    pred = rl.parse_completion("<reasoning>r</reasoning><answer>4</answer>")
    truth = rl.GroundTruth.from_text("4")
    bd = rl.hard_reward(pred, truth)
    assert bd.total == 1.0
    assert bd.components["correct"] == 1.0
    assert bd.components["format"] == pytest.approx(0.2)


def test_continuous_reward_components():
    pred = rl.parse_completion("<reasoning>add 40 + 2 = 42</reasoning><answer>42</answer>")
    truth = rl.GroundTruth.from_text("42")
    bd = rl.continuous_reward(pred, truth, rl.SegmentLosses(0.0, 0.0, 0.0))
    assert 0.0 <= bd.total <= 1.0
    assert bd.components["correctness"] == pytest.approx(1.0)
    assert bd.components["perplexity"] == pytest.approx(1.0)

    flagged = rl.continuous_reward(pred, truth, None)
    assert flagged.missing_losses
    assert flagged.components["perplexity"] == 0.0


def test_schedule_weights():
    cfg = rl.ScheduleConfig()  # 50..150 cont-to-hard
    assert rl.weights_at(cfg, 0) == (0.0, 1.0)
    assert rl.weights_at(cfg, 100) == (0.5, 0.5)
    assert rl.weights_at(cfg, 150) == (1.0, 0.0)


def test_normalize_group():
    adv = rl.normalize_group([1.0, 0.0, 0.0, 1.0])
    assert adv.mean == pytest.approx(0.5)
    assert adv.advantages == pytest.approx([1.0, -1.0, -1.0, 1.0])
    flat = rl.normalize_group([0.7, 0.7, 0.7])
    assert flat.advantages == [0.0, 0.0, 0.0]
    with pytest.raises(Exception):
        rl.normalize_group([])


def test_run_training_and_analytics():
    cfg = rl.TrainRunConfig()
    cfg.total_steps = 30
    cfg.group_size = 4
    cfg.learning_rate = 0.05
    log = rl.run_training(cfg)
    assert len(log.records) == 30
    assert log.records[0].step == 1

    again = rl.run_training(cfg)
    assert log.to_jsonl() == again.to_jsonl()

    assert rl.stability([0.0, 1.0, 0.0, 1.0]) == pytest.approx(0.8)
    summary = rl.summarize_run(log)
    assert 0.0 <= summary.final_accuracy <= 1.0

    table = rl.heatmap_export([log])
    assert table.row_labels == ["hard"]
    assert len(table.values[0]) == len(table.columns)


def test_compare_runs():
    r = rl.compare_runs([0.8, 0.9, 1.0, 1.1], [0.5, 0.6, 0.7, 0.8])
    assert r.t == pytest.approx(3.2863353450309964, abs=1e-9)
    assert r.cohens_d == pytest.approx(2.3237900077244502, abs=1e-9)
    assert r.p == pytest.approx(0.016689984315831463, abs=1e-6)
    assert r.effect_label == rl.EffectLabel.Large


def test_config_presets():
    cfg = rl.preset_config("paper-sec4")
    assert cfg.schedule.t_start == 50
    assert cfg.train.group_size == 4
    text = rl.config_to_text(cfg)
    assert "[schedule]" in text


def test_gestalt_similarity():
    assert rl.gestalt_similarity("the cat sat", "the cat ran") == pytest.approx(18 / 22)
    assert math.isclose(rl.word_overlap("a b", "b c"), 1 / 3)
