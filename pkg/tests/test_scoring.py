import dataclasses
import json
import math
import random

import pytest

from kwb.errors import ConfigError, EmptySketchError, TemplateNotFoundError
from kwb.scoring import (
    METRIC_IDS,
    ThresholdConfig,
    assess_character,
    quiz_summary,
    report_obj,
    score_metric,
    serialize_report,
)

from conftest import delete_mutation, reverse_mutation, swap_mutation


def test_default_config_matches_shipped_file(cfg):
    assert cfg == ThresholdConfig()


def test_config_rejects_inverted_regions():
    with pytest.raises(ConfigError):
        ThresholdConfig(ratio_three_star_min=0.5, ratio_two_star_min=0.8)
    with pytest.raises(ConfigError):
        ThresholdConfig(closeness_three_star_max=40.0)


def test_config_file_roundtrip(tmp_path, cfg):
    path = tmp_path / "t.json"
    cfg.to_file(path)
    assert ThresholdConfig.from_file(path) == cfg


@pytest.mark.parametrize("metric,raw,stars", [
    ("stroke_match", 1.0, 3),
    ("stroke_match", 0.9, 3),
    ("stroke_match", 0.89, 2),
    ("stroke_match", 0.6, 2),
    ("stroke_match", 0.5, 1),
    ("stroke_order", 0.0, 1),
    ("stroke_edit", 0, 3),
    ("stroke_edit", 1, 2),
    ("stroke_edit", 2, 2),
    ("stroke_edit", 3, 1),
    ("stroke_closeness", 0.0, 3),
    ("stroke_closeness", 12.0, 3),
    ("stroke_closeness", 30.0, 2),
    ("stroke_closeness", 30.1, 1),
    ("stroke_length", 1.0, 3),
    ("stroke_length", 0.75, 3),
    ("stroke_length", 0.6, 2),
    ("stroke_length", 2.5, 1),
    ("symbol_speed", 1.33, 3),
    ("symbol_speed", 0.4, 1),
])
def test_score_metric_regions(metric, raw, stars, cfg):
    assert score_metric(metric, raw, cfg) == stars


def test_score_metric_reduces_lists(cfg):
    assert score_metric("stroke_length", [1.0, 1.0, 0.7], cfg) == 3  # mean 0.9
    assert score_metric("stroke_closeness", [], cfg) == 1
    assert score_metric("stroke_speed", [None, 1.0], cfg) == 3  # sentinel skipped
    assert score_metric("stroke_closeness", None, cfg) == 1


def test_score_metric_unknown_id(cfg):
    with pytest.raises(ValueError):
        score_metric("stroke_style", 1.0, cfg)


def test_widening_regions_never_lowers_stars(cfg):
    rng = random.Random(61)
    wider = dataclasses.replace(
        cfg,
        ratio_three_star_min=0.8,
        ratio_two_star_min=0.4,
        closeness_three_star_max=20.0,
        closeness_two_star_max=45.0,
        band_three_star=(0.6, 1.6),
        band_two_star=(0.3, 3.0),
        edit_three_star_max=1,
        edit_two_star_max=4,
    )
    for _ in range(300):
        mid = rng.choice(METRIC_IDS)
        if mid == "stroke_edit":
            raw = rng.randint(0, 6)
        elif mid == "stroke_closeness":
            raw = rng.uniform(0, 60)
        else:
            raw = rng.uniform(0, 2.5)
        assert score_metric(mid, raw, wider) >= score_metric(mid, raw, cfg)


def test_report_has_all_ten_metrics(store, cfg):
    t = store.lookup_template("川")
    report = assess_character(t.raw, None, "川", store, cfg)
    assert tuple(m.id for m in report.metrics) == METRIC_IDS


def test_self_assessment_all_three_stars(store, cfg):
    for label in store.labels():
        t = store.lookup_template(label)
        report = assess_character(t.raw, None, label, store, cfg)
        assert all(m.stars == 3 for m in report.metrics), label


def test_unknown_label_and_empty_sketch(store, cfg):
    t = store.lookup_template("一")
    with pytest.raises(TemplateNotFoundError):
        assess_character(t.raw, None, "間", store, cfg)
    empty = dataclasses.replace(t.raw, strokes=())
    with pytest.raises(EmptySketchError):
        assess_character(empty, None, "一", store, cfg)


def test_config_store_mismatch_detected(store):
    bad = ThresholdConfig(resample_n=32)
    t = store.lookup_template("一")
    with pytest.raises(ConfigError):
        assess_character(t.raw, None, "一", store, bad)


def test_swap_mutation_degrades_order_only(store, cfg):
    t = store.lookup_template("川")
    n = t.stroke_count
    report = assess_character(swap_mutation(t.raw, 0), None, "川", store, cfg)
    assert report.metric("stroke_order").raw == (n - 2) / n
    assert report.metric("stroke_match").stars == 3
    assert report.metric("stroke_valid").stars == 3
    assert report.metric("stroke_exist").stars == 3


def test_delete_mutation_degrades_valid_not_exist(store, cfg):
    t = store.lookup_template("中")
    n = t.stroke_count
    report = assess_character(delete_mutation(t.raw, 1), None, "中", store, cfg)
    assert report.metric("stroke_valid").raw == (n - 1) / n
    assert report.metric("stroke_match").raw == (n - 1) / n
    assert report.metric("stroke_exist").raw == 1.0
    assert report.metric("stroke_exist").stars == 3


def test_overlay_tags(store, cfg):
    t = store.lookup_template("三")
    base = assess_character(t.raw, None, "三", store, cfg)
    assert all(s.tags == ("matched",) for s in base.overlay)

    deleted = assess_character(delete_mutation(t.raw, 1), None, "三", store, cfg)
    missing = [s for s in deleted.overlay if "missing" in s.tags]
    assert len(missing) == 1 and missing[0].model_index == 1

    reversed_rep = assess_character(reverse_mutation(t.raw, 0), None, "三", store, cfg)
    tagged = [s for s in reversed_rep.overlay if "direction-wrong" in s.tags]
    assert [s.input_index for s in tagged] == [0]


def test_report_serialization_schema_and_determinism(store, cfg):
    t = store.lookup_template("日")
    a = serialize_report(assess_character(t.raw, None, "日", store, cfg))
    b = serialize_report(assess_character(t.raw, None, "日", store, cfg))
    assert a == b
    doc = json.loads(a)
    assert list(doc) == ["label", "metrics", "overlay"]
    assert len(doc["metrics"]) == 10
    assert set(doc["metrics"][0]) == {"id", "raw", "stars"}
    assert set(doc["overlay"]) == {"strokes", "colorKey"}
    tags = {tag for s in doc["overlay"]["strokes"] for tag in s["tags"]}
    assert tags <= set(doc["overlay"]["colorKey"])


def test_quiz_summary_aggregates(store, cfg):
    reports = []
    for label in ("一", "二", "三"):
        t = store.lookup_template(label)
        reports.append(assess_character(t.raw, None, label, store, cfg))
    q = quiz_summary("L1", reports)
    assert q.overall_mean == 3.0
    assert q.overall_display == "3.0"
    assert all(m.stars_mean == 3.0 for m in q.metric_means)

    # mixing a degraded report moves the mean
    degraded = assess_character(swap_mutation(store.lookup_template("三").raw, 0), None, "三", store, cfg)
    q2 = quiz_summary("L1", reports[:1] + [degraded])
    order_mean = next(m for m in q2.metric_means if m.id == "stroke_order")
    expected = math.fsum([3, degraded.metric("stroke_order").stars]) / 2
    assert order_mean.stars_mean == expected


def test_quiz_summary_display_rounding_half_up():
    from kwb.scoring import _display

    assert _display(2.25) == "2.3"
    assert _display(2.24) == "2.2"
    assert _display(1.05) == "1.1"


def test_quiz_summary_rejects_empty():
    with pytest.raises(ValueError):
        quiz_summary("L1", [])


def test_quiz_summary_recomputable(store, cfg):
    reports = []
    for label in ("口", "日", "川", "山"):
        t = store.lookup_template(label)
        reports.append(assess_character(t.raw, None, label, store, cfg))
    q = quiz_summary("L3", reports)
    for m in q.metric_means:
        stars = [r.metric(m.id).stars for r in reports]
        assert m.stars_mean == math.fsum(stars) / len(stars)


def test_report_obj_raw_matches_star_scoring(store, cfg):
    t = store.lookup_template("人")
    report = assess_character(reverse_mutation(t.raw, 1), None, "人", store, cfg)
    for m in report.metrics:
        assert m.stars == score_metric(m.id, m.raw, cfg)
    doc = report_obj(report)
    for entry, m in zip(doc["metrics"], report.metrics):
        assert entry["raw"] == m.raw and entry["stars"] == m.stars
