import io
import json
import logging

import pytest

from radscales import (
    AnalysisConfig,
    DetectionConfig,
    FoundationMap,
    WindowSpec,
    ingest_events,
    parse_mfd_dic,
    parse_timestamp,
    read_membership,
    run_speech_analysis,
    run_structural_analysis,
)
from radscales.errors import DuplicateAssignmentError
from radscales.pareto import CriterionSpec, Direction, ParetoPoint, pareto_frontier
from radscales.pipeline import detect_membership, emit_plot_data

from .streams import TEST_DIC, write_stream


@pytest.fixture(scope="module")
def stream(tmp_path_factory):
    base = tmp_path_factory.mktemp("stream")
    windows = write_stream(base / "events.jsonl")
    with (base / "events.jsonl").open(encoding="utf-8") as fh:
        log = ingest_events(fh)
    return log, windows


@pytest.fixture(scope="module")
def analysis_config():
    return AnalysisConfig(min_community_size=10, detection=DetectionConfig(seed=0))


@pytest.fixture(scope="module")
def membership(stream, analysis_config):
    log, windows = stream
    detection_window = WindowSpec("det", windows[0].start, windows[2].end)
    mapping, result = detect_membership(log, analysis_config, detection_window)
    return mapping, result


def test_detection_recovers_planted_groups(membership):
    mapping, result = membership
    by_community = {}
    for user, community in mapping.items():
        by_community.setdefault(community, set()).add(user[0])
    # each detected community is exactly one planted group
    assert sorted(len(v) for v in by_community.values()) == [1, 1, 1]
    assert all(b >= a for a, b in zip(result.pass_modularity, result.pass_modularity[1:]))


def test_structural_reports_shape(stream, analysis_config, membership):
    log, windows = stream
    mapping, _ = membership
    reports = run_structural_analysis(log, windows, config=analysis_config, membership=mapping)
    assert [r.window_label for r in reports] == ["w1", "w2", "w3", "w4"]
    for report in reports:
        assert not report.degenerate
        assert len(report.communities) == 3
        for community in report.communities:
            assert community.size >= report.parameters["resolvedMinSize"]
            assert set(community.pds_sizes) == {0.5, 0.75, 1.0}
        assert set(report.frontier) <= {c.label for c in report.communities}


def test_structural_frontier_self_consistent(stream, analysis_config, membership):
    log, windows = stream
    mapping, _ = membership
    reports = run_structural_analysis(log, windows, config=analysis_config, membership=mapping)
    criteria = (
        CriterionSpec("dModularity", Direction.HIGHER_IS_MORE_RADICAL),
        CriterionSpec("pdsSize", Direction.LOWER_IS_MORE_RADICAL),
    )
    for report in reports:
        points = [
            ParetoPoint(label=c.label, values=(c.d_modularity, float(c.pds_sizes[0.75])))
            for c in report.communities
            if c.d_modularity is not None
        ]
        assert set(report.frontier) == pareto_frontier(points, criteria)
        flagged = {c.label for c in report.communities if c.on_frontier}
        assert flagged == set(report.frontier)


def test_planted_radical_community_unique_optimum_late(stream, analysis_config, membership):
    log, windows = stream
    mapping, _ = membership
    reports = run_structural_analysis(log, windows, config=analysis_config, membership=mapping)
    for report in reports[-2:]:
        assert len(report.frontier) == 1
        winner = report.frontier[0]
        winner_users = {u for u, c in mapping.items() if c == winner}
        assert all(u.startswith("a") for u in winner_users)


def test_detection_window_path_matches_membership_path(stream, analysis_config, membership):
    log, windows = stream
    mapping, _ = membership
    detection_window = WindowSpec("det", windows[0].start, windows[2].end)
    via_detection = run_structural_analysis(
        log, windows, config=analysis_config, detection_window=detection_window
    )
    via_membership = run_structural_analysis(
        log, windows, config=analysis_config, membership=mapping
    )
    assert [r.frontier for r in via_detection] == [r.frontier for r in via_membership]
    assert [
        [(c.label, c.size, c.d_modularity, c.pds_sizes) for c in r.communities]
        for r in via_detection
    ] == [
        [(c.label, c.size, c.d_modularity, c.pds_sizes) for c in r.communities]
        for r in via_membership
    ]


def test_community_sizes_bounded_by_window_activity(stream, analysis_config, membership):
    log, windows = stream
    mapping, _ = membership
    reports = run_structural_analysis(log, windows, config=analysis_config, membership=mapping)
    for window, report in zip(windows, reports):
        active = set()
        for event in log:
            if window.contains(event.timestamp) and event.source and event.target:
                active.update((event.source, event.target))
        assert sum(c.size for c in report.communities) <= len(active)


def test_users_outside_membership_are_excluded(stream, analysis_config):
    log, windows = stream
    mapping = _planted_membership()
    del mapping["a00"]  # pretend this user only appeared after detection
    reports = run_structural_analysis(
        log, windows[:1], config=analysis_config, membership=mapping
    )
    sizes = {c.label: c.size for c in reports[0].communities}
    assert sizes["a"] == 29
    assert sizes["b"] == 30


def test_structural_determinism(stream, analysis_config, membership):
    log, windows = stream
    mapping, _ = membership
    first = run_structural_analysis(log, windows, config=analysis_config, membership=mapping)
    second = run_structural_analysis(log, windows, config=analysis_config, membership=mapping)
    assert [r.to_dict() for r in first] == [r.to_dict() for r in second]


def test_size_filter_folds_small_groups(stream, analysis_config):
    log, windows = stream
    mapping = {user: community for user, community in _planted_membership().items()}
    # shrink community c to 3 known users: it must fold into the residual
    mapping = {
        u: c
        for u, c in mapping.items()
        if not (c == "c" and u not in {"c00", "c01", "c02"})
    }
    reports = run_structural_analysis(
        log, windows[:1], config=analysis_config, membership=mapping
    )
    labels = {c.label for c in reports[0].communities}
    assert labels == {"a", "b"}
    assert reports[0].degenerate is False


def _planted_membership():
    from .streams import members

    mapping = {}
    for name in ("a", "b", "c"):
        for user in members(name):
            mapping[user] = name
    return mapping


def test_demo_graph_single_window_black_on_frontier():
    from radscales import three_group_graph

    graph, partition = three_group_graph()
    lines = [
        json.dumps(
            {
                "source": graph.labels[u],
                "target": graph.labels[v],
                "timestamp": "2022-09-20T00:00:00Z",
                "kind": "retweet",
            }
        )
        for u, v in graph.edges()
    ]
    log = ingest_events(lines)
    mapping = {
        graph.labels[v]: partition.group_label(partition.group_of[v])
        for v in range(graph.n)
    }
    window = WindowSpec("all", parse_timestamp("2022-09-19"), parse_timestamp("2022-09-21"))
    config = AnalysisConfig(min_community_size=1)
    (report,) = run_structural_analysis(log, [window], config=config, membership=mapping)
    assert "black" in report.frontier
    by_label = {c.label: c for c in report.communities}
    assert by_label["black"].d_modularity == pytest.approx(0.448, abs=2e-3)


def test_single_surviving_community_is_the_frontier(stream, analysis_config):
    log, windows = stream
    full = _planted_membership()
    mapping = {
        u: c
        for u, c in full.items()
        if c == "a" or u in {"b00", "b01", "b02", "c00", "c01", "c02"}
    }
    reports = run_structural_analysis(
        log, windows[:1], config=analysis_config, membership=mapping
    )
    report = reports[0]
    assert report.degenerate
    assert report.frontier == ("a",)
    assert [c.label for c in report.communities] == ["a"]


def test_single_community_degenerate_report():
    lines = [
        json.dumps(
            {
                "source": f"u{i}",
                "target": f"u{i + 1}",
                "timestamp": "2022-09-20T00:00:00Z",
                "kind": "retweet",
            }
        )
        for i in range(5)
    ]
    log = ingest_events(lines)
    mapping = {f"u{i}": "only" for i in range(6)}
    window = WindowSpec("w", parse_timestamp("2022-09-19"), parse_timestamp("2022-09-21"))
    config = AnalysisConfig(min_community_size=1)
    (report,) = run_structural_analysis(log, [window], config=config, membership=mapping)
    assert report.degenerate
    # single group: Q is zero, the cohesion axis is undefined, nothing to rank
    assert report.frontier == ()
    assert report.communities[0].d_modularity is None


def test_speech_reports(stream, membership):
    log, windows = stream
    lexicon = parse_mfd_dic(io.StringIO(TEST_DIC))
    mapping = _planted_membership()
    reports = run_speech_analysis(
        log, windows, mapping, lexicon, FoundationMap.default()
    )
    assert len(reports) == 4
    for report in reports:
        assert report.axes == ("Fairness", "IngroupLoyalty", "Authority", "Purity")
        by_label = {c.scores.community_label: c.scores for c in report.communities}
        assert set(by_label) == {"a", "b", "c"}
        # community a's posts are authority-heavy by construction
        assert by_label["a"].per_foundation["Authority"] > by_label["b"].per_foundation["Authority"]
        assert "a" in report.frontier


def test_speech_empty_corpus_dropped_with_warning(stream, caplog):
    log, windows = stream
    lexicon = parse_mfd_dic(io.StringIO(TEST_DIC))
    mapping = _planted_membership()
    mapping["ghost_user"] = "ghost"
    with caplog.at_level(logging.WARNING):
        reports = run_speech_analysis(
            log, windows[:1], mapping, lexicon, FoundationMap.default()
        )
    assert "ghost" in caplog.text
    assert {c.scores.community_label for c in reports[0].communities} == {"a", "b", "c"}


def test_speech_identical_corpora_all_on_frontier(stream):
    lexicon = parse_mfd_dic(io.StringIO(TEST_DIC))
    lines = [
        json.dumps(
            {
                "author": f"{name}1",
                "text": "ordem justo puro hoje",
                "timestamp": "2022-09-20T00:00:00Z",
                "kind": "other",
            }
        )
        for name in ("x", "y", "z")
    ]
    log = ingest_events(lines)
    mapping = {f"{name}1": name for name in ("x", "y", "z")}
    window = WindowSpec("w", parse_timestamp("2022-09-19"), parse_timestamp("2022-09-21"))
    reports = run_speech_analysis(log, [window], mapping, lexicon, FoundationMap.default())
    assert set(reports[0].frontier) == {"x", "y", "z"}


def test_include_shares_adds_retweet_text():
    lexicon = parse_mfd_dic(io.StringIO(TEST_DIC))
    lines = [
        json.dumps(
            {
                "author": "u1",
                "text": "tema neutro hoje",
                "timestamp": "2022-09-20T00:00:00Z",
                "kind": "other",
            }
        ),
        json.dumps(
            {
                "source": "u1",
                "target": "u2",
                "text": "ordem autoridade obedecer",
                "timestamp": "2022-09-20T01:00:00Z",
                "kind": "retweet",
            }
        ),
    ]
    log = ingest_events(lines)
    mapping = {"u1": "g", "u2": "g"}
    window = WindowSpec("w", parse_timestamp("2022-09-19"), parse_timestamp("2022-09-21"))
    fmap = FoundationMap.default()
    without = run_speech_analysis(log, [window], mapping, lexicon, fmap)
    with_shares = run_speech_analysis(
        log, [window], mapping, lexicon, fmap, include_shares=True
    )
    freq_without = without[0].communities[0].scores.per_foundation["Authority"]
    freq_with = with_shares[0].communities[0].scores.per_foundation["Authority"]
    assert freq_without == 0.0
    assert freq_with == 0.5


def test_emit_plot_data_structural(tmp_path, stream, analysis_config, membership):
    log, windows = stream
    mapping, _ = membership
    report = run_structural_analysis(
        log, windows[:1], config=analysis_config, membership=mapping
    )[0]
    path = emit_plot_data(report, tmp_path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "community,d_modularity,pds_size,on_frontier"
    assert len(lines) == 1 + len(report.communities)


def test_emit_plot_data_speech(tmp_path, stream):
    log, windows = stream
    lexicon = parse_mfd_dic(io.StringIO(TEST_DIC))
    report = run_speech_analysis(
        log, windows[:1], _planted_membership(), lexicon, FoundationMap.default()
    )[0]
    path = emit_plot_data(report, tmp_path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "community,Fairness,IngroupLoyalty,Authority,Purity,on_frontier"
    assert len(lines) == 4


def test_read_membership():
    mapping = read_membership(io.StringIO("u1\tleft\nu2\tright\n#c\nu3 left\n"))
    assert mapping == {"u1": "left", "u2": "right", "u3": "left"}
    with pytest.raises(DuplicateAssignmentError):
        read_membership(io.StringIO("u1\tx\nu1\ty\n"))
