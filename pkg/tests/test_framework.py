import json

import pytest
from hypothesis import given, strategies as st

from qbafx import datasets
from qbafx.errors import (
    BadArgumentId,
    BadBaseScore,
    DomainMismatch,
    DuplicateArgumentId,
    ParseError,
    PolarityConflict,
    SelfLoop,
    UnknownArgument,
    UnknownEdge,
    UnknownEndpoint,
)
from qbafx.framework import (
    Edge,
    Polarity,
    build_qbaf,
    parse_qbaf_json,
    rename_arguments,
    restrict_arguments,
    restrict_edges,
    serialize_qbaf_json,
    topic_component,
    with_base_scores,
)

from .reference_tables import ATTACK_PAIRS, REMOVAL_RAE
from .conftest import qbafs


def test_toy_builds(toy):
    assert set(toy.arguments) == {"alpha", "beta", "gamma", "delta"}
    assert len(toy.edges) == 5
    assert set(toy.attacks) == {("beta", "delta"), ("beta", "alpha")}
    assert set(toy.supports) == {("gamma", "delta"), ("gamma", "alpha"), ("delta", "alpha")}
    assert toy.base_scores == {"alpha": 0.8, "beta": 0.6, "gamma": 0.9, "delta": 0.7}


def test_empty_framework():
    q = build_qbaf([], [], [], {})
    assert q.arguments == () and q.edges == ()


@pytest.mark.parametrize(
    "kwargs, exc",
    [
        (dict(arguments=["a", "b"], attacks=[("a", "b")], supports=[("a", "b")]), PolarityConflict),
        (dict(arguments=["a"], attacks=[("a", "z")]), UnknownEndpoint),
        (dict(arguments=["a"], supports=[("a", "a")]), SelfLoop),
        (dict(arguments=["a", "a"]), DuplicateArgumentId),
        (dict(arguments=["a b"]), BadArgumentId),
        (dict(arguments=["a,b"]), BadArgumentId),
        (dict(arguments=[""]), BadArgumentId),
    ],
)
def test_build_rejects(kwargs, exc):
    kwargs.setdefault("base_scores", {a: 0.5 for a in kwargs["arguments"]})
    with pytest.raises(exc):
        build_qbaf(**kwargs)


@pytest.mark.parametrize("score", [1.5, -0.1, float("nan"), "x", None, True])
def test_bad_base_score(score):
    with pytest.raises(BadBaseScore):
        build_qbaf(["a"], [], [], {"a": score})


def test_missing_base_score():
    with pytest.raises(BadBaseScore):
        build_qbaf(["a", "b"], [], [], {"a": 0.1})


def test_duplicate_edges_collapse():
    q = build_qbaf(["a", "b"], [("a", "b"), ("a", "b")], [("b", "a")], {"a": 0.1, "b": 0.2})
    assert len(q.edges) == 2


def test_restrict_arguments_induced_subgraph(toy):
    r = restrict_arguments(toy, {"alpha", "beta", "gamma"})
    assert set(r.arguments) == {"alpha", "beta", "gamma"}
    assert {(e.source, e.target, e.polarity) for e in r.edges} == {
        ("beta", "alpha", Polarity.ATTACK),
        ("gamma", "alpha", Polarity.SUPPORT),
    }
    assert r.base_scores == {"alpha": 0.8, "beta": 0.6, "gamma": 0.9}


def test_restrict_arguments_identity_and_empty(toy):
    assert restrict_arguments(toy, set(toy.arguments)) == toy
    empty = restrict_arguments(toy, set())
    assert empty.arguments == () and empty.edges == ()


def test_restrict_arguments_unknown(toy):
    with pytest.raises(UnknownArgument):
        restrict_arguments(toy, {"alpha", "omega"})


def test_restrict_edges(toy):
    bare = restrict_edges(toy, set())
    assert bare.arguments == toy.arguments and bare.edges == ()
    assert bare.base_scores == toy.base_scores
    assert restrict_edges(toy, set(toy.edges)) == toy
    cut = toy.find_edge("delta", "alpha")
    r = restrict_edges(toy, set(toy.edges) - {cut})
    assert "delta" not in r.supporters("alpha")
    assert len(r.edges) == 4
    with pytest.raises(UnknownEdge):
        restrict_edges(toy, {Edge("alpha", "beta", "attack")})


def test_with_base_scores(toy):
    assert with_base_scores(toy, toy.base_scores) == toy
    tau = dict(toy.base_scores, beta=0.0)
    r = with_base_scores(toy, tau)
    assert r.edges == toy.edges and r.base_score("beta") == 0.0
    tau.pop("delta")
    with pytest.raises(DomainMismatch):
        with_base_scores(toy, tau)
    with pytest.raises(BadBaseScore):
        with_base_scores(toy, dict(toy.base_scores, beta=2.0))


def test_json_round_trip(toy):
    assert parse_qbaf_json(serialize_qbaf_json(toy)) == toy


def test_json_schema_field_names(toy):
    doc = json.loads(serialize_qbaf_json(toy))
    assert set(doc) == {"arguments", "attacks", "supports"}
    assert set(doc["arguments"][0]) == {"id", "base_score"}


def test_json_bad_score():
    text = '{"arguments":[{"id":"a","base_score":1.5}],"attacks":[],"supports":[]}'
    with pytest.raises(BadBaseScore):
        parse_qbaf_json(text)


def test_json_diagnostics():
    with pytest.raises(ParseError) as info:
        parse_qbaf_json('{"arguments": [\n  {"id": "a", "base_score": 0.5},\n  oops]}')
    assert info.value.line == 3
    with pytest.raises(ParseError) as info:
        parse_qbaf_json('{"arguments":[{"id":"a"}]}')
    assert info.value.field == "arguments[0]"
    with pytest.raises(ParseError):
        parse_qbaf_json('{"arguments":[],"attacks":[["a"]]}')


def test_case_study_fixture_matches_reference_edges(case_study):
    # independent transcription of the reference edge list
    listed = {pair for pair, _ in REMOVAL_RAE}
    assert len(listed) == 34
    assert set(case_study.attacks) == ATTACK_PAIRS
    assert set(case_study.supports) == listed - ATTACK_PAIRS
    assert len(case_study.arguments) == 17
    assert len(case_study.attacks) == 6 and len(case_study.supports) == 28


def test_case_study_file_parses():
    with open(datasets.path("case_study.json"), encoding="utf-8") as fh:
        q = parse_qbaf_json(fh.read())
    assert len(q.arguments) == 17 and len(q.edges) == 34


def test_rename(toy):
    r = rename_arguments(toy, {"alpha": "a"})
    assert "a" in r and "alpha" not in r
    assert ("gamma", "a") in r.supports
    with pytest.raises(DuplicateArgumentId):
        rename_arguments(toy, {"alpha": "beta"})


def test_topic_component():
    q = build_qbaf(["a", "b", "c", "d"], [("a", "b")], [("d", "c")], dict.fromkeys("abcd", 0.5))
    comp = topic_component(q, "a")
    assert comp.arguments == ("a", "b")
    assert topic_component(q, "c").arguments == ("c", "d")


@given(qbafs(), st.data())
def test_restrict_arguments_properties(q, data):
    keep = data.draw(st.sets(st.sampled_from(q.arguments)) if q.arguments else st.just(set()))
    r = restrict_arguments(q, keep)
    r.validate()
    assert set(r.arguments) == keep
    assert all(e.source in keep and e.target in keep for e in r.edges)
    assert restrict_arguments(r, keep) == r


@given(qbafs(), st.data())
def test_restrict_edges_properties(q, data):
    keep = data.draw(st.sets(st.sampled_from(q.edges)) if q.edges else st.just(set()))
    r = restrict_edges(q, keep)
    r.validate()
    assert r.arguments == q.arguments and r.base_scores == q.base_scores
    assert set(r.edges) == keep
    assert restrict_edges(r, keep) == r


@given(qbafs())
def test_json_round_trip_property(q):
    q.validate()
    assert parse_qbaf_json(serialize_qbaf_json(q)) == q
