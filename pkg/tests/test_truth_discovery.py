import itertools

import pytest
from hypothesis import given, strategies as st

from qbafx import datasets, induce_qbaf, parse_reports
from qbafx.errors import IdCollision, InconsistentSource, ParseError
from qbafx.framework import rename_arguments
from qbafx.truth_discovery import TDN, Report, claim_labels


def test_two_sources_one_object():
    n = parse_reports("source,object,value\ns0,year,1962\ns1,year,1963\n")
    assert n.sources == {"s0", "s1"}
    assert n.objects == {"year"}
    assert n.domains == {"year": {"1962", "1963"}}
    assert len(n.reports) == 2


def test_single_report():
    n = parse_reports("source,object,value\ns,o,v\n")
    assert (len(n.sources), len(n.objects), len(n.reports)) == (1, 1, 1)
    q = induce_qbaf(n)
    assert set(q.arguments) == {"s", "o=v"}
    assert set(q.supports) == {("s", "o=v"), ("o=v", "s")}
    assert q.attacks == ()
    assert q.base_scores == {"s": 0.5, "o=v": 0.0}


def test_duplicate_rows_collapse():
    n = parse_reports("source,object,value\ns,o,v\ns,o,v\n")
    assert len(n.reports) == 1


def test_inconsistent_source():
    with pytest.raises(InconsistentSource):
        parse_reports("source,object,value\ns0,year,1962\ns0,year,1963\n")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "src,object,value\ns,o,v\n",
        "source,object,value\ns,o\n",
        "source,object,value\ns,,v\n",
        "source,object,value\ns,a=b,v\n",
        "source,object,value\ns,o,two words\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_reports(text)


def test_contradiction_induces_mutual_attack():
    q = induce_qbaf(parse_reports("source,object,value\ns0,o,v1\ns1,o,v2\n"))
    assert len(q.arguments) == 4
    assert len(q.supports) == 4
    assert set(q.attacks) == {("o=v1", "o=v2"), ("o=v2", "o=v1")}


def test_id_collision():
    n = TDN.from_reports([Report("o=v", "o", "v")])
    with pytest.raises(IdCollision):
        induce_qbaf(n)


def test_case_study_induction(case_study):
    n = datasets.case_study_reports()
    assert len(n.sources) == 11 and len(n.reports) == 14
    q = induce_qbaf(n)
    assert len(q.arguments) == 17
    assert len(q.attacks) == 6 and len(q.supports) == 28
    short = {v: k for k, v in datasets.case_study_claim_ids().items()}
    assert rename_arguments(q, short) == case_study


def test_labels_sidecar():
    doc = claim_labels(parse_reports("source,object,value\ns,year,1962\n"))
    assert doc == {"claims": [{"id": "year=1962", "object": "year", "value": "1962"}]}


reports = st.lists(
    st.tuples(
        st.sampled_from([f"s{i}" for i in range(5)]),
        st.sampled_from(["o1", "o2", "o3"]),
        st.sampled_from(["v1", "v2", "v3"]),
    ),
    max_size=15,
)


@given(reports)
def test_induction_properties(rows):
    # keep only the first value each source gives an object
    seen, kept = set(), []
    for s, o, v in rows:
        if (s, o) not in seen:
            seen.add((s, o))
            kept.append(Report(s, o, v))
    n = TDN.from_reports(kept)
    q = induce_qbaf(n)
    q.validate()
    att, sup = set(q.attacks), set(q.supports)
    assert all((b, a) in att and a != b for a, b in att)
    assert all((b, a) in sup for a, b in sup)
    for a, b in sup:
        assert (a in n.sources) != (b in n.sources)
    for a, b in att:
        assert a not in n.sources and b not in n.sources
    assert len(sup) == 2 * len(n.reports)
    claims = sorted({(r.object, r.value) for r in n.reports})
    brute = sum(1 for c, d in itertools.product(claims, claims) if c[0] == d[0] and c[1] != d[1])
    assert len(att) == brute
    for a, tau in q.base_scores.items():
        assert tau == (0.5 if a in n.sources else 0.0)
