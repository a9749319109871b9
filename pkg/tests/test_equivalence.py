from __future__ import annotations

from hypothesis import given, settings, strategies as st

from crossig.documents import canonical_json
from crossig.equivalence import (Workspace, build_catalog, fixture_functors, iso_cr, iso_ig, roundtrip_report,
                                 trace_functor)
from crossig.fixtures import builtin, trace_groupoid
from crossig.functor_ci import build_gamma
from crossig.inductive import InductiveGroupoid, compose_functors
from conftest import SMALL_NAMES


def test_ig_side_passes_with_naturality(built):
    for name in SMALL_NAMES:
        functors = fixture_functors(built.catalog, name)
        report = iso_ig(built.catalog[name][1], functors, built.workspace)
        assert report.verdict == "pass", (name, report.to_dict()["violations"])
        assert len(report.squares) == len(functors) >= 4
        assert all(s["ok"] for s in report.squares)


def test_cr_side_passes(built):
    for name in SMALL_NAMES:
        data, _ = built.workspace.ig_side(built.catalog[name][1])
        assert iso_cr(data.x, (), built.workspace).verdict == "pass", name


def test_groupoid_sizes_round_trip():
    G = trace_groupoid(builtin("full_transformation", (2,)))
    report = iso_ig(G)
    assert report.verdict == "pass"
    assert report.components["groupoid_size"] == [G.g.n, G.g.n]


def test_singleton_and_left_zero_round_trips():
    for name, params in [("semilattice_chain", (1,)), ("left_zero", (2,)), ("brandt2", ())]:
        assert roundtrip_report(builtin(name, params))["verdict"] == "pass", name


def test_cross_connection_input_round_trip():
    x = build_gamma(trace_groupoid(builtin("left_zero", (2,)))).x
    out = roundtrip_report(x)
    assert out["verdict"] == "pass"
    assert out["cr_side"]["verdict"] == "pass" and out["ig_side"]["verdict"] == "pass"


def test_corrupted_eval_fails_ig_side():
    G = trace_groupoid(builtin("full_transformation", (3,)))
    (e, f), x = next(((e, f), x) for (e, f), x in sorted(G.eval_gen.items()) if len(G.g.hom(e, f)) > 1)
    eval_gen = dict(G.eval_gen)
    eval_gen[(e, f)] = next(y for y in G.g.hom(e, f) if y != x)
    out = roundtrip_report(InductiveGroupoid(G.g, G.E, eval_gen, "corrupted"))
    assert out["verdict"] == "fail"
    assert out["ig_side"]["violations"][0]["check"] in ("IG2", "functoriality", "eval-order")


def test_round_trip_reports_are_deterministic():
    semigroups = [builtin("full_transformation", (2,)), builtin("left_zero", (2,))]
    docs = []
    for _ in range(2):
        catalog = build_catalog(semigroups)
        name = semigroups[0].name
        docs.append(canonical_json(roundtrip_report(catalog[name][1], fixture_functors(catalog, name), Workspace())))
    assert docs[0] == docs[1]


def test_non_functor_square_fails(built):
    G = built.catalog["semilattice_chain(2)"][1]
    S = built.semigroups["semilattice_chain(2)"]
    # phi = swap is not a homomorphism, so its trace map is not order preserving
    swap = trace_functor(S, S, [1, 0], G, G, "swap")
    report = iso_ig(G, [swap], built.workspace)
    assert report.verdict == "fail"
    assert not report.squares[0]["ok"]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["full_transformation(2)", "brandt2", "rect_band(2,2)"]), st.data())
def test_composite_functors_keep_naturality(built, name, data):
    functors = [F for F in fixture_functors(built.catalog, name) if F.target is F.source]
    F1 = data.draw(st.sampled_from(functors))
    F2 = data.draw(st.sampled_from(functors))
    report = iso_ig(built.catalog[name][1], [compose_functors(F1, F2)], built.workspace)
    assert report.verdict == "pass"


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3))
def test_rect_band_family_round_trips(m, k):
    assert roundtrip_report(builtin("rect_band", (m, k)))["verdict"] == "pass"


@settings(max_examples=4, deadline=None)
@given(st.integers(1, 4))
def test_semilattice_family_round_trips(n):
    assert roundtrip_report(builtin("semilattice_chain", (n,)))["verdict"] == "pass"
