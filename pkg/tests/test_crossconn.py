from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from crossig.crossconn import (CCMorphism, CrossConnection, biorder_of, check_cc_morphism, compose_cc, identity_cc,
                               transpose, validate_crossconnection)
from crossig.equivalence import fixture_functors
from crossig.errors import MalformedComposition, NonUniqueTranspose, NoTranspose
from crossig.fixtures import builtin, trace_groupoid
from crossig.functor_ci import build_gamma, map_inductive_functor
from crossig.functor_ic import map_morphism
from crossig.normcat import Functor, apex, enumerate_cones, h_functor, is_idempotent_cone
from conftest import FIXTURE_NAMES, SMALL_NAMES


def test_every_fixture_cross_connection_validates(built):
    for name in FIXTURE_NAMES:
        rep = validate_crossconnection(built.gamma(name).x)
        assert rep.ok, (name, rep.to_dict())


def test_e_gamma_sizes(built):
    # E_Gamma is in bijection with the idempotents
    for name in FIXTURE_NAMES:
        assert len(built.gamma(name).x.e_gamma) == len(built.semigroups[name].idempotents), name
    assert len(built.gamma("full_transformation(2)").x.e_gamma) == 3
    assert len(built.gamma("rect_band(2,2)").x.e_gamma) == 4


def test_trivial_cross_connection():
    data = build_gamma(trace_groupoid(builtin("semilattice_chain", (1,))))
    assert validate_crossconnection(data.x).ok
    assert data.x.e_gamma == [(0, 0)]


def test_basic_product_cases(built):
    for name in FIXTURE_NAMES:
        x = built.gamma(name).x
        E = biorder_of(x)
        index = {p: i for i, p in enumerate(x.e_gamma)}
        for (c, d), i in index.items():
            assert E.product[i][i] == i
            for (c2, d2), k in index.items():
                if x.C.subset(c, c2):
                    assert E.product[i][k] == i, (name, (c, d), (c2, d2))
                if x.D.subset(d2, d):
                    assert E.product[i][k] == k, (name, (c, d), (c2, d2))


def test_left_zero_biorder_table_matches_idempotents(built):
    data = built.gamma("left_zero(2)")
    E = data.ig.E
    E2 = biorder_of(data.x)
    index = {p: i for i, p in enumerate(data.x.e_gamma)}
    theta = [index[data.pair_of(e)] for e in range(E.n)]
    for a in range(E.n):
        for b in range(E.n):
            assert theta[E.product[a][b]] == E2.product[theta[a]][theta[b]]


def brute_transposes(x, f, cd, cd2):
    (c, d), (c2, d2) = cd, cd2
    D = x.D
    H_source = h_functor(D, x.delta_cone(c, d))
    H_target = h_functor(D, x.delta_cone(c2, d2))
    found = []
    for g in D.hom(d2, d):
        if all(H_target.eta[z].get(x.delta_action(f, element)) == D.compose[(g, h)]
               for z in range(D.n_objects) for element, h in H_source.eta[z].items()):
            found.append(g)
    return found


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIXTURE_NAMES), st.data())
def test_transpose_matches_exhaustive_search(built, name, data):
    x = built.gamma(name).x
    cd = data.draw(st.sampled_from(x.e_gamma))
    cd2 = data.draw(st.sampled_from(x.e_gamma))
    homs = x.C.hom(cd[0], cd2[0])
    if not homs:
        return
    f = data.draw(st.sampled_from(homs))
    expected = brute_transposes(x, f, cd, cd2)
    if len(expected) == 1:
        assert transpose(x, f, cd, cd2) == expected[0]
    elif not expected:
        with pytest.raises(NoTranspose):
            transpose(x, f, cd, cd2)
    else:
        with pytest.raises(NonUniqueTranspose):
            transpose(x, f, cd, cd2)


def test_identity_transpose(built):
    for name in FIXTURE_NAMES:
        x = built.gamma(name).x
        for c, d in x.e_gamma:
            assert transpose(x, x.C.identity[c], (c, d), (c, d)) == x.D.identity[d]


def test_identity_cc_morphism_passes(built):
    for name in SMALL_NAMES:
        x = built.gamma(name).x
        assert check_cc_morphism(identity_cc(x)).ok


def cc_morphisms(built, name):
    catalog = built.catalog
    ws = built.workspace
    out = []
    for Fn in fixture_functors(catalog, name):
        data, _ = ws.ig_side(Fn.source)
        data2, _ = ws.ig_side(Fn.target)
        out.append(map_inductive_functor(Fn, data, data2))
    return out


def test_cc_morphisms_of_fixture_functors_pass(built):
    for name in SMALL_NAMES:
        for m in cc_morphisms(built, name):
            rep = check_cc_morphism(m)
            assert rep.ok, (name, m.name, rep.to_dict())


def test_left_zero_embedding_into_rect_band(built):
    ms = [m for m in cc_morphisms(built, "left_zero(2)") if "left_zero(2)->rect_band(2,2)" in m.name]
    assert ms
    assert check_cc_morphism(ms[0]).ok


def test_composite_cc_morphisms_pass(built):
    ms = cc_morphisms(built, "full_transformation(2)")
    endo = [m for m in ms if m.source is m.target]
    for m1 in endo:
        for m2 in endo:
            assert check_cc_morphism(compose_cc(m1, m2)).ok


def test_inclusion_breaking_f1_reports_m1(built):
    x = built.gamma("full_transformation(2)").x
    C = x.C
    (a, b), j = next(((a, b), j) for (a, b), j in sorted(C.inclusions.items())
                     if a != b and len(C.hom(a, b)) > 1)
    other = next(f for f in C.hom(a, b) if f != j)
    morphisms = list(range(C.n))
    morphisms[j] = other
    m = CCMorphism(x, x, Functor(C, C, range(C.n_objects), morphisms, "broken"), identity_cc(x).F2, "broken")
    rep = check_cc_morphism(m)
    assert rep.has("M1") and not rep.ok


def corrupted_f2(x):
    """Identity cc-morphism with F2 moved to another morphism on one transpose of an isomorphism."""
    C, D = x.C, x.D
    for cd in x.e_gamma:
        for cd2 in x.e_gamma:
            for f in C.hom(cd[0], cd2[0]):
                if not C.is_iso(f):
                    continue
                star = transpose(x, f, cd, cd2)
                alternatives = [g for g in D.hom(D.dom[star], D.cod[star]) if g != star]
                if alternatives:
                    F2 = list(range(D.n))
                    F2[star] = alternatives[0]
                    return CCMorphism(x, x, identity_cc(x).F1, Functor(D, D, range(D.n_objects), F2, "bad"), "bad")
    return None


def test_corrupted_f2_reports_m2_and_malformed_composition(built):
    x = built.gamma("full_transformation(3)").x
    m = corrupted_f2(x)
    assert m is not None
    assert check_cc_morphism(m).has("M2")
    ig2 = built.ig2("full_transformation(3)")
    with pytest.raises(MalformedComposition):
        map_morphism(m, ig2, ig2)


def test_non_idempotent_gamma_cone_is_rejected(built):
    x = built.gamma("full_transformation(2)").x
    C = x.C
    bad_cone = next(g for g in enumerate_cones(C) if not is_idempotent_cone(C, g))
    d = next(d for d, cone in enumerate(x.gamma) if apex(C, cone) == apex(C, bad_cone))
    gamma = list(x.gamma)
    gamma[d] = bad_cone
    y = CrossConnection(x.C, x.D, gamma, x.gamma_map, x.delta, x.delta_map, "corrupted")
    rep = validate_crossconnection(y)
    assert rep.has("Gamma-idempotent") and not rep.ok


def test_gamma_map_with_wrong_endpoints_is_rejected(built):
    x = built.gamma("full_transformation(2)").x
    C = x.C
    g = 0
    want = (apex(C, x.gamma[x.D.cod[g]]), apex(C, x.gamma[x.D.dom[g]]))
    wrong = next(f for f in range(C.n) if (C.dom[f], C.cod[f]) != want)
    gamma_map = list(x.gamma_map)
    gamma_map[g] = wrong
    y = CrossConnection(x.C, x.D, x.gamma, gamma_map, x.delta, x.delta_map, "corrupted")
    assert validate_crossconnection(y).has("Gamma-map")


def test_ig_of_cross_connection_has_groupoid_size(built):
    for name in FIXTURE_NAMES:
        assert built.ig2(name).g.n == built.ig(name).g.n, name
    assert built.ig2("full_transformation(3)").g.n == 87
