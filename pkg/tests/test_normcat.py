from __future__ import annotations

import itertools

from hypothesis import given, settings, strategies as st

from crossig.fixtures import builtin, principal_categories, principal_left_category
from crossig.functor_ci import build_lcat
from crossig.normcat import (Functor, apex, build_category, check_normal_category, compose_cone, cone_semigroup,
                             enumerate_cones, find_isomorphism, h_functor, identity_functor, idempotent_cones,
                             is_isomorphism, is_local_isomorphism, normal_factorize)
from conftest import FIXTURE_NAMES


def left_ideal_reps(S):
    T = S.table
    seen, reps = set(), []
    for e in S.idempotents:
        ideal = frozenset(T[s][e] for s in range(S.n)) | {e}
        if ideal not in seen:
            seen.add(ideal)
            reps.append(e)
    return reps


def hom_count_oracle(S):
    """sum over principal left ideals Se, Sf of |eSf|: one right translation per element of eSf."""
    T = S.table
    reps = left_ideal_reps(S)
    return len(reps), sum(len({T[T[e][s]][f] for s in range(S.n)} | {T[e][f]}) for e in reps for f in reps)


def test_principal_category_sizes_match_translation_count(built):
    for name in FIXTURE_NAMES:
        S = built.semigroups[name]
        L, R = principal_categories(S)
        assert (L.n_objects, L.n) == hom_count_oracle(S), name
        assert (R.n_objects, R.n) == hom_count_oracle(S.opposite()), name


def test_principal_categories_are_normal(built):
    for name in FIXTURE_NAMES:
        L, R = principal_categories(built.semigroups[name])
        assert check_normal_category(L).ok, name
        assert check_normal_category(R).ok, name


def test_left_zero_has_one_left_ideal():
    assert principal_left_category(builtin("left_zero", (2,))).n_objects == 1


def test_semilattice_inclusions_are_ideal_containments():
    S = builtin("semilattice_chain", (2,))
    L = principal_left_category(S)
    T = S.table
    reps = left_ideal_reps(S)
    ideals = [frozenset(T[s][e] for s in range(S.n)) for e in reps]
    for a, b in itertools.product(range(L.n_objects), repeat=2):
        assert L.subset(a, b) == (ideals[a] <= ideals[b])


def factorization_oracle(C, f):
    """All (q, u, j) with q a split retraction, u an isomorphism, j an inclusion and q u j = f."""
    out = []
    isos = {u for u in range(C.n) if any(C.compose.get((u, v)) == C.identity[C.dom[u]]
                                         and C.compose.get((v, u)) == C.identity[C.cod[u]] for v in range(C.n))}
    for q in range(C.n):
        a, b = C.cod[q], C.dom[q]
        if (a, b) not in C.inclusions or C.compose[(C.inclusions[(a, b)], q)] != C.identity[a]:
            continue
        for u in isos:
            if C.dom[u] != a:
                continue
            for (x, y), j in C.inclusions.items():
                if x == C.cod[u] and C.cod[j] == C.cod[f] and C.dom[q] == C.dom[f]:
                    if C.compose[(C.compose[(q, u)], j)] == f:
                        out.append((q, u, j))
    return sorted(out)


def test_factorizations_match_exhaustive_search(built):
    for name in ["full_transformation(2)", "brandt2", "rect_band(2,2)"]:
        C = principal_left_category(built.semigroups[name])
        for f in range(C.n):
            assert sorted(C.factorizations(f)) == factorization_oracle(C, f), (name, f)
            q, u, j = normal_factorize(C, f)
            if C.is_iso(f):
                assert C.epi(f) == f
            if f in C.inclusion_set:
                assert C.epi(f) == C.identity[C.dom[f]]


def cone_oracle(C):
    out = []
    for top in range(C.n_objects):
        for comps in itertools.product(*[C.hom(c, top) for c in range(C.n_objects)]):
            if all(C.compose[(j, comps[b])] == comps[a] for (a, b), j in C.inclusions.items()) \
                    and any(C.is_iso(f) for f in comps):
                out.append(tuple(comps))
    return sorted(out)


def test_cone_enumeration_matches_brute_force(built):
    for name in ["full_transformation(2)", "brandt2", "rect_band(2,2)", "semilattice_chain(2)"]:
        L, R = principal_categories(built.semigroups[name])
        for C in (L, R):
            assert enumerate_cones(C) == cone_oracle(C), name


def test_compose_cone_apex_follows_iso_component(built):
    C = principal_left_category(built.semigroups["full_transformation(2)"])
    cones = enumerate_cones(C)
    for gamma, sigma in itertools.product(cones, repeat=2):
        if C.is_iso(sigma[apex(C, gamma)]):
            assert apex(C, compose_cone(C, gamma, sigma)) == apex(C, sigma)


def test_h_functors_are_natural(built):
    C = principal_left_category(built.semigroups["brandt2"])
    for gamma in enumerate_cones(C):
        assert h_functor(C, gamma).check().ok


def test_cone_semigroup_single_seed_is_trivial(built):
    C = principal_left_category(built.semigroups["full_transformation(2)"])
    gamma = idempotent_cones(C)[0]
    assert len(cone_semigroup(C, [gamma]).elements) == 1


def test_cone_semigroup_of_left_zero_is_regular(built):
    L = build_lcat(built.ig("left_zero(2)"))
    seeds = [L.idempotent_cone(e) for e in range(L.E.n)]
    T = cone_semigroup(L.C, seeds)
    S = T.to_semigroup(L.C)
    assert S.regularity_witness() is None
    for cone in seeds:
        i = T.index[cone]
        assert S.table[i][i] == i


def chain_with_unsplit_inclusion():
    # objects a <= b with only identities and the inclusion
    keys = ["1a", "1b", "j"]
    ends = {"1a": (0, 0), "1b": (1, 1), "j": (0, 1)}

    def mul(x, y):
        return y if x.startswith("1") else x

    return build_category(["a", "b"], keys, lambda k: ends[k][0], lambda k: ends[k][1], mul,
                          lambda i: ["1a", "1b"][i], lambda x, y: {(0, 0): "1a", (1, 1): "1b", (0, 1): "j"}.get((x, y)))


def test_non_split_inclusion_reports_nc2():
    rep = check_normal_category(chain_with_unsplit_inclusion())
    assert rep.has("NC2") and not rep.ok


def test_identity_is_local_isomorphism(built):
    L, _ = principal_categories(built.semigroups["full_transformation(2)"])
    assert is_local_isomorphism(identity_functor(L)).ok
    assert is_isomorphism(identity_functor(L)).ok


def one_morphism_category():
    return build_category(["a"], ["1"], lambda k: 0, lambda k: 0, lambda x, y: "1", lambda i: "1",
                          lambda x, y: "1")


def test_one_morphism_category_is_normal():
    assert check_normal_category(one_morphism_category()).ok


def test_collapsing_functor_reports_ideal_witness(built):
    # SL2's L_S is the chain 0 <= 1; collapsing it is a functor but not injective on the ideal of 1
    L, _ = principal_categories(built.semigroups["semilattice_chain(2)"])
    point = one_morphism_category()
    bad = Functor(L, point, [0, 0], [0] * L.n, "collapse")
    rep = is_local_isomorphism(bad)
    assert rep.has("ideal") and not rep.ok


def test_find_isomorphism_on_relabelled_category(built):
    L, _ = principal_categories(built.semigroups["brandt2"])
    assert find_isomorphism(L, L) is not None
    L2, _ = principal_categories(built.semigroups["full_transformation(2)"])
    assert find_isomorphism(L, L2) is None


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["brandt2", "full_transformation(2)", "rect_band(2,2)", "full_transformation(3)"]),
       st.data())
def test_principal_category_composition_is_associative(built, name, data):
    L, R = principal_categories(built.semigroups[name])
    C = data.draw(st.sampled_from([L, R]))
    f = data.draw(st.integers(0, C.n - 1))
    g = data.draw(st.sampled_from([x for x in range(C.n) if C.dom[x] == C.cod[f]]))
    h = data.draw(st.sampled_from([x for x in range(C.n) if C.dom[x] == C.cod[g]]))
    assert C.compose[(C.compose[(f, g)], h)] == C.compose[(f, C.compose[(g, h)])]
