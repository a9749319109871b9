from __future__ import annotations

from .biorder import BiorderedSet, load_biorder
from .errors import MalformedTable, NoTranspose, NonUniqueTranspose
from .normcat import (Functor, NormalDual, SubobjectCategory, apex, check_cone, check_functor,
                      check_inclusion_preserving, check_normal_category, compose_category_functors, cone_star,
                      h_functor, idempotent_cones, identity_functor, is_idempotent_cone, is_local_isomorphism)
from .report import Report


class CrossConnection:
    """Gamma: D -> N*C and its dual Delta: C -> N*D, both given by cones plus morphism data.

    gamma[d] is an idempotent cone in C with H(gamma[d]; -) = Gamma(d). For a morphism
    g: d -> d' of D, gamma_map[g] lies in C(apex gamma[d'], apex gamma[d]) and Gamma(g)
    sends gamma[d] * h° to gamma[d'] * (gamma_map[g] h)°. delta and delta_map mirror this.
    """

    def __init__(self, C: SubobjectCategory, D: SubobjectCategory, gamma, gamma_map, delta, delta_map, name=""):
        self.C = C
        self.D = D
        self.gamma = [tuple(g) for g in gamma]
        self.gamma_map = list(gamma_map)
        self.delta = [tuple(g) for g in delta]
        self.delta_map = list(delta_map)
        self.name = name
        self._nd_c = None
        self._nd_d = None
        self._transpose: dict = {}
        self._e_gamma = None

    @property
    def nd_c(self) -> NormalDual:
        if self._nd_c is None:
            self._nd_c = NormalDual(self.C)
        return self._nd_c

    @property
    def nd_d(self) -> NormalDual:
        if self._nd_d is None:
            self._nd_d = NormalDual(self.D)
        return self._nd_d

    @property
    def e_gamma(self) -> list[tuple[int, int]]:
        """Pairs (c, d) with c in the M-set of Gamma(d)."""
        if self._e_gamma is None:
            pairs = []
            for d, cone in enumerate(self.gamma):
                for c, comp in enumerate(cone):
                    if self.C.is_iso(comp):
                        pairs.append((c, d))
            self._e_gamma = sorted(pairs)
        return self._e_gamma

    @property
    def e_delta(self) -> list[tuple[int, int]]:
        """Pairs (c, d) with d in the M-set of Delta(c), in the same orientation as e_gamma."""
        pairs = []
        for c, cone in enumerate(self.delta):
            for d, comp in enumerate(cone):
                if self.D.is_iso(comp):
                    pairs.append((c, d))
        return sorted(pairs)

    def gamma_cone(self, c: int, d: int) -> tuple:
        """gamma(c, d) = gamma[d] * (gamma[d](c))^-1."""
        cone = self.gamma[d]
        return cone_star(self.C, cone, self.C.inverse_of(cone[c]))

    def delta_cone(self, c: int, d: int) -> tuple:
        cone = self.delta[c]
        return cone_star(self.D, cone, self.D.inverse_of(cone[d]))

    def gamma_action(self, g: int, cone) -> tuple:
        """Gamma(g) applied to an element of H(gamma[dom g]; -)."""
        C, D = self.C, self.D
        source, target = self.gamma[D.dom[g]], self.gamma[D.cod[g]]
        h = h_functor(C, source).eta[apex(C, cone)][cone]
        return cone_star(C, target, C.epi(C.compose[(self.gamma_map[g], h)]))

    def delta_action(self, f: int, cone) -> tuple:
        C, D = self.C, self.D
        source, target = self.delta[C.dom[f]], self.delta[C.cod[f]]
        h = h_functor(D, source).eta[apex(D, cone)][cone]
        return cone_star(D, target, D.epi(D.compose[(self.delta_map[f], h)]))

    def gamma_functor(self) -> Functor:
        nd = self.nd_c
        objects = [nd.object_of(cone) for cone in self.gamma]
        morphisms = [nd.transformation(self.gamma[self.D.dom[g]], self.gamma[self.D.cod[g]], self.gamma_map[g])
                     for g in range(self.D.n)]
        return Functor(self.D, nd.category, objects, morphisms, "Gamma")

    def delta_functor(self) -> Functor:
        nd = self.nd_d
        objects = [nd.object_of(cone) for cone in self.delta]
        morphisms = [nd.transformation(self.delta[self.C.dom[f]], self.delta[self.C.cod[f]], self.delta_map[f])
                     for f in range(self.C.n)]
        return Functor(self.C, nd.category, objects, morphisms, "Delta")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "C": self.C.to_dict(),
            "D": self.D.to_dict(),
            "gamma": [list(g) for g in self.gamma],
            "gamma_map": self.gamma_map,
            "delta": [list(g) for g in self.delta],
            "delta_map": self.delta_map,
            "e_gamma": [list(p) for p in self.e_gamma],
        }

    def __repr__(self) -> str:
        return f"CrossConnection({self.name!r}, |E|={len(self.e_gamma)})"


def _check_cone_family(rep, tag, source: SubobjectCategory, target: SubobjectCategory, cones, maps):
    """cones indexed by objects of `source`, living in `target`; maps indexed by morphisms of `source`."""
    if len(cones) != source.n_objects or len(maps) != source.n:
        rep.add(tag + "-shape", (), "cone or map table has the wrong length")
        return False
    for d, cone in enumerate(cones):
        if not check_cone(target, cone).ok:
            rep.add(tag + "-cone", (d,), "not a cone")
            return False
        if not is_idempotent_cone(target, cone):
            rep.add(tag + "-idempotent", (d,), "cone is not idempotent")
            return False
    for g, image in enumerate(maps):
        want = (apex(target, cones[source.cod[g]]), apex(target, cones[source.dom[g]]))
        if not 0 <= image < target.n or (target.dom[image], target.cod[image]) != want:
            rep.add(tag + "-map", (g,), "morphism image has the wrong endpoints")
            return False
    return True


def _check_side(rep, tag, x, source, target, cones, maps, nd, action, functor_of):
    if not _check_cone_family(rep, tag, source, target, cones, maps):
        return
    F = functor_of()
    sub = is_local_isomorphism(F)
    rep.extend(sub, tag + ":")
    if not sub.ok:
        return
    for g in range(source.n):
        base = cones[source.dom[g]]
        H = h_functor(target, base)
        for c in range(target.n_objects):
            for cone in sorted(H.sets[c]):
                if nd.action(F.morphism_map[g], cone) != action(g, cone):
                    rep.add(tag + "-natural", (g, c), "transformation differs from the morphism data")
    covered = set()
    for d, cone in enumerate(cones):
        for c, comp in enumerate(cone):
            if target.is_iso(comp):
                covered.add(c)
    for c in range(target.n_objects):
        if c not in covered:
            rep.add(tag + "-M-surjective", (c,), "object lies in no M-set")
    by_apex: dict = {}
    for eps in idempotent_cones(target):
        by_apex.setdefault(apex(target, eps), []).append(eps)
    for d, cone in enumerate(cones):
        key = h_functor(target, cone).key
        for c, comp in enumerate(cone):
            if not target.is_iso(comp):
                continue
            matches = [eps for eps in by_apex.get(c, []) if h_functor(target, eps).key == key]
            expected = cone_star(target, cone, target.inverse_of(comp))
            if len(matches) != 1 or matches[0] != expected:
                rep.add(tag + "-cone-uniqueness", (c, d), f"{len(matches)} idempotent cones realize the pair")


def validate_crossconnection(x: CrossConnection, check_categories: bool = True) -> Report:
    rep = Report()
    if check_categories:
        rep.extend(check_normal_category(x.C), "C:")
        rep.extend(check_normal_category(x.D), "D:")
        if not rep.ok:
            return rep
    _check_side(rep, "Gamma", x, x.D, x.C, x.gamma, x.gamma_map, x.nd_c,
                x.gamma_action, x.gamma_functor)
    _check_side(rep, "Delta", x, x.C, x.D, x.delta, x.delta_map, x.nd_d,
                x.delta_action, x.delta_functor)
    if rep.ok and x.e_gamma != x.e_delta:
        missing = sorted(set(x.e_gamma) ^ set(x.e_delta))
        rep.add("duality", missing[0], "E_Gamma and E_Delta differ")
    rep.stats["e_gamma"] = len(x.e_gamma) if rep.ok else None
    return rep


def biorder_of(x: CrossConnection) -> BiorderedSet:
    """E_Gamma with the two inclusion preorders and the four-case basic product."""
    C, D = x.C, x.D
    elements = x.e_gamma
    index = {p: i for i, p in enumerate(elements)}
    n = len(elements)
    table = [[None] * n for _ in range(n)]
    for i, (c, d) in enumerate(elements):
        for k, (c2, d2) in enumerate(elements):
            candidates = []
            if C.subset(c, c2):
                candidates.append((c, d))
            if C.subset(c2, c):
                candidates.append((c2, D.image(x.delta_cone(c, d)[d2])))
            if D.subset(d2, d):
                candidates.append((c2, d2))
            if D.subset(d, d2):
                candidates.append((C.image(x.gamma_cone(c2, d2)[c]), d))
            if not candidates:
                continue
            if len(set(candidates)) != 1:
                raise MalformedTable(f"basic product of {(c, d)} and {(c2, d2)} is ambiguous: {sorted(set(candidates))}",
                                     pair=[i, k])
            value = candidates[0]
            if value not in index:
                raise MalformedTable(f"basic product {value} of {(c, d)} and {(c2, d2)} is not in E_Gamma",
                                     pair=[i, k])
            table[i][k] = index[value]
    labels = [f"({C.object_labels[c]},{D.object_labels[d]})" for c, d in elements]
    return load_biorder(table, labels, f"E({x.name})" if x.name else "E_Gamma")


def transpose(x: CrossConnection, f: int, cd, cd2) -> int:
    """The unique f* in D(d', d) for f in C(c, c'), found by exhaustive search."""
    key = (f, tuple(cd), tuple(cd2))
    if key in x._transpose:
        return x._transpose[key]
    C, D = x.C, x.D
    (c, d), (c2, d2) = cd, cd2
    if C.dom[f] != c or C.cod[f] != c2:
        raise NoTranspose(f"morphism {f} is not in C({c},{c2})", morphism=f)
    source = x.delta_cone(c, d)
    target = x.delta_cone(c2, d2)
    H_source = h_functor(D, source)
    H_target = h_functor(D, target)
    # delta(c,d) sits at d with eta = 1_d, so its image read at d pins down the only possible candidate
    generator_image = x.delta_action(f, source)
    forced = H_target.eta[d].get(generator_image)
    found = []
    for candidate in D.hom(d2, d):
        if candidate != forced:
            continue
        ok = True
        for z in range(D.n_objects):
            for element, h in H_source.eta[z].items():
                image = x.delta_action(f, element)
                if H_target.eta[z].get(image) != D.compose[(candidate, h)]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(candidate)
    if not found:
        raise NoTranspose(f"no transpose for {f} between {tuple(cd)} and {tuple(cd2)}", morphism=f)
    if len(found) > 1:
        raise NonUniqueTranspose(f"{len(found)} transposes for {f}", morphism=f, candidates=found)
    x._transpose[key] = found[0]
    return found[0]


class CCMorphism:
    def __init__(self, source: CrossConnection, target: CrossConnection, F1: Functor, F2: Functor, name=""):
        self.source = source
        self.target = target
        self.F1 = F1
        self.F2 = F2
        self.name = name

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "F1": {"objects": self.F1.object_map, "morphisms": self.F1.morphism_map},
            "F2": {"objects": self.F2.object_map, "morphisms": self.F2.morphism_map},
        }


def identity_cc(x: CrossConnection) -> CCMorphism:
    return CCMorphism(x, x, identity_functor(x.C), identity_functor(x.D), "identity")


def compose_cc(m1: CCMorphism, m2: CCMorphism) -> CCMorphism:
    """m1 first, then m2."""
    return CCMorphism(m1.source, m2.target, compose_category_functors(m1.F1, m2.F1),
                      compose_category_functors(m1.F2, m2.F2), f"{m2.name}.{m1.name}")


def _maps_total(F: Functor) -> bool:
    S, T = F.source, F.target
    if len(F.object_map) != S.n_objects or len(F.morphism_map) != S.n:
        return False
    if any(not 0 <= v < T.n_objects for v in F.object_map) or any(not 0 <= f < T.n for f in F.morphism_map):
        return False
    return all(T.dom[F.morphism_map[f]] == F.object_map[S.dom[f]] and T.cod[F.morphism_map[f]] == F.object_map[S.cod[f]]
               for f in range(S.n))


def check_cc_morphism(m: CCMorphism, x: CrossConnection | None = None, x2: CrossConnection | None = None) -> Report:
    x = x or m.source
    x2 = x2 or m.target
    rep = Report()
    for tag, F in (("F1", m.F1), ("F2", m.F2)):
        sub = check_functor(F)
        check_inclusion_preserving(F, sub)
        rep.extend(sub, tag + ":")
    # M1 and M2 only need total maps that respect endpoints
    if not (_maps_total(m.F1) and _maps_total(m.F2)):
        return rep
    F1, F2 = m.F1, m.F2
    e2 = set(x2.e_gamma)
    for c, d in x.e_gamma:
        image = (F1.object_map[c], F2.object_map[d])
        if image not in e2:
            rep.add("M1", (c, d), "image pair is not in the target E_Gamma")
            continue
        cone = x.gamma_cone(c, d)
        cone2 = x2.gamma_cone(*image)
        for c1 in range(x.C.n_objects):
            if F1.morphism_map[cone[c1]] != cone2[F1.object_map[c1]]:
                rep.add("M1", (c, d, c1), "cone component not preserved")
    if rep.has("M1"):
        return rep
    pairs = x.e_gamma
    for cd in pairs:
        for cd2 in pairs:
            for f in x.C.hom(cd[0], cd2[0]):
                star = transpose(x, f, cd, cd2)
                image_pairs = ((F1.object_map[cd[0]], F2.object_map[cd[1]]),
                               (F1.object_map[cd2[0]], F2.object_map[cd2[1]]))
                try:
                    star2 = transpose(x2, F1.morphism_map[f], *image_pairs)
                except (NoTranspose, NonUniqueTranspose):
                    rep.add("M2", (f, cd, cd2), "image has no unique transpose")
                    continue
                if F2.morphism_map[star] != star2:
                    rep.add("M2", (f, cd, cd2), "transpose not preserved")
    return rep


__all__ = [
    "CrossConnection", "CCMorphism", "validate_crossconnection", "biorder_of", "transpose", "check_cc_morphism",
    "identity_cc", "compose_cc",
]
