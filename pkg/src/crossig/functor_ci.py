from __future__ import annotations

from .biorder import check_bimorphism
from .crossconn import CCMorphism, CrossConnection
from .errors import MalformedComposition
from .inductive import InductiveFunctor, InductiveGroupoid
from .normcat import (Functor, NormalDual, apex, build_category, check_functor, compose_cone, cone_semigroup,
                      enumerate_cones, is_isomorphism, is_local_isomorphism)
from .report import Report


class LCategory:
    """The normal category of L-classes of an inductive groupoid.

    A morphism [e, alpha, f> is keyed by (least of the L-class of e, the p-class representative
    of alpha, least of the L-class of f). Built over the dual groupoid, the same class
    presents the right-hand category, with alpha replaced by its inverse.
    """

    def __init__(self, ig: InductiveGroupoid, name: str = ""):
        self.ig = ig
        self.g = ig.g
        self.E = ig.E
        E, g = self.E, self.g
        self.reps = sorted({E.least_l(e) for e in range(E.n)})
        self.position = {e: i for i, e in enumerate(self.reps)}
        self.witness: dict = {}
        keys = []
        for e in self.reps:
            for alpha in range(g.n):
                if not E.leq[g.dom[alpha]][e]:
                    continue
                for f in self.reps:
                    if not E.leq_l[g.cod[alpha]][f]:
                        continue
                    key = self.key(e, alpha, f)
                    if key not in self.witness:
                        self.witness[key] = (e, alpha, f)
                        keys.append(key)
        keys.sort()
        self.C = build_category(
            [f"<-{E.labels[e]}" for e in self.reps], keys,
            dom_of=lambda k: self.position[k[0]],
            cod_of=lambda k: self.position[k[2]],
            mul=self._mul_keys,
            identity_of=lambda i: self.key(self.reps[i], g.identity[self.reps[i]], self.reps[i]),
            inclusion_of=self._inclusion_key,
            name=name or f"L({ig.name})",
        )
        self.witness_of = [self.witness[k] for k in self.C.labels]

    # canonical forms --------------------------------------------------------

    def eps(self, a: int, b: int) -> int:
        return self.ig.eval_pair(a, b)

    def p_representative(self, alpha: int) -> int:
        E, g = self.E, self.g
        d, r = g.dom[alpha], g.cod[alpha]
        d2, r2 = E.least_r(d), E.least_l(r)
        return g.mul_all(self.eps(d2, d), alpha, self.eps(r, r2))

    def key(self, e: int, alpha: int, f: int) -> tuple[int, int, int]:
        E, g = self.E, self.g
        if not E.leq_r[g.dom[alpha]][e] or not E.leq_l[g.cod[alpha]][f]:
            raise MalformedComposition(f"[{e}, {alpha}, {f}> is not a morphism triple", triple=[e, alpha, f])
        d = g.dom[alpha]
        w = E.product[d][e]
        ec = E.least_l(e)
        w2 = E.product[ec][w]
        moved = g.mul_all(self.eps(w2, w), self.eps(w, d), alpha)
        return (ec, self.p_representative(moved), E.least_l(f))

    def morphism(self, e: int, alpha: int, f: int) -> int:
        return self.C.index[self.key(e, alpha, f)]

    def object_of(self, e: int) -> int:
        return self.position[self.E.least_l(e)]

    def right_epi(self, morphism: int) -> tuple[int, int, int]:
        """A representative (e, alpha, f) with d(alpha) <= e."""
        return self.witness_of[morphism]

    # composition --------------------------------------------------------------

    def product(self, alpha: int, beta: int, h: int | None = None) -> int:
        """(alpha o beta)_h for h in the sandwich set of r(alpha) and d(beta)."""
        E, g = self.E, self.g
        f1, v = g.cod[alpha], g.dom[beta]
        if h is None:
            h = E.least_sandwich(f1, v)
        f1h, hv = E.product[f1][h], E.product[h][v]
        return g.mul_all(g.corestrict(alpha, f1h), self.eps(f1h, h), self.eps(h, hv), g.restrict(hv, beta))

    def compose_triples(self, first, second, h: int | None = None) -> tuple[int, int, int]:
        e1, alpha, _ = first
        _, beta, g2 = second
        return self.key(e1, self.product(alpha, beta, h), g2)

    def _mul_keys(self, a, b):
        return self.compose_triples(self.witness[a], self.witness[b])

    def _inclusion_key(self, i: int, k: int):
        e, f = self.reps[i], self.reps[k]
        if not self.E.leq_l[e][f]:
            return None
        return self.key(e, self.g.identity[e], f)

    def retraction(self, f: int, e: int) -> int:
        """[f, 1_{fe}, fe> for e <=l f."""
        fe = self.E.product[f][e]
        return self.morphism(f, self.g.identity[fe], fe)

    # cones ----------------------------------------------------------------------

    def principal_cone(self, alpha: int, h_choice=None) -> tuple:
        """r^alpha: the component at the object of g is [g, (1_g o alpha)_h, r(alpha)>."""
        E, g = self.E, self.g
        comps = []
        for rep in self.reps:
            h = None if h_choice is None else h_choice(rep, g.dom[alpha])
            theta = self.product(g.identity[rep], alpha, h)
            comps.append(self.morphism(rep, theta, g.cod[alpha]))
        return tuple(comps)

    def idempotent_cone(self, e: int) -> tuple:
        return self.principal_cone(self.g.identity[e])

    def to_dict(self) -> dict:
        out = self.C.to_dict()
        out["triples"] = [list(self.witness[k]) for k in self.C.labels]
        return out


def build_lcat(ig: InductiveGroupoid) -> LCategory:
    return LCategory(ig, f"L({ig.name})")


def build_rcat(ig: InductiveGroupoid) -> LCategory:
    """Right-hand category as the left category of the dual; <e, alpha, f] is stored as [e, alpha^-1, f>."""
    return LCategory(ig.dual(), f"R({ig.name})")


def r_morphism(R: LCategory, e: int, alpha: int, f: int) -> int:
    """Id of <e, alpha, f] in a category built by build_rcat."""
    return R.morphism(e, R.g.inverse[alpha], f)


def principal_cone(cat: LCategory, kind: str, generator: int, is_object: bool = False) -> tuple:
    """r^alpha (kind 'r', cat from build_lcat) or l^alpha (kind 'l', cat from build_rcat)."""
    g = cat.g
    alpha = g.identity[generator] if is_object else generator
    if kind == "l":
        alpha = g.inverse[alpha]
    return cat.principal_cone(alpha)


class GammaData:
    """C(G) together with the two categories it was built from."""

    def __init__(self, ig: InductiveGroupoid, L: LCategory, R: LCategory, x: CrossConnection):
        self.ig = ig
        self.L = L
        self.R = R
        self.x = x

    def pair_of(self, e: int) -> tuple[int, int]:
        return (self.L.object_of(e), self.R.object_of(e))


def build_gamma(ig: InductiveGroupoid, L: LCategory | None = None, R: LCategory | None = None) -> GammaData:
    L = L or build_lcat(ig)
    R = R or build_rcat(ig)
    g = ig.g
    gamma = [L.idempotent_cone(e) for e in R.reps]
    gamma_map = []
    for m in range(R.C.n):
        e, alpha_dual, f = R.right_epi(m)
        gamma_map.append(L.morphism(f, g.inverse[alpha_dual], e))
    delta = [R.idempotent_cone(e) for e in L.reps]
    delta_map = []
    for m in range(L.C.n):
        e, alpha, f = L.right_epi(m)
        delta_map.append(R.morphism(f, g.inverse[alpha], e))
    x = CrossConnection(L.C, R.C, gamma, gamma_map, delta, delta_map, name=f"C({ig.name})")
    return GammaData(ig, L, R, x)


def check_gamma_biorder(data: GammaData) -> Report:
    """biorder_of(C(G)) against E under e -> (<-e, ->e), by table equality."""
    from .crossconn import biorder_of

    rep = Report()
    E = data.ig.E
    E2 = biorder_of(data.x)
    index = {p: i for i, p in enumerate(data.x.e_gamma)}
    theta = []
    for e in range(E.n):
        pair = data.pair_of(e)
        if pair not in index:
            rep.add("E-Gamma", (e,), "(<-e, ->e) is not in E_Gamma")
            return rep
        theta.append(index[pair])
    if sorted(theta) != list(range(E2.n)):
        rep.add("E-Gamma", (), "e -> (<-e, ->e) is not a bijection onto E_Gamma")
        return rep
    for a in range(E.n):
        for b in range(E.n):
            p = E.product[a][b]
            q = E2.product[theta[a]][theta[b]]
            if (p is None) != (q is None) or (p is not None and theta[p] != q):
                rep.add("biorder-table", (a, b), "basic products differ")
    rep.stats["e_gamma"] = E2.n
    return rep


# the independence and factorization checks --------------------------------------


def _raw_triples(cat: LCategory):
    """Every right-epi triple (e, alpha, f) grouped by morphism id."""
    E, g = cat.E, cat.g
    groups = {m: [] for m in range(cat.C.n)}
    for e in range(E.n):
        for alpha in range(g.n):
            if not E.leq[g.dom[alpha]][e]:
                continue
            for f in range(E.n):
                if E.leq_l[g.cod[alpha]][f]:
                    groups[cat.C.index[cat.key(e, alpha, f)]].append((e, alpha, f))
    return groups


def check_sandwich_independence(cat: LCategory) -> Report:
    rep = Report()
    E, g, C = cat.E, cat.g, cat.C
    count = 0
    for (a, b), ab in sorted(C.compose.items()):
        first, second = cat.right_epi(a), cat.right_epi(b)
        for h in E.sandwich(g.cod[first[1]], g.dom[second[1]]):
            count += 1
            if C.index[cat.compose_triples(first, second, h)] != ab:
                rep.add("sandwich-independence", (a, b, h), "composite depends on the sandwich element")
    rep.stats["instances"] = count
    return rep


def check_representative_independence(cat: LCategory, limit: int | None = None) -> Report:
    rep = Report()
    C = cat.C
    groups = _raw_triples(cat)
    count = 0
    for (a, b), ab in sorted(C.compose.items()):
        for first in groups[a][:limit]:
            for second in groups[b][:limit]:
                count += 1
                if C.index[cat.compose_triples(first, second)] != ab:
                    rep.add("representative-independence", (a, b, first, second),
                            "composite depends on the representatives")
    rep.stats["instances"] = count
    return rep


def check_cone_products(cat: LCategory) -> Report:
    """r^alpha r^beta = r^{(alpha o beta)_h} for every pair of groupoid morphisms."""
    rep = Report()
    g = cat.g
    cones = [cat.principal_cone(alpha) for alpha in range(g.n)]
    for alpha in range(g.n):
        for beta in range(g.n):
            if compose_cone(cat.C, cones[alpha], cones[beta]) != cat.principal_cone(cat.product(alpha, beta)):
                rep.add("cone-product", (alpha, beta), "r^a r^b differs from r^(a o b)")
    for alpha in range(g.n):
        if cones[alpha] != cones[cat.p_representative(alpha)]:
            rep.add("cone-p-class", (alpha,), "principal cone depends on the p-class representative")
    rep.stats["pairs"] = g.n * g.n
    return rep


def check_cone_sandwich_independence(cat: LCategory) -> Report:
    rep = Report()
    E, g = cat.E, cat.g
    for alpha in range(g.n):
        base = cat.principal_cone(alpha)
        for k, rep_e in enumerate(cat.reps):
            for h in E.sandwich(rep_e, g.dom[alpha]):
                theta = cat.product(g.identity[rep_e], alpha, h)
                if cat.morphism(rep_e, theta, g.cod[alpha]) != base[k]:
                    rep.add("cone-sandwich", (alpha, rep_e, h), "cone component depends on the sandwich element")
    return rep


def check_factorization(cat: LCategory) -> Report:
    """[e, a, f> = [e, 1_d, d> [d, a, r> [r, 1_r, f> with d = d(a), r = r(a), as a normal factorization."""
    rep = Report()
    C, g = cat.C, cat.g
    for m in range(C.n):
        e, alpha, f = cat.right_epi(m)
        d, r = g.dom[alpha], g.cod[alpha]
        q = cat.morphism(e, g.identity[d], d)
        u = cat.morphism(d, alpha, r)
        j = cat.morphism(r, g.identity[r], f)
        if C.mul_all(q, u, j) != m:
            rep.add("factorization", (m,), "product of the three pieces differs")
            continue
        if not C.is_retraction(q) or not C.is_iso(u) or j not in C.inclusion_set:
            rep.add("factorization", (m,), "pieces are not retraction, isomorphism, inclusion")
            continue
        if (q, u, j) not in C.factorizations(m):
            rep.add("factorization", (m,), "not among the normal factorizations")
    return rep


def check_cone_bimorphism(cat: LCategory, cones=None) -> Report:
    """e -> r^e into E(TC) is a regular bimorphism that weakly reflects <=r."""
    from .fixtures import idempotent_biorder

    rep = Report()
    cones = cones if cones is not None else enumerate_cones(cat.C)
    T = cone_semigroup(cat.C, cones)
    S = T.to_semigroup(cat.C)
    E2 = idempotent_biorder(S)
    position = {S.idempotents[i]: i for i in range(len(S.idempotents))}
    E = cat.E
    theta = []
    for e in range(E.n):
        cone = cat.idempotent_cone(e)
        element = T.index.get(cone)
        if element not in position:
            rep.add("cone-bimorphism", (e,), "r^e is not an idempotent of TC")
            return rep
        theta.append(position[element])
    rep.extend(check_bimorphism(E, E2, theta, require_regular=True))
    for g0 in range(E.n):
        for e in range(E.n):
            for f in range(E.n):
                if not (E.leq_r[e][g0] and E.leq_r[f][g0] and E2.leq_r[theta[e]][theta[f]]):
                    continue
                if not any(theta[h] == theta[e] and E.leq_r[h][f] for h in range(E.n)):
                    rep.add("weak-reflection", (e, f, g0), "no h with r^h = r^e and h <=r f")
    return rep


def check_dual_presentation(cat: LCategory, R: LCategory, data: GammaData | None = None) -> Report:
    """G-bar: R(TC) -> N*C is an isomorphism, F-bar: R(G) -> R(TC) is a local isomorphism, and Gamma = G-bar F-bar."""
    from .fixtures import canonical_rho, principal_categories

    rep = Report()
    C = cat.C
    T = cone_semigroup(C, enumerate_cones(C))
    S = T.to_semigroup(C, name=f"T{C.name}")
    op = S.opposite()
    _, R_T = principal_categories(S)
    nd = NormalDual(C)
    cones = T.elements

    def tilde(eps, gamma, eps2):
        return C.compose[(gamma[apex(C, eps2)], C.j(apex(C, gamma), apex(C, eps)))]

    objects = [nd.object_of(cones[R_T.labels[R_T.identity[i]][0]]) for i in range(R_T.n_objects)]
    morphisms = []
    for m in range(R_T.n):
        e, u, f = R_T.labels[m]
        morphisms.append(nd.transformation(cones[e], cones[f], tilde(cones[e], cones[u], cones[f])))
    G_bar = Functor(R_T, nd.category, objects, morphisms, "G-bar")
    rep.extend(check_functor(G_bar), "G-bar:")
    if rep.ok:
        rep.extend(is_isomorphism(G_bar), "G-bar:")
    if data is None or not rep.ok:
        return rep

    def lam(e, alpha, f):
        re, ra, rf = (T.index[cat.idempotent_cone(e)], T.index[cat.principal_cone(alpha)],
                      T.index[cat.idempotent_cone(f)])
        return R_T.index[canonical_rho(op, re, S.table[S.table[rf][ra]][re], rf)]

    g = cat.g
    f_objects = [R_T.dom[lam(e, g.identity[e], e)] for e in R.reps]
    f_morphisms = []
    for m in range(R.C.n):
        e, alpha_dual, f = R.right_epi(m)
        f_morphisms.append(lam(e, g.inverse[alpha_dual], f))
    F_bar = Functor(R.C, R_T, f_objects, f_morphisms, "F-bar")
    rep.extend(check_functor(F_bar), "F-bar:")
    if rep.ok:
        rep.extend(is_local_isomorphism(F_bar), "F-bar:")
    Gamma = data.x.gamma_functor()
    for m in range(R.C.n):
        if G_bar.morphism_map[F_bar.morphism_map[m]] != Gamma.morphism_map[m]:
            rep.add("Gamma-factorization", (m,), "Gamma differs from G-bar after F-bar")
    rep.stats["TC"] = S.n
    return rep


# inductive functors ------------------------------------------------------------


def _map_category(F: InductiveFunctor, source: LCategory, target: LCategory, name: str) -> Functor:
    om = F.object_map
    objects = [target.object_of(om[e]) for e in source.reps]
    morphisms = []
    for m in range(source.C.n):
        e, alpha, f = source.right_epi(m)
        morphisms.append(target.morphism(om[e], F.morphism_map[alpha], om[f]))
    return Functor(source.C, target.C, objects, morphisms, name)


def map_inductive_functor(F: InductiveFunctor, source: GammaData, target: GammaData) -> CCMorphism:
    """(F1, F2) with F1[e, a, f> = [Fe, Fa, Ff> and the dual formula on the right category."""
    F1 = _map_category(F, source.L, target.L, "F1")
    F2 = _map_category(F, source.R, target.R, "F2")
    return CCMorphism(source.x, target.x, F1, F2, f"C({F.name})")


__all__ = [
    "LCategory", "GammaData", "build_lcat", "build_rcat", "build_gamma", "principal_cone", "r_morphism",
    "map_inductive_functor", "check_gamma_biorder", "check_sandwich_independence",
    "check_representative_independence", "check_cone_products", "check_cone_sandwich_independence",
    "check_factorization", "check_cone_bimorphism", "check_dual_presentation",
]
