from __future__ import annotations

from .biorder import BiorderedSet
from .crossconn import CCMorphism, CrossConnection, biorder_of, transpose
from .echain import EChain, chain_fragment, chain_groupoid, chain_leq, reduce_path, restrict_chain
from .errors import ClosureBoundExceeded, MalformedComposition, NoRestriction, NoTranspose, NonUniqueTranspose
from .groupoid import OrderedGroupoid, build_groupoid, check_ordered_groupoid
from .inductive import InductiveFunctor, InductiveGroupoid
from .normcat import SubobjectCategory, apex, compose_cone
from .report import Report


class CCGroupoid(InductiveGroupoid):
    """I(x): objects are the pairs of E_Gamma, morphisms are keys (i, f, g, k) with g = (f^-1)*."""

    def __init__(self, x: CrossConnection, groupoid: OrderedGroupoid, E: BiorderedSet, eval_gen: dict):
        super().__init__(groupoid, E, eval_gen, name=f"I({x.name})")
        self.x = x
        self.pairs = list(x.e_gamma)
        self.position = {p: i for i, p in enumerate(self.pairs)}

    def pair_morphism(self, alpha: int) -> tuple[int, int]:
        _, f, g, _ = self.g.labels[alpha]
        return f, g

    def morphism_of(self, cd, f: int, g: int, cd2) -> int:
        return self.g.index[(self.position[tuple(cd)], f, g, self.position[tuple(cd2)])]

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["source"] = self.x.name
        out["pairs"] = [list(p) for p in self.pairs]
        return out


def _pair_transpose(x: CrossConnection, f: int, cd, cd2):
    """(f^-1)* in D(d, d') for an isomorphism f in C(c, c'), or None."""
    C, D = x.C, x.D
    try:
        g = transpose(x, C.inverse_of(f), cd2, cd)
    except (NoTranspose, NonUniqueTranspose):
        return None
    return g if D.is_iso(g) else None


def build_ig(x: CrossConnection) -> CCGroupoid:
    C, D = x.C, x.D
    E = biorder_of(x)
    pairs = x.e_gamma
    keys = []
    for i, cd in enumerate(pairs):
        for k, cd2 in enumerate(pairs):
            for f in C.hom(cd[0], cd2[0]):
                if not C.is_iso(f):
                    continue
                g = _pair_transpose(x, f, cd, cd2)
                if g is not None:
                    keys.append((i, f, g, k))

    def leq(a, b):
        i, f, g, _ = a
        i1, f1, g1, _ = b
        (c, d), (c1, d1) = pairs[i], pairs[i1]
        if not E.leq[i][i1]:
            return False
        return (f == C.epi(C.compose[(C.j(c, c1), f1)])
                and g == D.epi(D.compose[(D.j(d, d1), g1)]))

    groupoid = build_groupoid(
        len(pairs), keys,
        dom_of=lambda t: t[0],
        cod_of=lambda t: t[3],
        mul=lambda a, b: (a[0], C.compose[(a[1], b[1])], D.compose[(a[2], b[2])], b[3]),
        inv=lambda t: (t[3], C.inverse_of(t[1]), D.inverse_of(t[2]), t[0]),
        leq=leq,
        identity_of=lambda i: (i, C.identity[pairs[i][0]], D.identity[pairs[i][1]], i),
        object_labels=E.labels,
        name=f"G({x.name})",
        object_leq=lambda a, b: E.leq[a][b],
    )
    eval_gen = {}
    for i in range(E.n):
        for k in range(E.n):
            if i == k or not (E.R[i][k] or E.L[i][k]):
                continue
            f, g = evaluation_pair(x, pairs[i], pairs[k])
            key = (i, f, g, k)
            if key not in groupoid.index:
                raise MalformedComposition(f"evaluation of {pairs[i]} -> {pairs[k]} is not a morphism", pair=[i, k])
            eval_gen[(i, k)] = groupoid.index[key]
    return CCGroupoid(x, groupoid, E, eval_gen)


def evaluation_pair(x: CrossConnection, *chain):
    """((gamma_1 ... gamma_n)(c_1), (delta_1 ... delta_n)(d_1)) for a chain of E_Gamma pairs."""
    gamma = x.gamma_cone(*chain[0])
    delta = x.delta_cone(*chain[0])
    for cd in chain[1:]:
        gamma = compose_cone(x.C, gamma, x.gamma_cone(*cd))
        delta = compose_cone(x.D, delta, x.delta_cone(*cd))
    c1, d1 = chain[0]
    return gamma[c1], delta[d1]


# checks ------------------------------------------------------------------------------


def _cone_restriction(ig: CCGroupoid, e: int, chain: EChain):
    """h-sequence of e along the chain computed from cone products; None if an apex pair leaves E_Gamma."""
    x = ig.x
    pairs = ig.pairs
    theta = x.gamma_cone(*pairs[e])
    eta = x.delta_cone(*pairs[e])
    out = [e]
    for entry in chain.seq[1:]:
        gamma_i, delta_i = x.gamma_cone(*pairs[entry]), x.delta_cone(*pairs[entry])
        theta = compose_cone(x.C, compose_cone(x.C, gamma_i, theta), gamma_i)
        eta = compose_cone(x.D, compose_cone(x.D, delta_i, eta), delta_i)
        pair = (apex(x.C, theta), apex(x.D, eta))
        if pair not in ig.position:
            return None
        if x.gamma_cone(*pair) != theta or x.delta_cone(*pair) != eta:
            return None
        out.append(ig.position[pair])
    return tuple(out)


def chain_universe(E: BiorderedSet, fragment_length: int | None = None):
    """The chain groupoid when it closes within the bound, else a fragment of reduced chains."""
    try:
        return chain_groupoid(E)
    except ClosureBoundExceeded:
        return chain_fragment(E, fragment_length)


def check_chain_order(ig: CCGroupoid, fragment_length: int | None = None) -> Report:
    """The cone-product restriction agrees with restrict_chain and chain_leq for every chain."""
    rep = Report()
    E = ig.E
    universe = chain_universe(E, fragment_length)
    chains = universe.labels
    by_dom: dict = {}
    for c in chains:
        by_dom.setdefault(c.dom, []).append(c)
    count = 0
    for c2 in chains:
        for e in range(E.n):
            if not E.leq[e][c2.dom]:
                continue
            count += 1
            seq = _cone_restriction(ig, e, c2)
            if seq is None:
                rep.add("chain-order", (e, list(c2.seq)), "cone product apex is not a pair of E_Gamma")
                continue
            by_cones = reduce_path(E, seq)
            try:
                expected = restrict_chain(E, e, c2)
            except NoRestriction:
                rep.add("chain-order", (e, list(c2.seq)), "restriction missing")
                continue
            if by_cones != expected:
                rep.add("chain-order", (e, list(c2.seq)), "cone restriction differs from the h-sequence")
                continue
            for c1 in by_dom.get(e, []):
                if chain_leq(E, c1, c2) != (c1 == by_cones):
                    rep.add("chain-order", (list(c1.seq), list(c2.seq)), "chain_leq disagrees")
    rep.stats["instances"] = count
    rep.stats["chains"] = len(chains)
    return rep


def check_restriction_identity(ig: CCGroupoid) -> Report:
    """f gamma'_1(c') = gamma_1(c) f_1 and g delta'_1(d') = delta_1(d) g_1 for every restriction."""
    rep = Report()
    x, g, E = ig.x, ig.g, ig.E
    C, D = x.C, x.D
    count = 0
    for alpha in range(g.n):
        f, gg = ig.pair_morphism(alpha)
        c, d = ig.pairs[g.cod[alpha]]
        for e in range(E.n):
            if not E.leq[e][g.dom[alpha]]:
                continue
            count += 1
            beta = g.restrict(e, alpha)
            f1, g1 = ig.pair_morphism(beta)
            c0, d0 = ig.pairs[g.dom[alpha]]
            source, target = ig.pairs[g.dom[beta]], ig.pairs[g.cod[beta]]
            lhs_c = C.compose[(f, x.gamma_cone(*target)[c])]
            rhs_c = C.compose[(x.gamma_cone(*source)[c0], f1)]
            lhs_d = D.compose[(gg, x.delta_cone(*target)[d])]
            rhs_d = D.compose[(x.delta_cone(*source)[d0], g1)]
            if lhs_c != rhs_c or lhs_d != rhs_d:
                rep.add("restriction-identity", (alpha, e), "square does not commute")
    rep.stats["instances"] = count
    return rep


def iso_groupoid(C: SubobjectCategory, name: str = "") -> OrderedGroupoid:
    """Isomorphisms of C ordered by f <= f1 iff dom f is a subobject of dom f1 and f = (j f1)°."""
    keys = [f for f in range(C.n) if C.is_iso(f)]

    def leq(a, b):
        c, c1 = C.dom[a], C.dom[b]
        return C.subset(c, c1) and a == C.epi(C.compose[(C.j(c, c1), b)])

    return build_groupoid(
        C.n_objects, keys,
        dom_of=lambda f: C.dom[f],
        cod_of=lambda f: C.cod[f],
        mul=lambda a, b: C.compose[(a, b)],
        inv=C.inverse_of,
        leq=leq,
        identity_of=lambda c: C.identity[c],
        object_labels=C.object_labels,
        name=f"iso({name or C.name})",
        object_leq=C.subset,
    )


def check_one_sided(x: CrossConnection) -> Report:
    rep = Report()
    rep.extend(check_ordered_groupoid(iso_groupoid(x.C)), "C-side:")
    rep.extend(check_ordered_groupoid(iso_groupoid(x.D)), "D-side:")
    return rep


def check_identity_order(ig: CCGroupoid) -> Report:
    rep = Report()
    g, E = ig.g, ig.E
    for a in range(E.n):
        for b in range(E.n):
            if g.object_leq(a, b) != E.leq[a][b]:
                rep.add("identity-order", (a, b), "order on identities differs from the natural order")
    return rep


# morphisms ---------------------------------------------------------------------------


def map_morphism(m: CCMorphism, source: CCGroupoid | None = None, target: CCGroupoid | None = None) -> InductiveFunctor:
    """(F1 x F2) restricted to the groupoids of the two cross-connections."""
    source = source or build_ig(m.source)
    target = target or build_ig(m.target)
    F1, F2 = m.F1, m.F2
    object_map = []
    for c, d in source.pairs:
        image = (F1.object_map[c], F2.object_map[d])
        if image not in target.position:
            raise MalformedComposition(f"image {image} of {(c, d)} is not a pair of the target E_Gamma",
                                       pair=[c, d])
        object_map.append(target.position[image])
    morphism_map = []
    for alpha in range(source.g.n):
        i, f, g, k = source.g.labels[alpha]
        key = (object_map[i], F1.morphism_map[f], F2.morphism_map[g], object_map[k])
        if key not in target.g.index:
            raise MalformedComposition(f"image of morphism {alpha} is not a morphism of the target groupoid",
                                       morphism=alpha)
        morphism_map.append(target.g.index[key])
    return InductiveFunctor(source, target, object_map, morphism_map, f"I({m.name})")


__all__ = [
    "CCGroupoid", "build_ig", "evaluation_pair", "check_chain_order", "check_restriction_identity",
    "iso_groupoid", "check_one_sided", "check_identity_order", "map_morphism", "chain_universe",
]
