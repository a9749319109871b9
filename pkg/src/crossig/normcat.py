from __future__ import annotations

from itertools import product as cartesian

from .errors import ClosureBoundExceeded, MalformedComposition, NoFactorization
from .report import Report


class SubobjectCategory:
    """Finite category with a designated inclusion for each pair c <= c'.

    Morphisms are dense ids; `labels` keeps the hashable key each id came from.
    """

    def __init__(self, object_labels, dom, cod, compose, identity, inclusions, labels=None, name=""):
        self.object_labels = list(object_labels)
        self.n_objects = len(self.object_labels)
        self.dom = list(dom)
        self.cod = list(cod)
        self.compose = compose
        self.identity = list(identity)
        self.inclusions = dict(inclusions)
        self.labels = list(labels) if labels is not None else list(range(len(self.dom)))
        self.index = {key: i for i, key in enumerate(self.labels)}
        self.name = name
        self._hom = {}
        for f in range(self.n):
            self._hom.setdefault((self.dom[f], self.cod[f]), []).append(f)
        self.inclusion_set = frozenset(self.inclusions.values())
        self._inverse = None
        self._retractions = None
        self._factorizations: dict = {}
        self._cones = None

    @property
    def n(self) -> int:
        return len(self.dom)

    def hom(self, a: int, b: int) -> list[int]:
        return self._hom.get((a, b), [])

    def mul(self, f: int, g: int) -> int:
        return self.compose[(f, g)]

    def mul_all(self, *terms) -> int:
        acc = terms[0]
        for t in terms[1:]:
            acc = self.compose[(acc, t)]
        return acc

    def subset(self, a: int, b: int) -> bool:
        return (a, b) in self.inclusions

    def j(self, a: int, b: int) -> int:
        return self.inclusions[(a, b)]

    def ideal(self, c: int) -> list[int]:
        return [a for a in range(self.n_objects) if self.subset(a, c)]

    def inverse_of(self, f: int):
        if self._inverse is None:
            inv = {}
            for x in range(self.n):
                for y in self.hom(self.cod[x], self.dom[x]):
                    if self.compose[(x, y)] == self.identity[self.dom[x]] and \
                            self.compose[(y, x)] == self.identity[self.cod[x]]:
                        inv[x] = y
                        break
            self._inverse = inv
        return self._inverse.get(f)

    def is_iso(self, f: int) -> bool:
        return self.inverse_of(f) is not None

    def retractions(self, c: int) -> list[int]:
        """Morphisms q: c -> c' with c' <= c and j(c',c) q = 1."""
        if self._retractions is None:
            table = {a: [] for a in range(self.n_objects)}
            for (a, b), jab in sorted(self.inclusions.items()):
                for q in self.hom(b, a):
                    if self.compose[(jab, q)] == self.identity[a]:
                        table[b].append(q)
            self._retractions = table
        return self._retractions[c]

    def is_retraction(self, f: int) -> bool:
        return f in self.retractions(self.dom[f])

    def factorizations(self, f: int) -> list[tuple[int, int, int]]:
        """Every normal factorization (q, u, j) of f."""
        if f not in self._factorizations:
            out = []
            c, d = self.dom[f], self.cod[f]
            targets = [(b, self.j(b, d)) for b in self.ideal(d)]
            for q in self.retractions(c):
                c1 = self.cod[q]
                for b, jb in targets:
                    for u in self.hom(c1, b):
                        if self.is_iso(u) and self.mul_all(q, u, jb) == f:
                            out.append((q, u, jb))
            self._factorizations[f] = out
        return self._factorizations[f]

    def epi(self, f: int) -> int:
        """Epimorphic component q u; raises NoFactorization if f has none."""
        found = self.factorizations(f)
        if not found:
            raise NoFactorization(f"morphism {f} ({self.labels[f]!r}) has no normal factorization", morphism=f)
        q, u, _ = found[0]
        return self.compose[(q, u)]

    def image(self, f: int) -> int:
        return self.cod[self.epi(f)]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "objects": [_plain(o) for o in self.object_labels],
            "morphisms": [{"id": f, "label": _plain(self.labels[f]), "dom": self.dom[f], "cod": self.cod[f]}
                          for f in range(self.n)],
            "compose": sorted([f, g, h] for (f, g), h in self.compose.items()),
            "identities": self.identity,
            "inclusions": sorted([a, b, m] for (a, b), m in self.inclusions.items()),
        }

    def __repr__(self) -> str:
        return f"SubobjectCategory({self.name!r}, objects={self.n_objects}, morphisms={self.n})"


def _plain(value):
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, frozenset):
        return sorted((_plain(v) for v in value), key=repr)
    return value


def build_category(object_labels, keys, dom_of, cod_of, mul, identity_of, inclusion_of, name=""):
    """Materialize a category from hashable morphism keys.

    inclusion_of(a, b) returns the key of j(a, b) or None when a is not below b.
    """
    keys = list(keys)
    index = {k: i for i, k in enumerate(keys)}
    if len(index) != len(keys):
        raise MalformedComposition("duplicate morphism keys")
    dom = [dom_of(k) for k in keys]
    cod = [cod_of(k) for k in keys]
    by_dom: dict = {}
    for i, d in enumerate(dom):
        by_dom.setdefault(d, []).append(i)
    compose = {}
    for i, k in enumerate(keys):
        for j in by_dom.get(cod[i], []):
            value = mul(k, keys[j])
            if value not in index:
                raise MalformedComposition(f"product of {k!r} and {keys[j]!r} is not a morphism: {value!r}")
            compose[(i, j)] = index[value]
    n_obj = len(object_labels)
    identity = []
    for a in range(n_obj):
        key = identity_of(a)
        if key not in index:
            raise MalformedComposition(f"identity at object {a} missing")
        identity.append(index[key])
    inclusions = {}
    for a in range(n_obj):
        for b in range(n_obj):
            key = inclusion_of(a, b)
            if key is not None:
                if key not in index:
                    raise MalformedComposition(f"inclusion {a} -> {b} is not a morphism")
                inclusions[(a, b)] = index[key]
    return SubobjectCategory(object_labels, dom, cod, compose, identity, inclusions, keys, name)


def check_category(C: SubobjectCategory) -> Report:
    rep = Report()
    for (f, g), h in sorted(C.compose.items()):
        if C.cod[f] != C.dom[g] or C.dom[h] != C.dom[f] or C.cod[h] != C.cod[g]:
            rep.add("category", (f, g), "product has wrong endpoints")
    for f in range(C.n):
        if C.compose.get((C.identity[C.dom[f]], f)) != f or C.compose.get((f, C.identity[C.cod[f]])) != f:
            rep.add("category", (f,), "identity law fails")
    for (f, g), fg in sorted(C.compose.items()):
        for h in range(C.n):
            if C.dom[h] != C.cod[g]:
                continue
            if C.compose.get((fg, h)) != C.compose.get((f, C.compose[(g, h)])):
                rep.add("category", (f, g, h), "associativity fails")
    return rep


def check_subobject_category(C: SubobjectCategory) -> Report:
    rep = check_category(C)
    if not rep.ok:
        return rep
    for a in range(C.n_objects):
        if C.inclusions.get((a, a)) != C.identity[a]:
            rep.add("inclusions", (a,), "identity is not the inclusion of an object in itself")
    for (a, b), jab in sorted(C.inclusions.items()):
        if C.dom[jab] != a or C.cod[jab] != b:
            rep.add("inclusions", (a, b), "inclusion has wrong endpoints")
        if a != b and (b, a) in C.inclusions:
            rep.add("inclusions", (a, b), "inclusion preorder is not strict")
        for c in range(C.n_objects):
            if (b, c) in C.inclusions:
                jac = C.inclusions.get((a, c))
                if jac is None or C.compose[(jab, C.inclusions[(b, c)])] != jac:
                    rep.add("inclusions", (a, b, c), "inclusions not closed under composition")
    for jab in sorted(C.inclusion_set):
        a = C.dom[jab]
        for x in range(C.n_objects):
            images = {}
            for f in C.hom(x, a):
                v = C.compose[(f, jab)]
                if v in images:
                    rep.add("mono", (jab, images[v], f), "inclusion is not a monomorphism")
                images[v] = f
    for f in sorted(C.inclusion_set):
        for g in sorted(C.inclusion_set):
            for h in C.hom(C.dom[f], C.dom[g]):
                if C.compose[(h, g)] == f and h not in C.inclusion_set:
                    rep.add("inclusions", (f, g, h), "f = hg with f, g inclusions but h is not one")
    return rep


def check_normal_category(C: SubobjectCategory, cones=None) -> Report:
    rep = check_subobject_category(C)
    if not rep.ok:
        return rep
    for f in range(C.n):
        found = C.factorizations(f)
        if not found:
            rep.add("NC1", (f,), "no normal factorization")
            continue
        epis = {C.compose[(q, u)] for q, u, _ in found}
        if len(epis) != 1:
            rep.add("NC1-unique", (f,), "epimorphic component depends on the factorization")
    for (a, b), jab in sorted(C.inclusions.items()):
        if not C.retractions(b) or not any(C.cod[q] == a for q in C.retractions(b)):
            rep.add("NC2", (a, b), "inclusion does not split")
    if cones is None:
        cones = idempotent_cones(C)
    else:
        for gamma in cones:
            sub = check_cone(C, gamma)
            if not sub.ok:
                rep.add("NC3", tuple(gamma), "supplied cone is invalid")
    apexes = {apex(C, gamma) for gamma in cones if gamma[apex(C, gamma)] == C.identity[apex(C, gamma)]}
    for c in range(C.n_objects):
        if c not in apexes:
            rep.add("NC3", (c,), "no idempotent cone with this apex")
    rep.stats["objects"] = C.n_objects
    rep.stats["morphisms"] = C.n
    return rep


def normal_factorize(C: SubobjectCategory, f: int) -> tuple[int, int, int]:
    found = C.factorizations(f)
    if not found:
        raise NoFactorization(f"morphism {f} has no normal factorization", morphism=f)
    return found[0]


# cones ---------------------------------------------------------------------


def apex(C: SubobjectCategory, gamma) -> int:
    return C.cod[gamma[0]]


def check_cone(C: SubobjectCategory, gamma) -> Report:
    rep = Report()
    if len(gamma) != C.n_objects:
        rep.add("Ncone1", (), "component count differs from the object count")
        return rep
    top = C.cod[gamma[0]]
    for c, f in enumerate(gamma):
        if C.dom[f] != c or C.cod[f] != top:
            rep.add("Ncone1", (c,), "component has wrong endpoints")
    if not rep.ok:
        return rep
    for (a, b), jab in sorted(C.inclusions.items()):
        if C.compose[(jab, gamma[b])] != gamma[a]:
            rep.add("Ncone2", (a, b), "components not compatible with the inclusion")
    if not any(C.is_iso(f) for f in gamma):
        rep.add("Ncone3", (), "no component is an isomorphism")
    return rep


def is_cone(C: SubobjectCategory, gamma) -> bool:
    return check_cone(C, gamma).ok


def enumerate_cones(C: SubobjectCategory, target=None) -> list[tuple]:
    """All cones (optionally with a fixed apex) via choices at maximal objects."""
    if C._cones is None:
        maximal = [c for c in range(C.n_objects)
                   if not any(C.subset(c, d) and c != d for d in range(C.n_objects))]
        below_max = {m: C.ideal(m) for m in maximal}
        out = []
        for top in range(C.n_objects):
            choices = [C.hom(m, top) for m in maximal]
            for pick in cartesian(*choices):
                comps = [None] * C.n_objects
                ok = True
                for m, f in zip(maximal, pick):
                    for c in below_max[m]:
                        value = C.compose[(C.j(c, m), f)]
                        if comps[c] is None:
                            comps[c] = value
                        elif comps[c] != value:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok or any(v is None for v in comps):
                    continue
                gamma = tuple(comps)
                if is_cone(C, gamma):
                    out.append(gamma)
        C._cones = sorted(out)
    if target is None:
        return C._cones
    return [g for g in C._cones if apex(C, g) == target]


def is_idempotent_cone(C: SubobjectCategory, gamma) -> bool:
    top = apex(C, gamma)
    return gamma[top] == C.identity[top]


def idempotent_cones(C: SubobjectCategory) -> list[tuple]:
    return [g for g in enumerate_cones(C) if is_idempotent_cone(C, g)]


def cone_star(C: SubobjectCategory, gamma, f: int) -> tuple:
    return tuple(C.compose[(g, f)] for g in gamma)


def compose_cone(C: SubobjectCategory, gamma, sigma) -> tuple:
    """gamma . sigma = gamma * (sigma(c_gamma))°."""
    return cone_star(C, gamma, C.epi(sigma[apex(C, gamma)]))


def m_set(C: SubobjectCategory, gamma) -> frozenset:
    return frozenset(c for c, f in enumerate(gamma) if C.is_iso(f))


class HFunctor:
    """H(gamma; -) with eta: H(gamma; c) -> C(c_gamma, c) stored as dicts cone -> morphism."""

    def __init__(self, C: SubobjectCategory, gamma):
        self.C = C
        self.base_cone = tuple(gamma)
        self.apex = apex(C, gamma)
        self.eta = []
        for c in range(C.n_objects):
            table = {}
            for f in C.hom(self.apex, c):
                table[cone_star(C, gamma, C.epi(f))] = f
            self.eta.append(table)
        self.sets = [frozenset(t) for t in self.eta]
        self.key = tuple(self.sets)

    def apply(self, g: int, cone) -> tuple:
        """H(gamma; g) on an element of H(gamma; dom g)."""
        f = self.eta[self.C.dom[g]][cone]
        return cone_star(self.C, self.base_cone, self.C.epi(self.C.compose[(f, g)]))

    def m_set(self) -> frozenset:
        return m_set(self.C, self.base_cone)

    def check(self) -> Report:
        """eta bijective and natural; maps well defined."""
        rep = Report()
        C = self.C
        for c in range(C.n_objects):
            if len(self.eta[c]) != len(C.hom(self.apex, c)):
                rep.add("eta", (c,), "eta is not injective")
        for g in range(C.n):
            for cone, f in self.eta[C.dom[g]].items():
                image = self.apply(g, cone)
                if self.eta[C.cod[g]].get(image) != C.compose[(f, g)]:
                    rep.add("eta-natural", (g,), "eta not natural")
        return rep


_H_CACHE_ATTR = "_hfunctors"


def h_functor(C: SubobjectCategory, gamma) -> HFunctor:
    cache = C.__dict__.setdefault(_H_CACHE_ATTR, {})
    gamma = tuple(gamma)
    if gamma not in cache:
        cache[gamma] = HFunctor(C, gamma)
    return cache[gamma]


class ConeSemigroup:
    def __init__(self, elements, table):
        self.elements = list(elements)
        self.table = table
        self.index = {g: i for i, g in enumerate(self.elements)}

    def to_semigroup(self, C: SubobjectCategory, name="TC"):
        from .semigroup import FiniteSemigroup

        labels = ["<" + ",".join(str(x) for x in g) + ">" for g in self.elements]
        return FiniteSemigroup(self.table, labels, name)


def cone_semigroup(C: SubobjectCategory, seeds, cap: int = 5000) -> ConeSemigroup:
    found = sorted(set(tuple(s) for s in seeds))
    seen = set(found)
    frontier = list(found)
    while frontier:
        nxt = []
        current = sorted(seen)
        for a in frontier:
            for b in current:
                for x, y in ((a, b), (b, a)):
                    p = compose_cone(C, x, y)
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
                        if len(seen) > cap:
                            raise ClosureBoundExceeded(f"cone closure exceeds {cap}", cap=cap)
        frontier = nxt
    elements = sorted(seen)
    index = {g: i for i, g in enumerate(elements)}
    table = [[index[compose_cone(C, a, b)] for b in elements] for a in elements]
    return ConeSemigroup(elements, table)


# normal dual ----------------------------------------------------------------


class NormalDual:
    """N*C presented concretely.

    Objects are the distinct H-functors of idempotent cones, each with a fixed
    representative cone. A morphism H_i -> H_k is stored as (i, k, x) where
    x in C(apex rep_k, apex rep_i) is the Yoneda representative of the natural
    transformation; composition reverses: (i,k,x)(k,l,y) = (i,l,yx).
    """

    def __init__(self, C: SubobjectCategory):
        self.C = C
        reps = {}
        for eps in idempotent_cones(C):
            H = h_functor(C, eps)
            reps.setdefault(H.key, eps)
        self.keys = sorted(reps, key=lambda k: reps[k])
        self.reps = [reps[k] for k in self.keys]
        self.position = {k: i for i, k in enumerate(self.keys)}
        self.h = [h_functor(C, eps) for eps in self.reps]
        self.apexes = [apex(C, eps) for eps in self.reps]
        self.category = self._build()

    def object_of(self, gamma) -> int:
        return self.position[h_functor(self.C, gamma).key]

    def contains(self, i: int, k: int) -> bool:
        return all(a <= b for a, b in zip(self.keys[i], self.keys[k]))

    def _build(self) -> SubobjectCategory:
        C = self.C
        m = len(self.keys)
        keys = []
        for i in range(m):
            for k in range(m):
                for x in C.hom(self.apexes[k], self.apexes[i]):
                    keys.append((i, k, x))

        def inclusion_of(i, k):
            if not self.contains(i, k):
                return None
            return (i, k, self.h[k].eta[self.apexes[i]][self.reps[i]])

        labels = [f"H{i}" for i in range(m)]
        return build_category(
            labels, keys,
            dom_of=lambda t: t[0],
            cod_of=lambda t: t[1],
            mul=lambda a, b: (a[0], b[1], C.compose[(b[2], a[2])]),
            identity_of=lambda i: (i, i, C.identity[self.apexes[i]]),
            inclusion_of=inclusion_of,
            name=f"N*{C.name}",
        )

    def transformation(self, gamma, gamma2, rep_morphism: int) -> int:
        """The N*C morphism H(gamma) -> H(gamma2) whose action is gamma*h° -> gamma2*(rep h)°.

        rep_morphism lies in C(apex gamma2, apex gamma).
        """
        C = self.C
        i, k = self.object_of(gamma), self.object_of(gamma2)
        Hg, Hg2 = h_functor(C, gamma), h_functor(C, gamma2)
        source_rep = self.reps[i]
        h = Hg.eta[self.apexes[i]][source_rep]
        image = cone_star(C, gamma2, C.epi(C.compose[(rep_morphism, h)]))
        x = self.h[k].eta[self.apexes[i]][image]
        return self.category.index[(i, k, x)]

    def action(self, morphism: int, cone):
        """Apply an N*C morphism to an element of its source H-functor."""
        i, k, x = self.category.labels[morphism]
        C = self.C
        h = self.h[i].eta[apex(C, cone)][cone]
        return cone_star(C, self.reps[k], C.epi(C.compose[(x, h)]))


# functors --------------------------------------------------------------------


class Functor:
    def __init__(self, source: SubobjectCategory, target: SubobjectCategory, object_map, morphism_map, name=""):
        self.source = source
        self.target = target
        self.object_map = list(object_map)
        self.morphism_map = list(morphism_map)
        self.name = name

    def __call__(self, f: int) -> int:
        return self.morphism_map[f]


def identity_functor(C: SubobjectCategory) -> Functor:
    return Functor(C, C, range(C.n_objects), range(C.n), "identity")


def compose_category_functors(F: Functor, G: Functor) -> Functor:
    return Functor(F.source, G.target, [G.object_map[a] for a in F.object_map],
                   [G.morphism_map[f] for f in F.morphism_map], f"{G.name}.{F.name}")


def check_functor(F: Functor) -> Report:
    rep = Report()
    S, T = F.source, F.target
    om, mm = F.object_map, F.morphism_map
    if len(om) != S.n_objects or len(mm) != S.n:
        rep.add("functor", (), "maps are not total")
        return rep
    for f in range(S.n):
        if T.dom[mm[f]] != om[S.dom[f]] or T.cod[mm[f]] != om[S.cod[f]]:
            rep.add("functor", (f,), "endpoints not preserved")
    if not rep.ok:
        return rep
    for a in range(S.n_objects):
        if mm[S.identity[a]] != T.identity[om[a]]:
            rep.add("functor", (a,), "identity not preserved")
    for (f, g), h in sorted(S.compose.items()):
        if T.compose[(mm[f], mm[g])] != mm[h]:
            rep.add("functor", (f, g), "composition not preserved")
    return rep


def check_inclusion_preserving(F: Functor, rep: Report | None = None) -> Report:
    rep = rep if rep is not None else Report()
    for (a, b), jab in sorted(F.source.inclusions.items()):
        image = F.morphism_map[jab]
        if F.target.inclusions.get((F.object_map[a], F.object_map[b])) != image:
            rep.add("inclusion-preserving", (a, b), "inclusion not mapped to an inclusion")
    return rep


def is_local_isomorphism(F: Functor) -> Report:
    rep = check_functor(F)
    if not rep.ok:
        return rep
    check_inclusion_preserving(F, rep)
    S, T = F.source, F.target
    om, mm = F.object_map, F.morphism_map
    for a in range(S.n_objects):
        for b in range(S.n_objects):
            images = [mm[f] for f in S.hom(a, b)]
            if len(set(images)) != len(images):
                rep.add("faithful", (a, b), "two morphisms share an image")
            if len(set(images)) != len(T.hom(om[a], om[b])):
                rep.add("full", (a, b), "hom-set map is not surjective")
    for c in range(S.n_objects):
        ideal = S.ideal(c)
        image = [om[a] for a in ideal]
        target_ideal = T.ideal(om[c])
        if len(set(image)) != len(image) or sorted(set(image)) != sorted(target_ideal):
            rep.add("ideal", (c,), "object map is not a bijection of ideals")
            continue
        for a in ideal:
            for b in ideal:
                if S.subset(a, b) != T.subset(om[a], om[b]):
                    rep.add("ideal", (c, a, b), "inclusion order not reflected on the ideal")
    return rep


def is_isomorphism(F: Functor) -> Report:
    """Bijective on objects and morphisms, inclusions preserved and reflected."""
    rep = check_functor(F)
    if not rep.ok:
        return rep
    check_inclusion_preserving(F, rep)
    S, T = F.source, F.target
    if sorted(F.object_map) != list(range(T.n_objects)):
        rep.add("iso-objects", (), "object map is not a bijection")
    if sorted(F.morphism_map) != list(range(T.n)):
        rep.add("iso-morphisms", (), "morphism map is not a bijection")
    if rep.ok:
        for a in range(S.n_objects):
            for b in range(S.n_objects):
                if S.subset(a, b) != T.subset(F.object_map[a], F.object_map[b]):
                    rep.add("iso-inclusions", (a, b), "inclusions not reflected")
    return rep


# isomorphism search ------------------------------------------------------------


def _morphism_invariant(C: SubobjectCategory, f: int):
    endo_cycle = None
    if C.dom[f] == C.cod[f]:
        powers = [f]
        while True:
            nxt = C.compose[(powers[-1], f)]
            if nxt in powers:
                endo_cycle = (len(powers), powers.index(nxt))
                break
            powers.append(nxt)
    return (C.is_iso(f), f in C.inclusion_set, C.is_retraction(f), endo_cycle)


def _object_invariant(C: SubobjectCategory, a: int):
    outs = sorted(len(C.hom(a, b)) for b in range(C.n_objects))
    ins = sorted(len(C.hom(b, a)) for b in range(C.n_objects))
    subs = sum(C.subset(b, a) for b in range(C.n_objects))
    sups = sum(C.subset(a, b) for b in range(C.n_objects))
    return (len(C.hom(a, a)), tuple(outs), tuple(ins), subs, sups)


def find_isomorphism(A: SubobjectCategory, B: SubobjectCategory):
    """Exhaustive search for an inclusion-preserving-and-reflecting isomorphism A -> B.

    Returns a Functor or None.
    """
    if A.n_objects != B.n_objects or A.n != B.n:
        return None
    inv_a = [_object_invariant(A, a) for a in range(A.n_objects)]
    inv_b = [_object_invariant(B, b) for b in range(B.n_objects)]
    if sorted(inv_a) != sorted(inv_b):
        return None
    minv_a = [_morphism_invariant(A, f) for f in range(A.n)]
    minv_b = [_morphism_invariant(B, f) for f in range(B.n)]
    if sorted(minv_a, key=repr) != sorted(minv_b, key=repr):
        return None
    order = sorted(range(A.n_objects), key=lambda a: (-len(A.hom(a, a)), a))

    def object_maps(k, current, used):
        if k == len(order):
            yield dict(current)
            return
        a = order[k]
        for b in range(B.n_objects):
            if b in used or inv_a[a] != inv_b[b]:
                continue
            ok = True
            for a2, b2 in current.items():
                if len(A.hom(a, a2)) != len(B.hom(b, b2)) or len(A.hom(a2, a)) != len(B.hom(b2, b)):
                    ok = False
                    break
                if A.subset(a, a2) != B.subset(b, b2) or A.subset(a2, a) != B.subset(b2, b):
                    ok = False
                    break
            if not ok:
                continue
            current[a] = b
            used.add(b)
            yield from object_maps(k + 1, current, used)
            del current[a]
            used.discard(b)

    generators = _generators(A)
    for omap in object_maps(0, {}, set()):
        result = _match_morphisms(A, B, omap, generators, minv_a, minv_b)
        if result is not None:
            return Functor(A, B, [omap[a] for a in range(A.n_objects)], result, "isomorphism")
    return None


def _generators(A: SubobjectCategory) -> list[int]:
    base = set(A.identity) | set(A.inclusion_set)
    closed = _closure(A, base)
    gens = []
    while len(closed) < A.n:
        remaining = [f for f in range(A.n) if f not in closed]
        f = min(remaining, key=lambda x: (len(A.hom(A.dom[x], A.cod[x])), x))
        gens.append(f)
        closed = _closure(A, closed | {f})
    return gens


def _closure(A, seed):
    closed = set(seed)
    frontier = list(seed)
    while frontier:
        nxt = []
        for f in frontier:
            for g in list(closed):
                for x, y in ((f, g), (g, f)):
                    if A.cod[x] == A.dom[y]:
                        h = A.compose[(x, y)]
                        if h not in closed:
                            closed.add(h)
                            nxt.append(h)
        frontier = nxt
    return closed


def _propagate(A, B, phi, new):
    """Extend phi along all products with the newly assigned morphisms; False on conflict."""
    queue = list(new)
    while queue:
        f = queue.pop()
        for g in list(phi):
            for x, y in ((f, g), (g, f)):
                if A.cod[x] != A.dom[y]:
                    continue
                h = A.compose[(x, y)]
                value = B.compose.get((phi[x], phi[y]))
                if value is None:
                    return False
                if h in phi:
                    if phi[h] != value:
                        return False
                else:
                    phi[h] = value
                    queue.append(h)
    return True


def _match_morphisms(A, B, omap, generators, minv_a, minv_b):
    phi = {}
    for a in range(A.n_objects):
        phi[A.identity[a]] = B.identity[omap[a]]
    for (a, b), jab in A.inclusions.items():
        target = B.inclusions.get((omap[a], omap[b]))
        if target is None:
            return None
        phi[jab] = target
    if len(set(phi.values())) != len(phi) or not _propagate(A, B, phi, list(phi)):
        return None

    def search(k, phi):
        if k == len(generators):
            if len(phi) == A.n and len(set(phi.values())) == A.n:
                return phi
            return None
        f = generators[k]
        if f in phi:
            return search(k + 1, phi)
        used = set(phi.values())
        for cand in B.hom(omap[A.dom[f]], omap[A.cod[f]]):
            if cand in used or minv_a[f] != minv_b[cand]:
                continue
            trial = dict(phi)
            trial[f] = cand
            if not _propagate(A, B, trial, [f]):
                continue
            if len(set(trial.values())) != len(trial):
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    found = search(0, phi)
    if found is None:
        return None
    return [found[f] for f in range(A.n)]
