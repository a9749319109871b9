from __future__ import annotations

from .biorder import is_biorder_isomorphism
from .crossconn import CCMorphism, CrossConnection, check_cc_morphism, validate_crossconnection
from .errors import CrossigError
from .fixtures import trace_groupoid
from .functor_ci import GammaData, build_gamma, map_inductive_functor
from .functor_ic import CCGroupoid, build_ig, map_morphism
from .inductive import InductiveFunctor, InductiveGroupoid, check_inductive, check_inductive_functor
from .normcat import Functor, check_functor, is_isomorphism
from .report import Report
from .semigroup import FiniteSemigroup, homomorphisms


class RoundTripReport:
    def __init__(self, direction: str, report: Report, components: dict, squares: list):
        self.direction = direction
        self.report = report
        self.components = components
        self.squares = squares

    @property
    def verdict(self) -> str:
        ok = self.report.ok and all(s["ok"] for s in self.squares)
        return "pass" if ok else "fail"

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "verdict": self.verdict,
            "violations": self.report.to_dict()["violations"],
            "stats": self.report.to_dict()["stats"],
            "components": self.components,
            "naturality": self.squares,
        }


class Workspace:
    """Memoized C(G), I(C(G)), I(x) and C(I(x)) keyed by object identity."""

    def __init__(self):
        self._ig: dict = {}
        self._cr: dict = {}

    def ig_side(self, G: InductiveGroupoid):
        key = id(G)
        if key not in self._ig:
            data = build_gamma(G)
            self._ig[key] = (G, data, build_ig(data.x))
        return self._ig[key][1:]

    def cr_side(self, x: CrossConnection):
        key = id(x)
        if key not in self._cr:
            ig2 = build_ig(x)
            self._cr[key] = (x, ig2, build_gamma(ig2))
        return self._cr[key][1:]


# helpers ------------------------------------------------------------------------


def _invert(F: Functor, name: str) -> Functor:
    objects = [0] * F.target.n_objects
    for a, b in enumerate(F.object_map):
        objects[b] = a
    morphisms = [0] * F.target.n
    for f, g in enumerate(F.morphism_map):
        morphisms[g] = f
    return Functor(F.target, F.source, objects, morphisms, name)


def _invert_inductive(F: InductiveFunctor, name: str) -> InductiveFunctor:
    objects = [0] * F.target.g.n_objects
    for a, b in enumerate(F.object_map):
        objects[b] = a
    morphisms = [0] * F.target.g.n
    for x, y in enumerate(F.morphism_map):
        morphisms[y] = x
    return InductiveFunctor(F.target, F.source, objects, morphisms, name)


def _first_difference(pairs):
    for witness, lhs, rhs in pairs:
        if lhs != rhs:
            return witness
    return None


def _square(name: str, kind: str, pairs) -> dict:
    witness = _first_difference(pairs)
    return {"name": name, "kind": kind, "ok": witness is None, "witness": witness}


# ig side ------------------------------------------------------------------------


def unit_ig(G: InductiveGroupoid, data: GammaData, ig2: CCGroupoid) -> InductiveFunctor:
    """F_G: e -> (<-e, ->e), a -> ([d a, a, r a>, <d a, a^-1, r a])."""
    g = G.g
    L, R = data.L, data.R
    objects = [ig2.position[data.pair_of(e)] for e in range(g.n_objects)]
    morphisms = []
    for alpha in range(g.n):
        d, r = g.dom[alpha], g.cod[alpha]
        key = (objects[d], L.morphism(d, alpha, r), R.morphism(d, alpha, r), objects[r])
        if key not in ig2.g.index:
            raise CrossigError(f"image of morphism {alpha} is not a morphism of I(C(G))", morphism=alpha)
        morphisms.append(ig2.g.index[key])
    return InductiveFunctor(G, ig2, objects, morphisms, f"F({G.name})")


def _bijective(rep: Report, tag: str, object_map, n_objects, morphism_map, n_morphisms) -> bool:
    if sorted(object_map) != list(range(n_objects)):
        rep.add(tag, (), "object map is not a bijection")
        return False
    if sorted(morphism_map) != list(range(n_morphisms)):
        rep.add(tag, (), "morphism map is not a bijection")
        return False
    return True


def iso_ig(G: InductiveGroupoid, functors=(), workspace: Workspace | None = None) -> RoundTripReport:
    """F_G: G -> I(C(G)) is an inductive isomorphism natural in every supplied functor with G as an endpoint."""
    ws = workspace or Workspace()
    rep = Report()
    try:
        data, ig2 = ws.ig_side(G)
        F = unit_ig(G, data, ig2)
    except CrossigError as exc:
        rep.add("construction", (), f"{type(exc).__name__}: {exc}")
        return RoundTripReport("ig-side", rep, {}, [])
    rep.extend(check_inductive_functor(F), "F_G:")
    if _bijective(rep, "F_G:bijective", F.object_map, ig2.g.n_objects, F.morphism_map, ig2.g.n):
        rep.extend(check_inductive_functor(_invert_inductive(F, "F_G^-1")), "F_G^-1:")
    if not is_biorder_isomorphism(G.E, ig2.E, F.object_map):
        rep.add("F_G:biorder", (), "object map is not a biorder isomorphism")
    squares = []
    for Fn in functors:
        squares.append(_ig_square(Fn, ws))
    components = {
        "objects": F.object_map,
        "morphisms": F.morphism_map,
        "groupoid_size": [G.g.n, ig2.g.n],
    }
    return RoundTripReport("ig-side", rep, components, squares)


def _ig_square(Fn: InductiveFunctor, ws: Workspace) -> dict:
    """I(C(Fn)) F_G == F_G' Fn on objects and morphisms, plus the checks of each leg."""
    name = Fn.name
    sub = check_inductive_functor(Fn)
    if not sub.ok:
        return {"name": name, "kind": "ig", "ok": False, "witness": sub.items[0]}
    data, ig2 = ws.ig_side(Fn.source)
    data2, ig22 = ws.ig_side(Fn.target)
    m = map_inductive_functor(Fn, data, data2)
    sub = check_cc_morphism(m)
    if not sub.ok:
        return {"name": name, "kind": "ig", "ok": False, "witness": {"C(F)": sub.items[0]}}
    IC = map_morphism(m, ig2, ig22)
    sub = check_inductive_functor(IC)
    if not sub.ok:
        return {"name": name, "kind": "ig", "ok": False, "witness": {"I(C(F))": sub.items[0]}}
    F1 = unit_ig(Fn.source, data, ig2)
    F2 = unit_ig(Fn.target, data2, ig22)
    pairs = [(("object", e), IC.object_map[F1.object_map[e]], F2.object_map[Fn.object_map[e]])
             for e in range(Fn.source.g.n_objects)]
    pairs += [(("morphism", a), IC.morphism_map[F1.morphism_map[a]], F2.morphism_map[Fn.morphism_map[a]])
              for a in range(Fn.source.g.n)]
    return _square(name, "ig", pairs)


# cr side ------------------------------------------------------------------------


def realization(x: CrossConnection, ig2: CCGroupoid, data2: GammaData) -> tuple[Functor, Functor]:
    """L(I(x)) -> C and R(I(x)) -> D sending [e, (f, g), e'> to retraction . f . inclusion."""
    C, D = x.C, x.D
    pairs = ig2.pairs
    g = ig2.g
    L2, R2 = data2.L, data2.R

    def side(cat, target, component, cone, pick):
        objects = [pick(pairs[e]) for e in cat.reps]
        morphisms = []
        for m in range(cat.C.n):
            e, alpha, e2 = cat.right_epi(m)
            d, r = g.dom[alpha], g.cod[alpha]
            head = cone(*pairs[d])[pick(pairs[e])]
            morphisms.append(target.mul_all(head, component(alpha), target.j(pick(pairs[r]), pick(pairs[e2]))))
        return objects, morphisms

    o1, m1 = side(L2, C, lambda a: ig2.pair_morphism(a)[0], x.gamma_cone, lambda p: p[0])
    o2, m2 = side(R2, D, lambda a: ig2.pair_morphism(a)[1], x.delta_cone, lambda p: p[1])
    return Functor(L2.C, C, o1, m1, "real1"), Functor(R2.C, D, o2, m2, "real2")


def unit_cr(x: CrossConnection, ig2: CCGroupoid, data2: GammaData) -> CCMorphism:
    """(F_1, F_2): x -> C(I(x)) as the inverse of the realization; raises if it is not bijective."""
    real1, real2 = realization(x, ig2, data2)
    for real in (real1, real2):
        if sorted(real.object_map) != list(range(real.target.n_objects)) \
                or sorted(real.morphism_map) != list(range(real.target.n)):
            raise CrossigError(f"{real.name} is not bijective")
    return CCMorphism(x, data2.x, _invert(real1, "F_1"), _invert(real2, "F_2"), f"F({x.name})")


def check_first_component(ig2: CCGroupoid, data2: GammaData) -> Report:
    """Two pair morphisms give the same [d, a, r> exactly when their C-components agree."""
    rep = Report()
    g, L = ig2.g, data2.L
    keys = [L.morphism(g.dom[a], a, g.cod[a]) for a in range(g.n)]
    firsts = [ig2.pair_morphism(a)[0] for a in range(g.n)]
    for a in range(g.n):
        for b in range(g.n):
            if (keys[a] == keys[b]) != (firsts[a] == firsts[b]):
                rep.add("L-quotient", (a, b), "L-class of a pair is not determined by its first component")
    return rep


def iso_cr(x: CrossConnection, morphisms=(), workspace: Workspace | None = None) -> RoundTripReport:
    ws = workspace or Workspace()
    rep = Report()
    try:
        ig2, data2 = ws.cr_side(x)
    except CrossigError as exc:
        rep.add("construction", (), f"{type(exc).__name__}: {exc}")
        return RoundTripReport("cr-side", rep, {}, [])
    real1, real2 = realization(x, ig2, data2)
    for tag, real in (("real1", real1), ("real2", real2)):
        sub = check_functor(real)
        if sub.ok:
            sub = is_isomorphism(real)
        rep.extend(sub, tag + ":")
    if not rep.ok:
        return RoundTripReport("cr-side", rep, {}, [])
    unit = unit_cr(x, ig2, data2)
    rep.extend(is_isomorphism(unit.F1), "F_1:")
    rep.extend(is_isomorphism(unit.F2), "F_2:")
    rep.extend(check_cc_morphism(unit), "unit:")
    rep.extend(check_first_component(ig2, data2))
    squares = [_cr_square(m, ws) for m in morphisms]
    components = {
        "F1": {"objects": unit.F1.object_map, "morphisms": unit.F1.morphism_map},
        "F2": {"objects": unit.F2.object_map, "morphisms": unit.F2.morphism_map},
    }
    return RoundTripReport("cr-side", rep, components, squares)


def _cr_square(m: CCMorphism, ws: Workspace) -> dict:
    """C(I(m)) F_x == F_x' m componentwise."""
    name = m.name
    sub = check_cc_morphism(m)
    if not sub.ok:
        return {"name": name, "kind": "cr", "ok": False, "witness": sub.items[0]}
    ig2, data2 = ws.cr_side(m.source)
    ig22, data22 = ws.cr_side(m.target)
    CI = map_inductive_functor(map_morphism(m, ig2, ig22), data2, data22)
    sub = check_cc_morphism(CI)
    if not sub.ok:
        return {"name": name, "kind": "cr", "ok": False, "witness": {"C(I(m))": sub.items[0]}}
    u1 = unit_cr(m.source, ig2, data2)
    u2 = unit_cr(m.target, ig22, data22)
    pairs = []
    for tag, A, B, Fm, U1, U2 in (("C", m.source.C, CI.F1, m.F1, u1.F1, u2.F1),
                                  ("D", m.source.D, CI.F2, m.F2, u1.F2, u2.F2)):
        pairs += [((tag, "object", c), B.object_map[U1.object_map[c]], U2.object_map[Fm.object_map[c]])
                  for c in range(A.n_objects)]
        pairs += [((tag, "morphism", f), B.morphism_map[U1.morphism_map[f]], U2.morphism_map[Fm.morphism_map[f]])
                  for f in range(A.n)]
    return _square(name, "cr", pairs)


# test functors ------------------------------------------------------------------------


def trace_functor(S: FiniteSemigroup, T: FiniteSemigroup, phi, source: InductiveGroupoid,
                  target: InductiveGroupoid, name: str = "") -> InductiveFunctor:
    """(e, x, f) -> (phi e, phi x, phi f) between trace groupoids."""
    position = {e: i for i, e in enumerate(T.idempotents)}
    objects = [position[phi[e]] for e in S.idempotents]
    morphisms = []
    for i, x, j in source.g.labels:
        morphisms.append(target.g.index[(objects[i], phi[x], objects[j])])
    return InductiveFunctor(source, target, objects, morphisms, name or f"trace({S.name}->{T.name})")


def fixture_functors(catalog: dict, name: str, per_pair: int = 1, endomorphisms: int = 3):
    """Identity, up to `endomorphisms` other endomorphisms (automorphisms first), and
    up to `per_pair` embeddings to and from each other catalog entry.

    catalog maps a fixture name to (semigroup, trace groupoid).
    """
    S, G = catalog[name]
    out = [trace_functor(S, S, list(range(S.n)), G, G, f"identity({name})")]
    identity = tuple(range(S.n))
    autos = [p for p in homomorphisms(S, S, injective=True, limit=endomorphisms + 1) if p != identity]
    others = [p for p in homomorphisms(S, S, limit=4 * endomorphisms) if p != identity and p not in autos]
    for k, phi in enumerate((autos + others)[:endomorphisms]):
        kind = "automorphism" if phi in autos else "endomorphism"
        out.append(trace_functor(S, S, phi, G, G, f"{kind}{k}({name})"))
    for other in sorted(catalog):
        if other == name:
            continue
        T, H = catalog[other]
        if S.n <= T.n:
            for k, phi in enumerate(homomorphisms(S, T, injective=True, limit=per_pair)):
                out.append(trace_functor(S, T, phi, G, H, f"embed{k}({name}->{other})"))
        if T.n <= S.n:
            for k, phi in enumerate(homomorphisms(T, S, injective=True, limit=per_pair)):
                out.append(trace_functor(T, S, phi, H, G, f"embed{k}({other}->{name})"))
    return out


def build_catalog(semigroups) -> dict:
    return {S.name: (S, trace_groupoid(S)) for S in semigroups}


# aggregate ----------------------------------------------------------------------------


def roundtrip_report(obj, functors=(), workspace: Workspace | None = None) -> dict:
    """Both directions for a semigroup, inductive groupoid or cross-connection."""
    ws = workspace or Workspace()
    out = {}
    if isinstance(obj, FiniteSemigroup):
        obj = trace_groupoid(obj)
    if isinstance(obj, InductiveGroupoid):
        checked = check_inductive(obj)
        if not checked.ok:
            out["ig_side"] = RoundTripReport("ig-side", checked, {}, []).to_dict()
            out["verdict"] = "fail"
            return out
        functors = list(functors)
        ig_report = iso_ig(obj, functors, ws)
        data, _ = ws.ig_side(obj)
        morphisms = []
        for Fn in functors:
            if check_inductive_functor(Fn).ok:
                morphisms.append(CCMorphism(*_cc_endpoints(Fn, ws), name=f"C({Fn.name})"))
        cr_report = iso_cr(data.x, morphisms, ws)
    else:
        checked = validate_crossconnection(obj)
        if not checked.ok:
            out["cr_side"] = RoundTripReport("cr-side", checked, {}, []).to_dict()
            out["verdict"] = "fail"
            return out
        cr_report = iso_cr(obj, functors, ws)
        ig2, _ = ws.cr_side(obj)
        ig_report = iso_ig(ig2, (), ws)
    out["ig_side"] = ig_report.to_dict()
    out["cr_side"] = cr_report.to_dict()
    out["verdict"] = "pass" if ig_report.verdict == cr_report.verdict == "pass" else "fail"
    return out


def _cc_endpoints(Fn: InductiveFunctor, ws: Workspace):
    data, _ = ws.ig_side(Fn.source)
    data2, _ = ws.ig_side(Fn.target)
    m = map_inductive_functor(Fn, data, data2)
    return m.source, m.target, m.F1, m.F2


__all__ = [
    "RoundTripReport", "Workspace", "iso_ig", "iso_cr", "roundtrip_report", "unit_ig", "unit_cr", "realization",
    "check_first_component", "trace_functor", "fixture_functors", "build_catalog",
]
