from __future__ import annotations

from .biorder import BiorderedSet, check_bimorphism, singular_squares
from .echain import EChain, reduce_path, restrict_chain, step_kind
from .errors import NoRestriction, NotAPath
from .groupoid import OrderedGroupoid, build_groupoid, check_composition, check_ordered_groupoid
from .report import Report

__all__ = [
    "OrderedGroupoid", "InductiveGroupoid", "InductiveFunctor", "build_groupoid", "check_ordered_groupoid",
    "check_inductive", "check_inductive_functor", "compose_functors", "identity_functor", "restrict",
    "corestrict",
]


def restrict(g: OrderedGroupoid, e: int, x: int) -> int:
    return g.restrict(e, x)


def corestrict(g: OrderedGroupoid, x: int, f: int) -> int:
    return g.corestrict(x, f)


class InductiveGroupoid:
    """Ordered groupoid over the ids of a regular biordered set, with ε stored on generators.

    eval_gen maps (e, f) with e R f or e L f (e != f) to a morphism id.
    """

    def __init__(self, groupoid: OrderedGroupoid, E: BiorderedSet, eval_gen: dict, name: str = ""):
        self.g = groupoid
        self.E = E
        self.eval_gen = dict(eval_gen)
        self.name = name
        self._memo: dict = {}

    def eval_pair(self, e: int, f: int) -> int:
        if e == f:
            return self.g.identity[e]
        return self.eval_gen[(e, f)]

    def eval_path(self, seq) -> int:
        seq = tuple(seq)
        if seq not in self._memo:
            acc = self.g.identity[seq[0]]
            for a, b in zip(seq, seq[1:]):
                acc = self.g.mul(acc, self.eval_pair(a, b))
            self._memo[seq] = acc
        return self._memo[seq]

    def eval(self, chain: EChain) -> int:
        return self.eval_path(chain.seq)

    def dual(self) -> "InductiveGroupoid":
        """Same groupoid and evaluation over the left-right dual biordered set."""
        return InductiveGroupoid(self.g, self.E.dual(), self.eval_gen, (self.name + "^op") if self.name else "op")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "biorder": self.E.to_dict(),
            "groupoid": self.g.to_dict(),
            "eval": sorted([e, f, x] for (e, f), x in self.eval_gen.items()),
        }

    def __repr__(self) -> str:
        return f"InductiveGroupoid({self.name!r}, objects={self.g.n_objects}, morphisms={self.g.n})"


def _ig1(rep: Report, tag: str, ig: InductiveGroupoid, E: BiorderedSet, mirrored: bool) -> int:
    """IG1 over E (E or its dual); mirrored=True states it with corestrictions and inverses."""
    g = ig.g
    count = 0
    for x in range(g.n):
        anchor = g.cod[x] if mirrored else g.dom[x]
        below = [e for e in range(E.n) if E.leq[e][anchor]]
        for e1 in below:
            for e2 in below:
                if not E.leq_r[e1][e2]:
                    continue
                count += 1
                try:
                    if mirrored:
                        y1, y12 = g.corestrict(x, e1), None
                        f1, f2 = g.dom[y1], g.dom[g.corestrict(x, e2)]
                    else:
                        y1 = g.restrict(e1, x)
                        f1, f2 = g.cod[y1], g.cod[g.restrict(e2, x)]
                except NoRestriction:
                    rep.add(tag, (x, e1, e2), "restriction missing")
                    continue
                if not E.leq_r[f1][f2]:
                    rep.add(tag, (x, e1, e2), "f1 <=r f2 fails")
                    continue
                e12 = E.product[e1][e2]
                f12 = E.product[f1][f2]
                if mirrored:
                    y12 = g.corestrict(x, e12)
                    if g.dom[y12] != f12:
                        rep.add(tag, (x, e1, e2), "corestriction endpoint mismatch")
                        continue
                    lhs = g.mul(y12, ig.eval_pair(e12, e1))
                    rhs = g.mul(ig.eval_pair(f12, f1), y1)
                else:
                    y12 = g.restrict(e12, x)
                    if g.cod[y12] != f12:
                        rep.add(tag, (x, e1, e2), "restriction endpoint mismatch")
                        continue
                    lhs = g.mul(ig.eval_pair(e1, e12), y12)
                    rhs = g.mul(y1, ig.eval_pair(f1, f12))
                if lhs != rhs:
                    rep.add(tag, (x, e1, e2), "square does not commute")
    return count


def check_evaluation(ig: InductiveGroupoid, rep: Report) -> None:
    g, E = ig.g, ig.E
    if g.n_objects != E.n:
        rep.add("v-iso", (), "object count differs from the biordered set")
        return
    for e in range(E.n):
        for f in range(E.n):
            if g.object_leq(e, f) != E.leq[e][f]:
                rep.add("v-iso", (e, f), "identity order differs from the natural order")
    for e in range(E.n):
        for f in range(E.n):
            kind = step_kind(E, e, f)
            if kind in ("R", "L"):
                x = ig.eval_gen.get((e, f))
                if x is None:
                    rep.add("eval", (e, f), "generator value missing")
                    continue
                if g.dom[x] != e or g.cod[x] != f:
                    rep.add("eval", (e, f), "generator value has wrong endpoints")
                    continue
                back = ig.eval_gen.get((f, e))
                if back is not None and back != g.inverse[x]:
                    rep.add("functoriality", (e, f, e), "reversed generator is not the inverse")
    if not rep.ok:
        return
    for e in range(E.n):
        for f in range(E.n):
            kind = step_kind(E, e, f)
            if kind not in ("R", "L"):
                continue
            for h in range(E.n):
                if step_kind(E, f, h) == kind:
                    if g.mul(ig.eval_pair(e, f), ig.eval_pair(f, h)) != ig.eval_pair(e, h):
                        rep.add("functoriality", (e, f, h), "chain relation not respected")
    for e in range(E.n):
        for f in range(E.n):
            if step_kind(E, e, f) not in ("R", "L"):
                continue
            x = ig.eval_pair(e, f)
            for e1 in range(E.n):
                if not E.leq[e1][e]:
                    continue
                chain = restrict_chain(E, e1, EChain((e, f)))
                try:
                    if ig.eval(chain) != g.restrict(e1, x):
                        rep.add("eval-order", (e1, e, f), "evaluation does not commute with restriction")
                except NoRestriction:
                    rep.add("eval-order", (e1, e, f), "restriction missing")


def check_inductive(ig: InductiveGroupoid, include_groupoid: bool = True) -> Report:
    rep = Report()
    if include_groupoid:
        rep.extend(check_ordered_groupoid(ig.g))
    else:
        check_composition(ig.g)
    E = ig.E
    for e in range(E.n):
        for f in range(E.n):
            if not E.sandwich(e, f):
                rep.add("regular", (e, f), "empty sandwich set")
    check_evaluation(ig, rep)
    if not rep.ok:
        return rep
    dual = E.dual()
    counts = {
        "IG1": _ig1(rep, "IG1", ig, E, False),
        "IG1-dual": _ig1(rep, "IG1-dual", ig, dual, False),
        "IG1-corestriction": _ig1(rep, "IG1-corestriction", ig, E, True),
        "IG1-dual-corestriction": _ig1(rep, "IG1-dual-corestriction", ig, dual, True),
    }
    squares = singular_squares(E)
    for sq in squares:
        a, b, c, d = sq
        lhs = ig.g.mul(ig.eval_pair(a, b), ig.eval_pair(b, d))
        rhs = ig.g.mul(ig.eval_pair(a, c), ig.eval_pair(c, d))
        if lhs != rhs:
            rep.add("IG2", sq, "singular square is not evaluation-commutative")
    rep.stats.update({k + "_instances": v for k, v in counts.items()})
    rep.stats["singular_squares"] = len(squares)
    return rep


class InductiveFunctor:
    def __init__(self, source: InductiveGroupoid, target: InductiveGroupoid, object_map, morphism_map, name=""):
        self.source = source
        self.target = target
        self.object_map = list(object_map)
        self.morphism_map = list(morphism_map)
        self.name = name

    def __call__(self, x: int) -> int:
        return self.morphism_map[x]

    def to_dict(self) -> dict:
        return {"name": self.name, "object_map": self.object_map, "morphism_map": self.morphism_map}


def identity_functor(ig: InductiveGroupoid) -> InductiveFunctor:
    return InductiveFunctor(ig, ig, range(ig.g.n_objects), range(ig.g.n), "identity")


def compose_functors(F: InductiveFunctor, G: InductiveFunctor) -> InductiveFunctor:
    """F first, then G."""
    return InductiveFunctor(F.source, G.target, [G.object_map[v] for v in F.object_map],
                            [G.morphism_map[x] for x in F.morphism_map], f"{G.name}.{F.name}")


def check_inductive_functor(F: InductiveFunctor) -> Report:
    rep = Report()
    s, t = F.source.g, F.target.g
    om, mm = F.object_map, F.morphism_map
    if len(om) != s.n_objects or len(mm) != s.n or any(not 0 <= v < t.n_objects for v in om) \
            or any(not 0 <= x < t.n for x in mm):
        rep.add("functor", (), "maps are not total")
        return rep
    for x in range(s.n):
        if t.dom[mm[x]] != om[s.dom[x]] or t.cod[mm[x]] != om[s.cod[x]]:
            rep.add("functor", (x,), "endpoints not preserved")
    for e in range(s.n_objects):
        if mm[s.identity[e]] != t.identity[om[e]]:
            rep.add("functor", (e,), "identity not preserved")
    for (x, y), z in sorted(s.compose.items()):
        if t.cod[mm[x]] == t.dom[mm[y]] and t.compose.get((mm[x], mm[y])) != mm[z]:
            rep.add("functor", (x, y), "composition not preserved")
    for x in range(s.n):
        for y in s.below[x]:
            if mm[y] not in t.below[mm[x]]:
                rep.add("order", (y, x), "order not preserved")
    rep.extend(check_bimorphism(F.source.E, F.target.E, om, require_regular=True))
    E = F.source.E
    for e in range(E.n):
        for f in range(E.n):
            if step_kind(E, e, f) not in ("R", "L"):
                continue
            try:
                image_chain = reduce_path(F.target.E, (om[e], om[f]))
            except NotAPath:
                rep.add("evaluation-square", (e, f), "image of a generator is not a path")
                continue
            if mm[F.source.eval_pair(e, f)] != F.target.eval(image_chain):
                rep.add("evaluation-square", (e, f), "F(eval(e,f)) != eval'(Fe,Ff)")
    return rep
