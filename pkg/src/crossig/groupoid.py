from __future__ import annotations

from .errors import MalformedComposition, NoRestriction, NotComposable
from .report import Report


class OrderedGroupoid:
    """Dense morphism ids with dom/cod/inverse arrays, a composition dict and down-sets.

    `below[x]` is the set of y with y <= x. With partial=True the composition dict
    may omit composable pairs (a finite fragment of an infinite groupoid).
    """

    def __init__(self, n_objects, dom, cod, inverse, identity, compose, below, labels=None,
                 object_labels=None, partial=False, name=""):
        self.n_objects = n_objects
        self.dom = list(dom)
        self.cod = list(cod)
        self.inverse = list(inverse)
        self.identity = list(identity)
        self.compose = compose
        self.below = [frozenset(b) for b in below]
        self.labels = list(labels) if labels is not None else list(range(len(self.dom)))
        self.object_labels = list(object_labels) if object_labels is not None else [str(i) for i in range(n_objects)]
        self.partial = partial
        self.name = name
        self.index = {key: i for i, key in enumerate(self.labels)}
        self._restrict: dict = {}
        self.out = [[] for _ in range(n_objects)]
        for x, d in enumerate(self.dom):
            self.out[d].append(x)

    @property
    def n(self) -> int:
        return len(self.dom)

    def mul(self, x: int, y: int):
        if self.cod[x] != self.dom[y]:
            raise NotComposable(f"cod({x}) != dom({y})", pair=[x, y])
        value = self.compose.get((x, y))
        if value is None and not self.partial:
            raise MalformedComposition(f"missing product for composable pair {(x, y)}", pair=[x, y])
        return value

    def mul_all(self, *terms):
        acc = terms[0]
        for t in terms[1:]:
            if acc is None:
                return None
            acc = self.mul(acc, t)
        return acc

    def leq(self, x: int, y: int) -> bool:
        return x in self.below[y]

    def object_leq(self, e: int, f: int) -> bool:
        return self.identity[e] in self.below[self.identity[f]]

    def restrict(self, e: int, x: int) -> int:
        key = ("r", e, x)
        if key not in self._restrict:
            found = [y for y in sorted(self.below[x]) if self.dom[y] == e]
            if len(found) != 1:
                raise NoRestriction(f"{len(found)} restrictions of {x} to object {e}", object=e, morphism=x)
            self._restrict[key] = found[0]
        return self._restrict[key]

    def corestrict(self, x: int, f: int) -> int:
        key = ("c", x, f)
        if key not in self._restrict:
            found = [y for y in sorted(self.below[x]) if self.cod[y] == f]
            if len(found) != 1:
                raise NoRestriction(f"{len(found)} corestrictions of {x} to object {f}", object=f, morphism=x)
            self._restrict[key] = found[0]
        return self._restrict[key]

    def hom(self, a: int, b: int) -> list[int]:
        return [x for x in self.out[a] if self.cod[x] == b]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "objects": self.object_labels,
            "morphisms": [
                {"id": x, "label": _plain(self.labels[x]), "dom": self.dom[x], "cod": self.cod[x], "inv": self.inverse[x]}
                for x in range(self.n)
            ],
            "compose": sorted([x, y, z] for (x, y), z in self.compose.items()),
            "identities": self.identity,
            "order": sorted([y, x] for x in range(self.n) for y in self.below[x] if y != x),
            "partial": self.partial,
        }

    def __repr__(self) -> str:
        return f"OrderedGroupoid(objects={self.n_objects}, morphisms={self.n}, partial={self.partial})"


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    return value


def build_groupoid(n_objects, keys, dom_of, cod_of, mul, inv, leq, identity_of, object_labels=None,
                   partial=False, name="", object_leq=None):
    """Materialize an ordered groupoid from hashable morphism keys and callables.

    mul(a, b) may return None (or a key outside `keys`) only when partial=True.
    object_leq, when given, prefilters order tests by the domains.
    """
    keys = list(keys)
    index = {k: i for i, k in enumerate(keys)}
    dom = [dom_of(k) for k in keys]
    cod = [cod_of(k) for k in keys]
    inverse = []
    for k in keys:
        ik = inv(k)
        if ik not in index:
            raise MalformedComposition(f"inverse of {k!r} is not a morphism")
        inverse.append(index[ik])
    identity = []
    for e in range(n_objects):
        ik = identity_of(e)
        if ik not in index:
            raise MalformedComposition(f"identity at {e} is not a morphism")
        identity.append(index[ik])
    out = [[] for _ in range(n_objects)]
    for i, d in enumerate(dom):
        out[d].append(i)
    compose = {}
    for i, k in enumerate(keys):
        for j in out[cod[i]]:
            value = mul(k, keys[j])
            if value is None or value not in index:
                if partial:
                    continue
                raise MalformedComposition(f"product of {k!r} and {keys[j]!r} is not a morphism")
            compose[(i, j)] = index[value]
    below = []
    for i, k in enumerate(keys):
        row = set()
        for j, k2 in enumerate(keys):
            if object_leq is not None and not object_leq(dom[j], dom[i]):
                continue
            if leq(k2, k):
                row.add(j)
        below.append(row)
    return OrderedGroupoid(n_objects, dom, cod, inverse, identity, compose, below, keys, object_labels,
                           partial, name)


def check_composition(g: OrderedGroupoid) -> None:
    """Raise MalformedComposition on the first identity, inverse or associativity failure."""
    for (x, y), z in sorted(g.compose.items()):
        if g.cod[x] != g.dom[y] or g.dom[z] != g.dom[x] or g.cod[z] != g.cod[y]:
            raise MalformedComposition(f"product {x}.{y} = {z} has wrong endpoints", witness=[x, y, z])
    for x in range(g.n):
        if g.compose.get((g.identity[g.dom[x]], x)) != x or g.compose.get((x, g.identity[g.cod[x]])) != x:
            raise MalformedComposition(f"identity law fails at {x}", witness=[x])
        xi = g.inverse[x]
        if g.dom[xi] != g.cod[x] or g.cod[xi] != g.dom[x]:
            raise MalformedComposition(f"inverse of {x} has wrong endpoints", witness=[x])
        if g.compose.get((x, xi)) != g.identity[g.dom[x]] or g.compose.get((xi, x)) != g.identity[g.cod[x]]:
            raise MalformedComposition(f"inverse law fails at {x}", witness=[x])
    for (x, y), xy in sorted(g.compose.items()):
        for z in g.out[g.cod[y]]:
            yz = g.compose.get((y, z))
            left = g.compose.get((xy, z))
            right = g.compose.get((x, yz)) if yz is not None else None
            if left is not None and right is not None and left != right:
                raise MalformedComposition(f"associativity fails at {(x, y, z)}", witness=[x, y, z])
            if not g.partial and (left is None or right is None):
                raise MalformedComposition(f"missing product around {(x, y, z)}", witness=[x, y, z])


def _inverse_table_report(g: OrderedGroupoid, rep: Report) -> None:
    for x in range(g.n):
        xi = g.inverse[x]
        if not 0 <= xi < g.n or g.dom[xi] != g.cod[x] or g.cod[xi] != g.dom[x] \
                or g.compose.get((x, xi)) != g.identity[g.dom[x]] or g.compose.get((xi, x)) != g.identity[g.cod[x]]:
            rep.add("OG2", (x, xi), "inverse table entry is not a two-sided inverse")


def check_ordered_groupoid(g: OrderedGroupoid) -> Report:
    rep = Report()
    _inverse_table_report(g, rep)
    if not rep.ok:
        return rep
    check_composition(g)
    n = g.n
    for x in range(n):
        if x not in g.below[x]:
            rep.add("order", (x,), "not reflexive")
    for x in range(n):
        for y in g.below[x]:
            if y != x and x in g.below[y]:
                rep.add("order", (y, x), "not antisymmetric")
            for z in g.below[y]:
                if z not in g.below[x]:
                    rep.add("order", (z, y, x), "not transitive")
    for (x, y), xy in sorted(g.compose.items()):
        for u in sorted(g.below[x]):
            for v in sorted(g.below[y]):
                if g.cod[u] != g.dom[v]:
                    continue
                uv = g.compose.get((u, v))
                if uv is None:
                    continue
                if uv not in g.below[xy]:
                    rep.add("OG1", (u, x, v, y), "uv not below xy")
    for x in range(n):
        for y in g.below[x]:
            if g.inverse[y] not in g.below[g.inverse[x]]:
                rep.add("OG2", (y, x), "inverse does not preserve the order")
    restrictions = 0
    for x in range(n):
        d, r = g.dom[x], g.cod[x]
        for e in range(g.n_objects):
            if g.object_leq(e, d):
                found = [y for y in g.below[x] if g.dom[y] == e]
                restrictions += 1
                if len(found) != 1:
                    rep.add("OG3", (e, x), f"{len(found)} restrictions")
            if g.object_leq(e, r):
                found = [y for y in g.below[x] if g.cod[y] == e]
                if len(found) != 1:
                    rep.add("OG3*", (x, e), f"{len(found)} corestrictions")
    for e in range(g.n_objects):
        for f in range(g.n_objects):
            if e != f and g.object_leq(e, f) and g.object_leq(f, e):
                rep.add("order", (e, f), "identity order not antisymmetric on objects")
    rep.stats["morphisms"] = n
    rep.stats["restriction_instances"] = restrictions
    return rep
