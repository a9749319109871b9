from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .errors import AxiomViolation, MalformedTable
from .report import Report


class BiorderedSet:
    """Partial basic-product table on ids 0..n-1 with the derived preorders.

    e <=l f iff (e,f) in D and ef = e; e <=r f iff (f,e) in D and fe = e.
    Construction does not validate; use load_biorder for that.
    """

    def __init__(self, product, labels=None, name: str = ""):
        self.n = len(product)
        self.product = [list(row) for row in product]
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.n)]
        self.name = name
        n = self.n
        rng = range(n)
        self.leq_l = [[product[e][f] == e for f in rng] for e in rng]
        self.leq_r = [[product[f][e] == e for f in rng] for e in rng]
        self.L = [[self.leq_l[e][f] and self.leq_l[f][e] for f in rng] for e in rng]
        self.R = [[self.leq_r[e][f] and self.leq_r[f][e] for f in rng] for e in rng]
        self.leq = [[self.leq_l[e][f] and self.leq_r[e][f] for f in rng] for e in rng]
        self._sandwich: dict = {}

    def defined(self, e: int, f: int) -> bool:
        return self.product[e][f] is not None

    def mul(self, e: int, f: int):
        return self.product[e][f]

    def mul_chain(self, *terms):
        """Left-nested product; None if any step is undefined."""
        acc = terms[0]
        for t in terms[1:]:
            if acc is None or t is None:
                return None
            acc = self.product[acc][t]
        return acc

    def l_class(self, e: int) -> list[int]:
        return [f for f in range(self.n) if self.L[e][f]]

    def r_class(self, e: int) -> list[int]:
        return [f for f in range(self.n) if self.R[e][f]]

    def l_classes(self) -> list[tuple[int, ...]]:
        return _classes(self.n, self.L)

    def r_classes(self) -> list[tuple[int, ...]]:
        return _classes(self.n, self.R)

    def least_l(self, e: int) -> int:
        return min(self.l_class(e))

    def least_r(self, e: int) -> int:
        return min(self.r_class(e))

    def dual(self) -> "BiorderedSet":
        """Left-right dual: products reversed, so <=l and <=r swap."""
        n = self.n
        table = [[self.product[f][e] for f in range(n)] for e in range(n)]
        return BiorderedSet(table, self.labels, (self.name + "^op") if self.name else "op")

    def sandwich(self, e: int, f: int) -> tuple[int, ...]:
        key = (e, f)
        if key not in self._sandwich:
            self._sandwich[key] = sandwich_set(self, e, f)
        return self._sandwich[key]

    def least_sandwich(self, e: int, f: int) -> int:
        found = self.sandwich(e, f)
        if not found:
            raise AxiomViolation("regular", (e, f), f"empty sandwich set at {(e, f)}")
        return found[0]

    def to_dict(self) -> dict:
        return {"n": self.n, "product": self.product, "labels": self.labels, "name": self.name}

    def __repr__(self) -> str:
        return f"BiorderedSet(n={self.n}, name={self.name!r})"


def _classes(n, rel):
    seen = set()
    out = []
    for e in range(n):
        if e in seen:
            continue
        cls = tuple(f for f in range(n) if rel[e][f])
        seen.update(cls)
        out.append(cls)
    return out


def _parse_table(table):
    if isinstance(table, dict):
        labels = table.get("labels")
        name = table.get("name", "")
        rows = table.get("product")
        if rows is None:
            raise MalformedTable("missing 'product' table")
        if "n" in table and table["n"] != len(rows):
            raise MalformedTable(f"n={table['n']} does not match table size {len(rows)}")
    else:
        rows, labels, name = table, None, ""
    n = len(rows)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}", row=i)
        for j, v in enumerate(row):
            if v is None:
                continue
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise MalformedTable(f"entry ({i},{j}) = {v!r} out of range", entry=[i, j])
    if labels is not None and len(labels) != n:
        raise MalformedTable("labels length mismatch")
    return rows, labels, name


def load_biorder(table, labels=None, name: str = "") -> BiorderedSet:
    """Validate a partial product table; raise AxiomViolation on the first failing axiom."""
    rows, parsed_labels, parsed_name = _parse_table(table)
    E = BiorderedSet(rows, labels if labels is not None else parsed_labels, name or parsed_name)
    report = check_axioms(E)
    if not report.ok:
        first = report.items[0]
        raise AxiomViolation(first["check"], first["witness"], first["detail"])
    return E


def check_axioms(E: BiorderedSet) -> Report:
    """B1-B5 plus the partial-order property of <=; smallest witness per axiom."""
    rep = Report()
    n = E.n
    rng = range(n)
    P = E.product
    ll, lr = E.leq_l, E.leq_r

    for e in rng:
        if P[e][e] != e:
            rep.add("B1", (e,), "not reflexive: ee != e")
    for e, f, g in cartesian(rng, rng, rng):
        if ll[e][f] and ll[f][g] and not ll[e][g]:
            rep.add("B1", (e, f, g), "<=l not transitive")
        if lr[e][f] and lr[f][g] and not lr[e][g]:
            rep.add("B1", (e, f, g), "<=r not transitive")
    for e, f in cartesian(rng, rng):
        basic = ll[e][f] or lr[e][f] or ll[f][e] or lr[f][e]
        if basic != (P[e][f] is not None):
            rep.add("B1", (e, f), "domain differs from the union of the preorders and inverses")
    for e, f in cartesian(rng, rng):
        if e != f and E.leq[e][f] and E.leq[f][e]:
            rep.add("order", (e, f), "<= is not antisymmetric")

    def mul(a, b):
        if a is None or b is None:
            return None
        return P[a][b]

    def is_l(a, b):
        return a is not None and b is not None and E.L[a][b]

    def is_r(a, b):
        return a is not None and b is not None and E.R[a][b]

    def leq(a, b):
        return a is not None and b is not None and E.leq[a][b]

    def le_l(a, b):
        return a is not None and b is not None and ll[a][b]

    def le_r(a, b):
        return a is not None and b is not None and lr[a][b]

    for e, f in cartesian(rng, rng):
        if ll[e][f]:
            fe = P[f][e]
            if not (is_l(e, fe) and leq(fe, f)):
                rep.add("B2", (e, f), "e <=l f but not e L fe <= f")
        if lr[e][f]:
            ef = P[e][f]
            if not (is_r(e, ef) and leq(ef, f)):
                rep.add("B2", (e, f), "e <=r f but not e R ef <= f")

    for e, f, g in cartesian(rng, rng, rng):
        if lr[f][e] and lr[g][e] and ll[f][g]:
            fe, ge = P[f][e], P[g][e]
            lhs = mul(mul(g, f), e)
            rhs = mul(ge, fe)
            if not le_l(fe, ge) or lhs is None or lhs != rhs:
                rep.add("B3", (e, f, g), "f,g <=r e, f <=l g: need fe <=l ge and (gf)e = (ge)(fe)")
        if ll[f][e] and ll[g][e] and lr[f][g]:
            ef, eg = P[e][f], P[e][g]
            lhs = mul(e, mul(f, g))
            rhs = mul(ef, eg)
            if not le_r(ef, eg) or lhs is None or lhs != rhs:
                rep.add("B3", (e, f, g), "f,g <=l e, f <=r g: need ef <=r eg and e(fg) = (ef)(eg)")

    for e, f, g in cartesian(rng, rng, rng):
        if ll[e][f] and ll[f][g]:
            lhs = mul(f, mul(g, e))
            if lhs is None or lhs != P[f][e]:
                rep.add("B4", (e, f, g), "e <=l f <=l g: need f(ge) = fe")
        if lr[e][f] and lr[f][g]:
            lhs = mul(mul(e, g), f)
            if lhs is None or lhs != P[e][f]:
                rep.add("B4", (e, f, g), "e <=r f <=r g: need (eg)f = ef")

    for e, f, g in cartesian(rng, rng, rng):
        if ll[f][e] and ll[g][e] and le_r(P[e][f], P[e][g]):
            ef = P[e][f]
            if not any(lr[h][g] and ll[h][e] and P[e][h] == ef for h in rng):
                rep.add("B5", (e, f, g), "no f' with f' <=r g, f' <=l e, ef' = ef")
        if lr[f][e] and lr[g][e] and le_l(P[f][e], P[g][e]):
            fe = P[f][e]
            if not any(ll[h][g] and lr[h][e] and P[h][e] == fe for h in rng):
                rep.add("B5", (e, f, g), "no f' with f' <=l g, f' <=r e, f'e = fe")
    return rep


def sandwich_set(E: BiorderedSet, e: int, f: int) -> tuple[int, ...]:
    """Direct evaluation of the quantified definition; result sorted by id."""
    rng = range(E.n)
    cands = [g for g in rng if E.leq_l[g][e] and E.leq_r[g][f]]
    P = E.product
    out = []
    for h in cands:
        hf, eh = P[h][f], P[e][h]
        good = True
        for g in cands:
            gf, eg = P[g][f], P[e][g]
            if gf is None or hf is None or not E.leq_l[gf][hf]:
                good = False
                break
            if eg is None or eh is None or not E.leq_r[eg][eh]:
                good = False
                break
        if good:
            out.append(h)
    return tuple(out)


def is_regular(E: BiorderedSet) -> bool:
    return all(E.sandwich(e, f) for e in range(E.n) for f in range(E.n))


def check_bimorphism(E: BiorderedSet, E2: BiorderedSet, theta, require_regular: bool = True) -> Report:
    rep = Report()
    if len(theta) != E.n or any(not 0 <= t < E2.n for t in theta):
        rep.add("map", (), "element map is not total into the target")
        return rep
    for e, f in cartesian(range(E.n), range(E.n)):
        ef = E.product[e][f]
        if ef is None:
            continue
        img = E2.product[theta[e]][theta[f]]
        if img is None:
            rep.add("BM1", (e, f), "basic pair not mapped to a basic pair")
        elif img != theta[ef]:
            rep.add("BM2", (e, f), "(ef)theta != (e theta)(f theta)")
    if require_regular:
        for e, f in cartesian(range(E.n), range(E.n)):
            target = set(E2.sandwich(theta[e], theta[f]))
            for h in E.sandwich(e, f):
                if theta[h] not in target:
                    rep.add("RBM", (e, f, h), "sandwich element not mapped into the image sandwich set")
                    break
    return rep


def is_biorder_isomorphism(E: BiorderedSet, E2: BiorderedSet, theta) -> bool:
    """Bijection with exact table equality under the relabelling."""
    if E.n != E2.n or sorted(theta) != list(range(E2.n)):
        return False
    for e, f in cartesian(range(E.n), range(E.n)):
        ef = E.product[e][f]
        img = E2.product[theta[e]][theta[f]]
        if (ef is None) != (img is None):
            return False
        if ef is not None and theta[ef] != img:
            return False
    return True


@dataclass(frozen=True)
class ESquare:
    entries: tuple[int, int, int, int]  # row-major [[e, f], [g, h]]
    kind: str

    def to_dict(self) -> dict:
        e, f, g, h = self.entries
        return {"entries": [[e, f], [g, h]], "kind": self.kind}


def is_e_square(E: BiorderedSet, entries) -> bool:
    e, f, g, h = entries
    return E.R[e][f] and E.L[f][h] and E.R[h][g] and E.L[g][e]


def _symmetries(entries):
    e, f, g, h = entries
    # the dihedral group of the 2x2 grid acting on positions
    return [
        (e, f, g, h), (f, h, e, g), (h, g, f, e), (g, e, h, f),
        (e, g, f, h), (f, e, h, g), (h, f, g, e), (g, h, e, f),
    ]


def row_singular(E: BiorderedSet, entries) -> bool:
    g, h, a, b = entries
    if not E.R[g][h]:
        return False
    for e in range(E.n):
        if E.leq_l[g][e] and E.leq_l[h][e] and E.product[e][g] == a and E.product[e][h] == b:
            return True
    return False


def column_singular(E: BiorderedSet, entries) -> bool:
    g, a, h, b = entries
    if not E.L[g][h]:
        return False
    for e in range(E.n):
        if E.leq_r[g][e] and E.leq_r[h][e] and E.product[g][e] == a and E.product[h][e] == b:
            return True
    return False


def singular_squares(E: BiorderedSet) -> list[tuple[int, int, int, int]]:
    """Every row- or column-singular square in its defining orientation."""
    out = set()
    rng = range(E.n)
    for e, g, h in cartesian(rng, rng, rng):
        if E.leq_l[g][e] and E.leq_l[h][e] and E.R[g][h]:
            out.add((g, h, E.product[e][g], E.product[e][h]))
        if E.leq_r[g][e] and E.leq_r[h][e] and E.L[g][h]:
            out.add((g, E.product[g][e], h, E.product[h][e]))
    return sorted(out)


def enumerate_e_squares(E: BiorderedSet) -> list[ESquare]:
    rng = range(E.n)
    seen = set()
    out = []
    for e in rng:
        for f in E.r_class(e):
            for g in E.l_class(e):
                for h in E.l_class(f):
                    if not E.R[h][g]:
                        continue
                    entries = (e, f, g, h)
                    orbit = [s for s in _symmetries(entries) if is_e_square(E, s)]
                    rep = min(orbit)
                    if rep in seen:
                        continue
                    seen.add(rep)
                    if any(row_singular(E, s) for s in orbit):
                        kind = "row-singular"
                    elif any(column_singular(E, s) for s in orbit):
                        kind = "column-singular"
                    else:
                        kind = "nonsingular"
                    out.append(ESquare(rep, kind))
    out.sort(key=lambda sq: sq.entries)
    return out
