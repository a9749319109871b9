from __future__ import annotations

from itertools import product as cartesian

from .errors import MalformedTable, NotAssociative, NotRegular, SizeBound, UnknownFixture

DEFAULT_MAX_SIZE = 64


class FiniteSemigroup:
    """Total Cayley table on 0..n-1; products read left to right."""

    def __init__(self, table, labels=None, name: str = ""):
        self.n = len(table)
        self.table = [list(row) for row in table]
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.n)]
        self.name = name
        self.idempotents = [a for a in range(self.n) if self.table[a][a] == a]
        self._right_ideals = None
        self._left_ideals = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def mul_all(self, *terms) -> int:
        acc = terms[0]
        for t in terms[1:]:
            acc = self.table[acc][t]
        return acc

    def associativity_witness(self):
        T = self.table
        for a, b, c in cartesian(range(self.n), repeat=3):
            if T[T[a][b]][c] != T[a][T[b][c]]:
                return (a, b, c)
        return None

    def regularity_witness(self):
        T = self.table
        for a in range(self.n):
            if not any(T[T[a][b]][a] == a for b in range(self.n)):
                return (a,)
        return None

    @property
    def associative(self) -> bool:
        return self.associativity_witness() is None

    @property
    def regular(self) -> bool:
        return self.regularity_witness() is None

    def right_ideal(self, a: int) -> frozenset:
        if self._right_ideals is None:
            self._right_ideals = [frozenset([x] + self.table[x]) for x in range(self.n)]
        return self._right_ideals[a]

    def left_ideal(self, a: int) -> frozenset:
        if self._left_ideals is None:
            self._left_ideals = [frozenset([x] + [self.table[s][x] for s in range(self.n)]) for x in range(self.n)]
        return self._left_ideals[a]

    def green_r(self, a: int, b: int) -> bool:
        return self.right_ideal(a) == self.right_ideal(b)

    def green_l(self, a: int, b: int) -> bool:
        return self.left_ideal(a) == self.left_ideal(b)

    def opposite(self) -> "FiniteSemigroup":
        n = self.n
        table = [[self.table[b][a] for b in range(n)] for a in range(n)]
        return FiniteSemigroup(table, self.labels, (self.name + "^op") if self.name else "op")

    def to_dict(self) -> dict:
        return {"n": self.n, "table": self.table, "labels": self.labels, "name": self.name}

    def __repr__(self) -> str:
        return f"FiniteSemigroup(n={self.n}, name={self.name!r})"


def load_cayley(doc, require_regular: bool = False, labels=None, name: str = "") -> FiniteSemigroup:
    if isinstance(doc, dict):
        rows = doc.get("table")
        labels = labels if labels is not None else doc.get("labels")
        name = name or doc.get("name", "")
        if rows is None:
            raise MalformedTable("missing 'table'")
        if "n" in doc and doc["n"] != len(rows):
            raise MalformedTable(f"n={doc['n']} does not match table size {len(rows)}")
    else:
        rows = doc
    n = len(rows)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}", row=i)
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise MalformedTable(f"entry ({i},{j}) = {v!r} out of range", entry=[i, j])
    S = FiniteSemigroup(rows, labels, name)
    witness = S.associativity_witness()
    if witness is not None:
        raise NotAssociative(f"(ab)c != a(bc) at {witness}", witness=list(witness))
    if require_regular:
        witness = S.regularity_witness()
        if witness is not None:
            raise NotRegular(f"element {witness[0]} has no inverse-like partner", witness=list(witness))
    return S


def _from_elements(elements, mul, labels, name) -> FiniteSemigroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteSemigroup(table, labels, name)


def _left_zero(k):
    return FiniteSemigroup([[a] * k for a in range(k)], [f"l{a + 1}" for a in range(k)], f"left_zero({k})")


def _right_zero(k):
    return FiniteSemigroup([list(range(k)) for _ in range(k)], [f"r{a + 1}" for a in range(k)], f"right_zero({k})")


def _rect_band(m, k):
    elements = [(i, j) for i in range(m) for j in range(k)]
    labels = [f"({i + 1},{j + 1})" for i, j in elements]
    return _from_elements(elements, lambda a, b: (a[0], b[1]), labels, f"rect_band({m},{k})")


def _semilattice_chain(k):
    return FiniteSemigroup([[min(a, b) for b in range(k)] for a in range(k)], [str(a) for a in range(k)],
                           f"semilattice_chain({k})")


def _brandt2():
    elements = [(1, 1), (1, 2), (2, 1), (2, 2), None]

    def mul(a, b):
        if a is None or b is None or a[1] != b[0]:
            return None
        return (a[0], b[1])

    labels = ["E11", "E12", "E21", "E22", "0"]
    return _from_elements(elements, mul, labels, "brandt2")


def _full_transformation(k):
    # maps act on the right: x(ab) = (xa)b
    elements = list(cartesian(range(k), repeat=k))
    labels = ["".join(str(v + 1) for v in t) for t in elements]
    return _from_elements(elements, lambda a, b: tuple(b[a[x]] for x in range(k)), labels,
                          f"full_transformation({k})")


def _symmetric_inverse(k):
    elements = []
    for t in cartesian(range(-1, k), repeat=k):
        images = [v for v in t if v >= 0]
        if len(images) == len(set(images)):
            elements.append(t)

    def mul(a, b):
        return tuple(-1 if a[x] < 0 else b[a[x]] for x in range(k))

    labels = ["".join("-" if v < 0 else str(v + 1) for v in t) for t in elements]
    return _from_elements(elements, mul, labels, f"symmetric_inverse({k})")


def _cyclic_group(k):
    return FiniteSemigroup([[(a + b) % k for b in range(k)] for a in range(k)], [f"g{a}" for a in range(k)],
                           f"cyclic_group({k})")


BUILTINS = {
    "left_zero": (_left_zero, 1),
    "right_zero": (_right_zero, 1),
    "rect_band": (_rect_band, 2),
    "semilattice_chain": (_semilattice_chain, 1),
    "brandt2": (_brandt2, 0),
    "full_transformation": (_full_transformation, 1),
    "symmetric_inverse": (_symmetric_inverse, 1),
    "cyclic_group": (_cyclic_group, 1),
}

PARAM_CAPS = {"full_transformation": 3, "symmetric_inverse": 2}


def builtin(name: str, params=(), max_size: int = DEFAULT_MAX_SIZE) -> FiniteSemigroup:
    if name not in BUILTINS:
        raise UnknownFixture(f"unknown fixture {name!r}", name=name, known=sorted(BUILTINS))
    factory, arity = BUILTINS[name]
    params = tuple(int(p) for p in params)
    if len(params) != arity:
        raise UnknownFixture(f"{name} takes {arity} integer parameter(s), got {len(params)}", name=name)
    if any(p < 1 for p in params):
        raise SizeBound(f"{name} parameters must be positive", name=name, params=list(params))
    cap = PARAM_CAPS.get(name)
    if cap is not None and params[0] > cap:
        raise SizeBound(f"{name} is capped at k <= {cap}", name=name, params=list(params))
    estimate = {
        "rect_band": lambda: params[0] * params[1],
        "full_transformation": lambda: params[0] ** params[0],
        "brandt2": lambda: 5,
        "symmetric_inverse": lambda: {1: 2, 2: 7}[params[0]],
    }.get(name, lambda: params[0])()
    if estimate > max_size:
        raise SizeBound(f"{name}{params} has {estimate} elements, above the size cap {max_size}",
                        name=name, params=list(params))
    return factory(*params)


ACCEPTANCE_FIXTURES = [
    ("left_zero", (2,)),
    ("right_zero", (2,)),
    ("rect_band", (2, 2)),
    ("semilattice_chain", (2,)),
    ("brandt2", ()),
    ("full_transformation", (2,)),
    ("full_transformation", (3,)),
]


def homomorphisms(S: FiniteSemigroup, T: FiniteSemigroup, injective: bool = False, limit=None):
    """All semigroup homomorphisms S -> T by backtracking over generator images."""
    gens = generating_set(S)
    relation = [_monogenic_relation(S, g) for g in gens]
    found = []

    def compatible(gen_index, image):
        i, j = relation[gen_index]
        return _power(T, image, i) == _power(T, image, j)

    def extend(k, phi):
        if limit is not None and len(found) >= limit:
            return
        if k == len(gens):
            if injective and len(set(phi)) != S.n:
                return
            found.append(tuple(phi))
            return
        for image in range(T.n):
            if not compatible(k, image):
                continue
            trial = _extend_map(S, T, gens[:k + 1], phi, gens[k], image)
            if trial is None:
                continue
            if injective and len(set(v for v in trial if v is not None)) != sum(v is not None for v in trial):
                continue
            extend(k + 1, trial)

    extend(0, [None] * S.n)
    return sorted(found)


def _power(S, a, k):
    acc = a
    for _ in range(k - 1):
        acc = S.table[acc][a]
    return acc


def _monogenic_relation(S, a):
    seen = {}
    acc, k = a, 1
    while acc not in seen:
        seen[acc] = k
        acc = S.table[acc][a]
        k += 1
    return seen[acc], k


def _extend_map(S, T, gens, phi, new_gen, image):
    """Extend a partial homomorphism defined on <gens minus new_gen> to <gens>; None on conflict."""
    phi = list(phi)
    if phi[new_gen] is not None and phi[new_gen] != image:
        return None
    phi[new_gen] = image
    frontier = [x for x in range(S.n) if phi[x] is not None]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for left, right in ((a, g), (g, a)):
                    b = S.table[left][right]
                    value = T.table[phi[left]][phi[right]]
                    if phi[b] is None:
                        phi[b] = value
                        nxt.append(b)
                    elif phi[b] != value:
                        return None
        frontier = nxt
    return phi


def generating_set(S: FiniteSemigroup) -> list[int]:
    """Greedy small generating set: repeatedly add the least element not yet generated."""
    gens: list[int] = []
    generated: set[int] = set()
    while len(generated) < S.n:
        candidate = min(a for a in range(S.n) if a not in generated)
        gens.append(candidate)
        generated = _closure(S, gens)
    # drop redundant generators from the front where possible
    for g in list(gens):
        rest = [x for x in gens if x != g]
        if rest and len(_closure(S, rest)) == S.n:
            gens = rest
    return gens


def _closure(S, gens):
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = S.table[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen
