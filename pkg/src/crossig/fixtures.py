from __future__ import annotations

from .biorder import BiorderedSet, load_biorder
from .semigroup import (ACCEPTANCE_FIXTURES, BUILTINS, FiniteSemigroup, builtin, homomorphisms,
                        load_cayley)

__all__ = [
    "ACCEPTANCE_FIXTURES", "BUILTINS", "FiniteSemigroup", "builtin", "homomorphisms", "load_cayley",
    "idempotent_biorder", "trace_groupoid", "principal_categories",
]


def idempotent_biorder(S: FiniteSemigroup) -> BiorderedSet:
    """E(S): basic pairs are those comparable under the preorders; element i is S.idempotents[i]."""
    idem = S.idempotents
    T = S.table
    k = len(idem)
    table = [[None] * k for _ in range(k)]
    index = {e: i for i, e in enumerate(idem)}
    for i, e in enumerate(idem):
        for j, f in enumerate(idem):
            basic = T[e][f] == e or T[f][e] == e or T[f][e] == f or T[e][f] == f
            if basic:
                table[i][j] = index[T[e][f]]
    return load_biorder(table, [S.labels[e] for e in idem], f"E({S.name})" if S.name else "E")


def trace_groupoid(S: FiniteSemigroup, E: BiorderedSet | None = None):
    """Morphisms (e, x, f) with e R x L f; labels use biorder ids for e, f and the element id for x.

    Order: (e,x,f) <= (e',x',f') iff e <= e', f <= f' and x = ex' = x'f.
    """
    from .inductive import InductiveGroupoid, build_groupoid

    if E is None:
        E = idempotent_biorder(S)
    idem = S.idempotents
    T = S.table
    keys = []
    for i, e in enumerate(idem):
        for x in range(S.n):
            if not S.green_r(e, x):
                continue
            for j, f in enumerate(idem):
                if S.green_l(x, f):
                    keys.append((i, x, j))

    def inverse(key):
        i, x, j = key
        e, f = idem[i], idem[j]
        for y in range(S.n):
            if T[x][y] == e and T[y][x] == f and T[T[y][x]][y] == y:
                return (j, y, i)
        return None

    def leq(a, b):
        i, x, j = a
        k, y, m = b
        return E.leq[i][k] and E.leq[j][m] and T[idem[i]][y] == x and T[y][idem[j]] == x

    g = build_groupoid(
        E.n, keys,
        dom_of=lambda k: k[0],
        cod_of=lambda k: k[2],
        mul=lambda a, b: (a[0], T[a[1]][b[1]], b[2]),
        inv=inverse,
        leq=leq,
        identity_of=lambda i: (i, idem[i], i),
        object_labels=E.labels,
        name=f"trace({S.name})",
        object_leq=lambda a, b: E.leq[a][b],
    )
    eval_gen = {}
    for i in range(E.n):
        for j in range(E.n):
            if i == j:
                continue
            if E.R[i][j]:
                eval_gen[(i, j)] = g.index[(i, idem[j], j)]
            elif E.L[i][j]:
                eval_gen[(i, j)] = g.index[(i, idem[i], j)]
    return InductiveGroupoid(g, E, eval_gen, name=f"trace({S.name})")


def _least_l_representative(S: FiniteSemigroup, e: int) -> int:
    return min(f for f in S.idempotents if S.green_l(e, f))


def canonical_rho(S: FiniteSemigroup, e: int, u: int, f: int) -> tuple[int, int, int]:
    """Key of the right translation Se -> Sf by u in eSf, up to the equality of such morphisms."""
    ec = _least_l_representative(S, e)
    return (ec, S.table[ec][u], _least_l_representative(S, f))


def principal_left_category(S: FiniteSemigroup, name: str | None = None):
    """Principal left ideals Se with right translations rho(e, u, f), u in eSf."""
    from .normcat import build_category

    T = S.table
    reps = sorted({_least_l_representative(S, e) for e in S.idempotents})
    position = {e: i for i, e in enumerate(reps)}
    keys = []
    for e in reps:
        for f in reps:
            for u in sorted({T[T[e][s]][f] for s in range(S.n)} | {T[e][f]}):
                if T[T[e][u]][f] == u:
                    keys.append((e, u, f))
    keys = sorted(set(keys))
    return build_category(
        [f"S{S.labels[e]}" for e in reps], keys,
        dom_of=lambda k: position[k[0]],
        cod_of=lambda k: position[k[2]],
        mul=lambda a, b: (a[0], T[a[1]][b[1]], b[2]),
        identity_of=lambda i: (reps[i], reps[i], reps[i]),
        inclusion_of=lambda i, j: (reps[i], reps[i], reps[j]) if T[reps[i]][reps[j]] == reps[i] else None,
        name=name or f"L({S.name})",
    )


def principal_categories(S: FiniteSemigroup):
    """(L_S, R_S); R_S is built as the left category of the opposite semigroup."""
    return principal_left_category(S), principal_left_category(S.opposite(), name=f"R({S.name})")
