from __future__ import annotations

from dataclasses import dataclass

from .biorder import BiorderedSet
from .errors import ClosureBoundExceeded, NoRestriction, NotAPath, NotComposable
from .groupoid import OrderedGroupoid, build_groupoid


@dataclass(frozen=True, order=True)
class EChain:
    seq: tuple

    @property
    def dom(self) -> int:
        return self.seq[0]

    @property
    def cod(self) -> int:
        return self.seq[-1]

    def inverse(self) -> "EChain":
        return EChain(tuple(reversed(self.seq)))

    def __len__(self) -> int:
        return len(self.seq)


def step_kind(E: BiorderedSet, a: int, b: int):
    """'R' or 'L' for distinct related entries, '=' for equal ones, None otherwise."""
    if a == b:
        return "="
    if E.R[a][b]:
        return "R"
    if E.L[a][b]:
        return "L"
    return None


def is_path(E: BiorderedSet, seq) -> bool:
    return len(seq) > 0 and all(step_kind(E, a, b) is not None for a, b in zip(seq, seq[1:]))


def reduce_path(E: BiorderedSet, seq) -> EChain:
    """Remove inessential entries left to right until none remain.

    Repeated entries count as inessential too, so (e, e) reduces to (e).
    """
    seq = tuple(seq)
    if not seq:
        raise NotAPath("empty path")
    for i, (a, b) in enumerate(zip(seq, seq[1:])):
        if step_kind(E, a, b) is None:
            raise NotAPath(f"entries {a} and {b} at position {i} are neither R- nor L-related",
                           position=i, pair=[a, b])
    stack: list[int] = []
    for x in seq:
        if stack and stack[-1] == x:
            continue
        if len(stack) >= 2 and step_kind(E, stack[-2], stack[-1]) == step_kind(E, stack[-1], x):
            stack.pop()
            if stack[-1] == x:
                continue
        stack.append(x)
    return EChain(tuple(stack))


def identity_chain(e: int) -> EChain:
    return EChain((e,))


def compose_chains(E: BiorderedSet, c: EChain, c2: EChain) -> EChain:
    if c.cod != c2.dom:
        raise NotComposable(f"chain ends at {c.cod} but the next starts at {c2.dom}")
    return reduce_path(E, c.seq + c2.seq[1:])


def h_sequence(E: BiorderedSet, e: int, c: EChain):
    """h1 = e and h_i = (f_i h_{i-1}) f_i along c; None if some product is undefined."""
    h = [e]
    for f in c.seq[1:]:
        a = E.product[f][h[-1]]
        if a is None:
            return None
        b = E.product[a][f]
        if b is None:
            return None
        h.append(b)
    return tuple(h)


def chain_leq(E: BiorderedSet, c: EChain, c2: EChain) -> bool:
    if not E.leq[c.dom][c2.dom]:
        return False
    h = h_sequence(E, c.dom, c2)
    if h is None or not is_path(E, h):
        return False
    return reduce_path(E, h) == c


def restrict_chain(E: BiorderedSet, e: int, c: EChain) -> EChain:
    if not E.leq[e][c.dom]:
        raise NoRestriction(f"{e} is not below {c.dom}", object=e)
    h = h_sequence(E, e, c)
    if h is None or not is_path(E, h):
        raise NoRestriction(f"h-sequence from {e} along {c.seq} is not a path", object=e)
    return reduce_path(E, h)


def corestrict_chain(E: BiorderedSet, c: EChain, f: int) -> EChain:
    return restrict_chain(E, f, c.inverse()).inverse()


def enumerate_chains(E: BiorderedSet, max_length: int) -> list[EChain]:
    """All reduced chains with at most max_length entries."""
    out = []
    stack = [(e,) for e in range(E.n)]
    while stack:
        seq = stack.pop()
        out.append(EChain(seq))
        if len(seq) >= max_length:
            continue
        last = seq[-1]
        previous_kind = step_kind(E, seq[-2], last) if len(seq) >= 2 else None
        for x in range(E.n):
            kind = step_kind(E, last, x)
            if kind in (None, "=") or kind == previous_kind:
                continue
            stack.append(seq + (x,))
    out.sort()
    return out


def default_fragment_length(E: BiorderedSet) -> int:
    return max(2, 2 * E.n)


def _groupoid_from_chains(E: BiorderedSet, chains, partial: bool, name: str) -> OrderedGroupoid:
    return build_groupoid(
        E.n,
        chains,
        dom_of=lambda c: c.dom,
        cod_of=lambda c: c.cod,
        mul=lambda a, b: compose_chains(E, a, b),
        inv=lambda c: c.inverse(),
        leq=lambda a, b: chain_leq(E, a, b),
        identity_of=identity_chain,
        object_labels=E.labels,
        partial=partial,
        name=name,
        object_leq=lambda a, b: E.leq[a][b],
    )


def chain_groupoid(E: BiorderedSet, cap: int | None = None) -> OrderedGroupoid:
    """Closure of identities and R/L generators under composition.

    Raises ClosureBoundExceeded once more than `cap` (default 2 n^2) morphisms appear,
    which happens whenever the R/L class graph has a cycle.
    """
    if cap is None:
        cap = 2 * E.n * E.n
    generators = [EChain((a, b)) for a in range(E.n) for b in range(E.n) if step_kind(E, a, b) in ("R", "L")]
    found = {identity_chain(e) for e in range(E.n)} | set(generators)
    frontier = sorted(found)
    while frontier:
        nxt = []
        for c in frontier:
            for g in generators:
                if g.dom != c.cod:
                    continue
                d = compose_chains(E, c, g)
                if d not in found:
                    found.add(d)
                    nxt.append(d)
                    if len(found) > cap:
                        raise ClosureBoundExceeded(
                            f"more than {cap} reduced chains; the chain groupoid of {E.name or 'E'} is not "
                            "finite within the bound",
                            cap=cap, longest=max(len(x) for x in found))
        frontier = sorted(nxt)
    return _groupoid_from_chains(E, sorted(found), partial=False, name=f"G({E.name})")


def chain_fragment(E: BiorderedSet, max_length: int | None = None) -> OrderedGroupoid:
    """All reduced chains up to max_length entries; composition kept only inside the fragment."""
    if max_length is None:
        max_length = default_fragment_length(E)
    chains = enumerate_chains(E, max_length)
    return _groupoid_from_chains(E, chains, partial=True, name=f"G({E.name})[<= {max_length}]")
