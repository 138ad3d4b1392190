"""Normal form of a candidate under base automorphisms and the exchange D <-> A - D."""

from __future__ import annotations

from functools import lru_cache

from ..construct import ConstructionCandidate


def _apply(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def _group(mats: tuple, n: int) -> tuple:
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    group = {ident}
    frontier = [ident]
    gens = [tuple(map(tuple, m)) for m in mats]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = _mul(h, g)
                if p not in group:
                    group.add(p)
                    nxt.append(p)
        frontier = nxt
    return tuple(sorted(group))


def automorphism_group(record) -> tuple:
    return _group(tuple(record.automorphisms), record.rank)


def orbit(c: ConstructionCandidate) -> list[ConstructionCandidate]:
    Z = c.record
    out = set()
    for g in automorphism_group(Z):
        A = _apply(g, c.A.coords)
        D = _apply(g, c.D.coords)
        D2 = tuple(a - d for a, d in zip(A, D))
        out.add((A, D))
        out.add((A, D2))
    return [ConstructionCandidate.of(Z, A, D) for A, D in sorted(out)]


def canonicalize(c: ConstructionCandidate) -> ConstructionCandidate:
    """Lexicographically least (A, D) over the orbit; idempotent."""
    return min(orbit(c), key=lambda x: (x.A.coords, x.D.coords))
