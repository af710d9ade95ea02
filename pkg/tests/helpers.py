"""Independent brute-force oracles and instance generators for the tests.

Everything here recomputes results from first principles (position
tuples via itertools.combinations, gap checks by direct inspection,
languages by enumerating all candidate strings) so the library code is
never used to check itself.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterable, Sequence

from gapsub import (
    INF,
    Dfa,
    GapConstraint,
    GappedSequence,
    LengthGap,
    RegLenGap,
    RegularGap,
    Word,
    ZeroGap,
)


def gap_ok(c: GapConstraint, gap: Sequence[int]) -> bool:
    if isinstance(c, ZeroGap):
        return len(gap) == 0
    if isinstance(c, LengthGap):
        return c.lo <= len(gap) <= c.hi
    q = c.dfa.initial
    for s in gap:
        q = c.dfa.table[q][s - 1]
    ok = q in c.dfa.finals
    if isinstance(c, RegLenGap):
        ok = ok and c.lo <= len(gap) <= c.hi
    return ok


def embeds_at(
    wsyms: Sequence[int],
    psyms: Sequence[int],
    gc: Sequence[GapConstraint],
    pos: Sequence[int],
) -> bool:
    if any(wsyms[i - 1] != a for i, a in zip(pos, psyms)):
        return False
    for j in range(len(pos) - 1):
        if not gap_ok(gc[j], wsyms[pos[j] : pos[j + 1] - 1]):
            return False
    return True


def brute_embeddings(w: Word, gs: GappedSequence) -> list[tuple[int, ...]]:
    """All embedding position tuples, by trying every combination."""
    n, k = len(w), len(gs.pattern)
    if k == 0:
        return [()]
    out = []
    for pos in itertools.combinations(range(1, n + 1), k):
        if embeds_at(w.symbols, gs.pattern.symbols, gs.constraints, pos):
            out.append(pos)
    return out


def brute_match(w: Word, gs: GappedSequence) -> bool:
    """Memoized recursive scan; fast enough for the reduction-size words."""
    wsyms, psyms, gc = w.symbols, gs.pattern.symbols, gs.constraints
    n, k = len(wsyms), len(psyms)

    @lru_cache(maxsize=None)
    def go(j: int, i: int) -> bool:
        if j == k:
            return True
        for i2 in range(i + 1, n + 1):
            if wsyms[i2 - 1] != psyms[j]:
                continue
            if j == 0 or gap_ok(gc[j - 1], wsyms[i : i2 - 1]):
                if go(j + 1, i2):
                    return True
        return False

    return go(0, 0)


def brute_lang_k(
    w: Word, gc: Sequence[GapConstraint], sigma: int, k: int
) -> set[tuple[int, ...]]:
    """All length-k strings that embed into w under gc."""
    out = set()
    for p in itertools.product(range(1, sigma + 1), repeat=k):
        if brute_match(w, GappedSequence(Word(p), tuple(gc))):
            out.add(p)
    return out


def brute_parikh(
    w: Word, gc: Sequence[GapConstraint], sigma: int, k: int
) -> dict[tuple[int, ...], int]:
    """Exact embedding count for every length-k string, nonzero entries only."""
    out = {}
    for p in itertools.product(range(1, sigma + 1), repeat=k):
        cnt = len(brute_embeddings(w, GappedSequence(Word(p), tuple(gc))))
        if cnt:
            out[p] = cnt
    return out


def plain_subsequence_set(w: Word, k: int) -> frozenset[tuple[int, ...]]:
    return frozenset(itertools.combinations(w.symbols, k))


def random_dfa(rng: random.Random, states: int, sigma: int) -> Dfa:
    table = tuple(
        tuple(rng.randrange(states) for _ in range(sigma)) for _ in range(states)
    )
    finals = frozenset(q for q in range(states) if rng.random() < 0.6)
    return Dfa(states, rng.randrange(states), finals, table)


def random_constraint(
    rng: random.Random, kind: str, sigma: int
) -> GapConstraint:
    if rng.random() < 0.2:
        return ZeroGap()
    if kind == "length":
        lo = rng.randint(0, 5)
        hi = INF if rng.random() < 0.15 else lo + rng.randint(0, 6)
        return LengthGap(lo, hi)
    if kind == "regular":
        return RegularGap(random_dfa(rng, rng.randint(1, 3), sigma))
    lo = rng.randint(0, 4)
    hi = INF if rng.random() < 0.15 else lo + rng.randint(0, 5)
    return RegLenGap(lo, hi, random_dfa(rng, rng.randint(1, 3), sigma))


def random_instance(
    rng: random.Random,
    kind: str,
    max_n: int = 25,
    max_k: int = 7,
    max_sigma: int = 4,
) -> tuple[Word, GappedSequence]:
    sigma = rng.randint(1, max_sigma)
    n = rng.randint(0, max_n)
    w = Word(tuple(rng.randint(1, sigma) for _ in range(n)))
    k = rng.randint(1, max_k)
    p = Word(tuple(rng.randint(1, sigma) for _ in range(k)))
    gc = tuple(random_constraint(rng, kind, sigma) for _ in range(k - 1))
    return w, GappedSequence(p, gc)


def all_words(sigma: int, lengths: Iterable[int]) -> list[Word]:
    out = []
    for n in lengths:
        for syms in itertools.product(range(1, sigma + 1), repeat=n):
            out.append(Word(syms))
    return out
