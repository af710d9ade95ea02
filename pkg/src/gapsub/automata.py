"""Finite automata: complete DFAs, subsequence automata, products.

DFA states are 0..num_states-1 and symbols are ids 1..num_symbols; the
transition table is dense, one row per state with one entry per symbol,
so every DFA here is complete by construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import Alphabet, InputError, UsageError, Word


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic finite automaton over symbols 1..num_symbols."""

    num_states: int
    initial: int
    finals: frozenset[int]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))

    @property
    def num_symbols(self) -> int:
        return len(self.table[0]) if self.table else 0

    def step(self, q: int, a: int) -> int:
        return self.table[q][a - 1]

    def run(self, symbols: Iterable[int]) -> bool:
        """Accept or reject the given symbol sequence."""
        q = self.initial
        for a in symbols:
            q = self.table[q][a - 1]
        return q in self.finals

    def with_extra_symbol(self) -> "Dfa":
        """Widen the alphabet by one symbol that always leads to a dead sink."""
        sink = self.num_states
        rows = [row + (sink,) for row in self.table]
        rows.append(tuple([sink] * (self.num_symbols + 1)))
        return Dfa(self.num_states + 1, self.initial, self.finals, tuple(rows))


def dfa_validate(d: Dfa, alphabet: Alphabet) -> Optional[str]:
    """None when d is a complete DFA over the alphabet, else the first problem."""
    n = d.num_states
    if n < 1:
        return "automaton needs at least one state"
    if not 0 <= d.initial < n:
        return f"initial state {d.initial} out of range"
    for q in sorted(d.finals):
        if not 0 <= q < n:
            return f"final state {q} out of range"
    if len(d.table) != n:
        return f"transition table has {len(d.table)} rows, expected {n}"
    for q, row in enumerate(d.table):
        if len(row) != alphabet.size:
            return (
                f"state {q} has {len(row)} transitions, expected {alphabet.size} "
                f"(first missing symbol {len(row) + 1})"
            )
        for a, target in enumerate(row, start=1):
            if not 0 <= target < n:
                return f"transition ({q}, {a}) targets out-of-range state {target}"
    return None


def sigma_star_dfa(sigma: int) -> Dfa:
    """Single accepting state looping on every symbol: accepts everything."""
    return Dfa(1, 0, frozenset({0}), (tuple([0] * sigma),))


def empty_word_dfa(sigma: int) -> Dfa:
    """Accepts only the empty word: any symbol falls into a dead sink."""
    return Dfa(2, 0, frozenset({0}), (tuple([1] * sigma), tuple([1] * sigma)))


def build_subsequence_automaton(w: Word, sigma: Optional[int] = None) -> Dfa:
    """DFA accepting exactly the non-empty subsequences of w.

    States 0..n+1: state i means the shortest embedding so far ends at
    position i; n+1 is the error sink.  On symbol a, state i moves to the
    next occurrence of a strictly after i, or to the sink.  Finals are
    1..n, so the empty word is rejected.
    """
    n = len(w)
    if sigma is None:
        sigma = max(w.symbols, default=1)
    for s in w.symbols:
        if s > sigma:
            raise InputError(f"word symbol {s} outside alphabet 1..{sigma}")
    sink = n + 1
    # nxt[i][a-1] = least j > i with w[j] = a, else sink; filled right to left
    rows: list[tuple[int, ...]] = [tuple([sink] * sigma)] * (n + 2)
    cur = [sink] * sigma
    rows[sink] = tuple(cur)
    for i in range(n, -1, -1):
        rows[i] = tuple(cur)
        if i > 0:
            cur[w.symbols[i - 1] - 1] = i
    finals = frozenset(range(1, n + 1))
    return Dfa(n + 2, 0, finals, tuple(rows))


def build_co_subsequence_automaton(w: Word, sigma: Optional[int] = None) -> Dfa:
    """DFA accepting exactly the non-empty words that are NOT subsequences of w."""
    base = build_subsequence_automaton(w, sigma)
    return Dfa(base.num_states, base.initial, frozenset({base.num_states - 1}), base.table)


def product_shortest_accepted(a: Dfa, b: Dfa, maxlen: int) -> Optional[Word]:
    """Shortest word of length <= maxlen accepted by both DFAs, or None.

    Breadth-first search over the product; symbols are explored in
    increasing id order, so among shortest solutions the lexicographically
    least is returned.
    """
    if a.num_symbols != b.num_symbols:
        raise UsageError(
            f"product needs a common alphabet, got {a.num_symbols} vs {b.num_symbols}"
        )
    sigma = a.num_symbols
    start = (a.initial, b.initial)
    if a.initial in a.finals and b.initial in b.finals:
        return Word(())
    parent: dict[tuple[int, int], tuple[tuple[int, int], int]] = {start: None}
    frontier = deque([(start, 0)])
    while frontier:
        (qa, qb), depth = frontier.popleft()
        if depth == maxlen:
            continue
        for sym in range(1, sigma + 1):
            nxt = (a.step(qa, sym), b.step(qb, sym))
            if nxt in parent:
                continue
            parent[nxt] = ((qa, qb), sym)
            if nxt[0] in a.finals and nxt[1] in b.finals:
                out = []
                node = nxt
                while parent[node] is not None:
                    node, s = parent[node]
                    out.append(s)
                return Word(tuple(reversed(out)))
            frontier.append((nxt, depth + 1))
    return None


class CountingNfa:
    """NFA whose accepting paths labelled p correspond one-to-one to embeddings.

    States are pairs (i, j): position i of the word holds the j-th pattern
    symbol.  The initial state is (0, 0), finals are the states with j = k,
    and a dead error state absorbs every otherwise-undefined transition.
    """

    __slots__ = ("states", "initial", "finals", "transitions", "num_symbols")

    def __init__(
        self,
        states: tuple[tuple[int, int], ...],
        initial: tuple[int, int],
        finals: frozenset[tuple[int, int]],
        transitions: dict[tuple[tuple[int, int], int], tuple[tuple[int, int], ...]],
        num_symbols: int,
    ) -> None:
        self.states = states
        self.initial = initial
        self.finals = frozenset(finals)
        self.transitions = transitions
        self.num_symbols = num_symbols

    def successors(self, state: tuple[int, int], sym: int) -> tuple[tuple[int, int], ...]:
        return self.transitions.get((state, sym), ())
