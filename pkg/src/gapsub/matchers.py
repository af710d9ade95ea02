"""Decision procedures for embedding a gapped sequence in a word.

All matchers answer the same question, does the pattern embed in the word
with every gap constraint satisfied, and return a witness embedding or
None.  match_naive is the reference implementation the others are tested
against.  The specialised matchers share a skeleton: split the pattern
into blocks at its non-zero constraints, locate block occurrences with a
prefix-function scan, then carry a dynamic-programming frontier of block
end positions across the gaps.  They differ only in the gap step:

- match_length   sliding window over sorted end positions, O(n) per gap
- match_regular  per-state earliest-start sweep, O(n states) per gap
- match_reglen   trace forests with level-ancestor jumps and window
                 marking, O(n states log n) per gap

The empty pattern embeds in every word via the empty embedding.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable, Optional

from .automata import sigma_star_dfa
from .core import (
    Embedding,
    GappedSequence,
    InputError,
    LengthGap,
    RegularGap,
    UsageError,
    Word,
    ZeroGap,
    constraint_allows,
    constraint_dfa,
    constraint_window,
    is_zero_gap,
    normalize,
)


def pattern_blocks(gs: GappedSequence) -> tuple[list[tuple[int, ...]], list]:
    """Split the pattern at its non-zero constraints.

    Returns (blocks, joints): maximal runs of pattern symbols joined by
    zero gaps, and the non-zero constraints between consecutive blocks.
    Blocks are never empty because each constraint sits at its own gap.
    """
    syms = gs.pattern.symbols
    if not syms:
        return [], []
    blocks: list[tuple[int, ...]] = []
    joints: list = []
    cur = [syms[0]]
    for idx, c in enumerate(gs.constraints):
        if is_zero_gap(c):
            cur.append(syms[idx + 1])
        else:
            blocks.append(tuple(cur))
            joints.append(c)
            cur = [syms[idx + 1]]
    blocks.append(tuple(cur))
    return blocks, joints


def _end_positions(text: tuple[int, ...], block: tuple[int, ...]) -> list[int]:
    """Positions (1-based, ascending) where an occurrence of block ends in text."""
    m = len(block)
    pi = [0] * m
    k = 0
    for i in range(1, m):
        while k and block[i] != block[k]:
            k = pi[k - 1]
        if block[i] == block[k]:
            k += 1
        pi[i] = k
    out: list[int] = []
    k = 0
    for i, ch in enumerate(text, start=1):
        while k and (k == m or ch != block[k]):
            k = pi[k - 1]
        if ch == block[k]:
            k += 1
        if k == m:
            out.append(i)
    return out


def _or_spread(x: int, span: int) -> int:
    """x | (x << 1) | ... | (x << span), by doubling."""
    covered = 0
    while covered < span:
        d = min(covered + 1, span - covered)
        x |= x << d
        covered += d
    return x


def _iter_bits(x: int) -> Iterable[int]:
    # byte-wise walk keeps this linear in the mask width
    base = 0
    for byte in x.to_bytes((x.bit_length() + 7) // 8 or 1, "little"):
        while byte:
            low = byte & -byte
            yield base + low.bit_length() - 1
            byte ^= low
        base += 8


def _mask_from_positions(n: int, positions: Iterable[int]) -> int:
    buf = bytearray(n // 8 + 2)
    for i in positions:
        buf[i >> 3] |= 1 << (i & 7)
    return int.from_bytes(buf, "little")


def match_naive(w: Word, gs: GappedSequence) -> Optional[Embedding]:
    """Reference matcher: position-by-position dynamic programming.

    D[t] is the set of word positions where the t-th pattern symbol can
    sit, given the first t-1 gaps are satisfied.  Gap feasibility is
    checked directly, streaming the constraint DFA from each candidate
    start for regular gaps.
    """
    if len(gs.pattern) == 0:
        return Embedding(())
    gs, infeasible = normalize(gs, len(w))
    if infeasible:
        return None
    syms = w.symbols
    n = len(syms)
    p = gs.pattern.symbols
    k = len(p)
    bufs: dict[int, bytearray] = {}
    nb = n // 8 + 2
    for i, a in enumerate(syms, start=1):
        b = bufs.get(a)
        if b is None:
            b = bufs[a] = bytearray(nb)
        b[i >> 3] |= 1 << (i & 7)
    posmask = {a: int.from_bytes(b, "little") for a, b in bufs.items()}
    D = [0] * (k + 1)
    D[1] = posmask.get(p[0], 0)
    for t in range(1, k):
        if D[t] == 0:
            return None
        c = gs.constraints[t - 1]
        pm = posmask.get(p[t], 0)
        lo, hi = constraint_window(c, n)
        if isinstance(c, (ZeroGap, LengthGap)):
            allow = _or_spread(D[t] << (1 + lo), hi - lo)
        else:
            dfa = c.dfa
            if dfa.num_symbols < max(syms):
                raise InputError("constraint DFA does not cover the word alphabet")
            table, finals, q0 = dfa.table, dfa.finals, dfa.initial
            allow_pos = []
            for j in _iter_bits(D[t]):
                if lo == 0 and q0 in finals:
                    allow_pos.append(j + 1)
                q = q0
                for e in range(j + 1, n + 1):
                    glen = e - j
                    if glen > hi:
                        break
                    q = table[q][syms[e - 1] - 1]
                    if glen >= lo and q in finals:
                        allow_pos.append(e + 1)
            allow = _mask_from_positions(n + 1, allow_pos)
        D[t + 1] = allow & pm
    if D[k] == 0:
        return None
    pos = [0] * k
    pos[k - 1] = next(_iter_bits(D[k]))
    for t in range(k - 1, 0, -1):
        i = pos[t]
        found = None
        for j in _iter_bits(D[t]):
            if j >= i:
                break
            if constraint_allows(gs.constraints[t - 1], syms[j : i - 1]):
                found = j
                break
        assert found is not None, "forward pass admitted an unreachable end"
        pos[t - 1] = found
    return Embedding(tuple(pos))


def _chain_witness(
    blocks: list[tuple[int, ...]], levels: list[list[int]], origins: list
) -> Embedding:
    """Assemble the embedding from per-level end positions and predecessors."""
    kblocks = len(blocks)
    ends = [0] * kblocks
    ends[-1] = levels[-1][0]
    for t in range(kblocks - 1, 0, -1):
        ends[t - 1] = origins[t][ends[t]]
    positions: list[int] = []
    for b, e in zip(blocks, ends):
        positions.extend(range(e - len(b) + 1, e + 1))
    return Embedding(tuple(positions))


def match_length(w: Word, gs: GappedSequence) -> Optional[Embedding]:
    """Matcher for zero and length constraints, O(n) per gap.

    Carries sorted lists of feasible block ends; each gap step slides a
    window [i - len - hi, i - len - lo] over the previous list with two
    pointers.  The recorded predecessor is the smallest valid end.
    """
    for c in gs.constraints:
        if not isinstance(c, (ZeroGap, LengthGap)):
            raise UsageError("match_length handles zero and length constraints only")
    if len(gs.pattern) == 0:
        return Embedding(())
    gs, infeasible = normalize(gs, len(w))
    if infeasible:
        return None
    syms = w.symbols
    n = len(syms)
    blocks, joints = pattern_blocks(gs)
    levels: list[list[int]] = [_end_positions(syms, blocks[0])]
    origins: list[Optional[dict[int, int]]] = [None]
    for t, c in enumerate(joints):
        prev = levels[t]
        if not prev:
            return None
        lo, hi = constraint_window(c, n)
        blen = len(blocks[t + 1])
        nxt: list[int] = []
        orig: dict[int, int] = {}
        p_in = 0
        p_out = 0
        for i in _end_positions(syms, blocks[t + 1]):
            top = i - blen - lo
            bot = i - blen - hi
            while p_in < len(prev) and prev[p_in] <= top:
                p_in += 1
            while p_out < p_in and prev[p_out] < bot:
                p_out += 1
            if p_out < p_in:
                nxt.append(i)
                orig[i] = prev[p_out]
        levels.append(nxt)
        origins.append(orig)
    if not levels[-1]:
        return None
    return _chain_witness(blocks, levels, origins)


def match_regular(w: Word, gs: GappedSequence) -> Optional[Embedding]:
    """Matcher for zero and regular constraints, O(n states) per gap.

    Each gap step sweeps the word once keeping, per DFA state q, the
    earliest feasible gap start that drives the DFA to q.  A position is
    reachable when some final state carries a finite start.
    """
    for c in gs.constraints:
        if not isinstance(c, (ZeroGap, RegularGap)):
            raise UsageError("match_regular handles zero and regular constraints only")
    if len(gs.pattern) == 0:
        return Embedding(())
    gs, infeasible = normalize(gs, len(w))
    if infeasible:
        return None
    syms = w.symbols
    n = len(syms)
    blocks, joints = pattern_blocks(gs)
    for c in joints:
        if c.dfa.num_symbols < max(syms, default=0):
            raise InputError("constraint DFA does not cover the word alphabet")
    levels: list[list[int]] = [_end_positions(syms, blocks[0])]
    origins: list[Optional[dict[int, int]]] = [None]
    sentinel = n + 2
    for t, c in enumerate(joints):
        prev = levels[t]
        if not prev:
            return None
        dfa = c.dfa
        qn, q0 = dfa.num_states, dfa.initial
        table, finals = dfa.table, sorted(dfa.finals)
        in_prev = bytearray(n + 1)
        for j in prev:
            in_prev[j] = 1
        S = [sentinel] * qn
        best = [-1] * (n + 1)
        for i in range(n + 1):
            if i >= 1:
                a = syms[i - 1] - 1
                S2 = [sentinel] * qn
                for q in range(qn):
                    j = S[q]
                    if j < sentinel:
                        q2 = table[q][a]
                        if j < S2[q2]:
                            S2[q2] = j
                S = S2
            if in_prev[i] and i < S[q0]:
                S[q0] = i
            b = min(S[q] for q in finals) if finals else sentinel
            if b < sentinel:
                best[i] = b
        blen = len(blocks[t + 1])
        nxt: list[int] = []
        orig: dict[int, int] = {}
        for i in _end_positions(syms, blocks[t + 1]):
            x = i - blen
            if x >= 0 and best[x] >= 0:
                nxt.append(i)
                orig[i] = best[x]
        levels.append(nxt)
        origins.append(orig)
    if not levels[-1]:
        return None
    return _chain_witness(blocks, levels, origins)


def _forest_gap_step(
    syms: tuple[int, ...],
    n: int,
    starts: list[int],
    lo: int,
    hi: int,
    dfa,
) -> tuple[bytearray, list[int]]:
    """Trace-forest gap step: which positions close a feasible gap.

    For every start j (a feasible end of the previous block, increasing)
    the DFA trace over w[j+1..n] is threaded into a forest: node (i, q)
    has parent (i+1, step(q, w[i+1])), and determinism makes equal nodes
    share subtrees, so the forest has at most (n+1) * states nodes.

    Starts are then processed in decreasing order; each jumps, via binary
    lifting, to its ancestor lo levels up and marks ancestors through the
    window of width hi - lo, stopping early at an already-marked node.
    Early stopping is sound: the earlier (larger) start that marked the
    met node has already marked the rest of the current window above it.
    Position i closes a gap iff a final-state node in column i is marked;
    forig[i] remembers the start recorded when column i was first hit.
    """
    qn = dfa.num_states
    q0 = dfa.initial
    table = dfa.table
    finals = dfa.finals
    colnode = array("i", [-1]) * ((n + 1) * qn)
    col = array("i")
    fin = bytearray()
    parent = array("i")
    start_node: dict[int, int] = {}
    for j in starts:
        i = j
        q = q0
        chain: list[int] = []
        attach = -1
        while True:
            idx = i * qn + q
            nid = colnode[idx]
            if nid != -1:
                attach = nid
                break
            nid = len(col)
            colnode[idx] = nid
            col.append(i)
            fin.append(q in finals)
            parent.append(-1)
            chain.append(nid)
            if i == n:
                attach = -1
                break
            q = table[q][syms[i] - 1]
            i += 1
        if chain:
            for a, b in zip(chain, chain[1:]):
                parent[a] = b
            parent[chain[-1]] = attach
            start_node[j] = chain[0]
        else:
            start_node[j] = attach
    m = len(col)
    # lifting tables only as deep as the one jump distance ever taken
    levels = lo.bit_length()
    ups = [parent]
    for _ in range(1, levels):
        above = ups[-1]
        cur = array("i", [-1]) * m
        for v in range(m):
            pv = above[v]
            cur[v] = above[pv] if pv != -1 else -1
        ups.append(cur)
    marked = bytearray(m)
    fset = bytearray(n + 1)
    forig = [-1] * (n + 1)
    for j in reversed(starts):
        space = n - j
        if lo > space:
            continue
        v = start_node[j]
        d = lo
        b = 0
        while d:
            if d & 1:
                v = ups[b][v]
            d >>= 1
            b += 1
        steps = min(hi, space) - lo
        while True:
            if marked[v]:
                break
            marked[v] = 1
            if fin[v]:
                c = col[v]
                if not fset[c]:
                    fset[c] = 1
                    forig[c] = j
            if steps == 0:
                break
            v = parent[v]
            steps -= 1
    return fset, forig


def match_reglen(w: Word, gs: GappedSequence) -> Optional[Embedding]:
    """General matcher: any mix of constraint kinds, O(n states log n) per gap.

    Length-only gaps are lifted to a window plus the one-state
    accept-everything DFA, so a single forest-based gap step serves all.
    """
    if len(gs.pattern) == 0:
        return Embedding(())
    gs, infeasible = normalize(gs, len(w))
    if infeasible:
        return None
    syms = w.symbols
    n = len(syms)
    blocks, joints = pattern_blocks(gs)
    maxsym = max(syms, default=1)
    trivial = None
    lifted: list[tuple[int, int, object]] = []
    for c in joints:
        lo, hi = constraint_window(c, n)
        dfa = constraint_dfa(c)
        if dfa is None:
            if trivial is None:
                trivial = sigma_star_dfa(maxsym)
            dfa = trivial
        elif dfa.num_symbols < maxsym:
            raise InputError("constraint DFA does not cover the word alphabet")
        lifted.append((lo, hi, dfa))
    levels: list[list[int]] = [_end_positions(syms, blocks[0])]
    origins: list[Optional[dict[int, int]]] = [None]
    for t, (lo, hi, dfa) in enumerate(lifted):
        prev = levels[t]
        if not prev:
            return None
        fset, forig = _forest_gap_step(syms, n, prev, lo, hi, dfa)
        blen = len(blocks[t + 1])
        nxt: list[int] = []
        orig: dict[int, int] = {}
        for i in _end_positions(syms, blocks[t + 1]):
            x = i - blen
            if x >= 0 and fset[x]:
                nxt.append(i)
                orig[i] = forig[x]
        levels.append(nxt)
        origins.append(orig)
    if not levels[-1]:
        return None
    return _chain_witness(blocks, levels, origins)


_ALGOS = {
    "naive": match_naive,
    "length": match_length,
    "regular": match_regular,
    "reglen": match_reglen,
}


def match(w: Word, gs: GappedSequence, algo: str = "auto") -> Optional[Embedding]:
    """Dispatch to a matcher; auto picks the cheapest one that fits the constraints."""
    if algo == "auto":
        kinds = {type(c) for c in gs.constraints}
        if kinds <= {ZeroGap, LengthGap}:
            algo = "length"
        elif kinds <= {ZeroGap, RegularGap}:
            algo = "regular"
        else:
            algo = "reglen"
    try:
        fn = _ALGOS[algo]
    except KeyError:
        raise UsageError(f"unknown matcher {algo!r}") from None
    return fn(w, gs)


@dataclass(frozen=True)
class EqualitySystem:
    """Symmetric relation on gap indices whose gaps must have equal lengths."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        canon = set()
        for a, b in self.pairs:
            if a < 1 or b < 1:
                raise InputError("gap indices are 1-based positive integers")
            canon.add((min(a, b), max(a, b)))
        object.__setattr__(self, "pairs", frozenset(canon))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "EqualitySystem":
        return cls(frozenset((a, b) for a, b in pairs))

    def classes(self, num_gaps: int) -> list[tuple[int, ...]]:
        """Partition of gap indices 1..num_gaps, sorted by smallest member."""
        parent = list(range(num_gaps + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.pairs:
            if a > num_gaps or b > num_gaps:
                raise InputError(f"equality pair ({a}, {b}) exceeds gap count {num_gaps}")
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for g in range(1, num_gaps + 1):
            groups.setdefault(find(g), []).append(g)
        return [tuple(groups[r]) for r in sorted(groups)]

    def satisfied_by(self, w: Word, e: Embedding) -> bool:
        return all(len(e.gap(w, a)) == len(e.gap(w, b)) for a, b in self.pairs)


def _reachable_ends(syms: tuple[int, ...], gs: GappedSequence) -> list[list[int]]:
    """Per pattern index j (1-based), the sorted end positions of partial
    matches of the length-j prefix.  Index 0 is unused."""
    n = len(syms)
    p = gs.pattern.symbols
    occ: dict[int, list[int]] = {}
    for i, a in enumerate(syms, start=1):
        occ.setdefault(a, []).append(i)
    out: list[list[int]] = [[], list(occ.get(p[0], []))]
    for j in range(1, len(p)):
        lo, hi = constraint_window(gs.constraints[j - 1], n)
        cur: list[int] = []
        # sweep the union of windows [e+1+lo, e+1+hi] left to right
        frontier = 0
        positions = occ.get(p[j], [])
        pi = 0
        for e in out[j]:
            start = max(e + 1 + lo, frontier)
            end = n if hi > n else e + 1 + hi
            if end < start:
                continue
            while pi < len(positions) and positions[pi] < start:
                pi += 1
            while pi < len(positions) and positions[pi] <= end:
                cur.append(positions[pi])
                pi += 1
            frontier = end + 1
        out.append(cur)
    return out


def _reachable_starts(syms: tuple[int, ...], gs: GappedSequence) -> list[list[int]]:
    """Per pattern index j (1-based), the sorted start positions of partial
    matches of the suffix from j on.  Index 0 is unused."""
    n = len(syms)
    p = gs.pattern.symbols
    k = len(p)
    occ: dict[int, list[int]] = {}
    for i, a in enumerate(syms, start=1):
        occ.setdefault(a, []).append(i)
    out: list[list[int]] = [[] for _ in range(k + 1)]
    out[k] = list(occ.get(p[k - 1], []))
    for j in range(k - 1, 0, -1):
        lo, hi = constraint_window(gs.constraints[j - 1], n)
        cur: list[int] = []
        frontier = n + 1
        positions = occ.get(p[j - 1], [])
        pi = len(positions) - 1
        for s in reversed(out[j + 1]):
            end = min(s - 1 - lo, frontier)
            start = 0 if hi > n else s - 1 - hi
            if end < start:
                continue
            while pi >= 0 and positions[pi] > end:
                pi -= 1
            while pi >= 0 and positions[pi] >= start:
                cur.append(positions[pi])
                pi -= 1
            frontier = start - 1
        cur.reverse()
        out[j] = cur
    return out


_DIFF_SET_CAP = 200_000


def match_with_equalities(
    w: Word, gs: GappedSequence, eq: EqualitySystem
) -> Optional[Embedding]:
    """Embedding where equality-related gaps share a common length.

    The problem is NP-hard, so this backtracks over the total gap length
    of each equality class of size two or more, classes ordered by their
    smallest gap index and lengths tried in increasing order.  Candidate
    lengths for a class start from the intersection of the members'
    windows and are filtered down to lengths realizable at every member
    gap, read off the reachable prefix-end and suffix-start positions
    (a relaxation, so no equality-satisfying embedding is lost).  A
    partial assignment is pruned when the naive matcher already fails on
    it, which is sound because fixing a class only shrinks the embedding
    set.
    """
    for c in gs.constraints:
        if not isinstance(c, (ZeroGap, LengthGap)):
            raise UsageError("equality matching handles zero and length constraints only")
    if len(gs.pattern) == 0:
        return Embedding(())
    gs, infeasible = normalize(gs, len(w))
    if infeasible:
        return None
    n = len(w)
    num_gaps = len(gs.pattern) - 1
    classes = [cl for cl in eq.classes(num_gaps) if len(cl) >= 2]
    windows = [constraint_window(c, n) for c in gs.constraints]
    ends = _reachable_ends(w.symbols, gs)
    if not ends[-1]:
        return None
    starts = _reachable_starts(w.symbols, gs)

    def gap_lengths(g: int) -> Optional[set[int]]:
        lo, hi = windows[g - 1]
        left, right = ends[g], starts[g + 1]
        if len(left) * len(right) > _DIFF_SET_CAP:
            return None
        got = set()
        for e in left:
            for s in right:
                if lo <= s - e - 1 <= hi:
                    got.add(s - e - 1)
        return got

    candidates: list[list[int]] = []
    for cl in classes:
        lo = max(windows[g - 1][0] for g in cl)
        hi = min(windows[g - 1][1] for g in cl)
        if lo > hi:
            return None
        allowed: Optional[set[int]] = None
        for g in cl:
            got = gap_lengths(g)
            if got is not None:
                allowed = got if allowed is None else allowed & got
        if allowed is None:
            candidates.append(list(range(lo, hi + 1)))
        else:
            cand = sorted(x for x in allowed if lo <= x <= hi)
            if not cand:
                return None
            candidates.append(cand)

    def attempt(idx: int, cons: list) -> Optional[Embedding]:
        found = match_naive(w, GappedSequence(gs.pattern, tuple(cons)))
        if found is None:
            return None
        if idx == len(classes):
            return found
        for ell in candidates[idx]:
            nxt = list(cons)
            for g in classes[idx]:
                nxt[g - 1] = LengthGap(ell, ell) if ell else ZeroGap()
            got = attempt(idx + 1, nxt)
            if got is not None:
                return got
        return None

    return attempt(0, list(gs.constraints))
