"""Minimal clusters, the overlap-profile automaton, and the cluster-method series.

A minimal m-cluster of a pattern u is fixed by its mark offsets
1 = i_1 < ... < i_m (consecutive gaps in 1..|u|-1): its letters are the
columnwise maximum of the shifted copies of u. Reading the gaps one at a
time, the only part of the cluster that later copies can still raise is
the window under the newest copy, so that window (the overlap profile) is
a finite state and the minimal cluster generating function is a sum over
paths in a finite automaton.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Sequence

from .polyring import TriPoly, geom_substitute_x, reciprocal, substitute_z_shift
from .words import Word, eta, is_rearrangement, words_up_to_sum

BRUTE_FORCE_MAX_Y_CAP = 22
SIGNATURE_LEVELS = 4


def _pattern(u: Sequence[int]) -> Word:
    u = Word(u)
    if not u:
        raise ValueError("pattern word must be nonempty")
    return u


@dataclass(frozen=True)
class MarkedCluster:
    word: Word
    offsets: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.offsets)

    def to_json(self) -> dict:
        return {"word": list(self.word), "offsets": list(self.offsets), "m": self.m}


def _check_offsets(u: Sequence[int], offsets: Sequence[int]) -> None:
    if not offsets:
        raise ValueError("a cluster needs at least one marked occurrence")
    if offsets[0] != 1:
        raise ValueError(f"first offset must be 1, got {offsets[0]}")
    for prev, cur in zip(offsets, offsets[1:]):
        gap = cur - prev
        if not 1 <= gap <= len(u) - 1:
            raise ValueError(
                f"gap {gap} between offsets {prev} and {cur} is outside 1..{len(u) - 1}"
            )


def minimal_cluster(u: Sequence[int], offsets: Sequence[int]) -> MarkedCluster:
    """The unique minimal cluster of ``u`` with marks at ``offsets``."""
    u = _pattern(u)
    offsets = tuple(offsets)
    _check_offsets(u, offsets)
    k = len(u)
    letters = [0] * (offsets[-1] + k - 1)
    for i in offsets:
        for t in range(k):
            if u[t] > letters[i - 1 + t]:
                letters[i - 1 + t] = u[t]
    return MarkedCluster(Word(letters), offsets)


def _offset_vectors(k: int, m: int):
    for gaps in itertools.product(range(1, k), repeat=m - 1):
        yield tuple(itertools.accumulate((1,) + gaps))


def m_level_enum(u: Sequence[int], m: int, y_cap: int) -> TriPoly:
    """z^m coefficient of M_u by enumerating every offset vector (the oracle)."""
    u = _pattern(u)
    if m < 1:
        raise ValueError("m must be >= 1")
    acc: dict[tuple[int, int, int], int] = defaultdict(int)
    for offsets in _offset_vectors(len(u), m):
        c = minimal_cluster(u, offsets).word
        acc[(len(c), c.total, m)] += 1
    return TriPoly(acc, y_cap)


# ---------------------------------------------------------------------------
# automaton
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Transition:
    target: int
    d: int
    dsum: int

    @property
    def dlength(self) -> int:
        return self.d


@dataclass(frozen=True)
class ClusterAutomaton:
    """Overlap profiles of ``pattern`` and the gap-labelled moves between them.

    ``transitions[s][d - 1]`` is the move from state ``s`` when the next
    marked copy starts ``d`` columns after the current one.
    """

    pattern: Word
    states: tuple[tuple[int, ...], ...]
    transitions: tuple[tuple[Transition, ...], ...]
    initial: int = 0

    @property
    def num_states(self) -> int:
        return len(self.states)

    def to_json(self) -> dict:
        return {
            "pattern": list(self.pattern),
            "initial": self.initial,
            "states": [list(p) for p in self.states],
            "transitions": [
                [{"d": t.d, "target": t.target, "dlength": t.dlength, "dsum": t.dsum} for t in row]
                for row in self.transitions
            ],
        }

    def minimized(self) -> "ClusterAutomaton":
        """Merge states whose futures carry identical gap/weight labels.

        Moore-style partition refinement. Every path keeps its weight, so
        the level series is unchanged; each merged state is represented by
        its first profile.
        """
        n = self.num_states
        block = [0] * n
        count = 1
        while True:
            sigs: dict = {}
            new = [
                sigs.setdefault(
                    (block[s], tuple((block[t.target], t.dsum) for t in self.transitions[s])),
                    len(sigs),
                )
                for s in range(n)
            ]
            if len(sigs) == count:
                break
            block, count = new, len(sigs)
        # renumber blocks in breadth-first order from the initial state
        order = {block[self.initial]: 0}
        reps = [self.initial]
        queue = deque([self.initial])
        while queue:
            s = queue.popleft()
            for t in self.transitions[s]:
                b = block[t.target]
                if b not in order:
                    order[b] = len(reps)
                    reps.append(t.target)
                    queue.append(t.target)
        states = tuple(self.states[s] for s in reps)
        transitions = tuple(
            tuple(Transition(order[block[t.target]], t.d, t.dsum) for t in self.transitions[s])
            for s in reps
        )
        return ClusterAutomaton(self.pattern, states, transitions, 0)

    def canonical_form(self) -> tuple:
        """Isomorphism invariant of the minimized automaton plus the initial weight.

        Equal canonical forms mean every gap sequence yields a cluster of
        the same length and sum for both patterns, so the minimal cluster
        series agree exactly.
        """
        mini = self.minimized()
        rows = tuple(tuple((t.target, t.dsum) for t in row) for row in mini.transitions)
        return (len(self.pattern), self.pattern.total, rows)


def build_automaton(u: Sequence[int]) -> ClusterAutomaton:
    """Discover every reachable overlap profile from the profile ``u``."""
    u = _pattern(u)
    k = len(u)
    start = tuple(u)
    index = {start: 0}
    states = [start]
    transitions = []
    i = 0
    while i < len(states):
        prof = states[i]
        row = []
        for d in range(1, k):
            nxt = tuple(max(prof[t + d] if t + d < k else 0, u[t]) for t in range(k))
            dsum = sum(nxt) - sum(prof[d:])
            if nxt not in index:
                index[nxt] = len(states)
                states.append(nxt)
            row.append(Transition(index[nxt], d, dsum))
        transitions.append(tuple(row))
        i += 1
    return ClusterAutomaton(u, tuple(states), tuple(transitions), 0)


def _level_counts(a: ClusterAutomaton, m_max: int, y_cap: int | None = None) -> list[dict[tuple[int, int], int]]:
    """Levels 1..m_max as {(length, sum): count}, by dynamic programming over states."""
    u = a.pattern
    if m_max < 1:
        return []
    # (length, sum) packed into one int keeps the inner loop on plain dict ops
    shift = 1 << 32
    cap = y_cap if y_cap is not None else -1
    first = len(u) * shift + u.total
    cur: dict[int, dict[int, int]] = {a.initial: {first: 1}} if (cap < 0 or u.total <= cap) else {}
    out = [{(len(u), u.total): 1} if cur else {}]
    for _ in range(2, m_max + 1):
        nxt: dict[int, dict[int, int]] = {}
        for s, poly in cur.items():
            for t in a.transitions[s]:
                off = t.d * shift + t.dsum
                tgt = nxt.get(t.target)
                if tgt is None:
                    tgt = nxt[t.target] = {}
                get = tgt.get
                if cap < 0:
                    for key, c in poly.items():
                        kk = key + off
                        tgt[kk] = get(kk, 0) + c
                else:
                    for key, c in poly.items():
                        kk = key + off
                        if (kk & (shift - 1)) <= cap:
                            tgt[kk] = get(kk, 0) + c
        cur = {s: p for s, p in nxt.items() if p}
        total: dict[int, int] = defaultdict(int)
        for poly in cur.values():
            for key, c in poly.items():
                total[key] += c
        out.append({divmod(key, shift): c for key, c in total.items()})
    return out


def _as_level_poly(counts: dict[tuple[int, int], int], m: int, y_cap: int) -> TriPoly:
    return TriPoly._raw({(a, b, m): c for (a, b), c in counts.items() if b <= y_cap}, y_cap)


def m_level_dp(a: ClusterAutomaton, m: int, y_cap: int) -> TriPoly:
    """z^m coefficient of M_u computed over the automaton."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return _as_level_poly(_level_counts(a, m, y_cap)[m - 1], m, y_cap)


def levels_dp(a: ClusterAutomaton, m_max: int, y_cap: int) -> list[TriPoly]:
    """Levels 1..m_max in one pass."""
    return [_as_level_poly(c, m, y_cap) for m, c in enumerate(_level_counts(a, m_max, y_cap), 1)]


# ---------------------------------------------------------------------------
# strong Wilf equivalence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    m: int
    monomial: tuple[int, int, int]
    coef_u: int
    coef_v: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "monomial": list(self.monomial),
            "coef_u": str(self.coef_u),
            "coef_v": str(self.coef_v),
        }


@dataclass(frozen=True)
class Certificate:
    u: Word
    v: Word
    equivalent: bool
    levels_compared: int
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.equivalent

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "levels_compared": self.levels_compared,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _first_difference(m: int, pu: dict, pv: dict) -> Witness | None:
    keys = [key for key in set(pu) | set(pv) if pu.get(key, 0) != pv.get(key, 0)]
    if not keys:
        return None
    a, b = min(keys, key=lambda ab: (ab[1], ab[0]))
    return Witness(m, (a, b, m), pu.get((a, b), 0), pv.get((a, b), 0))


def decision_bound(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of levels that decides M_u = M_v (sum of minimized state counts)."""
    return build_automaton(u).minimized().num_states + build_automaton(v).minimized().num_states


def strong_wilf_equivalent(u: Sequence[int], v: Sequence[int]) -> Certificate:
    """Decide M_u = M_v exactly.

    Each level sequence is a_m = init * T^(m-1) * 1 for a transfer matrix T
    with monomial entries, so it obeys the monic characteristic recurrence
    of T. The difference of the two sequences obeys the product recurrence,
    of order at most S_u + S_v, so it vanishes identically once its first
    S_u + S_v terms do. Levels are computed untruncated.
    """
    u, v = _pattern(u), _pattern(v)
    au = build_automaton(u).minimized()
    av = build_automaton(v).minimized()
    bound = au.num_states + av.num_states
    if not is_rearrangement(u, v):
        # strong Wilf equivalence forces a rearrangement; a witness is still reported
        lu, lv = _level_counts(au, bound), _level_counts(av, bound)
        for m, (pu, pv) in enumerate(zip(lu, lv), 1):
            w = _first_difference(m, pu, pv)
            if w is not None:
                return Certificate(u, v, False, m, w)
        return Certificate(u, v, False, bound, None)
    lu, lv = _level_counts(au, bound), _level_counts(av, bound)
    for m, (pu, pv) in enumerate(zip(lu, lv), 1):
        if pu != pv:
            return Certificate(u, v, False, m, _first_difference(m, pu, pv))
    return Certificate(u, v, True, bound, None)


def signature(u: Sequence[int], levels: int = SIGNATURE_LEVELS) -> tuple:
    """Cheap necessary condition for strong Wilf equivalence: the first few levels.

    Level m has letter sum at most m*||u||, so truncating at
    levels*||u|| loses nothing.
    """
    u = _pattern(u)
    counts = _level_counts(build_automaton(u), levels, levels * u.total)
    return (tuple(sorted(u)),) + tuple(tuple(sorted(c.items())) for c in counts)


def automaton_key(u: Sequence[int]) -> tuple:
    """Exact equivalence key: equal keys imply strong Wilf equivalence.

    Reversal maps minimal clusters of u bijectively onto those of its
    reverse, so the key is symmetrized over the two.
    """
    u = _pattern(u)
    return min(build_automaton(u).canonical_form(), build_automaton(u[::-1]).canonical_form())


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------


def series_M(u: Sequence[int], y_cap: int, z_cap: int | None = None) -> TriPoly:
    """Minimal cluster series truncated at y_cap and z-degree z_cap (default y_cap)."""
    u = _pattern(u)
    z_cap = y_cap if z_cap is None else z_cap
    terms: dict[tuple[int, int, int], int] = {}
    for m, counts in enumerate(_level_counts(build_automaton(u), z_cap, y_cap), 1):
        for (a, b), c in counts.items():
            terms[(a, b, m)] = c
    return TriPoly._raw(terms, y_cap)


def series_C(u: Sequence[int], y_cap: int, z_cap: int | None = None) -> TriPoly:
    return geom_substitute_x(series_M(u, y_cap, z_cap))


def series_A(u: Sequence[int], y_cap: int, z_cap: int | None = None) -> TriPoly:
    """Words by length, sum and number of embeddings of ``u``: 1/(1 - xy/(1-y) - C(x,y,z-1))."""
    c = series_C(u, y_cap, z_cap)
    letters = geom_substitute_x(TriPoly.monomial(1, 1, 0, y_cap))
    return reciprocal(1 - letters - substitute_z_shift(c, -1))


def brute_force_A(u: Sequence[int], y_cap: int) -> TriPoly:
    """A_u truncated at y_cap by recounting embeddings in every word.

    Visits 2^y_cap words; y_cap = 16 takes seconds, 22 tens of minutes.
    """
    u = _pattern(u)
    if not 0 <= y_cap <= BRUTE_FORCE_MAX_Y_CAP:
        raise ValueError(f"y_cap must be in 0..{BRUTE_FORCE_MAX_Y_CAP}, got {y_cap}")
    acc: dict[tuple[int, int, int], int] = defaultdict(int)
    for w in words_up_to_sum(y_cap):
        acc[(len(w), w.total, eta(u, w))] += 1
    return TriPoly(acc, y_cap)
