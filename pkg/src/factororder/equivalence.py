"""Partition word families by shift equivalence or strong Wilf equivalence."""

from __future__ import annotations

import csv
import io
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from .clusters import Certificate, automaton_key, signature, strong_wilf_equivalent
from .skyline import shift_class
from .words import Word, generate_permutations

MAX_SEQUENCE_N = 7


class Relation(str, Enum):
    SHIFT = "shift"
    STRONG_WILF = "strong_wilf"


class UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller word becomes the root so roots are class minima
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[list]:
        out = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return sorted((sorted(g) for g in out.values()), key=lambda g: g[0])


@dataclass
class EquivalenceReport:
    relation: Relation
    universe: str
    classes: list[list[Word]]
    # strong-Wilf merges proved by level comparison rather than by automaton keys
    certificates: list[Certificate] = field(default_factory=list, repr=False)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def class_of(self) -> dict[Word, int]:
        return {w: i for i, cls in enumerate(self.classes) for w in cls}

    def to_json(self) -> dict:
        return {
            "relation": self.relation.value,
            "universe": self.universe,
            "class_count": self.class_count,
            "classes": [[list(w) for w in cls] for cls in self.classes],
        }

    def to_csv(self, compact: bool = False) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["representative", "size", "members"])
        for cls in self.classes:
            writer.writerow(
                [cls[0].format(compact), len(cls), " ".join(w.format(compact) for w in cls)]
            )
        return buf.getvalue()


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 64:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (jobs * 8))))


def default_jobs() -> int:
    return os.cpu_count() or 1


def _shift_partition(words: list[Word], jobs: int) -> list[list[Word]]:
    present = set(words)
    uf = UnionFind(words)
    done: set[Word] = set()
    todo = []
    for w in words:
        if w in done:
            continue
        # one closure per class; members found here need no closure of their own
        cls = shift_class(w)
        done.update(cls.members)
        todo.append(cls)
    for cls in todo:
        inside = [m for m in cls.members if m in present]
        for m in inside[1:]:
            uf.union(inside[0], m)
    return uf.groups()


def _swe_keys(w: Word) -> tuple:
    return automaton_key(w), signature(w)


def _strong_wilf_partition(words: list[Word], jobs: int) -> tuple[list[list[Word]], list[Certificate]]:
    """Group by exact automaton keys, then confirm merges across keys exactly.

    Equal automaton keys already prove equivalence. Key groups that share a
    level signature are compared by the full decision procedure.
    """
    keys = _map(_swe_keys, words, jobs)
    uf = UnionFind(words)
    by_key: dict[tuple, list[Word]] = defaultdict(list)
    for w, (key, _) in zip(words, keys):
        by_key[key].append(w)
    sig_of_key = {}
    for w, (key, sig) in zip(words, keys):
        sig_of_key.setdefault(key, sig)
    for group in by_key.values():
        for w in group[1:]:
            uf.union(group[0], w)
    # candidate classes: key groups with equal signatures
    candidates: dict[tuple, list[Word]] = defaultdict(list)
    for key, group in by_key.items():
        candidates[sig_of_key[key]].append(min(group))
    certificates = []
    for reps in candidates.values():
        reps.sort()
        pending = list(reps)
        while pending:
            head, rest = pending[0], pending[1:]
            pending = []
            for r in rest:
                cert = strong_wilf_equivalent(head, r)
                if cert.equivalent:
                    uf.union(head, r)
                    certificates.append(cert)
                else:
                    pending.append(r)
    return uf.groups(), certificates


def partition(
    universe: Iterable[Sequence[int]],
    relation: Relation | str,
    jobs: int = 1,
    label: str = "",
) -> EquivalenceReport:
    relation = Relation(relation)
    words = sorted({Word(w) for w in universe})
    if not words:
        raise ValueError("universe must be nonempty")
    if relation is Relation.SHIFT:
        classes, certs = _shift_partition(words, jobs), []
    else:
        classes, certs = _strong_wilf_partition(words, jobs)
    return EquivalenceReport(relation, label or f"{len(words)} words", classes, certs)


def class_count_sequence(relation: Relation | str, n_max: int, jobs: int = 1) -> list[int]:
    """Number of classes among permutations of 1..n, for n = 1..n_max."""
    if not 1 <= n_max <= MAX_SEQUENCE_N:
        raise ValueError(f"n_max must be in 1..{MAX_SEQUENCE_N}, got {n_max}")
    return [
        partition(generate_permutations(n), relation, jobs).class_count
        for n in range(1, n_max + 1)
    ]


@dataclass
class SplitClass:
    """A strong-Wilf class that is a union of several shift classes."""

    members: list[Word]
    shift_classes: list[list[Word]]
    pairs: list[tuple[Word, Word]]

    def to_json(self) -> dict:
        return {
            "members": [list(w) for w in self.members],
            "shift_classes": [[list(w) for w in c] for c in self.shift_classes],
            "pairs": [[list(a), list(b)] for a, b in self.pairs],
        }


@dataclass
class SplitPair:
    u: Word
    v: Word
    swe: Certificate
    shift_u: Word
    shift_v: Word

    def to_json(self) -> dict:
        return {
            "u": list(self.u),
            "v": list(self.v),
            "strong_wilf": self.swe.to_json(),
            "shift": {
                "equivalent": False,
                "representative_u": list(self.shift_u),
                "representative_v": list(self.shift_v),
            },
        }


def split_classes(universe: Iterable[Sequence[int]], jobs: int = 1) -> list[SplitClass]:
    words = sorted({Word(w) for w in universe})
    swe = partition(words, Relation.STRONG_WILF, jobs)
    shift = partition(words, Relation.SHIFT, jobs)
    shift_index = shift.class_of()
    out = []
    for cls in swe.classes:
        ids = sorted({shift_index[w] for w in cls})
        if len(ids) < 2:
            continue
        parts = [shift.classes[i] for i in ids]
        pairs = sorted(
            (min(a, b), max(a, b))
            for i, p in enumerate(parts)
            for q in parts[i + 1 :]
            for a in p
            for b in q
        )
        out.append(SplitClass(cls, parts, pairs))
    return out


def find_swe_not_shift(universe: Iterable[Sequence[int]], jobs: int = 1) -> list[SplitPair]:
    """Every unordered pair that is strongly Wilf but not shift equivalent."""
    out = []
    for split in split_classes(universe, jobs):
        rep = {w: c[0] for c in split.shift_classes for w in c}
        for a, b in split.pairs:
            out.append(SplitPair(a, b, strong_wilf_equivalent(a, b), rep[a], rep[b]))
    return sorted(out, key=lambda p: (p.u, p.v))
