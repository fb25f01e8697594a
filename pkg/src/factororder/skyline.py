"""Skyline diagrams: rigid shifts, shift-equivalence closure, rendering."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .words import Word

# SVG cosmetics
SVG_UNIT = 20
SVG_STROKE = "#4a5a7a"
SVG_FILL = "#e6e9ef"
SVG_STROKE_WIDTH = 1


class InvalidShiftError(ValueError):
    def __init__(self, column: int, message: str):
        self.column = column
        super().__init__(message)


@dataclass(frozen=True, order=True)
class RigidShift:
    """Cut at height ``h`` and slide everything above it by ``k`` columns."""

    h: int
    k: int

    def __post_init__(self):
        if self.h < 1:
            raise ValueError(f"cut height must be >= 1, got {self.h}")
        if self.k == 0:
            raise ValueError("shift offset must be nonzero")

    def inverse(self) -> "RigidShift":
        return RigidShift(self.h, -self.k)

    def to_json(self) -> dict:
        return {"h": self.h, "k": self.k}


def _letter(u: Sequence[int], n: int) -> int:
    # 1-based, zero outside the word
    return u[n - 1] if 1 <= n <= len(u) else 0


def _first_violation(u: Sequence[int], s: RigidShift) -> int | None:
    """Column n that receives excess it cannot hold, or None."""
    h, k = s.h, s.k
    for src in range(1, len(u) + 1):
        if u[src - 1] > h:
            n = src + k
            if not 1 <= n <= len(u) or u[n - 1] < h:
                return n
    return None


def is_valid_shift(u: Sequence[int], s: RigidShift) -> bool:
    """Every moved column must land inside the word on a column of height >= h."""
    return _first_violation(u, s) is None


def apply_shift(u: Sequence[int], s: RigidShift) -> Word:
    n = _first_violation(u, s)
    if n is not None:
        src = n - s.k
        raise InvalidShiftError(
            n,
            f"shift (h={s.h}, k={s.k}) invalid at column {n}: excess from "
            f"column {src} has no column of height >= {s.h} to rest on",
        )
    h, k = s.h, s.k
    return Word(
        min(h, u[n - 1]) + max(0, _letter(u, n - k) - h) for n in range(1, len(u) + 1)
    )


def enumerate_shifts(u: Sequence[int]) -> list[tuple[RigidShift, Word]]:
    """All non-identity valid rigid shifts of ``u``, ordered by (h, k)."""
    if not u:
        return []
    out = []
    length = len(u)
    for h in range(1, max(u)):
        for k in range(-(length - 1), length):
            if k == 0:
                continue
            s = RigidShift(h, k)
            if not is_valid_shift(u, s):
                continue
            v = apply_shift(u, s)
            if v != tuple(u):
                out.append((s, v))
    return out


def reverse(u: Sequence[int]) -> Word:
    return Word(tuple(u)[::-1])


@dataclass(frozen=True)
class ShiftClass:
    representative: Word
    members: tuple[Word, ...]

    def __contains__(self, w) -> bool:
        return Word(w) in self._member_set

    @property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "representative": list(self.representative),
            "members": [list(w) for w in self.members],
        }


def shift_class(u: Sequence[int]) -> ShiftClass:
    """Closure of ``u`` under reversal and rigid shifts (breadth first)."""
    start = Word(u)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        neighbours = [reverse(w)] + [v for _, v in enumerate_shifts(w)]
        for v in neighbours:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    members = tuple(sorted(seen))
    return ShiftClass(members[0], members)


def render(u: Sequence[int], format: str = "ascii") -> str:
    if format == "ascii":
        return _render_ascii(u)
    if format == "svg":
        return _render_svg(u)
    raise ValueError(f"unsupported render format {format!r} (use 'ascii' or 'svg')")


def _render_ascii(u: Sequence[int]) -> str:
    if not u:
        return ""
    width = max(len(str(a)) for a in u)
    rows = []
    for level in range(max(u), 0, -1):
        rows.append("".join(("#" if a >= level else ".") * width for a in u))
    rows.append("".join(str(a).rjust(width, ".") for a in u))
    return "\n".join(rows)


def _render_svg(u: Sequence[int]) -> str:
    unit = SVG_UNIT
    width = len(u)
    height = max(u, default=0)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width * unit}" '
        f'height="{height * unit}" viewBox="0 0 {width * unit} {height * unit}">',
        f'<g fill="{SVG_FILL}" stroke="{SVG_STROKE}" stroke-width="{SVG_STROKE_WIDTH}">',
    ]
    for col, a in enumerate(u):
        for level in range(a):
            x = col * unit
            y = (height - level - 1) * unit
            parts.append(f'<rect x="{x}" y="{y}" width="{unit}" height="{unit}"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
