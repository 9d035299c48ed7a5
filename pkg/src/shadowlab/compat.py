"""Reconstruction of a solid from its three axis-aligned shadows.

A cell of Z^3 can belong to a solid with prescribed shadows only when each
shadow contains the cell's projection, so intersecting the three
back-projected prisms gives the largest possible candidate. The family of
solids matching the shadows exactly is closed under unions, hence when the
candidate's own shadows reproduce the inputs it is the unique largest such
solid; when they do not, no solid matches at all. Connectivity does not
come for free: three path-shaped shadows can force a disconnected solid,
and `find_disconnection_example` searches for triples showing that.

Bitmaps read as paths under 8-adjacency (a king-move stroke), while cells
of a solid connect under 6-adjacency (a rod slides along one axis at a
time). The asymmetry is deliberate and mirrors how the two objects move.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetError, ValidationError
from .sphere import VoxelSet, shadow_voxels

DEFAULT_SEARCH_BUDGET = 200_000

_PLANES = ((2, 3), (1, 3), (1, 2))


def plane_for_axis(axis: int) -> tuple:
    """The coordinate pair a shadow along `axis` lives in."""
    if axis not in (1, 2, 3):
        raise ValidationError("shadow axis must be 1, 2 or 3")
    return tuple(a for a in (1, 2, 3) if a != axis)


@dataclass(frozen=True)
class ShadowBitmap:
    """A flat 0/1 image standing in for one shadow.

    `cells` holds (a, b) pairs with a < width along the first axis of
    `plane` and b < height along the second.
    """

    width: int
    height: int
    cells: frozenset
    plane: tuple

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValidationError("bitmap dimensions must be positive")
        if tuple(self.plane) not in _PLANES:
            raise ValidationError(f"plane must be one of {_PLANES}")
        object.__setattr__(self, "cells", frozenset(self.cells))
        object.__setattr__(self, "plane", tuple(self.plane))
        for c in self.cells:
            if (
                len(c) != 2
                or not all(isinstance(x, int) for x in c)
                or not (0 <= c[0] < self.width and 0 <= c[1] < self.height)
            ):
                raise ValidationError(f"cell {c} outside {self.width}x{self.height}")

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class CompatResult:
    """Outcome of a largest-compatible-set query.

    `largest` is present exactly when all three booleans are true;
    `component_count` counts 6-adjacency components of the candidate either
    way, so a failed reconstruction still reports its shape.
    """

    largest: Optional[VoxelSet]
    component_count: int
    per_shadow_exact: tuple

    def to_json(self) -> dict:
        return {
            "largest": (
                None
                if self.largest is None
                else [list(c) for c in self.largest.sorted_cells()]
            ),
            "componentCount": self.component_count,
            "perShadowExact": list(self.per_shadow_exact),
        }


def _check_triple(s1: ShadowBitmap, s2: ShadowBitmap, s3: ShadowBitmap) -> None:
    for s, want in zip((s1, s2, s3), _PLANES):
        if s.plane != want:
            raise ValidationError(
                f"shadow for plane {want} got one for plane {s.plane}"
            )
    pairs = (
        ("x1", s2.width, s3.width),
        ("x2", s1.width, s3.height),
        ("x3", s1.height, s2.height),
    )
    bad = [f"{n}: {a} vs {b}" for n, a, b in pairs if a != b]
    if bad:
        raise ValidationError("inconsistent bitmap bounds: " + "; ".join(bad))


def back_project(s1: ShadowBitmap, s2: ShadowBitmap, s3: ShadowBitmap) -> VoxelSet:
    """Largest candidate: cells whose three projections all hit the inputs."""
    _check_triple(s1, s2, s3)
    by_x2: dict = {}
    for a, b in s1.cells:
        by_x2.setdefault(a, set()).add(b)
    by_x1: dict = {}
    for a, b in s2.cells:
        by_x1.setdefault(a, set()).add(b)
    cells = set()
    for x1, x2 in s3.cells:
        rows = by_x1.get(x1)
        if not rows:
            continue
        for x3 in by_x2.get(x2, ()):
            if x3 in rows:
                cells.add((x1, x2, x3))
    return VoxelSet(dim=3, resolution=1, cells=frozenset(cells))


def _components(cells) -> list:
    remaining = set(cells)
    out = []
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        queue = deque([seed])
        while queue:
            c = queue.popleft()
            for i in range(len(c)):
                for dv in (-1, 1):
                    nb = c[:i] + (c[i] + dv,) + c[i + 1 :]
                    if nb in remaining:
                        remaining.discard(nb)
                        comp.add(nb)
                        queue.append(nb)
        out.append(comp)
    return out


def largest_compatible(
    s1: ShadowBitmap, s2: ShadowBitmap, s3: ShadowBitmap
) -> CompatResult:
    """Decide whether any solid matches the three shadows exactly.

    The candidate from `back_project` dominates every matching solid and
    projection is monotone, so the candidate's shadows equal the inputs
    exactly when a match exists, and then the candidate is the union of
    all matches.
    """
    candidate = back_project(s1, s2, s3)
    exact = tuple(
        set(shadow_voxels(candidate, axis).cells) == set(s.cells)
        for axis, s in ((1, s1), (2, s2), (3, s3))
    )
    return CompatResult(
        largest=candidate if all(exact) else None,
        component_count=len(_components(candidate.cells)),
        per_shadow_exact=exact,
    )


def reachable(v: VoxelSet, a: tuple, b: tuple) -> bool:
    """True when b can be reached from a by unit axis steps inside v."""
    a, b = tuple(a), tuple(b)
    for p in (a, b):
        if p not in v.cells:
            raise ValidationError(f"cell {p} not in the voxel set")
    if a == b:
        return True
    seen = {a}
    queue = deque([a])
    while queue:
        c = queue.popleft()
        for i in range(v.dim):
            for dv in (-1, 1):
                nb = c[:i] + (c[i] + dv,) + c[i + 1 :]
                if nb == b:
                    return True
                if nb in v.cells and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
    return False


# - path bitmaps ----------------------------------------------------------------


def _king_neighbours(c) -> list:
    x, y = c
    return [
        (x + dx, y + dy)
        for dx in (-1, 0, 1)
        for dy in (-1, 0, 1)
        if dx or dy
    ]


def is_path_bitmap(cells) -> bool:
    """Whether the cells form one stroke: an ordering by king moves.

    Single cells and empty sets do not count; a path must have somewhere
    to go. The check is a depth-first search for a Hamiltonian ordering
    with a connectivity prune, which is fast at the sizes searched here.
    """
    cells = frozenset(cells)
    n = len(cells)
    if n < 2:
        return False

    def connected(sub: frozenset) -> bool:
        it = iter(sub)
        start = next(it)
        seen = {start}
        queue = deque([start])
        while queue:
            for nb in _king_neighbours(queue.popleft()):
                if nb in sub and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return len(seen) == len(sub)

    if not connected(cells):
        return False

    def extend(cur, remaining: frozenset) -> bool:
        if not remaining:
            return True
        if not connected(remaining):
            return False
        for nb in _king_neighbours(cur):
            if nb in remaining and extend(nb, remaining - {nb}):
                return True
        return False

    return any(extend(c, cells - {c}) for c in cells)


def _all_path_bitmaps(n: int, plane: tuple) -> list:
    # Every path subset of the n x n grid, by brute force. Only used for
    # tiny n, where subsets are few.
    grid = [(x, y) for x in range(n) for y in range(n)]
    out = []
    for mask in range(1, 1 << len(grid)):
        cells = frozenset(g for i, g in enumerate(grid) if mask >> i & 1)
        if is_path_bitmap(cells):
            out.append(ShadowBitmap(n, n, cells, plane))
    return out


def _random_path_bitmap(rng: random.Random, n: int, plane: tuple) -> ShadowBitmap:
    target = rng.randrange(2, n * n + 1)
    cur = (rng.randrange(n), rng.randrange(n))
    seen = {cur}
    while len(seen) < target:
        steps = [
            p
            for p in _king_neighbours(cur)
            if 0 <= p[0] < n and 0 <= p[1] < n and p not in seen
        ]
        if not steps:
            break
        cur = steps[rng.randrange(len(steps))]
        seen.add(cur)
    return ShadowBitmap(n, n, frozenset(seen), plane)


def find_disconnection_example(
    bounds: int, budget: Optional[int] = None, seed: int = 0
) -> Optional[tuple]:
    """Hunt for three path bitmaps whose largest compatible set splits.

    Returns the first triple (s1, s2, s3) of path-shaped bitmaps within
    the square bounds whose largest compatible set exists and has at least
    two components, or None when the search budget runs out. Triples
    within 2x2 are enumerated exhaustively first, so the outcome at small
    bounds is a certainty, not a sample; beyond that the search draws
    seeded random king walks. Exceeding the hard budget cap raises.
    """
    if not isinstance(bounds, int) or bounds < 1:
        raise ValidationError("bounds must be a positive integer")
    cap = DEFAULT_SEARCH_BUDGET if budget is None else budget
    spent = 0

    def check(triple) -> bool:
        res = largest_compatible(*triple)
        return res.largest is not None and res.component_count >= 2

    small = min(bounds, 2)
    pools = [_all_path_bitmaps(small, p) for p in _PLANES]
    for s1 in pools[0]:
        for s2 in pools[1]:
            for s3 in pools[2]:
                spent += 1
                if spent > cap:
                    raise BudgetError(f"triple budget exhausted (cap {cap})")
                if check((s1, s2, s3)):
                    return (s1, s2, s3)
    if bounds <= 2:
        return None
    for t in range(cap - spent):
        rng = random.Random(f"{seed}:triple{t}")
        triple = tuple(
            _random_path_bitmap(rng, bounds, p) for p in _PLANES
        )
        if all(is_path_bitmap(s.cells) for s in triple) and check(triple):
            return triple
    return None


# - bitmap files ------------------------------------------------------------------


def format_bitmap(b: ShadowBitmap) -> str:
    """Render as the text format: "W H" then H rows of 0/1 characters.

    Row y of the body holds the cells with second coordinate y.
    """
    rows = [f"{b.width} {b.height}"]
    for y in range(b.height):
        rows.append(
            "".join("1" if (x, y) in b.cells else "0" for x in range(b.width))
        )
    return "\n".join(rows) + "\n"


def parse_bitmap(text: str, plane: tuple) -> ShadowBitmap:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("empty bitmap file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValidationError("bitmap header must be two integers: width height")
    try:
        w, h = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ValidationError(f"bad bitmap header: {lines[0]!r}") from exc
    if len(lines) - 1 != h:
        raise ValidationError(f"expected {h} bitmap rows, got {len(lines) - 1}")
    cells = set()
    for y, row in enumerate(lines[1:]):
        if len(row) != w:
            raise ValidationError(f"row {y} has {len(row)} characters, want {w}")
        for x, ch in enumerate(row):
            if ch == "1":
                cells.add((x, y))
            elif ch != "0":
                raise ValidationError(f"bad bitmap character {ch!r} in row {y}")
    return ShadowBitmap(w, h, frozenset(cells), plane)


def load_bitmap(path, plane: tuple) -> ShadowBitmap:
    with open(path, "r", encoding="ascii") as fh:
        return parse_bitmap(fh.read(), plane)


def save_bitmap(b: ShadowBitmap, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_bitmap(b))
