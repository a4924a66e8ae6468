"""Shaded planar tangles as combinatorial data.

A tangle is an external disc, an ordered list of internal discs, and a
perfect matching ("strings") on the marked boundary points, plus a count
of free closed loops.  A disc of colour ``k`` carries ``2k`` points,
numbered clockwise starting immediately after the starred boundary
interval; the starred interval is white and interval colours alternate,
so ``[1,2], [3,4], ...`` are the black intervals.  Colour-0 discs carry
a shading flag telling whether the adjacent region is white (``0+``) or
black (``0-``).

In box form a colour-``k`` disc reads: points ``1..k`` along the top
left to right, ``k+1..2k`` along the bottom right to left, star at the
top left corner.

Composition glues a tangle into an internal disc and splices strings;
`loops_black` / `loops_white` count the closed loops left after capping
every black (resp. white) boundary interval, which is what the scalar
weight of a tangle is made of.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from planarbox.scalars import RadicalScalar, pow_half


class TangleError(ValueError):
    """Structurally impossible request: bad colours, slots, or gluing."""


class Disc(NamedTuple):
    """Colour of a disc; ``shaded`` is only meaningful for colour 0."""

    colour: int
    shaded: bool = False

    def label(self) -> str:
        if self.colour == 0:
            return "0-" if self.shaded else "0+"
        return str(self.colour)


Point = tuple[int, int]  # (disc index, point number); disc 0 is external
Pair = tuple[Point, Point]


def _pair(a: Point, b: Point) -> Pair:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Tangle:
    external: Disc
    internal: tuple[Disc, ...]
    strings: frozenset[Pair]
    closed_loops: int = 0

    def disc(self, index: int) -> Disc:
        return self.external if index == 0 else self.internal[index - 1]

    def points(self) -> list[Point]:
        out = [(0, p) for p in range(1, 2 * self.external.colour + 1)]
        for i, d in enumerate(self.internal, start=1):
            out.extend((i, p) for p in range(1, 2 * d.colour + 1))
        return out

    def __repr__(self) -> str:  # compact, deterministic
        discs = ",".join(d.label() for d in self.internal)
        return (
            f"Tangle({self.external.label()};[{discs}];"
            f"{len(self.strings)} strings;{self.closed_loops} loops)"
        )


def _check_disc(d: Disc) -> None:
    if d.colour < 0:
        raise TangleError(f"negative colour {d.colour}")
    if d.shaded and d.colour != 0:
        raise TangleError("shading flag only applies to colour-0 discs")


def tangle(
    external: Disc,
    internal: Iterable[Disc] = (),
    strings: Iterable[tuple[Point, Point]] = (),
    closed_loops: int = 0,
) -> Tangle:
    """Normalizing constructor; checks disc sanity but not planarity."""
    _check_disc(external)
    internal = tuple(internal)
    for d in internal:
        _check_disc(d)
    if closed_loops < 0:
        raise TangleError("negative closed-loop count")
    return Tangle(external, internal, frozenset(_pair(a, b) for a, b in strings), closed_loops)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

GENERATOR_KINDS = ("id", "M", "I", "E", "Eprime", "jones", "unit")


def make_generator(kind: str, k: int = 0, shaded: bool = False) -> Tangle:
    """Concrete diagram of a generating tangle.

    ``k`` is the defining colour: for ``I`` (inclusion) and ``E`` (right
    expectation) it is the smaller of the two colours involved.  The
    ``shaded`` flag picks the region colour where a colour-0 disc is
    involved; it is rejected where the diagram forces the shading.
    """
    if kind == "unit":
        if k != 0:
            raise TangleError("unit tangles have colour 0")
        return tangle(Disc(0, shaded))
    if kind == "id":
        d = Disc(k, shaded if k == 0 else False)
        if shaded and k != 0:
            raise TangleError("shading flag needs colour 0")
        return tangle(d, [d], [((0, j), (1, j)) for j in range(1, 2 * k + 1)])
    if kind == "M":
        if shaded and k != 0:
            raise TangleError("shading flag needs colour 0")
        d = Disc(k, shaded if k == 0 else False)
        strings: list[tuple[Point, Point]] = []
        for j in range(1, k + 1):
            strings.append(((0, j), (1, j)))
            strings.append(((1, k + j), (2, k + 1 - j)))
            strings.append(((2, k + j), (0, k + j)))
        return tangle(d, [d, d], strings)
    if kind == "I":
        # one internal colour-k disc, external colour k+1, extra strand
        # running down the right side
        if shaded and k != 0:
            raise TangleError("shading flag needs colour 0")
        inner = Disc(k, shaded if k == 0 else False)
        strings = [((0, j), (1, j)) for j in range(1, k + 1)]
        strings.append(((0, k + 1), (0, k + 2)))
        strings.extend(((1, k + j), (0, k + 2 + j)) for j in range(1, k + 1))
        return tangle(Disc(k + 1), [inner], strings)
    if kind == "E":
        # one internal colour-(k+1) disc whose rightmost point pair is
        # joined, external colour k
        if shaded:
            raise TangleError("the capped-disc expectation forces white shading at colour 0")
        inner = Disc(k + 1)
        strings = [((0, j), (1, j)) for j in range(1, k + 1)]
        strings.append(((1, k + 1), (1, k + 2)))
        strings.extend(((1, k + 2 + j), (0, k + j)) for j in range(1, k + 1))
        return tangle(Disc(k), [inner], strings)
    if kind == "Eprime":
        # left-side variant: strand down the left, leftmost point pair
        # of the internal disc joined around the left
        if k < 1:
            raise TangleError("left expectation needs colour >= 1")
        inner = Disc(k)
        strings = [((0, 1), (0, 2 * k)), ((1, 1), (1, 2 * k))]
        strings.extend(((0, j), (1, j)) for j in range(2, 2 * k))
        return tangle(Disc(k), [inner], strings)
    if kind == "jones":
        if k < 2:
            raise TangleError("the cup-cap tangle needs colour >= 2")
        strings = [((0, i), (0, 2 * k + 1 - i)) for i in range(1, k - 1)]
        strings.append(((0, k - 1), (0, k)))
        strings.append(((0, k + 1), (0, k + 2)))
        return tangle(Disc(k), [], strings)
    raise TangleError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# composition and renumbering
# ---------------------------------------------------------------------------

def compose(outer: Tangle, slot: int, inner: Tangle) -> Tangle:
    """Glue ``inner`` into internal disc ``slot`` of ``outer``.

    Strings are spliced through the glued boundary; spliced cycles that
    touch no remaining disc become free loops.
    """
    if not 1 <= slot <= len(outer.internal):
        raise TangleError(f"slot {slot} out of range 1..{len(outer.internal)}")
    target = outer.internal[slot - 1]
    if target != inner.external:
        raise TangleError(
            f"colour mismatch at slot {slot}: disc is {target.label()}, "
            f"tangle is {inner.external.label()}"
        )
    b_in = len(inner.internal)

    # tagged node namespace: outer endpoints, inner endpoints, interface
    def tag_outer(pt: Point):
        d, p = pt
        return ("x", p) if d == slot else ("o", d, p)

    def tag_inner(pt: Point):
        d, p = pt
        return ("x", p) if d == 0 else ("i", d, p)

    edges: list[tuple] = []
    for a, b in outer.strings:
        edges.append((tag_outer(a), tag_outer(b)))
    for a, b in inner.strings:
        edges.append((tag_inner(a), tag_inner(b)))

    incident: dict[tuple, list[int]] = {}
    for idx, (a, b) in enumerate(edges):
        incident.setdefault(a, []).append(idx)
        incident.setdefault(b, []).append(idx)

    def final(node) -> Point:
        if node[0] == "o":
            _, d, p = node
            return (d if d < slot else d + b_in - 1, p)
        _, d, p = node
        return (slot - 1 + d, p)

    used = [False] * len(edges)
    new_strings: list[tuple[Point, Point]] = []
    # walk chains starting from every non-interface endpoint
    for start in incident:
        if start[0] == "x":
            continue
        for eid in incident[start]:
            if used[eid]:
                continue
            used[eid] = True
            a, b = edges[eid]
            node = b if a == start else a
            while node[0] == "x":
                nxt = [e for e in incident[node] if not used[e]]
                # interface points have exactly two incident edges
                eid = nxt[0]
                used[eid] = True
                a, b = edges[eid]
                node = b if a == node else a
            new_strings.append((final(start), final(node)))
    new_loops = 0
    for eid, done in enumerate(used):
        if done:
            continue
        # leftover pure-interface cycle
        used[eid] = True
        a, b = edges[eid]
        node = b
        while True:
            nxt = [e for e in incident[node] if not used[e]]
            if not nxt:
                break
            used[nxt[0]] = True
            a2, b2 = edges[nxt[0]]
            node = b2 if a2 == node else a2
        new_loops += 1

    internal = outer.internal[: slot - 1] + inner.internal + outer.internal[slot:]
    return tangle(
        outer.external,
        internal,
        new_strings,
        outer.closed_loops + inner.closed_loops + new_loops,
    )


def renumber(t: Tangle, sigma: Sequence[int]) -> Tangle:
    """Relabel internal discs so that disc ``sigma[i-1]`` of the result
    is disc ``i`` of ``t``.  The diagram itself is unchanged."""
    b = len(t.internal)
    if sorted(sigma) != list(range(1, b + 1)):
        raise TangleError(f"not a permutation of 1..{b}: {list(sigma)}")
    internal = [Disc(0)] * b
    for i, img in enumerate(sigma, start=1):
        internal[img - 1] = t.internal[i - 1]

    def move(pt: Point) -> Point:
        d, p = pt
        return (d, p) if d == 0 else (sigma[d - 1], p)

    return tangle(
        t.external,
        internal,
        [(move(a), move(b)) for a, b in t.strings],
        t.closed_loops,
    )


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Diagnostics:
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems

    def __repr__(self) -> str:
        return "ok" if self.ok else "; ".join(self.problems)


def _rotation_next(t: Tangle, d: int, p: int) -> int:
    """Successor of point ``p`` around disc ``d`` as seen from the
    string region: clockwise for internal discs, reversed for the
    external one."""
    n = 2 * t.disc(d).colour
    if d == 0:
        return p - 1 if p > 1 else n
    return p + 1 if p < n else 1


def _interval_is_black(d: int, p: int) -> bool:
    """Colour of the boundary interval crossed when a face arrives at
    point ``p`` of disc ``d`` and moves to its rotation successor."""
    # internal discs: interval (p, p+1), black iff p odd;
    # external disc: interval (p-1, p), black iff p even
    return p % 2 == 1 if d != 0 else p % 2 == 0


def validate(t: Tangle) -> Diagnostics:
    """Perfect-matching, genus-0, and shading diagnostics."""
    problems: list[str] = []
    try:
        _check_disc(t.external)
        for d in t.internal:
            _check_disc(d)
    except TangleError as exc:
        return Diagnostics((str(exc),))
    if t.closed_loops < 0:
        problems.append("negative closed-loop count")

    points = t.points()
    point_set = set(points)
    seen: dict[Point, int] = {pt: 0 for pt in points}
    other: dict[Point, Point] = {}
    for a, b in t.strings:
        for pt in (a, b):
            if pt not in point_set:
                problems.append(f"string endpoint {pt} is not a marked point")
            else:
                seen[pt] += 1
        if a == b:
            problems.append(f"string with coincident endpoints {a}")
        other[a] = b
        other[b] = a
    uncovered = [pt for pt, n in seen.items() if n != 1]
    for pt in uncovered:
        problems.append(
            f"point {pt} lies on {seen[pt]} strings (perfect matching needs exactly 1)"
        )
    if problems:
        return Diagnostics(tuple(problems))

    # connected components of the disc/string graph
    n_discs = len(t.internal) + 1
    parent = list(range(n_discs))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in t.strings:
        ra, rb = find(a[0]), find(b[0])
        if ra != rb:
            parent[ra] = rb

    # face tracing: darts are ordered endpoint pairs of strings
    visited: set[tuple[Point, Point]] = set()
    faces_per_component: dict[int, int] = {}
    for s in t.strings:
        for dart in (s, (s[1], s[0])):
            if dart in visited:
                continue
            component = find(dart[0][0])
            shades: set[bool] = set()
            cur = dart
            while cur not in visited:
                visited.add(cur)
                d, p = cur[1]
                q = _rotation_next(t, d, p)
                shades.add(_interval_is_black(d, p))
                cur = ((d, q), other[(d, q)])
            faces_per_component[component] = faces_per_component.get(component, 0) + 1
            if len(shades) > 1:
                problems.append(
                    f"face through {dart[0]} touches both black and white intervals"
                )

    counts: dict[int, list[int]] = {}
    for d in range(n_discs):
        counts.setdefault(find(d), [0, 0])[0] += 1
    for a, b in t.strings:
        counts[find(a[0])][1] += 1
    for root, (v, e) in counts.items():
        f = faces_per_component.get(root, 1 if e == 0 else 0)
        if v - e + f != 2:
            problems.append(
                f"component at disc {root} has Euler characteristic {v - e + f}, "
                "not 2 (strings cannot be drawn without crossings)"
            )
    return Diagnostics(tuple(problems))


# ---------------------------------------------------------------------------
# loop counts and the capping scalar
# ---------------------------------------------------------------------------

def _cap_edges(t: Tangle, black: bool) -> list[tuple[Point, Point]]:
    edges: list[tuple[Point, Point]] = []
    for d in range(len(t.internal) + 1):
        k = t.disc(d).colour
        if black:
            edges.extend(((d, 2 * i - 1), (d, 2 * i)) for i in range(1, k + 1))
        else:
            edges.extend(((d, 2 * i), (d, 2 * i + 1)) for i in range(1, k))
            if k:
                edges.append(((d, 2 * k), (d, 1)))
    return edges


def _count_cycles(t: Tangle, cap_black: bool) -> int:
    """Cycles of the strings together with one cap per boundary interval
    of the chosen colour; every point gets degree exactly 2."""
    index = {pt: i for i, pt in enumerate(t.points())}
    parent = list(range(len(index)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: Point, b: Point) -> None:
        ra, rb = find(index[a]), find(index[b])
        if ra != rb:
            parent[ra] = rb

    for a, b in t.strings:
        union(a, b)
    for a, b in _cap_edges(t, cap_black):
        union(a, b)
    return len({find(i) for i in range(len(index))}) + t.closed_loops


def loops_black(t: Tangle) -> int:
    """Closed loops after capping black intervals everywhere (free loops
    included)."""
    return _count_cycles(t, cap_black=True)


def loops_white(t: Tangle) -> int:
    """Mirror count: white intervals capped instead."""
    return _count_cycles(t, cap_black=False)


def _half_colour_sum(t: Tangle) -> int:
    return (t.external.colour + 1) // 2 + sum(d.colour // 2 for d in t.internal)


def capping_exponent(t: Tangle) -> int:
    """The integer ``c`` with scalar weight ``ratio ** (c/2)``."""
    return _half_colour_sum(t) - loops_black(t)


def capping_exponent_white(t: Tangle) -> int:
    return _half_colour_sum(t) - loops_white(t)


def alpha(t: Tangle, ratio: int) -> RadicalScalar:
    """``ratio ** (c/2)`` for the black capping count, exactly."""
    return pow_half(ratio, capping_exponent(t))


def alpha_tilde(t: Tangle, ratio: int) -> RadicalScalar:
    """White-capping companion of :func:`alpha`."""
    return pow_half(ratio, capping_exponent_white(t))


def shift_point_labels(t: Tangle) -> Tangle:
    """Rotate every point label down by one (1 -> 2k).  Exchanges the
    roles of black and white intervals; used to cross-check the two loop
    counts against each other."""

    def move(pt: Point) -> Point:
        d, p = pt
        n = 2 * t.disc(d).colour
        return (d, p - 1 if p > 1 else n)

    return tangle(
        t.external,
        t.internal,
        [(move(a), move(b)) for a, b in t.strings],
        t.closed_loops,
    )
