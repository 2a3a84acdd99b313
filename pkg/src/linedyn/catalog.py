"""Named example systems used across tests, docs, and the CLI.

Everything here is a plain builder over the core types; nothing is cached or
stateful.  The multivalued builders go through MultiMap.from_rule so window
truncation is recorded honestly.
"""

from __future__ import annotations

from .complexes import SimplicialComplex
from .line import MIRROR, LineWindow, Shift, build_line_window
from .multimaps import MultiMap
from .posets import Poset
from .singlemaps import SelfMap


def identity_selfmap(window: LineWindow) -> SelfMap:
    return SelfMap(window, {i: i for i in window.indices})


def identity_multimap(window: LineWindow) -> MultiMap:
    return MultiMap.from_rule(window, lambda i: (i,))


def mirror_selfmap(n: int) -> SelfMap:
    """x_i -> x_{-i} on the symmetric window [-n, n], mirroring outside too."""
    window = build_line_window(-n, n, left_tail=MIRROR, right_tail=MIRROR)
    return SelfMap(window, {i: -i for i in window.indices})


def shift_selfmap(window: LineWindow, offset: int) -> SelfMap:
    """Translation by an even offset, continued by matching shift tails."""
    shifted = window.with_tails(Shift(offset), Shift(offset))
    return SelfMap(shifted, {i: i + offset for i in shifted.indices})


def folded_mirror_selfmap(n: int = 3) -> SelfMap:
    """Mirror on [-1, 1], collapsing the rest of [-n, n] onto it.

    Outside the middle, maxima go to x_0 and minima to the near swapped
    minimum, which keeps the map continuous while the only two-cycle left is
    {x_-1, x_1}.
    """
    if n < 2:
        raise ValueError("needs a window strictly larger than [-1, 1]")

    def fold(i: int) -> int:
        if abs(i) <= 1:
            return -i
        if i % 2 == 0:
            return 0
        return -1 if i < 0 else 1

    window = build_line_window(-n, n)
    return SelfMap(window, {i: fold(i) for i in window.indices})


def constant_interval_map(window: LineWindow, a: int = 1, b: int = 3) -> MultiMap:
    """Every point goes to the fixed interval [x_a, x_b].

    On [1, 3] this is the three-point band whose period spectrum is exactly
    {1, 2, 3}: richer than any single-valued map yet capped at the band size.
    """
    lo, hi = min(a, b), max(a, b)
    return MultiMap.from_rule(window, lambda i: range(lo, hi + 1))


def expanding_interval_map(hi: int = 12) -> MultiMap:
    """Reach-growing map on [0, hi]: each step may fall back to the bottom or
    climb one rung, so every cycle length up to the window size occurs."""

    def reach(i: int) -> range:
        if i <= 0:
            top = 2
        elif i % 2 == 1:
            top = i + 1
        else:
            top = i + 2
        return range(0, top + 1)

    return MultiMap.from_rule(build_line_window(0, hi), reach)


def three_zone_flow_map(n: int = 10) -> MultiMap:
    """Flow-like map on [-n, n] with three special intervals: points left of
    -7 jump right, the bands [-7,-5], [-1,1], [5,7] rest, and between them
    one-step drift intervals push right toward the centre, left toward the
    centre, and right off the window edge."""

    def zone(i: int) -> tuple[int, ...]:
        if i < -7:
            return (i + 2,)
        if -7 <= i <= -5 or -1 <= i <= 1 or 5 <= i <= 7:
            return (i,)
        if -5 < i < -1:
            return (i, i + 1)
        if 1 < i < 5:
            return (i - 1, i)
        return (i, i + 1)

    return MultiMap.from_rule(build_line_window(-n, n), zone)


def split_point_map(n: int = 1) -> MultiMap:
    """Identity except x_0, which is sent to the two-point antichain
    {x_-1, x_1}; the standard counterexample whose fiber over x_0 is
    disconnected."""
    if n < 1:
        raise ValueError("the window must contain x_-1 and x_1")
    window = build_line_window(-n, n)
    return MultiMap(
        window,
        {i: ((-1, 1) if i == 0 else (i,)) for i in window.indices},
    )


def minimal_circle_poset() -> Poset:
    """Four-point poset with two minima under two maxima; its order complex
    is a square, the smallest model of a circle."""
    return Poset.from_covers([0, 1, 2, 3], [(0, 2), (0, 3), (1, 2), (1, 3)])


def minimal_circle_reflection() -> dict[int, int]:
    """Automorphism of the minimal circle swapping only the two maxima; a
    reflection of the square, so its degree-1 homology matrix is [-1]."""
    return {0: 0, 1: 1, 2: 3, 3: 2}


def minimal_circle_rotation() -> dict[int, int]:
    """Automorphism swapping both minima and both maxima; a half-turn of the
    square, orientation-preserving, degree-1 homology matrix [1]."""
    return {0: 1, 1: 0, 2: 3, 3: 2}


def chain_poset(n: int) -> Poset:
    return Poset.from_covers(range(n), [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int) -> Poset:
    return Poset.from_covers(range(n), [])


def small_complex_corpus() -> list[SimplicialComplex]:
    """Twenty small named complexes: paths, cycles, full simplices, stars,
    and a few irregular shapes."""
    out = []
    for n in range(1, 7):    # paths with 1..6 edges
        out.append(
            SimplicialComplex(range(n + 1), [(i, i + 1) for i in range(n)])
        )
    for n in range(3, 9):    # cycles C3..C8
        out.append(
            SimplicialComplex(
                range(n), [(i, (i + 1) % n) for i in range(n)]
            )
        )
    for n in range(1, 5):    # full simplices on 1..4 vertices
        out.append(SimplicialComplex(range(n), [tuple(range(n))]))
    out.append(SimplicialComplex(range(4), [(0, 1), (0, 2), (0, 3)]))
    out.append(SimplicialComplex(range(5), [(0, 1), (0, 2), (0, 3), (0, 4)]))
    out.append(SimplicialComplex(range(4), [(0, 1, 2), (2, 3)]))
    out.append(SimplicialComplex(range(4), [(0, 1), (2, 3)]))
    assert len(out) == 20
    return out
