"""Local rewrites of Morse words that preserve the Morse isotopy class.

Every move is a rewrite of one to three adjacent events with explicit
re-indexing of positions, so each intermediate word is a valid diagram.
The RI curl moves are included for normalization tests but are never used
by :func:`random_equivalent`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .diagram import Kind, MorseDiagram, MorseEvent, OrientedDiagram, orient

__all__ = [
    "MoveKind",
    "MoveSite",
    "InvalidMove",
    "applicable_moves",
    "apply_move",
    "apply_oriented",
    "carry_orientation",
    "random_equivalent",
    "curl_pattern",
    "INSERT_KINDS",
]

CUP, CAP, XP, XN = Kind.CUP, Kind.CAP, Kind.XP, Kind.XN
_FLIP = {XP: XN, XN: XP}


class MoveKind(Enum):
    MIN_MAX_INSERT = "minmax-insert"
    MIN_MAX_DELETE = "minmax-delete"
    SLIDE = "slide"
    RII_INSERT = "rii-insert"
    RII_DELETE = "rii-delete"
    RIII = "riii"
    DISTANT_COMMUTE = "commute"
    ENDPOINT_SHIFT = "endpoint-shift"
    RI_INSERT = "ri-insert"
    RI_DELETE = "ri-delete"

    @property
    def breaks_regular_isotopy(self) -> bool:
        return self in (MoveKind.RI_INSERT, MoveKind.RI_DELETE)


INSERT_KINDS = (MoveKind.MIN_MAX_INSERT, MoveKind.RII_INSERT)


@dataclass(frozen=True)
class MoveSite:
    kind: MoveKind
    index: int
    pos: int
    variant: int = 0


class InvalidMove(ValueError):
    pass


def _ev(kind: Kind, pos: int) -> MorseEvent:
    return MorseEvent(kind, pos)


def _zigzag(p: int, variant: int) -> list[MorseEvent]:
    if variant == 0:
        return [_ev(CUP, p + 1), _ev(CAP, p)]
    return [_ev(CUP, p), _ev(CAP, p + 1)]


def curl_pattern(p: int, variant: int) -> list[MorseEvent]:
    """One of the eight single-crossing curls on strand ``p``.

    ``variant // 2`` picks the shape, ``variant % 2`` the crossing (0 = xp).
    """
    x = XP if variant % 2 == 0 else XN
    shape = variant // 2
    if shape == 0:
        return [_ev(CUP, p + 1), _ev(x, p), _ev(CAP, p)]
    if shape == 1:
        return [_ev(CUP, p), _ev(x, p + 1), _ev(CAP, p + 1)]
    if shape == 2:
        return [_ev(CUP, p), _ev(x, p), _ev(CAP, p + 1)]
    return [_ev(CUP, p + 1), _ev(x, p + 1), _ev(CAP, p)]


# slide identities: each pair of two-event words denotes the same tangle
def _slide_pairs(p: int) -> list[tuple[list[MorseEvent], list[MorseEvent]]]:
    return [
        ([_ev(CUP, p + 1), _ev(XP, p)], [_ev(CUP, p), _ev(XN, p + 1)]),
        ([_ev(CUP, p + 1), _ev(XN, p)], [_ev(CUP, p), _ev(XP, p + 1)]),
        ([_ev(XN, p), _ev(CAP, p + 1)], [_ev(XP, p + 1), _ev(CAP, p)]),
        ([_ev(XP, p), _ev(CAP, p + 1)], [_ev(XN, p + 1), _ev(CAP, p)]),
    ]


def _commuted(e1: MorseEvent, e2: MorseEvent) -> tuple[MorseEvent, MorseEvent] | None:
    """Swap e1 (below) and e2 (above) if they act on disjoint strands.

    The two endpoints never trade heights: the lower one indexes the rows of
    the partition matrix, so swapping them would transpose it.
    """
    if e1.kind.is_dot and e2.kind.is_dot:
        return None
    p1, in1, out1 = e1.pos, e1.n_in, e1.n_out
    p2, in2, out2 = e2.pos, e2.n_in, e2.n_out
    if p2 + in2 <= p1:
        return e2, e1.shifted(out2 - in2)
    if p2 >= p1 + out1:
        return e2.shifted(in1 - out1), e1
    return None


def _sites_at(events: tuple, widths: list[int], i: int, include_ri: bool):
    """Non-insertion sites whose pattern starts at event ``i``."""
    n = len(events)
    e1 = events[i]
    out = []
    if i + 1 < n:
        e2 = events[i + 1]
        if _commuted(e1, e2) is not None:
            kind = MoveKind.ENDPOINT_SHIFT if (e1.kind.is_dot or e2.kind.is_dot) else MoveKind.DISTANT_COMMUTE
            out.append(MoveSite(kind, i, e1.pos))
        pair = [e1, e2]
        for p in (e1.pos, e1.pos - 1):
            if p < 0:
                continue
            for v in (0, 1):
                if pair == _zigzag(p, v):
                    out.append(MoveSite(MoveKind.MIN_MAX_DELETE, i, p, v))
        if e1.kind.is_crossing and e2.kind is _FLIP[e1.kind] and e1.pos == e2.pos:
            out.append(MoveSite(MoveKind.RII_DELETE, i, e1.pos, 0 if e1.kind is XP else 1))
        for p in (e1.pos, e1.pos - 1, e2.pos, e2.pos - 1):
            if p < 0:
                continue
            for v, (a, b) in enumerate(_slide_pairs(p)):
                if pair == a:
                    out.append(MoveSite(MoveKind.SLIDE, i, p, 2 * v))
                elif pair == b:
                    out.append(MoveSite(MoveKind.SLIDE, i, p, 2 * v + 1))
    if i + 2 < n:
        e2, e3 = events[i + 1], events[i + 2]
        if all(e.kind.is_crossing for e in (e1, e2, e3)) and e1.pos == e3.pos and abs(e1.pos - e2.pos) == 1:
            a, b, c = e1.kind, e2.kind, e3.kind
            if not (a == c and a != b):
                out.append(MoveSite(MoveKind.RIII, i, e1.pos))
        if include_ri:
            for p in {e1.pos, e1.pos - 1, e2.pos, e2.pos - 1}:
                if p < 0:
                    continue
                for v in range(8):
                    if [e1, e2, e3] == curl_pattern(p, v):
                        out.append(MoveSite(MoveKind.RI_DELETE, i, p, v))
    return out


def applicable_moves(
    d: MorseDiagram,
    include_ri: bool = False,
    kinds: set[MoveKind] | None = None,
) -> list[MoveSite]:
    """Every site at which a move applies, in a deterministic order."""
    events = d.events
    widths = d.widths()
    sites: list[MoveSite] = []
    for i in range(len(events) + 1):
        w = widths[i]
        for p in range(w):
            sites.append(MoveSite(MoveKind.MIN_MAX_INSERT, i, p, 0))
            sites.append(MoveSite(MoveKind.MIN_MAX_INSERT, i, p, 1))
            if include_ri:
                sites.extend(MoveSite(MoveKind.RI_INSERT, i, p, v) for v in range(8))
        for p in range(w - 1):
            sites.append(MoveSite(MoveKind.RII_INSERT, i, p, 0))
            sites.append(MoveSite(MoveKind.RII_INSERT, i, p, 1))
        if i < len(events):
            sites.extend(_sites_at(events, widths, i, include_ri))
    # dedupe preserving order
    seen = set()
    unique = []
    for s in sites:
        if s not in seen:
            seen.add(s)
            unique.append(s)
    if kinds is not None:
        unique = [s for s in unique if s.kind in kinds]
    return unique


def apply_move(d: MorseDiagram, site: MoveSite) -> MorseDiagram:
    """Rewrite ``d`` at ``site``; raises :class:`InvalidMove` if the pattern is absent."""
    ev = list(d.events)
    i, p, v, k = site.index, site.pos, site.variant, site.kind
    widths = d.widths()
    if not 0 <= i <= len(ev):
        raise InvalidMove(f"index {i} out of range")

    def need(cond, why):
        if not cond:
            raise InvalidMove(f"{k.value} at {i}: {why}")

    if k is MoveKind.MIN_MAX_INSERT:
        need(0 <= p < widths[i] and v in (0, 1), "no strand at that position")
        new = ev[:i] + _zigzag(p, v) + ev[i:]
    elif k is MoveKind.RII_INSERT:
        need(0 <= p < widths[i] - 1 and v in (0, 1), "needs two strands")
        a = XP if v == 0 else XN
        new = ev[:i] + [_ev(a, p), _ev(_FLIP[a], p)] + ev[i:]
    elif k is MoveKind.RI_INSERT:
        need(0 <= p < widths[i] and 0 <= v < 8, "no strand at that position")
        new = ev[:i] + curl_pattern(p, v) + ev[i:]
    else:
        need(i < len(ev), "index past the end")
        if k is MoveKind.MIN_MAX_DELETE:
            need(ev[i:i + 2] == _zigzag(p, v), "no zigzag")
            new = ev[:i] + ev[i + 2:]
        elif k is MoveKind.RII_DELETE:
            a = XP if v == 0 else XN
            need(ev[i:i + 2] == [_ev(a, p), _ev(_FLIP[a], p)], "no cancelling crossing pair")
            new = ev[:i] + ev[i + 2:]
        elif k is MoveKind.RI_DELETE:
            need(ev[i:i + 3] == curl_pattern(p, v), "no curl")
            new = ev[:i] + ev[i + 3:]
        elif k in (MoveKind.DISTANT_COMMUTE, MoveKind.ENDPOINT_SHIFT):
            need(i + 1 < len(ev), "needs two events")
            sw = _commuted(ev[i], ev[i + 1])
            need(sw is not None, "events overlap")
            new = ev[:i] + list(sw) + ev[i + 2:]
        elif k is MoveKind.SLIDE:
            pairs = _slide_pairs(p)
            need(0 <= v < 2 * len(pairs), "bad variant")
            a, b = pairs[v // 2]
            src, dst = (a, b) if v % 2 == 0 else (b, a)
            need(ev[i:i + 2] == src, "slide pattern absent")
            new = ev[:i] + dst + ev[i + 2:]
        elif k is MoveKind.RIII:
            need(i + 2 < len(ev), "needs three events")
            e1, e2, e3 = ev[i:i + 3]
            need(all(e.kind.is_crossing for e in (e1, e2, e3)), "needs three crossings")
            need(e1.pos == e3.pos and abs(e1.pos - e2.pos) == 1, "not a braid triple")
            need(not (e1.kind == e3.kind != e2.kind), "triple is not a braid relation")
            new = ev[:i] + [_ev(e3.kind, e2.pos), _ev(e2.kind, e1.pos), _ev(e1.kind, e2.pos)] + ev[i + 3:]
        else:  # pragma: no cover
            raise InvalidMove(f"unknown move {k}")
    return d.replace(new)


def _window(kind: MoveKind, old_len: int, new_len: int) -> int:
    """Number of old events rewritten by a move of this kind."""
    if kind in INSERT_KINDS or kind is MoveKind.RI_INSERT:
        return 0
    if kind in (MoveKind.MIN_MAX_DELETE, MoveKind.RII_DELETE, MoveKind.RI_DELETE):
        return old_len - new_len
    return 3 if kind is MoveKind.RIII else 2


def carry_orientation(old: OrientedDiagram, new: MorseDiagram, site: MoveSite) -> OrientedDiagram:
    """Orient ``new`` so that strands outside the rewritten window keep their direction."""
    od = orient(new)
    old_n = _window(site.kind, len(old.events), len(new.events))
    new_n = old_n + len(new.events) - len(old.events)
    i = site.index
    flips = set()
    for c in range(len(od.components)):
        if c == od.knotoid_component:
            continue
        for lo, hi in ((i, i), (i + old_n, i + new_n)):
            here = [k for k, s in enumerate(od.levels[hi]) if od.component_of[s] == c]
            if here:
                k = here[0]
                if od.seg_dir[od.levels[hi][k]] != old.seg_dir[old.levels[lo][k]]:
                    flips.add(c)
                break
    return orient(new, flip=flips) if flips else od


def apply_oriented(od: OrientedDiagram, site: MoveSite) -> OrientedDiagram:
    """:func:`apply_move` on an oriented diagram, transporting the orientation."""
    return carry_orientation(od, apply_move(od.base, site), site)


def random_equivalent(
    d: MorseDiagram,
    steps: int,
    seed=0,
    insert_bias: float = 0.5,
    max_crossings: int | None = None,
    max_width: int | None = None,
) -> MorseDiagram:
    """Apply ``steps`` random Morse moves (never RI) deterministically from ``seed``.

    Each step picks an insertion move with probability ``insert_bias``, and
    otherwise a uniformly chosen non-insertion site.  ``max_crossings`` and
    ``max_width`` switch off moves that would exceed them.  Given an
    :class:`OrientedDiagram` the orientation of closed components is carried
    along and an oriented diagram is returned.
    """
    rng = random.Random(seed)
    oriented = isinstance(d, OrientedDiagram)
    od = d if oriented else None
    d = d.base if oriented else d
    for _ in range(steps):
        sites = applicable_moves(d)
        widths = d.widths()
        inserts, others = [], []
        for s in sites:
            if s.kind in INSERT_KINDS:
                if s.kind is MoveKind.RII_INSERT and max_crossings is not None and d.n_crossings + 2 > max_crossings:
                    continue
                if s.kind is MoveKind.MIN_MAX_INSERT and max_width is not None and widths[s.index] + 2 > max_width:
                    continue
                inserts.append(s)
            elif s.kind in (MoveKind.DISTANT_COMMUTE, MoveKind.ENDPOINT_SHIFT) and max_width is not None:
                # the swapped pair puts the upper event's width change first
                if widths[s.index] + d.events[s.index + 1].delta <= max_width:
                    others.append(s)
            else:
                others.append(s)
        if not inserts and not others:
            break
        pool = inserts if (not others or (inserts and rng.random() < insert_bias)) else others
        site = rng.choice(pool)
        if oriented:
            od = apply_oriented(od, site)
            d = od.base
        else:
            d = apply_move(d, site)
    return od if oriented else d
