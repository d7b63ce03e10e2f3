"""Morse words: validation, orientation, rotation numbers, Gauss codes.

A Morse word lists elementary events from bottom to top.  Each event acts at
a 0-based strand position of the current horizontal slice::

    leg P      endpoint dot, strand leaves it upward         width +1
    head P     strand arriving from below ends in a dot      width -1
    legtop P   leg dot capping a strand from above            width -1
    headbot P  head dot at the bottom of a strand             width +1
    cup P      local minimum, two strands born at P, P+1      width +2
    cap P      local maximum, strands P, P+1 die              width -2
    xp P       crossing of P, P+1; the "/" strand is over     width  0
    xn P       crossing of P, P+1; the "\\" strand is over    width  0

``legtop`` and ``headbot`` let an endpoint point downward; they are needed
whenever the knotoid runs downward into its head or out of its leg.

Extremum chirality, read off the direction table::

      cap, left leg Up          cap, left leg Down
         .->-.                     .-<-.
         |   |    -1               |   |    +1
         ^   v                     v   ^

      cup, left leg Up          cup, left leg Down
         ^   v                     v   ^
         |   |    -1               |   |    +1
         '-<-'                     '->-'

so a clockwise circle has rotation -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Kind",
    "MorseEvent",
    "MorseDiagram",
    "Violation",
    "InvalidDiagram",
    "OrientedDiagram",
    "GaussEntry",
    "UP",
    "DOWN",
    "validate",
    "orient",
    "rotation_number",
    "gauss_code",
    "crossing_parity",
    "writhe",
    "odd_writhe",
    "all_crossings_even",
    "crossing_signs",
    "odd_crossings",
    "component_rotations",
    "crossing_ids",
    "shared_crossing_counts",
    "E",
]

UP = 1
DOWN = -1


class Kind(Enum):
    LEG = "leg"
    HEAD = "head"
    LEG_TOP = "legtop"
    HEAD_BOTTOM = "headbot"
    CUP = "cup"
    CAP = "cap"
    XP = "xp"
    XN = "xn"

    @property
    def arity(self) -> tuple[int, int]:
        """(strands consumed, strands produced)."""
        return _ARITY[self]

    @property
    def is_crossing(self) -> bool:
        return self in (Kind.XP, Kind.XN)

    @property
    def is_dot(self) -> bool:
        return self in (Kind.LEG, Kind.HEAD, Kind.LEG_TOP, Kind.HEAD_BOTTOM)

    @property
    def is_leg(self) -> bool:
        return self in (Kind.LEG, Kind.LEG_TOP)

    @property
    def is_head(self) -> bool:
        return self in (Kind.HEAD, Kind.HEAD_BOTTOM)


_ARITY = {
    Kind.LEG: (0, 1),
    Kind.HEAD: (1, 0),
    Kind.LEG_TOP: (1, 0),
    Kind.HEAD_BOTTOM: (0, 1),
    Kind.CUP: (0, 2),
    Kind.CAP: (2, 0),
    Kind.XP: (2, 2),
    Kind.XN: (2, 2),
}


@dataclass(frozen=True)
class MorseEvent:
    kind: Kind
    pos: int

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def n_in(self) -> int:
        return _ARITY[self.kind][0]

    @property
    def n_out(self) -> int:
        return _ARITY[self.kind][1]

    @property
    def delta(self) -> int:
        a, b = _ARITY[self.kind]
        return b - a

    def shifted(self, by: int) -> "MorseEvent":
        return MorseEvent(self.kind, self.pos + by)

    def __str__(self) -> str:
        return f"{self.kind.value} {self.pos}"

    def __repr__(self) -> str:
        return f"E({self.kind.value!r}, {self.pos})"

    def __lt__(self, other):  # enums are unordered; compare by token
        return (self.kind.value, self.pos) < (other.kind.value, other.pos)


def E(kind, pos: int) -> MorseEvent:
    return MorseEvent(Kind(kind) if isinstance(kind, str) else kind, pos)


@dataclass(frozen=True)
class Violation:
    index: int
    reason: str

    def __str__(self) -> str:
        return f"event {self.index}: {self.reason}"


class InvalidDiagram(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


def _coerce_events(events) -> tuple[MorseEvent, ...]:
    out = []
    for e in events:
        if isinstance(e, MorseEvent):
            out.append(e)
        else:
            k, p = e
            out.append(E(k, int(p)))
    return tuple(out)


def validate(events, bottom_width: int = 0, fragment: bool = False) -> Violation | None:
    """Return the first violation of the Morse word rules, or None.

    With ``fragment`` the word is an open tangle piece: it may start at
    ``bottom_width`` and end at any width, and endpoint counts are only
    bounded by one each.
    """
    events = _coerce_events(events)
    w = bottom_width
    if w < 0:
        return Violation(-1, "negative bottom width")
    legs = heads = 0
    for i, e in enumerate(events):
        k, p = e.kind, e.pos
        if p < 0:
            return Violation(i, f"negative position {p}")
        n_in, n_out = e.n_in, e.n_out
        if n_in > w:
            return Violation(i, f"width underflow ({k.value} needs {n_in} strands, width is {w})")
        if n_in == 0:
            if p > w:
                return Violation(i, f"position {p} out of range 0..{w} for {k.value}")
        elif p + n_in > w:
            return Violation(i, f"position {p} out of range 0..{w - n_in} for {k.value}")
        if k.is_leg:
            legs += 1
        if k.is_head:
            heads += 1
        if legs > 1 or heads > 1:
            return Violation(i, "more than one leg or head")
        w += n_out - n_in
    if not fragment:
        if w != 0:
            return Violation(len(events), f"diagram ends at width {w}, expected 0")
        if legs != heads:
            return Violation(len(events), "leg and head counts differ")
    return None


class MorseDiagram:
    """A validated Morse word (bottom to top).

    ``bottom_width`` > 0 or ``fragment=True`` marks an open tangle fragment,
    used for functoriality checks and model identities.
    """

    __slots__ = ("events", "bottom_width", "fragment", "name", "_hash")

    def __init__(self, events: Iterable = (), bottom_width: int = 0, fragment: bool = False, name: str | None = None):
        evs = _coerce_events(events)
        fragment = fragment or bottom_width > 0
        v = validate(evs, bottom_width, fragment)
        if v is not None:
            raise InvalidDiagram(v)
        self.events = evs
        self.bottom_width = bottom_width
        self.fragment = fragment
        self.name = name
        self._hash = None

    @classmethod
    def fragment_of(cls, events, bottom_width: int) -> "MorseDiagram":
        return cls(events, bottom_width=bottom_width, fragment=True)

    def widths(self) -> list[int]:
        """Width below each event, plus the final width."""
        out = [self.bottom_width]
        for e in self.events:
            out.append(out[-1] + e.delta)
        return out

    @property
    def top_width(self) -> int:
        return self.bottom_width + sum(e.delta for e in self.events)

    @property
    def max_width(self) -> int:
        return max(self.widths())

    @property
    def is_knotoid(self) -> bool:
        return any(e.kind.is_leg for e in self.events)

    @property
    def is_closed(self) -> bool:
        return not self.fragment and not self.is_knotoid

    @property
    def n_crossings(self) -> int:
        return sum(1 for e in self.events if e.kind.is_crossing)

    def crossing_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.events) if e.kind.is_crossing]

    def replace(self, events) -> "MorseDiagram":
        return MorseDiagram(events, self.bottom_width, self.fragment, self.name)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, i):
        return self.events[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MorseDiagram):
            return NotImplemented
        return (self.events, self.bottom_width, self.fragment) == (other.events, other.bottom_width, other.fragment)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.events, self.bottom_width, self.fragment))
        return self._hash

    def word(self) -> str:
        return "; ".join(str(e) for e in self.events)

    def __repr__(self) -> str:
        extra = f", bottom_width={self.bottom_width}" if self.bottom_width else ""
        return f"MorseDiagram([{self.word()}]{extra})"


# --- strand structure ----------------------------------------------------------

BOTTOM = -1


@dataclass
class Segment:
    """A strand piece between two events (or a boundary)."""

    start: int  # event index, or BOTTOM
    start_port: int
    end: int = -2  # event index, or len(events) for the top boundary
    end_port: int = 0


@dataclass
class OrientedDiagram:
    base: MorseDiagram
    segments: list[Segment]
    levels: list[list[int]]  # segment ids across each slice (len(events)+1 slices)
    event_in: list[list[int]]
    event_out: list[list[int]]
    seg_dir: list[int]
    component_of: list[int]
    knotoid_component: int | None
    components: list[list[int]] = field(default_factory=list)

    @property
    def events(self):
        return self.base.events

    def direction_table(self) -> list[list[int]]:
        return [[self.seg_dir[s] for s in lvl] for lvl in self.levels]

    def bottom_dirs(self) -> tuple[int, ...]:
        return tuple(self.seg_dir[s] for s in self.levels[0])

    def top_dirs(self) -> tuple[int, ...]:
        return tuple(self.seg_dir[s] for s in self.levels[-1])

    def endpoint_pattern(self) -> tuple[int, int] | None:
        """(direction at lower endpoint, direction at upper endpoint) of the knotoid strand."""
        ends = [i for i, e in enumerate(self.events) if e.kind.is_dot]
        if not ends:
            return None
        out = []
        for i in ends:
            e = self.events[i]
            seg = self.event_out[i][0] if e.n_out else self.event_in[i][0]
            out.append(self.seg_dir[seg])
        return out[0], out[1]

    def crossing_strands(self, i: int) -> tuple[int, int]:
        """Directions of the '/' and '\\' strands at crossing event ``i``."""
        a, b = self.event_in[i]
        return self.seg_dir[a], self.seg_dir[b]

    def extremum_sign(self, i: int) -> int:
        e = self.events[i]
        if e.kind is Kind.CUP:
            return -self.seg_dir[self.event_out[i][0]]
        if e.kind is Kind.CAP:
            return -self.seg_dir[self.event_in[i][0]]
        raise ValueError(f"event {i} is not a cup or cap")

    def crossing_sign(self, i: int) -> int:
        e = self.events[i]
        slash, backslash = self.crossing_strands(i)
        vs = (slash, slash)  # '/' strand, Up means (+1, +1)
        vb = (-backslash, backslash)  # '\' strand, Up means (-1, +1)
        over, under = (vs, vb) if e.kind is Kind.XP else (vb, vs)
        cross = over[0] * under[1] - over[1] * under[0]
        return 1 if cross > 0 else -1

    def traverse(self, component: int) -> list[tuple[int, int, bool]]:
        """Walk a component in its direction.

        Returns (event index, kind of passage, over?) for each crossing passage,
        where kind of passage is 0 for the '/' strand and 1 for the '\\' strand.
        """
        segs = self.components[component]
        if component == self.knotoid_component:
            start = self._leg_segment()
        else:
            start = min(segs)
        out = []
        seen = set()
        seg = start
        while seg not in seen:
            seen.add(seg)
            s = self.segments[seg]
            if self.seg_dir[seg] == UP:
                ev, port, arriving_in = s.end, s.end_port, True
            else:
                ev, port, arriving_in = s.start, s.start_port, False
            if ev < 0 or ev >= len(self.events):
                break
            e = self.events[ev]
            k = e.kind
            if k.is_dot:
                break
            if k.is_crossing:
                # '/' joins in0 and out1, '\' joins in1 and out0
                strand = (0 if port == 0 else 1) if arriving_in else (1 if port == 0 else 0)
                over = (strand == 0) == (k is Kind.XP)
                out.append((ev, strand, over))
                if arriving_in:
                    seg = self.event_out[ev][1 - port]
                else:
                    seg = self.event_in[ev][1 - port]
            elif k is Kind.CUP:
                seg = self.event_out[ev][1 - port]
            elif k is Kind.CAP:
                seg = self.event_in[ev][1 - port]
        return out

    def _leg_segment(self) -> int:
        for i, e in enumerate(self.events):
            if e.kind is Kind.LEG:
                return self.event_out[i][0]
            if e.kind is Kind.LEG_TOP:
                return self.event_in[i][0]
        raise ValueError("no leg")


def _build_segments(d: MorseDiagram):
    segments: list[Segment] = []
    state = []
    for k in range(d.bottom_width):
        segments.append(Segment(BOTTOM, k))
        state.append(len(segments) - 1)
    levels = [list(state)]
    event_in, event_out = [], []
    for t, e in enumerate(d.events):
        p = e.pos
        ins = state[p:p + e.n_in]
        for k, s in enumerate(ins):
            segments[s].end, segments[s].end_port = t, k
        outs = []
        for k in range(e.n_out):
            segments.append(Segment(t, k))
            outs.append(len(segments) - 1)
        state = state[:p] + outs + state[p + e.n_in:]
        event_in.append(ins)
        event_out.append(outs)
        levels.append(list(state))
    top = len(d.events)
    for k, s in enumerate(state):
        segments[s].end, segments[s].end_port = top, k
    return segments, levels, event_in, event_out


def orient(
    d: MorseDiagram,
    flip: Iterable[int] = (),
    bottom_dirs: Sequence[int] | None = None,
    top_dirs: Sequence[int] | None = None,
) -> OrientedDiagram:
    """Direct every strand.

    The knotoid strand runs from leg to head.  A closed component is
    directed so that the left leg of its lowest cup points Up; components
    whose index is in ``flip`` are reversed.  Fragments take boundary
    directions from ``bottom_dirs`` / ``top_dirs`` where given.
    """
    segments, levels, event_in, event_out = _build_segments(d)
    n = len(segments)
    # relation graph: (other segment, same-direction?)
    rel: list[list[tuple[int, bool]]] = [[] for _ in range(n)]

    def link(a, b, same):
        rel[a].append((b, same))
        rel[b].append((a, same))

    for t, e in enumerate(d.events):
        k = e.kind
        if k.is_crossing:
            link(event_in[t][0], event_out[t][1], True)
            link(event_in[t][1], event_out[t][0], True)
        elif k is Kind.CUP:
            link(event_out[t][0], event_out[t][1], False)
        elif k is Kind.CAP:
            link(event_in[t][0], event_in[t][1], False)

    component_of = [-1] * n
    components: list[list[int]] = []
    for s in range(n):
        if component_of[s] >= 0:
            continue
        cid = len(components)
        stack, members = [s], []
        component_of[s] = cid
        while stack:
            a = stack.pop()
            members.append(a)
            for b, _ in rel[a]:
                if component_of[b] < 0:
                    component_of[b] = cid
                    stack.append(b)
        components.append(sorted(members))

    seeds: dict[int, tuple[int, int]] = {}  # component -> (segment, direction)
    knotoid_component = None
    for t, e in enumerate(d.events):
        k = e.kind
        if k is Kind.LEG:
            seeds[component_of[event_out[t][0]]] = (event_out[t][0], UP)
        elif k is Kind.LEG_TOP:
            seeds[component_of[event_in[t][0]]] = (event_in[t][0], DOWN)
        if k.is_leg:
            knotoid_component = component_of[(event_out[t] or event_in[t])[0]]
    if bottom_dirs is not None:
        if len(bottom_dirs) != len(levels[0]):
            raise ValueError("bottom_dirs length does not match the bottom width")
        for s, dr in zip(levels[0], bottom_dirs):
            seeds.setdefault(component_of[s], (s, dr))
    if top_dirs is not None:
        if len(top_dirs) != len(levels[-1]):
            raise ValueError("top_dirs length does not match the top width")
        for s, dr in zip(levels[-1], top_dirs):
            seeds.setdefault(component_of[s], (s, dr))
    for t, e in enumerate(d.events):
        if e.kind is Kind.CUP:
            c = component_of[event_out[t][0]]
            seeds.setdefault(c, (event_out[t][0], UP))
    for t, e in enumerate(d.events):  # a head-only component (fragments)
        if e.kind is Kind.HEAD:
            seeds.setdefault(component_of[event_in[t][0]], (event_in[t][0], UP))
        elif e.kind is Kind.HEAD_BOTTOM:
            seeds.setdefault(component_of[event_out[t][0]], (event_out[t][0], DOWN))
    for c, segs in enumerate(components):
        if c not in seeds:  # a bare boundary strand
            seeds[c] = (segs[0], UP)

    flip = set(flip)
    seg_dir = [0] * n
    for c, (s0, d0) in seeds.items():
        if c in flip and c != knotoid_component:
            d0 = -d0
        seg_dir[s0] = d0
        stack = [s0]
        while stack:
            a = stack.pop()
            for b, same in rel[a]:
                want = seg_dir[a] if same else -seg_dir[a]
                if seg_dir[b] == 0:
                    seg_dir[b] = want
                    stack.append(b)
                elif seg_dir[b] != want:
                    raise ValueError("inconsistent boundary directions")
    od = OrientedDiagram(d, segments, levels, event_in, event_out, seg_dir, component_of, knotoid_component, components)
    _check_boundaries(od, bottom_dirs, top_dirs)
    return od


def _check_boundaries(od: OrientedDiagram, bottom_dirs, top_dirs):
    if bottom_dirs is not None and tuple(bottom_dirs) != od.bottom_dirs():
        raise ValueError("inconsistent bottom boundary directions")
    if top_dirs is not None and tuple(top_dirs) != od.top_dirs():
        raise ValueError("inconsistent top boundary directions")
    for t, e in enumerate(od.events):
        if e.kind is Kind.HEAD and od.seg_dir[od.event_in[t][0]] != UP:
            raise ValueError("head dot reached from above; use headbot")
        if e.kind is Kind.HEAD_BOTTOM and od.seg_dir[od.event_out[t][0]] != DOWN:
            raise ValueError("headbot dot reached from below; use head")


def _as_oriented(d) -> OrientedDiagram:
    return d if isinstance(d, OrientedDiagram) else orient(d)


def rotation_number(d, component: int | None = None) -> Fraction:
    """Half the signed count of extrema; total over all components by default.

    With ``component="knotoid"`` or an index, restrict to that component.
    """
    od = _as_oriented(d)
    if component == "knotoid":
        component = od.knotoid_component
        if component is None:
            raise ValueError("diagram has no knotoid component")
    total = 0
    for t, e in enumerate(od.events):
        if e.kind not in (Kind.CUP, Kind.CAP):
            continue
        seg = od.event_out[t][0] if e.kind is Kind.CUP else od.event_in[t][0]
        if component is not None and od.component_of[seg] != component:
            continue
        total += od.extremum_sign(t)
    return Fraction(total, 2)


def component_rotations(d) -> dict[int, Fraction]:
    od = _as_oriented(d)
    return {c: rotation_number(od, c) for c in range(len(od.components))}


@dataclass(frozen=True)
class GaussEntry:
    crossing: int  # 1-based ordinal among crossing events
    over: bool
    sign: int

    def __iter__(self):
        return iter((self.crossing, "O" if self.over else "U", self.sign))


def crossing_ids(d) -> dict[int, int]:
    base = d.base if isinstance(d, OrientedDiagram) else d
    return {ev: k + 1 for k, ev in enumerate(base.crossing_indices())}


def gauss_code(d) -> list[GaussEntry]:
    """Crossings met along the knotoid strand from leg to head."""
    od = _as_oriented(d)
    if od.knotoid_component is None:
        raise ValueError("gauss_code needs a knotoid component; this is a closed diagram")
    ids = crossing_ids(od)
    code = []
    for ev, _strand, over in od.traverse(od.knotoid_component):
        code.append(GaussEntry(ids[ev], over, od.crossing_sign(ev)))
    return code


def crossing_parity(code: Sequence, crossing: int) -> str:
    """'even' or 'odd': parity of the number of entries between the two visits."""
    ids = [(c.crossing if isinstance(c, GaussEntry) else c[0]) for c in code]
    where = [k for k, c in enumerate(ids) if c == crossing]
    if len(where) != 2:
        raise KeyError(f"crossing {crossing} does not appear twice in the code")
    between = where[1] - where[0] - 1
    return "odd" if between % 2 else "even"


def crossing_signs(d) -> dict[int, int]:
    od = _as_oriented(d)
    return {i: od.crossing_sign(i) for i in od.base.crossing_indices()}


def writhe(d) -> int:
    return sum(crossing_signs(d).values())


def odd_crossings(d) -> list[int]:
    """Event indices of the odd self-crossings of the knotoid strand."""
    od = _as_oriented(d)
    code = gauss_code(od)
    ids = crossing_ids(od)
    inv = {v: k for k, v in ids.items()}
    seen = {}
    for c in code:
        seen[c.crossing] = seen.get(c.crossing, 0) + 1
    return sorted(inv[c] for c, m in seen.items() if m == 2 and crossing_parity(code, c) == "odd")


def odd_writhe(d) -> int:
    od = _as_oriented(d)
    return sum(od.crossing_sign(i) for i in odd_crossings(od))


def all_crossings_even(d) -> bool:
    """True when no self-crossing of the knotoid strand is odd.

    Necessary for knot-type, not sufficient; the diagram's region structure
    is never inspected.
    """
    return not odd_crossings(d)


def shared_crossing_counts(d) -> dict[tuple[int, int], int]:
    """Number of crossings between each pair of distinct components."""
    od = _as_oriented(d)
    counts: dict[tuple[int, int], int] = {}
    for i in od.base.crossing_indices():
        a, b = (od.component_of[s] for s in od.event_in[i])
        if a != b:
            key = (min(a, b), max(a, b))
            counts[key] = counts.get(key, 0) + 1
    return counts
