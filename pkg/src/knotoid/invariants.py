"""Named invariants: rotational and matrix brackets, binary bracket,
Alexander, Sawollek and Homflypt, plus skein-relation checks.

The rotational bracket and the binary bracket are computed by their own
combinatorial state sums.  The bracket matrix is computed twice (engine and
state sum) and the two must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .diagram import (
    UP,
    Kind,
    MorseDiagram,
    MorseEvent,
    OrientedDiagram,
    orient,
    rotation_number,
    writhe,
)
from .engine import InvariantResult, contract
from .models import alexander_model, binary_model, bracket_model, homflypt_model, sawollek_model
from .scalar import ONE, ZERO, LaurentPoly, poly_parse, var

__all__ = [
    "LOOP",
    "ConsistencyError",
    "smoothing_states",
    "rotational_bracket",
    "open_component_matrix",
    "bracket_matrix",
    "bracket_state_sum",
    "binary_bracket",
    "normalized_binary",
    "binary_via_engine",
    "OrientedInvariant",
    "alexander",
    "sawollek",
    "homflypt",
    "homflypt_unreduced",
    "unknot_value",
    "skein_triple",
    "skein_check_alexander",
    "skein_check_homflypt",
    "orient_like",
]

LOOP = poly_parse("-A^2 - A^-2")
_A = var("A")
_A_INV = var("A", -1)
MAX_STATE_CROSSINGS = 16


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


def _split(d) -> tuple[MorseDiagram, OrientedDiagram]:
    if isinstance(d, OrientedDiagram):
        return d.base, d
    return d, orient(d)


# --- Kauffman states -------------------------------------------------------------

def smoothing_states(d: MorseDiagram):
    """Yield ``(weight, smoothed word)`` for all 2^c bracket states.

    The vertical smoothing of a crossing drops the event; the horizontal one
    replaces it by a cap and a cup.  For ``xp`` the vertical smoothing is the
    A-smoothing, for ``xn`` it is the A^-1 one.
    """
    crossings = d.crossing_indices()
    if len(crossings) > MAX_STATE_CROSSINGS:
        raise ValueError(f"{len(crossings)} crossings exceed the state-sum limit {MAX_STATE_CROSSINGS}")
    for choice in itertools.product((0, 1), repeat=len(crossings)):
        events: list[MorseEvent] = []
        weight = ONE
        pick = dict(zip(crossings, choice))
        for t, e in enumerate(d.events):
            if t not in pick:
                events.append(e)
                continue
            vertical = pick[t] == 0
            pos_weight = (e.kind is Kind.XP) == vertical
            weight = weight * (_A if pos_weight else _A_INV)
            if not vertical:
                events.append(MorseEvent(Kind.CAP, e.pos))
                events.append(MorseEvent(Kind.CUP, e.pos))
        yield weight, MorseDiagram(events)


def _state_shape(smoothed: MorseDiagram) -> tuple[int, Fraction | None, tuple | None]:
    """(number of circles, rotation of the open component, its endpoint pattern)."""
    od = orient(smoothed)
    k = od.knotoid_component
    circles = len(od.components) - (1 if k is not None else 0)
    if k is None:
        return circles, None, None
    return circles, rotation_number(od, k), od.endpoint_pattern()


def rotational_bracket(d) -> LaurentPoly:
    """Sum over states of weight * loop^(circles) * l^(rotation of the open component)."""
    base, _ = _split(d)
    if not base.is_knotoid:
        raise ValueError("the rotational bracket needs a knotoid diagram; use bracket_matrix for closed ones")
    total = ZERO
    for weight, smoothed in smoothing_states(base):
        circles, rot, _ = _state_shape(smoothed)
        total = total + weight * LOOP ** circles * var("l", rot)
    return total


# --- bracket matrix ----------------------------------------------------------------

_X = poly_parse("w^2*A")      # squares to -A^2
_Y = poly_parse("-w^2*A^-1")  # squares to -A^-2


def open_component_matrix(rot: Fraction, pattern: tuple[int, int]) -> list[list[LaurentPoly]]:
    """Bracket matrix of a crossingless open component.

    With k = |2 rot|, the entries are (iA)^k and (-iA^-1)^k, on the diagonal
    when both endpoints point the same way and off it otherwise.  The first
    row gets (iA)^k when the rotation is negative and the lower endpoint
    points Up, or the rotation is positive and it points Down.
    """
    k = abs(int(2 * rot))
    first_is_x = (rot < 0) == (pattern[0] == UP)
    x, y = _X ** k, _Y ** k
    top, bottom = (x, y) if first_is_x else (y, x)
    if pattern[0] == pattern[1]:
        return [[top, ZERO], [ZERO, bottom]]
    return [[ZERO, top], [bottom, ZERO]]


def bracket_state_sum(d) -> InvariantResult:
    """Bracket matrix from Kauffman states and the closed-form open components."""
    base, od = _split(d)
    if not base.is_knotoid:
        total = ZERO
        for weight, smoothed in smoothing_states(base):
            circles, _, _ = _state_shape(smoothed)
            total = total + weight * LOOP ** circles
        return InvariantResult([[total]], "bracket")
    acc = [[ZERO, ZERO], [ZERO, ZERO]]
    for weight, smoothed in smoothing_states(base):
        circles, rot, pattern = _state_shape(smoothed)
        factor = weight * LOOP ** circles
        m = open_component_matrix(rot, pattern)
        for a in range(2):
            for b in range(2):
                if m[a][b]:
                    acc[a][b] = acc[a][b] + factor * m[a][b]
    return InvariantResult(acc, "bracket", od.endpoint_pattern())


def bracket_matrix(d, check: bool = True) -> InvariantResult:
    """Engine contraction with the bracket model, cross-checked by the state sum."""
    base, od = _split(d)
    result = contract(od, bracket_model())
    if check:
        other = bracket_state_sum(od)
        if other.matrix != result.matrix:
            raise ConsistencyError(f"bracket engine {result.rows()} != state sum {other.rows()}")
    if result.pattern is None:
        result.scalar = result.matrix[0][0]
    return result


# --- binary bracket ----------------------------------------------------------------

def binary_bracket(d) -> LaurentPoly:
    """Sum over proper edge colourings of the forced smoothing weights.

    Edge colours flip at every crossing passage.  The leg edge is coloured 0
    and each closed component takes both colourings.  At a crossing the
    vertical smoothing is forced when the two lower colours differ, the
    horizontal one when they agree.
    """
    base, od = _split(d)
    nseg = len(od.segments)
    # colour relations between segments: (other, flips?)
    rel: list[list[tuple[int, int]]] = [[] for _ in range(nseg)]

    def link(a, b, flip):
        rel[a].append((b, flip))
        rel[b].append((a, flip))

    for t, e in enumerate(base.events):
        ins, outs = od.event_in[t], od.event_out[t]
        if e.kind.is_crossing:
            link(ins[0], outs[1], 1)
            link(ins[1], outs[0], 1)
        elif e.kind is Kind.CUP:
            link(outs[0], outs[1], 0)
        elif e.kind is Kind.CAP:
            link(ins[0], ins[1], 0)

    comps = od.components
    seeds = []
    for c, segs in enumerate(comps):
        if c == od.knotoid_component:
            seeds.append(((od._leg_segment(),), (0,)))
        else:
            seeds.append(((segs[0],), (0, 1)))

    colourings_per_comp = []
    for c, segs in enumerate(comps):
        start = seeds[c][0][0]
        options = []
        for colour in seeds[c][1]:
            col = {start: colour}
            stack = [start]
            ok = True
            while stack and ok:
                a = stack.pop()
                for b, flip in rel[a]:
                    want = col[a] ^ flip
                    if b not in col:
                        col[b] = want
                        stack.append(b)
                    elif col[b] != want:
                        ok = False
                        break
            if ok:
                options.append(col)
        colourings_per_comp.append(options)

    total = ZERO
    for combo in itertools.product(*colourings_per_comp):
        colour = {}
        for part in combo:
            colour.update(part)
        weight = ONE
        for t in base.crossing_indices():
            i, j = od.event_in[t]
            vertical = colour[i] != colour[j]
            weight = weight * (_A if (base.events[t].kind is Kind.XP) == vertical else _A_INV)
        total = total + weight
    return total


def binary_via_engine(d) -> LaurentPoly:
    result = contract(d, binary_model())
    return result.matrix[0][0]


def normalized_binary(d) -> LaurentPoly:
    base, od = _split(d)
    return binary_bracket(od) * var("A", -writhe(od))


# --- oriented invariants ---------------------------------------------------------

@dataclass
class OrientedInvariant:
    raw: InvariantResult
    normalized: InvariantResult
    scalar: LaurentPoly | None
    rotation: Fraction
    writhe: int
    planar: InvariantResult | None = None

    @property
    def matrix(self):
        return self.normalized.matrix


def _require_knotoid(od: OrientedDiagram, what: str):
    if od.knotoid_component is None:
        raise ValueError(f"{what} is defined for knotoid diagrams; this diagram is closed")


def alexander(d) -> OrientedInvariant:
    """Raw state sum, its (iq)^(-rot) normalization, and half the trace.

    A curl changes the raw sum by (-iq)^(+-1), so (iq)^(-rot) is invariant
    under Morse isotopy but flips sign under a curl.  ``planar`` holds the
    (-iq)^(-rot) normalization, which is also invariant under curls.
    """
    _, od = _split(d)
    _require_knotoid(od, "alexander")
    raw = contract(od, alexander_model())
    rot = rotation_number(od)
    norm = raw.map(lambda x: x * poly_parse("w^2*q") ** (-rot))
    scalar = norm.trace() * Fraction(1, 2)
    norm.scalar = scalar
    planar = raw.map(lambda x: x * poly_parse("-w^2*q") ** (-rot))
    planar.scalar = planar.trace() * Fraction(1, 2)
    return OrientedInvariant(raw, norm, scalar, rot, writhe(od), planar)


def sawollek(d) -> OrientedInvariant:
    """Z = half the state sum, W = (i s t^-1)^rot Z, scalar = tr W."""
    _, od = _split(d)
    _require_knotoid(od, "sawollek")
    raw = contract(od, sawollek_model()).map(lambda x: x * Fraction(1, 2))
    rot = rotation_number(od)
    factor = poly_parse("w^2*s*t^-1") ** rot
    norm = raw.map(lambda x: x * factor)
    scalar = norm.trace()
    norm.scalar = scalar
    return OrientedInvariant(raw, norm, scalar, rot, writhe(od))


def unknot_value(n: int) -> LaurentPoly:
    """Sum of q^-a over the labels a = -n, -n+2, ..., n."""
    total = ZERO
    for a in range(-n, n + 1, 2):
        total = total + var("q", -a)
    return total


def homflypt(d, n: int) -> OrientedInvariant:
    """Raw matrix <K>, normalized (q^(n+1))^(-w) <K>, and a scalar.

    For a closed diagram the scalar is the normalized value divided exactly
    by the unknot value.  For a knotoid the normalized matrix itself is the
    invariant (the trivial knotoid gives the identity), and the scalar is
    the common diagonal entry when all diagonal entries agree, else None.
    """
    _, od = _split(d)
    raw = contract(od, homflypt_model(n))
    w = writhe(od)
    factor = var("q", -(n + 1) * w)
    norm = raw.map(lambda x: x * factor)
    if od.knotoid_component is None:
        scalar = norm.matrix[0][0].exact_div(unknot_value(n))
    else:
        diag = {norm.matrix[a][a] for a in range(len(norm.matrix))}
        scalar = diag.pop() if len(diag) == 1 else None
    norm.scalar = scalar
    return OrientedInvariant(raw, norm, scalar, rotation_number(od), w)


def homflypt_unreduced(d, n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """(numerator, unknot value) for a closed diagram, without dividing."""
    _, od = _split(d)
    raw = contract(od, homflypt_model(n))
    return raw.matrix[0][0] * var("q", -(n + 1) * writhe(od)), unknot_value(n)


# --- skein triples -----------------------------------------------------------------

def orient_like(new: MorseDiagram, old: OrientedDiagram, level_map: dict[int, int]) -> OrientedDiagram:
    """Orient ``new`` so that its slices listed in ``level_map`` (new -> old)
    carry the same directions as in ``old``.  Closed components are flipped
    as needed.
    """
    old_table = old.direction_table()
    first = orient(new)
    closed = [c for c in range(len(first.components)) if c != first.knotoid_component]
    for r in range(len(closed) + 1):
        for flips in itertools.combinations(closed, r):
            od = orient(new, flip=flips)
            table = od.direction_table()
            if all(table[nl] == old_table[ol] for nl, ol in level_map.items()):
                return od
    raise ValueError("no orientation of the new diagram matches the old one")


def skein_triple(d, index: int) -> tuple[OrientedDiagram, OrientedDiagram, OrientedDiagram]:
    """(K+, K-, K0) differing at crossing event ``index``; K0 is the oriented smoothing."""
    base, od = _split(d)
    e = base.events[index]
    if not e.kind.is_crossing:
        raise ValueError(f"event {index} is not a crossing")
    flips = _flips_of(od)
    other = Kind.XN if e.kind is Kind.XP else Kind.XP
    swapped = base.replace(base.events[:index] + (MorseEvent(other, e.pos),) + base.events[index + 1:])
    od_other = orient(swapped, flip=flips)
    sign = od.crossing_sign(index)
    kplus, kminus = (od, od_other) if sign > 0 else (od_other, od)
    dl, dr = od.crossing_strands(index)
    n_levels = len(base.events) + 1
    if dl == dr:
        events0 = base.events[:index] + base.events[index + 1:]
        level_map = {k: k for k in range(index + 1)}
        level_map.update({k: k + 1 for k in range(index + 1, n_levels - 1)})
    else:
        events0 = base.events[:index] + (MorseEvent(Kind.CAP, e.pos), MorseEvent(Kind.CUP, e.pos)) + base.events[index + 1:]
        level_map = {k: k for k in range(index + 1)}
        level_map.update({k: k - 1 for k in range(index + 2, n_levels + 1)})
    k0 = orient_like(MorseDiagram(events0), od, level_map)
    return kplus, kminus, k0


def _flips_of(od: OrientedDiagram) -> tuple[int, ...]:
    """Closed components whose direction differs from the default."""
    default = orient(od.base)
    return tuple(
        c
        for c, segs in enumerate(od.components)
        if c != od.knotoid_component and od.seg_dir[segs[0]] != default.seg_dir[segs[0]]
    )


def skein_check_alexander(kplus, kminus, k0) -> bool:
    """nabla(K+) - nabla(K-) = (q - q^-1) nabla(K0), entrywise on normalized matrices."""
    a, b, c = (alexander(x).normalized.matrix for x in (kplus, kminus, k0))
    z = poly_parse("q - q^-1")
    return all(a[i][j] - b[i][j] == z * c[i][j] for i in range(2) for j in range(2))


def skein_check_homflypt(kplus, kminus, k0, n: int, regular: bool = False) -> bool:
    """q^(n+1) P(K+) - q^(-n-1) P(K-) = (q - q^-1) P(K0) entrywise.

    With ``regular`` the unnormalized form <K+> - <K-> = (q - q^-1) <K0> is
    checked instead.
    """
    z = poly_parse("q - q^-1")
    if regular:
        a, b, c = (homflypt(x, n).raw.matrix for x in (kplus, kminus, k0))
        lhs_a, lhs_b = ONE, ONE
    else:
        a, b, c = (homflypt(x, n).normalized.matrix for x in (kplus, kminus, k0))
        lhs_a, lhs_b = var("q", n + 1), var("q", -(n + 1))
    size = len(a)
    return all(lhs_a * a[i][j] - lhs_b * b[i][j] == z * c[i][j] for i in range(size) for j in range(size))
