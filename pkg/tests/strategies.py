"""Hypothesis strategies for scalars and Morse words."""


from hypothesis import strategies as st

from knotoid.diagram import E, MorseDiagram
from knotoid.scalar import CycScalar, LaurentPoly, VARIABLES

small_ints = st.integers(-4, 4)
coords = st.one_of(small_ints, st.fractions(-3, 3, max_denominator=3))
cyc = st.builds(CycScalar, coords, coords, coords, coords)
nonzero_cyc = cyc.filter(lambda c: not c.is_zero())


@st.composite
def laurent(draw, variables=VARIABLES, max_terms=4, half=True):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        # exponents are stored doubled
        exps = tuple(draw(st.integers(-6, 6)) if name in variables else 0 for name in VARIABLES)
        if not half:
            exps = tuple(2 * (e // 2) for e in exps)
        terms[exps] = draw(cyc)
    return LaurentPoly(terms)


@st.composite
def knotoid_words(draw, max_crossings=5, max_width=6, max_events=14):
    """A random valid knotoid word; strands are capped off from the left at the end."""
    events = [E("leg", 0)]
    width, crossings = 1, 0
    for _ in range(draw(st.integers(0, max_events))):
        options = []
        if width + 2 <= max_width:
            options.append("cup")
        if width >= 3:
            options.append("cap")
        if width >= 2 and crossings < max_crossings:
            options += ["xp", "xn"]
        if not options:
            break
        kind = draw(st.sampled_from(options))
        if kind == "cup":
            events.append(E("cup", draw(st.integers(0, width))))
            width += 2
        elif kind == "cap":
            events.append(E("cap", draw(st.integers(0, width - 2))))
            width -= 2
        else:
            events.append(E(kind, draw(st.integers(0, width - 2))))
            crossings += 1
    while width > 1:
        events.append(E("cap", draw(st.integers(0, width - 2))))
        width -= 2
    events.append(E("head", 0))
    return MorseDiagram(events)


@st.composite
def closed_words(draw, max_crossings=4, max_width=6, max_events=12):
    events = [E("cup", 0)]
    width, crossings = 2, 0
    for _ in range(draw(st.integers(0, max_events))):
        options = []
        if width + 2 <= max_width:
            options.append("cup")
        if width >= 4:
            options.append("cap")
        if crossings < max_crossings:
            options += ["xp", "xn"]
        kind = draw(st.sampled_from(options))
        if kind == "cup":
            events.append(E("cup", draw(st.integers(0, width))))
            width += 2
        elif kind == "cap":
            events.append(E("cap", draw(st.integers(0, width - 2))))
            width -= 2
        else:
            events.append(E(kind, draw(st.integers(0, width - 2))))
            crossings += 1
    while width > 0:
        events.append(E("cap", draw(st.integers(0, width - 2))))
        width -= 2
    return MorseDiagram(events)


diagrams = st.one_of(knotoid_words(), closed_words())

