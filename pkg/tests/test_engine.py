import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import corpus, diagram
from knotoid.diagram import MorseDiagram, orient
from knotoid.engine import (
    OracleBoundExceeded,
    contract,
    contract_fragment,
    enumerate_oracle,
    functoriality_check,
    matmul,
)
from knotoid.models import model_by_name
from knotoid.scalar import ONE, ZERO, poly_parse
from strategies import closed_words, diagrams, knotoid_words

MODELS = ["bracket", "binary", "alexander", "sawollek", "homflypt:1"]


@settings(max_examples=30, deadline=None)
@given(st.one_of(knotoid_words(max_crossings=4, max_events=10), closed_words(max_crossings=3, max_events=8)),
       st.sampled_from(MODELS))
def test_contraction_matches_oracle(d, name):
    model = model_by_name(name)
    try:
        want = enumerate_oracle(d, model, max_slots=30)
    except OracleBoundExceeded:
        return
    assert contract(d, model).matrix == want.matrix


def test_oracle_bound():
    with pytest.raises(OracleBoundExceeded):
        enumerate_oracle(diagram("long-figure-eight"), model_by_name("homflypt:2"), max_slots=3)


@settings(max_examples=40, deadline=None)
@given(diagrams, st.sampled_from(MODELS), st.data())
def test_functoriality_on_random_cuts(d, name, data):
    cut = data.draw(st.integers(0, len(d)))
    lower = MorseDiagram.fragment_of(d.events[:cut], 0)
    upper = MorseDiagram.fragment_of(d.events[cut:], lower.top_width)
    assert functoriality_check(lower, upper, model_by_name(name))


def test_circle_values():
    assert contract(diagram("circle"), model_by_name("bracket")).matrix == [[poly_parse("-A^2 - A^-2")]]
    assert contract(diagram("circle"), model_by_name("binary")).matrix == [[poly_parse("2")]]
    assert contract(diagram("circle"), model_by_name("alexander")).matrix == [[ZERO]]
    assert contract(diagram("circle"), model_by_name("homflypt:1")).matrix == [[poly_parse("q + q^-1")]]


def test_trivial_knotoid_is_identity():
    for name in MODELS:
        m = contract(diagram("trivial"), model_by_name(name)).matrix
        assert all(m[a][b] == (ONE if a == b else ZERO) for a in range(len(m)) for b in range(len(m)))


def test_fragment_matrix_of_crossing_is_r():
    model = model_by_name("bracket")
    frag = MorseDiagram.fragment_of([("xp", 0)], 2)
    sparse = contract_fragment(frag, model)
    for (k, l, i, j), x in model.R.items():
        assert sparse[(k, l)][(i, j)] == x


def test_matmul_identity():
    m = [[poly_parse("A"), ZERO], [ONE, poly_parse("A^-1")]]
    eye = [[ONE, ZERO], [ZERO, ONE]]
    assert matmul(m, eye) == m and matmul(eye, m) == m


def test_result_metadata():
    r = contract(orient(diagram("leg-down")), model_by_name("bracket"))
    assert r.pattern == (-1, 1)
    assert r.is_antidiagonal()
    r = contract(diagram("loop-leg"), model_by_name("bracket"))
    assert r.is_diagonal()


def test_closed_contraction_is_scalar():
    for d in corpus().values():
        if d.is_closed:
            assert contract(d, model_by_name("bracket")).is_scalar
