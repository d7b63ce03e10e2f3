"""The five concrete quantum models.

Matrices are written as 4x4 grids whose row is the output pair ``(k, l)``
and whose column is the input pair ``(i, j)``, both in the order 00, 01, 10,
11 (for Homflypt the labels are ordered by value).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .diagram import DOWN, UP
from .engine import QuantumModel, Tensor
from .scalar import ONE, ZERO, CycScalar, LaurentPoly, poly_parse, var

__all__ = [
    "bracket_model",
    "binary_model",
    "alexander_model",
    "sawollek_model",
    "sawollek_burau_R",
    "homflypt_model",
    "model_by_name",
    "MODEL_NAMES",
    "grid_to_tensor",
    "tensor_to_grid",
]

MODEL_NAMES = ("bracket", "binary", "alexander", "sawollek", "homflypt:<n>")


def _p(text: str) -> LaurentPoly:
    return poly_parse(text)


def grid_to_tensor(grid, n: int) -> Tensor:
    """Convert an ``n^2 x n^2`` grid (rows = outputs) to a sparse tensor."""
    out: Tensor = {}
    for r, row in enumerate(grid):
        k, l = divmod(r, n)
        for c, x in enumerate(row):
            i, j = divmod(c, n)
            x = _p(x) if isinstance(x, str) else LaurentPoly.const(x) if isinstance(x, int) else x
            if x:
                out[(k, l, i, j)] = x
    return out


def tensor_to_grid(t: Tensor, n: int) -> list[list[LaurentPoly]]:
    return [[t.get((r // n, r % n, c // n, c % n), ZERO) for c in range(n * n)] for r in range(n * n)]


def _diag(values) -> list[list[LaurentPoly]]:
    n = len(values)
    return [[values[a] if a == b else ZERO for b in range(n)] for a in range(n)]


def bracket_model() -> QuantumModel:
    m = [[ZERO, _p("w^2*A")], [_p("-w^2*A^-1"), ZERO]]
    R = grid_to_tensor(
        [
            ["A", 0, 0, 0],
            [0, 0, "A^-1", 0],
            [0, "A^-1", "A - A^-3", 0],
            [0, 0, 0, "A"],
        ],
        2,
    )
    Rbar = grid_to_tensor(
        [
            ["A^-1", 0, 0, 0],
            [0, "A^-1 - A^3", "A", 0],
            [0, "A", 0, 0],
            [0, 0, 0, "A^-1"],
        ],
        2,
    )
    return QuantumModel("bracket", 2, {None: m}, {None: m}, R, Rbar)


def binary_model() -> QuantumModel:
    eye = _diag([ONE, ONE])
    R = grid_to_tensor(
        [
            [0, 0, 0, "A^-1"],
            [0, "A", 0, 0],
            [0, 0, "A", 0],
            ["A^-1", 0, 0, 0],
        ],
        2,
    )
    Rbar = grid_to_tensor(
        [
            [0, 0, 0, "A"],
            [0, "A^-1", 0, 0],
            [0, 0, "A^-1", 0],
            ["A", 0, 0, 0],
        ],
        2,
    )
    return QuantumModel("binary", 2, {None: eye}, {None: eye}, R, Rbar)


def oriented_extrema(weight, n: int) -> tuple[dict, dict]:
    """Diagonal cups and caps from ``weight(sign, label_index)``.

    A cup or cap whose left leg points Down turns counterclockwise
    (sign +1); one whose left leg points Up turns clockwise (sign -1).
    """
    plus = _diag([weight(+1, a) for a in range(n)])
    minus = _diag([weight(-1, a) for a in range(n)])
    return {(DOWN, UP): plus, (UP, DOWN): minus}, {(DOWN, UP): plus, (UP, DOWN): minus}


def _alexander_weight(sign: int, a: int) -> LaurentPoly:
    # label index 0 is '+', index 1 is '-'.  A counterclockwise extremum on a
    # '+' strand carries sqrt(-i) = w^-1; this gauge reproduces the worked
    # Alexander examples (the other one is its complex conjugate).
    label = 1 if a == 0 else -1
    return LaurentPoly.const(CycScalar.root(-sign * label))


def alexander_model() -> QuantumModel:
    cups, caps = oriented_extrema(_alexander_weight, 2)
    R = grid_to_tensor(
        [
            ["q", 0, 0, 0],
            [0, "q - q^-1", 1, 0],
            [0, 1, 0, 0],
            [0, 0, 0, "-q^-1"],
        ],
        2,
    )
    Rbar = grid_to_tensor(
        [
            ["q^-1", 0, 0, 0],
            [0, 0, 1, 0],
            [0, 1, "q^-1 - q", 0],
            [0, 0, 0, "-q"],
        ],
        2,
    )
    return QuantumModel("alexander", 2, cups, caps, R, Rbar, oriented=True, labels=(1, -1))


def sawollek_burau_R() -> tuple[Tensor, Tensor]:
    """Exterior-power Burau matrices before rescaling, with s = sigma^2, t = tau^-2."""
    R = grid_to_tensor(
        [
            [1, 0, 0, 0],
            [0, "1 - s^2*t^-2", "s^2", 0],
            [0, "t^-2", 0, 0],
            [0, 0, 0, "-s^2*t^-2"],
        ],
        2,
    )
    Rinv = grid_to_tensor(
        [
            [1, 0, 0, 0],
            [0, 0, "t^2", 0],
            [0, "s^-2", "1 - s^-2*t^2", 0],
            [0, 0, 0, "-s^-2*t^2"],
        ],
        2,
    )
    return R, Rinv


def sawollek_model() -> QuantumModel:
    """Rescaled generalized-Burau model in sigma (``s``) and tau (``t``).

    Entry (01, 10) of R is sigma*tau: the rescaling of ``s`` by
    sigma^-1*tau gives sigma*tau, and only that value makes R*Rbar = I.
    """
    z = "(s^-1*t - s*t^-1)"
    cups, caps = oriented_extrema(_alexander_weight, 2)
    R = grid_to_tensor(
        [
            ["s^-1*t", 0, 0, 0],
            [0, z, "s*t", 0],
            [0, "s^-1*t^-1", 0, 0],
            [0, 0, 0, "-s*t^-1"],
        ],
        2,
    )
    Rbar = grid_to_tensor(
        [
            ["s*t^-1", 0, 0, 0],
            [0, 0, "s*t", 0],
            [0, "s^-1*t^-1", "-" + z, 0],
            [0, 0, 0, "-s^-1*t"],
        ],
        2,
    )
    return QuantumModel("sawollek", 2, cups, caps, R, Rbar, oriented=True, labels=(1, -1))


def homflypt_model(n: int) -> QuantumModel:
    """Model on the labels -n, -n+2, ..., n (ordered by value).

    R = (q - q^-1)[i > j] id + q [i = j] id + [i != j] swap on inputs (i, j).
    A signed extremum on a strand labelled ``a`` contributes q^(sign*a/2).
    """
    if n < 1:
        raise ValueError("homflypt needs n >= 1")
    values = tuple(range(-n, n + 1, 2))
    size = len(values)
    q = var("q")
    qq = _p("q - q^-1")
    R: Tensor = {}
    Rbar: Tensor = {}
    for i in range(size):
        for j in range(size):
            vi, vj = values[i], values[j]
            if vi == vj:
                R[(i, j, i, j)] = q
                Rbar[(i, j, i, j)] = q ** -1
            else:
                R[(j, i, i, j)] = ONE
                Rbar[(j, i, i, j)] = ONE
                if vi > vj:
                    R[(i, j, i, j)] = qq
                else:
                    Rbar[(i, j, i, j)] = -qq

    def weight(sign, a):
        return var("q", Fraction(sign * values[a], 2))

    cups, caps = oriented_extrema(weight, size)
    return QuantumModel(f"homflypt:{n}", size, cups, caps, R, Rbar, oriented=True, labels=values)


def model_by_name(name: str) -> QuantumModel:
    """Parse a CLI model id: bracket, binary, alexander, sawollek, homflypt:<n>."""
    name = name.strip().lower()
    simple = {
        "bracket": bracket_model,
        "binary": binary_model,
        "alexander": alexander_model,
        "sawollek": sawollek_model,
    }
    if name in simple:
        return simple[name]()
    m = re.fullmatch(r"homflypt:(\d+)", name)
    if m:
        return homflypt_model(int(m.group(1)))
    raise ValueError(f"unknown model {name!r}; expected one of {', '.join(MODEL_NAMES)}")
