"""Scramble a diagram with random Morse moves and watch the invariants stay put."""

import sys

from knotoid.cli import load_figure
from knotoid.diagram import orient
from knotoid.invariants import alexander, bracket_matrix, homflypt
from knotoid.moves import random_equivalent

name = sys.argv[1] if len(sys.argv) > 1 else "fig9"
d = orient(load_figure(name))
print("start:", d.base.word())
for seed in range(3):
    e = random_equivalent(d, 25, seed=seed, max_crossings=6, max_width=8)
    same = (
        bracket_matrix(e).matrix == bracket_matrix(d).matrix
        and alexander(e).raw.matrix == alexander(d).raw.matrix
        and homflypt(e, 2).raw.matrix == homflypt(d, 2).raw.matrix
    )
    print(f"seed {seed}: {len(e.base)} events, {e.base.n_crossings} crossings, invariants unchanged: {same}")
    print("   ", e.base.word())
