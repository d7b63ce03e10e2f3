"""Recompute the worked examples shipped with the package."""

from knotoid.cli import load_figure
from knotoid.diagram import rotation_number, writhe
from knotoid.invariants import (
    alexander,
    binary_bracket,
    bracket_matrix,
    homflypt,
    normalized_binary,
    rotational_bracket,
)


def show(label, value):
    print(f"{label:38} {value}")


fig9 = load_figure("fig9")
m = bracket_matrix(fig9).matrix
show("fig9 bracket matrix", f"diag({m[0][0]}, {m[1][1]})")
show("fig9 rotational bracket", rotational_bracket(fig9))
show("fig9 rotation number", rotation_number(fig9))
show("fig17 binary bracket", binary_bracket(load_figure("fig17")))

fig24 = load_figure("fig24")
show("fig24 binary bracket / writhe", f"{binary_bracket(fig24)}  (w = {writhe(fig24)})")
show("fig24 normalized", normalized_binary(fig24))
show("fig25 normalized", normalized_binary(load_figure("fig25")))

a = alexander(load_figure("fig22"))
show("fig22 Alexander state sum", f"diag({a.raw.matrix[0][0]}, {a.raw.matrix[1][1]})")
show("fig22 Alexander polynomial", a.scalar)
show("fig23 Alexander polynomial", alexander(load_figure("fig23")).scalar)

for n in (1, 2):
    h = homflypt(load_figure("homflypt-states"), n).raw.matrix
    show(f"homflypt states example, n={n}", ", ".join(str(h[k][k]) for k in range(len(h))))
