"""Alexander and Sawollek values on knot-type and proper knotoids.

On a long knot the trace of W only depends on the ratio s^-1*t and
reproduces the knot's Alexander polynomial; proper knotoids also see s*t.
"""

from knotoid.cli import parse_morse
from knotoid.diagram import all_crossings_even
from knotoid.invariants import alexander, sawollek

WORDS = {
    "trivial": "leg 0; head 0",
    "long trefoil": "leg 0; cup 1; xp 0; xp 0; xp 0; cap 1; head 0",
    "long figure-eight": "leg 0; cup 1; cup 2; xp 1; xn 0; xp 1; xn 0; cap 2; cap 1; head 0",
    "leg in a loop": "cup 0; leg 1; xp 0; xp 0; head 0; cap 0",
    "head in a loop": "leg 0; cup 1; xp 0; xp 0; head 1; cap 0",
}

for name, word in WORDS.items():
    d = parse_morse(word, name)
    kind = "even" if all_crossings_even(d) else "odd "
    print(f"{name:18} {kind}  Alexander {alexander(d).planar.scalar}")
    print(f"{'':18}       tr W      {sawollek(d).scalar}")
