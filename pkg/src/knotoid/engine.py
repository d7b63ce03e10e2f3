"""Partition-function contraction, the brute-force oracle, and model checks.

Conventions used throughout:

* A crossing tensor ``T[(k, l, i, j)]`` maps inputs ``(i, j)`` (bottom-left,
  bottom-right) to outputs ``(k, l)`` (top-left, top-right).
* A cup matrix ``cup[a][b]`` creates labels ``a`` (left) and ``b`` (right);
  a cap matrix ``cap[a][b]`` consumes them.
* Oriented models store one cup and one cap matrix per direction pair of
  their legs, and the upward parallel crossing tensors ``R`` and ``Rbar``.
  Other direction patterns are obtained by twisting (see
  :meth:`QuantumModel.crossing`).
* The value of a knotoid diagram is the matrix ``Z[a][b]`` where ``a`` is the
  label at the lower endpoint and ``b`` the label at the upper one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .diagram import DOWN, UP, Kind, MorseDiagram, OrientedDiagram, orient
from .scalar import ONE, ZERO, LaurentPoly

__all__ = [
    "QuantumModel",
    "InvariantResult",
    "Check",
    "ModelReport",
    "OracleBoundExceeded",
    "contract",
    "contract_fragment",
    "enumerate_oracle",
    "verify_model",
    "functoriality_check",
    "matmul",
    "identity",
]

Matrix = list  # list[list[LaurentPoly]]
Tensor = dict  # (k, l, i, j) -> LaurentPoly


def identity(n: int) -> Matrix:
    return [[ONE if a == b else ZERO for b in range(n)] for a in range(n)]


def matmul(x: Matrix, y: Matrix) -> Matrix:
    rows, inner, cols = len(x), len(y), len(y[0]) if y else 0
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            acc = ZERO
            for k in range(inner):
                if x[r][k] and y[k][c]:
                    acc = acc + x[r][k] * y[k][c]
            row.append(acc)
        out.append(row)
    return out


def _tensor_to_moves(t: Tensor, n: int) -> dict:
    moves: dict = {}
    for (k, l, i, j), w in t.items():
        if w:
            moves.setdefault((i, j), []).append(((k, l), w))
    return moves


@dataclass
class QuantumModel:
    """Index set size plus cup/cap/crossing data.

    For unoriented models ``cups`` and ``caps`` hold a single matrix under the
    key ``None``; for oriented ones they are keyed by the leg directions
    ``(left, right)``.
    """

    name: str
    n: int
    cups: dict
    caps: dict
    R: Tensor
    Rbar: Tensor
    oriented: bool = False
    labels: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.labels:
            self.labels = tuple(range(self.n))

    # --- matrix access ----------------------------------------------------
    def cup(self, dirs: tuple[int, int] | None = None) -> Matrix:
        return self.cups[dirs if self.oriented else None]

    def cap(self, dirs: tuple[int, int] | None = None) -> Matrix:
        return self.caps[dirs if self.oriented else None]

    def base_tensor(self, kind: Kind) -> Tensor:
        return self.R if kind is Kind.XP else self.Rbar

    def crossing(self, kind: Kind, dirs: tuple[int, int] = (UP, UP)) -> Tensor:
        """Crossing tensor for the given input directions.

        Non-upward patterns of oriented models come from twisting: the
        crossing is rewritten as ``cup, crossing', cap`` around an inner
        crossing of opposite kind (see :func:`twist_word`).
        """
        if not self.oriented or dirs == (UP, UP):
            return self.base_tensor(kind)
        key = (kind, dirs)
        if key not in self._cache:
            self._cache[key] = twisted_tensor(self, kind, dirs, _twist_side(dirs))
        return self._cache[key]

    def crossing_moves(self, kind: Kind, dirs=(UP, UP)) -> dict:
        key = ("moves", kind, dirs if self.oriented else None)
        if key not in self._cache:
            self._cache[key] = _tensor_to_moves(self.crossing(kind, dirs), self.n)
        return self._cache[key]

    def with_tensor(self, R: Tensor | None = None, Rbar: Tensor | None = None, name: str | None = None) -> "QuantumModel":
        """A copy with replaced crossing tensors (used to corrupt models in tests)."""
        return QuantumModel(
            name or self.name,
            self.n,
            dict(self.cups),
            dict(self.caps),
            dict(R if R is not None else self.R),
            dict(Rbar if Rbar is not None else self.Rbar),
            self.oriented,
            self.labels,
        )


def twist_word(kind: Kind, side: str) -> list[tuple[Kind, int]]:
    """Three-event word on strands 0..1 equal to a crossing of ``kind``.

    ``left`` hooks the right input strand over the top and down the left;
    ``right`` is its mirror.  The inner crossing has the opposite kind.
    """
    inner = Kind.XN if kind is Kind.XP else Kind.XP
    if side == "left":
        return [(Kind.CUP, 0), (inner, 1), (Kind.CAP, 2)]
    return [(Kind.CUP, 2), (inner, 1), (Kind.CAP, 0)]


def twisted_tensor(model: QuantumModel, kind: Kind, dirs: tuple[int, int], side: str) -> Tensor:
    frag = MorseDiagram(twist_word(kind, side), bottom_width=2)
    mat = contract_fragment(frag, model, dirs)
    out: Tensor = {}
    for (k, l), row in mat.items():
        for (i, j), w in row.items():
            if w:
                out[(k, l, i, j)] = w
    return out


# --- results --------------------------------------------------------------------

@dataclass
class InvariantResult:
    matrix: Matrix
    model: str = ""
    pattern: tuple | None = None
    scalar: LaurentPoly | None = None
    extra: dict = field(default_factory=dict)

    @property
    def is_scalar(self) -> bool:
        return len(self.matrix) == 1 and len(self.matrix[0]) == 1 and self.pattern is None

    def entry(self, a: int, b: int) -> LaurentPoly:
        return self.matrix[a][b]

    def trace(self) -> LaurentPoly:
        acc = ZERO
        for k in range(min(len(self.matrix), len(self.matrix[0]))):
            acc = acc + self.matrix[k][k]
        return acc

    def is_diagonal(self) -> bool:
        return all(not self.matrix[a][b] for a in range(len(self.matrix)) for b in range(len(self.matrix[a])) if a != b)

    def is_antidiagonal(self) -> bool:
        n = len(self.matrix)
        return all(not self.matrix[a][b] for a in range(n) for b in range(n) if a + b != n - 1)

    def map(self, f: Callable[[LaurentPoly], LaurentPoly]) -> "InvariantResult":
        return InvariantResult([[f(x) for x in row] for row in self.matrix], self.model, self.pattern, None, dict(self.extra))

    def __eq__(self, other) -> bool:
        if isinstance(other, InvariantResult):
            return self.matrix == other.matrix
        return NotImplemented

    def rows(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.matrix]

    def __str__(self) -> str:
        return "\n".join("[ " + ", ".join(r) + " ]" for r in self.rows())


# --- frontier contraction ----------------------------------------------------------

def _oriented(d) -> OrientedDiagram:
    return d if isinstance(d, OrientedDiagram) else orient(d)


def _run(od: OrientedDiagram, model: QuantumModel, initial: dict) -> dict:
    """Sweep the word bottom to top.

    States are keyed by ``(tag, labels)``; ``tag`` collects labels fixed at
    the bottom boundary and at endpoint dots, in order of height.
    """
    states = initial
    n = model.n
    table = od.direction_table()
    peak = len(states)
    for t, e in enumerate(od.events):
        p = e.pos
        k = e.kind
        new: dict = {}

        def add(key, amp):
            prev = new.get(key)
            s = amp if prev is None else prev + amp
            if s:
                new[key] = s
            elif prev is not None:
                del new[key]

        if k in (Kind.LEG, Kind.HEAD_BOTTOM):
            for (tag, labels), amp in states.items():
                for x in range(n):
                    add((tag + (x,), labels[:p] + (x,) + labels[p:]), amp)
        elif k in (Kind.HEAD, Kind.LEG_TOP):
            for (tag, labels), amp in states.items():
                add((tag + (labels[p],), labels[:p] + labels[p + 1:]), amp)
        elif k is Kind.CUP:
            dirs = (table[t + 1][p], table[t + 1][p + 1])
            m = model.cup(dirs)
            pairs = [((a, b), m[a][b]) for a in range(n) for b in range(n) if m[a][b]]
            for (tag, labels), amp in states.items():
                for (a, b), w in pairs:
                    add((tag, labels[:p] + (a, b) + labels[p:]), amp * w)
        elif k is Kind.CAP:
            dirs = (table[t][p], table[t][p + 1])
            m = model.cap(dirs)
            for (tag, labels), amp in states.items():
                w = m[labels[p]][labels[p + 1]]
                if w:
                    add((tag, labels[:p] + labels[p + 2:]), amp * w)
        else:
            dirs = (table[t][p], table[t][p + 1])
            moves = model.crossing_moves(k, dirs)
            for (tag, labels), amp in states.items():
                for (a, b), w in moves.get((labels[p], labels[p + 1]), ()):
                    add((tag, labels[:p] + (a, b) + labels[p + 2:]), amp * w)
        states = new
        peak = max(peak, len(states))
    _run.last_peak = peak
    return states


_run.last_peak = 0


def contract(d, model: QuantumModel, flip=()) -> InvariantResult:
    """Reduced partition function of a closed or knotoid diagram."""
    od = d if isinstance(d, OrientedDiagram) else orient(d, flip=flip)
    if od.base.fragment:
        raise ValueError("use contract_fragment for tangle fragments")
    states = _run(od, model, {((), ()): ONE})
    pattern = od.endpoint_pattern()
    if pattern is None:
        return InvariantResult([[states.get(((), ()), ZERO)]], model.name, None)
    n = model.n
    mat = [[states.get(((a, b), ()), ZERO) for b in range(n)] for a in range(n)]
    return InvariantResult(mat, model.name, pattern)


def contract_fragment(
    d: MorseDiagram,
    model: QuantumModel,
    bottom_dirs: Sequence[int] | None = None,
    top_dirs: Sequence[int] | None = None,
) -> dict:
    """Matrix of a tangle fragment as ``{out_labels: {in_labels: value}}``.

    ``bottom_dirs`` orients the input strands (default all Up); ``top_dirs``
    pins arcs that only meet the top boundary.
    """
    if bottom_dirs is None:
        bottom_dirs = (UP,) * d.bottom_width
    od = orient(d, bottom_dirs=tuple(bottom_dirs), top_dirs=None if top_dirs is None else tuple(top_dirs))
    w = d.bottom_width
    init = {(inp, inp): ONE for inp in itertools.product(range(model.n), repeat=w)}
    states = _run(od, model, init)
    out: dict = {}
    for (tag, labels), amp in states.items():
        out.setdefault(labels, {})[tag] = amp
    return out


def fragment_matrix(d: MorseDiagram, model: QuantumModel, bottom_dirs=None, top_dirs=None) -> Matrix:
    """Dense ``[out][in]`` matrix over lexicographically ordered label tuples."""
    sparse = contract_fragment(d, model, bottom_dirs, top_dirs)
    ins = list(itertools.product(range(model.n), repeat=d.bottom_width))
    outs = list(itertools.product(range(model.n), repeat=d.top_width))
    return [[sparse.get(o, {}).get(i, ZERO) for i in ins] for o in outs]


# --- brute-force oracle ---------------------------------------------------------

class OracleBoundExceeded(ValueError):
    pass


def _twist_side(dirs: tuple[int, int]) -> str:
    return "left" if dirs[0] == UP or dirs == (DOWN, DOWN) else "right"


def _oracle_crossing(model: QuantumModel, kind: Kind, dirs, k, l, i, j) -> LaurentPoly:
    """One crossing entry, summing the twist's two internal labels by hand.

    Left twist: cup creates (k, x), the inner crossing maps (x, i) to (l, y),
    the cap eats (y, j).  Right twist: cup creates (x, l), the inner crossing
    maps (j, x) to (y, k), the cap eats (i, y).
    """
    if dirs == (UP, UP):
        return model.base_tensor(kind).get((k, l, i, j), ZERO)
    inner = Kind.XN if kind is Kind.XP else Kind.XP
    dl, dr = dirs
    acc = ZERO
    n = model.n
    if _twist_side(dirs) == "left":
        cup, cap = model.cup((dr, -dr)), model.cap((-dr, dr))
        for x in range(n):
            if not cup[k][x]:
                continue
            for y in range(n):
                if not cap[y][j]:
                    continue
                w = _oracle_crossing(model, inner, (-dr, dl), l, y, x, i)
                if w:
                    acc = acc + cup[k][x] * w * cap[y][j]
    else:
        cup, cap = model.cup((-dl, dl)), model.cap((dl, -dl))
        for x in range(n):
            if not cup[x][l]:
                continue
            for y in range(n):
                if not cap[i][y]:
                    continue
                w = _oracle_crossing(model, inner, (dr, -dl), y, k, j, x)
                if w:
                    acc = acc + cup[x][l] * w * cap[i][y]
    return acc


def enumerate_oracle(d, model: QuantumModel, max_slots: int = 24, flip=()) -> InvariantResult:
    """Sum over every label assignment to every strand segment.

    Non-upward crossings of oriented models are summed through their twist
    words entry by entry, so only the base tensors are consulted.  No partial
    sums are merged: each complete assignment is a separate product.
    """
    od = d if isinstance(d, OrientedDiagram) else orient(d, flip=flip)
    if od.base.fragment:
        raise ValueError("oracle works on closed or knotoid diagrams")
    nseg = len(od.segments)
    if nseg > max_slots:
        raise OracleBoundExceeded(f"{nseg} label slots exceed the oracle bound {max_slots}; use contract")
    n = model.n
    events = od.events
    seg_dir = od.seg_dir
    label = [-1] * nseg
    dots = [t for t, e in enumerate(events) if e.kind.is_dot]
    total: dict = {}

    def weight(t: int) -> LaurentPoly | None:
        e = events[t]
        ins, outs = od.event_in[t], od.event_out[t]
        k = e.kind
        if k is Kind.CUP:
            return model.cup((seg_dir[outs[0]], seg_dir[outs[1]]))[label[outs[0]]][label[outs[1]]]
        if k is Kind.CAP:
            return model.cap((seg_dir[ins[0]], seg_dir[ins[1]]))[label[ins[0]]][label[ins[1]]]
        if k.is_crossing:
            dirs = (seg_dir[ins[0]], seg_dir[ins[1]]) if model.oriented else (UP, UP)
            return _oracle_crossing(model, k, dirs, label[outs[0]], label[outs[1]], label[ins[0]], label[ins[1]])
        return ONE

    def visit(t: int, acc: LaurentPoly):
        if t == len(events):
            tag = tuple(label[(od.event_out[q] or od.event_in[q])[0]] for q in dots)
            prev = total.get(tag)
            total[tag] = acc if prev is None else prev + acc
            return
        outs = od.event_out[t]
        for combo in itertools.product(range(n), repeat=len(outs)):
            for s, x in zip(outs, combo):
                label[s] = x
            w = weight(t)
            if w:
                visit(t + 1, acc * w)
        for s in outs:
            label[s] = -1

    visit(0, ONE)
    pattern = od.endpoint_pattern()
    if pattern is None:
        return InvariantResult([[total.get((), ZERO)]], model.name, None)
    mat = [[total.get((a, b), ZERO) for b in range(n)] for a in range(n)]
    return InvariantResult(mat, model.name, pattern)


# --- model verification ---------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" witness={self.witness}" if self.witness is not None else ""
        return f"{status} {self.name}{extra}{(' ' + self.detail) if self.detail else ''}"


@dataclass
class ModelReport:
    model: str
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.checks)


def _compare_sparse(x: dict, y: dict) -> tuple | None:
    keys = set()
    for o, row in itertools.chain(x.items(), y.items()):
        for i in row:
            keys.add((o, i))
    for o, i in sorted(keys):
        if x.get(o, {}).get(i, ZERO) != y.get(o, {}).get(i, ZERO):
            return (o, i)
    return None


def _identity_sparse(n: int, width: int) -> dict:
    return {t: {t: ONE} for t in itertools.product(range(n), repeat=width)}


def _fragment_eq(model, w1, w2, width, dirs) -> tuple | None:
    try:
        a = contract_fragment(MorseDiagram(w1, bottom_width=width, fragment=True), model, dirs)
        b = contract_fragment(MorseDiagram(w2, bottom_width=width, fragment=True), model, dirs)
    except ValueError:
        return None  # directions incompatible with this word
    return _compare_sparse(a, b)


def _fragment_is_identity(model, word, width, dirs) -> tuple | None:
    frag = MorseDiagram(word, bottom_width=width, fragment=True)
    a = contract_fragment(frag, model, dirs)
    return _compare_sparse(a, _identity_sparse(model.n, width))


def _dir_patterns(width: int, oriented: bool):
    if not oriented:
        return [(UP,) * width]
    return list(itertools.product((UP, DOWN), repeat=width))


def _product_identity(model: QuantumModel, first: Tensor, second: Tensor) -> tuple | None:
    n = model.n
    for k, l, i, j in itertools.product(range(n), repeat=4):
        acc = ZERO
        for a, b in itertools.product(range(n), repeat=2):
            x = second.get((k, l, a, b))
            y = first.get((a, b, i, j))
            if x and y:
                acc = acc + x * y
        if acc != (ONE if (k, l) == (i, j) else ZERO):
            return (k, l, i, j)
    return None


def _ybe_witness(model: QuantumModel, kind: Kind, dirs) -> tuple | None:
    """Three-strand braid relation as two fragment contractions."""
    lhs = [(kind, 0), (kind, 1), (kind, 0)]
    rhs = [(kind, 1), (kind, 0), (kind, 1)]
    return _fragment_eq(model, lhs, rhs, 3, dirs)


def verify_model(model: QuantumModel) -> ModelReport:
    """Check the identities that make the partition function a Morse isotopy invariant."""
    checks: list[Check] = []

    w = _product_identity(model, model.R, model.Rbar)
    w2 = _product_identity(model, model.Rbar, model.R)
    checks.append(Check("R*Rbar = I", w is None and w2 is None, w or w2))

    for kind, label in ((Kind.XP, "R"), (Kind.XN, "Rbar")):
        wit = _ybe_witness(model, kind, (UP, UP, UP))
        checks.append(Check(f"Yang-Baxter {label}", wit is None, wit))

    # mixed-sign braid relations (sigma1 sigma2 sigma1^-1 type)
    bad = None
    for a, b, c in itertools.product((Kind.XP, Kind.XN), repeat=3):
        if a == c and a != b:
            continue
        wit = _fragment_eq(model, [(a, 0), (b, 1), (c, 0)], [(c, 1), (b, 0), (a, 1)], 3, (UP, UP, UP))
        if wit is not None:
            bad = (a.value, b.value, c.value) + wit
            break
    checks.append(Check("Reidemeister III (mixed signs)", bad is None, bad))

    # zigzags: cup/cap pairs are mutually inverse
    bad = None
    for dirs in _dir_patterns(1, model.oriented):
        for word in ([(Kind.CUP, 1), (Kind.CAP, 0)], [(Kind.CUP, 0), (Kind.CAP, 1)]):
            wit = _fragment_is_identity(model, word, 1, dirs)
            if wit is not None:
                bad = (dirs, word[0][1]) + wit
    checks.append(Check("cup/cap inverse (min-max)", bad is None, bad))

    # slides of a cup/cap past a crossing
    from .moves import _slide_pairs

    bad = None
    for v, (a, b) in enumerate(_slide_pairs(0)):
        width = 1 if a[0].kind is Kind.CUP else 3
        for dirs in _dir_patterns(width, model.oriented):
            wit = _fragment_eq(model, [(e.kind, e.pos) for e in a], [(e.kind, e.pos) for e in b], width, dirs)
            if wit is not None:
                bad = (v, dirs) + wit
    checks.append(Check("slide identities", bad is None, bad))

    # parallel RII with both strands down and all YBE patterns (oriented)
    if model.oriented:
        bad = None
        for dirs in ((UP, DOWN), (DOWN, UP)):
            for word in ([(Kind.XP, 0), (Kind.XN, 0)], [(Kind.XN, 0), (Kind.XP, 0)]):
                wit = _fragment_is_identity(model, word, 2, dirs)
                if wit is not None:
                    bad = (dirs, word[0][0].value) + wit
        checks.append(Check("anti-parallel Reidemeister II", bad is None, bad))

        bad = None
        for kind in (Kind.XP, Kind.XN):
            for dirs in ((UP, DOWN), (DOWN, UP), (DOWN, DOWN)):
                canon = model.crossing(kind, dirs)
                other_side = "right" if _twist_side(dirs) == "left" else "left"
                alt = twisted_tensor(model, kind, dirs, other_side)
                keys = set(canon) | set(alt)
                for key in sorted(keys):
                    if canon.get(key, ZERO) != alt.get(key, ZERO):
                        bad = (kind.value, dirs) + key
                        break
        checks.append(Check("twist conversion (left = right)", bad is None, bad))

        bad = None
        vals = model.labels
        for (k, l, i, j), wgt in model.R.items():
            if wgt and vals[k] + vals[l] != vals[i] + vals[j]:
                bad = (k, l, i, j)
                break
        checks.append(Check("spin-preserving R", bad is None, bad))

        bad = None
        for dirs in _dir_patterns(3, True):
            for kind in (Kind.XP, Kind.XN):
                wit = _ybe_witness(model, kind, dirs)
                if wit is not None:
                    bad = (kind.value, dirs) + wit
                    break
            if bad:
                break
        checks.append(Check("Reidemeister III, all orientations", bad is None, bad))

        bad = None
        for dirs in _dir_patterns(2, True):
            for word in ([(Kind.XP, 0), (Kind.XN, 0)], [(Kind.XN, 0), (Kind.XP, 0)]):
                wit = _fragment_is_identity(model, word, 2, dirs)
                if wit is not None:
                    bad = (dirs, word[0][0].value) + wit
        checks.append(Check("Reidemeister II, all orientations", bad is None, bad))
    return ModelReport(model.name, checks)


def functoriality_check(d1: MorseDiagram, d2: MorseDiagram, model: QuantumModel, bottom_dirs=None) -> bool:
    """Contracting ``d1`` then ``d2`` equals the product of their matrices.

    The stacked word is oriented once and both halves inherit its boundary
    directions, so arcs crossing the cut agree on either side.
    """
    if d1.top_width != d2.bottom_width:
        raise ValueError(f"width mismatch: {d1.top_width} != {d2.bottom_width}")
    whole = MorseDiagram(list(d1.events) + list(d2.events), bottom_width=d1.bottom_width, fragment=True)
    if bottom_dirs is None:
        bottom_dirs = (UP,) * d1.bottom_width
    od = orient(whole, bottom_dirs=tuple(bottom_dirs))
    mid = tuple(od.seg_dir[s] for s in od.levels[len(d1.events)])
    top = od.top_dirs()
    m1 = fragment_matrix(d1, model, bottom_dirs, mid)
    m2 = fragment_matrix(d2, model, mid, top)
    m12 = fragment_matrix(whole, model, bottom_dirs, top)
    return matmul(m2, m1) == m12
