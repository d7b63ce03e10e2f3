"""The ``knotoid`` command line and the ``.morse`` text format.

A ``.morse`` file holds one event per line, bottom to top::

    # the trivial knotoid
    leg 0
    head 0

Tokens are ``leg head legtop headbot cup cap xp xn`` followed by a 0-based
position.  ``#`` starts a comment and blank lines are ignored.  Several
events may share a line when separated by ``;``, so ``leg 0; head 0`` is
also a valid file.

Exit codes: 0 success, 1 usage, 2 parse or validation failure, 3 model
verification failure, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .diagram import InvalidDiagram, Kind, MorseDiagram, MorseEvent, odd_writhe, orient, rotation_number, writhe
from .engine import OracleBoundExceeded, contract, enumerate_oracle, verify_model
from .invariants import (
    ConsistencyError,
    alexander,
    binary_bracket,
    bracket_matrix,
    homflypt,
    normalized_binary,
    rotational_bracket,
    sawollek,
)
from .models import model_by_name
from .moves import random_equivalent

__all__ = [
    "MorseSyntaxError",
    "DiagramFile",
    "parse_morse",
    "print_morse",
    "read_diagram",
    "load_figure",
    "figure_names",
    "compute",
    "main",
]

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MODEL, EXIT_CONSISTENCY = 0, 1, 2, 3, 4
ALL_MODELS = ("bracket", "binary", "alexander", "sawollek", "homflypt:1", "homflypt:2")


class MorseSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class DiagramFile:
    path: str
    diagram: MorseDiagram
    name: str | None
    source: str


def parse_morse(text: str, name: str | None = None) -> MorseDiagram:
    """Parse ``.morse`` text into a validated diagram; errors carry line numbers."""
    events: list[MorseEvent] = []
    lines: list[int] = []
    for n, raw in enumerate(text.splitlines(), start=1):
        for chunk in raw.split("#", 1)[0].split(";"):
            line = chunk.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise MorseSyntaxError(n, f"expected '<event> <position>', got {line!r}")
            token, pos = parts
            try:
                kind = Kind(token.lower())
            except ValueError:
                raise MorseSyntaxError(n, f"unknown event {token!r}") from None
            try:
                p = int(pos)
            except ValueError:
                raise MorseSyntaxError(n, f"position {pos!r} is not an integer") from None
            events.append(MorseEvent(kind, p))
            lines.append(n)
    try:
        return MorseDiagram(events, name=name)
    except InvalidDiagram as exc:
        idx = exc.violation.index
        line = lines[idx] if 0 <= idx < len(lines) else (lines[-1] if lines else 1)
        raise MorseSyntaxError(line, exc.violation.reason) from None


def print_morse(d: MorseDiagram) -> str:
    head = f"# {d.name}\n" if d.name else ""
    return head + "".join(f"{e.kind.value} {e.pos}\n" for e in d.events)


def figure_names() -> list[str]:
    files = resources.files("knotoid") / "data"
    return sorted(p.name[: -len(".morse")] for p in files.iterdir() if p.name.endswith(".morse"))


def load_figure(name: str) -> MorseDiagram:
    """A bundled diagram, e.g. ``load_figure("fig15")``."""
    stem = name[: -len(".morse")] if name.endswith(".morse") else name
    path = resources.files("knotoid") / "data" / f"{stem}.morse"
    return parse_morse(path.read_text(encoding="utf-8"), name=stem)


def read_diagram(path: str) -> DiagramFile:
    """Read a file; ``-`` is stdin, and a missing path falls back to a bundled figure."""
    if path == "-":
        text = sys.stdin.read()
        return DiagramFile(path, parse_morse(text, "stdin"), "stdin", text)
    p = Path(path)
    if not p.exists():
        stem = p.name[: -len(".morse")] if p.name.endswith(".morse") else p.name
        if stem in figure_names():
            d = load_figure(stem)
            return DiagramFile(path, d, stem, print_morse(d))
        raise FileNotFoundError(path)
    text = p.read_text(encoding="utf-8")
    return DiagramFile(path, parse_morse(text, p.stem), p.stem, text)


# --- computations --------------------------------------------------------------

def _rot_text(r: Fraction) -> str:
    return f"{int(2 * r)}/2"


def _strs(matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in matrix]


def compute(d: MorseDiagram, model: str, normalized: bool = False) -> dict:
    """One JSON record: diagram, model, matrix, scalar, writhe, odd_writhe, rotation."""
    od = orient(d)
    model = model.lower()
    scalar = None
    if model == "bracket":
        r = bracket_matrix(od)
        matrix = r.matrix
        scalar = r.scalar
    elif model == "rotbracket":
        scalar = rotational_bracket(od)
        matrix = [[scalar]]
    elif model == "binary":
        scalar = normalized_binary(od) if normalized else binary_bracket(od)
        matrix = [[scalar]]
    elif model == "alexander":
        r = alexander(od)
        matrix, scalar = r.normalized.matrix, r.scalar
    elif model == "sawollek":
        r = sawollek(od)
        matrix, scalar = r.normalized.matrix, r.scalar
    elif model.startswith("homflypt:"):
        model_by_name(model)  # validates the id
        r = homflypt(od, int(model.split(":", 1)[1]))
        matrix, scalar = r.normalized.matrix, r.scalar
    else:
        raise ValueError(f"unknown model {model!r}")
    knotoid = od.knotoid_component is not None
    return {
        "diagram": d.name,
        "model": model + (":normalized" if normalized and model == "binary" else ""),
        "matrix": _strs(matrix),
        "scalar": None if scalar is None else str(scalar),
        "writhe": writhe(od),
        "odd_writhe": odd_writhe(od) if knotoid and len(od.components) == 1 else None,
        "rotation": _rot_text(rotation_number(od)),
    }


def _compute_file(args: tuple[str, str]) -> dict:
    path, model = args
    f = read_diagram(path)
    return compute(f.diagram, model)


# --- command plumbing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(record: dict, as_json: bool, text: str, out) -> None:
    if as_json:
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _matrix_text(m) -> str:
    return "\n".join("[ " + ", ".join(row) + " ]" for row in _strs(m))


def _cmd_validate(a, out) -> int:
    d = read_diagram(a.file).diagram
    od = orient(d)
    kind = "knotoid" if od.knotoid_component is not None else "closed"
    out.write(f"ok: {len(d)} events, {d.n_crossings} crossings, {len(od.components)} components ({kind}), max width {d.max_width}\n")
    return EXIT_OK


def _cmd_rot(a, out) -> int:
    d = read_diagram(a.file).diagram
    r = rotation_number(orient(d))
    rec = {"diagram": d.name, "model": None, "matrix": [], "scalar": None, "writhe": writhe(d),
           "odd_writhe": None, "rotation": _rot_text(r)}
    _emit(rec, a.json, str(r), out)
    return EXIT_OK


def _cmd_invariant(model: str):
    def run(a, out) -> int:
        d = read_diagram(a.file).diagram
        m = model
        if model == "homflypt":
            if a.n < 1:
                out.write("homflypt needs --n >= 1\n")
                return EXIT_USAGE
            m = f"homflypt:{a.n}"
        rec = compute(d, m, normalized=getattr(a, "normalized", False))
        lines = []
        if m in ("alexander", "sawollek") or m.startswith("homflypt"):
            od = orient(d)
            r = alexander(od) if m == "alexander" else sawollek(od) if m == "sawollek" else homflypt(od, a.n)
            lines.append("raw:\n" + _matrix_text(r.raw.matrix))
            lines.append("normalized:\n" + _matrix_text(r.normalized.matrix))
            if rec["scalar"] is not None:
                lines.append(f"scalar: {rec['scalar']}")
            else:
                lines.append("scalar: none (diagonal entries differ)")
        elif len(rec["matrix"]) == 1 and len(rec["matrix"][0]) == 1:
            lines.append(rec["matrix"][0][0])
        else:
            lines.append(_matrix_text(rec["matrix"]))
        _emit(rec, a.json, "\n".join(lines), out)
        return EXIT_OK
    return run


def _cmd_verify(a, out) -> int:
    report = verify_model(model_by_name(a.model))
    if a.json:
        out.write(json.dumps({"model": a.model, "ok": report.ok,
                              "checks": [{"name": c.name, "passed": c.passed, "witness": None if c.witness is None else str(c.witness)}
                                         for c in report.checks]}, sort_keys=True) + "\n")
    else:
        for c in report.checks:
            out.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + ("" if c.passed else f"  witness: {c.witness}") + "\n")
    return EXIT_OK if report.ok else EXIT_MODEL


def _cmd_oracle(a, out) -> int:
    d = read_diagram(a.file).diagram
    models = ALL_MODELS if a.model == "all" else (a.model,)
    bad = 0
    for name in models:
        model = model_by_name(name)
        try:
            want = enumerate_oracle(d, model, max_slots=a.max_slots)
        except OracleBoundExceeded as exc:
            out.write(f"SKIP  {name}: {exc}\n")
            continue
        got = contract(d, model)
        same = got.matrix == want.matrix
        bad += not same
        out.write(f"{'MATCH' if same else 'MISMATCH'}  {name}\n")
    return EXIT_OK if not bad else EXIT_CONSISTENCY


def _cmd_moves(a, out) -> int:
    d = read_diagram(a.file).diagram
    e = random_equivalent(d, a.steps, seed=a.seed, max_crossings=a.max_crossings, max_width=a.max_width)
    e.name = f"{d.name} after {a.steps} moves (seed {a.seed})" if d.name else None
    out.write(print_morse(e))
    return EXIT_OK


def _cmd_batch(a, out) -> int:
    files = sorted(str(p) for p in Path(a.dir).glob("*.morse"))
    if not files:
        out.write(f"no .morse files in {a.dir}\n")
        return EXIT_USAGE
    model = a.model.lower()
    if model != "bracket" and model != "rotbracket" and model != "binary":
        model_by_name(model)
    jobs = [(f, model) for f in files]
    if a.jobs > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as pool:
            records = list(pool.map(_compute_file, jobs))
    else:
        records = [_compute_file(j) for j in jobs]
    for rec in records:
        text = f"{rec['diagram']}: " + (rec["scalar"] if rec["scalar"] is not None else json.dumps(rec["matrix"]))
        _emit(rec, a.json, text, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knotoid", description="Quantum invariants of Morse knotoid diagrams.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name, help_text, func):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("file", help=".morse file, '-' for stdin, or a bundled figure name")
        s.add_argument("--json", action="store_true", help="emit one JSON record")
        s.set_defaults(func=func)
        return s

    with_file("validate", "check a diagram and summarize it", _cmd_validate)
    with_file("rot", "rotation number", _cmd_rot)
    with_file("bracket", "bracket partition matrix", _cmd_invariant("bracket"))
    with_file("rotbracket", "rotational bracket polynomial", _cmd_invariant("rotbracket"))
    b = with_file("binary", "binary bracket polynomial", _cmd_invariant("binary"))
    b.add_argument("--normalized", action="store_true", help="multiply by A^-writhe")
    with_file("alexander", "Alexander matrices and polynomial", _cmd_invariant("alexander"))
    with_file("sawollek", "generalized Alexander matrices and polynomial", _cmd_invariant("sawollek"))
    h = with_file("homflypt", "Homflypt specialization P^n", _cmd_invariant("homflypt"))
    h.add_argument("--n", type=int, required=True)

    v = sub.add_parser("verify-model", help="check the model identities")
    v.add_argument("--model", required=True, help="bracket, binary, alexander, sawollek or homflypt:<n>")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_cmd_verify)

    o = with_file("oracle-check", "compare contraction with brute-force enumeration", _cmd_oracle)
    o.add_argument("--model", default="all")
    o.add_argument("--max-slots", type=int, default=24)

    m = with_file("moves", "emit a Morse-isotopic diagram", _cmd_moves)
    m.add_argument("--steps", type=int, required=True)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--max-crossings", type=int, default=None)
    m.add_argument("--max-width", type=int, default=None)

    bt = sub.add_parser("batch", help="run one model over every .morse file in a directory")
    bt.add_argument("dir")
    bt.add_argument("--model", required=True)
    bt.add_argument("--jobs", type=int, default=1)
    bt.add_argument("--json", action="store_true")
    bt.set_defaults(func=_cmd_batch)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except MorseSyntaxError as exc:
        print(f"knotoid: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"knotoid: no such file: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConsistencyError as exc:
        print(f"knotoid: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except ValueError as exc:
        print(f"knotoid: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
