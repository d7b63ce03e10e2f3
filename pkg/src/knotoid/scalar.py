"""Exact coefficient ring and Laurent polynomials.

Coefficients live in the cyclotomic field generated by a primitive 8th root
of unity ``w`` (``w**4 == -1``), so ``i = w**2``, ``sqrt(i) = w`` and
``sqrt(-i) = w**7 = -w**3``.  Integer coordinates are the normal case;
rational coordinates only show up after halving (Alexander scalar, the
Sawollek prefactor).

Polynomials are Laurent polynomials in the fixed variables ``A q s t l``
(``s`` and ``t`` stand for sigma and tau, ``l`` for lambda) with
half-integer exponents, stored doubled.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "CycScalar",
    "LaurentPoly",
    "PolySyntaxError",
    "VARIABLES",
    "cyc_mul",
    "poly_mul",
    "poly_parse",
    "poly_print",
    "W",
    "I",
    "ONE",
    "ZERO",
    "var",
    "const",
]

Number = Union[int, Fraction]

VARIABLES = ("A", "q", "s", "t", "l")
_VAR_INDEX = {name: k for k, name in enumerate(VARIABLES)}
_NVARS = len(VARIABLES)
_ZERO_EXP = (0,) * _NVARS


def _norm(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


class CycScalar:
    """Element ``c0 + c1*w + c2*w^2 + c3*w^3`` of Q(w), ``w`` a primitive 8th root of unity."""

    __slots__ = ("c",)

    def __init__(self, c0: Number = 0, c1: Number = 0, c2: Number = 0, c3: Number = 0):
        self.c = (_norm(c0), _norm(c1), _norm(c2), _norm(c3))

    @classmethod
    def _raw(cls, c: tuple) -> "CycScalar":
        obj = object.__new__(cls)
        obj.c = c
        return obj

    @classmethod
    def root(cls, k: int) -> "CycScalar":
        """``w**k`` for any integer ``k``."""
        k %= 8
        sign = 1 if k < 4 else -1
        c = [0, 0, 0, 0]
        c[k % 4] = sign
        return cls._raw(tuple(c))

    @classmethod
    def coerce(cls, x) -> "CycScalar":
        if isinstance(x, CycScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._raw((_norm(x), 0, 0, 0))
        raise TypeError(f"cannot coerce {type(x).__name__} to CycScalar")

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycScalar.coerce(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __add__(self, other) -> "CycScalar":
        if not isinstance(other, CycScalar):
            if isinstance(other, (int, Fraction)):
                other = CycScalar.coerce(other)
            else:
                return NotImplemented
        a, b = self.c, other.c
        return CycScalar._raw(
            (_norm(a[0] + b[0]), _norm(a[1] + b[1]), _norm(a[2] + b[2]), _norm(a[3] + b[3]))
        )

    __radd__ = __add__

    def __neg__(self) -> "CycScalar":
        a = self.c
        return CycScalar._raw((-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, other) -> "CycScalar":
        if not isinstance(other, CycScalar):
            if isinstance(other, (int, Fraction)):
                other = CycScalar.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycScalar":
        return (-self) + other

    def __mul__(self, other) -> "CycScalar":
        if isinstance(other, (int, Fraction)):
            return CycScalar._raw(tuple(_norm(x * other) for x in self.c))
        if not isinstance(other, CycScalar):
            return NotImplemented
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = other.c
        # w^4 = -1 folds degrees 4..6 back with a sign flip
        return CycScalar._raw(
            (
                _norm(a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1),
                _norm(a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2),
                _norm(a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3),
                _norm(a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0),
            )
        )

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycScalar":
        """Apply the automorphism ``w -> w**k`` (``k`` odd)."""
        out = CycScalar()
        for j, cj in enumerate(self.c):
            if cj:
                out = out + CycScalar.root(j * k) * cj
        return out

    def norm(self) -> Fraction:
        prod = self * self.galois(3) * self.galois(5) * self.galois(7)
        assert not any(prod.c[1:]), "field norm must be rational"
        return Fraction(prod.c[0])

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(w)")
        n = self.norm()
        rest = self.galois(3) * self.galois(5) * self.galois(7)
        return CycScalar._raw(tuple(_norm(Fraction(x) / n) for x in rest.c))

    def __truediv__(self, other) -> "CycScalar":
        if isinstance(other, (int, Fraction)):
            return CycScalar._raw(tuple(_norm(Fraction(x) / other) for x in self.c))
        return self * CycScalar.coerce(other).inverse()

    def __pow__(self, n: int) -> "CycScalar":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE_C, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def unit_power(self):
        """Return ``(r, k)`` when ``self == r * w**k`` with rational ``r``, else None."""
        nz = [j for j, x in enumerate(self.c) if x]
        if len(nz) != 1:
            return None
        return self.c[nz[0]], nz[0]

    def __repr__(self) -> str:
        return f"CycScalar{self.c}"

    def __str__(self) -> str:
        return _format_coef(self)


ONE_C = CycScalar._raw((1, 0, 0, 0))


def cyc_mul(a: CycScalar, b: CycScalar) -> CycScalar:
    return a * b


def _fmt_number(x: Number) -> str:
    return str(x)


def _format_coef(c: CycScalar) -> str:
    parts = []
    for j, x in enumerate(c.c):
        if not x:
            continue
        mag = abs(x)
        sign = "-" if x < 0 else "+"
        if j == 0:
            body = _fmt_number(mag)
        else:
            wtok = "w" if j == 1 else f"w^{j}"
            body = wtok if mag == 1 else f"{_fmt_number(mag)}*{wtok}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f"{sign}{body}"
    return out


def _fmt_exp(d: int) -> str:
    if d % 2 == 0:
        e = d // 2
        return str(e)
    return "{" + f"{d}/2" + "}"


class LaurentPoly:
    """Immutable multivariate Laurent polynomial over Q(w).

    ``terms`` maps doubled exponent vectors (one entry per name in
    ``VARIABLES``) to nonzero ``CycScalar`` coefficients.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, CycScalar] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = CycScalar.coerce(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # --- constructors -------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = CycScalar.coerce(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def monomial(cls, coef=1, **exps) -> "LaurentPoly":
        """``monomial(c, A=2, q=Fraction(-1, 2))``; exponents must be half-integers."""
        e = [0] * _NVARS
        for name, val in exps.items():
            d = Fraction(val) * 2
            if d.denominator != 1:
                raise ValueError(f"exponent {val} of {name} is not a half-integer")
            e[_VAR_INDEX[name]] = int(d)
        return cls({tuple(e): CycScalar.coerce(coef)})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return poly_parse(text)

    # --- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> CycScalar:
        return self.terms.get(_ZERO_EXP, CycScalar())

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for k, d in enumerate(e):
                if d:
                    used.add(VARIABLES[k])
        return used

    def exponent_range(self, name: str) -> tuple[Fraction, Fraction]:
        k = _VAR_INDEX[name]
        ds = [e[k] for e in self.terms] or [0]
        return Fraction(min(ds), 2), Fraction(max(ds), 2)

    # --- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, CycScalar)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                c = c1 * c2
                prev = out.get(e)
                out[e] = c if prev is None else prev + c
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n) -> "LaurentPoly":
        n = Fraction(n)
        if n.denominator == 1 and n >= 0:
            n = int(n)
            result, base = ONE, self
            while n:
                if n & 1:
                    result = result * base
                base = base * base
                n >>= 1
            return result
        if not self.is_monomial():
            raise ValueError("negative or fractional powers need a monomial")
        (e, c), = self.terms.items()
        exps = [d * n for d in e]
        if any(x.denominator != 1 for x in exps):
            raise ValueError("power leaves the half-integer exponent lattice")
        if n.denominator == 1:
            coef = c ** int(n)
        else:
            coef = _coef_root_power(c, n)
        return LaurentPoly._raw({tuple(int(x) for x in exps): coef})

    def __truediv__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction, CycScalar)):
            inv = CycScalar.coerce(other)
            inv = CycScalar.coerce(Fraction(1) / other) if not isinstance(other, CycScalar) else inv.inverse()
            return self * inv
        other = self._coerce(other)
        if other.is_monomial():
            return self * other ** -1
        return self.exact_div(other)

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ``ArithmeticError`` carrying the remainder otherwise."""
        quotient, remainder = _laurent_divmod(self, divisor)
        if remainder:
            err = ArithmeticError(f"inexact division: remainder {remainder}")
            err.remainder = remainder
            raise err
        return quotient

    def substitute(self, **values) -> "LaurentPoly":
        """Substitute variables by polynomials (monomials for negative/half exponents)."""
        idx = {_VAR_INDEX[k]: LaurentPoly._coerce(ZERO, v) for k, v in values.items()}
        out = ZERO
        for e, c in self.terms.items():
            keep = [0 if k in idx else d for k, d in enumerate(e)]
            term = LaurentPoly._raw({tuple(keep): c})
            for k, val in idx.items():
                if e[k]:
                    term = term * val ** Fraction(e[k], 2)
            out = out + term
        return out

    def map_coefficients(self, f) -> "LaurentPoly":
        return LaurentPoly({e: f(c) for e, c in self.terms.items()})

    # --- comparison / hashing ----------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycScalar)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple, CycScalar]]:
        # graded-lexicographic, highest first
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        return poly_print(self)

    def __repr__(self) -> str:
        return f"LaurentPoly('{poly_print(self)}')"


def _coef_root_power(c: CycScalar, n: Fraction) -> CycScalar:
    # only roots of unity (times +-1) admit square roots here: w^k -> w^(k*n)
    up = c.unit_power()
    if up is None or abs(up[0]) != 1:
        raise ValueError(f"cannot take fractional power of coefficient {c}")
    r, k = up
    total = Fraction(k) + (4 if r < 0 else 0)
    kk = total * n
    if kk.denominator != 1:
        raise ValueError(f"w^{total} has no power {n} in Q(w)")
    return CycScalar.root(int(kk))


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({_ZERO_EXP: ONE_C})
W = LaurentPoly._raw({_ZERO_EXP: CycScalar.root(1)})
I = LaurentPoly._raw({_ZERO_EXP: CycScalar.root(2)})


def var(name: str, exponent=1) -> LaurentPoly:
    return LaurentPoly.monomial(1, **{name: exponent})


def const(c) -> LaurentPoly:
    return LaurentPoly.const(c)


def poly_mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p * r


# --- exact division ---------------------------------------------------------

def _lex_leading(terms: dict):
    e = max(terms)
    return e, terms[e]


def _laurent_divmod(num: LaurentPoly, den: LaurentPoly):
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return ZERO, ZERO
    # shift both into the polynomial ring; den must carry no monomial content
    dmin = tuple(min(e[k] for e in den.terms) for k in range(_NVARS))
    nmin = tuple(min(e[k] for e in num.terms) for k in range(_NVARS))
    d = {tuple(x - m for x, m in zip(e, dmin)): c for e, c in den.terms.items()}
    r = {tuple(x - m for x, m in zip(e, nmin)): c for e, c in num.terms.items()}
    le, lc = _lex_leading(d)
    lc_inv = lc.inverse()
    q: dict = {}
    rem: dict = {}
    while r:
        e, c = _lex_leading(r)
        shift = tuple(x - y for x, y in zip(e, le))
        if any(x < 0 for x in shift):
            rem[e] = c
            del r[e]
            continue
        factor = c * lc_inv
        q[shift] = q.get(shift, CycScalar()) + factor
        for de, dc in d.items():
            te = tuple(x + y for x, y in zip(de, shift))
            val = r.get(te, CycScalar()) - dc * factor
            if val:
                r[te] = val
            else:
                r.pop(te, None)
    back = tuple(n - m for n, m in zip(nmin, dmin))
    quotient = LaurentPoly({tuple(x + b for x, b in zip(e, back)): c for e, c in q.items()})
    remainder = LaurentPoly({tuple(x + m for x, m in zip(e, nmin)): c for e, c in rem.items()})
    return quotient, remainder


# --- printing ---------------------------------------------------------------

def _format_monomial(e: tuple) -> str:
    parts = []
    for k, d in enumerate(e):
        if d == 0:
            continue
        name = VARIABLES[k]
        parts.append(name if d == 2 else f"{name}^{_fmt_exp(d)}")
    return "*".join(parts)


def poly_print(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        mono = _format_monomial(e)
        up = c.unit_power()
        if up is not None:
            r, k = up
            sign = "-" if r < 0 else "+"
            mag = abs(r)
            factors = []
            if mag != 1 or (k == 0 and not mono):
                factors.append(_fmt_number(mag))
            if k:
                factors.append("w" if k == 1 else f"w^{k}")
            if mono:
                factors.append(mono)
            body = "*".join(factors)
        else:
            sign = "+"
            body = f"({_format_coef(c)})" + (f"*{mono}" if mono else "")
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# --- parsing ----------------------------------------------------------------

class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|([Aqstlw])|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^(){}":
                raise PolySyntaxError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise PolySyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        self.i += 1
        return tok

    def at(self, value) -> bool:
        tok = self.toks[self.i]
        return tok[0] == "op" and tok[1] == value

    def parse(self) -> LaurentPoly:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return result

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.at("+"):
            self.take()
        elif self.at("-"):
            self.take()
            sign = -1
        total = self.term() * sign
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> LaurentPoly:
        result = self.factor()
        while self.at("*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> LaurentPoly:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            value = Fraction(int(tok[1]))
            if self.at("/"):
                self.take()
                den = self.take("num")
                if int(den[1]) == 0:
                    raise PolySyntaxError("zero denominator", den[2], self.text)
                value = value / int(den[1])
            base = LaurentPoly.const(value)
            is_var = False
        elif tok[0] == "id":
            self.take()
            if tok[1] == "w":
                base = W
                is_var = False
            else:
                base = var(tok[1])
                is_var = True
        elif self.at("("):
            self.take()
            base = self.expr()
            self.take("op", ")")
            is_var = False
        else:
            raise PolySyntaxError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], self.text)
        if self.at("^"):
            caret = self.take()
            exp = self.exponent()
            if not is_var and exp.denominator != 1:
                raise PolySyntaxError("fractional exponent on a non-variable", caret[2], self.text)
            try:
                return base ** exp
            except (ValueError, ZeroDivisionError) as err:
                raise PolySyntaxError(str(err), caret[2], self.text) from None
        return base

    def exponent(self) -> Fraction:
        closer = None
        if self.at("{"):
            self.take()
            closer = "}"
        elif self.at("("):
            self.take()
            closer = ")"
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        elif self.at("+"):
            self.take()
        num = self.take("num")
        value = Fraction(int(num[1]))
        if self.at("/"):
            self.take()
            den = self.take("num")
            if den[1] != "2" and den[1] != "1":
                raise PolySyntaxError("exponent denominator must be 2", den[2], self.text)
            value = value / int(den[1])
        if closer:
            self.take("op", closer)
        return sign * value


def poly_parse(text: str) -> LaurentPoly:
    """Parse the textual polynomial grammar (inverse of :func:`poly_print`)."""
    if not text.strip():
        raise PolySyntaxError("empty input", 0, text)
    return _Parser(text).parse()


def poly_sum(items: Iterable[LaurentPoly]) -> LaurentPoly:
    out = ZERO
    for x in items:
        out = out + x
    return out
