"""Exact coefficient rings and sparse multivariate polynomials.

Coefficients are plain Python values: ``int`` for ZZ and GF(p) (kept in
``0..p-1``), ``int`` or :class:`fractions.Fraction` for QQ.  A
:class:`PolyRing` may itself serve as the coefficient ring of another
PolyRing (``QQ[s][t]``); its elements are then :class:`Poly` objects.

Both ring kinds expose the small *coefficient domain* protocol used by the
rest of the package: ``zero``, ``one``, ``reduce``, ``coerce``, ``fmt``,
``is_field`` and ``base_ring``.  Zero tests are done with ``not c``.
"""
from fractions import Fraction
from itertools import product as _iproduct

from . import kernels
from .errors import (
    DimensionMismatch,
    GhilbError,
    NotInvertible,
    ParseError,
    RingMismatch,
    UnknownVariable,
)

__all__ = [
    "BaseRing",
    "ZZ",
    "QQ",
    "GF",
    "PolyRing",
    "Poly",
    "parse_poly",
    "poly_mul",
    "poly_eval",
    "grlex_key",
    "monomial_str",
]


def grlex_key(e):
    """Sort key of an exponent tuple in graded-lexicographic order."""
    return (sum(e), e)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class BaseRing:
    """ZZ, QQ or GF(p) with p a machine-word prime."""

    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        if kind not in ("ZZ", "QQ", "GF"):
            raise GhilbError(f"unknown base ring kind {kind!r}")
        if kind == "GF":
            if p is None or not (0 < p < 2**31) or not _is_prime(p):
                raise GhilbError(f"GF(p) needs a prime p < 2^31, got {p!r}")
        else:
            p = None
        self.kind = kind
        self.p = p

    @classmethod
    def parse(cls, text):
        t = text.strip().replace(" ", "")
        if t in ("ZZ", "Z"):
            return ZZ
        if t in ("QQ", "Q"):
            return QQ
        for prefix in ("GF(", "Z/", "ZZ/"):
            if t.startswith(prefix):
                digits = t[len(prefix):].rstrip(")")
                if digits.isdigit():
                    return GF(int(digits))
        raise GhilbError(f"cannot parse base ring {text!r}")

    def __eq__(self, other):
        return isinstance(other, BaseRing) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.kind == "GF" else self.kind

    zero = 0
    one = 1

    @property
    def base_ring(self):
        return self

    @property
    def is_field(self):
        return self.kind != "ZZ"

    @property
    def is_domain(self):
        return True

    @property
    def characteristic(self):
        return self.p or 0

    def reduce(self, c):
        if self.kind == "GF":
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return c % self.p
        if self.kind == "QQ" and isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def coerce(self, value):
        """Convert an int, Fraction or numeral string into this ring."""
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError:
                raise ParseError(f"bad numeral {value!r}") from None
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                value = value.numerator
            elif self.kind == "ZZ":
                raise NotInvertible(f"{value} is not an integer")
            elif self.kind == "GF" and value.denominator % self.p == 0:
                raise NotInvertible(f"denominator of {value} vanishes mod {self.p}")
        elif not isinstance(value, int):
            raise RingMismatch(f"cannot coerce {value!r} into {self}")
        return self.reduce(value)

    def inv(self, c):
        if not c:
            raise NotInvertible("division by zero")
        if self.kind == "GF":
            return pow(c, -1, self.p)
        if self.kind == "QQ":
            return self.reduce(Fraction(1) / c)
        if c in (1, -1):
            return c
        raise NotInvertible(f"{c} is not a unit in ZZ")

    def div(self, a, b):
        if self.kind == "ZZ":
            if not b or a % b:
                raise NotInvertible(f"{a} is not divisible by {b} in ZZ")
            return a // b
        return self.reduce(a * self.inv(b))

    def is_unit(self, c):
        if self.kind == "ZZ":
            return c in (1, -1)
        return bool(c)

    def fraction_field(self):
        return QQ if self.kind == "ZZ" else self

    def fmt(self, c):
        return str(c)

    def to_fraction_field(self, c):
        return c


ZZ = BaseRing("ZZ")
QQ = BaseRing("QQ")


def GF(p):
    return BaseRing("GF", p)


def monomial_str(exps, names):
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class PolyRing:
    """Polynomial ring ``coeffs[names...]`` with graded-lex monomial order."""

    __slots__ = ("coeffs", "names", "nvars", "_index", "_hash")

    def __init__(self, coeffs, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise GhilbError(f"repeated variable names in {names}")
        for name in names:
            if not _is_identifier(name):
                raise GhilbError(f"bad variable name {name!r}")
        self.coeffs = coeffs
        self.names = names
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((coeffs, names))

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.coeffs!r}[{','.join(self.names)}]"

    # coefficient-domain protocol
    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.const(1)

    @property
    def base_ring(self):
        return self.coeffs.base_ring

    @property
    def is_field(self):
        return self.nvars == 0 and self.coeffs.is_field

    @property
    def is_domain(self):
        return self.coeffs.is_domain

    def reduce(self, c):
        return c

    def coerce(self, value):
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            if value.ring == self.coeffs:
                return self.const(value)
            if value.ring.nvars == 0 and value.ring.coeffs == self.coeffs:
                return self.const(value.constant_value())
            raise RingMismatch(f"cannot coerce element of {value.ring} into {self}")
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def fmt(self, c):
        s = str(c)
        return f"({s})" if len(c.terms) > 1 else s

    def is_unit(self, c):
        return c.is_constant() and self.coeffs.is_unit(c.constant_value())

    # constructors
    def const(self, c):
        c = self.coeffs.coerce(c)
        if not c:
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, which):
        i = self._index[which] if isinstance(which, str) else which
        if not 0 <= i < self.nvars:
            raise DimensionMismatch(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.coeffs.one})

    @property
    def gens(self):
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise DimensionMismatch("monomial length does not match the number of variables")
        c = self.coeffs.coerce(coeff)
        return Poly(self, {exps: c} if c else {})

    def from_terms(self, terms):
        """Build a Poly from an exponent->coefficient mapping (reduces, drops zeros)."""
        red = self.coeffs.reduce
        out = {}
        for e, c in terms.items():
            c = red(c)
            if c:
                out[tuple(e)] = c
        return Poly(self, out)

    def index(self, name):
        return self._index[name]

    def parse(self, text):
        return _Parser(text, self).parse()

    def __call__(self, value):
        return self.coerce(value)

    def extend(self, extra_names):
        """Ring with additional trailing variables."""
        return PolyRing(self.coeffs, self.names + tuple(extra_names))

    def embed(self, f, target):
        """Map f into ``target`` whose variables include ours (by name)."""
        if f.ring == target:
            return f
        if target.coeffs != self.coeffs:
            raise RingMismatch(f"cannot embed {self} into {target}")
        pos = [target.index(n) for n in self.names]
        out = {}
        for e, c in f.terms.items():
            ne = [0] * target.nvars
            for i, k in zip(pos, e):
                ne[i] = k
            out[tuple(ne)] = c
        return Poly(target, out)


def _is_identifier(name):
    return (
        bool(name)
        and name[0].isascii()
        and name[0].isalpha()
        and all(ch.isascii() and (ch.isalnum() or ch == "_") for ch in name)
    )


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # coercion helpers
    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring == self.ring:
                return other
            return self.ring.coerce(other)
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        red = self.ring.coeffs.reduce
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = red(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.coeffs.reduce
        return Poly(self.ring, {e: red(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly) and other.ring == self.ring:
            return poly_mul(self, other)
        if isinstance(other, Poly) and other.ring != self.ring.coeffs:
            return poly_mul(self, self._other(other))
        if isinstance(other, (int, Fraction, Poly)):
            c = self.ring.coeffs.coerce(other)
            red = self.ring.coeffs.reduce
            out = {}
            if c:
                for e, v in self.terms.items():
                    w = red(v * c)
                    if w:
                        out[e] = w
            return Poly(self.ring, out)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            try:
                return self.terms == self.ring.const(other).terms
            except GhilbError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise GhilbError(f"{self} is not constant")
        return self.terms.get((0,) * self.ring.nvars, self.ring.coeffs.zero)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.ring.coeffs.zero)

    def sorted_terms(self, reverse=True):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=reverse)

    def leading_term(self):
        if not self.terms:
            raise GhilbError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        fmt = self.ring.coeffs.fmt
        pieces = []
        for e, c in self.sorted_terms():
            m = monomial_str(e, names)
            if m == "1":
                s = fmt(c)
            elif c == 1:
                s = m
            elif c == -1 and not isinstance(c, Poly):
                s = "-" + m
            else:
                s = f"{fmt(c)}*{m}"
            pieces.append(s)
        out = pieces[0]
        for s in pieces[1:]:
            out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return out

    def __repr__(self):
        return f"Poly({self.ring!r}, {str(self)!r})"

    # algebra
    def eval(self, point):
        return poly_eval(self, point)

    def map_coeffs(self, fn, ring):
        return ring.from_terms({e: fn(c) for e, c in self.terms.items()})

    def change_ring(self, target):
        """Reduce/lift coefficients into a PolyRing with the same variables."""
        if target.names != self.ring.names:
            raise RingMismatch("change_ring needs identical variables")
        return self.map_coeffs(target.coeffs.coerce, target)

    def exact_div(self, other):
        """Exact multivariate division; raises NotInvertible if other does not divide self."""
        if not other:
            raise NotInvertible("division by zero polynomial")
        cr = self.ring.coeffs
        le, lc = other.leading_term()
        q = {}
        r = self
        while r:
            e, c = r.leading_term()
            d = tuple(a - b for a, b in zip(e, le))
            if any(k < 0 for k in d):
                raise NotInvertible(f"{other} does not divide {self}")
            qc = _coeff_div(cr, c, lc)
            q[d] = qc
            r = r - Poly(self.ring, {d: qc}) * other
        return Poly(self.ring, q)

    def derivative(self, i):
        cr = self.ring.coeffs
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = cr.reduce(c * e[i])
        return self.ring.from_terms(out)


def _coeff_div(cr, a, b):
    if isinstance(cr, BaseRing):
        return cr.div(a, b)
    return a.exact_div(b)


def poly_mul(f, g):
    """Product in the common ring; zero terms are pruned."""
    if f.ring != g.ring:
        raise RingMismatch(f"cannot multiply elements of {f.ring} and {g.ring}")
    if not f.terms or not g.terms:
        return Poly(f.ring, {})
    raw = kernels.poly_mul_terms(f.terms, g.terms)
    return f.ring.from_terms(raw)


def poly_eval(f, point):
    """Substitute coordinates (elements of the coefficient field) for the variables."""
    point = list(point)
    if len(point) != f.ring.nvars:
        raise DimensionMismatch(
            f"point has {len(point)} coordinates, ring has {f.ring.nvars} variables"
        )
    cr = f.ring.coeffs
    field = cr.fraction_field() if isinstance(cr, BaseRing) else cr
    vals = [field.coerce(v) if not isinstance(v, Poly) else v for v in point]
    red = field.reduce
    total = field.zero
    powers = [{} for _ in vals]
    for e, c in f.terms.items():
        term = c
        for i, k in enumerate(e):
            if k:
                cache = powers[i]
                pk = cache.get(k)
                if pk is None:
                    pk = cache[k] = red(vals[i] ** k)
                term = term * pk
        total = total + term
    return red(total)


def parse_poly(text, ring, names=None):
    """Parse ``text`` over ``ring`` (a BaseRing or PolyRing) in variables ``names``."""
    if isinstance(ring, BaseRing):
        ring = PolyRing(ring, names or ())
    elif names is not None and tuple(names) != ring.names:
        ring = PolyRing(ring.coeffs, names)
    return ring.parse(text)


class _Parser:
    """Recursive descent over

        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := factor (('*'|'/') factor)*
        factor := atom ('^' nonneg-int)?
        atom   := integer | identifier | '(' expr ')'

    ``/`` only accepts a nonzero constant divisor.
    """

    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = self._tokenize(text)
        self.i = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(("int", text[i:j], i))
                i = j
            elif ch.isascii() and ch.isalpha():
                j = i
                while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(("id", text[i:j], i))
                i = j
            elif ch in "+-*/^()":
                tokens.append((ch, ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        tokens.append(("end", "", n))
        return tokens

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        result = self.expr()
        self.take("end")
        return result

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() in ("*", "/"):
            op, _, pos = self.take()
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or not f:
                    raise ParseError("division needs a nonzero constant divisor", pos)
                d = f.constant_value()
                cr = self.ring.coeffs
                try:
                    acc = self.ring.from_terms(
                        {e: _coeff_div(cr, c, d) for e, c in acc.terms.items()}
                    )
                except NotInvertible as exc:
                    raise NotInvertible(f"{exc} at position {pos}") from None
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take("int")
            base = base ** int(tok[1])
        return base

    def atom(self):
        kind, text, pos = self.tokens[self.i]
        if kind == "int":
            self.i += 1
            return self.ring.const(int(text))
        if kind == "id":
            self.i += 1
            try:
                return self.ring.gen(self.ring.index(text))
            except KeyError:
                raise UnknownVariable(f"unknown variable {text!r}", pos) from None
        if kind == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def all_monomials(nvars, max_degree):
    """Exponent tuples of total degree <= max_degree, ascending graded-lex."""
    out = [e for e in _iproduct(range(max_degree + 1), repeat=nvars) if sum(e) <= max_degree]
    out.sort(key=grlex_key)
    return out


def box_monomials(nvars, bound):
    """Exponent tuples with every exponent < bound, ascending graded-lex."""
    out = list(_iproduct(range(bound), repeat=nvars))
    out.sort(key=grlex_key)
    return out
