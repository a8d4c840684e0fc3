"""Exact sparse polynomials over the rationals, plus the expression parser.

A polynomial in ``n`` variables is a mapping from exponent tuples to nonzero
``Fraction`` coefficients.  The same representation serves the two-variable
germ calculus and the three-variable fibration data (base variable plus two
homogeneous fiber coordinates).

The accepted expression grammar (whitespace insignificant)::

    poly     :=  ['+'|'-'] monomial (('+'|'-') monomial)*
    monomial :=  rational ('*' factors)?  |  factors
    factors  :=  factor ('*' factor)*
    factor   :=  var ('^' positive-integer)?
    rational :=  integer ('/' positive-integer)?

An explicit '*' is required between a coefficient and a variable and between
variables, which keeps the grammar unambiguous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError

Exponent = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Poly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    nvars: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    # construction -----------------------------------------------------

    @staticmethod
    def from_terms(nvars: int, terms: Mapping[Exponent, object]) -> "Poly":
        clean: dict[Exponent, Fraction] = {}
        for exp, c in terms.items():
            if len(exp) != nvars or any(e < 0 or not isinstance(e, int) for e in exp):
                raise InputError(f"bad exponent tuple {exp} for {nvars} variables")
            coeff = Fraction(c)
            if coeff != 0:
                clean[exp] = clean.get(exp, Fraction(0)) + coeff
                if clean[exp] == 0:
                    del clean[exp]
        return Poly(nvars, clean)

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars, {})

    @staticmethod
    def constant(nvars: int, value: object) -> "Poly":
        return Poly.from_terms(nvars, {(0,) * nvars: Fraction(value)})  # type: ignore[arg-type]

    @staticmethod
    def variable(nvars: int, index: int) -> "Poly":
        exp = [0] * nvars
        exp[index] = 1
        return Poly(nvars, {tuple(exp): Fraction(1)})

    # predicates and views ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def support(self) -> list[Exponent]:
        return sorted(self.terms)

    def total_degree(self) -> int:
        if self.is_zero:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if self.is_zero:
            return 0
        return max(e[var] for e in self.terms)

    def valuation_in(self, var: int) -> int:
        """Largest k with var^k dividing the polynomial (0 for the zero poly)."""
        if self.is_zero:
            return 0
        return min(e[var] for e in self.terms)

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(exp, Fraction(0))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        names = tuple(f"x{i}" for i in range(self.nvars))
        return f"Poly({render_poly(self, names)!r})"

    # arithmetic ---------------------------------------------------------

    def _require_same(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise InputError("polynomials have different variable counts")

    def __add__(self, other: "Poly") -> "Poly":
        self._require_same(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: object) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly.zero(self.nvars)
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        assert isinstance(other, Poly)
        self._require_same(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise InputError("negative polynomial power")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def subs(self, assignment: Mapping[int, "Poly"]) -> "Poly":
        """Substitute polynomials for variables (others are kept)."""
        nvars = self.nvars
        for p in assignment.values():
            if p.nvars != nvars:
                raise InputError("substitution must preserve the variable count")
        power_cache: dict[tuple[int, int], Poly] = {}

        def var_power(i: int, e: int) -> Poly:
            key = (i, e)
            if key not in power_cache:
                base = assignment.get(i, Poly.variable(nvars, i))
                power_cache[key] = base ** e
            return power_cache[key]

        total = Poly.zero(nvars)
        for exp, c in self.terms.items():
            term = Poly.constant(nvars, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * var_power(i, e)
            total = total + term
        return total

    def eval(self, values: Sequence[Fraction]) -> Fraction:
        if len(values) != self.nvars:
            raise InputError("wrong number of values")
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for val, e in zip(values, exp):
                v *= val ** e
            total += v
        return total

    def drop_var_power(self, var: int, k: int) -> "Poly":
        """Divide exactly by var^k (requires valuation >= k)."""
        if k == 0:
            return self
        if self.valuation_in(var) < k:
            raise InputError("polynomial is not divisible by that variable power")
        out = {}
        for exp, c in self.terms.items():
            e = list(exp)
            e[var] -= k
            out[tuple(e)] = c
        return Poly(self.nvars, out)


def divide_exact(f: Poly, g: Poly) -> Poly | None:
    """Quotient f/g if g divides f exactly, else None.

    Multivariate division by the single divisor g under lex order; since a
    principal ideal's single generator is its own Groebner basis, a zero
    remainder is equivalent to divisibility.
    """
    if g.is_zero:
        raise InputError("division by the zero polynomial")
    f._require_same(g)
    lead = max(g.terms)  # lex-largest exponent of g
    lead_c = g.terms[lead]
    quotient: dict[Exponent, Fraction] = {}
    rest = dict(f.terms)
    while rest:
        exp = max(rest)
        c = rest[exp]
        if any(e < l for e, l in zip(exp, lead)):
            return None  # this monomial can never be cancelled
        q_exp = tuple(e - l for e, l in zip(exp, lead))
        q_c = c / lead_c
        quotient[q_exp] = quotient.get(q_exp, Fraction(0)) + q_c
        for ge, gc in g.terms.items():
            t = tuple(a + b for a, b in zip(q_exp, ge))
            s = rest.get(t, Fraction(0)) - q_c * gc
            if s == 0:
                rest.pop(t, None)
            else:
                rest[t] = s
    return Poly(f.nvars, {e: c for e, c in quotient.items() if c != 0})


# ---------------------------------------------------------------------------
# parsing


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise InputError(f"syntax error at position {at}: unexpected {stripped[0]!r}")
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]) -> None:
        if len(set(variables)) != len(variables):
            raise InputError("variable names must be distinct")
        self.text = text
        self.variables = tuple(variables)
        self.index = {name: i for i, name in enumerate(variables)}
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> "InputError":
        kind, value, at = self.peek()
        what = "end of input" if kind == "end" else repr(value)
        return InputError(f"syntax error at position {at}: {message}, found {what}")

    def expect_op(self, op: str) -> None:
        kind, value, _ = self.peek()
        if kind != "op" or value != op:
            raise self.fail(f"expected {op!r}")
        self.next()

    # rational := ['-'] integer ('/' positive-integer)?
    def parse_rational(self) -> Fraction:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.next()
            sign = -1
        kind, value, _ = self.peek()
        if kind != "int":
            raise self.fail("expected an integer")
        self.next()
        num = int(value)
        if self.peek()[:2] == ("op", "/"):
            self.next()
            kind, value, _ = self.peek()
            if kind != "int":
                raise self.fail("expected a denominator")
            self.next()
            den = int(value)
            if den == 0:
                raise self.fail("zero denominator")
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    # factor := var ('^' positive-integer)?
    def parse_factor(self) -> Exponent:
        kind, value, at = self.peek()
        if kind != "name":
            raise self.fail("expected a variable name")
        if value not in self.index:
            raise InputError(
                f"syntax error at position {at}: unknown variable {value!r}"
                f" (declared: {', '.join(self.variables)})"
            )
        self.next()
        exp = [0] * len(self.variables)
        power = 1
        if self.peek()[:2] == ("op", "^"):
            self.next()
            kind, v, _ = self.peek()
            if kind != "int" or int(v) < 1:
                raise self.fail("expected a positive integer exponent")
            self.next()
            power = int(v)
        exp[self.index[value]] = power
        return tuple(exp)

    # monomial := rational ('*' factors)? | factors
    def parse_monomial(self) -> tuple[Fraction, Exponent]:
        nvars = len(self.variables)
        coeff = Fraction(1)
        exp = (0,) * nvars
        kind = self.peek()[0]
        if kind == "int":
            coeff = self.parse_rational()
            if self.peek()[:2] != ("op", "*"):
                return coeff, exp  # constant monomial
            self.next()
        elif kind != "name":
            raise self.fail("expected a monomial")
        exp = _exp_add(exp, self.parse_factor())
        while self.peek()[:2] == ("op", "*"):
            self.next()
            kind = self.peek()[0]
            if kind == "int":
                coeff *= self.parse_rational()
            else:
                exp = _exp_add(exp, self.parse_factor())
        return coeff, exp

    # poly := ['+'|'-'] monomial (('+'|'-') monomial)*
    def parse_poly(self) -> Poly:
        terms: dict[Exponent, Fraction] = {}
        sign = Fraction(1)
        if self.peek()[:2] == ("op", "+"):
            self.next()
        elif self.peek()[:2] == ("op", "-"):
            self.next()
            sign = Fraction(-1)
        while True:
            coeff, exp = self.parse_monomial()
            c = terms.get(exp, Fraction(0)) + sign * coeff
            if c == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = c
            kind, value, _ = self.peek()
            if (kind, value) == ("op", "+"):
                sign = Fraction(1)
                self.next()
            elif (kind, value) == ("op", "-"):
                sign = Fraction(-1)
                self.next()
            else:
                return Poly(len(self.variables), terms)

    def at_end(self) -> bool:
        return self.peek()[0] == "end"


def _exp_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def parse_poly(text: str, variables: Sequence[str] = ("x", "y")) -> Poly:
    """Parse a polynomial expression with exact rational coefficients."""
    parser = _Parser(text, variables)
    p = parser.parse_poly()
    if not parser.at_end():
        raise parser.fail("trailing input after polynomial")
    return p


def parse_weighted_terms(
    text: str, variables: Sequence[str] = ("x", "y")
) -> list[tuple[Fraction, Poly]]:
    """Parse ``rational*(poly) + rational*(poly) + ...`` into (coeff, poly)
    pairs, order preserved."""
    parser = _Parser(text, variables)
    out: list[tuple[Fraction, Poly]] = []
    while True:
        coeff = parser.parse_rational()
        parser.expect_op("*")
        parser.expect_op("(")
        p = parser.parse_poly()
        parser.expect_op(")")
        out.append((coeff, p))
        if parser.peek()[:2] == ("op", "+"):
            parser.next()
            continue
        if not parser.at_end():
            raise parser.fail("expected '+' or end of divisor expression")
        return out


# ---------------------------------------------------------------------------
# rendering (canonical, re-parseable)


def render_poly(p: Poly, variables: Sequence[str] = ("x", "y")) -> str:
    if len(variables) != p.nvars:
        raise InputError("wrong number of variable names")
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for exp in sorted(p.terms, key=lambda e: (sum(e), tuple(-v for v in e))):
        coeff = p.terms[exp]
        factors = []
        for name, e in zip(variables, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def render_weighted_terms(
    pairs: Iterable[tuple[Fraction, Poly]], variables: Sequence[str] = ("x", "y")
) -> str:
    return " + ".join(f"{c}*({render_poly(p, variables)})" for c, p in pairs)


# ---------------------------------------------------------------------------
# dense univariate helpers (index = exponent)

Uni = list  # list[Fraction]


def uni_trim(c: Uni) -> Uni:
    while c and c[-1] == 0:
        c.pop()
    return c


def uni_degree(c: Uni) -> int:
    return len(c) - 1  # -1 for the zero polynomial


def uni_derivative(c: Uni) -> Uni:
    return uni_trim([c[i] * i for i in range(1, len(c))])


def uni_divmod(a: Uni, b: Uni) -> tuple[Uni, Uni]:
    if not b:
        raise InputError("univariate division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(rem) >= len(b) and uni_trim(rem):
        if len(rem) < len(b):
            break
        k = len(rem) - len(b)
        factor = rem[-1] * inv
        q[k] = factor
        for i, bc in enumerate(b):
            rem[k + i] -= factor * bc
        rem.pop()
        uni_trim(rem)
    return uni_trim(q), uni_trim(rem)


def uni_gcd(a: Uni, b: Uni) -> Uni:
    x, y = uni_trim(list(a)), uni_trim(list(b))
    while y:
        x, y = y, uni_divmod(x, y)[1]
    if x:
        lead = x[-1]
        x = [c / lead for c in x]
    return x


def uni_is_squarefree(c: Uni) -> bool:
    """gcd with the derivative is constant (degree <= 0)."""
    if not c:
        return False
    return uni_degree(uni_gcd(c, uni_derivative(c))) <= 0


def uni_coprime(a: Uni, b: Uni) -> bool:
    return uni_degree(uni_gcd(a, b)) <= 0


def series_mul(a: Uni, b: Uni, order: int) -> Uni:
    """Product truncated to degree < order."""
    out = [Fraction(0)] * order
    for i, ca in enumerate(a):
        if i >= order or ca == 0:
            continue
        for j, cb in enumerate(b):
            if i + j >= order:
                break
            if cb != 0:
                out[i + j] += ca * cb
    return out


def series_pow(a: Uni, k: int, order: int) -> Uni:
    out = [Fraction(0)] * order
    if order > 0:
        out[0] = Fraction(1)
    base = list(a[:order]) + [Fraction(0)] * max(0, order - len(a))
    while k:
        if k & 1:
            out = series_mul(out, base, order)
        base = series_mul(base, base, order)
        k >>= 1
    return out


def uni_rational_roots(c: Uni) -> tuple[list[tuple[Fraction, int]], int]:
    """All rational roots with multiplicities, plus the degree of the
    rootless residual factor.  Uses the rational root test on the integer
    model of the polynomial, deflating each root found."""
    work = uni_trim(list(c))
    if not work:
        raise InputError("zero polynomial has no well-defined roots")
    roots: list[tuple[Fraction, int]] = []
    # factor out u^k
    k = 0
    while work[0] == 0:
        work.pop(0)
        k += 1
    if k:
        roots.append((Fraction(0), k))
    while uni_degree(work) >= 1:
        root = _find_rational_root(work)
        if root is None:
            break
        mult = 0
        while True:
            q, r = uni_divmod(work, [-root, Fraction(1)])
            if r:
                break
            work = q
            mult += 1
        roots.append((root, mult))
    return roots, uni_degree(work)


def _find_rational_root(c: Uni) -> Fraction | None:
    from math import gcd

    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    a0, an = ints[0], ints[-1]
    assert a0 != 0
    for p in _divisors(abs(a0)):
        for q in _divisors(abs(an)):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if sum(co * cand ** i for i, co in enumerate(c)) == 0:
                    return cand
    return None


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
