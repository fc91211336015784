"""Sparse multivariate polynomials with rational coefficients."""

import re
from fractions import Fraction
from math import gcd
from typing import Dict, Sequence, Tuple

from ..errors import InputError
from ..exactmath import as_fraction

Exp = Tuple[int, ...]


class Polynomial:
    """An element of Q[x_1, ..., x_n] stored as {exponent tuple: Fraction}.

    Negative exponents are allowed so Laurent polynomials can pass through
    the same type; ring operations do not care.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Dict[Exp, object] = None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            c = as_fraction(c)
            if c == 0:
                continue
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError("exponent length does not match the ring")
            clean[e] = clean.get(e, Fraction(0)) + c
            if clean[e] == 0:
                del clean[e]
        self.terms = dict(sorted(clean.items()))

    # construction helpers
    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c):
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name):
        i = list(variables).index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables, exp, c=1):
        return cls(variables, {tuple(exp): c})

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError("polynomials live in different rings")
            return other
        return Polynomial.constant(self.vars, as_fraction(other))

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Polynomial(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            (e, c), = self.terms.items()
            return Polynomial(self.vars, {tuple(-x * -k for x in e): 1 / c ** -k})
        out = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def exponents(self):
        return list(self.terms)

    def is_homogeneous(self, grading=None):
        """Homogeneity for a grading given as one degree vector per variable."""
        if not self.terms:
            return True
        degs = {self.multidegree(e, grading) for e in self.terms}
        return len(degs) == 1

    def multidegree(self, exp, grading=None):
        if grading is None:
            return (sum(exp),)
        k = len(grading[0])
        return tuple(sum(exp[i] * grading[i][j] for i in range(len(exp))) for j in range(k))

    def min_exponent(self):
        """Coordinatewise minimum of the exponents (the largest monomial factor)."""
        es = list(self.terms)
        return tuple(min(col) for col in zip(*es))

    def shift(self, exp):
        """Multiply by the (Laurent) monomial x^exp."""
        return Polynomial(self.vars, {tuple(a + b for a, b in zip(e, exp)): c
                                      for e, c in self.terms.items()})

    def substitute(self, values: Dict[str, "Polynomial"], new_vars=None):
        """Replace variables by polynomials in ``new_vars`` (default same ring)."""
        new_vars = tuple(new_vars) if new_vars is not None else self.vars
        images = []
        for name in self.vars:
            if name in values:
                v = values[name]
                if not isinstance(v, Polynomial):
                    v = Polynomial.constant(new_vars, v)
                images.append(v)
            else:
                images.append(Polynomial.var(new_vars, name))
        out = Polynomial.zero(new_vars)
        for e, c in self.terms.items():
            term = Polynomial.constant(new_vars, c)
            for img, k in zip(images, e):
                if k:
                    term = term * (img ** k)
            out = out + term
        return out

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                t *= as_fraction(x) ** k
            total += t
        return total

    def rename(self, new_vars):
        """Same terms, new variable names (same count)."""
        if len(new_vars) != len(self.vars):
            raise ValueError("variable count mismatch")
        return Polynomial(new_vars, self.terms)

    def embed(self, new_vars):
        """View this polynomial in a larger ring containing all its variables."""
        idx = [list(new_vars).index(v) for v in self.vars]
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in zip(idx, e):
                ne[i] = k
            t[tuple(ne)] = c
        return Polynomial(new_vars, t)

    def restrict(self, new_vars):
        """Drop to a smaller ring; every used variable must survive."""
        idx = {v: i for i, v in enumerate(self.vars)}
        t = {}
        keep = [idx[v] for v in new_vars]
        for e, c in self.terms.items():
            if any(e[i] for i in range(len(e)) if i not in keep):
                raise ValueError("polynomial uses a dropped variable")
            t[tuple(e[i] for i in keep)] = c
        return Polynomial(new_vars, t)

    def normalized(self):
        """Scale to integer coefficients with content 1 and a positive
        coefficient on the lexicographically largest exponent."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        lead = max(ints)
        if ints[lead] < 0:
            g = -g
        return Polynomial(self.vars, {e: Fraction(c, g) for e, c in ints.items()})

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def format_monomial(variables, exp):
    parts = []
    for name, k in zip(variables, exp):
        if k == 1:
            parts.append(name)
        elif k != 0:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Terms in descending lexicographic order, e.g. ``X1^6 - X2^6*X3^5``."""
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = format_monomial(p.vars, e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{a}*{mono}"
        else:
            body = str(a)
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9_]*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


class _Parser:
    def __init__(self, text, variables, line=None):
        self.text = text
        self.vars = tuple(variables)
        self.pos = 0
        self.line = line
        self.toks = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                self.fail(f"unexpected character {text[i]!r}", i)
            kind = m.lastindex
            val = m.group(kind)
            start = m.start(kind)
            if kind == 2:
                # split a run of letters into declared variable names, longest first
                for name, off in self._split_name(val, start):
                    self.toks.append(("var", name, off))
            else:
                self.toks.append((kind, val, start))
            i = m.end()
        self.k = 0

    def _split_name(self, word, start):
        if word in self.vars:
            return [(word, start)]
        out = []
        i = 0
        names = sorted(self.vars, key=len, reverse=True)
        while i < len(word):
            for nm in names:
                if word.startswith(nm, i):
                    out.append((nm, start + i))
                    i += len(nm)
                    break
            else:
                self.fail(f"unknown variable in {word!r}", start + i)
        return out

    def fail(self, msg, offset):
        raise InputError(msg, self.line if self.line is not None else 1, offset + 1)

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.k += 1
        return t

    def parse(self):
        if not self.toks:
            self.fail("empty polynomial", 0)
        p = self.expr()
        if self.peek() is not None:
            self.fail("trailing input", self.peek()[2])
        return p

    def expr(self):
        sign = 1
        t = self.peek()
        if t and t[0] in (5, 6):
            self.take()
            sign = -1 if t[0] == 6 else 1
        p = self.term() * sign
        while True:
            t = self.peek()
            if not t or t[0] not in (5, 6):
                return p
            self.take()
            q = self.term()
            p = p + q if t[0] == 5 else p - q
        return p

    def term(self):
        p = self.factor()
        while True:
            t = self.peek()
            if t is None:
                return p
            if t[0] == 4:
                self.take()
                p = p * self.factor()
            elif t[0] in (1, "var", 7):
                p = p * self.factor()
            else:
                return p

    def factor(self):
        t = self.take()
        if t is None:
            self.fail("unexpected end of input", len(self.text))
        if t[0] == 1:
            base = Polynomial.constant(self.vars, Fraction(t[1]))
        elif t[0] == "var":
            base = Polynomial.var(self.vars, t[1])
        elif t[0] == 7:
            base = self.expr()
            c = self.take()
            if c is None or c[0] != 8:
                self.fail("missing ')'", c[2] if c else len(self.text))
        elif t[0] in (5, 6):
            inner = self.factor()
            return inner if t[0] == 5 else -inner
        else:
            self.fail(f"unexpected {t[1]!r}", t[2])
        nt = self.peek()
        if nt and nt[0] == 3:
            self.take()
            neg = False
            e = self.take()
            if e and e[0] == 6:
                neg = True
                e = self.take()
            if not e or e[0] != 1 or "/" in e[1]:
                self.fail("exponent must be an integer", e[2] if e else len(self.text))
            k = int(e[1])
            base = base ** (-k if neg else k)
        return base


def parse_polynomial(text: str, variables: Sequence[str], line: int = None) -> Polynomial:
    """Parse text like ``2*x^2 - 1/3 xy + 7`` over the given variables.

    ``*`` is optional.  A letter run that is not a declared name is split
    greedily into the longest declared names.
    """
    return _Parser(text, variables, line).parse()
