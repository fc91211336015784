"""Buchberger's algorithm on raw integer-coefficient dictionaries.

Polynomials here are ``{exponent tuple: int}``; working over Z with content
removal is the same as working over Q up to units, and avoids Fraction
overhead in the inner loop.  A term order is a key function on exponent
tuples: the term with the largest key leads.
"""

from math import gcd
from typing import Dict, List, Sequence, Tuple

Exp = Tuple[int, ...]
Raw = Dict[Exp, int]


def grevlex_key(a: Exp):
    return (sum(a), tuple(-x for x in reversed(a)))


class TermOrder:
    """Weight rows compared in turn, ties broken by grevlex.

    With no rows this is grevlex.  Rows must make the order a well-order on
    the monomials that actually occur (nonnegative rows always do).
    """

    def __init__(self, rows: Sequence[Sequence[int]] = (), name: str = "grevlex"):
        self.rows = [tuple(r) for r in rows]
        self.name = name
        self._cache = {}

    def key(self, a: Exp):
        k = self._cache.get(a)
        if k is None:
            w = tuple(sum(r[i] * a[i] for i in range(len(a))) for r in self.rows)
            k = (w, sum(a), tuple(-x for x in reversed(a)))
            self._cache[a] = k
        return k

    def __repr__(self):
        return f"TermOrder({self.name}, rows={self.rows})"

    @classmethod
    def elimination(cls, n: int, eliminate: Sequence[int]):
        """Block order: total degree in the eliminated variables first."""
        row = [1 if i in set(eliminate) else 0 for i in range(n)]
        return cls([row], name="elim")

    @classmethod
    def lex(cls, n: int):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], name="lex")


def _content(p: Raw) -> int:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def make_primitive(p: Raw, order: TermOrder = None) -> Raw:
    """Divide by the content; make the leading coefficient positive."""
    if not p:
        return p
    g = _content(p)
    if order is not None:
        lead = max(p, key=order.key)
        if p[lead] < 0:
            g = -g
    if g == 1:
        return p
    return {e: c // g for e, c in p.items()}


def leading(p: Raw, order: TermOrder) -> Exp:
    return max(p, key=order.key)


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


class _Elt:
    __slots__ = ("poly", "lm", "lc", "sugar")

    def __init__(self, poly, order, sugar=None):
        self.poly = poly
        self.lm = leading(poly, order)
        self.lc = poly[self.lm]
        self.sugar = sugar if sugar is not None else max(sum(e) for e in poly)


def normal_form(f: Raw, basis: List[Raw], order: TermOrder, full: bool = True) -> Raw:
    """Remainder of f on division by ``basis`` (up to a nonzero integer factor)."""
    elts = [(leading(g, order), g) for g in basis if g]
    return _reduce(dict(f), elts, order, full)


def _reduce(f: Raw, elts, order, full=True) -> Raw:
    rem: Raw = {}
    key = order.key
    steps = 0
    while f:
        lt = max(f, key=key)
        c = f[lt]
        for lm, g in elts:
            if _divides(lm, lt):
                gc = g[lm]
                q = gcd(c, gc)
                a, b = gc // q, c // q  # f <- a f - b x^m g
                m = _sub(lt, lm)
                if a != 1:
                    for e in f:
                        f[e] *= a
                    for e in rem:
                        rem[e] *= a
                for e, cg in g.items():
                    ne = tuple(x + y for x, y in zip(e, m))
                    v = f.get(ne, 0) - b * cg
                    if v:
                        f[ne] = v
                    else:
                        f.pop(ne, None)
                steps += 1
                if steps % 16 == 0:
                    gg = gcd(_content(f) if f else 0, _content(rem) if rem else 0)
                    if gg > 1:
                        f = {e: v // gg for e, v in f.items()}
                        rem = {e: v // gg for e, v in rem.items()}
                break
        else:
            if not full:
                rem.update(f)
                return make_primitive(rem)
            rem[lt] = c
            del f[lt]
    return make_primitive(rem)


def _spoly(f: _Elt, g: _Elt) -> Raw:
    l = _lcm(f.lm, g.lm)
    mf, mg = _sub(l, f.lm), _sub(l, g.lm)
    q = gcd(f.lc, g.lc)
    a, b = g.lc // q, f.lc // q
    out: Raw = {}
    for e, c in f.poly.items():
        ne = tuple(x + y for x, y in zip(e, mf))
        out[ne] = out.get(ne, 0) + a * c
    for e, c in g.poly.items():
        ne = tuple(x + y for x, y in zip(e, mg))
        v = out.get(ne, 0) - b * c
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return {e: c for e, c in out.items() if c}


def groebner(polys: Sequence[Raw], order: TermOrder, max_pairs: int = None) -> List[Raw]:
    """Reduced Groebner basis, each element primitive with positive lead,
    sorted by decreasing leading monomial."""
    gens = [make_primitive({e: c for e, c in p.items() if c}) for p in polys]
    gens = [g for g in gens if g]
    if not gens:
        return []
    key = order.key
    G: List[_Elt] = []
    pairs: List[Tuple[int, int, Exp, int]] = []

    def update(h_idx):
        """Gebauer-Moeller update after adding G[h_idx]."""
        nonlocal pairs
        h = G[h_idx]
        active = [i for i in range(h_idx) if G[i] is not None]
        # new pairs (i, h)
        cand = []
        for i in active:
            l = _lcm(G[i].lm, h.lm)
            sug = max(G[i].sugar + sum(l) - sum(G[i].lm), h.sugar + sum(l) - sum(h.lm))
            coprime = all(x == 0 or y == 0 for x, y in zip(G[i].lm, h.lm))
            cand.append((i, l, sug, coprime))
        # chain criterion among new pairs
        keep = []
        for k, (i, l, sug, cop) in enumerate(cand):
            dominated = False
            for k2, (j, l2, _, _) in enumerate(cand):
                if k2 == k:
                    continue
                if _divides(l2, l) and (l2 != l or k2 < k):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, l, sug, cop))
        # product criterion
        newp = [(i, h_idx, l, sug) for i, l, sug, cop in keep if not cop]
        # remove old pairs whose lcm is divisible by lm(h) strictly
        oldp = []
        for (i, j, l, sug) in pairs:
            if _divides(h.lm, l):
                li = _lcm(G[i].lm, h.lm)
                lj = _lcm(G[j].lm, h.lm)
                if li != l and lj != l:
                    continue
            oldp.append((i, j, l, sug))
        pairs = oldp + newp

    # interreduce the input first
    gens.sort(key=lambda p: key(leading(p, order)))
    for p in gens:
        elts = [(e.lm, e.poly) for e in G if e is not None]
        r = _reduce(dict(p), elts, order)
        if r:
            G.append(_Elt(make_primitive(r, order), order, max(sum(e) for e in p)))
            update(len(G) - 1)

    done = 0
    while pairs:
        pairs.sort(key=lambda t: (t[3], key(t[2])), reverse=True)
        i, j, l, sug = pairs.pop()
        if G[i] is None or G[j] is None:
            continue
        s = _spoly(G[i], G[j])
        if not s:
            continue
        elts = [(e.lm, e.poly) for e in G if e is not None]
        r = _reduce(s, elts, order, full=False)
        done += 1
        if max_pairs is not None and done > max_pairs:
            raise RuntimeError("Groebner basis computation exceeded its pair budget")
        if r:
            G.append(_Elt(make_primitive(r, order), order, sug))
            update(len(G) - 1)

    # minimalize and reduce
    elts = [e for e in G if e is not None]
    elts.sort(key=lambda e: key(e.lm))
    minimal = []
    for e in elts:
        if not any(_divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    out = []
    for e in minimal:
        others = [(o.lm, o.poly) for o in minimal if o is not e]
        r = _reduce(dict(e.poly), others, order)
        out.append(make_primitive(r, order))
    out = [p for p in out if p]
    out.sort(key=lambda p: key(leading(p, order)), reverse=True)
    return out
