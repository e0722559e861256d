"""Exact arithmetic in the Leavitt path algebra of a finite graph over the rationals.

An element is a finite rational combination of monomials ``S_alpha S_beta^*``
with ``r(alpha) == r(beta)``.  Products of monomials are again monomials (or
zero), so multiplication never needs the normal form.  Equality in the
algebra is decided by :func:`normal_form`, which orients the second
Cuntz-Krieger relation at a chosen special edge ``e`` of each non-sink ``v``::

    S_e S_e^*  ->  P_v - sum_{f in s^-1(v), f != e} S_f S_f^*

Every rewrite is degree preserving and shortens the rewritten monomial, so
the process terminates on graphs with cycles too.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .graph import Graph, GraphError, Path, is_acyclic, paths_ending_at, sinks


@dataclass(frozen=True, order=True)
class Monomial:
    alpha: Path
    beta: Path

    def __post_init__(self):
        if self.alpha.range != self.beta.range:
            raise GraphError(f"monomial ({self.alpha}, {self.beta}): ranges differ")

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)

    @property
    def length(self) -> int:
        return len(self.alpha) + len(self.beta)

    def adjoint(self) -> "Monomial":
        return Monomial(self.beta, self.alpha)

    def sort_key(self):
        return (self.length, self.alpha.sort_key(), self.beta.sort_key())

    def __str__(self):
        return format_monomial(self)


def vertex_monomial(v: str) -> Monomial:
    p = Path(v, (), v)
    return Monomial(p, p)


def monomial_product(m1: Monomial, m2: Monomial) -> Monomial | None:
    """``S_a S_b^* . S_c S_d^*``; ``None`` stands for zero."""
    alpha, beta = m1.alpha, m1.beta
    gamma, delta = m2.alpha, m2.beta
    if beta.is_prefix_of(gamma):
        return Monomial(alpha.concat(gamma.remainder(beta)), delta)
    if gamma.is_prefix_of(beta):
        return Monomial(alpha, delta.concat(beta.remainder(gamma)))
    return None


def _coerce(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


class Element:
    """A rational linear combination of monomials over a fixed graph."""

    __slots__ = ("graph", "terms")

    def __init__(self, graph: Graph, terms: Mapping[Monomial, Fraction] | None = None):
        self.graph = graph
        self.terms = {m: _coerce(c) for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def _raw(cls, graph, terms):
        x = cls.__new__(cls)
        x.graph = graph
        x.terms = terms
        return x

    @classmethod
    def zero(cls, graph: Graph) -> "Element":
        return cls._raw(graph, {})

    @classmethod
    def monomial(cls, graph: Graph, m: Monomial, coeff=1) -> "Element":
        return cls(graph, {m: coeff})

    def _same_host(self, other: "Element"):
        if other.graph is not self.graph and other.graph != self.graph:
            raise GraphError("elements live over different graphs")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._same_host(other)
        terms = dict(self.terms)
        _accumulate(terms, other.terms.items())
        return Element._raw(self.graph, terms)

    def __neg__(self):
        return Element._raw(self.graph, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, q) -> "Element":
        q = _coerce(q)
        if q == 0:
            return Element.zero(self.graph)
        return Element._raw(self.graph, {m: q * c for m, c in self.terms.items()})

    def adjoint(self) -> "Element":
        # rational coefficients: conjugation is trivial
        return Element._raw(self.graph, {m.adjoint(): c for m, c in self.terms.items()})

    @property
    def star(self) -> "Element":
        return self.adjoint()

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms and self.graph == other.graph

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def rehost(self, graph: Graph) -> "Element":
        """The same formal combination read over another graph containing its paths."""
        for m in self.terms:
            if not (graph.has_path(m.alpha) and graph.has_path(m.beta)):
                raise GraphError(f"monomial {m} is not over {graph.name!r}")
        return Element._raw(graph, dict(self.terms))

    def __repr__(self):
        return f"Element({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


def _accumulate(terms: dict, items: Iterable[tuple[Monomial, Fraction]]):
    for m, c in items:
        total = terms.get(m, 0) + c
        if total:
            terms[m] = total
        else:
            terms.pop(m, None)


def monomial_mul(g: Graph, m1: Monomial, m2: Monomial) -> Element:
    m = monomial_product(m1, m2)
    return Element.zero(g) if m is None else Element._raw(g, {m: Fraction(1)})


def mul(x: Element, y: Element) -> Element:
    x._same_host(y)
    terms: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            m = monomial_product(m1, m2)
            if m is not None:
                _accumulate(terms, [(m, c1 * c2)])
    return Element._raw(x.graph, terms)


# -- generators ---------------------------------------------------------------

def P(g: Graph, v: str) -> Element:
    g.vertex_path(v)
    return Element._raw(g, {vertex_monomial(v): Fraction(1)})


def S(g: Graph, *edges: str) -> Element:
    p = g.path(*edges)
    return Element._raw(g, {Monomial(p, Path(p.range, (), p.range)): Fraction(1)})


def Sstar(g: Graph, *edges: str) -> Element:
    return S(g, *edges).adjoint()


# -- normal form -------------------------------------------------------------

def resolve_special_edges(g: Graph, special: Mapping[str, str] | None = None) -> dict[str, str]:
    """Default special edges, with ``special`` overriding at the vertices it names."""
    sp = dict(g.special_edges)
    if special:
        for v, e in special.items():
            if v not in sp:
                if v in g.vertices:
                    raise GraphError(f"{v} is a sink and has no special edge")
                continue
            if e not in g.out_edges[v]:
                raise GraphError(f"special edge {e} does not leave {v}")
            sp[v] = e
    return sp


def is_reducible(m: Monomial, g: Graph, sp: Mapping[str, str]) -> bool:
    e = m.alpha.last
    return e is not None and e == m.beta.last and sp.get(g.src[e]) == e


def _rewrite(m: Monomial, g: Graph) -> list[tuple[Monomial, int]]:
    e = m.alpha.last
    v = g.src[e]
    a, b = m.alpha.drop_last(g.src), m.beta.drop_last(g.src)
    out = [(Monomial(a, b), 1)]
    for f in g.out_edges[v]:
        if f != e:
            r = g.rng[f]
            out.append((Monomial(Path(a.source, a.edges + (f,), r),
                                 Path(b.source, b.edges + (f,), r)), -1))
    return out


STRATEGIES = ("fifo", "longest", "shortest", "random")


def normal_form(x: Element, special: Mapping[str, str] | None = None,
                strategy: str = "fifo", seed: int = 0) -> Element:
    """Rewrite ``x`` until no monomial ends in a matching special-edge pair.

    ``strategy`` only changes which pending redex is contracted next; the
    result is the same for every strategy.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    g = x.graph
    sp = resolve_special_edges(g, special) if special is not None else g.special_edges
    terms = dict(x.terms)
    rand = random.Random(seed)
    pending = deque(m for m in terms if is_reducible(m, g, sp))
    while pending:
        if strategy == "fifo":
            m = pending.popleft()
        else:
            if strategy == "longest":
                m = max(pending, key=Monomial.sort_key)
            elif strategy == "shortest":
                m = min(pending, key=Monomial.sort_key)
            else:
                m = pending[rand.randrange(len(pending))]
            pending.remove(m)
        c = terms.pop(m, None)
        if c is None:
            continue  # cancelled since it was queued
        for m2, sign in _rewrite(m, g):
            before = m2 in terms
            _accumulate(terms, [(m2, sign * c)])
            if not before and m2 in terms and is_reducible(m2, g, sp):
                pending.append(m2)
    return Element._raw(g, terms)


def is_zero(x: Element, special: Mapping[str, str] | None = None) -> bool:
    return not normal_form(x, special).terms


def equal(x: Element, y: Element, special: Mapping[str, str] | None = None) -> bool:
    return is_zero(x - y, special)


def degree(m: Monomial) -> int:
    return m.degree


def is_homogeneous(x: Element) -> bool:
    return len(x.degrees()) <= 1


# -- supports and dimension counts ---------------------------------------------

def all_monomials_up_to(g: Graph, max_len: int) -> list[Monomial]:
    out = []
    for v, ps in paths_ending_at(g, max_len).items():
        out.extend(Monomial(a, b) for a in ps for b in ps)
    return sorted(out, key=Monomial.sort_key)


def basis_monomials_up_to(g: Graph, max_len: int,
                          special: Mapping[str, str] | None = None) -> list[Monomial]:
    sp = resolve_special_edges(g, special)
    return [m for m in all_monomials_up_to(g, max_len) if not is_reducible(m, g, sp)]


def dimension_acyclic(g: Graph) -> int:
    """Sum over sinks of (number of paths ending there) squared."""
    if not is_acyclic(g):
        raise GraphError(f"graph {g.name!r} has a cycle")
    ending = paths_ending_at(g, len(g.vertices))
    return sum(len(ending[v]) ** 2 for v in sinks(g))


def random_element(g: Graph, max_len: int, rand: random.Random,
                   n_terms: int = 4, pool: list[Monomial] | None = None) -> Element:
    pool = pool if pool is not None else all_monomials_up_to(g, max_len)
    terms: dict = {}
    if not pool:
        return Element._raw(g, terms)
    for _ in range(n_terms):
        m = rand.choice(pool)
        c = Fraction(rand.choice([-3, -2, -1, 1, 2, 3]), rand.choice([1, 1, 2, 3]))
        _accumulate(terms, [(m, c)])
    return Element._raw(g, terms)


def coordinates(x: Element, index: Mapping[Monomial, int]) -> dict[int, Fraction]:
    """Sparse coordinate vector of the normal form of ``x`` in a monomial index."""
    out = {}
    for m, c in normal_form(x).terms.items():
        if m not in index:
            raise KeyError(m)
        out[index[m]] = c
    return out


# -- literal syntax ------------------------------------------------------------

def format_monomial(m: Monomial) -> str:
    a, b = m.alpha, m.beta
    if a.is_vertex and b.is_vertex:
        return f"S[{a.source}]"
    if b.is_vertex:
        return f"S[{a}]"
    if a.is_vertex:
        return f"S*[{b}]"
    return f"S[{a}] S*[{b}]"


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    parts = []
    for m in sorted(x.terms, key=Monomial.sort_key):
        c = x.terms[m]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_monomial(m) if mag == 1 else f"{mag} * {format_monomial(m)}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<gen>S\*?\[[^\]]*\])
  | (?P<op>[-+*()])
""", re.VERBOSE)


class LiteralError(ValueError):
    def __init__(self, column: int, message: str):
        super().__init__(f"column {column}: {message}")
        self.column = column


def _lex(text: str):
    pos = 0
    toks = []
    prev_closes = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LiteralError(pos + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        if kind == "ws":
            prev_closes = False
        elif kind == "op" and value == "*" and prev_closes:
            toks.append(("adj", value, pos + 1))
            prev_closes = True
        else:
            toks.append((kind if kind != "op" else value, value, pos + 1))
            prev_closes = kind == "gen" or value == ")"
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*``.

    A ``*`` written directly after ``]`` or ``)`` is the adjoint; any other
    ``*`` (and plain juxtaposition) is multiplication.
    """

    def __init__(self, g: Graph, text: str):
        self.g = g
        self.toks = _lex(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> Element:
        x = self.expr()
        kind, value, col = self.toks[self.i]
        if kind != "end":
            raise LiteralError(col, f"unexpected {value!r}")
        return x

    def expr(self) -> Element:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        x = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            x = x + t if op == "+" else x - t
        return x

    def term(self) -> Element:
        x = self.factor()
        while True:
            kind = self.peek()
            if kind == "*":
                self.take()
                x = x * self.factor()
            elif kind in ("num", "gen", "("):
                x = x * self.factor()
            else:
                return x

    def factor(self) -> Element:
        kind, value, col = self.take()
        if kind == "num":
            q = Fraction(value)
            x = _unit(self.g).scale(q) if q else Element.zero(self.g)
        elif kind == "gen":
            x = self.generator(value, col)
        elif kind == "(":
            x = self.expr()
            k, v, c = self.take()
            if k != ")":
                raise LiteralError(c, "expected ')'")
        else:
            raise LiteralError(col, f"unexpected {value or 'end of input'!r}")
        while self.peek() == "adj":
            self.take()
            x = x.adjoint()
        return x

    def generator(self, text: str, col: int) -> Element:
        adjoint = text.startswith("S*")
        inner = text[text.index("[") + 1:-1].strip()
        names = [n.strip() for n in inner.split(".")] if inner else []
        try:
            x = S(self.g, *names) if names else None
        except GraphError as exc:
            raise LiteralError(col, str(exc)) from None
        if x is None:
            raise LiteralError(col, "empty path")
        return x.adjoint() if adjoint else x


def _unit(g: Graph) -> Element:
    """The identity of the unital algebra of a finite graph: the sum of all ``P_v``."""
    return Element._raw(g, {vertex_monomial(v): Fraction(1) for v in g.vertices})


def parse_element(g: Graph, text: str) -> Element:
    return _Parser(g, text).parse()
