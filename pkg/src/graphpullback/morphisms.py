"""Homomorphisms between Leavitt path algebras, defined on generators."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .graph import (
    Graph,
    GraphError,
    Path,
    is_hereditary,
    is_saturated,
    is_subgraph,
    paths_ending_at,
    quotient_graph,
)
from .leavitt import (
    Element,
    Monomial,
    P,
    S,
    all_monomials_up_to,
    basis_monomials_up_to,
    format_element,
    is_homogeneous,
    mul,
    normal_form,
    parse_element,
    random_element,
)


@dataclass(frozen=True)
class AlgebraHom:
    source: Graph
    target: Graph
    vertex_image: Mapping[str, Element]
    edge_image: Mapping[str, Element]
    name: str = ""

    def __post_init__(self):
        if set(self.vertex_image) != set(self.source.vertices):
            raise GraphError(f"{self.name}: vertex images must cover exactly the source vertices")
        if set(self.edge_image) != set(self.source.edges):
            raise GraphError(f"{self.name}: edge images must cover exactly the source edges")
        for x in list(self.vertex_image.values()) + list(self.edge_image.values()):
            if x.graph != self.target:
                raise GraphError(f"{self.name}: generator image not over the target graph")

    def path_image(self, p) -> Element:
        if p.is_vertex:
            return self.vertex_image[p.source]
        x = self.edge_image[p.edges[0]]
        for e in p.edges[1:]:
            x = mul(x, self.edge_image[e])
        return x

    def monomial_image(self, m: Monomial) -> Element:
        return mul(self.path_image(m.alpha), self.path_image(m.beta).adjoint())

    def __call__(self, x: Element) -> Element:
        return apply_hom(self, x)

    def generator_images(self) -> dict[str, Element]:
        return {**self.vertex_image, **self.edge_image}

    def same_on_generators(self, other: "AlgebraHom") -> bool:
        if self.source != other.source or self.target != other.target:
            return False
        mine, theirs = self.generator_images(), other.generator_images()
        return all(normal_form(mine[k] - theirs[k]).terms == {} for k in mine)

    def to_json(self) -> dict:
        return {"vertices": {v: format_element(normal_form(x))
                             for v, x in sorted(self.vertex_image.items())},
                "edges": {e: format_element(normal_form(x))
                          for e, x in sorted(self.edge_image.items())}}

    @classmethod
    def from_json(cls, source: Graph, target: Graph, data, name: str = "") -> "AlgebraHom":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(source, target,
                   {v: parse_element(target, s) for v, s in data["vertices"].items()},
                   {e: parse_element(target, s) for e, s in data["edges"].items()},
                   name)


def apply_hom(hom: AlgebraHom, x: Element) -> Element:
    if x.graph != hom.source:
        raise GraphError(f"{hom.name}: element is not over the source graph")
    terms: dict = {}
    cache: dict = {}
    for m, c in x.terms.items():
        img = cache.get(m)
        if img is None:
            img = cache[m] = hom.monomial_image(m)
        for m2, c2 in img.terms.items():
            terms[m2] = terms.get(m2, 0) + c * c2
    return normal_form(Element(hom.target, terms))


def compose(second: AlgebraHom, first: AlgebraHom, name: str = "") -> AlgebraHom:
    if first.target != second.source:
        raise GraphError("homs do not compose")
    return AlgebraHom(first.source, second.target,
                      {v: apply_hom(second, x) for v, x in first.vertex_image.items()},
                      {e: apply_hom(second, x) for e, x in first.edge_image.items()},
                      name or f"{second.name}o{first.name}")


def identity_hom(g: Graph) -> AlgebraHom:
    return AlgebraHom(g, g, {v: P(g, v) for v in g.vertices},
                      {e: S(g, e) for e in g.edges}, f"id_{g.name}")


def quotient_hom(e: Graph, h, target: Graph | None = None, validate: bool = True,
                 name: str = "") -> AlgebraHom:
    """The canonical surjection onto the algebra of ``e/h``.

    With ``validate=False`` the generator assignment is built even when ``h``
    is not saturated; such a candidate generally violates the relations.
    """
    h = frozenset(h)
    if not is_hereditary(e, h):
        raise GraphError(f"{sorted(h)} is not hereditary in {e.name!r}")
    if validate and not is_saturated(e, h):
        raise GraphError(f"{sorted(h)} is not saturated in {e.name!r}")
    q = quotient_graph(e, h)
    if target is None:
        target = q
    elif target != q:
        raise GraphError(f"target {target.name!r} is not the quotient graph by {sorted(h)}")
    zero = Element.zero(target)
    return AlgebraHom(
        e, target,
        {v: zero if v in h else P(target, v) for v in e.vertices},
        {f: zero if e.rng[f] in h else S(target, f) for f in e.edges},
        name or f"{e.name}->{target.name}")


# -- relations ----------------------------------------------------------------

def relation_elements(g: Graph) -> list[tuple[str, Element]]:
    """CK1, CK2, the derived path relations, and orthogonality of the vertex projections."""
    rels = []
    for e in sorted(g.edges):
        rels.append((f"CK1[{e}]", S(g, e).adjoint() * S(g, e) - P(g, g.rng[e])))
        rels.append((f"left[{e}]", P(g, g.src[e]) * S(g, e) - S(g, e)))
        rels.append((f"right[{e}]", S(g, e) * P(g, g.rng[e]) - S(g, e)))
        for f in sorted(g.edges):
            if f != e:
                rels.append((f"orth[{f},{e}]", S(g, f).adjoint() * S(g, e)))
    for v in sorted(g.vertices):
        out = g.out_edges[v]
        if out:
            total = Element.zero(g)
            for e in out:
                total = total + S(g, e) * S(g, e).adjoint()
            rels.append((f"CK2[{v}]", P(g, v) - total))
        rels.append((f"proj[{v}]", P(g, v) * P(g, v) - P(g, v)))
        for w in sorted(g.vertices):
            if w != v:
                rels.append((f"orthP[{v},{w}]", P(g, v) * P(g, w)))
    return rels


def failed_relations(hom: AlgebraHom) -> list[str]:
    return [name for name, r in relation_elements(hom.source) if apply_hom(hom, r).terms]


def hom_respects_relations(hom: AlgebraHom, max_len: int = 2, samples: int = 20,
                           seed: int = 0) -> bool:
    if failed_relations(hom):
        return False
    rand = random.Random(seed)
    pool = all_monomials_up_to(hom.source, max_len)
    for _ in range(samples):
        x = random_element(hom.source, max_len, rand, pool=pool)
        if apply_hom(hom, normal_form(x)).terms != apply_hom(hom, x).terms:
            return False
    return True


# -- ideals ---------------------------------------------------------------------

@dataclass(frozen=True)
class IdealSpan:
    host: Graph
    h: frozenset
    length_bound: int
    monomials: tuple

    def __iter__(self):
        return iter(self.monomials)

    def __len__(self):
        return len(self.monomials)


def ideal_spanning_monomials(e: Graph, h, max_len: int) -> IdealSpan:
    h = frozenset(h)
    if not is_hereditary(e, h):
        raise GraphError(f"{sorted(h)} is not hereditary in {e.name!r}")
    out = []
    for v, ps in paths_ending_at(e, max_len).items():
        if v in h:
            out.extend(Monomial(a, b) for a in ps for b in ps)
    return IdealSpan(e, h, max_len, tuple(sorted(out, key=Monomial.sort_key)))


def ideal_membership(e: Graph, h, x: Element) -> bool:
    return not apply_hom(quotient_hom(e, h), x).terms


def ideal_representative(g: Graph, h, x: Element) -> Element:
    """Rewrite ``x`` (in the kernel of the quotient map by ``h``) as a combination
    of monomials whose common range lies in ``h``.

    The part of ``x`` ranging outside ``h`` is reduced with the quotient graph's
    CK2 rewrite.  Read in ``g`` each such step is exact up to the terms
    ``S_{a f} S_{b f}^*`` for edges ``f`` into ``h``; those are collected.
    The quotient rewrite must end at zero.
    """
    h = frozenset(h)
    q = quotient_graph(g, h)
    sp = q.special_edges
    nx = normal_form(x)
    found = {m: c for m, c in nx.terms.items() if m.alpha.range in h}
    terms = {m: c for m, c in nx.terms.items() if m.alpha.range not in h}
    pending = [m for m in terms if _reducible_in(m, q, sp)]
    while pending:
        m = pending.pop()
        c = terms.pop(m, None)
        if c is None:
            continue
        e = m.alpha.last
        v = g.src[e]
        a, b = m.alpha.drop_last(g.src), m.beta.drop_last(g.src)
        steps = [(Monomial(a, b), c)]
        for f in g.out_edges[v]:
            if f == e:
                continue
            r = g.rng[f]
            m2 = Monomial(Path(a.source, a.edges + (f,), r), Path(b.source, b.edges + (f,), r))
            if r in h:
                found[m2] = found.get(m2, 0) - c
            else:
                steps.append((m2, -c))
        for m2, c2 in steps:
            total = terms.get(m2, 0) + c2
            if total:
                if m2 not in terms and _reducible_in(m2, q, sp):
                    pending.append(m2)
                terms[m2] = total
            else:
                terms.pop(m2, None)
    if terms:
        raise GraphError(f"element is not in the ideal generated by {sorted(h)}")
    return Element(g, found)


def _reducible_in(m: Monomial, q: Graph, sp) -> bool:
    e = m.alpha.last
    return e is not None and e == m.beta.last and sp.get(q.src[e]) == e


def lift_monomial(sub: Graph, host: Graph, m: Monomial) -> Monomial:
    if not is_subgraph(sub, host):
        raise GraphError(f"{sub.name!r} is not a subgraph of {host.name!r}")
    if not (sub.has_path(m.alpha) and sub.has_path(m.beta)):
        raise GraphError(f"monomial {m} is not over {sub.name!r}")
    return m


def lift_element(x: Element, host: Graph) -> Element:
    if not is_subgraph(x.graph, host):
        raise GraphError(f"{x.graph.name!r} is not a subgraph of {host.name!r}")
    return x.rehost(host)


def is_graded_hom(hom: AlgebraHom, max_len: int = 2) -> bool:
    for images, deg in ((hom.vertex_image, 0), (hom.edge_image, 1)):
        for x in images.values():
            if not is_homogeneous(x) or (x.terms and x.degrees() != {deg}):
                return False
    for m in all_monomials_up_to(hom.source, max_len):
        img = apply_hom(hom, Element(hom.source, {m: 1}))
        if img.terms and img.degrees() != {m.degree}:
            return False
    return True


# -- exact linear algebra at bounded length ------------------------------------

def _matrix(rows: list[dict[int, Fraction]], ncols: int) -> DomainMatrix:
    data = {i: {j: QQ(c.numerator, c.denominator) for j, c in r.items()}
            for i, r in enumerate(rows) if r}
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _index(elements: list[Element]) -> dict[Monomial, int]:
    index: dict[Monomial, int] = {}
    for x in elements:
        for m in sorted(x.terms, key=Monomial.sort_key):
            index.setdefault(m, len(index))
    return index


def _vectors(elements: list[Element], index) -> list[dict[int, Fraction]]:
    return [{index[m]: c for m, c in x.terms.items()} for x in elements]


def joint_kernel(homs: list[AlgebraHom], domain: list[Monomial]) -> list[Element]:
    """A basis of the common kernel of ``homs`` restricted to span(domain)."""
    if not domain:
        return []
    g = homs[0].source
    columns = []  # one image vector per domain monomial, stacked over all homs
    images = [[apply_hom(h, Element(g, {m: 1})) for m in domain] for h in homs]
    offsets = []
    total = 0
    for imgs in images:
        index = _index(imgs)
        offsets.append((index, total))
        total += len(index)
    for j in range(len(domain)):
        col = {}
        for (index, off), imgs in zip(offsets, images):
            for m, c in imgs[j].terms.items():
                col[off + index[m]] = c
        columns.append(col)
    # transpose into rows over the domain coordinates
    rows: list[dict[int, Fraction]] = [dict() for _ in range(total)]
    for j, col in enumerate(columns):
        for i, c in col.items():
            rows[i][j] = c
    if total == 0:
        return [Element(g, {m: 1}) for m in domain]
    kernel = _matrix(rows, len(domain)).to_dense().nullspace().to_list()
    out = []
    for vec in kernel:
        terms = {domain[j]: Fraction(int(c.numerator), int(c.denominator)) for j, c in enumerate(vec) if c != 0}
        if terms:
            out.append(Element(g, terms))
    return out


def in_span(x: Element, spanning: list[Element]) -> bool:
    """Exact test that the normal form of ``x`` lies in the span of the normal forms of ``spanning``."""
    nx = normal_form(x)
    if not nx.terms:
        return True
    ns = [normal_form(s) for s in spanning]
    index = _index(ns + [nx])
    rows = _vectors(ns, index)
    base = _matrix(rows, len(index)).rank() if any(rows) else 0
    return _matrix(rows + _vectors([nx], index), len(index)).rank() == base


def kernel_equals_ideal(e: Graph, h, max_len: int, extra: int | None = None) -> bool:
    """Kernel of the quotient map versus the ideal span, at bounded path length.

    Every spanning monomial of length <= ``max_len`` must be killed, and every
    kernel vector supported on irreducible monomials of length <= ``max_len``
    must lie in the span of spanning monomials of length <= ``max_len + extra``.
    """
    hom = quotient_hom(e, h)
    span = ideal_spanning_monomials(e, h, max_len)
    if any(apply_hom(hom, Element(e, {m: 1})).terms for m in span):
        return False
    if extra is None:
        extra = len(e.vertices)
    big = [Element(e, {m: 1}) for m in ideal_spanning_monomials(e, h, max_len + extra)]
    for x in joint_kernel([hom], basis_monomials_up_to(e, max_len)):
        if not in_span(x, big):
            return False
    return True
