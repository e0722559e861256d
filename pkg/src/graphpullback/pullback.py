"""The pullback square of path algebras induced by an admissible decomposition.

For a decomposition ``{F1, F2}`` of ``E`` with intersection ``F12``::

              pi1           pi2
        L(F1) <---- L(E) ----> L(F2)
          |                      |
     chi1 +-------> L(F12) <-----+ chi2

All four maps are canonical quotient maps.  The square is checked through the
ingredients that make it a pullback: commutativity, products of the two
kernels vanish, ``pi2`` sends ``ker pi1`` into ``ker chi2``, the joint kernel
of ``(pi1, pi2)`` is trivial, and compatible pairs lift to ``L(E)``.  Every
check is exact on all monomials up to a path-length bound.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .decomposition import (
    AdmissibilityReport,
    Decomposition,
    NotAdmissible,
    check_admissible,
    verify_lemma_complement,
    verify_lemma_intersection,
)
from .graph import GraphError, paths_up_to
from .leavitt import (
    Element,
    all_monomials_up_to,
    basis_monomials_up_to,
    monomial_product,
    normal_form,
    random_element,
)
from .morphisms import (
    AlgebraHom,
    apply_hom,
    compose,
    failed_relations,
    hom_respects_relations,
    ideal_representative,
    ideal_membership,
    ideal_spanning_monomials,
    is_graded_hom,
    joint_kernel,
    lift_element,
    quotient_hom,
)

DEFAULT_SEED = 20190417
DEFAULT_MAX_LEN = 3
DEFAULT_SAMPLES = 50


@dataclass(frozen=True)
class PullbackSquare:
    d: Decomposition
    pi1: AlgebraHom
    pi2: AlgebraHom
    chi1: AlgebraHom
    chi2: AlgebraHom

    @property
    def maps(self) -> dict[str, AlgebraHom]:
        return {"pi1": self.pi1, "pi2": self.pi2, "chi1": self.chi1, "chi2": self.chi2}


def build_square(d: Decomposition) -> PullbackSquare:
    report = check_admissible(d)
    if not report.admissible:
        raise NotAdmissible(report)
    e, f1, f2, meet = d.host, d.f1, d.f2, d.intersection
    pi1 = quotient_hom(e, d.only_in_f2, target=f1, name="pi1")
    pi2 = quotient_hom(e, d.only_in_f1, target=f2, name="pi2")
    chi1 = quotient_hom(f1, d.only_in_f1, target=meet, name="chi1")
    chi2 = quotient_hom(f2, d.only_in_f2, target=meet, name="chi2")
    return PullbackSquare(d, pi1, pi2, chi1, chi2)


def commutation_failure(sq: PullbackSquare) -> str | None:
    left = compose(sq.chi1, sq.pi1).generator_images()
    right = compose(sq.chi2, sq.pi2).generator_images()
    for name in sorted(left):
        if normal_form(left[name] - right[name]).terms:
            return name
    return None


def check_commutes(sq: PullbackSquare) -> bool:
    return commutation_failure(sq) is None


def kernel_product_failure(sq: PullbackSquare, max_len: int) -> str | None:
    e = sq.d.host
    ker1 = ideal_spanning_monomials(e, sq.d.only_in_f2, max_len)
    ker2 = ideal_spanning_monomials(e, sq.d.only_in_f1, max_len)
    for m1 in ker1:
        for m2 in ker2:
            for x, y in ((m1, m2), (m2, m1)):
                m = monomial_product(x, y)
                if m is not None and normal_form(Element(e, {m: 1})).terms:
                    return f"{x} * {y}"
    return None


def check_kernel_products(sq: PullbackSquare, max_len: int) -> bool:
    return kernel_product_failure(sq, max_len) is None


def mapped_kernel_failure(sq: PullbackSquare, max_len: int) -> str | None:
    e, f2 = sq.d.host, sq.d.f2
    for m in ideal_spanning_monomials(e, sq.d.only_in_f2, max_len):
        image = apply_hom(sq.pi2, Element(e, {m: 1}))
        if not ideal_membership(f2, sq.d.only_in_f2, image):
            return str(m)
    return None


def check_mapped_kernel(sq: PullbackSquare, max_len: int) -> bool:
    return mapped_kernel_failure(sq, max_len) is None


def mapped_kernel_is_onto(sq: PullbackSquare, max_len: int) -> bool:
    """Whether every spanning monomial of ``ker chi2`` (length <= bound) is hit by ``pi2``."""
    e, f2 = sq.d.host, sq.d.f2
    source = set(ideal_spanning_monomials(e, sq.d.only_in_f2, max_len))
    for m in ideal_spanning_monomials(f2, sq.d.only_in_f2, max_len):
        if m not in source:
            return False
        if apply_hom(sq.pi2, Element(e, {m: 1})).terms != normal_form(Element(f2, {m: 1})).terms:
            return False
    return True


def pullback_lift(sq: PullbackSquare, a: Element, b: Element) -> Element:
    """An element ``c`` of L(E) with ``pi1(c) == a`` and ``pi2(c) == b``.

    ``c = lift(a) + lift(r)`` where ``r`` is ``b - pi2(lift(a))``, a member of
    ``ker chi2``, written over monomials ranging in ``F2 - F1`` so that its
    lift is killed by ``pi1``.
    """
    d = sq.d
    if a.graph != d.f1 or b.graph != d.f2:
        raise GraphError("pullback_lift expects a over F1 and b over F2")
    if normal_form(apply_hom(sq.chi1, a) - apply_hom(sq.chi2, b)).terms:
        raise GraphError("incompatible pair: chi1(a) != chi2(b)")
    e = d.host
    first = lift_element(a, e)
    correction = b - apply_hom(sq.pi2, first)
    return first + lift_element(ideal_representative(d.f2, d.only_in_f2, correction), e)


def lifting_failure(sq: PullbackSquare, max_len: int, samples: int, seed: int) -> str | None:
    rand = random.Random(seed)
    pool = all_monomials_up_to(sq.d.host, max_len)
    for i in range(samples):
        c = random_element(sq.d.host, max_len, rand, pool=pool)
        a, b = apply_hom(sq.pi1, c), apply_hom(sq.pi2, c)
        lifted = pullback_lift(sq, a, b)
        if apply_hom(sq.pi1, lifted) != a or apply_hom(sq.pi2, lifted) != b:
            return f"sample {i}: {c}"
    return None


def joint_kernel_failure(sq: PullbackSquare, max_len: int) -> str | None:
    """A nonzero element killed by both pi1 and pi2, if one exists at this length."""
    domain = basis_monomials_up_to(sq.d.host, max_len)
    for x in joint_kernel([sq.pi1, sq.pi2], domain):
        if normal_form(x).terms:
            return str(x)
    return None


def path_containment_failure(d: Decomposition, max_len: int) -> str | None:
    """Paths of either piece ending in shared vertices must lie in the intersection."""
    meet = d.intersection
    for f in (d.f1, d.f2):
        for p in paths_up_to(f, max_len):
            if p.range in d.shared and not meet.has_path(p):
                return f"{p} in {f.name}"
    return None


@dataclass
class TheoremReport:
    length_bound: int
    admissibility: AdmissibilityReport
    lemmas: bool = False
    relations: bool = False
    commutes: bool = False
    kernel_products_zero: bool = False
    mapped_kernel_included: bool = False
    mapped_kernel_equality: bool = False
    joint_kernel_trivial: bool = False
    path_containment: bool = False
    lifting_verified: bool = False
    graded: bool = False
    lifting_samples: int = 0
    seed: int = DEFAULT_SEED
    witnesses: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    FLAGS = ("lemmas", "relations", "commutes", "kernel_products_zero",
             "mapped_kernel_included", "joint_kernel_trivial", "path_containment",
             "lifting_verified", "graded")

    @property
    def admissible(self) -> bool:
        return self.admissibility.admissible

    @property
    def passed(self) -> bool:
        return self.admissible and all(getattr(self, f) for f in self.FLAGS)

    def to_dict(self, timing: bool = False) -> dict:
        d = {"admissibility": self.admissibility.to_dict(),
             "admissible": self.admissible}
        for f in self.FLAGS:
            # checks after a failed admissibility test are not run
            d[f] = getattr(self, f) if self.admissible else None
        d["mapped_kernel_equality"] = self.mapped_kernel_equality
        d["lifting_samples"] = self.lifting_samples
        d["length_bound"] = self.length_bound
        d["seed"] = self.seed
        d["witnesses"] = dict(sorted(self.witnesses.items()))
        d["passed"] = self.passed
        if timing:
            d["timing"] = {k: round(v, 4) for k, v in self.timing.items()}
        return d


def verify_theorem(d: Decomposition, max_len: int = DEFAULT_MAX_LEN,
                   seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES) -> TheoremReport:
    report = TheoremReport(max_len, check_admissible(d), seed=seed)
    if not report.admissible:
        return report
    clock = time.perf_counter

    def timed(name, fn):
        start = clock()
        result = fn()
        report.timing[name] = clock() - start
        return result

    report.lemmas = timed("lemmas", lambda: verify_lemma_intersection(d)
                          and verify_lemma_complement(d))
    sq = timed("build", lambda: build_square(d))

    def relations():
        for name, hom in sq.maps.items():
            bad = failed_relations(hom)
            if bad:
                report.witnesses["relations"] = f"{name}: {bad[0]}"
                return False
            if not hom_respects_relations(hom, min(max_len, 2), seed=seed):
                report.witnesses["relations"] = f"{name}: sampled normal-form check"
                return False
        return True

    report.relations = timed("relations", relations)

    checks = [
        ("commutes", lambda: commutation_failure(sq)),
        ("kernel_products_zero", lambda: kernel_product_failure(sq, max_len)),
        ("mapped_kernel_included", lambda: mapped_kernel_failure(sq, max_len)),
        ("joint_kernel_trivial", lambda: joint_kernel_failure(sq, max_len)),
        ("path_containment", lambda: path_containment_failure(d, 2 * max_len)),
        ("lifting_verified", lambda: lifting_failure(sq, max_len, samples, seed)),
    ]
    for flag, fn in checks:
        witness = timed(flag, fn)
        setattr(report, flag, witness is None)
        if witness is not None:
            report.witnesses[flag] = witness
    report.lifting_samples = samples
    report.mapped_kernel_equality = timed("mapped_kernel_equality",
                                          lambda: mapped_kernel_is_onto(sq, max_len))

    def graded():
        for name, hom in sq.maps.items():
            if not is_graded_hom(hom, max_len):
                report.witnesses["graded"] = name
                return False
        return True

    report.graded = timed("graded", graded)
    return report
