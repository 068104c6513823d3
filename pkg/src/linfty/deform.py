"""Miniversal deformations by iterated correction of the bracket.

Starting from ``d1 = d + sum(u_k * delta_k)`` (one parameter per cohomology
representative, of opposite parity) each step computes ``B = [dn, dn]/2``
and splits every coefficient into

    B = sum(a_k delta_k) + sum(b_l beta_l) + residual

with ``delta_k`` the representatives, ``beta_l`` coboundary basis vectors
and the residual in the complement of the cocycles.  The ``a_k`` generate
the relations; the coboundary part is cancelled by adding
``-sum(b_l gamma_l)`` where ``D(gamma_l) = beta_l``.  The process stops
once the coboundary part and residual vanish modulo the relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .algebra import (
    ODD,
    Parameter,
    ParameterList,
    RelationIdeal,
    Scalar,
    SuperPolynomial,
    format_polynomial,
)
from .cochain import Cochain, ElementaryMap, bracket, format_cochain
from .cohomology import CohomologyReport, cohomology_data
from .errors import DeformationError

DEFAULT_MAX_ORDER = 8
DEFAULT_TRUNCATION = 6
HALF = Scalar(1) / 2


@dataclass(frozen=True)
class ParameterInfo:
    parameter: Parameter
    weight: int
    representative: Cochain


@dataclass(frozen=True)
class DeformationState:
    base: Cochain
    order: int
    deformation: Cochain
    parameters: tuple[ParameterInfo, ...]
    relations: RelationIdeal
    history: tuple[Cochain, ...]  # correction added at each step (order 2, 3, ...)
    report: CohomologyReport = field(repr=False, compare=False)
    closed: bool = False

    @property
    def ring(self) -> ParameterList:
        return self.deformation.ring

    @property
    def truncation(self) -> int:
        return self.relations.truncation_degree


@dataclass(frozen=True)
class DeformationResult:
    state: DeformationState
    terminated: bool
    termination_order: int | None

    @property
    def deformation(self) -> Cochain:
        return self.state.deformation

    @property
    def relations(self) -> RelationIdeal:
        return self.state.relations

    @property
    def ring(self) -> ParameterList:
        return self.state.ring

    def with_relations(self, generators: Sequence[SuperPolynomial]) -> "DeformationResult":
        ideal = RelationIdeal(generators, self.ring, self.state.truncation)
        return replace(self, state=replace(self.state, relations=ideal))

    def to_dict(self) -> dict:
        st = self.state
        return {
            "terminated": self.terminated,
            "termination_order": self.termination_order,
            "truncation": st.truncation,
            "parameters": [
                {
                    "name": info.parameter.name,
                    "parity": "odd" if info.parameter.parity else "even",
                    "weight": info.weight,
                    "representative": format_cochain(info.representative),
                }
                for info in st.parameters
            ],
            "corrections": [
                {"order": k + 2, "terms": format_cochain(c)} for k, c in enumerate(st.history)
            ],
            "deformation": format_cochain(st.deformation),
            "relations": [format_polynomial(g) for g in st.relations.generators],
        }


def _name_parameters(report: CohomologyReport):
    """Even representatives get odd parameters and vice versa, numbered in weight order."""
    counts = {0: 0, 1: 0}
    raw = []
    for n, rep in report.representatives():
        parity = 1 - rep.parity()
        counts[parity] += 1
        k = counts[parity]
        param = Parameter.odd(k) if parity == ODD else Parameter.even(k)
        raw.append((param, n, rep))
    even = [r for r in raw if r[0].parity == 0]
    odd = [r for r in raw if r[0].parity == 1]
    ring = ParameterList(tuple(r[0] for r in even + odd))
    infos = tuple(ParameterInfo(p, n, rep.to_ring(ring)) for p, n, rep in raw)
    return ring, infos


def infinitesimal_deformation(d: Cochain, report: CohomologyReport,
                              truncation: int = DEFAULT_TRUNCATION) -> DeformationState:
    ring, infos = _name_parameters(report)
    d1 = d.to_ring(ring)
    for info in infos:
        d1 = d1 + SuperPolynomial.variable(info.parameter.name, ring) * info.representative
    return DeformationState(
        base=d,
        order=1,
        deformation=d1,
        parameters=infos,
        relations=RelationIdeal([], ring, truncation),
        history=(),
        report=report,
    )


@dataclass(frozen=True)
class Decomposition:
    delta: tuple[SuperPolynomial, ...]  # one per representative, in report order
    beta: tuple[SuperPolynomial, ...]  # one per coboundary basis vector
    gammas: tuple[ElementaryMap, ...]  # elementary preimage of each coboundary vector
    residual: Cochain


def decompose_cocycle(c: Cochain, report: CohomologyReport) -> Decomposition:
    """Split ``c`` monomial by monomial along representatives, coboundaries and complement."""
    space, ring = c.space, c.ring
    delta: list[SuperPolynomial] = []
    beta: list[SuperPolynomial] = []
    gammas: list[ElementaryMap] = []
    residual: dict[ElementaryMap, SuperPolynomial] = {}
    extra = c.weights() - set(report.weights)
    if extra:
        raise DeformationError(f"cochain has weights {sorted(extra)} outside the report")
    for n in sorted(report.weights):
        wd = report.weights[n]
        index = {phi: k for k, phi in enumerate(wd.basis)}
        by_mono: dict[tuple, list[Scalar]] = {}
        for phi, coef in c.weight_component(n).items():
            for mono, v in coef.items():
                vec = by_mono.setdefault(mono, [Scalar(0)] * len(wd.basis))
                vec[index[phi]] = v
        d_acc = [dict() for _ in range(wd.h)]
        b_acc = [dict() for _ in wd.coboundaries]
        r_acc = [dict() for _ in wd.complement]
        for mono, vec in by_mono.items():
            dc, bc, rc = wd.decompose(vec)
            for acc, coords in ((d_acc, dc), (b_acc, bc), (r_acc, rc)):
                for k, v in enumerate(coords):
                    if v:
                        acc[k][mono] = v
        delta += [SuperPolynomial(ring, t) for t in d_acc]
        beta += [SuperPolynomial(ring, t) for t in b_acc]
        gammas += wd.preimages
        for phi, t in zip(wd.complement, r_acc):
            if t:
                residual[phi] = SuperPolynomial(ring, t)
    return Decomposition(tuple(delta), tuple(beta), tuple(gammas),
                         Cochain(space, residual, ring))


def half_square(dn: Cochain, truncation: int) -> Cochain:
    """``[dn, dn] / 2`` with parameter degrees above ``truncation`` dropped."""
    return HALF * bracket(dn, dn, truncation=truncation)


def _distinct_up_to_scalar(polys) -> list[SuperPolynomial]:
    seen, out = set(), []
    for p in polys:
        if not p:
            continue
        _, lead = p.sorted_items()[0]
        key = p.scale(lead.inv())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def deformation_step(state: DeformationState) -> DeformationState:
    T = state.truncation
    ring = state.ring
    B = half_square(state.deformation, T)
    dec = decompose_cocycle(B, state.report)
    relations = RelationIdeal(_distinct_up_to_scalar(dec.delta), ring, T)
    correction = Cochain.zero(state.deformation.space, ring)
    for b, gamma in zip(dec.beta, dec.gammas):
        rb = relations.reduce(b)
        if rb:
            correction = correction - rb * Cochain.elementary(state.deformation.space, gamma, ring)
    residual = dec.residual.map_coefficients_poly(relations.reduce)
    # the order-n deformation lives modulo the relations and degree > n + 1
    low_ideal = relations.with_truncation(state.order + 1)
    low = dec.residual.map_coefficients_poly(
        lambda p: low_ideal.reduce(p.truncate(state.order + 1)))
    if low or (residual and not correction):
        raise DeformationError(
            f"bracket not a cocycle modulo relations at order {state.order}: {residual}",
            code="E_NOT_COCYCLE")
    closed = not correction and not residual
    return DeformationState(
        base=state.base,
        order=state.order + 1,
        deformation=state.deformation + correction,
        parameters=state.parameters,
        relations=relations,
        history=state.history if closed else state.history + (correction,),
        report=state.report,
        closed=closed,
    )


def miniversal(d: Cochain, basis_override: Mapping[int, Sequence[Cochain]] | None = None,
               max_order: int = DEFAULT_MAX_ORDER, truncation: int = DEFAULT_TRUNCATION,
               report: CohomologyReport | None = None,
               complement_override: Mapping[int, Sequence[ElementaryMap]] | None = None,
               ) -> DeformationResult:
    """Iterate correction steps until the bracket vanishes modulo the relations."""
    if max_order < 1:
        raise DeformationError("max_order must be at least 1", code="E_OPTION")
    if report is None:
        report = cohomology_data(d, basis_override, complement_override=complement_override)
    state = infinitesimal_deformation(d, report, truncation)
    while True:
        nxt = deformation_step(state)
        if nxt.closed:
            return DeformationResult(nxt, True, nxt.order - 1)
        if nxt.order > max_order or nxt.order >= truncation:
            return DeformationResult(nxt, False, None)
        state = nxt


def verify_miniversal(result: DeformationResult) -> bool:
    """Recompute the bracket and check it vanishes modulo the relations,
    and that the augmentation and parity invariants hold."""
    st = result.state
    dn, ring, ideal = st.deformation, st.ring, st.relations
    B = half_square(dn, st.truncation)
    if any(ideal.reduce(c) for _, c in B.items()):
        return False
    zero_values = {name: 0 for name in ring.names}
    augmented = dn.map_coefficients_poly(lambda p: p.substitute(zero_values))
    if augmented != st.base.to_ring(ring):
        return False
    if dn and dn.parity() != 1:
        return False
    for info in st.parameters:
        if info.parameter.parity == info.representative.parity():
            return False
    return True
