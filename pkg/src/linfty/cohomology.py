"""Matrices of the coboundary operator and cohomology with chosen bases.

For each weight ``n`` the space ``L_n`` is split as

    L_n = H^n (representatives)  +  B^n  +  C_n

where ``B^n = D(C_{n-1})`` are coboundaries and ``C_n`` is spanned by the
elementary maps on the pivot columns of ``D`` restricted to ``L_n``.  ``D``
maps ``C_n`` bijectively onto ``B^{n+1}``, which gives every coboundary a
canonical preimage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from . import _linalg as la
from .algebra import ZERO, ParameterList, Scalar
from .cochain import Cochain, ElementaryMap, bracket, map_basis
from .errors import CohomologyError
from .superspace import GradedSpace

DEFAULT_MAX_WEIGHT = 3


def _require_quadratic(d: Cochain):
    if d.weights() - {2}:
        raise CohomologyError("coboundary operator needs a quadratic codifferential",
                              code="E_NOT_QUADRATIC")
    if not d.is_parameter_free():
        raise CohomologyError("codifferential must be parameter-free", code="E_PARAMETERS")


def _weight_limit(space: GradedSpace, max_weight: int | None) -> int:
    if space.max_weight is not None:
        return space.max_weight if max_weight is None else min(max_weight, space.max_weight)
    return DEFAULT_MAX_WEIGHT if max_weight is None else max_weight


def to_vector(c: Cochain, basis: Sequence[ElementaryMap]) -> list[Scalar]:
    index = {phi: k for k, phi in enumerate(basis)}
    vec = [ZERO] * len(basis)
    for phi, coef in c.map_coefficients().items():
        if phi not in index:
            raise CohomologyError(f"{phi} is not in the expected weight")
        vec[index[phi]] = coef
    return vec


def from_vector(space: GradedSpace, vec: Sequence[Scalar], basis: Sequence[ElementaryMap],
                ring: ParameterList = ParameterList()) -> Cochain:
    return Cochain(space, {phi: v for phi, v in zip(basis, vec) if v}, ring)


def coboundary_matrix(d: Cochain, n: int) -> list[list[Scalar]]:
    """Matrix of ``D: L_n -> L_{n+1}`` in the canonical elementary bases.

    Rows index ``L_{n+1}``, columns index ``L_n``.
    """
    _require_quadratic(d)
    space = d.space
    if n < 1:
        raise CohomologyError("weights start at 1", code="E_WEIGHT")
    if space.max_weight is not None and n > space.max_weight:
        raise CohomologyError(f"weight {n} exceeds the maximal weight {space.max_weight} of {space}",
                              code="E_WEIGHT")
    src = map_basis(space, n)
    tgt = map_basis(space, n + 1) if space.max_weight is None or n < space.max_weight else []
    plain = d.to_ring(ParameterList()) if d.ring else d
    cols = []
    for phi in src:
        image = bracket(Cochain.elementary(space, phi), plain)
        cols.append(to_vector(image, tgt))
    return la.transpose(cols, len(tgt)) if cols else []


@dataclass
class WeightData:
    weight: int
    basis: list[ElementaryMap]
    matrix: list[list[Scalar]]  # D on L_weight
    cocycles: list[Cochain]
    coboundaries: list[Cochain]  # B^weight = D(complement of the previous weight)
    preimages: list[ElementaryMap]  # elementary preimage of each coboundary
    complement: list[ElementaryMap]  # C_weight
    representatives: list[Cochain]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def z(self) -> int:
        return len(self.cocycles)

    @property
    def b(self) -> int:
        """Rank of ``D`` on this weight, i.e. ``dim B^{weight+1}``."""
        return len(self.complement)

    @property
    def h(self) -> int:
        return len(self.representatives)

    @cached_property
    def _change_of_basis(self):
        cols = [to_vector(r, self.basis) for r in self.representatives]
        cols += [to_vector(c, self.basis) for c in self.coboundaries]
        cols += [[Scalar(1) if phi == c else ZERO for phi in self.basis] for c in self.complement]
        return la.inverse(la.transpose(cols, len(self.basis))) if cols else []

    def decompose(self, vec: Sequence[Scalar]):
        """Coordinates of ``vec`` on (representatives, coboundaries, complement)."""
        coords = la.matvec(self._change_of_basis, list(vec)) if self.basis else []
        h, bb = self.h, len(self.coboundaries)
        return coords[:h], coords[h:h + bb], coords[h + bb:]


@dataclass
class CohomologyReport:
    d: Cochain
    weights: dict[int, WeightData] = field(default_factory=dict)

    @property
    def space(self) -> GradedSpace:
        return self.d.space

    def dims(self) -> dict[str, tuple[int, ...]]:
        ns = sorted(self.weights)
        return {
            "z": tuple(self.weights[n].z for n in ns),
            "b": tuple(self.weights[n].b for n in ns),
            "h": tuple(self.weights[n].h for n in ns),
        }

    @property
    def h(self) -> tuple[int, ...]:
        return self.dims()["h"]

    def representatives(self) -> list[tuple[int, Cochain]]:
        return [(n, r) for n in sorted(self.weights) for r in self.weights[n].representatives]


def _parity_blocks(space: GradedSpace, basis: Sequence[ElementaryMap]) -> list[list[int]]:
    blocks: dict[int, list[int]] = {}
    for k, phi in enumerate(basis):
        blocks.setdefault(phi.parity(space), []).append(k)
    return [blocks[p] for p in sorted(blocks)]


def _cocycle_basis(space, basis, matrix) -> list[list[Scalar]]:
    """Kernel of ``D`` computed per parity block (homogeneous vectors)."""
    out = []
    n = len(basis)
    for block in _parity_blocks(space, basis):
        sub = [[row[k] for k in block] for row in matrix]
        kernel = la.nullspace(sub, len(block)) if sub else [
            [Scalar(1) if a == b else ZERO for b in range(len(block))] for a in range(len(block))
        ]
        kernel_rows, _ = la.rref(kernel) if kernel else ([], [])
        for v in kernel_rows:
            full = [ZERO] * n
            for k, x in zip(block, v):
                full[k] = x
            out.append(full)
    return out


def cohomology_data(d: Cochain, basis_override: Mapping[int, Sequence[Cochain]] | None = None,
                    max_weight: int | None = None,
                    complement_override: Mapping[int, Sequence[ElementaryMap]] | None = None,
                    ) -> CohomologyReport:
    """Cocycles, coboundaries and representatives for every weight.

    ``basis_override`` fixes the representatives of ``H^n``;
    ``complement_override`` fixes the elementary maps spanning ``C_n`` (the
    preimages used for coboundaries of weight ``n + 1``).
    """
    _require_quadratic(d)
    space = d.space
    top = _weight_limit(space, max_weight)
    overrides = dict(basis_override or {})
    complements = dict(complement_override or {})
    for n in list(overrides) + list(complements):
        if not 1 <= n <= top:
            raise CohomologyError(f"override given for weight {n} outside 1..{top}",
                                  code="E_OVERRIDE")
    report = CohomologyReport(d)
    prev_complement: list[ElementaryMap] = []
    prev_matrix_cols: dict[ElementaryMap, list[Scalar]] = {}
    for n in range(1, top + 1):
        basis = map_basis(space, n)
        matrix = coboundary_matrix(d, n)
        cocycle_vecs = _cocycle_basis(space, basis, matrix)
        pivots = la.pivot_columns(matrix) if matrix else []
        if n in complements:
            complement = _validate_complement(n, list(complements[n]), basis, matrix, len(pivots))
        else:
            complement = [basis[k] for k in pivots]
        coboundary_vecs = [prev_matrix_cols[c] for c in prev_complement]
        coboundaries = [from_vector(space, v, basis) for v in coboundary_vecs]
        if n in overrides:
            reps = _validate_override(n, list(overrides[n]), basis, matrix, coboundary_vecs,
                                      len(cocycle_vecs) - len(coboundary_vecs))
        else:
            reps = _default_representatives(space, basis, cocycle_vecs, coboundary_vecs)
        report.weights[n] = WeightData(
            weight=n,
            basis=basis,
            matrix=matrix,
            cocycles=[from_vector(space, v, basis) for v in cocycle_vecs],
            coboundaries=coboundaries,
            preimages=list(prev_complement),
            complement=complement,
            representatives=reps,
        )
        cols = la.transpose(matrix, len(basis)) if matrix else [[] for _ in basis]
        prev_matrix_cols = {phi: col for phi, col in zip(basis, cols)}
        prev_complement = complement
    return report


def _default_representatives(space, basis, cocycle_vecs, coboundary_vecs) -> list[Cochain]:
    chosen: list[list[Scalar]] = []
    span = list(coboundary_vecs)
    r = la.rank(span) if span else 0
    for v in cocycle_vecs:
        if la.rank(span + [v]) > r:
            span.append(v)
            r += 1
            chosen.append(v)
    return [from_vector(space, v, basis) for v in chosen]


def _validate_override(n, reps, basis, matrix, coboundary_vecs, h) -> list[Cochain]:
    vecs = []
    for r in reps:
        if not r.is_parameter_free():
            raise CohomologyError(f"override {r} at weight {n} has parameters", code="E_OVERRIDE")
        if r.weights() - {n}:
            raise CohomologyError(f"override {r} is not in weight {n}", code="E_OVERRIDE")
        if r.parity() is None:
            raise CohomologyError(f"override {r} is not parity-homogeneous", code="E_OVERRIDE")
        v = to_vector(r, basis)
        if matrix and any(la.matvec(matrix, v)):
            raise CohomologyError(f"override {r} at weight {n} is not a cocycle",
                                  code="E_OVERRIDE")
        vecs.append(v)
    span = list(coboundary_vecs)
    r0 = la.rank(span) if span else 0
    for rep, v in zip(reps, vecs):
        span.append(v)
        r1 = la.rank(span)
        if r1 == r0:
            raise CohomologyError(
                f"override {rep} at weight {n} is dependent modulo coboundaries",
                code="E_OVERRIDE")
        r0 = r1
    if len(reps) != h:
        raise CohomologyError(f"override at weight {n} has {len(reps)} cochains, expected h_{n} = {h}",
                              code="E_OVERRIDE")
    return reps


def _validate_complement(n, maps, basis, matrix, rank) -> list[ElementaryMap]:
    index = {phi: k for k, phi in enumerate(basis)}
    for phi in maps:
        if phi not in index:
            raise CohomologyError(f"complement map {phi} is not in weight {n}", code="E_OVERRIDE")
    if len(maps) != rank:
        raise CohomologyError(
            f"complement at weight {n} has {len(maps)} maps, expected rank {rank}",
            code="E_OVERRIDE")
    cols = [[row[index[phi]] for row in matrix] for phi in maps]
    if cols and la.rank(cols) != rank:
        raise CohomologyError(f"complement at weight {n} meets the cocycles", code="E_OVERRIDE")
    return maps
