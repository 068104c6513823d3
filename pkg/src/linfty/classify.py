"""Classification of quadratic codifferentials on the odd space 0|3.

Such a codifferential is a Lie bracket ``[f_i, f_j] = d(f_i f_j)`` on a
three-dimensional complex vector space.  Its class is decided by the rank
of the structure matrix (the dimension of the derived subalgebra) and, in
rank two, by the action of a complementary vector on the derived ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import _linalg as la
from .algebra import ONE, ZERO, Parameter, ParameterList, Scalar, SuperPolynomial, format_polynomial
from .cochain import Cochain, ElementaryMap, bracket
from .errors import ClassificationError
from .superspace import GradedSpace

SPACE = GradedSpace(0, 3)
TAGS = ("d0", "d1", "d_family", "d2", "d3")

# rows of the structure matrix: the words f1f2, f1f3, f2f3
ROW_WORDS = ((1, 1, 0), (1, 0, 1), (0, 1, 1))


def _require_space(d: Cochain):
    if d.space != SPACE:
        raise ClassificationError(f"expected a codifferential on 0|3, got {d.space}",
                                  code="E_SPACE")
    if d.weights() - {2}:
        raise ClassificationError("codifferential has non-quadratic terms",
                                  code="E_NOT_QUADRATIC")
    if not d.is_parameter_free():
        raise ClassificationError("codifferential must be parameter-free", code="E_PARAMETERS")


@dataclass(frozen=True)
class StructureMatrix:
    """``rows[r][j]`` is the coefficient of ``phi[I_r]_(j+1)``."""

    rows: tuple[tuple[Scalar, ...], ...]

    @property
    def rank(self) -> int:
        return la.rank([list(r) for r in self.rows])

    def entries(self) -> tuple[Scalar, ...]:
        """``a1..a9`` read row by row."""
        return tuple(x for r in self.rows for x in r)


def structure_matrix(d: Cochain) -> StructureMatrix:
    _require_space(d)
    coefs = d.map_coefficients()
    rows = tuple(
        tuple(coefs.get(ElementaryMap(w, j), ZERO) for j in range(3)) for w in ROW_WORDS
    )
    return StructureMatrix(rows)


@dataclass(frozen=True)
class LieStructure:
    """Structure constants: ``constants[i][j][k]`` is the ``f_k`` component of ``[f_i, f_j]``."""

    constants: tuple[tuple[tuple[Scalar, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.constants)

    def bracket(self, a, b) -> list[Scalar]:
        """Bilinear extension to coordinate vectors."""
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n):
                if not b[j]:
                    continue
                c = a[i] * b[j]
                for k, x in enumerate(self.constants[i][j]):
                    if x:
                        out[k] = out[k] + c * x
        return out

    def is_abelian(self) -> bool:
        return not any(x for plane in self.constants for row in plane for x in row)


def to_lie(d: Cochain) -> LieStructure:
    """Read ``[f_i, f_j] = d(f_i f_j)``; ``f_j f_i = -f_i f_j`` gives antisymmetry."""
    space = d.space
    if space.even_dim:
        raise ClassificationError("Lie structure needs a purely odd space", code="E_SPACE")
    if d.weights() - {2} or not d.is_parameter_free():
        raise ClassificationError("Lie structure needs a quadratic parameter-free cochain",
                                  code="E_NOT_QUADRATIC")
    n = space.dim
    coefs = d.map_coefficients()
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i, j in combinations(range(n), 2):
        word = tuple(1 if k in (i, j) else 0 for k in range(n))
        for k in range(n):
            x = coefs.get(ElementaryMap(word, k), ZERO)
            c[i][j][k] = x
            c[j][i][k] = -x
    return LieStructure(tuple(tuple(tuple(r) for r in plane) for plane in c))


def jacobi_check(lie: LieStructure) -> bool:
    """Expand ``[[a,b],c] + [[b,c],a] + [[c,a],b]`` on every basis triple."""
    n = lie.dim
    basis = [[ONE if k == i else ZERO for k in range(n)] for i in range(n)]
    for a, b, c in combinations(range(n), 3):
        x, y, z = basis[a], basis[b], basis[c]
        total = [ZERO] * n
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            term = lie.bracket(lie.bracket(u, v), w)
            total = [p + q for p, q in zip(total, term)]
        if any(total):
            return False
    return True


# symbolic form of the codifferential condition ----------------------------

def _symbolic_ring() -> ParameterList:
    return ParameterList(tuple(Parameter.from_name(f"a{k}", 0) for k in range(1, 10)))


def quadratic_equations() -> list[SuperPolynomial]:
    """The three polynomials in ``a1..a9`` whose vanishing means ``[d, d] = 0``.

    They are the ``phi[111]_j`` coefficients of ``[d, d] / 2`` for the
    generic quadratic ``d``, with ``a1..a9`` laid out as in the structure
    matrix.
    """
    ring = _symbolic_ring()
    terms = {}
    for r, w in enumerate(ROW_WORDS):
        for j in range(3):
            terms[ElementaryMap(w, j)] = SuperPolynomial.variable(f"a{3 * r + j + 1}", ring)
    d = Cochain(SPACE, terms, ring)
    sq = bracket(d, d)
    half = Scalar(1) / 2
    return [sq.coefficient(ElementaryMap((1, 1, 1), j)).scale(half) for j in range(3)]


def violated_equations(d: Cochain) -> list[tuple[str, Scalar]]:
    """Equations of the codifferential condition that fail for ``d`` with their values."""
    a = structure_matrix(d).entries()
    values = {f"a{k + 1}": x for k, x in enumerate(a)}
    out = []
    for eq in quadratic_equations():
        v = eq.substitute(values).constant_term()
        if v:
            out.append((f"{format_polynomial(eq)} = 0", v))
    return out


# labels ---------------------------------------------------------------------

@dataclass(frozen=True)
class ClassLabel:
    """``j`` is ``None`` for ``j = infinity`` (the ``lambda = 0`` member).

    ``lam`` holds the canonical member of ``{lambda, 1/lambda}`` when the
    characteristic polynomial splits over Q(i); ``None`` otherwise.
    """

    tag: str
    j: Scalar | None = None
    lam: Scalar | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ClassificationError(f"unknown class tag {self.tag!r}", code="E_TAG")

    @property
    def lambda_pair(self) -> tuple[Scalar, Scalar | None] | None:
        if self.lam is None:
            return None
        return (self.lam, self.lam.inv() if self.lam else None)

    def to_dict(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.tag == "d_family":
            out["j"] = "inf" if self.j is None else str(self.j)
            pair = self.lambda_pair
            out["lambda"] = None if pair is None else [
                str(x) if x is not None else "inf" for x in pair
            ]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ClassLabel":
        tag = data.get("tag")
        if tag != "d_family":
            return cls(tag)
        j = None if data.get("j") == "inf" else Scalar.parse(data["j"])
        pair = data.get("lambda")
        lam = Scalar.parse(pair[0]) if pair else None
        return cls(tag, j, lam)

    def __str__(self):
        if self.tag != "d_family":
            return self.tag
        j = "inf" if self.j is None else str(self.j)
        lam = "not split" if self.lam is None else str(self.lam)
        return f"d_family(j={j}, lambda={lam})"


def family_label(lam: Scalar) -> ClassLabel:
    """Label of ``phi[101]_1 + lam * phi[011]_2``."""
    lam = Scalar.coerce(lam)
    if not lam:
        return ClassLabel("d_family", None, ZERO)
    return ClassLabel("d_family", (ONE + lam) ** 2 / lam, canonical_lambda(lam))


def canonical_lambda(lam: Scalar) -> Scalar:
    """Pick one of ``lam``, ``1/lam``: larger modulus first, then larger (re, im)."""
    if not lam:
        return lam
    other = lam.inv()
    key = lambda x: (x.norm(), x.re, x.im)  # noqa: E731
    return max(lam, other, key=key)


def _adapted_basis(rows) -> tuple[list[list[Scalar]], list[Scalar]]:
    """Echelon basis of the derived subalgebra and a completing basis vector."""
    reduced, pivots = la.rref([list(r) for r in rows])
    span = [r for r in reduced if any(r)]
    free = next(k for k in range(3) if k not in pivots)
    return span, [ONE if k == free else ZERO for k in range(3)]


def _coordinates(vectors, v) -> list[Scalar]:
    cols = la.transpose(vectors, 3)
    sol = la.solve(cols, list(v))
    if sol is None:
        raise ClassificationError("derived subalgebra is not an ideal", code="E_NOT_CODIFFERENTIAL")
    return sol


def classify(d: Cochain) -> ClassLabel:
    _require_space(d)
    lie = to_lie(d)
    if not jacobi_check(lie):
        raise ClassificationError("input is not a codifferential", code="E_NOT_CODIFFERENTIAL")
    A = structure_matrix(d)
    r = A.rank
    if r == 0:
        return ClassLabel("d0")
    if r == 3:
        return ClassLabel("d3")
    span, v3 = _adapted_basis(A.rows)
    if r == 1:
        w = span[0]
        basis = [[ONE if k == i else ZERO for k in range(3)] for i in range(3)]
        if all(not any(lie.bracket(w, x)) for x in basis):
            return ClassLabel("d1")
        return family_label(ZERO)
    B = la.transpose([_coordinates(span, lie.bracket(v3, v)) for v in span], 2)
    tr = B[0][0] + B[1][1]
    det = la.det(B)
    disc = tr * tr - 4 * det
    scalar = not B[0][1] and not B[1][0] and B[0][0] == B[1][1]
    if not disc and not scalar:
        return ClassLabel("d2")
    j = tr * tr / det
    root = disc.sqrt()
    if root is None:
        return ClassLabel("d_family", j, None)
    z1, z2 = (tr + root) / 2, (tr - root) / 2
    return ClassLabel("d_family", j, canonical_lambda(z2 / z1))


def canonical_representative(label: ClassLabel) -> Cochain:
    tag = label.tag
    text = {
        "d0": "0",
        "d1": "phi[011]_1",
        "d2": "phi[101]_1 + phi[101]_2 + phi[011]_2",
        "d3": "phi[110]_3 + phi[101]_2 + phi[011]_1",
    }
    if tag in text:
        return Cochain.parse(text[tag], SPACE)
    if label.lam is None:
        raise ClassificationError("λ not representable over ℚ(i)", code="E_NOT_SPLIT")
    return family_representative(label.lam)


def family_representative(lam) -> Cochain:
    """``phi[101]_1 + lam * phi[011]_2``."""
    return Cochain(SPACE, {
        ElementaryMap((1, 0, 1), 0): ONE,
        ElementaryMap((0, 1, 1), 1): Scalar.coerce(lam),
    })


__all__ = [
    "ClassLabel",
    "LieStructure",
    "StructureMatrix",
    "canonical_lambda",
    "canonical_representative",
    "classify",
    "family_label",
    "family_representative",
    "jacobi_check",
    "quadratic_equations",
    "structure_matrix",
    "to_lie",
    "violated_equations",
]
