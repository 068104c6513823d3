"""Shared fixtures-as-functions, independent oracles and hypothesis strategies."""

from __future__ import annotations

import json
import random
import re
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from hypothesis import strategies as st

from linfty.algebra import ParameterList, Scalar, SuperPolynomial
from linfty.cli import load_document
from linfty.cochain import Cochain, ElementaryMap, LinearAutomorphism, map_basis
from linfty.superspace import GradedSpace, letters_to_word, word_letters

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"
ODD3 = GradedSpace(0, 3)

CANONICAL = {
    "d3": "phi[110]_3 + phi[101]_2 + phi[011]_1",
    "d2": "phi[101]_1 + phi[101]_2 + phi[011]_2",
    "d1": "phi[011]_1",
    "d0": "0",
}


def c3(text: str, ring: ParameterList = ParameterList()) -> Cochain:
    return Cochain.parse(text, ODD3, ring)


def family(lam) -> Cochain:
    return Cochain(ODD3, {ElementaryMap((1, 0, 1), 0): 1, ElementaryMap((0, 1, 1), 1): Scalar.coerce(lam)})


def document(name: str):
    return load_document(str(DATA / f"{name}.json"))


def read_golden(name: str, ring: ParameterList = ParameterList()) -> dict[str, Cochain]:
    rows = {}
    for line in (GOLDEN / name).read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        m = re.fullmatch(r"D\((\S+)\) = (.*)", line)
        rows[m.group(1)] = c3(m.group(2), ring)
    return rows


def poly(text: str, ring: ParameterList) -> SuperPolynomial:
    return SuperPolynomial.parse(text, ring)


# ---------------------------------------------------------------------------
# random generators (seeded, for the fixed-size acceptance samples)


def random_scalar(rng: random.Random, gaussian: bool = True, bound: int = 3) -> Scalar:
    def q():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
    return Scalar(q(), q() if gaussian else 0)


def random_automorphism(rng: random.Random, space: GradedSpace = ODD3) -> LinearAutomorphism:
    while True:
        rows = []
        for i in range(space.dim):
            rows.append([random_scalar(rng) if space.letter_parity(i) == space.letter_parity(j) else 0
                         for j in range(space.dim)])
        try:
            return LinearAutomorphism(rows, space)
        except Exception:
            continue


def random_quadratic(rng: random.Random) -> Cochain:
    """Sparse small-integer quadratic cochain on 0|3 (codifferentials are frequent)."""
    terms = {}
    for phi in map_basis(ODD3, 2):
        if rng.random() < 0.35:
            terms[phi] = Scalar(rng.choice([-2, -1, 1, 2]))
    return Cochain(ODD3, terms)


# ---------------------------------------------------------------------------
# an independent Jacobi oracle over plain Fractions (no package arithmetic)


def jacobi_oracle(d: Cochain) -> bool:
    """Jacobi identity of ``[f_i, f_j] = d(f_i f_j)``, computed with bare Fractions."""
    coef = {(phi.source, phi.target): Fraction(c.re) for phi, c in d.map_coefficients().items()}

    def br(i, j):
        if i == j:
            return [Fraction(0)] * 3
        a, b = min(i, j), max(i, j)
        word = tuple(1 if k in (a, b) else 0 for k in range(3))
        sgn = 1 if i < j else -1
        return [sgn * coef.get((word, k), Fraction(0)) for k in range(3)]

    def br_vec(u, j):
        out = [Fraction(0)] * 3
        for i, x in enumerate(u):
            if x:
                out = [o + x * y for o, y in zip(out, br(i, j))]
        return out

    for a, b, c in combinations(range(3), 3):
        total = [Fraction(0)] * 3
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            total = [t + v for t, v in zip(total, br_vec(br(x, y), z))]
        if any(total):
            return False
    return True


# ---------------------------------------------------------------------------
# an independent lift oracle: expand letters one at a time


def lift_oracle(space: GradedSpace, phi: ElementaryMap, word) -> dict:
    """Coderivation of an elementary map on a word, by explicit position subsets.

    The chosen ``k`` positions are moved to the front (Koszul sign counted
    pair by pair), replaced by the target letter, and the remaining product
    is sorted back into canonical form.
    """
    letters = word_letters(word)
    k = phi.weight
    out: dict = {}
    for left in combinations(range(len(letters)), k):
        perm = list(left) + [i for i in range(len(letters)) if i not in left]
        sign = 1
        for x in range(len(perm)):
            for y in range(x + 1, len(perm)):
                odd_pair = space.letter_parity(letters[perm[x]]) and space.letter_parity(letters[perm[y]])
                if perm[x] > perm[y] and odd_pair:
                    sign = -sign
        head = letters_to_word(space, [letters[i] for i in left])
        if head is None or head[1] != phi.source:
            continue
        res = letters_to_word(space, [phi.target] + [letters[i] for i in perm[k:]])
        if res is None:
            continue
        out[res[1]] = out.get(res[1], 0) + sign * head[0] * res[0]
    return {w: c for w, c in out.items() if c}


# ---------------------------------------------------------------------------
# hypothesis strategies

small_fraction = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
scalars = st.builds(Scalar, small_fraction, small_fraction)
real_scalars = st.builds(Scalar, small_fraction)


def cochains(space: GradedSpace, weights=(1, 2), max_terms: int = 4, parity: int | None = None):
    maps = [phi for n in weights for phi in map_basis(space, n)
            if parity is None or phi.parity(space) == parity]
    return st.dictionaries(st.sampled_from(maps), real_scalars.filter(bool), max_size=max_terms).map(
        lambda terms: Cochain(space, terms))


def homogeneous_cochains(space: GradedSpace, weights=(1, 2), max_terms: int = 3):
    return st.integers(0, 1).flatmap(lambda p: cochains(space, weights, max_terms, p))


RING = ParameterList.of("t1", "t2", "theta1", "theta2", "theta3")


def polynomials(ring: ParameterList = RING, max_degree: int = 3, max_terms: int = 4):
    monos = [m for k in range(max_degree + 1) for m in ring.monomials_of_degree(k)]
    return st.dictionaries(st.sampled_from(monos), real_scalars.filter(bool), max_size=max_terms).map(
        lambda terms: SuperPolynomial(ring, terms))


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)
