"""Coboundary matrices, cocycles, representatives and overrides."""

import pytest

from helpers import CANONICAL, GOLDEN, ODD3, c3, document, family, read_golden
from linfty import _linalg as la
from linfty.cochain import Cochain, ElementaryMap, bracket, map_basis
from linfty.cohomology import coboundary_matrix, cohomology_data, from_vector, to_vector
from linfty.errors import CohomologyError

CASES = [
    ("d3", c3(CANONICAL["d3"]), (3, 0, 0)),
    ("d2", c3(CANONICAL["d2"]), (4, 1, 0)),
    ("d_5", family(5), (4, 1, 0)),
    ("d_-1", family(-1), (4, 2, 1)),
    ("d_1", family(1), (6, 3, 0)),
    ("d1", c3(CANONICAL["d1"]), (6, 5, 2)),
    ("d0", c3(CANONICAL["d0"]), (9, 9, 3)),
]


@pytest.mark.parametrize("name, d, h", CASES, ids=[c[0] for c in CASES])
def test_cohomology_dimensions(name, d, h):
    rep = cohomology_data(d)
    assert rep.h == h
    dims = rep.dims()
    for k, n in enumerate(sorted(rep.weights)):
        wd = rep.weights[n]
        prev_b = dims["b"][k - 1] if k else 0
        # rank-nullity on L_n and z = h + b_(n-1)
        assert dims["z"][k] + dims["b"][k] == wd.dim
        assert dims["z"][k] == h[k] + prev_b


def test_coboundary_matrix_orientation():
    d2 = c3(CANONICAL["d2"])
    M = coboundary_matrix(d2, 1)
    basis1, basis2 = map_basis(ODD3, 1), map_basis(ODD3, 2)
    gold = read_golden("d2_coboundaries.txt")
    for k, phi in enumerate(basis1):
        column = [row[k] for row in M]
        assert from_vector(ODD3, column, basis2) == gold[phi.name()]


def test_d_squared_vanishes_on_matrices():
    for _, d, _ in CASES:
        M1, M2 = coboundary_matrix(d, 1), coboundary_matrix(d, 2)
        assert not any(any(r) for r in la.matmul(M2, M1))


def test_representatives_are_cocycles_independent_mod_coboundaries():
    rep = cohomology_data(c3(CANONICAL["d1"]))
    for n, wd in rep.weights.items():
        for r in wd.representatives:
            if wd.matrix:
                assert not any(la.matvec(wd.matrix, to_vector(r, wd.basis)))
        vecs = [to_vector(x, wd.basis) for x in wd.representatives + wd.coboundaries]
        if vecs:
            assert la.rank(vecs) == len(vecs)


def test_coboundary_preimages():
    d = c3(CANONICAL["d1"])
    rep = cohomology_data(d)
    for n, wd in rep.weights.items():
        for gamma, beta in zip(wd.preimages, wd.coboundaries):
            assert bracket(Cochain.elementary(ODD3, gamma), d) == beta


def test_decomposition_reassembles_the_vector():
    rep = cohomology_data(family(-1))
    wd = rep.weights[2]
    basis = wd.basis
    for k in range(len(basis)):
        vec = [1 if j == k else 0 for j in range(len(basis))]
        dc, bc, rc = wd.decompose([la.Scalar(x) for x in vec])
        total = Cochain.zero(ODD3)
        for c, r in zip(dc, wd.representatives):
            total = total + c * r
        for c, b in zip(bc, wd.coboundaries):
            total = total + c * b
        for c, phi in zip(rc, wd.complement):
            total = total + c * Cochain.elementary(ODD3, phi)
        assert total == Cochain.elementary(ODD3, basis[k])


def test_basis_override_is_used_in_order():
    doc = document("d1")
    rep = cohomology_data(doc.cochain, doc.basis_override)
    assert [str(r) for r in rep.weights[2].representatives] == [
        "phi[110]_1", "phi[101]_1", "phi[110]_2 - phi[101]_3", "phi[110]_3", "phi[101]_2"]


def test_override_rejects_a_coboundary():
    # phi[011]_2 = -(D(phi[010]_1) + D(phi[001]_3) - D(phi[100]_1)) / 2 for d2
    d2 = c3(CANONICAL["d2"])
    with pytest.raises(CohomologyError) as err:
        cohomology_data(d2, {2: [c3("phi[011]_2")]})
    assert err.value.code == "E_OVERRIDE"
    assert "dependent modulo coboundaries" in str(err.value)


def test_override_rejects_non_cocycles_and_wrong_counts():
    d2 = c3(CANONICAL["d2"])
    with pytest.raises(CohomologyError, match="not a cocycle"):
        cohomology_data(d2, {2: [c3("phi[110]_3")]})
    with pytest.raises(CohomologyError, match="expected h_2"):
        cohomology_data(d2, {2: []})


def test_complement_override_changes_preimages():
    doc = document("dminus1")
    rep = cohomology_data(doc.cochain, doc.basis_override, complement_override=doc.complement_override)
    assert rep.weights[3].preimages == [ElementaryMap((0, 1, 1), 2), ElementaryMap((1, 1, 0), 1)]
    with pytest.raises(CohomologyError):
        cohomology_data(doc.cochain, complement_override={2: [ElementaryMap((1, 0, 1), 0)]})


def test_requires_quadratic_parameter_free_input():
    with pytest.raises(CohomologyError) as err:
        cohomology_data(c3("phi[100]_1"))
    assert err.value.code == "E_NOT_QUADRATIC"
    with pytest.raises(CohomologyError):
        coboundary_matrix(c3(CANONICAL["d3"]), 4)


def test_golden_files_exist():
    assert {p.name for p in GOLDEN.iterdir()} >= {
        "d2_coboundaries.txt", "dlambda_coboundaries.txt", "d1_coboundaries.txt"}
