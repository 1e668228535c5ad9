import pytest

from conjlab import (
    DihedralInf,
    DihedralSemidirect,
    DirectProduct,
    FreeGroup,
    Heisenberg,
    HeisenbergSemidirect,
)


def all_models():
    return [
        Heisenberg(),
        FreeGroup(2),
        DihedralInf(),
        DihedralSemidirect(),
        HeisenbergSemidirect(),
        DirectProduct(Heisenberg(), DihedralInf()),
    ]


@pytest.fixture(params=all_models(), ids=lambda m: m.name)
def model(request):
    return request.param


@pytest.fixture
def h3():
    return Heisenberg()


# ---------------------------------------------------------------------------
# Independent 3x3 integer matrix oracle for the Heisenberg group.
# The element with triple (a, b, c) is the matrix [[1,a,c],[0,1,b],[0,0,1]].


def mat_of(payload):
    a, b, c = payload
    return ((1, a, c), (0, 1, b), (0, 0, 1))


def triple_of(mat):
    assert mat[0][0] == mat[1][1] == mat[2][2] == 1
    assert mat[1][0] == mat[2][0] == mat[2][1] == 0
    return (mat[0][1], mat[1][2], mat[0][2])


def mat_mul(m, n):
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_det(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def mat_inv(m):
    # adjugate divided by determinant; determinant is 1 here so this stays
    # in the integers
    det = mat_det(m)
    assert det == 1
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = (
                m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
            )
            cof[j][i] = (-1) ** (i + j) * minor
    return tuple(tuple(row) for row in cof)
