import random

import pytest

from realbook.intalg import (
    AbelianGroup,
    IntMatrix,
    cokernel,
    determinantal_divisors,
    smith_normal_form,
    solve_integer,
    solve_integer_affine,
)


def random_matrix(rng, m, n, bound=5):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)],
                     ncols=n)


def random_unimodular(rng, n, ops=8):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.randrange(n), rng.randrange(n)
        if kind == 0 and i != j:
            q = rng.randint(-2, 2)
            m[i] = [a + q * b for a, b in zip(m[i], m[j])]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return IntMatrix(m, ncols=n)


def test_snf_identity():
    assert smith_normal_form(IntMatrix.identity(2)).d == IntMatrix.identity(2)


def test_snf_diag_2_3():
    a = IntMatrix.diagonal([2, 3])
    s = smith_normal_form(a)
    assert s.d.diag() == (1, 6)
    assert s.check(a)
    # determinantal-divisor oracle: d_k = D_k / D_{k-1}
    assert determinantal_divisors(a) == [1, 6]


def test_snf_zero():
    a = IntMatrix.zeros(2, 2)
    assert smith_normal_form(a).d == a


def test_cokernel_cyclic():
    for n in range(2, 8):
        assert cokernel(IntMatrix([[n]])) == AbelianGroup(0, (n,))


def test_cokernel_no_relations():
    empty = IntMatrix([[]], ncols=0)
    assert cokernel(empty) == AbelianGroup(1)


def test_cokernel_rank_one():
    assert cokernel(IntMatrix([[1, 0], [0, 0]])) == AbelianGroup(1)


def test_abelian_group_canonical_form_enforced():
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))


def test_snf_random_against_minor_gcd_oracle():
    rng = random.Random(0)
    for _ in range(200):
        m, n = rng.randint(0, 6), rng.randint(0, 6)
        a = random_matrix(rng, m, n)
        s = smith_normal_form(a)
        assert s.check(a)
        dd = determinantal_divisors(a)
        diag = list(s.d.diag())
        prev = 1
        for k, dk in enumerate(dd):
            if dk == 0:
                assert all(x == 0 for x in diag[k:])
                break
            assert diag[k] == dk // prev
            prev = dk


def test_snf_unimodularity_exact():
    rng = random.Random(1)
    for _ in range(100):
        a = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        s = smith_normal_form(a)
        assert abs(s.u.det()) == 1
        assert abs(s.v.det()) == 1


def test_cokernel_invariant_under_unimodular_action():
    rng = random.Random(2)
    for _ in range(80):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        a = random_matrix(rng, m, n)
        u = random_unimodular(rng, m)
        v = random_unimodular(rng, n)
        assert cokernel(u @ a @ v) == cokernel(a)


def test_solve_integer():
    a = IntMatrix([[2, 0], [0, 3]])
    assert a.apply(solve_integer(a, [4, 9])) == (4, 9)
    assert solve_integer(a, [1, 0]) is None


def test_solve_integer_affine_kernel():
    a = IntMatrix([[1, 1, 0]])
    sol = solve_integer_affine(a, [2])
    assert sol is not None
    x, kernel = sol
    assert sum(x[:2]) == 2
    assert len(kernel) == 2
    for g in kernel:
        assert g[0] + g[1] == 0 or g[2] != 0


def test_determinant_bareiss():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n)
        # compare against cofactor expansion
        def cofactor(rows):
            k = len(rows)
            if k == 0:
                return 1
            if k == 1:
                return rows[0][0]
            total = 0
            for j in range(k):
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                total += (-1) ** j * rows[0][j] * cofactor(minor)
            return total
        assert a.det() == cofactor([list(r) for r in a.rows])
