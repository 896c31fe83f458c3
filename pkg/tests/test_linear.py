"""State vectors, the sesquilinear pairing, duals, and matrix helpers."""

from itertools import product

import pytest

from bioqm import (
    FieldConfig,
    StateVector,
    canonicalize,
    conjugate_dual,
    dot,
    enumerate_projective,
    is_self_orthogonal,
)
from bioqm.linear import (
    det2,
    field_rank,
    identity_matrix,
    inverse2,
    kron,
    mat_mul,
    mat_vec,
    matrix_make,
)

GF3 = FieldConfig(3, 1)
GF9 = FieldConfig(3, 2)
GF7 = FieldConfig(7, 1)


def vec(config, entries):
    return StateVector.make(config, entries)


def test_make_and_str():
    v = vec(GF3, [0, 1, -1, 0])
    assert v.dim == 4
    assert str(v) == "[0, 1, -1, 0]"
    assert v[1] == GF3.one()
    w = vec(GF9, [(1, 1), 0])
    assert str(w) == "[1+i, 0]"


def test_zero_vector_flag():
    assert vec(GF3, [0, 0]).is_zero
    assert not vec(GF3, [0, 1]).is_zero


def test_dot_conjugates_the_left_slot():
    c = vec(GF9, [1, 1])
    e = vec(GF9, [1, (0, 1)])
    # dot(a, b) = sum frob(a_k) b_k, so dot(e, e) = 1 + (-i)(i) = 2 = -1
    assert dot(e, e) == GF9.minus_one()
    assert dot(c, c) == GF9.minus_one()
    assert dot(c, e) == GF9.element(1, 1)
    assert dot(e, c) == GF9.element(1, 2)  # conjugate of dot(c, e)


def test_frozen_norms():
    c3 = vec(GF3, [1, 1])
    assert dot(c3, c3) == GF3.minus_one()
    t = vec(GF9, [1, 0, (1, 1), 1])
    assert dot(t, t) == GF9.one()


def test_self_orthogonal_detection():
    s = vec(GF9, [1, (0, 1)])  # 1 + (-i)(i) = 2, not zero
    assert not is_self_orthogonal(s)
    w = vec(GF9, [1, 1, 1, 0])  # norm 3 = 0
    assert is_self_orthogonal(w)
    with pytest.raises(ValueError):
        is_self_orthogonal(vec(GF3, [0, 0]))


def test_conjugate_duals_frozen():
    cases = [
        (GF3, [1, 1], [-1, -1]),
        (GF3, [1, -1], [-1, 1]),
        (GF9, [1, (0, 1)], [-1, (0, 1)]),
        (GF9, [1, (0, 2)], [-1, (0, 2)]),
        (GF3, [0, 1, -1, 0], [0, -1, 1, 0]),
        (GF9, [1, 0, (1, 1), 1], [1, 0, (1, 2), 1]),
        (GF9, [1, 0, 1, (1, 1)], [1, 0, 1, (1, 2)]),
    ]
    for config, ket, bra in cases:
        dual = conjugate_dual(vec(config, ket))
        assert dual.components == vec(config, bra).components


def test_dual_pairing_is_normalized():
    for entries in ([1, 1], [1, -1], [1, 0], [0, 1]):
        v = vec(GF3, entries)
        assert conjugate_dual(v).pairing(v) == GF3.one()


def test_conjugate_dual_rejects_self_orthogonal():
    with pytest.raises(ValueError):
        conjugate_dual(vec(GF9, [1, 1, 1, 0]))


def test_canonicalize_scales_first_nonzero_to_one():
    p = canonicalize(vec(GF3, [0, -1, 1, 0]))
    assert str(p.rep) == "[0, 1, -1, 0]"
    q = canonicalize(vec(GF9, [(0, 1), -1]))
    assert str(q.rep) == "[1, i]"


def test_canonicalize_identifies_scalar_multiples():
    v = vec(GF9, [1, (1, 1), 0, (0, 2)])
    for scalar in GF9.elements():
        if scalar.is_zero:
            continue
        assert canonicalize(v.scale(scalar)).rep.components == canonicalize(v).rep.components


def test_canonicalize_rejects_zero():
    with pytest.raises(ValueError):
        canonicalize(vec(GF3, [0, 0]))


def _projective_count(q, n):
    return (q**n - 1) // (q - 1)


@pytest.mark.parametrize(
    "config,dim,count",
    [(GF3, 2, 4), (GF9, 2, 10), (GF3, 4, 40), (GF9, 4, 820), (GF7, 2, 8)],
)
def test_projective_counts(config, dim, count):
    states = enumerate_projective(config, dim)
    assert len(states) == count
    assert count == _projective_count(config.order, dim)
    reps = {s.rep.components for s in states}
    assert len(reps) == count


def test_projective_enumeration_matches_raw_dedupe():
    # independent oracle: canonicalize every nonzero raw vector and dedupe
    seen = {}
    for entries in product(range(3), repeat=2):
        if entries == (0, 0):
            continue
        state = canonicalize(vec(GF3, entries))
        seen[state.rep.components] = state.self_orthogonal
    listed = enumerate_projective(GF3, 2)
    assert {s.rep.components: s.self_orthogonal for s in listed} == seen


def test_projective_enumeration_is_deterministic():
    a = [s.rep.components for s in enumerate_projective(GF9, 2)]
    b = [s.rep.components for s in enumerate_projective(GF9, 2)]
    assert a == b
    assert a == sorted(a, key=lambda es: tuple(e.sort_key() for e in es))


def test_physical_flag_tracks_self_orthogonality():
    for state in enumerate_projective(GF9, 2):
        assert state.physical == (not state.self_orthogonal)
        assert state.self_orthogonal == is_self_orthogonal(state.rep)


def test_enumeration_guard_trips():
    with pytest.raises(ValueError):
        enumerate_projective(GF3, 17)  # 3^17 > 10^8


def test_tensor_is_row_major():
    a = vec(GF3, [1, 0])
    b = vec(GF3, [0, 1])
    assert str(a.tensor(b)) == "[0, 1, 0, 0]"
    assert str(b.tensor(a)) == "[0, 0, 1, 0]"
    singlet = a.tensor(b).add(b.tensor(a).scale(GF3.minus_one()))
    assert str(singlet) == "[0, 1, -1, 0]"


# -- matrices -------------------------------------------------------------------


def M(config, rows):
    return matrix_make(config, rows)


def test_identity_and_mat_vec():
    ident = identity_matrix(GF3, 2)
    v = vec(GF3, [1, -1])
    assert mat_vec(ident, v).components == v.components


def test_mat_mul_against_by_hand_product():
    a = M(GF3, [[1, 1], [0, 1]])
    b = M(GF3, [[1, 0], [1, 1]])
    assert mat_mul(a, b) == M(GF3, [[-1, 1], [1, 1]])


def test_kron_frozen():
    sigma1 = M(GF3, [[0, 1], [1, 0]])
    sigma3 = M(GF3, [[1, 0], [0, -1]])
    product_matrix = kron(sigma1, sigma3)
    assert product_matrix == M(
        GF3,
        [
            [0, 0, 1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
            [0, -1, 0, 0],
        ],
    )


def test_kron_respects_tensor_of_vectors():
    a = vec(GF9, [1, (1, 1)])
    b = vec(GF9, [(0, 1), -1])
    m1 = M(GF9, [[1, (0, 1)], [0, 1]])
    m2 = M(GF9, [[1, 1], [(1, 2), 0]])
    left = mat_vec(kron(m1, m2), a.tensor(b))
    right = mat_vec(m1, a).tensor(mat_vec(m2, b))
    assert left.components == right.components


def test_det2_and_inverse2_exhaustive_over_gf3():
    entries = list(GF3.elements())
    ident = identity_matrix(GF3, 2)
    invertible = 0
    for quad in product(entries, repeat=4):
        m = ((quad[0], quad[1]), (quad[2], quad[3]))
        d = det2(m)
        if d.is_zero:
            with pytest.raises(ZeroDivisionError):
                inverse2(m)
        else:
            invertible += 1
            assert mat_mul(m, inverse2(m)) == ident
            assert mat_mul(inverse2(m), m) == ident
    assert invertible == 48  # |GL(2, 3)|


def test_field_rank_cases():
    assert field_rank([vec(GF3, [1, 0]), vec(GF3, [0, 1])]) == 2
    assert field_rank([vec(GF3, [1, 1]), vec(GF3, [-1, -1])]) == 1
    assert field_rank([vec(GF3, [0, 0])]) == 0
    rows = [vec(GF9, [1, (0, 1)]), vec(GF9, [(0, 1), -1])]
    assert field_rank(rows) == 1  # second row is i times the first
