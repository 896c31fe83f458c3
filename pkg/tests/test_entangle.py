"""Two-particle states, censuses, correlators, and the CHSH scan."""

import pytest

from bioqm import (
    FieldConfig,
    StateVector,
    axis_quadruples,
    census,
    chsh,
    chsh_bound,
    chsh_scan,
    classify,
    correlator,
    from_product,
    from_vector,
    representative_states,
    single_spin,
    two_particle_states,
)
from bioqm.entangle import one_sided_spin, product_spin
from bioqm.linear import det2, enumerate_projective, kron, matrix_make

GF3 = FieldConfig(3, 1)
GF9 = FieldConfig(3, 2)
GF7 = FieldConfig(7, 1)


def vec(config, entries):
    return StateVector.make(config, entries)


def _det_oracle(state):
    # a 4-vector factorizes exactly when its 2x2 reshape is singular
    v = state.rep
    reshaped = ((v[0], v[1]), (v[2], v[3]))
    return det2(reshaped).is_zero


@pytest.mark.parametrize("config", [GF3, GF9], ids=["gf3", "gf9"])
def test_classification_matches_determinant_oracle(config):
    for pair in two_particle_states(config):
        assert pair.is_product == _det_oracle(pair.state)


def test_two_particle_states_cover_projective_space():
    assert len(two_particle_states(GF3)) == 40
    assert len(two_particle_states(GF9)) == 820


CENSUS3 = {
    "states": 40,
    "product": 16,
    "product_physical": 16,
    "product_self_orthogonal": 0,
    "entangled": 24,
    "entangled_physical": 8,
    "entangled_self_orthogonal": 16,
}

CENSUS9 = {
    "states": 820,
    "product": 100,
    "product_physical": 36,
    "product_self_orthogonal": 64,
    "entangled": 720,
    "entangled_physical": 504,
    "entangled_self_orthogonal": 216,
}

CENSUS7 = {
    "states": 400,
    "product": 64,
    "product_physical": 64,
    "product_self_orthogonal": 0,
    "entangled": 336,
    "entangled_physical": 272,
    "entangled_self_orthogonal": 64,
}


@pytest.mark.parametrize(
    "config,expected", [(GF3, CENSUS3), (GF9, CENSUS9), (GF7, CENSUS7)],
    ids=["gf3", "gf9", "gf7"],
)
def test_census_frozen(config, expected):
    assert census(config).counts() == expected


def test_census_against_independent_recount():
    # recount GF(3) from scratch with only projective enumeration and the
    # determinant test
    product = product_physical = 0
    entangled = entangled_physical = 0
    for state in enumerate_projective(GF3, 4):
        reshaped = ((state.rep[0], state.rep[1]), (state.rep[2], state.rep[3]))
        if det2(reshaped).is_zero:
            product += 1
            product_physical += state.physical
        else:
            entangled += 1
            entangled_physical += state.physical
    counts = census(GF3).counts()
    assert counts["product"] == product == 16
    assert counts["product_physical"] == product_physical == 16
    assert counts["entangled"] == entangled == 24
    assert counts["entangled_physical"] == entangled_physical == 8


def test_census_totals_are_consistent():
    for config in (GF3, GF9, GF7):
        c = census(config).counts()
        assert c["states"] == c["product"] + c["entangled"]
        assert c["product"] == c["product_physical"] + c["product_self_orthogonal"]
        assert (
            c["entangled"]
            == c["entangled_physical"] + c["entangled_self_orthogonal"]
        )


def test_representative_states_frozen():
    reps9 = representative_states(GF9)
    assert sorted(reps9) == ["S", "T", "U"]
    assert str(reps9["S"].state.rep) == "[0, 1, -1, 0]"
    assert str(reps9["T"].state.rep) == "[1, 0, 1+i, 1]"
    assert str(reps9["U"].state.rep) == "[1, 0, 1, 1+i]"
    for pair in reps9.values():
        assert pair.physical and not pair.is_product
    reps3 = representative_states(GF3)
    assert sorted(reps3) == ["S"]
    assert str(reps3["S"].state.rep) == "[0, 1, -1, 0]"


def test_from_product_and_from_vector():
    pair = from_product(vec(GF3, [1, 0]), vec(GF3, [0, 1]))
    assert pair.is_product
    singlet = from_vector(vec(GF3, [0, 1, -1, 0]))
    assert not singlet.is_product
    assert singlet.physical


def test_classify_accepts_projective_input():
    from bioqm.linear import canonicalize

    state = canonicalize(vec(GF9, [1, 0, (1, 1), 1]))
    assert not classify(state).is_product


# -- correlators ----------------------------------------------------------------

# rows indexed by (i, j) over axes 1, 2, 3
CORRELATOR_GRID = {
    "S": {(1, 1): -1, (1, 2): 0, (1, 3): 0,
          (2, 1): 0, (2, 2): -1, (2, 3): 0,
          (3, 1): 0, (3, 2): 0, (3, 3): -1},
    "T": {(1, 1): -1, (1, 2): 0, (1, 3): -1,
          (2, 1): 0, (2, 2): 1, (2, 3): -1,
          (3, 1): 1, (3, 2): -1, (3, 3): 0},
    "U": {(1, 1): -1, (1, 2): -1, (1, 3): -1,
          (2, 1): -1, (2, 2): 1, (2, 3): 0,
          (3, 1): 1, (3, 2): 1, (3, 3): -1},
}


def test_correlator_grids_frozen():
    reps = representative_states(GF9)
    for label, grid in CORRELATOR_GRID.items():
        state = reps[label]
        for (i, j), value in grid.items():
            assert correlator(state, i, j) == value, (label, i, j)


def test_gf3_singlet_correlators():
    singlet = representative_states(GF3)["S"]
    assert {(i, j): correlator(singlet, i, j) for i in (1, 3) for j in (1, 3)} == {
        (1, 1): -1, (1, 3): 0, (3, 1): 0, (3, 3): -1,
    }


MARGINALS = {
    "S": {1: {1: 0, 2: 0, 3: 0}, 2: {1: 0, 2: 0, 3: 0}},
    "T": {1: {1: -1, 2: -1, 3: 1}, 2: {1: -1, 2: 1, 3: -1}},
    "U": {1: {1: -1, 2: 0, 3: 1}, 2: {1: -1, 2: -1, 3: 0}},
}


def test_single_spin_marginals_frozen():
    reps = representative_states(GF9)
    for label, sides in MARGINALS.items():
        for side, by_axis in sides.items():
            for axis, value in by_axis.items():
                assert single_spin(reps[label], side, axis) == value, (label, side, axis)


def test_gf3_singlet_marginals_vanish():
    singlet = representative_states(GF3)["S"]
    for side in (1, 2):
        for axis in (1, 3):
            assert single_spin(singlet, side, axis) == 0


def test_product_state_correlators_factorize():
    from bioqm import expectation, spin_observable

    x, y = vec(GF9, [1, 1]), vec(GF9, [1, (0, 1)])
    pair = from_product(x, y)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            left = expectation(x, spin_observable(GF9, i)).expectation
            right = expectation(y, spin_observable(GF9, j)).expectation
            assert correlator(pair, i, j) == left * right


def test_product_spin_is_kron_of_one_particle_matrices():
    from bioqm import spin_observable

    for i in (1, 2, 3):
        for j in (1, 2, 3):
            obs = product_spin(GF9, i, j)
            expected = kron(
                spin_observable(GF9, i).matrix, spin_observable(GF9, j).matrix
            )
            assert obs.matrix == expected


def test_one_sided_spin_embeds_identity_on_the_other_slot():
    from bioqm import spin_observable

    ident = matrix_make(GF9, [[1, 0], [0, 1]])
    s3 = spin_observable(GF9, 3).matrix
    assert one_sided_spin(GF9, 1, 3) == kron(s3, ident)
    assert one_sided_spin(GF9, 2, 3) == kron(ident, s3)


# -- CHSH -----------------------------------------------------------------------


def test_chsh_named_values():
    reps = representative_states(GF9)
    assert chsh(reps["S"], 1, 3, 3, 1).value == -2
    assert chsh(reps["T"], 1, 3, 3, 1).value == -3
    assert chsh(reps["U"], 1, 3, 3, 1).value == -4
    singlet3 = representative_states(GF3)["S"]
    assert chsh(singlet3, 1, 3, 3, 1).value == -2


def test_chsh_record_details():
    record = chsh(representative_states(GF9)["U"], 1, 3, 3, 1, label="U")
    assert record.state_label == "U"
    assert record.axes == (1, 3, 3, 1)
    assert record.correlators == {"11": -1, "13": -1, "31": 1, "33": -1}
    # value = E(13) + E(11) + E(33) - E(31)
    assert record.value == -1 + -1 + -1 - 1


def test_chsh_extra_frozen_values():
    t = representative_states(GF9)["T"]
    assert chsh(t, 1, 3, 1, 3).value == -1
    assert chsh(t, 3, 1, 1, 3).value == 1
    assert chsh(t, 3, 1, 3, 1).value == 1
    s = representative_states(GF9)["S"]
    assert chsh(s, 3, 1, 1, 3).value == -2


def test_chsh_rejects_bad_axes():
    s = representative_states(GF9)["S"]
    with pytest.raises(ValueError):
        chsh(s, 1, 1, 3, 1)
    with pytest.raises(ValueError):
        chsh(s, 1, 3, 3, 3)
    with pytest.raises(ValueError):
        chsh(s, 1, 4, 3, 1)
    singlet3 = representative_states(GF3)["S"]
    with pytest.raises(ValueError):
        chsh(singlet3, 1, 2, 3, 1)  # axis 2 needs the extension field


def test_axis_quadruple_counts():
    assert len(axis_quadruples(GF3)) == 4
    assert len(axis_quadruples(GF9)) == 36
    for A, a, B, b in axis_quadruples(GF9):
        assert A != a and B != b


SCAN = {
    "S": {0: 6, 1: 24, 2: 6, 3: 0, 4: 0},
    "T": {0: 6, 1: 18, 2: 6, 3: 6, 4: 0},
    "U": {0: 12, 1: 12, 2: 4, 3: 4, 4: 4},
}


def test_chsh_scan_frozen():
    reps = representative_states(GF9)
    for label, expected in SCAN.items():
        hist = chsh_scan(reps[label])
        assert hist == expected
        assert sum(hist.values()) == 36


def test_chsh_bounds():
    b3 = chsh_bound(GF3)
    assert b3.bound == 2
    assert b3.states_scanned == 24
    assert b3.quadruples_per_state == 4
    b9 = chsh_bound(GF9)
    assert b9.bound == 4
    assert b9.states_scanned == 540
    assert b9.quadruples_per_state == 36


def test_chsh_classical_bound_holds_for_all_product_states():
    for pair in two_particle_states(GF3):
        if pair.physical and pair.is_product:
            for A, a, B, b in axis_quadruples(GF3):
                assert abs(chsh(pair, A, a, B, b).value) <= 2
