"""Biorthogonal systems, spin observables, and the one-particle tables."""

import pytest

from bioqm import (
    BiorthogonalSystem,
    FieldConfig,
    Observable,
    StateVector,
    bracket,
    build_observable,
    enumerate_biorthogonal_systems,
    expectation,
    named_states,
    physical_states,
    spin_axes,
    spin_observable,
    state_label,
    table_report,
    verify_spectral,
)
from bioqm.biortho import SPIN_AXIS_KETS, is_ortho_nondegenerate
from bioqm.gf import phi_map
from bioqm.linear import conjugate_dual, dot, matrix_make

GF3 = FieldConfig(3, 1)
GF9 = FieldConfig(3, 2)
GF7 = FieldConfig(7, 1)


def vec(config, entries):
    return StateVector.make(config, entries)


def test_named_state_components():
    states = named_states(GF9)
    assert sorted(states) == list("abcdef")
    assert str(states["a"].rep) == "[1, 0]"
    assert str(states["b"].rep) == "[0, 1]"
    assert str(states["c"].rep) == "[1, 1]"
    assert str(states["d"].rep) == "[1, -1]"
    assert str(states["e"].rep) == "[1, i]"
    assert str(states["f"].rep) == "[1, -i]"
    assert sorted(named_states(GF3)) == list("abcd")


def test_state_label_round_trip():
    for label, state in named_states(GF9).items():
        assert state_label(state) == label


def test_physical_states_put_named_first():
    states = physical_states(GF9, 2)
    assert len(states) == 6
    assert [state_label(s) for s in states] == list("abcdef")
    assert all(s.physical for s in states)
    gf3 = physical_states(GF3, 2)
    assert [state_label(s) for s in gf3] == list("abcd")


def test_spin_axes_depend_on_degree():
    assert spin_axes(GF3) == (1, 3)
    assert spin_axes(GF9) == (1, 2, 3)
    assert spin_axes(GF7) == (1, 3)
    assert SPIN_AXIS_KETS == {3: ("a", "b"), 1: ("c", "d"), 2: ("e", "f")}


def test_spin_matrices_frozen():
    assert spin_observable(GF9, 3).matrix == matrix_make(GF9, [[1, 0], [0, -1]])
    assert spin_observable(GF9, 1).matrix == matrix_make(GF9, [[0, 1], [1, 0]])
    assert spin_observable(GF9, 2).matrix == matrix_make(
        GF9, [[0, (0, 2)], [(0, 1), 0]]
    )
    assert spin_observable(GF3, 1).matrix == matrix_make(GF3, [[0, 1], [1, 0]])


def test_spin_observables_square_to_identity():
    ident = matrix_make(GF9, [[1, 0], [0, 1]])
    for axis in (1, 2, 3):
        assert spin_observable(GF9, axis).squared().matrix == ident


def test_verify_spectral():
    for config in (GF3, GF9):
        for axis in spin_axes(config):
            assert verify_spectral(spin_observable(config, axis))


def test_negated_equals_up_to_sign():
    obs = spin_observable(GF9, 2)
    flipped = obs.negated()
    assert not obs.equals(flipped)
    assert obs.equals(flipped, up_to_sign=True)
    assert obs.equals(obs)


def test_from_kets_gives_delta_pairing():
    kets = (vec(GF9, [1, (0, 1)]), vec(GF9, [1, (0, 2)]))
    system = BiorthogonalSystem.from_kets(kets)
    for r, bra in enumerate(system.bras):
        for s, ket in enumerate(system.kets):
            value = bra.pairing(ket)
            assert value == (GF9.one() if r == s else GF9.zero())


def test_from_kets_rejects_degenerate_sets():
    with pytest.raises(ValueError):
        BiorthogonalSystem.from_kets((vec(GF3, [1, 1]), vec(GF3, [-1, -1])))
    # orthogonal but one member self-orthogonal over GF(9) in dim 4
    with pytest.raises(ValueError):
        BiorthogonalSystem.from_kets(
            (vec(GF9, [1, 1, 1, 0]), vec(GF9, [0, 0, 0, 1]))
        )


def test_is_ortho_nondegenerate_raises_on_short_span():
    with pytest.raises(ValueError):
        is_ortho_nondegenerate([vec(GF3, [1, 0, 0, 0]), vec(GF3, [0, 1, 0, 0])])


@pytest.mark.parametrize("config,count", [(GF3, 2), (GF9, 3), (GF7, 4)])
def test_system_census(config, count):
    systems = enumerate_biorthogonal_systems(config)
    assert len(systems) == count
    # independent recount: scan unordered pairs of physical rays for orthogonality
    physical = [s.rep for s in physical_states(config, 2)]
    pairs = 0
    for i, u in enumerate(physical):
        for v in physical[i + 1 :]:
            if dot(u, v).is_zero:
                pairs += 1
    assert pairs == count


def test_gf9_systems_are_the_three_axes():
    from bioqm.linear import canonicalize

    systems = enumerate_biorthogonal_systems(GF9)
    labeled = {
        tuple(sorted(state_label(canonicalize(k)) for k in s.kets)) for s in systems
    }
    assert labeled == {("a", "b"), ("c", "d"), ("e", "f")}


# -- brackets and expectation values --------------------------------------------


def _oracle_bracket(state, matrix):
    """Reference evaluation: bra entries are frob(v_k)/dot(v, v)."""
    v = state.rep if hasattr(state, "rep") else state
    bra = conjugate_dual(v)
    config = v.config
    total = config.zero()
    for r in range(v.dim):
        for c in range(v.dim):
            total = total + bra[r] * matrix[r][c] * v[c]
    return total


def test_bracket_matches_oracle_everywhere():
    for config in (GF3, GF9):
        for axis in spin_axes(config):
            obs = spin_observable(config, axis)
            for state in physical_states(config, 2):
                assert bracket(state, obs) == _oracle_bracket(state, obs.matrix)


def test_bracket_rejects_self_orthogonal_states():
    with pytest.raises(ValueError):
        bracket(vec(GF9, [1, 1, 1, 0]), spin_observable(GF9, 3))


def test_bracket_rejects_non_real_values():
    skew = matrix_make(GF9, [[(0, 1), 0], [0, 0]])
    state = named_states(GF9)["a"]
    with pytest.raises(RuntimeError):
        bracket(state, skew)


TABLE1 = {
    "a": ((0, 1), (1, 0)),
    "b": ((0, 1), (-1, 0)),
    "c": ((1, 0), (0, 1)),
    "d": ((-1, 0), (0, 1)),
}

TABLE2 = {
    "a": ((0, 1), (0, 1), (1, 0)),
    "b": ((0, 1), (0, 1), (-1, 0)),
    "c": ((1, 0), (0, 1), (0, 1)),
    "d": ((-1, 0), (0, 1), (0, 1)),
    "e": ((0, 1), (1, 0), (0, 1)),
    "f": ((0, 1), (-1, 0), (0, 1)),
}


@pytest.mark.parametrize(
    "config,expected", [(GF3, TABLE1), (GF9, TABLE2)], ids=["gf3", "gf9"]
)
def test_expectation_tables_frozen(config, expected):
    report = table_report(config)
    assert report.axes == spin_axes(config)
    seen = {
        row.label: tuple((m.expectation, m.variance) for m in row.cells)
        for row in report.rows
    }
    assert seen == expected


def test_expectation_table_against_oracle():
    # recompute every cell from raw brackets, without Observable machinery
    report = table_report(GF9)
    for row in report.rows:
        for axis, cell in zip(report.axes, row.cells):
            obs = spin_observable(GF9, axis)
            e = phi_map(_oracle_bracket(row.state, obs.matrix))
            sq = phi_map(_oracle_bracket(row.state, obs.squared().matrix))
            assert cell.expectation == e
            assert cell.variance == sq - e * e


def test_eigenstates_have_unit_expectation_and_zero_variance():
    for config in (GF3, GF9):
        named = named_states(config)
        for axis in spin_axes(config):
            obs = spin_observable(config, axis)
            up, down = SPIN_AXIS_KETS[axis]
            for label, sign in ((up, 1), (down, -1)):
                m = expectation(named[label], obs)
                assert m.expectation == sign
                assert m.variance == 0
                assert not m.variance_negative


def test_gf7_table_cells_stay_in_known_pattern():
    report = table_report(GF7)
    for row in report.rows:
        for cell in row.cells:
            assert (cell.expectation, cell.variance) in {(1, 0), (-1, 0), (0, 1)}


def test_negative_variance_shows_up_for_spread_eigenvalues():
    # over GF(7), eigenvalues 3 and 1 on the sigma_1 eigenbasis give a state
    # whose variance comes out negative under the sign map
    system = enumerate_biorthogonal_systems(GF7)[0]
    found = False
    for eigs in ((3, 1), (1, 3), (2, 3), (3, 2)):
        obs = build_observable(system, eigs)
        for state in physical_states(GF7, 2):
            try:
                m = expectation(state, obs)
            except RuntimeError:
                continue
            if m.variance_negative:
                found = True
                assert m.variance < 0
    assert found


def test_build_observable_checks_arity_and_reality():
    system = enumerate_biorthogonal_systems(GF9)[0]
    with pytest.raises(ValueError):
        build_observable(system, (1,))
    with pytest.raises(ValueError):
        build_observable(system, (GF9.i_unit(), GF9.one()))


def test_observable_apply():
    obs = spin_observable(GF3, 3)
    assert obs.apply(vec(GF3, [1, 1])).components == vec(GF3, [1, -1]).components


def test_tensor_of_systems():
    base = enumerate_biorthogonal_systems(GF3)
    combined = base[0].tensor(base[0])
    assert combined.dim == 4
    for r, bra in enumerate(combined.bras):
        for s, ket in enumerate(combined.kets):
            value = bra.pairing(ket)
            assert value == (GF3.one() if r == s else GF3.zero())
