"""Two-particle states, product/entangled classification, correlators, CHSH.

A four-component state is a product state exactly when its 2x2 reshape has
zero determinant (rank one means it is a Kronecker product of two
one-particle vectors).  Product spin observables are Kronecker products of
one-particle spin observables, assembled together with their product
biorthogonal system so the spectral form survives.

The CHSH combination for axis choices (A, a) on side 1 and (B, b) on side 2
is E(A,B) + E(A,b) + E(a,B) - E(a,b) with each E a sign-mapped correlator.
Admissible quadruples require A != a and B != b.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gf import FieldConfig, phi_map
from .linear import (
    Matrix,
    ProjectiveState,
    StateVector,
    canonicalize,
    det2,
    enumerate_projective,
    identity_matrix,
    kron,
)
from .biortho import Observable, bracket, spin_axes, spin_observable


@dataclass(frozen=True)
class TwoParticleState:
    """A projective four-component state tagged product or entangled."""

    state: ProjectiveState
    kind: str  # 'product' or 'entangled'

    @property
    def physical(self) -> bool:
        return self.state.physical

    @property
    def config(self) -> FieldConfig:
        return self.state.config

    @property
    def is_product(self) -> bool:
        return self.kind == "product"

    def __str__(self) -> str:
        return str(self.state)


def classify(state: ProjectiveState) -> TwoParticleState:
    if state.dim != 4:
        raise ValueError("two-particle states have four components")
    v = state.rep
    reshaped = ((v[0], v[1]), (v[2], v[3]))
    kind = "product" if det2(reshaped).is_zero else "entangled"
    return TwoParticleState(state=state, kind=kind)


def from_vector(vec: StateVector) -> TwoParticleState:
    return classify(canonicalize(vec))


def from_product(x: StateVector, y: StateVector) -> TwoParticleState:
    out = from_vector(x.tensor(y))
    if not out.is_product:
        raise AssertionError("tensor product classified as entangled")  # unreachable
    return out


@lru_cache(maxsize=None)
def two_particle_states(config: FieldConfig) -> tuple[TwoParticleState, ...]:
    return tuple(classify(s) for s in enumerate_projective(config, 4))


@dataclass(frozen=True)
class Census:
    """State counts for one field, split by product/entangled and physicality."""

    config: FieldConfig
    states: int
    product: int
    product_physical: int
    product_self_orthogonal: int
    entangled: int
    entangled_physical: int
    entangled_self_orthogonal: int

    def counts(self) -> dict[str, int]:
        return {
            "states": self.states,
            "product": self.product,
            "product_physical": self.product_physical,
            "product_self_orthogonal": self.product_self_orthogonal,
            "entangled": self.entangled,
            "entangled_physical": self.entangled_physical,
            "entangled_self_orthogonal": self.entangled_self_orthogonal,
        }


def census(config: FieldConfig) -> Census:
    states = two_particle_states(config)
    product = [s for s in states if s.is_product]
    entangled = [s for s in states if not s.is_product]
    return Census(
        config=config,
        states=len(states),
        product=len(product),
        product_physical=sum(1 for s in product if s.physical),
        product_self_orthogonal=sum(1 for s in product if not s.physical),
        entangled=len(entangled),
        entangled_physical=sum(1 for s in entangled if s.physical),
        entangled_self_orthogonal=sum(1 for s in entangled if not s.physical),
    )


# -- product observables and correlators --------------------------------------


@lru_cache(maxsize=None)
def product_spin(config: FieldConfig, i: int, j: int) -> Observable:
    """The two-particle observable spin(i) tensor spin(j)."""
    left = spin_observable(config, i)
    right = spin_observable(config, j)
    system = left.system.tensor(right.system)
    eigenvalues = tuple(a * b for a in left.eigenvalues for b in right.eigenvalues)
    matrix = kron(left.matrix, right.matrix)
    obs = Observable(matrix=matrix, eigenvalues=eigenvalues, system=system)
    return obs


@lru_cache(maxsize=None)
def one_sided_spin(config: FieldConfig, side: int, axis: int) -> Matrix:
    """spin(axis) acting on one side, identity on the other."""
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    sigma = spin_observable(config, axis).matrix
    eye = identity_matrix(config, 2)
    return kron(sigma, eye) if side == 1 else kron(eye, sigma)


def correlator(state: TwoParticleState, i: int, j: int) -> int:
    """The sign-mapped two-particle expectation E(spin_i x spin_j)."""
    return phi_map(bracket(state.state, product_spin(state.config, i, j)))


def single_spin(state: TwoParticleState, side: int, axis: int) -> int:
    """The sign-mapped one-sided expectation E(spin_axis on the given side)."""
    return phi_map(bracket(state.state, one_sided_spin(state.config, side, axis)))


@dataclass(frozen=True)
class CHSHRecord:
    state_label: str
    axes: tuple[int, int, int, int]  # (A, a, B, b)
    value: int
    correlators: dict[str, int]


def chsh(state: TwoParticleState, A: int, a: int, B: int, b: int,
         label: str | None = None) -> CHSHRecord:
    axes = spin_axes(state.config)
    for axis in (A, a, B, b):
        if axis not in axes:
            raise ValueError(f"axis {axis} is not available over {state.config}")
    if A == a or B == b:
        raise ValueError("CHSH needs two distinct axes on each side")
    e = {(i, j): correlator(state, i, j) for i in (A, a) for j in (B, b)}
    value = e[(A, B)] + e[(A, b)] + e[(a, B)] - e[(a, b)]
    return CHSHRecord(
        state_label=label if label is not None else str(state),
        axes=(A, a, B, b),
        value=value,
        correlators={f"{i}{j}": e[(i, j)] for (i, j) in sorted(e)},
    )


def axis_quadruples(config: FieldConfig) -> list[tuple[int, int, int, int]]:
    axes = spin_axes(config)
    return [
        (A, a, B, b)
        for A in axes
        for a in axes
        if a != A
        for B in axes
        for b in axes
        if b != B
    ]


def chsh_scan(state: TwoParticleState, label: str | None = None) -> dict[int, int]:
    """Histogram of |CHSH| over all admissible axis quadruples."""
    tally = {k: 0 for k in range(5)}
    for A, a, B, b in axis_quadruples(state.config):
        record = chsh(state, A, a, B, b, label=label)
        tally[abs(record.value)] += 1
    return tally


@dataclass(frozen=True)
class ChshBound:
    config: FieldConfig
    bound: int
    states_scanned: int
    quadruples_per_state: int


def chsh_bound(config: FieldConfig) -> ChshBound:
    """Maximum |CHSH| over every physical two-particle state and quadruple."""
    quadruples = axis_quadruples(config)
    axes = spin_axes(config)
    best = 0
    scanned = 0
    for tp in two_particle_states(config):
        if not tp.physical:
            continue
        scanned += 1
        e = {(i, j): correlator(tp, i, j) for i in axes for j in axes}
        for A, a, B, b in quadruples:
            value = abs(e[(A, B)] + e[(A, b)] + e[(a, B)] - e[(a, b)])
            if value > best:
                best = value
    return ChshBound(
        config=config,
        bound=best,
        states_scanned=scanned,
        quadruples_per_state=len(quadruples),
    )


# -- named representatives -----------------------------------------------------


@lru_cache(maxsize=None)
def representative_states(config: FieldConfig) -> dict[str, TwoParticleState]:
    """The canonical entangled representatives: S always, T and U on degree 2."""
    reps = {"S": from_vector(StateVector.make(config, (0, 1, -1, 0)))}
    if config.is_extension:
        reps["T"] = from_vector(StateVector.make(config, (1, 0, (1, 1), 1)))
        reps["U"] = from_vector(StateVector.make(config, (1, 0, 1, (1, 1))))
    for label, tp in reps.items():
        if tp.is_product or not tp.physical:
            raise AssertionError(f"representative {label} is not entangled physical")
    return reps
