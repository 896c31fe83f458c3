"""Biorthogonal systems, spectral observables and expectation values.

A biorthogonal system pairs a spanning set of kets with the bras obtained by
conjugate dualization, so that bra_r(ket_s) is the Kronecker delta.  An
observable is built spectrally, sum of eigenvalue_k |k><k|, with eigenvalues
drawn from the base field.  Expectation values convert the field-valued
bracket <psi|A|psi> into a real number through the sign map, and variances
follow from the bracket of the squared observable.

The three spin observables arise from the named one-particle states:

    axis 3 from {a, b} = {[1,0], [0,1]}      -> diag(1, -1)
    axis 1 from {c, d} = {[1,1], [1,-1]}     -> [[0,1],[1,0]]
    axis 2 from {e, f} = {[1,i], [1,-i]}     -> [[0,-i],[i,0]]  (degree 2)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .gf import FieldConfig, FieldElement, phi_map
from .linear import (
    DualVector,
    Matrix,
    ProjectiveState,
    StateVector,
    canonicalize,
    conjugate_dual,
    dot,
    enumerate_projective,
    field_rank,
    is_self_orthogonal,
    mat_add,
    mat_mul,
    mat_neg,
    mat_vec,
)


def is_ortho_nondegenerate(kets: Sequence[StateVector]) -> bool:
    """True when the kets are mutually orthogonal and none is self-orthogonal.

    The kets must span (checked by exact rank); a non-spanning list is a
    usage error rather than a False.
    """
    if not kets:
        raise ValueError("empty basis")
    dim = kets[0].dim
    if len(kets) != dim or field_rank(kets) != dim:
        raise ValueError("basis does not span the space")
    for r, u in enumerate(kets):
        for s, v in enumerate(kets):
            if (dot(u, v).is_zero) != (r != s):
                return False
    return True


@dataclass(frozen=True)
class BiorthogonalSystem:
    """Kets with their conjugate-dual bras, pairing to the identity."""

    kets: tuple[StateVector, ...]
    bras: tuple[DualVector, ...]

    @staticmethod
    def from_kets(kets: Sequence[StateVector]) -> BiorthogonalSystem:
        if not is_ortho_nondegenerate(kets):
            raise ValueError("kets are not an orthogonal nondegenerate basis")
        bras = tuple(conjugate_dual(k) for k in kets)
        for r, bra in enumerate(bras):
            for s, ket in enumerate(kets):
                value = bra.pairing(ket)
                expected = ket.config.one() if r == s else ket.config.zero()
                if value != expected:
                    raise AssertionError("biorthogonality failed")  # unreachable
        return BiorthogonalSystem(kets=tuple(kets), bras=bras)

    @property
    def config(self) -> FieldConfig:
        return self.kets[0].config

    @property
    def dim(self) -> int:
        return self.kets[0].dim

    def tensor(self, other: BiorthogonalSystem) -> BiorthogonalSystem:
        """The product system with kets ket_r tensor ket_s (row-major)."""
        kets = tuple(u.tensor(v) for u in self.kets for v in other.kets)
        bras = tuple(
            DualVector(
                tuple(x * y for x in bu.components for y in bv.components),
                self.config,
            )
            for bu in self.bras
            for bv in other.bras
        )
        return BiorthogonalSystem(kets=kets, bras=bras)


def enumerate_biorthogonal_systems(
    config: FieldConfig, dim: int = 2
) -> list[BiorthogonalSystem]:
    """All two-dimensional biorthogonal systems, in deterministic order.

    Built by pairing mutually orthogonal physical projective states; each
    unordered pair appears once, kets sorted lexicographically.
    """
    if dim != 2:
        raise ValueError("only dimension-2 systems are enumerated")
    physical = [s for s in enumerate_projective(config, dim) if s.physical]
    systems = []
    for idx, u in enumerate(physical):
        for v in physical[idx + 1 :]:
            if dot(u.rep, v.rep).is_zero:
                systems.append(BiorthogonalSystem.from_kets((u.rep, v.rep)))
    systems.sort(key=lambda s: tuple(k.sort_key() for k in s.kets))
    return systems


@dataclass(frozen=True)
class Observable:
    """A spectrally built operator: sum of eigenvalue_k |k><k|."""

    matrix: Matrix
    eigenvalues: tuple[FieldElement, ...]
    system: BiorthogonalSystem

    @property
    def config(self) -> FieldConfig:
        return self.system.config

    def apply(self, v: StateVector) -> StateVector:
        return mat_vec(self.matrix, v)

    def squared(self) -> Observable:
        return Observable(
            matrix=mat_mul(self.matrix, self.matrix),
            eigenvalues=tuple(a * a for a in self.eigenvalues),
            system=self.system,
        )

    def negated(self) -> Observable:
        return Observable(
            matrix=mat_neg(self.matrix),
            eigenvalues=tuple(-a for a in self.eigenvalues),
            system=self.system,
        )

    def equals(self, other: Observable, up_to_sign: bool = False) -> bool:
        """Exact matrix equality; sign identification only when asked for."""
        if self.matrix == other.matrix:
            return True
        return up_to_sign and self.matrix == mat_neg(other.matrix)


def build_observable(
    system: BiorthogonalSystem, eigenvalues: Sequence[FieldElement | int]
) -> Observable:
    """Assemble sum of eigenvalue_k |ket_k><bra_k| with base-field eigenvalues."""
    config = system.config
    eigs = tuple(
        e if isinstance(e, FieldElement) else config.element(e) for e in eigenvalues
    )
    if len(eigs) != len(system.kets):
        raise ValueError("need exactly one eigenvalue per ket")
    for e in eigs:
        if not e.is_real:
            raise ValueError(f"eigenvalue {e} lies outside the base field")
    n = system.dim
    zero = config.zero()
    matrix = tuple(tuple(zero for _ in range(n)) for _ in range(n))
    for eig, ket, bra in zip(eigs, system.kets, system.bras):
        outer = tuple(
            tuple(ket[r] * bra[c] * eig for c in range(n)) for r in range(n)
        )
        matrix = mat_add(matrix, outer)
    return Observable(matrix=matrix, eigenvalues=eigs, system=system)


def verify_spectral(obs: Observable) -> bool:
    """Check that each system ket is an eigenvector with the stored eigenvalue."""
    for eig, ket in zip(obs.eigenvalues, obs.system.kets):
        if obs.apply(ket) != ket.scale(eig):
            return False
    return True


# -- named states and spin observables ---------------------------------------

_NAMED_ENTRIES: dict[str, tuple] = {
    "a": ((1, 0), (0, 0)),
    "b": ((0, 0), (1, 0)),
    "c": ((1, 0), (1, 0)),
    "d": ((1, 0), (-1, 0)),
    "e": ((1, 0), (0, 1)),
    "f": ((1, 0), (0, -1)),
}


@lru_cache(maxsize=None)
def named_states(config: FieldConfig) -> dict[str, ProjectiveState]:
    """The named one-particle states a..d (plus e, f on degree-2 fields)."""
    labels = "abcdef" if config.is_extension else "abcd"
    out = {}
    for label in labels:
        entries = _NAMED_ENTRIES[label]
        vec = StateVector.make(config, entries)
        out[label] = canonicalize(vec)
    return out


def state_label(state: ProjectiveState) -> str:
    """The letter name when the state is a named one, else its components."""
    for label, named in named_states(state.config).items():
        if named.rep == state.rep:
            return label
    return str(state)


@lru_cache(maxsize=None)
def physical_states(config: FieldConfig, dim: int = 2) -> tuple[ProjectiveState, ...]:
    """Physical projective states, named ones first, the rest lexicographic."""
    named = named_states(config) if dim == 2 else {}
    ordered = [s for s in named.values()]
    seen = {s.rep for s in ordered}
    for s in enumerate_projective(config, dim):
        if s.physical and s.rep not in seen:
            ordered.append(s)
    return tuple(ordered)


SPIN_AXIS_KETS = {3: ("a", "b"), 1: ("c", "d"), 2: ("e", "f")}


def spin_axes(config: FieldConfig) -> tuple[int, ...]:
    return (1, 2, 3) if config.is_extension else (1, 3)


@lru_cache(maxsize=None)
def spin_observable(config: FieldConfig, axis: int) -> Observable:
    """The spin observable for an axis, eigenvalues (+1, -1) on its kets."""
    if axis not in spin_axes(config):
        raise ValueError(f"axis {axis} is not available over {config}")
    named = named_states(config)
    kets = tuple(named[n].rep for n in SPIN_AXIS_KETS[axis])
    system = BiorthogonalSystem.from_kets(kets)
    return build_observable(system, (1, -1))


# -- measurements -------------------------------------------------------------


def bracket(state: ProjectiveState | StateVector, obs: Observable | Matrix) -> FieldElement:
    """The field value <psi|A|psi>, independent of the representative scaling."""
    vec = state.rep if isinstance(state, ProjectiveState) else state
    matrix = obs.matrix if isinstance(obs, Observable) else obs
    if dot(vec, vec).is_zero:
        raise ValueError(f"state {vec} is self-orthogonal; bracket undefined")
    bra = conjugate_dual(vec)
    value = bra.pairing(mat_vec(matrix, vec))
    if not value.is_real:
        raise RuntimeError(
            f"bracket {value} has a nonzero imaginary part; observable is malformed"
        )
    return value


@dataclass(frozen=True)
class Measurement:
    """Expectation and variance of an observable in a state, as integers."""

    expectation: int
    variance: int

    @property
    def variance_negative(self) -> bool:
        # possible for contrived observables; reported verbatim, never clamped
        return self.variance < 0


def expectation(state: ProjectiveState | StateVector, obs: Observable) -> Measurement:
    e = phi_map(bracket(state, obs))
    second_moment = phi_map(bracket(state, obs.squared()))
    return Measurement(expectation=e, variance=second_moment - e * e)


# -- the one-particle table ----------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    label: str
    state: ProjectiveState
    cells: tuple[Measurement, ...]


@dataclass(frozen=True)
class TableReport:
    config: FieldConfig
    axes: tuple[int, ...]
    rows: tuple[TableRow, ...]


def table_report(config: FieldConfig) -> TableReport:
    """Expectation/variance of every spin observable in every physical state."""
    axes = spin_axes(config)
    observables = [spin_observable(config, axis) for axis in axes]
    rows = []
    for state in physical_states(config, 2):
        cells = tuple(expectation(state, obs) for obs in observables)
        rows.append(TableRow(label=state_label(state), state=state, cells=cells))
    return TableReport(config=config, axes=axes, rows=tuple(rows))
