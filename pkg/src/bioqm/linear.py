"""State vectors, dual vectors and projective states over a Galois field.

The inner product is sesquilinear: dot(a, b) applies the Frobenius
conjugation to the left argument componentwise.  A vector may be orthogonal
to itself (dot(v, v) = 0 with v nonzero); such vectors admit no conjugate
dual and are excluded from the physical state space.

Projective states identify vectors up to a nonzero scalar.  The canonical
representative scales the first nonzero component to 1, and enumeration is
lexicographic over components, each component ordered by (re, im).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Iterable, Sequence

from .gf import FieldConfig, FieldElement

# raw-vector count beyond which enumeration refuses to run
ENUMERATION_GUARD = 10**8

EntryLike = FieldElement | int | tuple[int, int]


def _as_element(config: FieldConfig, entry: EntryLike) -> FieldElement:
    if isinstance(entry, FieldElement):
        if entry.config != config:
            raise ValueError(f"field mismatch: {entry.config} vs {config}")
        return entry
    if isinstance(entry, tuple):
        return config.element(*entry)
    return config.element(entry)


@dataclass(frozen=True)
class StateVector:
    """A ket: a tuple of field elements."""

    components: tuple[FieldElement, ...]
    config: FieldConfig

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("a state vector needs at least one component")
        for c in self.components:
            if c.config != self.config:
                raise ValueError("all components must live in the same field")

    @staticmethod
    def make(config: FieldConfig, entries: Iterable[EntryLike]) -> StateVector:
        return StateVector(tuple(_as_element(config, e) for e in entries), config)

    @property
    def dim(self) -> int:
        return len(self.components)

    def __getitem__(self, k: int) -> FieldElement:
        return self.components[k]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def scale(self, factor: FieldElement) -> StateVector:
        return StateVector(tuple(c * factor for c in self.components), self.config)

    def add(self, other: StateVector) -> StateVector:
        if other.config != self.config or other.dim != self.dim:
            raise ValueError("can only add vectors of matching shape and field")
        return StateVector(
            tuple(a + b for a, b in zip(self.components, other.components)),
            self.config,
        )

    def tensor(self, other: StateVector) -> StateVector:
        """Row-major Kronecker product (left index varies slowest)."""
        if other.config != self.config:
            raise ValueError("tensor factors must share a field")
        return StateVector(
            tuple(a * b for a in self.components for b in other.components),
            self.config,
        )

    def sort_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(c.sort_key() for c in self.components)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"


def dot(a: StateVector, b: StateVector) -> FieldElement:
    """Sesquilinear inner product: sum of frobenius(a_k) * b_k."""
    if a.config != b.config or a.dim != b.dim:
        raise ValueError("dot requires matching shape and field")
    total = a.config.zero()
    for x, y in zip(a.components, b.components):
        total = total + x.frobenius() * y
    return total


def is_self_orthogonal(v: StateVector) -> bool:
    """True when dot(v, v) vanishes for a nonzero v (an unphysical state)."""
    if v.is_zero:
        raise ValueError("the zero vector is not a state")
    return dot(v, v).is_zero


@dataclass(frozen=True)
class DualVector:
    """A bra: a row of field elements paired with kets by plain contraction."""

    components: tuple[FieldElement, ...]
    config: FieldConfig

    @property
    def dim(self) -> int:
        return len(self.components)

    def __getitem__(self, k: int) -> FieldElement:
        return self.components[k]

    def pairing(self, v: StateVector) -> FieldElement:
        if v.config != self.config or v.dim != self.dim:
            raise ValueError("pairing requires matching shape and field")
        total = self.config.zero()
        for d, c in zip(self.components, v.components):
            total = total + d * c
        return total

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"


def conjugate_dual(v: StateVector) -> DualVector:
    """The bra with components frobenius(v_k) / dot(v, v).

    Defined exactly when v is not self-orthogonal; the normalization makes
    the pairing of the dual with v equal to 1 regardless of scaling.
    """
    norm = dot(v, v)
    if norm.is_zero:
        raise ValueError(f"self-orthogonal vector {v} has no conjugate dual")
    inv = norm.inverse()
    return DualVector(tuple(c.frobenius() * inv for c in v.components), v.config)


@dataclass(frozen=True)
class ProjectiveState:
    """A ray: the canonical representative has leading component 1."""

    rep: StateVector
    self_orthogonal: bool

    @property
    def physical(self) -> bool:
        return not self.self_orthogonal

    @property
    def config(self) -> FieldConfig:
        return self.rep.config

    @property
    def dim(self) -> int:
        return self.rep.dim

    def sort_key(self) -> tuple[tuple[int, int], ...]:
        return self.rep.sort_key()

    def __str__(self) -> str:
        return str(self.rep)


def canonicalize(v: StateVector) -> ProjectiveState:
    """Scale v so its first nonzero component becomes 1."""
    if v.is_zero:
        raise ValueError("the zero vector has no projective class")
    leading = next(c for c in v.components if not c.is_zero)
    rep = v.scale(leading.inverse())
    return ProjectiveState(rep=rep, self_orthogonal=is_self_orthogonal(rep))


def enumerate_projective(config: FieldConfig, dim: int) -> list[ProjectiveState]:
    """All projective states of the given dimension, lexicographically.

    Canonical representatives are generated directly: zeros, then a leading
    1, then a free tail.  The count is (q^dim - 1) / (q - 1).
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    q = config.order
    if q**dim > ENUMERATION_GUARD:
        raise ValueError(
            f"enumeration of {q}^{dim} raw vectors exceeds guard {ENUMERATION_GUARD}"
        )
    zero, one = config.zero(), config.one()
    ordered = config.elements()
    states: list[ProjectiveState] = []
    # leading-zero prefixes sort first, so walking the pivot from the last
    # position to the first yields lexicographic order directly
    for pivot in range(dim - 1, -1, -1):
        prefix = (zero,) * pivot + (one,)
        for tail in iter_product(ordered, repeat=dim - 1 - pivot):
            vec = StateVector(prefix + tail, config)
            states.append(
                ProjectiveState(rep=vec, self_orthogonal=is_self_orthogonal(vec))
            )
    expected = (q**dim - 1) // (q - 1)
    if len(states) != expected:
        raise AssertionError(f"projective count {len(states)} != {expected}")
    return states


# -- small exact matrices ---------------------------------------------------
#
# Matrices are tuples of row tuples.  Only tiny sizes occur (2x2 and 4x4),
# so the helpers stay naive and allocation-friendly.

Matrix = tuple[tuple[FieldElement, ...], ...]


def matrix_make(config: FieldConfig, rows: Sequence[Sequence[EntryLike]]) -> Matrix:
    return tuple(tuple(_as_element(config, e) for e in row) for row in rows)


def identity_matrix(config: FieldConfig, n: int) -> Matrix:
    zero, one = config.zero(), config.one()
    return tuple(
        tuple(one if r == c else zero for c in range(n)) for r in range(n)
    )


def mat_vec(m: Matrix, v: StateVector) -> StateVector:
    if len(m[0]) != v.dim:
        raise ValueError("matrix and vector shapes do not match")
    zero = v.config.zero()
    out = []
    for row in m:
        acc = zero
        for entry, comp in zip(row, v.components):
            acc = acc + entry * comp
        out.append(acc)
    return StateVector(tuple(out), v.config)

def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("matrix shapes do not match")
    zero = a[0][0].config.zero()
    return tuple(
        tuple(
            sum((a[r][k] * b[k][c] for k in range(len(b))), zero)
            for c in range(len(b[0]))
        )
        for r in range(len(a))
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(m: Matrix, factor: FieldElement) -> Matrix:
    return tuple(tuple(x * factor for x in row) for row in m)


def mat_neg(m: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in m)


def dagger(m: Matrix) -> Matrix:
    """Conjugate transpose using the Frobenius conjugation."""
    return tuple(
        tuple(m[r][c].frobenius() for r in range(len(m))) for c in range(len(m[0]))
    )


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Row-major Kronecker product, so kron(A, B)(x tensor y) = Ax tensor By."""
    return tuple(
        tuple(a[ra][ca] * b[rb][cb] for ca in range(len(a[0])) for cb in range(len(b[0])))
        for ra in range(len(a))
        for rb in range(len(b))
    )


def det2(m: Matrix) -> FieldElement:
    if len(m) != 2 or len(m[0]) != 2:
        raise ValueError("det2 expects a 2x2 matrix")
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def inverse2(m: Matrix) -> Matrix:
    d = det2(m)
    if d.is_zero:
        raise ZeroDivisionError("matrix is singular")
    inv = d.inverse()
    return (
        (m[1][1] * inv, -m[0][1] * inv),
        (-m[1][0] * inv, m[0][0] * inv),
    )


def field_rank(rows: Sequence[StateVector]) -> int:
    """Rank of a matrix whose rows are state vectors, by Gauss elimination."""
    if not rows:
        return 0
    work = [list(r.components) for r in rows]
    n_cols = len(work[0])
    rank = 0
    for col in range(n_cols):
        pivot_row = next(
            (r for r in range(rank, len(work)) if not work[r][col].is_zero), None
        )
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and not work[r][col].is_zero:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[rank])]
        rank += 1
    return rank
