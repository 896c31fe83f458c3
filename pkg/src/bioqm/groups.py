"""Projective groups of basis transformations and their orbit structure.

A 2x2 matrix M preserves the biorthogonal structure when dagger(M) * M is a
nonzero base-field multiple of the identity; over p = 3 fields that multiple
is forced into {+1, -1}, and its sign is stored on each element.  Matrices
differing by a nonzero scalar act identically on projective states, so each
element is kept in leading-1 canonical form.

Elements are named by the permutation they induce on the named one-particle
states (cycle notation, identity written "e").  Two-particle actions come in
four modes: the same matrix on both sides (global), or a matrix on one side
only (local_1 / local_2); the local group is the direct product acting
componentwise, with order the square of the one-particle group order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from string import ascii_lowercase

from .gf import FieldConfig, FieldElement, phi_map
from .linear import (
    Matrix,
    ProjectiveState,
    canonicalize,
    dagger,
    identity_matrix,
    inverse2,
    kron,
    mat_mul,
    mat_neg,
    mat_vec,
)
from .biortho import Observable, physical_states, spin_axes, spin_observable
from .entangle import TwoParticleState, classify, representative_states, two_particle_states

ACT_MODES = ("single", "global", "local_1", "local_2")


def canonicalize_matrix(m: Matrix) -> Matrix:
    """Scale so the first nonzero entry (row-major) becomes 1."""
    leading = next((x for row in m for x in row if not x.is_zero), None)
    if leading is None:
        raise ValueError("the zero matrix has no projective class")
    inv = leading.inverse()
    return tuple(tuple(x * inv for x in row) for row in m)


def _matrix_key(m: Matrix) -> tuple[tuple[int, int], ...]:
    return tuple(x.sort_key() for row in m for x in row)


def _cycle_notation(perm: tuple[int, ...], letters: str) -> str:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        cycles.append(cycle)
    if not cycles:
        return "e"
    return "".join("(" + "".join(letters[i] for i in c) + ")" for c in cycles)


@dataclass(frozen=True)
class GroupElement:
    matrix: Matrix  # canonical leading-1 form
    label: str
    sign: int  # phi of the scalar c in dagger(M) M = c * identity
    perm: tuple[int, ...]  # action on the physical one-particle states

    def __str__(self) -> str:
        return self.label


class ProjectiveGroup:
    """The group of structure-preserving matrices modulo scalars."""

    def __init__(self, config: FieldConfig, elements: tuple[GroupElement, ...]):
        self.config = config
        self.elements = elements
        self.by_matrix = {g.matrix: g for g in elements}
        self.by_label = {g.label: g for g in elements}
        self.identity = self.by_label["e"]

    @property
    def order(self) -> int:
        return len(self.elements)

    def lookup(self, m: Matrix) -> GroupElement:
        g = self.by_matrix.get(canonicalize_matrix(m))
        if g is None:
            raise ValueError("matrix does not belong to the group")
        return g

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.lookup(mat_mul(g.matrix, h.matrix))

    def inv(self, g: GroupElement) -> GroupElement:
        return self.lookup(inverse2(g.matrix))

    def element_order(self, g: GroupElement) -> int:
        power, n = g, 1
        while power is not self.identity:
            power, n = self.mul(power, g), n + 1
        return n


@lru_cache(maxsize=None)
def enumerate_group(config: FieldConfig) -> ProjectiveGroup:
    """All canonical 2x2 matrices M with dagger(M) M a nonzero scalar."""
    states = physical_states(config, 2)
    index_of = {s.rep: k for k, s in enumerate(states)}
    if len(states) > len(ascii_lowercase):
        raise ValueError("too many one-particle states to letter-label")
    letters = ascii_lowercase[: len(states)]

    zero, one = config.zero(), config.one()
    candidates: list[Matrix] = []
    elements_pool = config.elements()
    # canonical form: entries before the leading 1 are zero
    for lead in range(4):
        prefix = [zero] * lead + [one]
        free = 3 - lead
        stack = [tuple(prefix)]
        for _ in range(free):
            stack = [s + (x,) for s in stack for x in elements_pool]
        for flat in stack:
            candidates.append((flat[0:2], flat[2:4]))

    found: list[GroupElement] = []
    for m in candidates:
        mdm = mat_mul(dagger(m), m)
        c = mdm[0][0]
        if c.is_zero or mdm[0][1] != zero or mdm[1][0] != zero or mdm[1][1] != c:
            continue
        if not c.is_real:
            raise AssertionError("dagger(M) M produced a non-real scalar")
        perm = []
        for s in states:
            image = canonicalize(mat_vec(m, s.rep))
            if image.rep not in index_of:
                raise AssertionError("group action left the physical state set")
            perm.append(index_of[image.rep])
        found.append(
            GroupElement(
                matrix=m,
                label=_cycle_notation(tuple(perm), letters),
                sign=phi_map(c),
                perm=tuple(perm),
            )
        )
    found.sort(key=lambda g: _matrix_key(g.matrix))
    return ProjectiveGroup(config, tuple(found))


def conjugacy_classes(group: ProjectiveGroup) -> list[tuple[GroupElement, ...]]:
    """Conjugacy classes, sorted by size then by representative matrix."""
    remaining = list(group.elements)
    classes = []
    while remaining:
        g = remaining[0]
        members = {group.mul(group.mul(h, g), group.inv(h)) for h in group.elements}
        ordered = tuple(sorted(members, key=lambda x: _matrix_key(x.matrix)))
        classes.append(ordered)
        remaining = [x for x in remaining if x not in members]
    classes.sort(key=lambda c: (len(c), _matrix_key(c[0].matrix)))
    return classes


# -- abstract-group identification ---------------------------------------------


def d4_relations_hold(elements, mul, identity) -> bool:
    """Search for generators r, s with r^4 = s^2 = e, s r s = r^-1.

    Works on any abstract multiplication, so a negative control (an abelian
    order-8 table) can be fed in directly.
    """
    if len(elements) != 8:
        return False

    def power(x, n):
        out = identity
        for _ in range(n):
            out = mul(out, x)
        return out

    for r in elements:
        if power(r, 4) != identity or power(r, 2) == identity:
            continue  # not an order-4 element
        r_cycle = {power(r, k) for k in range(4)}
        r_inv = power(r, 3)
        for s in elements:
            if s in r_cycle or mul(s, s) != identity:
                continue
            if mul(mul(s, r), s) == r_inv:
                # the eight products r^i s^j must exhaust the group
                generated = {mul(power(r, i), power(s, j)) for i in range(4) for j in range(2)}
                if len(generated) == 8:
                    return True
    return False


@dataclass(frozen=True)
class IsomorphismReport:
    order: int
    class_sizes: tuple[int, ...]
    abelian: bool
    element_order_profile: tuple[tuple[int, int], ...]  # (order, count)
    name: str  # 'D4', 'S4' or 'unidentified'
    verified: bool


def verify_isomorphism(group: ProjectiveGroup) -> IsomorphismReport:
    """Identify the abstract group: D4 at order 8, the octahedral S4 at 24.

    D4 is confirmed by exhibiting generators satisfying its defining
    relations; S4 by the class equation 1+3+6+6+8 together with
    nonabelianness and the order profile (1, 9, 8, 6) for orders (1, 2, 3, 4),
    which no other order-24 group matches.
    """
    classes = conjugacy_classes(group)
    class_sizes = tuple(sorted(len(c) for c in classes))
    abelian = all(
        group.mul(g, h) == group.mul(h, g)
        for g in group.elements
        for h in group.elements
    )
    profile_counts: dict[int, int] = {}
    for g in group.elements:
        n = group.element_order(g)
        profile_counts[n] = profile_counts.get(n, 0) + 1
    profile = tuple(sorted(profile_counts.items()))

    name, verified = "unidentified", False
    if group.order == 8:
        if d4_relations_hold(
            group.elements, group.mul, group.identity
        ) and class_sizes == (1, 1, 2, 2, 2):
            name, verified = "D4", True
    elif group.order == 24:
        if (
            not abelian
            and class_sizes == (1, 3, 6, 6, 8)
            and profile == ((1, 1), (2, 9), (3, 8), (4, 6))
        ):
            name, verified = "S4", True
    return IsomorphismReport(
        order=group.order,
        class_sizes=class_sizes,
        abelian=abelian,
        element_order_profile=profile,
        name=name,
        verified=verified,
    )


# -- conjugation of observables --------------------------------------------------


@dataclass(frozen=True)
class SpinConjugation:
    axis: int
    sign: int
    matrix: Matrix


def conjugate_observable(g: GroupElement, obs: Observable) -> SpinConjugation:
    """Compute g A g^-1 and identify it as (+/-) a spin observable.

    Conjugation is insensitive to the phase representative.  A result outside
    the signed spin set signals a bug and raises.
    """
    config = obs.config
    transformed = mat_mul(mat_mul(g.matrix, obs.matrix), inverse2(g.matrix))
    for axis in spin_axes(config):
        sigma = spin_observable(config, axis).matrix
        if transformed == sigma:
            return SpinConjugation(axis=axis, sign=1, matrix=transformed)
        if transformed == mat_neg(sigma):
            return SpinConjugation(axis=axis, sign=-1, matrix=transformed)
    raise RuntimeError(f"conjugate of {g.label} is not a signed spin observable")


# -- one- and two-particle actions ------------------------------------------------


def act(
    g: GroupElement,
    state: ProjectiveState | TwoParticleState,
    mode: str = "single",
) -> ProjectiveState | TwoParticleState:
    """Apply a group element to a state; two-particle modes pick the sides."""
    if mode not in ACT_MODES:
        raise ValueError(f"mode must be one of {ACT_MODES}")
    tp = isinstance(state, TwoParticleState)
    proj = state.state if tp else state
    config = proj.config
    if mode == "single":
        if proj.dim != 2:
            raise ValueError("mode 'single' acts on one-particle states")
        matrix = g.matrix
    else:
        if proj.dim != 4:
            raise ValueError(f"mode '{mode}' acts on two-particle states")
        eye = identity_matrix(config, 2)
        if mode == "global":
            matrix = kron(g.matrix, g.matrix)
        elif mode == "local_1":
            matrix = kron(g.matrix, eye)
        else:
            matrix = kron(eye, g.matrix)
    image = canonicalize(mat_vec(matrix, proj.rep))
    return classify(image) if tp else image


class _ActionTable:
    """Permutation arrays for the one-sided actions on an indexed state set."""

    def __init__(self, group: ProjectiveGroup, states: tuple[TwoParticleState, ...]):
        self.group = group
        self.states = states
        self.index = {s.state.rep: k for k, s in enumerate(states)}
        self.side1: list[tuple[int, ...]] = []
        self.side2: list[tuple[int, ...]] = []
        for g in group.elements:
            self.side1.append(self._permutation(g, "local_1"))
            self.side2.append(self._permutation(g, "local_2"))

    def _permutation(self, g: GroupElement, mode: str) -> tuple[int, ...]:
        out = []
        for s in self.states:
            image = act(g, s, mode)
            idx = self.index.get(image.state.rep)
            if idx is None:
                raise ValueError("the action escapes the given state set")
            out.append(idx)
        return tuple(out)


def _orbit_state_tuple(states) -> tuple[TwoParticleState, ...]:
    out = tuple(states)
    if not out:
        raise ValueError("empty state set")
    return out


@dataclass(frozen=True)
class Orbit:
    mode: str
    representative: TwoParticleState
    members: tuple[TwoParticleState, ...]
    stabilizer_order: int
    acting_order: int

    @property
    def size(self) -> int:
        return len(self.members)


@lru_cache(maxsize=None)
def _action_table(config: FieldConfig) -> _ActionTable:
    group = enumerate_group(config)
    states = tuple(
        s for s in two_particle_states(config) if s.physical and not s.is_product
    )
    return _ActionTable(group, states)


def action_table(
    config: FieldConfig, states: tuple[TwoParticleState, ...] | None = None
) -> _ActionTable:
    """The permutation table on a state set (default: entangled physical)."""
    if states is None:
        return _action_table(config)
    return _ActionTable(enumerate_group(config), states)


def _mode_permutations(table: _ActionTable, mode: str) -> list[tuple[int, ...]]:
    """The acting permutations: diagonal pairs for global, all pairs for local."""
    n = len(table.states)
    if mode == "global":
        return [
            tuple(table.side2[k][table.side1[k][i]] for i in range(n))
            for k in range(len(table.group.elements))
        ]
    if mode == "local":
        return [
            tuple(s2[s1[i]] for i in range(n))
            for s1 in table.side1
            for s2 in table.side2
        ]
    raise ValueError("orbit mode must be 'global' or 'local'")


def orbits(
    config: FieldConfig,
    mode: str,
    states: tuple[TwoParticleState, ...] | None = None,
) -> list[Orbit]:
    """Orbits of the entangled physical states under the chosen action."""
    table = action_table(config, states)
    perms = _mode_permutations(table, mode)
    acting_order = len(perms)
    n = len(table.states)
    assigned = [False] * n
    out = []
    for start in range(n):
        if assigned[start]:
            continue
        frontier = [start]
        members = {start}
        assigned[start] = True
        while frontier:
            nxt = []
            for i in frontier:
                for perm in perms:
                    j = perm[i]
                    if not assigned[j]:
                        assigned[j] = True
                        members.add(j)
                        nxt.append(j)
            frontier = nxt
        stabilizer = sum(1 for perm in perms if perm[start] == start)
        if stabilizer * len(members) != acting_order:
            raise AssertionError("orbit-stabilizer identity violated")
        member_states = tuple(
            sorted(
                (table.states[i] for i in members),
                key=lambda s: s.state.sort_key(),
            )
        )
        out.append(
            Orbit(
                mode=mode,
                representative=member_states[0],
                members=member_states,
                stabilizer_order=stabilizer,
                acting_order=acting_order,
            )
        )
    out.sort(key=lambda o: o.representative.state.sort_key())
    return out


def burnside_count(
    config: FieldConfig,
    mode: str,
    states: tuple[TwoParticleState, ...] | None = None,
) -> int:
    """Orbit count as the average number of fixed points over the action."""
    table = action_table(config, states)
    perms = _mode_permutations(table, mode)
    total = sum(
        sum(1 for i, j in enumerate(perm) if i == j) for perm in perms
    )
    if total % len(perms) != 0:
        raise AssertionError("Burnside sum is not divisible by the group order")
    return total // len(perms)


# -- local equivalence and state labels -------------------------------------------


@dataclass(frozen=True)
class LocalTransform:
    g1: GroupElement
    g2: GroupElement
    representative_label: str
    representative: TwoParticleState


@lru_cache(maxsize=None)
def _local_reach(config: FieldConfig) -> dict:
    """BFS over the local action from each representative, recording words.

    For every reachable state index this stores (rep_label, A, B) with
    state = (A tensor B) rep, so the inverse pair maps the state back.
    """
    table = _action_table(config)
    group = table.group
    reach: dict[int, tuple[str, GroupElement, GroupElement]] = {}
    for label, rep in representative_states(config).items():
        start = table.index[rep.state.rep]
        if start in reach:
            continue
        reach[start] = (label, group.identity, group.identity)
        frontier = [start]
        while frontier:
            nxt = []
            for i in frontier:
                _, acc1, acc2 = reach[i]
                for k, g in enumerate(group.elements):
                    for side, arr in ((1, table.side1), (2, table.side2)):
                        j = arr[k][i]
                        if j not in reach:
                            new1 = group.mul(g, acc1) if side == 1 else acc1
                            new2 = group.mul(g, acc2) if side == 2 else acc2
                            reach[j] = (label, new1, new2)
                            nxt.append(j)
            frontier = nxt
    return reach


def find_local_transform(state: TwoParticleState) -> LocalTransform:
    """A local pair (g1, g2) carrying the state onto its orbit representative."""
    config = state.config
    table = _action_table(config)
    idx = table.index.get(state.state.rep)
    if idx is None:
        raise ValueError("state is not an entangled physical state")
    reach = _local_reach(config)
    if idx not in reach:
        raise ValueError("state is not locally equivalent to any representative")
    label, a, b = reach[idx]
    group = table.group
    reps = representative_states(config)
    return LocalTransform(
        g1=group.inv(a),
        g2=group.inv(b),
        representative_label=label,
        representative=reps[label],
    )


@lru_cache(maxsize=None)
def entangled_labels(config: FieldConfig) -> dict[str, TwoParticleState]:
    """Label each entangled physical state by its side-1 relation to S.

    The state carrying label g is the one mapped onto S by g acting on side 1
    alone; S itself is the identity's state.  This is well-defined exactly
    when the side-1 action on S is free and covers the entangled physical
    states, which holds over GF(3).
    """
    group = enumerate_group(config)
    table = _action_table(config)
    s_state = representative_states(config)["S"]
    start = table.index[s_state.state.rep]
    labels: dict[str, TwoParticleState] = {}
    for k, g in enumerate(group.elements):
        # (g tensor 1) S = state  <=>  (g^-1 tensor 1) state = S
        image = table.side1[k][start]
        owner = group.inv(g)
        name = "S" if owner is group.identity else owner.label
        if name in labels:
            raise ValueError("side-1 action on S is not free; labels undefined")
        labels[name] = table.states[image]
    if len(labels) != len(table.states):
        raise ValueError("side-1 orbit of S does not cover the entangled states")
    return labels
