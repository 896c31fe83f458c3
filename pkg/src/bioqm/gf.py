"""Exact arithmetic in GF(p) and GF(p^2) = GF(p)[i] for primes p = 3 (mod 4).

For such primes x^2 + 1 is irreducible over GF(p), so the quadratic extension
behaves like the complex numbers over the reals: elements are re + im*i,
conjugation is re - im*i, and the conjugation is realized by the Frobenius
power x -> x^p.  GF(p) itself plays the role of the reals.

Two maps convert field values into ordinary real numbers:

* ``phi_map``: the product-preserving sign map GF(p) -> {-1, 0, +1}.  It sends
  zero to 0, even powers of a multiplicative generator to +1 and odd powers
  to -1 (equivalently, it is the quadratic-residue character).  Because
  p = 3 (mod 4), phi_map(-1) = -1.
* ``abs_map``: 0 for the zero element, 1 for everything else.

All arithmetic is exact integer arithmetic; floats never appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def find_generator(p: int) -> int:
    """Smallest residue generating the multiplicative group of GF(p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        # g generates iff g^((p-1)/q) != 1 for every prime factor q of p-1
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError(f"no generator found for GF({p})")  # unreachable


@lru_cache(maxsize=None)
def _even_power_residues(p: int) -> frozenset[int]:
    """Even powers of the generator: the kernel of the sign map."""
    g = find_generator(p)
    return frozenset(pow(g, 2 * k, p) for k in range((p - 1) // 2))


@dataclass(frozen=True)
class FieldConfig:
    """A field GF(p^degree) with p prime, p = 3 (mod 4), degree 1 or 2."""

    p: int
    degree: int = 1

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.p % 4 != 3:
            raise ValueError(
                f"p must be 3 (mod 4) so x^2 + 1 is irreducible, got {self.p}"
            )
        if self.degree not in (1, 2):
            raise ValueError(f"degree must be 1 or 2, got {self.degree}")

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def is_extension(self) -> bool:
        return self.degree == 2

    @property
    def generator(self) -> int:
        """Smallest multiplicative generator of the base field GF(p)."""
        return find_generator(self.p)

    def element(self, re: int, im: int = 0) -> FieldElement:
        return FieldElement(re % self.p, im % self.p, self)

    def zero(self) -> FieldElement:
        return self.element(0)

    def one(self) -> FieldElement:
        return self.element(1)

    def minus_one(self) -> FieldElement:
        return self.element(-1)

    def i_unit(self) -> FieldElement:
        if not self.is_extension:
            raise ValueError("i exists only in the degree-2 extension")
        return self.element(0, 1)

    def elements(self) -> list[FieldElement]:
        """All field elements, ordered by (re, im)."""
        if self.degree == 1:
            return [self.element(r) for r in range(self.p)]
        return [
            self.element(r, s) for r, s in iter_product(range(self.p), range(self.p))
        ]

    def __str__(self) -> str:
        return f"GF({self.order})"


def _signed(r: int, p: int) -> int:
    # balanced representative; in particular p-1 prints as -1
    return r if r <= p // 2 else r - p


@dataclass(frozen=True)
class FieldElement:
    """An element re + im*i of GF(p^2), or re in GF(p) when im = 0."""

    re: int
    im: int
    config: FieldConfig

    def __post_init__(self) -> None:
        if not (0 <= self.re < self.config.p and 0 <= self.im < self.config.p):
            raise ValueError("components must be canonical residues in [0, p)")
        if self.im != 0 and not self.config.is_extension:
            raise ValueError("imaginary part requires a degree-2 field")

    # -- helpers ---------------------------------------------------------

    def _coerce(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, int):
            return self.config.element(other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.config != self.config:
            raise ValueError(f"field mismatch: {self.config} vs {other.config}")
        return other

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def sort_key(self) -> tuple[int, int]:
        return (self.re, self.im)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: FieldElement | int) -> FieldElement:
        o = self._coerce(other)
        return self.config.element(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        o = self._coerce(other)
        return self.config.element(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: FieldElement | int) -> FieldElement:
        return self._coerce(other) - self

    def __neg__(self) -> FieldElement:
        return self.config.element(-self.re, -self.im)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        o = self._coerce(other)
        # (a + bi)(c + di) = (ac - bd) + (ad + bc)i, using i^2 = -1
        return self.config.element(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        p = self.config.p
        # (a + bi)^-1 = (a - bi) / (a^2 + b^2); the norm a^2 + b^2 lies in
        # GF(p) and vanishes only at zero because -1 is a non-residue
        norm = (self.re * self.re + self.im * self.im) % p
        norm_inv = pow(norm, -1, p)
        return self.config.element(self.re * norm_inv, -self.im * norm_inv)

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: FieldElement | int) -> FieldElement:
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> FieldElement:
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an integer")
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = self.config.one()
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def frobenius(self) -> FieldElement:
        """The field automorphism x -> x^p; conjugation on the extension."""
        # a^p = a for a in GF(p) and i^p = -i when p = 3 (mod 4), so the
        # power map reduces to negating the imaginary part
        return self.config.element(self.re, -self.im)

    # -- presentation ----------------------------------------------------

    def __str__(self) -> str:
        p = self.config.p
        re, im = _signed(self.re, p), _signed(self.im, p)
        if im == 0:
            return str(re)
        if im == 1:
            im_part = "i"
        elif im == -1:
            im_part = "-i"
        else:
            im_part = f"{im}i"
        if re == 0:
            return im_part
        return f"{re}+{im_part}" if not im_part.startswith("-") else f"{re}{im_part}"

    def __repr__(self) -> str:
        return f"<{self} in {self.config}>"


def frobenius(x: FieldElement) -> FieldElement:
    return x.frobenius()


def phi_map(x: FieldElement) -> int:
    """Product-preserving sign map GF(p) -> {-1, 0, +1}.

    Zero maps to 0; even powers of the generator map to +1, odd powers
    to -1.  Raises ValueError on inputs outside the base field: elements
    with a nonzero imaginary part have no sign.
    """
    if not x.is_real:
        raise ValueError(f"phi_map is defined on GF(p) only, got {x}")
    if x.re == 0:
        return 0
    return 1 if x.re in _even_power_residues(x.config.p) else -1


def abs_map(x: FieldElement) -> int:
    """0 for the zero element, 1 for every other element."""
    return 0 if x.is_zero else 1


@dataclass(frozen=True)
class PhiUniquenessReport:
    """Outcome of the exhaustive uniqueness check for the sign map."""

    p: int
    method: str  # 'exhaustive' (all sign assignments) or 'cyclic'
    candidates_checked: int
    qualifying_count: int
    unique: bool
    kernel: tuple[int, ...]
    matches_phi_map: bool
    generator_independent: bool


_EXHAUSTIVE_LIMIT = 13  # 2^(p-1) assignments stay enumerable up to here
_UNIQUENESS_GUARD = 1000


def _is_sign_homomorphism(p: int, f: dict[int, int]) -> bool:
    units = range(1, p)
    for a in units:
        fa = f[a]
        for b in units:
            if f[a * b % p] != fa * f[b]:
                return False
    return True


def verify_phi_uniqueness(p: int) -> PhiUniquenessReport:
    """Check that exactly one surjective sign homomorphism exists on GF(p).

    Candidate maps send every unit to +1 or -1 (zero is fixed at 0) and must
    preserve products.  Exactly one candidate besides the trivial all-ones
    map survives, and it coincides with phi_map; its kernel is the set of
    even generator powers, independent of which generator is chosen.

    For p <= 13 all 2^(p-1) sign assignments are enumerated.  For larger p
    (guarded at p <= 1000) the routine first verifies that the unit group is
    cyclic by generating it from the found generator, which forces any
    homomorphism to be determined by its value there, and then checks the
    two possible determinations exhaustively.
    """
    if not is_prime(p) or p % 4 != 3:
        raise ValueError(f"p must be a prime with p = 3 (mod 4), got {p}")
    if p > _UNIQUENESS_GUARD:
        raise ValueError(f"p = {p} exceeds the enumeration guard {_UNIQUENESS_GUARD}")

    g = find_generator(p)
    units = list(range(1, p))
    candidates: list[dict[int, int]] = []
    checked = 0

    if p <= _EXHAUSTIVE_LIMIT:
        method = "exhaustive"
        for signs in iter_product((1, -1), repeat=p - 1):
            checked += 1
            f = dict(zip(units, signs))
            if _is_sign_homomorphism(p, f):
                candidates.append(f)
    else:
        method = "cyclic"
        # confirm cyclicity concretely: powers of g must sweep every unit
        powers = [pow(g, k, p) for k in range(p - 1)]
        if sorted(powers) != units:
            raise AssertionError(f"{g} does not generate GF({p})^x")
        for sign_of_g in (1, -1):
            checked += 1
            f = {powers[k]: sign_of_g**k for k in range(p - 1)}
            if _is_sign_homomorphism(p, f):
                candidates.append(f)

    qualifying = [
        f for f in candidates if f[1] == 1 and any(v == -1 for v in f.values())
    ]
    unique = len(qualifying) == 1
    kernel: tuple[int, ...] = ()
    matches = False
    if unique:
        the_map = qualifying[0]
        kernel = tuple(sorted(a for a in units if the_map[a] == 1))
        config = FieldConfig(p, 1)
        matches = all(the_map[a] == phi_map(config.element(a)) for a in units)

    # the parity-of-exponent definition must not depend on the generator
    generator_independent = True
    expected = _even_power_residues(p)
    for h in units:
        h_powers = [pow(h, k, p) for k in range(p - 1)]
        if sorted(h_powers) != units:
            continue  # not a generator
        evens = frozenset(pow(h, 2 * k, p) for k in range((p - 1) // 2))
        if evens != expected:
            generator_independent = False

    return PhiUniquenessReport(
        p=p,
        method=method,
        candidates_checked=checked,
        qualifying_count=len(qualifying),
        unique=unique,
        kernel=kernel,
        matches_phi_map=matches,
        generator_independent=generator_independent,
    )
