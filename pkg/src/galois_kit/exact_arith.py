"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields.

Python's built-in ``int`` already provides sign-magnitude arbitrary-precision
integers, and ``fractions.Fraction`` keeps rationals reduced with a positive
denominator after every operation, so those two types back the rational side
directly.  Prime-field residues get a small immutable class of their own.

Every scalar domain used elsewhere in the package (rationals, prime fields,
extension-tower fields) is described by a *field object* exposing the same
small interface: ``zero``, ``one``, ``coerce``, ``characteristic``,
``is_finite``, ``size``, ``element_sort_key`` and, for finite fields,
``random_element`` and ``pth_root``.  Polynomial and linear-algebra code is
generic over that interface.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError

Rational = Fraction

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic primality test for desk-scale integers."""
    if n < 0:
        raise DomainError(f"is_prime expects a nonnegative integer, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rat_normalize(n: int, d: int) -> Fraction:
    """Return n/d as a canonical reduced rational with positive denominator."""
    if d == 0:
        raise DomainError("zero denominator in rational")
    return Fraction(n, d)


class PrimeScalar:
    """A residue in F_p.  Immutable; arithmetic stays inside one modulus."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, val):
        raise AttributeError("PrimeScalar is immutable")

    def _check(self, other: "PrimeScalar") -> None:
        if self.p != other.p:
            raise DomainError(f"modulus mismatch: F_{self.p} vs F_{other.p}")

    def _lift(self, other):
        if isinstance(other, PrimeScalar):
            self._check(other)
            return other
        if isinstance(other, int):
            return PrimeScalar(self.p, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeScalar(self.p, self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeScalar(self.p, self.value - o.value)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeScalar(self.p, o.value - self.value)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeScalar(self.p, self.value * o.value)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeScalar(self.p, -self.value)

    def inverse(self) -> "PrimeScalar":
        if self.value == 0:
            raise DomainError(f"division by zero in F_{self.p}")
        return PrimeScalar(self.p, pow(self.value, -1, self.p))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeScalar(self.p, pow(self.value, e, self.p))

    def __eq__(self, other):
        if isinstance(other, PrimeScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


def ff_inverse(a: PrimeScalar) -> PrimeScalar:
    """Multiplicative inverse in F_p; rejects zero."""
    return a.inverse()


class RationalField:
    """The field Q, with elements represented as ``Fraction``."""

    characteristic = 0
    is_finite = False
    size = None

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise DomainError(f"cannot coerce {x!r} into Q")

    def element_sort_key(self, a: Fraction):
        return (a,)

    def format_element(self, a: Fraction) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "Q"


QQ = RationalField()

_prime_field_cache: dict[int, "PrimeField"] = {}


class PrimeField:
    """The field F_p for prime p.  Construction rejects composite moduli."""

    is_finite = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise DomainError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.size = p

    @property
    def zero(self) -> PrimeScalar:
        return PrimeScalar(self.p, 0)

    @property
    def one(self) -> PrimeScalar:
        return PrimeScalar(self.p, 1)

    def coerce(self, x) -> PrimeScalar:
        if isinstance(x, PrimeScalar):
            if x.p != self.p:
                raise DomainError(f"cannot coerce F_{x.p} element into F_{self.p}")
            return x
        if isinstance(x, int):
            return PrimeScalar(self.p, x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(f"coefficient {x} not in F_{self.p}")
            return PrimeScalar(self.p, x.numerator) / PrimeScalar(self.p, x.denominator)
        raise DomainError(f"cannot coerce {x!r} into F_{self.p}")

    def elements(self):
        for v in range(self.p):
            yield PrimeScalar(self.p, v)

    def random_element(self, rng) -> PrimeScalar:
        return PrimeScalar(self.p, rng.randrange(self.p))

    def pth_root(self, a: PrimeScalar) -> PrimeScalar:
        # Frobenius is the identity on the prime field.
        return a

    def element_sort_key(self, a: PrimeScalar):
        return (a.value,)

    def format_element(self, a: PrimeScalar) -> str:
        return str(a.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"F_{self.p}"


def GF(p: int) -> PrimeField:
    """Cached constructor for prime fields."""
    field = _prime_field_cache.get(p)
    if field is None:
        field = PrimeField(p)
        _prime_field_cache[p] = field
    return field
