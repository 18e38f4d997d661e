"""Dense univariate polynomials over any exact field domain.

Coefficients are stored in ascending order of the power of x; the zero
polynomial is the empty tuple.  All operations are pure and exact.  The
resultant follows the convention

    Res(f, g) = lc(f)^deg(g) * prod g(a_i)   over the roots a_i of f,

which is the one the norm-based factorization over extensions relies on.
"""

from __future__ import annotations

from .errors import DomainError


class Polynomial:
    """Immutable dense polynomial over a fixed coefficient field."""

    __slots__ = ("domain", "coeffs")

    def __init__(self, domain, coeffs):
        cs = [domain.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, val):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, domain) -> "Polynomial":
        return cls(domain, ())

    @classmethod
    def one(cls, domain) -> "Polynomial":
        return cls(domain, (domain.one,))

    @classmethod
    def x(cls, domain) -> "Polynomial":
        return cls(domain, (domain.zero, domain.one))

    @classmethod
    def constant(cls, domain, c) -> "Polynomial":
        return cls(domain, (c,))

    @classmethod
    def from_roots(cls, domain, roots) -> "Polynomial":
        f = cls.one(domain)
        for r in roots:
            f = f * cls(domain, (-domain.coerce(r), domain.one))
        return f

    # -- basic structure ----------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        """Leading coefficient."""
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.domain.zero

    def _check_domain(self, other: "Polynomial") -> None:
        if self.domain != other.domain:
            raise DomainError(
                f"domain mismatch: {self.domain!r} vs {other.domain!r}"
            )

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_domain(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.domain, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_domain(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.domain, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return Polynomial(self.domain, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_domain(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.domain)
        zero = self.domain.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Polynomial(self.domain, out)

    def scale(self, c) -> "Polynomial":
        c = self.domain.coerce(c)
        return Polynomial(self.domain, [a * c for a in self.coeffs])

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise DomainError("negative polynomial power")
        result = Polynomial.one(self.domain)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.domain == other.domain and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.domain, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- division, gcd -------------------------------------------------

    def divrem(self, g: "Polynomial"):
        """Quotient and remainder with deg(r) < deg(g)."""
        self._check_domain(g)
        if g.is_zero:
            raise DomainError("division by zero polynomial")
        if self.degree < g.degree:
            return Polynomial.zero(self.domain), self
        zero = self.domain.zero
        rem = list(self.coeffs)
        dq = self.degree - g.degree
        quo = [zero] * (dq + 1)
        inv_lc = self.domain.one / g.lc
        for k in range(dq, -1, -1):
            c = rem[g.degree + k] * inv_lc
            quo[k] = c
            if c:
                for j, b in enumerate(g.coeffs):
                    rem[j + k] = rem[j + k] - c * b
        return Polynomial(self.domain, quo), Polynomial(self.domain, rem[: g.degree])

    def __divmod__(self, g):
        return self.divrem(g)

    def __floordiv__(self, g):
        return self.divrem(g)[0]

    def __mod__(self, g):
        return self.divrem(g)[1]

    def exact_div(self, g: "Polynomial") -> "Polynomial":
        q, r = self.divrem(g)
        if not r.is_zero:
            raise DomainError("division is not exact")
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise DomainError("cannot normalize the zero polynomial")
        if self.lc == self.domain.one:
            return self
        return self.scale(self.domain.one / self.lc)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd by Euclid's algorithm."""
        self._check_domain(other)
        a, b = self, other
        if a.is_zero and b.is_zero:
            raise DomainError("gcd(0, 0) is undefined")
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Polynomial"):
        """Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic."""
        self._check_domain(other)
        if self.is_zero and other.is_zero:
            raise DomainError("gcd(0, 0) is undefined")
        one, zero = Polynomial.one(self.domain), Polynomial.zero(self.domain)
        a, b = self, other
        sa, sb = one, zero
        ta, tb = zero, one
        while not b.is_zero:
            q, r = a.divrem(b)
            a, b = b, r
            sa, sb = sb, sa - q * sb
            ta, tb = tb, ta - q * tb
        lead = a.lc
        inv = self.domain.one / lead
        return a.scale(inv), sa.scale(inv), ta.scale(inv)

    # -- calculus-flavoured helpers -------------------------------------

    def derivative(self) -> "Polynomial":
        d = self.domain
        return Polynomial(
            d, [d.coerce(i) * c for i, c in enumerate(self.coeffs)][1:]
        )

    def evaluate(self, a):
        """Horner evaluation at a point of the coefficient field."""
        a = self.domain.coerce(a)
        acc = self.domain.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def compose(self, g: "Polynomial") -> "Polynomial":
        """Substitution self(g(x)), by Horner over the polynomial ring."""
        self._check_domain(g)
        acc = Polynomial.zero(self.domain)
        for c in reversed(self.coeffs):
            acc = acc * g + Polynomial.constant(self.domain, c)
        return acc

    def shift(self, c) -> "Polynomial":
        """self(x + c)."""
        d = self.domain
        return self.compose(Polynomial(d, (d.coerce(c), d.one)))

    def map_coeffs(self, fn, new_domain) -> "Polynomial":
        return Polynomial(new_domain, [fn(c) for c in self.coeffs])

    def sort_key(self):
        """Canonical ordering key: degree first, then coefficient keys."""
        d = self.domain
        return (self.degree, tuple(d.element_sort_key(c) for c in self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if not c:
                continue
            if i == 0:
                terms.append(f"{c!r}")
            elif i == 1:
                terms.append(f"({c!r})*x")
            else:
                terms.append(f"({c!r})*x^{i}")
        return "Poly(" + " + ".join(terms) + ")"


# -- spec-level operation names ------------------------------------------


def poly_divrem(f: Polynomial, g: Polynomial):
    """Quotient and remainder of f by g; g must be nonzero."""
    return f.divrem(g)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    return f.gcd(g)


def evaluate(f: Polynomial, a):
    return f.evaluate(a)


def is_squarefree(f: Polynomial) -> bool:
    """True iff gcd(f, f') is constant.

    In characteristic p a vanishing derivative of a nonconstant polynomial
    means every root is multiple in the splitting field, hence False.
    """
    if f.is_zero:
        raise DomainError("squarefreeness of the zero polynomial is undefined")
    if f.degree == 0:
        return True
    fp = f.derivative()
    if fp.is_zero:
        return False
    return f.gcd(fp).degree == 0


def resultant(f: Polynomial, g: Polynomial):
    """Resultant under the convention Res(f,g) = lc(f)^deg(g) * prod g(roots of f)."""
    f._check_domain(g)
    if f.is_zero or g.is_zero:
        raise DomainError("resultant requires nonzero inputs")
    d = f.domain
    acc = d.one
    while True:
        m, n = f.degree, g.degree
        if m == 0:
            return acc * f.lc ** n
        if n == 0:
            return acc * g.lc ** m
        r = f % g
        if r.is_zero:
            return d.zero
        sign = -d.one if (m * n) % 2 else d.one
        acc = acc * sign * g.lc ** (m - r.degree)
        f, g = g, r


def lagrange_interpolate(domain, points) -> Polynomial:
    """Unique polynomial of degree < len(points) through (x_i, y_i), exact."""
    xs = [domain.coerce(x) for x, _ in points]
    ys = [domain.coerce(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DomainError("interpolation nodes must be distinct")
    # Newton form via the divided-difference table.
    table = list(ys)
    newton = [table[0]]
    for level in range(1, len(xs)):
        for i in range(len(xs) - level):
            table[i] = (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
        newton.append(table[0])
    poly = Polynomial.zero(domain)
    basis = Polynomial.one(domain)
    for i, c in enumerate(newton):
        poly = poly + basis.scale(c)
        if i < len(xs) - 1:
            basis = basis * Polynomial(domain, (-xs[i], domain.one))
    return poly
