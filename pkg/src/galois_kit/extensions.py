"""Field extensions of Q and F_p as towers of quotient rings.

A tower is a base field plus a chain of monic irreducible moduli; level i is
the quotient of the level-(i-1) polynomial ring by its modulus.  Elements are
coordinate tuples in the power basis of their level, nested down to base
scalars.  Towers are immutable; adjoining returns a new tower that shares the
lower levels, and elements of the old tower remain valid in the new one
(compatibility is structural, tested through cached level signatures).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import CapabilityError, DomainError, InternalError
from .exact_arith import GF, QQ, PrimeField, PrimeScalar, RationalField
from .linalg import RowSpace, solve
from .polynomials import Polynomial

GENERATOR_NAMES = "abcdefghijklmnopqrs"
COLLAPSE_NAME = "t"


class Level:
    """One tower step: a generator name and its monic modulus."""

    __slots__ = ("name", "modulus")

    def __init__(self, name: str, modulus: Polynomial):
        self.name = name
        self.modulus = modulus

    @property
    def degree(self) -> int:
        return self.modulus.degree


def _scalar_signature(c):
    if isinstance(c, FieldElement):
        return tuple(_scalar_signature(x) for x in c.coeffs)
    return c


class ExtensionTower:
    """A chain of quotient-ring extensions over Q or F_p."""

    def __init__(self, base, levels=()):
        if not isinstance(base, (RationalField, PrimeField)):
            raise DomainError(f"unsupported base field {base!r}")
        self.base = base
        self.levels = tuple(levels)
        self._sigs = None
        self._collapse = None

    # -- structure ------------------------------------------------------

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    def field_at(self, k: int):
        """Field of level k: the base for k = 0, else a TowerField view."""
        if k < 0 or k > self.num_levels:
            raise DomainError(f"level {k} out of range 0..{self.num_levels}")
        return self.base if k == 0 else TowerField(self, k)

    @property
    def top_field(self):
        return self.field_at(self.num_levels)

    def degree(self, down_to: int = 0) -> int:
        """Product of level degrees above ``down_to`` (the degree formula)."""
        if down_to < 0 or down_to > self.num_levels:
            raise DomainError(f"level {down_to} out of range 0..{self.num_levels}")
        d = 1
        for lev in self.levels[down_to:]:
            d *= lev.degree
        return d

    def prefix_signature(self, k: int):
        if self._sigs is None:
            sigs = [(self.base,)]
            for lev in self.levels:
                mod_sig = (lev.name, tuple(_scalar_signature(c) for c in lev.modulus.coeffs))
                sigs.append(sigs[-1] + (mod_sig,))
            self._sigs = [tuple(s) for s in sigs]
        return self._sigs[k]

    def compatible_with(self, other: "ExtensionTower", k: int) -> bool:
        """True when both towers agree on the first k levels."""
        if self is other:
            return True
        if k > self.num_levels or k > other.num_levels:
            return False
        return self.prefix_signature(k) == other.prefix_signature(k)

    def generator(self, k: int) -> "FieldElement":
        """The adjoined root at level k (1-based), as a level-k element."""
        if k < 1 or k > self.num_levels:
            raise DomainError(f"no generator at level {k}")
        sub = self.field_at(k - 1)
        coeffs = [sub.zero] * self.levels[k - 1].degree
        coeffs[1] = sub.one
        return FieldElement(self, k, coeffs)

    def generators(self):
        """All level generators, lifted to the top field."""
        top = self.top_field
        return [top.coerce(self.generator(k)) for k in range(1, self.num_levels + 1)]

    def generator_names(self):
        return [lev.name for lev in self.levels]

    # -- building -------------------------------------------------------

    def adjoin(self, modulus: Polynomial, name: str | None = None,
               seed: int = 0, _verified: bool = False) -> "ExtensionTower":
        """Extend by one level; the modulus must be irreducible of degree >= 2."""
        top = self.top_field
        if modulus.domain != top:
            raise DomainError("modulus coefficients must live in the tower's top field")
        if modulus.degree < 2:
            raise DomainError(f"modulus degree {modulus.degree} < 2")
        modulus = modulus.monic()
        if not _verified:
            from . import factorization
            factor = factorization.nontrivial_factor(modulus, seed=seed)
            if factor is not None:
                raise DomainError(
                    "modulus is reducible; nontrivial factor: "
                    f"{format_polynomial(factor, 'x')}"
                )
        if name is None:
            used = set(self.generator_names())
            name = next(n for n in GENERATOR_NAMES if n not in used)
        elif name in self.generator_names():
            raise DomainError(f"generator name {name!r} already in use")
        return ExtensionTower(self.base, self.levels + (Level(name, modulus),))

    def __eq__(self, other):
        if not isinstance(other, ExtensionTower):
            return NotImplemented
        return (self.num_levels == other.num_levels
                and self.compatible_with(other, self.num_levels))

    def __hash__(self):
        return hash(self.prefix_signature(self.num_levels))

    def __repr__(self):
        names = ",".join(self.generator_names())
        return f"Tower({self.base!r}({names}), degree {self.degree()})"


def trivial_tower(base) -> ExtensionTower:
    return ExtensionTower(base, ())


def as_tower(ctx) -> ExtensionTower:
    """Accept a base field or a tower as a field context."""
    if isinstance(ctx, ExtensionTower):
        return ctx
    if isinstance(ctx, TowerField):
        return ExtensionTower(ctx.tower.base, ctx.tower.levels[: ctx.level])
    return trivial_tower(ctx)


class FieldElement:
    """An element of a tower level, as coordinates in its power basis."""

    __slots__ = ("tower", "level", "coeffs")

    def __init__(self, tower: ExtensionTower, level: int, coeffs):
        if level < 1 or level > tower.num_levels:
            raise DomainError(f"level {level} out of range")
        sub = tower.field_at(level - 1)
        deg = tower.levels[level - 1].degree
        cs = [sub.coerce(c) for c in coeffs]
        if len(cs) > deg:
            raise DomainError("coordinate length exceeds level degree")
        cs.extend(sub.zero for _ in range(deg - len(cs)))
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, val):
        raise AttributeError("FieldElement is immutable")

    @property
    def field(self) -> "TowerField":
        return TowerField(self.tower, self.level)

    @property
    def sub_field(self):
        return self.tower.field_at(self.level - 1)

    def rep(self) -> Polynomial:
        """Canonical representative polynomial over the field below."""
        return Polynomial(self.sub_field, self.coeffs)

    def _pair(self, other):
        """Coerce (self, other) into one common field, or return None."""
        try:
            if isinstance(other, FieldElement):
                if other.level > self.level:
                    return None  # let the higher side handle it
                return self, self.field.coerce(other)
            if isinstance(other, (int, Fraction, PrimeScalar)):
                return self, self.field.coerce(other)
        except DomainError:
            return None
        return None

    def _binop(self, other, op):
        pair = self._pair(other)
        if pair is None:
            if isinstance(other, FieldElement) and other.level > self.level:
                return getattr(other.field.coerce(self), op)(other)
            return NotImplemented
        a, b = pair
        f = a.field
        if op == "_add":
            return FieldElement(a.tower, a.level,
                                [x + y for x, y in zip(a.coeffs, b.coeffs)])
        if op == "_sub":
            return FieldElement(a.tower, a.level,
                                [x - y for x, y in zip(a.coeffs, b.coeffs)])
        if op == "_mul":
            prod = a.rep() * b.rep()
            return f.from_rep(prod)
        raise AssertionError(op)

    def __add__(self, other):
        return self._binop(other, "_add")

    __radd__ = __add__

    def __sub__(self, other):
        r = self._binop(other, "_sub")
        return r

    def __rsub__(self, other):
        r = self._binop(other, "_sub")
        if r is NotImplemented:
            return r
        return -r

    def __mul__(self, other):
        return self._binop(other, "_mul")

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.tower, self.level, [-c for c in self.coeffs])

    def inverse(self) -> "FieldElement":
        if not self:
            raise DomainError("division by zero field element")
        modulus = self.tower.levels[self.level - 1].modulus
        rep = Polynomial(modulus.domain, self.coeffs)
        g, s, _ = rep.xgcd(modulus)
        if g.degree != 0:
            raise InternalError("modulus not coprime to nonzero element")
        return self.field.from_rep(s)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            if isinstance(other, FieldElement) and other.level > self.level:
                return other.field.coerce(self) / other
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        try:
            return self.field.coerce(other) * self.inverse()
        except DomainError:
            return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.level > self.level:
                return NotImplemented  # mirrored comparison runs on other
            pair = self._pair(other)
            if pair is None:
                return False
            return pair[0].coeffs == pair[1].coeffs
        if isinstance(other, (int, Fraction, PrimeScalar)):
            pair = self._pair(other)
            if pair is None:
                return False
            return pair[0].coeffs == pair[1].coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def constant_value(self):
        """Descend to the base scalar if all higher coordinates vanish."""
        e = self
        while isinstance(e, FieldElement):
            if any(e.coeffs[1:]):
                raise DomainError("element does not lie in the base field")
            e = e.coeffs[0]
        return e

    def in_base(self) -> bool:
        try:
            self.constant_value()
            return True
        except DomainError:
            return False

    def __repr__(self):
        return format_element(self)


class TowerField:
    """Field-domain view of one tower level; implements the scalar interface."""

    def __init__(self, tower: ExtensionTower, level: int):
        if level < 1 or level > tower.num_levels:
            raise DomainError(f"level {level} out of range")
        self.tower = tower
        self.level = level

    @property
    def characteristic(self) -> int:
        return self.tower.base.characteristic

    @property
    def is_finite(self) -> bool:
        return self.tower.base.is_finite

    @property
    def size(self):
        if not self.is_finite:
            return None
        d = 1
        for lev in self.tower.levels[: self.level]:
            d *= lev.degree
        return self.tower.base.size ** d

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self.tower, self.level, ())

    @property
    def one(self) -> FieldElement:
        sub = self.tower.field_at(self.level - 1)
        return FieldElement(self.tower, self.level, (sub.one,))

    @property
    def generator(self) -> FieldElement:
        return self.tower.generator(self.level)

    @property
    def modulus(self) -> Polynomial:
        return self.tower.levels[self.level - 1].modulus

    def from_rep(self, poly: Polynomial) -> FieldElement:
        """Element from a representative polynomial (reduced modulo the level)."""
        reduced = poly % self.modulus if poly.degree >= self.modulus.degree else poly
        return FieldElement(self.tower, self.level, reduced.coeffs)

    def coerce(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.level == self.level and x.tower.compatible_with(self.tower, self.level):
                return x if x.tower is self.tower else FieldElement(self.tower, self.level, x.coeffs)
            if x.level < self.level and x.tower.compatible_with(self.tower, x.level):
                return FieldElement(self.tower, self.level, (x,))
            raise DomainError("element belongs to an incompatible tower")
        if isinstance(x, (int, Fraction, PrimeScalar)):
            sub = self.tower.field_at(self.level - 1)
            return FieldElement(self.tower, self.level, (sub.coerce(x),))
        raise DomainError(f"cannot coerce {x!r} into {self!r}")

    def random_element(self, rng) -> FieldElement:
        if not self.is_finite:
            raise DomainError("random elements need a finite field")
        sub = self.tower.field_at(self.level - 1)
        deg = self.tower.levels[self.level - 1].degree
        return FieldElement(self.tower, self.level,
                            [sub.random_element(rng) for _ in range(deg)])

    def pth_root(self, a: FieldElement) -> FieldElement:
        """Inverse Frobenius: a^(q/p); exact in a finite field."""
        return self.coerce(a) ** (self.size // self.characteristic)

    def element_sort_key(self, a):
        return tuple(itertools.chain.from_iterable(
            self.tower.base.element_sort_key(c)
            for c in flatten_to_base(self.coerce(a))))

    def format_element(self, a) -> str:
        return format_element(self.coerce(a))

    def __eq__(self, other):
        if isinstance(other, TowerField):
            return (self.level == other.level
                    and self.tower.compatible_with(other.tower, self.level))
        return False

    def __hash__(self):
        return hash(self.tower.prefix_signature(self.level))

    def __repr__(self):
        names = ",".join(lev.name for lev in self.tower.levels[: self.level])
        return f"{self.tower.base!r}({names})"


# -- flattening and spans ---------------------------------------------------


def flatten_to_base(e):
    """Coordinates of an element over the tower's base field, as a flat list."""
    if isinstance(e, FieldElement):
        out = []
        for c in e.coeffs:
            out.extend(flatten_to_base(c))
        return out
    return [e]


def vector_over_level(e, k: int):
    """Coordinates of e over the level-k field (e at a level >= k)."""
    if isinstance(e, FieldElement) and e.level > k:
        out = []
        for c in e.coeffs:
            out.extend(vector_over_level(c, k))
        return out
    return [e]


def element_from_base_vector(tower: ExtensionTower, level: int, vec):
    """Inverse of flatten_to_base for the given level."""
    if level == 0:
        if len(vec) != 1:
            raise DomainError("base vector must have length 1")
        return tower.base.coerce(vec[0])
    deg = tower.levels[level - 1].degree
    chunk = len(vec) // deg
    coords = [element_from_base_vector(tower, level - 1, vec[i * chunk:(i + 1) * chunk])
              for i in range(deg)]
    return FieldElement(tower, level, coords)


def subalgebra_span(tower: ExtensionTower, elements):
    """Span of the K-subalgebra generated by the elements, over the base.

    Returns (RowSpace over base, spanning elements).  The dimension is the
    degree over K of the subfield the elements generate.
    """
    top = tower.top_field
    n = tower.degree()
    base = tower.base
    gens = [top.coerce(e) if tower.num_levels else base.coerce(e) for e in elements]
    one = top.one if tower.num_levels else base.one
    space = RowSpace(base, n)
    space.add(flatten_to_base(one))
    frontier = [one]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                cand = e * g
                if space.add(flatten_to_base(cand)):
                    nxt.append(cand)
        frontier = nxt
    return space


# -- spec operations --------------------------------------------------------


def adjoin_root(ctx, modulus: Polynomial, name: str | None = None,
                seed: int = 0) -> ExtensionTower:
    """Adjoin a root of an irreducible modulus to a field context."""
    return as_tower(ctx).adjoin(modulus, name=name, seed=seed)


def degree(tower: ExtensionTower, down_to: int = 0) -> int:
    return tower.degree(down_to)


def minimal_polynomial(z, down_to: int = 0, tower: ExtensionTower | None = None) -> Polynomial:
    """Monic least-degree polynomial over level ``down_to`` annihilating z.

    Found as the first linear dependency among 1, z, z^2, ... in the power
    basis over the target level.
    """
    if not isinstance(z, FieldElement):
        field = _base_field_of_scalar(z)
        z = field.coerce(z)
        return Polynomial(field, (-z, field.one))
    if down_to > z.level:
        raise DomainError("target level lies above the element")
    if down_to == z.level:
        f = z.field
        return Polynomial(f, (-z, f.one))
    twr = z.tower
    kf = twr.field_at(down_to)
    reldeg = 1
    for lev in twr.levels[down_to: z.level]:
        reldeg *= lev.degree
    space = RowSpace(kf, reldeg)
    powers = [z.field.one]
    while space.add(vector_over_level(powers[-1], down_to)):
        powers.append(powers[-1] * z)
    d = space.dimension
    cols = [vector_over_level(p, down_to) for p in powers[:d]]
    target = vector_over_level(powers[d], down_to)
    combo = solve(cols, target, kf)
    if combo is None:
        raise InternalError("power basis dependency vanished")
    coeffs = [-c for c in combo] + [kf.one]
    mu = Polynomial(kf, coeffs)
    if _eval_at_element(mu, z):
        raise InternalError("computed minimal polynomial does not annihilate")
    return mu


def _base_field_of_scalar(z):
    if isinstance(z, PrimeScalar):
        return GF(z.p)
    if isinstance(z, (int, Fraction)):
        return QQ
    raise DomainError(f"not a field scalar: {z!r}")


def _eval_at_element(f: Polynomial, z):
    """Evaluate f (over a lower level) at an element of a higher level."""
    if not isinstance(z, FieldElement):
        return f.evaluate(z)
    top = z.field
    acc = top.zero
    for c in reversed(f.coeffs):
        acc = acc * z + top.coerce(c)
    return acc


def lift_poly(f: Polynomial, field) -> Polynomial:
    """Re-express a polynomial over a (compatible) higher tower level."""
    return Polynomial(field, [field.coerce(c) for c in f.coeffs])


class SplitStep:
    """One adjunction made while building a splitting field."""

    __slots__ = ("index", "generator", "modulus", "tower_degree")

    def __init__(self, index, generator, modulus, tower_degree):
        self.index = index
        self.generator = generator
        self.modulus = modulus
        self.tower_degree = tower_degree

    def describe(self) -> str:
        return (f"step {self.index}: adjoined {self.generator} with "
                f"{format_polynomial(self.modulus, 'x')} "
                f"(degree {self.modulus.degree}); tower degree {self.tower_degree}")


class SplittingResult:
    __slots__ = ("tower", "roots", "transcript")

    def __init__(self, tower, roots, transcript):
        self.tower = tower
        self.roots = roots
        self.transcript = transcript


def splitting_field(f: Polynomial, ctx, seed: int = 0) -> SplittingResult:
    """Smallest tower over ctx in which f factors into linear factors.

    Repeatedly factors f over the current tower and adjoins a root of the
    lowest-degree nonlinear irreducible factor (ties broken canonically),
    so the construction is deterministic for a fixed seed.
    """
    from . import factorization

    if f.is_zero or f.degree < 1:
        raise DomainError("splitting field needs a nonconstant polynomial")
    tower = as_tower(ctx)
    if f.domain != tower.top_field:
        f = lift_poly(f, tower.top_field)
    original = f
    transcript = []
    roots = []  # (element, multiplicity), found level by level
    work = f
    while True:
        fac = factorization.factor(work, seed=seed)
        nonlinear = []
        for g, mult in fac.factors:
            if g.degree == 1:
                roots.append((-g.coeffs[0], mult))
            else:
                nonlinear.append((g, mult))
        if not nonlinear:
            break
        nonlinear.sort(key=lambda gm: gm[0].sort_key())
        g_star = nonlinear[0][0]
        tower = tower.adjoin(g_star, seed=seed, _verified=True)
        top = tower.top_field
        transcript.append(SplitStep(len(transcript) + 1,
                                    tower.levels[-1].name,
                                    g_star, tower.degree()))
        roots = [(top.coerce(r), m) for r, m in roots]
        work = Polynomial.one(top)
        for g, mult in nonlinear:
            work = work * lift_poly(g, top) ** mult
    top = tower.top_field
    if tower.num_levels:
        roots = [(top.coerce(r), m) for r, m in roots]
    flat = []
    for r, m in sorted(roots, key=lambda rm: _root_sort_key(tower, rm[0])):
        flat.extend([r] * m)
    check = Polynomial.from_roots(top, flat).scale(top.coerce(original.lc))
    lifted = lift_poly(original, top)
    if check != lifted:
        raise InternalError("splitting field roots do not reconstruct the input")
    return SplittingResult(tower, flat, transcript)


def _root_sort_key(tower, r):
    if isinstance(r, FieldElement):
        return r.field.element_sort_key(r)
    return tower.base.element_sort_key(r)


class Collapse:
    """Isomorphism between a tower and a one-level simple extension."""

    __slots__ = ("tower", "simple", "primitive", "min_poly",
                 "generator_images", "_inv_rows")

    def __init__(self, tower, simple, primitive, min_poly, generator_images,
                 inv_rows):
        self.tower = tower
        self.simple = simple
        self.primitive = primitive
        self.min_poly = min_poly
        self.generator_images = generator_images
        self._inv_rows = inv_rows

    @property
    def degree(self) -> int:
        return self.simple.degree()

    def to_simple(self, y):
        """Image of a tower element in the simple field."""
        if self.tower.num_levels == 0:
            return self.tower.base.coerce(y)
        if self.tower.num_levels == 1 and self.simple is self.tower:
            return self.tower.top_field.coerce(y)
        vec = flatten_to_base(self.tower.top_field.coerce(y))
        base = self.tower.base
        coords = [sum((r * v for r, v in zip(row, vec)), base.zero)
                  for row in self._inv_rows]
        return FieldElement(self.simple, 1, coords)

    def from_simple(self, u):
        """Preimage in the original tower of a simple-field element."""
        if self.tower.num_levels == 0:
            return self.tower.base.coerce(u)
        top = self.tower.top_field
        if self.tower.num_levels == 1 and self.simple is self.tower:
            return top.coerce(u)
        u = self.simple.top_field.coerce(u)
        acc = top.zero
        z = top.coerce(self.primitive)
        for c in reversed(u.coeffs):
            acc = acc * z + top.coerce(c)
        return acc


def collapse_to_simple(tower: ExtensionTower, max_multiplier: int = 20) -> Collapse:
    """Primitive-element form of a tower, with maps both ways.

    The primitive candidate is z = g_k + c_1*g_{k-1} + ... with small integer
    multipliers searched in the order 0, 1, -1, 2, -2, ...; a candidate is
    accepted when its minimal polynomial has full degree.  The forward map is
    verified on the generators (their images satisfy the mapped moduli).
    """
    if tower._collapse is not None:
        return tower._collapse
    n = tower.num_levels
    if n == 0:
        result = Collapse(tower, tower, tower.base.one,
                          Polynomial(tower.base, (-tower.base.one, tower.base.one)),
                          [], None)
        tower._collapse = result
        return result
    if n == 1:
        gen = tower.generator(1)
        result = Collapse(tower, tower, gen, tower.levels[0].modulus,
                          [gen], None)
        tower._collapse = result
        return result

    gens = tower.generators()
    total = tower.degree()
    primitive = None
    mu = None
    for mults in integer_tuples(n - 1, max_multiplier):
        z = gens[-1]
        for c, g in zip(mults, reversed(gens[:-1])):
            if c:
                z = z + g * _int_in_field(tower, c)
        candidate_mu = minimal_polynomial(z)
        if candidate_mu.degree == total:
            primitive, mu = z, candidate_mu
            break
    if primitive is None:
        raise CapabilityError(
            f"no primitive element found with multipliers up to {max_multiplier}")

    simple = trivial_tower(tower.base).adjoin(mu, name=COLLAPSE_NAME, _verified=True)
    base = tower.base
    # Columns of the power matrix: coordinates of z^i over the base.
    power = tower.top_field.one
    cols = []
    for _ in range(total):
        cols.append(flatten_to_base(power))
        power = power * primitive
    # Invert once: row i of inv maps a flattened element to coordinate i.
    inv_rows = _invert_columns(cols, base)
    result = Collapse(tower, simple, primitive, mu, [], inv_rows)
    result.generator_images.extend(result.to_simple(g) for g in gens)
    # Verify the isomorphism on the generators.
    for k in range(1, n + 1):
        modulus = tower.levels[k - 1].modulus
        mapped = Polynomial(simple.top_field,
                            [result.to_simple(tower.top_field.coerce(c))
                             for c in modulus.coeffs])
        if mapped.evaluate(result.generator_images[k - 1]):
            raise InternalError("collapse does not respect a level modulus")
    tower._collapse = result
    return result


def _invert_columns(cols, domain):
    """Rows of the inverse of the matrix whose columns are given."""
    from .linalg import rref
    n = len(cols)
    aug = [[cols[j][i] for j in range(n)] + [domain.one if k == i else domain.zero
                                             for k in range(n)]
           for i in range(n)]
    red, pivots = rref(aug, domain)
    if pivots != list(range(n)):
        raise InternalError("power matrix is singular")
    return [row[n:] for row in red]


def _int_in_field(tower, c: int):
    top = tower.top_field
    return top.coerce(c) if tower.num_levels else tower.base.coerce(c)


def integer_tuples(r: int, bound: int):
    """All integer r-tuples in increasing max-norm, deterministically ordered."""
    if r == 0:
        yield ()
        return
    for s in range(bound + 1):
        vals = [0]
        for v in range(1, s + 1):
            vals.extend((v, -v))
        for tup in itertools.product(vals, repeat=r):
            if max(abs(v) for v in tup) == s:
                yield tup


# -- rendering and JSON -----------------------------------------------------


def _scalar_to_str(c) -> str:
    if isinstance(c, PrimeScalar):
        return str(c.value)
    return str(c)


def _format_coefficient(c):
    """Render a coefficient as (text, negated); parenthesize multi-term ones."""
    if isinstance(c, FieldElement):
        if c.in_base():
            c = c.constant_value()
        else:
            inner = format_element(c)
            if " " in inner:
                return f"({inner})", False
            if inner.startswith("-"):
                return inner[1:], True
            return inner, False
    s = _scalar_to_str(c)
    return (s[1:], True) if s.startswith("-") else (s, False)


def format_element(e) -> str:
    """Human-readable polynomial form of an element, in its generator names."""
    if not isinstance(e, FieldElement):
        return _scalar_to_str(e)
    name = e.tower.levels[e.level - 1].name
    parts = []
    for i in range(len(e.coeffs) - 1, -1, -1):
        c = e.coeffs[i]
        if not c:
            continue
        cs, neg = _format_coefficient(c)
        if i == 0:
            term = cs
        else:
            var = name if i == 1 else f"{name}^{i}"
            term = var if cs == "1" else f"{cs}*{var}"
        if not parts:
            parts.append(f"-{term}" if neg else term)
        else:
            parts.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(parts) if parts else "0"


def format_polynomial(f: Polynomial, var: str = "x") -> str:
    """Canonical text form; parses back to the same polynomial."""
    if f.is_zero:
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeff(i)
        if not c:
            continue
        cs, neg = _format_coefficient(c)
        if i == 0:
            term = cs
        else:
            var_s = var if i == 1 else f"{var}^{i}"
            term = var_s if cs == "1" else f"{cs}*{var_s}"
        if not parts:
            parts.append(f"-{term}" if neg else term)
        else:
            parts.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(parts)


def scalar_to_json(c):
    if isinstance(c, FieldElement):
        return [scalar_to_json(x) for x in c.coeffs]
    if isinstance(c, PrimeScalar):
        return c.value
    return str(c)


def scalar_from_json(data, field):
    if isinstance(field, TowerField):
        if not isinstance(data, list):
            return field.coerce(scalar_from_json(data, field.tower.base))
        sub = field.tower.field_at(field.level - 1)
        return FieldElement(field.tower, field.level,
                            [scalar_from_json(d, sub) for d in data])
    if isinstance(field, PrimeField):
        if isinstance(data, list):
            raise DomainError("nested coordinates for a base-field scalar")
        return field.coerce(int(data))
    if isinstance(data, list):
        raise DomainError("nested coordinates for a base-field scalar")
    return field.coerce(Fraction(str(data)))


def poly_to_json(f: Polynomial):
    """Ascending coefficient array with exact scalar encodings."""
    return [scalar_to_json(c) for c in f.coeffs]


def poly_from_json(data, field) -> Polynomial:
    return Polynomial(field, [scalar_from_json(c, field) for c in data])


def base_field_to_json(base) -> str:
    return "Q" if isinstance(base, RationalField) else f"F{base.p}"


def base_field_from_json(s: str):
    if s == "Q":
        return QQ
    if s.startswith("F"):
        return GF(int(s[1:]))
    raise DomainError(f"unknown base field spec {s!r}")


def tower_to_json(tower: ExtensionTower) -> dict:
    return {
        "base": base_field_to_json(tower.base),
        "levels": [
            {"name": lev.name, "modulus": poly_to_json(lev.modulus)}
            for lev in tower.levels
        ],
    }


def tower_from_json(data: dict, seed: int = 0) -> ExtensionTower:
    base = base_field_from_json(data["base"])
    tower = trivial_tower(base)
    for lev in data.get("levels", ()):
        field = tower.top_field
        modulus = poly_from_json(lev["modulus"], field)
        tower = tower.adjoin(modulus, name=lev.get("name"), seed=seed)
    return tower
