"""Complete factorization into irreducibles over F_p, Q, and extension towers.

Three engines sit behind one dispatcher:

* finite coefficient fields (F_p or finite towers): squarefree decomposition
  with p-th-root descent, distinct-degree splitting, and seeded
  Cantor-Zassenhaus equal-degree splitting;
* the rationals: content extraction, rational-root stripping, then Kronecker's
  interpolation search, guarded by an explicit degree bound;
* characteristic-zero towers: Trager's norm method on the collapsed simple
  form of the tower.  Norm polynomials routinely exceed what Kronecker can
  touch (degree [L:Q] * deg f with fat coefficients), so the norm path factors
  its squarefree integer polynomials by Hensel lifting a modular factorization
  and recombining, which stays exact and fast at these sizes.

Factor lists are sorted canonically, so results are deterministic for a fixed
seed regardless of the random choices made during equal-degree splitting.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from . import intpoly
from .errors import CapabilityError, DomainError, InternalError
from .exact_arith import GF, QQ, PrimeField, RationalField
from .extensions import (ExtensionTower, FieldElement, TowerField, as_tower,
                         collapse_to_simple, lift_poly)
from .polynomials import Polynomial, is_squarefree, lagrange_interpolate, resultant

KRONECKER_DEGREE_BOUND = 10
NORM_DEGREE_BOUND = 80
MAX_NORM_SHIFTS = 32

_ZASSENHAUS_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
    157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233,
    239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
)


class Factorization:
    """unit * prod(factor^multiplicity), factors monic irreducible, sorted."""

    __slots__ = ("unit", "factors", "domain")

    def __init__(self, domain, unit, factors):
        self.domain = domain
        self.unit = domain.coerce(unit)
        self.factors = tuple(sorted(
            ((g, m) for g, m in factors),
            key=lambda gm: gm[0].sort_key()))

    def reconstruct(self) -> Polynomial:
        f = Polynomial.constant(self.domain, self.unit)
        for g, m in self.factors:
            f = f * g ** m
        return f

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        inner = ", ".join(f"({g!r})^{m}" for g, m in self.factors)
        return f"Factorization({self.unit!r}; {inner})"


def factor(f: Polynomial, seed: int = 0) -> Factorization:
    """Factor f over its coefficient field (dispatching on the domain)."""
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    d = f.domain
    if isinstance(d, RationalField):
        return factor_over_rationals(f)
    if isinstance(d, PrimeField):
        return factor_over_prime_field(f, seed)
    if isinstance(d, TowerField):
        if d.is_finite:
            return factor_over_prime_field(f, seed)
        return factor_over_extension(f, as_tower(d), seed)
    raise DomainError(f"no factorization engine for domain {d!r}")


def is_irreducible(f: Polynomial, seed: int = 0) -> bool:
    """True iff f is irreducible (degree >= 1) over its coefficient field."""
    if f.is_zero or f.degree < 1:
        return False
    fac = factor(f, seed)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def nontrivial_factor(f: Polynomial, seed: int = 0):
    """A proper monic factor of f, or None when f is irreducible."""
    if f.is_zero or f.degree < 1:
        raise DomainError("need a nonconstant polynomial")
    fac = factor(f, seed)
    if len(fac.factors) == 1 and fac.factors[0][1] == 1:
        return None
    g = fac.factors[0][0]
    return g


def _verify(fac: Factorization, f: Polynomial) -> Factorization:
    if fac.reconstruct() != f:
        raise InternalError("factorization does not reconstruct its input")
    return fac


# ---------------------------------------------------------------------------
# Finite coefficient fields
# ---------------------------------------------------------------------------


def factor_over_prime_field(f: Polynomial, seed: int = 0) -> Factorization:
    """Factor over a finite field (prime field or finite tower level)."""
    dom = f.domain
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    if not dom.is_finite:
        raise DomainError("coefficient field is not finite")
    unit = f.lc
    if f.degree == 0:
        return Factorization(dom, unit, ())
    rng = random.Random(seed)
    work = f.monic()
    out = []
    for part, mult in _squarefree_parts(work):
        for piece, d in _distinct_degree_parts(part):
            for irr in _equal_degree_split(piece, d, rng):
                out.append((irr, mult))
    merged = {}
    for g, m in out:
        merged[g] = merged.get(g, 0) + m
    fac = Factorization(dom, unit, merged.items())
    return _verify(fac, f)


def _squarefree_parts(f: Polynomial):
    """Yun-style squarefree decomposition, with the char-p descent f = g(x^p)."""
    dom = f.domain
    p = dom.characteristic
    parts = []
    fp = f.derivative()
    if fp.is_zero:
        return [(g, m * p) for g, m in _squarefree_parts(_pth_root_poly(f))]
    c = f.gcd(fp)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        piece = w.exact_div(y)
        if piece.degree > 0:
            parts.append((piece, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        parts.extend((g, m * p) for g, m in _squarefree_parts(_pth_root_poly(c)))
    return parts


def _pth_root_poly(f: Polynomial) -> Polynomial:
    """Inverse of x -> x^p on polynomials with zero derivative."""
    dom = f.domain
    p = dom.characteristic
    coeffs = []
    for i in range(0, f.degree + 1, p):
        coeffs.append(dom.pth_root(f.coeff(i)))
    return Polynomial(dom, coeffs)


def _powmod(h: Polynomial, e: int, m: Polynomial) -> Polynomial:
    result = Polynomial.one(h.domain)
    base = h % m
    while e:
        if e & 1:
            result = result * base % m
        base = base * base % m
        e >>= 1
    return result


def _distinct_degree_parts(f: Polynomial):
    """Split a monic squarefree f into products of equal-degree irreducibles."""
    q = f.domain.size
    out = []
    x = Polynomial.x(f.domain)
    h = x
    work = f
    d = 0
    while work.degree > 0:
        d += 1
        if 2 * d > work.degree:
            out.append((work, work.degree))
            break
        h = _powmod(h, q, work)
        g = (h - x).gcd(work) if not (h - x).is_zero else work
        if g.degree > 0:
            out.append((g, d))
            work = work.exact_div(g)
            h = h % work
    return out


def _equal_degree_split(f: Polynomial, d: int, rng) -> list[Polynomial]:
    """Cantor-Zassenhaus: split a product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    dom = f.domain
    q = dom.size
    n = f.degree
    while True:
        h = Polynomial(dom, [dom.random_element(rng) for _ in range(n)])
        if h.degree < 1:
            continue
        if dom.characteristic == 2:
            k = q.bit_length() - 1  # q = 2^k
            t = h % f
            acc = t
            for _ in range(k * d - 1):
                t = t * t % f
                acc = (acc + t) % f
            g = acc.gcd(f) if not acc.is_zero else f
        else:
            w = _powmod(h, (q ** d - 1) // 2, f)
            g = (w - Polynomial.one(dom)).gcd(f) if not (w - Polynomial.one(dom)).is_zero else f
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f.exact_div(g), d, rng)


# ---------------------------------------------------------------------------
# Rationals: Kronecker with an explicit degree bound
# ---------------------------------------------------------------------------


def factor_over_rationals(f: Polynomial, max_degree: int | None = None) -> Factorization:
    """Factor over Q by content extraction, root stripping, and Kronecker search.

    Degrees above the bound (default 10) raise CapabilityError rather than
    letting the divisor enumeration blow up silently.
    """
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    if not isinstance(f.domain, RationalField):
        raise DomainError("factor_over_rationals needs rational coefficients")
    bound = KRONECKER_DEGREE_BOUND if max_degree is None else max_degree
    if f.degree > bound:
        raise CapabilityError(
            f"degree {f.degree} exceeds the rational factorization bound {bound}")
    unit = f.lc
    if f.degree == 0:
        return Factorization(QQ, unit, ())
    zf = _to_primitive_int(f)
    factors = []
    # Powers of x.
    k = 0
    while zf[0] == 0:
        zf = zf[1:]
        k += 1
    if k:
        factors.append((Polynomial.x(QQ), k))
    if intpoly.zdeg(zf) >= 1:
        roots, deflated = intpoly.rational_roots_with_multiplicity(zf)
        for r, m in roots:
            factors.append((Polynomial(QQ, (-r, Fraction(1))), m))
        if intpoly.zdeg(deflated) >= 1:
            merged = {}
            for g in intpoly.kronecker_irreducible_factors(deflated):
                gq = _int_poly_to_monic_q(g)
                merged[gq] = merged.get(gq, 0) + 1
            factors.extend(merged.items())
    fac = Factorization(QQ, unit, _merge(factors))
    return _verify(fac, f)


def _merge(pairs):
    merged = {}
    for g, m in pairs:
        merged[g] = merged.get(g, 0) + m
    return merged.items()


def _to_primitive_int(f: Polynomial) -> list[int]:
    den = math.lcm(*(c.denominator for c in f.coeffs))
    zs = [int(c * den) for c in f.coeffs]
    return intpoly.zprimitive(zs)


def _int_poly_to_monic_q(g: list[int]) -> Polynomial:
    lead = Fraction(g[-1])
    return Polynomial(QQ, [Fraction(c) / lead for c in g])


# ---------------------------------------------------------------------------
# Hensel-lifting engine for the (monic, squarefree) norm polynomials
# ---------------------------------------------------------------------------


def factor_monic_squarefree_rational(f: Polynomial, seed: int = 0) -> list[Polynomial]:
    """Irreducible monic factors of a monic squarefree rational polynomial.

    Used on Trager norms, whose degrees exceed the Kronecker bound.  The
    rational input is rescaled to a monic integer polynomial (x -> x/c), its
    integer roots are stripped, and the rest goes through Hensel lifting.
    """
    if f.is_zero or f.lc != 1:
        raise DomainError("expected a monic polynomial")
    if f.degree > NORM_DEGREE_BOUND:
        raise CapabilityError(
            f"norm degree {f.degree} exceeds bound {NORM_DEGREE_BOUND}")
    if f.degree <= 1:
        return [f] if f.degree == 1 else []
    c = math.lcm(*(co.denominator for co in f.coeffs))
    n = f.degree
    # M(x) = c^n f(x/c) is monic with integer coefficients.
    m_int = [int(f.coeff(i) * c ** (n - i)) for i in range(n + 1)]
    out = []
    if m_int[0] == 0:
        # f is squarefree, so x divides at most once.
        m_int = m_int[1:]
        out.append(Polynomial.x(QQ))
    if intpoly.zdeg(m_int) >= 1:
        # No root stripping here: norm constant terms are far too large to
        # enumerate divisors, and recombination finds linear factors anyway.
        out.extend(_zassenhaus_monic(m_int, seed))
    # Undo the rescaling x -> x/c on every factor.
    mapped = []
    for g in out:
        d = g.degree
        mapped.append(Polynomial(
            QQ, [g.coeff(i) * Fraction(c) ** i / Fraction(c) ** d for i in range(d + 1)]))
    return sorted(mapped, key=lambda g: g.sort_key())


def _zassenhaus_monic(zf: list[int], seed: int) -> list[Polynomial]:
    """Monic squarefree integer polynomial -> monic rational irreducibles."""
    n = intpoly.zdeg(zf)
    best = None
    valid_seen = 0
    for p in _ZASSENHAUS_PRIMES:
        dom = GF(p)
        fbar = Polynomial(dom, zf)
        if fbar.degree != n:
            continue
        if not is_squarefree(fbar):
            continue
        fac = factor_over_prime_field(fbar, seed)
        count = sum(m for _, m in fac.factors)
        if best is None or count < best[0]:
            best = (count, p, [g for g, _ in fac.factors])
        valid_seen += 1
        if best[0] <= 2 or valid_seen >= 6:
            break
    if best is None:
        raise InternalError("no squarefree-preserving prime found")
    count, p, mod_factors = best
    if count == 1:
        return [_int_poly_to_monic_q(zf)]
    # Lift precision: factor coefficients are bounded by the Mignotte-style
    # 2^n * l2norm(f); lift modulus must exceed twice that.
    norm2 = math.isqrt(sum(c * c for c in zf)) + 1
    target = 2 * (2 ** n) * norm2 + 1
    k = 1
    while p ** k < target:
        k += 1
    lifted = _hensel_lift_tree(zf, mod_factors, p, k)
    modulus = p ** k
    return [_int_poly_to_monic_q(g) for g in _recombine(zf, lifted, modulus)]


def _plift(poly: Polynomial) -> list[int]:
    return [c.value for c in poly.coeffs]


def _pmod(f: list[int], m: int) -> list[int]:
    return intpoly.trim([c % m for c in f])


def _pmul(a, b, m):
    return _pmod(intpoly.zmul(a, b), m)


def _padd(a, b, m):
    n = max(len(a), len(b))
    return intpoly.trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
                         for i in range(n)])


def _psub(a, b, m):
    n = max(len(a), len(b))
    return intpoly.trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
                         for i in range(n)])


def _pdivmod_monic(a, b, m):
    """Division by a monic b in (Z/m)[x]."""
    rem = [c % m for c in a]
    db = intpoly.zdeg(b)
    dq = intpoly.zdeg(intpoly.trim(list(rem))) - db
    if dq < 0:
        return [], intpoly.trim(rem)
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[db + k] % m
        quo[k] = c
        if c:
            for j, bc in enumerate(b):
                rem[j + k] = (rem[j + k] - c * bc) % m
    return intpoly.trim(quo), intpoly.trim(rem)


def _hensel_step(f, g, h, s, t, m2):
    """One quadratic lift step, computed mod m2 (at most the square of the
    modulus the inputs are valid at; all polynomials monic)."""
    e = _psub(_pmod(f, m2), _pmul(g, h, m2), m2)
    q, r = _pdivmod_monic(_pmul(s, e, m2), h, m2)
    g1 = _padd(_padd(g, _pmul(t, e, m2), m2), _pmul(q, g, m2), m2)
    h1 = _padd(h, r, m2)
    b = _psub(_padd(_pmul(s, g1, m2), _pmul(t, h1, m2), m2), [1], m2)
    c, d = _pdivmod_monic(_pmul(s, b, m2), h1, m2)
    s1 = _psub(s, d, m2)
    t1 = _psub(_psub(t, _pmul(t, b, m2), m2), _pmul(c, g1, m2), m2)
    return g1, h1, s1, t1


def _hensel_lift_tree(f, mod_factors, p, k):
    """Lift the mod-p factor list to mod p^K with K >= k, tree-style."""
    if len(mod_factors) == 1:
        return [_pmod(f, p ** k)]
    half = len(mod_factors) // 2
    left, right = mod_factors[:half], mod_factors[half:]
    dom = GF(p)
    gbar = Polynomial.one(dom)
    for fac in left:
        gbar = gbar * fac
    hbar = Polynomial.one(dom)
    for fac in right:
        hbar = hbar * fac
    one, s0, t0 = gbar.xgcd(hbar)
    if one.degree != 0:
        raise InternalError("modular cofactors are not coprime")
    g, h = _plift(gbar), _plift(hbar)
    s, t = _plift(s0), _plift(t0)
    target = p ** k
    m = p
    while m < target:
        # Cap at the target: inputs beyond the root node are only known mod
        # p^k, so lifting past that precision would use garbage digits.
        m = min(m * m, target)
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
    g, h = _pmod(g, target), _pmod(h, target)
    return (_hensel_lift_tree(g, left, p, k)
            + _hensel_lift_tree(h, right, p, k))


def _symmetric(f, m):
    half = m // 2
    return intpoly.trim([c - m if c > half else c for c in f])


def _recombine(zf, lifted, modulus) -> list[list[int]]:
    """Zassenhaus recombination of lifted modular factors into true factors."""
    out = []
    work = list(zf)
    idxs = list(range(len(lifted)))
    r = 1
    while 2 * r <= len(idxs):
        found = False
        for combo in itertools.combinations(idxs, r):
            degsum = sum(intpoly.zdeg(lifted[i]) for i in combo)
            if degsum >= intpoly.zdeg(work):
                continue
            prod = [1]
            for i in combo:
                prod = _pmul(prod, lifted[i], modulus)
            cand = _symmetric(prod, modulus)
            if cand[-1] != 1:
                continue
            if work[0] and cand[0] and work[0] % cand[0]:
                continue
            quo = intpoly.zdivmod_try(work, cand)
            if quo is not None:
                out.append(cand)
                work = quo
                idxs = [i for i in idxs if i not in combo]
                found = True
                break
        if not found:
            r += 1
    if intpoly.zdeg(work) >= 1:
        out.append(work)
    return out


# ---------------------------------------------------------------------------
# Characteristic-zero towers: Trager's norm method
# ---------------------------------------------------------------------------


def factor_over_extension(f: Polynomial, tower: ExtensionTower | None = None,
                          seed: int = 0) -> Factorization:
    """Factor over a tower built by the extensions module.

    Finite towers delegate to the finite-field engine.  Characteristic-zero
    towers are collapsed to a simple extension Q(w); each squarefree part is
    shifted by s*w until its norm (a resultant against the collapsed modulus)
    is squarefree, the norm is factored over Q, and the factors are pulled
    back with gcds.
    """
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    if tower is None:
        tower = as_tower(f.domain)
    top = tower.top_field
    if f.domain != top:
        f = lift_poly(f, top)
    if tower.base.is_finite:
        return factor_over_prime_field(f, seed)
    if tower.num_levels == 0:
        return factor_over_rationals(f)
    unit = f.lc
    if f.degree == 0:
        return Factorization(top, unit, ())
    collapse = collapse_to_simple(tower)
    sfield = collapse.simple.top_field
    fs = Polynomial(sfield, [collapse.to_simple(c) for c in f.monic().coeffs])
    pairs = []
    for part, mult in _squarefree_parts_char0(fs):
        for irr in _trager_squarefree(part, collapse, seed):
            pairs.append((irr, mult))
    back = []
    for g, m in pairs:
        back.append((Polynomial(top, [collapse.from_simple(c) for c in g.coeffs]), m))
    fac = Factorization(top, unit, _merge(back))
    return _verify(fac, f)


def _squarefree_parts_char0(f: Polynomial):
    parts = []
    fp = f.derivative()
    c = f.gcd(fp)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        piece = w.exact_div(y)
        if piece.degree > 0:
            parts.append((piece, i))
        w = y
        c = c.exact_div(y)
        i += 1
    return parts


def _trager_squarefree(g: Polynomial, collapse, seed: int) -> list[Polynomial]:
    """Irreducible factors of a monic squarefree g over the simple field."""
    sfield = g.domain
    if g.degree == 1:
        return [g]
    mu = collapse.simple.levels[0].modulus
    n = mu.degree
    if n * g.degree > NORM_DEGREE_BOUND:
        raise CapabilityError(
            f"norm degree {n * g.degree} exceeds bound {NORM_DEGREE_BOUND}")
    theta = collapse.simple.generator(1)
    shifts = itertools.islice(intpoly.eval_nodes(), MAX_NORM_SHIFTS)
    for s in shifts:
        shifted = g.compose(Polynomial(sfield, (theta * (-s), sfield.one)))
        norm = _norm_to_rationals(shifted, mu)
        if is_squarefree(norm):
            break
    else:
        raise InternalError("no shift produced a squarefree norm")
    nfactors = factor_monic_squarefree_rational(norm, seed)
    if len(nfactors) == 1:
        return [g]
    out = []
    for ni in nfactors:
        ni_s = lift_poly(ni, sfield)
        h = shifted.gcd(ni_s)
        if h.degree == 0:
            raise InternalError("norm factor produced a trivial gcd")
        out.append(h.compose(Polynomial(sfield, (theta * s, sfield.one))).monic())
    total = Polynomial.one(sfield)
    for h in out:
        total = total * h
    if total != g:
        raise InternalError("Trager factors do not reconstruct their input")
    return out


def _norm_to_rationals(g: Polynomial, mu: Polynomial) -> Polynomial:
    """Res_t(mu(t), G(t, x)) by evaluation at rational nodes + interpolation.

    G substitutes the representative polynomial of each coefficient of g; the
    result is the norm of g from Q(w) down to Q, monic of degree deg(mu)*deg(g)
    because g is monic.
    """
    n = mu.degree
    d = g.degree
    npoints = n * d + 1
    reps = [list(c.coeffs) for c in g.coeffs]  # coefficients over Q, ascending
    points = []
    for a in itertools.islice(intpoly.eval_nodes(), npoints):
        aq = Fraction(a)
        acc = [Fraction(0)] * n
        powa = Fraction(1)
        for rep in reps:
            for j, rc in enumerate(rep):
                acc[j] += rc * powa
            powa *= aq
        t_poly = Polynomial(QQ, acc)
        if t_poly.is_zero:
            points.append((aq, Fraction(0)))
        else:
            points.append((aq, resultant(mu, t_poly)))
    norm = lagrange_interpolate(QQ, points)
    if norm.degree != n * d or norm.lc != 1:
        raise InternalError("norm interpolation lost degree or monicity")
    return norm
