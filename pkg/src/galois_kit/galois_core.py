"""Automorphism groups, fixed fields, and the three-way Galois criterion.

Everything here works over a tower L built by the extensions module.  The
automorphism machinery keeps each map as the image of the primitive generator
of the collapsed simple form of L: composing is one polynomial substitution
and equality is coordinate comparison.  The three conditions of the main
equivalence are computed by independent code paths (group counting, a
constructive certificate, and an exact nullspace), and every report asserts
that they agree.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import CapabilityError, DomainError, InternalError
from .exact_arith import GF, QQ, RationalField, is_prime
from .extensions import (Collapse, ExtensionTower, FieldElement,
                         collapse_to_simple, element_from_base_vector,
                         flatten_to_base, format_element, format_polynomial,
                         integer_tuples, lift_poly, minimal_polynomial,
                         poly_to_json, scalar_to_json, subalgebra_span,
                         tower_to_json, trivial_tower)
from .linalg import RowSpace, nullspace
from .polynomials import Polynomial, is_squarefree


class Automorphism:
    """A base-field automorphism of L, stored as the image of the collapsed
    primitive generator."""

    __slots__ = ("tower", "collapse", "image", "index")

    def __init__(self, tower: ExtensionTower, collapse: Collapse, image):
        self.tower = tower
        self.collapse = collapse
        if tower.degree() > 1:
            self.image = collapse.simple.top_field.coerce(image)
        else:
            self.image = tower.base.coerce(image)
        self.index = None

    @property
    def is_identity(self) -> bool:
        if self.tower.degree() == 1:
            return True
        return self.image == self.collapse.simple.generator(1)

    def apply_simple(self, u):
        """Image of an element of the collapsed simple field."""
        if self.tower.degree() == 1:
            return u
        sf = self.collapse.simple.top_field
        u = sf.coerce(u)
        acc = sf.zero
        for c in reversed(u.coeffs):
            acc = acc * self.image + sf.coerce(c)
        return acc

    def apply(self, y):
        """Image of y; accepts elements of L, of its collapsed form, or base
        scalars (which are fixed pointwise)."""
        if not isinstance(y, FieldElement):
            return self.tower.base.coerce(y)
        if self.tower.degree() == 1:
            raise DomainError("element does not belong to this automorphism's tower")
        simple_top = self.collapse.simple.top_field
        if y.field == simple_top and self.collapse.simple is not self.tower:
            return self.apply_simple(y)
        try:
            y = self.tower.top_field.coerce(y)
        except DomainError:
            raise DomainError("element does not belong to this automorphism's tower")
        u = self.collapse.to_simple(y)
        return self.collapse.from_simple(self.apply_simple(u))

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.tower == other.tower and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"Aut({format_element(self.image)})"


def apply(sigma: Automorphism, y):
    """Spec-level alias for Automorphism.apply."""
    return sigma.apply(y)


def compose(sigma: Automorphism, tau: Automorphism) -> Automorphism:
    """(sigma . tau)(z) = sigma(tau(z)); one polynomial substitution."""
    if sigma.tower != tau.tower:
        raise DomainError("cannot compose automorphisms of different towers")
    return Automorphism(sigma.tower, sigma.collapse,
                        sigma.apply_simple(tau.image))


class AutomorphismGroup:
    """All base-field automorphisms of a tower, identity first.

    Construction verifies closure under composition and inverses, and the
    order bound |G| <= [L:K].
    """

    __slots__ = ("tower", "collapse", "elements", "order")

    def __init__(self, tower: ExtensionTower, collapse: Collapse, elements):
        self.tower = tower
        self.collapse = collapse
        ident = [s for s in elements if s.is_identity]
        rest = [s for s in elements if not s.is_identity]
        if len(ident) != 1:
            raise InternalError("automorphism set lacks a unique identity")
        rest.sort(key=lambda s: _image_sort_key(s))
        self.elements = tuple(ident + rest)
        self.order = len(self.elements)
        for i, s in enumerate(self.elements):
            s.index = i
        if self.order > tower.degree():
            raise InternalError(
                f"|G| = {self.order} exceeds [L:K] = {tower.degree()}")
        self._verify_group_axioms()

    def _verify_group_axioms(self):
        images = {s.image: s for s in self.elements}
        for s in self.elements:
            has_inverse = False
            for t in self.elements:
                st = compose(s, t)
                if st.image not in images:
                    raise InternalError("automorphism set is not closed under composition")
                if st.is_identity:
                    has_inverse = True
            if not has_inverse:
                raise InternalError("automorphism lacks an inverse")

    def identity(self) -> Automorphism:
        return self.elements[0]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order


def _image_sort_key(s: Automorphism):
    if isinstance(s.image, FieldElement):
        return s.image.field.element_sort_key(s.image)
    return s.tower.base.element_sort_key(s.image)


def automorphism_group(tower: ExtensionTower, strategy: str = "roots",
                       seed: int = 0) -> AutomorphismGroup:
    """Enumerate Aut(L, K) by one of two independent strategies.

    "roots": collapse L to K(z) and factor the collapsed modulus over L; each
    linear factor x - r gives the map z -> r.  "recursive": extend the
    identity of K level by level, sending each generator to each root of its
    (partially mapped) level modulus in L.  Both return the same maps, which
    the test suite asserts.
    """
    collapse = collapse_to_simple(tower)
    if tower.degree() == 1:
        return AutomorphismGroup(tower, collapse,
                                 [Automorphism(tower, collapse, tower.base.one)])
    if strategy == "roots":
        auts = _automorphisms_by_roots(tower, collapse, seed)
    elif strategy == "recursive":
        auts = _automorphisms_recursive(tower, collapse, seed)
    else:
        raise DomainError(f"unknown strategy {strategy!r}")
    return AutomorphismGroup(tower, collapse, auts)


def _automorphisms_by_roots(tower, collapse, seed):
    from .factorization import factor

    simple = collapse.simple
    f = lift_poly(collapse.min_poly, simple.top_field)
    fac = factor(f, seed=seed)
    auts = []
    for g, _ in fac.factors:
        if g.degree == 1:
            auts.append(Automorphism(tower, collapse, -g.coeffs[0]))
    return auts


def _automorphisms_recursive(tower, collapse, seed):
    from .factorization import factor

    top = tower.top_field
    partials = [[]]  # image of generator i at position i-1, in the top field
    for k in range(1, tower.num_levels + 1):
        modulus = tower.levels[k - 1].modulus
        extended = []
        for imgs in partials:
            mapped = Polynomial(
                top, [_apply_partial(c, imgs, top) for c in modulus.coeffs])
            fac = factor(mapped, seed=seed)
            roots = sorted(
                (-g.coeffs[0] for g, _ in fac.factors if g.degree == 1),
                key=top.element_sort_key)
            extended.extend(imgs + [r] for r in roots)
        partials = extended
    auts = []
    for imgs in partials:
        z_img = _apply_partial(collapse.primitive, imgs, top)
        auts.append(Automorphism(tower, collapse, collapse.to_simple(z_img)))
    return auts


def _apply_partial(e, imgs, top):
    """Apply a partial embedding (generator images) to a tower element."""
    if not isinstance(e, FieldElement):
        return top.coerce(e)
    g_img = imgs[e.level - 1]
    acc = top.zero
    for c in reversed(e.coeffs):
        acc = acc * g_img + _apply_partial(c, imgs, top)
    return acc


class FixedFieldResult:
    """Basis, generator, and degree of the simultaneous fixed set of H."""

    __slots__ = ("subgroup", "basis", "generator", "min_poly", "degree")

    def __init__(self, subgroup, basis, generator, min_poly, degree):
        self.subgroup = subgroup
        self.basis = basis
        self.generator = generator
        self.min_poly = min_poly
        self.degree = degree


def fixed_field(subgroup, max_multiplier: int = 20) -> FixedFieldResult:
    """Exact nullspace of the stacked maps (sigma - id) for sigma in H.

    H must contain the identity.  The basis and generator are returned as
    elements of the original tower; the generator is found by the same
    small-multiplier search used when collapsing a tower.
    """
    sigmas = list(subgroup)
    if not sigmas:
        raise DomainError("fixed field needs a nonempty automorphism set")
    if not any(s.is_identity for s in sigmas):
        raise DomainError("fixed-field subgroup must contain the identity")
    tower = sigmas[0].tower
    collapse = sigmas[0].collapse
    base = tower.base
    n = tower.degree()
    if n == 1 or all(s.is_identity for s in sigmas):
        if n == 1:
            basis_l = [base.one]
        else:
            simple = collapse.simple
            basis_l = [collapse.from_simple(simple.generator(1) ** j) for j in range(n)]
        return _finish_fixed_field(sigmas, tower, basis_l, max_multiplier)
    simple = collapse.simple
    theta = simple.generator(1)
    rows = []
    for s in sigmas:
        if s.is_identity:
            continue
        if s.tower != tower:
            raise DomainError("mixed towers in one subgroup")
        img_pow = simple.top_field.one
        cols = []
        for j in range(n):
            delta = img_pow - theta ** j
            cols.append(flatten_to_base(delta))
            img_pow = img_pow * s.image
        rows.extend([cols[j][i] for j in range(n)] for i in range(n))
    vecs = nullspace(rows, base)
    basis_l = [collapse.from_simple(FieldElement(simple, 1, v)) for v in vecs]
    return _finish_fixed_field(sigmas, tower, basis_l, max_multiplier)


def element_vector(e, tower):
    """Base-field coordinate vector of e in the tower's nested basis."""
    if isinstance(e, FieldElement):
        return flatten_to_base(tower.top_field.coerce(e))
    return [tower.base.coerce(e)]


def _finish_fixed_field(sigmas, tower, basis_l, max_multiplier):
    degree = len(basis_l)
    # Self-audit: every basis element is fixed, and the set is a subring.
    for s in sigmas:
        for b in basis_l:
            if s.apply(b) != b:
                raise InternalError("fixed-field basis element moves under the subgroup")
    space = RowSpace(tower.base, tower.degree() if tower.num_levels else 1)
    for b in basis_l:
        space.add(element_vector(b, tower))
    for b1 in basis_l:
        for b2 in basis_l:
            if not space.contains(element_vector(b1 * b2, tower)):
                raise InternalError("fixed set is not closed under multiplication")
    generator, mu = _primitive_of_span(basis_l, degree, max_multiplier)
    return FixedFieldResult(tuple(sigmas), basis_l, generator, mu, degree)


def _primitive_of_span(basis, degree, max_multiplier):
    """First integer combination of basis elements with full minimal degree."""
    if degree == 1:
        b = basis[0]
        if isinstance(b, FieldElement):
            one = b.field.one
        else:
            from .extensions import _base_field_of_scalar
            one = _base_field_of_scalar(b).one
        return one, minimal_polynomial(one)
    for tup in integer_tuples(degree, max_multiplier):
        z = None
        for c, b in zip(tup, basis):
            if c == 0:
                continue
            term = b * c
            z = term if z is None else z + term
        if z is None:
            continue
        mu = minimal_polynomial(z)
        if mu.degree == degree:
            return z, mu
    raise CapabilityError(
        f"no generator of the fixed field found with multipliers up to {max_multiplier}")


def generic_element(tower: ExtensionTower, group: AutomorphismGroup,
                    bound: int = 20):
    """An element with trivial stabilizer, by bounded deterministic search.

    Candidates are integer-coordinate combinations of the collapsed power
    basis in increasing max-norm; existence is guaranteed, so running out of
    candidates is a capability error, never a silent failure.
    """
    if group.tower != tower:
        raise DomainError("group does not act on this tower")
    if group.order == 1:
        return tower.top_field.zero if tower.num_levels else tower.base.zero
    collapse = group.collapse
    simple = collapse.simple
    non_identity = [s for s in group.elements if not s.is_identity]
    n = tower.degree()
    for tup in integer_tuples(n, bound):
        z = FieldElement(simple, 1, [simple.base.coerce(t) for t in tup])
        if all(s.apply_simple(z) != z for s in non_identity):
            return collapse.from_simple(z)
    raise CapabilityError(
        f"no generic element with coordinates bounded by {bound} "
        f"(degree {n}, group order {group.order})")


def orbit_polynomial(z, group: AutomorphismGroup) -> Polynomial:
    """prod over sigma in G of (X - sigma(z)), with G-fixed coefficients.

    Coefficients live in L; they land in the base field exactly when L/K is
    Galois, in which case (for z with trivial stabilizer) the product equals
    the minimal polynomial of z.
    """
    tower = group.tower
    if tower.degree() == 1:
        zb = tower.base.coerce(z)
        return Polynomial(tower.base, (-zb, tower.base.one))
    top = tower.top_field
    zt = top.coerce(z)
    f = Polynomial.one(top)
    for s in group.elements:
        f = f * Polynomial(top, (-s.apply(zt), top.one))
    for s in group.elements:
        for c in f.coeffs:
            if s.apply(c) != c:
                raise InternalError("orbit polynomial coefficient moves under G")
    return f


def coerce_poly_to_base(f: Polynomial, tower: ExtensionTower) -> Polynomial:
    """Rewrite a polynomial with top-field coefficients over the base field."""
    consts = []
    for c in f.coeffs:
        if isinstance(c, FieldElement):
            consts.append(c.constant_value())
        else:
            consts.append(tower.base.coerce(c))
    return Polynomial(tower.base, consts)


class ConditionB:
    """Constructive splitting certificate: the orbit set B and f = prod(X-b)."""

    __slots__ = ("orbit", "poly", "squarefree", "splits", "roots_generate")

    def __init__(self, orbit, poly, squarefree, splits, roots_generate):
        self.orbit = orbit
        self.poly = poly
        self.squarefree = squarefree
        self.splits = splits
        self.roots_generate = roots_generate


class GaloisReport:
    """Verdicts and witnesses for the three equivalent conditions."""

    __slots__ = ("tower", "degree", "aut_order", "condition_a", "condition_c",
                 "fixed_degree", "certificate", "generic", "generic_min_poly",
                 "order_bound_ok", "verdict", "note", "generators")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def to_json_dict(self) -> dict:
        cert = None
        if self.certificate is not None:
            cert = {
                "orbit": [scalar_to_json(b) for b in self.certificate.orbit],
                "orbit_pretty": [format_element(b) for b in self.certificate.orbit],
                "poly": poly_to_json(self.certificate.poly),
                "poly_pretty": format_polynomial(self.certificate.poly),
                "squarefree": self.certificate.squarefree,
                "splits": self.certificate.splits,
                "roots_generate": self.certificate.roots_generate,
            }
        return {
            "tower": tower_to_json(self.tower),
            "degree": self.degree,
            "aut_order": self.aut_order,
            "condition_a": self.condition_a,
            "condition_c": self.condition_c,
            "fixed_degree": self.fixed_degree,
            "condition_b_certificate": cert,
            "generic_element": scalar_to_json(self.generic),
            "generic_element_pretty": format_element(self.generic),
            "generic_min_poly": poly_to_json(self.generic_min_poly),
            "order_bound_ok": self.order_bound_ok,
            "verdict": self.verdict,
            "note": self.note,
        }


def galois_report(tower: ExtensionTower, generators=None, seed: int = 0,
                  group: AutomorphismGroup | None = None) -> GaloisReport:
    """Machine-check the three-way equivalence on one extension.

    Condition (a) counts automorphisms; condition (c) measures the fixed
    field by an exact nullspace; when they hold, the (b)-certificate is built
    from the orbit set B of the given generators and fully re-verified.  A
    disagreement between (a) and (c) is an internal invariant violation.
    """
    n = tower.degree()
    top = tower.top_field
    if generators is None:
        generators = tower.generators() if tower.num_levels else [tower.base.one]
    else:
        generators = [top.coerce(g) if tower.num_levels else tower.base.coerce(g)
                      for g in generators]
    span = subalgebra_span(tower, generators)
    if span.dimension != n:
        raise DomainError(
            f"given generators span degree {span.dimension}, not [L:K] = {n}")
    if group is None:
        group = automorphism_group(tower, strategy="roots", seed=seed)
    order_bound_ok = group.order <= n
    if not order_bound_ok:
        raise InternalError("automorphism count exceeds the degree")
    cond_a = group.order == n
    ff = fixed_field(group.elements)
    cond_c = ff.degree == 1
    if cond_a != cond_c:
        raise InternalError(
            f"conditions disagree: |G|={group.order} vs fixed degree {ff.degree}")
    z = generic_element(tower, group)
    mu_z = minimal_polynomial(z)
    certificate = None
    if cond_a:
        certificate = _build_certificate(tower, generators, group)
    note = None
    if not cond_a:
        note = (f"fails by the equivalence theorem: |G| = {group.order} != "
                f"{n} = [L:K]; fixed field has degree {ff.degree}")
    return GaloisReport(
        tower=tower, degree=n, aut_order=group.order, condition_a=cond_a,
        condition_c=cond_c, fixed_degree=ff.degree, certificate=certificate,
        generic=z, generic_min_poly=mu_z, order_bound_ok=order_bound_ok,
        verdict=cond_a, note=note, generators=generators)


def _build_certificate(tower, generators, group) -> ConditionB:
    top = tower.top_field if tower.num_levels else tower.base
    orbit = []
    for g in generators:
        for s in group.elements:
            b = s.apply(g)
            if b not in orbit:
                orbit.append(b)
    f_top = Polynomial.one(top)
    for b in orbit:
        f_top = f_top * Polynomial(top, (-b, top.one))
    f_base = coerce_poly_to_base(f_top, tower) if tower.num_levels else f_top
    sqf = is_squarefree(f_base)
    splits = (f_top == lift_poly(f_base, top) if tower.num_levels else f_top == f_base)
    splits = splits and all(not _eval_top(f_base, b, tower) for b in orbit)
    gen_span = subalgebra_span(tower, orbit)
    roots_generate = gen_span.dimension == tower.degree()
    if not (sqf and splits and roots_generate):
        raise InternalError("certificate verification failed on a true verdict")
    return ConditionB(orbit, f_base, sqf, splits, roots_generate)


def _eval_top(f_base, b, tower):
    if not tower.num_levels:
        return f_base.evaluate(b)
    top = tower.top_field
    acc = top.zero
    for c in reversed(f_base.coeffs):
        acc = acc * b + top.coerce(c)
    return acc


def intermediate_fixed_check(tower: ExtensionTower, m_generators,
                             group: AutomorphismGroup | None = None,
                             seed: int = 0) -> bool:
    """Check Fix(Aut(L, M)) = M for the subfield M generated over K.

    Valid only on Galois extensions.  By the theory this always returns True;
    False signals an implementation fault, which makes the operation
    self-auditing.
    """
    if group is None:
        group = automorphism_group(tower, strategy="roots", seed=seed)
    n = tower.degree()
    if group.order != n:
        raise DomainError("intermediate-field check requires a Galois extension")
    top = tower.top_field if tower.num_levels else tower.base
    m_gens = [top.coerce(g) for g in m_generators]
    m_span = subalgebra_span(tower, m_gens)
    h = [s for s in group.elements if all(s.apply(g) == g for g in m_gens)]
    ff = fixed_field(h)
    if ff.degree != m_span.dimension:
        return False
    for b in ff.basis:
        if not m_span.contains(element_vector(b, tower)):
            return False
    fix_span = RowSpace(tower.base, n if tower.num_levels else 1)
    for b in ff.basis:
        fix_span.add(element_vector(b, tower))
    for g in m_gens:
        if not fix_span.contains(element_vector(g, tower)):
            return False
    return True


class CensusReport:
    """Exhaustive count of elements of F_{p^n} lying in proper subfields."""

    __slots__ = ("p", "n", "subfield_sizes", "union_count", "bound",
                 "field_size", "unique_subfields")

    def __init__(self, p, n, subfield_sizes, union_count, bound, field_size,
                 unique_subfields):
        self.p = p
        self.n = n
        self.subfield_sizes = subfield_sizes
        self.union_count = union_count
        self.bound = bound
        self.field_size = field_size
        self.unique_subfields = unique_subfields

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "field_size": self.field_size,
            "subfield_sizes": {str(m): c for m, c in sorted(self.subfield_sizes.items())},
            "union_count": self.union_count,
            "bound": self.bound,
            "unique_subfields": self.unique_subfields,
        }


def subfield_element_census(p: int, n: int, budget: int = 4096) -> CensusReport:
    """Count elements of F_{p^n} in proper subfields, exhaustively.

    An element lies in the (unique) subfield of size p^m, m a proper divisor
    of n, exactly when x^(p^m) = x.  The per-divisor sets are verified to have
    exactly p^m elements and to be multiplicatively closed, and the union
    count is checked against 1 + p + ... + p^(n-1) < p^n.
    """
    from .factorization import is_irreducible

    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n < 2:
        raise DomainError("census needs n >= 2")
    if p ** n > budget:
        raise CapabilityError(f"p^n = {p ** n} exceeds the census budget {budget}")
    field = GF(p)
    modulus = None
    for tail in itertools.product(range(p), repeat=n):
        cand = Polynomial(field, list(tail) + [1])
        if is_irreducible(cand, seed=0):
            modulus = cand
            break
    if modulus is None:
        raise InternalError("no irreducible modulus found")
    tower = trivial_tower(field).adjoin(modulus, _verified=True)
    top = tower.top_field
    theta = tower.generator(1)
    # Frobenius x -> x^p as an F_p-linear map on the power basis.
    frob_cols = []
    for j in range(n):
        img = (theta ** j) ** p
        frob_cols.append([c.value for c in img.coeffs])
    frob = [[frob_cols[j][i] for j in range(n)] for i in range(n)]
    proper = [m for m in range(1, n) if n % m == 0]
    powers = {}
    mat = [row[:] for row in frob]
    m_exp = 1
    for m in sorted(proper):
        while m_exp < m:
            mat = _matmul_mod(mat, frob, p)
            m_exp += 1
        powers[m] = [row[:] for row in mat]
    counts = {m: 0 for m in proper}
    union = 0
    members = {m: [] for m in proper}
    for vec in itertools.product(range(p), repeat=n):
        in_some = False
        for m in proper:
            if _matvec_fixes(powers[m], vec, p):
                counts[m] += 1
                members[m].append(vec)
                in_some = True
        if in_some:
            union += 1
    unique = True
    for m in proper:
        if counts[m] != p ** m:
            raise InternalError(
                f"x^(p^{m}) = x has {counts[m]} solutions, expected {p ** m}")
        elems = [FieldElement(tower, 1, [field.coerce(v) for v in vec])
                 for vec in members[m]]
        elem_set = set(elems)
        for a in elems:
            for b in elems:
                if a * b not in elem_set:
                    unique = False
                    raise InternalError("subfield candidate set is not closed")
    bound = (p ** n - 1) // (p - 1)
    if not (union <= bound < p ** n):
        raise InternalError("census bound violated")
    return CensusReport(p, n, counts, union, bound, p ** n, unique)


def _matmul_mod(a, b, p):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)]
            for i in range(n)]


def _matvec_fixes(mat, vec, p) -> bool:
    n = len(vec)
    for i in range(n):
        s = 0
        row = mat[i]
        for k in range(n):
            if vec[k]:
                s += row[k] * vec[k]
        if s % p != vec[i]:
            return False
    return True


def outside_union_witness(tower: ExtensionTower, subspaces, bound: int = 20):
    """An element of L outside every listed proper K-subspace.

    Only meaningful over an infinite base field; candidates run through
    integer-coordinate combinations of the collapsed power basis in increasing
    max-norm, the same enumeration the generic-element search uses, and
    membership is decided by exact rank comparison.
    """
    if not isinstance(tower.base, RationalField):
        raise DomainError("witness search requires an infinite base field")
    n = tower.degree()
    collapse = collapse_to_simple(tower)
    spaces = []
    for basis in subspaces:
        rs = RowSpace(QQ, n)
        for e in basis:
            vec = flatten_to_base(tower.top_field.coerce(e)) if tower.num_levels \
                else [tower.base.coerce(e)]
            rs.add(vec)
        if rs.dimension >= n:
            raise DomainError("a listed subspace equals all of L")
        spaces.append(rs)
    simple = collapse.simple
    for tup in integer_tuples(n, bound):
        if tower.num_levels:
            z = collapse.from_simple(FieldElement(simple, 1, [Fraction(t) for t in tup])) \
                if n > 1 else tower.top_field.coerce(tup[0])
            vec = flatten_to_base(z)
        else:
            z = tower.base.coerce(tup[0])
            vec = [z]
        if all(not rs.contains(vec) for rs in spaces):
            return z
    raise CapabilityError(
        f"no witness with coordinates bounded by {bound} for {len(spaces)} subspaces")
