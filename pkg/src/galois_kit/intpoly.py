"""Integer-coefficient polynomial utilities and Kronecker's factor search.

Polynomials here are plain lists of ints in ascending power order with no
trailing zeros.  Kronecker's method finds a degree-d factor by interpolating
through divisor tuples of the values f(a_0), ..., f(a_d); the search is pruned
hard by the fact that every divided difference f[a_0..a_j] of an integer
polynomial at integer nodes is an integer, so almost all divisor tuples die
after two or three choices.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import CapabilityError

# Values whose divisors we refuse to enumerate, and a cap on search nodes.
VALUE_FACTOR_BOUND = 10 ** 14
SEARCH_BUDGET = 2_000_000


def trim(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def zdeg(f) -> int:
    return len(f) - 1


def zmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def zeval(f, a: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * a + c
    return acc


def zcontent(f) -> int:
    return math.gcd(*f) if len(f) > 1 else abs(f[0]) if f else 0


def zprimitive(f):
    c = zcontent(f)
    return [x // c for x in f] if c > 1 else list(f)


def zdivmod_try(f, g):
    """Quotient of f by g over Z when the division is exact, else None."""
    if not g:
        return None
    rem = list(f)
    dg, lg = zdeg(g), g[-1]
    dq = zdeg(rem) - dg
    if dq < 0:
        return None
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[dg + k]
        if c % lg:
            return None
        c //= lg
        quo[k] = c
        if c:
            for j, b in enumerate(g):
                rem[j + k] -= c * b
    return quo if not any(rem) else None


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, ascending; bounded to keep enumeration sane."""
    n = abs(n)
    if n > VALUE_FACTOR_BOUND:
        raise CapabilityError(
            f"coefficient size beyond factor-search bound ({n} > {VALUE_FACTOR_BOUND})")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def eval_nodes():
    """0, 1, -1, 2, -2, ... — the canonical evaluation/shift sequence."""
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def rational_roots_with_multiplicity(f):
    """All rational roots of a primitive integer polynomial, by deflation.

    Returns (roots, deflated) where roots is a list of (Fraction, multiplicity)
    and deflated has no rational roots.  Assumes f[0] != 0.
    """
    work = list(f)
    roots = []
    candidates = []
    for q in divisors(work[-1]):
        for p in divisors(work[0]):
            if math.gcd(p, q) == 1:
                candidates.append(Fraction(p, q))
                candidates.append(Fraction(-p, q))
    candidates = sorted(set(candidates), key=lambda r: (abs(r), r < 0))
    for r in candidates:
        mult = 0
        lin = [-r.numerator, r.denominator]
        while zdeg(work) >= 1:
            q = zdivmod_try(work, lin)
            if q is None:
                break
            work = q
            mult += 1
        if mult:
            roots.append((r, mult))
        if zdeg(work) < 1:
            break
    return roots, zprimitive(work) if work else work


def kronecker_irreducible_factors(f):
    """Irreducible factorization of a primitive integer polynomial.

    Requires deg(f) >= 1 and f[0] != 0 and no rational roots (strip those
    first).  Returns primitive factors with positive leading coefficient.
    """
    budget = [SEARCH_BUDGET]
    out = _kronecker_split(list(f), budget)
    return sorted(out, key=lambda g: (zdeg(g), g))


def _kronecker_split(f, budget):
    n = zdeg(f)
    if n <= 1:
        return [f if f[-1] > 0 else [-c for c in f]]
    for d in range(2, n // 2 + 1):
        g = _find_factor_of_degree(f, d, budget)
        if g is not None:
            q = zdivmod_try(f, g)
            return _kronecker_split(g, budget) + _kronecker_split(zprimitive(q), budget)
    return [f if f[-1] > 0 else [-c for c in f]]


def _find_factor_of_degree(f, d, budget):
    nodes = list(itertools.islice(eval_nodes(), d + 1))
    vals = [zeval(f, a) for a in nodes]
    # No zero values: rational (hence integer) roots were stripped upstream.
    order = sorted(range(d + 1), key=lambda i: abs(vals[i]))
    nodes = [nodes[i] for i in order]
    vals = [vals[i] for i in order]
    choice_lists = []
    for j, v in enumerate(vals):
        ds = divisors(v)
        signed = []
        for a in ds:
            signed.append(a)
            if j > 0:
                signed.append(-a)
        choice_lists.append(signed)  # node 0 positive only: -g divides iff g does
    lc_f = f[-1]

    def dfs(j, diag, prefix):
        # diag is the divided-difference diagonal ending at node j-1; its last
        # entry is the prefix value f[x_0..x_{j-1}].  Prefix values of an
        # integer-polynomial factor must be integers, which prunes the search.
        for y in choice_lists[j]:
            budget[0] -= 1
            if budget[0] <= 0:
                raise CapabilityError("factor search budget exhausted")
            nd = [Fraction(y)]
            for t in range(1, j + 1):
                gap = nodes[j] - nodes[j - t]
                nd.append((nd[t - 1] - diag[t - 1]) / gap)
            if nd[-1].denominator != 1:
                continue
            if j == d:
                lead = nd[-1]
                if lead == 0 or lc_f % int(lead):
                    continue
                cand = _newton_to_coeffs(prefix + [nd[-1]], nodes)
                cand = zprimitive([int(c) for c in cand])
                if zdeg(cand) == d and zdivmod_try(f, cand) is not None:
                    return cand if cand[-1] > 0 else [-c for c in cand]
                continue
            got = dfs(j + 1, nd, prefix + [nd[-1]])
            if got is not None:
                return got
        return None

    return dfs(0, [], [])


def _newton_to_coeffs(dds, nodes):
    poly = [Fraction(0)]
    basis = [Fraction(1)]
    for k, c in enumerate(dds):
        while len(poly) < len(basis):
            poly.append(Fraction(0))
        for i, b in enumerate(basis):
            poly[i] += c * b
        if k < len(dds) - 1:
            basis = [Fraction(0)] + basis
            for i in range(len(basis) - 1):
                basis[i] -= nodes[k] * basis[i + 1]
    return trim(poly)
