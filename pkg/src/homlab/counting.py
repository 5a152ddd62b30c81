"""Exact computation of hom(G, H) and the counting quantities the
inequalities are built from: constrained homs, biclique contractions,
semiproper list-coloring counts, clique partition functions, and the
eps-polynomial of the triangle counterexample family.

Everything returns Fraction (or int for pure counts); no floats.
"""

from fractions import Fraction
from itertools import product
from math import comb, lcm

from homlab.errors import DimensionMismatch, LimitExceeded
from homlab.graphs import Graph, triangle_count
from homlab.models import Model

EPS_POLY_VERTEX_LIMIT = 12


def _check_constraints(constraints, n: int, q: int):
    if constraints is None:
        return None
    if len(constraints) != n:
        raise DimensionMismatch("need one constraint per vertex (%d)" % n)
    out = []
    for lam in constraints:
        if len(lam) != q:
            raise DimensionMismatch("constraint length %d != q = %d" % (len(lam), q))
        out.append(tuple(Fraction(x) for x in lam))
    return out


def lists_to_constraints(lists, q: int):
    """Turn per-vertex color sets into 0/1 weight vectors."""
    return [tuple(Fraction(1 if c in allowed else 0) for c in range(q)) for allowed in lists]


def hom(g: Graph, m: Model, constraints=None) -> Fraction:
    """Weighted homomorphism count: sum over all maps V -> colors of the
    product of edge weights times per-vertex weight * constraint.

    Brute force in mixed-radix order with incremental partial products
    along the vertex order 0..n-1; zero-weight colors are pruned first.
    All weights are scaled to integers by their common denominators (pure
    big-int arithmetic in the hot loop), and the exact scaling is divided
    back out at the end.
    """
    constraints = _check_constraints(constraints, g.n, m.q)
    denom = Fraction(1)
    weights = []
    for v in range(g.n):
        per_color = []
        for c in range(m.q):
            w = m.vertex_weights[c]
            if constraints is not None:
                w *= constraints[v][c]
            if w != 0:
                per_color.append((c, w))
        if not per_color:
            return Fraction(0)
        scale = lcm(*(w.denominator for _, w in per_color))
        denom *= scale
        weights.append([(c, int(w * scale)) for c, w in per_color])

    edge_scale = lcm(*(x.denominator for row in m.edge_weights for x in row)) if g.edges else 1
    ew = [[int(x * edge_scale) for x in row] for row in m.edge_weights]
    denom *= Fraction(edge_scale) ** len(g.edges)

    back_edges = [[u for u in range(v) if g.has_edge(u, v)] for v in range(g.n)]
    n = g.n
    total = 0
    assignment = [0] * n

    def rec(v: int, partial: int):
        nonlocal total
        if v == n:
            total += partial
            return
        for c, w in weights[v]:
            prod_w = partial * w
            for u in back_edges[v]:
                prod_w *= ew[assignment[u]][c]
                if prod_w == 0:
                    break
            if prod_w:
                assignment[v] = c
                rec(v + 1, prod_w)
        return

    rec(0, 1)
    return Fraction(total) / denom


def hom_biclique(a: int, b: int, m: Model, side_constraints=None) -> Fraction:
    """hom(K_{a,b}, m) via one-sided contraction in O(q^{min+1}) instead of
    the naive O(q^{a+b}).

    `side_constraints` is an optional (lambda_a, lambda_b) pair applied to
    every vertex of the respective side.
    """
    lam_a = lam_b = None
    if side_constraints is not None:
        lam_a, lam_b = side_constraints
    if b > a:
        # Contract over the smaller exponent side.
        return hom_biclique(b, a, m, None if side_constraints is None else (lam_b, lam_a))
    q = m.q
    wa = _side_weights(m, lam_a)
    wb = _side_weights(m, lam_b)
    if a == 0 and b == 0:
        return Fraction(1)
    if b == 0:
        return sum(wa, Fraction(0)) ** a
    total = Fraction(0)
    ew = m.edge_weights
    # Iterate color multisets for the b side with multinomial multiplicity.
    for combo, mult in _multisets_with_multiplicity(q, b):
        weight_b = Fraction(mult)
        for c in combo:
            weight_b *= wb[c]
        if weight_b == 0:
            continue
        inner = Fraction(0)
        for x in range(q):
            t = wa[x]
            if t == 0:
                continue
            for c in combo:
                t *= ew[x][c]
                if t == 0:
                    break
            inner += t
        total += weight_b * inner ** a
    return total


def _side_weights(m: Model, lam):
    if lam is None:
        return list(m.vertex_weights)
    if len(lam) != m.q:
        raise DimensionMismatch("side constraint length != q")
    return [m.vertex_weights[c] * Fraction(lam[c]) for c in range(m.q)]


def _multisets_with_multiplicity(q: int, k: int):
    """Yield (nondecreasing color tuple, multinomial count) covering all of
    [q]^k grouped by multiset."""

    def rec(start: int, remaining: int, prefix: tuple):
        if remaining == 0:
            yield prefix, _multiset_permutations(prefix)
            return
        for c in range(start, q):
            yield from rec(c, remaining - 1, prefix + (c,))

    yield from rec(0, k, ())


def _multiset_permutations(combo: tuple) -> int:
    from math import factorial

    out = factorial(len(combo))
    counts = {}
    for c in combo:
        counts[c] = counts.get(c, 0) + 1
    for c in counts.values():
        out //= factorial(c)
    return out


def biclique_kernel_sum(f, size1: int, size2: int, a: int, b: int, w1=None, w2=None) -> Fraction:
    """K_{a,b} pattern sum of a kernel f(x, y): sum over x in [size1]^a,
    y in [size2]^b of prod f(x_i, y_j), with optional per-point measures.

    Contracted over the cheaper side: cost O(size^{min(a,b)+1}).
    """
    w1 = [Fraction(1)] * size1 if w1 is None else [Fraction(x) for x in w1]
    w2 = [Fraction(1)] * size2 if w2 is None else [Fraction(x) for x in w2]
    if a == 0 and b == 0:
        return Fraction(1)
    if a == 0:
        return sum(w2, Fraction(0)) ** b
    if b == 0:
        return sum(w1, Fraction(0)) ** a
    cost_contract_b = size2 ** b
    cost_contract_a = size1 ** a
    if cost_contract_a < cost_contract_b:
        return biclique_kernel_sum(lambda y, x: f(x, y), size2, size1, b, a, w2, w1)
    total = Fraction(0)
    for combo, mult in _multisets_with_multiplicity(size2, b):
        wy = Fraction(mult)
        for c in combo:
            wy *= w2[c]
        if wy == 0:
            continue
        inner = Fraction(0)
        for x in range(size1):
            t = w1[x]
            if t == 0:
                continue
            for c in combo:
                t *= f(x, c)
                if t == 0:
                    break
            inner += t
        total += wy * inner ** a
    return total


def ominus(a_set, b, looped) -> frozenset:
    """A (-) B: remove from A the non-looped colors of B.

    B may be a color set or a color vector (treated as its set of values).
    """
    b_set = frozenset(b)
    return frozenset(a_set) - (b_set - frozenset(looped))


def cc(a_set, b_set, a: int, b: int, looped=()) -> int:
    """Semiproper colorings of K_{a,b} with side lists A and B: computed by
    the expansion sum over x in A^a of |B (-) x|^b.

    Symmetric: cc(A, B, a, b) == cc(B, A, b, a).
    """
    a_list = sorted(a_set)
    b_frozen = frozenset(b_set)
    looped = frozenset(looped)
    if a == 0:
        return len(b_frozen) ** b
    total = 0
    for x in _multiset_tuples(a_list, a):
        mult = _multiset_permutations(x)
        total += mult * len(b_frozen - (frozenset(x) - looped)) ** b
    return total


def _multiset_tuples(values, k: int):
    def rec(start, remaining, prefix):
        if remaining == 0:
            yield prefix
            return
        for i in range(start, len(values)):
            yield from rec(i, remaining - 1, prefix + (values[i],))

    yield from rec(0, k, ())


def semiproper_count(g: Graph, lists, looped=()) -> int:
    """Number of assignments v -> lists[v] such that no edge receives two
    equal non-looped colors.  Direct enumeration, integer-exact.
    """
    looped = frozenset(looped)
    if len(lists) != g.n:
        raise DimensionMismatch("need one list per vertex")
    lists = [sorted(l) for l in lists]
    if any(not l for l in lists):
        return 0
    back_edges = [[u for u in range(v) if g.has_edge(u, v)] for v in range(g.n)]
    total = 0
    assignment = [None] * g.n

    def rec(v: int):
        nonlocal total
        if v == g.n:
            total += 1
            return
        for c in lists[v]:
            if c not in looped and any(assignment[u] == c for u in back_edges[v]):
                continue
            assignment[v] = c
            rec(v + 1)
            assignment[v] = None

    rec(0)
    return total


def hom_clique(a: int, m: Model, lam=None) -> Fraction:
    """h_a(lambda) = hom with weights lambda on the complete graph K_a;
    h_0 = 1."""
    if a == 0:
        return Fraction(1)
    weights = _side_weights(m, lam)
    ew = m.edge_weights
    q = m.q
    total = Fraction(0)

    def rec(depth: int, chosen: tuple, partial: Fraction):
        nonlocal total
        if depth == a:
            total += partial
            return
        for c in range(q):
            t = partial * weights[c]
            for prev in chosen:
                if t == 0:
                    break
                t *= ew[prev][c]
            if t != 0:
                rec(depth + 1, chosen + (c,), t)

    rec(0, (), Fraction(1))
    return total


def hom_lambda(g: Graph, m: Model, lambdas) -> Fraction:
    """hom with a separate weight function lambda_v per vertex."""
    return hom(g, m, constraints=lambdas)


class EpsPolynomial:
    """hom(G, H_eps) as an exact polynomial in eps (coefficients c_0..c_d)."""

    def __init__(self, coefficients):
        self.coefficients = tuple(Fraction(c) for c in coefficients)

    def __eq__(self, other):
        return isinstance(other, EpsPolynomial) and self.coefficients == other.coefficients

    def __call__(self, eps) -> Fraction:
        eps = Fraction(eps)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * eps + c
        return acc

    def __repr__(self):
        return "EpsPolynomial(%s)" % (list(self.coefficients),)


def hom_eps_polynomial(g: Graph) -> EpsPolynomial:
    """Expand hom(G, H_eps) = 2^{-n} sum_x (1+2 eps)^{m(x)} exactly, where
    m(x) counts monochromatic edges of the 2-coloring x.

    The first coefficients satisfy c_0 = 1, c_1 = |E|, c_2 = C(|E|,2),
    c_3 = C(|E|,3) + |T(G)|.
    """
    if g.n > EPS_POLY_VERTEX_LIMIT:
        raise LimitExceeded("eps polynomial limited to n <= %d" % EPS_POLY_VERTEX_LIMIT)
    n = g.n
    edges = g.edge_list()
    mono_counts = [0] * (len(edges) + 1)
    for x in range(1 << n):
        mono = 0
        for u, v in edges:
            if (x >> u & 1) == (x >> v & 1):
                mono += 1
        mono_counts[mono] += 1
    degree = max((j for j, c in enumerate(mono_counts) if c), default=0)
    coeffs = [Fraction(0)] * (degree + 1)
    scale = Fraction(1, 2 ** n)
    for j, count in enumerate(mono_counts):
        if not count:
            continue
        # (1 + 2 eps)^j contributes C(j, k) 2^k eps^k.
        for k in range(j + 1):
            coeffs[k] += scale * count * comb(j, k) * 2 ** k
    return EpsPolynomial(coeffs)


def eps_poly_low_coefficients(g: Graph) -> tuple:
    """The displayed low-order expansion (1, |E|, C(|E|,2), C(|E|,3)+|T|)."""
    e = len(g.edges)
    return (
        Fraction(1),
        Fraction(e),
        Fraction(comb(e, 2)),
        Fraction(comb(e, 3) + triangle_count(g)),
    )
