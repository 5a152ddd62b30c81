"""Weighted target models H: exact rational edge-weight matrix, vertex
weights, looped-color set, named families, and ferro/antiferro
classification via exact eigenvalue sign counts.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from homlab.errors import InvalidArgument, NegativeWeight, NonSymmetric
from homlab.ratmath import eigenvalue_sign_counts

RANDOM_MODEL_MAX_COLORS = 8


@dataclass(frozen=True)
class Model:
    q: int
    edge_weights: tuple[tuple[Fraction, ...], ...]
    vertex_weights: tuple[Fraction, ...]
    looped_set: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        q = self.q
        if len(self.edge_weights) != q or any(len(r) != q for r in self.edge_weights):
            raise InvalidArgument("edge weight matrix must be %d x %d" % (q, q))
        if len(self.vertex_weights) != q:
            raise InvalidArgument("vertex weight vector must have length %d" % q)
        for i in range(q):
            for j in range(q):
                if self.edge_weights[i][j] != self.edge_weights[j][i]:
                    raise NonSymmetric("edge weights not symmetric at (%d, %d)" % (i, j))
                if self.edge_weights[i][j] < 0:
                    raise NegativeWeight("edge weight (%d, %d) negative" % (i, j))
        if any(w < 0 for w in self.vertex_weights):
            raise NegativeWeight("negative vertex weight")
        if any(not 0 <= c < q for c in self.looped_set):
            raise InvalidArgument("looped color out of range")

    @staticmethod
    def from_rows(rows, vertex_weights=None, looped_set=()) -> "Model":
        q = len(rows)
        ew = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if vertex_weights is None:
            vw = tuple(Fraction(1) for _ in range(q))
        else:
            vw = tuple(Fraction(x) for x in vertex_weights)
        return Model(q, ew, vw, frozenset(looped_set))

    def scaled_edges(self, c) -> "Model":
        c = Fraction(c)
        return Model(
            self.q,
            tuple(tuple(w * c for w in row) for row in self.edge_weights),
            self.vertex_weights,
            self.looped_set,
        )


@dataclass(frozen=True)
class Classification:
    ferromagnetic: bool
    antiferromagnetic: bool
    positive_eigen_count: int
    negative_eigen_count: int


def classify_model(m: Model) -> Classification:
    """Exact ferro/antiferro flags from eigenvalue sign counts.

    Ferromagnetic (positive semidefinite): no negative eigenvalue.
    Antiferromagnetic: at most one strictly positive eigenvalue; zero
    eigenvalues are neutral for both flags, so the zero matrix carries both.
    Vertex weights play no role.
    """
    rows = [list(r) for r in m.edge_weights]
    pos, _zero, neg = eigenvalue_sign_counts(rows)
    return Classification(
        ferromagnetic=(neg == 0),
        antiferromagnetic=(pos <= 1),
        positive_eigen_count=pos,
        negative_eigen_count=neg,
    )


def model_complete_looped(q: int, ell: int) -> Model:
    """K_q with the first `ell` colors looped: semiproper-coloring target."""
    if not 0 <= ell <= q:
        raise InvalidArgument("need 0 <= ell <= q")
    rows = [[1 if i != j or i < ell else 0 for j in range(q)] for i in range(q)]
    return Model.from_rows(rows, looped_set=range(ell))


def model_hardcore() -> Model:
    """Two colors, the occupied one unlooped: counts independent sets."""
    return model_complete_looped(2, 1)


def model_h_eps(eps) -> Model:
    """Two-spin model with loop weight 1+2*eps and vertex weights 1/2.

    At eps=0 every graph has hom = 1; the eps^3 coefficient of hom(G, .)
    sees the triangle count of G, which is what makes this the triangle
    counterexample family.
    """
    eps = Fraction(eps)
    if eps < 0:
        raise InvalidArgument("eps must be >= 0")
    loop = 1 + 2 * eps
    return Model.from_rows(
        [[loop, 1], [1, loop]],
        vertex_weights=[Fraction(1, 2), Fraction(1, 2)],
        looped_set=(0, 1),
    )


def model_widom_rowlinson() -> Model:
    """Three fully looped colors A, 0, B with A-B the only non-edge."""
    return Model.from_rows(
        [[1, 1, 0], [1, 1, 1], [0, 1, 1]],
        looped_set=(0, 1, 2),
    )


def model_two_spin(w00, w01, w11, v0=1, v1=1) -> Model:
    vals = [Fraction(x) for x in (w00, w01, w11, v0, v1)]
    if any(v < 0 for v in vals):
        raise NegativeWeight("two-spin weights must be nonnegative")
    w00, w01, w11, v0, v1 = vals
    looped = [c for c, w in ((0, w00), (1, w11)) if w != 0]
    return Model.from_rows(
        [[w00, w01], [w01, w11]], vertex_weights=[v0, v1], looped_set=looped
    )


def two_spin_is_ferromagnetic(m: Model) -> bool:
    """Determinant shortcut: w00*w11 >= w01^2."""
    w = m.edge_weights
    return w[0][0] * w[1][1] >= w[0][1] ** 2


def two_spin_is_antiferromagnetic(m: Model) -> bool:
    w = m.edge_weights
    return w[0][0] * w[1][1] <= w[0][1] ** 2


def _rand_fraction(rng: random.Random, max_num=16, max_den=16, positive=False) -> Fraction:
    lo = 1 if positive else 0
    return Fraction(rng.randrange(lo, max_num + 1), rng.randrange(1, max_den + 1))


def random_model(q: int, seed: int, kind: str = "general") -> Model:
    """Deterministic-in-seed random model; entries are small rationals.

    Kinds: "general" (arbitrary symmetric nonnegative), "psd" (built as
    B^T B, hence ferromagnetic by construction), "antiferro-2spin"
    (rejection-sampled weights with w00*w11 <= w01^2).
    """
    if q > RANDOM_MODEL_MAX_COLORS:
        raise InvalidArgument("random models limited to q <= %d" % RANDOM_MODEL_MAX_COLORS)
    rng = random.Random((kind, q, seed).__repr__())
    if kind == "general":
        rows = [[Fraction(0)] * q for _ in range(q)]
        for i in range(q):
            for j in range(i, q):
                rows[i][j] = rows[j][i] = _rand_fraction(rng, max_num=8, max_den=4)
        vw = [_rand_fraction(rng, max_num=4, max_den=2, positive=True) for _ in range(q)]
        looped = frozenset(i for i in range(q) if rows[i][i] != 0)
        return Model.from_rows(rows, vertex_weights=vw, looped_set=looped)
    if kind == "psd":
        b = [[_rand_fraction(rng, max_num=4, max_den=2) for _ in range(q)] for _ in range(q)]
        rows = [
            [sum(b[k][i] * b[k][j] for k in range(q)) for j in range(q)] for i in range(q)
        ]
        looped = frozenset(i for i in range(q) if rows[i][i] != 0)
        return Model.from_rows(rows, looped_set=looped)
    if kind == "antiferro-2spin":
        if q != 2:
            raise InvalidArgument("antiferro-2spin models have q = 2")
        while True:
            w00 = _rand_fraction(rng, max_num=8, max_den=4)
            w11 = _rand_fraction(rng, max_num=8, max_den=4)
            w01 = _rand_fraction(rng, max_num=8, max_den=4, positive=True)
            if w00 * w11 <= w01 ** 2:
                return model_two_spin(w00, w01, w11)
    raise InvalidArgument("unknown random model kind %r" % kind)


def parse_model_name(name: str) -> Model:
    """Parse CLI syntax: "Kq:3", "Kq-looped:5,2", "hardcore", "wr",
    "heps:1/10", "ising:w00,w01,w11", "random:kind,q,seed"."""
    name = name.strip()
    head, _, rest = name.partition(":")
    head = head.lower()
    if head == "kq":
        return model_complete_looped(int(rest), 0)
    if head == "kq-looped":
        q, ell = (int(t) for t in rest.split(","))
        return model_complete_looped(q, ell)
    if head == "hardcore":
        return model_hardcore()
    if head == "wr":
        return model_widom_rowlinson()
    if head == "heps":
        return model_h_eps(Fraction(rest))
    if head == "ising":
        w00, w01, w11 = (Fraction(t) for t in rest.split(","))
        return model_two_spin(w00, w01, w11)
    if head == "random":
        kind, q, seed = rest.split(",")
        return random_model(int(q), int(seed), kind)
    raise InvalidArgument("cannot parse model name %r" % name)
