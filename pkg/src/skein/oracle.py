"""Classical evaluation at q = 1 on exact SL(2, Z) matrices.

A generator maps to a trace polynomial: t_i to -tr(x_i) and s_{i..} to
-tr(xc_i ...), where xc = x - tr(x)/2 e is the traceless part.  Matrices are
4-tuples ``(a, b, c, d)`` of ints or Fractions; no floating point is used.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from skein.algebra import T, IndexOutOfRange, gen_indices, gen_kind

HALF = Fraction(1, 2)
IDENTITY = (1, 0, 0, 1)


# -- 2x2 matrix helpers ------------------------------------------------------


def mmul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def madd(x, y):
    return tuple(u + v for u, v in zip(x, y))


def mscale(s, x):
    return tuple(s * u for u in x)


def trace(x):
    return x[0] + x[3]


def det(x):
    return x[0] * x[3] - x[1] * x[2]


def traceless(x):
    h = HALF * trace(x)
    return (x[0] - h, x[1], x[2], x[3] - h)


def mprod(*ms):
    out = IDENTITY
    for m in ms:
        out = mmul(out, m)
    return out


def is_zero_matrix(x):
    return all(u == 0 for u in x)


# -- sampling ------------------------------------------------------------------


def random_sl2(seed, complexity=4, bound=5):
    """Product of ``complexity`` elementary matrices with off-diagonal entry in [-bound, bound]."""
    if complexity < 1:
        raise ValueError("complexity must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    m = IDENTITY
    for step in range(complexity):
        v = rng.randint(-bound, bound)
        # alternate upper/lower so consecutive factors never merge
        e = (1, v, 0, 1) if step % 2 == 0 else (1, 0, v, 1)
        if rng.random() < 0.5:
            e = (e[0], e[2], e[1], e[3])
        m = mmul(m, e)
    return m


@dataclass
class MatrixTuple:
    matrices: list
    seed: int
    checks: list = field(default_factory=list)

    def __len__(self):
        return len(self.matrices)


def is_generic(mats):
    """No trace equal to +-2 and no orthogonal pair of traceless parts."""
    if any(trace(x) in (2, -2) for x in mats):
        return False
    hats = [traceless(x) for x in mats]
    return all(trace(mmul(u, v)) != 0 for u, v in combinations(hats, 2))


def random_tuple(n, seed, complexity=4, bound=5):
    """Seed-deterministic generic tuple of n matrices; resamples degenerate draws."""
    rng = random.Random(seed)
    while True:
        mats = [random_sl2(rng, complexity, bound) for _ in range(n)]
        if is_generic(mats):
            return MatrixTuple(mats, seed)


# -- evaluation ----------------------------------------------------------------


class Evaluator:
    """Caches generator values for one tuple."""

    def __init__(self, tup):
        mats = tup.matrices if isinstance(tup, MatrixTuple) else list(tup)
        self.mats = mats
        self.hats = [traceless(x) for x in mats]
        self.cache = {}

    def gen(self, g):
        value = self.cache.get(g)
        if value is None:
            idx = gen_indices(g)
            if max(idx) > len(self.mats):
                raise IndexOutOfRange(f"label {max(idx)} exceeds tuple size {len(self.mats)}")
            if gen_kind(g) == T:
                value = -trace(self.mats[idx[0] - 1])
            else:
                value = -trace(mprod(*(self.hats[i - 1] for i in idx)))
            value = self.cache[g] = Fraction(value)
        return value

    def element(self, e, sign=1):
        total = Fraction(0)
        for w, c in e.terms.items():
            v = c.spec_q1(sign)
            for g in w:
                v *= self.gen(g)
            total += v
        return total


def eval_gen(g, tup):
    return Evaluator(tup).gen(g)


def eval_element_q1(e, tup, sign=1):
    """Value of ``e`` at q^(1/2) = sign on the tuple; exact rational."""
    return Evaluator(tup).element(e, sign)


# -- matrix identities -----------------------------------------------------------


def _r(vs, *idx):
    return -trace(mprod(*(vs[i - 1] for i in idx)))


def _identity_residuals(x, y, us, vs):
    """Residuals of the classical matrix/trace identities (all should vanish)."""
    out = {}
    lhs = madd(mmul(x, y), mmul(y, x))
    rhs = madd(madd(mscale(trace(y), x), mscale(trace(x), y)),
               mscale(trace(mmul(x, y)) - trace(x) * trace(y), IDENTITY))
    out["ab+ba"] = madd(lhs, mscale(-1, rhs))

    u1, u2, u3 = us
    lhs = mscale(2, mprod(u1, u2, u3))
    rhs = mscale(trace(mmul(u2, u3)), u1)
    rhs = madd(rhs, mscale(-trace(mmul(u1, u3)), u2))
    rhs = madd(rhs, mscale(trace(mmul(u1, u2)), u3))
    rhs = madd(rhs, mscale(trace(mprod(u1, u2, u3)), IDENTITY))
    out["2u1u2u3"] = madd(lhs, mscale(-1, rhs))

    out["skew"] = trace(mprod(u1, u2, u3)) + trace(mprod(u2, u1, u3))

    v = vs
    r = lambda *idx: _r(vs, *idx)  # noqa: E731
    lhs = madd(madd(mscale(r(1, 2, 3), v[3]), mscale(-r(1, 3), mmul(v[1], v[3]))),
               mscale(r(1, 2), mmul(v[2], v[3])))
    rhs = madd(madd(mscale(r(2, 3, 4), v[0]), mscale(r(3, 4), mmul(v[0], v[1]))),
               mscale(-r(2, 4), mmul(v[0], v[2])))
    out["fundamental"] = madd(lhs, mscale(-1, rhs))

    out["4-element-trace"] = 2 * r(1, 2, 3, 4) - (r(1, 3) * r(2, 4) - r(1, 2) * r(3, 4) - r(1, 4) * r(2, 3))

    out["trace-identity1"] = 2 * (r(1, 5, 6) * r(2, 3, 4) - r(1, 2, 3) * r(4, 5, 6)) - (
        r(1, 6) * (r(2, 5) * r(3, 4) - r(2, 4) * r(3, 5))
        + r(2, 6) * (r(1, 3) * r(4, 5) - r(1, 5) * r(3, 4))
        + r(3, 6) * (r(1, 5) * r(2, 4) - r(1, 2) * r(4, 5))
        + r(4, 6) * (r(1, 2) * r(3, 5) - r(1, 3) * r(2, 5))
    )
    out["trace-identity2"] = 2 * (r(2, 5, 6) * r(1, 3, 4) + r(1, 2, 3) * r(4, 5, 6)) - (
        r(2, 6) * (r(1, 5) * r(3, 4) - r(1, 4) * r(3, 5))
        + r(1, 6) * (r(2, 3) * r(4, 5) - r(2, 5) * r(3, 4))
        + r(3, 6) * (r(2, 5) * r(1, 4) - r(1, 2) * r(4, 5))
        + r(4, 6) * (r(1, 2) * r(3, 5) - r(2, 3) * r(1, 5))
    )
    out["trace-identity3"] = 2 * (r(1, 3, 4) * r(2, 5, 6) - r(1, 5, 6) * r(2, 3, 4)) - (
        r(1, 6) * (r(4, 5) * r(2, 3) - r(2, 4) * r(3, 5))
        + r(4, 6) * (r(1, 3) * r(2, 5) - r(1, 5) * r(2, 3))
        + r(3, 6) * (r(1, 5) * r(2, 4) - r(1, 4) * r(2, 5))
        + r(2, 6) * (r(1, 4) * r(3, 5) - r(1, 3) * r(4, 5))
    )
    # classical type I determinant identity with v = traceless parts
    s = lambda i, j: r(i, j)  # noqa: E731
    a, b = (1, 2, 3), (4, 5, 6)
    m = [[s(ai, bj) for bj in b] for ai in a]
    d3 = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
          - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
          + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    out["typeI-determinant"] = 2 * r(*a) * r(*b) - d3
    out["typeII"] = r(1, 5) * r(2, 3, 4) - r(2, 5) * r(1, 3, 4) + r(3, 5) * r(1, 2, 4) - r(4, 5) * r(1, 2, 3)
    return out


MATRIX_IDENTITIES = (
    "ab+ba", "2u1u2u3", "skew", "fundamental", "4-element-trace",
    "trace-identity1", "trace-identity2", "trace-identity3",
    "typeI-determinant", "typeII",
)


@dataclass
class Report:
    passed: bool
    trials: int
    failures: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)


def _residual_zero(v):
    return is_zero_matrix(v) if isinstance(v, tuple) else v == 0


def check_matrix_identities(trials, seed=0):
    """Every classical identity on ``trials`` random matrix draws; exact zero required."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    counts = {name: 0 for name in MATRIX_IDENTITIES}
    failures = []
    for trial in range(trials):
        mats = random_tuple(8, rng.randrange(2 ** 32)).matrices
        x, y = mats[0], mats[1]
        vs = [traceless(m) for m in mats[2:8]]
        residuals = _identity_residuals(x, y, vs[:3], vs)
        for name, value in residuals.items():
            if _residual_zero(value):
                counts[name] += 1
            else:
                failures.append({"identity": name, "trial": trial, "residual": str(value)})
    return Report(not failures, trials, failures, counts)


def check_relations(n, instances, trials=20, seed=0, signs=(1, -1)):
    """Evaluate each instance on ``trials`` generic tuples at both signs of q^(1/2)."""
    need = max((max(inst.tuple) for inst in instances), default=0)
    if n < need:
        raise ValueError(f"n={n} smaller than largest label {need}")
    rng = random.Random(seed)
    evaluators = [Evaluator(random_tuple(n, rng.randrange(2 ** 32))) for _ in range(trials)]
    failures = []
    for inst in instances:
        for trial, ev in enumerate(evaluators):
            bad = None
            for sign in signs:
                value = ev.element(inst.element, sign)
                if value != 0:
                    bad = (sign, value)
                    break
            if bad is not None:
                failures.append({"instance": inst.key(), "trial": trial,
                                 "sign": bad[0], "residual": str(bad[1])})
                break
    return Report(not failures, trials, failures, {"instances": len(instances)})
