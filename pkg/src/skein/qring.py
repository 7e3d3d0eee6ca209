"""Exact coefficient ring Z[q^(1/2), q^(-1/2), beta] with beta = 1/(q + 1/q).

Elements are stored as ``num / alpha**k`` where ``num`` is a Laurent polynomial
in q^(1/2) with integer coefficients and ``alpha = q + q^-1``.  Exponents of
``num`` are kept *doubled* so that q^(m/2) has the integer key ``m``.

The representation is canonical: when ``k > 0`` the numerator is not divisible
by alpha, so structural equality is ring equality.
"""

from fractions import Fraction

from skein import _kernels

__all__ = [
    "RingElem",
    "ZERO",
    "ONE",
    "Q",
    "QBAR",
    "ALPHA",
    "BETA",
    "ring_make",
    "qpow",
    "ring_from_json",
]


class RingElem:
    """Immutable element of R = Z[q^(+-1/2), beta].

    ``num`` is a tuple of ``(doubled_exponent, coefficient)`` pairs sorted by
    exponent with no zero coefficient; ``k`` is the power of alpha in the
    denominator.
    """

    __slots__ = ("num", "k", "_hash")

    def __init__(self, num=(), k=0):
        # trusted constructor: callers pass canonical data; use ring_make otherwise
        self.num = num
        self.k = k
        self._hash = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_int(cls, n):
        n = int(n)
        return cls(((0, n),), 0) if n else ZERO

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RingElem):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RingElem")

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.k == 0 and self.num == ((0, 1),)

    def unit_inverse(self):
        """Inverse of a unit ``+-q^(m/2) alpha^j``; ``None`` for non-units."""
        num = self.num
        if len(num) == 1:
            e, c = num[0]
            if c in (1, -1):
                # (c q^(e/2) / alpha^k)^-1 = c q^(-e/2) alpha^k
                return RingElem(_kernels.poly_mul(((-e, c),), _alpha_pow(self.k)), 0)
        # alpha^j * q^(m/2) with j > 0 has a two-or-more term numerator
        if self.k == 0 and num:
            stripped, j = _strip_alpha(num)
            if j and len(stripped) == 1 and stripped[0][1] in (1, -1):
                e, c = stripped[0]
                return RingElem(((-e, c),), j)
        return None

    def is_unit(self):
        return self.unit_inverse() is not None

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RingElem):
            if isinstance(other, int):
                other = RingElem.from_int(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        k1, k2 = self.k, other.k
        if k1 == k2:
            num = _kernels.poly_add(self.num, other.num)
            return _canonical(num, k1) if k1 else RingElem(num, 0)
        if k1 < k2:
            num = _kernels.poly_add(_kernels.poly_mul(self.num, _alpha_pow(k2 - k1)), other.num)
            return _canonical(num, k2)
        num = _kernels.poly_add(self.num, _kernels.poly_mul(other.num, _alpha_pow(k1 - k2)))
        return _canonical(num, k1)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(tuple((e, -c) for e, c in self.num), self.k)

    def __sub__(self, other):
        if isinstance(other, int):
            other = RingElem.from_int(other)
        elif not isinstance(other, RingElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RingElem):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                return RingElem(tuple((e, c * other) for e, c in self.num), self.k)
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        num = _kernels.poly_mul(self.num, other.num)
        k = self.k + other.k
        return _canonical(num, k) if k else RingElem(num, 0)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            inv = self.unit_inverse()
            if inv is None:
                raise ZeroDivisionError("negative power of a non-unit")
            return inv ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other):
        """Divide by a unit of R; anything else is rejected."""
        other = RingElem.coerce(other)
        inv = other.unit_inverse()
        if inv is None:
            raise ZeroDivisionError(f"{other} is not a unit of R")
        return self * inv

    def divide(self, other):
        """Exact quotient ``self / other`` in R, or ``None`` when it does not exist."""
        other = RingElem.coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero")
        if not self.num:
            return ZERO
        inv = other.unit_inverse()
        if inv is not None:
            return self * inv
        # (A / alpha^k) / (B' alpha^i / alpha^j) = (A alpha^j / B') / alpha^(k + i)
        b, i = _strip_alpha(other.num)
        a = _kernels.poly_mul(self.num, _alpha_pow(other.k)) if other.k else self.num
        quot = _laurent_div(a, b)
        if quot is None:
            return None
        return _canonical(quot, self.k + i)

    # -- involution and specializations --------------------------------------

    def bar(self):
        """The mirror involution q^(1/2) -> q^(-1/2); alpha is fixed."""
        return RingElem(tuple((-e, c) for e, c in reversed(self.num)), self.k)

    def spec_q1(self, sign=1):
        """Value at q^(1/2) = sign (so q = 1, alpha = 2) as a Fraction."""
        if sign == 1:
            total = sum(c for _, c in self.num)
        else:
            total = sum(c if e % 2 == 0 else -c for e, c in self.num)
        return Fraction(total, 2 ** self.k)

    def numerator_at(self, qhalf):
        """Evaluate at a numeric q^(1/2) (exact for Fractions)."""
        value = sum(c * qhalf ** e for e, c in self.num)
        alpha = qhalf ** 2 + qhalf ** -2
        return value / alpha ** self.k

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.k == other.k and self.num == other.num
        if isinstance(other, int):
            return self == RingElem.from_int(other)
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.num, self.k))
        return h

    def sort_key(self):
        return (self.k, self.num)

    # -- rendering ------------------------------------------------------------

    def to_json(self):
        return {"num": [[e, c] for e, c in self.num], "alphaPow": self.k}

    def __repr__(self):
        return f"RingElem({self})"

    def __str__(self):
        return format_ring(self)

    def is_simple(self):
        """True when the printed form needs no parentheses as a factor."""
        return len(self.num) <= 1


def _alpha_pow(k):
    return _ALPHA_POW_CACHE[k] if k < len(_ALPHA_POW_CACHE) else _alpha_pow_slow(k)


def _alpha_pow_slow(k):
    while len(_ALPHA_POW_CACHE) <= k:
        _ALPHA_POW_CACHE.append(_kernels.poly_mul(_ALPHA_POW_CACHE[-1], _ALPHA_NUM))
    return _ALPHA_POW_CACHE[k]


_ALPHA_NUM = ((-2, 1), (2, 1))
_ALPHA_POW_CACHE = [((0, 1),), _ALPHA_NUM]


def _laurent_div(a, b):
    """Exact quotient of Laurent polynomials over Z; ``None`` if b does not divide a."""
    rem = dict(a)
    b_top, b_lead = b[-1]
    floor = a[0][0] - b[0][0]
    out = []
    while rem:
        top = max(rem)
        c = rem[top]
        if c % b_lead:
            return None
        shift = top - b_top
        if shift < floor:
            return None
        f = c // b_lead
        out.append((shift, f))
        for e, v in b:
            k = e + shift
            nv = rem.get(k, 0) - f * v
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    out.sort()
    return tuple(out)


def _strip_alpha(num, limit=None):
    """Divide out as many alpha factors as possible; returns (num, count)."""
    j = 0
    while num and (limit is None or j < limit):
        quotient = _kernels.poly_div_alpha(num)
        if quotient is None:
            break
        num = quotient
        j += 1
    return num, j


def _canonical(num, k):
    if not num:
        return ZERO
    if k:
        num, j = _strip_alpha(num, k)
        k -= j
    return RingElem(num, k)


def ring_make(pairs, alpha_pow=0):
    """Build a canonical element from ``(doubled_exponent, int)`` pairs."""
    if alpha_pow < 0:
        raise ValueError("alphaPow must be non-negative")
    acc = {}
    for e, c in pairs:
        e = int(e)
        acc[e] = acc.get(e, 0) + int(c)
    num = tuple(sorted((e, c) for e, c in acc.items() if c))
    return _canonical(num, alpha_pow)


def ring_from_json(obj):
    return ring_make([tuple(p) for p in obj["num"]], obj["alphaPow"])


def qpow(doubled):
    """q^(doubled/2)."""
    return RingElem(((doubled, 1),), 0)


ZERO = RingElem((), 0)
ONE = RingElem(((0, 1),), 0)
Q = qpow(2)
QBAR = qpow(-2)
ALPHA = RingElem(_ALPHA_NUM, 0)
BETA = RingElem(((0, 1),), 1)


def _format_qpow(e):
    if e == 0:
        return ""
    if e == 2:
        return "q"
    if e % 2 == 0 and e > 0:
        return f"q^{e // 2}"
    if e % 2 == 0:
        return "q^{%d}" % (e // 2)
    return "q^{%d/2}" % e


def _format_num(num):
    parts = []
    for e, c in reversed(num):
        mon = _format_qpow(e)
        mag = abs(c)
        if not mon:
            body = str(mag)
        elif mag == 1:
            body = mon
        else:
            body = f"{mag}*{mon}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_ring(x):
    """Render as text: q^{m/2} powers, ``b`` for beta (alpha^-1)."""
    if not x.num:
        return "0"
    body = _format_num(x.num)
    if x.k == 0:
        return body
    den = "b" if x.k == 1 else f"b^{x.k}"
    if len(x.num) == 1 and x.num[0] == (0, 1):
        return den
    if len(x.num) == 1 and x.num[0] == (0, -1):
        return "-" + den
    if len(x.num) == 1:
        sign = "-" if body.startswith("-") else ""
        return f"{sign}{den}*{body.lstrip('-')}"
    return f"{den}*({body})"


def random_ring(rng, max_terms=3, max_exp=6, max_coeff=3, max_alpha=1):
    """Random nonzero element: a few ``c q^(e/2)`` terms over ``alpha^k``."""
    while True:
        pairs = [(rng.randint(-max_exp, max_exp), rng.randint(-max_coeff, max_coeff))
                 for _ in range(rng.randint(1, max_terms))]
        x = ring_make(pairs, rng.randint(0, max_alpha))
        if x:
            return x
