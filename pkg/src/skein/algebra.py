"""Generators, words and elements of the free algebra on t_i, s_ij, s_ijk.

A generator is an ``int`` code: ``kind << 24 | i << 16 | j << 8 | k`` with
kind 0 = T, 1 = S2, 2 = S3 and puncture labels ``1 <= i < j < k <= 255``.
Integer comparison of codes is the lexicographic order on
``(kind, indices)``.  A word is a tuple of codes; an :class:`Element` is a
finite R-linear combination of words.
"""

from itertools import combinations

from skein.qring import ALPHA, BETA, ONE, Q, QBAR, RingElem, random_ring, ring_from_json

T, S2, S3 = 0, 1, 2
KIND_NAMES = {"T": T, "S2": S2, "S3": S3, T: T, S2: S2, S3: S3}
MAX_LABEL = 255


class InvalidSymbol(ValueError):
    pass


class IndexOutOfRange(InvalidSymbol):
    pass


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

_INFO = {}


class GenInfo:
    __slots__ = ("code", "kind", "indices", "rd", "name")

    def __init__(self, code):
        kind = code >> 24
        raw = ((code >> 16) & 0xFF, (code >> 8) & 0xFF, code & 0xFF)
        self.code = code
        self.kind = kind
        self.indices = raw[: kind + 1]
        self.rd = (0, 2, 3)[kind]
        self.name = _render_name(kind, self.indices)


def _render_name(kind, indices):
    letter = "t" if kind == T else "s"
    if all(i < 10 for i in indices):
        return letter + "".join(map(str, indices))
    return letter + "{" + ",".join(map(str, indices)) + "}"


def info(code):
    try:
        return _INFO[code]
    except KeyError:
        gi = _INFO[code] = GenInfo(code)
        return gi


def _encode(kind, idx):
    code = kind << 24
    for shift, i in zip((16, 8, 0), idx):
        code |= i << shift
    return code


def gen_make(kind, raw_indices, n=None):
    """Canonical generator from possibly unsorted, pairwise distinct labels."""
    kind = KIND_NAMES[kind]
    idx = tuple(int(i) for i in raw_indices)
    if len(idx) != kind + 1:
        raise InvalidSymbol(f"kind {kind} needs {kind + 1} labels, got {idx}")
    if len(set(idx)) != len(idx):
        raise InvalidSymbol(f"repeated label in {idx}")
    for i in idx:
        if i < 1 or i > MAX_LABEL:
            raise InvalidSymbol(f"label {i} out of range")
        if n is not None and i > n:
            raise IndexOutOfRange(f"label {i} exceeds n={n}")
    return _encode(kind, sorted(idx))


def t(i):
    return gen_make(T, (i,))


def s(*idx):
    return gen_make(len(idx) - 1, idx)


def gen_name(code):
    return info(code).name


def gen_kind(code):
    return code >> 24


def gen_indices(code):
    return info(code).indices


def all_gens(n):
    """Every generator for labels 1..n in code order."""
    out = [_encode(T, (i,)) for i in range(1, n + 1)]
    out += [_encode(S2, c) for c in combinations(range(1, n + 1), 2)]
    out += [_encode(S3, c) for c in combinations(range(1, n + 1), 3)]
    return out


# ---------------------------------------------------------------------------
# word measures
# ---------------------------------------------------------------------------


def reduced_degree(word):
    return sum(info(g).rd for g in word)


def multidegree(word, n=None):
    counts = {}
    for g in word:
        for i in info(g).indices:
            counts[i] = counts.get(i, 0) + 1
    if n is None:
        n = max(counts, default=0)
    return tuple(counts.get(v, 0) for v in range(1, n + 1))


def _interleavings(a, b):
    count = 0
    for x, y in combinations(a, 2):
        for u, v in combinations(b, 2):
            if x < u < y < v or u < x < v < y:
                count += 1
    return count


_PAIR_CN = {}


def pair_crossings(g, h):
    """Crossing contribution of two non-T generators (2 per interleaved pair)."""
    key = (g, h) if g <= h else (h, g)
    try:
        return _PAIR_CN[key]
    except KeyError:
        value = 2 * _interleavings(info(g).indices, info(h).indices)
        _PAIR_CN[key] = value
        return value


def crossing_number(word):
    ss = [g for g in word if g >> 24]
    total = 0
    for a in range(len(ss)):
        for b in range(a + 1, len(ss)):
            total += pair_crossings(ss[a], ss[b])
    return total


def s3_entanglement(word):
    """Number of S3 pairs in ``word`` that share a label or interleave."""
    triples = [info(g).indices for g in word if g >> 24 == S3]
    total = 0
    for a in range(len(triples)):
        for b in range(a + 1, len(triples)):
            x, y = triples[a], triples[b]
            if set(x) & set(y) or _interleavings(x, y):
                total += 1
    return total


def word_measures(word, n=None):
    """``(reduced degree, multidegree vector, crossing number)`` of a word."""
    return reduced_degree(word), multidegree(word, n), crossing_number(word)


def word_name(word):
    return " ".join(gen_name(g) for g in word) if word else "1"


def default_word_key(word):
    """Display order: reduced degree, crossings, length, then lex on codes."""
    return (reduced_degree(word), crossing_number(word), len(word), word)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class Element:
    """Finite R-linear combination of words; treat instances as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    @classmethod
    def word(cls, word, coeff=ONE):
        coeff = RingElem.coerce(coeff)
        return cls({tuple(word): coeff}) if coeff else cls()

    @classmethod
    def scalar(cls, coeff):
        return cls.word((), coeff)

    @classmethod
    def gen(cls, code):
        return cls({(code,): ONE})

    # -- basic protocol --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self):
        return self.terms.items()

    def coeff(self, word):
        from skein.qring import ZERO

        return self.terms.get(tuple(word), ZERO)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = _as_element(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for w, c in small.items():
            prev = out.get(w)
            if prev is None:
                out[w] = c
            else:
                c = prev + c
                if c:
                    out[w] = c
                else:
                    del out[w]
        return Element(out)

    __radd__ = __add__

    def __neg__(self):
        return Element({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_element(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, coeff):
        coeff = RingElem.coerce(coeff)
        if not coeff:
            return Element()
        if coeff.is_one():
            return self
        out = {}
        for w, c in self.terms.items():
            c = c * coeff
            if c:
                out[w] = c
        return Element(out)

    def __mul__(self, other):
        if isinstance(other, (RingElem, int)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                prev = out.get(w)
                if prev is not None:
                    c = prev + c
                    if c:
                        out[w] = c
                    else:
                        del out[w]
                elif c:
                    out[w] = c
        return Element(out)

    def __rmul__(self, other):
        if isinstance(other, (RingElem, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of an element")
        result = Element.scalar(ONE)
        for _ in range(n):
            result = result * self
        return result

    # -- structure -----------------------------------------------------------

    def mirror(self):
        """Reverse every word and bar every coefficient (an anti-automorphism)."""
        return Element({w[::-1]: c.bar() for w, c in self.terms.items()})

    def map_coeffs(self, fn):
        out = {}
        for w, c in self.terms.items():
            c = fn(c)
            if c:
                out[w] = c
        return Element(out)

    def sorted_terms(self, key=default_word_key, reverse=True):
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=reverse)

    def max_reduced_degree(self):
        return max((reduced_degree(w) for w in self.terms), default=-1)

    def labels(self):
        out = set()
        for w in self.terms:
            for g in w:
                out.update(info(g).indices)
        return out

    def relabel(self, mapping):
        """Apply a label substitution and re-sort generator indices."""
        out = Element()
        for w, c in self.terms.items():
            new = tuple(gen_make(gen_kind(g), [mapping[i] for i in info(g).indices]) for g in w)
            out = out + Element({new: c})
        return out

    # -- serialization ---------------------------------------------------------

    def to_json(self, key=default_word_key):
        return {
            "terms": [
                {"coeff": c.to_json(), "word": [gen_name(g) for g in w]}
                for w, c in self.sorted_terms(key)
            ]
        }

    @classmethod
    def from_json(cls, obj):
        from skein.parser import parse_symbol

        out = cls()
        for term in obj["terms"]:
            word = tuple(parse_symbol(name) for name in term["word"])
            out = out + cls.word(word, ring_from_json(term["coeff"]))
        return out

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({self})"


def _as_element(x):
    if isinstance(x, Element):
        return x
    if isinstance(x, (RingElem, int)):
        return Element.scalar(x)
    return NotImplemented


def format_element(e, key=default_word_key):
    if not e.terms:
        return "0"
    pieces = []
    for w, c in e.sorted_terms(key):
        wn = word_name(w) if w else ""
        if c.is_one():
            body, sign = wn or "1", "+"
        elif (-c).is_one():
            body, sign = wn or "1", "-"
        else:
            cs = str(c)
            negative = c.is_simple() and cs.startswith("-")
            if negative:
                cs = cs[1:]
            elif not c.is_simple() and c.k == 0:
                cs = f"({cs})"
            sign = "-" if negative else "+"
            body = f"{cs} * {wn}" if wn else cs
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# macros and curve expansions
# ---------------------------------------------------------------------------


def expand_sii(i, n=None):
    """The s_ii macro: alpha - beta t_i^2."""
    ti = gen_make(T, (i,), n)
    return Element({(): ALPHA, (ti, ti): -BETA})


def s_symbol(indices, n=None):
    """s-symbol for 2 labels (s_ii macro allowed) or 3 distinct labels."""
    if len(indices) == 2 and indices[0] == indices[1]:
        return expand_sii(indices[0], n)
    return Element.gen(gen_make(len(indices) - 1, indices, n))


def s4_macro(i, j, k, l):
    """s_ijkl = beta (s_ik s_jl - q^2 s_ij s_kl - q^-2 s_jk s_il) for i<j<k<l."""
    if not i < j < k < l:
        raise InvalidSymbol(f"s4 macro needs increasing labels, got {(i, j, k, l)}")
    sik, sjl = s(i, k), s(j, l)
    sij, skl = s(i, j), s(k, l)
    sjk, sil = s(j, k), s(i, l)
    q2 = Q * Q
    qb2 = QBAR * QBAR
    body = Element({(sik, sjl): ONE, (sij, skl): -q2, (sjk, sil): -qb2})
    return body.scale(BETA)


def t_curve(indices):
    """Round curve t_{i1..ir} (r <= 3) expressed through the s-symbols."""
    idx = tuple(indices)
    tt = [Element.gen(t(i)) for i in idx]
    if len(idx) == 1:
        return tt[0]
    if len(idx) == 2:
        return Element.gen(s(*idx)) - (tt[0] * tt[1]).scale(BETA)
    if len(idx) == 3:
        i, j, k = idx
        body = Element.gen(s(i, j, k))
        body = body - (tt[0] * Element.gen(s(j, k)) + tt[1] * Element.gen(s(i, k))
                       + tt[2] * Element.gen(s(i, j))).scale(BETA)
        return body + (tt[0] * tt[1] * tt[2]).scale(BETA * BETA)
    raise InvalidSymbol("curves through more than three punctures are not generators")


# ---------------------------------------------------------------------------
# random sampling
# ---------------------------------------------------------------------------


def random_word(rng, n, max_rd, t_weight=0.3):
    """Random word on labels 1..n with reduced degree <= max_rd (t's are free)."""
    gens = all_gens(n)
    ts = [g for g in gens if g >> 24 == T]
    ss = [g for g in gens if g >> 24 != T]
    word = []
    budget = max_rd
    for _ in range(rng.randint(1, max(1, max_rd // 2 + 1))):
        if rng.random() < t_weight:
            word.append(rng.choice(ts))
            continue
        fits = [g for g in ss if info(g).rd <= budget]
        if not fits:
            break
        g = rng.choice(fits)
        budget -= info(g).rd
        word.append(g)
    return tuple(word)


def random_element(rng, n, max_rd, terms=3):
    """Random element with up to ``terms`` words of reduced degree <= max_rd."""
    out = Element()
    for _ in range(rng.randint(1, terms)):
        out = out + Element({random_word(rng, n, max_rd): random_ring(rng)})
    return out
