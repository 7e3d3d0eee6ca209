"""Catalog of relation templates and their instantiation.

Template bodies are written over formal positions: ``s[24]`` is the
s-symbol on the 2nd and 4th labels of the tuple, ``t[k]`` likewise, ``a`` is
alpha and ``b`` is beta.  Each body is an element asserted to be zero.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from skein.algebra import T, Element, all_gens, gen_kind, gen_make, gen_name, t
from skein.parser import parse_element


@dataclass(frozen=True)
class RelationTemplate:
    family: str
    arity: int
    group: str
    body: str
    source: str
    classical: tuple = ()

    def element(self, positions):
        return parse_element(self.body, positions=positions)


@dataclass
class RelationInstance:
    family: str
    tuple: tuple
    shift: int
    mirrored: bool
    element: Element
    partner: str = None

    def key(self):
        return (self.family, self.tuple, self.shift, self.mirrored, self.partner or "")

    def to_json(self):
        out = {"family": self.family, "tuple": list(self.tuple), "shift": self.shift,
               "mirrored": self.mirrored, "element": self.element.to_json()}
        if self.partner is not None:
            out["partner"] = self.partner
        return out


# classical counterparts: ("I", a, b) is 2 s_a s_b - det(s_{a_i b_j});
# ("II", c, a) is sum_k (-1)^k s_{a_k c} s_{a without a_k}; positions are formal
_TEMPLATES = [
    ("centrality", 1, "centrality", "t[1]", "t_i is central", ()),
    ("commute-22", 4, "commuting", "s[34] s[12] - s[12] s[34]",
     "disjoint non-crossing pairs commute", ()),
    ("commute-23", 5, "commuting", "s[345] s[12] - s[12] s[345]",
     "disjoint non-crossing pair and triple commute", ()),
    ("commute-33", 6, "commuting", "s[123] s[456] - s[456] s[123]",
     "disjoint non-crossing triples commute", ()),
    ("comm22-adjacent", 3, "commutator-22",
     "q s[23] s[12] - q^-1 s[12] s[23] - (q - q^-1)(s[22] s[13] + t[2] s[123])",
     "pairs sharing one label", ()),
    ("comm22-crossing", 4, "commutator-22",
     "s[24] s[13] - s[13] s[24] - (q^2 - q^-2)(s[14] s[23] - s[12] s[34])",
     "crossing disjoint pairs", ()),
    ("comm23-pair-in-triple", 3, "commutator-23",
     "s[123] s[12] - s[12] s[123] - b (q - q^-1)( q t[2] (s[12] s[13] - s[11] s[23] - t[1] s[123])"
     " - q^-1 t[1] (s[12] s[23] - s[22] s[13] - t[2] s[123]) )",
     "pair contained in triple", ()),
    ("comm23-share-first", 4, "commutator-23",
     "q s[234] s[12] - q^-1 s[12] s[234] - (q - q^-1)( s[22] s[134]"
     " + b t[2] (s[13] s[24] + (1 - q^2) s[12] s[34] - q^-2 s[14] s[23]) )",
     "pair meets triple in its first label", ()),
    ("comm23-share-last", 4, "commutator-23",
     "q^-1 s[134] s[12] - q s[12] s[134] - (q^-1 - q)( s[11] s[234]"
     " + b t[1] (s[13] s[24] + (1 - q^2) s[12] s[34] - q^-2 s[14] s[23]) )",
     "pair meets triple in its last label", ()),
    ("comm23-share-middle", 4, "commutator-23",
     "s[124] s[13] - s[13] s[124] - (q - q^-1)( q^-1 s[14] s[123] - q s[12] s[134]"
     " + (q - q^-1) s[11] s[234] + b t[1]((q - q^-1) s[13] s[24] + (q - q^3 - q^-1) s[12] s[34]"
     " + (q^-3 - q^-1 + q) s[14] s[23]) )",
     "pair meets triple in a middle label", ()),
    ("comm23-crossing", 5, "commutator-23",
     "s[245] s[13] - s[13] s[245] - (q^2 - q^-2)(s[23] s[145] - s[12] s[345])",
     "pair crossing a disjoint triple", ()),
    ("typeII-five", 5, "type-II",
     "q^2 s[15] s[234] - s[25] s[134] + s[35] s[124] - q^-2 s[45] s[123]"
     " - (q - q^-1)(q^-1 s[12] s[345] + q s[34] s[125])",
     "four labels and a fifth", (("II", 5, (1, 2, 3, 4), 1),)),
    ("typeII-four", 4, "type-II",
     "q^2 s[12] s[134] - s[13] s[124] + q^-2 s[14] s[123] - (q^2 + q^-2 - 1) s[11] s[234]"
     " - (q - q^-1)^2 b t[1] (s[13] s[24] - q^2 s[12] s[34] - q^-2 s[14] s[23])",
     "four labels, repeated first", (("II", 1, (1, 2, 3, 4), -1),)),
    ("typeI-disjoint-pairs", 6, "type-I",
     "s[24] s[36] s[15] - s[13] s[25] s[46] - ( a(s[234] s[156] - s[123] s[456])"
     " + (q^2 - q^-2)(s[23] s[46] s[15] - s[56] s[13] s[24])"
     " + q^2(s[16] s[24] s[35] - s[12] s[35] s[46]) + q^-2(s[34] s[15] s[26] - s[45] s[26] s[13])"
     " + q^-4(s[12] s[36] s[45] - s[16] s[25] s[34])"
     " + (q^2 - q^-2)^2(s[12] s[34] s[56] - s[16] s[23] s[45]) )",
     "disjoint triples, pair products", (("I", (1, 2, 3), (4, 5, 6), 1), ("I", (2, 3, 4), (1, 5, 6), -1))),
    ("typeI-disjoint-interval", 6, "type-I",
     "s[14] s[25] s[36] - (q^3 + q^-3) s[123] s[456] - ( q^-2(s[24] s[36] s[15] + s[35] s[14] s[26])"
     " - s[34] s[15] s[26] - s[16] s[24] s[35] + q^-6 s[16] s[25] s[34]"
     " + (1 - q^-2)(s[13] s[25] s[46] + s[45] s[26] s[13] - q^2 s[12] s[35] s[46] - q^-2 s[23] s[46] s[15])"
     " + (q^4 - 2q^2 + 2q^-2 - q^-6) s[12] s[34] s[56]"
     " + (2 - q^2 - q^-4)(s[56] s[13] s[24] + s[16] s[23] s[45])"
     " + (q^2 + q^-4 - 2q^-2)(s[14] s[23] s[56] + s[12] s[36] s[45]) )",
     "disjoint interval triples", (("I", (1, 2, 3), (4, 5, 6), -1),)),
    ("typeI-disjoint-one-crossing", 6, "type-I",
     "a s[124] s[356] - ( s[13] s[25] s[46] + q^-2(s[34] s[26] s[15] - s[23] s[15] s[46] - s[45] s[13] s[26])"
     " + (2 - q^-4) s[16] s[23] s[45] - q^-4 s[16] s[34] s[25]"
     " + (q^2 - 1)( a s[123] s[456] + (q^2 - q^-2 - 1) s[12] s[34] s[56] - s[12] s[35] s[46]"
     " - s[56] s[13] s[24] - q^-4(s[12] s[36] s[45] + s[56] s[14] s[23]) ) )",
     "disjoint triples crossing once", (("I", (1, 2, 4), (3, 5, 6), 1),)),
    ("typeI-disjoint-alternating", 6, "type-I",
     "a s[135] s[246] - ( q^2 s[14] s[25] s[36] + (q^2 + q^4 - q^6) s[12] s[34] s[56]"
     " - s[16] s[25] s[34] + (2q^4 - 2q^2 + 2q^-2 - 1) s[16] s[23] s[45]"
     " + (1 - q^-2 - q^4)(s[14] s[23] s[56] + s[12] s[36] s[45])"
     " + (1 - q^2)( q^2 a s[123] s[456] - q^2(s[12] s[35] s[46] + s[56] s[13] s[24])"
     " + s[13] s[25] s[46] + s[23] s[46] s[15] + s[45] s[26] s[13] - q^-1 a s[34] s[15] s[26] ) )",
     "alternating disjoint triples", (("I", (1, 3, 5), (2, 4, 6), 1),)),
    ("typeI-share-end", 5, "type-I",
     "a s[123] s[345] - ( s[13] s[24] s[35] + q^-2(s[14] s[25] s[33] - s[13] s[25] s[34] - s[14] s[23] s[35])"
     " + q^-4(s[15] s[23] s[34] - s[15] s[24] s[33]) + (1 - q^2) s[33] s[12] s[45]"
     " + (q^-2 - 1) t[3]( s[13] s[245] - q^-2 s[23] s[145] + (q^2 - 1) s[45] s[123] ) )",
     "triples sharing an end label", (("I", (1, 2, 3), (3, 4, 5), 1),)),
    ("typeI-share-middle-outer", 5, "type-I",
     "a s[135] s[234] - ( s[13] s[25] s[34] - s[25] s[14] s[33] + s[35] s[14] s[23] - q^2 s[35] s[12] s[34]"
     " + q^-2(s[45] s[12] s[33] - s[45] s[13] s[23]) + (1 - q^-2) s[33] s[15] s[24]"
     " + (q^2 - 1) t[3]( s[34] s[125] - q^-2 s[23] s[145] + (q^-2 - 1) s[15] s[234] ) )",
     "triples sharing the middle label, one outer", (("I", (1, 3, 5), (2, 3, 4), 1),)),
    ("typeI-share-middle-crossing", 5, "type-I",
     "a s[134] s[235] - ( s[13] s[24] s[35] + q^2(s[33] s[12] s[45] - s[12] s[34] s[35] - s[13] s[23] s[45])"
     " + q^-2(s[15] s[23] s[34] - s[33] s[15] s[24]) + (1 - q^-2) s[33] s[14] s[25]"
     " + (1 - q^-2) t[3]( s[23] s[145] - q^2 s[45] s[123] + s[134] s[25] ) )",
     "triples sharing the middle label, crossing", (("I", (1, 3, 4), (2, 3, 5), 1),)),
    ("typeI-share-two-adjacent", 4, "type-I",
     "a s[123] s[234] - ( q^-2(s[12] s[23] s[34] - s[14] s[23] s[23] + s[22] s[33] s[14] - s[33] s[12] s[24])"
     " + s[23] s[13] s[24] + (1 - q^2 - q^-2) s[22] s[13] s[34]"
     " + (q^2 - 1) t[2]((1 - q^2) s[34] s[123] - q^-2 s[23] s[124] + (q - q^-1)^2 s[33] s[124])"
     " + (1 - q^-2) t[3](s[12] s[234] - s[22] s[134])"
     " + (q^2 - 1) b t[2] t[3]((q - q^-1)^2 (s[13] s[24] - q^-2 s[14] s[23]) + (3q^2 - q^4 - 4) s[12] s[34]) )",
     "triples sharing two labels, adjacent", (("I", (1, 2, 3), (2, 3, 4), 1),)),
    ("typeI-share-two-split", 4, "type-I",
     "a s[123] s[134] - ( (q^4 - q^2 + 1) s[11] s[23] s[34] - s[11] s[24] s[33] + s[13] s[13] s[24]"
     " - q^4 s[12] s[13] s[34] + s[12] s[14] s[33] - q^-2 s[13] s[14] s[23]"
     " + (q^2 - 1) t[1]( q^-2 s[23] s[134] + q^4 s[34] s[123] + (q^2 - q^4 - q^-2) s[33] s[124] )"
     " + (q^2 - 1) t[3]( s[11] s[234] - s[12] s[134] )"
     " - (q^2 - 1)^2 b t[1] t[3]( (q^2 - q^-2)(s[13] s[24] - q^-2 s[14] s[23]) + (1 + q^2 - q^4) s[12] s[34] ) )",
     "triples sharing two labels, split", (("I", (1, 2, 3), (1, 3, 4), 1),)),
    ("typeI-square", 3, "type-I",
     "a s[123] s[123] - ( q^-1 a s[12] s[23] s[13] + s[11] s[22] s[33] - q^2 s[11] s[23] s[23]"
     " - q^-2 s[22] s[13] s[13] - q^-2 s[33] s[12] s[12]"
     " + (q^-2 - 1)( q^2 t[1] s[23] - t[2] s[13] - t[3] s[12] - (q - q^-1)^2 b t[1] t[2] t[3] ) s[123]"
     " + (q - q^-1)^2 b( t[2] t[3] s[11] s[23] + t[1] t[3] s[22] s[13] - q^-2 t[1] t[2] s[33] s[12]"
     " + q^-1 a t[1] t[2] s[23] s[13] ) )",
     "square of a triple", (("I", (1, 2, 3), (1, 2, 3), 1),)),
]

_CATALOG = tuple(RelationTemplate(*row) for row in _TEMPLATES)
_BY_FAMILY = {tpl.family: tpl for tpl in _CATALOG}
FAMILY_ORDER = {tpl.family: pos for pos, tpl in enumerate(_CATALOG)}


def catalog():
    return list(_CATALOG)


def template(family):
    return _BY_FAMILY[family]


def shifted_positions(labels, shift):
    """Formal position k maps to labels[(k - 1 + shift) mod m]."""
    m = len(labels)
    return {k: labels[(k - 1 + shift) % m] for k in range(1, m + 1)}


def instantiate(tpl, labels, shift=0, mirrored=False, partner=None):
    if isinstance(tpl, str):
        tpl = _BY_FAMILY[tpl]
    labels = tuple(int(i) for i in labels)
    if len(labels) != tpl.arity:
        raise ValueError(f"{tpl.family} has arity {tpl.arity}, got {len(labels)} labels")
    if any(a >= b for a, b in zip(labels, labels[1:])):
        raise ValueError(f"labels must be strictly increasing: {labels}")
    if not 0 <= shift < tpl.arity:
        raise ValueError(f"shift must lie in 0..{tpl.arity - 1}")
    if tpl.group == "centrality":
        if partner is None:
            raise ValueError("centrality needs a partner generator")
        ti = Element.gen(t(labels[0]))
        x = Element.gen(partner)
        element = ti * x - x * ti
        name = gen_name(partner)
    else:
        element = tpl.element(shifted_positions(labels, shift))
        name = None
    if mirrored:
        element = element.mirror()
    return RelationInstance(tpl.family, labels, shift, mirrored, element, name)


def _centrality_instances(n, mirrors):
    gens = all_gens(n)
    out = []
    for i in range(1, n + 1):
        ti = gen_make(T, (i,))
        for x in gens:
            if gen_kind(x) == T and x <= ti:
                continue
            for mirrored in ((False, True) if mirrors else (False,)):
                out.append(instantiate(_CATALOG[0], (i,), 0, mirrored, partner=x))
    return out


def all_instances(n, mirrors=True, families=None, dedup=True):
    """Every template over every increasing tuple from 1..n, all shifts and mirror flags."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    seen = set()
    for tpl in _CATALOG:
        if families is not None and tpl.family not in families and tpl.group not in families:
            continue
        if tpl.arity > n:
            continue
        if tpl.group == "centrality":
            batch = _centrality_instances(n, mirrors)
        else:
            batch = [
                instantiate(tpl, labels, shift, mirrored)
                for labels in combinations(range(1, n + 1), tpl.arity)
                for shift in range(tpl.arity)
                for mirrored in ((False, True) if mirrors else (False,))
            ]
        for inst in batch:
            if dedup:
                h = inst.element
                if h in seen:
                    continue
                seen.add(h)
            out.append(inst)
    return out


def export_lines(n, mirrors=True):
    rows = sorted(all_instances(n, mirrors), key=RelationInstance.key)
    return [json.dumps(inst.to_json(), sort_keys=True) for inst in rows]


# -- classical comparison in the commutative polynomial ring -------------------


def _perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def commutative_q1(e, sign=1):
    """q^(1/2) = sign specialization with commuting generators: {sorted word: Fraction}."""
    out = {}
    for w, c in e.terms.items():
        key = tuple(sorted(w))
        out[key] = out.get(key, 0) + c.spec_q1(sign)
    return {k: v for k, v in out.items() if v}


def _cpoly_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(sorted(ka + kb))
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _cpoly_add(a, b, scale=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def classical_s(labels):
    """Classical s-symbol on possibly unsorted labels (s_ii = 2 - t_i^2/2, skew on triples)."""
    labels = tuple(labels)
    if len(labels) == 2 and labels[0] == labels[1]:
        ti = gen_make(T, labels[:1])
        return {(): Fraction(2), (ti, ti): Fraction(-1, 2)}
    if len(set(labels)) != len(labels):
        return {}
    sign = _perm_sign(labels) if len(labels) == 3 else 1
    return {(gen_make(len(labels) - 1, labels),): Fraction(sign)}


def classical_type_i(a, b):
    """2 s_a s_b - det[s_{a_i b_j}]."""
    m = [[classical_s((ai, bj)) for bj in b] for ai in a]
    total = _cpoly_mul(classical_s(a), classical_s(b))
    total = _cpoly_add({}, total, 2)
    for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        term = {(): Fraction(_perm_sign(perm))}
        for row, col in enumerate(perm):
            term = _cpoly_mul(term, m[row][col])
        total = _cpoly_add(total, term, -1)
    return total


def classical_type_ii(c, a):
    """sum_k (-1)^k s_{a_k c} s_{a minus a_k}."""
    total = {}
    for k in range(4):
        rest = a[:k] + a[k + 1:]
        term = _cpoly_mul(classical_s((a[k], c)), classical_s(rest))
        total = _cpoly_add(total, term, -1 if k % 2 else 1)
    return total


def classical_counterpart(inst):
    """Combination of classical relations recorded for the instance's template."""
    tpl = _BY_FAMILY[inst.family]
    pos = shifted_positions(inst.tuple, inst.shift)
    total = {}
    for entry in tpl.classical:
        if entry[0] == "I":
            _, a, b, coef = entry
            rel = classical_type_i(tuple(pos[k] for k in a), tuple(pos[k] for k in b))
        else:
            _, c, a, coef = entry
            rel = classical_type_ii(pos[c], tuple(pos[k] for k in a))
        total = _cpoly_add(total, rel, coef)
    return total
