"""Oriented rewriting modulo the relation catalog.

Monomials are words whose t-generators sit sorted at the front (t is
central), followed by an s-word.  The term order compares the s-word by
``(reduced degree, S3 entanglement, crossing number, length, lex)`` and then
the t-part by degree and lex.  Entanglement and crossing number count pairs
across the whole word, so the order is not compatible with multiplication by
context: strict descent holds for every word of reduced degree <= 6 and above
that termination rests on the step cap.
"""

import heapq
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from skein.algebra import (
    S2,
    S3,
    T,
    Element,
    all_gens,
    crossing_number,
    gen_make,
    info,
    random_element,
    random_word,
    reduced_degree,
    s3_entanglement,
)
from skein.oracle import Evaluator, random_tuple
from skein.parser import parse_element
from skein.qring import ONE, random_ring
from skein.relcat import all_instances

T_LIMIT = 1 << 24


class NonUnitLeadingCoefficient(ValueError):
    pass


class RewriteLimitExceeded(RuntimeError):
    def __init__(self, steps):
        super().__init__(f"rewrite step cap {steps} exceeded")
        self.steps = steps


class UnknownCase(ValueError):
    pass


# -- monomials -------------------------------------------------------------------


def split(mono):
    """(t-part, s-part) of a canonical monomial."""
    k = 0
    for g in mono:
        if g >= T_LIMIT:
            break
        k += 1
    return mono[:k], mono[k:]


def canonical_word(word):
    ts = sorted(g for g in word if g < T_LIMIT)
    return tuple(ts) + tuple(g for g in word if g >= T_LIMIT)


def canonicalize(e):
    """Commute every t-generator to the front (sorted); returns a new Element."""
    out = {}
    for w, c in e.terms.items():
        m = canonical_word(w)
        prev = out.get(m)
        if prev is None:
            out[m] = c
        else:
            c = prev + c
            if c:
                out[m] = c
            else:
                del out[m]
    return Element(out)


# -- term order --------------------------------------------------------------------


class TermOrder:
    """Word order ``(rd, entanglement, cn, length, lex)`` on the s-part, then degree-lex on t.

    ``entanglement`` counts S3 pairs sharing a label or interleaving, so such
    products sit above every pair-only word of the same reduced degree.
    ``measure`` replaces it when given (a function of the s-word).
    """

    def __init__(self, measure=None, name="default", crossings=True):
        self.measure = s3_entanglement if measure is None else measure
        self.name = name
        self.crossings = crossings
        self._keys = {}

    def key(self, mono):
        k = self._keys.get(mono)
        if k is None:
            ts, ss = split(mono)
            rd = 0
            for g in ss:
                rd += info(g).rd
            cn = crossing_number(ss) if self.crossings else 0
            k = (rd, self.measure(ss), cn, len(ss), ss, len(ts), ts)
            if len(self._keys) > 2_000_000:
                self._keys.clear()
            self._keys[mono] = k
        return k

    def heap_key(self, mono):
        rd, wt, cn, n, ss, nt, ts = self.key(mono)
        return (-rd, -wt, -cn, -n, tuple(-g for g in ss), -nt, tuple(-g for g in ts))

    def leading(self, e):
        return max(e.terms, key=self.key)


DEFAULT_ORDER = TermOrder()


# -- rules ---------------------------------------------------------------------------


@dataclass
class Rule:
    lhs: tuple
    rhs: Element
    origin: object = None
    tpart: tuple = ()
    spart: tuple = ()

    def __post_init__(self):
        self.tpart, self.spart = split(self.lhs)

    def as_element(self):
        return Element({self.lhs: ONE}) - self.rhs


def orient(e, order, origin=None):
    """Solve ``e = 0`` for its leading monomial; the coefficient must be a unit."""
    e = canonicalize(e)
    if not e:
        return None
    lead = order.leading(e)
    c = e.terms[lead]
    inv = c.unit_inverse()
    if inv is None:
        raise NonUnitLeadingCoefficient(f"leading coefficient {c} of {lead} is not a unit")
    rest = {m: -(v * inv) for m, v in e.terms.items() if m != lead}
    return Rule(lead, Element(rest), origin)


def divide_content(e, order):
    """``e`` divided by its common t-monomial and leading coefficient, or ``None``.

    The skein algebra is free over R[t_1..t_n] (multicurves split off their
    peripheral loops), so the relation ideal is saturated and the quotient is
    again a relation.
    """
    common = None
    for m in e.terms:
        ts = split(m)[0]
        common = ts if common is None else _tgcd(common, ts)
    if common:
        e = Element({_drop_t(m, common): v for m, v in e.terms.items()})
    c = e.terms[order.leading(e)]
    if c.is_unit():
        return e
    out = {}
    for m, v in e.terms.items():
        x = v.divide(c)
        if x is None:
            return None
        out[m] = x
    return Element(out)


def _tgcd(a, b):
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return tuple(out)


def _drop_t(mono, ts):
    mt, ms = split(mono)
    return _msub(mt, ts) + ms


def _msub(big, small):
    """Multiset difference of sorted tuples, or None when small is not contained."""
    out = []
    i = 0
    for g in big:
        if i < len(small) and small[i] == g:
            i += 1
        else:
            out.append(g)
    return tuple(out) if i == len(small) else None


def _mmerge(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class RuleSet:
    """Rules indexed by the s-part of their left-hand side."""

    def __init__(self, order, rules=()):
        self.order = order
        self.rules = []
        self.index = {}
        self.lengths = set()
        self.excluded = []
        self.alpha_pow_max = 0
        for r in rules:
            self.add(r)

    def __len__(self):
        return len(self.rules)

    def add(self, rule):
        self.rules.append(rule)
        self.index.setdefault(rule.spart, []).append(rule)
        self.lengths = {len(k) for k in self.index}
        for c in rule.rhs.terms.values():
            if c.k > self.alpha_pow_max:
                self.alpha_pow_max = c.k

    def remove(self, rule):
        self.rules.remove(rule)
        bucket = self.index[rule.spart]
        bucket.remove(rule)
        if not bucket:
            del self.index[rule.spart]
            self.lengths = {len(k) for k in self.index}

    def matches(self, mono):
        """All (position, rule, remaining t-part) matches, leftmost and shortest first."""
        ts, ss = split(mono)
        lengths = sorted(self.lengths)
        index = self.index
        out = []
        for p in range(len(ss)):
            for L in lengths:
                if p + L > len(ss):
                    break
                bucket = index.get(ss[p:p + L])
                if bucket:
                    for rule in bucket:
                        rest = _msub(ts, rule.tpart) if rule.tpart else ts
                        if rest is not None:
                            out.append((p, rule, rest))
        return out

    def first_match(self, mono):
        ts, ss = split(mono)
        index = self.index
        lengths = sorted(self.lengths)
        for p in range(len(ss)):
            for L in lengths:
                if p + L > len(ss):
                    break
                bucket = index.get(ss[p:p + L])
                if bucket:
                    for rule in bucket:
                        rest = _msub(ts, rule.tpart) if rule.tpart else ts
                        if rest is not None:
                            return p, rule, rest
        return None


def apply_rule(mono, coeff, p, rule, rest_t):
    """Terms replacing ``coeff * mono`` when ``rule`` fires at s-position ``p``."""
    _, ss = split(mono)
    pre = ss[:p]
    post = ss[p + len(rule.spart):]
    out = []
    for m, c in rule.rhs.terms.items():
        mt, ms = split(m)
        out.append((_mmerge(rest_t, mt) + pre + ms + post, coeff * c))
    return out


# -- normal forms --------------------------------------------------------------------


@dataclass
class NormalFormReport:
    result: Element
    steps: int
    trace: list = field(default_factory=list)
    unverified_window: bool = False


def _reduce(e, ruleset, cap, chooser=None, trace=False, check_descent=False):
    order = ruleset.order
    work = dict(canonicalize(e).terms)
    heap = [(order.heap_key(m), m) for m in work]
    heapq.heapify(heap)
    result = {}
    steps = 0
    log = []
    while heap:
        _, mono = heapq.heappop(heap)
        coeff = work.pop(mono, None)
        if coeff is None:
            continue
        if chooser is None:
            hit = ruleset.first_match(mono)
        else:
            options = ruleset.matches(mono)
            hit = chooser(options) if options else None
        if hit is None:
            # the order is not context-compatible, so an emitted monomial can recur
            prev = result.get(mono)
            if prev is not None:
                coeff = prev + coeff
                if not coeff:
                    del result[mono]
                    continue
            result[mono] = coeff
            continue
        steps += 1
        if steps > cap:
            raise RewriteLimitExceeded(cap)
        p, rule, rest = hit
        if trace:
            log.append((rule.origin, p))
        top = order.key(mono) if check_descent else None
        for m, c in apply_rule(mono, coeff, p, rule, rest):
            if check_descent and not order.key(m) < top:
                raise AssertionError(f"rewrite does not descend at {mono} -> {m}")
            prev = work.get(m)
            if prev is None:
                if c:
                    work[m] = c
                    heapq.heappush(heap, (order.heap_key(m), m))
            else:
                c = prev + c
                if c:
                    work[m] = c
                else:
                    del work[m]
    return Element(result), steps, log


def normal_form(e, ruleset, cap=100000, trace=False, check_descent=False, window=(6, 9)):
    result, steps, log = _reduce(e, ruleset, cap, trace=trace, check_descent=check_descent)
    labels = e.labels()
    outside = bool(labels) and (max(labels) > window[0] or e.max_reduced_degree() > window[1])
    return NormalFormReport(result, steps, log, outside)


def reduce(e, ruleset, cap=100000):
    return _reduce(e, ruleset, cap)[0]


def reduces_to_zero(e, ruleset, cap=100000):
    return not reduce(e, ruleset, cap)


def random_strategy_reduce(e, ruleset, rng, cap=100000):
    """Reduce with uniformly random choice of term and match at every step."""
    order = ruleset.order
    work = dict(canonicalize(e).terms)
    steps = 0
    while True:
        reducible = []
        for m in work:
            opts = ruleset.matches(m)
            if opts:
                reducible.append((m, opts))
        if not reducible:
            return Element(work)
        reducible.sort(key=lambda item: order.key(item[0]))
        mono, opts = reducible[rng.randrange(len(reducible))]
        p, rule, rest = opts[rng.randrange(len(opts))]
        coeff = work.pop(mono)
        steps += 1
        if steps > cap:
            raise RewriteLimitExceeded(cap)
        for m, c in apply_rule(mono, coeff, p, rule, rest):
            prev = work.get(m)
            if prev is not None:
                c = prev + c
            if c:
                work[m] = c
            elif prev is not None:
                del work[m]


# -- completion ------------------------------------------------------------------------


def _wrap(e, tmul, left, right):
    out = {}
    for m, c in e.terms.items():
        mt, ms = split(m)
        key = _mmerge(mt, tmul) + left + ms + right
        prev = out.get(key)
        if prev is not None:
            c = prev + c
            if c:
                out[key] = c
            else:
                del out[key]
        else:
            out[key] = c
    return Element(out)


def _tlcm(a, b):
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    return tuple(out) + a[i:] + b[j:]


def critical_pairs(a, b):
    """Yield ``(word rd, S-element)`` for every overlap of rule ``a`` followed by rule ``b``."""
    wa, wb = a.spart, b.spart
    tl = _tlcm(a.tpart, b.tpart)
    ta = _msub(tl, a.tpart)
    tb = _msub(tl, b.tpart)
    for k in range(1, min(len(wa), len(wb))):
        if wa[len(wa) - k:] == wb[:k]:
            tail = wb[k:]
            head = wa[:len(wa) - k]
            s = _wrap(a.rhs, ta, (), tail) - _wrap(b.rhs, tb, head, ())
            yield reduced_degree(wa + tail), s
    if a is not b and len(wb) <= len(wa) and (a.tpart or b.tpart):
        for p in range(len(wa) - len(wb) + 1):
            if wa[p:p + len(wb)] == wb:
                s = _wrap(a.rhs, ta, (), ()) - _wrap(b.rhs, tb, wa[:p], wa[p + len(wb):])
                yield reduced_degree(wa), s


@dataclass
class CompletionReport:
    ruleset: RuleSet
    derived: list = field(default_factory=list)
    stuck: list = field(default_factory=list)
    pairs: int = 0
    t_lhs: int = 0
    divided: int = 0


def complete(elements, order, max_rd=9, cap=1_000_000, log=None, divide=True):
    """Truncated completion: every critical pair of reduced degree <= max_rd resolves."""
    rs = RuleSet(order)
    report = CompletionReport(rs)
    queue = []
    seq = 0

    def push(rd, elem, origin):
        nonlocal seq
        seq += 1
        heapq.heappush(queue, (rd, seq, elem, origin))

    for e, origin in elements:
        e = canonicalize(e)
        if e:
            push(e.max_reduced_degree(), e, origin)

    while queue:
        rd, _, elem, origin = heapq.heappop(queue)
        if rd > max_rd:
            continue
        r = reduce(elem, rs, cap)
        if not r:
            continue
        try:
            rule = orient(r, order, origin)
        except NonUnitLeadingCoefficient:
            d = divide_content(r, order) if divide else None
            if d is None:
                report.stuck.append((r, origin))
                continue
            report.divided += 1
            rule = orient(d, order, origin)
        if origin is None or origin == "critical":
            report.derived.append(rule)
        if rule.tpart:
            report.t_lhs += 1
        # interreduce: rules whose lhs the new rule divides go back to the queue
        for old in list(rs.rules):
            hit = None
            ts, ss = split(old.lhs)
            for p in range(len(ss) - len(rule.spart) + 1):
                if ss[p:p + len(rule.spart)] == rule.spart and _msub(ts, rule.tpart) is not None:
                    hit = p
                    break
            if hit is not None:
                rs.remove(old)
                push(reduced_degree(ss), old.as_element(), old.origin)
        rs.add(rule)
        for other in list(rs.rules):
            for pair in (critical_pairs(rule, other), critical_pairs(other, rule)) if other is not rule \
                    else (critical_pairs(rule, rule),):
                for prd, s in pair:
                    report.pairs += 1
                    if prd <= max_rd and s:
                        push(prd, s, "critical")
        if log is not None and len(rs) % 200 == 0:
            log(f"rules={len(rs)} queue={len(queue)} rd={rd}")
    # retry stuck elements once the system is complete
    still = []
    for r, origin in report.stuck:
        r = reduce(r, rs, cap)
        if r:
            still.append((r, origin))
    report.stuck = still
    return report


# -- orientation -----------------------------------------------------------------------

VERIFIED_RD = 6


@dataclass
class Orientation:
    ruleset: RuleSet
    excluded: list = field(default_factory=list)
    redundant: list = field(default_factory=list)
    derived: list = field(default_factory=list)


def orient_rules(instances, order=DEFAULT_ORDER, max_rd=VERIFIED_RD):
    """Ruleset for ``instances``: each solved for its leading word, then completed up to ``max_rd``.

    Instances whose leading coefficient stays a non-unit are excluded and
    reported; instances already implied by earlier rules are reported as
    redundant.  Critical pairs above ``max_rd`` are not resolved.
    """
    pending = []
    for inst in instances:
        e = canonicalize(inst.element)
        if e:
            pending.append((e, inst))
    top = max((e.max_reduced_degree() for e, _ in pending), default=0)
    report = complete(pending, order, max(max_rd, top))
    rs = report.ruleset
    used = {id(r.origin) for r in rs.rules}
    out = Orientation(rs, [inst for _, inst in report.stuck], derived=report.derived)
    stuck = {id(inst) for inst in out.excluded}
    out.redundant = [inst for _, inst in pending if id(inst) not in used and id(inst) not in stuck]
    rs.excluded = out.excluded
    return out


@lru_cache(maxsize=None)
def ruleset_for(n):
    """Oriented catalog ruleset on labels 1..n (cached)."""
    return orient_rules(all_instances(max(n, 3)), DEFAULT_ORDER).ruleset


# -- spanning checks -------------------------------------------------------------------

SPANNING_CASES = {
    (1, 1, 1, 1, 1, 1): (
        "s13 s25 s46", "s12 s35 s46", "s23 s46 s15", "s34 s15 s26", "s45 s26 s13",
        "s56 s13 s24", "s16 s24 s35", "s123 s456", "s234 s156", "s345 s126",
        "s12 s34 s56", "s16 s23 s45", "s14 s23 s56", "s16 s25 s34", "s12 s36 s45"),
    (1, 1, 2, 1, 1): (
        "s13 s25 s34", "s13 s24 s35", "s14 s23 s35", "s12 s34 s35", "s13 s23 s45",
        "s15 s23 s34"),
    (1, 2, 2, 1): ("s14 s23 s23", "s12 s23 s34", "s13 s23 s24"),
    (2, 1, 2, 1): ("s12 s13 s34", "s13 s14 s23", "s13 s13 s24"),
    (1, 1, 1, 1, 1): ("s12 s345", "s23 s145", "s34 s125", "s45 s123", "s15 s234", "s13 s245"),
    (2, 1, 1, 1): ("s12 s134", "s13 s124", "s14 s123"),
}


@dataclass
class SpanningReport:
    md: tuple
    case: tuple
    shift: int
    basis: list
    basis_count: int
    independent: bool
    products: int = 0
    failures: list = field(default_factory=list)
    oracle_mismatches: list = field(default_factory=list)

    @property
    def passed(self):
        # independence of the listed basis is reported, not required
        return not self.failures and not self.oracle_mismatches


def match_case(md):
    """(canonical case, shift) with ``md[v] == case[v - shift]`` cyclically, or UnknownCase."""
    md = tuple(md)
    for case in SPANNING_CASES:
        if len(case) != len(md):
            continue
        for shift in range(len(md)):
            if all(md[v] == case[(v - shift) % len(md)] for v in range(len(md))):
                return case, shift
    raise UnknownCase(f"no spanning case for multidegree {md}")


def words_with_md(md):
    """Every s-word (no t's) whose label multiset is exactly ``md``."""
    n = len(md)
    gens = [gen_make(S2, c) for c in combinations(range(1, n + 1), 2)]
    gens += [gen_make(S3, c) for c in combinations(range(1, n + 1), 3)]
    out = []

    def walk(prefix, left):
        if not any(left):
            out.append(tuple(prefix))
            return
        for g in gens:
            idx = info(g).indices
            if all(left[i - 1] > 0 for i in idx):
                for i in idx:
                    left[i - 1] -= 1
                prefix.append(g)
                walk(prefix, left)
                prefix.pop()
                for i in idx:
                    left[i - 1] += 1

    walk([], list(md))
    return out


def _top(e, rd):
    return Element({m: c for m, c in e.terms.items() if reduced_degree(split(m)[1]) >= rd})


def _eliminate(v, pivots, order):
    """Reduce ``v`` by the echelon ``pivots`` (lead -> vector); None when a division is inexact."""
    while v:
        lead = order.leading(v)
        piv = pivots.get(lead)
        if piv is None:
            return v
        factor = v.terms[lead].divide(piv.terms[lead])
        if factor is None:
            return None
        v = v - piv.scale(factor)
    return v


def spanning_check(md, ruleset=None, trials=3, seed=0):
    """Reduce every product of multidegree ``md`` into the case basis plus lower reduced degree."""
    case, shift = match_case(md)
    n = len(md)
    rs = ruleset if ruleset is not None else ruleset_for(n)
    order = rs.order
    rd = sum(md)
    relabel = {v: (v - 1 + shift) % n + 1 for v in range(1, n + 1)}
    basis = [parse_element(text, n).relabel(relabel) for text in SPANNING_CASES[case]]
    pivots = {}
    independent = True
    for b in basis:
        v = _eliminate(_top(reduce(b, rs), rd), pivots, order)
        if not v:
            independent = False
            continue
        pivots[order.leading(v)] = v
    report = SpanningReport(tuple(md), case, shift, basis, len(basis), independent)
    rng = random.Random(seed)
    evaluators = [Evaluator(random_tuple(n, rng.randrange(2 ** 32))) for _ in range(trials)]
    for word in words_with_md(md):
        report.products += 1
        e = Element({word: ONE})
        nf = reduce(e, rs)
        rest = _eliminate(_top(nf, rd), pivots, order)
        if rest is None or rest:
            report.failures.append((word, rest))
        for ev in evaluators:
            if any(ev.element(e, sgn) != ev.element(nf, sgn) for sgn in (1, -1)):
                report.oracle_mismatches.append(word)
                break
    return report


# -- confluence fuzzing ----------------------------------------------------------------

CASE_SHAPES = {
    "products2": 4,
    "t-heavy": 3,
    "s3s3": 6,
    "random": None,
}


@dataclass
class FuzzReport:
    n: int
    degree_bound: int
    trials: int
    seed: int
    shape: str
    divergences: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.divergences


def sample_shape(rng, shape, n, degree_bound):
    """One random element of the named shape."""
    gens = all_gens(n)
    ts = [g for g in gens if g >> 24 == T]
    if shape == "products2":
        out = Element()
        for _ in range(rng.randint(1, 3)):
            word = (rng.choice(gens), rng.choice(gens))
            out = out + Element({word: random_ring(rng)})
        return out
    if shape == "t-heavy":
        out = Element()
        for _ in range(rng.randint(1, 3)):
            word = list(random_word(rng, n, degree_bound, t_weight=0.0))
            for _ in range(rng.randint(1, 4)):
                word.insert(rng.randint(0, len(word)), rng.choice(ts))
            out = out + Element({tuple(word): random_ring(rng)})
        return out
    if shape == "s3s3":
        s3 = [g for g in gens if g >> 24 == S3]
        return Element({(rng.choice(s3), rng.choice(s3)): random_ring(rng)})
    if shape.startswith("md:"):
        md = tuple(int(x) for x in shape[3:].split(","))
        words = words_with_md(md)
        out = Element()
        for _ in range(rng.randint(1, 3)):
            out = out + Element({rng.choice(words): random_ring(rng)})
        return out
    if shape == "random":
        return random_element(rng, n, degree_bound)
    raise UnknownCase(f"unknown shape {shape!r}")


def confluence_fuzz(n, degree_bound, trials, seed, shape="random", ruleset=None, cap=100000):
    """Compare random-strategy reductions with the canonical normal form."""
    if n > 6 or degree_bound > 9:
        raise ValueError("confluence fuzzing is limited to n <= 6, reduced degree <= 9")
    rs = ruleset if ruleset is not None else ruleset_for(n)
    report = FuzzReport(n, degree_bound, trials, seed, shape)
    master = random.Random(seed)
    for trial in range(trials):
        rng = random.Random(master.randrange(2 ** 32))
        e = sample_shape(rng, shape, n, degree_bound)
        want = reduce(e, rs, cap)
        got = random_strategy_reduce(e, rs, rng, cap)
        if got != want:
            report.divergences.append({"trial": trial, "element": e, "canonical": want,
                                       "random": got})
    return report
