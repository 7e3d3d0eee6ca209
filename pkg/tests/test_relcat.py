from collections import Counter
from itertools import combinations

import json
import pytest

from skein.algebra import Element
from skein.oracle import Evaluator, random_tuple
from skein.parser import parse_element
from skein.relcat import (
    all_instances,
    catalog,
    classical_counterpart,
    commutative_q1,
    export_lines,
    instantiate,
    template,
)


def test_catalog_shape():
    groups = Counter(tpl.group for tpl in catalog())
    assert groups == {"centrality": 1, "commuting": 3, "commutator-22": 2,
                      "commutator-23": 5, "type-II": 2, "type-I": 10}
    arities = sorted(tpl.arity for tpl in catalog() if tpl.group == "commuting")
    assert arities == [4, 5, 6]


def test_crossing_commutator_instances():
    tpl = template("comm22-crossing")
    v0 = instantiate(tpl, (1, 2, 3, 4), 0, False).element
    assert v0 == parse_element("s24 s13 - s13 s24 - (q^2 - q^-2)(s14 s23 - s12 s34)", 4)
    v1 = instantiate(tpl, (1, 2, 3, 4), 1, False).element
    assert v1 == parse_element("s13 s24 - s24 s13 - (q^2 - q^-2)(s12 s34 - s23 s14)", 4)


def test_mirrored_instance():
    tpl = template("typeI-square")
    plain = instantiate(tpl, (1, 2, 3), 0, False).element
    assert instantiate(tpl, (1, 2, 3), 0, True).element == plain.mirror()


def test_instantiate_errors():
    tpl = template("comm22-crossing")
    with pytest.raises(ValueError):
        instantiate(tpl, (1, 2, 3), 0)
    with pytest.raises(ValueError):
        instantiate(tpl, (2, 1, 3, 4), 0)
    with pytest.raises(ValueError):
        instantiate(tpl, (1, 2, 3, 4), 4)


def test_instance_counts():
    five = [i for i in all_instances(5, mirrors=False, dedup=False) if i.family == "typeII-five"]
    assert len(five) == 5
    eq26 = [i for i in all_instances(4, mirrors=False, dedup=False) if i.family == "comm22-crossing"]
    assert len(eq26) == 4
    type1 = [i for i in all_instances(3, dedup=False) if i.family.startswith("typeI-")]
    assert {i.family for i in type1} == {"typeI-square"} and len(type1) == 6


def test_instances_deterministic_and_deduplicated():
    a = all_instances(5)
    b = all_instances(5)
    assert [i.key() for i in a] == [i.key() for i in b]
    assert all(x.element == y.element for x, y in zip(a, b))
    assert len({i.element for i in a}) == len(a)
    # frozen: count of the deduplicated catalog per n
    assert [len(all_instances(n)) for n in (3, 4, 5, 6)] == [FROZEN_COUNTS[n] for n in (3, 4, 5, 6)]


FROZEN_COUNTS = {3: 48, 4: 224, 5: 760, 6: 2124}


def test_export_sorted_json_lines():
    lines = export_lines(4)
    rows = [json.loads(line) for line in lines]
    keys = [(r["family"], r["tuple"], r["shift"], r["mirrored"], r.get("partner", "")) for r in rows]
    assert keys == sorted(keys)
    assert len(rows) == len(all_instances(4))
    assert Element.from_json(rows[0]["element"]) is not None


def test_classical_recovery():
    for inst in all_instances(6, mirrors=False):
        if inst.family.startswith(("typeI-", "typeII-")):
            assert commutative_q1(inst.element) == classical_counterpart(inst), inst.key()


def test_mirrors_vanish_at_q1():
    evs = [Evaluator(random_tuple(5, seed)) for seed in range(3)]
    for inst in all_instances(5):
        for ev in evs:
            assert ev.element(inst.element.mirror(), -1) == 0
