import random

import pytest
from hypothesis import settings, strategies as st

from skein.algebra import Element, all_gens
from skein.qring import ring_make

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def rings(draw, max_terms=4, max_alpha=2):
    pairs = draw(st.lists(st.tuples(st.integers(-8, 8), st.integers(-5, 5)), max_size=max_terms))
    return ring_make(pairs, draw(st.integers(0, max_alpha)))


@st.composite
def elements(draw, n=4, max_len=3, max_terms=3):
    gens = all_gens(n)
    out = Element()
    for _ in range(draw(st.integers(0, max_terms))):
        word = tuple(draw(st.lists(st.sampled_from(gens), max_size=max_len)))
        out = out + Element.word(word, draw(rings(max_terms=2, max_alpha=1)))
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    def emit(number, name, ok, detail=""):
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {name}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
