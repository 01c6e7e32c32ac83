import functools
import string

from hypothesis import settings, strategies as st

from roughgran.cover import CoverSystem
from roughgran.universe import Relation, Universe, closure

settings.register_profile("default", max_examples=80, deadline=None)
settings.load_profile("default")

EQUIV = ("reflexive", "symmetric", "transitive")


def names(n):
    return string.ascii_lowercase[:n]


@st.composite
def universes(draw, lo=0, hi=6):
    return Universe(names(draw(st.integers(lo, hi))))


@st.composite
def relations(draw, lo=0, hi=6, kinds=()):
    u = draw(universes(lo, hi))
    n = len(u)
    rows = tuple(draw(st.integers(0, (1 << n) - 1)) if n else 0 for _ in range(n))
    rel = Relation(u, rows)
    return closure(rel, kinds) if kinds else rel


@st.composite
def equivalences(draw, lo=0, hi=6):
    """An equivalence drawn as a labelling of elements by class."""
    u = draw(universes(lo, hi))
    labels = [draw(st.integers(0, max(len(u) - 1, 0))) for _ in u]
    blocks = {}
    for x, k in zip(u, labels):
        blocks.setdefault(k, []).append(x)
    return Relation.from_partition(u, list(blocks.values()))


@st.composite
def equivalence_pairs(draw, lo=1, hi=6):
    R = draw(equivalences(lo, hi))
    u = R.universe
    labels = [draw(st.integers(0, len(u) - 1)) for _ in u]
    blocks = {}
    for x, k in zip(u, labels):
        blocks.setdefault(k, []).append(x)
    return R, Relation.from_partition(u, list(blocks.values()))


@st.composite
def covers(draw, lo=1, hi=6, require_cover=True):
    u = draw(universes(lo, hi))
    n = len(u)
    k = draw(st.integers(1, 5))
    masks = [draw(st.integers(1, (1 << n) - 1)) for _ in range(k)]
    if require_cover:
        missing = u.full_mask & ~functools.reduce(int.__or__, masks, 0)
        if missing:
            masks.append(missing)
    blocks = [(f"K{i + 1}", u.from_mask(m).names()) for i, m in enumerate(masks)]
    return CoverSystem.from_blocks(u, blocks)


@st.composite
def subsets(draw, u):
    return u.from_mask(draw(st.integers(0, u.full_mask)))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    report = getattr(mod, "REPORT", None)
    if not report:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(report):
        for line in report[k].lines():
            terminalreporter.write_line(line)
    passed = sum(o.ok for o in report.values())
    terminalreporter.write_line(f"{passed}/{len(report)} criteria pass")
