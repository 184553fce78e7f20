import pytest

from picard.fpgroup import Presentation, load_group_data
from importlib import resources


@pytest.fixture(scope="session")
def fp_group():
    return load_group_data(resources.files("picard.data").joinpath("falbel_parker.grp"))


def pres(gens, *rels):
    p = Presentation(list(gens), [])
    p.relators = [p.parse(r) for r in rels]
    return p


# Small finite groups by standard presentations, with their orders.
SMALL_GROUPS = {
    "C1": (pres("a", "a"), 1),
    "C5": (pres("a", "a^5"), 5),
    "C6": (pres("a", "a^6"), 6),
    "V4": (pres("ab", "a^2", "b^2", "a b a^-1 b^-1"), 4),
    "S3": (pres("ab", "a^2", "b^3", "a b a b"), 6),
    "Q8": (pres("ab", "a^4", "a^2 b^-2", "b^-1 a b a"), 8),
    "D4": (pres("ab", "a^4", "b^2", "a b a b"), 8),
    "C2^3": (pres("abc", "a^2", "b^2", "c^2", "a b a^-1 b^-1", "a c a^-1 c^-1", "b c b^-1 c^-1"), 8),
    "A4": (pres("ab", "a^2", "b^3", "a b a b a b"), 12),
    "D6": (pres("ab", "a^6", "b^2", "a b a b"), 12),
    "Dic3": (pres("ab", "a^6", "a^3 b^-2", "b^-1 a b a"), 12),
    "C3xC3": (pres("ab", "a^3", "b^3", "a b a^-1 b^-1"), 9),
    "D8": (pres("ab", "a^8", "b^2", "a b a b"), 16),
    "C4xC4": (pres("ab", "a^4", "b^4", "a b a^-1 b^-1"), 16),
    "S4": (pres("ab", "a^2", "b^3", "a b a b a b a b"), 24),
    "SL(2,3)": (pres("ab", "a^3", "b^3", "a b a b^-1 a^-1 b^-1"), 24),
    "C2xA4": (pres("abc", "a^2", "b^3", "a b a b a b", "c^2", "a c a^-1 c^-1", "b c b^-1 c^-1"), 24),
}


# Acceptance bookkeeping: outcome per criterion plus flagged report lines.
_CRITERIA: dict = {}
_FLAGS: list = []


@pytest.fixture
def flag():
    """Record a flagged line for the acceptance summary."""
    return _FLAGS.append


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = report.user_properties and dict(report.user_properties).get("criterion")
    if crit:
        _CRITERIA.setdefault(crit, []).append((report.head_line, report.outcome))


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_CRITERIA):
        runs = _CRITERIA[crit]
        ok = all(o == "passed" for _, o in runs)
        parts = ", ".join(f"{name.split('::')[-1]} {o}" for name, o in runs)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({parts})")
    for line in _FLAGS:
        tr.write_line(f"FLAG: {line}")
