"""Shared fixtures.

Every Polyhedron built while the suite runs is remembered (one per generator
triple up to relabelling), so the property checks in test_acceptance can run
over the whole session's corpus.  Acceptance tests are moved to the end of the
run for that reason, and their verdicts are echoed in the terminal summary.
"""

import pytest

from vfpoly import polyhedron
from vfpoly.perm import canonical_form

SEEN: dict = {}
ACCEPTANCE_LINES: dict[int, str] = {}

_original_init = polyhedron.Polyhedron.__init__


def _recording_init(self, *args, **kwargs):
    _original_init(self, *args, **kwargs)
    key = canonical_form(self.gens) if self.degree <= 400 else tuple(g.images for g in self.gens)
    SEEN.setdefault(key, self)


polyhedron.Polyhedron.__init__ = _recording_init


def pytest_collection_modifyitems(session, config, items):
    items.sort(key=lambda item: item.nodeid.startswith("tests/test_acceptance.py")
               or "test_acceptance.py" in item.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def seen_polyhedra():
    return SEEN
