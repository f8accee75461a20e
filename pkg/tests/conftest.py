from collections import OrderedDict

import pytest

from toricreeb.families import FamilySpec, generate

# Named diagrams reused across test modules.
CORPUS = {
    "unit_simplex": [(0, 0), (1, 0), (0, 1)],
    "square": [(0, 0), (1, 0), (0, 1), (1, 1)],
    "s5_z3": [(1, 0), (0, 1), (-1, -1)],
    "hexagon_min": [(-1, -1), (0, -1), (-1, 0), (0, 1), (1, 0), (1, 1)],
    "simplex_3d": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
    "rp7": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)],
    "octahedron": [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
}
for p in range(1, 6):
    CORPUS[f"lens_{p}"] = [(0,), (p,)]
    CORPUS[f"xi_{p}"] = [(0, 0), (1, 0), (0, 1), (p, p)]


def family_specs(max_p=5, max_k=3):
    """Every 2-D family member with parameters up to the given bounds."""
    specs = []
    for p in range(1, max_p + 1):
        for fam in ("s2s3", "pentagon", "hexagon", "octagon", "nonagon"):
            specs.append(FamilySpec(fam, {"p": p}))
    for k in range(1, max_k + 1):
        for p in range(1, 4):
            specs.append(FamilySpec("gon4k4", {"k": k, "p": p}))
            for c in (1, 2, 3):
                if c == 1 or k >= 2:
                    specs.append(FamilySpec("gon4k4_clipped", {"k": k, "p": p, "clips": c}))
    return specs


_generated = {}


def generated(spec):
    if spec not in _generated:
        _generated[spec] = generate(spec)
    return _generated[spec]


# ---------------------------------------------------------------------------
# acceptance reporting: tests carry @pytest.mark.criterion(number, title)

_criteria = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            num, title = mark.args
            _criteria.setdefault(num, {"title": title, "tests": {}})
            _criteria[num]["tests"][item.nodeid] = None


def pytest_runtest_logreport(report):
    for entry in _criteria.values():
        if report.nodeid in entry["tests"]:
            if report.failed:
                entry["tests"][report.nodeid] = False
            elif report.when == "call" and entry["tests"][report.nodeid] is None:
                entry["tests"][report.nodeid] = not report.skipped


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        entry = _criteria[num]
        results = list(entry["tests"].values())
        if any(r is None for r in results):
            status = "NOT RUN" if all(r is None for r in results) else "INCOMPLETE"
            if any(r is False for r in results):
                status = "FAIL"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status:10s} {entry['title']} ({len(results)} tests)")


@pytest.fixture(scope="session")
def corpus():
    return CORPUS
