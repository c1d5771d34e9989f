import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# Reference Hamiltonian circuit of A(5,3), closing repeat dropped.
GOLDEN_A53 = """
+++++ -++++ --+++ +-+++ +--++ ++-++
++--+ +++-+ +++-- -++-- -+--- ++---
+---- +---+ ----+ ---++ ---+- -----
--+-- --++- -+++- ++++-
""".split()

_criteria: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria[num] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, status, dur = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {title}  ({dur:.2f} s)")
