import pytest

_RESULTS: dict[int, tuple[str, str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    out = yield
    rep = out.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or rep.when != "call" and not rep.failed:
        return
    k, title = m.args
    notes = [v for key, v in item.user_properties if key == "note"]
    status = "PASS" if rep.passed else "FAIL"
    if rep.skipped:
        status = "SKIP"
    _RESULTS[k] = (status, title, notes)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_RESULTS):
        status, title, notes = _RESULTS[k]
        tr.write_line(f"criterion {k}: {status}  {title}")
        for note in notes:
            tr.write_line(f"    {note}")
