import pytest

from crossbound import kernels


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def acceptance(request):
    """Record one clause of an acceptance criterion; fails the test if ``ok`` is false."""
    book = request.config._acceptance

    def record(number, title, ok, detail=""):
        entry = book.setdefault(number, {"title": title, "clauses": []})
        entry["clauses"].append((request.node.name, bool(ok), detail))
        assert ok, f"criterion {number} ({title}): {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    book = getattr(config, "_acceptance", {})
    if not book:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(book):
        entry = book[number]
        ok = all(c[1] for c in entry["clauses"])
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {entry['title']}")
        for name, passed, detail in entry["clauses"]:
            if not passed or detail:
                terminalreporter.write_line(f"         {'ok ' if passed else 'BAD'} {name}: {detail}")
