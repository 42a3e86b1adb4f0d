import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    def report(name, ok, seconds, budget):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] {name} ({seconds:.2f}s, budget {budget}s)")
        print(ACCEPTANCE_LINES[-1])
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
