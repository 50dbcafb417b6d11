"""Shared test plumbing: acceptance-criterion result collection."""

# (criterion id, title, passed, detail) tuples registered by test_acceptance
ACCEPTANCE_RESULTS = []


def record_criterion(cid: str, title: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((cid, title, passed, detail))
    status = "PASS" if passed else "FAIL"
    print(f"[acceptance] {cid} {title}: {status}" + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for cid, title, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        line = f"{cid} {title}: {status}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
