VERDICTS: dict = {}


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    VERDICTS[n] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
