import pytest

from skewgentle.corpus import corpus_generate

CORPUS_SEED = 7
CORPUS_SIZE = 50

# criterion number -> (title, passed, detail); filled by the acceptance tests
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
    ACCEPTANCE[number] = (title, passed, detail)
    print(f"criterion {number} {title}: {'PASS' if passed else 'FAIL'}{'  ' + detail if detail else ''}")
    return passed


@pytest.fixture(scope="session")
def corpus():
    return corpus_generate(CORPUS_SEED, CORPUS_SIZE)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} {title}: {'PASS' if passed else 'FAIL'}"
                                    + (f"  ({detail})" if detail else ""))
