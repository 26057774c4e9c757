import pytest

from qwalkmix import complete, cycle, hypercube, petersen

SUITE_GRAPHS = {
    "C4": lambda: cycle(4),
    "C5": lambda: cycle(5),
    "C6": lambda: cycle(6),
    "K3": lambda: complete(3),
    "K4": lambda: complete(4),
    "Q3": lambda: hypercube(3),
    "Petersen": petersen,
    "K2": lambda: complete(2),
}

SUITE = [
    ("C4", (0,)), ("C4", (0, 2)),
    ("C5", (0,)), ("C5", (0, 1)),
    ("C6", (0,)), ("C6", (0, 3)), ("C6", (0, 1, 3)),
    ("K3", (0,)),
    ("K4", (0,)), ("K4", (0, 1)),
    ("Q3", (0,)), ("Q3", (0, 7)),
    ("Petersen", (0,)), ("Petersen", (0, 5)),
]

SUITE_WITH_K2 = SUITE + [("K2", (0,))]


def suite_id(case):
    name, S = case
    return f"{name}:{{{','.join(map(str, S))}}}"


def make(name):
    return SUITE_GRAPHS[name]()


@pytest.fixture(params=SUITE_WITH_K2, ids=suite_id)
def instance(request):
    name, S = request.param
    return name, make(name), S


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
