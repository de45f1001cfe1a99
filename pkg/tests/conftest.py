import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


from graphconf import (
    Graph,
    SummandSpec,
    circle_family,
    interval_family,
    make_cycle_graph,
    make_h_graph,
    make_path_graph,
    make_star,
    wedge,
    wedge_family,
)


@pytest.fixture(scope="session")
def interval():
    return make_path_graph(1)


@pytest.fixture(scope="session")
def star3():
    return make_star(3)


@pytest.fixture(scope="session")
def h_graph():
    return make_h_graph()


@pytest.fixture(scope="session")
def point_graph():
    return Graph(vertices=(0,), edges=(), basepoint=0)


@pytest.fixture(scope="session")
def star_family(point_graph, interval):
    """Wedging intervals onto a point: member k is the star with k leaves."""
    return wedge_family(point_graph, [SummandSpec(interval, (0,), (0,))])


@pytest.fixture(scope="session")
def triangle():
    return make_cycle_graph(3)


def corpus_graphs():
    """The named test corpus; family members carry triangle summands."""
    graphs = {
        "interval": make_path_graph(1),
        "path3": make_path_graph(3),
        "star3": make_star(3),
        "star4": make_star(4),
        "star5": make_star(5),
        "h_graph": make_h_graph(),
        "cycle3": make_cycle_graph(3),
        "cycle4": make_cycle_graph(4),
        "star3_wedge_interval": wedge(make_star(3), make_path_graph(1)),
    }
    from graphconf import realize_family
    triangle = make_cycle_graph(3)
    for k in range(1, 5):
        graphs[f"interval_family_{k}"] = realize_family(
            interval_family(triangle), (k,)).graph
        graphs[f"circle_family_{k}"] = realize_family(
            circle_family(triangle), (k,)).graph
    return graphs
