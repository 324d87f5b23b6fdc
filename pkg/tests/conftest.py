import pytest

from hedgehog_ramsey.utils.colouring_utils import BLUE, RED, ExplicitColouring
from hedgehog_ramsey.utils.hedgehog_utils import random_hedgehog
from hedgehog_ramsey.utils.hypergraph_utils import Graph2


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph2.from_edges(10, outer + spokes + inner)


@pytest.fixture
def c5():
    return Graph2.cycle(5)


@pytest.fixture
def k4():
    return Graph2.complete(4)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def path3():
    return Graph2.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def single_edge_gamma():
    # gamma = {01} on 4 vertices
    return Graph2.from_edges(4, [(0, 1)])


@pytest.fixture
def all_red5():
    return ExplicitColouring.constant(5, RED)


@pytest.fixture
def constant_colouring(request):
    n, colour = request.param
    return ExplicitColouring.constant(n, colour)


@pytest.fixture
def hedgehog_factory(request):
    class HedgehogFactory:
        def __init__(self, b, s):
            self.b = b
            self.s = s

        def create(self, seed):
            return random_hedgehog(self.b, self.s, seed)

    return HedgehogFactory(*request.param)
