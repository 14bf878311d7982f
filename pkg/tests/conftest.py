import random

import pytest

from data.data_manager import DataManager
from models.line_model import LineModel
from models.metric_tree import MetricTree
from models.pretree import FinitePretree
from utils.pretree_helpers import PretreeHelper
from utils.settings import LabSettings
from utils.tree_helpers import TreeModelHelper


def pretree_of(tree: MetricTree) -> FinitePretree:
    """Prétree des sommets d'un arbre fini, identifiants bruts."""
    return FinitePretree(tree.vertices, PretreeHelper.between_triples_of_graph(tree.graph))


def random_pretree(rng: random.Random, n: int):
    tree = TreeModelHelper.random_tree(rng, n)
    return tree, pretree_of(tree)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def data_manager():
    return DataManager("data")


@pytest.fixture
def settings():
    return LabSettings()


@pytest.fixture
def path3():
    """Chemin 0 - 1 - 2."""
    return pretree_of(TreeModelHelper.path_tree(3))


@pytest.fixture
def star3():
    """Étoile de centre 0, feuilles 1, 2, 3."""
    return pretree_of(TreeModelHelper.star_tree(3))


@pytest.fixture
def star_tree():
    return TreeModelHelper.star_tree(3)


@pytest.fixture
def path5():
    return TreeModelHelper.path_tree(5)


@pytest.fixture
def line():
    return LineModel()
