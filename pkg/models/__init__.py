from .f2_word import F2Word
from .tree_point import TreePoint
from .tree_space import TreeSpace, SimplicialSpace
from .metric_tree import MetricTree
from .lazy_tree import LazyTree, F2Tree, SpiderTree
from .line_model import LineModel
from .pretree import FinitePretree, WindowPretree, Bridge, AxiomReport
from .automorphism import TreeAutomorphism, VertexPermutation, PiecewiseLinearMap, F2Isometry
from .classification import Elliptic, Loxodromic, FixedPoint, InvertedSegment, NonNestingResult
from .flow import FlowRelation, DirectedArcSample, Promise, Cut
from .end import End, CosetOrderDatum
from .matrix import MatrixN, Transvection
from .group_table import FiniteGroupTable, XPath, Disconnected
from .orbit import OrbitWindow
from .metrization import DiscreteMedianClosure, EquivariantMetric, AxisChart
from .report import Finding, Report

__all__ = [
    'F2Word',
    'TreePoint',
    'TreeSpace',
    'SimplicialSpace',
    'MetricTree',
    'LazyTree',
    'F2Tree',
    'SpiderTree',
    'LineModel',
    'FinitePretree',
    'WindowPretree',
    'Bridge',
    'AxiomReport',
    'TreeAutomorphism',
    'VertexPermutation',
    'PiecewiseLinearMap',
    'F2Isometry',
    'Elliptic',
    'Loxodromic',
    'FixedPoint',
    'InvertedSegment',
    'NonNestingResult',
    'FlowRelation',
    'DirectedArcSample',
    'Promise',
    'Cut',
    'End',
    'CosetOrderDatum',
    'MatrixN',
    'Transvection',
    'FiniteGroupTable',
    'XPath',
    'Disconnected',
    'OrbitWindow',
    'DiscreteMedianClosure',
    'EquivariantMetric',
    'AxisChart',
    'Finding',
    'Report'
]
