"""Rank-two quantum cluster variables from compatible pairs and broken lines."""

from .dyckpath import DyckPath, c_seq, cluster_path, maximal_dyck_path, monomial_path
from .pairs import CompatiblePair, enumerate_pairs, rupel_expansion
from .qalgebra import QLaurent, qbinom
from .qtorus import ConventionConfig, TorusElement, cluster_monomial, cluster_variable
from .scattering import BrokenLine, Side, enumerate_BL, realize_geometrically

__all__ = [
    "BrokenLine", "CompatiblePair", "ConventionConfig", "DyckPath", "QLaurent", "Side",
    "TorusElement", "c_seq", "cluster_monomial", "cluster_path", "cluster_variable",
    "enumerate_BL", "enumerate_pairs", "maximal_dyck_path", "monomial_path", "qbinom",
    "realize_geometrically", "rupel_expansion",
]
