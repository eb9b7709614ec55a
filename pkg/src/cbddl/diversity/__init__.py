from .layout import fr_layout, layout_to_csv
from .ted import CostModel, discount, matrix_to_csv, pairwise_matrix, tree_edit_distance
from .tree import SyntaxNode, task_to_tree

__all__ = [
    "CostModel",
    "SyntaxNode",
    "discount",
    "fr_layout",
    "layout_to_csv",
    "matrix_to_csv",
    "pairwise_matrix",
    "task_to_tree",
    "tree_edit_distance",
]
