from .ternary import TernaryTree, enumerate_trees, joint_distribution_trees, tree_stats
