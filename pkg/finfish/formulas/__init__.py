from .closed_forms import fish_count, fish_count_ij, marked_tail_count, ternary_tree_count
