"""Ternary trees embedded on the integer line.

A left child sits one step right of its parent, a middle child at the same
abscissa, a right child one step left. A tree is j-positive when, with the
root placed at j, no node has negative abscissa; 0-positive trees are the
left ternary trees.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel

from finfish.core.config import Settings, settings as default_settings
from finfish.core.errors import BudgetExceededError, PreconditionError
from finfish.data.tables import TREE_FIELDS, JointTable

logger = logging.getLogger(__name__)

STEPS = (1, 0, -1)


@dataclass(frozen=True)
class TernaryTree:
    left: Optional["TernaryTree"] = None
    middle: Optional["TernaryTree"] = None
    right: Optional["TernaryTree"] = None

    @property
    def children(self) -> Tuple[Optional["TernaryTree"], ...]:
        return (self.left, self.middle, self.right)

    def __str__(self) -> str:
        return to_text(self)


LEAF = TernaryTree()


def to_text(tree: Optional[TernaryTree]) -> str:
    if tree is None:
        return "."
    return "(" + " ".join(to_text(c) for c in tree.children) + ")"


def from_text(text: str) -> Optional[TernaryTree]:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()

    def parse(i: int) -> Tuple[Optional[TernaryTree], int]:
        if i >= len(tokens):
            raise PreconditionError(f"unexpected end of tree {text!r}")
        if tokens[i] == ".":
            return None, i + 1
        if tokens[i] != "(":
            raise PreconditionError(f"unexpected token {tokens[i]!r} in tree {text!r}")
        kids = []
        i += 1
        for _ in range(3):
            kid, i = parse(i)
            kids.append(kid)
        if i >= len(tokens) or tokens[i] != ")":
            raise PreconditionError(f"node with more than three children in {text!r}")
        return TernaryTree(*kids), i + 1

    tree, end = parse(0)
    if end != len(tokens):
        raise PreconditionError(f"trailing input in tree {text!r}")
    return tree


def node_count(tree: Optional[TernaryTree]) -> int:
    if tree is None:
        return 0
    return 1 + sum(node_count(c) for c in tree.children)


def abscissas(tree: TernaryTree, root_x: int = 0) -> List[int]:
    """Abscissa of every node in preorder."""
    out: List[int] = []
    stack = [(tree, root_x)]
    while stack:
        node, x = stack.pop()
        out.append(x)
        for child, step in reversed(list(zip(node.children, STEPS))):
            if child is not None:
                stack.append((child, x + step))
    return out


def is_j_positive(tree: Optional[TernaryTree], j: int) -> bool:
    if tree is None:
        return j >= -1
    return min(abscissas(tree, j)) >= 0


class TreeStats(BaseModel):
    nodes: int
    core: int
    right_branches: int
    even: int
    odd: int
    non_root_even: int

    @property
    def key(self) -> Tuple[int, int, int, int, int]:
        return (self.nodes, self.right_branches, self.non_root_even, self.odd, self.core)


def tree_stats(tree: TernaryTree) -> TreeStats:
    """Node, core, right-branch and abscissa-parity counts, root at abscissa 0."""
    nodes = core = branches = even = 0
    # (node, abscissa, in core, reached by a right edge)
    stack = [(tree, 0, True, False)]
    while stack:
        node, x, in_core, via_right = stack.pop()
        nodes += 1
        core += in_core
        even += x % 2 == 0
        if node.right is not None and not via_right:
            branches += 1
        for child, step in zip(node.children, STEPS):
            if child is None:
                continue
            if step == -1:
                stack.append((child, x - 1, False, True))
            else:
                stack.append((child, x + step, in_core, False))
    return TreeStats(
        nodes=nodes,
        core=core,
        right_branches=branches,
        even=even,
        odd=nodes - even,
        non_root_even=even - 1,
    )


# -- enumeration ----------------------------------------------------------------

class _TreeBuilder:
    """Memoized j-positive subtrees by (nodes, root abscissa), local to one enumeration.

    Abscissas are capped at the node count: a subtree of n nodes cannot reach
    n steps to the left of its root.
    """

    def __init__(self):
        self.memo: Dict[Tuple[int, int], Tuple[Optional[TernaryTree], ...]] = {}

    def trees(self, nodes: int, x: int) -> Tuple[Optional[TernaryTree], ...]:
        if nodes == 0:
            return (None,)
        if x < 0:
            return ()
        key = (nodes, x)
        if key not in self.memo:
            out: List[TernaryTree] = []
            for n1 in range(nodes):
                for n2 in range(nodes - n1):
                    n3 = nodes - 1 - n1 - n2
                    for left, middle, right in product(
                        self.trees(n1, min(x + 1, n1)), self.trees(n2, min(x, n2)), self.trees(n3, min(x - 1, n3))
                    ):
                        out.append(TernaryTree(left, middle, right))
            self.memo[key] = tuple(out)
        return self.memo[key]


def enumerate_trees(j: int, max_nodes: int, config: Settings = default_settings) -> Iterator[TernaryTree]:
    """Every j-positive tree with 1..max_nodes nodes, by increasing node count.

    Level sizes come from the counting DP, so BudgetExceededError is raised
    before building a level that would pass ``config.term_budget``.
    """
    if j < 0:
        raise PreconditionError(f"j must be nonnegative, got {j}")
    expected = j_positive_counts(j, max_nodes)
    builder = _TreeBuilder()
    produced = 0
    for nodes in range(1, max_nodes + 1):
        if produced + expected[nodes] > config.term_budget:
            raise BudgetExceededError(
                f"tree enumeration would pass {config.term_budget} trees at {nodes} nodes "
                f"({produced} built, {expected[nodes]} more needed)"
            )
        level = builder.trees(nodes, min(j, nodes))
        produced += len(level)
        yield from level


def tree_table_by_enumeration(max_nodes: int, config: Settings = default_settings) -> JointTable:
    table = JointTable(TREE_FIELDS)
    for tree in enumerate_trees(0, max_nodes, config=config):
        table.add(tree_stats(tree).key)
    return table


# -- counting DP ----------------------------------------------------------------

CORE, PLAIN, RIGHT = "core", "plain", "right"


class _TreeCounter:
    """Counts of subtrees by (right branches, even, odd, core), per node count.

    A subtree is identified by its size, its root abscissa and how it hangs
    from its parent: still in the core, off the core by a left or middle edge,
    or by a right edge. Abscissas beyond the node bound are folded back by 2,
    which keeps parity and cannot change which trees are legal.
    """

    def __init__(self, j: int, max_nodes: int):
        self.j = j
        self.ceiling = max_nodes + 1
        self.memo: Dict[Tuple[int, int, str], Counter] = {}

    def _fold(self, x: int) -> int:
        while x > self.ceiling:
            x -= 2
        return x

    def count(self, nodes: int, x: int, hang: str) -> Counter:
        if nodes == 0:
            return Counter({(0, 0, 0, 0): 1})
        if x < 0:
            return Counter()
        key = (nodes, x, hang)
        if key not in self.memo:
            self.memo[key] = self._count(nodes, x, hang)
        return self.memo[key]

    def _count(self, nodes: int, x: int, hang: str) -> Counter:
        even = (x - self.j) % 2 == 0
        own = (0, int(even), int(not even), int(hang == CORE))
        child_hang = CORE if hang == CORE else PLAIN
        out: Counter = Counter()
        for n1 in range(nodes):
            for n2 in range(nodes - n1):
                n3 = nodes - 1 - n1 - n2
                left = self.count(n1, self._fold(x + 1), child_hang)
                middle = self.count(n2, x, child_hang)
                right = self.count(n3, x - 1, RIGHT)
                if not (left and middle and right):
                    continue
                branch = int(n3 > 0 and hang != RIGHT)
                for kl, cl in left.items():
                    for km, cm in middle.items():
                        for kr, cr in right.items():
                            key = (
                                own[0] + kl[0] + km[0] + kr[0] + branch,
                                own[1] + kl[1] + km[1] + kr[1],
                                own[2] + kl[2] + km[2] + kr[2],
                                own[3] + kl[3] + km[3] + kr[3],
                            )
                            out[key] += cl * cm * cr
        return out


def joint_distribution_trees(max_nodes: int, j: int = 0) -> JointTable:
    """Exact (nodes, right_branches, non_root_even, odd, core) table of j-positive trees."""
    if max_nodes < 1:
        raise PreconditionError(f"max_nodes must be at least 1, got {max_nodes}")
    counter = _TreeCounter(j, max_nodes)
    table = JointTable(TREE_FIELDS)
    for nodes in range(1, max_nodes + 1):
        for (branches, even, odd, core), count in counter.count(nodes, counter._fold(j), CORE).items():
            table.add((nodes, branches, even - 1, odd, core), count)
        logger.debug(f"{nodes} nodes done")
    return table


def j_positive_counts(j: int, max_nodes: int) -> List[int]:
    """Number of j-positive trees with 0..max_nodes nodes."""
    by_nodes = joint_distribution_trees(max_nodes, j).marginal("nodes") if max_nodes else {}
    return [1] + [by_nodes.get(n, 0) for n in range(1, max_nodes + 1)]
