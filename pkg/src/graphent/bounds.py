"""Combinatorial entanglement bounds and the resulting graph classification.

The upper bound is ``n - |A|`` with ``A`` a maximum independent set (the
largest collection of graph basis states distinguishable by local operations
and classical communication); the lower bound is the maximum matching size
(each matched edge yields a Bell pair across a bipartition).  When the bounds
meet, the entanglement is settled without any optimization.

The matching count alone is used for the lower bound; this is known reliable
for graphs up to 8 vertices, so outputs label the bound "matching".
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .graphs import Graph, delete_vertex, is_two_colorable, max_independent_set_size, max_matching_size


class BoundsCategory(enum.Enum):
    """Category codes as used in catalog files."""

    BIPARTITE_EQUAL = "T1"
    NONBIPARTITE_EQUAL = "T2"
    UNEQUAL = "T3"


@dataclass(frozen=True)
class BoundsReport:
    """Integer entanglement bounds plus the classification they imply."""

    upper: int
    lower: int
    equal: bool
    two_colorable: bool
    category: BoundsCategory

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(
                f"lower bound {self.lower} exceeds upper bound {self.upper}"
            )

    def to_json_dict(self) -> dict:
        return {
            "upper": self.upper,
            "lower": self.lower,
            "equal": self.equal,
            "two_colorable": self.two_colorable,
            "category": self.category.value,
            "lower_bound_method": "matching",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def format_text(self) -> str:
        lines = [
            f"upper bound (LOCC)       : {self.upper}",
            f"lower bound (matching)   : {self.lower}",
            f"bounds equal             : {'yes' if self.equal else 'no'}",
            f"two-colorable            : {'yes' if self.two_colorable else 'no'}",
            f"category                 : {self.category.value}",
        ]
        if self.equal:
            lines.append(f"entanglement (settled)   : {self.upper}")
        return "\n".join(lines)


def locc_upper_bound(g: Graph) -> int:
    """n minus the maximum independent set size."""
    return g.n - max_independent_set_size(g)


def bipartite_lower_bound(g: Graph) -> int:
    """Maximum number of pairwise non-adjacent edges."""
    return max_matching_size(g)


def classify(g: Graph) -> BoundsReport:
    """Bounds plus category: equal bounds settle the entanglement outright."""
    upper = locc_upper_bound(g)
    lower = bipartite_lower_bound(g)
    two_col = is_two_colorable(g) is not None
    equal = upper == lower
    if not equal:
        category = BoundsCategory.UNEQUAL
    elif two_col:
        category = BoundsCategory.BIPARTITE_EQUAL
    else:
        category = BoundsCategory.NONBIPARTITE_EQUAL
    return BoundsReport(
        upper=upper, lower=lower, equal=equal,
        two_colorable=two_col, category=category,
    )


def subgraph_recursion_bound(g: Graph, e_sub) -> float:
    """Upper bound min_v(e_sub[v] + 1) from single-vertex-deleted subgraphs.

    ``e_sub[v]`` must be the entanglement of the graph with vertex v (and its
    incident edges) removed; deleting a vertex costs at most one bit.
    """
    if g.n == 1:
        raise ValueError("subgraph recursion needs at least two vertices")
    e_sub = list(e_sub)
    if len(e_sub) != g.n:
        raise ValueError(f"need one subgraph value per vertex, got {len(e_sub)}")
    return min(float(e) + 1.0 for e in e_sub)


def subgraphs_by_vertex_deletion(g: Graph) -> list[Graph]:
    """The n graphs obtained by deleting each vertex in turn."""
    return [delete_vertex(g, v) for v in range(g.n)]
