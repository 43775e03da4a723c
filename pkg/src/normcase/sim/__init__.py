"""What-if simulation: rule versions per declaration and bounded action trees.

A scenario owns a sandboxed base state plus one rule group per act/duty
declaration.  Each group holds versions of that declaration; at most one is
active.  The effective spec (facts plus active versions) drives a bounded
breadth-first expansion of everything that could happen, without ever touching
real cases.
"""

from .scenario import (
    RuleGroup,
    RuleVersion,
    Scenario,
    SimulationError,
    add_rule_version,
    create_scenario,
    effective_spec,
    scenario_to_doc,
    toggle_rule,
)
from .tree import (
    ActionTree,
    TreeNode,
    TreeTooLargeError,
    build_tree,
    explain_node,
    tree_to_doc,
)

__all__ = [
    "ActionTree",
    "RuleGroup",
    "RuleVersion",
    "Scenario",
    "SimulationError",
    "TreeNode",
    "TreeTooLargeError",
    "add_rule_version",
    "build_tree",
    "create_scenario",
    "effective_spec",
    "explain_node",
    "scenario_to_doc",
    "toggle_rule",
    "tree_to_doc",
]
