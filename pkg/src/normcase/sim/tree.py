"""Bounded breadth-first expansion of everything that could happen next."""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, time

from ..dsl.printer import print_expr
from ..engine import NormState, Status, available_actions, execute
from ..engine.model import TruthValue
from ..engine.ops import action_status
from ..engine.serde import source_to_doc, state_digest, state_to_doc
from .scenario import Scenario, SimulationError, effective_spec

SIM_ACTOR = "simulatie"
SIM_MOTIVATION = "hypothetisch pad (simulatie)"


class TreeTooLargeError(SimulationError):
    pass


@dataclass(frozen=True)
class TreeNode:
    id: int
    parent: int | None
    act: str | None  # None only on the root
    status: Status | None
    motivation_required: bool
    state_digest: str
    depth: int


@dataclass(frozen=True)
class ActionTree:
    scenario_id: int
    depth: int
    nodes: tuple[TreeNode, ...]

    def node(self, node_id: int) -> TreeNode:
        if 0 <= node_id < len(self.nodes) and self.nodes[node_id].id == node_id:
            return self.nodes[node_id]
        raise SimulationError(f"no tree node {node_id}")


def _sim_state(scenario: Scenario) -> NormState:
    return replace(scenario.base_state, spec=effective_spec(scenario))


def build_tree(
    scenario: Scenario, depth: int, max_depth: int = 4, max_nodes: int = 10_000
) -> ActionTree:
    """Expand breadth-first: one child per act that is allowed or indefinite.

    Not-allowed acts show up as unexpanded leaf annotations so the user sees
    the whole option space.  Indefinite children are flagged as requiring a
    motivation; their execution inside the tree is hypothetical.
    """
    if not 1 <= depth <= max_depth:
        raise SimulationError(f"depth must be between 1 and {max_depth}")
    root_state = _sim_state(scenario)
    nodes = [TreeNode(0, None, None, None, False, state_digest(root_state), 0)]
    states = {0: root_state}
    queue = [0]
    while queue:
        node_id = queue.pop(0)
        node = nodes[node_id]
        if node.depth == depth:
            continue
        state = states[node_id]
        for act, status in available_actions(state):
            child_id = len(nodes)
            if child_id > max_nodes:
                raise TreeTooLargeError(f"tree exceeds {max_nodes} nodes")
            if status.status is Status.NOT_ALLOWED:
                nodes.append(
                    TreeNode(
                        child_id, node_id, act.name, status.status, False,
                        state_digest(state), node.depth + 1,
                    )
                )
                continue
            needs_motivation = status.status is Status.INDEFINITE
            child_state, _ = execute(
                state,
                act.name,
                SIM_ACTOR,
                datetime.combine(state.clock, time()),
                motivation=SIM_MOTIVATION if needs_motivation else None,
            )
            nodes.append(
                TreeNode(
                    child_id, node_id, act.name, status.status, needs_motivation,
                    state_digest(child_state), node.depth + 1,
                )
            )
            states[child_id] = child_state
            queue.append(child_id)
    return ActionTree(scenario.id, depth, tuple(nodes))


def _state_at(scenario: Scenario, tree: ActionTree, node_id: int) -> NormState:
    """Replay the path from the root to recover a node's parent-side state."""
    path = []
    node = tree.node(node_id)
    while node.parent is not None:
        path.append(node)
        node = tree.node(node.parent)
    state = _sim_state(scenario)
    for step in reversed(path[1:] if path else []):
        state, _ = execute(
            state,
            step.act,
            SIM_ACTOR,
            datetime.combine(state.clock, time()),
            motivation=SIM_MOTIVATION if step.status is not Status.ALLOWED else None,
        )
    return state


def explain_node(scenario: Scenario, tree: ActionTree, node_id: int) -> dict:
    """What this node means: clause truth values, contributing rule versions,
    sources.  The root explains the base state only."""
    node = tree.node(node_id)
    if node.act is None:
        root_state = _sim_state(scenario)
        return {
            "node": node.id,
            "act": None,
            "status": None,
            "motivationRequired": False,
            "clauses": [],
            "versions": [],
            "sources": [],
            "assignments": state_to_doc(root_state)["assignments"],
        }
    parent_state = _state_at(scenario, tree, node_id)
    status = action_status(parent_state, node.act)
    group = scenario.group(node.act)
    versions = (
        [{"ruleId": group.rule_id, "versionId": group.active_version}]
        if group.active_version is not None
        else []
    )
    act_decl = parent_state.spec.act(node.act)
    child_state = parent_state
    if node.status is not Status.NOT_ALLOWED:
        child_state, _ = execute(
            parent_state,
            node.act,
            SIM_ACTOR,
            datetime.combine(parent_state.clock, time()),
            motivation=SIM_MOTIVATION if node.status is not Status.ALLOWED else None,
        )
    return {
        "node": node.id,
        "act": node.act,
        "status": node.status.value,
        "motivationRequired": node.motivation_required,
        "clauses": [
            {
                "clause": r.clause,
                "truth": r.truth.value,
                "sources": [source_to_doc(s) for s in r.sources],
            }
            for r in status.reasons
        ],
        "versions": versions,
        "sources": [source_to_doc(s) for s in act_decl.sources],
        "assignments": state_to_doc(child_state)["assignments"],
    }


def tree_to_doc(tree: ActionTree) -> dict:
    return {
        "scenario": tree.scenario_id,
        "depth": tree.depth,
        "nodes": [
            {
                "id": n.id,
                "parent": n.parent,
                "act": n.act,
                "status": n.status.value if n.status else None,
                "motivationRequired": n.motivation_required,
                "digest": n.state_digest,
            }
            for n in tree.nodes
        ],
    }
