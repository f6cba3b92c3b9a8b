from collections.abc import Sequence

from lambek_lke.tableau.branch import Branch, Tableau
from lambek_lke.tableau.results import BranchClosure

_INDENT = "  "


def render_closure(closure: BranchClosure) -> list[str]:
    """Indented lines describing how one branch closed."""
    rendered = [
        f"{_INDENT}branch {closure.branch}: {closure.true_line} T {closure.category} : {closure.true_label}"
        f"  against  {closure.false_line} F {closure.category} : {closure.false_label}"
    ]
    if closure.substitution:
        bindings = ", ".join(f"{name} := {token}" for name, token in sorted(closure.substitution.items()))
        rendered.append(f"{_INDENT * 2}with {bindings}")
    if not closure.steps:
        rendered.append(f"{_INDENT * 2}by reflexivity")
    rendered.extend(f"{_INDENT * 2}{step.render()}" for step in closure.steps)
    return rendered


def _render_branch(branch: Branch, closed: dict[str, BranchClosure], out: list[str]) -> None:
    if branch.start:
        beta = branch.own()[0]
        out.append(f"branch {branch.path} (beta on {beta.cat}):")
    out.extend(node.render() for node in branch.own())
    if branch.path in closed or branch.children is None:
        return
    for child in branch.children:
        _render_branch(child, closed, out)


def render_derivation(tab: Tableau, closures: Sequence[BranchClosure]) -> str:
    """Numbered derivation lines of every explored branch followed by the closure block.

    Line 1 states the sequent being refuted; every later line is ``n- T|F <category> : <token>   [rule lines]``.
    """
    out = [f"1- {tab.sequent.render()}   [goal]"]
    closed = {closure.branch: closure for closure in closures}
    _render_branch(tab.root, closed, out)
    if closures:
        out.append("closure:")
        for closure in closures:
            out.extend(render_closure(closure))
    return "\n".join(out)
