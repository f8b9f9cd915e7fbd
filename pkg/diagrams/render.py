"""ASCII rendering of diagram schemas.

The fork is drawn on top (normal-order step down the left edge,
transformation step along the top edge), the completion of the
normal-order successor along the bottom and the completion of the
transformation successor down the right edge. A triangle keeps the
normal-order labels of its left completion on the bottom edge.
"""
from beartype import beartype

from diagrams.schemas import DiagramSchema, DiagramSet, Label


def edge_label(label: Label, bottom: bool = False) -> str:
    mode, name = label
    if mode == "iS" and bottom:
        mode = "S"
    return f"{mode},{name}"


def _arrow(label: str, width: int) -> str:
    body = f"--{label}"
    return body + "-" * max(0, width - len(body) - 1) + ">"


@beartype
def render_schema(schema: DiagramSchema, count: int | None = None) -> str:
    top_label = f"iS,{schema.transformation}"
    bottom_labels = [edge_label(label, bottom=True) for label in schema.left]
    right_labels = [edge_label(label) for label in schema.right]

    bottom = "." + "".join(f" {_arrow(label, len(label) + 4)} ." for label in bottom_labels)
    top_min = f". {_arrow(top_label, len(top_label) + 4)} ."
    width = max(len(bottom), len(top_min), 12)
    top = f". {_arrow(top_label, width - 4)} ."
    if not bottom_labels:
        bottom = "." + " " + "=" * (width - 4) + " ."
    elif len(bottom) < width:
        last = bottom_labels[-1]
        head = "." + "".join(f" {_arrow(label, len(label) + 4)} ." for label in bottom_labels[:-1])
        bottom = head + f" {_arrow(last, width - len(head) - 3)} ."

    right_cells: list[str] = []
    for label in right_labels:
        right_cells += ["|", label, "v"]
    if not right_cells:
        right_cells = ["", "=", ""]
    height = len(right_cells)
    left_cells = ["|"] * height
    left_cells[height // 2] = edge_label(schema.fork)
    left_cells[-1] = "v"

    gap = max(width - 1, len(edge_label(schema.fork)) + 1)
    lines = []
    header = f"[{schema.transformation}] {schema.shape}"
    if count is not None:
        header += f" ({count} forks)"
    lines.append(header)
    lines.append("  " + top)
    for left, right in zip(left_cells, right_cells):
        lines.append(("  " + left.ljust(gap) + right).rstrip())
    lines.append("  " + bottom)
    return "\n".join(lines)


@beartype
def render_set(result: DiagramSet) -> str:
    blocks = [render_schema(schema, count) for schema, count in result.schemas()]
    summary = (
        f"closed: {len(result.diagrams)}  unclosed: {len(result.unclosed)}  "
        f"from variable positions: {result.variable_position}"
    )
    blocks.append(summary)
    for unclosed in result.unclosed:
        fork = unclosed.fork
        blocks.append(
            f"unclosed fork ({fork.transformation} x {fork.no_rule}, {unclosed.reason}):\n"
            f"{fork.render()}"
        )
    for diagnostic in result.diagnostics:
        blocks.append(f"diagnostic: {diagnostic}")
    return "\n\n".join(blocks)
