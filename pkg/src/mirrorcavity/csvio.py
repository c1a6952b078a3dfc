"""CSV rendering with a resolved-parameter comment header.

Every output document starts with `# key = value` comment lines echoing the
resolved configuration, then the column header, then data rows.  Floats are
rendered with repr (shortest round-trip form), so identical computations give
byte-identical documents.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .params import PhysicalParams


def format_value(value: object) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    return str(value)


def params_meta(params: PhysicalParams) -> list[tuple[str, object]]:
    """Config-file-keyed echo of the physical parameters."""
    return [
        ("L0_m", params.L0),
        ("M_kg", params.M),
        ("omega_osc", params.omega_osc),
        ("omega_cut", params.omega_cut),
        ("hbar", params.hbar),
        ("c", params.c),
    ]


def render_csv(
    meta: Sequence[tuple[str, object]],
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
) -> str:
    lines = [f"# {key} = {format_value(value)}" for key, value in meta]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_value(cell) for cell in row))
    return "\n".join(lines) + "\n"
