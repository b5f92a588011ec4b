"""Deterministic CSV/JSON/SVG rendering of analysis outputs.

Everything here is plain text generation with stable ordering and
repr-based float formatting, so re-running a command with the same
inputs and seed reproduces each artifact byte for byte.
"""

from __future__ import annotations

import json

from . import __version__
from .analysis.oat import OAT_CAVEAT

SVG_COMMENT = f"<!-- doelab {__version__} -->"


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        # plain float repr (shortest round-trip); numpy scalars would
        # otherwise stringify as np.float64(...)
        return repr(float(value))
    return str(value)


def fmt6(value: float) -> str:
    return f"{value:.6f}"


def render_csv(header, rows, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    lines.extend(",".join(cells) for cells in rows)
    return "\n".join(lines) + "\n"


def anova_table(rows) -> str:
    return render_csv(
        ("factor", "target_metric", "F", "p", "significant"),
        [(r.factor, r.target_metric, fmt6(r.f_stat), fmt6(r.p_value), fmt(r.significant))
         for r in rows],
    )


def manova_table(rows) -> str:
    return render_csv(
        ("factor", "wilks_lambda", "F_approx", "d1", "d2", "p", "significant"),
        [(r.factor, fmt6(r.wilks_lambda), fmt6(r.f_approx), fmt(r.d1), fmt(r.d2),
          fmt6(r.p_value), fmt(r.significant))
         for r in rows],
    )


def oat_table(effects) -> str:
    return render_csv(
        ("factor", "target_metric", "effect_low", "effect_high", "span"),
        [(e.factor, e.target_metric, fmt(e.effect_low), fmt(e.effect_high), fmt(e.span))
         for e in effects],
        comments=(f"note: {OAT_CAVEAT}",),
    )


def sobol_table(results) -> str:
    return render_csv(
        ("factor", "target_metric", "S1", "S1_conf", "ST", "ST_conf"),
        [(r.factor, r.target_metric, fmt(r.s1), fmt(r.s1_conf), fmt(r.st), fmt(r.st_conf))
         for r in results],
    )


def efast_table(results) -> str:
    return render_csv(
        ("factor", "target_metric", "S1", "ST"),
        [(r.factor, r.target_metric, fmt(r.s1), fmt(r.st)) for r in results],
    )


def metamodel_table(fits) -> str:
    return render_csv(
        ("target_metric", "length_scale", "signal_variance", "nugget",
         "log_marginal_likelihood", "train_rmse"),
        [(f["target_metric"], fmt(f["length_scale"]), fmt(f["signal_variance"]),
          fmt(f["nugget"]), fmt(f["log_marginal_likelihood"]), fmt(f["train_rmse"]))
         for f in fits],
    )


def surface_table(factor_x: str, factor_y: str, records) -> str:
    return render_csv(
        (factor_x, factor_y, "mean", "std"),
        [(fmt(x), fmt(y), fmt(mean), fmt(std)) for x, y, mean, std in records],
    )


def render_summary(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=False) + "\n"


# --- svg ----------------------------------------------------------------------

def _esc(text: str) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def index_bar_chart(title: str, factors, s1_values, st_values) -> str:
    """Grouped S1/ST bars per factor, one chart per target metric."""
    n = len(factors)
    margin, group_w, bar_w, height = 60, 90, 32, 280
    width = 2 * margin + n * group_w
    floor_y = height - 60
    scale = 170.0

    def bar_y(v):
        v = max(min(v, 1.2), -0.2)
        return floor_y - v * scale, abs(v) * scale

    parts = [
        SVG_COMMENT,
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{_esc(title)}</text>',
        f'<line x1="{margin}" y1="{floor_y}" x2="{width - margin}" y2="{floor_y}" '
        f'stroke="black" stroke-width="1"/>',
    ]
    for ref in (0.5, 1.0):
        y = floor_y - ref * scale
        parts.append(
            f'<line x1="{margin}" y1="{y:.1f}" x2="{width - margin}" y2="{y:.1f}" '
            f'stroke="#cccccc" stroke-width="0.5"/>'
        )
        parts.append(
            f'<text x="{margin - 6}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{ref}</text>'
        )
    for i, name in enumerate(factors):
        x0 = margin + i * group_w + 8
        for value, color, dx in ((s1_values[i], "#1f77b4", 0), (st_values[i], "#ff7f0e", bar_w + 4)):
            top, h = bar_y(value)
            if value >= 0:
                parts.append(
                    f'<rect x="{x0 + dx}" y="{top:.1f}" width="{bar_w}" height="{h:.1f}" '
                    f'fill="{color}"/>'
                )
            else:
                parts.append(
                    f'<rect x="{x0 + dx}" y="{floor_y}" width="{bar_w}" height="{h:.1f}" '
                    f'fill="{color}"/>'
                )
        parts.append(
            f'<text x="{x0 + bar_w + 2}" y="{floor_y + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_esc(name)}</text>'
        )
    legend_y = height - 24
    parts.extend([
        f'<rect x="{margin}" y="{legend_y}" width="12" height="12" fill="#1f77b4"/>',
        f'<text x="{margin + 16}" y="{legend_y + 10}" font-family="sans-serif" '
        f'font-size="11">S1</text>',
        f'<rect x="{margin + 60}" y="{legend_y}" width="12" height="12" fill="#ff7f0e"/>',
        f'<text x="{margin + 76}" y="{legend_y + 10}" font-family="sans-serif" '
        f'font-size="11">ST</text>',
        "</svg>",
    ])
    return "\n".join(parts) + "\n"


def surface_heatmap(title: str, factor_x: str, factor_y: str, records, resolution: int) -> str:
    """Mean-value heat map of a surface grid (x right, y up)."""
    cell = max(6, 360 // resolution)
    margin = 70
    width = 2 * margin + resolution * cell
    height = 2 * margin + resolution * cell
    means = [rec[2] for rec in records]
    lo, hi = min(means), max(means)
    span = hi - lo if hi > lo else 1.0

    def color(v):
        t = (v - lo) / span
        red = round(255 * t)
        blue = round(255 * (1.0 - t))
        green = round(80 + 60 * (1.0 - abs(2 * t - 1)))
        return f"rgb({red},{green},{blue})"

    parts = [
        SVG_COMMENT,
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{_esc(title)}</text>',
    ]
    for idx, (_, _, mean, _) in enumerate(records):
        ix, iy = divmod(idx, resolution)
        x = margin + ix * cell
        y = margin + (resolution - 1 - iy) * cell
        parts.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{color(mean)}"/>')
    parts.extend([
        f'<text x="{width / 2:.1f}" y="{height - 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{_esc(factor_x)}</text>',
        f'<text x="20" y="{height / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 20 {height / 2:.1f})">{_esc(factor_y)}</text>',
        f'<text x="{margin}" y="{height - 40}" font-family="sans-serif" font-size="10">'
        f'mean range [{fmt(lo)}, {fmt(hi)}]</text>',
        "</svg>",
    ])
    return "\n".join(parts) + "\n"
