"""Rate fitting and deterministic result emission.

Outputs are byte-reproducible: floats are written with repr (the shortest
decimal that round-trips exactly), JSON keys are sorted, and the SVG plots
are assembled from the data alone, so identical inputs give identical
files regardless of thread count or platform dict order.
"""
from __future__ import annotations

import json
import os

import numpy as np

from . import __version__


def fit_loglog(points):
    """Least squares of log y on log x.

    Returns (slope, intercept, slope standard error); the standard error is
    zero for an exact fit.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    if any(x <= 0.0 or y <= 0.0 for x, y in pts):
        raise ValueError("points must be strictly positive")
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    mx, my = lx.mean(), ly.mean()
    sxx = float(np.sum((lx - mx) ** 2))
    if sxx == 0.0:
        raise ValueError("x values are degenerate")
    slope = float(np.sum((lx - mx) * (ly - my)) / sxx)
    intercept = float(my - slope * mx)
    resid = ly - (intercept + slope * lx)
    dof = len(pts) - 2
    ssr = float(np.sum(resid ** 2))
    stderr = float(np.sqrt(ssr / dof / sxx)) if dof > 0 else 0.0
    return slope, intercept, stderr


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def build_manifest(kind: str, config: dict, rows: list[dict], schedule_key: str,
                   base_seed: int, method_notes: dict) -> dict:
    """Run record sufficient to reproduce the CSV byte-for-byte."""
    schedule = [row[schedule_key] for row in rows]
    slopes = {}
    for col in rows[0]:
        if not (col.endswith("_mean") or col == "vnorm"):
            continue
        ys = [row[col] for row in rows]
        if len(rows) >= 3 and all(y > 0 for y in ys) and all(x > 0 for x in schedule):
            slope, intercept, stderr = fit_loglog(zip(schedule, ys))
            slopes[col] = {"slope": slope, "intercept": intercept,
                           "stderr": stderr, "ci_halfwidth": 1.96 * stderr}
        else:
            slopes[col] = None
    return {
        "tool_version": __version__,
        "experiment": kind,
        "config": config,
        "base_seed": int(base_seed),
        "schedule": schedule,
        "rows": rows,
        "loglog_slopes": slopes,
        "method_notes": method_notes,
    }


def _svg_loglog(xs, ys, title: str, xlabel: str) -> str:
    """Minimal deterministic log-log line plot; non-positive points are
    dropped (they cannot be placed on log axes)."""
    width, height = 640, 480
    ml, mr, mt, mb = 70, 20, 40, 50
    pts = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="monospace" font-size="15">{title}</text>',
        f'<rect x="{ml}" y="{mt}" width="{width - ml - mr}" '
        f'height="{height - mt - mb}" fill="none" stroke="black"/>',
    ]
    if pts:
        lx = np.log10([p[0] for p in pts])
        ly = np.log10([p[1] for p in pts])
        lo_x, hi_x = float(lx.min()), float(lx.max())
        lo_y, hi_y = float(ly.min()), float(ly.max())
        span_x = (hi_x - lo_x) or 1.0
        span_y = (hi_y - lo_y) or 1.0

        def px(v):
            return ml + (v - lo_x) / span_x * (width - ml - mr)

        def py(v):
            return height - mb - (v - lo_y) / span_y * (height - mt - mb)

        coords = [(px(a), py(b)) for a, b in zip(lx, ly)]
        poly = " ".join(f"{a:.2f},{b:.2f}" for a, b in coords)
        parts.append(f'<polyline points="{poly}" fill="none" stroke="steelblue" '
                     'stroke-width="1.5"/>')
        for (a, b), (x, y) in zip(coords, pts):
            parts.append(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="3" fill="steelblue">'
                         f'<title>({_fmt(x)}, {_fmt(y)})</title></circle>')
        for (a, _), x in zip(coords, (p[0] for p in pts)):
            parts.append(f'<text x="{a:.2f}" y="{height - mb + 18}" text-anchor="middle" '
                         f'font-family="monospace" font-size="10">{x:.4g}</text>')
        for frac in (0.0, 0.5, 1.0):
            v = lo_y + frac * span_y
            parts.append(f'<text x="{ml - 6}" y="{py(v):.2f}" text-anchor="end" '
                         f'font-family="monospace" font-size="10">{10 ** v:.3g}</text>')
    parts.append(f'<text x="{width / 2:.1f}" y="{height - 12}" text-anchor="middle" '
                 f'font-family="monospace" font-size="12">{xlabel} (log-log)</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit(rows: list[dict], manifest: dict, out_dir: str, columns: list[str],
         schedule_key: str) -> list[str]:
    """Write results.csv, manifest.json and one SVG per metric column.

    Validates before touching the filesystem; identical inputs produce
    identical bytes.
    """
    if not rows:
        raise ValueError("no result rows to emit")
    for col in columns:
        for row in rows:
            if col not in row:
                raise ValueError(f"row missing column {col!r}")
    csv_text = rows_to_csv(rows, columns)
    manifest_text = json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    svgs = {}
    xs = [row[schedule_key] for row in rows]
    for col in columns:
        if col == schedule_key or col.endswith("_se"):
            continue
        svgs[f"{col}.svg"] = _svg_loglog(xs, [row[col] for row in rows],
                                         title=col, xlabel=schedule_key)
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name, text in [("results.csv", csv_text), ("manifest.json", manifest_text),
                       *sorted(svgs.items())]:
        path = os.path.join(out_dir, name)
        with open(path, "w", newline="") as f:
            f.write(text)
        written.append(path)
    return written
