"""Plot payload construction and export.

One payload schema serves every consumer (trace events, CLI export,
web console)::

    {kind, series: [{label, x, y | complex}], axes: {x_label, y_label, x_scale}}

``complex`` series carry [re, im] pairs.  Non-finite samples are
nulled so payloads stay JSON-clean.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .kernel import FrequencyResponseData, RootLocusData, TimeResponseData


def _clean(values) -> list:
    out = []
    for v in np.asarray(values).ravel():
        v = float(v)
        out.append(v if math.isfinite(v) else None)
    return out


def _complex_pairs(values) -> list:
    pairs = []
    for z in np.asarray(values).ravel():
        z = complex(z)
        if math.isfinite(z.real) and math.isfinite(z.imag):
            pairs.append([z.real, z.imag])
        else:
            pairs.append([None, None])
    return pairs


def time_payload(data: TimeResponseData) -> dict:
    return {
        "kind": data.kind,
        "series": [{"label": f"{data.kind} response", "x": _clean(data.t), "y": _clean(data.y)}],
        "axes": {"x_label": "time (s)", "y_label": "output", "x_scale": "linear"},
    }


def bode_payload(data: FrequencyResponseData) -> dict:
    mag = 20 * np.log10(np.abs(data.response))
    phase = np.degrees(np.unwrap(np.angle(data.response)))
    x = _clean(data.omega)
    return {
        "kind": "bode",
        "series": [
            {"label": "magnitude (dB)", "x": x, "y": _clean(mag)},
            {"label": "phase (deg)", "x": x, "y": _clean(phase)},
        ],
        "axes": {"x_label": "frequency (rad/s)", "y_label": "", "x_scale": "log"},
    }


def nyquist_payload(data: FrequencyResponseData) -> dict:
    return {
        "kind": "nyquist",
        "series": [
            {
                "label": "G(jw)",
                "x": _clean(data.omega),
                "complex": _complex_pairs(data.response),
            }
        ],
        "axes": {"x_label": "Re", "y_label": "Im", "x_scale": "linear"},
    }


def pzmap_payload(pole_values, zero_values) -> dict:
    return {
        "kind": "pzmap",
        "series": [
            {"label": "poles", "x": [], "complex": _complex_pairs(pole_values)},
            {"label": "zeros", "x": [], "complex": _complex_pairs(zero_values)},
        ],
        "axes": {"x_label": "Re", "y_label": "Im", "x_scale": "linear"},
    }


def root_locus_payload(data: RootLocusData) -> dict:
    series = []
    for branch in range(data.branches.shape[1]):
        series.append(
            {
                "label": f"branch {branch + 1}",
                "x": _clean(data.gains),
                "complex": _complex_pairs(data.branches[:, branch]),
            }
        )
    return {
        "kind": "rlocus",
        "series": series,
        "axes": {"x_label": "Re", "y_label": "Im", "x_scale": "linear"},
    }


def bar_payload(row_labels, column_labels, values) -> dict:
    """Grouped bars: one series per column, one x position per row."""
    series = []
    for j, label in enumerate(column_labels):
        series.append(
            {
                "label": str(label),
                "x": list(range(len(row_labels))),
                "y": _clean([values[i][j] for i in range(len(row_labels))]),
            }
        )
    return {
        "kind": "bar",
        "series": series,
        "axes": {"x_label": "category", "y_label": "score", "x_scale": "linear"},
        "row_labels": [str(r) for r in row_labels],
    }


def validate_payload(payload: dict) -> None:
    for key in ("kind", "series", "axes"):
        if key not in payload:
            raise ValueError(f"plot payload missing {key!r}")
    for series in payload["series"]:
        if "label" not in series or "x" not in series:
            raise ValueError("plot series needs label and x")
        if "y" not in series and "complex" not in series:
            raise ValueError("plot series needs y or complex values")


def write_payload_json(payload: dict, out_path: str | Path) -> Path:
    path = Path(out_path)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True), encoding="utf-8")
    return path


def render_payload_svg(payload: dict, out_path: str | Path) -> Path:
    """Render a payload to a vector graphic via matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    validate_payload(payload)
    kind = payload["kind"]
    if kind == "bode":
        fig, axes = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
        for ax, series in zip(axes, payload["series"]):
            ax.plot(series["x"], series["y"])
            ax.set_xscale("log")
            ax.set_ylabel(series["label"])
            ax.grid(True, which="both", alpha=0.3)
        axes[1].set_xlabel(payload["axes"]["x_label"])
    else:
        fig, ax = plt.subplots(figsize=(7, 5))
        for series in payload["series"]:
            if "complex" in series:
                pts = [p for p in series["complex"] if p[0] is not None]
                if kind in ("pzmap", "rlocus") and series["label"].startswith(("poles", "zeros")):
                    marker = "x" if series["label"] == "poles" else "o"
                    ax.scatter(
                        [p[0] for p in pts], [p[1] for p in pts],
                        marker=marker, label=series["label"],
                    )
                else:
                    ax.plot([p[0] for p in pts], [p[1] for p in pts], label=series["label"])
            else:
                ax.plot(series["x"], series["y"], label=series["label"])
        if payload["axes"].get("x_scale") == "log":
            ax.set_xscale("log")
        ax.set_xlabel(payload["axes"]["x_label"])
        ax.set_ylabel(payload["axes"]["y_label"])
        ax.grid(True, alpha=0.3)
        if len(payload["series"]) > 1:
            ax.legend()
    path = Path(out_path)
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
