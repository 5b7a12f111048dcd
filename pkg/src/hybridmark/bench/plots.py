"""Static SVG charts from trial records.

Values are quantized to CSV precision first, so plotting records and
plotting the CSV written from them give byte-identical files.
"""
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from hybridmark.bench.records import quantized  # noqa: E402

METHOD_ORDER = ("lsb", "dft", "hybrid")
LABELS = {"lsb": "Spatial (LSB)", "dft": "Frequency (DFT)", "hybrid": "Hybrid (LSB+DFT)"}
COLORS = {"lsb": "tab:blue", "dft": "tab:orange", "hybrid": "tab:green"}

_RC = {"svg.hashsalt": "hybridmark", "svg.fonttype": "none", "font.size": 9}


def _methods(records):
    present = {r.method for r in records}
    return [m for m in METHOD_ORDER if m in present] + sorted(present - set(METHOD_ORDER))


def average_nc(records, kind):
    """{method: {param: mean NC over images}} for one attack family."""
    acc = defaultdict(lambda: defaultdict(list))
    for r in records:
        if r.attack == kind and r.nc is not None:
            acc[r.method][r.param].append(r.nc)
    return {m: {p: float(np.mean(v)) for p, v in ps.items()} for m, ps in acc.items()}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def _psnr_chart(records, path):
    rows = [r for r in records if r.attack == "none" and r.psnr_embed is not None]
    if not rows:
        return False
    images = sorted({r.image for r in rows})
    methods = _methods(rows)
    table = {(r.image, r.method): r.psnr_embed for r in rows}
    finite = [v for v in table.values() if np.isfinite(v)]
    cap = (max(finite) if finite else 100.0) * 1.1
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    width = 0.8 / len(methods)
    x = np.arange(len(images))
    for i, m in enumerate(methods):
        vals = [min(table.get((img, m), 0.0), cap) for img in images]
        ax.bar(x + (i - (len(methods) - 1) / 2) * width, vals, width,
               label=LABELS.get(m, m), color=COLORS.get(m))
    ax.set_xticks(x, images)
    ax.set_ylabel("PSNR (dB)")
    ax.set_title("Imperceptibility before attack")
    ax.legend(loc="upper right")
    _save(fig, path)
    return True


def _jpeg_chart(records, path):
    avg = average_nc(records, "jpeg")
    if not avg:
        return False
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    for m in _methods([r for r in records if r.method in avg]):
        pts = sorted(avg[m].items(), reverse=True)
        ax.plot([int(p) for p, _ in pts], [v for _, v in pts], marker="o",
                label=LABELS.get(m, m), color=COLORS.get(m))
    qfs = sorted({p for series in avg.values() for p in series}, reverse=True)
    ax.set_xticks([int(q) for q in qfs])
    if len(qfs) > 1:
        ax.set_xlim(max(qfs) + 5, min(qfs) - 5)
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("JPEG quality factor")
    ax.set_ylabel("NC")
    ax.set_title("Robustness against JPEG compression")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower left")
    _save(fig, path)
    return True


def _grouped_nc(records, kind, title, xlabel, fmt, path):
    avg = average_nc(records, kind)
    if not avg:
        return False
    params = sorted({p for series in avg.values() for p in series})
    methods = _methods([r for r in records if r.method in avg])
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    width = 0.8 / len(methods)
    x = np.arange(len(params))
    for i, m in enumerate(methods):
        ax.bar(x + (i - (len(methods) - 1) / 2) * width, [avg[m].get(p, 0.0) for p in params],
               width, label=LABELS.get(m, m), color=COLORS.get(m))
    ax.set_xticks(x, [fmt(p) for p in params])
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("NC")
    ax.set_title(title)
    ax.legend(loc="lower left")
    _save(fig, path)
    return True


def emit_plots(records, out_dir):
    """Write psnr.svg, nc_jpeg.svg, nc_gauss.svg and nc_sp.svg; returns the paths written."""
    if not records:
        raise ValueError("no records to plot")
    recs = [r for r in quantized(records) if not r.failed]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    with plt.rc_context(_RC):
        jobs = [
            ("psnr.svg", lambda p: _psnr_chart(recs, p)),
            ("nc_jpeg.svg", lambda p: _jpeg_chart(recs, p)),
            ("nc_gauss.svg", lambda p: _grouped_nc(recs, "gauss", "Robustness against Gaussian noise",
                                                   "noise variance", lambda v: f"{v:g}", p)),
            ("nc_sp.svg", lambda p: _grouped_nc(recs, "sp", "Robustness against salt-and-pepper noise",
                                                "noise density", lambda v: f"{v * 100:g}%", p)),
        ]
        for name, job in jobs:
            if job(out / name):
                written.append(out / name)
    return written
