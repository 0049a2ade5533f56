"""Figure rendering for the CLI report path.

Every report and delimited output gets a small matplotlib figure written
next to it.  matplotlib is imported lazily so library use never pays for
it; PNG metadata is pinned so repeated runs produce identical bytes.
"""

from __future__ import annotations

_PNG_METADATA = {"Software": "qwk"}


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path):
    fig.savefig(path, metadata=_PNG_METADATA)
    import matplotlib.pyplot as plt

    plt.close(fig)


def render_report_figure(report: dict, path: str) -> None:
    """One horizontal bar per check, green for pass, red for fail."""
    plt = _plt()
    checks = report["checks"]
    names = [c["name"] for c in checks]
    colors = ["#2e7d32" if c["status"] == "pass" else
              "#c62828" if c["status"] == "fail" else "#9e9e9e"
              for c in checks]
    fig, ax = plt.subplots(figsize=(7, max(1.6, 0.4 * len(checks) + 0.8)))
    ax.barh(range(len(checks)), [1] * len(checks), color=colors)
    ax.set_yticks(range(len(checks)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xticks([])
    ax.set_title(f"suite {report['suite']}: {report['summary']['pass']} pass, "
                 f"{report['summary']['fail']} fail", fontsize=10)
    fig.tight_layout()
    _save(fig, path)


def render_character_figure(char_json: dict, path: str) -> None:
    """Multiplicity per weight slice, deepest last."""
    plt = _plt()
    rows = char_json["weights"]
    labels = ["(" + ",".join(r["weight"]) + ")" for r in rows]
    mults = [r["multiplicity"] for r in rows]
    fig, ax = plt.subplots(figsize=(max(4, 0.7 * len(rows) + 1), 3.2))
    ax.bar(range(len(rows)), mults, color="#1565c0")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("multiplicity")
    ax.set_title(f"character to depth {char_json['depth']}", fontsize=10)
    fig.tight_layout()
    _save(fig, path)


def render_dims_figure(dims: dict, title: str, path: str) -> None:
    """Graded dimensions (degree -> dim) as a bar chart."""
    plt = _plt()
    degrees = sorted(int(k) for k in dims)
    values = [dims[d] if d in dims else dims[str(d)] for d in degrees]
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(degrees) + 1.5), 3.2))
    ax.bar(degrees, values, color="#6a1b9a")
    ax.set_xlabel("Kazhdan degree")
    ax.set_ylabel("dimension")
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    _save(fig, path)


def render_window_figure(window_json: dict, path: str) -> None:
    plt = _plt()
    heights = sorted(int(h) for h in window_json["slices"])
    values = [window_json["slices"][str(h)] for h in heights]
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(heights) + 1.5), 3.2))
    ax.bar(heights, values, color="#00695c")
    ax.set_xlabel("slice height")
    ax.set_ylabel("solution dimension")
    ax.set_title(f"window {window_json['window']}, "
                 f"leakage rank {window_json['leakage-rank']}", fontsize=10)
    fig.tight_layout()
    _save(fig, path)
