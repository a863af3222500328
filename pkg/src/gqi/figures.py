"""
Figure data tables.

Every builder returns a :class:`SweepTable` whose rows follow grid order.
Decay constants are computed per unit ``kappa`` and scaled at the end.
"""

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from . import __version__
from .illumination import (
    QIScenario,
    coherent_benchmark,
    classify_point,
    decay_general,
    eta_qa1_col_limit,
    eta_qa1_loc,
    idler_squeeze_limit,
    idler_squeezed_probe,
    max_anticorrelation,
    quantum_advantage,
    signal_op_probe,
    tmsv_decay,
)
from .symplectic import Displacement, apply, tmsv

FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig6")


def thread_count():
    """Worker count from ``GQI_THREADS`` (default 1)."""
    raw = os.environ.get("GQI_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"GQI_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def parallel_map(fn, items):
    """``map`` over a thread pool; results keep input order."""
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _fmt(v):
    if isinstance(v, str):
        return v
    if v is None:
        return ""
    return repr(float(v))


@dataclass
class SweepTable:
    """Named columns of equal length plus a metadata object."""

    columns: Dict[str, list]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns have different lengths: {sorted(lengths)}")
        for name, vals in self.columns.items():
            for v in vals:
                if isinstance(v, float) and not math.isfinite(v):
                    raise ValueError(f"column {name!r} has a non-finite value")

    @property
    def names(self) -> List[str]:
        return list(self.columns)

    def __len__(self):
        return len(next(iter(self.columns.values()), []))

    def rows(self):
        cols = [self.columns[n] for n in self.names]
        return [tuple(c[i] for c in cols) for i in range(len(self))]

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.names)
        for row in self.rows():
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self):
        doc = {"columns": {k: [None if v is None else v for v in vals] for k, vals in self.columns.items()},
               "metadata": self.metadata}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def parse_csv(text):
        """Read back a CSV written by :meth:`to_csv`; numeric fields become floats."""
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        cols = {h: [] for h in header}
        for row in reader:
            for h, v in zip(header, row):
                if v == "":
                    cols[h].append(None)
                    continue
                try:
                    cols[h].append(float(v))
                except ValueError:
                    cols[h].append(v)
        return SweepTable(cols)


def _meta(name, params, grid):
    return {"figure": name, "version": __version__, "parameters": params, "grid": grid}


def fig2(n_s=0.01, n_b=625.0, kappa=0.01, delta_max=0.1, points=21):
    """Decay constants versus added signal photons, normalized to TMSV(``n_s``)."""
    deltas = np.linspace(0.0, delta_max, points)
    base = tmsv_decay(n_s, n_b)

    def row(dn):
        out = {}
        for op in ("tmsv", "displace", "squeeze"):
            d = decay_general(signal_op_probe(n_s, float(dn), op), n_b)
            out[op] = (d.gamma_col / base.gamma_col, d.gamma_loc / base.gamma_loc)
        return out

    rows = parallel_map(row, deltas)
    cols = {"delta_n": [float(x) for x in deltas]}
    for k, label in ((0, "col"), (1, "loc")):
        for op in ("tmsv", "displace", "squeeze"):
            cols[f"{label}_{op}"] = [r[op][k] for r in rows]
    params = {"n_s": n_s, "n_b": n_b, "kappa": kappa}
    return SweepTable(cols, _meta("fig2", params, {"delta_n": [0.0, delta_max, points]}))


def fig3(n_s=0.01, n_b=625.0, kappa=0.01, etas=(0.9, 0.1), n_ls=(0.0, 0.43, 7.84), zeta_max=6.0, points=61):
    """Idler squeezing before a lossy memory, normalized to the ideal TMSV(``n_s``)."""
    zetas = np.linspace(0.0, zeta_max, points)
    base = tmsv_decay(n_s, n_b)
    ci = coherent_benchmark(n_s, n_b)
    lim = idler_squeeze_limit(tmsv(n_s), n_b)
    grid = [(eta, n_l, float(z)) for eta in etas for n_l in n_ls for z in zetas]

    def row(p):
        eta, n_l, z = p
        return decay_general(idler_squeezed_probe(n_s, z, eta, n_l), n_b)

    vals = parallel_map(row, grid)
    cols = {
        "eta": [g[0] for g in grid],
        "n_l": [g[1] for g in grid],
        "zeta_i": [g[2] for g in grid],
        "col": [v.gamma_col / base.gamma_col for v in vals],
        "loc": [v.gamma_loc / base.gamma_loc for v in vals],
        "col_limit": [lim.gamma_col / base.gamma_col] * len(grid),
        "loc_limit": [lim.gamma_loc / base.gamma_loc] * len(grid),
        "col_coherent": [ci.gamma_col / base.gamma_col] * len(grid),
        "loc_coherent": [ci.gamma_loc / base.gamma_loc] * len(grid),
    }
    params = {"n_s": n_s, "n_b": n_b, "kappa": kappa, "etas": list(etas), "n_ls": list(n_ls)}
    return SweepTable(cols, _meta("fig3", params, {"zeta_i": [0.0, zeta_max, points]}))


def fig4(n_s=0.01, n_b=625.0, kappa=0.01, n_ls=(0.0, 0.43, 7.84), r_max=2.0, r_points=11, eta_points=21):
    """QA of displaced TMSV probes over displacement ``r`` and memory transmissivity (long format)."""
    rs = np.linspace(0.0, r_max, r_points)
    etas = np.linspace(0.0, 1.0, eta_points)
    grid = [(n_l, float(r), float(eta)) for n_l in n_ls for r in rs for eta in etas]

    def row(p):
        n_l, r, eta = p
        probe = apply(tmsv(n_s), Displacement((r, 0.0), mode=0))
        return quantum_advantage(QIScenario(probe, kappa, n_b, idler_memory=(eta, n_l)))

    vals = parallel_map(row, grid)
    cols = {
        "n_l": [g[0] for g in grid],
        "r": [g[1] for g in grid],
        "eta": [g[2] for g in grid],
        "qa_col": [float(v[0]) for v in vals],
        "qa_loc": [float(v[1]) for v in vals],
    }
    params = {"n_s": n_s, "n_b": n_b, "kappa": kappa, "n_ls": list(n_ls)}
    return SweepTable(cols, _meta("fig4", params, {"r": [0.0, r_max, r_points], "eta": [0.0, 1.0, eta_points]}))


def fig5(n_ss=(0.01, 0.1, 1.0), n_l_max=10.0, points=101, extra_n_l=(0.43, 7.84)):
    """Large-background transmissivity thresholds versus memory noise."""
    n_ls = sorted(set(float(x) for x in np.linspace(0.0, n_l_max, points)) | set(extra_n_l))
    grid = [(n_l, n_s) for n_l in n_ls for n_s in n_ss]
    cols = {
        "n_l": [g[0] for g in grid],
        "n_s": [g[1] for g in grid],
        "eta_col": [eta_qa1_col_limit(g[1], g[0]) for g in grid],
        "eta_loc": [eta_qa1_loc(math.inf, g[0]) for g in grid],
    }
    params = {"n_b": "inf", "n_ss": list(n_ss), "extra_n_l": list(extra_n_l)}
    return SweepTable(cols, _meta("fig5", params, {"n_l": [0.0, n_l_max, points]}))


def fig6(n_s=0.01, n_i=0.01, n_b=625.0, points=41):
    """Correlation-region labels on a square grid spanning the TMSV corners (long format).

    QA columns are left empty for unphysical points.
    """
    c = 2.0 * math.sqrt(n_s + n_s * n_s) if n_s == n_i else max_anticorrelation(n_s, n_i)
    axis = c * np.linspace(-1.0, 1.0, points)
    grid = [(float(x), float(y)) for x in axis for y in axis]

    def row(p):
        return classify_point(n_s, n_i, n_b, p[0], p[1])

    vals = parallel_map(row, grid)
    cols = {
        "a13": [g[0] for g in grid],
        "a24": [g[1] for g in grid],
        "label": [v[0] for v in vals],
        "qa_col": [None if math.isnan(v[1]) else float(v[1]) for v in vals],
        "qa_loc": [None if math.isnan(v[2]) else float(v[2]) for v in vals],
    }
    params = {"n_s": n_s, "n_i": n_i, "n_b": n_b}
    return SweepTable(cols, _meta("fig6", params, {"a13": [-c, c, points], "a24": [-c, c, points]}))


BUILDERS = {"fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5, "fig6": fig6}


def build(name, **overrides):
    if name not in BUILDERS:
        raise ValueError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    return BUILDERS[name](**overrides)
