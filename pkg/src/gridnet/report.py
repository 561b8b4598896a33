"""Full-pipeline analysis bundle and table rendering."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path

import numpy as np

from . import baselines, centrality, cost_model, distributions_fit, resilience, spectral_cut
from .errors import FitError, GridError, InfeasibleError, MissingCurrentError, ValidationError
from .grid_model import GridGraph, build_graph, connected_components
from .ingest import parse_grid
from .path_metrics import metrics_report

BUNDLE_VERSION = 1
TABLES = ("metrics", "weighted", "critical-edges", "centrality")
REMOVAL_POLICIES = ("random", "degree", "betweenness", "weighted_degree")


def input_digest(path) -> str:
    """SHA-256 over the grid file (or ``nodes.csv`` + ``edges.csv``)."""
    path = Path(path)
    h = hashlib.sha256()
    if path.is_dir():
        for name in ("nodes.csv", "edges.csv"):
            h.update(name.encode())
            h.update((path / name).read_bytes())
    else:
        h.update(path.read_bytes())
    return h.hexdigest()


def _clean(obj):
    """Make ``obj`` JSON-safe: numpy scalars to Python, NaN/inf to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def _skipped(reason):
    return {"skipped": reason}


def _distribution(ccdf):
    out = {"kind": ccdf.kind, "x": ccdf.x.tolist(), "p": ccdf.p.tolist()}
    try:
        out["classification"] = distributions_fit.classify(ccdf).to_dict()
    except FitError as exc:
        out["classification"] = _skipped(str(exc))
    return out


def analyze_component(g: GridGraph, cid: int, digest: str, seed: int, *, baseline_trials=10,
                      removal_step=0.05, random_trials=10, with_resilience=True, with_cost=False):
    """Every analysis section for one connected component."""
    tag = {"component_id": cid, "input_digest": digest}

    def section(payload):
        return {**tag, **payload}

    comp = {**tag, "order": g.order, "size": g.size}
    m = metrics_report(g, cid)
    comp["metrics"] = section(m.to_dict())
    small = "component has fewer than 2 nodes"

    if g.order < 2:
        for key in ("baseline", "small_world", "distributions", "centrality", "bisection"):
            comp[key] = section(_skipped(small))
        comp["resilience"] = section(_skipped(small)) if with_resilience else section(_skipped("disabled (--no-resilience)"))
        comp["cost"] = section(_skipped(small)) if with_cost else section(_skipped("not requested (--cost)"))
        return comp

    try:
        base = baselines.baseline_metrics(g.order, g.size, seed, baseline_trials)
        comp["baseline"] = section({
            "trials": base.trials, "apl": base.apl, "cpl": base.cpl, "cc": base.cc,
            "apl_sd": base.apl_sd, "cpl_sd": base.cpl_sd, "cc_sd": base.cc_sd,
        })
        v = baselines.small_world_test(m, base)
        comp["small_world"] = section(dict(v.__dict__))
    except InfeasibleError as exc:
        comp["baseline"] = section(_skipped(str(exc)))
        comp["small_world"] = section(_skipped("no baseline"))

    b_u = centrality.betweenness(g, use_weights=False)
    b_w = centrality.betweenness(g, use_weights=True)
    comp["distributions"] = section({
        "degree": _distribution(distributions_fit.degree_ccdf(g, weighted=False)),
        "weighted_degree": _distribution(distributions_fit.degree_ccdf(g, weighted=True)),
        "betweenness": _distribution(distributions_fit.betweenness_ccdf(b_u)),
        "weighted_betweenness": _distribution(distributions_fit.betweenness_ccdf(b_w)),
    })

    cent = {}
    for mode, flag in (("unweighted", False), ("weighted", True)):
        r = centrality.eigenvector_centrality(g, use_weights=flag)
        cent[mode] = {
            "eigenvalue": r.eigenvalue,
            "iterations": r.iterations,
            "top10": [[rank, nid, score] for rank, nid, score in r.top(10)],
        }
    comp["centrality"] = section(cent)

    tree = spectral_cut.recursive_bisect(g, depth=2)
    comp["bisection"] = section({
        "critical_edges": tree.n_critical,
        "fiedler_value": tree.fiedler_value,
        "side_orders": [len(tree.side_a), len(tree.side_b)],
        "edges": [list(e) for e in tree.critical_edges],
        "children": [
            {"critical_edges": c.n_critical, "fiedler_value": c.fiedler_value,
             "side_orders": [len(c.side_a), len(c.side_b)], "note": c.note}
            for c in tree.children
        ],
    })

    if with_resilience:
        policies = [
            resilience.RemovalPolicy(p, seed=seed if p == "random" else None) for p in REMOVAL_POLICIES
        ]
        traces = resilience.compare_policies(g, policies, removal_step, random_trials)
        comp["resilience"] = section({
            "step": removal_step,
            "random_trials": random_trials,
            "traces": {t.policy.kind: t.to_dict() for t in traces},
        })
        comp["_traces"] = traces
    else:
        comp["resilience"] = section(_skipped("disabled (--no-resilience)"))

    if with_cost:
        try:
            comp["cost"] = section(cost_model.cost_params(g, seed).to_dict())
        except (MissingCurrentError, ValidationError, GridError) as exc:
            comp["cost"] = section(_skipped(str(exc)))
    else:
        comp["cost"] = section(_skipped("not requested (--cost)"))
    return comp


def build_bundle(path, seed=0, *, baseline_trials=10, removal_step=0.05, random_trials=10,
                 with_resilience=True, with_cost=False):
    """Run the whole pipeline on a grid file; returns ``(bundle, artifacts)``.

    ``artifacts`` maps output file names to CSV text.
    """
    digest = input_digest(path)
    g = build_graph(*parse_grid(path))
    comps = connected_components(g)
    bundle = {
        "format": "gridnet-bundle",
        "version": BUNDLE_VERSION,
        "input": {"name": Path(path).name, "digest": digest, "order": g.order, "size": g.size},
        "settings": {
            "seed": seed, "baseline_trials": baseline_trials, "removal_step": removal_step,
            "random_trials": random_trials, "resilience": with_resilience, "cost": with_cost,
        },
        "components": [],
    }
    artifacts = {}
    for cid, c in enumerate(comps):
        res = analyze_component(
            c, cid, digest, seed, baseline_trials=baseline_trials, removal_step=removal_step,
            random_trials=random_trials, with_resilience=with_resilience, with_cost=with_cost,
        )
        traces = res.pop("_traces", [])
        bundle["components"].append(res)
        dist = res["distributions"]
        if "skipped" not in dist:
            artifacts[f"degree_ccdf_{cid}.csv"] = _ccdf_csv(dist["degree"])
            artifacts[f"betweenness_ccdf_{cid}.csv"] = _ccdf_csv(dist["betweenness"])
        for t in traces:
            artifacts[f"removal_{t.policy.kind}_{cid}.csv"] = t.to_csv()
    artifacts["metrics.csv"] = metrics_csv(bundle)
    if with_cost:
        markers = [
            (f"component_{c['component_id']}", c["cost"]["alpha"], c["cost"]["beta"])
            for c in bundle["components"] if "skipped" not in c["cost"]
        ]
        if markers:
            surf = default_surface(markers)
            bundle["cost_surface"] = {
                "base": surf.base, "alpha_ref": surf.alpha_ref, "beta_ref": surf.beta_ref,
                "markers": [list(m) for m in surf.markers],
            }
            artifacts["cost_surface.csv"] = surf.to_csv()
            artifacts["cost_markers.csv"] = surf.markers_csv()
        else:
            bundle["cost_surface"] = _skipped("no component has cost parameters")
    return _clean(bundle), artifacts


def default_surface(markers, n=25):
    a_max = max(abs(m[1]) for m in markers) or 1.0
    b_max = max(abs(m[2]) for m in markers) or 1.0
    return cost_model.price_surface(
        np.linspace(0.0, 1.25 * a_max, n), np.linspace(0.0, 1.25 * b_max, n),
        base=1.0, refs=(a_max, b_max), markers=markers,
    )


def _ccdf_csv(dist):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    fits = []
    cls = dist.get("classification", {})
    if "fits" in cls:
        for f in cls["fits"]:
            fits.append(distributions_fit.FitResult(f["model"], f["parameters"], f["sse"],
                                                    f["converged"], f["iterations"]))
    w.writerow(["x", "p"] + [f"{f.model}_p" for f in fits])
    x = np.asarray(dist["x"], dtype=float)
    preds = [f.predict(x) for f in fits]
    for i, (xi, pi) in enumerate(zip(dist["x"], dist["p"])):
        w.writerow([repr(float(xi)), repr(float(pi))] + [_num(pr[i]) for pr in preds])
    return buf.getvalue()


def _num(x):
    return repr(float(x)) if math.isfinite(x) else ""


METRIC_FIELDS = ("order", "size", "avg_degree", "apl", "cpl", "cc", "wcpl", "edge_avg_weight",
                 "nwcpl", "avg_traversed_increase_pct")


def metrics_csv(bundle):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["component_id", *METRIC_FIELDS, "random_apl", "random_cpl", "random_cc"])
    for c in bundle["components"]:
        m = c["metrics"]
        b = c.get("baseline", {})
        w.writerow([c["component_id"], *(m[k] for k in METRIC_FIELDS),
                    *(b.get(k, "") for k in ("apl", "cpl", "cc"))])
    return buf.getvalue()


def dumps_bundle(bundle) -> str:
    return json.dumps(bundle, indent=1, sort_keys=True, allow_nan=False) + "\n"


def write_outputs(bundle, artifacts, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "bundle.json").write_text(dumps_bundle(bundle), encoding="utf-8")
    for name, text in sorted(artifacts.items()):
        (out / name).write_text(text, encoding="utf-8")
    return out


# -- tables --------------------------------------------------------------
def _g(x):
    if x is None or x == "":
        return "-"
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(x)
    return f"{float(x):.6g}"


def _render(header, rows):
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = [" | ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _skip_row(cid, reason, width):
    return [cid, f"skipped: {reason}"] + [""] * (width - 2)


def render_table(bundle, table: str) -> str:
    """Text table in the layout of the published result tables.

    ``table`` is one of ``metrics``, ``weighted``, ``critical-edges`` or
    ``centrality``.
    """
    if table not in TABLES:
        raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLES)}")
    comps = bundle["components"]
    if table == "metrics":
        header = ["ID", "Order", "Size", "Avg d", "APL", "CPL", "γ", "Rnd APL", "Rnd CPL", "Rnd γ"]
        rows = []
        for c in comps:
            m, b = c["metrics"], c["baseline"]
            row = [c["component_id"], m["order"], m["size"], _g(m["avg_degree"]), _g(m["apl"]),
                   _g(m["cpl"]), _g(m["cc"])]
            if "skipped" in b:
                row += ["skipped: " + b["skipped"], "", ""]
            else:
                row += [_g(b["apl"]), _g(b["cpl"]), _g(b["cc"])]
            rows.append(row)
        return _render(header, rows)
    if table == "weighted":
        header = ["ID", "WCPL", "Edge Average Weight", "NWCPL"]
        rows = []
        for c in comps:
            m = c["metrics"]
            if m["order"] < 2:
                rows.append(_skip_row(c["component_id"], "component has fewer than 2 nodes", 4))
            else:
                rows.append([c["component_id"], _g(m["wcpl"]), _g(m["edge_avg_weight"]), _g(m["nwcpl"])])
        return _render(header, rows)
    if table == "critical-edges":
        header = ["ID", "Critical edges", "Fiedler value", "Sides"]
        rows = []
        for c in comps:
            b = c["bisection"]
            if "skipped" in b:
                rows.append(_skip_row(c["component_id"], b["skipped"], 4))
            else:
                rows.append([c["component_id"], b["critical_edges"], _g(b["fiedler_value"]),
                             "/".join(str(s) for s in b["side_orders"])])
        return _render(header, rows)
    header = ["ID", "Rank", "Node (unweighted)", "Node (weighted)"]
    rows = []
    for c in comps:
        ce = c["centrality"]
        if "skipped" in ce:
            rows.append(_skip_row(c["component_id"], ce["skipped"], 4))
            continue
        uw, w = ce["unweighted"]["top10"], ce["weighted"]["top10"]
        for i in range(max(len(uw), len(w))):
            rows.append([c["component_id"], i + 1, uw[i][1] if i < len(uw) else "",
                         w[i][1] if i < len(w) else ""])
    return _render(header, rows)


def load_bundle(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))
