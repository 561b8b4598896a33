"""
The analysis bundle
===================

``gridnet analyze`` runs every section on every component and writes a JSON
bundle plus CSV plot data.  The same pipeline is available from Python.
"""

# %%
import tempfile
from pathlib import Path

from gridnet import cli, report
from gridnet.ingest import synthetic_records, write_grid

with tempfile.TemporaryDirectory() as d:
    nodes, edges = synthetic_records(80, 90, ("uniform", 0.05, 1.0), seed=1,
                                     current_dist=("uniform", 50.0, 300.0))
    src = write_grid(nodes, edges, Path(d) / "grid")
    out = Path(d) / "out"
    cli.main(["analyze", str(src), "--out", str(out), "--seed", "42", "--cost",
              "--baseline-trials", "5", "--random-trials", "5"])
    print(sorted(p.name for p in out.iterdir()))

    bundle = report.load_bundle(out / "bundle.json")
    print(report.render_table(bundle, "metrics"))
    print(report.render_table(bundle, "weighted"))
    print(report.render_table(bundle, "critical-edges"))
    print(report.render_table(bundle, "centrality"))
