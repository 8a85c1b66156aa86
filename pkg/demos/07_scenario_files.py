# coding: utf-8

# # Scenario files and result bundles
#
# Load a preset, tweak it, save it as YAML and run it into a results folder.
# The same thing from a shell: ``coordsim run low-sor --out results``.

import json
import tempfile
from dataclasses import replace
from pathlib import Path

from coordsim import dump_scenario, execute, load_scenario, preset

out = Path(tempfile.mkdtemp())
sc = preset("low-sor")
sc = replace(sc, config=sc.config.with_(periods=5))
dump_scenario(sc, out / "scenario.yaml")
print((out / "scenario.yaml").read_text()[:300], "...")

bundle = execute(load_scenario(out / "scenario.yaml"), out / "results")
print(sorted(p.name for p in (out / "results").iterdir()))
print(json.dumps(bundle.summary["results"]["totals"], indent=1))
