"""Regenerate src/qbernstein/expected_status.json from closed-form rules.

Only points whose expected status differs from ``verified`` are listed.
The rules are analytic; they do not read any check output.
"""

import json
from math import comb, prod
from pathlib import Path

from qbernstein.registry import REGISTRY, params_key

rules = {
    "thm5-literal": lambda p: "failed" if comb(p["n"], p["k"]) != 1 else None,
    "thm6-literal": lambda p: "failed" if p["k"] >= 1 else None,
    "thm7-literal": lambda p: "failed" if prod(comb(n, p["k"]) for n in p["ns"]) != 1 else None,
    "stirling": lambda p: "corrected-form-verified" if p["j"] >= 1 else None,
}

out = {}
for cid, rule in rules.items():
    table = {}
    for p in REGISTRY[cid].points():
        s = rule(p)
        if s:
            table[params_key(p)] = s
    out[cid] = table

path = Path(__file__).resolve().parent.parent / "src" / "qbernstein" / "expected_status.json"
path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
print(path, {k: len(v) for k, v in out.items()})
