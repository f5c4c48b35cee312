"""End-to-end checks of the level-spectra executable.

usage: test_cli.py <level-spectra binary> <source root>
"""

import json
import math
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BIN = sys.argv[1]
ROOT = Path(sys.argv[2])
NINE_VERTEX = ROOT / "data" / "nine_vertex.tree"
SCHEMAS = {name: json.loads((ROOT / "schemas" / f"{name}.schema.json").read_text())
           for name in ("analysis", "ledger")}

failures = []


def run(*args, stdin=None, env=None):
    full_env = dict(os.environ)
    full_env.pop("LEVEL_SPECTRA_CAP", None)
    if env:
        full_env.update(env)
    return subprocess.run([BIN, *args], input=stdin, capture_output=True, text=True, env=full_env, timeout=120)


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + ("" if cond else f"  {detail}"))
    if not cond:
        failures.append(name)


def all_finite(node):
    if isinstance(node, float):
        return math.isfinite(node)
    if isinstance(node, dict):
        return all(all_finite(v) for v in node.values())
    if isinstance(node, list):
        return all(all_finite(v) for v in node)
    return True


def valid(schema, doc):
    try:
        jsonschema.validate(doc, SCHEMAS[schema])
        return True
    except jsonschema.ValidationError as e:
        print(e)
        return False


# analyze
r = run("analyze", str(NINE_VERTEX), "--format", "json", "--charpoly")
check("analyze exit 0", r.returncode == 0, r.stderr)
doc = json.loads(r.stdout)
check("analyze json schema", valid("analysis", doc))
check("analyze finite", all_finite(doc))
check("analyze rho", abs(doc["rho"] - 10.415812724) < 1e-9, doc["rho"])
check("analyze charpoly", doc["charpoly"] == ["1", "0", "-80", "-276", "-216", "0", "0", "0", "0", "0"])
check("analyze mul0", doc["mul_zero_exact"] == 5)
check("analyze energy = 2 rho", abs(doc["energy"] - 2 * doc["rho"]) < 1e-8 * doc["rho"])
check("analyze bounds all hold", all(b["satisfied"] for b in doc["bounds"]))

r = run("analyze", str(NINE_VERTEX), "--format", "json", "--bounds", "rho-upper-lmax,quotient-bound")
check("analyze bound selection", [b["name"] for b in json.loads(r.stdout)["bounds"]] == ["rho-upper-lmax", "quotient-bound"])
r = run("analyze", str(NINE_VERTEX), "--bounds", "bogus")
check("unknown bound is a usage error", r.returncode == 64, r.returncode)

r = run("analyze", str(NINE_VERTEX), "--format", "dot")
check("dot output", r.returncode == 0 and r.stdout.startswith("digraph"), r.stdout[:40])

r = run("analyze", str(NINE_VERTEX), "--format", "csv")
lines = r.stdout.strip().splitlines()
check("csv header", lines[0].startswith("name,index,lhs,relation"))
check("csv rows", len(lines) == 27, len(lines))

r = run("analyze", str(NINE_VERTEX), "--format", "matrix")
check("matrix output", r.stdout.splitlines()[1] == "0 1 2 3 2 1 2 3 3", r.stdout[:40])

# tree file round trip keeps the canonical form
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "copy.tree"
    r = run("analyze", str(NINE_VERTEX), "--format", "treefile", "--out", str(out))
    check("treefile written", r.returncode == 0 and out.exists(), r.stderr)
    a = json.loads(run("analyze", str(NINE_VERTEX), "--format", "json").stdout)
    b = json.loads(run("analyze", str(out), "--format", "json").stdout)
    check("round trip", a == b)
    r = run("analyze", str(NINE_VERTEX), "--out", str(Path(tmp) / "missing" / "x.txt"))
    check("unwritable output is exit 3", r.returncode == 3, r.returncode)

r = run("analyze", "-", stdin="3\n0 1 1\n", )
check("stdin input", r.returncode == 0 and "vertices       3" in r.stdout, r.stdout[:60])

# input errors
r = run("analyze", "-", stdin="3\n0 1 x\n")
check("parse error exit 2", r.returncode == 2, r.returncode)
check("parse error position", "line 2, column 5" in r.stderr, r.stderr)
r = run("analyze", "-", stdin="3\n0 3 2\n")
check("cycle exit 2", r.returncode == 2 and "CycleDetected" in r.stderr, r.stderr)
r = run("analyze", "/nonexistent/tree")
check("missing file exit 3", r.returncode == 3, r.returncode)

# charpoly
r = run("charpoly", str(NINE_VERTEX))
check("charpoly json", json.loads(r.stdout) == ["1", "0", "-80", "-276", "-216", "0", "0", "0", "0", "0"])

# verify
r = run("verify", "--order", "8")
check("verify 8 exit 0", r.returncode == 0, r.stdout[-400:])
check("verify 8 count", r.stdout.startswith("order 8: 115 trees (recurrence 115), 0 violations"), r.stdout[:80])
r = run("verify", "--order", "7", "--format", "json")
ledger = json.loads(r.stdout)
check("ledger schema", valid("ledger", ledger))
check("ledger ok", ledger["ok"] and ledger["tree_count"] == 48)
r = run("verify", "--order", "10", "--only", "energy-identity", "--format", "json")
ledger = json.loads(r.stdout)
check("verify selection", [c["name"] for c in ledger["checks"]] == ["energy-identity"])
check("verify selection count", ledger["checks"][0]["trees_checked"] == 719)
r = run("verify", "--order", "30")
check("verify cap exit 4", r.returncode == 4, r.returncode)
r = run("verify", "--order", "6", "--only", "tree-count", env={"LEVEL_SPECTRA_CAP": "5"})
check("lowered cap exit 4", r.returncode == 4, r.returncode)
r = run("verify", "--order", "17", "--only", "tree-count", env={"LEVEL_SPECTRA_CAP": "17"})
check("raised cap", r.returncode == 0 and "634847 trees" in r.stdout, r.stdout[:80])
r = run("verify", "--order", "6", "--only", "energy-identity", "--tol", "1e-300")
check("tight tolerance reports violations", r.returncode == 1 and "VIOLATION energy-identity" in r.stdout)
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "ledger.json"
    r = run("verify", "--order", "5", "--format", "json", "--out", str(out))
    check("verify --out", r.returncode == 0 and json.loads(out.read_text())["tree_count"] == 9)

# extremal
r = run("extremal", "--order", "7", "--stat", "rho", "--min", "--expect", "star", "--format", "json")
doc = json.loads(r.stdout)
check("extremal star", r.returncode == 0 and abs(doc["value"] - math.sqrt(6)) < 1e-10, r.stdout)
r = run("extremal", "--order", "7", "--stat", "energy", "--max", "--expect", "path")
check("extremal energy path", r.returncode == 0, r.stdout)
r = run("extremal", "--order", "7", "--stat", "rho", "--max", "--expect", "star")
check("failed expectation exit 1", r.returncode == 1, r.returncode)
r = run("extremal", "--order", "7", "--stat", "unknown")
check("bad stat exit 64", r.returncode == 64, r.returncode)

# special families
r = run("special", "path", "--order", "20", "--format", "json")
doc = json.loads(r.stdout)
check("special path schema", valid("analysis", doc))
check("special path residual", doc["closed_form"]["relative_residual"] < 1e-8, doc["closed_form"])
r = run("special", "leafstar", "--order", "6", "--format", "json")
doc = json.loads(r.stdout)
roots = doc["closed_form"]["cubic_roots"]
check("special leafstar residuals", all(x["residual"] < 1e-8 for x in roots), roots)
check("special leafstar cubic", all(abs(x["root"] ** 3 - 21 * x["root"] - 16) < 1e-8 for x in roots))
check("special leafstar zeros", doc["mul_zero_exact"] == 3)
r = run("special", "dary", "--arity", "2", "--height", "3", "--format", "json")
check("special dary", json.loads(r.stdout)["n"] == 15)
r = run("special", "star", "--order", "5")
check("special star text", r.returncode == 0 and "rho            2\n" in r.stdout, r.stdout[:300])
r = run("special", "star")
check("special without order exit 64", r.returncode == 64, r.returncode)

# usage
check("no subcommand exit 64", run().returncode == 64)
check("help exit 0", run("--help").returncode == 0)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
