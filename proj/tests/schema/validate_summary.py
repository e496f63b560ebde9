"""Run each subcommand and validate its stdout against the shipped schema."""
import json
import subprocess
import sys

import jsonschema

tool, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    (["norm", "--exponent", "two-step", "--function", "x"], 0),
    (["norm", "--function", "power:0.6"], 3),
    (["oscillation", "--depth", "6", "--levels", "10", "--mean-pairs", "5"], 0),
    (["estimates", "--exponent", "const:2", "--suite", "dyadic", "--averaging"], 0),
    (["condition-a", "--depth", "6", "--levels", "8"], 0),
    (["maximal", "--grid", "33"], 0),
    (["counterexample", "--k", "5"], 0),
    (["search", "--budget", "20"], 0),
    (["verify", "--only", "1,8,9"], 0),
    (["list"], 0),
    (["norm", "--exponent", "nope"], 2),
    ([], 2),
]
bad = 0
for args, code in runs:
    p = subprocess.run([tool] + args, capture_output=True, text=True)
    doc = json.loads(p.stdout)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    if p.returncode != code or errors:
        bad += 1
        print("FAIL", args, "exit", p.returncode, "want", code)
        for e in errors:
            print("  ", list(e.path), e.message)
    else:
        print("ok  ", " ".join(args) or "(no args)")
sys.exit(1 if bad else 0)
