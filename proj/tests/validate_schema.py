"""Validates CLI JSON output against docs/report.schema.json."""

import json
import subprocess
import sys

import jsonschema

binary, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["verify", "--case", "rankin-selberg", "--n", "3"],
    ["verify", "--case", "gross-prasad", "--n", "2", "--timing"],
    ["verify", "--case", "ichino"],
    ["verify", "--case", "diagonal", "--n", "4"],
    ["fiber", "--case", "friedberg-jacquet", "--n", "1"],
    ["fiber", "--case", "jacquet-ichino", "--seed", "7", "--trials", "20"],
    ["newton", "--mu", "(3,1)", "--n", "4", "--corrected"],
    ["newton", "--mu", "(1)", "--n", "3"],
    ["selftest", "--timing"],
]
failures = 0
for args in runs:
    out = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True)
    if out.returncode not in (0, 1):
        print("exit", out.returncode, args, out.stderr)
        failures += 1
        continue
    errors = list(validator.iter_errors(json.loads(out.stdout)))
    for e in errors:
        print(" ".join(args), "->", list(e.absolute_path), e.message[:200])
    failures += bool(errors)
    print("ok  " if not errors else "FAIL", " ".join(args))
sys.exit(1 if failures else 0)
