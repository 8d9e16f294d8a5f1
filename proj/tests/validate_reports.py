"""Runs the CLI over the sample instances and validates every report and
instance file against the shipped schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema

binary = sys.argv[1]
root = pathlib.Path(sys.argv[2])
data = root / "tests" / "data"
instance_schema = json.loads((root / "schemas" / "instance.schema.json").read_text())
report_schema = json.loads((root / "schemas" / "report.schema.json").read_text())
Validator = jsonschema.Draft202012Validator
Validator.check_schema(instance_schema)
Validator.check_schema(report_schema)
inst_v = Validator(instance_schema)
rep_v = Validator(report_schema)

failures = 0


def check(name, validator, doc):
    global failures
    errors = sorted(validator.iter_errors(doc), key=str)
    if errors:
        failures += 1
        print(f"FAIL {name}: {errors[0].message}")
    else:
        print(f"ok   {name}")


def run(args):
    out = subprocess.run([binary, *args], capture_output=True, text=True)
    return out.returncode, out.stdout


for path in sorted(data.glob("*.json")):
    doc = json.loads(path.read_text())
    if path.name.startswith("bad_"):
        continue
    check(f"instance {path.name}", inst_v, doc)
    kind = doc["kind"]
    if kind == "fleck":
        args = ["fleck", "--instance", str(path)]
    elif kind == "synthesize":
        args = ["synthesize", str(path)]
    else:
        args = ["count", str(path), "--workers", "2"]
    code, stdout = run(args)
    if code not in (0, 3):
        failures += 1
        print(f"FAIL {path.name}: exit {code}")
        continue
    check(f"report {path.name}", rep_v, json.loads(stdout))

extra = [
    ["fleck", "-p", "3", "-a", "1", "-n", "5", "-r", "1", "--timings"],
    ["fleck", "-p", "2", "-a", "0", "-n", "7", "-r", "-3", "--f", "1,2,3"],
    ["bounds", "-p", "2", "-a", "1", "-n", "4"],
    ["bounds", "-p", "3", "-a", "0", "-n", "9", "-l", "2", "-b", "3"],
    ["sweep", "--seed", "5", "--rounds", "2", "--workers", "2", "--timings"],
    ["count", str(data / "chevalley.json"), "--exact", "--timings"],
]
for args in extra:
    code, stdout = run(args)
    if code != 0:
        failures += 1
        print(f"FAIL {' '.join(args)}: exit {code}")
        continue
    check("report " + " ".join(args[:1] + args[1:3]), rep_v, json.loads(stdout))

# the schemas must reject damaged documents
code, stdout = run(["count", str(data / "chevalley.json")])
damaged = json.loads(stdout)
damaged["result"]["sum"] = 3
if rep_v.is_valid(damaged):
    failures += 1
    print("FAIL report schema accepts a numeric sum")
if inst_v.is_valid({"kind": "axkatz", "p": 2, "n_vars": 1, "polynomials": ["x1"], "b": 1, "q": 1}):
    failures += 1
    print("FAIL instance schema accepts an unknown field")

sys.exit(1 if failures else 0)
