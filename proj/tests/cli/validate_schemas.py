"""Runs the ufavg binary and validates every emitted document against docs/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

try:
    import jsonschema
    from referencing import Registry, Resource
except ImportError:
    print("jsonschema not available; skipping")
    sys.exit(77)

binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

resources = []
for path in schema_dir.glob("*.json"):
    doc = json.loads(path.read_text())
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)


def validate(name, text):
    schema = json.loads((schema_dir / name).read_text())
    jsonschema.Draft202012Validator(schema, registry=registry).validate(json.loads(text))
    print(f"ok {name}")


def run(*args):
    result = subprocess.run([binary, *args], capture_output=True, text=True, check=True)
    return result.stdout


with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    basis = run("schur", "--t", "3")
    validate("schur_basis.json", basis)
    mixed = [[0.25, 0.0] if i == j else [0.0, 0.0] for i in range(4) for j in range(4)]
    (tmp / "state.json").write_text(json.dumps({"dim": 4, "entries": mixed}))
    validate("state.json", (tmp / "state.json").read_text())
    validate("twirl_result.json", run("twirl", "--t", "2", "--input", str(tmp / "state.json"), "--verify"))
    validate("twirl_result.json", run("twirl", "--t", "2", "--input", "ghz", "--channel", "mc-cartan",
                                      "--samples", "2000", "--verify"))
    validate("beta_weights.json", run("beta", "--t", "2", "--samples", "2000"))
    validate("beta_weights.json", run("beta", "--convention", "raw"))
    validate("sizes_table.json", run("sizes"))
    (tmp / "basis.json").write_text(basis)
    run("verify", "--basis", str(tmp / "basis.json"), "--output", str(tmp / "report.json"))
    validate("verify_report.json", (tmp / "report.json").read_text())
