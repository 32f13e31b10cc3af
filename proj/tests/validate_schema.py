"""Runs the CLI on a few specs and validates the JSON against docs/report.schema.json."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, specs = sys.argv[1], sys.argv[2], sys.argv[3]
schema = json.load(open(schema_path))

runs = [
    ["run", f"{specs}/z_mod3.spec"],
    ["run", f"{specs}/free2_prefix.spec"],
    ["run", "-e", "group z\ngenerators 1, 2\npartition mod 3\nmode two_sided\nanalyze normal compare"],
    ["run", "-e", "semigroup free 2\ngenerators a, b\npartition prefix\nanalyze paradox"],
    ["compare", f"{specs}/z_mod3.spec", f"{specs}/z_mod3_translated.spec"],
]
for args in runs:
    out = subprocess.run([cli, *args, "--json"], check=True, capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema)
print(f"{len(runs)} reports match the schema")
