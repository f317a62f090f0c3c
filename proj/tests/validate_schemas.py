"""Runs the CLI on representative inputs and validates each JSON output
against docs/schemas. Also checks that repeated runs are byte-identical
once runtime fields are dropped."""

import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

CASES = [
    ("check-fe.json", ["zeta", "check-fe", "--group", "F24"]),
    ("check-fe.json", ["zeta", "check-fe", "--group", "F22"]),
    ("series.json", ["zeta", "series", "--group", "F22", "--prime", "2", "--upto", "3"]),
    ("series.json", ["zeta", "series", "--group", "F24", "--upto", "3"]),
    ("zeta-show.json", ["zeta", "show", "--group", "F24"]),
    ("abscissa.json", ["zeta", "abscissa", "--group", "F23"]),
    ("lemmas.json", ["zeta", "lemmas"]),
    ("zeta-report.json", ["--envelope", "zeta", "check-fe", "--group", "F24"]),
    ("zeta-report.json", ["--envelope", "zeta", "series", "--group", "F23", "--prime", "3", "-N", "4"]),
    ("oracle-count.json", ["oracle", "count", "--group", "F23", "--prime", "2", "-N", "3"]),
    ("oracle-count.json", ["oracle", "direct", "--group", "F22", "--prime", "3", "-N", "2"]),
    ("weights.json", ["oracle", "weights", "--case", "mixed-r3", "--prime", "2", "--r", "1,1,1"]),
    ("multiplicity.json", ["oracle", "multiplicity", "--prime", "2", "--bound", "2"]),
    ("geometry.json", ["geometry", "--prime", "2", "--count", "lines"]),
    ("geometry.json", ["geometry", "--prime", "3", "--count", "rulings"]),
    ("geometry.json", ["geometry", "--prime", "2", "--count", "flags", "--m", "3", "--I", "1,3"]),
    ("combinat.json", ["combinat", "flags", "--m", "5", "--I", "2,4"]),
    ("combinat.json", ["combinat", "type-count", "--type", "1:1,3:2"]),
    ("verdict.json", ["verify-all"]),
    ("verdict.json", ["verify-all", "--timing"]),
]

# These read the oracle cache instead of recomputing every count.
CACHED = {"verify-all"}


def strip_runtime(doc):
    if isinstance(doc, dict):
        return {k: strip_runtime(v) for k, v in doc.items() if k != "runtime_ms"}
    if isinstance(doc, list):
        return [strip_runtime(v) for v in doc]
    return doc


def main():
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    resources = []
    for path in sorted(schema_dir.glob("*.json")):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    registry = Registry().with_resources(resources)
    failures = 0
    for schema_name, args in CASES:
        cmd = [binary, "--json", *([] if args[0] in CACHED else ["--no-cache"]), *args]
        runs = [subprocess.run(cmd, capture_output=True, text=True) for _ in range(2)]
        if runs[0].returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {runs[0].returncode}: {runs[0].stderr.strip()}")
            failures += 1
            continue
        doc = json.loads(runs[0].stdout)
        schema = json.loads((schema_dir / schema_name).read_text())
        errors = list(Draft202012Validator(schema, registry=registry).iter_errors(doc))
        same = json.dumps(strip_runtime(doc)) == json.dumps(strip_runtime(json.loads(runs[1].stdout)))
        if errors or not same:
            failures += 1
            for e in errors:
                print(f"FAIL {' '.join(args)}: {e.json_path}: {e.message}")
            if not same:
                print(f"FAIL {' '.join(args)}: output differs between runs")
        else:
            print(f"ok   {schema_name:18} {' '.join(args)}")
    print(f"{len(CASES) - failures}/{len(CASES)} outputs valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
