"""Run the simulator on a few scenarios and validate every summary and trace."""
import csv
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

HEADER = ["t", "x", "v", "x_p", "b", "psi1", "u", "nu1", "p1", "p2", "delta_acc", "delta1", "cd",
          "feasible", "solver_status", "solve_ms"]


def main(sim: str, schema_path: str) -> int:
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    runs = [
        ["run", "--scenario", "cd-040"],
        ["run", "--scenario", "cd-ramp-037-020", "--mode", "hocbf-baseline"],
        ["run", "--scenario", "noise-1x", "--seeds", "0,1", "--T", "5"],
    ]
    expected = 4  # one per single-seed run, two for the seed list
    checked = 0
    with tempfile.TemporaryDirectory() as out:
        for args in runs:
            subprocess.run([sim, *args, "--out", out], check=True, stdout=subprocess.DEVNULL)
        for path in sorted(pathlib.Path(out).glob("*.summary.json")):
            doc = json.loads(path.read_text())
            validator.validate(doc)
            trace = path.with_name(path.name.replace(".summary.json", ".csv"))
            with trace.open() as fh:
                rows = list(csv.reader(fh))
            assert rows[0] == HEADER, f"{trace}: header {rows[0]}"
            assert len(rows) - 1 == doc["steps"], f"{trace}: {len(rows) - 1} rows vs {doc['steps']} steps"
            checked += 1
        bad = json.loads(next(pathlib.Path(out).glob("*.summary.json")).read_text())
        bad["unexpected"] = 1
        try:
            validator.validate(bad)
        except jsonschema.ValidationError:
            pass
        else:
            raise AssertionError("schema accepted an unknown key")
    print(f"validated {checked} summaries")
    return 0 if checked == expected else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
