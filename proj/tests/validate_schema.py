#!/usr/bin/env python3
"""Run a few audits through the CLI and validate the json against the schema."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

ZERO_TARGET_CSV = """y,a,b
0,1,2
2,2,1
3,3,5
5,4,3
4,5,4
7,6,8
"""


def audit(cli, args):
    proc = subprocess.run([cli, "audit", *args, "--format", "json"],
                          capture_output=True, text=True, check=False)
    if proc.returncode != 0:
        sys.exit(f"audit {' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)


def check_consistency(doc):
    protocols = set(doc["protocols"])
    metrics = set(doc["metrics"])
    predictors = set(doc["predictors"])
    assert set(doc["evaluations"]) == protocols
    assert set(doc["metric_rankings"]) == protocols
    assert set(doc["kendall_tau_distance"]) == protocols
    for p in protocols:
        assert set(doc["evaluations"][p]) == predictors
        assert set(doc["metric_rankings"][p]) == metrics
    assert {e["label"] for e in doc["correlation_ranking"]} == predictors


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        zero_csv = os.path.join(tmp, "zero_target.csv")
        with open(zero_csv, "w") as f:
            f.write(ZERO_TARGET_CSV)
        runs = [
            ["@mtcars", "--target", "mpg", "--predictors", "disp,hp,wt",
             "--protocols", "insample,loo,kfold:5,holdout:0.75", "--seed", "42"],
            ["@iris", "--target", "petal_length", "--predictors",
             "sepal_length,sepal_width,petal_width", "--protocols", "insample,kfold:10"],
            [zero_csv, "--target", "y", "--predictors", "a,b",
             "--protocols", "insample,loo", "--zero-policy", "exclude"],
        ]
        for args in runs:
            doc = audit(cli, args)
            errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
            for e in errors:
                print(f"{args[0]}: {'/'.join(map(str, e.path))}: {e.message}")
            if errors:
                return 1
            check_consistency(doc)
            print(f"{args[0]}: ok")

        broken = dict(doc)
        del broken["seed"]
        broken["metrics"] = ["r2"]
        if validator.is_valid(broken):
            print("schema accepted a report with no seed and an unknown metric")
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
