#!/usr/bin/env python3
"""Validates benford_kit JSON output against the shipped schemas.

usage: check_json_schema.py BENFORD_KIT_EXE SCHEMA_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def report(exe, args, expected_code):
    proc = subprocess.run([exe, *args, "--format", "json"], capture_output=True, text=True)
    if proc.returncode != expected_code:
        raise SystemExit(f"{args}: exit {proc.returncode}, expected {expected_code}\n{proc.stderr}")
    return json.loads(proc.stdout)


def main():
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {name: json.loads((schema_dir / f"{name}.schema.json").read_text())
               for name in ("eval", "scan", "analyze")}
    for schema in schemas.values():
        jsonschema.Draft202012Validator.check_schema(schema)

    with tempfile.TemporaryDirectory() as tmp:
        sample = pathlib.Path(tmp, "sample.txt")
        subprocess.run([exe, "generate", "benford-exact", "-n", "5000", "--seed", "2",
                        "--out", str(sample)], check=True)
        ints = pathlib.Path(tmp, "ints.txt")
        ints.write_text("".join(f"{i}\n" for i in range(1, 10000)))
        cases = [
            ("eval", ["eval", "benford-exact"], 0),
            ("eval", ["eval", "uniform:lo=1,hi=2"], 3),
            ("eval", ["eval", "exponential:rate=1", "--digits", "2"], 0),
            ("eval", ["eval", "uniform:lo=1,hi=2", "--base", "16"], 3),
            ("scan", ["scan", "--points-per-decade", "16"], 0),
            ("analyze", ["analyze", str(sample)], 0),
            ("analyze", ["analyze", str(ints)], 3),
            ("analyze", ["analyze", str(sample), "--digits", "2", "--mad-threshold", "0.01"], 0),
        ]
        for name, args, code in cases:
            jsonschema.validate(report(exe, args, code), schemas[name],
                                cls=jsonschema.Draft202012Validator)
            print(f"ok  {name:8s} {' '.join(args[1:])}")


if __name__ == "__main__":
    main()
