"""Validates CLI reports against the published schema, checks that reports are
byte-identical across runs, and that cache hits equal fresh results."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, ROOT = sys.argv[1], sys.argv[2]

COMMANDS = [
    ["decide", "x - y + z = 0"],
    ["decide", "x + y = z*w"],
    ["decide", "z + w = 0"],
    ["decide", "x^2 + y^2 = z^2"],
    ["search", "x+y=z", "--colors", "2", "--find", "rado-number"],
    ["search", "--ap3", "--colors", "2", "--find", "rado-number"],
    ["search", "x+y=z", "--colors", "2", "--max-n", "4", "--find", "witness"],
    ["search", "x+y=z", "--colors", "3", "--max-n", "14", "--find", "witness", "--node-budget", "40"],
    ["construct", "--op", "lift", "--base", "2x1+7x2-2x3", "--F", "{1};{};{1,2}"],
    ["construct", "--op", "reciprocal", "--poly", "x+y-z", "--point", "x=2,y=3,z=5"],
    ["construct", "--op", "multiple", "--poly", "x+y-z", "--by", "w"],
    ["construct", "--op", "sum", "--left", "x-y", "--right", "z-w", "--point-left", "x=1,y=1",
     "--point-right", "z=2,w=2"],
    ["construct", "--op", "factor-check", "--poly", "(z+w)*(u+3*v)", "--factors", "z+w;u+3*v"],
    ["symbolic", "--verify", "ap3"],
    ["symbolic", "--verify", "chain", "--k", "2", "--n", "2,1,3"],
    ["symbolic", "--verify", "xyzw"],
    ["symbolic", "--verify", "ap3", "--no-idempotent"],
    ["batch", "--corpus", os.path.join(ROOT, "corpus", "equations.jsonl")],
]


def run(args, env=None):
    p = subprocess.run([BIN] + args, capture_output=True, text=True, env=env, check=False)
    return p.returncode, p.stdout


def main():
    with open(os.path.join(ROOT, "schemas", "report.schema.json"), encoding="utf-8") as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = []

    base_env = {k: v for k, v in os.environ.items() if k != "PARTREG_CACHE_DIR"}
    for cmd in COMMANDS:
        code, out = run(cmd + ["--no-cache"], base_env)
        if code > 3:
            failures.append(f"{cmd}: exit {code}")
            continue
        report = json.loads(out)
        for err in validator.iter_errors(report):
            failures.append(f"{cmd}: schema: {err.message} at {list(err.absolute_path)}")
        if report.get("exit_code") != code:
            failures.append(f"{cmd}: exit_code field {report.get('exit_code')} != {code}")
        again = run(cmd + ["--no-cache", "--no-timing"], base_env)[1]
        if again != run(cmd + ["--no-cache", "--no-timing"], base_env)[1]:
            failures.append(f"{cmd}: output differs between runs")

    with tempfile.TemporaryDirectory() as cache_dir:
        env = dict(base_env, PARTREG_CACHE_DIR=cache_dir)
        for cmd in COMMANDS[:7] + COMMANDS[8:16]:
            first = json.loads(run(cmd + ["--no-timing"], env)[1])
            second = json.loads(run(cmd + ["--no-timing"], env)[1])
            fresh = json.loads(run(cmd + ["--no-cache", "--no-timing"], base_env)[1])
            if first["cached"] or not second["cached"]:
                failures.append(f"{cmd}: cache flags {first['cached']}, {second['cached']}")
            if second["result"] != fresh["result"] or second["exit_code"] != fresh["exit_code"]:
                failures.append(f"{cmd}: cache hit differs from a fresh run")

    for f in failures:
        print("FAIL", f)
    print(f"{len(COMMANDS)} commands checked, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
