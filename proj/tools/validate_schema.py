#!/usr/bin/env python3
"""Validate qes JSON output against schemas/qes.schema.json.

usage: validate_schema.py KIND FILE [FILE ...]
KIND is one of spec, solve, verify, limits, matrix, grid. The matrix kind also
checks that entries form a dim x dim array.
"""
import json
import pathlib
import sys

import jsonschema

SCHEMA = pathlib.Path(__file__).resolve().parent.parent / "schemas" / "qes.schema.json"
KINDS = ("spec", "solve", "verify", "limits", "matrix", "grid")


def validator(kind):
    doc = json.loads(SCHEMA.read_text())
    schema = dict(doc)
    schema["$ref"] = f"#/$defs/{kind}"
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def main(argv):
    if len(argv) < 3 or argv[1] not in KINDS:
        print(__doc__, file=sys.stderr)
        return 1
    v = validator(argv[1])
    bad = 0
    for path in argv[2:]:
        data = json.loads(pathlib.Path(path).read_text())
        errors = sorted(v.iter_errors(data), key=lambda e: list(e.path))
        if argv[1] == "matrix" and not errors:
            n = data["dim"]
            if len(data["entries"]) != n or any(len(r) != n for r in data["entries"]):
                print(f"{path}: entries are not {n} x {n}")
                bad += 1
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.path))}: {e.message}")
        bad += bool(errors)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
