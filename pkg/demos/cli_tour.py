#!/usr/bin/env python3
"""Drive the command-line interface end to end from Python.

Writes a map to a temp file, then runs every subcommand in-process and
prints the enveloped JSON each one emits.  Exit codes: 0 for a clean
result, 1 when a property fails or unfolding is blocked, 2 for bad input.
"""

import contextlib
import io
import json
import tempfile

from dpl.cli import main as cli


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli(argv)
    return code, buf.getvalue()


def show(argv):
    code, out = run(argv)
    envelope = json.loads(out)
    summary = envelope.get("summary", "")
    print(f"$ dpl {' '.join(argv)}")
    print(f"  exit {code}: {summary}")
    return envelope


def main():
    tent = {"breakpoints": [["0", "0"], ["1/2", "3/4"]], "degree": 0}
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(tent, fh)
        path = fh.name

    show(["analyze", path])
    show(["unfold", path])
    show(["unfold", path, "--arc", "1/4", "3/8"])
    show(["hopf", path])
    show(["group", "binary_icosahedral"])
    show(["group", "cyclic", "4"])
    show(["dcover-check", "--upto", "6"])
    show(["sweep", "--census"])
    show(["sweep", "--random", "7"])
    envelope = show(["selftest", "--seed", "2026"])
    suites = envelope["result"]["suites"]
    print(f"  {len(suites)} suites, failures: {sum(s['failures'] for s in suites.values())}")

    code, out = run(["analyze", "/nonexistent.json"])
    print(f"$ dpl analyze /nonexistent.json\n  exit {code}: {json.loads(out)['summary']}")


if __name__ == "__main__":
    main()
