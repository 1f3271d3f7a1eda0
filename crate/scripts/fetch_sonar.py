#!/usr/bin/env python3
"""Fetch the Sonar (mines vs. rocks) dataset into data/sonar.csv.

Tries the UCI repository first. If it is unreachable, falls back to the copy
bundled in the `keel_ds` wheel on PyPI (KEEL rounds the features to three
decimals). Either source is checked for 208 rows, 60 features and a 111/97
M/R split before anything is written; the KEEL file is also checked against
a pinned SHA-256.

Usage: python3 scripts/fetch_sonar.py [--out data/sonar.csv]
"""

import argparse
import hashlib
import io
import subprocess
import sys
import tempfile
import urllib.request
import zipfile
from pathlib import Path

UCI_URL = (
    "https://archive.ics.uci.edu/ml/machine-learning-databases/"
    "undocumented/connectionist-bench/sonar/sonar.all-data"
)
KEEL_WHEEL = "keel_ds==0.2.5"
KEEL_MEMBER = "keel_ds/data/balanced/raw/sonar.dat"
KEEL_SHA256 = "3db22f5ece13d019e43617217524f1072b1eae5275c69040517b784c52427b0d"


def parse_rows(text):
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("@"):
            continue
        cells = [c.strip() for c in line.split(",")]
        *features, label = cells
        rows.append(([float(v) for v in features], label))
    return rows


def check(rows):
    if len(rows) != 208:
        raise ValueError(f"expected 208 rows, got {len(rows)}")
    if any(len(f) != 60 for f, _ in rows):
        raise ValueError("expected 60 features per row")
    labels = [l for _, l in rows]
    if (labels.count("M"), labels.count("R")) != (111, 97):
        raise ValueError("unexpected class balance")


def from_uci():
    with urllib.request.urlopen(UCI_URL, timeout=20) as resp:
        return resp.read().decode("ascii")


def from_keel():
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "--no-deps", "-q", "-d", tmp, KEEL_WHEEL],
            check=True,
        )
        wheel = next(Path(tmp).glob("*.whl"))
        raw = zipfile.ZipFile(wheel).read(KEEL_MEMBER)
    digest = hashlib.sha256(raw).hexdigest()
    if digest != KEEL_SHA256:
        raise ValueError(f"checksum mismatch for {KEEL_MEMBER}: {digest}")
    return raw.decode("ascii")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "sonar.csv"))
    args = ap.parse_args()

    rows = None
    for name, fetch in (("UCI", from_uci), ("KEEL (PyPI)", from_keel)):
        try:
            rows = parse_rows(fetch())
            check(rows)
            print(f"fetched Sonar from {name}", file=sys.stderr)
            break
        except Exception as err:  # noqa: BLE001
            print(f"{name} failed: {err}", file=sys.stderr)
            rows = None
    if rows is None:
        sys.exit("could not fetch the Sonar dataset")

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    buf.write(",".join([f"f{i}" for i in range(60)] + ["label"]) + "\n")
    for features, label in rows:
        buf.write(",".join(repr(v) for v in features) + f",{label}\n")
    out.write_text(buf.getvalue())
    print(f"wrote {out}", file=sys.stderr)


if __name__ == "__main__":
    main()
