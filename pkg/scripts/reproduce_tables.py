#!/usr/bin/env python3
"""Regenerate the four benchmark tables as CSV files.

Usage: python scripts/reproduce_tables.py [output-dir]

Emits, per gamma:
  <scheme>_truncation_gamma<g>_<point>.csv   (points: first, third, center)
  <scheme>_global_gamma<g>.csv
and prints each table to stdout on the way.
"""

import pathlib
import sys

from nlcolloc.study import (StudyConfig, emit_table, report_filename,
                            run_global_study, run_truncation_study)

POINT_TAGS = {"first": "first", 1.0 / 3.0: "third", "center": "center"}


def main(argv):
    outdir = pathlib.Path(argv[1] if len(argv) > 1 else "tables")
    outdir.mkdir(parents=True, exist_ok=True)

    for scheme in ("plc", "pqc"):
        for gamma in (0.3, 0.7):
            config = StudyConfig(scheme=scheme, mode="truncation", gamma=gamma,
                                 levels=(64, 128, 256, 512),
                                 evalPoints=tuple(POINT_TAGS))
            for report, point in zip(run_truncation_study(config), POINT_TAGS):
                stem = report_filename(config)[:-4]
                path = outdir / f"{stem}_{POINT_TAGS[point]}.csv"
                text = emit_table(report, "csv")
                path.write_text(text)
                print(f"# {path} ({report.label})")
                print(text)

    for scheme in ("plc", "pqc"):
        for gamma in (0.0, 0.3, 0.7):
            config = StudyConfig(scheme=scheme, mode="global", gamma=gamma,
                                 levels=(16, 32, 64, 128))
            report = run_global_study(config)
            path = outdir / report_filename(config)
            text = emit_table(report, "csv")
            path.write_text(text)
            print(f"# {path}")
            print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
