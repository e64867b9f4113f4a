"""Embedded reference dataset: published tiny-part rows used by bound checks.

The rows are kept verbatim (as decimal strings) in a versioned CSV fixture;
they are inputs to conjecture checks and are never recomputed.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

from mpmath import mpf

SOURCE_TABLE = "TABLE"
SOURCE_MASLANKA = "MASLANKA"
SOURCE_PLOT_READ = "PLOT_READ"


@dataclass(frozen=True)
class ReferenceRow:
    source: str
    n: int
    ratio: str
    tiny: str
    two_log_n: str | None

    def tiny_value(self) -> mpf:
        return mpf(self.tiny)

    def ratio_value(self) -> mpf:
        return mpf(self.ratio)


_ROWS: tuple | None = None


def reference_rows(source: str | None = None) -> tuple:
    """All embedded rows, optionally filtered to one source tag."""
    global _ROWS
    if _ROWS is None:
        path = resources.files("likeiper.data").joinpath("reference_rows.csv")
        rows = []
        with path.open("r", encoding="ascii") as fh:
            reader = csv.DictReader(
                line for line in fh if not line.startswith("#")
            )
            for rec in reader:
                rows.append(
                    ReferenceRow(
                        source=rec["source"],
                        n=int(rec["n"]),
                        ratio=rec["ratio"],
                        tiny=rec["tiny"],
                        two_log_n=rec["two_log_n"] or None,
                    )
                )
        _ROWS = tuple(rows)
    if source is None:
        return _ROWS
    if source not in (SOURCE_TABLE, SOURCE_MASLANKA, SOURCE_PLOT_READ):
        raise ValueError(f"unknown reference source {source!r}")
    return tuple(r for r in _ROWS if r.source == source)


def zeros_fixture_path() -> str:
    """Path of the bundled 100-ordinate zeros sample."""
    return str(resources.files("likeiper.data").joinpath("zeros_first100.txt"))
