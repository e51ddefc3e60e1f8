"""
Sweeping ell and writing a CSV table
====================================

The same computation the ``pkpcount table`` command performs, done from
Python and read back with the csv module.
"""

import csv
import tempfile
from fractions import Fraction
from pathlib import Path

from pkpcount.cli import main

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "pkp_sweep.csv"
    main(["table", "--variant", "pkp", "--q", "251", "--ell", "30..41", "--m", "69", "--digits", "6",
          "--out", str(path)])
    with path.open() as fh:
        rows = list(csv.DictReader(fh))

for r in rows:
    exact = Fraction(int(r["exact_num"]), int(r["exact_den"]))
    print(f"ell={r['ell']:>3s}  exact={r['exact_decimal']:>12s}  heuristic={r['heuristic_decimal']:>12s}  "
          f"float={float(exact):.6g}")
