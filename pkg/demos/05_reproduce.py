"""
Full synthetic study
====================

Ten simulated subjects, 100 trials each, analyzed end to end. Same as
`ssvep-duty reproduce --out <dir>`.
"""

import sys
import tempfile
from pathlib import Path

from ssvep_duty.protocol import DEFAULT_SEED, reproduce

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp()) / "run"
bundle = reproduce(DEFAULT_SEED, out)

for f, d in sorted(bundle.selected.items()):
    kw = bundle.pooled[f]
    print(f"{f:g} Hz  best {d:g}%  H={kw.h_statistic:.0f}  p={kw.p_value:g}")
print("subject cells picking 85%:", bundle.cells_selecting(85.0), "/ 40")
print("outputs in", out)
for p in sorted(out.iterdir()):
    print("  ", p.name)
