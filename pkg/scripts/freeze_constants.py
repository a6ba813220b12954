"""Recompute the frozen regression constants and rewrite src/ggl/data/frozen.json."""

import json
from pathlib import Path

from ggl.fixtures import compute_frozen

OUT = Path(__file__).resolve().parents[1] / "src" / "ggl" / "data" / "frozen.json"

if __name__ == "__main__":
    frozen = compute_frozen()
    OUT.write_text(json.dumps(frozen, indent=2, sort_keys=True) + "\n")
    print(json.dumps(frozen, indent=2, sort_keys=True))
