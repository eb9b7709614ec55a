"""Write the scripted action files and manifest for the evaluate fixture suite."""

from __future__ import annotations

import json
import pathlib

from cbddl.parser import parse_file
from cbddl.scripted import pick_and_place
from cbddl.sim import write_actions

ROOT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"
SUITE = ROOT / "suite"

TASKS = [
    ("static_obstacles_1", "L0", "apple_1", "plate_1"),
    ("dynamic_obstacles_1", "L1", "tomato_1", "region_B"),
]


def main() -> None:
    (SUITE / "actions").mkdir(parents=True, exist_ok=True)
    manifest = {"tasks": []}
    for name, level, obj, support in TASKS:
        spec = parse_file(ROOT / "corpus" / f"{name}.cbddl")
        (SUITE / "actions" / f"{name}.jsonl").write_text(write_actions(pick_and_place(spec, obj, support)))
        manifest["tasks"].append({"path": f"../corpus/{name}.cbddl", "level": level, "episodes": 10, "seed": 7})
    (SUITE / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
