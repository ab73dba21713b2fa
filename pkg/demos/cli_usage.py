"""Drive the command-line interface from Python with a scenario file."""

import json
from pathlib import Path
import tempfile

from mimo_tradeoff.cli import main

with tempfile.TemporaryDirectory() as tmp:
    scenario = Path(tmp) / "scenario.json"
    scenario.write_text(json.dumps({
        "K": 8, "M_t": 64, "N": 16, "rho_d": 1.0,
        "sweep": {"variable": "n", "start": 8, "stop": 64, "steps": 8},
        "trials": 5000, "master_seed": 3,
    }))
    for command in ("sweep-antennas", "optimize", "validate"):
        out = Path(tmp) / f"{command}.csv"
        main([command, "--config", str(scenario), "--out", str(out)])
        lines = out.read_text().splitlines()
        body = [line for line in lines if not line.startswith("#")]
        print(f"$ mimo-tradeoff {command} --config scenario.json")
        print("\n".join(body[:6]))
        print()
