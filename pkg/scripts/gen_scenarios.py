#!/usr/bin/env python3
"""Regenerate the scenario files shipped as package data.

Every shipped file is the canonical serialization of a built-in model
with default parameters, so the test suite can verify the data files
byte for byte against the builders.
"""

from pathlib import Path

from tvd import build_model_scenario, serialize_scenario

SHIPPED = {
    "cpt_link_toy": "cpt-link",
    "edm_spin_half": "edm",
    "kaon_decay": "kaon-decay",
    "kaon_oscillation": "kaon-oscillation",
    "t_symmetric_s": "t-symmetric-s",
    "three_channel_loop": "three-channel-loop",
}


def main() -> None:
    out_dir = Path(__file__).resolve().parents[1] / "src" / "tvd" / "data" / "scenarios"
    out_dir.mkdir(parents=True, exist_ok=True)
    for stem, model in sorted(SHIPPED.items()):
        payload = serialize_scenario(build_model_scenario(model))
        (out_dir / f"{stem}.json").write_bytes(payload)
        print(f"wrote {stem}.json ({len(payload)} bytes)")


if __name__ == "__main__":
    main()
