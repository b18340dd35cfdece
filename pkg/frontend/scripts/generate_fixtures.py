#!/usr/bin/env python3
"""Regenerate the frontend test fixtures from the real service.

Run from the repo root after any engine or KB change:

    python3 frontend/scripts/generate_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from xca import load_default_kb, load_profile
from xca.loader import device_to_mapping
from xca.service import KbHolder, create_app

ROOT = Path(__file__).resolve().parent.parent.parent
OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app(KbHolder(load_default_kb())))

    rns = device_to_mapping(load_profile(ROOT / "profiles" / "rns.profile"))
    scs = device_to_mapping(load_profile(ROOT / "profiles" / "scs.profile"))
    gadget = device_to_mapping(load_profile(ROOT / "profiles" / "gadget.profile"))

    (OUT / "kb.json").write_text(json.dumps(client.get("/api/v1/kb").json(), indent=2))
    (OUT / "rns_device.json").write_text(json.dumps(rns, indent=2))
    (OUT / "scs_device.json").write_text(json.dumps(scs, indent=2))
    (OUT / "rns_report.json").write_text(
        json.dumps(client.post("/api/v1/analyze", json={"device": rns}).json(), indent=2)
    )
    (OUT / "scs_report.json").write_text(
        json.dumps(client.post("/api/v1/analyze", json={"device": scs}).json(), indent=2)
    )
    (OUT / "gadget_report.json").write_text(
        json.dumps(client.post("/api/v1/analyze", json={"device": gadget}).json(), indent=2)
    )
    (OUT / "diff_rns_vs_scs.json").write_text(
        json.dumps(
            client.post("/api/v1/diff", json={"base": rns, "modified": scs}).json(), indent=2
        )
    )
    error = client.post("/api/v1/analyze", json={"device": {"name": "broken"}})
    (OUT / "error_422.json").write_text(json.dumps(error.json(), indent=2))
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
