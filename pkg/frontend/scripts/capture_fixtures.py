"""Snapshot real service responses into tests/fixtures/.

The frontend test suite replays these bodies through a fake fetch, so the
fakes can never drift from what the service actually sends. Rerun after any
backend document-format change:

    python3 frontend/scripts/capture_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from complykit.catalog_io import serialize_catalog
from complykit.sample import sample_catalog
from complykit.service import create_app

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    def save(name: str, body: bytes) -> None:
        OUT.joinpath(name).write_bytes(body)
        written.append(name)

    with TestClient(create_app()) as client:
        catalog_bytes = serialize_catalog(sample_catalog())
        upload = client.post("/catalogs", content=catalog_bytes)
        fingerprint = upload.json()["fingerprint"]

        save("catalog.json", client.get(f"/catalogs/{fingerprint}").content)
        save("effort.json", client.get(f"/catalogs/{fingerprint}/effort").content)
        save("importance.json", client.get(f"/catalogs/{fingerprint}/importance").content)

        aid = client.post(
            "/assessments",
            json={"catalog_fingerprint": fingerprint, "subject": "plant-7"},
        ).json()["id"]
        save("assessment_empty.json", client.get(f"/assessments/{aid}").content)
        save("summary_empty.json", client.get(f"/assessments/{aid}/summary").content)
        save(
            "whatif_ia2_full.json",
            client.post(
                f"/assessments/{aid}/what-if", json={"overlay": {"IA/2": "full"}}
            ).content,
        )

        client.put(
            f"/assessments/{aid}/ratings/IA/1",
            json={"rating": "full", "expected_revision": 0},
        )
        save("assessment_ia1_full.json", client.get(f"/assessments/{aid}").content)
        save("summary_ia1_full.json", client.get(f"/assessments/{aid}/summary").content)

        client.put(
            f"/assessments/{aid}/ratings/IA/2",
            json={"rating": "partial", "expected_revision": 1},
        )
        save("summary_ia1_full_ia2_partial.json", client.get(f"/assessments/{aid}/summary").content)

        screening = client.post(
            "/screening",
            json={
                "profile": {
                    "certifications": 1,
                    "industry40_references": 2,
                    "documented_topics": ["authentication", "encryption", "user_management"],
                    "matched_keywords": ["remote access", "IoT", "Industry 4.0"],
                }
            },
        )
        save("screening_pass.json", screening.content)

    index = {"fingerprint": fingerprint, "assessment_id": aid, "files": sorted(written)}
    OUT.joinpath("index.json").write_text(json.dumps(index, indent=2) + "\n")
    for name in sorted(written):
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
