"""The JSON HTTP API: everything the browser UI uses, from the shell.

ApiServer wraps a Session. GET /api/layout returns the current document;
POST /api/reorder, /api/hide, /api/drill, /api/back mutate it and return
{revision, document, transition}; GET /api/detail/{nodeId} summarizes one
region. Run from the repository root:

    python3 demos/05_http_api.py
"""

from __future__ import annotations

import json
import pathlib
import threading
import urllib.error
import urllib.request

from hidmap import ApiServer, Session, parse_csv

HERE = pathlib.Path(__file__).parent


def call(base: str, path: str, payload: dict | None = None) -> dict:
    req = urllib.request.Request(base + path)
    if payload is not None:
        req.data = json.dumps(payload).encode()
        req.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(req) as resp:
            return json.loads(resp.read())
    except urllib.error.HTTPError as exc:
        return json.loads(exc.read())


def main() -> None:
    ds = parse_csv((HERE / "data" / "demographics.csv").read_text())
    server = ApiServer(Session(ds, seed=7), port=0)  # ephemeral port
    server.start()
    threading.Thread(target=server.serve_forever, daemon=True).start()
    base = f"http://127.0.0.1:{server.port}"
    print(f"serving on {base}")
    try:
        doc = call(base, "/api/layout")
        print(f"\nGET /api/layout -> revision {doc['revision']}, "
              f"{doc['sides']} sides, "
              f"{len(doc['legend'])} legend entries")

        out = call(base, "/api/reorder", {"from": 0, "to": 2})
        print(f"POST /api/reorder {{from: 0, to: 2}} -> revision "
              f"{out['revision']}, {len(out['transition']['matches'])} "
              f"marbles matched")

        child = out["document"]["tree"]["children"][0]
        out = call(base, "/api/drill", {"nodeId": child["id"]})
        crumb = out["document"]["breadcrumb"]
        print(f"POST /api/drill -> breadcrumb "
              f"{[(c['dimension'], c['value']) for c in crumb]}")

        grand = out["document"]["tree"]["children"][0]
        detail = call(base, f"/api/detail/{grand['id']}")
        names = ", ".join(f"{d}={v}" for d, v in detail["valuePath"])
        print(f"GET /api/detail -> {names}: {detail['percentage']:.1f}% "
              f"of the drilled selection")

        out = call(base, "/api/back", {})
        print(f"POST /api/back -> revision {out['revision']}, breadcrumb "
              f"{out['document']['breadcrumb']}")

        err = call(base, "/api/hide", {"dim": 99, "hidden": True})
        print(f"POST /api/hide with a bad dimension -> error "
              f"{err['error']!r}: {err['message']}")
    finally:
        server.shutdown()
    print("\nserver stopped")


if __name__ == "__main__":
    main()
