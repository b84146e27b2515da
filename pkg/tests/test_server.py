"""Tests for the HTTP API: routing, errors, and command serialization."""

from __future__ import annotations

import json
import logging
import random
import threading
from http.client import HTTPConnection

import pytest

from helpers import random_dataset

from hidmap.dataset import parse_csv
from hidmap.server import ApiServer
from hidmap.session import Session


def start_server(session) -> ApiServer:
    server = ApiServer(session, port=0)
    httpd = server.start()
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return server


@pytest.fixture()
def srv():
    ds, _ = random_dataset(random.Random(9), 3, 3, 150)
    server = start_server(Session(ds, seed=2))
    yield server
    server.shutdown()


def call(server: ApiServer, method: str, path: str, body=None):
    conn = HTTPConnection("127.0.0.1", server.port, timeout=10)
    data = None
    headers = {}
    if body is not None:
        data = json.dumps(body).encode("utf-8")
        headers["Content-Type"] = "application/json"
    conn.request(method, path, body=data, headers=headers)
    resp = conn.getresponse()
    raw = resp.read()
    ctype = resp.getheader("Content-Type") or ""
    conn.close()
    if ctype.startswith("application/json"):
        return resp.status, json.loads(raw)
    return resp.status, raw


class TestLayoutEndpoint:
    def test_initial_layout(self, srv):
        status, doc = call(srv, "GET", "/api/layout")
        assert status == 200
        assert doc["revision"] == 0
        assert doc["sides"] == 3
        assert doc["tree"]["count"] == 150
        assert len(doc["legend"]) == 3

    def test_unknown_api_route(self, srv):
        status, err = call(srv, "GET", "/api/nope")
        assert status == 404 and err["error"] == "not-found"
        status, err = call(srv, "POST", "/api/layout", {})
        assert status == 404 and err["error"] == "not-found"


class TestCommands:
    def test_reorder_roundtrip(self, srv):
        status, out = call(srv, "POST", "/api/reorder",
                           {"from": 2, "to": 0})
        assert status == 200
        assert out["revision"] == 1
        assert out["document"]["revision"] == 1
        plan = out["transition"]
        assert set(plan) == {"matches", "fadeIn", "fadeOut", "constants"}
        status, doc = call(srv, "GET", "/api/layout")
        assert doc["revision"] == 1

    def test_reorder_bad_position(self, srv):
        status, err = call(srv, "POST", "/api/reorder",
                           {"from": 7, "to": 0})
        assert status == 400
        assert err["error"] == "invalid-position"
        assert "7" in err["message"]

    def test_missing_field(self, srv):
        status, err = call(srv, "POST", "/api/reorder", {"from": 1})
        assert status == 400 and err["error"] == "bad-request"
        assert "to" in err["message"]

    def test_malformed_json(self, srv):
        conn = HTTPConnection("127.0.0.1", srv.port, timeout=10)
        conn.request("POST", "/api/hide", body=b"{nope",
                     headers={"Content-Type": "application/json"})
        resp = conn.getresponse()
        out = json.loads(resp.read())
        conn.close()
        assert resp.status == 400 and out["error"] == "bad-request"

    def test_hide_and_errors(self):
        ds = parse_csv("g,a\nF,teen\nM,teen\nM,adult\n")
        server = start_server(Session(ds))
        try:
            status, out = call(server, "POST", "/api/hide",
                               {"dim": 0, "hidden": True})
            assert status == 200
            status, err = call(server, "POST", "/api/hide",
                               {"dim": 1, "hidden": True})
            assert status == 409
            assert err["error"] == "last-visible-dimension"
            status, err = call(server, "POST", "/api/hide",
                               {"dim": 0, "hidden": "yes"})
            assert status == 400
            status, err = call(server, "POST", "/api/hide",
                               {"dim": 9, "hidden": True})
            assert status == 404 and err["error"] == "unknown-dimension"
        finally:
            server.shutdown()

    def test_drill_unknown_node(self, srv):
        status, err = call(srv, "POST", "/api/drill", {"nodeId": 123456789})
        assert status == 404 and err["error"] == "unknown-node"

    def test_back_empty_stack(self, srv):
        status, err = call(srv, "POST", "/api/back", {})
        assert status == 409 and err["error"] == "empty-stack"

    def test_drill_and_back_flow(self, srv):
        _, doc = call(srv, "GET", "/api/layout")
        child_id = doc["tree"]["children"][0]["id"]
        status, out = call(srv, "POST", "/api/drill", {"nodeId": child_id})
        assert status == 200
        assert out["document"]["breadcrumb"]
        status, out = call(srv, "POST", "/api/back")
        assert status == 200
        assert out["document"]["breadcrumb"] == []
        assert out["revision"] == 2

    def test_one_log_line_per_command(self, srv, caplog):
        with caplog.at_level(logging.INFO, logger="hidmap.server"):
            call(srv, "POST", "/api/reorder", {"from": 0, "to": 1})
            call(srv, "POST", "/api/back", {})          # fails: no stack
            call(srv, "GET", "/api/layout")
        lines = [r for r in caplog.records if "revision" in r.getMessage()]
        assert len(lines) == 1
        assert "/api/reorder" in lines[0].getMessage()


class TestDetail:
    def test_detail_root(self, srv):
        _, doc = call(srv, "GET", "/api/layout")
        status, out = call(srv, "GET", f"/api/detail/{doc['tree']['id']}")
        assert status == 200
        assert out["percentage"] == 100.0
        assert out["revision"] == 0

    def test_detail_errors(self, srv):
        status, err = call(srv, "GET", "/api/detail/abc")
        assert status == 400 and err["error"] == "bad-request"
        status, err = call(srv, "GET", "/api/detail/31337")
        assert status == 404 and err["error"] == "unknown-node"


class TestStatic:
    def test_index_served(self, srv):
        status, body = call(srv, "GET", "/")
        assert status == 200
        assert b"hidmap" in body

    def test_missing_asset(self, srv):
        status, err = call(srv, "GET", "/missing.js")
        assert status == 404

    def test_no_path_traversal(self, srv):
        status, _ = call(srv, "GET", "/../pyproject.toml")
        assert status == 404
        status, _ = call(srv, "GET", "/..%2f..%2fetc%2fpasswd")
        assert status == 404


class TestSerialization:
    def test_concurrent_commands_stay_consistent(self, srv):
        ok = []
        errors = []

        def worker(worker_seed):
            rng = random.Random(worker_seed)
            for _ in range(15):
                verb = rng.randrange(4)
                if verb == 0:
                    status, _ = call(srv, "POST", "/api/reorder",
                                     {"from": rng.randrange(3),
                                      "to": rng.randrange(3)})
                elif verb == 1:
                    status, _ = call(srv, "POST", "/api/hide",
                                     {"dim": rng.randrange(3),
                                      "hidden": bool(rng.randrange(2))})
                elif verb == 2:
                    status, _ = call(srv, "POST", "/api/back")
                else:
                    status, _ = call(srv, "GET", "/api/layout")
                    continue
                if status == 200:
                    ok.append(1)
                elif status >= 500:
                    errors.append(status)

        threads = [threading.Thread(target=worker, args=(i,))
                   for i in range(6)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert errors == []
        _, doc = call(srv, "GET", "/api/layout")
        assert doc["revision"] == len(ok)
        st = srv.session.state
        assert len(st.order) >= 1
        assert set(st.order).isdisjoint(st.hidden)
