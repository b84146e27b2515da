"""HTTP front end for one Session: JSON command API plus static UI assets.

The server is stateful and single-session: GET /api/layout returns the
current document, POST /api/{reorder,hide,drill,back} applies a command
and returns the new document together with a marble transition plan, and
GET /api/detail/{nodeId} summarizes one node. Commands are serialized
behind a lock, so concurrent clients see a consistent revision stream.
"""

from __future__ import annotations

import json
import logging
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import urlsplit

from .session import Session, SessionError

log = logging.getLogger("hidmap.server")

WEBUI_DIR = Path(__file__).parent / "webui"
_COMMANDS = ("/api/reorder", "/api/hide", "/api/drill", "/api/back")


class ApiServer:
    """Binds a Session to a ThreadingHTTPServer."""

    def __init__(self, session: Session, host: str = "127.0.0.1",
                 port: int = 8000, webui: Optional[Path] = None):
        self.session = session
        self.host = host
        self.port = port
        self.webui = Path(webui) if webui is not None else WEBUI_DIR
        self.lock = threading.Lock()
        self.httpd: Optional[ThreadingHTTPServer] = None

    def start(self) -> ThreadingHTTPServer:
        """Bind the socket; raises OSError if the port is taken."""
        handler = _handler_for(self)
        self.httpd = ThreadingHTTPServer((self.host, self.port), handler)
        self.port = self.httpd.server_address[1]
        return self.httpd

    def serve_forever(self):
        if self.httpd is None:
            self.start()
        log.info("serving on http://%s:%d/", self.host, self.port)
        self.httpd.serve_forever()

    def shutdown(self):
        if self.httpd is not None:
            self.httpd.shutdown()
            self.httpd.server_close()


def _handler_for(srv: ApiServer):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"
        server_version = "hidmap"

        # -- plumbing ----------------------------------------------------

        def log_message(self, fmt, *args):
            log.debug("%s " + fmt, self.address_string(), *args)

        def _send_json(self, status: int, payload: dict):
            body = json.dumps(payload, sort_keys=True).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type",
                             "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _send_error_json(self, status: int, code: str, message: str):
            self._send_json(status, {"error": code, "message": message})

        def _read_body(self) -> Optional[dict]:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if not raw:
                return {}
            try:
                data = json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError):
                return None
            return data if isinstance(data, dict) else None

        # -- routes ------------------------------------------------------

        def do_GET(self):
            path = urlsplit(self.path).path
            if path == "/api/layout":
                with srv.lock:
                    doc = srv.session.document().to_dict()
                self._send_json(200, doc)
            elif path.startswith("/api/detail/"):
                self._detail(path[len("/api/detail/"):])
            elif path.startswith("/api/"):
                self._send_error_json(404, "not-found",
                                      f"no such endpoint: {path}")
            else:
                self._static(path)

        def do_POST(self):
            path = urlsplit(self.path).path
            if path not in _COMMANDS:
                self._send_error_json(404, "not-found",
                                      f"no such endpoint: {path}")
                return
            body = self._read_body()
            if body is None:
                self._send_error_json(400, "bad-request",
                                      "body must be a JSON object")
                return
            try:
                with srv.lock:
                    doc, plan = self._apply(path, body)
            except SessionError as exc:
                self._send_error_json(exc.http_status, exc.code, str(exc))
                return
            except KeyError as exc:
                self._send_error_json(400, "bad-request",
                                      f"missing field {exc.args[0]!r}")
                return
            log.info("%s %s -> revision %d", path, body, doc.revision)
            self._send_json(200, {
                "revision": doc.revision,
                "document": doc.to_dict(),
                "transition": plan.to_dict(),
            })

        def _apply(self, path: str, body: dict):
            if path == "/api/reorder":
                return srv.session.reorder(body["from"], body["to"])
            if path == "/api/hide":
                hidden = body["hidden"]
                if not isinstance(hidden, bool):
                    raise SessionError("field 'hidden' must be a boolean")
                return srv.session.set_hidden(body["dim"], hidden)
            if path == "/api/drill":
                return srv.session.drill(body["nodeId"])
            return srv.session.back()

        def _detail(self, tail: str):
            try:
                node_id = int(tail)
            except ValueError:
                self._send_error_json(400, "bad-request",
                                      f"node id {tail!r} is not an integer")
                return
            try:
                with srv.lock:
                    out = srv.session.detail(node_id)
            except SessionError as exc:
                self._send_error_json(exc.http_status, exc.code, str(exc))
                return
            self._send_json(200, out)

        def _static(self, path: str):
            name = path.lstrip("/") or "index.html"
            root = srv.webui.resolve()
            try:
                target = (root / name).resolve()
            except OSError:
                target = None
            if target is None or root not in target.parents \
                    or not target.is_file():
                self._send_error_json(404, "not-found",
                                      f"no such file: {path}")
                return
            ctype = mimetypes.guess_type(target.name)[0] or \
                "application/octet-stream"
            body = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler
