"""HTTP compute service for the explorer.

Wire protocol (JSON over HTTP, stateless, deterministic):

    GET  /health   -> {"status": "ok"}
    GET  /catalog  -> {"curves": [descriptor, ...]}
    POST /compute  -> scene document in, geometry payload out

Identical /compute requests produce byte-identical responses. Scene errors
come back as 400 with {"error": message}.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .scene import CATALOG, SceneError, compute_scene, load_scene, payload_json


def _catalog_json() -> str:
    return json.dumps({"curves": CATALOG}, sort_keys=True, separators=(",", ":"))


class _Handler(BaseHTTPRequestHandler):
    server_version = "caustics"
    protocol_version = "HTTP/1.1"

    def _send(self, code: int, body: str) -> None:
        data = body.encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def do_OPTIONS(self):
        self._send(204, "")

    def do_GET(self):
        if self.path == "/health":
            self._send(200, '{"status":"ok"}')
        elif self.path == "/catalog":
            self._send(200, _catalog_json())
        else:
            self._send(404, '{"error":"not found"}')

    def do_POST(self):
        if self.path != "/compute":
            self._send(404, '{"error":"not found"}')
            return
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length).decode("utf-8")
        try:
            scene = load_scene(raw)
            payload = compute_scene(scene)
        except (SceneError, ValueError) as exc:
            self._send(400, json.dumps({"error": str(exc)}))
            return
        self._send(200, payload_json(payload))


def make_server(port: int, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    return ThreadingHTTPServer((host, port), _Handler)


def serve(port: int, host: str = "127.0.0.1") -> None:
    """Run the compute service until interrupted."""
    httpd = make_server(port, host)
    try:
        httpd.serve_forever()
    finally:
        httpd.server_close()
