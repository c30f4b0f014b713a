"""Serve-mode contract against a real process: concurrent clients, one
writer at a time, document persisted after every acknowledged mutation."""

from __future__ import annotations

import socket
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import pytest
import requests

from modulecad import load_drawing
from modulecad.cli import cli_dispatch

PIPE = {"axis": [[0, 0], [9000, 0]], "diameter": 90, "position": "C1"}


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture
def live_server(tmp_path):
    doc = tmp_path / "doc.json"
    assert cli_dispatch(["new", str(doc)]) == 0
    port = free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "modulecad", "serve", str(doc),
         "--port", str(port)],
        stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    base = f"http://127.0.0.1:{port}"
    deadline = time.time() + 30
    try:
        while True:
            try:
                if requests.get(f"{base}/api/schemas", timeout=1).ok:
                    break
            except requests.ConnectionError:
                pass
            if time.time() > deadline:
                raise RuntimeError("server did not come up")
            time.sleep(0.2)
        yield base, doc
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_concurrent_mutations_all_land(live_server):
    base, doc = live_server

    def create(i: int) -> int:
        params = dict(PIPE, position=f"P{i}")
        r = requests.post(f"{base}/api/modules",
                          json={"kind": "pipeline", "params": params}, timeout=10)
        assert r.status_code == 201, r.text
        return r.json()["id"]

    with ThreadPoolExecutor(max_workers=8) as pool:
        ids = list(pool.map(create, range(16)))
    assert len(set(ids)) == 16

    listed = requests.get(f"{base}/api/modules", timeout=10).json()
    assert sorted(m["id"] for m in listed) == sorted(ids)

    # every acknowledged mutation reached the file; the file is a valid doc
    on_disk = load_drawing(doc)
    assert sorted(m.id for m in on_disk.modules) == sorted(ids)
    assert all(on_disk.verify_module(i) for i in ids)


def test_reads_are_consistent_snapshots_during_writes(live_server):
    base, _doc = live_server
    stop = False

    def writer() -> None:
        for i in range(25):
            requests.post(f"{base}/api/modules",
                          json={"kind": "pipeline",
                                "params": dict(PIPE, position=f"W{i}")},
                          timeout=10)

    def reader() -> list[str]:
        problems = []
        while not stop:
            body = requests.get(f"{base}/api/drawing", timeout=10).json()
            try:
                ids = [m["id"] for m in body["modules"]]
                if len(ids) != len(set(ids)):
                    problems.append("duplicate ids in snapshot")
                for m in body["modules"]:
                    if not m["elements"]:
                        problems.append(f"module {m['id']} without geometry")
            except (KeyError, TypeError) as exc:
                problems.append(f"malformed snapshot: {exc}")
        return problems

    with ThreadPoolExecutor(max_workers=4) as pool:
        read_futures = [pool.submit(reader) for _ in range(2)]
        write_future = pool.submit(writer)
        write_future.result()
        stop = True
        for future in read_futures:
            assert future.result() == []

    listed = requests.get(f"{base}/api/modules", timeout=10).json()
    assert len(listed) == 25


def test_port_in_use_exits_nonzero(live_server, tmp_path):
    base, _doc = live_server
    port = base.rsplit(":", 1)[1]
    other = tmp_path / "other.json"
    assert cli_dispatch(["new", str(other)]) == 0
    result = subprocess.run(
        [sys.executable, "-m", "modulecad", "serve", str(other), "--port", port],
        capture_output=True, timeout=60)
    assert result.returncode == 1
