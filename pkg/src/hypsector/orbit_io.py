"""Binary orbit-ball cache.

Layout (little-endian)::

    8 bytes   magic b"HSORBIT\\0"
    u16       format version
    u32       length of the JSON header
    JSON      {"label", "generators", "monotone_certificate", "pingpong",
               "T", "count", "complete", "sha256"}
    records   count x (int64 a, b, c, d, float64 theta1, t, theta2)

``sha256`` is the digest of the record block.
"""
from __future__ import annotations

import hashlib
import json
import logging
import struct
from pathlib import Path

import numpy as np

from .core import GroupElement
from .orbit import GroupPresentation, OrbitBall, enumerate_ball

log = logging.getLogger(__name__)

MAGIC = b"HSORBIT\0"
VERSION = 1
RECORD = np.dtype([("a", "<i8"), ("b", "<i8"), ("c", "<i8"), ("d", "<i8"),
                   ("theta1", "<f8"), ("t", "<f8"), ("theta2", "<f8")])


class CacheError(ValueError):
    pass


def _group_header(group: GroupPresentation) -> dict:
    return {"label": group.label,
            "generators": [list(g.entries) for g in group.generators],
            "monotone_certificate": group.monotone_certificate,
            "pingpong": group.pingpong}


def save_ball(ball: OrbitBall, path) -> Path:
    path = Path(path)
    rec = np.empty(len(ball), dtype=RECORD)
    ent = ball.entries.astype(np.int64)
    for i, name in enumerate("abcd"):
        rec[name] = ent[:, i]
    rec["theta1"], rec["t"], rec["theta2"] = ball.theta1, ball.t, ball.theta2
    payload = rec.tobytes()
    header = _group_header(ball.group)
    header.update(T=ball.T, count=len(ball), complete=bool(ball.complete),
                  sha256=hashlib.sha256(payload).hexdigest())
    hbytes = json.dumps(header, sort_keys=True).encode()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HI", VERSION, len(hbytes)))
        fh.write(hbytes)
        fh.write(payload)
    tmp.replace(path)
    return path


def load_ball(path) -> OrbitBall:
    data = Path(path).read_bytes()
    if data[:8] != MAGIC:
        raise CacheError(f"{path}: not an orbit cache file")
    version, hlen = struct.unpack_from("<HI", data, 8)
    if version != VERSION:
        raise CacheError(f"{path}: format version {version}, expected {VERSION}")
    start = 8 + struct.calcsize("<HI")
    try:
        header = json.loads(data[start:start + hlen])
    except ValueError as exc:
        raise CacheError(f"{path}: corrupt header") from exc
    payload = data[start + hlen:]
    if (len(payload) != header["count"] * RECORD.itemsize
            or hashlib.sha256(payload).hexdigest() != header["sha256"]):
        raise CacheError(f"{path}: checksum mismatch (truncated or corrupted)")
    rec = np.frombuffer(payload, dtype=RECORD)
    group = GroupPresentation(tuple(GroupElement(*g) for g in header["generators"]),
                              label=header["label"],
                              monotone_certificate=header["monotone_certificate"],
                              pingpong=header["pingpong"])
    entries = np.stack([rec[n].astype(np.int64) for n in "abcd"], axis=1)
    nsq = (entries * entries).sum(axis=1)
    return OrbitBall(group, float(header["T"]), entries, rec["theta1"].copy(),
                     rec["t"].copy(), rec["theta2"].copy(), nsq == 2,
                     bool(header["complete"]))


def cache_path(cache_dir, group: GroupPresentation, T: float) -> Path:
    digest = hashlib.sha256(json.dumps(_group_header(group), sort_keys=True).encode())
    return Path(cache_dir) / f"{group.label}_T{T:g}_{digest.hexdigest()[:10]}.orb"


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def cached_ball(group: GroupPresentation, T: float, cache_dir=None) -> OrbitBall:
    """Load the ball from ``cache_dir`` if present, else enumerate and store it."""
    if cache_dir is None:
        return enumerate_ball(group, T)
    path = cache_path(cache_dir, group, T)
    if path.exists():
        try:
            return load_ball(path)
        except CacheError as exc:
            log.warning("ignoring bad cache file: %s", exc)
    ball = enumerate_ball(group, T)
    save_ball(ball, path)
    return ball
