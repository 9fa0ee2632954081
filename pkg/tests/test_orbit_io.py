import numpy as np
import pytest

from hypsector.orbit_io import CacheError, cache_path, cached_ball, file_digest, load_ball, save_ball


def test_roundtrip_lossless(ball_1e3, tmp_path):
    p = save_ball(ball_1e3, tmp_path / "b.orb")
    back = load_ball(p)
    assert back.T == ball_1e3.T and back.complete == ball_1e3.complete
    assert back.group.label == "gamma4"
    assert np.array_equal(back.entries, ball_1e3.entries)
    for name in ("theta1", "t", "theta2", "degenerate"):
        assert np.array_equal(getattr(back, name), getattr(ball_1e3, name)), name


def test_save_is_deterministic(ball_1e3, tmp_path):
    a = save_ball(ball_1e3, tmp_path / "a.orb")
    b = save_ball(load_ball(a), tmp_path / "b.orb")
    assert file_digest(a) == file_digest(b)


def test_truncated_file_rejected(ball_1e3, tmp_path):
    p = save_ball(ball_1e3, tmp_path / "b.orb")
    data = p.read_bytes()
    p.write_bytes(data[:-100])
    with pytest.raises(CacheError, match="checksum"):
        load_ball(p)


def test_flipped_byte_rejected(ball_1e3, tmp_path):
    p = save_ball(ball_1e3, tmp_path / "b.orb")
    data = bytearray(p.read_bytes())
    data[-5] ^= 0xFF
    p.write_bytes(bytes(data))
    with pytest.raises(CacheError):
        load_ball(p)


def test_bad_magic(tmp_path):
    p = tmp_path / "x.orb"
    p.write_bytes(b"nonsense" * 4)
    with pytest.raises(CacheError, match="not an orbit"):
        load_ball(p)


def test_cached_ball_reuses_file(gamma4, tmp_path):
    first = cached_ball(gamma4, 300.0, tmp_path)
    path = cache_path(tmp_path, gamma4, 300.0)
    assert path.exists()
    stamp = path.stat().st_mtime_ns
    second = cached_ball(gamma4, 300.0, tmp_path)
    assert path.stat().st_mtime_ns == stamp
    assert np.array_equal(first.entries, second.entries)


def test_cached_ball_recovers_from_corruption(gamma4, tmp_path):
    cached_ball(gamma4, 100.0, tmp_path)
    path = cache_path(tmp_path, gamma4, 100.0)
    path.write_bytes(path.read_bytes()[:50])
    ball = cached_ball(gamma4, 100.0, tmp_path)
    assert len(ball) == len(load_ball(path))
