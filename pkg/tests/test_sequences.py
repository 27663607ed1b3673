import math
import struct

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loglab import (
    build_floored_image,
    build_weight_series,
    image_covering,
    load_cache,
    save_cache,
    sieve,
    solve_ylogy,
)
from loglab.errors import CacheError
from loglab.sequences import CACHE_MAGIC, _crc64

from conftest import bisect_ylogy, mp_floor_nlogn


# ------------------------------------------------------------ FlooredImage

def test_image_example_xmax10(image10):
    assert image10.p.tolist() == [2, 3, 5, 7]
    assert image10.f.tolist() == [1, 3, 8, 13]
    assert np.allclose(image10.w, [math.log(p) for p in (2, 3, 5, 7)])
    assert image10.maxfreq == 13


def test_image_single_prime():
    image = build_floored_image(sieve(2))
    assert image.p.tolist() == [2]
    assert image.f.tolist() == [1]


def test_image_maxfreq_13():
    assert build_floored_image(sieve(13)).maxfreq == 33  # [13 ln 13], 13 ln 13 ~ 33.34


def test_image_floors_strictly_increasing_and_distinct():
    image = build_floored_image(sieve(10**5))
    assert np.all(np.diff(image.f) > 0)
    assert len(np.unique(image.f)) == len(image.f)


def test_image_floor_brackets_by_interval():
    image = build_floored_image(sieve(3000))
    rng = np.random.default_rng(5)
    for i in rng.choice(len(image), size=40, replace=False):
        p, f = int(image.p[i]), int(image.f[i])
        with mpmath.workprec(128):
            v = mpmath.mpf(p) * mpmath.log(p)
            assert f <= v < f + 1


def test_image_covering_boundaries():
    image = image_covering(100)
    assert image.covered == 100
    assert image.maxfreq <= 100
    # the next prime past the image must overshoot the bound
    bigger = build_floored_image(sieve(image.xmax * 2))
    beyond = bigger.f[len(image):]
    assert beyond.size and int(beyond[0]) > 100
    assert mp_floor_nlogn(int(image.p[-1])) == image.maxfreq


# ------------------------------------------------------------ WeightSeries

def test_weight_series_values(weights2000):
    assert weights2000.w[0] == 0.0
    assert weights2000.w[1] == pytest.approx(0.6381037433651108, rel=1e-10)
    assert weights2000.w[3] == pytest.approx(0.48782655778345807, rel=1e-10)


def test_weight_series_strictly_decreasing(weights2000):
    inner = weights2000.w[1:]
    assert np.all(np.diff(inner) < 0)
    assert np.all((inner > 0) & (inner <= 1))


def test_weight_series_tail_is_main_scale(weights2000):
    x = solve_ylogy(2000.0).y
    assert weights2000.w[2000] == pytest.approx(1.0 / (1.0 + math.log(x)), rel=1e-12)


def test_weight_series_matches_bisection_oracle(weights2000):
    for m in (1, 2, 17, 555, 2000):
        expected = 1.0 / (1.0 + math.log(bisect_ylogy(float(m))))
        assert weights2000.w[m] == pytest.approx(expected, rel=1e-10)


# -------------------------------------------------------------- cache i/o

def test_cache_roundtrip(tmp_path):
    image = build_floored_image(sieve(10**4))
    path = tmp_path / "img.lgl"
    save_cache(image, path)
    back = load_cache(path)
    assert back.xmax == image.xmax
    assert np.array_equal(back.p, image.p)
    assert np.array_equal(back.f, image.f)
    assert np.array_equal(back.w, image.w)
    assert back.covered == image.covered


@given(st.integers(min_value=2, max_value=5000))
@settings(max_examples=20, deadline=None)
def test_cache_roundtrip_any_xmax(tmp_path_factory, xmax):
    image = build_floored_image(sieve(xmax))
    path = tmp_path_factory.mktemp("cache") / "img.lgl"
    save_cache(image, path)
    back = load_cache(path)
    assert np.array_equal(back.p, image.p) and np.array_equal(back.f, image.f)


def test_cache_truncated(tmp_path):
    path = tmp_path / "img.lgl"
    save_cache(build_floored_image(sieve(500)), path)
    raw = path.read_bytes()
    path.write_bytes(raw[:-9])
    with pytest.raises(CacheError):
        load_cache(path)


def test_cache_bitflip(tmp_path):
    path = tmp_path / "img.lgl"
    save_cache(build_floored_image(sieve(500)), path)
    raw = bytearray(path.read_bytes())
    raw[40] ^= 0x01
    path.write_bytes(bytes(raw))
    with pytest.raises(CacheError):
        load_cache(path)


def test_cache_version_mismatch(tmp_path):
    path = tmp_path / "img.lgl"
    save_cache(build_floored_image(sieve(500)), path)
    raw = bytearray(path.read_bytes())
    struct.pack_into("<I", raw, 4, 99)
    # keep the checksum honest so the version check itself is what trips
    body = bytes(raw[:-8])
    path.write_bytes(body + struct.pack("<Q", _crc64(body)))
    with pytest.raises(CacheError, match="version"):
        load_cache(path)


def test_cache_bad_magic(tmp_path):
    path = tmp_path / "img.lgl"
    path.write_bytes(b"NOPE" + bytes(64))
    with pytest.raises(CacheError):
        load_cache(path)


def test_cache_missing_file_is_oserror(tmp_path):
    with pytest.raises(OSError):
        load_cache(tmp_path / "absent.lgl")


def test_cache_layout_is_fixed(tmp_path):
    image = build_floored_image(sieve(10))
    path = tmp_path / "img.lgl"
    save_cache(image, path)
    raw = path.read_bytes()
    assert raw[:4] == CACHE_MAGIC == b"LGL1"
    version, xmax, count = struct.unpack_from("<IQQ", raw, 4)
    assert (version, xmax, count) == (1, 10, 4)
    assert len(raw) == 4 + 20 + count * 24 + 8
    p0, f0, w0 = struct.unpack_from("<QQd", raw, 24)
    assert (p0, f0) == (2, 1) and w0 == math.log(2)


def test_crc64_known_vector():
    # CRC-64/XZ check value for the ASCII digits "123456789"
    assert _crc64(b"123456789") == 0x995DC9BBDF1939FA
