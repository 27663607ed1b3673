"""The two coefficient sequences everything else consumes.

FlooredImage materializes p -> (floor(p log p), log p) over a prime table;
WeightSeries materializes m -> 1/(1 + log y(m)).  Images can be cached to
disk in a fixed little-endian binary format (rebuilding certified floors is
the dominant cost at large xmax); weight series are always rebuilt.

Cache layout, bit-exact:
    magic "LGL1" | version u32 | xmax u64 | count u64
    | count * (p u64, f u64, w float64) | crc64 u64
All integers little-endian; the CRC (CRC-64/XZ) covers every preceding byte
including the magic.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CacheError
from .numeric import floor_nlogn, floor_nlogn_bulk, solve_ylogy, solve_ylogy_bulk
from .primes import PrimeTable, sieve

CACHE_MAGIC = b"LGL1"
CACHE_VERSION = 1
_RECORD = np.dtype([("p", "<u8"), ("f", "<u8"), ("w", "<f8")])


@dataclass(frozen=True)
class FlooredImage:
    """Per-prime entries (p, f = floor(p log p), w = log p), ascending in p.

    f is strictly increasing in p (increments of n log n exceed 1 from n = 2
    on), so ``maxfreq`` is simply the last floor.  ``covered`` is the proven
    coverage bound: every prime with floor(p log p) <= covered is present.
    It can exceed maxfreq when no prime realizes the top frequencies.
    """

    xmax: int
    p: np.ndarray
    f: np.ndarray
    w: np.ndarray
    covered: int = -1

    def __post_init__(self):
        if len(self.p) == 0:
            raise ValueError("image must contain at least one prime")
        if not bool(np.all(np.diff(self.f) > 0)):
            raise ValueError("floors must be strictly increasing")
        if self.covered < 0:
            # any prime beyond the last listed has a strictly larger floor
            object.__setattr__(self, "covered", int(self.f[-1]))
        for arr in (self.p, self.f, self.w):
            arr.setflags(write=False)

    @property
    def maxfreq(self) -> int:
        return int(self.f[-1])

    def __len__(self) -> int:
        return len(self.p)


@dataclass(frozen=True)
class WeightSeries:
    """w[m] = 1/(1 + log y(m)) for m = 1..nmax; w[0] is a zero sentinel."""

    nmax: int
    w: np.ndarray

    def __post_init__(self):
        self.w.setflags(write=False)


def build_floored_image(table: PrimeTable) -> FlooredImage:
    """One (p, floor(p log p), log p) entry per prime of the table."""
    if len(table.primes) == 0:
        raise ValueError("prime table is empty")
    floors, _ = floor_nlogn_bulk(table.primes)
    # any prime past xmax has p log p > xmax log xmax, so coverage is proven
    # through floor(xmax log xmax) - 1 (and always through the last floor)
    covered = max(int(floors[-1]), floor_nlogn(table.xmax).value - 1)
    return FlooredImage(
        xmax=table.xmax,
        p=table.primes.copy(),
        f=floors,
        w=table.logweights.copy(),
        covered=covered,
    )


def image_covering(fmax: int) -> FlooredImage:
    """Image containing exactly the primes with floor(p log p) <= fmax.

    Since the floor is strictly increasing in p this is a prefix of the
    primes; the sieve bound comes from inverting p log p = fmax + 1, and
    membership is then decided by the certified floors themselves.
    """
    if fmax < 1:
        raise ValueError(f"fmax must be >= 1, got {fmax}")
    bound = max(2, int(math.ceil(solve_ylogy(float(fmax + 1)).y)) + 1)
    image = build_floored_image(sieve(bound))
    keep = int(np.searchsorted(image.f, fmax, side="right"))
    if keep == 0:
        raise ValueError(f"no prime has floor(p log p) <= {fmax}")
    return FlooredImage(
        xmax=int(image.p[keep - 1]),
        p=image.p[:keep].copy(),
        f=image.f[:keep].copy(),
        w=image.w[:keep].copy(),
        covered=fmax,
    )


def build_weight_series(nmax: int) -> WeightSeries:
    """Tabulate w(m) = 1/(1 + log y(m)) for m = 1..nmax."""
    if nmax < 1:
        raise ValueError(f"nmax must be >= 1, got {nmax}")
    y = solve_ylogy_bulk(np.arange(0, nmax + 1, dtype=np.float64))
    w = 1.0 / (1.0 + np.log(y))
    w[0] = 0.0
    if not bool(np.all(np.diff(w[1:]) < 0)):
        raise ValueError("weights failed strict monotonicity")
    return WeightSeries(nmax=nmax, w=w)


# ---------------------------------------------------------------- cache i/o

_CRC64_POLY = 0xC96C5795D7870F42  # CRC-64/XZ, reflected
_crc64_table: list[int] | None = None


def _crc64(data: bytes) -> int:
    global _crc64_table
    if _crc64_table is None:
        table = []
        for byte in range(256):
            crc = byte
            for _ in range(8):
                crc = (crc >> 1) ^ _CRC64_POLY if crc & 1 else crc >> 1
            table.append(crc)
        _crc64_table = table
    crc = 0xFFFFFFFFFFFFFFFF
    for b in data:
        crc = _crc64_table[(crc ^ b) & 0xFF] ^ (crc >> 8)
    return crc ^ 0xFFFFFFFFFFFFFFFF


def save_cache(image: FlooredImage, path: str | Path) -> None:
    """Write the image in the fixed binary cache format."""
    records = np.empty(len(image), dtype=_RECORD)
    records["p"] = image.p
    records["f"] = image.f
    records["w"] = image.w
    payload = (
        CACHE_MAGIC
        + struct.pack("<IQQ", CACHE_VERSION, image.xmax, len(image))
        + records.tobytes()
    )
    Path(path).write_bytes(payload + struct.pack("<Q", _crc64(payload)))


def load_cache(
    path: str | Path,
    *,
    recheck_fraction: float = 0.001,
    rng: np.random.Generator | None = None,
) -> FlooredImage:
    """Read a cached image; verify checksum and re-certify a floor sample.

    Raises CacheError on any mismatch (bad magic, version, length, CRC, or a
    spot-checked floor that fails re-certification); OSError propagates for
    plain i/o failures.
    """
    raw = Path(path).read_bytes()
    header = len(CACHE_MAGIC) + struct.calcsize("<IQQ")
    if len(raw) < header + 8 or raw[:4] != CACHE_MAGIC:
        raise CacheError(f"{path}: not a loglab image cache")
    version, xmax, count = struct.unpack_from("<IQQ", raw, 4)
    if version != CACHE_VERSION:
        raise CacheError(f"{path}: cache version {version}, expected {CACHE_VERSION}")
    body_end = header + count * _RECORD.itemsize
    if len(raw) != body_end + 8:
        raise CacheError(f"{path}: truncated or padded cache file")
    (stored_crc,) = struct.unpack_from("<Q", raw, body_end)
    if _crc64(raw[:body_end]) != stored_crc:
        raise CacheError(f"{path}: checksum mismatch")
    records = np.frombuffer(raw, dtype=_RECORD, count=count, offset=header)
    floors = records["f"].astype(np.int64)
    # the format does not persist the coverage bound; reconstruct the proven one
    covered = max(int(floors[-1]), floor_nlogn(int(xmax)).value - 1) if count else -1
    image = FlooredImage(
        xmax=int(xmax),
        p=records["p"].astype(np.int64),
        f=floors,
        w=records["w"].astype(np.float64),
        covered=covered,
    )
    if rng is None:
        rng = np.random.default_rng(0)
    sample = rng.choice(len(image), size=max(1, round(recheck_fraction * len(image))), replace=False)
    for i in sample:
        if floor_nlogn(int(image.p[i])).value != int(image.f[i]):
            raise CacheError(f"{path}: floor re-certification failed at p={image.p[i]}")
    return image
