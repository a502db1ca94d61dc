"""
Binary grid files
=================

Grid sets and colorings are stored with a small little-endian header::

    magic     4 bytes   b"EGRD" (grid set) or b"ECOL" (coloring)
    version   uint8     1
    encoding  uint8     0 = dense, 1 = run-length
    ndim      uint8     2 (grid set) or 3 (coloring)
    dims      ndim × uint32
    origin    ndim × int32

Dense grid sets are bit-packed (``numpy.packbits``, row-major); run-length
grid sets are ``uint32`` run lengths alternating absent/present, starting
with an absent run (possibly empty).  Dense colorings are one ``uint8``
per cell; run-length colorings are ``(uint32 count, uint8 color)``
records.

.. autosummary::

    ~encode_grid
    ~decode_grid
    ~encode_coloring
    ~decode_coloring
    ~write_grid
    ~read_grid
    ~write_coloring
    ~read_coloring
"""

import logging
import struct
from pathlib import Path

import numpy as np

from ..exceptions import GridFileError
from .grids import GridSet
from .parallelepiped import Coloring3

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

GRID_MAGIC = b"EGRD"
COLORING_MAGIC = b"ECOL"
VERSION = 1
ENCODINGS = {"dense": 0, "rle": 1}
RUN_RECORD = np.dtype([("count", "<u4"), ("color", "u1")])
_HEAD = struct.Struct("<4sBBB")


def _header(magic, encoding, dims, origin):
    if encoding not in ENCODINGS:
        raise GridFileError(f"unknown encoding {encoding!r}, expected one of {sorted(ENCODINGS)}")
    ndim = len(dims)
    return _HEAD.pack(magic, VERSION, ENCODINGS[encoding], ndim) + struct.pack(
        f"<{ndim}I{ndim}i", *dims, *origin
    )


def _parse_header(data, magic, ndim):
    if len(data) < _HEAD.size:
        raise GridFileError("file is shorter than its header")
    found, version, encoding, found_ndim = _HEAD.unpack_from(data)
    if found != magic:
        raise GridFileError(f"bad magic {found!r}, expected {magic!r}")
    if version != VERSION:
        raise GridFileError(f"unsupported version {version}")
    if encoding not in ENCODINGS.values():
        raise GridFileError(f"unknown encoding code {encoding}")
    if found_ndim != ndim:
        raise GridFileError(f"expected {ndim} dimensions, found {found_ndim}")
    layout = struct.Struct(f"<{ndim}I{ndim}i")
    if len(data) < _HEAD.size + layout.size:
        raise GridFileError("truncated dimensions")
    values = layout.unpack_from(data, _HEAD.size)
    return encoding, values[:ndim], values[ndim:], data[_HEAD.size + layout.size :]


def _runs(flat):
    changes = np.flatnonzero(flat[1:] != flat[:-1]) + 1
    bounds = np.concatenate(([0], changes, [len(flat)]))
    return bounds[:-1], np.diff(bounds)


def encode_grid(E, encoding="dense"):
    """Serialize a :class:`GridSet`."""
    head = _header(GRID_MAGIC, encoding, E.shape, E.origin)
    flat = E.bits.ravel()
    if encoding == "dense":
        return head + np.packbits(flat).tobytes()
    if flat.size == 0:
        return head
    _, lengths = _runs(flat)
    if flat[0]:
        lengths = np.concatenate(([0], lengths))
    return head + lengths.astype("<u4").tobytes()


def decode_grid(data):
    """Parse bytes written by :func:`encode_grid`."""
    encoding, dims, origin, payload = _parse_header(data, GRID_MAGIC, 2)
    size = int(np.prod(dims))
    if encoding == ENCODINGS["dense"]:
        packed = np.frombuffer(payload, dtype=np.uint8)
        if len(packed) != (size + 7) // 8:
            raise GridFileError(f"dense payload has {len(packed)} bytes for {size} cells")
        flat = np.unpackbits(packed, count=size).astype(bool)
    else:
        if len(payload) % 4:
            raise GridFileError("run-length payload is not a whole number of uint32")
        lengths = np.frombuffer(payload, dtype="<u4").astype(np.int64)
        if lengths.sum() != size:
            raise GridFileError(f"runs cover {lengths.sum()} cells, expected {size}")
        flat = np.repeat(np.arange(len(lengths)) % 2 == 1, lengths)
    return GridSet(flat.reshape(dims), origin)


def encode_coloring(c, encoding="dense"):
    """Serialize a :class:`~ergavg.combinatorics.parallelepiped.Coloring3`."""
    if c.color_count > 255:
        raise GridFileError(f"{c.color_count} colors do not fit in a byte")
    head = _header(COLORING_MAGIC, encoding, c.colors.shape, (0, 0, 0))
    flat = c.colors.ravel().astype(np.uint8)
    if encoding == "dense":
        return head + flat.tobytes()
    if flat.size == 0:
        return head
    starts, lengths = _runs(flat)
    records = np.empty(len(starts), dtype=RUN_RECORD)
    records["count"] = lengths
    records["color"] = flat[starts]
    return head + records.tobytes()


def decode_coloring(data):
    """Parse bytes written by :func:`encode_coloring`."""
    encoding, dims, _, payload = _parse_header(data, COLORING_MAGIC, 3)
    size = int(np.prod(dims))
    if encoding == ENCODINGS["dense"]:
        flat = np.frombuffer(payload, dtype=np.uint8)
        if len(flat) != size:
            raise GridFileError(f"dense payload has {len(flat)} cells, expected {size}")
    else:
        if len(payload) % RUN_RECORD.itemsize:
            raise GridFileError("run-length payload is not a whole number of records")
        records = np.frombuffer(payload, dtype=RUN_RECORD)
        counts = records["count"].astype(np.int64)
        if counts.sum() != size:
            raise GridFileError(f"runs cover {counts.sum()} cells, expected {size}")
        flat = np.repeat(records["color"], counts)
    return Coloring3(flat.astype(np.int64).reshape(dims))


def write_grid(path, E, encoding="dense"):
    """Write a grid set file."""
    path = Path(path)
    path.write_bytes(encode_grid(E, encoding))
    logger.debug("wrote %s grid %s to %s", encoding, E.shape, path)
    return path


def read_grid(path):
    """Read a grid set file."""
    return decode_grid(Path(path).read_bytes())


def write_coloring(path, c, encoding="dense"):
    """Write a coloring file."""
    path = Path(path)
    path.write_bytes(encode_coloring(c, encoding))
    logger.debug("wrote %s coloring N=%d to %s", encoding, c.size, path)
    return path


def read_coloring(path):
    """Read a coloring file."""
    return decode_coloring(Path(path).read_bytes())
