"""Bitstring files: ASCII '0'/'1' text and the packed AITBITS1 container."""
import logging
import struct
from pathlib import Path
from typing import Optional, Union

from core.errors import LengthMismatchError
from services.bitcore import validate_bits
from utils.bitpack import pack_bits, unpack_bits

logger = logging.getLogger(__name__)

PACKED_MAGIC = b"AITBITS1"
_HEADER = struct.Struct("<Q")

PathLike = Union[str, Path]


class BitstringRepository:
    formats = ("ascii", "packed")

    def sniff(self, data: bytes) -> str:
        return "packed" if data.startswith(PACKED_MAGIC) else "ascii"

    def decode(self, data: bytes, fmt: Optional[str] = None) -> str:
        fmt = fmt or self.sniff(data)
        if fmt == "ascii":
            return validate_bits("".join(data.decode("ascii").split()))
        if fmt != "packed":
            raise ValueError(f"unknown bit format {fmt!r}; expected one of {self.formats}")
        if not data.startswith(PACKED_MAGIC):
            raise ValueError("packed file does not start with AITBITS1")
        offset = len(PACKED_MAGIC)
        if len(data) < offset + _HEADER.size:
            raise LengthMismatchError("packed file is missing its bit count")
        (count,) = _HEADER.unpack_from(data, offset)
        payload = data[offset + _HEADER.size :]
        if len(payload) != (count + 7) // 8:
            raise LengthMismatchError(f"packed payload has {len(payload)} bytes for {count} bits")
        return unpack_bits(payload, count)

    def encode(self, bits: str, fmt: str = "ascii") -> bytes:
        validate_bits(bits)
        if fmt == "ascii":
            return bits.encode("ascii") + b"\n"
        if fmt != "packed":
            raise ValueError(f"unknown bit format {fmt!r}; expected one of {self.formats}")
        return PACKED_MAGIC + _HEADER.pack(len(bits)) + pack_bits(bits)

    def read(self, path: PathLike, fmt: Optional[str] = None) -> str:
        """Read a bitstring file; the format is sniffed from the magic when not given."""
        return self.decode(Path(path).read_bytes(), fmt)

    def write(self, path: PathLike, bits: str, fmt: str = "ascii") -> Path:
        path = Path(path)
        path.write_bytes(self.encode(bits, fmt))
        logger.info(f"Wrote {len(bits)} bits to {path} ({fmt})")
        return path
