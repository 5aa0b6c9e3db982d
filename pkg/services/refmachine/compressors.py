"""Compressor-based upper bounds for strings too long to enumerate."""
from __future__ import annotations

import bz2
import logging
import lzma
import zlib
from itertools import groupby
from typing import Dict, Protocol

from core.errors import InvariantViolation, UnknownCodecError
from models import CompressorEstimate
from services.bitcore import decode_natural, encode_natural, validate_bits
from utils.bitpack import pack_bits, unpack_bits

logger = logging.getLogger(__name__)


class Codec(Protocol):
    name: str

    def compress(self, x: str) -> str: ...

    def decompress(self, payload: str, length: int) -> str: ...


class RunLengthCodec:
    """First bit, then the self-delimiting code of each run length minus one."""

    name = "rle"

    def compress(self, x: str) -> str:
        runs = [encode_natural(len(list(group)) - 1) for _, group in groupby(x)]
        return x[0] + "".join(runs)

    def decompress(self, payload: str, length: int) -> str:
        bit, rest = payload[0], payload[1:]
        pieces = []
        produced = 0
        while produced < length:
            run, rest = decode_natural(rest)
            pieces.append(bit * (run + 1))
            produced += run + 1
            bit = "1" if bit == "0" else "0"
        return "".join(pieces)


class ByteCodec:
    """A byte-oriented stdlib compressor applied to the packed bits."""

    def __init__(self, name: str, module):
        self.name = name
        self.module = module

    def compress(self, x: str) -> str:
        data = self.module.compress(pack_bits(x))
        return "".join(format(byte, "08b") for byte in data)

    def decompress(self, payload: str, length: int) -> str:
        data = bytes(int(payload[i : i + 8], 2) for i in range(0, len(payload), 8))
        return unpack_bits(self.module.decompress(data), length)


_REGISTRY: Dict[str, Codec] = {
    "rle": RunLengthCodec(),
    "zlib": ByteCodec("zlib", zlib),
    "bz2": ByteCodec("bz2", bz2),
    "lzma": ByteCodec("lzma", lzma),
}

CODEC_IDS = list(_REGISTRY)


def get_codec(codec: str) -> Codec:
    try:
        return _REGISTRY[codec]
    except KeyError:
        raise UnknownCodecError(f"unknown codec {codec!r}; registered: {', '.join(CODEC_IDS)}") from None


def compressor_bound(x: str, codec: str = "rle") -> CompressorEstimate:
    """Compressed length plus a self-delimiting header (codec number, l(x))."""
    validate_bits(x)
    compressor = get_codec(codec)
    header = encode_natural(CODEC_IDS.index(codec)) + encode_natural(len(x))
    payload = compressor.compress(x) if x else ""
    restored = compressor.decompress(payload, len(x)) if x else ""
    if restored != x:
        raise InvariantViolation(f"codec {codec!r} failed to round-trip a {len(x)}-bit string")
    return CompressorEstimate(
        codec=codec,
        value=len(header) + len(payload),
        header_bits=len(header),
        payload_bits=len(payload),
        original_length=len(x),
    )
