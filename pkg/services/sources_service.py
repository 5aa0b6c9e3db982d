"""Bit sources: Champernowne, constant, periodic, seeded PRNG and file-backed streams.

Every source is replayable. ``read`` advances a cursor, ``read_at`` does not,
and ``clone`` gives an independent cursor over the same sequence. Indices are
0-based here; the selection engines translate to 1-based positions.
"""
from __future__ import annotations

import copy
import logging
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np

from core.errors import SourceIndexError
from services.bitcore import validate_bits
from utils.bitpack import array_to_bits

logger = logging.getLogger(__name__)

PRNG_VERSION = "numpy-PCG64/1"

# 64-bit words per cached PRNG block
_PRNG_BLOCK_WORDS = 1024
_PRNG_BLOCK_BITS = _PRNG_BLOCK_WORDS * 64


class BitSource:
    """An infinite (or, for file sources, finite) binary sequence with a read cursor."""

    kind = "source"
    length: Optional[int] = None

    def __init__(self):
        self._pos = 0

    def bit_at(self, i: int) -> str:
        raise NotImplementedError

    def _slice(self, start: int, count: int) -> str:
        return "".join(self.bit_at(i) for i in range(start, start + count))

    def _check(self, start: int, count: int) -> None:
        if start < 0 or (self.length is not None and start + count > self.length):
            raise SourceIndexError(
                f"{self.kind}: positions {start}..{start + count - 1} outside 0..{self.length}"
            )

    def read(self, k: int) -> str:
        """Next k bits from the cursor."""
        self._check(self._pos, k)
        bits = self._slice(self._pos, k)
        self._pos += k
        return bits

    def read_at(self, i: int) -> str:
        self._check(i, 1)
        return self.bit_at(i)

    def prefix(self, n: int) -> str:
        """The first n bits, leaving the cursor alone."""
        self._check(0, n)
        return self._slice(0, n)

    def tell(self) -> int:
        return self._pos

    def seek(self, pos: int) -> None:
        if pos < 0 or (self.length is not None and pos > self.length):
            raise SourceIndexError(f"{self.kind}: cannot seek to {pos}")
        self._pos = pos

    def clone(self) -> BitSource:
        return copy.copy(self)

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind}

    def __repr__(self) -> str:
        params = ", ".join(f"{key}={value!r}" for key, value in self.describe().items() if key != "kind")
        return f"<{type(self).__name__} {params} at {self._pos}>"


# ---------------------------------------------------------------------------
# Champernowne
# ---------------------------------------------------------------------------


def champernowne_digit_at(base: int, i: int) -> int:
    """Digit i (0-based) of 1 2 3 ... written in ``base``, without generating the prefix."""
    if base < 2:
        raise ValueError("base must be >= 2")
    if i < 0:
        raise ValueError("index must be >= 0")
    width, count, first = 1, base - 1, 1
    while i >= width * count:
        i -= width * count
        width += 1
        count *= base
        first *= base
    number = first + i // width
    return (number // base ** (width - 1 - i % width)) % base


def champernowne(base: int, count: int) -> str:
    """The first ``count`` native digits of the base-``base`` Champernowne sequence."""
    if base < 2 or base > 36:
        raise ValueError("native digits need 2 <= base <= 36")
    parts = []
    produced = 0
    number = 1
    while produced < count:
        digits = np.base_repr(number, base).lower()
        parts.append(digits)
        produced += len(digits)
        number += 1
    return "".join(parts)[:count]


class ChampernowneSource(BitSource):
    """Champernowne digits in binary; bases other than 2 use ceil(log2 base) bits per digit."""

    kind = "champernowne"

    def __init__(self, base: int = 2):
        super().__init__()
        if base < 2:
            raise ValueError("base must be >= 2")
        self.base = base
        self.width = 1 if base == 2 else (base - 1).bit_length()
        self._cache = ""
        self._next_number = 1

    def bit_at(self, i: int) -> str:
        digit = champernowne_digit_at(self.base, i // self.width)
        return str((digit >> (self.width - 1 - i % self.width)) & 1)

    def _digit_bits(self, number: int) -> str:
        if self.base == 2:
            return format(number, "b")
        digits = []
        while number:
            number, digit = divmod(number, self.base)
            digits.append(format(digit, f"0{self.width}b"))
        return "".join(reversed(digits))

    def _slice(self, start: int, count: int) -> str:
        parts = [self._cache]
        produced = len(self._cache)
        while produced < start + count:
            block = self._digit_bits(self._next_number)
            parts.append(block)
            produced += len(block)
            self._next_number += 1
        self._cache = "".join(parts)
        return self._cache[start : start + count]

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind, "base": self.base}


# ---------------------------------------------------------------------------
# Constant and periodic
# ---------------------------------------------------------------------------


class ConstantSource(BitSource):
    kind = "constant"

    def __init__(self, bit: str = "0"):
        super().__init__()
        if bit not in ("0", "1"):
            raise ValueError("bit must be '0' or '1'")
        self.bit = bit

    def bit_at(self, i: int) -> str:
        return self.bit

    def _slice(self, start: int, count: int) -> str:
        return self.bit * count

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind, "bit": self.bit}


class PeriodicSource(BitSource):
    """prefix followed by pattern repeated forever: every rational in [0, 1) has one."""

    kind = "periodic"

    def __init__(self, pattern: str, prefix: str = ""):
        super().__init__()
        validate_bits(pattern)
        validate_bits(prefix)
        if not pattern:
            raise ValueError("pattern must be nonempty")
        self.pattern = pattern
        self.pre_period = prefix

    def bit_at(self, i: int) -> str:
        if i < len(self.pre_period):
            return self.pre_period[i]
        return self.pattern[(i - len(self.pre_period)) % len(self.pattern)]

    def _slice(self, start: int, count: int) -> str:
        head = len(self.pre_period)
        body_start = max(start, head)
        out = self.pre_period[start : start + count] if start < head else ""
        remaining = count - len(out)
        if remaining <= 0:
            return out
        offset = (body_start - head) % len(self.pattern)
        repeats = (offset + remaining) // len(self.pattern) + 1
        return out + (self.pattern * repeats)[offset : offset + remaining]

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind, "pattern": self.pattern, "prefix": self.pre_period}


# ---------------------------------------------------------------------------
# PRNG
# ---------------------------------------------------------------------------


def prng_bits(seed: int, count: int, offset_words: int = 0) -> np.ndarray:
    """Raw PCG64 words unpacked most-significant-bit first, as a uint8 array of 0/1."""
    generator = np.random.PCG64(seed)
    if offset_words:
        generator.advance(offset_words)
    words = generator.random_raw((count + 63) // 64)
    return np.unpackbits(np.asarray(words, dtype=">u8").view(np.uint8))[:count]


def prng_stream(seed: int, count: int) -> str:
    """Reproducible bitstring for ``seed``; the algorithm is pinned by PRNG_VERSION."""
    return array_to_bits(prng_bits(seed, count))


class PrngSource(BitSource):
    kind = "prng"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed
        self._blocks: Dict[int, str] = {}

    def _block(self, index: int) -> str:
        block = self._blocks.get(index)
        if block is None:
            block = array_to_bits(prng_bits(self.seed, _PRNG_BLOCK_BITS, index * _PRNG_BLOCK_WORDS))
            self._blocks[index] = block
        return block

    def bit_at(self, i: int) -> str:
        return self._block(i // _PRNG_BLOCK_BITS)[i % _PRNG_BLOCK_BITS]

    def _slice(self, start: int, count: int) -> str:
        if count == 0:
            return ""
        first, last = start // _PRNG_BLOCK_BITS, (start + count - 1) // _PRNG_BLOCK_BITS
        joined = "".join(self._block(index) for index in range(first, last + 1))
        offset = start - first * _PRNG_BLOCK_BITS
        return joined[offset : offset + count]

    def clone(self) -> PrngSource:
        twin = copy.copy(self)
        twin._blocks = dict(self._blocks)
        return twin

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind, "seed": self.seed, "version": PRNG_VERSION}


# ---------------------------------------------------------------------------
# Finite strings and files
# ---------------------------------------------------------------------------


class StringSource(BitSource):
    """A finite bitstring; reads past its end raise SourceIndexError."""

    kind = "string"

    def __init__(self, bits: str):
        super().__init__()
        self.bits = validate_bits(bits)
        self.length = len(bits)

    def bit_at(self, i: int) -> str:
        return self.bits[i]

    def _slice(self, start: int, count: int) -> str:
        return self.bits[start : start + count]

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind, "length": self.length}


class FileSource(StringSource):
    kind = "file"

    def __init__(self, path: Union[str, Path], fmt: Optional[str] = None):
        from repositories import bitstrings_repo

        self.path = Path(path)
        super().__init__(bitstrings_repo.read(self.path, fmt))
        logger.info(f"Loaded {self.length} bits from {self.path}")

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind, "path": str(self.path), "length": self.length}


_SOURCE_KINDS = {
    "champernowne": ChampernowneSource,
    "constant": ConstantSource,
    "periodic": PeriodicSource,
    "prng": PrngSource,
    "file": FileSource,
    "string": StringSource,
}


def open_source(kind: str, **params) -> BitSource:
    """Build a source by kind name, e.g. ``open_source("prng", seed=7)``."""
    try:
        factory = _SOURCE_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown source kind {kind!r}; expected one of {sorted(_SOURCE_KINDS)}") from None
    return factory(**params)


def take_prefix(stream: Union[str, BitSource], n: int) -> str:
    """First n bits of a stream given either as a bitstring or as a source."""
    if isinstance(stream, str):
        return validate_bits(stream)[:n]
    if stream.length is not None:
        n = min(n, stream.length)
    return stream.prefix(n)
