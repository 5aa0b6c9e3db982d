"""Bitstrings, the standard string/number correspondence and self-delimiting codes.

Strings are plain ``str`` values over ``{'0', '1'}``. The correspondence
enumerates strings by length, then lexicographically:
``0 -> ''``, ``1 -> '0'``, ``2 -> '1'``, ``3 -> '00'``, ``4 -> '01'``, ...
"""
from __future__ import annotations

from typing import Iterable, Iterator, List, Tuple

from core.errors import MalformedPrefixError

BitString = str

_BIT_CHARS = frozenset("01")


def validate_bits(s: str) -> BitString:
    """Return s unchanged if it is a bitstring, otherwise raise ValueError."""
    if not _BIT_CHARS.issuperset(s):
        raise ValueError(f"not a bitstring: {s[:32]!r}")
    return s


def to_index(x: BitString) -> int:
    return int("1" + x, 2) - 1


def from_index(i: int) -> BitString:
    if i < 0:
        raise ValueError("index must be a natural number")
    return bin(i + 1)[3:]


def strings_of_length(n: int) -> Iterator[BitString]:
    """All 2**n strings of length n in lexicographic order."""
    if n == 0:
        yield ""
        return
    for value in range(1 << n):
        yield format(value, f"0{n}b")


def length_field(x: BitString) -> BitString:
    """l(x) written with the standard correspondence."""
    return from_index(len(x))


def encode_sd1(x: BitString) -> BitString:
    """x' = 1^l(x) 0 x."""
    return "1" * len(x) + "0" + x


def encode_sd2(x: BitString) -> BitString:
    """x'' = 1^l(l(x)) 0 l(x) x."""
    field = length_field(x)
    return "1" * len(field) + "0" + field + x


def _take(s: BitString, start: int, count: int) -> BitString:
    if start + count > len(s):
        raise MalformedPrefixError(
            f"need {count} bits at offset {start}, only {len(s) - start} left"
        )
    return s[start : start + count]


def _unary(s: BitString, start: int) -> Tuple[int, int]:
    """Count 1s up to the terminating 0; return (count, offset after the 0)."""
    stop = s.find("0", start)
    if stop < 0:
        raise MalformedPrefixError("unary length field never terminates")
    return stop - start, stop + 1


def decode_sd1(s: BitString) -> Tuple[BitString, BitString]:
    """Split s into (x, rest) where s starts with x'."""
    length, offset = _unary(s, 0)
    x = _take(s, offset, length)
    return x, s[offset + length :]


def decode_pair(s: BitString) -> Tuple[BitString, BitString]:
    """Split s = x'' y into (x, y)."""
    field_length, offset = _unary(s, 0)
    field = _take(s, offset, field_length)
    offset += field_length
    length = to_index(field)
    x = _take(s, offset, length)
    return x, s[offset + length :]


decode_sd2 = decode_pair


def encode_pair(x: BitString, y: BitString) -> BitString:
    """<x, y> := x'' y."""
    return encode_sd2(x) + y


def encode_tuple(*items: BitString) -> BitString:
    """<x, y, z> = <x, <y, z>>; a single item is itself."""
    if not items:
        raise ValueError("encode_tuple needs at least one item")
    encoded = items[-1]
    for item in reversed(items[:-1]):
        encoded = encode_pair(item, encoded)
    return encoded


def decode_tuple(s: BitString, k: int) -> List[BitString]:
    """Inverse of encode_tuple for k items."""
    if k < 1:
        raise ValueError("decode_tuple needs k >= 1")
    items = []
    rest = s
    for _ in range(k - 1):
        item, rest = decode_pair(rest)
        items.append(item)
    items.append(rest)
    return items


def encode_natural(n: int) -> BitString:
    """Self-delimiting code of a natural number."""
    return encode_sd2(from_index(n))


def decode_natural(s: BitString) -> Tuple[int, BitString]:
    x, rest = decode_pair(s)
    return to_index(x), rest


def is_prefix_free(codes: Iterable[BitString]) -> bool:
    """True when no code is a proper prefix of another (duplicates count as clashes)."""
    ordered = sorted(codes)
    return all(not b.startswith(a) for a, b in zip(ordered, ordered[1:]))
