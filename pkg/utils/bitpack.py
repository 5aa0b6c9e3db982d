"""Packing bitstrings into bytes, most significant bit first."""
import numpy as np


def bits_to_array(x: str) -> np.ndarray:
    """View a bitstring as a uint8 array of 0/1 values."""
    return np.frombuffer(x.encode("ascii"), dtype=np.uint8) - ord("0")


def array_to_bits(arr: np.ndarray) -> str:
    return (np.asarray(arr, dtype=np.uint8) + ord("0")).astype(np.uint8).tobytes().decode("ascii")


def pack_bits(x: str) -> bytes:
    if not x:
        return b""
    return np.packbits(bits_to_array(x), bitorder="big").tobytes()


def unpack_bits(data: bytes, count: int) -> str:
    if count == 0:
        return ""
    if len(data) * 8 < count:
        raise ValueError(f"packed data holds {len(data) * 8} bits, expected {count}")
    arr = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="big", count=count)
    return array_to_bits(arr)
