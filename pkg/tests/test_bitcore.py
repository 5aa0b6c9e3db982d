import pytest

from core.errors import MalformedPrefixError
from services.bitcore import (
    decode_natural,
    decode_pair,
    decode_sd1,
    decode_tuple,
    encode_natural,
    encode_pair,
    encode_sd1,
    encode_sd2,
    encode_tuple,
    from_index,
    is_prefix_free,
    strings_of_length,
    to_index,
    validate_bits,
)


def all_strings(max_len):
    for n in range(max_len + 1):
        yield from strings_of_length(n)


@pytest.mark.parametrize("index, x", [(0, ""), (1, "0"), (2, "1"), (3, "00"), (4, "01"), (7, "000")])
def test_standard_correspondence(index, x):
    assert from_index(index) == x
    assert to_index(x) == index


def test_correspondence_is_a_bijection_on_small_indices():
    for i in range(1 << 16):
        assert to_index(from_index(i)) == i


@pytest.mark.parametrize("x, expected", [("", "0"), ("01", "11001"), ("1", "101")])
def test_sd1_golden(x, expected):
    assert encode_sd1(x) == expected


def test_sd2_golden():
    assert encode_sd2("") == "0"
    assert encode_sd2("01") == "10101"


def test_length_laws():
    for x in all_strings(16):
        n = len(x)
        assert len(encode_sd1(x)) == 2 * n + 1
        assert len(encode_sd2(x)) == n + 2 * len(from_index(n)) + 1


@pytest.mark.parametrize("encoder", [encode_sd1, encode_sd2])
def test_codes_are_prefix_free(encoder):
    assert is_prefix_free(encoder(x) for x in all_strings(12))


def test_decode_splits_off_the_rest():
    for x in all_strings(8):
        for y in ("", "0", "1101"):
            assert decode_pair(encode_pair(x, y)) == (x, y)
            assert decode_sd1(encode_sd1(x) + y) == (x, y)


def test_truncated_block_is_rejected():
    with pytest.raises(MalformedPrefixError):
        decode_pair("11")
    with pytest.raises(MalformedPrefixError):
        decode_pair("1101")
    with pytest.raises(MalformedPrefixError):
        decode_sd1("110")


def test_tuples_nest_to_the_right():
    encoded = encode_tuple("0", "1", "01")
    assert encoded == encode_pair("0", encode_pair("1", "01"))
    assert decode_tuple(encoded, 3) == ["0", "1", "01"]
    assert encode_tuple("101") == "101"


def test_naturals_are_self_delimiting():
    stream = "".join(encode_natural(n) for n in (0, 5, 63, 1000))
    values = []
    for _ in range(4):
        value, stream = decode_natural(stream)
        values.append(value)
    assert values == [0, 5, 63, 1000]
    assert stream == ""


def test_prefix_free_check_spots_clashes():
    assert not is_prefix_free(["0", "01"])
    assert not is_prefix_free(["1", "1"])
    assert is_prefix_free(["00", "01", "1"])


def test_validate_bits():
    assert validate_bits("0110") == "0110"
    with pytest.raises(ValueError):
        validate_bits("012")
