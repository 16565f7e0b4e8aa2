import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from editdist.bitstring import BitString, as_bits

bit_lists = st.lists(st.integers(0, 1), max_size=200)


@given(bit_lists)
def test_text_roundtrip(bits):
    s = BitString(bits)
    assert BitString.from_text(s.to_text()) == s
    assert len(s) == len(bits)
    assert s.to_text() == "".join(str(b) for b in bits)


@given(bit_lists)
def test_file_roundtrip(bits):
    import os
    import tempfile

    s = BitString(bits)
    fd, path = tempfile.mkstemp()
    os.close(fd)
    try:
        s.write(path)
        assert BitString.read(path) == s
    finally:
        os.unlink(path)


def test_from_text_strips_newline():
    assert BitString.from_text("0101\n") == BitString([0, 1, 0, 1])


def test_from_text_rejects_junk():
    with pytest.raises(ValueError):
        BitString.from_text("01x1")


def test_as_bits_validates():
    with pytest.raises(ValueError):
        as_bits(np.array([0, 2, 1]))
    with pytest.raises(ValueError):
        as_bits(np.array([[0, 1]]))
    out = as_bits([1, 0, 1])
    assert out.dtype == np.uint8
    assert out.tolist() == [1, 0, 1]


def test_as_bits_accepts_bitstring():
    s = BitString([1, 1, 0])
    assert as_bits(s).tolist() == [1, 1, 0]


def test_indexing_and_slicing():
    s = BitString([1, 0, 1, 1])
    assert s[0] == 1 and s[1] == 0
    assert isinstance(s[1:3], BitString)
    assert s[1:3] == BitString([0, 1])


def test_hash_consistent_with_eq():
    a, b = BitString([0, 1]), BitString([0, 1])
    assert a == b and hash(a) == hash(b)
    assert a != BitString([1, 0])
    assert a != "01"
