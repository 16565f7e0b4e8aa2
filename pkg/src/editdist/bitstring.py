"""Binary strings as contiguous uint8 buffers, plus the plain-text file format."""
from __future__ import annotations

import os

import numpy as np


class BitString:
    """Immutable binary string; symbols live in a packed numpy uint8 buffer."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        arr = np.ascontiguousarray(bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bit buffer must be one-dimensional")
        if arr.size and arr.max() > 1:
            raise ValueError("symbols must be 0 or 1")
        self.bits = arr
        self.bits.setflags(write=False)

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        text = text.strip()
        if text and not set(text) <= {"0", "1"}:
            raise ValueError("bitstring text may contain only '0' and '1'")
        return cls(np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"))

    def to_text(self) -> str:
        return (self.bits + ord("0")).tobytes().decode("ascii")

    @classmethod
    def read(cls, path: str | os.PathLike) -> "BitString":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_text(fh.read())

    def write(self, path: str | os.PathLike) -> None:
        # Single line of ASCII '0'/'1' with a trailing newline.
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.to_text())
            fh.write("\n")

    def __len__(self) -> int:
        return int(self.bits.size)

    def __getitem__(self, idx):
        out = self.bits[idx]
        if isinstance(idx, slice):
            return BitString(out)
        return int(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, BitString):
            return np.array_equal(self.bits, other.bits)
        return NotImplemented

    def __hash__(self):
        return hash(self.bits.tobytes())

    def __repr__(self) -> str:
        if len(self) <= 32:
            return f"BitString({self.to_text()!r})"
        return f"BitString(len={len(self)}, {self.to_text()[:16]!r}...)"


def as_bits(s) -> np.ndarray:
    """Coerce a BitString / str / array-like to a validated uint8 bit array."""
    if isinstance(s, BitString):
        return s.bits
    if isinstance(s, str):
        return BitString.from_text(s).bits
    return BitString(s).bits
