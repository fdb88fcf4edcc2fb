"""Decimal-string JSON encoding for exact integer payloads.

Integers are serialized as decimal strings so arbitrary-precision values
survive consumers that parse JSON numbers into 64-bit types.  Decoding is
lenient and accepts plain JSON integers as well.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .exact import IntMatrix


def decode_int(obj) -> int:
    if isinstance(obj, bool):
        raise ValueError(f"expected integer, got {obj!r}")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        return int(obj, 10)
    raise ValueError(f"expected integer or decimal string, got {obj!r}")


def encode_int(x: int) -> str:
    return str(int(x))


def decode_vector(obj) -> tuple:
    if not isinstance(obj, (list, tuple)):
        raise ValueError(f"expected array, got {obj!r}")
    return tuple(decode_int(x) for x in obj)


def encode_vector(v: Sequence[int]) -> list:
    return [encode_int(x) for x in v]


def decode_matrix(obj, cols: Optional[int] = None) -> IntMatrix:
    if not isinstance(obj, (list, tuple)):
        raise ValueError(f"expected array of arrays, got {obj!r}")
    return IntMatrix([decode_vector(row) for row in obj], cols=cols)


def encode_matrix(M: IntMatrix) -> list:
    return [encode_vector(row) for row in M.data]


def decode_tensor(obj, slices: Optional[int] = None,
                  cols: Optional[int] = None) -> tuple:
    """Rank-3 tensor as a tuple of matrix slices."""
    if not isinstance(obj, (list, tuple)):
        raise ValueError(f"expected array of matrices, got {obj!r}")
    if slices is not None and len(obj) != slices:
        raise ValueError(f"expected {slices} tensor slices, got {len(obj)}")
    return tuple(decode_matrix(m, cols=cols) for m in obj)


def encode_tensor(T: Sequence[IntMatrix]) -> list:
    return [encode_matrix(m) for m in T]
