"""Exact integer tensor contractions with an int64 fast path guarded by overflow bounds."""

from __future__ import annotations

import numpy as np

_LIMIT = 2**62


def _maxabs(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    if A.dtype == object:
        return max(abs(int(x)) for x in A.flat)
    return int(np.abs(A).max())


def as_object(A: np.ndarray) -> np.ndarray:
    if A.dtype == object:
        return A
    out = np.empty(A.shape, dtype=object)
    out.flat[:] = [int(x) for x in A.flat]
    return out


def tensordot(A: np.ndarray, B: np.ndarray, axes) -> np.ndarray:
    """``np.tensordot`` that stays exact: int64 when the result provably fits, else Python ints."""
    if isinstance(axes, int):
        inner_a = list(range(A.ndim - axes, A.ndim))
    else:
        inner_a = list(axes[0]) if not isinstance(axes[0], int) else [axes[0]]
    inner = 1
    for ax in inner_a:
        inner *= A.shape[ax]
    if A.dtype != object and B.dtype != object:
        if _maxabs(A) * _maxabs(B) * max(inner, 1) < _LIMIT:
            return np.tensordot(A, B, axes=axes)
    return np.tensordot(as_object(A), as_object(B), axes=axes)


def einsum(spec: str, *ops: np.ndarray) -> np.ndarray:
    """Two-operand exact einsum with the same int64/object policy."""
    A, B = ops
    ins, _ = spec.split("->")
    a, b = ins.split(",")
    shared = set(a) & set(b)
    out_idx = spec.split("->")[1]
    inner = 1
    for ch in shared - set(out_idx):
        inner *= A.shape[a.index(ch)]
    if A.dtype != object and B.dtype != object and _maxabs(A) * _maxabs(B) * max(inner, 1) < _LIMIT:
        return np.einsum(spec, A, B)
    return np.einsum(spec, as_object(A), as_object(B))


def add(*arrays: np.ndarray) -> np.ndarray:
    if all(x.dtype != object for x in arrays) and sum(_maxabs(x) for x in arrays) < _LIMIT:
        out = arrays[0].copy()
        for x in arrays[1:]:
            out = out + x
        return out
    out = as_object(arrays[0]).copy()
    for x in arrays[1:]:
        out = out + as_object(x)
    return out


def scale(A: np.ndarray, k: int) -> np.ndarray:
    if A.dtype != object and _maxabs(A) * abs(k) < _LIMIT:
        return A * k
    return as_object(A) * k


def is_zero(A: np.ndarray) -> bool:
    if A.dtype == object:
        return not any(A.flat)
    return not A.any()
