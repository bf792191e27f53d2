"""
稠密线性代数辅助函数，以及复数矩阵的JSON编码
"""

from typing import List

import numpy as np
from scipy import linalg as sla


def max_abs(a) -> float:
    """逐元素最大绝对值，空数组返回 0"""
    arr = np.asarray(a)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def null_space(a: np.ndarray, rcond: float = 1e-9) -> np.ndarray:
    """矩阵核空间的正交基（列向量）"""
    return sla.null_space(np.asarray(a), rcond=rcond)


def numerical_rank(a: np.ndarray, rtol: float = 1e-9) -> int:
    """基于奇异值的相对数值秩"""
    s = sla.svdvals(np.asarray(a))
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def normalize_by_largest(m: np.ndarray) -> np.ndarray:
    """除以列优先顺序中第一个达到最大模的元素，使其等于 1"""
    flat = m.T.reshape(-1)
    mags = np.abs(flat)
    top = mags.max()
    if top == 0.0:
        return m
    idx = int(np.argmax(mags >= (1.0 - 1e-9) * top))
    return m / flat[idx]


def encode_complex(z) -> List[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_vector(v) -> List[List[float]]:
    return [encode_complex(z) for z in np.asarray(v).reshape(-1)]


def encode_matrix(m) -> List[List[List[float]]]:
    """行优先编码为 [[[re, im], ...], ...]"""
    return [encode_vector(row) for row in np.asarray(m)]


def decode_vector(data) -> np.ndarray:
    return np.array([complex(re, im) for re, im in data], dtype=complex)


def decode_matrix(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)
