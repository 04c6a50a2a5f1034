"""Commutative semirings with involution, and dense matrices over them.

Matrices are plain numpy arrays of the semiring's dtype. The three built-in
carriers (complex, boolean, natural) route products through fast kernels;
any other semiring, or one made with :meth:`Semiring.generic`, multiplies
with its own ``add``/``mul`` in Python.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, replace
from typing import Any, Callable

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class Semiring:
    name: str
    dtype: Any
    zero: Any
    one: Any
    add: Callable
    mul: Callable
    conj: Callable = lambda x: x
    tol: float | None = None  # ``None`` means exact comparison
    fast: bool = False

    def generic(self) -> "Semiring":
        """Same semiring with the kernel fast path switched off."""
        return replace(self, fast=False, name=f"{self.name}/generic")

    def eq(self, x, y) -> bool:
        if self.tol is None:
            return x == y
        return abs(x - y) <= self.tol

    # matrices -----------------------------------------------------------
    def asarray(self, entries) -> np.ndarray:
        arr = np.asarray(entries, dtype=self.dtype)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
        return arr

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        out = np.empty((rows, cols), dtype=self.dtype)
        out[...] = self.zero
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.one
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
        if self.fast:
            if self.dtype is np.bool_:
                return _kernels.bool_matmul(a, b)
            if self.dtype is np.int64:
                return _kernels.nat_matmul(a, b)
            return a @ b
        out = self.zeros(a.shape[0], b.shape[1])
        for i in range(a.shape[0]):
            for j in range(b.shape[1]):
                acc = self.zero
                for t in range(a.shape[1]):
                    acc = self.add(acc, self.mul(a[i, t], b[t, j]))
                out[i, j] = acc
        return out

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.fast:
            if self.dtype is np.bool_:
                return _kernels.bool_kron(a, b)
            return np.kron(a, b)
        p, q = a.shape
        r, s = b.shape
        out = self.zeros(p * r, q * s)
        for i in range(p):
            for j in range(q):
                for k in range(r):
                    for l in range(s):
                        out[i * r + k, j * s + l] = self.mul(a[i, j], b[k, l])
        return out

    def madd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Entrywise sum."""
        if a.shape != b.shape:
            raise ValueError(f"cannot add {a.shape} and {b.shape}")
        if self.fast:
            return (a | b) if self.dtype is np.bool_ else a + b
        out = self.zeros(*a.shape)
        for idx in np.ndindex(a.shape):
            out[idx] = self.add(a[idx], b[idx])
        return out

    def scale(self, s, a: np.ndarray) -> np.ndarray:
        out = self.zeros(*a.shape)
        for idx in np.ndindex(a.shape):
            out[idx] = self.mul(s, a[idx])
        return out

    def adjoint(self, a: np.ndarray) -> np.ndarray:
        """Conjugate transpose (plain transpose when ``conj`` is trivial)."""
        if self.fast:
            return np.conj(a).T.copy() if self.dtype is np.complex128 else a.T.copy()
        out = self.zeros(a.shape[1], a.shape[0])
        for i, j in np.ndindex(a.shape):
            out[j, i] = self.conj(a[i, j])
        return out

    def allclose(self, a: np.ndarray, b: np.ndarray) -> bool:
        if a.shape != b.shape:
            return False
        if self.tol is None:
            return bool(np.array_equal(a, b))
        if a.size == 0:
            return True
        return float(np.max(np.abs(a - b))) <= self.tol

    def is_zero(self, x) -> bool:
        return self.eq(x, self.zero)


COMPLEX = Semiring(
    "complex", np.complex128, 0j, 1 + 0j, operator.add, operator.mul,
    conj=np.conj, tol=1e-9, fast=True,
)
BOOL = Semiring(
    "bool", np.bool_, False, True, operator.or_, operator.and_, fast=True,
)
NAT = Semiring(
    "nat", np.int64, 0, 1, operator.add, operator.mul, fast=True,
)
