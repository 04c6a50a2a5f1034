"""Hot semiring kernels, compiled with numba when available.

Every kernel exists twice: a loop version that numba compiles and a
vectorized numpy version. Set ``PROCAT_DISABLE_JIT=1`` to force the numpy
path (also used automatically when numba is not importable). Both variants
are importable through :data:`IMPLS` for tests and benchmarks.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLE_JIT = os.environ.get("PROCAT_DISABLE_JIT", "").lower() in {"1", "true", "yes", "on"}
JIT_ENABLED = numba is not None and not DISABLE_JIT

# exhaustive boolean inverse search visits 2**(n*n) candidates
MAX_SEARCH_DIM = 4


# ---------------------------------------------------------------------------
# loop kernels (numba source)


def _bool_matmul_loops(a, b):
    n, k = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.bool_)
    for i in range(n):
        for j in range(m):
            for t in range(k):
                if a[i, t] and b[t, j]:
                    out[i, j] = True
                    break
    return out


def _nat_matmul_loops(a, b):
    n, k = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for t in range(k):
            x = a[i, t]
            if x == 0:
                continue
            for j in range(m):
                out[i, j] += x * b[t, j]
    return out


def _bool_kron_loops(a, b):
    p, q = a.shape
    r, s = b.shape
    out = np.zeros((p * r, q * s), dtype=np.bool_)
    for i in range(p):
        for j in range(q):
            if a[i, j]:
                for k in range(r):
                    for l in range(s):
                        out[i * r + k, j * s + l] = b[k, l]
    return out


def _bool_inverse_search_loops(f):
    """Exhaustive search for ``g`` with ``g f = f g = 1`` over the booleans."""
    n = f.shape[0]
    cells = n * n
    g = np.zeros((n, n), dtype=np.bool_)
    for code in range(1 << cells):
        for c in range(cells):
            g[c // n, c % n] = (code >> c) & 1
        ok = True
        for i in range(n):
            if not ok:
                break
            for j in range(n):
                gf = False
                fg = False
                for t in range(n):
                    if g[i, t] and f[t, j]:
                        gf = True
                    if f[i, t] and g[t, j]:
                        fg = True
                if gf != (i == j) or fg != (i == j):
                    ok = False
                    break
        if ok:
            return True, g.copy()
    return False, g


# ---------------------------------------------------------------------------
# numpy kernels


def _bool_matmul_np(a, b):
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def _nat_matmul_np(a, b):
    return a.astype(np.int64) @ b.astype(np.int64)


def _bool_kron_np(a, b):
    return np.kron(a.astype(np.bool_), b.astype(np.bool_))


def _bool_inverse_search_np(f):
    n = f.shape[0]
    cells = n * n
    codes = np.arange(1 << cells, dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(cells)) & 1).astype(np.int64)
    cands = bits.reshape(-1, n, n)
    fi = f.astype(np.int64)
    eye = np.eye(n, dtype=bool)
    gf = np.einsum("cij,jk->cik", cands, fi) > 0
    fg = np.einsum("ij,cjk->cik", fi, cands) > 0
    hit = np.flatnonzero((gf == eye).all(axis=(1, 2)) & (fg == eye).all(axis=(1, 2)))
    if hit.size:
        return True, cands[hit[0]].astype(np.bool_)
    return False, np.zeros((n, n), dtype=np.bool_)


# ---------------------------------------------------------------------------
# dispatch

_LOOPS = {
    "bool_matmul": _bool_matmul_loops,
    "nat_matmul": _nat_matmul_loops,
    "bool_kron": _bool_kron_loops,
    "bool_inverse_search": _bool_inverse_search_loops,
}
_NUMPY = {
    "bool_matmul": _bool_matmul_np,
    "nat_matmul": _nat_matmul_np,
    "bool_kron": _bool_kron_np,
    "bool_inverse_search": _bool_inverse_search_np,
}

IMPLS = {"numpy": _NUMPY}
if numba is not None:
    IMPLS["numba"] = {k: numba.njit(cache=True)(fn) for k, fn in _LOOPS.items()}

_ACTIVE = IMPLS["numba"] if JIT_ENABLED else IMPLS["numpy"]


def bool_matmul(a, b):
    return _ACTIVE["bool_matmul"](np.ascontiguousarray(a, dtype=np.bool_),
                                  np.ascontiguousarray(b, dtype=np.bool_))


def nat_matmul(a, b):
    return _ACTIVE["nat_matmul"](np.ascontiguousarray(a, dtype=np.int64),
                                 np.ascontiguousarray(b, dtype=np.int64))


def bool_kron(a, b):
    return _ACTIVE["bool_kron"](np.ascontiguousarray(a, dtype=np.bool_),
                                np.ascontiguousarray(b, dtype=np.bool_))


def bool_inverse_search(f):
    f = np.ascontiguousarray(f, dtype=np.bool_)
    if f.shape[0] > MAX_SEARCH_DIM:
        raise ValueError(f"exhaustive search is capped at dimension {MAX_SEARCH_DIM}")
    found, g = _ACTIVE["bool_inverse_search"](f)
    return g if found else None
