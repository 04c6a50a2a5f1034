"""Direct sums on matrix backends.

Objects are lists of summand dimensions; a list of length zero is the zero
object. Sums of morphisms are computed literally as codiagonal after direct
sum after diagonal, and every equation that should hold exactly is checked
exactly (over the booleans and naturals) or to the semiring tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .backends import MatrixBackend
from .errors import ShapeMismatch
from .semiring import Semiring


def _total(parts) -> int:
    if isinstance(parts, (int, np.integer)):
        return int(parts)
    return int(sum(parts))


@dataclass(frozen=True)
class BiproductObject:
    summands: tuple

    @property
    def total(self) -> int:
        return int(sum(self.summands))

    @property
    def is_zero(self) -> bool:
        return self.total == 0


# ---------------------------------------------------------------------------
# zero, injections, projections


def zero_map(sr: Semiring, a, b) -> np.ndarray:
    """The unique map ``A -> B`` factoring through the zero object."""
    return sr.zeros(_total(b), _total(a))


def oplus(sr: Semiring, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Block diagonal ``f (+) g``."""
    out = sr.zeros(f.shape[0] + g.shape[0], f.shape[1] + g.shape[1])
    out[: f.shape[0], : f.shape[1]] = f
    out[f.shape[0]:, f.shape[1]:] = g
    return out


def _check_index(parts, i):
    if not 0 <= i < len(parts):
        raise ShapeMismatch(f"summand {i} out of range for partition {tuple(parts)}")


def injection(sr: Semiring, parts: Sequence[int], i: int) -> np.ndarray:
    """``q_i``: the ``i``-th summand into the direct sum."""
    _check_index(parts, i)
    out = sr.zeros(sum(parts), parts[i])
    off = sum(parts[:i])
    for k in range(parts[i]):
        out[off + k, k] = sr.one
    return out


def projection(sr: Semiring, parts: Sequence[int], i: int) -> np.ndarray:
    """``p_i``: the direct sum onto its ``i``-th summand."""
    _check_index(parts, i)
    out = sr.zeros(parts[i], sum(parts))
    off = sum(parts[:i])
    for k in range(parts[i]):
        out[k, off + k] = sr.one
    return out


def diagonal(sr: Semiring, n: int) -> np.ndarray:
    """``A -> A (+) A`` as pairing of two identities (stacked)."""
    return pairing(sr, sr.eye(n), sr.eye(n))


def codiagonal(sr: Semiring, n: int) -> np.ndarray:
    """``A (+) A -> A`` as copairing of two identities (side by side)."""
    return copairing(sr, sr.eye(n), sr.eye(n))


def pairing(sr: Semiring, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``[f, g]: C -> A (+) B`` viewing the sum as a product."""
    if f.shape[1] != g.shape[1]:
        raise ShapeMismatch(f"pairing needs a common domain, got {f.shape} and {g.shape}")
    return np.vstack([f, g]).astype(sr.dtype)


def copairing(sr: Semiring, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``A (+) B -> C`` viewing the sum as a coproduct."""
    if f.shape[0] != g.shape[0]:
        raise ShapeMismatch(f"copairing needs a common codomain, got {f.shape} and {g.shape}")
    return np.hstack([f, g]).astype(sr.dtype)


# ---------------------------------------------------------------------------
# addition


def sum_via_biproduct(sr: Semiring, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``f + g := diag ; (f (+) g) ; codiag``."""
    if f.shape != g.shape:
        raise ShapeMismatch(f"cannot add {f.shape} and {g.shape}")
    rows, cols = f.shape
    return sr.matmul(codiagonal(sr, rows), sr.matmul(oplus(sr, f, g), diagonal(sr, cols)))


def add(sr: Semiring, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Sum of morphisms, cross-checked against entrywise addition."""
    via = sum_via_biproduct(sr, f, g)
    direct = sr.madd(f, g)
    if not sr.allclose(via, direct):
        raise AssertionError("biproduct sum disagrees with entrywise addition")
    return via


@dataclass(frozen=True)
class Check:
    ok: bool
    witness: dict | None = None

    def __bool__(self):
        return self.ok


def distributivity_law(sr: Semiring, f1: np.ndarray, f2: np.ndarray, g: np.ndarray,
                       h: np.ndarray | None = None) -> Check:
    """Composition is bilinear over the biproduct sum.

    Checks ``(f1 + f2) . g = f1 . g + f2 . g`` and, when ``h`` is given,
    ``h . (f1 + f2) = h . f1 + h . f2``. Here ``.`` is matrix product.
    """
    lhs = sr.matmul(sum_via_biproduct(sr, f1, f2), g)
    rhs = sum_via_biproduct(sr, sr.matmul(f1, g), sr.matmul(f2, g))
    if not sr.allclose(lhs, rhs):
        return Check(False, {"side": "right", "f1": f1, "f2": f2, "g": g, "lhs": lhs, "rhs": rhs})
    if h is not None:
        lhs = sr.matmul(h, sum_via_biproduct(sr, f1, f2))
        rhs = sum_via_biproduct(sr, sr.matmul(h, f1), sr.matmul(h, f2))
        if not sr.allclose(lhs, rhs):
            return Check(False, {"side": "left", "f1": f1, "f2": f2, "h": h, "lhs": lhs, "rhs": rhs})
    return Check(True)


# ---------------------------------------------------------------------------
# block matrices


@dataclass(frozen=True)
class BlockMatrix:
    row_parts: tuple
    col_parts: tuple
    blocks: tuple  # tuple of tuples of np.ndarray

    def __str__(self) -> str:
        lines = [f"rows {list(self.row_parts)} cols {list(self.col_parts)}"]
        for i, row in enumerate(self.blocks):
            for j, blk in enumerate(row):
                body = "; ".join(" ".join(_fmt(x) for x in r) for r in blk)
                lines.append(f"  ({i},{j}) {blk.shape[0]}x{blk.shape[1]} [{body}]")
        return "\n".join(lines)


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (complex, np.complexfloating)):
        if x.imag == 0:
            return f"{x.real:g}"
        return f"{x.real:g}{x.imag:+g}i"
    return str(x)


def blocks(sr: Semiring, f: np.ndarray, row_parts, col_parts) -> BlockMatrix:
    """Block ``(i, j)`` is ``p_i . f . q_j``."""
    row_parts, col_parts = tuple(row_parts), tuple(col_parts)
    if f.shape != (sum(row_parts), sum(col_parts)):
        raise ShapeMismatch(f"partitions {row_parts} x {col_parts} do not fit {f.shape}")
    grid = tuple(
        tuple(
            sr.matmul(projection(sr, row_parts, i), sr.matmul(f, injection(sr, col_parts, j)))
            for j in range(len(col_parts))
        )
        for i in range(len(row_parts))
    )
    return BlockMatrix(row_parts, col_parts, grid)


def from_blocks(sr: Semiring, bm: BlockMatrix) -> np.ndarray:
    """``sum_ij q_i . f_ij . p_j``."""
    out = sr.zeros(sum(bm.row_parts), sum(bm.col_parts))
    for i, row in enumerate(bm.blocks):
        for j, blk in enumerate(row):
            if blk.shape != (bm.row_parts[i], bm.col_parts[j]):
                raise ShapeMismatch(f"block ({i},{j}) has shape {blk.shape}")
            term = sr.matmul(injection(sr, bm.row_parts, i),
                             sr.matmul(blk, projection(sr, bm.col_parts, j)))
            out = sr.madd(out, term)
    return out


def block_product(sr: Semiring, g: BlockMatrix, f: BlockMatrix) -> BlockMatrix:
    """Blocks of ``g . f`` from the blocks of ``g`` and ``f``."""
    if g.col_parts != f.row_parts:
        raise ShapeMismatch("inner partitions differ")
    grid = []
    for i in range(len(g.row_parts)):
        row = []
        for j in range(len(f.col_parts)):
            acc = sr.zeros(g.row_parts[i], f.col_parts[j])
            for k in range(len(g.col_parts)):
                acc = sr.madd(acc, sr.matmul(g.blocks[i][k], f.blocks[k][j]))
            row.append(acc)
        grid.append(tuple(row))
    return BlockMatrix(g.row_parts, f.col_parts, tuple(grid))


# ---------------------------------------------------------------------------
# biproduct definitions


def delta_equations(sr: Semiring, parts) -> Check:
    """``p_i . q_j = delta_ij`` and ``sum_i q_i . p_i = 1``."""
    parts = tuple(parts)
    for i in range(len(parts)):
        for j in range(len(parts)):
            got = sr.matmul(projection(sr, parts, i), injection(sr, parts, j))
            want = sr.eye(parts[i]) if i == j else sr.zeros(parts[i], parts[j])
            if not sr.allclose(got, want):
                return Check(False, {"i": i, "j": j, "got": got})
    acc = sr.zeros(sum(parts), sum(parts))
    for i in range(len(parts)):
        acc = sr.madd(acc, sr.matmul(injection(sr, parts, i), projection(sr, parts, i)))
    if not sr.allclose(acc, sr.eye(sum(parts))):
        return Check(False, {"sum": acc})
    return Check(True)


def product_coproduct_iso(sr: Semiring, parts) -> Check:
    """The map from the coproduct to the product whose matrix is the identity
    pattern must be invertible, and (co)pairing must satisfy its equations."""
    from .laws import invert

    parts = tuple(parts)
    n = len(parts)
    grid = tuple(
        tuple(sr.eye(parts[i]) if i == j else sr.zeros(parts[i], parts[j]) for j in range(n))
        for i in range(n)
    )
    canon = from_blocks(sr, BlockMatrix(parts, parts, grid))
    if invert(sr, canon) is None:
        return Check(False, {"canonical": canon})
    if n:
        # unpairing the identity and pairing again gives the identity, and dually
        ps = np.vstack([projection(sr, parts, i) for i in range(n)]).astype(sr.dtype)
        qs = np.hstack([injection(sr, parts, i) for i in range(n)]).astype(sr.dtype)
        if not (sr.allclose(ps, sr.eye(sum(parts))) and sr.allclose(qs, sr.eye(sum(parts)))):
            return Check(False, {"pairing": ps, "copairing": qs})
    return Check(True)


# ---------------------------------------------------------------------------
# distributivity


def dist(sr: Semiring, a1: int, a2: int, c: int) -> np.ndarray:
    """``(A1 (+) A2) (x) C -> (A1 (x) C) (+) (A2 (x) C)``.

    Input index ``i * c + k`` (``i`` in the sum, ``k`` in ``C``) is sent to
    ``i * c + k`` when ``i < a1`` and to ``a1 * c + (i - a1) * c + k``
    otherwise. With row-major Kronecker products these coincide, so the
    result is an identity permutation; it is still built entry by entry.
    """
    n = (a1 + a2) * c
    out = sr.zeros(n, n)
    for i in range(a1 + a2):
        for k in range(c):
            src = i * c + k
            dst = i * c + k if i < a1 else a1 * c + (i - a1) * c + k
            out[dst, src] = sr.one
    return out


def dist_left(sr: Semiring, c: int, a1: int, a2: int) -> np.ndarray:
    """``C (x) (A1 (+) A2) -> (C (x) A1) (+) (C (x) A2)``, a genuine shuffle."""
    n = c * (a1 + a2)
    out = sr.zeros(n, n)
    for k in range(c):
        for i in range(a1 + a2):
            src = k * (a1 + a2) + i
            dst = k * a1 + i if i < a1 else c * a1 + k * a2 + (i - a1)
            out[dst, src] = sr.one
    return out


def is_permutation(m: np.ndarray) -> bool:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    nz = m != 0
    if not np.all((m == 0) | (m == 1)):
        return False
    return bool(np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1))


def dist_naturality(sr: Semiring, f1, f2, g) -> Check:
    """``dist . ((f1 (+) f2) (x) g) = ((f1 (x) g) (+) (f2 (x) g)) . dist``."""
    b1, a1 = f1.shape
    b2, a2 = f2.shape
    d, c = g.shape
    lhs = sr.matmul(dist(sr, b1, b2, d), sr.kron(oplus(sr, f1, f2), g))
    rhs = sr.matmul(oplus(sr, sr.kron(f1, g), sr.kron(f2, g)), dist(sr, a1, a2, c))
    if sr.allclose(lhs, rhs):
        return Check(True)
    return Check(False, {"lhs": lhs, "rhs": rhs})


def dist_left_naturality(sr: Semiring, g, f1, f2) -> Check:
    d, c = g.shape
    b1, a1 = f1.shape
    b2, a2 = f2.shape
    lhs = sr.matmul(dist_left(sr, d, b1, b2), sr.kron(g, oplus(sr, f1, f2)))
    rhs = sr.matmul(oplus(sr, sr.kron(g, f1), sr.kron(g, f2)), dist_left(sr, c, a1, a2))
    if sr.allclose(lhs, rhs):
        return Check(True)
    return Check(False, {"lhs": lhs, "rhs": rhs})


# ---------------------------------------------------------------------------
# matrices over a semiring form a compact closed category


def matrix_construction(sr: Semiring) -> MatrixBackend:
    """Objects are counts ``n`` (n copies of the unit summed), morphisms
    ``n -> m`` are ``m x n`` matrices over ``sr`` and ``n (x) m = n * m``.

    Products go through ``sr.add``/``sr.mul`` directly (no kernels), so the
    result is an independent realisation of the corresponding backend.
    """
    return MatrixBackend(f"mat[{sr.name}]", sr.generic())


def snake_matrix(be: MatrixBackend, n: int) -> np.ndarray:
    """``(1 (x) cup) ; ((sym ; cap) (x) 1)`` on a single wire of dimension ``n``."""
    one = be.identity(n)
    step1 = be.tensor(one, be.cup([n]))
    step2 = be.tensor(be.compose(be.sym([n], [n]), be.cap([n])), one)
    return be.compose(step1, step2)
