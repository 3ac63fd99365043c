"""Integer-encoded field tables and vectorized functional-graph kernels.

Sweeps over thousands of map parameters need more speed than per-element
FieldElem arithmetic.  Elements are encoded as integers in [0, q) (the
order-preserving code from ffield); the kernels below build successor
tables for unicritical maps in bulk and count periodic points by pointer
doubling.  Everything here is an optimization layer: results are checked
against padyn.graph_stats in the test suite.
"""

from __future__ import annotations

from typing import List, Sequence

import numpy as np

from .ffield import FieldCtx

_DIGITS: dict = {}
_POWTABLE: dict = {}
_SMALL_ADD: dict = {}
_SMALL_MUL: dict = {}
_FROB: dict = {}

SMALL_FIELD_LIMIT = 2048


def digit_matrix(ctx: FieldCtx) -> np.ndarray:
    """(q, r) int16 matrix: row i holds the coefficient digits of the
    element with code i (constant term in column 0)."""
    m = _DIGITS.get(ctx)
    if m is None:
        codes = np.arange(ctx.q, dtype=np.int64)
        cols = []
        for _ in range(ctx.r):
            cols.append(codes % ctx.p)
            codes //= ctx.p
        m = np.stack(cols, axis=1).astype(np.int16)
        m.setflags(write=False)
        _DIGITS[ctx] = m
    return m


def _recompose(digits: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    out = np.zeros(digits.shape[:-1], dtype=np.int64)
    for i in range(ctx.r - 1, -1, -1):
        out *= ctx.p
        out += digits[..., i]
    return out


def _reduce_product(full: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    """Fold columns r..2r-2 of a convolution back into degree < r using the
    precomputed x^e reduction rows, then take everything mod p."""
    r, p = ctx.r, ctx.p
    out = full[:, :r].astype(np.int64)
    for e in range(r, 2 * r - 1):
        col = full[:, e] % p
        row = np.asarray(ctx._red[e], dtype=np.int64)
        out += col[:, None] * row[None, :]
    return out % p


def mul_encoded(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise field product of two arrays of element codes."""
    if ctx.r == 1:
        return (a.astype(np.int64) * b.astype(np.int64)) % ctx.p
    D = digit_matrix(ctx)
    da = D[a].astype(np.int64)
    db = D[b].astype(np.int64)
    r = ctx.r
    full = np.zeros((da.shape[0], 2 * r - 1), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            full[:, i + j] += da[:, i] * db[:, j]
    return _recompose(_reduce_product(full, ctx), ctx)


def add_encoded(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise field sum of two arrays of element codes."""
    if ctx.r == 1:
        return (a.astype(np.int64) + b.astype(np.int64)) % ctx.p
    D = digit_matrix(ctx)
    return _recompose((D[a].astype(np.int64) + D[b].astype(np.int64)) % ctx.p, ctx)


def power_table(ctx: FieldCtx, d: int) -> np.ndarray:
    """encode(x^d) for every x, as a (q,) int64 array."""
    key = (ctx, d)
    t = _POWTABLE.get(key)
    if t is None:
        if ctx.r == 1:
            codes = np.arange(ctx.q, dtype=np.int64)
            t = codes.copy()
            for _ in range(d - 1):
                t = (t * codes) % ctx.p
        else:
            codes = np.arange(ctx.q, dtype=np.int64)
            t = codes.copy()
            for _ in range(d - 1):
                t = mul_encoded(ctx, t, codes)
        t.setflags(write=False)
        _POWTABLE[key] = t
    return t


def small_add_table(ctx: FieldCtx) -> np.ndarray:
    """(q, q) addition table for q <= SMALL_FIELD_LIMIT."""
    t = _SMALL_ADD.get(ctx)
    if t is None:
        if ctx.q > SMALL_FIELD_LIMIT:
            raise ValueError("field too large for a dense table")
        if ctx.r == 1:
            codes = np.arange(ctx.q, dtype=np.int64)
            t = (codes[:, None] + codes[None, :]) % ctx.p
        else:
            D = digit_matrix(ctx).astype(np.int64)
            t = _recompose((D[:, None, :] + D[None, :, :]) % ctx.p, ctx)
        t = t.astype(np.int32)
        t.setflags(write=False)
        _SMALL_ADD[ctx] = t
    return t


def small_mul_table(ctx: FieldCtx) -> np.ndarray:
    """(q, q) multiplication table for q <= SMALL_FIELD_LIMIT."""
    t = _SMALL_MUL.get(ctx)
    if t is None:
        if ctx.q > SMALL_FIELD_LIMIT:
            raise ValueError("field too large for a dense table")
        codes = np.arange(ctx.q, dtype=np.int64)
        rows = [mul_encoded(ctx, np.full(ctx.q, i, dtype=np.int64), codes) for i in range(ctx.q)]
        t = np.stack(rows).astype(np.int32)
        t.setflags(write=False)
        _SMALL_MUL[ctx] = t
    return t


_SPLIT_ADD: dict = {}


def _split_add_tables(ctx: FieldCtx):
    """Digitwise mod-p addition has no carries, so the code of a sum splits
    into independent low/high digit blocks.  Returns (lo_size, ADD_LO,
    ADD_HI) with ADD_LO[x, y] = code of the blockwise sum."""
    t = _SPLIT_ADD.get(ctx)
    if t is None:
        h_lo = (ctx.r + 1) // 2
        lo_n = ctx.p**h_lo
        hi_n = ctx.p ** (ctx.r - h_lo)

        def block_table(n: int, width: int) -> np.ndarray:
            codes = np.arange(n, dtype=np.int64)
            digs = []
            c = codes.copy()
            for _ in range(width):
                digs.append(c % ctx.p)
                c //= ctx.p
            out = np.zeros((n, n), dtype=np.int64)
            mult = 1
            for w in range(width):
                out += mult * ((digs[w][:, None] + digs[w][None, :]) % ctx.p)
                mult *= ctx.p
            return out.astype(np.int32)

        t = (lo_n, block_table(lo_n, h_lo), block_table(hi_n, ctx.r - h_lo))
        _SPLIT_ADD[ctx] = t
    return t


def unicritical_affine_successors(ctx: FieldCtx, d: int, c_code: int) -> np.ndarray:
    """Successor codes of all affine points under x -> x^d + c.  Infinity
    is fixed by any polynomial map and is left to the caller."""
    base = power_table(ctx, d)
    if ctx.r == 1:
        return (base + c_code) % ctx.p
    lo_n, add_lo, add_hi = _split_add_tables(ctx)
    return (
        add_hi[base // lo_n, c_code // lo_n].astype(np.int64) * lo_n
        + add_lo[base % lo_n, c_code % lo_n]
    )


def pointer_doubling(succ: np.ndarray) -> np.ndarray:
    """Iterate succ -> succ o succ until the exponent exceeds the node
    count, so every node has been mapped onto its terminal cycle."""
    n = succ.shape[0]
    t = succ.astype(np.int64, copy=True)
    steps = 1
    while steps < n:
        t = t[t]
        steps *= 2
    return t


def periodic_count(succ: np.ndarray) -> int:
    """Number of cyclic nodes of a single successor array."""
    t = pointer_doubling(succ)
    return int(np.count_nonzero(np.bincount(t, minlength=succ.shape[0])))


def batch_periodic_counts(succ_matrix: np.ndarray) -> np.ndarray:
    """Cyclic-node counts for each column of an (n_points, n_maps)
    successor matrix."""
    counts = np.empty(succ_matrix.shape[1], dtype=np.int64)
    for j in range(succ_matrix.shape[1]):
        counts[j] = periodic_count(np.ascontiguousarray(succ_matrix[:, j]))
    return counts


def unicritical_periodic_counts(ctx: FieldCtx, d: int, c_codes: Sequence[int]) -> List[int]:
    """Affine cyclic-node counts of x -> x^d + c for each c, computed in
    deterministic order.  Add 1 (the fixed point at Infinity) for the
    P^1 count."""
    base = power_table(ctx, d)
    out: List[int] = []
    if ctx.r == 1:
        for c in c_codes:
            out.append(periodic_count((base + int(c)) % ctx.p))
        return out
    lo_n, add_lo, add_hi = _split_add_tables(ctx)
    base_hi = base // lo_n
    base_lo = base % lo_n
    for c in c_codes:
        c = int(c)
        succ = add_hi[base_hi, c // lo_n].astype(np.int64) * lo_n + add_lo[base_lo, c % lo_n]
        out.append(periodic_count(succ))
    return out


def image_count_affine(succ: np.ndarray, n: int) -> int:
    """Size of the n-th iterate image of the affine successor array."""
    current = np.unique(succ)
    for _ in range(n - 1):
        current = np.unique(succ[current])
    return int(current.shape[0])


def frobenius_matrix(ctx: FieldCtx, s: int = 1) -> np.ndarray:
    """(r, r) matrix F over GF(p) with F @ digits(a) = digits(a^(p^s));
    the base-field Frobenius is GF(p)-linear."""
    key = (ctx, s)
    m = _FROB.get(key)
    if m is None:
        q0 = ctx.p**s
        cols = []
        for i in range(ctx.r):
            basis = ctx.elem([0] * i + [1])
            cols.append((basis**q0).coeffs)
        m = np.array(cols, dtype=np.int64).T % ctx.p
        m.setflags(write=False)
        _FROB[key] = m
    return m


def generator_mask(ctx: FieldCtx, base_degree=None) -> np.ndarray:
    """Boolean array over codes: True where GF(p^s)(a) is the whole field,
    i.e. a lies in no proper intermediate subfield."""
    s = ctx.base_degree if base_degree is None else base_degree
    if ctx.r % s != 0:
        raise ValueError("base degree must divide r")
    n = ctx.r // s
    D = digit_matrix(ctx).astype(np.int64)
    mask = np.ones(ctx.q, dtype=bool)
    ells = set()
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            ells.add(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        ells.add(m)
    F = frobenius_matrix(ctx, s)
    for ell in ells:
        # F is the p^s-Frobenius, so n/ell applications give x^(q0^(n/ell)).
        Fk = np.eye(ctx.r, dtype=np.int64)
        for _ in range(n // ell):
            Fk = (Fk @ F) % ctx.p
        fixed = ((D @ Fk.T) % ctx.p == D).all(axis=1)
        mask &= ~fixed
    return mask
