"""Sparse structure-constant tensors and exact contractions.

A :class:`SparseTensor` is a COO array: an ``(nnz, rank)`` int64 coordinate
array plus a value array in the field dtype.  The first ``arity`` slots are
inputs and the remaining ones are outputs, so ``mul[i, j, k]`` is the
coefficient of ``e_k`` in ``e_i e_j`` and ``rho[i, j, k]`` the coefficient of
``e_j (x) h_k`` in ``rho(e_i)``.

Entries are kept canonical: sorted lexicographically, no duplicates, no zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .fields import Field

_KEY_LIMIT = 1 << 62


def _group_sum(field: Field, keys_sorted: np.ndarray, values_sorted: np.ndarray):
    starts = np.flatnonzero(np.r_[True, keys_sorted[1:] != keys_sorted[:-1]])
    sums = np.add.reduceat(values_sorted, starts) if len(values_sorted) else values_sorted
    return starts, field.reduce(sums)


def _lex_order(coords: np.ndarray, shape) -> tuple[np.ndarray, np.ndarray]:
    """Sort order of coordinate rows plus an array of comparable keys."""
    if coords.shape[1] == 0:
        return np.arange(len(coords)), np.zeros(len(coords), dtype=np.int64)
    if prod(shape) < _KEY_LIMIT:
        key = np.ravel_multi_index(tuple(coords.T), shape)
        order = np.argsort(key, kind="stable")
        return order, key[order]
    order = np.lexsort(tuple(coords.T[::-1]))
    c = coords[order]
    change = np.r_[True, np.any(c[1:] != c[:-1], axis=1)]
    return order, np.cumsum(change)


@dataclass(frozen=True, eq=False)
class SparseTensor:
    field: Field
    shape: tuple
    arity: int
    coords: np.ndarray
    values: np.ndarray

    @classmethod
    def build(cls, field: Field, shape, coords, values, arity: int | None = None) -> "SparseTensor":
        shape = tuple(int(s) for s in shape)
        values = np.asarray(values)
        coords = np.asarray(coords, dtype=np.int64)
        coords = coords.reshape(values.size, 0) if not shape else coords.reshape(-1, len(shape))
        if values.dtype != field.dtype:
            values = field.array(values.reshape(-1))
        values = values.reshape(-1)
        if len(coords) != len(values):
            raise ValueError("coordinate and value counts differ")
        if len(coords):
            if np.any(coords < 0) or np.any(coords >= np.array(shape, dtype=np.int64)):
                raise ValueError(f"tensor index out of range for shape {shape}")
            order, keys = _lex_order(coords, shape)
            starts, sums = _group_sum(field, keys, values[order])
            coords = coords[order][starts]
            keep = np.asarray(sums != 0, dtype=bool)
            coords, values = coords[keep], sums[keep]
        else:
            values = values.astype(field.dtype)
        return cls(field, shape, len(shape) if arity is None else arity, coords, values)

    @classmethod
    def zeros(cls, field: Field, shape, arity=None) -> "SparseTensor":
        return cls.build(field, shape, np.empty((0, len(shape)), dtype=np.int64), [], arity)

    @classmethod
    def from_dense(cls, field: Field, arr, arity=None) -> "SparseTensor":
        arr = np.asarray(arr)
        if arr.dtype != field.dtype:
            arr = field.array(arr)
        nz = np.argwhere(arr != 0)
        return cls.build(field, arr.shape, nz, arr[tuple(nz.T)] if len(nz) else [], arity)

    @classmethod
    def from_entries(cls, field: Field, shape, entries, arity=None) -> "SparseTensor":
        """From an iterable of ``(index tuple, scalar)`` pairs; repeated indices add."""
        entries = list(entries)
        coords = [tuple(i) for i, _ in entries]
        vals = field.array([field.scalar(c) for _, c in entries]) if entries else []
        return cls.build(field, shape, np.array(coords, dtype=np.int64).reshape(-1, len(shape)),
                         vals, arity)

    @property
    def rank(self) -> int:
        return len(self.shape)

    @property
    def nnz(self) -> int:
        return len(self.values)

    def to_dense(self) -> np.ndarray:
        out = self.field.zeros(self.shape)
        if self.nnz and not self.shape:
            out[()] = self.values[0]
        elif self.nnz:
            out[tuple(self.coords.T)] = self.values
        return out

    def entries(self):
        return [(tuple(int(i) for i in c), v) for c, v in zip(self.coords, self.values)]

    def is_zero(self) -> bool:
        return self.nnz == 0

    def with_arity(self, arity: int) -> "SparseTensor":
        return SparseTensor(self.field, self.shape, arity, self.coords, self.values)

    def permute(self, axes, arity=None) -> "SparseTensor":
        axes = list(axes)
        return SparseTensor.build(
            self.field, [self.shape[a] for a in axes], self.coords[:, axes], self.values,
            self.arity if arity is None else arity,
        )

    def merge(self, groups, arity=None) -> "SparseTensor":
        """Fuse groups of axes into single axes, row-major within each group.

        ``t.merge([[0], [1, 2], [3, 4]])`` turns ``(n, m, d, m, d)`` into
        ``(n, m*d, m*d)``; the fused index of ``(j, k)`` is ``j*d + k``.
        """
        groups = [list(g) for g in groups]
        if sorted(a for g in groups for a in g) != list(range(self.rank)):
            raise ValueError("groups must partition the axes")
        shape = [prod(self.shape[a] for a in g) for g in groups]
        if self.nnz:
            cols = [np.ravel_multi_index(tuple(self.coords[:, g].T), [self.shape[a] for a in g])
                    if g else np.zeros(self.nnz, dtype=np.int64) for g in groups]
            coords = np.stack(cols, axis=1)
        else:
            coords = np.empty((0, len(groups)), dtype=np.int64)
        return SparseTensor.build(self.field, shape, coords, self.values,
                                  len(groups) if arity is None else arity)

    def fix(self, axis: int, index: int) -> "SparseTensor":
        """Slice at ``index`` along ``axis`` (the axis is dropped)."""
        sel = self.coords[:, axis] == index
        keep = [a for a in range(self.rank) if a != axis]
        arity = self.arity - 1 if axis < self.arity else self.arity
        return SparseTensor(
            self.field, tuple(self.shape[a] for a in keep), arity,
            self.coords[sel][:, keep], self.values[sel],
        )

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return SparseTensor.build(
            self.field, self.shape, np.vstack([self.coords, other.coords]),
            np.concatenate([self.values, other.values]), self.arity,
        )

    def __neg__(self) -> "SparseTensor":
        return SparseTensor(self.field, self.shape, self.arity, self.coords,
                            self.field.reduce(-self.values))

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + (-other)

    def scale(self, c) -> "SparseTensor":
        c = self.field.scalar(c)
        return SparseTensor.build(self.field, self.shape, self.coords, self.field.reduce(self.values * c),
                                  self.arity)

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.coords.shape == other.coords.shape
            and bool(np.all(self.coords == other.coords))
            and bool(np.all(self.values == other.values))
        )

    __hash__ = None

    def __repr__(self):
        return f"SparseTensor(shape={self.shape}, arity={self.arity}, nnz={self.nnz}, field={self.field})"


def as_sparse(field: Field, x) -> SparseTensor:
    return x if isinstance(x, SparseTensor) else SparseTensor.from_dense(field, x)


def _reduce_to(t: SparseTensor, idx: str, keep: str) -> SparseTensor:
    """Sum out indices of ``t`` not in ``keep`` and handle repeated letters."""
    coords, values = t.coords, t.values
    seen: dict[str, int] = {}
    mask = np.ones(len(coords), dtype=bool)
    for pos, ch in enumerate(idx):
        if ch in seen:
            mask &= coords[:, pos] == coords[:, seen[ch]]
        else:
            seen[ch] = pos
    letters = [ch for ch in seen if ch in keep]
    cols = [seen[ch] for ch in letters]
    shape = [t.shape[seen[ch]] for ch in letters]
    out = SparseTensor.build(t.field, shape, coords[mask][:, cols], values[mask])
    return out, "".join(letters)


def _join(a: SparseTensor, ia: str, b: SparseTensor, ib: str, out: str) -> SparseTensor:
    field = a.field
    shared = [c for c in ia if c in ib]
    dims = {}
    for t, ix in ((a, ia), (b, ib)):
        for c, n in zip(ix, t.shape):
            if dims.setdefault(c, n) != n:
                raise ValueError(f"index {c!r} has inconsistent sizes")
    out_shape = [dims[c] for c in out]
    if a.nnz == 0 or b.nnz == 0:
        return SparseTensor.zeros(field, out_shape)
    if shared:
        sdims = [dims[c] for c in shared]
        ka = np.ravel_multi_index(tuple(a.coords[:, [ia.index(c) for c in shared]].T), sdims)
        kb = np.ravel_multi_index(tuple(b.coords[:, [ib.index(c) for c in shared]].T), sdims)
    else:
        ka = np.zeros(a.nnz, dtype=np.int64)
        kb = np.zeros(b.nnz, dtype=np.int64)
    order_b = np.argsort(kb, kind="stable")
    kb_sorted = kb[order_b]
    lo = np.searchsorted(kb_sorted, ka, "left")
    hi = np.searchsorted(kb_sorted, ka, "right")
    counts = hi - lo
    total = int(counts.sum())
    if total == 0:
        return SparseTensor.zeros(field, out_shape)
    ai = np.repeat(np.arange(a.nnz), counts)
    offs = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    bi = order_b[np.repeat(lo, counts) + offs]
    vals = field.reduce(a.values[ai] * b.values[bi])
    cols = []
    for c in out:
        if c in ia:
            cols.append(a.coords[ai, ia.index(c)])
        else:
            cols.append(b.coords[bi, ib.index(c)])
    coords = np.stack(cols, axis=1) if cols else np.empty((total, 0), dtype=np.int64)
    return SparseTensor.build(field, out_shape, coords, vals)


def einsum(spec: str, *operands, field: Field | None = None, arity: int | None = None) -> SparseTensor:
    """Exact einsum over sparse (or dense) operands, contracted pairwise left to right.

    Letters shared between operands are matched; letters absent from the output
    are summed.  Dense arrays are converted to sparse form on the fly.
    """
    spec = spec.replace(" ", "")
    lhs, out = spec.split("->")
    terms = lhs.split(",")
    if len(terms) != len(operands):
        raise ValueError("operand count does not match the subscripts")
    if field is None:
        field = next(o.field for o in operands if isinstance(o, SparseTensor))
    ops = [as_sparse(field, o) for o in operands]
    for t, ix in zip(ops, terms):
        if t.rank != len(ix):
            raise ValueError(f"operand of rank {t.rank} given index string {ix!r}")

    def needed(k):
        later = "".join(terms[k:]) + out
        return later

    cur, cur_ix = _reduce_to(ops[0], terms[0], needed(1) if len(ops) > 1 else out)
    for k in range(1, len(ops)):
        nxt, nxt_ix = _reduce_to(ops[k], terms[k], cur_ix + needed(k + 1))
        keep = needed(k + 1)
        res_ix = "".join(dict.fromkeys(c for c in cur_ix + nxt_ix if c in keep))
        cur = _join(cur, cur_ix, nxt, nxt_ix, res_ix)
        cur_ix = res_ix
    if cur_ix != out:
        cur, cur_ix = _reduce_to(cur, cur_ix, out)
        cur = cur.permute([cur_ix.index(c) for c in out])
    return cur.with_arity(cur.rank if arity is None else arity)


def dense(spec: str, *operands, field: Field | None = None) -> np.ndarray:
    return einsum(spec, *operands, field=field).to_dense()
