"""Exact linear algebra over a :class:`~poisson3lie.fields.Field`.

Vectors are 1-d arrays of the field dtype.  Matrices of linear maps use the
column convention: column ``j`` is the image of basis vector ``j``.  Subspaces
always carry a basis in reduced row echelon form, so two subspaces are equal
exactly when their basis arrays are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .fields import Field


class LinAlgError(ValueError):
    pass


@dataclass(frozen=True)
class VectorSpace:
    field: Field
    labels: tuple

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if len(set(labels)) != len(labels):
            raise LinAlgError(f"duplicate basis labels in {labels}")
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LinAlgError(f"unknown basis label {label!r}") from None

    def basis_vector(self, i) -> np.ndarray:
        if isinstance(i, str):
            i = self.index(i)
        v = self.field.zeros(self.dim)
        v[i] = self.field.scalar(1)
        return v

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    def vector(self, coeffs) -> np.ndarray:
        """Build a vector from a ``{label: scalar}`` dict or a sequence."""
        if isinstance(coeffs, dict):
            v = self.zero()
            for k, c in coeffs.items():
                v[self.index(k)] = self.field.scalar(c)
            return v
        v = self.field.array(list(coeffs))
        if v.shape != (self.dim,):
            raise LinAlgError(f"expected {self.dim} coordinates, got {v.shape}")
        return v

    def tensor(self, other: "VectorSpace", sep="⊗") -> "VectorSpace":
        if other.field != self.field:
            raise LinAlgError("tensor product of spaces over different fields")
        return VectorSpace(
            self.field, tuple(f"{a}{sep}{b}" for a in self.labels for b in other.labels)
        )

    def render(self, v) -> str:
        """Human-readable linear combination, e.g. ``1 + g`` or ``2*x - 1/2*y``."""
        parts = []
        for lab, c in zip(self.labels, v):
            if c == 0:
                continue
            s = self.field.format(c)
            neg = s.startswith("-")
            mag = s[1:] if neg else s
            term = lab if mag == "1" else f"{mag}*{lab}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts) if parts else "0"

    def coefficients(self, v) -> dict:
        return {lab: self.field.format(c) for lab, c in zip(self.labels, v) if c != 0}

    @classmethod
    def scalars(cls, field: Field) -> "VectorSpace":
        return cls(field, ("k",))


@dataclass(frozen=True, eq=False)
class LinearMap:
    domain: VectorSpace
    codomain: VectorSpace
    matrix: np.ndarray

    def __post_init__(self):
        if self.domain.field != self.codomain.field:
            raise LinAlgError("domain and codomain over different fields")
        m = np.asarray(self.matrix)
        if m.dtype != self.field.dtype:
            m = self.field.array(m)
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise LinAlgError(
                f"matrix shape {m.shape} does not match {self.codomain.dim}x{self.domain.dim}"
            )
        object.__setattr__(self, "matrix", self.field.reduce(m))

    @property
    def field(self) -> Field:
        return self.domain.field

    @classmethod
    def identity(cls, space: VectorSpace) -> "LinearMap":
        return cls(space, space, space.field.eye(space.dim))

    @classmethod
    def zero(cls, domain: VectorSpace, codomain: VectorSpace) -> "LinearMap":
        return cls(domain, codomain, domain.field.zeros((codomain.dim, domain.dim)))

    @classmethod
    def from_tensor(cls, domain, codomain, arr) -> "LinearMap":
        """From an array indexed ``[domain index..., codomain index...]``."""
        arr = np.asarray(arr)
        return cls(domain, codomain, arr.reshape(domain.dim, codomain.dim).T.copy())

    def __call__(self, v):
        return self.field.matmul(self.matrix, v)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if other.codomain.dim != self.domain.dim:
            raise LinAlgError("composition of incompatible maps")
        return LinearMap(other.domain, self.codomain, self.field.matmul(self.matrix, other.matrix))

    def __add__(self, other):
        return LinearMap(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other):
        return LinearMap(self.domain, self.codomain, self.matrix - other.matrix)

    def __neg__(self):
        return LinearMap(self.domain, self.codomain, -self.matrix)

    def scale(self, c) -> "LinearMap":
        return LinearMap(self.domain, self.codomain, self.matrix * self.field.scalar(c))

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (
            self.matrix.shape == other.matrix.shape
            and bool(np.all(self.matrix == other.matrix))
        )

    __hash__ = None

    def is_identity(self) -> bool:
        return self.domain.dim == self.codomain.dim and bool(
            np.all(self.matrix == self.field.eye(self.domain.dim))
        )

    def is_zero(self) -> bool:
        return bool(np.all(self.matrix == 0))

    def rank(self) -> int:
        return len(rref(self.matrix, self.field)[1])

    def kron(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(
            self.domain.tensor(other.domain),
            self.codomain.tensor(other.codomain),
            self.field.reduce(np.kron(self.matrix, other.matrix)),
        )

    def with_spaces(self, domain=None, codomain=None) -> "LinearMap":
        return LinearMap(domain or self.domain, codomain or self.codomain, self.matrix)


def rref(mat: np.ndarray, field: Field):
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    a = field.reduce(np.array(mat, dtype=field.dtype, copy=True))
    if a.ndim != 2:
        raise LinAlgError("rref expects a matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = field.reduce(a[r] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col != 0)
        if hit.size:
            a[hit] = field.reduce(a[hit] - np.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def row_space(mat: np.ndarray, field: Field, chunk: int = 2048):
    """rref of a possibly very tall matrix, reduced a block of rows at a time."""
    mat = np.asarray(mat)
    if mat.shape[0] <= chunk:
        return rref(mat, field)
    acc = np.empty((0, mat.shape[1]), dtype=field.dtype)
    piv = []
    for start in range(0, mat.shape[0], chunk):
        acc, piv = rref(np.vstack([acc, mat[start:start + chunk]]), field)
    return acc, piv


class EchelonBasis:
    """Incrementally grown basis kept in reduced echelon form."""

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.rows = np.empty((0, n), dtype=field.dtype)
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        v = np.array(v, dtype=self.field.dtype, copy=True)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                v = self.field.reduce(v - v[p] * row)
        return v

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v) != 0)

    def add(self, v) -> bool:
        w = self.reduce(v)
        nz = np.flatnonzero(w != 0)
        if nz.size == 0:
            return False
        p = int(nz[0])
        w = self.field.reduce(w * self.field.inv(w[p]))
        rows = self.rows
        hit = np.flatnonzero(rows[:, p] != 0) if len(rows) else np.empty(0, dtype=int)
        if hit.size:
            rows = rows.copy()
            rows[hit] = self.field.reduce(rows[hit] - np.outer(rows[hit, p], w))
        order = np.searchsorted(self.pivots, p)
        self.rows = np.insert(rows, order, w, axis=0)
        self.pivots.insert(int(order), p)
        return True


def _render_labels(ambient: VectorSpace, basis: np.ndarray) -> tuple:
    labels = [ambient.render(v) for v in basis]
    if len(set(labels)) != len(labels):
        labels = [f"v{i}" for i in range(len(basis))]
    return tuple(labels)


@dataclass(frozen=True, eq=False)
class Subspace:
    ambient: VectorSpace
    basis: np.ndarray
    pivots: tuple = dc_field(default=None)

    def __post_init__(self):
        b = np.asarray(self.basis)
        if b.size == 0:
            b = np.empty((0, self.ambient.dim), dtype=self.field.dtype)
        red, piv = rref(b, self.field)
        object.__setattr__(self, "basis", red)
        object.__setattr__(self, "pivots", tuple(piv))

    @property
    def field(self) -> Field:
        return self.ambient.field

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def space(self) -> VectorSpace:
        return VectorSpace(self.field, _render_labels(self.ambient, self.basis))

    @cached_property
    def inclusion(self) -> LinearMap:
        return LinearMap(self.space, self.ambient, self.basis.T.copy())

    @cached_property
    def equations(self) -> np.ndarray:
        """Rows whose common kernel is exactly this subspace."""
        return kernel_basis(self.basis, self.field)

    def contains(self, v) -> bool:
        v = np.asarray(v)
        if v.ndim == 1:
            v = v[None, :]
        if v.shape[0] == 0:
            return True
        return not np.any(self.field.matmul(v, self.equations.T) != 0)

    def contains_subspace(self, other: "Subspace") -> bool:
        return self.contains(other.basis)

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` (or rows of ``v``) in this basis; raises if outside."""
        v = np.asarray(v)
        single = v.ndim == 1
        rows = v[None, :] if single else v
        c = rows[:, list(self.pivots)]
        if np.any(self.field.matmul(c, self.basis) != rows):
            raise LinAlgError("vector does not lie in the subspace")
        return c[0] if single else c

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.basis.shape == other.basis.shape and bool(np.all(self.basis == other.basis))

    __hash__ = None

    def render(self) -> str:
        return "span{" + ", ".join(self.ambient.render(v) for v in self.basis) + "}"

    @classmethod
    def span(cls, ambient: VectorSpace, vectors) -> "Subspace":
        vecs = np.asarray(vectors)
        if vecs.size == 0:
            vecs = np.empty((0, ambient.dim), dtype=ambient.field.dtype)
        return cls(ambient, row_space(vecs, ambient.field)[0])

    @classmethod
    def whole(cls, ambient: VectorSpace) -> "Subspace":
        return cls(ambient, ambient.field.eye(ambient.dim))

    @classmethod
    def zero(cls, ambient: VectorSpace) -> "Subspace":
        return cls(ambient, np.empty((0, ambient.dim), dtype=ambient.field.dtype))


def kernel_basis(mat: np.ndarray, field: Field) -> np.ndarray:
    """Rows spanning {v : mat @ v = 0}, in reduced echelon form."""
    mat = np.asarray(mat)
    n = mat.shape[1]
    red, piv = row_space(mat, field)
    free = [c for c in range(n) if c not in set(piv)]
    out = field.zeros((len(free), n))
    one = field.scalar(1)
    for k, f in enumerate(free):
        out[k, f] = one
        for r, p in enumerate(piv):
            out[k, p] = -red[r, f]
    return rref(field.reduce(out), field)[0]


def kernel(f: LinearMap) -> Subspace:
    return Subspace(f.domain, kernel_basis(f.matrix, f.field))


def image(f: LinearMap) -> Subspace:
    return Subspace.span(f.codomain, f.matrix.T)


def intersect(subspaces: Sequence[Subspace]) -> Subspace:
    if not subspaces:
        raise LinAlgError("intersection of an empty family")
    amb = subspaces[0].ambient
    for s in subspaces[1:]:
        if s.ambient != amb:
            raise LinAlgError("intersection of subspaces of different ambient spaces")
    if len(subspaces) == 1:
        return subspaces[0]
    eqs = np.vstack([s.equations for s in subspaces])
    return Subspace(amb, kernel_basis(eqs, amb.field))


def subspace_sum(subspaces: Sequence[Subspace]) -> Subspace:
    amb = subspaces[0].ambient
    return Subspace.span(amb, np.vstack([s.basis for s in subspaces]))


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    ambient: VectorSpace
    relations: Subspace
    space: VectorSpace
    projection: LinearMap
    section: LinearMap

    @property
    def dim(self) -> int:
        return self.space.dim


def quotient(ambient: VectorSpace, relations: Subspace, label=None) -> QuotientSpace:
    """Quotient by ``relations``.

    The quotient basis is indexed by the non-pivot columns of the relation
    basis; the section lifts a class to its representative with zero
    coordinates on the pivot columns.
    """
    if relations.ambient != ambient:
        raise LinAlgError("relations live in a different space")
    fld = ambient.field
    piv = list(relations.pivots)
    free = [c for c in range(ambient.dim) if c not in set(piv)]
    label = label or (lambda s: s)
    qspace = VectorSpace(fld, tuple(label(ambient.labels[c]) for c in free))
    proj = fld.zeros((len(free), ambient.dim))
    one = fld.scalar(1)
    for k, c in enumerate(free):
        proj[k, c] = one
    for r, p in enumerate(piv):
        proj[:, p] = -relations.basis[r, free]
    sec = fld.zeros((ambient.dim, len(free)))
    for k, c in enumerate(free):
        sec[c, k] = one
    return QuotientSpace(
        ambient,
        relations,
        qspace,
        LinearMap(ambient, qspace, proj),
        LinearMap(qspace, ambient, sec),
    )


def hom_space(domain: VectorSpace, codomain: VectorSpace) -> VectorSpace:
    return VectorSpace(
        domain.field,
        tuple(f"[{r}<-{c}]" for r in codomain.labels for c in domain.labels),
    )


def solve_linear_maps(
    domain: VectorSpace,
    codomain: VectorSpace,
    constraints: Sequence[Callable[[np.ndarray], np.ndarray]],
) -> Subspace:
    """All maps ``X: domain -> codomain`` with ``c(X) == 0`` for every constraint.

    Each constraint takes the ``codomain.dim x domain.dim`` matrix of ``X`` and
    returns an array that must vanish; it has to be linear in ``X``.  The result
    is a subspace of :func:`hom_space`, coordinates taken row-major.
    """
    fld = domain.field
    space = hom_space(domain, codomain)
    shape = (codomain.dim, domain.dim)
    cols = []
    for k in range(space.dim):
        e = fld.zeros(space.dim)
        e[k] = fld.scalar(1)
        e = e.reshape(shape)
        cols.append(np.concatenate([np.asarray(c(e)).reshape(-1) for c in constraints])
                    if constraints else np.empty(0, dtype=fld.dtype))
    if not constraints:
        return Subspace.whole(space)
    mat = fld.reduce(np.stack(cols, axis=1))
    return Subspace(space, kernel_basis(mat, fld))


def maps_of(sub: Subspace, domain: VectorSpace, codomain: VectorSpace) -> list:
    """The basis of a solution subspace as :class:`LinearMap` objects."""
    return [LinearMap(domain, codomain, v.reshape(codomain.dim, domain.dim)) for v in sub.basis]


def inverse(f: LinearMap) -> LinearMap:
    n = f.domain.dim
    if f.codomain.dim != n:
        raise LinAlgError("only square maps are invertible")
    fld = f.field
    red, piv = rref(np.hstack([f.matrix, fld.eye(n)]), fld)
    if list(piv[:n]) != list(range(n)):
        raise LinAlgError("map is not invertible")
    return LinearMap(f.codomain, f.domain, red[:, n:])
