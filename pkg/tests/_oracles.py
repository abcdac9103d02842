"""Reference computations that share no code with the package.

The Nambu oracle works with sympy polynomials, the invariant oracles count
vectors one by one over a finite field.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
import sympy

X, Y, Z = sympy.symbols("x y z")


def monomials(p):
    """Exponent triples of the truncated algebra in basis order ``(a*p + b)*p + c``."""
    return [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]


@lru_cache(maxsize=4)
def nambu_bracket(p: int) -> np.ndarray:
    """``T[i, j, k, o]`` of the Jacobian bracket on ``F_p[x,y,z]/(x^p, y^p, z^p)``."""
    mons = monomials(p)
    index = {m: i for i, m in enumerate(mons)}
    polys = [sympy.Poly(X**a * Y**b * Z**c, X, Y, Z, modulus=p) for a, b, c in mons]
    grads = [[f.diff(v) for v in (X, Y, Z)] for f in polys]
    n = len(mons)
    T = np.zeros((n, n, n, n), dtype=np.int64)
    for i, j, k in itertools.combinations(range(n), 3):
        gi, gj, gk = grads[i], grads[j], grads[k]
        det = (gi[0] * (gj[1] * gk[2] - gj[2] * gk[1])
               - gi[1] * (gj[0] * gk[2] - gj[2] * gk[0])
               + gi[2] * (gj[0] * gk[1] - gj[1] * gk[0]))
        for mono, coeff in det.terms():
            if max(mono) >= p:
                continue
            o = index[mono]
            c = int(coeff) % p
            for perm, sign in _signed_perms():
                a, b, d = (i, j, k)[perm[0]], (i, j, k)[perm[1]], (i, j, k)[perm[2]]
                T[a, b, d, o] = (sign * c) % p
    return T


def _signed_perms():
    return [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
            ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)]


def count_solutions(basis: np.ndarray, constraint: np.ndarray, p: int, chunk: int = 2048) -> int:
    """Number of vectors ``v = c @ basis`` (``c`` ranging over ``F_p^r``) with ``v @ constraint == 0``.

    Every coefficient vector is enumerated; ``constraint`` has one column per condition.
    """
    r = basis.shape[0]
    K = (basis @ constraint) % p
    K = K[:, np.any(K != 0, axis=0)]
    if K.shape[1] == 0:
        return p ** r
    total = 0
    coeffs = itertools.product(range(p), repeat=r)
    while True:
        block = np.array(list(itertools.islice(coeffs, chunk)), dtype=np.int64)
        if block.size == 0:
            return total
        total += int(np.sum(~np.any((block @ K) % p != 0, axis=1)))


def dim_from_count(count: int, p: int) -> int:
    d = 0
    while p ** d < count:
        d += 1
    assert p ** d == count, f"{count} is not a power of {p}"
    return d


def filippov_first_failure(T: np.ndarray, p: int):
    """First ``(x, y, z, u, v)`` in lexicographic order where the fundamental identity fails, or None.

    One dense slab per value of ``x``.  Entries are below ``p`` and sums have at
    most ``3n`` terms, so float64 products are exact.
    """
    n = T.shape[0]
    T = (T.astype(np.int64) % p).astype(np.float64)
    flat = T.reshape(n, -1)                                          # [w, (u v o)]
    for x in range(n):
        lhs = (T[x].reshape(-1, n) @ flat).reshape((n,) * 5)         # {{x,y,z},u,v}: [y,z,u,v,o]
        xuv = lhs                                                    # read as {{x,u,v},y,z}: [u,v,y,z,o]
        yuv = (T.reshape(-1, n) @ T[:, :, x, :].reshape(n, -1)).reshape((n,) * 5)  # [y,u,v,z,o]
        zuv = (T.reshape(-1, n) @ T[:, x, :, :].reshape(n, -1)).reshape((n,) * 5)  # [z,u,v,y,o]
        rhs = xuv.transpose(2, 3, 0, 1, 4) + yuv.transpose(0, 3, 1, 2, 4) + zuv.transpose(3, 0, 1, 2, 4)
        bad = np.argwhere((lhs - rhs) % p != 0)
        if len(bad):
            return (x,) + tuple(int(i) for i in bad[0][:4])
    return None


def identity_sides(name: str, T, mul, rho, hmul, idx, p):
    """Both sides of a named identity at one basis tuple, as flat integer vectors."""
    T, mul, rho, hmul = (None if t is None else np.asarray(t).astype(np.int64) for t in (T, mul, rho, hmul))
    if name.startswith("skew_symmetry"):
        swap = {"x<->y": (1, 0, 2), "y<->z": (0, 2, 1), "x<->z": (2, 1, 0)}[name[14:-1]]
        return T[idx], -T[tuple(idx[s] for s in swap)]
    if name == "fundamental_identity":
        x, y, z, u, v = idx
        return (T[x, y, z] @ T[:, u, v],
                T[x, u, v] @ T[:, y, z] + T[y, u, v] @ T[:, z, x] + T[z, u, v] @ T[:, x, y])
    if name == "leibniz":
        x, y, u, v = idx
        return mul[u, v] @ T[x, y], T[x, y, v] @ mul[u] + T[x, y, u] @ mul[:, v]
    if name == "bracket_colinear":
        x, y, z = idx
        lhs = np.einsum("w,wjk->jk", T[x, y, z], rho)
        h3 = np.einsum("bdw,wfk->bdfk", hmul, hmul)
        rhs = np.einsum("ab,cd,ef,acej,bdfk->jk", rho[x], rho[y], rho[z], T, h3)
        return lhs.reshape(-1), rhs.reshape(-1)
    raise KeyError(name)


def witness_matches(witness, lhs, rhs, out_labels, p) -> bool:
    """Both recorded sides equal the recomputed ones, and they differ."""

    def coeffs(v):
        return {lab: str(int(c) % p) for lab, c in zip(out_labels, np.asarray(v).reshape(-1)) if int(c) % p}

    return coeffs(lhs) == witness.lhs and coeffs(rhs) == witness.rhs and coeffs(lhs) != coeffs(rhs)
