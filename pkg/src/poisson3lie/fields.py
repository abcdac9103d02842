"""Exact scalar fields: the rationals and prime fields F_p.

Every array in the package carries its field's dtype: ``object`` arrays of
``Fraction`` for Q, ``int64`` arrays of canonical residues for F_p (object
arrays of Python ints once p is too large for int64 products to stay exact).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

_INT_RE = re.compile(r"^[+-]?\d+$")
_RAT_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")

# int64 sums of up to 2**22 products of residues stay exact below this bound
_INT64_PRIME_LIMIT = 1 << 20


class FieldError(ValueError):
    pass


class Field:
    """Common interface; see :class:`Rationals` and :class:`PrimeField`."""

    name: str
    dtype: object

    def is_finite(self) -> bool:
        return False

    @property
    def order(self):
        return None

    def scalar(self, x):
        raise NotImplementedError

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data, dtype=object)
        out = np.empty(arr.shape, dtype=self.dtype)
        flat = out.reshape(-1)
        for i, x in enumerate(arr.reshape(-1)):
            flat[i] = self.scalar(x)
        return out

    def zeros(self, shape) -> np.ndarray:
        return self.array(np.zeros(shape, dtype=np.int64))

    def eye(self, n: int) -> np.ndarray:
        return self.array(np.eye(n, dtype=np.int64))

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a @ b)

    def inv(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(self.scalar(x))

    def random_array(self, rng: np.random.Generator, shape, bound: int = 3):
        vals = rng.integers(-bound, bound + 1, size=shape)
        return self.array(vals)

    def descriptor(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    name = "Q"
    dtype = object

    def scalar(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (float, np.floating)):
            raise FieldError("floating point scalars are not accepted")
        return Fraction(x)

    def inv(self, x):
        x = self.scalar(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def parse(self, text: str):
        text = text.strip()
        if not _RAT_RE.match(text):
            raise FieldError(f"not a rational number: {text!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise FieldError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)

    def descriptor(self) -> dict:
        return {"kind": "Q"}

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not sympy.isprime(self.p):
            raise FieldError(f"{self.p!r} is not a prime")

    @property
    def name(self):
        return f"F{self.p}"

    @property
    def dtype(self):
        return np.int64 if self.p < _INT64_PRIME_LIMIT else object

    def is_finite(self) -> bool:
        return True

    @property
    def order(self):
        return self.p

    def scalar(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, (float, np.floating)):
            raise FieldError("floating point scalars are not accepted")
        return int(x) % self.p

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data)
        if arr.dtype.kind in "iu":
            if self.dtype is object:
                return self.reduce(arr.astype(object))
            return np.asarray(np.mod(arr.astype(np.int64), self.p))
        return super().array(data)

    def reduce(self, arr):
        return np.mod(arr, self.p)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def parse(self, text: str):
        text = text.strip()
        if not _INT_RE.match(text):
            raise FieldError(f"not an integer: {text!r}")
        return int(text) % self.p

    def format(self, x) -> str:
        return str(int(x) % self.p)

    def random_array(self, rng, shape, bound=None):
        return self.array(rng.integers(0, self.p, size=shape))

    def descriptor(self) -> dict:
        return {"kind": "Fp", "p": self.p}

    def __str__(self):
        return f"F{self.p}"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc) -> Field:
    if desc == "Q" or desc == {"kind": "Q"}:
        return QQ
    if isinstance(desc, dict) and desc.get("kind") == "Fp":
        return PrimeField(desc.get("p"))
    if isinstance(desc, str) and desc.startswith("F") and desc[1:].isdigit():
        return PrimeField(int(desc[1:]))
    raise FieldError(f"unknown field descriptor {desc!r}")
