"""Exact integer matrix powers with 64-bit overflow checking.

Every invariant in this package reduces to diagonals of powers of small
nonnegative integer matrices. Products are evaluated in the cheapest
representation that is provably exact for the values at hand: float64
while a safe bound stays below 2**53 (BLAS path), int64 below 2**63,
arbitrary-precision Python integers beyond that. An entry that leaves the
unsigned 64-bit range raises :class:`MatrixOverflowError`; callers may
retry with the dual-prime modular engine, whose residues are still valid
isomorphism invariants (collision probability about 2**-122 per value).
"""

from __future__ import annotations

import numpy as np

U64_MAX = 2**64 - 1
_INT64_SAFE = 2**63 - 1
_FLOAT_SAFE = 2**53

# Two fixed 61-bit primes (2^61 - 1 and 2^61 - 31) for the modular fallback.
DEFAULT_MODULUS = (2305843009213693951, 2305843009213693921)


class MatrixOverflowError(OverflowError):
    """An entry of a matrix power left the unsigned 64-bit range."""


def _entry_max(m: np.ndarray) -> int:
    return 0 if m.size == 0 else int(m.max())


def _as_float(m: np.ndarray) -> np.ndarray:
    # Callers guarantee entries <= 2**53, so the conversion is exact.
    return m if m.dtype == np.float64 else m.astype(np.float64)


def _as_int64(m: np.ndarray) -> np.ndarray:
    return m if m.dtype == np.int64 else m.astype(np.int64)


def _as_object(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        return m
    return _as_int64(m).astype(object)


def checked_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of nonnegative integer matrices (2-d or stacked 3-d).

    Raises MatrixOverflowError if any entry of the product would exceed
    U64_MAX. The result dtype varies (float64 / int64 / object) but the
    values are always exact integers.
    """
    inner = a.shape[-1]
    bound = inner * _entry_max(a) * _entry_max(b)
    if bound <= _FLOAT_SAFE:
        return _as_float(a) @ _as_float(b)
    if bound <= _INT64_SAFE:
        return _as_int64(a) @ _as_int64(b)
    prod = _as_object(a) @ _as_object(b)
    if _entry_max(prod) > U64_MAX:
        raise MatrixOverflowError(
            "matrix power entry exceeds the unsigned 64-bit range; "
            "retry in modular mode"
        )
    return prod


def _int_rows(diag: np.ndarray) -> list[tuple[int, ...]]:
    if diag.dtype == np.float64:
        diag = diag.astype(np.int64)
    return [tuple(int(x) for x in row) for row in diag]


class PowerCache:
    """Cached exact powers of a stack of square nonnegative integer matrices.

    ``base`` has shape (m, k, k); ``power(p)`` returns the stack of p-th
    powers, computed by repeated squaring with one extra multiply for odd
    exponents. Intermediate powers are cached so escalating queries reuse
    earlier work.
    """

    def __init__(self, base: np.ndarray):
        base = np.asarray(base)
        if base.ndim != 3 or base.shape[-1] != base.shape[-2]:
            raise ValueError(f"expected a (m, k, k) stack, got shape {base.shape}")
        self._pows: dict[int, np.ndarray] = {1: _as_float(base)}

    def power(self, p: int) -> np.ndarray:
        if p < 1:
            raise ValueError(f"power must be >= 1, got {p}")
        got = self._pows.get(p)
        if got is None:
            if p % 2 == 0:
                half = self.power(p // 2)
                got = checked_matmul(half, half)
            else:
                got = checked_matmul(self.power(p - 1), self._pows[1])
            self._pows[p] = got
        return got

    def diagonals(self, p: int) -> list[tuple[int, ...]]:
        """Unsorted diagonal of the p-th power, one tuple per stacked matrix."""
        return _int_rows(np.diagonal(self.power(p), axis1=-2, axis2=-1))

    def traces(self, p: int) -> list[int]:
        return [sum(row) for row in self.diagonals(p)]


class ModularPowerCache:
    """Powers of a matrix stack with entries reduced modulo two fixed primes.

    Residue pairs (x mod p1, x mod p2) are reported as the single integer
    ``r1 * p2 + r2``, an injective encoding that remains a relabeling
    invariant. Traces are reduced per prime before encoding, so the trace
    of a power still equals the encoded sum of its true diagonal.
    """

    def __init__(self, base: np.ndarray, modulus: tuple[int, int] = DEFAULT_MODULUS):
        base = np.asarray(base)
        if base.ndim != 3 or base.shape[-1] != base.shape[-2]:
            raise ValueError(f"expected a (m, k, k) stack, got shape {base.shape}")
        p1, p2 = modulus
        if p1 <= 1 or p2 <= 1 or p1 == p2:
            raise ValueError(f"modulus must be two distinct primes > 1, got {modulus}")
        self.modulus = (int(p1), int(p2))
        b = _as_object(base)
        self._pows: dict[int, tuple[np.ndarray, np.ndarray]] = {
            1: (b % p1, b % p2)
        }

    def power(self, p: int) -> tuple[np.ndarray, np.ndarray]:
        if p < 1:
            raise ValueError(f"power must be >= 1, got {p}")
        got = self._pows.get(p)
        if got is None:
            if p % 2 == 0:
                h1, h2 = self.power(p // 2)
                got = ((h1 @ h1) % self.modulus[0], (h2 @ h2) % self.modulus[1])
            else:
                q1, q2 = self.power(p - 1)
                b1, b2 = self._pows[1]
                got = ((q1 @ b1) % self.modulus[0], (q2 @ b2) % self.modulus[1])
            self._pows[p] = got
        return got

    def _encode(self, r1: int, r2: int) -> int:
        return int(r1) * self.modulus[1] + int(r2)

    def diagonals(self, p: int) -> list[tuple[int, ...]]:
        m1, m2 = self.power(p)
        d1 = np.diagonal(m1, axis1=-2, axis2=-1)
        d2 = np.diagonal(m2, axis1=-2, axis2=-1)
        return [
            tuple(self._encode(x, y) for x, y in zip(r1, r2))
            for r1, r2 in zip(d1, d2)
        ]

    def traces(self, p: int) -> list[int]:
        m1, m2 = self.power(p)
        d1 = np.diagonal(m1, axis1=-2, axis2=-1)
        d2 = np.diagonal(m2, axis1=-2, axis2=-1)
        return [
            self._encode(sum(map(int, r1)) % self.modulus[0],
                         sum(map(int, r2)) % self.modulus[1])
            for r1, r2 in zip(d1, d2)
        ]


def power_cache(base: np.ndarray, modulus: tuple[int, int] | None = None):
    """Engine factory: exact checked arithmetic, or dual-prime modular."""
    if modulus is None:
        return PowerCache(base)
    return ModularPowerCache(base, modulus)
