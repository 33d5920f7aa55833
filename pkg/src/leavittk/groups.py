"""Finitely generated abelian groups in invariant-factor normal form,
and kernels/cokernels of integer matrices over Z and over Z/m.

Every group is stored in its canonical shape (free rank plus a
divisibility chain of torsion orders), so equality of groups is plain
equality of normal forms; no isomorphism search happens anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod

from .matrices import IntMatrix, smith_normal_form


def factorize(n: int) -> tuple:
    """Prime factorization ((p, e), ...) with strictly increasing primes.

    >>> factorize(360)
    ((2, 3), (3, 2), (5, 1))
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True)
class Modulus:
    """A coefficient modulus m >= 2 together with its factorization."""

    m: int
    factorization: tuple

    @classmethod
    def of(cls, m: int) -> "Modulus":
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        return cls(m=m, factorization=factorize(m))

    @property
    def is_prime_power(self) -> bool:
        return len(self.factorization) == 1

    def __str__(self) -> str:
        return str(self.m)


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_k with d_1 | d_2 | ... | d_k.

    >>> FinAbGroup.from_cyclic_orders([2, 3])
    FinAbGroup(free_rank=0, torsion=(6,))
    >>> print(FinAbGroup.from_cyclic_orders([0, 2, 4]))
    Z (+) Z/2 (+) Z/4
    """

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion order {d} not allowed in normal form")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {self.torsion} violates divisibility")

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FinAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, d: int) -> "FinAbGroup":
        """Z/d; d = 0 means Z, d = 1 the trivial group."""
        if d == 0:
            return cls(1, ())
        return cls.from_cyclic_orders([d])

    @classmethod
    def from_cyclic_orders(cls, orders) -> "FinAbGroup":
        """Normal form of a direct sum of cyclic groups.

        Order 0 stands for Z and order 1 for the trivial summand.  The
        torsion is recombined via per-prime exponent alignment, so
        coprime factors merge and the divisibility chain always holds.
        """
        rank = 0
        by_prime: dict = {}
        for d in orders:
            d = abs(int(d))
            if d == 0:
                rank += 1
            elif d > 1:
                for p, e in factorize(d):
                    by_prime.setdefault(p, []).append(e)
        depth = max((len(es) for es in by_prime.values()), default=0)
        chain = []
        for i in range(depth):
            f = 1
            for p, es in by_prime.items():
                es_sorted = sorted(es, reverse=True)
                if i < len(es_sorted):
                    f *= p ** es_sorted[i]
            chain.append(f)
        chain.reverse()
        return cls(rank, tuple(chain))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Number of elements, or None for infinite groups."""
        if self.free_rank:
            return None
        return prod(self.torsion) if self.torsion else 1

    def exponent(self) -> int | None:
        """Smallest n > 0 killing the group, or None if no such n."""
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def is_cyclic(self) -> bool:
        return self.free_rank == 0 and len(self.torsion) <= 1

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.from_cyclic_orders(
            [0] * (self.free_rank + other.free_rank)
            + list(self.torsion) + list(other.torsion))

    def tensor_with_cyclic(self, m: int) -> "FinAbGroup":
        """self (x) Z/m: the free rank contributes copies of Z/m, each
        Z/d contributes Z/gcd(d, m)."""
        orders = [m] * self.free_rank + [gcd(d, m) for d in self.torsion]
        return FinAbGroup.from_cyclic_orders(orders)

    def torsion_killed_by(self, m: int) -> "FinAbGroup":
        """The m-torsion subgroup {x : m.x = 0}."""
        return FinAbGroup.from_cyclic_orders([gcd(d, m) for d in self.torsion])

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " (+) ".join(parts) if parts else "0"


def group_direct_sum(a: FinAbGroup, b: FinAbGroup) -> FinAbGroup:
    return a.direct_sum(b)


TRIVIAL = FinAbGroup.trivial()


def cokernel_int(matrix: IntMatrix) -> FinAbGroup:
    """Z^rows / image(matrix), via the invariant factors.

    >>> print(cokernel_int(IntMatrix([[2, 0], [0, 3]])))
    Z/6
    """
    dec = smith_normal_form(matrix)
    orders = [0] * (matrix.rows - dec.rank) + list(dec.invariant_factors)
    return FinAbGroup.from_cyclic_orders(orders)


def kernel_rank_int(matrix: IntMatrix) -> int:
    """Rank of the (free) kernel of the map Z^cols -> Z^rows."""
    return matrix.cols - smith_normal_form(matrix).rank


def cokernel_mod(matrix: IntMatrix, modulus: Modulus) -> FinAbGroup:
    """Cokernel of the induced map (Z/m)^cols -> (Z/m)^rows.

    Diagonalizing over Z reduces the question to multiplication maps on
    cyclic groups: each invariant factor d contributes Z/gcd(d, m), and
    rows not hit at all contribute full Z/m summands.
    """
    dec = smith_normal_form(matrix)
    m = modulus.m
    orders = [gcd(d, m) for d in dec.invariant_factors]
    orders += [m] * (matrix.rows - dec.rank)
    return FinAbGroup.from_cyclic_orders(orders)


def kernel_mod(matrix: IntMatrix, modulus: Modulus) -> FinAbGroup:
    """Kernel of the induced map (Z/m)^cols -> (Z/m)^rows."""
    dec = smith_normal_form(matrix)
    m = modulus.m
    orders = [gcd(d, m) for d in dec.invariant_factors]
    orders += [m] * (matrix.cols - dec.rank)
    return FinAbGroup.from_cyclic_orders(orders)


class SizeLimitError(ValueError):
    """Raised when an exhaustive computation would be too large."""


_ORACLE_BOUND = 10 ** 6


def brute_force_mod_oracle(matrix: IntMatrix, modulus: Modulus):
    """Kernel and cokernel of the map (Z/m)^cols -> (Z/m)^rows by
    exhaustive enumeration, classifying each group from its element
    profile.  Completely independent of the Smith-form route; exists to
    certify it on small instances.

    Requires m**cols <= 1e6 and m**rows <= 1e6.
    """
    m = modulus.m
    rows, cols = matrix.rows, matrix.cols
    if m ** cols > _ORACLE_BOUND or m ** rows > _ORACLE_BOUND:
        raise SizeLimitError(
            f"oracle bound exceeded: {m}^{cols} or {m}^{rows} > {_ORACLE_BOUND}")

    mrows = [matrix.row(i) for i in range(rows)]

    def apply(x):
        return tuple(sum(c * xi for c, xi in zip(row, x)) % m for row in mrows)

    kernel_elems = []
    image = set()
    for x in itertools.product(range(m), repeat=cols):
        y = apply(x)
        image.add(y)
        if all(c == 0 for c in y):
            kernel_elems.append(x)

    kernel = _classify_by_annihilator_counts(
        modulus,
        lambda q: sum(1 for x in kernel_elems
                      if all((q * xi) % m == 0 for xi in x)))

    image_order = len(image)
    cokernel = _classify_by_annihilator_counts(
        modulus,
        lambda q: sum(1 for y in itertools.product(range(m), repeat=rows)
                      if tuple((q * yi) % m for yi in y) in image) // image_order)

    return kernel, cokernel


def _classify_by_annihilator_counts(modulus: Modulus, count_killed) -> FinAbGroup:
    """Reconstruct a finite abelian group of exponent dividing m from the
    sizes of its p^j-torsion subgroups.

    count_killed(q) must return #{x in G : q.x = 0}.  For each prime p,
    log_p of the p^j-torsion count as a function of j determines the
    multiset of exponents in the p-primary decomposition.
    """
    orders = []
    for p, e in modulus.factorization:
        logs = []
        for j in range(e + 1):
            c = count_killed(p ** j)
            k = 0
            while c % p == 0:
                c //= p
                k += 1
            if c != 1:
                raise AssertionError("torsion subgroup size is not a p-power")
            logs.append(k)
        # lam[j] = number of cyclic p-power factors with exponent >= j
        lam = [logs[j] - logs[j - 1] for j in range(1, e + 1)] + [0]
        for j in range(1, e + 1):
            orders.extend([p ** j] * (lam[j - 1] - lam[j]))
    return FinAbGroup.from_cyclic_orders(orders)


__all__ = [
    "FinAbGroup",
    "Modulus",
    "SizeLimitError",
    "TRIVIAL",
    "brute_force_mod_oracle",
    "cokernel_int",
    "cokernel_mod",
    "factorize",
    "group_direct_sum",
    "kernel_mod",
    "kernel_rank_int",
]
