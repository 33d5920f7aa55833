"""K-theory pipelines driven by the incidence matrix.

The key object is the v x (v - v') integer matrix obtained by stacking
a zero sink block on top of an identity and subtracting the transposed
reduced incidence matrix.  Its kernel/cokernel over Z/m give the
mod-m K-groups of the quiver's Leavitt path algebra in odd/even
degrees, with everything vanishing in negative degrees.  The tables
computed here are valid over algebraically closed base fields whose
characteristic does not divide the modulus; the CLI repeats that
hypothesis next to every table.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd

from .groups import (FinAbGroup, Modulus, cokernel_int, cokernel_mod,
                     factorize, kernel_mod, kernel_rank_int)
from .matrices import IntMatrix
from .quiver import OrderedQuiver, Quiver, as_ordered, order_sinks_first, \
    reduced_incidence, require_no_sources

DEFAULT_WINDOW = (-2, 7)

COKERNEL = "cokernel"
KERNEL = "kernel"
ZERO_NEGATIVE = "zero-negative"


def leavitt_matrix(q: OrderedQuiver) -> IntMatrix:
    """Zero-over-identity block minus the transposed reduced incidence.

    Shape v x (v - v'); the first v' rows (the sinks) carry no identity
    contribution.

    >>> from .quiver import parse_quiver
    >>> jac = order_sinks_first(parse_quiver(
    ...     "vertices 1 2\\narrow a 1 1\\narrow b 1 2"))
    >>> leavitt_matrix(jac).tolists()
    [[-1], [0]]
    """
    q = as_ordered(q)
    require_no_sources(q)
    v, vp = q.v, q.v_prime
    it = reduced_incidence(q).transpose()
    block = [[0] * (v - vp) for _ in range(vp)]
    block += [[1 if i == j else 0 for j in range(v - vp)] for i in range(v - vp)]
    return IntMatrix(block) - it


@dataclass(frozen=True)
class KEntry:
    group: FinAbGroup
    provenance: str  # COKERNEL | KERNEL | ZERO_NEGATIVE


@dataclass(frozen=True)
class KGroupTable:
    modulus: Modulus
    entries: tuple  # ((degree, KEntry), ...) ascending

    def degrees(self) -> tuple:
        return tuple(n for n, _ in self.entries)

    def group_at(self, n: int) -> FinAbGroup:
        for deg, entry in self.entries:
            if deg == n:
                return entry.group
        raise KeyError(n)

    def provenance_at(self, n: int) -> str:
        for deg, entry in self.entries:
            if deg == n:
                return entry.provenance
        raise KeyError(n)


def mod_l_ktheory(q: OrderedQuiver, modulus: Modulus,
                  n_min: int = DEFAULT_WINDOW[0],
                  n_max: int = DEFAULT_WINDOW[1]) -> KGroupTable:
    """Degree-indexed table of mod-m K-groups of the path algebra.

    Even nonnegative degrees read off the cokernel, odd ones the
    kernel, negative degrees vanish.  Composite moduli are accepted but
    flagged: the cyclic coefficient input is only established for prime
    powers, so composite tables are formal CRT extensions.
    """
    if n_min > n_max:
        raise ValueError("empty degree window")
    q = as_ordered(q)
    require_no_sources(q)
    if not modulus.is_prime_power:
        warnings.warn(
            f"modulus {modulus.m} is not a prime power; "
            "table is a formal extension by CRT", stacklevel=2)
    matrix = leavitt_matrix(q)
    even = cokernel_mod(matrix, modulus)
    odd = kernel_mod(matrix, modulus)
    entries = []
    for n in range(n_min, n_max + 1):
        if n < 0:
            entries.append((n, KEntry(FinAbGroup.trivial(), ZERO_NEGATIVE)))
        elif n % 2 == 0:
            entries.append((n, KEntry(even, COKERNEL)))
        else:
            entries.append((n, KEntry(odd, KERNEL)))
    return KGroupTable(modulus=modulus, entries=tuple(entries))


# -- corner-skew long exact sequence ------------------------------------


@dataclass(frozen=True)
class DegreeData:
    """Presentation of one coefficient degree plus the induced map.

    `rank` generators of Z (modulus None) or Z/m presents the group.
    `phi` has `rank` columns; square inputs mean a plain endomorphism.
    When the codomain is strictly larger (`codomain_rank` > rank) the
    identity is embedded below a zero block, sinks-first style, before
    subtracting `phi` -- the stabilized shape produced by quivers with
    sinks, where no square endomorphism can reproduce the tables.
    """

    rank: int
    phi: IntMatrix
    modulus: Modulus | None = None
    codomain_rank: int | None = None

    def __post_init__(self):
        cod = self.codomain_rank if self.codomain_rank is not None else self.rank
        if self.phi.cols != self.rank or self.phi.rows != cod:
            raise ValueError(
                f"phi is {self.phi.rows}x{self.phi.cols}, presentation wants "
                f"{cod}x{self.rank}")
        if cod < self.rank:
            raise ValueError("codomain may not be smaller than the domain")

    @property
    def group(self) -> FinAbGroup:
        if self.modulus is None:
            return FinAbGroup.free(self.rank)
        return FinAbGroup.from_cyclic_orders([self.modulus.m] * self.rank)

    def map_matrix(self) -> IntMatrix:
        cod = self.codomain_rank if self.codomain_rank is not None else self.rank
        rows = [[0] * self.rank for _ in range(cod - self.rank)]
        rows += [[1 if i == j else 0 for j in range(self.rank)]
                 for i in range(self.rank)]
        return IntMatrix(rows) - self.phi


@dataclass(frozen=True)
class CoefficientTheory:
    """Per-degree coefficient groups with their induced endomorphisms.

    Degrees absent from `degrees` are looked up modulo `period` when a
    period is declared, and are an error otherwise.
    """

    degrees: tuple  # ((degree, DegreeData), ...)
    period: int | None = None

    def data_at(self, n: int) -> DegreeData:
        table = dict(self.degrees)
        if n in table:
            return table[n]
        if self.period:
            for k in sorted(table):
                if (n - k) % self.period == 0:
                    return table[k]
        raise KeyError(f"no coefficient data for degree {n}")


@dataclass(frozen=True)
class LesEntry:
    """One degree of the long exact sequence: the middle group is an
    extension of `quotient` (kernel one degree down) by `sub` (cokernel
    at this degree); `resolved` is set only when the extension is
    forced by orders alone."""

    degree: int
    sub: FinAbGroup
    quotient: FinAbGroup
    resolved: FinAbGroup | None


def _sub_of(data: DegreeData) -> FinAbGroup:
    m = data.map_matrix()
    if data.modulus is None:
        return cokernel_int(m)
    return cokernel_mod(m, data.modulus)


def _quotient_of(data: DegreeData) -> FinAbGroup:
    m = data.map_matrix()
    if data.modulus is None:
        return FinAbGroup.free(kernel_rank_int(m))
    return kernel_mod(m, data.modulus)


def _resolve_extension(sub: FinAbGroup, quotient: FinAbGroup) -> FinAbGroup | None:
    if sub.is_trivial:
        return quotient
    if quotient.is_trivial:
        return sub
    if sub.is_cyclic() and quotient.is_cyclic() and sub.is_finite \
            and quotient.is_finite and gcd(sub.order(), quotient.order()) == 1:
        return sub.direct_sum(quotient)
    return None


def corner_les(theory: CoefficientTheory, n_min: int, n_max: int) -> list:
    """Resolve the long exact sequence of the corner-skew triangle.

    Ambiguous extensions are reported with `resolved` unset rather than
    guessed; only order-forced cases are filled in.
    """
    out = []
    for n in range(n_min, n_max + 1):
        sub = _sub_of(theory.data_at(n))
        quotient = _quotient_of(theory.data_at(n - 1))
        out.append(LesEntry(degree=n, sub=sub, quotient=quotient,
                            resolved=_resolve_extension(sub, quotient)))
    return out


def suslin_coefficients(modulus: Modulus, phi_even: IntMatrix,
                        n_min: int, n_max: int,
                        codomain_rank: int | None = None) -> CoefficientTheory:
    """Cyclic coefficients of an algebraically closed field: Z/m in even
    nonnegative degrees, zero elsewhere, with the given even-degree map."""
    zero_data = DegreeData(rank=0, phi=IntMatrix([]), modulus=modulus)
    degrees = []
    for n in range(n_min - 1, n_max + 1):
        if n >= 0 and n % 2 == 0:
            degrees.append((n, DegreeData(rank=phi_even.cols, phi=phi_even,
                                          modulus=modulus,
                                          codomain_rank=codomain_rank)))
        else:
            degrees.append((n, zero_data))
    return CoefficientTheory(degrees=tuple(degrees))


def les_table_for_quiver(q: OrderedQuiver, modulus: Modulus,
                         n_min: int = DEFAULT_WINDOW[0],
                         n_max: int = DEFAULT_WINDOW[1]) -> list:
    """Corner LES entries with the quiver's own stabilized map data."""
    q = as_ordered(q)
    require_no_sources(q)
    it = reduced_incidence(q).transpose()
    theory = suslin_coefficients(modulus, it, n_min, n_max, codomain_rank=q.v)
    return corner_les(theory, n_min, n_max)


# -- divisibility analysis ------------------------------------------------


@dataclass(frozen=True)
class DivisibilityEntry:
    prime: int
    power: int
    modulus: Modulus
    table: KGroupTable
    vanishes: bool
    conclusions: tuple


@dataclass(frozen=True)
class DivisibilityReport:
    sink_free: bool
    determinant: int | None
    determinant_primes: tuple | None
    entries: tuple


def divisibility_report(q: OrderedQuiver, primes) -> DivisibilityReport:
    """Vanishing/divisibility conclusions for each requested prime power.

    A table that vanishes in degrees 0..2 vanishes in every nonnegative
    degree (the groups only depend on parity), which makes the integral
    K-groups uniquely m-divisible; a nonzero group in some parity forces
    one of each adjacent integral pair to be nonzero in that parity.
    """
    q = as_ordered(q)
    require_no_sources(q)
    sink_free = q.v_prime == 0
    det = None
    det_primes = None
    if sink_free:
        det = leavitt_matrix(q).determinant()
        if det != 0:
            det_primes = tuple(p for p, _ in factorize(abs(det))) if abs(det) > 1 \
                else ()
    entries = []
    for l, nu in primes:
        modulus = Modulus.of(l ** nu)
        table = mod_l_ktheory(q, modulus, 0, 2)
        nonzero_parities = []
        for n in (0, 1):
            if not table.group_at(n).is_trivial:
                nonzero_parities.append("even" if n % 2 == 0 else "odd")
        vanishes = not nonzero_parities
        if vanishes:
            conclusions = (
                f"IK_n(L_Q) uniquely {l}^{nu}-divisible for n >= 0",)
        else:
            conclusions = tuple(
                f"for every {parity} n >= 0, at least one of IK_n(L_Q), "
                f"IK_{{n-1}}(L_Q) is nonzero"
                for parity in nonzero_parities)
        entries.append(DivisibilityEntry(prime=l, power=nu, modulus=modulus,
                                         table=table, vanishes=vanishes,
                                         conclusions=conclusions))
    return DivisibilityReport(sink_free=sink_free, determinant=det,
                              determinant_primes=det_primes,
                              entries=tuple(entries))


# -- consistency checks ----------------------------------------------------


def uct_order_check(kn: FinAbGroup, kn_minus_1: FinAbGroup, modulus: Modulus,
                    middle: FinAbGroup) -> bool:
    """Order/exponent consistency of a universal-coefficients extension.

    The middle group must be finite of order |Kn (x) Z/m| * |m-torsion
    of Kn-1| with exponent dividing the product of the two exponents.
    This cannot distinguish the genuinely different extensions with the
    same order profile, and does not try to.
    """
    a = kn.tensor_with_cyclic(modulus.m)
    b = kn_minus_1.torsion_killed_by(modulus.m)
    if not middle.is_finite:
        return False
    if middle.order() != a.order() * b.order():
        return False
    return a.exponent() * b.exponent() % middle.exponent() == 0


@dataclass(frozen=True)
class SplitCheckResult:
    n: int
    modulus: Modulus
    factors: tuple  # prime powers of n
    left: KGroupTable
    right_groups: tuple  # ((degree, FinAbGroup), ...)
    equal_by_degree: tuple  # ((degree, bool), ...)

    @property
    def equal(self) -> bool:
        return all(ok for _, ok in self.equal_by_degree)


def rose_quiver(petals: int) -> OrderedQuiver:
    """One vertex with the given number of loops."""
    arrows = [(f"a{i}", "w", "w") for i in range(1, petals + 1)]
    return order_sinks_first(Quiver.build(("w",), arrows))


def moore_splitting_check(n: int, modulus: Modulus,
                          n_min: int = DEFAULT_WINDOW[0],
                          n_max: int = DEFAULT_WINDOW[1]) -> SplitCheckResult:
    """Compare the rose on n+1 petals against the degreewise direct sum
    over the roses of its prime-power factors."""
    if n < 2:
        raise ValueError("splitting check needs n >= 2")
    factors = tuple(p ** e for p, e in factorize(n))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        left = mod_l_ktheory(rose_quiver(n + 1), modulus, n_min, n_max)
        summands = [mod_l_ktheory(rose_quiver(f + 1), modulus, n_min, n_max)
                    for f in factors]
    right = []
    equal = []
    for deg in left.degrees():
        total = FinAbGroup.trivial()
        for table in summands:
            total = total.direct_sum(table.group_at(deg))
        right.append((deg, total))
        equal.append((deg, total == left.group_at(deg)))
    return SplitCheckResult(n=n, modulus=modulus, factors=factors, left=left,
                            right_groups=tuple(right),
                            equal_by_degree=tuple(equal))


__all__ = [
    "COKERNEL",
    "CoefficientTheory",
    "DEFAULT_WINDOW",
    "DegreeData",
    "DivisibilityEntry",
    "DivisibilityReport",
    "KEntry",
    "KERNEL",
    "KGroupTable",
    "LesEntry",
    "SplitCheckResult",
    "ZERO_NEGATIVE",
    "corner_les",
    "divisibility_report",
    "leavitt_matrix",
    "les_table_for_quiver",
    "mod_l_ktheory",
    "moore_splitting_check",
    "rose_quiver",
    "suslin_coefficients",
    "uct_order_check",
]
