"""Length filtration of the degree-0 part of a Leavitt path algebra.

Stage n of the filtration is spanned by monomials s.t* whose sides are
paths of a common length m with a common endpoint, where m = n or the
endpoint is a sink (sink-supported monomials cannot be lengthened, so
they must be carried along; see README).  Stage n is a product of
matrix algebras, one block per label:

    (m, w)  for every sink w and 0 <= m <= n, and
    (n, w)  for every non-sink w,

of size p(m, w) = number of length-m paths into w.  The operations
here certify that picture symbolically: the dimension of the stage is
computed by actually reducing the spanning set, and the two
K-group-level transition matrices are recovered by decomposing
idempotents with the rewriting engine rather than by trusting the
counting formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LeavittAlgebra, Monomial, _paths_by_target, _sort_key, \
    corner_data, corner_phi
from .groups import SizeLimitError
from .matrices import IntMatrix
from .quiver import OrderedQuiver, as_ordered, path_count_matrix, \
    reduced_incidence, require_no_sources


@dataclass(frozen=True)
class Block:
    level: int
    vertex: str
    size: int


@dataclass(frozen=True)
class BlockProfile:
    level: int
    blocks: tuple  # Block entries sorted by (level, vertex position)

    @property
    def count(self) -> int:
        return len(self.blocks)

    @property
    def sum_of_squares(self) -> int:
        return sum(b.size ** 2 for b in self.blocks)

    def index_of(self, level: int, vertex: str) -> int:
        for i, b in enumerate(self.blocks):
            if b.level == level and b.vertex == vertex:
                return i
        raise KeyError((level, vertex))


def block_profile(q: OrderedQuiver, n: int) -> BlockProfile:
    """Matrix-algebra block labels and sizes of stage n.

    >>> from .quiver import order_sinks_first, parse_quiver
    >>> toep = order_sinks_first(parse_quiver(
    ...     "vertices 1 2\\narrow a 1 1\\narrow b 1 2"))
    >>> [b.size for b in block_profile(toep, 2).blocks]
    [1, 1, 1, 1]
    """
    q = as_ordered(q)
    require_no_sources(q)
    if n < 0:
        raise ValueError("filtration level must be nonnegative")
    sizes = {}
    for m in range(n + 1):
        counts = path_count_matrix(q, m)
        for j, w in enumerate(q.vertices):
            sizes[(m, w)] = sum(counts[i, j] for i in range(q.v))
    blocks = []
    for m in range(n + 1):
        for j, w in enumerate(q.vertices):
            is_sink = j < q.v_prime
            if (is_sink and m <= n) or (not is_sink and m == n):
                blocks.append(Block(level=m, vertex=w, size=sizes[(m, w)]))
    blocks.sort(key=lambda b: (b.level, q.index(b.vertex)))
    return BlockProfile(level=n, blocks=tuple(blocks))


def _spanning_monomials(alg: LeavittAlgebra, q: OrderedQuiver, n: int,
                        limit: int):
    by_target = _paths_by_target(alg, n, limit)
    monomials = []
    for m in range(n + 1):
        for j, w in enumerate(q.vertices):
            is_sink = j < q.v_prime
            if not ((is_sink and m <= n) or (not is_sink and m == n)):
                continue
            paths = by_target[m].get(w, ())
            if len(monomials) + len(paths) ** 2 > limit:
                raise SizeLimitError(
                    f"spanning set would exceed {limit} monomials")
            for left in paths:
                for right in paths:
                    monomials.append(Monomial(left, right))
    return monomials


def filtration_span_dim(q: OrderedQuiver, n: int, limit: int = 60000) -> int:
    """Dimension of stage n, computed by reducing its spanning set.

    Every spanning monomial is rewritten to normal form and the rank of
    the resulting coefficient rows is taken by sparse elimination over
    the rationals, so this really measures the span and not the count.
    """
    q = as_ordered(q)
    require_no_sources(q)
    alg = LeavittAlgebra(q)
    monomials = _spanning_monomials(alg, q, n, limit)
    pivots: dict = {}
    rank = 0
    for mon in monomials:
        row = dict(alg._normalize([(mon, alg.coerce(1))]))
        while row:
            lead = max(row, key=_sort_key)
            if lead not in pivots:
                inv = 1 / row[lead]
                pivots[lead] = {k: c * inv for k, c in row.items()}
                rank += 1
                break
            factor = row[lead]
            for k, c in pivots[lead].items():
                s = row.get(k, alg.coerce(0)) - factor * c
                if s == 0:
                    row.pop(k, None)
                else:
                    row[k] = s
    return rank


def _least_path(alg: LeavittAlgebra, by_target, length: int, vertex: str):
    paths = by_target[length].get(vertex, ())
    if not paths:
        raise AssertionError(
            f"no length-{length} path into {vertex!r}; quiver has sources?")
    return paths[0]


def inclusion_k0_matrix(q: OrderedQuiver, n: int, limit: int = 60000) -> IntMatrix:
    """Transition matrix of stage n inside stage n+1 on idempotent classes.

    Sink-block idempotents are carried along unchanged; the minimal
    idempotent s.s* of a non-sink block splits as the sum of (s a)(s a)*
    over the arrows a leaving its endpoint, and the summands are counted
    by the block they land in.  The splitting identity itself is checked
    by the rewriting engine before anything is counted.
    """
    q = as_ordered(q)
    require_no_sources(q)
    alg = LeavittAlgebra(q)
    src = block_profile(q, n)
    dst = block_profile(q, n + 1)
    by_target = _paths_by_target(alg, n, limit)
    rows = [[0] * src.count for _ in range(dst.count)]
    for col, block in enumerate(src.blocks):
        sigma = _least_path(alg, by_target, block.level, block.vertex)
        u = Monomial(sigma, sigma)
        if q.is_sink(block.vertex):
            rows[dst.index_of(block.level, block.vertex)][col] += 1
            continue
        parts = []
        for a in alg._out[block.vertex]:
            ext = alg.path(list(sigma.arrows) + [a]) if sigma.arrows \
                else alg.path([a])
            parts.append(Monomial(ext, ext))
        total = alg.zero()
        for p in parts:
            total = total + alg.element([(p, 1)])
        if total != alg.element([(u, 1)]):
            raise AssertionError("idempotent splitting failed symbolically")
        for p in parts:
            rows[dst.index_of(n + 1, p.left.target)][col] += 1
    return IntMatrix(rows)


def phi_k0_matrix(q: OrderedQuiver, n: int, limit: int = 60000) -> IntMatrix:
    """Effect of the corner endomorphism on stage-n idempotent classes.

    Each block's minimal idempotent u is pushed through t+ . u . t- with
    plain monomial products; the result must be a single unreduced
    monomial, whose block at stage n+1 receives the count.
    """
    q = as_ordered(q)
    require_no_sources(q)
    alg = LeavittAlgebra(q)
    corner = corner_data(alg)
    src = block_profile(q, n)
    dst = block_profile(q, n + 1)
    by_target = _paths_by_target(alg, n, limit)
    tplus = list(corner.t_plus.terms())
    tminus = list(corner.t_minus.terms())
    rows = [[0] * src.count for _ in range(dst.count)]
    for col, block in enumerate(src.blocks):
        sigma = _least_path(alg, by_target, block.level, block.vertex)
        u = Monomial(sigma, sigma)
        raw = []
        for m1, c1 in tplus:
            mid = alg._mul_monomials(m1, u)
            if mid is None:
                continue
            for m2, c2 in tminus:
                out = alg._mul_monomials(mid, m2)
                if out is not None:
                    raw.append((out, alg._cmul(c1, c2)))
        if len(raw) != 1 or raw[0][1] != alg.coerce(1):
            raise AssertionError("corner image is not a single idempotent")
        image = raw[0][0]
        if image.left != image.right or len(image.left) != block.level + 1:
            raise AssertionError("corner image has unexpected shape")
        expected = alg.element([(image, 1)])
        if corner_phi(alg.element([(u, 1)]), corner) != expected:
            raise AssertionError("corner endomorphism mismatch")
        rows[dst.index_of(block.level + 1, image.left.target)][col] += 1
    return IntMatrix(rows)


def expected_inclusion_matrix(q: OrderedQuiver, n: int) -> IntMatrix:
    """The combinatorial block form: identity on sink levels, transposed
    reduced incidence on the top level."""
    q = as_ordered(q)
    v, vp = q.v, q.v_prime
    src_count = (n + 1) * vp + (v - vp)
    dst_count = (n + 2) * vp + (v - vp)
    it = reduced_incidence(q).transpose()
    rows = [[0] * src_count for _ in range(dst_count)]
    for i in range((n + 1) * vp):
        rows[i][i] = 1
    for a in range(v):
        for b in range(v - vp):
            rows[(n + 1) * vp + a][(n + 1) * vp + b] = it[a, b]
    return IntMatrix(rows)


def expected_phi_matrix(q: OrderedQuiver, n: int) -> IntMatrix:
    """The combinatorial block form: zero rows on the fresh sink level,
    identity shifted one level up."""
    q = as_ordered(q)
    v, vp = q.v, q.v_prime
    src_count = (n + 1) * vp + (v - vp)
    dst_count = (n + 2) * vp + (v - vp)
    rows = [[0] * src_count for _ in range(dst_count)]
    for i in range(src_count):
        rows[vp + i][i] = 1
    return IntMatrix(rows)


def stabilized_block_difference(q: OrderedQuiver, n: int,
                                limit: int = 60000) -> IntMatrix:
    """phi minus inclusion, with all sink-level labels deleted.

    What remains is supported on the top-level labels and must equal
    the matrix produced by :func:`leavittk.ktheory.leavitt_matrix`.
    """
    q = as_ordered(q)
    diff = phi_k0_matrix(q, n, limit) - inclusion_k0_matrix(q, n, limit)
    src = block_profile(q, n)
    dst = block_profile(q, n + 1)
    keep_cols = [i for i, b in enumerate(src.blocks) if not q.is_sink(b.vertex)]
    keep_rows = [i for i, b in enumerate(dst.blocks) if b.level == n + 1]
    return diff.permuted(keep_rows, keep_cols)


__all__ = [
    "Block",
    "BlockProfile",
    "block_profile",
    "expected_inclusion_matrix",
    "expected_phi_matrix",
    "filtration_span_dim",
    "inclusion_k0_matrix",
    "phi_k0_matrix",
    "stabilized_block_difference",
]
