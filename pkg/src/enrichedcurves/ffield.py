"""Exact linear algebra over prime fields F_q.

Vectors are tuples of residues in ``range(q)``.  Subspaces are kept in
reduced row-echelon form, so two subspaces are equal iff their bases are.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def check_prime(q: int) -> int:
    if not isinstance(q, int) or not is_prime(q):
        raise ValueError(f"field size must be prime, got {q!r}")
    return q


def inv(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, -1, q)


def units(q: int) -> range:
    return range(1, q)


def rref(rows: Iterable[Sequence[int]], n: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon basis of the span of ``rows`` in F_q^n."""
    m = [[x % q for x in r] for r in rows]
    for r in m:
        if len(r) != n:
            raise ValueError(f"row of length {len(r)} in ambient dimension {n}")
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        c = inv(m[rank][col], q)
        m[rank] = [(x * c) % q for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[rank])]
        rank += 1
    return tuple(tuple(r) for r in m[:rank])


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n given by its canonical echelon basis."""

    n: int
    q: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], n: int, q: int) -> "Subspace":
        return cls(n, q, rref(vectors, n, q))

    @classmethod
    def zero(cls, n: int, q: int) -> "Subspace":
        return cls(n, q, ())

    @classmethod
    def full(cls, n: int, q: int) -> "Subspace":
        return cls(n, q, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.n - self.dim

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return Subspace.span(self.basis + (tuple(v),), self.n, self.q).dim == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        if (self.n, self.q) != (other.n, other.q):
            raise ValueError("subspaces live in different spaces")
        return Subspace.span(self.basis + other.basis, self.n, self.q)

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on the subspace, as a subspace of the dual F_q^n."""
        # null space of the basis matrix, read off from the echelon form
        piv = self.pivots
        free = [j for j in range(self.n) if j not in piv]
        vecs = []
        for f in free:
            v = [0] * self.n
            v[f] = 1
            for r, p in zip(self.basis, piv):
                v[p] = (-r[f]) % self.q
            vecs.append(v)
        return Subspace.span(vecs, self.n, self.q)

    def quotient_dim(self) -> int:
        """dim F_q^n / self, computed from an explicit cokernel basis."""
        ann = self.annihilator()
        for phi in ann.basis:
            for b in self.basis:
                if sum(x * y for x, y in zip(phi, b)) % self.q:
                    raise AssertionError("annihilator does not vanish on subspace")
        return ann.dim


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point of P^{n-1}(F_q): nonzero vector with first nonzero entry 1."""

    coords: tuple[int, ...]
    q: int

    def __post_init__(self):
        nz = next((x for x in self.coords if x % self.q), None)
        if nz is None:
            raise ValueError("projective point needs a nonzero coordinate")
        if nz % self.q != 1 or any(not 0 <= x < self.q for x in self.coords):
            raise ValueError(f"coordinates {self.coords} are not normalized mod {self.q}")

    @classmethod
    def normalize(cls, vec: Sequence[int], q: int) -> "ProjPoint":
        vec = [x % q for x in vec]
        nz = next((x for x in vec if x), None)
        if nz is None:
            raise ValueError("projective point needs a nonzero coordinate")
        c = inv(nz, q)
        return cls(tuple((x * c) % q for x in vec), q)

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_invertible(self) -> bool:
        return all(self.coords)

    def __repr__(self):
        return "(" + ":".join(map(str, self.coords)) + ")"


def hyperplane_kernel(p: ProjPoint) -> Subspace:
    """The subspace {x : sum_i p_i x_i = 0}."""
    return Subspace.span([p.coords], p.n, p.q).annihilator()


def include(sub: Subspace, positions: Sequence[int], n: int) -> Subspace:
    """Image of ``sub`` under the coordinate inclusion sending coordinate i to ``positions[i]``."""
    if len(positions) != sub.n:
        raise ValueError("inclusion length does not match subspace dimension")
    if len(set(positions)) != len(positions) or any(not 0 <= j < n for j in positions):
        raise ValueError("inclusion is not an injective map into the ambient coordinates")
    rows = []
    for r in sub.basis:
        v = [0] * n
        for x, j in zip(r, positions):
            v[j] = x
        rows.append(v)
    return Subspace.span(rows, n, sub.q)


def subspace_sum(subspaces: Sequence[Subspace], inclusions: Sequence[Sequence[int]], n: int, q: int) -> Subspace:
    """Sum of the images of ``subspaces`` in F_q^n under coordinate inclusions."""
    if len(subspaces) != len(inclusions):
        raise ValueError("one inclusion per subspace is required")
    rows = []
    for s, pos in zip(subspaces, inclusions):
        if s.q != q:
            raise ValueError("field mismatch")
        rows.extend(include(s, pos, n).basis)
    return Subspace.span(rows, n, q)


def enumerate_proj(n: int, q: int, invertible_only: bool = False) -> list[ProjPoint]:
    """All points of P^{n-1}(F_q) in lexicographic order.

    With ``invertible_only`` only points with every coordinate nonzero.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    check_prime(q)
    out = []
    for lead in range(n):
        head = (0,) * lead + (1,)
        digits = units(q) if invertible_only else range(q)
        if invertible_only and lead > 0:
            break
        for tail in product(digits, repeat=n - lead - 1):
            out.append(ProjPoint(head + tail, q))
    return out
