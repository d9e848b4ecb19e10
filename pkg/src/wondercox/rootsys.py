"""Root systems of types A-G and their products.

Nodes are numbered as in Bourbaki's tables, 0-based in code.  Weights are
integer tuples in the fundamental-weight basis, concatenated over the
irreducible factors.  The Cartan matrix follows

    cartan[i][j] = <alpha_i, alpha_j^vee>

so row ``i`` is the simple root ``alpha_i`` written in fundamental-weight
coordinates.  With this convention the B2 matrix is ``[[2, -2], [-1, 2]]``
(``alpha_1`` long).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DescriptorError, DimensionError
from . import intlin

Weight = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

# standard positive-root counts, used as a self-check on the closure
POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def _diagram(letter: str, n: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and the edges of the Dynkin diagram."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if letter == "A":
        return [2] * n, chain
    if letter == "B":
        return [2] * (n - 1) + [1], chain
    if letter == "C":
        return [2] * (n - 1) + [4], chain
    if letter == "D":
        return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if letter == "E":
        return [2] * n, [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    if letter == "F":
        return [4, 4, 2, 2], chain
    if letter == "G":
        return [2, 6], chain
    raise DescriptorError(f"unknown type letter {letter!r}")


def _check_descriptor(letter: str, n: int) -> None:
    if letter in _MIN_RANK:
        if n < _MIN_RANK[letter]:
            raise DescriptorError(f"type {letter}{n}: rank must be at least {_MIN_RANK[letter]}")
    elif letter in _FIXED_RANKS:
        if n not in _FIXED_RANKS[letter]:
            raise DescriptorError(f"type {letter}{n}: admissible ranks are {_FIXED_RANKS[letter]}")
    else:
        raise DescriptorError(f"unknown type letter {letter!r}")


def parse_type(spec: str | Sequence) -> tuple[tuple[str, int], ...]:
    """Parse ``"B2xG2"``-style descriptors into ``(("B", 2), ("G", 2))``."""
    if isinstance(spec, str):
        parts = [p for p in re.split(r"\s*[xX]\s*", spec.strip())] if spec.strip() else []
        out = []
        for p in parts:
            m = re.fullmatch(r"([A-Za-z])\s*(\d+)", p)
            if not m:
                raise DescriptorError(f"malformed type descriptor {p!r} in {spec!r}")
            out.append((m.group(1).upper(), int(m.group(2))))
    else:
        out = [(str(l).upper(), int(n)) for l, n in spec]
    if not out:
        raise DescriptorError("empty type descriptor")
    for letter, n in out:
        _check_descriptor(letter, n)
    return tuple(out)


@dataclass(frozen=True)
class RootSystem:
    factors: tuple[tuple[str, int], ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    # squared lengths (alpha_i, alpha_i) of the simple roots
    norms: tuple[int, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def name(self) -> str:
        return "x".join(f"{l}{n}" for l, n in self.factors)

    def factor_offsets(self) -> list[int]:
        out, k = [], 0
        for _, n in self.factors:
            out.append(k)
            k += n
        return out

    def bilinear(self, i: int, j: int) -> Fraction:
        """``(alpha_i, alpha_j)`` for the normalized invariant form."""
        return Fraction(self.cartan[i][j] * self.norms[j], 2)


def build_root_system(spec) -> RootSystem:
    """Build the root system for a descriptor such as ``"A3"`` or ``"B2xG2"``."""
    factors = parse_type(spec)
    total = sum(n for _, n in factors)
    cartan = [[0] * total for _ in range(total)]
    norms: list[int] = []
    off = 0
    for letter, n in factors:
        lengths, edges = _diagram(letter, n)
        for i in range(n):
            cartan[off + i][off + i] = 2
        for i, j in edges:
            ip = -max(lengths[i], lengths[j])  # 2 * (alpha_i, alpha_j)
            cartan[off + i][off + j] = ip // lengths[j]
            cartan[off + j][off + i] = ip // lengths[i]
        norms.extend(lengths)
        off += n
    cartan_t = tuple(tuple(r) for r in cartan)

    roots = _positive_roots(cartan_t)
    rs = RootSystem(factors, cartan_t, roots, tuple(norms))
    expected = sum(POSITIVE_ROOT_COUNT[l](n) for l, n in factors)
    assert len(roots) == expected, (spec, len(roots), expected)
    return rs


def _reflect(cartan, beta: Sequence[int], i: int) -> tuple[int, ...]:
    """Simple reflection ``s_i`` on a vector in simple-root coordinates."""
    pairing = sum(b * cartan[k][i] for k, b in enumerate(beta))  # <beta, alpha_i^vee>
    out = list(beta)
    out[i] -= pairing
    return tuple(out)


def _positive_roots(cartan) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                gamma = _reflect(cartan, beta, i)
                if gamma not in seen and all(c >= 0 for c in gamma):
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return tuple(sorted(seen, key=lambda v: (sum(v), tuple(-c for c in v))))


def dual_cartan(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of the dual root system (the transpose)."""
    return intlin.transpose(rs.cartan)


def _check_weight(rs: RootSystem, w: Sequence[int]) -> Weight:
    w = tuple(int(x) for x in w)
    if len(w) != rs.rank:
        raise DimensionError(f"weight of length {len(w)} for a root system of rank {rs.rank}")
    return w


def is_dominant(rs: RootSystem, w: Sequence[int]) -> bool:
    return all(x >= 0 for x in _check_weight(rs, w))


def _coroot_pairing(rs: RootSystem, w: Weight, alpha: Sequence[int]) -> Fraction:
    """``<w, alpha^vee>`` for a root given in simple-root coordinates."""
    # alpha^vee = sum_k c_k (|alpha_k|^2 / |alpha|^2) alpha_k^vee
    norm = sum(alpha[i] * alpha[j] * rs.bilinear(i, j) for i in range(rs.rank) for j in range(rs.rank))
    return sum((Fraction(c * rs.norms[k]) / norm * w[k] for k, c in enumerate(alpha) if c), Fraction(0))


def weyl_dim(rs: RootSystem, w: Sequence[int]) -> int:
    """Dimension of the simple module with highest weight ``w``.

    >>> weyl_dim(build_root_system("A2"), (1, 0))
    3
    """
    w = _check_weight(rs, w)
    if not is_dominant(rs, w):
        raise ValueError(f"weight {w} is not dominant")
    rho = (1,) * rs.rank
    shifted = tuple(a + 1 for a in w)
    dim = Fraction(1)
    for alpha in rs.positive_roots:
        dim *= _coroot_pairing(rs, shifted, alpha) / _coroot_pairing(rs, rho, alpha)
    assert dim.denominator == 1
    return int(dim)


def simple_root_weight_coords(rs: RootSystem, i: int) -> Weight:
    if not 0 <= i < rs.rank:
        raise IndexError(f"simple root index {i} out of range for rank {rs.rank}")
    return rs.cartan[i]


def decompose_in_simple_roots(rs: RootSystem, w: Sequence[int]) -> tuple[int, ...] | None:
    """Non-negative integer coefficients of ``w`` in the simple roots, if they exist."""
    w = _check_weight(rs, w)
    x = intlin.solve_rational(rs.cartan, w)  # columns of cartan^T are the rows alpha_i
    if x is None or any(c.denominator != 1 or c < 0 for c in x):
        return None
    return tuple(int(c) for c in x)


def diagram_involution(rs: RootSystem) -> tuple[int, ...]:
    """The permutation of simple roots induced by ``-w_0``."""
    perm = list(range(rs.rank))
    for off, (letter, n) in zip(rs.factor_offsets(), rs.factors):
        if letter == "A":
            local = list(reversed(range(n)))
        elif letter == "D" and n % 2 == 1:
            local = list(range(n - 2)) + [n - 1, n - 2]
        elif letter == "E" and n == 6:
            local = [5, 1, 4, 3, 2, 0]
        else:
            continue
        for i, j in enumerate(local):
            perm[off + i] = off + j
    return tuple(perm)


def diagram_automorphisms(rs: RootSystem) -> list[tuple[int, ...]]:
    """All permutations of the nodes preserving the Cartan matrix.

    Includes swaps of isomorphic simple factors.  Found by backtracking
    over node images, pruning on diagonal degree and edge labels.
    """
    n = rs.rank
    a = rs.cartan
    sig = [tuple(sorted((a[i][j], a[j][i]) for j in range(n) if j != i and a[i][j])) for i in range(n)]
    out: list[tuple[int, ...]] = []
    img = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            out.append(tuple(img))
            return
        for t in range(n):
            if used[t] or sig[t] != sig[i]:
                continue
            if all(a[img[k]][t] == a[k][i] and a[t][img[k]] == a[i][k] for k in range(i)):
                img[i] = t
                used[t] = True
                rec(i + 1)
                used[t] = False
        img[i] = -1

    rec(0)
    return out
