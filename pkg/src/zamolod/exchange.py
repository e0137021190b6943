"""Exchange matrices, mutation and the signed Gamma/Delta decomposition.

Indices are 0-based throughout the library; the CLI converts to 1-based.
Colors are the strings ``"w"`` (white) and ``"b"`` (black).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

WHITE = "w"
BLACK = "b"
COLORS = (WHITE, BLACK)

Matrix = Tuple[Tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    return m


def zeros(n: int) -> List[List[int]]:
    return [[0] * n for _ in range(n)]


def normalize_color(c) -> str:
    c = str(c).lower()
    if c in ("w", "white", "o", "0"):
        return WHITE
    if c in ("b", "black", "1"):
        return BLACK
    raise ValueError(f"unknown color {c!r}")


def opposite(c: str) -> str:
    return BLACK if c == WHITE else WHITE


class NotBipartite(ValueError):
    pass


@dataclass(frozen=True)
class ExchangeMatrix:
    b: Matrix
    eps: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", as_matrix(self.b))
        object.__setattr__(self, "eps", tuple(normalize_color(c) for c in self.eps))
        n = len(self.b)
        if len(self.eps) != n:
            raise ValueError("eps length does not match matrix size")
        for i in range(n):
            if self.b[i][i] != 0:
                raise ValueError(f"nonzero diagonal entry at {i}")

    @property
    def n(self) -> int:
        return len(self.b)

    def is_bipartite(self) -> bool:
        n = self.n
        return all(self.b[i][j] == 0 for i in range(n) for j in range(n) if self.eps[i] == self.eps[j])

    def vertices(self, color: str) -> List[int]:
        color = normalize_color(color)
        return [i for i, c in enumerate(self.eps) if c == color]

    def to_json(self) -> dict:
        return {"n": self.n, "b": [list(r) for r in self.b], "eps": list(self.eps)}

    @classmethod
    def from_json(cls, obj) -> "ExchangeMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        b = obj["b"]
        if "n" in obj and obj["n"] != len(b):
            raise ValueError("declared n does not match matrix size")
        eps = obj.get("eps")
        if eps is None:
            return infer_bipartition(b)
        return cls(as_matrix(b), tuple(eps))

    def __neg__(self) -> "ExchangeMatrix":
        return ExchangeMatrix(tuple(tuple(-x for x in r) for r in self.b), self.eps)


@dataclass(frozen=True)
class SignedDecomposition:
    gamma_signed: Matrix
    delta_signed: Matrix
    gamma: Matrix
    delta: Matrix


def infer_bipartition(b: Sequence[Sequence[int]]) -> ExchangeMatrix:
    """2-color the support graph (BFS, first vertex of each component white)."""
    m = as_matrix(b)
    n = len(m)
    eps: List[Optional[str]] = [None] * n
    for s in range(n):
        if eps[s] is not None:
            continue
        eps[s] = WHITE
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in range(n):
                if m[u][v] or m[v][u]:
                    if eps[v] is None:
                        eps[v] = opposite(eps[u])
                        queue.append(v)
                    elif eps[v] == eps[u]:
                        raise NotBipartite(f"odd cycle through vertices {u} and {v}")
    return ExchangeMatrix(m, tuple(eps))


def mutate(m: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at vertex k (0-based), four-case rule."""
    n = m.n
    if not 0 <= k < n:
        raise IndexError(f"vertex {k} out of range for n={n}")
    b = m.b
    out = [list(r) for r in b]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            elif b[i][k] > 0 and b[k][j] > 0:
                out[i][j] = b[i][j] + b[i][k] * b[k][j]
            elif b[i][k] < 0 and b[k][j] < 0:
                out[i][j] = b[i][j] - b[i][k] * b[k][j]
    return ExchangeMatrix(as_matrix(out), m.eps)


def bipartite_mutate(m: ExchangeMatrix, color: str, order: Optional[Sequence[int]] = None) -> ExchangeMatrix:
    """Mutate at every vertex of the given color.

    Same-colored vertices are non-adjacent in a bipartite matrix, so the
    composite does not depend on ``order``; pass an explicit order to check.
    """
    verts = m.vertices(color)
    if order is not None:
        if sorted(order) != sorted(verts):
            raise ValueError("order must be a permutation of the color class")
        verts = list(order)
    out = m
    for k in verts:
        out = mutate(out, k)
    return out


def is_recurrent(m: ExchangeMatrix) -> bool:
    if not m.is_bipartite():
        raise NotBipartite("is_recurrent needs a bipartite matrix")
    neg = -m
    return bipartite_mutate(m, WHITE) == neg and bipartite_mutate(m, BLACK) == neg


def decompose(m: ExchangeMatrix) -> SignedDecomposition:
    """Split B = Gamma~ + Delta~ by the sign/color rule.

    Gamma~_ij is positive only from white i to black j, Delta~_ij positive
    only from black i to white j.
    """
    if not m.is_bipartite():
        raise NotBipartite("decompose needs a bipartite matrix")
    n = m.n
    gs, ds = zeros(n), zeros(n)
    for i in range(n):
        for j in range(n):
            v = m.b[i][j]
            if v == 0:
                continue
            wb = m.eps[i] == WHITE and m.eps[j] == BLACK
            # positive white->black or negative black->white is Gamma
            if (v > 0) == wb:
                gs[i][j] = v
            else:
                ds[i][j] = v
    return SignedDecomposition(
        as_matrix(gs),
        as_matrix(ds),
        as_matrix([[abs(x) for x in r] for r in gs]),
        as_matrix([[abs(x) for x in r] for r in ds]),
    )


def sign_gamma(gamma: Sequence[Sequence[int]], eps: Sequence[str]) -> Matrix:
    n = len(gamma)
    return as_matrix(
        [[gamma[i][j] if eps[i] == WHITE else -gamma[i][j] for j in range(n)] for i in range(n)]
    )


def sign_delta(delta: Sequence[Sequence[int]], eps: Sequence[str]) -> Matrix:
    n = len(delta)
    return as_matrix(
        [[delta[i][j] if eps[i] == BLACK else -delta[i][j] for j in range(n)] for i in range(n)]
    )


def recompose(gamma: Sequence[Sequence[int]], delta: Sequence[Sequence[int]], eps: Sequence[str]) -> ExchangeMatrix:
    """Inverse of decompose, starting from the unsigned matrices."""
    eps = tuple(normalize_color(c) for c in eps)
    g = sign_gamma(gamma, eps)
    d = sign_delta(delta, eps)
    n = len(g)
    return ExchangeMatrix(as_matrix([[g[i][j] + d[i][j] for j in range(n)] for i in range(n)]), eps)


def find_symmetrizer(m: ExchangeMatrix) -> Optional[Tuple[Fraction, ...]]:
    """Positive c with c_i b_ij = -c_j b_ji, min entry 1; None if impossible.

    Ratios are propagated by BFS over the support graph, then every entry is
    re-checked, so a returned vector is a certificate.
    """
    b = m.b
    n = m.n
    c: List[Optional[Fraction]] = [None] * n
    for s in range(n):
        if c[s] is not None:
            continue
        c[s] = Fraction(1)
        comp = [s]
        queue = deque([s])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if b[i][j] == 0 and b[j][i] == 0:
                    continue
                if b[i][j] == 0 or b[j][i] == 0 or (b[i][j] > 0) == (b[j][i] > 0):
                    return None
                # c_j = -c_i b_ij / b_ji
                cj = -c[i] * b[i][j] / b[j][i]
                if c[j] is None:
                    c[j] = cj
                    comp.append(j)
                    queue.append(j)
        lo = min(c[v] for v in comp)
        for v in comp:
            c[v] = c[v] / lo
    for i in range(n):
        for j in range(n):
            if c[i] * b[i][j] != -c[j] * b[j][i]:
                return None
    return tuple(c)
