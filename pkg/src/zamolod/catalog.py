"""Constructors for admissible Dynkin biagrams.

Every family is built from a small set of primitives:

* tensor products and twists of templates,
* chains of copies of one template joined by parallel (``par``) or twisted
  (``twist``) blue edges,
* folding along a recorded bicolored automorphism, global flip and the dual,
* gluing a parallel copy onto an end component of a binding,
* explicit edge lists for the exceptional ADE bigraphs and the named fixtures.

Vertex order is deterministic: chain copies are numbered copy-major, folded
orbits are ordered by smallest member, glued copies are appended at the end.
"""

from __future__ import annotations

import csv
import io
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .biagram import (
    DynkinBiagram,
    DynkinType,
    all_types,
    coxeter_numbers,
    parse_type,
    recognize,
    template_colors,
    template_matrix,
)
from .exchange import BLACK, WHITE, as_matrix, is_recurrent, opposite, zeros
from .transform import cycle_perm, fold_biagram, global_flip, leaf_swap_perm, orbits_of


class InvalidSpec(ValueError):
    pass


# ---------------------------------------------------------------------------
# Family specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: Optional[int] = None
    m: Optional[int] = None
    variant: Optional[str] = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        return cls(d["family"], d.get("n"), d.get("m"), d.get("variant"))

    @property
    def label(self) -> str:
        parts = [self.family]
        if self.variant is not None:
            parts.append(f"[{self.variant}]")
        if self.n is not None:
            parts.append(f"n={self.n}")
        if self.m is not None:
            parts.append(f"m={self.m}")
        return " ".join(parts)


# ---------------------------------------------------------------------------
# Primitive constructions
# ---------------------------------------------------------------------------

def _raw_d(r: int) -> Tuple[Tuple[int, ...], ...]:
    """D_r in template numbering, allowed down to r = 3 (where D3 = A3)."""
    a = zeros(r)
    for leaf in (0, 1):
        a[leaf][2] = a[2][leaf] = 1
    for i in range(2, r - 1):
        a[i][i + 1] = a[i + 1][i] = 1
    return as_matrix(a)


def _colors_of(a) -> Tuple[str, ...]:
    n = len(a)
    eps = [None] * n
    for s in range(n):
        if eps[s] is not None:
            continue
        eps[s] = BLACK
        stack = [s]
        while stack:
            u = stack.pop()
            for v in range(n):
                if a[u][v] and eps[v] is None:
                    eps[v] = opposite(eps[u])
                    stack.append(v)
    return tuple(eps)


def _type_matrix(t) -> Tuple[Tuple[int, ...], ...]:
    if isinstance(t, str):
        t = parse_type(t)
    return template_matrix(t)


def tensor(t1, t2, name: str = "") -> DynkinBiagram:
    """Gamma = A(t1) (x) I, Delta = I (x) A(t2); vertex (a, b) has index a*r2 + b.

    A vertex is white when its two factor colors agree.
    """
    a1, a2 = _type_matrix(t1), _type_matrix(t2)
    c1, c2 = _colors_of(a1), _colors_of(a2)
    r1, r2 = len(a1), len(a2)
    n = r1 * r2
    g, d = zeros(n), zeros(n)
    eps = []
    for a in range(r1):
        for b in range(r2):
            eps.append(WHITE if c1[a] == c2[b] else BLACK)
            for a2_ in range(r1):
                if a1[a][a2_]:
                    g[a * r2 + b][a2_ * r2 + b] = a1[a][a2_]
            for b2 in range(r2):
                if a2[b][b2]:
                    d[a * r2 + b][a * r2 + b2] = a2[b][b2]
    return DynkinBiagram(as_matrix(g), as_matrix(d), tuple(eps), name or f"{t1}(x){t2}")


def copy_chain(a, bonds: Sequence[str], eps0: Optional[Sequence[str]] = None, name: str = "") -> DynkinBiagram:
    """Copies of one diagram joined consecutively by 'par' or 'twist' blue edges.

    A parallel bond joins corresponding vertices (so the next copy has the
    opposite coloring); a twist bond copies the diagram's own edges across
    (so the coloring is kept).
    """
    a = as_matrix(a)
    r = len(a)
    k = len(bonds) + 1
    n = r * k
    g, d = zeros(n), zeros(n)
    eps = list(eps0 if eps0 is not None else _colors_of(a))
    cur = list(eps)
    for c in range(k):
        for u in range(r):
            for v in range(r):
                g[c * r + u][c * r + v] = a[u][v]
    for c, bond in enumerate(bonds):
        x, y = c * r, (c + 1) * r
        if bond == "par":
            cur = [opposite(e) for e in cur]
            for u in range(r):
                d[x + u][y + u] = d[y + u][x + u] = 1
        elif bond == "twist":
            for u in range(r):
                for v in range(r):
                    if a[u][v]:
                        d[x + u][y + v] = a[u][v]
                        d[y + u][x + v] = a[u][v]
        else:
            raise ValueError(f"unknown bond {bond!r}")
        eps.extend(cur)
    return DynkinBiagram(as_matrix(g), as_matrix(d), tuple(eps), name)


def twist(t, name: str = "") -> DynkinBiagram:
    """Gamma = diag(A, A), Delta = antidiag(A, A)."""
    a = _type_matrix(t) if not isinstance(t, tuple) else t
    return copy_chain(a, ["twist"], name=name or f"{t}x{t}")


def _fold(bg: DynkinBiagram, perm, track: Sequence[int]) -> Tuple[DynkinBiagram, List[int]]:
    """Fold and report where the tracked old vertices land."""
    out = fold_biagram(bg, perm, bg.name)
    where = {}
    for idx, orb in enumerate(orbits_of(perm)):
        for v in orb:
            where[v] = idx
    return out, [where[v] for v in track]


def gamma_component(bg: DynkinBiagram, v: int) -> List[int]:
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in range(bg.n):
            if (bg.gamma[u][w] or bg.gamma[w][u]) and w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(seen)


def glue_parallel(bg: DynkinBiagram, comp: Sequence[int]) -> Tuple[DynkinBiagram, List[int]]:
    """Attach a parallel copy of the red component ``comp`` (appended vertices)."""
    comp = list(comp)
    n, k = bg.n, len(comp)
    g, d = zeros(n + k), zeros(n + k)
    for i in range(n):
        for j in range(n):
            g[i][j], d[i][j] = bg.gamma[i][j], bg.delta[i][j]
    for a, u in enumerate(comp):
        for b, v in enumerate(comp):
            g[n + a][n + b] = bg.gamma[u][v]
        d[u][n + a] = d[n + a][u] = 1
    eps = bg.eps + tuple(opposite(bg.eps[u]) for u in comp)
    return DynkinBiagram(as_matrix(g), as_matrix(d), eps, bg.name), list(range(n, n + k))


@dataclass
class Binding:
    """A two-sided binding with the vertex lists of its two red components."""

    bg: DynkinBiagram
    left: List[int]
    right: List[int]

    def chain(self, n_left: int, n_right: int, name: str = "") -> DynkinBiagram:
        bg, comp = self.bg, self.left
        for _ in range(n_left):
            bg, comp = glue_parallel(bg, comp)
        comp = self.right
        for _ in range(n_right):
            bg, comp = glue_parallel(bg, comp)
        return bg.renamed(name) if name else bg


D3 = _raw_d(3)
B2 = template_matrix(DynkinType("B", 2))


def _d3_chain_dual(n_copies: int, twist_at: int, folded: Sequence[int]) -> Tuple[DynkinBiagram, int, int]:
    """Dual of a D3 chain with one twist bond and leaf folds on some copies.

    Returns the biagram and representatives of the two output components:
    the (folded) leaf chain through copy 0, and the center chain through copy 0.
    """
    bonds = ["par"] * (n_copies - 1)
    bonds[twist_at] = "twist"
    bg = copy_chain(D3, bonds, eps0=(BLACK, BLACK, WHITE))
    perm = leaf_swap_perm(bg.n, [(3 * c, 3 * c + 1) for c in folded])
    bg, (leaf0, center0) = _fold(bg, perm, [0, 2])
    return bg.dual(), leaf0, center0


def a_star_b(n: int) -> Binding:
    """A_{2n-1} * B_n: dual of D3 = ... = D3 x D3 with the last copy's leaves folded."""
    bg, leaf0, center0 = _d3_chain_dual(n, n - 2, [n - 1])
    return Binding(bg, gamma_component(bg, center0), gamma_component(bg, leaf0))


def a_star_c(n: int) -> Binding:
    b = a_star_b(n)
    return Binding(global_flip(b.bg), b.left, b.right)


def c_star_d(n: int) -> Binding:
    """C_n * D_{n+1}: dual of B2 = ... = B2 x D3 (all but the last D3 copy folded)."""
    bg, leaf0, center0 = _d3_chain_dual(n, n - 2, list(range(n - 1)))
    return Binding(bg, gamma_component(bg, leaf0), gamma_component(bg, center0))


def b_star_d(n: int) -> Binding:
    b = c_star_d(n)
    return Binding(global_flip(b.bg), b.left, b.right)


def _b2_chain_dual(bonds) -> Tuple[DynkinBiagram, List[int], List[int]]:
    bg = copy_chain(B2, bonds).dual()
    return bg, gamma_component(bg, 0), gamma_component(bg, 1)


def b_star_c(n: int) -> Binding:
    """B_n * C_n: dual of B2 = ... = B2 x B2 (n copies)."""
    bg, c0, c1 = _b2_chain_dual(["par"] * (n - 2) + ["twist"])
    return Binding(bg, c1, c0)


def f4_star_f4() -> Binding:
    bg, c0, c1 = _b2_chain_dual(["par", "twist", "par"])
    return Binding(bg, c0, c1)


def f4_star1_e6() -> Binding:
    """F4 *_1 E6: dual of B2 = B2 x D3 = D3."""
    bg, leaf0, center0 = _d3_chain_dual(4, 1, [0, 1])
    a, b = gamma_component(bg, leaf0), gamma_component(bg, center0)
    return Binding(bg, *(_order_by_rank(bg, a, b, 4)))


def f4_star2_e6() -> Binding:
    b = f4_star1_e6()
    return Binding(global_flip(b.bg), b.left, b.right)


def _order_by_rank(bg, a, b, left_rank):
    return (a, b) if len(a) == left_rank else (b, a)


# -- explicit ADE bigraphs -------------------------------------------------------

def _from_edges(n: int, red, blue, eps, name: str = "") -> DynkinBiagram:
    """Edges are (u, v) for simple edges or (u, v, w_uv, w_vu) for weighted ones."""
    g, d = zeros(n), zeros(n)
    for mat, edges in ((g, red), (d, blue)):
        for e in edges:
            u, v = e[0], e[1]
            wuv, wvu = (e[2], e[3]) if len(e) == 4 else (1, 1)
            mat[u][v], mat[v][u] = wuv, wvu
    return DynkinBiagram(as_matrix(g), as_matrix(d), tuple(eps), name)


def a_star_d(n: int) -> Binding:
    """A_{2n-1} * D_{n+1}: u_i joins v_i and v_{2n-i} (i < n); u_n, u_{n+1} join v_n.

    Indices: v_1..v_{2n-1} -> 0..2n-2, u_1..u_{n+1} -> 2n-1..3n-1.
    """
    if n < 2:
        raise InvalidSpec("A_{2n-1}*D_{n+1} needs n >= 2")
    nv = 2 * n - 1
    V = lambda i: i - 1
    U = lambda i: nv + i - 1
    red = [(V(i), V(i + 1)) for i in range(1, nv)]
    red += [(U(i), U(i + 1)) for i in range(1, n)]
    red.append((U(n - 1), U(n + 1)))
    blue = []
    for i in range(1, n):
        blue += [(U(i), V(i)), (U(i), V(2 * n - i))]
    blue += [(U(n), V(n)), (U(n + 1), V(n))]
    eps = [BLACK if i % 2 else WHITE for i in range(1, nv + 1)]
    eps += [WHITE if i % 2 else BLACK for i in range(1, n)]
    eps += [WHITE if n % 2 else BLACK] * 2
    bg = _from_edges(3 * n, red, blue, eps)
    return Binding(bg, list(range(nv)), list(range(nv, 3 * n)))


def e6_star_e6() -> DynkinBiagram:
    """Two red E6 copies (x0-x1-x2-x3-x4, x2-x5) joined by eight blue edges."""
    A = lambda i: i
    B = lambda i: 6 + i
    red = []
    for off in (A, B):
        red += [(off(0), off(1)), (off(1), off(2)), (off(2), off(3)), (off(3), off(4)), (off(2), off(5))]
    blue = [
        (A(0), B(5)), (A(4), B(5)), (A(1), B(2)), (A(3), B(2)),
        (A(2), B(1)), (A(2), B(3)), (A(5), B(0)), (A(5), B(4)),
    ]
    cols = [BLACK, WHITE, BLACK, WHITE, BLACK, WHITE]
    return _from_edges(12, red, blue, cols * 2, "E6*E6")


def d5_box_a7() -> DynkinBiagram:
    """D5 (u0: x0-x1-x2, x2-x3, x2-x4) and A7 (u1: x0..x6) with ten blue edges."""
    U0 = lambda i: i
    U1 = lambda i: 5 + i
    red = [(U0(0), U0(1)), (U0(1), U0(2)), (U0(2), U0(3)), (U0(2), U0(4))]
    red += [(U1(i), U1(i + 1)) for i in range(6)]
    blue = [
        (U0(0), U1(3)), (U0(1), U1(2)), (U0(1), U1(4)), (U0(2), U1(1)), (U0(2), U1(5)),
        (U0(2), U1(3)), (U0(3), U1(0)), (U0(3), U1(4)), (U0(4), U1(6)), (U0(4), U1(2)),
    ]
    eps = [BLACK, WHITE, BLACK, WHITE, WHITE] + [BLACK if i % 2 == 0 else WHITE for i in range(7)]
    return _from_edges(12, red, blue, eps, "D5boxA7")


D5A7_FOLD = cycle_perm(12, [(3, 4), (5, 11), (6, 10), (7, 9)])


# -- double bindings -----------------------------------------------------------

def _d_twist(r: int) -> DynkinBiagram:
    return copy_chain(_raw_d(r), ["twist"])


def b_lt_d(n: int) -> DynkinBiagram:
    """B_n |x D_{n+1}: fold the leaves of the first copy of D_{n+1} x D_{n+1}."""
    bg = _d_twist(n + 1)
    return fold_biagram(bg, leaf_swap_perm(bg.n, [(0, 1)]))


def c_lt_d(n: int) -> DynkinBiagram:
    return global_flip(b_lt_d(n))


def b_bowtie_c(n: int) -> DynkinBiagram:
    """B_n >< C_n: fold the remaining D_{n+1} leaves of C_n |x D_{n+1}."""
    bg = c_lt_d(n)
    # after the first fold copy 0 has n vertices, copy 1 starts at index n
    return fold_biagram(bg, leaf_swap_perm(bg.n, [(n, n + 1)]))


def g_lt_d(variant: int) -> DynkinBiagram:
    bg = _d_twist(4)
    out = fold_biagram(bg, cycle_perm(8, [(0, 1, 3)]))
    return out if variant == 1 else global_flip(out)


def b3_bowtie_g2(variant: int) -> DynkinBiagram:
    """Fold a leaf pair of the D4 copy in G2 |x_v D4 (copy of D4 starts at 2)."""
    bg = g_lt_d(variant)
    return fold_biagram(bg, leaf_swap_perm(bg.n, [(2, 3)]))


def c3_bowtie_g2(variant: int) -> DynkinBiagram:
    if variant == 1:
        bg = c_lt_d(3)  # C3 on 0..2, D4 on 3..6 (leaves 3, 4, 6)
        return fold_biagram(bg, cycle_perm(7, [(3, 4, 6)]))
    return global_flip(b3_bowtie_g2(1))


def b3_bowtie1_g2_explicit() -> DynkinBiagram:
    """The 5-vertex biagram with vertices 1, 3, 4 black and 2, 5 white."""
    gamma = [[0, 1, 0, 0, 0], [1, 0, 1, 0, 0], [0, 2, 0, 0, 0], [0, 0, 0, 0, 3], [0, 0, 0, 1, 0]]
    delta = [[0, 0, 0, 0, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 2], [0, 3, 0, 0, 0], [1, 0, 1, 0, 0]]
    eps = (BLACK, WHITE, BLACK, BLACK, WHITE)
    return DynkinBiagram(as_matrix(gamma), as_matrix(delta), eps, "B3bowtie1G2")


def b4_box_c4() -> DynkinBiagram:
    return fold_biagram(d5_box_a7(), D5A7_FOLD, "B4boxC4")


def a2xa3_tensor() -> DynkinBiagram:
    """A3 (red) tensor A2 (blue), listed row-major on a 2x3 grid:
    a b c / d e f with red rows and blue columns."""
    bg = tensor("A3", "A2")  # index = a3_index * 2 + a2_index
    order = [c * 2 + r for r in range(2) for c in range(3)]
    return bg.permute(order).renamed("A2xA3-tensor")


# ---------------------------------------------------------------------------
# Named fixtures (including the nonadmissible ones)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fixture:
    bg: DynkinBiagram
    admissible: bool
    witness: Optional[Tuple[int, int]] = None


def _w(s: str) -> List[str]:
    return [WHITE if ch == "w" else BLACK for ch in s]


def _fig_admissible_left(simple: bool) -> DynkinBiagram:
    red = [(1, 0), (1, 2), (1, 3), (4, 5), (6, 5) if simple else (6, 5, 2, 1)]
    blue = [(4, 0), (5, 1), (6, 2), (6, 3)]
    return _from_edges(7, red, blue, _w("wbwwbwb"))


def fixtures() -> Dict[str, Fixture]:
    out: Dict[str, Fixture] = {}
    out["fig:admissible-left"] = Fixture(_fig_admissible_left(False), False, (1, 6))
    # x7, x8, x9, x11..x15 -> 0..7
    red = [(0, 1), (2, 1, 2, 1), (3, 4), (4, 5), (5, 6), (6, 7)]
    blue = [(3, 0), (7, 0), (4, 1), (6, 1), (2, 5, 2, 1)]
    out["fig:admissible-right"] = Fixture(_from_edges(8, red, blue, _w("wbwbwbwb")), True)
    out["fig:admissibleADE-left"] = Fixture(_fig_admissible_left(True), False, (1, 6))
    # x7..x15 -> 0..8; D4 centre x8
    red = [(0, 1), (2, 1), (3, 1), (4, 5), (5, 6), (6, 7), (7, 8)]
    blue = [(4, 0), (8, 0), (5, 1), (7, 1), (6, 2), (6, 3)]
    out["fig:admissibleADE-right"] = Fixture(_from_edges(9, red, blue, _w("wbwwbwbwb")), True)

    # BCE: v0 x0..x8 -> 0..8 (B9), v1 x0..x6 -> 9..15 (E7)
    P, Q = (lambda i: i), (lambda i: 9 + i)
    red = [(P(i), P(i + 1)) for i in range(7)] + [(P(8), P(7), 2, 1)]
    red += [(Q(0), Q(2)), (Q(2), Q(3)), (Q(3), Q(4)), (Q(4), Q(5)), (Q(5), Q(6)), (Q(1), Q(3))]
    pairs = [(0, 6), (1, 5), (2, 6), (2, 1), (3, 3), (4, 1), (4, 2), (5, 3), (5, 0), (6, 2), (6, 4), (7, 3), (7, 5)]
    blue = [(P(a), Q(b)) for a, b in pairs] + [(P(8), Q(4), 2, 1)]
    eps = _w("wbwbwbwbw") + _w("wbbwbwb")
    out["fig:BCE"] = Fixture(_from_edges(16, red, blue, eps), False, (P(3), Q(6)))

    bbcc_red = [(0, 1), (1, 2), (2, 3, 2, 1), (4, 5), (5, 6), (7, 6, 2, 1)]
    bbcc_eps = _w("bwbwbwbw")
    blue = [(0, 5), (2, 5), (3, 4), (3, 6), (7, 2, 2, 1), (1, 6, 2, 1)]
    out["fig:BBCC-left"] = Fixture(_from_edges(8, bbcc_red, blue, bbcc_eps), False, (4, 2))
    blue = [(0, 7), (2, 7), (1, 4), (1, 6), (2, 5, 2, 1), (6, 3, 2, 1)]
    out["fig:BBCC-right"] = Fixture(_from_edges(8, bbcc_red, blue, bbcc_eps), False, (0, 6))

    # BCD: v0 x0..x3 -> 0..3 (B4), v1 x0..x4 -> 4..8 (D5)
    P, Q = (lambda i: i), (lambda i: 4 + i)
    red = [(P(0), P(1)), (P(1), P(2)), (P(3), P(2), 2, 1)]
    red += [(Q(0), Q(1)), (Q(1), Q(2)), (Q(2), Q(3)), (Q(2), Q(4))]
    blue = [(P(0), Q(1)), (P(2), Q(1)), (P(2), Q(3)), (P(2), Q(4)), (P(3), Q(2)), (P(3), Q(0)), (Q(2), P(1), 2, 1)]
    out["fig:BCD"] = Fixture(_from_edges(9, red, blue, _w("bwbw") + _w("bwbww")), False, (P(2), Q(0)))

    # BC: two B4 copies
    P, Q = (lambda i: i), (lambda i: 4 + i)
    red = [(P(0), P(1)), (P(1), P(2)), (P(3), P(2), 2, 1), (Q(0), Q(1)), (Q(1), Q(2)), (Q(3), Q(2), 2, 1)]
    blue = [(P(0), Q(3)), (P(2), Q(3)), (P(3), Q(2)), (P(3), Q(0)), (Q(2), P(1), 2, 1), (P(2), Q(1), 2, 1)]
    out["fig:BC"] = Fixture(_from_edges(8, red, blue, _w("bwbw") * 2), False, (P(0), Q(2)))

    out["fig:D4A2"] = Fixture(tensor("D4", "A2"), True)
    out["fig:A3xA3"] = Fixture(twist("A3"), True)
    return out


# ---------------------------------------------------------------------------
# The family registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyInfo:
    id: str
    params: str  # subset of "nmv"
    item: str  # classification item or provenance tag
    builder: Callable[[FamilySpec], DynkinBiagram]
    min_n: int = 1
    min_m: int = 1
    variants: Tuple[str, ...] = ()
    description: str = ""


def _need(spec: FamilySpec, n_min: int = None, m_min: int = None):
    if n_min is not None and (spec.n is None or spec.n < n_min):
        raise InvalidSpec(f"{spec.family} needs n >= {n_min} (got {spec.n})")
    if m_min is not None and (spec.m is None or spec.m < m_min):
        raise InvalidSpec(f"{spec.family} needs m >= {m_min} (got {spec.m})")


def _types_variant(spec: FamilySpec) -> List[DynkinType]:
    if not spec.variant:
        raise InvalidSpec(f"{spec.family} needs --variant with Dynkin type(s), e.g. B3,A2")
    try:
        return [parse_type(s) for s in spec.variant.split(",")]
    except ValueError as exc:
        raise InvalidSpec(str(exc)) from None


def _b_tensor(spec):
    ts = _types_variant(spec)
    if len(ts) != 2:
        raise InvalidSpec("tensor needs two types")
    return tensor(ts[0], ts[1])


def _b_twist(spec):
    ts = _types_variant(spec)
    if len(ts) != 1:
        raise InvalidSpec("twist needs one type")
    return twist(ts[0])


_BINDINGS: Dict[str, Tuple[Callable[[int], Binding], bool]] = {
    # id: (constructor, takes n)
    "Bn*A2n-1": (lambda n: _swap(a_star_b(n)), True),
    "Cn*A2n-1": (lambda n: _swap(a_star_c(n)), True),
    "Bn*Cn": (b_star_c, True),
    "Bn*Dn+1": (b_star_d, True),
    "Cn*Dn+1": (c_star_d, True),
    "F4*1E6": (lambda n: f4_star1_e6(), False),
    "F4*2E6": (lambda n: f4_star2_e6(), False),
    "F4*F4": (lambda n: f4_star_f4(), False),
    "A2n-1*Dn+1": (a_star_d, True),
}


def _swap(b: Binding) -> Binding:
    return Binding(b.bg, b.right, b.left)


def _binding(key: str, n: Optional[int]) -> Binding:
    fn, takes_n = _BINDINGS[key]
    return fn(n)


def _chain_builder(key: str, how: str):
    """how: 'R' = glue m-2 right copies, 'L' = m-2 left copies, 'LR' = one each."""

    def build_it(spec: FamilySpec) -> DynkinBiagram:
        takes_n = _BINDINGS[key][1]
        if takes_n:
            _need(spec, n_min=2)
        if how in ("L", "R"):
            _need(spec, m_min=2)
        b = _binding(key, spec.n)
        if how == "R":
            return b.chain(0, spec.m - 2)
        if how == "L":
            return b.chain(spec.m - 2, 0)
        if how == "LR":
            return b.chain(1, 1)
        return b.bg

    return build_it


def _b2_chain(bonds) -> DynkinBiagram:
    return copy_chain(B2, bonds)


REGISTRY: Dict[str, FamilyInfo] = {}


def _reg(info: FamilyInfo):
    REGISTRY[info.id] = info


_reg(FamilyInfo("tensor", "v", "(a)/ADE", _b_tensor, description="tensor product t1 (x) t2"))
_reg(FamilyInfo("twist", "v", "(a)/ADE", _b_twist, description="twist t x t"))
_reg(FamilyInfo("BltD", "n", "(a)", lambda s: (_need(s, 2), b_lt_d(s.n))[1], 2))
_reg(FamilyInfo("CltD", "n", "(a)", lambda s: (_need(s, 2), c_lt_d(s.n))[1], 2))
_reg(FamilyInfo("BbowtieC", "n", "(a)", lambda s: (_need(s, 2), b_bowtie_c(s.n))[1], 2))
_reg(FamilyInfo("GltD1", "", "(a)", lambda s: g_lt_d(1)))
_reg(FamilyInfo("GltD2", "", "(a)", lambda s: g_lt_d(2)))
_reg(FamilyInfo("B3bowtie1G2", "", "(a)", lambda s: b3_bowtie1_g2_explicit()))
_reg(FamilyInfo("B3bowtie2G2", "", "(a)", lambda s: b3_bowtie_g2(2)))
_reg(FamilyInfo("C3bowtie1G2", "", "(a)", lambda s: c3_bowtie_g2(1)))
_reg(FamilyInfo("C3bowtie2G2", "", "(a)", lambda s: c3_bowtie_g2(2)))
_reg(FamilyInfo("B4boxC4", "", "(a)", lambda s: b4_box_c4()))
for _k in ("Bn*A2n-1", "Cn*A2n-1", "Bn*Cn", "Bn*Dn+1", "Cn*Dn+1"):
    _reg(FamilyInfo(_k, "n", "(b)", _chain_builder(_k, ""), 2))
for _k in ("F4*1E6", "F4*2E6", "F4*F4"):
    _reg(FamilyInfo(_k, "", "(b)", _chain_builder(_k, "")))
_reg(FamilyInfo("B2xB2=...=B2", "m", "(c)", lambda s: (_need(s, m_min=2), _b2_chain(["twist"] + ["par"] * (s.m - 2)))[1], 1, 2))
_reg(FamilyInfo("B2=B2xB2=B2", "", "(c)", lambda s: _b2_chain(["par", "twist", "par"])))

_CHAIN_ITEMS = [
    ("B", "A", "Bn*A2n-1", "d", "e"),
    ("C", "A", "Cn*A2n-1", "f", "g"),
    ("B", "C", "Bn*Cn", "h", "i"),
    ("B", "D", "Bn*Dn+1", "j", "k"),
    ("C", "D", "Cn*Dn+1", "l", "m"),
]
for _x, _y, _k, _i1, _i2 in _CHAIN_ITEMS:
    _reg(FamilyInfo(f"{_x}{_y}^{{m-1}}_n", "nm", f"({_i1})", _chain_builder(_k, "R"), 2, 2))
    _reg(FamilyInfo(f"{_x}^{{m-1}}{_y}_n", "nm", f"({_i1})", _chain_builder(_k, "L"), 2, 2))
    _reg(FamilyInfo(f"{_x}={_x}*{_y}={_y}_n", "n", f"({_i2})", _chain_builder(_k, "LR"), 2))
for _v in ("1", "2"):
    _k = f"F4*{_v}E6"
    _reg(FamilyInfo(f"F4E6^{{m-1}}_{_v}", "m", "(n)", _chain_builder(_k, "R"), 1, 2))
    _reg(FamilyInfo(f"F4^{{m-1}}E6_{_v}", "m", "(n)", _chain_builder(_k, "L"), 1, 2))
    _reg(FamilyInfo(f"F4=F4*{_v}E6=E6", "", "(o)", _chain_builder(_k, "LR")))
_reg(FamilyInfo("F4*F4=...=F4", "m", "(p)", _chain_builder("F4*F4", "R"), 1, 2))
_reg(FamilyInfo("F4=F4*F4=F4", "", "(p)", _chain_builder("F4*F4", "LR")))
# simply-laced (ADE) families
_reg(FamilyInfo("A2n-1*Dn+1", "n", "ADE", _chain_builder("A2n-1*Dn+1", ""), 2))
_reg(FamilyInfo("A^{m-1}D_n", "nm", "ADE", _chain_builder("A2n-1*Dn+1", "L"), 2, 2))
_reg(FamilyInfo("AD^{m-1}_n", "nm", "ADE", _chain_builder("A2n-1*Dn+1", "R"), 2, 2))
_reg(FamilyInfo("E6*E6", "", "ADE", lambda s: e6_star_e6()))
_reg(FamilyInfo("D5boxA7", "", "ADE", lambda s: d5_box_a7()))
# named fixtures
_reg(FamilyInfo("A2xA3-tensor", "", "fixture", lambda s: a2xa3_tensor()))

ALIASES = {"BxC": "BbowtieC"}


def build(spec: FamilySpec) -> DynkinBiagram:
    fam = ALIASES.get(spec.family, spec.family)
    if fam.startswith("fig:"):
        fx = fixtures()
        if fam not in fx:
            raise InvalidSpec(f"unknown fixture {fam!r}")
        return fx[fam].bg.renamed(fam)
    info = REGISTRY.get(fam)
    if info is None:
        raise InvalidSpec(f"unknown family {spec.family!r}")
    bg = info.builder(FamilySpec(fam, spec.n, spec.m, spec.variant))
    return bg.renamed(FamilySpec(fam, spec.n, spec.m, spec.variant).label)


def list_families() -> List[FamilyInfo]:
    return list(REGISTRY.values())


# ---------------------------------------------------------------------------
# Derivation scripts (fold/flip sequences from ADE sources)
# ---------------------------------------------------------------------------

def _spec_dict(family, **kw):
    d = {"family": family}
    d.update({k: v for k, v in kw.items() if v is not None})
    return d


def derivation_script(spec: FamilySpec) -> Optional[dict]:
    """Recorded derivation of a double binding or binding from an ADE source."""
    fam, n = spec.family, spec.n
    swap = lambda size, pairs: leaf_swap_perm(size, pairs)
    if fam == "BltD":
        r = n + 1
        if r == 3:  # D3 is A3; its leaves are the two ends
            return {"source": _spec_dict("twist", variant="A3"), "steps": [{"op": "fold", "perm": swap(6, [(0, 2)])}]}
        return {"source": _spec_dict("twist", variant=f"D{r}"), "steps": [{"op": "fold", "perm": swap(2 * r, [(0, 1)])}]}
    if fam == "CltD":
        s = derivation_script(FamilySpec("BltD", n))
        s["steps"].append({"op": "flip"})
        return s
    if fam == "BbowtieC":
        s = derivation_script(FamilySpec("CltD", n))
        size = 2 * (n + 1) - 1
        leaves = (2, 4) if n == 2 else (n, n + 1)
        s["steps"].append({"op": "fold", "perm": swap(size, [leaves])})
        return s
    if fam in ("GltD1", "GltD2"):
        steps = [{"op": "fold", "perm": cycle_perm(8, [(0, 1, 3)])}]
        if fam == "GltD2":
            steps.append({"op": "flip"})
        return {"source": _spec_dict("twist", variant="D4"), "steps": steps}
    if fam == "B3bowtie1G2":
        # D4 x D4 -> B3 |x D4 -> B3 >< G2 (two-step fold)
        return {
            "source": _spec_dict("twist", variant="D4"),
            "steps": [
                {"op": "fold", "perm": swap(8, [(0, 1)])},
                {"op": "fold", "perm": cycle_perm(7, [(3, 4, 6)])},
            ],
        }
    if fam == "B3bowtie2G2":
        s = derivation_script(FamilySpec("GltD2"))
        s["steps"].append({"op": "fold", "perm": swap(6, [(2, 3)])})
        return s
    if fam == "C3bowtie1G2":
        s = derivation_script(FamilySpec("CltD", 3))
        s["steps"].append({"op": "fold", "perm": cycle_perm(7, [(3, 4, 6)])})
        return s
    if fam == "C3bowtie2G2":
        s = derivation_script(FamilySpec("B3bowtie1G2"))
        s["steps"].append({"op": "flip"})
        return s
    if fam == "B4boxC4":
        return {"source": _spec_dict("D5boxA7"), "steps": [{"op": "fold", "perm": list(D5A7_FOLD)}]}
    if fam == "Bn*A2n-1":
        # fold the leaves of D_{n+1} in A_{2n-1} * D_{n+1}
        size = 3 * n
        return {
            "source": _spec_dict("A2n-1*Dn+1", n=n),
            "steps": [{"op": "fold", "perm": swap(size, [(size - 2, size - 1)])}],
        }
    if fam == "Cn*A2n-1":
        s = derivation_script(FamilySpec("Bn*A2n-1", n))
        s["steps"].append({"op": "flip"})
        return s
    if fam == "Cn*Dn+1":
        # fold A_{2n-1} onto itself: v_i <-> v_{2n-i}
        size = 3 * n
        pairs = [(i, 2 * n - 2 - i) for i in range(n - 1)]
        return {"source": _spec_dict("A2n-1*Dn+1", n=n), "steps": [{"op": "fold", "perm": swap(size, pairs)}]}
    if fam == "Bn*Dn+1":
        s = derivation_script(FamilySpec("Cn*Dn+1", n))
        s["steps"].append({"op": "flip"})
        return s
    if fam == "Bn*Cn":
        # C_n * D_{n+1} -> fold the D leaves; after the first fold the
        # D_{n+1} copy occupies the last n + 1 indices of 2n + 1.
        s = derivation_script(FamilySpec("Cn*Dn+1", n))
        size = 2 * n + 1
        s["steps"].append({"op": "fold", "perm": swap(size, [(size - 2, size - 1)])})
        return s
    if fam == "F4*1E6":
        return {"source": _spec_dict("E6*E6"), "steps": [{"op": "fold", "perm": swap(12, [(0, 4), (1, 3)])}]}
    if fam == "F4*2E6":
        s = derivation_script(FamilySpec("F4*1E6"))
        s["steps"].append({"op": "flip"})
        return s
    if fam == "F4*F4":
        s = derivation_script(FamilySpec("F4*1E6"))
        # after the first fold: copy 0 is F4 on 0..3, copy 1 (E6) on 4..9
        s["steps"].append({"op": "fold", "perm": swap(10, [(4, 8), (5, 7)])})
        return s
    if fam == "tensor" or fam == "twist":
        ts = _types_variant(spec)
        if all(t.simply_laced for t in ts):
            return {"source": spec.to_dict(), "steps": []}
        return None
    return None


# ---------------------------------------------------------------------------
# Enumeration and sweep
# ---------------------------------------------------------------------------

def enumerate_specs(max_n: int, max_m: int) -> List[FamilySpec]:
    """All family instances with type ranks / n up to max_n and m up to max_m."""
    specs: List[FamilySpec] = []
    types = all_types(max_n)
    for t1 in types:
        for t2 in types:
            specs.append(FamilySpec("tensor", variant=f"{t1},{t2}"))
    for t in types:
        specs.append(FamilySpec("twist", variant=str(t)))
    for info in REGISTRY.values():
        if info.id in ("tensor", "twist"):
            continue
        ns = [None] if "n" not in info.params else list(range(max(2, info.min_n), max_n + 1))
        ms = [None] if "m" not in info.params else list(range(max(2, info.min_m), max_m + 1))
        for n in ns:
            for m in ms:
                specs.append(FamilySpec(info.id, n, m))
    return specs


def enumerate_by_rank(max_rank: int) -> List[Tuple[FamilySpec, DynkinBiagram]]:
    """Every family instance whose total rank is at most ``max_rank``."""
    out = []
    types = all_types(max_rank)
    for t1 in types:
        for t2 in types:
            if t1.rank * t2.rank <= max_rank:
                s = FamilySpec("tensor", variant=f"{t1},{t2}")
                out.append((s, build(s)))
    for t in types:
        if 2 * t.rank <= max_rank:
            s = FamilySpec("twist", variant=str(t))
            out.append((s, build(s)))
    for info in REGISTRY.values():
        if info.id in ("tensor", "twist"):
            continue
        n_range = [None] if "n" not in info.params else range(max(2, info.min_n), max_rank + 1)
        for n in n_range:
            m_range = [None] if "m" not in info.params else range(max(2, info.min_m), max_rank + 1)
            grew = False
            for m in m_range:
                s = FamilySpec(info.id, n, m)
                bg = build(s)
                if bg.n > max_rank:
                    break
                grew = True
                out.append((s, bg))
            if not grew and n is not None:
                break
    return out


CSV_HEADER = ["name", "n", "h_gamma", "h_delta", "admissible", "recurrent"]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ZAMOLOD_THREADS", "4")))
    except ValueError:
        return 1


def check_row(spec: FamilySpec, bg: DynkinBiagram, trials: int = 0, seed: int = 0) -> dict:
    from .tropical import random_lambda, trop_period

    try:
        adm = bg.is_admissible()
        rec = is_recurrent(bg.to_exchange_matrix())
        hg, hd = coxeter_numbers(bg)
    except Exception as exc:  # keep family context on failure
        raise RuntimeError(f"{spec.label}: {exc}") from exc
    row = {"name": spec.label, "n": bg.n, "h_gamma": hg, "h_delta": hd, "admissible": adm, "recurrent": rec}
    if trials:
        rng = random.Random(f"{seed}:{spec.label}")
        periods = []
        for _ in range(trials):
            lam = random_lambda(bg.n, rng)
            periods.append(trop_period(bg, lam, hg + hd + 2))
        row["periods"] = periods
        row["periodic"] = all(p is not None and (hg + hd) % p == 0 for p in periods)
    return row


def sweep(max_n: int, max_m: int, trials: int = 0, seed: int = 0, max_rank: Optional[int] = None) -> List[dict]:
    if max_n < 1 or max_m < 1:
        raise InvalidSpec("sweep bounds must be >= 1")
    if max_rank is not None:
        pairs = enumerate_by_rank(max_rank)
    else:
        pairs = [(s, build(s)) for s in enumerate_specs(max_n, max_m)]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(lambda p: check_row(p[0], p[1], trials, seed), pairs))
    return rows


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r[k] if not isinstance(r[k], bool) else str(r[k]).lower() for k in CSV_HEADER])
    return buf.getvalue()
