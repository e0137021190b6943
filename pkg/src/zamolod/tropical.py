"""Tropical T-system over exact rationals, mutation coloring and counting.

    t_k(t+1) + t_k(t-1) = max(sum_i Gamma_ik t_i(t), sum_j Delta_jk t_j(t))

The dynamics is piecewise linear and positively homogeneous, so a rational
initial labeling is scaled by the lcm of its denominators, evolved over the
integers, and divided back.  Floats never enter the dynamics.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .biagram import DynkinBiagram, coxeter_numbers
from .exchange import BLACK, WHITE

GAMMA = "gamma"
DELTA = "delta"
TIE = "tie"


class TieEncountered(UserWarning):
    def __init__(self, vertex: int, t: int):
        super().__init__(f"tie at vertex {vertex}, t = {t}")
        self.vertex = vertex
        self.t = t


@dataclass(frozen=True)
class TropicalState:
    t: int
    values: Dict[int, Fraction]


@dataclass
class Trajectory:
    states: List[TropicalState]
    colors: Dict[Tuple[int, int], str] = field(default_factory=dict)  # (vertex, t) -> color

    def value(self, k: int, t: int) -> Optional[Fraction]:
        return self.states[t].values.get(k)


def _populated(bg: DynkinBiagram, t: int) -> List[int]:
    color = WHITE if t % 2 == 0 else BLACK
    return [k for k in range(bg.n) if bg.eps[k] == color]


def _columns(bg: DynkinBiagram):
    n = bg.n
    g = [[(i, bg.gamma[i][k]) for i in range(n) if bg.gamma[i][k]] for k in range(n)]
    d = [[(j, bg.delta[j][k]) for j in range(n) if bg.delta[j][k]] for k in range(n)]
    return g, d


def parse_lambda(text: str, n: int) -> List[Fraction]:
    """Comma-separated rationals (``p/q``, decimals) or ``eK`` (1-based basis vector)."""
    text = text.strip()
    if text.lower().startswith("e") and text[1:].isdigit():
        k = int(text[1:])
        if not 1 <= k <= n:
            raise ValueError(f"basis vector e{k} out of range for n={n}")
        return [Fraction(1) if i == k - 1 else Fraction(0) for i in range(n)]
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != n:
        raise ValueError(f"lambda has {len(parts)} entries, expected {n}")
    return [Fraction(p) for p in parts]


def random_lambda(n: int, rng: random.Random, num: int = 20, den: int = 10) -> List[Fraction]:
    return [Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(n)]


def _scale(lam: Sequence) -> Tuple[List[int], int]:
    fr = [Fraction(x) for x in lam]
    L = 1
    for x in fr:
        L = L * x.denominator // math.gcd(L, x.denominator)
    return [int(x * L) for x in fr], L


def _int_evolve(bg: DynkinBiagram, lam: List[int], steps: int):
    """Integer dynamics; returns per-t dicts and the color map."""
    g, d = _columns(bg)
    s0 = {k: lam[k] for k in _populated(bg, 0)}
    s1 = {k: lam[k] for k in _populated(bg, 1)}
    states = [s0, s1]
    colors: Dict[Tuple[int, int], str] = {}
    for t in range(1, steps):
        prev, cur = states[t - 1], states[t]
        nxt = {}
        for k in _populated(bg, t + 1):
            sg = sum(w * cur[i] for i, w in g[k])
            sd = sum(w * cur[j] for j, w in d[k])
            if sg > sd:
                colors[(k, t + 1)] = GAMMA
            elif sd > sg:
                colors[(k, t + 1)] = DELTA
            else:
                colors[(k, t + 1)] = TIE
            nxt[k] = max(sg, sd) - prev[k]
        states.append(nxt)
    return states[: steps + 1], colors


def evolve(bg: DynkinBiagram, lam: Sequence, steps: int) -> Trajectory:
    """States for t = 0 .. steps (inclusive), with exact rational values."""
    if len(lam) != bg.n:
        raise ValueError("lambda length does not match the biagram")
    ints, L = _scale(lam)
    raw, colors = _int_evolve(bg, ints, max(steps, 1))
    states = [TropicalState(t, {k: Fraction(v, L) for k, v in s.items()}) for t, s in enumerate(raw)]
    return Trajectory(states[: steps + 1], colors)


def trop_step(bg: DynkinBiagram, prev: TropicalState, cur: TropicalState):
    """One step; returns (next state, {vertex: color})."""
    g, d = _columns(bg)
    t = cur.t + 1
    out, colors = {}, {}
    for k in _populated(bg, t):
        sg = sum(w * cur.values[i] for i, w in g[k])
        sd = sum(w * cur.values[j] for j, w in d[k])
        colors[k] = GAMMA if sg > sd else DELTA if sd > sg else TIE
        out[k] = Fraction(max(sg, sd)) - prev.values[k]
    return TropicalState(t, out), colors


def trop_period(bg: DynkinBiagram, lam: Sequence, max_N: Optional[int] = None) -> Optional[int]:
    """Smallest N <= max_N with the state pair at (2N, 2N+1) equal to (0, 1)."""
    if max_N is None:
        hg, hd = coxeter_numbers(bg)
        max_N = hg + hd + 2
    ints, _ = _scale(lam)
    raw, _ = _int_evolve(bg, ints, 2 * max_N + 1)
    for N in range(1, max_N + 1):
        if raw[2 * N] == raw[0] and raw[2 * N + 1] == raw[1]:
            return N
    return None


def format_table(bg: DynkinBiagram, traj: Trajectory, rows: Optional[int] = None) -> str:
    """Rows t, columns k = 1..n (1-based), blank where unpopulated."""
    states = traj.states if rows is None else traj.states[:rows]
    width = 6
    head = "t".rjust(3) + "".join(f"k={k + 1}".rjust(width) for k in range(bg.n))
    lines = [head]
    for st in states:
        cells = []
        for k in range(bg.n):
            v = st.values.get(k)
            cells.append(("" if v is None else str(v)).rjust(width))
        lines.append(str(st.t).rjust(3) + "".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Degree oracles and mutation counting
# ---------------------------------------------------------------------------

def delta_labelings_oracle(bg: DynkinBiagram, N: Optional[int] = None):
    """Tropical trajectories from each basis labeling delta_i.

    Returns (trajectories, a) where a[i][j] = sum_{k<N} t_j^{delta_i}(2k + eta_j)
    with eta_j = 0 for white j and 1 for black j.
    """
    if N is None:
        hg, hd = coxeter_numbers(bg)
        N = hg + hd
    n = bg.n
    trajs = []
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        lam = [Fraction(int(k == i)) for k in range(n)]
        tr = evolve(bg, lam, 2 * N + 1)
        trajs.append(tr)
        for j in range(n):
            eta = 0 if bg.eps[j] == WHITE else 1
            a[i][j] = sum(tr.states[2 * k + eta].values[j] for k in range(N))
    return trajs, a


@dataclass(frozen=True)
class MutationCount:
    n_gamma: int
    n_delta: int
    n_tie: int
    ties: Tuple[Tuple[int, int], ...] = ()

    def as_tuple(self) -> Tuple[int, int, int]:
        return self.n_gamma, self.n_delta, self.n_tie


def count_mutations(bg: DynkinBiagram, lam: Sequence, one_period: bool = True, steps: Optional[int] = None) -> MutationCount:
    """Count Gamma/Delta/tie mutations over t = 2 .. 2N+1, N = h_Gamma + h_Delta.

    With ``one_period=False`` only the first half (N steps) is counted.
    Ties are bucketed separately and listed as (vertex, t).
    """
    if steps is None:
        hg, hd = coxeter_numbers(bg)
        steps = 2 * (hg + hd) if one_period else hg + hd
    tr = evolve(bg, lam, steps + 1)
    counts = {GAMMA: 0, DELTA: 0, TIE: 0}
    ties = []
    for (k, t), c in sorted(tr.colors.items(), key=lambda x: (x[0][1], x[0][0])):
        if 2 <= t <= steps + 1:
            counts[c] += 1
            if c == TIE:
                ties.append((k, t))
    return MutationCount(counts[GAMMA], counts[DELTA], counts[TIE], tuple(ties))


def conjecture_expected(bg: DynkinBiagram) -> Tuple[int, int]:
    hg, hd = coxeter_numbers(bg)
    return hg * bg.n, hd * bg.n


@dataclass(frozen=True)
class ConjectureResult:
    trials: int
    generic: int
    agree: int
    candidates: Tuple[Tuple[Tuple[Fraction, ...], Tuple[int, int, int]], ...]


def conjecture_harness(bg: DynkinBiagram, trials: int = 20, seed: int = 0) -> ConjectureResult:
    """Compare full-period counts with (h_Gamma * n, h_Delta * n) for random lambda.

    Tie-containing labelings are counted as non-generic and skipped; any
    generic disagreement is reported as a counterexample candidate.
    """
    rng = random.Random(seed)
    expected = conjecture_expected(bg)
    generic = agree = 0
    cands = []
    for _ in range(trials):
        lam = random_lambda(bg.n, rng)
        c = count_mutations(bg, lam)
        if c.n_tie:
            continue
        generic += 1
        if (c.n_gamma, c.n_delta) == expected:
            agree += 1
        else:
            cands.append((tuple(lam), c.as_tuple()))
    return ConjectureResult(trials, generic, agree, tuple(cands))


def affine_delta_count(gamma, delta, eps, lam: Sequence, h_delta: int, steps: int) -> Tuple[int, int]:
    """Hook for affine Gamma: count Delta-mutations over ``steps`` and return
    (count, h_delta * n) for comparison.  No affine constructors are provided."""
    bg = DynkinBiagram(gamma, delta, tuple(eps))
    tr = evolve(bg, lam, steps + 1)
    nd = sum(1 for (k, t), c in tr.colors.items() if c == DELTA and 2 <= t <= steps + 1)
    return nd, h_delta * bg.n
