"""Exact birational T-system evolution.

    T_k(t+1) T_k(t-1) = prod_i T_i(t)^Gamma_ik + prod_j T_j(t)^Delta_jk

T_k(t) exists for white k at even t and black k at odd t, starting from
T_k(0) = x_k (white) and T_k(1) = x_k (black).  Whites are updated first
(at t = 2).  Every division is exact by the Laurent phenomenon; an
``InexactDivision`` here means a bug (or a non-recurrent input).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .biagram import DynkinBiagram, coxeter_numbers
from .exchange import BLACK, WHITE
from .laurent import LaurentPoly, product_of_powers

MAX_RANK = 16
MAX_TERMS = 10**6


class DeskScaleExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TState:
    t: int
    values: Dict[int, LaurentPoly]

    def __eq__(self, other) -> bool:
        return isinstance(other, TState) and self.values == other.values


def populated(bg: DynkinBiagram, t: int) -> List[int]:
    color = WHITE if t % 2 == 0 else BLACK
    return [k for k in range(bg.n) if bg.eps[k] == color]


def initial_states(bg: DynkinBiagram) -> Tuple[TState, TState]:
    if bg.n > MAX_RANK:
        raise DeskScaleExceeded(f"birational evolution limited to n <= {MAX_RANK} (got {bg.n})")
    n = bg.n
    s0 = TState(0, {k: LaurentPoly.var(n, k) for k in populated(bg, 0)})
    s1 = TState(1, {k: LaurentPoly.var(n, k) for k in populated(bg, 1)})
    return s0, s1


def exchange_binomial(bg: DynkinBiagram, cur: TState, k: int) -> LaurentPoly:
    n = bg.n
    gi = [i for i in range(n) if bg.gamma[i][k]]
    di = [j for j in range(n) if bg.delta[j][k]]
    pg = product_of_powers([cur.values[i] for i in gi], [bg.gamma[i][k] for i in gi], n)
    pd = product_of_powers([cur.values[j] for j in di], [bg.delta[j][k] for j in di], n)
    return pg + pd


def step(bg: DynkinBiagram, prev: TState, cur: TState) -> TState:
    t = cur.t + 1
    out = {}
    for k in populated(bg, t):
        num = exchange_binomial(bg, cur, k)
        if len(num) > MAX_TERMS:
            raise DeskScaleExceeded(f"term count {len(num)} exceeds {MAX_TERMS}")
        out[k] = num / prev.values[k]
    return TState(t, out)


def evolve(bg: DynkinBiagram, steps: int) -> List[TState]:
    """States for t = 0 .. steps (inclusive)."""
    s0, s1 = initial_states(bg)
    traj = [s0, s1]
    while traj[-1].t < steps:
        traj.append(step(bg, traj[-2], traj[-1]))
    return traj[: steps + 1]


def default_max_n(bg: DynkinBiagram) -> int:
    hg, hd = coxeter_numbers(bg)
    return hg + hd + 2


def detect_period(bg: DynkinBiagram, max_N: Optional[int] = None, traj: Optional[List[TState]] = None) -> Optional[int]:
    """Smallest N <= max_N with T(2N) = T(0) and T(2N+1) = T(1)."""
    if max_N is None:
        max_N = default_max_n(bg)
    if max_N < 1:
        raise ValueError("max_N must be >= 1")
    s0, s1 = initial_states(bg)
    prev, cur = s0, s1
    t = 1
    if traj is not None:
        traj[:] = [s0, s1]
    while t < 2 * max_N + 1:
        prev, cur = cur, step(bg, prev, cur)
        t += 1
        if traj is not None:
            traj.append(cur)
        if t % 2 == 1 and prev == s0 and cur == s1:
            return (t - 1) // 2
    return None


def degree_matrix(traj: List[TState], i: int, t: int) -> Dict[int, Tuple[int, int]]:
    """vertex j -> (deg_max, deg_min) of x_i in T_j(t)."""
    st = traj[t]
    return {j: (p.deg_max(i), p.deg_min(i)) for j, p in st.values.items()}


def residual_ok(bg: DynkinBiagram, prev: TState, cur: TState, nxt: TState) -> bool:
    """Check T_k(t+1) T_k(t-1) - binomial == 0 for every updated k."""
    for k, v in nxt.values.items():
        if not (v * prev.values[k] - exchange_binomial(bg, cur, k)).is_zero():
            return False
    return True
