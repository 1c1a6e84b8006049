"""Bounded-variable primal simplex on a dense tableau.

Solves   min c @ x   s.t.   A @ x <= b,   lower <= x <= upper
with finite lower bounds (uppers may be +inf).  A slack variable per row
gives the starting basis; rows still violated after an optional crash step
get a phase-1 artificial that is minimized out before the true objective
runs.  Pricing is Dantzig's rule, switching to Bland's rule after a stall
so termination is guaranteed on degenerate vertices.

The tableau is stored transposed (columns contiguous) and the pivot loop
is a scalar kernel compiled with numba when available: branch-and-bound
solves these small LPs tens of thousands of times, and the kernel skips
fixed columns during pricing and zero columns during elimination, which
vectorized numpy cannot.  Without numba the same kernel runs interpreted,
slower but identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap

FEAS_TOL = 1e-9
DUAL_TOL = 1e-9
PIVOT_TOL = 1e-8
RATIO_TIE_TOL = 1e-9
_STALL_LIMIT = 64
_ITER_LIMIT = 100_000
_REFRESH_STRIDE = 256
_CRASH_LIMIT = 4

_LOWER, _UPPER, _BASIC = 0, 1, 2

_KERNEL_OPTIMAL = 0
_KERNEL_ITER_LIMIT = -1
_KERNEL_UNBOUNDED = -2

STATUS_OPTIMAL = "optimal"
STATUS_INFEASIBLE = "infeasible"


class SimplexError(RuntimeError):
    """Numerical failure: stall, iteration blowup, or an unbounded ray on a
    model family that excludes one.  Never used to report infeasibility."""


@dataclass
class LpSolution:
    status: str                 # STATUS_OPTIMAL or STATUS_INFEASIBLE
    value: float                # objective at the optimum (nan when infeasible)
    x: np.ndarray               # structural variable values (empty when infeasible)
    basis: tuple[int, ...]      # row -> variable index, usable for warm starts
    iterations: int             # simplex pivots over both phases


def solve_lp(
    a: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    *,
    start_upper: tuple[int, ...] = (),
) -> LpSolution:
    """Solve one LP.  ``start_upper`` lists structural variables to start at
    their (finite) upper bound instead of the lower one; it only changes the
    starting point, never the optimum."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("constraint matrix must be two-dimensional")
    m, k = a.shape
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if b.shape != (m,) or c.shape != (k,) or lower.shape != (k,) or upper.shape != (k,):
        raise ValueError("inconsistent LP dimensions")
    if not np.all(np.isfinite(lower)):
        raise ValueError("all lower bounds must be finite")
    if np.any(upper < lower - FEAS_TOL):
        return LpSolution(STATUS_INFEASIBLE, float("nan"), np.empty(0), (), 0)

    tab = _Tableau(a, b, c, lower, upper, start_upper)
    if not tab.run_phase1():
        return LpSolution(STATUS_INFEASIBLE, float("nan"), np.empty(0), (), tab.iterations)
    tab.run_phase2()
    x_full = tab.values()
    value = float(c @ x_full[:k])
    return LpSolution(
        STATUS_OPTIMAL, value, x_full[:k].copy(), tuple(int(v) for v in tab.basis), tab.iterations
    )


@njit(cache=True)
def _optimize_kernel(
    tt,          # (n_all, m) transposed tableau, columns contiguous
    rhs,         # (m,)
    xb,          # (m,) basic variable values
    basis,       # (m,) int64 row -> variable
    status,      # (n_all,) int8
    sgn,         # (n_all,) pricing direction: +1 below, -1 above, 0 basic/fixed
    nb_vals,     # (n_all,) nonbasic variable values (basic entries 0)
    lower,
    upper,
    cost,
    cb,          # (m,) cost of basic variables
    lbb,         # (m,) lower bounds of basic variables
    ubb,         # (m,) upper bounds of basic variables
    start_iter,
):
    m = rhs.shape[0]
    n_all = tt.shape[0]
    iters = start_iter
    stall = 0
    bland = False
    inf = np.inf
    while True:
        iters += 1
        if iters > _ITER_LIMIT:
            return _KERNEL_ITER_LIMIT, iters
        if iters % _REFRESH_STRIDE == 0:
            for i in range(m):
                xb[i] = rhs[i]
            for jj in range(n_all):
                v = nb_vals[jj]
                if v != 0.0:
                    col = tt[jj]
                    for i in range(m):
                        xb[i] -= col[i] * v

        # pricing: most negative signed reduced cost (Dantzig), or the first
        # eligible index once Bland's rule is active
        best_j = -1
        best_g = -DUAL_TOL
        for j in range(n_all):
            s = sgn[j]
            if s == 0.0:
                continue
            col = tt[j]
            acc = 0.0
            for i in range(m):
                acc += cb[i] * col[i]
            g = s * (cost[j] - acc)
            if g < best_g:
                best_j = j
                best_g = g
                if bland:
                    break
        if best_j < 0:
            return _KERNEL_OPTIMAL, iters
        j = best_j
        direction = sgn[j]
        col_j = tt[j]

        # ratio test: smallest step before a basic variable hits a bound
        row_min = inf
        for i in range(m):
            dwv = direction * col_j[i]
            if dwv > PIVOT_TOL:
                ratio = (xb[i] - lbb[i]) / dwv
            elif dwv < -PIVOT_TOL:
                u = ubb[i]
                if u == inf:
                    continue
                ratio = (xb[i] - u) / dwv
            else:
                continue
            if ratio < 0.0:
                ratio = 0.0
            if ratio < row_min:
                row_min = ratio

        flip_delta = upper[j] - lower[j]
        delta = flip_delta if flip_delta < row_min else row_min
        if delta == inf:
            return _KERNEL_UNBOUNDED, iters

        if -best_g * delta <= 1e-12:
            stall += 1
            if stall >= _STALL_LIMIT:
                bland = True
        else:
            stall = 0

        if flip_delta <= row_min:
            # bound flip: no basis change
            if status[j] == _LOWER:
                status[j] = _UPPER
                nb_vals[j] = upper[j]
            else:
                status[j] = _LOWER
                nb_vals[j] = lower[j]
            sgn[j] = -direction
            step = direction * flip_delta
            for i in range(m):
                xb[i] -= step * col_j[i]
            continue

        # leaving row among near-minimal ratios: largest pivot magnitude for
        # stability, or the smallest basis variable under Bland's rule
        r = -1
        best_mag = -1.0
        best_var = 0
        limit = row_min + RATIO_TIE_TOL
        for i in range(m):
            dwv = direction * col_j[i]
            if dwv > PIVOT_TOL:
                ratio = (xb[i] - lbb[i]) / dwv
            elif dwv < -PIVOT_TOL:
                u = ubb[i]
                if u == inf:
                    continue
                ratio = (xb[i] - u) / dwv
            else:
                continue
            if ratio < 0.0:
                ratio = 0.0
            if ratio <= limit:
                if bland:
                    if r < 0 or basis[i] < best_var:
                        r = i
                        best_var = basis[i]
                else:
                    mag = abs(dwv)
                    if mag > best_mag:
                        r = i
                        best_mag = mag

        enter_val = lower[j] + delta if direction > 0 else upper[j] - delta
        step = direction * delta
        for i in range(m):
            xb[i] -= step * col_j[i]
        hit_upper = direction * col_j[r] < 0.0
        leaving = basis[r]
        if hit_upper:
            status[leaving] = _UPPER
            nb_vals[leaving] = ubb[r]
        else:
            status[leaving] = _LOWER
            nb_vals[leaving] = lbb[r]
        if upper[leaving] - lower[leaving] > FEAS_TOL:
            sgn[leaving] = -1.0 if hit_upper else 1.0
        else:
            sgn[leaving] = 0.0
        basis[r] = j
        status[j] = _BASIC
        sgn[j] = 0.0
        nb_vals[j] = 0.0
        cb[r] = cost[j]
        lbb[r] = lower[j]
        ubb[r] = upper[j]
        xb[r] = enter_val

        # eliminate: column j becomes the unit vector of row r
        piv = col_j[r]
        pr = 1.0 / piv
        fcol = col_j.copy()
        fcol[r] = 0.0
        rhs[r] *= pr
        rhs_r = rhs[r]
        for i in range(m):
            f = fcol[i]
            if f != 0.0:
                rhs[i] -= f * rhs_r
        for jj in range(n_all):
            col = tt[jj]
            v = col[r] * pr
            if v != 0.0:
                col[r] = v
                for i in range(m):
                    f = fcol[i]
                    if f != 0.0:
                        col[i] -= f * v


class _Tableau:
    """LP state: transposed tableau, bounds, statuses, and basic values."""

    def __init__(self, a, b, c, lower, upper, start_upper=()):
        m, k = a.shape
        self.m = m
        self.k = k
        self.tt = np.ascontiguousarray(np.vstack([a.T, np.eye(m)]))
        self.rhs = b.copy()
        self.lower = np.concatenate([lower, np.zeros(m)])
        self.upper = np.concatenate([upper, np.full(m, np.inf)])
        self.cost = np.concatenate([c, np.zeros(m)])
        self.status = np.full(k + m, _LOWER, dtype=np.int8)
        for j in start_upper:
            if np.isfinite(self.upper[j]):
                self.status[j] = _UPPER
        self.basis = np.arange(k, k + m, dtype=np.int64)
        self.status[self.basis] = _BASIC
        self.iterations = 0
        # value of every nonbasic variable (basic entries kept at 0)
        self.nb_vals = np.where(self.status == _UPPER, self.upper, self.lower)
        self.nb_vals[self.basis] = 0.0
        self.xb = self.rhs - self.tt.T @ self.nb_vals
        self._crash()

    def values(self) -> np.ndarray:
        vals = self.nb_vals.copy()
        vals[self.basis] = self.xb
        return vals

    def _crash(self) -> None:
        """Cheap feasibility repair before phase 1: pivot a free-above
        variable whose column is nonpositive (raising it never hurts any
        other row) into the most violated row.  Covers the epigraph variable
        of the robustness models, where one pivot satisfies every epigraph
        row at once."""
        candidates = np.flatnonzero(np.isinf(self.upper[: self.k]))
        for _ in range(_CRASH_LIMIT):
            r = int(np.argmin(self.xb)) if self.m else -1
            if r < 0 or self.xb[r] >= -FEAS_TOL:
                return
            chosen = -1
            for j in candidates:
                if self.status[j] == _BASIC:
                    continue
                col = self.tt[j]
                if col[r] < -PIVOT_TOL and np.all(col <= PIVOT_TOL):
                    chosen = int(j)
                    break
            if chosen < 0:
                return
            self._pivot(r, chosen)
            leaving = int(self.basis[r])
            self.status[leaving] = _LOWER
            self.nb_vals[leaving] = self.lower[leaving]
            self.basis[r] = chosen
            self.status[chosen] = _BASIC
            self.nb_vals[chosen] = 0.0
            self.xb = self.rhs - self.tt.T @ self.nb_vals

    def _pivot(self, r: int, j: int) -> None:
        """One Gaussian elimination step outside the kernel (setup only)."""
        piv = self.tt[j, r]
        self.tt[:, r] /= piv
        self.rhs[r] /= piv
        fcol = self.tt[j].copy()
        fcol[r] = 0.0
        self.tt -= np.outer(self.tt[:, r], fcol)
        self.rhs -= fcol * self.rhs[r]

    def run_phase1(self) -> bool:
        """Install artificials on violated rows and minimize them to zero."""
        viol = np.where(self.xb < self.lower[self.basis] - FEAS_TOL)[0]
        if viol.size == 0:
            return True
        n_old = self.tt.shape[0]
        self.tt = np.ascontiguousarray(np.vstack([self.tt, np.zeros((viol.size, self.m))]))
        self.lower = np.concatenate([self.lower, np.zeros(viol.size)])
        self.upper = np.concatenate([self.upper, np.full(viol.size, np.inf)])
        self.cost = np.concatenate([self.cost, np.zeros(viol.size)])
        self.status = np.concatenate([self.status, np.full(viol.size, _LOWER, dtype=np.int8)])
        self.nb_vals = np.concatenate([self.nb_vals, np.zeros(viol.size)])
        phase1_cost = np.zeros(n_old + viol.size)
        # kick each violated basic to its lower bound, then give every such
        # row an artificial sized (and signed) to restore the equality
        for idx, r in enumerate(viol):
            leaving = int(self.basis[r])
            self.status[leaving] = _LOWER
            self.nb_vals[leaving] = self.lower[leaving]
            self.basis[r] = n_old + idx
        residual = self.rhs - self.tt.T @ self.nb_vals
        for idx, r in enumerate(viol):
            art = n_old + idx
            if residual[r] < 0.0:
                self.tt[:, r] *= -1.0
                self.rhs[r] *= -1.0
                residual[r] = -residual[r]
            self.tt[art, r] = 1.0
            self.status[art] = _BASIC
            self.nb_vals[art] = 0.0
            phase1_cost[art] = 1.0
        self.xb = residual
        self._run_kernel(phase1_cost)
        infeasibility = float(phase1_cost @ self.values())
        if infeasibility > 1e-7:
            return False
        # artificials are pinned at zero for phase 2; a basic one at value 0
        # is harmless and leaves on the first pivot that touches its row
        self.upper[n_old:] = 0.0
        return True

    def run_phase2(self) -> None:
        self._run_kernel(self.cost)

    def _run_kernel(self, cost: np.ndarray) -> None:
        sgn = np.where(self.status == _LOWER, 1.0, -1.0)
        sgn[self.status == _BASIC] = 0.0
        sgn[self.upper - self.lower <= FEAS_TOL] = 0.0
        cb = cost[self.basis].copy()
        lbb = self.lower[self.basis].copy()
        ubb = self.upper[self.basis].copy()
        code, iters = _optimize_kernel(
            self.tt, self.rhs, self.xb, self.basis, self.status, sgn,
            self.nb_vals, self.lower, self.upper, cost, cb, lbb, ubb,
            self.iterations,
        )
        self.iterations = int(iters)
        if code == _KERNEL_ITER_LIMIT:
            raise SimplexError("simplex iteration limit exceeded")
        if code == _KERNEL_UNBOUNDED:
            raise SimplexError("unbounded LP relaxation (malformed model)")
