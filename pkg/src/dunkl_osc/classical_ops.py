"""Hardy-Littlewood maximal function, conjugate Hardy operator, maximal
Hilbert transform, Carleson-Hunt maximal operator, and the pointwise
majorant |x|^{-(a+1/2)} (M_HL + H + H* + C)((.)^{a+1/2} f)(|x|) that
dominates Hankel partial sums.

Quadrature strategy: integrands are integrated panel-by-panel with the
grid's own Gauss-Legendre weights; windows and truncations that cut a panel
are re-quadratured on the kept sub-interval with a fresh Gauss rule, the
function values at the new nodes obtained by linear interpolation between
grid samples.  Kernels (1/y, 1/(x-z), modulations) are evaluated exactly at
all nodes, so truncation boundaries cost no node-snapping error.

Suprema over radii/frequencies are taken over a finite SupGrid, iterated in
a fixed order; enlarging the SupGrid never decreases any output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ResolutionError
from .funcspace import FULL_LINE, HALF_LINE, Grid, SampledFn

_SUB_NODES = 12
_GL_SUB = np.polynomial.legendre.leggauss(_SUB_NODES)


@dataclass(frozen=True)
class SupGrid:
    """Finite discretization of sup_{r>0} / sup_{eps>0} / sup_{xi in R}:
    decreasing positive radii (dyadic by default) and a symmetric finite
    frequency set."""

    radii: np.ndarray
    frequencies: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        q = np.asarray(self.frequencies, dtype=float)
        if r.ndim != 1 or r.size == 0 or np.any(r <= 0) or np.any(np.diff(r) >= 0):
            raise ArgumentError("radii must be positive and strictly decreasing")
        qs = np.sort(q)
        if q.ndim != 1 or q.size == 0 or np.max(np.abs(qs + qs[::-1])) > 1e-12 * (1 + np.max(np.abs(q))):
            raise ArgumentError("frequencies must form a symmetric finite set")
        for arr, name in ((r, "radii"), (q, "frequencies")):
            a = np.ascontiguousarray(arr)
            a.flags.writeable = False
            object.__setattr__(self, name, a)


def default_sup_grid(grid: Grid, t_values=None) -> SupGrid:
    """Dyadic radii 2^8..2^-8 times the support scale; frequencies are the
    cut thresholds (plus 0), reflected to a symmetric set and capped at the
    grid's resolvable modulation band."""
    scale = max(abs(grid.lo), abs(grid.hi))
    radii = scale * 2.0 ** np.arange(8, -9, -1)
    if t_values is None:
        pos = 2.0 ** np.arange(-4, 8)
    else:
        pos = np.asarray(t_values, dtype=float)
    pos = pos[pos * grid.max_spacing <= np.pi / 3.0]
    freqs = np.unique(np.concatenate([-pos, [0.0], pos]))
    return SupGrid(radii, freqs)


def _require_panels(grid: Grid) -> np.ndarray:
    if grid.panel_edges is None:
        raise ArgumentError("this operator needs a grid with panel structure "
                            "(grids loaded from CSV do not carry one)")
    return grid.panel_edges


def _panel_prefix(grid: Grid, integrand: np.ndarray):
    """Per-panel Gauss sums of integrand and their prefix sums."""
    edges = _require_panels(grid)
    idx = np.searchsorted(edges, grid.points, side="right") - 1
    idx = np.clip(idx, 0, edges.size - 2)
    masses = np.bincount(idx, weights=grid.weights * integrand, minlength=edges.size - 1)
    prefix = np.concatenate([[0.0], np.cumsum(masses)])
    return edges, prefix


def _sub_gauss(a, b):
    """Nodes/weights of the fixed Gauss rule on segments [a, b] (batched)."""
    gx, gw = _GL_SUB
    mid = (a + b) / 2.0
    hl = (b - a) / 2.0
    nodes = mid[..., None] + hl[..., None] * gx
    wts = hl[..., None] * gw
    return nodes, wts


def _interp(grid: Grid, vals: np.ndarray, x: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(vals):
        re = np.interp(x, grid.points, vals.real, left=0.0, right=0.0)
        im = np.interp(x, grid.points, vals.imag, left=0.0, right=0.0)
        return re + 1j * im
    return np.interp(x, grid.points, vals, left=0.0, right=0.0)


def _window_integrals(grid: Grid, samples: np.ndarray, a: np.ndarray, b: np.ndarray,
                      kernel=None) -> np.ndarray:
    """integral_a^b samples(y) kernel(y) dy, a <= b elementwise.  Whole
    panels use the grid weights with node-exact kernel values; the cut
    panels are re-quadratured with interpolated samples and exact kernel."""
    integrand = samples if kernel is None else samples * kernel(grid.points)
    edges, prefix = _panel_prefix(grid, integrand)
    a = np.clip(a, edges[0], edges[-1])
    b = np.clip(b, edges[0], edges[-1])
    ia = np.clip(np.searchsorted(edges, a, side="right") - 1, 0, edges.size - 2)
    ib = np.clip(np.searchsorted(edges, b, side="right") - 1, 0, edges.size - 2)
    same = ia == ib
    out = np.zeros_like(a, dtype=float)

    def seg(lo, hi):
        nodes, wts = _sub_gauss(lo, hi)
        v = _interp(grid, samples, nodes.ravel()).reshape(nodes.shape)
        if kernel is not None:
            v = v * kernel(nodes)
        return np.sum(wts * v, axis=-1)

    if np.any(same):
        out[same] = seg(a[same], b[same])
    diff = ~same
    if np.any(diff):
        full = prefix[ib[diff]] - prefix[ia[diff] + 1]
        out[diff] = full + seg(a[diff], edges[ia[diff] + 1]) + seg(edges[ib[diff]], b[diff])
    return out


def hardy_littlewood_max(f: SampledFn, sup: SupGrid) -> SampledFn:
    """sup over radii of the window average (1/2r) integral_{x-r}^{x+r} |f|."""
    absf = np.abs(f.values)
    x = f.grid.points
    best = np.zeros_like(x)
    for r in sup.radii:
        avg = _window_integrals(f.grid, absf, x - r, x + r) / (2.0 * r)
        best = np.maximum(best, avg)
    return SampledFn(f.grid, best, f.domain_tag)


def conjugate_hardy(f: SampledFn) -> SampledFn:
    """H f(x) = integral_{|x|}^sup-support |f(y)| / y dy."""
    grid = f.grid
    pos = grid.points > 0.0
    if not np.any(pos):
        raise ArgumentError("conjugate_hardy needs positive grid points")
    # integrate h(y) = |f(y)|/y over [|x|, hi] on the positive side
    ppts = grid.points[pos]
    pwts = grid.weights[pos]
    edges = _require_panels(grid)
    pedges = edges[edges >= 0.0]
    if pedges.size < 2 or pedges[0] != 0.0:
        pedges = np.concatenate([[0.0], pedges[pedges > 0.0]])
    pgrid = Grid(ppts, pwts, 0.0, float(grid.hi), pedges)
    xa = np.abs(grid.points)
    with np.errstate(divide="ignore"):
        vals = _window_integrals(pgrid, np.abs(f.values[pos]), xa,
                                 np.full_like(xa, grid.hi),
                                 kernel=lambda y: 1.0 / y)
    vals[xa >= grid.hi] = 0.0
    return SampledFn(grid, vals, f.domain_tag)


def _modulated_truncated(f: SampledFn, sup: SupGrid, frequencies: np.ndarray,
                         eval_idx: np.ndarray | None = None,
                         block: int = 64) -> np.ndarray:
    """max over (eps, xi) of |integral_{|x-z|>eps} f(z) e^{-i xi z}/(x-z) dz|
    evaluated at the grid nodes x[eval_idx].  Panels wholly outside the
    excluded window use the grid weights; the two cut panels are
    re-quadratured on their kept parts."""
    grid = f.grid
    edges = _require_panels(grid)
    z = grid.points
    w = grid.weights
    vals = f.values
    if np.max(np.abs(frequencies)) * grid.max_spacing > np.pi / 3.0:
        raise ResolutionError("modulation frequency beyond the grid's resolvable band")
    if eval_idx is None:
        eval_idx = np.arange(grid.n)
    xs = z[eval_idx]
    nE = sup.radii.size
    nQ = frequencies.size
    gmat = vals[:, None] * np.exp(-1j * np.outer(z, frequencies))  # (N, Q)
    panel_of = np.clip(np.searchsorted(edges, z, side="right") - 1, 0, edges.size - 2)
    out = np.zeros(xs.size)
    for s in range(0, xs.size, block):
        xb = xs[s:s + block]                                   # (B,)
        B = xb.size
        with np.errstate(divide="ignore"):
            kern = 1.0 / (xb[:, None] - z[None, :])            # (B, N)
        kern[~np.isfinite(kern)] = 0.0  # diagonal is always inside the window
        acc = np.full(B, 0.0)
        lo_w = xb[:, None] - sup.radii[None, :]                # (B, E)
        hi_w = xb[:, None] + sup.radii[None, :]
        ia = np.clip(np.searchsorted(edges, lo_w.ravel(), side="right") - 1, 0, edges.size - 2).reshape(B, nE)
        ib = np.clip(np.searchsorted(edges, hi_w.ravel(), side="right") - 1, 0, edges.size - 2).reshape(B, nE)
        res = np.zeros((B, nE, nQ), dtype=complex)
        for e in range(nE):
            keep = (panel_of[None, :] < ia[:, e][:, None]) | (panel_of[None, :] > ib[:, e][:, None])
            wk = np.where(keep, kern * w[None, :], 0.0)        # (B, N)
            res[:, e, :] = wk @ gmat
        # kept parts of the cut panels: [panel_lo, x-eps] and [x+eps, panel_hi]
        for side in (0, 1):
            if side == 0:
                seg_lo = edges[ia]                              # (B, E)
                seg_hi = np.minimum(lo_w, edges[ia + 1])
            else:
                seg_lo = np.maximum(hi_w, edges[ib])
                seg_hi = edges[ib + 1]
            seg_hi = np.maximum(seg_lo, np.clip(seg_hi, edges[0], edges[-1]))
            seg_lo = np.clip(seg_lo, edges[0], edges[-1])
            nodes, wts = _sub_gauss(seg_lo, seg_hi)             # (B, E, q)
            fv = _interp(grid, vals, nodes.ravel()).reshape(nodes.shape)
            kv = 1.0 / (xb[:, None, None] - nodes)
            base = wts * fv * kv                                # (B, E, q)
            phase = np.exp(-1j * nodes[..., None] * frequencies)  # (B, E, q, Q)
            res += np.einsum("beq,beqQ->beQ", base, phase)
        out[s:s + B] = np.max(np.abs(res), axis=(1, 2))
    return out


def maximal_hilbert(f: SampledFn, sup: SupGrid,
                    eval_idx: np.ndarray | None = None) -> SampledFn | np.ndarray:
    """sup over eps of |integral_{|y|>eps} f(x-y)/y dy|."""
    out = _modulated_truncated(f, sup, np.array([0.0]), eval_idx)
    if eval_idx is None:
        return SampledFn(f.grid, out, f.domain_tag)
    return out


def carleson_hunt(f: SampledFn, sup: SupGrid,
                  eval_idx: np.ndarray | None = None) -> SampledFn | np.ndarray:
    """sup over (eps, xi) of |integral_{|y|>eps} e^{i xi y} f(x-y)/y dy|."""
    out = _modulated_truncated(f, sup, sup.frequencies, eval_idx)
    if eval_idx is None:
        return SampledFn(f.grid, out, f.domain_tag)
    return out


def _even_zero_extension(f: SampledFn) -> SampledFn:
    """Half-line f viewed on the full line, zero on the negative axis."""
    g = f.grid
    edges = _require_panels(g)
    pts = np.concatenate([-g.points[::-1], g.points])
    wts = np.concatenate([g.weights[::-1], g.weights])
    eds = np.concatenate([-edges[::-1], edges[1:]]) if edges[0] == 0.0 else \
        np.concatenate([-edges[::-1], [0.0], edges])
    full = Grid(pts, wts, -g.hi, g.hi, eds)
    vals = np.concatenate([np.zeros(g.n, dtype=complex), f.values])
    return SampledFn(full, vals, FULL_LINE)


def prestini_majorant(order: float, f: SampledFn, sup: SupGrid) -> SampledFn:
    """|x|^{-(a+1/2)} (M_HL + H + H* + C)((.)^{a+1/2} f)(|x|) for a
    half-line f extended by zero; the unknown uniform constant is left out
    and estimated empirically by the harness."""
    if f.domain_tag != HALF_LINE:
        raise ArgumentError("prestini_majorant expects a half-line function")
    fx = _even_zero_extension(f)
    a = float(order)
    g = fx.with_values(fx.values * np.abs(fx.grid.points) ** (a + 0.5))
    pos_idx = np.arange(fx.grid.n // 2, fx.grid.n)
    mhl = hardy_littlewood_max(g, sup).values[pos_idx]
    hop = conjugate_hardy(g).values[pos_idx]
    hst = maximal_hilbert(g, sup, pos_idx)
    car = carleson_hunt(g, sup, pos_idx)
    total = (mhl + hop + hst + car) * f.grid.points ** (-(a + 0.5))
    return SampledFn(f.grid, total, HALF_LINE)
