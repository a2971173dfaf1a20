"""Mahler measure of integer Laurent polynomials.

One variable: Jensen's product over roots, after splitting off repeated
factors exactly so the simultaneous root iteration only ever sees
squarefree input. Several variables: either a reduction to one variable
(when all exponents lie on a line) or plain averaging of log|f| over offset
grids on the torus.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .laurent import LaurentPoly, squarefree_parts, to_coeffs

SNAP = 1e-9
RESIDUAL_TOL = 1e-13
MAX_SWEEPS = 500
GRID_SIZES = (64, 128, 256, 512, 1024, 2048)
MAX_GRID_POINTS = 1 << 24
CHUNK_POINTS = 1 << 21
DEFAULT_TOL = 5e-3


class MahlerError(ArithmeticError):
    pass


class RootFindingError(MahlerError):
    def __init__(self, msg, residuals=None):
        super().__init__(msg)
        self.residuals = residuals


@dataclass
class MahlerResult:
    value: float
    log_value: float
    method: str  # roots | quadrature | line-reduction
    error_bound: float
    converged: bool = True
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"value": self.value, "log_value": self.log_value, "method": self.method,
                "error_bound": self.error_bound, "converged": self.converged,
                "diagnostics": self.diagnostics}


# --- one variable -------------------------------------------------------------------------

def durand_kerner(coeffs, seed: int = 0, tol: float = RESIDUAL_TOL, max_sweeps: int = MAX_SWEEPS):
    """All complex roots of a polynomial (coefficients low-to-high).

    Weierstrass/Durand-Kerner simultaneous iteration from perturbed points
    on the unit circle. Returns (roots, relative residuals, sweeps).
    """
    c = np.asarray([complex(x) for x in coeffs], dtype=complex)
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, complex), np.zeros(0), 0
    monic = c / c[-1]
    desc = monic[::-1]
    absdesc = np.abs(desc)
    rng = np.random.default_rng(seed)
    ang = 2 * np.pi * (np.arange(n) + 0.25 + 0.1 * rng.random(n)) / n
    z = (1.0 + 0.05 * rng.random(n)) * np.exp(1j * ang)

    def residual(z):
        return np.abs(np.polyval(desc, z)) / np.polyval(absdesc, np.abs(z))

    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        step = np.polyval(desc, z) / np.prod(diff, axis=1)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(z))) or \
                np.all(residual(z) < tol):
            break
    res = residual(z)
    return z, res, sweeps


def _newton_error(coeffs, z):
    desc = np.asarray([complex(x) for x in coeffs[::-1]])
    d1 = np.polyder(desc)
    with np.errstate(divide="ignore", invalid="ignore"):
        e = np.abs(np.polyval(desc, z) / np.polyval(d1, z))
    return np.nan_to_num(e, nan=0.0, posinf=0.0)


def mahler_univariate(f: LaurentPoly, seed: int = 0) -> MahlerResult:
    if f.is_zero():
        raise MahlerError("Mahler measure of the zero polynomial is undefined")
    if f.dim != 1:
        raise MahlerError("mahler_univariate needs a one-variable polynomial")
    coeffs, _ = to_coeffs(f)  # the monomial shift is a unit
    log_m = math.log(abs(coeffs[-1]))
    err = 0.0
    all_roots = []
    max_res = 0.0
    sweeps_total = 0
    for part, mult in squarefree_parts(coeffs):
        roots = None
        for attempt in range(4):
            z, res, sweeps = durand_kerner(part, seed=seed + 7919 * attempt)
            sweeps_total += sweeps
            if np.all(res < 1e-10):
                roots = z
                break
        if roots is None:
            raise RootFindingError(f"root iteration did not converge for factor {part}",
                                   residuals=res.tolist())
        max_res = max(max_res, float(res.max()) if len(res) else 0.0)
        dz = _newton_error(part, roots)
        for r, e in zip(roots, dz):
            a = abs(r)
            all_roots.extend([complex(r)] * mult)
            if abs(a - 1.0) < SNAP or a <= 1.0:
                continue
            log_m += mult * math.log(a)
            err += mult * (len(part) * e / a)
    err += 1e-15 * max(1.0, abs(log_m))
    return MahlerResult(math.exp(log_m), log_m, "roots", err, True,
                        {"degree": len(coeffs) - 1, "max_relative_residual": max_res,
                         "sweeps": sweeps_total,
                         "roots_outside": sum(1 for r in all_roots if abs(r) > 1 + SNAP)})


def univariate_roots(f: LaurentPoly, seed: int = 0) -> list[complex]:
    """Roots with multiplicity, via the same squarefree split as the measure."""
    coeffs, _ = to_coeffs(f)
    out = []
    for part, mult in squarefree_parts(coeffs):
        z, res, _ = durand_kerner(part, seed=seed)
        out.extend([complex(r) for r in z for _ in range(mult)])
    return out


# --- several variables ---------------------------------------------------------------------

def _grid_mean_log(exps: np.ndarray, coef: np.ndarray, K: int) -> tuple[float, int]:
    """Mean of log|f| over the offset grid exp(2 pi i (k + 1/2) / K)^d."""
    d = exps.shape[1]
    theta = 2 * np.pi * (np.arange(K) + 0.5) / K
    # phase tables per variable: table[v][e] = exp(i e theta)
    tables = []
    for v in range(d):
        vals = np.unique(exps[:, v])
        tables.append({int(e): np.exp(1j * e * theta) for e in vals})
    rest = d - 1
    rows_per_chunk = max(1, CHUNK_POINTS // (K ** rest)) if rest else K
    total = 0.0
    skipped = 0
    for start in range(0, K, rows_per_chunk):
        stop = min(K, start + rows_per_chunk)
        acc = np.zeros((stop - start,) + (K,) * rest, dtype=complex)
        for e, c in zip(exps, coef):
            term = tables[0][int(e[0])][start:stop]
            shaped = term.reshape((-1,) + (1,) * rest)
            prod = c * shaped
            for v in range(1, d):
                shape = [1] * (rest + 1)
                shape[v] = K
                prod = prod * tables[v][int(e[v])].reshape(shape)
            acc += prod
        mag = np.abs(acc)
        bad = mag < 1e-300
        skipped += int(bad.sum())
        total += float(np.sum(np.log(np.where(bad, 1.0, mag))))
    return total / (K ** d - skipped) if K ** d > skipped else float("-inf"), skipped


def mahler_multivariate(f: LaurentPoly, tol: float = DEFAULT_TOL) -> MahlerResult:
    if f.is_zero():
        raise MahlerError("Mahler measure of the zero polynomial is undefined")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if len(f) == 1:
        c = abs(next(iter(f.terms.values())))
        return MahlerResult(float(c), math.log(c), "quadrature", 0.0, True,
                            {"note": "monomial: measure is |coefficient|"})
    exps = np.array(list(f.terms.keys()), dtype=np.int64)
    coef = np.array([float(c) for c in f.terms.values()])
    d = f.dim
    prev = None
    history = []
    skipped_total = 0
    est = None
    diff = float("inf")
    for K in GRID_SIZES:
        if K ** d > MAX_GRID_POINTS and history:
            break
        est, skipped = _grid_mean_log(exps, coef, K)
        skipped_total += skipped
        history.append((K, est))
        if prev is not None:
            diff = abs(est - prev)
            if diff < tol:
                break
        prev = est
    converged = diff < tol
    return MahlerResult(math.exp(est), est, "quadrature", diff if math.isfinite(diff) else float("inf"),
                        converged,
                        {"grids": [k for k, _ in history], "estimates": [e for _, e in history],
                         "skipped_points": skipped_total})


# --- dispatch ------------------------------------------------------------------------------

def line_reduction(f: LaurentPoly) -> tuple[LaurentPoly, tuple[int, ...]] | None:
    """If all exponents lie on a + k v (v primitive), return (g(t), v) with f = u^a g(u^v)."""
    exps = list(f.terms)
    base = exps[0]
    diffs = [tuple(a - b for a, b in zip(e, base)) for e in exps]
    w = next((x for x in diffs if any(x)), None)
    if w is None:
        return None
    g = 0
    for x in w:
        g = math.gcd(g, x)
    v = tuple(x // g for x in w)
    piv = next(k for k, x in enumerate(v) if x)
    ks = []
    for x in diffs:
        if x[piv] % v[piv]:
            return None
        k = x[piv] // v[piv]
        if any(a != k * b for a, b in zip(x, v)):
            return None
        ks.append(k)
    lo = min(ks)
    return LaurentPoly(1, {(k - lo,): c for k, c in zip(ks, f.terms.values())}), v


def mahler(f: LaurentPoly, tol: float = DEFAULT_TOL, seed: int = 0) -> MahlerResult:
    if f.is_zero():
        raise MahlerError("Mahler measure of the zero polynomial is undefined")
    if f.dim == 1:
        return mahler_univariate(f, seed=seed)
    if len(f) == 1:
        c = abs(next(iter(f.terms.values())))
        return MahlerResult(float(c), math.log(c), "line-reduction", 0.0, True,
                            {"note": "monomial: measure is |coefficient|"})
    red = line_reduction(f)
    if red is not None:
        g, v = red
        res = mahler_univariate(g, seed=seed)
        res.method = "line-reduction"
        res.diagnostics["direction"] = list(v)
        return res
    return mahler_multivariate(f, tol)
