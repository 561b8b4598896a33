"""Cumulative distributions of degree / betweenness and least-squares model fits.

Three models are fitted to a complementary cumulative distribution
``p(x) = P(X >= x)``:

* ``exponential``           ``p = a * exp(b x)``
* ``power_law``             ``p = a * x**(-g)``
* ``sum_two_exponentials``  ``p = a1 exp(b1 x) + a2 exp(b2 x)``

Fitting is a Levenberg-Marquardt damped Gauss-Newton loop on the plain
residuals ``model(x_i) - p_i`` (one residual per distinct x value).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import FitError

MODELS = ("exponential", "power_law", "sum_two_exponentials")
STAT_KINDS = ("degree", "weighted_degree", "betweenness", "weighted_betweenness")
N_PARAMS = {"exponential": 2, "power_law": 2, "sum_two_exponentials": 4}
PARAM_NAMES = {
    "exponential": ("alpha", "beta"),
    "power_law": ("alpha", "gamma"),
    "sum_two_exponentials": ("a1", "b1", "a2", "b2"),
}

REL_TOL = 1e-10
MAX_ITER = 500
LAMBDA0 = 1e-3
PARSIMONY = 2.0
# SSE values this far below the data's own energy are treated as exact fits
SSE_FLOOR = 1e-14


@dataclass
class EmpiricalCCDF:
    x: np.ndarray
    p: np.ndarray
    kind: str = "degree"

    def __len__(self):
        return len(self.x)

    def points(self):
        return list(zip(self.x.tolist(), self.p.tolist()))

    def to_csv(self, fits=()):
        """``x,p`` plus one ``<model>_p`` column per fit."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "p"] + [f"{f.model}_p" for f in fits])
        preds = [f.predict(self.x) for f in fits]
        for i, (x, p) in enumerate(zip(self.x, self.p)):
            w.writerow([repr(float(x)), repr(float(p))] + [repr(float(pr[i])) for pr in preds])
        return buf.getvalue()


def ccdf(values, kind="degree") -> EmpiricalCCDF:
    """``P(X >= x)`` over the distinct observed values of ``values``."""
    v = np.sort(np.asarray(values, dtype=float))
    n = len(v)
    if n == 0:
        return EmpiricalCCDF(np.zeros(0), np.zeros(0), kind)
    xs, first = np.unique(v, return_index=True)
    p = (n - first) / n
    return EmpiricalCCDF(xs, p, kind)


def degree_ccdf(g, weighted=False) -> EmpiricalCCDF:
    """CCDF of node degree (number of cables) or weighted degree (Ohm)."""
    if weighted:
        return ccdf(g.weighted_degrees(), "weighted_degree")
    return ccdf(g.degrees(), "degree")


def betweenness_ccdf(b) -> EmpiricalCCDF:
    kind = "weighted_betweenness" if getattr(b, "weighted_paths", False) else "betweenness"
    values = b.values if hasattr(b, "values") else b
    return ccdf(values, kind)


# -- models --------------------------------------------------------------
def _model(name, theta, x):
    if name == "exponential":
        a, b = theta
        e = np.exp(b * x)
        return a * e, np.stack([e, a * x * e], axis=1)
    if name == "power_law":
        a, g = theta
        xp = x ** (-g)
        return a * xp, np.stack([xp, -a * np.log(x) * xp], axis=1)
    if name == "sum_two_exponentials":
        a1, b1, a2, b2 = theta
        e1, e2 = np.exp(b1 * x), np.exp(b2 * x)
        return a1 * e1 + a2 * e2, np.stack([e1, a1 * x * e1, e2, a2 * x * e2], axis=1)
    raise ValueError(f"unknown model {name!r}")


def _linfit(x, y):
    """Least-squares line ``y = c0 + c1 x``."""
    A = np.stack([np.ones_like(x), x], axis=1)
    (c0, c1), *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(c0), float(c1)


def _initial(name, x, p):
    if name == "exponential":
        c0, c1 = _linfit(x, np.log(p))
        return np.array([np.exp(c0), c1])
    if name == "power_law":
        c0, c1 = _linfit(np.log(x), np.log(p))
        return np.array([np.exp(c0), -c1])
    # two-stage peel: slow component from the tail, fast one from the head residual
    n = len(x)
    tail = slice(n // 2, n)
    c0, c1 = _linfit(x[tail], np.log(p[tail]))
    a2, b2 = np.exp(c0), c1
    rest = p - a2 * np.exp(b2 * x)
    head = np.flatnonzero(rest[: max(2, n // 2)] > 0)
    if len(head) >= 2:
        d0, d1 = _linfit(x[head], np.log(rest[head]))
        a1, b1 = np.exp(d0), d1
    else:
        a1, b1 = 0.5 * a2, 4.0 * b2 if b2 < 0 else -1.0
    if b1 > b2:
        a1, b1, a2, b2 = a2, b2, a1, b1
    return np.array([a1, b1, a2, b2])


@dataclass
class FitResult:
    model: str
    parameters: dict
    sse: float
    converged: bool
    iterations: int
    warning: str | None = None
    sse_history: list = field(default_factory=list, repr=False)

    @property
    def theta(self):
        return np.array([self.parameters[k] for k in PARAM_NAMES[self.model]])

    def predict(self, x):
        x = np.asarray(x, dtype=float)
        if self.model == "power_law":
            out = np.full(x.shape, np.nan)
            pos = x > 0
            out[pos] = _model(self.model, self.theta, x[pos])[0]
            return out
        return _model(self.model, self.theta, x)[0]

    def to_dict(self):
        return {
            "model": self.model,
            "parameters": dict(self.parameters),
            "sse": self.sse,
            "converged": self.converged,
            "iterations": self.iterations,
            "warning": self.warning,
        }


def _domain(ccdf_or_xy, model):
    if isinstance(ccdf_or_xy, EmpiricalCCDF):
        x, p = ccdf_or_xy.x, ccdf_or_xy.p
    else:
        x, p = ccdf_or_xy
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    keep = p > 0
    if model == "power_law":
        keep &= x > 0
    return x[keep], p[keep]


def levenberg_marquardt(name, x, p, theta0, rel_tol=REL_TOL, max_iter=MAX_ITER):
    """Minimise ``sum (model(x) - p)**2`` from ``theta0``.

    Returns ``(theta, sse, converged, iterations, history)``; ``history``
    holds the SSE after every accepted step and never increases.
    """
    theta = np.asarray(theta0, dtype=float).copy()
    f, J = _model(name, theta, x)
    r = f - p
    sse = float(r @ r)
    history = [sse]
    lam = LAMBDA0
    converged = False
    it = 0
    scale = max(float(p @ p), 1e-300)
    while it < max_iter:
        it += 1
        if sse <= SSE_FLOOR**2 * scale:
            converged = True
            break
        JtJ = J.T @ J
        g = J.T @ r
        diag = np.diag(JtJ).copy()
        diag[diag <= 0] = 1e-300
        accepted = False
        while lam < 1e16:
            try:
                step = np.linalg.solve(JtJ + lam * np.diag(diag), -g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            trial = theta + step
            with np.errstate(over="ignore", invalid="ignore"):
                ft, Jt = _model(name, trial, x)
                rt = ft - p
                sse_t = float(rt @ rt) if np.all(np.isfinite(rt)) else np.inf
            if not np.isfinite(sse_t):
                sse_t = np.inf
            if sse_t < sse:
                accepted = True
                break
            lam *= 10.0
        if not accepted:
            # no descent direction left at any damping: a (local) minimum
            converged = True
            break
        rel = (sse - sse_t) / sse
        theta, f, J, r, sse = trial, ft, Jt, rt, sse_t
        history.append(sse)
        lam = max(lam / 10.0, 1e-12)
        if rel < rel_tol:
            converged = True
            break
    return theta, sse, converged, it, history


def fit(ccdf: EmpiricalCCDF, model: str, init=None) -> FitResult:
    """Least-squares fit of one model to a CCDF.

    Raises
    ------
    FitError
        Too few support points (3 for the two-parameter models, 5 for the
        sum of exponentials) or no spread in ``x``.
    """
    if model not in MODELS:
        raise FitError(f"unknown model {model!r}; choose from {MODELS}")
    x, p = _domain(ccdf, model)
    need = 5 if model == "sum_two_exponentials" else 3
    if len(x) < need:
        raise FitError(f"{model} fit needs at least {need} support points, got {len(x)}")
    if np.ptp(x) == 0:
        raise FitError("all x values are identical")
    theta0 = np.asarray(init, dtype=float) if init is not None else _initial(model, x, p)
    theta, sse, conv, it, hist = levenberg_marquardt(model, x, p, theta0)
    params = dict(zip(PARAM_NAMES[model], (float(t) for t in theta)))
    warning = None
    if model == "power_law" and params["gamma"] <= 1e-6:
        warning = "flat distribution: power-law exponent at the gamma=0 boundary"
    elif model == "exponential" and params["beta"] >= 0:
        warning = "non-decaying exponential"
    return FitResult(model, params, sse, conv, it, warning, hist)


@dataclass
class Classification:
    best_model: str
    fits: list
    skipped: dict = field(default_factory=dict)

    def fit_for(self, model):
        for f in self.fits:
            if f.model == model:
                return f
        return None

    def to_dict(self):
        return {
            "best_model": self.best_model,
            "fits": [f.to_dict() for f in self.fits],
            "skipped": dict(self.skipped),
        }


def classify(ccdf: EmpiricalCCDF, parsimony: float = PARSIMONY) -> Classification:
    """Fit all three models and pick the best by SSE.

    The four-parameter sum of exponentials only wins if its SSE is at most
    ``1/parsimony`` of the best two-parameter SSE, and SSE values below a
    relative floor of the data energy count as exact ties.
    """
    fits, skipped = [], {}
    for m in MODELS:
        try:
            fits.append(fit(ccdf, m))
        except FitError as exc:
            skipped[m] = str(exc)
    two = [f for f in fits if N_PARAMS[f.model] == 2]
    if not two:
        raise FitError("no two-parameter model could be fitted: " + "; ".join(skipped.values()))
    p = np.asarray(ccdf.p if isinstance(ccdf, EmpiricalCCDF) else ccdf[1], dtype=float)
    floor = SSE_FLOOR * float(p @ p)

    def eff(f):
        return max(f.sse, floor)

    best = min(two, key=lambda f: (eff(f), MODELS.index(f.model)))
    four = [f for f in fits if f.model == "sum_two_exponentials"]
    if four and eff(four[0]) * parsimony <= eff(best) and eff(best) > floor:
        best = four[0]
    return Classification(best.model, fits, skipped)
