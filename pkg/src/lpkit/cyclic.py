"""The convolution algebra of the cyclic group of order n on ell^p_n.

Elements live in Gelfand coordinates: xi[j] is the eigenvalue of the
associated circulant at the j-th character.  The canonical generator is
xi = (1, w, ..., w^{n-1}) with w = exp(2 pi i / n), whose circulant is the
cyclic shift matrix (ones on the subdiagonal and in the top-right corner).

The norm of an element is the operator p-norm of its circulant.  At p = 1
that is the common column sum of absolute values, at p = 2 the sup of |xi|;
other exponents are bracketed through the pnorm engine with FFT matvecs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .pnorm import (
    NormEstimate,
    as_exponent,
    boyd_lower,
    default_starts,
    interpolation_upper,
)

__all__ = [
    "CyclicElement",
    "GapSearchError",
    "IsometryClassification",
    "circulant_of",
    "classify_isometry",
    "embed_divisor",
    "fpzn_norm",
    "gap_witness",
    "restrict",
    "rotate",
]


class GapSearchError(RuntimeError):
    """Search budget exhausted without certifying a strict norm gap."""


@dataclass(frozen=True)
class CyclicElement:
    """Element of the order-n cyclic convolution algebra in Gelfand coordinates."""

    n: int
    xi: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("group order must be positive")
        xi = np.asarray(self.xi, dtype=complex)
        if xi.shape != (self.n,):
            raise ValueError(f"expected {self.n} coordinates, got shape {xi.shape}")
        if not (np.all(np.isfinite(xi.real)) and np.all(np.isfinite(xi.imag))):
            raise ValueError("coordinates must be finite")
        xi = xi.copy()
        xi.flags.writeable = False
        object.__setattr__(self, "xi", xi)

    @property
    def is_invertible(self) -> bool:
        return bool(np.all(np.abs(self.xi) > 0.0))

    def inverse(self) -> "CyclicElement":
        if not self.is_invertible:
            raise ValueError("element has a zero coordinate, not invertible")
        return CyclicElement(self.n, 1.0 / self.xi)

    def multiply(self, other: "CyclicElement") -> "CyclicElement":
        if other.n != self.n:
            raise ValueError("group orders differ")
        return CyclicElement(self.n, self.xi * other.xi)

    def coefficients(self) -> np.ndarray:
        """First column of the circulant (group-algebra coefficients)."""
        return np.fft.fft(self.xi) / self.n

    @classmethod
    def generator(cls, n: int) -> "CyclicElement":
        return cls(n, np.exp(2j * np.pi * np.arange(n) / n))

    def to_json(self) -> dict:
        return {"n": self.n, "xi": [[float(z.real), float(z.imag)] for z in self.xi]}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclicElement":
        xi = np.array([complex(re, im) for re, im in obj["xi"]])
        return cls(int(obj["n"]), xi)


def circulant_of(x: CyclicElement) -> np.ndarray:
    """Circulant matrix with eigenvalue xi[j] at the j-th character.

    Entry (i, j) depends only on (i - j) mod n; the generator tuple maps to
    the cyclic shift matrix.
    """
    return scipy.linalg.circulant(x.coefficients())


def _circulant_matmats(x: CyclicElement):
    """Column-block products by the circulant and its adjoint, via FFT."""
    fhat = np.fft.fft(x.coefficients())

    def matmat(V: np.ndarray) -> np.ndarray:
        return np.fft.ifft(np.fft.fft(V, axis=0) * fhat[:, None], axis=0)

    def rmatmat(V: np.ndarray) -> np.ndarray:
        return np.fft.ifft(np.fft.fft(V, axis=0) * np.conj(fhat)[:, None], axis=0)

    return matmat, rmatmat


def _eigenvector(n: int, j: int) -> np.ndarray:
    """Unit eigenvector of every order-n circulant for the j-th character."""
    return np.exp(-2j * np.pi * j * np.arange(n) / n) / math.sqrt(n)


def fpzn_norm(x: CyclicElement, p, *, restarts: int = 32, tol: float = 1e-10,
              max_iter: int = 10_000, seed: int = 0) -> NormEstimate:
    """Norm of a cyclic-algebra element as an operator on ell^p_n.

    Exact at p = 1 (column sum) and p = 2 (sup of |xi|).  Otherwise the
    bracket comes from Boyd ascent (always seeded with the circulant's
    eigenvectors, so the lower bound dominates max |xi|) and Riesz-Thorin
    interpolation of the exact endpoint norms.
    """
    p = as_exponent(p)
    n = x.n
    c = x.coefficients()

    if p.is_one:
        val = float(np.sum(np.abs(c)))
        w = np.zeros(n, dtype=complex)
        w[0] = 1.0
        return NormEstimate(val, val, w, "exact-p1")

    if p.is_two:
        j = int(np.argmax(np.abs(x.xi)))
        return NormEstimate(float(np.abs(x.xi[j])), float(np.abs(x.xi[j])),
                            _eigenvector(n, j), "exact-p2")

    pv = p.value
    matmat, rmatmat = _circulant_matmats(x)
    if n <= 32:
        starts = default_starts(n, restarts, seed)
    else:
        top = np.argsort(np.abs(x.xi))[-8:]
        eig = np.stack([_eigenvector(n, int(j)) for j in top], axis=1)
        rng = np.random.default_rng(seed)
        rand = rng.standard_normal((n, 16)) + 1j * rng.standard_normal((n, 16))
        starts = np.concatenate([np.eye(n, dtype=complex)[:, :8], eig, rand], axis=1)
    lower, w = boyd_lower(matmat, rmatmat, starts, pv, tol=tol, max_iter=max_iter)
    n1 = float(np.sum(np.abs(c)))
    n2 = float(np.max(np.abs(x.xi)))
    upper = interpolation_upper(pv, n1, n2, n1)
    return NormEstimate(lower, max(upper, lower), w, "boyd+interp")


def embed_divisor(b: CyclicElement, m: int) -> CyclicElement:
    """Zero-insertion embedding of an order-d element into order m (d | m).

    Coordinate i lands at position i*(m/d); the map is isometric for every p.
    """
    d = b.n
    if m % d != 0:
        raise ValueError(f"{d} does not divide {m}")
    xi = np.zeros(m, dtype=complex)
    xi[:: m // d] = b.xi
    return CyclicElement(m, xi)


def restrict(b: CyclicElement, d: int, offset: int = 0) -> CyclicElement:
    """Stride sampling down to order d (d | n): output_i = xi[i*(n/d) + offset].

    Contractive for every p."""
    if b.n % d != 0:
        raise ValueError(f"{d} does not divide {b.n}")
    stride = b.n // d
    if not (0 <= offset < stride):
        raise ValueError(f"offset must lie in [0, {stride})")
    return CyclicElement(d, b.xi[offset::stride].copy())


def rotate(x: CyclicElement, k: int) -> CyclicElement:
    """Cyclic shift of the coordinate tuple by k positions; norm-preserving."""
    return CyclicElement(x.n, np.roll(x.xi, k))


@dataclass(frozen=True)
class IsometryClassification:
    """Outcome of testing an element for being an invertible isometry.

    kind is "isometry" (with the scalar zeta and character index k of the
    canonical form zeta * (1, w^k, ..., w^{(n-1)k})), "not-isometry" (with
    the norm excess max(||x||, ||x^-1||) - 1 > 0), or "all-unimodular"
    (p = 2, where every unimodular tuple is an isometry).
    """

    kind: str
    zeta: complex | None = None
    k: int | None = None
    excess: float | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.zeta is not None:
            out["zeta"] = [self.zeta.real, self.zeta.imag]
        if self.k is not None:
            out["k"] = self.k
        if self.excess is not None:
            out["excess"] = self.excess
        return out


def classify_isometry(x: CyclicElement, p, tol: float = 1e-9, *,
                      seed: int = 0) -> IsometryClassification:
    """Decide whether x is an invertible isometry of the order-n algebra.

    For p != 2 the invertible isometries are exactly the scalar multiples of
    generator powers; the fit takes zeta = xi[0] and reads k off the phase
    of xi[1]/xi[0], then checks all coordinates within tol.
    """
    p = as_exponent(p)
    if not x.is_invertible:
        raise ValueError("element is not invertible")
    n = x.n
    if p.is_two:
        if np.all(np.abs(np.abs(x.xi) - 1.0) <= tol):
            return IsometryClassification("all-unimodular")
        sup = float(np.max(np.abs(x.xi)))
        sup_inv = float(np.max(1.0 / np.abs(x.xi)))
        return IsometryClassification("not-isometry", excess=max(sup, sup_inv) - 1.0)

    zeta = complex(x.xi[0])
    if n == 1:
        k = 0
    else:
        theta = float(np.angle(x.xi[1] / x.xi[0]))
        k = int(round(theta * n / (2.0 * np.pi))) % n
    model = zeta * np.exp(2j * np.pi * k * np.arange(n) / n)
    if abs(abs(zeta) - 1.0) <= tol and np.max(np.abs(x.xi - model)) <= tol:
        return IsometryClassification("isometry", zeta=zeta / abs(zeta), k=k)
    lo = fpzn_norm(x, p, seed=seed).lower
    lo_inv = fpzn_norm(x.inverse(), p, seed=seed).lower
    return IsometryClassification("not-isometry", excess=max(lo, lo_inv) - 1.0)


def _restricted_sup_upper(alpha: CyclicElement, d: int, p, *, seed: int = 0) -> float:
    return max(
        fpzn_norm(restrict(alpha, d, b), p, seed=seed).upper
        for b in range(alpha.n // d)
    )


def gap_margin(alpha: CyclicElement, d: int, p, *, seed: int = 0) -> float:
    """Certified margin ||alpha||_lower - max_b ||restrict(alpha, d, b)||_upper."""
    return fpzn_norm(alpha, p, seed=seed).lower - _restricted_sup_upper(alpha, d, p, seed=seed)


def _structured_candidate(n: int, d: int, zetas: np.ndarray, ks: np.ndarray) -> CyclicElement:
    """Tuple whose every stride-(n/d) restriction is a canonical isometry.

    Position i*(n/d) + b carries zetas[b] * w_d^{i*ks[b]}, so restriction b is
    zetas[b] times the ks[b]-th generator power and has norm exactly one.
    """
    xi = np.empty(n, dtype=complex)
    stride = n // d
    i = np.arange(d)
    for b in range(stride):
        xi[b::stride] = zetas[b] * np.exp(2j * np.pi * ks[b] * i / d)
    return CyclicElement(n, xi)


def gap_witness(n: int, d: int, p, *, seed: int = 0, budget: int = 64,
                target_margin: float = 0.05) -> tuple[CyclicElement, float]:
    """Find alpha whose full norm strictly exceeds all its order-d restrictions.

    Tries block-constant candidates (restrictions exactly canonical) and a
    quadratic-phase tuple first, then randomized structured candidates with
    coordinate ascent on the free phases.  Returns (alpha, margin) with
    margin = ||alpha||.lower - max_b ||restriction_b||.upper certified by the
    norm brackets; raises GapSearchError if no positive margin is found.
    """
    p = as_exponent(p)
    if p.is_two:
        raise ValueError("no gap exists at p = 2 (the norm is the sup norm)")
    if n % d != 0 or not (1 <= d < n):
        raise ValueError("need d | n and d < n")

    stride = n // d
    j = np.arange(n)

    def margin_of(alpha: CyclicElement) -> float:
        return gap_margin(alpha, d, p, seed=seed)

    candidates = []
    # blocks of stride entries stepping through the d-th roots of unity
    # (every stride restriction is then exactly a canonical generator),
    # the same with step w_n^d, and a quadratic-phase tuple
    block_roots = CyclicElement(n, np.exp(2j * np.pi * (j // stride) / d))
    block_powers = CyclicElement(n, np.exp(2j * np.pi * d * (j // stride) / n))
    quad = CyclicElement(n, np.exp(1j * np.pi * j**2 / n))
    for cand in (block_roots, block_powers, quad):
        candidates.extend([cand, cand.inverse()])

    best: tuple[float, CyclicElement] | None = None
    for cand in candidates:
        m = margin_of(cand)
        if best is None or m > best[0]:
            best = (m, cand)
        if m >= target_margin:
            return cand, m

    rng = np.random.default_rng(seed)

    def ascend(zetas: np.ndarray, ks: np.ndarray) -> tuple[float, CyclicElement]:
        angles = np.angle(zetas)
        alpha = _structured_candidate(n, d, np.exp(1j * angles), ks)
        cur = margin_of(alpha)
        for _ in range(3):
            improved = False
            for b in range(stride):
                base = angles[b]
                grid = base + np.linspace(-np.pi, np.pi, 13)
                vals = []
                for g in grid:
                    trial = angles.copy()
                    trial[b] = g
                    vals.append(margin_of(_structured_candidate(n, d, np.exp(1j * trial), ks)))
                gi = int(np.argmax(vals))
                if vals[gi] > cur:
                    angles[b] = grid[gi]
                    cur = vals[gi]
                    improved = True
            if not improved:
                break
        return cur, _structured_candidate(n, d, np.exp(1j * angles), ks)

    for trial in range(budget):
        zetas = np.exp(2j * np.pi * rng.random(stride))
        ks = rng.integers(0, d, size=stride) if d > 1 else np.zeros(stride, dtype=int)
        m, alpha = ascend(zetas, ks)
        if best is None or m > best[0]:
            best = (m, alpha)
        if m >= target_margin:
            return alpha, m

    if best is not None and best[0] > 0.0:
        return best[1], best[0]
    raise GapSearchError(
        f"no strict gap certified for (n={n}, d={d}, p={p.value}) within budget {budget}"
    )
