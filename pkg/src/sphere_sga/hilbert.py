"""Harmonic-polynomial Hilbert space on the three-sphere.

Vectors are homogeneous polynomials in four real variables.  Degree-n
harmonics (Laplacian kernel) restricted to the unit sphere span the
(n+1)^2-dimensional energy level n(n+2); levels 0..N with an orthonormal
basis per level form the truncated representation space.

The harmonic kernel is computed in exact rational arithmetic; sphere
integrals of monomials have a closed form (rational multiple of pi^2), so
Gram matrices are exact up to one final float conversion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from numbers import Number
from typing import Iterable, Mapping

import numpy as np

Exponents = tuple[int, int, int, int]

GRAM_TOLERANCE = 1e-12


class Polynomial4:
    """Sparse homogeneous polynomial in four variables.

    Coefficients may be ints, Fractions, floats or complex numbers; arithmetic
    is carried out in whatever ring the coefficients live in.  The zero
    polynomial is the empty coefficient map.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Exponents, Number] | None = None):
        clean: dict[Exponents, Number] = {}
        degree = None
        for expts, c in (coeffs or {}).items():
            expts = tuple(int(e) for e in expts)
            if len(expts) != 4 or any(e < 0 for e in expts):
                raise ValueError(f"bad multi-index {expts}")
            if c == 0:
                continue
            d = sum(expts)
            if degree is None:
                degree = d
            elif d != degree:
                raise ValueError("polynomial is not homogeneous")
            clean[expts] = clean.get(expts, 0) + c
        self._coeffs = {k: v for k, v in clean.items() if v != 0}

    # -- basic protocol ----------------------------------------------------

    @property
    def coeffs(self) -> dict[Exponents, Number]:
        return dict(self._coeffs)

    @property
    def degree(self) -> int:
        """Degree of the homogeneous polynomial; -1 for the zero polynomial."""
        if not self._coeffs:
            return -1
        return sum(next(iter(self._coeffs)))

    def is_zero(self) -> bool:
        return not self._coeffs

    def __iter__(self):
        return iter(self._coeffs.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial4) and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial4(0)"
        parts = []
        for expts, c in sorted(self._coeffs.items(), reverse=True)[:6]:
            mono = "".join(f"x{i+1}^{e}" if e > 1 else (f"x{i+1}" if e == 1 else "") for i, e in enumerate(expts))
            parts.append(f"{c}*{mono or '1'}")
        tail = " + ..." if len(self._coeffs) > 6 else ""
        return "Polynomial4(" + " + ".join(parts) + tail + ")"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial4") -> "Polynomial4":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        acc = dict(self._coeffs)
        for k, v in other._coeffs.items():
            acc[k] = acc.get(k, 0) + v
        return Polynomial4(acc)

    def __radd__(self, other):
        # lets sum() over polynomials start from 0
        if other == 0:
            return self
        return NotImplemented

    def __sub__(self, other: "Polynomial4") -> "Polynomial4":
        return self + (-1) * other

    def __neg__(self) -> "Polynomial4":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, Polynomial4):
            acc: dict[Exponents, Number] = {}
            for ka, va in self._coeffs.items():
                for kb, vb in other._coeffs.items():
                    key = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3])
                    acc[key] = acc.get(key, 0) + va * vb
            return Polynomial4(acc)
        return Polynomial4({k: v * other for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def deriv(self, i: int) -> "Polynomial4":
        """Partial derivative with respect to x_i (1-based index)."""
        j = i - 1
        acc: dict[Exponents, Number] = {}
        for expts, c in self._coeffs.items():
            if expts[j] == 0:
                continue
            t = list(expts)
            t[j] -= 1
            acc[tuple(t)] = acc.get(tuple(t), 0) + c * expts[j]
        return Polynomial4(acc)

    def conjugate(self) -> "Polynomial4":
        return Polynomial4({k: _conj(v) for k, v in self._coeffs.items()})

    def __call__(self, point: Iterable[float]) -> complex:
        x = tuple(point)
        total = 0
        for expts, c in self._coeffs.items():
            term = c
            for xi, e in zip(x, expts):
                term = term * xi**e
            total += term
        return total

    def coeff_norm(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self._coeffs.values()))

    def to_json_terms(self) -> list[dict]:
        terms = []
        for expts, c in sorted(self._coeffs.items(), reverse=True):
            cc = complex(c)
            terms.append({"exponents": list(expts), "re": cc.real, "im": cc.imag})
        return terms


def _conj(v):
    return v.conjugate() if hasattr(v, "conjugate") else v


def monomial(expts: Exponents, coeff: Number = 1) -> Polynomial4:
    return Polynomial4({tuple(expts): coeff})


def monomials(degree: int) -> list[Exponents]:
    """All degree-d multi-indices, descending lexicographic (x1-major first)."""
    return sorted(
        (e for e in product(range(degree + 1), repeat=4) if sum(e) == degree),
        reverse=True,
    )


def laplacian(p: Polynomial4) -> Polynomial4:
    """Four-variable Laplacian; exact whenever the coefficients are exact."""
    acc: dict[Exponents, Number] = {}
    for expts, c in p:
        for j in range(4):
            if expts[j] >= 2:
                t = list(expts)
                t[j] -= 2
                key = tuple(t)
                acc[key] = acc.get(key, 0) + c * expts[j] * (expts[j] - 1)
    return Polynomial4(acc)


# ---------------------------------------------------------------------------
# sphere integrals
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _gamma_half_ratio(k: int) -> Fraction:
    # Gamma(k + 1/2) / sqrt(pi)
    return Fraction(math.factorial(2 * k), 4**k * math.factorial(k))


@lru_cache(maxsize=None)
def monomial_integral_coefficient(expts: Exponents) -> Fraction:
    """Integral of x^expts over the unit three-sphere, in units of pi^2.

    Zero unless every exponent is even; otherwise
    2 Gamma(b1)..Gamma(b4) / Gamma(b1+..+b4) with b_i = (a_i + 1)/2.
    """
    if any(a % 2 for a in expts):
        return Fraction(0)
    ks = [a // 2 for a in expts]
    num = Fraction(2)
    for k in ks:
        num *= _gamma_half_ratio(k)
    return num / math.factorial(sum(ks) + 1)


def sphere_integral(p: Polynomial4):
    """Integral of p over the unit three-sphere (surface measure, area 2 pi^2)."""
    total = 0
    for expts, c in p:
        coeff = monomial_integral_coefficient(expts)
        if coeff:
            total += c * float(coeff)
    return total * math.pi**2


def sphere_inner(p: Polynomial4, q: Polynomial4):
    """L2(S^3) inner product, conjugate-linear in the first argument."""
    return sphere_integral(p.conjugate() * q)


# ---------------------------------------------------------------------------
# harmonic basis (exact) and orthonormal truncated space
# ---------------------------------------------------------------------------


def _laplacian_monomial_matrix(degree: int) -> list[list[int]]:
    src = monomials(degree)
    dst = monomials(degree - 2)
    index = {m: i for i, m in enumerate(dst)}
    rows = [[0] * len(src) for _ in dst]
    for j, expts in enumerate(src):
        for i in range(4):
            if expts[i] >= 2:
                t = list(expts)
                t[i] -= 2
                rows[index[tuple(t)]][j] += expts[i] * (expts[i] - 1)
    return rows


def _rational_nullspace(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    a = [[Fraction(x) for x in row] for row in rows]
    nrows = len(a)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, nrows) if a[k][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col]
        a[r] = [x / inv for x in a[r]]
        for k in range(nrows):
            if k != r and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for k, pc in enumerate(pivots):
            v[pc] = -a[k][free]
        basis.append(v)
    return basis


def _clear_denominators(v: list[Fraction]) -> list[int]:
    lcm = 1
    for x in v:
        if x:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return [x // g for x in ints] if g else ints


def harmonic_basis(n: int) -> list[Polynomial4]:
    """Exact integer-coefficient basis of degree-n harmonic polynomials.

    Size is (n+1)^2; every element is annihilated by the Laplacian exactly.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    monos = monomials(n)
    if n < 2:
        vectors = [[1 if i == j else 0 for j in range(len(monos))] for i in range(len(monos))]
    else:
        null = _rational_nullspace(_laplacian_monomial_matrix(n), len(monos))
        vectors = [_clear_denominators(v) for v in null]
    basis = [Polynomial4({m: c for m, c in zip(monos, vec) if c}) for vec in vectors]
    if len(basis) != (n + 1) ** 2:
        raise RuntimeError(f"harmonic space at degree {n} has wrong dimension {len(basis)}")
    return basis


@dataclass
class TruncatedSpace:
    """Orthonormal harmonic bases for levels 0..n_max with block offsets."""

    n_max: int
    levels: list[list[Polynomial4]]
    raw_levels: list[list[Polynomial4]]
    offsets: tuple[int, ...]
    dim: int
    _monomials: dict[int, list[Exponents]] = field(default_factory=dict, repr=False)
    _grams: dict[tuple[int, int], np.ndarray] = field(default_factory=dict, repr=False)
    _basis_mats: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    def level_dim(self, n: int) -> int:
        return (n + 1) ** 2

    def level_slice(self, n: int) -> slice:
        return slice(self.offsets[n], self.offsets[n + 1])

    def monomial_list(self, degree: int) -> list[Exponents]:
        if degree not in self._monomials:
            self._monomials[degree] = monomials(degree)
        return self._monomials[degree]

    def gram_matrix(self, d1: int, d2: int) -> np.ndarray:
        """Float Gram of monomials(d1) against monomials(d2) on the sphere."""
        key = (d1, d2)
        if key not in self._grams:
            rows = self.monomial_list(d1)
            cols = self.monomial_list(d2)
            g = np.empty((len(rows), len(cols)))
            for i, ea in enumerate(rows):
                for j, eb in enumerate(cols):
                    merged = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                    g[i, j] = float(monomial_integral_coefficient(merged))
            self._grams[key] = g * math.pi**2
        return self._grams[key]

    def basis_matrix(self, n: int) -> np.ndarray:
        """Columns are the orthonormal level-n basis over monomials(n)."""
        if n not in self._basis_mats:
            monos = self.monomial_list(n)
            index = {m: i for i, m in enumerate(monos)}
            mat = np.zeros((len(monos), self.level_dim(n)))
            for j, p in enumerate(self.levels[n]):
                for expts, c in p:
                    mat[index[expts], j] = float(c)
            self._basis_mats[n] = mat
        return self._basis_mats[n]

    def poly_to_vector(self, p: Polynomial4) -> np.ndarray:
        """Coordinates of a homogeneous polynomial in the full truncated basis."""
        v = np.zeros(self.dim, dtype=complex)
        if p.is_zero():
            return v
        n = p.degree
        if n > self.n_max:
            raise ValueError(f"degree {n} exceeds n_max {self.n_max}")
        monos = self.monomial_list(n)
        index = {m: i for i, m in enumerate(monos)}
        pv = np.zeros(len(monos), dtype=complex)
        for expts, c in p:
            pv[index[expts]] = complex(c)
        v[self.level_slice(n)] = self.basis_matrix(n).T @ (self.gram_matrix(n, n) @ pv)
        return v

    def vector_to_poly(self, v: np.ndarray, level: int) -> Polynomial4:
        """Polynomial form of the level-n block of a coordinate vector."""
        block = np.asarray(v)[self.level_slice(level)]
        acc: dict[Exponents, complex] = {}
        for coeff, p in zip(block, self.levels[level]):
            if coeff == 0:
                continue
            for expts, c in p:
                acc[expts] = acc.get(expts, 0) + coeff * c
        return Polynomial4(acc)

    def to_json(self) -> str:
        doc = {
            "n_max": self.n_max,
            "dimension": self.dim,
            "levels": [[p.to_json_terms() for p in lev] for lev in self.levels],
        }
        return json.dumps(doc, indent=1)

    def export_json(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())


def _inverse_sqrt(gram: np.ndarray) -> np.ndarray:
    w, u = np.linalg.eigh(gram)
    if w.min() <= GRAM_TOLERANCE * w.max():
        raise ValueError("Gram matrix numerically singular; basis construction is broken")
    return u @ np.diag(w**-0.5) @ u.T


def orthonormalize(n_max: int) -> TruncatedSpace:
    """Build the truncated space with per-level orthonormal harmonic bases.

    Symmetric (inverse square root of the Gram) orthonormalization with one
    refinement pass; per-level Gram identity holds to better than 1e-12.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    levels: list[list[Polynomial4]] = []
    raw_levels: list[list[Polynomial4]] = []
    space = TruncatedSpace(n_max=n_max, levels=levels, raw_levels=raw_levels, offsets=(), dim=0)
    offsets = [0]
    for n in range(n_max + 1):
        raw = harmonic_basis(n)
        raw_levels.append(raw)
        monos = space.monomial_list(n)
        index = {m: i for i, m in enumerate(monos)}
        b = np.zeros((len(monos), len(raw)))
        for j, p in enumerate(raw):
            for expts, c in p:
                b[index[expts], j] = float(c)
        gm = space.gram_matrix(n, n)
        for _ in range(2):
            b = b @ _inverse_sqrt(b.T @ gm @ b)
        level = [
            Polynomial4({m: b[i, j] for m, i in index.items() if b[i, j] != 0.0})
            for j in range(b.shape[1])
        ]
        levels.append(level)
        space._basis_mats[n] = b
        offsets.append(offsets[-1] + (n + 1) ** 2)
    space.offsets = tuple(offsets)
    space.dim = offsets[-1]
    return space
