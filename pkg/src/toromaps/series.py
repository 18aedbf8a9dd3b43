"""
Exact truncated power series and the counting pipeline for rooted
essentially 3-connected toroidal maps.

Coefficients live in numpy object arrays so that arithmetic stays on Python
integers. Bivariate series are in (z_b, z_w): z_b marks black vertices of
the angular map (faces of the toroidal map) and z_w marks white ones
(vertices), and are truncated by total degree.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import pandas as pd

from toromaps.core.logging import logger
from toromaps.errors import ClosedFormMismatch

# ===== SERIES TYPES =====


def _exact_quotient(value: int, divisor: int, where: str) -> int:
    q, rem = divmod(value, divisor)
    if rem:
        raise ClosedFormMismatch(f"{where}: {value} is not divisible by {divisor}")
    return q


class UnivariateSeries:
    """Truncated series sum_{k <= order} c_k x^k with exact integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.array(coeffs, dtype=object)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c: int, order: int) -> "UnivariateSeries":
        coeffs = np.zeros(order + 1, dtype=object)
        coeffs[0] = c
        return cls(coeffs)

    @classmethod
    def variable(cls, order: int) -> "UnivariateSeries":
        coeffs = np.zeros(order + 1, dtype=object)
        if order >= 1:
            coeffs[1] = 1
        return cls(coeffs)

    def _coerce(self, other) -> "UnivariateSeries":
        if isinstance(other, UnivariateSeries):
            if other.order != self.order:
                raise ValueError(f"order mismatch {self.order} vs {other.order}")
            return other
        return UnivariateSeries.constant(int(other), self.order)

    def __add__(self, other):
        return UnivariateSeries(self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __neg__(self):
        return UnivariateSeries(-self.coeffs)

    def __sub__(self, other):
        return UnivariateSeries(self.coeffs - self._coerce(other).coeffs)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UnivariateSeries):
            return UnivariateSeries(self.coeffs * int(other))
        other = self._coerce(other)
        n = self.order + 1
        out = np.zeros(n, dtype=object)
        for i in range(n):
            a = self.coeffs[i]
            if a:
                out[i:] += a * other.coeffs[: n - i]
        return UnivariateSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UnivariateSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        """Exact long division; every quotient coefficient must be an integer."""
        if not isinstance(other, UnivariateSeries):
            return UnivariateSeries([_exact_quotient(c, int(other), "scalar division") for c in self.coeffs])
        other = self._coerce(other)
        b0 = other.coeffs[0]
        if not b0:
            raise ZeroDivisionError("divisor has zero constant term")
        q = np.zeros(self.order + 1, dtype=object)
        for k in range(self.order + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                acc -= other.coeffs[j] * q[k - j]
            q[k] = _exact_quotient(acc, b0, f"coefficient {k}")
        return UnivariateSeries(q)

    def inverse(self) -> "UnivariateSeries":
        return UnivariateSeries.constant(1, self.order) / self

    def shift(self, k: int) -> "UnivariateSeries":
        """Multiply by x^k."""
        out = np.zeros(self.order + 1, dtype=object)
        if k <= self.order:
            out[k:] = self.coeffs[: self.order + 1 - k]
        return UnivariateSeries(out)

    def compose(self, x):
        """Evaluate at a series x with zero constant term (Horner)."""
        if x.coeffs.flat[0]:
            raise ValueError("composition needs a series without constant term")
        result = x * 0 + int(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            result = result * x + int(c)
        return result

    def __getitem__(self, k: int) -> int:
        return int(self.coeffs[k])

    def to_list(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __eq__(self, other) -> bool:
        return isinstance(other, UnivariateSeries) and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"degree": range(self.order + 1), "coefficient": self.to_list()})

    def __repr__(self) -> str:
        terms = [f"{c}z^{k}" for k, c in enumerate(self.to_list()) if c]
        return " + ".join(terms) or "0"


class BivariateSeries:
    """
    Truncated series sum_{i + j <= order} c_ij z_b^i z_w^j.

    Attributes:
        coeffs: (order+1) x (order+1) object array, zero above the total-degree bound
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = np.array(coeffs, dtype=object)
        coeffs[_mask(len(coeffs) - 1)] = 0
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "BivariateSeries":
        return cls(np.zeros((order + 1, order + 1), dtype=object))

    @classmethod
    def constant(cls, c: int, order: int) -> "BivariateSeries":
        s = cls.zero(order)
        s.coeffs[0, 0] = c
        return s

    @classmethod
    def monomial(cls, i: int, j: int, order: int, c: int = 1) -> "BivariateSeries":
        s = cls.zero(order)
        if i + j <= order:
            s.coeffs[i, j] = c
        return s

    @classmethod
    def z_black(cls, order: int) -> "BivariateSeries":
        return cls.monomial(1, 0, order)

    @classmethod
    def z_white(cls, order: int) -> "BivariateSeries":
        return cls.monomial(0, 1, order)

    def _coerce(self, other) -> "BivariateSeries":
        if isinstance(other, BivariateSeries):
            if other.order != self.order:
                raise ValueError(f"order mismatch {self.order} vs {other.order}")
            return other
        return BivariateSeries.constant(int(other), self.order)

    def __add__(self, other):
        return BivariateSeries(self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __neg__(self):
        return BivariateSeries(-self.coeffs)

    def __sub__(self, other):
        return BivariateSeries(self.coeffs - self._coerce(other).coeffs)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BivariateSeries):
            return BivariateSeries(self.coeffs * int(other))
        other = self._coerce(other)
        n = self.order + 1
        out = np.zeros((n, n), dtype=object)
        for i, j in zip(*np.nonzero(self.coeffs)):
            out[i:, j:] += self.coeffs[i, j] * other.coeffs[: n - i, : n - j]
        return BivariateSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = BivariateSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        """Exact long division by total degree; raises ClosedFormMismatch on a non-integer coefficient."""
        if not isinstance(other, BivariateSeries):
            divisor = int(other)
            out = np.zeros_like(self.coeffs)
            for i, j in zip(*np.nonzero(self.coeffs)):
                out[i, j] = _exact_quotient(self.coeffs[i, j], divisor, f"coefficient ({i},{j})")
            return BivariateSeries(out)
        other = self._coerce(other)
        b0 = other.coeffs[0, 0]
        if not b0:
            raise ZeroDivisionError("divisor has zero constant term")
        support = [(a, b) for a, b in zip(*np.nonzero(other.coeffs)) if a + b > 0]
        q = np.zeros_like(self.coeffs)
        for total in range(self.order + 1):
            for i in range(total + 1):
                j = total - i
                acc = self.coeffs[i, j]
                for a, b in support:
                    if a <= i and b <= j:
                        acc -= other.coeffs[a, b] * q[i - a, j - b]
                q[i, j] = _exact_quotient(acc, b0, f"coefficient ({i},{j})")
        return BivariateSeries(q)

    def inverse(self) -> "BivariateSeries":
        return BivariateSeries.constant(1, self.order) / self

    def swap(self) -> "BivariateSeries":
        """Exchange the two variables."""
        return BivariateSeries(self.coeffs.T.copy())

    def diagonal(self) -> UnivariateSeries:
        """Specialization z_b = z_w = z."""
        out = np.zeros(self.order + 1, dtype=object)
        for i, j in zip(*np.nonzero(self.coeffs)):
            out[i + j] += self.coeffs[i, j]
        return UnivariateSeries(out)

    def substitute(self, x: "BivariateSeries", y: "BivariateSeries") -> "BivariateSeries":
        """Evaluate at (x, y), both without constant term."""
        if x.coeffs[0, 0] or y.coeffs[0, 0]:
            raise ValueError("substitution needs series without constant term")
        x_pows = [BivariateSeries.constant(1, self.order)]
        y_pows = [BivariateSeries.constant(1, self.order)]
        for _ in range(self.order):
            x_pows.append(x_pows[-1] * x)
            y_pows.append(y_pows[-1] * y)
        result = BivariateSeries.zero(self.order)
        for i, j in zip(*np.nonzero(self.coeffs)):
            result = result + x_pows[i] * y_pows[j] * int(self.coeffs[i, j])
        return result

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if i + j > self.order:
            raise IndexError(f"({i},{j}) is beyond order {self.order}")
        return int(self.coeffs[i, j])

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariateSeries) and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def to_frame(self) -> pd.DataFrame:
        """Rows: degree in z_b; columns: degree in z_w."""
        n = self.order + 1
        frame = pd.DataFrame(
            [[int(self.coeffs[i, j]) for j in range(n)] for i in range(n)],
            index=pd.Index(range(n), name="z_black"),
            columns=pd.Index(range(n), name="z_white"),
        )
        return frame

    def __repr__(self) -> str:
        terms = [
            f"{self.coeffs[i, j]}*zb^{i}*zw^{j}" for i, j in zip(*np.nonzero(self.coeffs))
        ]
        return " + ".join(terms) or "0"


def _mask(order: int) -> np.ndarray:
    idx = np.arange(order + 1)
    return np.add.outer(idx, idx) > order


# ===== ALGEBRAIC FIXED POINTS =====


def solve_r(order: int) -> tuple[BivariateSeries, BivariateSeries]:
    """
    Solve r_b = z_b (1 + r_w)^2, r_w = z_w (1 + r_b)^2 by iteration from 0.

    Each round fixes at least one more total degree, so order + 1 rounds
    reach the truncation.
    """
    zb = BivariateSeries.z_black(order)
    zw = BivariateSeries.z_white(order)
    rb = BivariateSeries.zero(order)
    rw = BivariateSeries.zero(order)
    for _ in range(order + 1):
        rb, rw = zb * (1 + rw) ** 2, zw * (1 + rb) ** 2
    if rb != zb * (1 + rw) ** 2 or rw != zw * (1 + rb) ** 2:
        raise ClosedFormMismatch("fixed point iteration did not converge")
    return rb, rw


def solve_univariate(order: int, step: Callable[[UnivariateSeries], UnivariateSeries]) -> UnivariateSeries:
    """Solve r = z * step(r) for a step with nonzero constant term."""
    z = UnivariateSeries.variable(order)
    r = UnivariateSeries.constant(0, order)
    for _ in range(order + 1):
        r = z * step(r)
    return r


# ===== ESSENTIALLY 3-CONNECTED TOROIDAL MAPS =====


def T_series(order: int, check: bool = True) -> BivariateSeries:
    """
    Rooted essentially 3-connected toroidal maps, z_b marking faces and z_w
    vertices.
    """
    rb, rw = solve_r(order)
    numerator = rb * rw * (rb * rb + rw * rw + rb * rw + 2 * rb + 2 * rw + 1)
    denominator = (rb + rw + 1) * (1 + rb + rw - 3 * rb * rw) ** 2
    t = numerator / denominator
    if check:
        s = 1 + rb + rw
        p = rb * rw
        other = p / (s - 3 * p) ** 2 * (s - p / s)
        if other != t:
            raise ClosedFormMismatch("the two closed forms of T disagree")
        logger.debug(f"T closed forms agree through total degree {order}")
    return t


def T_e(order: int) -> UnivariateSeries:
    """T(z, z): rooted maps counted by edges."""
    r = solve_univariate(order, lambda r: (1 + r) ** 2)
    return r * r * (1 + r) / ((1 + 2 * r) * (1 - r) ** 2 * (1 + 3 * r))


def T_v(order: int) -> UnivariateSeries:
    """T(1, z): rooted maps counted by vertices."""
    r = solve_univariate(order, lambda r: (2 + 2 * r + r * r) ** 2)
    numerator = (r + 1) * (r * r + 3 * r + 4) * r
    denominator = (3 * r * r + 2 * r - 2) ** 2 * (r + 2)
    return numerator / denominator


def T_t(order: int) -> UnivariateSeries:
    """Rooted essentially simple toroidal triangulations counted by vertices."""
    r = solve_univariate(order, lambda r: (1 + r) ** 4)
    return r / (1 - 3 * r) ** 2


# ===== LATTICE WALKS =====


def dyck_series(order: int) -> UnivariateSeries:
    """U = t (1 + U)^2."""
    return solve_univariate(order, lambda u: (1 + u) ** 2)


def bridge_series(order: int) -> UnivariateSeries:
    """B = (1 + U) / (1 - U)."""
    u = dyck_series(order)
    return (1 + u) / (1 - u)


def walk_series(i: int, order: int) -> UnivariateSeries:
    """
    P^(i) = B (1 + U)^|i| t^floor(|i|/2): walks with steps +-1 ending at
    height i, a walk of length n weighted by t^floor(n/2).
    """
    i = abs(i)
    u = dyck_series(order)
    b = (1 + u) / (1 - u)
    return (b * (1 + u) ** i).shift(i // 2)


# ===== CATERPILLAR PIPELINE =====


@dataclass(frozen=True)
class NPipelineResult:
    """Series of the kernel-rooted balanced unicellular maps and what follows from them."""

    S_ww: BivariateSeries
    S_bb: BivariateSeries
    S_bw: BivariateSeries
    N_ww: BivariateSeries
    N_bb: BivariateSeries
    N_bw: BivariateSeries
    N: BivariateSeries
    H: BivariateSeries
    T: BivariateSeries


def caterpillar_sums(order: int) -> tuple[BivariateSeries, BivariateSeries, BivariateSeries]:
    """
    S_ww, S_bb, S_bw in the variables (t_b, t_w): sums over gamma-scores i of
    the cube of the caterpillar series with that score.

    P^(i)(t_b t_w) has valuation floor(|i|/2) in t_b t_w, hence total degree
    at least 2 floor(|i|/2); cubed, only |i| <= order + 1 can contribute.
    """
    tb = BivariateSeries.z_black(order)
    tw = BivariateSeries.z_white(order)
    t = tb * tw
    s_ww = BivariateSeries.zero(order)
    s_bw = BivariateSeries.zero(order)
    for i in range(-(order + 1), order + 2):
        p = walk_series(i, order).compose(t)
        if i % 2:
            s_ww = s_ww + (tb * p) ** 3
        else:
            s_bw = s_bw + p ** 3
    s_bb = s_ww.swap()
    closed = 2 * tb ** 3 / ((1 - t) * (1 - 4 * t) ** 2)
    if s_ww != closed:
        raise ClosedFormMismatch("caterpillar sum S_ww differs from its closed form")
    return s_ww, s_bb, s_bw


def N_closed_form(order: int) -> BivariateSeries:
    rb, rw = solve_r(order)
    numerator = 2 * rb * rw * (1 + 2 * rb + 2 * rw + rb * rw + rb * rb + rw * rw)
    denominator = (1 + rb) * (1 + rw) * (1 + rb + rw) * (1 + rb + rw - 3 * rb * rw) ** 2
    return numerator / denominator


def N_pipeline(order: int) -> NPipelineResult:
    """
    N from caterpillar sums, split by kernel colors and substituted at
    t_b = z_b R_w, t_w = z_w R_b; checked against the closed form of N, and
    R_b R_w N / 2 against T.
    """
    rb, rw = solve_r(order)
    Rb, Rw = 1 + rb, 1 + rw
    zb = BivariateSeries.z_black(order)
    zw = BivariateSeries.z_white(order)
    s_ww, s_bb, s_bw = caterpillar_sums(order)
    x, y = zb * Rw, zw * Rb
    n_ww = zw * zw * s_ww.substitute(x, y)
    n_bb = zb * zb * s_bb.substitute(x, y)
    n_bw = zb * zw * s_bw.substitute(x, y)
    n = n_bb + 2 * n_bw + n_ww
    if n != N_closed_form(order):
        raise ClosedFormMismatch("caterpillar pipeline differs from the closed form of N")
    h = n / 2
    t = Rb * Rw * h
    if t != T_series(order, check=False):
        raise ClosedFormMismatch("R_b R_w N / 2 differs from T")
    logger.debug(f"N pipeline verified through total degree {order}")
    return NPipelineResult(
        S_ww=s_ww, S_bb=s_bb, S_bw=s_bw, N_ww=n_ww, N_bb=n_bb, N_bw=n_bw, N=n, H=h, T=t
    )


def N_series(order: int) -> BivariateSeries:
    return N_pipeline(order).N


def H_series(order: int) -> BivariateSeries:
    """6-quadrangular maps with a marked white hexagon corner: N / 2."""
    return N_closed_form(order) / 2


def D_series(order: int) -> BivariateSeries:
    """Planar pieces with a marked edge: R_b R_w."""
    rb, rw = solve_r(order)
    return (1 + rb) * (1 + rw)


def Q_series(order: int) -> BivariateSeries:
    """Marked quadrangulations as pairs (hexagonal part, planar piece): H D."""
    return H_series(order) * D_series(order)


FAMILIES: dict[str, Callable[[int], BivariateSeries | UnivariateSeries]] = {
    "T": T_series,
    "Te": T_e,
    "Tv": T_v,
    "Tt": T_t,
    "N": N_series,
    "H": H_series,
    "D": D_series,
    "Q": Q_series,
}
