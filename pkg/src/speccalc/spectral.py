"""Spectrum, characters, resolvent and Van der Monde projections.

For T = sum_i lambda_i P_i the spectrum is the set of distinct nonzero
lambda values plus the point 0.  The character at a point evaluates an
operator alpha*I + T_mu to alpha + mu_j for any j in the point's index group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .c0 import OrthoSystem
from .field import ZERO, FieldElem, NormExp, max_magnitude
from .operators import MismatchedSystem, OpSY, op_compose, op_scale


class NotCompactPart(ValueError):
    """spectrum_of was handed an operator with a nonzero identity part."""


class NotInAlgebra(ValueError):
    """The operator is not constant on an eigenvalue group, so it lies outside L_T."""


class SpectrumPoint(ValueError):
    """z lies in the spectrum, so zI - T has no inverse."""

    def __init__(self, z: FieldElem):
        super().__init__(f"z = {z} belongs to the spectrum")
        self.z = z


@dataclass(frozen=True)
class SpecPoint:
    ident: int  # 1-based position in Spectrum.points; 0 is reserved for the zero point
    value: FieldElem
    indices: tuple[int, ...]

    @property
    def label(self) -> str:
        return f"p{self.ident}"


@dataclass(frozen=True)
class ZeroPoint:
    """The point 0, carrying the positions i with lambda_i = 0."""

    indices: tuple[int, ...] = ()
    ident: int = 0

    @property
    def value(self) -> FieldElem:
        return ZERO

    @property
    def label(self) -> str:
        return "p0"


Point = Union[SpecPoint, ZeroPoint]


@dataclass(frozen=True)
class Spectrum:
    points: tuple[SpecPoint, ...]
    zero: ZeroPoint
    system: OrthoSystem

    includes_zero = True

    def __len__(self) -> int:
        """Cardinality of sigma(T), counting 0."""
        return len(self.points) + 1

    def all_points(self) -> tuple[Point, ...]:
        return (self.zero,) + self.points

    def point(self, ident: int) -> Point:
        if ident == 0:
            return self.zero
        if not 1 <= ident <= len(self.points):
            raise KeyError(f"no spectrum point p{ident}")
        return self.points[ident - 1]

    def ids(self) -> tuple[int, ...]:
        return tuple(range(len(self.points) + 1))

    def contains_value(self, z: FieldElem) -> bool:
        return z.is_zero() or any(p.value == z for p in self.points)


def spectrum_of(T: OpSY) -> Spectrum:
    if not T.alpha.is_zero():
        raise NotCompactPart("spectrum_of expects alpha = 0 (the compact self-adjoint part)")
    groups: dict[FieldElem, list[int]] = {}
    zeros = []
    for i, v in enumerate(T.lam, start=1):
        if v.is_zero():
            zeros.append(i)
        else:
            groups.setdefault(v, []).append(i)
    ordered = sorted(groups.items(), key=lambda kv: (kv[0].valuation(), str(kv[0])))
    points = tuple(
        SpecPoint(k, value, tuple(idx)) for k, (value, idx) in enumerate(ordered, start=1)
    )
    return Spectrum(points, ZeroPoint(tuple(zeros)), T.system)


def grouped_projection(sigma: Spectrum, p: Point) -> OpSY:
    """E_p = sum of P_j over the point's index group (E_0 = I - sum of all others)."""
    if isinstance(p, ZeroPoint):
        nonzero = [j for q in sigma.points for j in q.indices]
        return OpSY.identity(sigma.system) - OpSY.projection(sigma.system, nonzero)
    return OpSY.projection(sigma.system, p.indices)


def gelfand_eval(H: OpSY, p: Point, sigma: Spectrum | None = None) -> FieldElem:
    """phi_p(H) = alpha + mu_j for j in the group of p; alpha at the zero point.

    Raises NotInAlgebra when mu is not constant on the group (nonzero on the
    zero group), since then no character value is consistent with H.
    """
    if sigma is not None and H.system is not sigma.system and H.system != sigma.system:
        raise MismatchedSystem("operator and spectrum use different orthonormal systems")
    mus = {H.lam[j - 1] for j in p.indices}
    if isinstance(p, ZeroPoint):
        if any(not m.is_zero() for m in mus):
            raise NotInAlgebra("operator acts on the kernel of T by more than a scalar")
        return H.alpha
    if len(mus) != 1:
        raise NotInAlgebra(f"operator is not constant on the eigenspace of {p.label}")
    return H.alpha + next(iter(mus))


def spectral_norm(H: OpSY, sigma: Spectrum) -> NormExp:
    return max_magnitude(*(gelfand_eval(H, p, sigma).norm() for p in sigma.all_points()))


def resolvent(T: OpSY, z: FieldElem) -> OpSY:
    """(zI - T)^{-1} = (1/z) I + T_{lambda / (z (z - lambda))}."""
    if not T.alpha.is_zero():
        raise NotCompactPart("resolvent expects alpha = 0")
    if z.is_zero() or any(v == z for v in T.lam):
        raise SpectrumPoint(z)
    zinv = z.inverse()
    lam = tuple(v / (z * (z - v)) if not v.is_zero() else ZERO for v in T.lam)
    return OpSY(zinv, lam, T.system)


def vandermonde_projection(T: OpSY, k: int, sigma: Spectrum | None = None) -> OpSY:
    """prod_{i=0..n, i != k} (lambda_i I - T) / (lambda_i - lambda_k), lambda_0 = 0.

    Built purely from I and T with the algebra product, so it lands in L_T; it
    reproduces the grouped projection of point ``k``.
    """
    sigma = sigma or spectrum_of(T)
    if not 1 <= k <= len(sigma.points):
        raise ValueError(f"k must index a nonzero spectrum point (1..{len(sigma.points)})")
    target = sigma.points[k - 1].value
    result = OpSY.identity(T.system)
    for p in sigma.all_points():
        if p.ident == k:
            continue
        factor = OpSY.scalar(T.system, p.value) - T
        result = op_compose(result, op_scale((p.value - target).inverse(), factor))
    return result


def poly_in_operator(coeffs, T: OpSY) -> OpSY:
    """sum_k coeffs[k] T^k with T^0 = I (Horner)."""
    result = OpSY.zero(T.system)
    for c in reversed(list(coeffs)):
        result = op_compose(result, T) + OpSY.scalar(T.system, c)
    return result


def characters_of(T: OpSY, sigma: Spectrum | None = None) -> dict[int, FieldElem]:
    """phi_p(T) for every point; the realized characters evaluated on T."""
    sigma = sigma or spectrum_of(T)
    return {p.ident: gelfand_eval(T, p, sigma) for p in sigma.all_points()}

