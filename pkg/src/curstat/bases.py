"""Orthonormal function systems on the unit interval.

Four families back the projection and regression estimators: the
trigonometric system, regular piecewise Legendre polynomials, their
dyadic variant (number of pieces a power of two, per-piece degree chosen
together with the resolution level), and the Haar/histogram system
(dyadic pieces, degree zero). All families are orthonormal in
L2([0, 1]), and each carries an explicit constant ``phi0`` such that
``sum_k phi_k(x)^2 <= phi0(model)**2 * model.dim`` pointwise, which is
what the penalty calibration relies on.

Basis functions vanish identically outside [0, 1]: observations outside
the estimation interval contribute zero rows to design matrices while
still counting toward the sample size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss, legvander

TRIG = "trig"
POLY = "poly"
DYADIC = "dyadic"
HAAR = "haar"

_FAMILY_TAGS = (TRIG, POLY, DYADIC, HAAR)
_PIECEWISE_TAGS = (POLY, DYADIC, HAAR)
_DYADIC_TAGS = (DYADIC, HAAR)

DEFAULT_MAX_DEGREE = 9

# Dimension cap rules understood by build_collection. A positive number
# may be passed instead to bound the dimension directly.
CAP_DENSITY = "density"        # dim <= n / ln(n)^2
CAP_REGRESSION = "regression"  # trig: dim <= sqrt(n)/ln(n); otherwise n / ln(n)^2
CAP_SQRT = "sqrt"              # dim <= sqrt(n)
CAP_CLASSIC = "classic"        # dim <= n, family index range only


class EmptyCollectionError(ValueError):
    """No model of the family satisfies the dimension cap."""


@dataclass(frozen=True)
class BasisFamily:
    """Family tag plus its polynomial degree parameter.

    ``max_degree`` is the fixed per-piece degree for ``POLY`` models and
    the largest admissible degree when enumerating ``DYADIC``
    collections; it is ignored by ``TRIG`` and must be 0 for ``HAAR``.
    """

    tag: str
    max_degree: int = 0

    def __post_init__(self):
        if self.tag not in _FAMILY_TAGS:
            raise ValueError(f"unknown basis family tag {self.tag!r}")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.tag == HAAR and self.max_degree != 0:
            raise ValueError("the Haar family has degree 0")


def trig_family() -> BasisFamily:
    return BasisFamily(TRIG)


def poly_family(degree: int) -> BasisFamily:
    return BasisFamily(POLY, degree)


def dyadic_family(max_degree: int = DEFAULT_MAX_DEGREE) -> BasisFamily:
    return BasisFamily(DYADIC, max_degree)


def haar_family() -> BasisFamily:
    return BasisFamily(HAAR)


@dataclass(frozen=True)
class BasisModel:
    """One concrete finite-dimensional approximation space.

    Trigonometric models are indexed by the number of sine/cosine pairs
    (``harmonics``, dimension ``2*harmonics + 1``); piecewise models by
    the number of equal subintervals (``pieces``) and the per-piece
    polynomial ``degree`` (dimension ``pieces * (degree + 1)``).

    Piecewise basis functions are ordered degree-major: all degree-0
    functions piece by piece, then all degree-1 functions, and so on.
    On a fixed subdivision a lower-degree model is therefore a column
    prefix of any higher-degree model, mirroring the prefix structure of
    the trigonometric system.
    """

    family: BasisFamily
    pieces: int = 1
    degree: int = 0
    harmonics: int = 0

    def __post_init__(self):
        tag = self.family.tag
        if tag == TRIG:
            if self.harmonics < 0:
                raise ValueError("harmonics must be >= 0")
            if self.pieces != 1 or self.degree != 0:
                raise ValueError("trigonometric models carry no piece/degree index")
            return
        if self.harmonics != 0:
            raise ValueError("piecewise models carry no harmonic index")
        if self.pieces < 1:
            raise ValueError("pieces must be >= 1")
        if not 0 <= self.degree <= self.family.max_degree:
            raise ValueError(
                f"degree {self.degree} outside [0, {self.family.max_degree}]"
            )
        if tag == POLY and self.degree != self.family.max_degree:
            raise ValueError("regular piecewise models use the family degree")
        if tag in _DYADIC_TAGS and self.pieces & (self.pieces - 1):
            raise ValueError("dyadic models need a power-of-two piece count")

    @property
    def dim(self) -> int:
        if self.family.tag == TRIG:
            return 2 * self.harmonics + 1
        return self.pieces * (self.degree + 1)

    @property
    def level(self) -> int:
        """Resolution level p with pieces = 2**p (dyadic families only)."""
        if self.family.tag not in _DYADIC_TAGS:
            raise ValueError("level is defined for dyadic families only")
        return self.pieces.bit_length() - 1

    def describe(self) -> str:
        tag = self.family.tag
        if tag == TRIG:
            return f"trig(m={self.harmonics}, dim={self.dim})"
        if tag == POLY:
            return f"poly(pieces={self.pieces}, degree={self.degree}, dim={self.dim})"
        if tag == HAAR:
            return f"haar(level={self.level}, dim={self.dim})"
        return f"dyadic(level={self.level}, degree={self.degree}, dim={self.dim})"


def trig_model(harmonics: int) -> BasisModel:
    return BasisModel(trig_family(), harmonics=harmonics)


def poly_model(pieces: int, degree: int) -> BasisModel:
    return BasisModel(poly_family(degree), pieces=pieces, degree=degree)


def dyadic_model(level: int, degree: int) -> BasisModel:
    fam = dyadic_family(max(degree, DEFAULT_MAX_DEGREE))
    return BasisModel(fam, pieces=2**level, degree=degree)


def haar_model(level: int) -> BasisModel:
    return BasisModel(haar_family(), pieces=2**level)


def model_sort_key(model: BasisModel):
    """Selection order: dimension first, then coarser subdivisions first.

    For dyadic pairs of equal dimension this sorts by (pieces, degree),
    i.e. lexicographically in (level, degree).
    """
    return (model.dim, model.pieces, model.degree, model.harmonics)


def phi0(model: BasisModel) -> float:
    """Norm-connection constant of the model's family.

    sqrt(2) for the trigonometric system and sqrt(2r + 1) for piecewise
    polynomials of degree r (hence 1 for Haar).
    """
    if model.family.tag == TRIG:
        return math.sqrt(2.0)
    return math.sqrt(2.0 * model.degree + 1.0)


def corrected_dim(model: BasisModel) -> float:
    """Penalty dimension with the degree correction for dyadic families.

    Replaces the raw dimension ``pieces * (degree + 1)`` by
    ``pieces * (degree + 1 + ln(degree + 1)**2.5)``, which removes the
    incentive to buy smoothness through high degrees at coarse
    resolutions. Identical to the raw dimension at degree 0.
    """
    d = model.degree + 1
    return model.pieces * (d + math.log(d) ** 2.5)


# ---------------------------------------------------------------------------
# Evaluation


def design_matrix(model: BasisModel, x) -> np.ndarray:
    """Evaluate all basis functions of ``model`` at the points ``x``.

    Returns an array of shape ``(len(x), model.dim)``. Rows for points
    outside [0, 1] are identically zero.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros((x.size, model.dim))
    inside = (x >= 0.0) & (x <= 1.0)
    if not inside.any():
        return out
    xi = x[inside]

    if model.family.tag == TRIG:
        out[inside, 0] = 1.0
        if model.harmonics:
            freqs = 2.0 * np.pi * np.arange(1, model.harmonics + 1)
            args = xi[:, None] * freqs[None, :]
            block = np.empty((xi.size, model.dim - 1))
            block[:, 0::2] = math.sqrt(2.0) * np.cos(args)
            block[:, 1::2] = math.sqrt(2.0) * np.sin(args)
            out[inside, 1:] = block
        return out

    m, r = model.pieces, model.degree
    piece = np.minimum((xi * m).astype(int), m - 1)
    # map each piece [j/m, (j+1)/m] onto [-1, 1]
    u = 2.0 * m * xi - 2.0 * piece - 1.0
    vander = legvander(u, r)  # columns are Legendre values Q_0..Q_r at u
    scale = np.sqrt(m * (2.0 * np.arange(r + 1) + 1.0))
    cols = np.arange(r + 1)[None, :] * m + piece[:, None]
    rows = np.nonzero(inside)[0][:, None]
    out[rows, cols] = vander * scale[None, :]
    return out


def evaluate_basis(model: BasisModel, x: float) -> np.ndarray:
    """Basis values at a single point, as a length-``dim`` vector."""
    return design_matrix(model, [x])[0]


# ---------------------------------------------------------------------------
# Collections


def _cap_dimension(family: BasisFamily, n: int, cap) -> int:
    if isinstance(cap, (int, float)) and not isinstance(cap, bool):
        if cap < 1:
            raise ValueError("numeric dimension cap must be >= 1")
        bound = float(cap)
    elif cap == CAP_DENSITY:
        bound = n / math.log(n) ** 2
    elif cap == CAP_REGRESSION:
        if family.tag == TRIG:
            bound = math.sqrt(n) / math.log(n)
        else:
            bound = n / math.log(n) ** 2
    elif cap == CAP_SQRT:
        bound = math.sqrt(n)
    elif cap == CAP_CLASSIC:
        bound = float(n)
    else:
        raise ValueError(f"unknown cap rule {cap!r}")
    return min(math.floor(bound), n)


def build_collection(family: BasisFamily, n: int, cap=CAP_DENSITY) -> list[BasisModel]:
    """All models of ``family`` whose dimension fits the cap, for sample size n.

    ``cap`` is one of the rule names above or an explicit dimension
    bound. The family's own index range (e.g. at most ``n//2 - 1``
    harmonics, at most ``n // (degree+1)`` pieces) always applies on top
    of the cap. Models are returned in selection order (dimension
    ascending, ties by coarser subdivision first).

    Raises EmptyCollectionError when nothing fits.
    """
    if n < 2:
        raise ValueError("need a sample size of at least 2")
    dim_cap = _cap_dimension(family, n, cap)

    models: list[BasisModel] = []
    if family.tag == TRIG:
        m_max = n // 2 - 1
        for m in range(1, m_max + 1):
            if 2 * m + 1 > dim_cap:
                break
            models.append(BasisModel(family, harmonics=m))
    elif family.tag == POLY:
        r = family.max_degree
        pieces_max = n // (r + 1)
        for m in range(1, pieces_max + 1):
            if (r + 1) * m > dim_cap:
                break
            models.append(BasisModel(family, pieces=m, degree=r))
    elif family.tag == HAAR:
        p = 0
        while 2**p <= dim_cap:
            models.append(BasisModel(family, pieces=2**p))
            p += 1
    else:  # DYADIC: every (level, degree) pair under the cap
        p = 0
        while 2**p <= dim_cap:
            for r in range(family.max_degree + 1):
                if 2**p * (r + 1) > dim_cap:
                    break
                models.append(BasisModel(family, pieces=2**p, degree=r))
            p += 1

    if not models:
        raise EmptyCollectionError(
            f"collection empty for n={n} (family={family.tag}, cap={cap!r})"
        )
    models.sort(key=model_sort_key)
    return models


# ---------------------------------------------------------------------------
# Quadrature helpers (used for certification tests and population
# projections; piecewise-polynomial integrals are exact because panels
# align with the breakpoints).


@lru_cache(maxsize=None)
def _gauss_nodes(order: int):
    return leggauss(order)


def quadrature_rule(breakpoints, min_nodes: int = 2048):
    """Composite Gauss-Legendre rule with panels between ``breakpoints``."""
    edges = np.asarray(breakpoints, dtype=float)
    panels = edges.size - 1
    order = max(2, -(-min_nodes // panels))
    base_x, base_w = _gauss_nodes(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    weights = (half[:, None] * base_w[None, :]).ravel()
    return nodes, weights


def model_breakpoints(model: BasisModel) -> np.ndarray:
    if model.family.tag == TRIG:
        return np.array([0.0, 1.0])
    return np.linspace(0.0, 1.0, model.pieces + 1)


def gram_matrix(model: BasisModel, min_nodes: int = 2048) -> np.ndarray:
    """Gram matrix of the basis under the Lebesgue inner product on [0, 1]."""
    nodes, weights = quadrature_rule(model_breakpoints(model), min_nodes)
    design = design_matrix(model, nodes)
    return design.T @ (weights[:, None] * design)


def project_function(model: BasisModel, fn, min_nodes: int = 2048) -> np.ndarray:
    """Coefficients of the L2 projection of ``fn`` onto the model."""
    nodes, weights = quadrature_rule(model_breakpoints(model), min_nodes)
    design = design_matrix(model, nodes)
    values = np.asarray(fn(nodes), dtype=float)
    return design.T @ (weights * values)
