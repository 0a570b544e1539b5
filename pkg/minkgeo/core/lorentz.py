"""Indefinite-metric linear algebra over the pseudo-Euclidean spaces R^n_nu."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Optional, Sequence

import numpy as np
import structlog
from scipy.linalg import null_space

from .errors import (
    DegenerateChain,
    DependentInput,
    PreconditionError,
    SignatureMismatch,
)
from .jets import is_jet, value_of

logger = structlog.get_logger()

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Signature:
    """Dimension ``n`` and index ``nu``: the last ``nu`` coordinates are negative."""

    n: int
    nu: int

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.nu <= self.n:
            raise PreconditionError(
                "invalid signature", n=self.n, nu=self.nu
            )

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``"n,nu"`` (e.g. ``"3,1"``)."""
        try:
            n, nu = (int(part) for part in text.split(","))
        except ValueError as e:
            raise PreconditionError(f"cannot parse signature: {text!r}") from e
        return cls(n, nu)

    @property
    def weights(self) -> np.ndarray:
        return np.array([1.0] * (self.n - self.nu) + [-1.0] * self.nu)

    @property
    def metric(self) -> np.ndarray:
        return np.diag(self.weights)

    @property
    def is_lorentzian(self) -> bool:
        return self.nu == 1

    @property
    def code(self) -> str:
        """``"n,nu"``, the form accepted by ``parse``."""
        return f"{self.n},{self.nu}"

    def __str__(self) -> str:
        return f"R^{self.n}_{self.nu}"


EUCLIDEAN3 = Signature(3, 0)
LORENTZ3 = Signature(3, 1)
INDEX2_3 = Signature(3, 2)


class CausalClass(str, Enum):
    """Causal character of a vector, curve or surface."""

    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"

    @property
    def indicator(self) -> int:
        return {"spacelike": 1, "timelike": -1, "lightlike": 0}[self.value]

    @classmethod
    def from_indicator(cls, indicator: int) -> "CausalClass":
        return {1: cls.SPACELIKE, -1: cls.TIMELIKE, 0: cls.LIGHTLIKE}[indicator]


class SubspaceType(str, Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class CausalReport:
    causal_class: CausalClass
    indicator: int
    fake_norm: float


@dataclass
class SubspaceReport:
    causal_type: SubspaceType
    complement: np.ndarray
    non_degenerate: bool
    gram: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class CausalRelations:
    chron: bool
    causal: bool
    time_orientation: str
    hyperbolic_angle: Optional[float] = None
    gamma: Optional[float] = None


@dataclass(frozen=True)
class PlaneOrientation:
    """Orientation of a basis (v, w) of a lightlike plane in L^3."""

    positive: Optional[bool]
    normal: np.ndarray
    lam: float


def _check(x: Any, sig: Signature) -> None:
    shape = x.shape if is_jet(x) else np.shape(x)
    if not shape or shape[-1] != sig.n:
        raise SignatureMismatch(
            "vector length does not match signature", length=shape, signature=str(sig)
        )


def inner(x: Any, y: Any, sig: Signature) -> Any:
    """The index-nu product; accepts arrays (batched on leading axes) and jets."""
    _check(x, sig)
    _check(y, sig)
    if is_jet(x) or is_jet(y):
        prod = x * y if is_jet(x) else y * x
        return prod.contract(sig.weights)
    return np.asarray(x * np.asarray(y)) @ sig.weights


def norm_sq(x: Any, sig: Signature) -> Any:
    return inner(x, x, sig)


def fake_norm(x: Any, sig: Signature) -> float:
    """The pseudo-norm sqrt(|<x,x>|)."""
    return float(np.sqrt(abs(norm_sq(np.asarray(x, dtype=float), sig))))


def classify_value(q: float, scale: float, tol: float = DEFAULT_TOL) -> CausalClass:
    """Causal class of a quadratic value ``q`` relative to the Euclidean ``scale``."""
    if abs(q) <= tol * scale:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


def causal_character(x: Any, sig: Signature, tol: float = DEFAULT_TOL) -> CausalReport:
    x = np.asarray(x, dtype=float)
    _check(x, sig)
    scale = float(x @ x)
    if scale == 0.0:
        raise PreconditionError("causal character of the zero vector is undefined")
    q = float(norm_sq(x, sig))
    cls = classify_value(q, scale, tol)
    return CausalReport(cls, cls.indicator, float(np.sqrt(abs(q))))


def normalize(x: Any, sig: Signature) -> np.ndarray:
    """Scale a non-lightlike vector to unit pseudo-norm."""
    report = causal_character(x, sig)
    if report.causal_class is CausalClass.LIGHTLIKE:
        raise PreconditionError("cannot normalize a lightlike vector")
    return np.asarray(x, dtype=float) / report.fake_norm


def time_orientation(v: Any, sig: Signature, tol: float = DEFAULT_TOL) -> str:
    """``future`` when <v, e_n> < 0, ``past`` when > 0, else ``none``."""
    v = np.asarray(v, dtype=float)
    e_n = np.zeros(sig.n)
    e_n[-1] = 1.0
    p = float(inner(v, e_n, sig))
    scale = float(np.linalg.norm(v))
    if abs(p) <= tol * max(scale, 1.0):
        return "none"
    return "future" if p < 0 else "past"


def is_future_directed(v: Any, sig: Signature) -> bool:
    return time_orientation(v, sig) == "future"


def gram_matrix(us: Sequence[Any], vs: Sequence[Any], sig: Signature) -> np.ndarray:
    U = np.atleast_2d(np.asarray(us, dtype=float))
    V = np.atleast_2d(np.asarray(vs, dtype=float))
    _check(U, sig)
    _check(V, sig)
    return (U * sig.weights) @ V.T


def is_invertible(G: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    G = np.atleast_2d(G)
    scale = max(float(np.max(np.abs(G))), 1.0)
    return bool(np.linalg.svd(G, compute_uv=False).min() > tol * scale)


def _require_independent(U: np.ndarray) -> None:
    if np.linalg.matrix_rank(U) < U.shape[0]:
        raise DependentInput("input vectors are linearly dependent", count=U.shape[0])


def orthogonal_complement(vectors: Sequence[Any], sig: Signature) -> np.ndarray:
    """Rows form a basis of the nu-orthogonal complement of span(vectors)."""
    U = np.atleast_2d(np.asarray(vectors, dtype=float))
    _check(U, sig)
    return null_space(U * sig.weights).T


def subspace_analysis(
    vectors: Sequence[Any], sig: Signature, tol: float = DEFAULT_TOL
) -> SubspaceReport:
    """Causal type of span(vectors), a basis of its complement, non-degeneracy."""
    U = np.atleast_2d(np.asarray(vectors, dtype=float))
    _check(U, sig)
    _require_independent(U)
    G = gram_matrix(U, U, sig)
    scale = max(float(np.max(np.abs(U @ U.T))), 1e-300)
    eig = np.linalg.eigvalsh(G)
    if np.any(np.abs(eig) <= tol * scale):
        kind = SubspaceType.LIGHTLIKE
    elif np.all(eig > 0):
        kind = SubspaceType.SPACELIKE
    elif np.all(eig < 0) or sig.nu <= 1:
        kind = SubspaceType.TIMELIKE
    else:
        kind = SubspaceType.UNCLASSIFIED
    complement = orthogonal_complement(U, sig)
    non_degenerate = kind is not SubspaceType.LIGHTLIKE
    logger.debug("Analyzed subspace", dim=U.shape[0], causal_type=kind.value)
    return SubspaceReport(kind, complement, non_degenerate, G)


def gram_schmidt_adapted(
    vectors: Sequence[Any], sig: Signature, tol: float = DEFAULT_TOL
) -> List[np.ndarray]:
    """Pairwise orthogonal, non-lightlike vectors spanning the same chain."""
    U = np.atleast_2d(np.asarray(vectors, dtype=float))
    _check(U, sig)
    _require_independent(U)
    out: List[np.ndarray] = []
    q: List[float] = []
    for k, u in enumerate(U):
        w = u.copy()
        for prev, qp in zip(out, q):
            w = w - float(inner(u, prev, sig)) / qp * prev
        qw = float(inner(w, w, sig))
        if abs(qw) <= tol * float(w @ w):
            raise DegenerateChain("degenerate intermediate span", index=k)
        out.append(w)
        q.append(qw)
    return out


def orthonormal_basis(
    vectors: Sequence[Any], sig: Signature, tol: float = DEFAULT_TOL
) -> List[np.ndarray]:
    return [w / np.sqrt(abs(float(inner(w, w, sig)))) for w in gram_schmidt_adapted(vectors, sig, tol)]


def cross_product(vectors: Sequence[Any], sig: Signature) -> np.ndarray:
    """The v with <v, x> = det(x, v_1, ..., v_{n-1}) for every x."""
    V = np.atleast_2d(np.asarray(vectors, dtype=float))
    if V.shape != (sig.n - 1, sig.n):
        raise PreconditionError(
            "cross product needs n-1 vectors of length n", n=sig.n, got=list(V.shape)
        )
    w = np.empty(sig.n)
    for i in range(sig.n):
        row = np.zeros(sig.n)
        row[i] = 1.0
        w[i] = np.linalg.det(np.vstack([row, V]))
    return w * sig.weights


def cross3(a: Any, b: Any, sig: Signature) -> Any:
    """Three-dimensional cross product for arrays or vector jets."""
    if sig.n != 3:
        raise PreconditionError("cross3 needs a three-dimensional ambient", n=sig.n)
    if not (is_jet(a) or is_jet(b)):
        return np.cross(np.asarray(a, dtype=float), np.asarray(b, dtype=float)) * sig.weights
    from .jets import vector

    euclid = vector(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
    return euclid * sig.weights


def null_completion(lightlike: Any, unit: Any, sig: Signature) -> Any:
    """The lightlike B with <B, L> = -1 and <B, U> = 0.

    ``lightlike`` (L) must be a nonzero lightlike vector and ``unit`` (U) a unit
    spacelike vector orthogonal to it. Works on arrays and on vector jets.
    """
    JL = lightlike * sig.weights
    Y = JL - unit * inner(JL, unit, sig)
    yl = inner(Y, lightlike, sig)
    if abs(complex(value_of(yl))) < 1e-14:
        raise PreconditionError("no lightlike completion for a degenerate pair")
    b = -1.0 / yl
    a = -b * inner(Y, Y, sig) / (2.0 * yl)
    return lightlike * a + Y * b


def lightlike_plane_orientation(v: Any, w: Any, sig: Signature = LORENTZ3) -> PlaneOrientation:
    """Orientation of (v, w), v lightlike, through the future Euclidean normal."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    n = np.cross(v, w)
    n = n / np.linalg.norm(n)
    if n[-1] < 0:
        n = -n
    positive: Optional[bool] = None
    if abs(n[-1]) > DEFAULT_TOL:
        positive = bool(np.linalg.det(np.vstack([v, w, n])) > 0)
    c = cross3(v, w, sig)
    lam = float(c @ v / (v @ v))
    return PlaneOrientation(positive, n, lam)


def hyperbolic_angle(u: Any, v: Any, sig: Signature) -> float:
    """phi >= 0 with |<u,v>| = |u||v| cosh(phi) for timelike u, v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    for x in (u, v):
        if causal_character(x, sig).causal_class is not CausalClass.TIMELIKE:
            raise PreconditionError("hyperbolic angle needs timelike vectors")
    c = abs(float(inner(u, v, sig))) / (fake_norm(u, sig) * fake_norm(v, sig))
    return float(np.arccosh(max(c, 1.0)))


def causal_relations(
    p: Any, q: Any, sig: Signature = LORENTZ3, tol: float = DEFAULT_TOL
) -> CausalRelations:
    """Chronological and causal precedence p << q, p <= q."""
    d = np.asarray(q, dtype=float) - np.asarray(p, dtype=float)
    _check(d, sig)
    if not np.any(d):
        return CausalRelations(False, False, "none")
    cls = causal_character(d, sig, tol).causal_class
    orientation = time_orientation(d, sig, tol)
    future = orientation == "future"
    chron = future and cls is CausalClass.TIMELIKE
    causal = future and cls is not CausalClass.SPACELIKE
    if cls is not CausalClass.TIMELIKE:
        return CausalRelations(chron, causal, orientation)
    e_n = np.zeros(sig.n)
    e_n[-1] = 1.0
    phi = hyperbolic_angle(e_n, d, sig)
    return CausalRelations(chron, causal, orientation, phi, float(np.cosh(phi)))


def metric_trace_det(B: Any, basis: Sequence[Any], sig: Signature) -> tuple:
    """Metric trace and determinant of the bilinear form with matrix ``B``.

    Relative to an orthonormal basis the trace is sum eps_i B(v_i, v_i).
    """
    V = np.atleast_2d(np.asarray(basis, dtype=float))
    Bm = V @ np.asarray(B, dtype=float) @ V.T
    G = gram_matrix(V, V, sig)
    S = np.linalg.solve(G, Bm)
    return float(np.trace(S)), float(np.linalg.det(S))
