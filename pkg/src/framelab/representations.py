"""Unitary representations of finite groups and orbit correlation data."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatchError,
    DimTooLargeError,
    HomomorphismFailure,
    ParseError,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    GroupFunction,
    group_from_spec,
    group_function,
    make_abelian_group,
)
from .vnalgebra import ConvolutionOperator, lambda_matrix, operator_from_coefficients

__all__ = [
    "DEFAULT_MAX_DIM",
    "OrbitSystem",
    "RepVerification",
    "UnitaryRepresentation",
    "bracket_operator",
    "correlation_function",
    "gabor_representation",
    "orbit_matrix",
    "parse_rep_spec",
    "regular_representation",
    "shift_model_representation",
    "verify_representation",
]

DEFAULT_MAX_DIM = 4096

# Above this group order, verify_representation samples pairs instead of
# checking all of them.
_EXHAUSTIVE_PAIR_ORDER = 64
_RANDOM_PAIR_COUNT = 200


@dataclass(frozen=True, eq=False)
class UnitaryRepresentation:
    """A family of unitary matrices indexed by group elements."""

    group: FiniteGroup
    dim: int
    matrices: np.ndarray  # (order, dim, dim) complex
    label: str

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]


@dataclass(frozen=True, eq=False)
class OrbitSystem:
    """A generator vector together with the representation acting on it."""

    rep: UnitaryRepresentation
    generator: np.ndarray


@dataclass(frozen=True)
class RepVerification:
    """Outcome of checking unitarity, identity, and the group law."""

    max_deviation: float
    identity_deviation: float
    unitarity_deviation: float
    homomorphism_deviation: float
    checked_pairs: int
    exhaustive: bool
    passed: bool
    failing_pair: tuple[int, int] | None


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _as_generator(rep: UnitaryRepresentation, vec) -> np.ndarray:
    arr = np.asarray(vec, dtype=np.complex128).reshape(-1)
    if arr.shape != (rep.dim,):
        raise DimMismatchError(
            f"generator has length {arr.shape[0]}, representation dim is {rep.dim}"
        )
    return arr


def regular_representation(group: FiniteGroup) -> UnitaryRepresentation:
    """Left translation on functions over the group."""
    mats = np.stack([lambda_matrix(group, g) for g in group.elements()])
    label = f"regular:{group.spec}" if group.spec else "regular"
    return UnitaryRepresentation(group, group.order, _freeze(mats), label)


def shift_model_representation(
    n: int, m: int, max_dim: int = DEFAULT_MAX_DIM
) -> UnitaryRepresentation:
    """Z_n acting on C^(n*m) by cyclic shifts of stride m.

    Element k shifts a signal by k*m samples, so the orbit of delta_0 visits
    delta_0, delta_m, delta_2m, ...  With m = 1 this is exactly the left
    regular representation of Z_n.
    """
    n, m = int(n), int(m)
    if n < 2 or m < 1:
        raise ParseError(f"shift model needs N >= 2 and M >= 1, got {n}, {m}")
    dim = n * m
    if dim > max_dim:
        raise DimTooLargeError(f"dimension {dim} exceeds cap {max_dim}")
    group = make_abelian_group([n])
    mats = np.zeros((n, dim, dim), dtype=np.complex128)
    x = np.arange(dim)
    for k in range(n):
        mats[k, x, (x - k * m) % dim] = 1.0
    return UnitaryRepresentation(group, dim, _freeze(mats), f"shift:{n},{m}")


def gabor_representation(
    l: int, m: int, max_dim: int = DEFAULT_MAX_DIM
) -> UnitaryRepresentation:
    """Z_l x Z_m acting on C^(l*m) by stride-m shifts and stride-l modulations.

    Element (k, j) acts as modulation by frequency l*j after a shift by m*k:
    (u(k, j) v)(x) = exp(-2i pi l j x / n) v(x - m k), n = l*m.  On this
    lattice the commutator phase exp(-2i pi (lj)(mk) / n) is exp(-2i pi jk),
    identically one, so the family is a genuine representation.  Phases are
    reduced to integers mod n before exponentiation, which keeps products of
    these matrices commuting exactly.
    """
    l, m = int(l), int(m)
    if l < 2 or m < 2:
        raise ParseError(f"gabor model needs factors at least 2, got {l}, {m}")
    dim = l * m
    if dim > max_dim:
        raise DimTooLargeError(f"dimension {dim} exceeds cap {max_dim}")
    group = make_abelian_group([l, m])
    roots = np.exp(-2j * np.pi * np.arange(dim) / dim)
    mats = np.zeros((group.order, dim, dim), dtype=np.complex128)
    x = np.arange(dim)
    for k in range(l):
        for j in range(m):
            idx = k * m + j
            mats[idx, x, (x - m * k) % dim] = roots[(l * j * x) % dim]
    rep = UnitaryRepresentation(group, dim, _freeze(mats), f"gabor:{l},{m}")
    _construction_guard(rep)
    return rep


def _construction_guard(rep: UnitaryRepresentation, tol: float = 1e-12) -> None:
    """Cheap sanity check that a constructed family satisfies the group law."""
    rng = np.random.default_rng(0)
    n = rep.group.order
    pairs = min(n * n, 16)
    a = rng.integers(0, n, size=pairs)
    b = rng.integers(0, n, size=pairs)
    for g1, g2 in zip(a, b):
        prod = rep.matrices[g1] @ rep.matrices[g2]
        target = rep.matrices[rep.group.product(int(g1), int(g2))]
        if np.abs(prod - target).max() > tol:
            raise HomomorphismFailure(
                f"{rep.label}: group law fails at pair ({g1}, {g2})"
            )


def verify_representation(
    rep: UnitaryRepresentation, tol: float = 1e-12, seed: int = 0
) -> RepVerification:
    """Check the identity, unitarity of every matrix, and the group law.

    All pairs are checked when the group order is at most 64; otherwise a
    seeded sample of pairs is used.
    """
    group, mats = rep.group, rep.matrices
    n, d = group.order, rep.dim
    eye = np.eye(d)

    id_dev = float(np.abs(mats[group.identity] - eye).max())
    unit_dev = 0.0
    for g in range(n):
        unit_dev = max(
            unit_dev, float(np.abs(mats[g] @ mats[g].conj().T - eye).max())
        )

    exhaustive = n <= _EXHAUSTIVE_PAIR_ORDER
    if exhaustive:
        pairs = [(a, b) for a in range(n) for b in range(n)]
    else:
        rng = np.random.default_rng(seed)
        draws = rng.integers(0, n, size=(_RANDOM_PAIR_COUNT, 2))
        pairs = [(int(a), int(b)) for a, b in draws]

    hom_dev = 0.0
    worst: tuple[int, int] | None = None
    for a, b in pairs:
        dev = float(
            np.abs(mats[a] @ mats[b] - mats[group.table[a, b]]).max()
        )
        if dev > hom_dev:
            hom_dev, worst = dev, (a, b)

    max_dev = max(id_dev, unit_dev, hom_dev)
    passed = max_dev <= tol
    return RepVerification(
        max_deviation=max_dev,
        identity_deviation=id_dev,
        unitarity_deviation=unit_dev,
        homomorphism_deviation=hom_dev,
        checked_pairs=len(pairs),
        exhaustive=exhaustive,
        passed=passed,
        failing_pair=None if passed else worst,
    )


def orbit_matrix(orbit: OrbitSystem) -> np.ndarray:
    """Synthesis matrix whose column g is the generator moved by element g."""
    psi = _as_generator(orbit.rep, orbit.generator)
    vecs = orbit.rep.matrices @ psi  # (order, dim)
    return vecs.T.copy()


def correlation_function(
    rep: UnitaryRepresentation, phi, psi
) -> GroupFunction:
    """g -> <phi, U(g) psi>, with the inner product linear in phi."""
    phi = _as_generator(rep, phi)
    psi = _as_generator(rep, psi)
    moved = rep.matrices @ psi  # (order, dim)
    vals = moved.conj() @ phi
    return group_function(rep.group, vals)


def bracket_operator(
    rep: UnitaryRepresentation, phi, psi
) -> ConvolutionOperator:
    """The operator whose Fourier coefficients are <phi, U(g) psi>."""
    return operator_from_coefficients(correlation_function(rep, phi, psi))


def parse_rep_spec(
    spec: str,
    max_order: int = DEFAULT_MAX_ORDER,
    max_dim: int = DEFAULT_MAX_DIM,
) -> UnitaryRepresentation:
    """Resolve 'regular:GROUP', 'shift:N,M', or 'gabor:L,M'."""
    spec = spec.strip()
    head, sep, tail = spec.partition(":")
    if not sep:
        raise ParseError(f"representation spec {spec!r} has no ':'")
    if head == "regular":
        group = group_from_spec(tail, max_order=max_order)
        if group.order > max_dim:
            raise DimTooLargeError(
                f"regular representation dim {group.order} exceeds cap {max_dim}"
            )
        return regular_representation(group)
    if head in ("shift", "gabor"):
        parts = tail.split(",")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise ParseError(f"{head} spec needs two integers, got {tail!r}")
        a, b = (int(p) for p in parts)
        if head == "shift":
            if a < 2:
                raise ParseError(f"shift model needs N >= 2, got {a}")
            if b < 1:
                raise ParseError(f"shift model needs M >= 1, got {b}")
            if a > max_order:
                raise ParseError(f"shift group order {a} exceeds cap {max_order}")
            return shift_model_representation(a, b, max_dim=max_dim)
        if a * b > max_order:
            raise ParseError(f"gabor group order {a * b} exceeds cap {max_order}")
        return gabor_representation(a, b, max_dim=max_dim)
    raise ParseError(f"unknown representation kind {head!r}")
