"""Finite groups, their duals, and convolution on the group algebra.

Elements of a group of order n are the indices 0..n-1.  Abelian groups built
from a factor list [d1, ..., dk] identify index and coordinates through the
mixed-radix rule with the last factor varying fastest, so for a single factor
[N] the element index is just the residue and the dual enumeration below lines
up with the usual N-point discrete Fourier indexing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    EmptyFactorsError,
    GroupMismatchError,
    MalformedTableError,
    NoIdentityError,
    NoInverseError,
    NotAbelianError,
    NotAssociativeError,
    OrderTooLargeError,
    ParseError,
)

__all__ = [
    "DEFAULT_MAX_ORDER",
    "AbelianStructure",
    "Character",
    "FiniteGroup",
    "GroupFunction",
    "character_table",
    "characters",
    "convolve",
    "delta",
    "dihedral_group",
    "group_function",
    "group_from_spec",
    "heisenberg_group",
    "make_abelian_group",
    "make_builtin_group",
    "make_group_from_table",
    "same_group",
]

DEFAULT_MAX_ORDER = 4096

# Exhaustive associativity checking is cubic; above this order we fall back
# to randomized triples.
_EXHAUSTIVE_ASSOC_ORDER = 512
_RANDOM_ASSOC_TRIPLES = 100_000


@dataclass(frozen=True, eq=False)
class AbelianStructure:
    """Coordinate data for a product of cyclic groups.

    The factor list is kept exactly as given (no invariant-factor
    normalization), since the element indexing depends on it.
    """

    invariant_factors: tuple[int, ...]
    coords: np.ndarray  # (order, k) integer coordinates, row per element


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group presented by its full multiplication table."""

    order: int
    table: np.ndarray  # (order, order), table[a, b] = a*b
    inverses: np.ndarray  # (order,)
    identity: int
    is_abelian: bool
    structure_tag: str  # cyclic-product | dihedral | heisenberg | custom-table
    abelian: AbelianStructure | None = None
    spec: str | None = None

    def product(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inverses[a])

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        name = self.spec or self.structure_tag
        return f"FiniteGroup({name}, order={self.order})"


@dataclass(frozen=True, eq=False)
class Character:
    """One character of an abelian group: exponents and values on all elements."""

    exponents: tuple[int, ...]
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class GroupFunction:
    """A complex-valued function on a group, stored as a dense vector."""

    group: FiniteGroup
    values: np.ndarray


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def same_group(g1: FiniteGroup, g2: FiniteGroup) -> bool:
    """True when two group objects describe the same multiplication table."""
    if g1 is g2:
        return True
    return g1.order == g2.order and bool(np.array_equal(g1.table, g2.table))


def group_function(group: FiniteGroup, values) -> GroupFunction:
    vals = np.asarray(values, dtype=np.complex128)
    if vals.shape != (group.order,):
        raise GroupMismatchError(
            f"function has shape {vals.shape}, expected ({group.order},)"
        )
    return GroupFunction(group, _freeze(vals.copy()))


def delta(group: FiniteGroup, index: int) -> GroupFunction:
    """The point mass at one element."""
    vals = np.zeros(group.order, dtype=np.complex128)
    vals[index] = 1.0
    return GroupFunction(group, _freeze(vals))


def _mixed_radix_coords(factors: tuple[int, ...]) -> np.ndarray:
    order = math.prod(factors)
    coords = np.stack(
        np.unravel_index(np.arange(order), factors), axis=1
    ).astype(np.int64)
    return coords


def make_abelian_group(
    factors, max_order: int = DEFAULT_MAX_ORDER
) -> FiniteGroup:
    """Direct product of cyclic groups Z_d1 x ... x Z_dk."""
    factors = tuple(int(d) for d in factors)
    if len(factors) == 0:
        raise EmptyFactorsError("at least one cyclic factor is required")
    for d in factors:
        if d < 2:
            raise EmptyFactorsError(f"cyclic factor {d} is below 2")
    order = math.prod(factors)
    if order > max_order:
        raise OrderTooLargeError(f"order {order} exceeds cap {max_order}")

    dims = np.asarray(factors, dtype=np.int64)
    coords = _mixed_radix_coords(factors)
    table = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        summed = (coords[a] + coords) % dims
        table[a] = np.ravel_multi_index(tuple(summed.T), factors)
    inverses = np.ravel_multi_index(tuple(((-coords) % dims).T), factors)

    spec = "x".join(f"Z{d}" for d in factors)
    structure = AbelianStructure(factors, _freeze(coords))
    return FiniteGroup(
        order=order,
        table=_freeze(table),
        inverses=_freeze(inverses.astype(np.int64)),
        identity=0,
        is_abelian=True,
        structure_tag="cyclic-product",
        abelian=structure,
        spec=spec,
    )


def dihedral_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^k and reflections r^k s.

    Index j*n + k stands for r^k s^j with s r s^-1 = r^-1, so products follow
    (r^a s^i)(r^b s^j) = r^(a + (-1)^i b) s^(i+j).
    """
    n = int(n)
    if n < 2:
        raise ParseError(f"dihedral parameter {n} is below 2")
    order = 2 * n
    if order > max_order:
        raise OrderTooLargeError(f"order {order} exceeds cap {max_order}")

    idx = np.arange(order)
    k, j = idx % n, idx // n
    k1, j1 = k[:, None], j[:, None]
    k2, j2 = k[None, :], j[None, :]
    kp = (k1 + np.where(j1 == 1, -k2, k2)) % n
    jp = (j1 + j2) % 2
    table = jp * n + kp
    inv_k = np.where(j == 0, (-k) % n, k)
    inverses = j * n + inv_k

    return FiniteGroup(
        order=order,
        table=_freeze(table.astype(np.int64)),
        inverses=_freeze(inverses.astype(np.int64)),
        identity=0,
        is_abelian=bool(n <= 2),
        structure_tag="dihedral",
        spec=f"D{n}",
    )


def heisenberg_group(p: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z_p, order p^3.

    An element is the coordinate triple (a, b, c) for the matrix with a, b on
    the superdiagonal and c in the corner; index = (a*p + b)*p + c.  Products
    compose as (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b') mod p.
    """
    p = int(p)
    if p < 2:
        raise ParseError(f"heisenberg parameter {p} is below 2")
    order = p**3
    if order > max_order:
        raise OrderTooLargeError(f"order {order} exceeds cap {max_order}")

    coords = _mixed_radix_coords((p, p, p))
    a, b, c = coords[:, 0], coords[:, 1], coords[:, 2]
    table = np.empty((order, order), dtype=np.int64)
    for i in range(order):
        aa = (a[i] + a) % p
        bb = (b[i] + b) % p
        cc = (c[i] + c + a[i] * b) % p
        table[i] = (aa * p + bb) * p + cc
    inverses = (((-a) % p) * p + ((-b) % p)) * p + ((-c + a * b) % p)

    return FiniteGroup(
        order=order,
        table=_freeze(table),
        inverses=_freeze(inverses.astype(np.int64)),
        identity=0,
        is_abelian=False,
        structure_tag="heisenberg",
        spec=f"H{p}",
    )


def _check_associative(table: np.ndarray) -> None:
    n = table.shape[0]
    if n <= _EXHAUSTIVE_ASSOC_ORDER:
        for a in range(n):
            left = table[table[a], :]  # (a*b)*c
            right = table[a][table]  # a*(b*c)
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise NotAssociativeError(
                    f"(a*b)*c != a*(b*c) at (a, b, c) = ({a}, {b}, {c})"
                )
        return
    rng = np.random.default_rng(0)
    trips = rng.integers(0, n, size=(_RANDOM_ASSOC_TRIPLES, 3))
    left = table[table[trips[:, 0], trips[:, 1]], trips[:, 2]]
    right = table[trips[:, 0], table[trips[:, 1], trips[:, 2]]]
    bad = np.nonzero(left != right)[0]
    if bad.size:
        a, b, c = trips[bad[0]]
        raise NotAssociativeError(
            f"(a*b)*c != a*(b*c) at (a, b, c) = ({a}, {b}, {c})"
        )


def make_group_from_table(table, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from an explicit multiplication table, verifying the axioms."""
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTableError(f"table has shape {arr.shape}, expected square")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            raise MalformedTableError("table entries are not integers")
    arr = arr.astype(np.int64)
    n = arr.shape[0]
    if n > max_order:
        raise OrderTooLargeError(f"order {n} exceeds cap {max_order}")
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedTableError("table entries fall outside 0..order-1")

    idx = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(arr[e], idx) and np.array_equal(arr[:, e], idx):
            identity = e
            break
    if identity is None:
        raise NoIdentityError("no two-sided identity element")

    _check_associative(arr)

    right_inv = np.argmax(arr == identity, axis=1)
    if not np.all(arr[idx, right_inv] == identity):
        bad = int(np.nonzero(arr[idx, right_inv] != identity)[0][0])
        raise NoInverseError(f"element {bad} has no right inverse")
    if not np.all(arr[right_inv, idx] == identity):
        bad = int(np.nonzero(arr[right_inv, idx] != identity)[0][0])
        raise NoInverseError(f"element {bad} has no two-sided inverse")

    return FiniteGroup(
        order=n,
        table=_freeze(arr),
        inverses=_freeze(right_inv.astype(np.int64)),
        identity=int(identity),
        is_abelian=bool(np.array_equal(arr, arr.T)),
        structure_tag="custom-table",
    )


def make_builtin_group(name: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from a name: Z<n>, Z<n>x...xZ<m>, D<n>, or H<p>."""
    name = name.strip()
    if not name:
        raise ParseError("empty group spec")
    if name[0] == "Z":
        parts = name.split("x")
        factors = []
        for part in parts:
            if len(part) < 2 or part[0] != "Z" or not part[1:].isdigit():
                raise ParseError(f"bad cyclic factor {part!r} in {name!r}")
            factors.append(int(part[1:]))
        if any(d < 2 for d in factors):
            raise ParseError(f"cyclic factors must be at least 2 in {name!r}")
        return make_abelian_group(factors, max_order=max_order)
    if name[0] == "D":
        if not name[1:].isdigit():
            raise ParseError(f"bad dihedral spec {name!r}")
        n = int(name[1:])
        if n < 2:
            raise ParseError(f"dihedral parameter must be at least 2 in {name!r}")
        return dihedral_group(n, max_order=max_order)
    if name[0] == "H":
        if not name[1:].isdigit():
            raise ParseError(f"bad heisenberg spec {name!r}")
        p = int(name[1:])
        if p < 2:
            raise ParseError(f"heisenberg parameter must be at least 2 in {name!r}")
        return heisenberg_group(p, max_order=max_order)
    raise ParseError(f"unrecognized group spec {name!r}")


def group_from_spec(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Resolve a group spec string, including table:PATH references."""
    spec = spec.strip()
    if spec.startswith("table:"):
        path = Path(spec[len("table:"):])
        try:
            payload = json.loads(path.read_text())
        except OSError as exc:
            raise ParseError(f"cannot read table file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise MalformedTableError(f"table file {path} is not valid JSON") from exc
        if isinstance(payload, dict):
            payload = payload.get("table", None)
        if payload is None:
            raise MalformedTableError(f"table file {path} holds no table")
        return make_group_from_table(payload, max_order=max_order)
    return make_builtin_group(spec, max_order=max_order)


def _character_phase_table(group: FiniteGroup) -> tuple[np.ndarray, int]:
    """Integer phase numerators t with character value exp(2i pi t / lcm)."""
    structure = group.abelian
    assert structure is not None
    factors = structure.invariant_factors
    denom = math.lcm(*factors)
    weights = np.asarray([denom // d for d in factors], dtype=np.int64)
    coords = structure.coords
    return (coords @ (coords * weights).T) % denom, denom


def character_table(group: FiniteGroup) -> np.ndarray:
    """All characters as a matrix X[m, a] = value of character m at element a.

    Character m has values exp(+2i pi sum_i m_i a_i / d_i); phases are reduced
    to integer numerators before exponentiation so equal phases give equal
    floats.  The table is cached on the group's abelian structure; the fill is
    idempotent, so a concurrent first access is harmless.
    """
    if group.abelian is None:
        raise NotAbelianError("characters need an abelian group with coordinates")
    cached = getattr(group.abelian, "_char_table", None)
    if cached is not None:
        return cached
    numer, denom = _character_phase_table(group)
    roots = np.exp(2j * np.pi * np.arange(denom) / denom)
    table = _freeze(roots[numer])
    object.__setattr__(group.abelian, "_char_table", table)
    return table


def characters(group: FiniteGroup) -> list[Character]:
    """The dual group of an abelian group, enumerated by mixed-radix exponents."""
    table = character_table(group)
    coords = group.abelian.coords
    return [
        Character(tuple(int(x) for x in coords[m]), table[m])
        for m in range(group.order)
    ]


def convolve(u: GroupFunction, v: GroupFunction) -> GroupFunction:
    """Group convolution (u*v)(g) = sum_h u(g h^-1) v(h)."""
    if not same_group(u.group, v.group):
        raise GroupMismatchError("convolution needs both functions on one group")
    g = u.group
    idx = g.table[:, g.inverses]  # idx[x, h] = x * h^-1
    vals = u.values[idx] @ v.values
    return GroupFunction(g, _freeze(vals))
