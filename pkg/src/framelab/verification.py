"""Randomized self-checks behind the `frame-lab verify` command.

Each check returns a CheckResult with the worst deviation it saw; the
acceptance tests reuse these runners with their own sample counts and
tolerances.  All randomness flows from one seeded generator so a verify run
is reproducible from its reported seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .abelian import (
    dual_lp_norm,
    gabor_bracket_via_zak,
    inverse_lambda,
    lambda_multiplier,
    periodization_bracket,
    scalar_bracket,
    support_indicator,
    check_sandwich_equivalence,
    DualFunction,
)
from .frames import check_duallemma, verify_bracket_equals_gramian
from .groups import FiniteGroup, group_from_spec, group_function
from .representations import (
    OrbitSystem,
    UnitaryRepresentation,
    bracket_operator,
    gabor_representation,
    regular_representation,
    shift_model_representation,
    verify_representation,
)
from .vnalgebra import lp_norm, operator_from_coefficients, support_projection

__all__ = [
    "CheckResult",
    "DEFAULT_GROUP_SPECS",
    "check_bracket_gramian",
    "check_duallemma_suite",
    "check_gabor_commutativity",
    "check_lambda_structure",
    "check_periodization_calibration",
    "check_representation_validity",
    "check_sandwich_suite",
    "check_support_lemma",
    "check_zak_calibration",
    "run_verification_suite",
]

DEFAULT_GROUP_SPECS = ("Z2", "Z4", "Z2xZ2", "Z3xZ4", "D4", "H3")
_DEFAULT_MODELS = (("shift", 4, 2), ("gabor", 2, 3))


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named verification check."""

    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    samples: int
    details: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        payload = {
            "name": self.name,
            "passed": bool(self.passed),
            "max_deviation": float(self.max_deviation),
            "tolerance": float(self.tolerance),
            "samples": int(self.samples),
        }
        if self.details:
            payload["details"] = {
                k: (float(v) if isinstance(v, (int, float, np.floating)) else v)
                for k, v in sorted(self.details.items())
            }
        return payload


def _cvec(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _random_operator(rng: np.random.Generator, group: FiniteGroup):
    return operator_from_coefficients(group_function(group, _cvec(rng, group.order)))


def check_representation_validity(
    reps: list[UnitaryRepresentation], tol: float = 1e-13
) -> CheckResult:
    """Identity, unitarity, and the group law for every given representation."""
    worst = 0.0
    failing = None
    for rep in reps:
        report = verify_representation(rep, tol=tol)
        if report.max_deviation > worst:
            worst = report.max_deviation
            if not report.passed:
                failing = rep.label
    details = {"failing": failing} if failing else {}
    return CheckResult(
        "representation_validity", worst <= tol, worst, tol, len(reps), details
    )


def check_gabor_commutativity(models=((2, 3),)) -> CheckResult:
    """Commutativity of the shift-modulation lattice, on exact integer phases.

    For the (l, m) model the composed action of (k, j) then (k', j') carries
    the integer phase l j x + l j' (x - m k) mod n.  Commutativity is exact
    when swapping the pair leaves all phases and shifts unchanged as
    integers, which avoids trusting bitwise floating products.  The dense
    matrices are also compared with a strict tolerance.
    """
    worst = 0.0
    exact = True
    count = 0
    for l, m in models:
        n = l * m
        x = np.arange(n)
        rep = gabor_representation(l, m)
        for k1 in range(l):
            for j1 in range(m):
                for k2 in range(l):
                    for j2 in range(m):
                        t12 = (l * j1 * x + l * j2 * ((x - m * k1) % n)) % n
                        t21 = (l * j2 * x + l * j1 * ((x - m * k2) % n)) % n
                        if not np.array_equal(t12, t21):
                            exact = False
                        a, b = k1 * m + j1, k2 * m + j2
                        dev = float(
                            np.abs(
                                rep.matrices[a] @ rep.matrices[b]
                                - rep.matrices[b] @ rep.matrices[a]
                            ).max()
                        )
                        worst = max(worst, dev)
                        count += 1
    tol = 1e-14
    return CheckResult(
        "gabor_commutativity",
        exact and worst <= tol,
        worst,
        tol,
        count,
        {"integer_phases_exact": exact},
    )


def check_bracket_gramian(
    group_specs,
    rng: np.random.Generator,
    samples: int = 100,
    tol: float = 1e-11,
    trace_tol: float = 1e-12,
    inject_fault: bool = False,
) -> CheckResult:
    """Correlation-kernel operator vs orbit Gram matrix, entrywise and in trace."""
    worst = 0.0
    worst_trace = 0.0
    count = 0
    for spec in group_specs:
        rep = regular_representation(group_from_spec(spec))
        for _ in range(samples):
            psi = _cvec(rng, rep.dim)
            orbit = OrbitSystem(rep, psi)
            check = verify_bracket_equals_gramian(orbit)
            dev = check.max_deviation
            if inject_fault:
                # Deliberate bias so failure paths stay testable end to end.
                dev += 1e-6
            worst = max(worst, dev)
            worst_trace = max(worst_trace, check.trace_deviation)
            count += 1
    passed = worst <= tol and worst_trace <= trace_tol
    return CheckResult(
        "bracket_equals_gramian",
        passed,
        worst,
        tol,
        count,
        {"trace_deviation": worst_trace, "trace_tolerance": trace_tol},
    )


def _random_factor_matrix(
    rng: np.random.Generator, max_dim: int
) -> tuple[np.ndarray, np.ndarray]:
    """A random K with controlled, well separated nonzero singular values."""
    rows = int(rng.integers(2, max_dim + 1))
    cols = int(rng.integers(2, max_dim + 1))
    rank = int(rng.integers(1, min(rows, cols) + 1))
    sing = np.sort(rng.uniform(0.5, 2.0, size=rank)) + 0.05 * np.arange(rank)
    q1, _ = np.linalg.qr(_cvec(rng, rows * rows).reshape(rows, rows))
    q2, _ = np.linalg.qr(_cvec(rng, cols * cols).reshape(cols, cols))
    k = (q1[:, :rank] * sing) @ q2[:, :rank].conj().T
    return k, sing**2


def check_duallemma_suite(
    rng: np.random.Generator,
    samples: int = 200,
    max_dim: int = 32,
    tol: float = 1e-10,
) -> CheckResult:
    """All four spectral tests agree, and flip together when A is pushed up."""
    disagreements = 0
    false_negatives = 0
    stuck_flips = 0
    for _ in range(samples):
        k, s2 = _random_factor_matrix(rng, max_dim)
        a = float(s2.min()) * (1.0 - 1e-3)
        b = float(s2.max()) * (1.0 + 1e-3)
        report = check_duallemma(k, a, b, tol=tol)
        if not report.consistent:
            disagreements += 1
        if not all(report.as_tuple()):
            false_negatives += 1
        distinct = np.unique(s2)
        ceiling = float(distinct[1]) if distinct.size > 1 else b
        a_bad = float(s2.min()) + 0.5 * (ceiling - float(s2.min()))
        flipped = check_duallemma(k, a_bad, b, tol=tol)
        if not flipped.consistent:
            disagreements += 1
        if any(flipped.as_tuple()):
            stuck_flips += 1
    bad = disagreements + false_negatives + stuck_flips
    return CheckResult(
        "duallemma",
        bad == 0,
        float(bad),
        0.0,
        samples,
        {
            "disagreements": disagreements,
            "false_negatives": false_negatives,
            "stuck_flips": stuck_flips,
        },
    )


def _greedy_multiset_deviation(left: np.ndarray, right: np.ndarray) -> float:
    """Largest distance in a greedy matching of two complex multisets."""
    right = list(right)
    worst = 0.0
    for val in left:
        gaps = [abs(val - r) for r in right]
        idx = int(np.argmin(gaps))
        worst = max(worst, float(gaps[idx]))
        right.pop(idx)
    return worst


def check_lambda_structure(
    group_specs,
    rng: np.random.Generator,
    pairs: int = 100,
    tol: float = 1e-10,
    p_values=(1, 2, 4, np.inf),
) -> CheckResult:
    """Multiplier transform: homomorphism, star, p-norm isometry, spectrum."""
    worst = 0.0
    count = 0
    for spec in group_specs:
        group = group_from_spec(spec)
        if not group.is_abelian or group.abelian is None:
            continue
        for _ in range(pairs):
            f1 = _random_operator(rng, group)
            f2 = _random_operator(rng, group)
            m1 = lambda_multiplier(f1).values
            m2 = lambda_multiplier(f2).values
            prod_dev = float(
                np.abs(lambda_multiplier(f1 @ f2).values - m1 * m2).max()
            ) / max(1.0, float(np.abs(m1 * m2).max()))
            star_dev = float(
                np.abs(lambda_multiplier(f1.adjoint()).values - np.conj(m1)).max()
            ) / max(1.0, float(np.abs(m1).max()))
            worst = max(worst, prod_dev, star_dev)
            for p in p_values:
                a = lp_norm(f1, p)
                b = dual_lp_norm(DualFunction(group, m1), p)
                worst = max(worst, abs(a - b) / max(1.0, a))
            eig = np.linalg.eigvals(f1.matrix)
            spec_dev = _greedy_multiset_deviation(m1, eig) / max(
                1.0, float(np.abs(m1).max())
            )
            worst = max(worst, spec_dev)
            count += 1
    return CheckResult("lambda_structure", worst <= tol, worst, tol, count)


def _random_psd_operator(rng: np.random.Generator, group: FiniteGroup, masked: bool):
    if masked:
        vals = rng.uniform(0.5, 2.0, size=group.order)
        mask = rng.integers(0, 2, size=group.order).astype(bool)
        if mask.all():
            mask[int(rng.integers(0, group.order))] = False
        vals = np.where(mask, 0.0, vals)
        return inverse_lambda(DualFunction(group, vals.astype(np.complex128)))
    rep = regular_representation(group)
    return bracket_operator(rep, *(2 * [_cvec(rng, group.order)]))


def check_support_lemma(
    group_specs,
    rng: np.random.Generator,
    samples: int = 100,
    tol: float = 1e-10,
) -> CheckResult:
    """Multiplier of the support projection equals the support indicator."""
    mismatches = 0
    worst = 0.0
    count = 0
    for spec in group_specs:
        group = group_from_spec(spec)
        if not group.is_abelian or group.abelian is None:
            continue
        for i in range(samples):
            op = _random_psd_operator(rng, group, masked=(i % 2 == 0))
            proj = support_projection(op, tol)
            via_proj = lambda_multiplier(proj).values
            chi = support_indicator(lambda_multiplier(op), tol).values
            rounded = (via_proj.real > 0.5).astype(float)
            if not np.array_equal(rounded, chi.real):
                mismatches += 1
            worst = max(worst, float(np.abs(via_proj - chi).max()))
            count += 1
    return CheckResult(
        "support_lemma",
        mismatches == 0,
        worst,
        tol,
        count,
        {"mismatches": mismatches},
    )


def check_sandwich_suite(
    group_specs,
    rng: np.random.Generator,
    samples: int = 100,
    adversarial: int = 20,
    tol: float = 1e-10,
) -> CheckResult:
    """Operator-side and scalar-side two-sided bounds always agree."""
    disagreements = 0
    wrong_calls = 0
    count = 0
    reps = []
    for spec in group_specs:
        group = group_from_spec(spec)
        if group.is_abelian and group.abelian is not None:
            reps.append(regular_representation(group))
    if not reps:
        return CheckResult("sandwich_equivalence", True, 0.0, tol, 0, {"skipped": 1})

    def run_case(rep, psi, a, b, expected):
        nonlocal disagreements, wrong_calls, count
        report = check_sandwich_equivalence(rep, psi, a, b, tol=tol)
        if not report.consistent:
            disagreements += 1
        if expected is not None and report.operator_side != expected:
            wrong_calls += 1
        count += 1

    for i in range(samples):
        rep = reps[i % len(reps)]
        psi = _cvec(rng, rep.dim)
        mult = scalar_bracket(rep, psi, psi).values.real
        nonzero = mult[mult > tol * max(1.0, mult.max())]
        lo, hi = float(nonzero.min()), float(nonzero.max())
        mode = i % 3
        if mode == 0:
            run_case(rep, psi, 0.9 * lo, 1.1 * hi, True)
        elif mode == 1:
            run_case(rep, psi, 1.5 * lo if hi > 1.6 * lo else 1.1 * hi, 1.1 * hi, False)
        elif 0.9 * hi > lo:
            run_case(rep, psi, 0.9 * lo, 0.9 * hi, False)
        else:
            run_case(rep, psi, 0.9 * lo, 1.1 * hi, True)
    for i in range(adversarial):
        rep = reps[i % len(reps)]
        psi = _cvec(rng, rep.dim)
        mult = scalar_bracket(rep, psi, psi).values.real
        nonzero = mult[mult > tol * max(1.0, mult.max())]
        lo, hi = float(nonzero.min()), float(nonzero.max())
        eps = 1e-6
        if i % 2 == 0:
            run_case(rep, psi, lo * (1.0 - eps), hi * (1.0 + eps), True)
        else:
            run_case(rep, psi, lo * (1.0 + eps), hi * (1.0 + eps), False)
    bad = disagreements + wrong_calls
    return CheckResult(
        "sandwich_equivalence",
        bad == 0,
        float(bad),
        0.0,
        count,
        {"disagreements": disagreements, "wrong_calls": wrong_calls},
    )


def check_periodization_calibration(
    rng: np.random.Generator,
    samples: int = 100,
    tol: float = 1e-10,
    max_n: int = 16,
    max_m: int = 8,
) -> CheckResult:
    """Folded-spectrum bracket vs operator-route bracket for shift models."""
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(1, max_m + 1))
        psi = _cvec(rng, n * m)
        rep = shift_model_representation(n, m)
        oracle = scalar_bracket(rep, psi, psi).values
        fast = periodization_bracket(psi, n, m).values
        scale = max(1.0, float(np.abs(oracle).max()))
        worst = max(worst, float(np.abs(fast - oracle).max()) / scale)
    return CheckResult("periodization_calibration", worst <= tol, worst, tol, samples)


def check_zak_calibration(
    rng: np.random.Generator,
    samples: int = 100,
    tol: float = 1e-10,
    max_product: int = 36,
) -> CheckResult:
    """Zak-product bracket vs operator-route bracket for shift-modulation models."""
    shapes = [
        (l, m)
        for l in range(2, max_product // 2 + 1)
        for m in range(2, max_product // 2 + 1)
        if l * m <= max_product
    ]
    worst = 0.0
    for i in range(samples):
        l, m = shapes[int(rng.integers(0, len(shapes)))]
        phi = _cvec(rng, l * m)
        psi = phi if i % 2 == 0 else _cvec(rng, l * m)
        rep = gabor_representation(l, m)
        oracle = scalar_bracket(rep, phi, psi).values
        fast = gabor_bracket_via_zak(phi, psi, l, m).values
        scale = max(1.0, float(np.abs(oracle).max()))
        worst = max(worst, float(np.abs(fast - oracle).max()) / scale)
    return CheckResult("zak_calibration", worst <= tol, worst, tol, samples)


def run_verification_suite(
    group_specs=DEFAULT_GROUP_SPECS,
    seed: int = 0,
    samples: int = 25,
    inject_fault: bool = False,
    max_order: int | None = None,
) -> dict:
    """Run every named check and bundle the results for reporting.

    Abelian-only checks are skipped (with a notice) when no given group is
    commutative.  Returns a JSON-ready dict; overall `passed` is the
    conjunction of the individual verdicts.
    """
    from .groups import DEFAULT_MAX_ORDER

    cap = DEFAULT_MAX_ORDER if max_order is None else max_order
    rng = np.random.default_rng(seed)
    specs = list(group_specs)
    abelian_specs = [
        s for s in specs if group_from_spec(s, max_order=cap).abelian is not None
    ]

    reps = [regular_representation(group_from_spec(s, max_order=cap)) for s in specs]
    models = []
    for kind, a, b in _DEFAULT_MODELS:
        if kind == "shift":
            models.append(shift_model_representation(a, b))
        else:
            models.append(gabor_representation(a, b))

    results = [
        check_representation_validity(reps + models),
        check_gabor_commutativity(),
        check_bracket_gramian(
            specs, rng, samples=samples, inject_fault=inject_fault
        ),
        check_duallemma_suite(rng, samples=max(samples, 25)),
    ]
    notices = []
    if abelian_specs:
        results.append(check_lambda_structure(abelian_specs, rng, pairs=samples))
        results.append(check_support_lemma(abelian_specs, rng, samples=samples))
        results.append(
            check_sandwich_suite(
                abelian_specs, rng, samples=samples, adversarial=max(4, samples // 5)
            )
        )
    else:
        notices.append(
            "no abelian groups given: multiplier, support, and sandwich checks skipped"
        )
    results.append(check_periodization_calibration(rng, samples=samples))
    results.append(check_zak_calibration(rng, samples=samples))

    payload = {
        "seed": seed,
        "groups": specs,
        "passed": all(r.passed for r in results),
        "checks": [r.to_json_dict() for r in results],
    }
    if notices:
        payload["notices"] = notices
    return payload
