"""Randomized and grid-based invariant battery.

Every check returns the largest residual it saw; a check passes when that
residual is at most its threshold. Counting checks (exact identities) report
the number of mismatches against a threshold of 0. Each check draws from its
own child of ``SeedSequence(seed)``, so a report depends only on the seed,
the sample count and the thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import codec
from .charts import (
    Chart,
    ChartedMomentum,
    LightlikeMomentum,
    alt_offset,
    charted,
    coset_rep,
    coset_rep_alt,
    defining_residual,
    factor_little_group,
    in_overlap,
    little_group,
    overlap_element,
    overlap_element_alt,
)
from .core import (
    IDENTITY,
    SIGMA,
    E2Element,
    det2,
    e2_matrix,
    e2_recognize,
    inv2,
    lorentz_residual,
    minkowski_dot,
    n_vec,
    pauli_form,
    rotation_su2,
    spinor_map,
    su2_a,
    tilde,
    transform_four_vector,
)
from .errors import InputError, KinematicsError
from .massive import (
    MassiveMomentum,
    boost_massive,
    parity_massive,
    su2_residual,
    transport_massive,
    wigner_D,
    wigner_rotation_massive,
)
from .polarization import (
    conjugation_identity,
    convert_chart,
    parity_op,
    rotated_parity_action,
    sigma_ops,
    transport_massless,
)
from .sampling import (
    random_charted,
    random_direction,
    random_massive,
    random_polarization,
    random_sl2c,
    random_spin_state,
    random_su2,
)

MAX_SAMPLES = 10**7
SWAP = np.array([[0, 1], [1, 0]], dtype=np.complex128)
EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPS3[_i, _j, _k], EPS3[_j, _i, _k] = 1.0, -1.0

Runner = Callable[[np.random.Generator, int], float]


@dataclass(frozen=True)
class Check:
    name: str
    module: str
    threshold: float
    run: Runner


def _maxabs(x) -> float:
    return float(np.max(np.abs(x)))


def _rel(a, b) -> float:
    return _maxabs(np.asarray(a) - np.asarray(b)) / max(1.0, _maxabs(b))


def _phi_distance(a: float, b: float) -> float:
    d = math.fmod(abs(a - b), 4 * math.pi)
    return min(d, 4 * math.pi - d)


# -- core algebra -----------------------------------------------------------


def check_homomorphism(rng, n):
    A, B = random_sl2c(rng, n), random_sl2c(rng, n)
    return _maxabs(spinor_map(B @ A) - spinor_map(B) @ spinor_map(A))


def check_metric(rng, n):
    return float(np.max(lorentz_residual(spinor_map(random_sl2c(rng, n)))))


def check_kernel(rng, n):
    A = random_sl2c(rng, n)
    return _maxabs(spinor_map(-A) - spinor_map(A))


def check_pauli_det(rng, n):
    p = rng.normal(size=(n, 4)) * np.exp(rng.uniform(-3, 3, size=(n, 1)))
    d = np.real(det2(pauli_form(p)))
    return float(np.max(np.abs(d + minkowski_dot(p, p)) / np.sum(p * p, axis=-1)))


def check_pauli_inverse(rng, n):
    from .core import four_vector_of

    p = rng.normal(size=(n, 4))
    return _maxabs(four_vector_of(pauli_form(p)) - p)


def check_su2_a_conjugation(rng, n):
    grid_t = np.linspace(-math.pi, math.pi, 20)
    grid_f = np.linspace(0, 2 * math.pi, 20, endpoint=False)
    worst = 0.0
    for t in grid_t:
        for f in grid_f:
            a = su2_a(t, f)
            for tp in grid_t:
                lhs = a @ np.einsum("k,kij->ij", n_vec(tp, f), SIGMA[1:]) @ a.conj().T
                rhs = np.einsum("k,kij->ij", n_vec(tp + t, f), SIGMA[1:])
                worst = max(worst, _maxabs(lhs - rhs))
    return worst


def check_su2_a_periodicity(rng, n):
    worst = 0.0
    for _ in range(n):
        t, f = rng.uniform(-2 * math.pi, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        worst = max(worst, _maxabs(su2_a(-t, math.pi + f) - su2_a(t, f)))
    return worst


def check_e2_roundtrip(rng, n):
    worst = 0.0
    for _ in range(n):
        h = E2Element(rng.uniform(0, 4 * math.pi), complex(*rng.normal(size=2)))
        g = e2_recognize(e2_matrix(h))
        worst = max(worst, _phi_distance(g.phi, h.phi), abs(g.alpha - h.alpha))
    return worst


# -- massive sector ---------------------------------------------------------


def check_massive_su2(rng, n):
    return max(su2_residual(wigner_rotation_massive(random_massive(rng), random_sl2c(rng))) for _ in range(n))


def check_massive_rest(rng, n):
    worst = 0.0
    for _ in range(n):
        a = random_su2(rng)
        p = MassiveMomentum.at_rest(random_massive(rng).m)
        worst = max(worst, _maxabs(wigner_rotation_massive(p, a) - a))
    return worst


def check_massive_boost(rng, n):
    worst = 0.0
    for _ in range(n):
        p = random_massive(rng)
        img = transform_four_vector(boost_massive(p), [p.m, 0, 0, 0])
        worst = max(worst, _maxabs(img - p.four_vector) / p.p0)
    return worst


def check_massive_cocycle(rng, n):
    worst = 0.0
    for _ in range(n):
        st = random_spin_state(rng)
        A, B = random_sl2c(rng), random_sl2c(rng)
        two = transport_massive(transport_massive(st, A), B)
        one = transport_massive(st, B @ A)
        worst = max(worst, _maxabs(two.amps - one.amps), _rel(two.momentum.four_vector, one.momentum.four_vector))
    return worst


def check_massive_norm(rng, n):
    worst = 0.0
    for _ in range(n):
        out = transport_massive(random_spin_state(rng), random_sl2c(rng))
        worst = max(worst, abs(float(np.linalg.norm(out.amps)) - 1.0))
    return worst


def check_massive_parity_boost(rng, n):
    worst = 0.0
    for _ in range(n):
        A = random_sl2c(rng)
        p = random_massive(rng).four_vector
        lhs = transform_four_vector(inv2(A).conj().T, tilde(p))
        rhs = tilde(transform_four_vector(A, p))
        worst = max(worst, _rel(lhs, rhs))
    return worst


def check_massive_parity_involution(rng, n):
    bad = 0
    for _ in range(n):
        st = random_spin_state(rng)
        bad += parity_massive(parity_massive(st)) != st
    return float(bad)


def check_wigner_D_hom(rng, n):
    worst = 0.0
    for i in range(n):
        s = (i % 21) / 2
        a, b = random_su2(rng), random_su2(rng)
        worst = max(worst, _maxabs(wigner_D(b @ a, s) - wigner_D(b, s) @ wigner_D(a, s)))
    return worst


def check_wigner_D_unitary(rng, n):
    worst = 0.0
    for i in range(n):
        D = wigner_D(random_su2(rng), (i % 21) / 2)
        worst = max(worst, _maxabs(D.conj().T @ D - np.eye(len(D))))
    return worst


# -- massless charts --------------------------------------------------------


def check_coset_defining(rng, n):
    worst = 0.0
    for _ in range(n):
        cp = random_charted(rng)
        worst = max(worst, defining_residual(cp, "std"), defining_residual(cp, "alt"))
    return worst


OVERLAP_MARGIN = 1e-6


def _overlap_grid(margin: float = OVERLAP_MARGIN):
    """30 x 30 x 7 grid with ``1 - |cos(theta)| >= margin`` at the extreme rows."""
    t0 = 2.0 * math.asin(math.sqrt(0.5 * margin))
    for t in np.linspace(t0, math.pi - t0, 30):
        for f in np.linspace(0, 2 * math.pi, 30, endpoint=False):
            for p0 in np.logspace(-3, 3, 7):
                yield LightlikeMomentum(p0, t, f)


def check_overlap_std(rng, n):
    worst = 0.0
    for p in _overlap_grid():
        lhs = coset_rep(ChartedMomentum(p, Chart.S))
        rhs = coset_rep(ChartedMomentum(p, Chart.N)) @ e2_matrix(overlap_element(p))
        worst = max(worst, _maxabs(lhs - rhs) / _maxabs(lhs))
    return worst


def check_overlap_alt(rng, n):
    worst = 0.0
    for p in _overlap_grid():
        lhs = coset_rep_alt(ChartedMomentum(p, Chart.S))
        rhs = coset_rep_alt(ChartedMomentum(p, Chart.N)) @ e2_matrix(overlap_element_alt(p))
        worst = max(worst, _maxabs(lhs - rhs) / _maxabs(lhs))
    return worst


def check_alt_offset(rng, n):
    worst = 0.0
    for p in _overlap_grid():
        for chart in Chart:
            cp = ChartedMomentum(p, chart)
            lhs = coset_rep_alt(cp)
            rhs = coset_rep(cp) @ e2_matrix(alt_offset(cp))
            worst = max(worst, _maxabs(lhs - rhs) / _maxabs(lhs))
    return worst


def check_alt_angle(rng, n):
    worst = 0.0
    for p in _overlap_grid():
        for chart in Chart:
            cp = ChartedMomentum(p, chart)
            h = e2_recognize(inv2(coset_rep(cp)) @ coset_rep_alt(cp))
            worst = max(worst, _phi_distance(h.phi, 0.0))
    return worst


def check_lower_left(rng, n):
    worst = 0.0
    for _ in range(n):
        fac = factor_little_group(random_charted(rng), random_sl2c(rng))
        worst = max(worst, abs(fac.matrix[1, 0]) / max(1.0, _maxabs(fac.matrix)))
    return worst


def check_e2_cocycle(rng, n):
    worst = 0.0
    for _ in range(n):
        cp = random_charted(rng)
        A, B = random_sl2c(rng), random_sl2c(rng)
        first = factor_little_group(cp, A)
        second = factor_little_group(first.target, B)
        direct = factor_little_group(cp, B @ A, second.target.chart)
        composed = e2_matrix(second.element) @ e2_matrix(first.element)
        worst = max(worst, _rel(composed, e2_matrix(direct.element)))
    return worst


def check_fiducial_e2(rng, n):
    cp = ChartedMomentum(LightlikeMomentum(1.0, 0.0, 0.0), Chart.N)
    worst = 0.0
    for _ in range(n):
        h = E2Element(rng.uniform(0, 4 * math.pi), complex(*rng.normal(size=2)))
        g = little_group(cp, e2_matrix(h), Chart.N)
        worst = max(worst, _phi_distance(g.phi, h.phi), abs(g.alpha - h.alpha))
    return worst


def check_helicity_p0(rng, n):
    worst = 0.0
    for _ in range(max(1, n // 10)):
        t, f = random_direction(rng)
        a = random_su2(rng)
        phis = [little_group(charted(LightlikeMomentum(p0, t, f)), a).phi for p0 in np.logspace(-3, 3, 13)]
        worst = max(worst, max(_phi_distance(x, phis[0]) for x in phis))
    return worst


# -- polarization space -----------------------------------------------------


def check_conjugation_identity(rng, n):
    target = -1j * SIGMA[3]
    worst = 0.0
    for t in np.linspace(0, math.pi - 1e-3, 50):
        for f in np.linspace(0, 2 * math.pi, 50, endpoint=False):
            worst = max(worst, _maxabs(conjugation_identity(t, f) - target))
    return worst


def check_rotated_parity(rng, n):
    worst = 0.0
    for i in range(n):
        lam = 1 + i % 3
        K, _ = rotated_parity_action(random_charted(rng, Chart("NS"[i % 2])), lam)
        worst = max(worst, _maxabs(K - (-1) ** lam * SWAP))
    return worst


def check_sigma_algebra(rng, n):
    worst = 0.0
    for i in range(min(n, 200)):
        S = sigma_ops(random_charted(rng, Chart("NS"[i % 2])))
        for a in range(3):
            worst = max(worst, _maxabs(S[a] - S[a].conj().T), _maxabs(S[a] @ S[a] - IDENTITY))
            for b in range(3):
                comm = S[a] @ S[b] - S[b] @ S[a]
                worst = max(worst, _maxabs(comm - 2j * np.einsum("k,kij->ij", EPS3[a, b], np.array(S))))
                if a != b:
                    worst = max(worst, _maxabs(S[a] @ S[b] + S[b] @ S[a]))
        worst = max(worst, _maxabs(S[0] - SIGMA[1]), _maxabs(S[1] - SIGMA[2]), _maxabs(S[2] - SIGMA[3]))
    return worst


def check_sigma2_structure(rng, n):
    """S2 against i*(helicity)*(exp(i pi e.J) P) at lam = 1."""
    worst = 0.0
    for i in range(min(n, 200)):
        cp = random_charted(rng, Chart("NS"[i % 2]))
        K, _ = rotated_parity_action(cp, 1)
        _, S2, S3 = sigma_ops(cp)
        worst = max(worst, _maxabs(S2 - 1j * S3 @ K))
    return worst


def check_transport_norm(rng, n):
    worst = 0.0
    for i in range(n):
        st = random_polarization(rng, 1 + i % 3)
        out = transport_massless(st, random_sl2c(rng))
        worst = max(worst, abs(float(np.linalg.norm(out.amps)) - 1.0))
        worst = max(worst, _maxabs(np.abs(out.amps) - np.abs(st.amps)))
    return worst


def check_chart_path(rng, n):
    worst = 0.0
    done = 0
    while done < n:
        st = random_polarization(rng, 1 + done % 3)
        A = random_sl2c(rng)
        via_n = transport_massless(st, A, Chart.N) if _lands_in_overlap(st, A) else None
        if via_n is None:
            continue
        direct = transport_massless(st, A, Chart.S)
        worst = max(worst, _maxabs(convert_chart(via_n).amps - direct.amps))
        done += 1
    return worst


def _lands_in_overlap(st, A) -> bool:
    from .charts import transform_lightlike

    return in_overlap(transform_lightlike(st.cp.p, A))


def check_parity_transport(rng, n):
    worst = 0.0
    for _ in range(n):
        st = random_polarization(rng)
        A = random_sl2c(rng)
        lhs = parity_op(transport_massless(st, A))
        rhs = transport_massless(parity_op(st), inv2(A).conj().T, lhs.cp.chart)
        overlap = np.vdot(rhs.amps, lhs.amps)
        phase = overlap / abs(overlap)
        worst = max(worst, _maxabs(lhs.amps - phase * rhs.amps), _rel(lhs.cp.p.four_vector, rhs.cp.p.four_vector))
    return worst


def check_parity_involution(rng, n):
    bad = 0
    for i in range(n):
        st = random_polarization(rng, 1 + i % 3)
        bad += parity_op(parity_op(st)) != st
    return float(bad)


def check_convert_roundtrip(rng, n):
    worst = 0.0
    done = 0
    while done < n:
        st = random_polarization(rng)
        if not in_overlap(st.cp.p):
            continue
        worst = max(worst, _maxabs(convert_chart(convert_chart(st)).amps - st.amps))
        done += 1
    return worst


def check_double_cover(rng, n):
    """Count failures of: a 2 pi rotation is exactly -1 and transports states to themselves."""
    bad = 0
    for i in range(n):
        R = rotation_su2(n_vec(*random_direction(rng)), 2 * math.pi)
        bad += not np.array_equal(R, -IDENTITY)
        st = random_polarization(rng, 1 + i % 3)
        bad += transport_massless(st, R, st.cp.chart) != st
    return float(bad)


def check_json_roundtrip(rng, n):
    bad = 0
    for i in range(n):
        objs = [
            (codec.polarization_to_json, codec.polarization_from_json, random_polarization(rng, 1 + i % 3)),
            (codec.spin_state_to_json, codec.spin_state_from_json, random_spin_state(rng)),
            (codec.charted_to_json, codec.charted_from_json, random_charted(rng)),
            (codec.e2_to_json, codec.e2_from_json, E2Element(rng.uniform(0, 4 * math.pi), complex(*rng.normal(size=2)))),
            (codec.matrix_to_json, codec.matrix_from_json, random_sl2c(rng)),
            (codec.four_vector_to_json, codec.four_vector_from_json, rng.normal(size=4)),
        ]
        for enc, dec, x in objs:
            once = codec.dumps(enc(x))
            bad += codec.dumps(enc(dec(codec.json.loads(once)))) != once
        # parity-flipped momenta serialize through their effective angles
        st = parity_op(random_polarization(rng))
        once = codec.dumps(codec.polarization_to_json(st))
        bad += codec.dumps(codec.polarization_to_json(codec.polarization_from_json(codec.json.loads(once)))) != once
    return float(bad)


CHECKS: tuple[Check, ...] = (
    Check("homomorphism", "core_algebra", 1e-10, check_homomorphism),
    Check("metric_preservation", "core_algebra", 1e-10, check_metric),
    Check("kernel_sign", "core_algebra", 1e-12, check_kernel),
    Check("pauli_determinant", "core_algebra", 1e-10, check_pauli_det),
    Check("pauli_inverse", "core_algebra", 1e-10, check_pauli_inverse),
    Check("su2_a_conjugation", "core_algebra", 1e-12, check_su2_a_conjugation),
    Check("su2_a_periodicity", "core_algebra", 1e-12, check_su2_a_periodicity),
    Check("e2_roundtrip", "core_algebra", 1e-12, check_e2_roundtrip),
    Check("massive_wigner_su2", "massive_sector", 1e-10, check_massive_su2),
    Check("massive_rest_reduction", "massive_sector", 1e-12, check_massive_rest),
    Check("massive_standard_boost", "massive_sector", 1e-10, check_massive_boost),
    Check("massive_cocycle", "massive_sector", 1e-10, check_massive_cocycle),
    Check("massive_norm", "massive_sector", 1e-12, check_massive_norm),
    Check("massive_parity_boost", "massive_sector", 1e-10, check_massive_parity_boost),
    Check("massive_parity_involution", "massive_sector", 0.0, check_massive_parity_involution),
    Check("wigner_D_homomorphism", "massive_sector", 1e-9, check_wigner_D_hom),
    Check("wigner_D_unitarity", "massive_sector", 1e-10, check_wigner_D_unitary),
    Check("coset_defining", "massless_charts", 1e-10, check_coset_defining),
    Check("overlap_std", "massless_charts", 1e-10, check_overlap_std),
    Check("overlap_alt", "massless_charts", 1e-10, check_overlap_alt),
    Check("alt_offset", "massless_charts", 1e-10, check_alt_offset),
    Check("alt_rotation_angle", "massless_charts", 1e-10, check_alt_angle),
    Check("little_group_lower_left", "massless_charts", 1e-9, check_lower_left),
    Check("little_group_cocycle", "massless_charts", 1e-9, check_e2_cocycle),
    Check("little_group_fiducial", "massless_charts", 1e-12, check_fiducial_e2),
    Check("helicity_p0_invariance", "massless_charts", 1e-10, check_helicity_p0),
    Check("conjugation_identity", "polarization_space", 1e-12, check_conjugation_identity),
    Check("rotated_parity_action", "polarization_space", 1e-12, check_rotated_parity),
    Check("sigma_algebra", "polarization_space", 1e-12, check_sigma_algebra),
    Check("sigma2_structure", "polarization_space", 1e-12, check_sigma2_structure),
    Check("transport_norm_helicity", "polarization_space", 1e-12, check_transport_norm),
    Check("chart_path_independence", "polarization_space", 1e-10, check_chart_path),
    Check("parity_transport", "polarization_space", 1e-10, check_parity_transport),
    Check("parity_involution", "polarization_space", 0.0, check_parity_involution),
    Check("convert_roundtrip", "polarization_space", 1e-14, check_convert_roundtrip),
    Check("double_cover_exact", "polarization_space", 0.0, check_double_cover),
    Check("json_roundtrip", "harness_cli", 0.0, check_json_roundtrip),
)

CHECK_NAMES = tuple(c.name for c in CHECKS)


def run_battery(seed: int, samples: int, overrides: dict[str, float] | None = None) -> dict:
    """Run every check and return a JSON-ready report."""
    if isinstance(samples, bool) or not isinstance(samples, int) or not 1 <= samples <= MAX_SAMPLES:
        raise InputError(f"samples must be an integer in [1, {MAX_SAMPLES}], got {samples!r}")
    if not 0 <= seed < 2**64:
        raise InputError("seed must be a 64-bit unsigned integer")
    overrides = dict(overrides or {})
    unknown = set(overrides) - set(CHECK_NAMES)
    if unknown:
        raise InputError(f"unknown check names in tolerance overrides: {sorted(unknown)}")
    children = np.random.SeedSequence(seed).spawn(len(CHECKS))
    rows = []
    for check, ss in zip(CHECKS, children):
        threshold = float(overrides.get(check.name, check.threshold))
        row = {"name": check.name, "module": check.module, "threshold": threshold}
        try:
            resid = float(check.run(np.random.Generator(np.random.PCG64(ss)), samples))
            row["max_residual"] = resid
            row["passed"] = bool(resid <= threshold)
        except KinematicsError as exc:
            row["max_residual"] = None
            row["passed"] = False
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    return {
        "seed": seed,
        "samples": samples,
        "checks": rows,
        "failed": [r["name"] for r in rows if not r["passed"]],
        "passed": all(r["passed"] for r in rows),
    }


__all__ = ["CHECKS", "CHECK_NAMES", "Check", "run_battery", "MAX_SAMPLES"]
