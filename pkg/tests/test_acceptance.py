"""Acceptance criteria, one test each, at the stated sizes and tolerances."""

import math
import time

import numpy as np
import pytest

from wignerpol import codec
from wignerpol.charts import (
    Chart,
    ChartedMomentum,
    LightlikeMomentum,
    alt_offset,
    coset_rep,
    coset_rep_alt,
    defining_residual,
    factor_little_group,
    in_overlap,
    little_group,
    overlap_element,
    overlap_element_alt,
    transform_lightlike,
    wigner_phase,
)
from wignerpol.core import IDENTITY, SIGMA, E2Element, e2_matrix, e2_recognize, inv2, lorentz_residual, n_vec, rotation_su2, spinor_map
from wignerpol.massive import MassiveMomentum, parity_massive, su2_residual, wigner_rotation_massive
from wignerpol.polarization import (
    conjugation_identity,
    convert_chart,
    parity_op,
    rotated_parity_action,
    sigma_ops,
    transport_massless,
)
from wignerpol.sampling import (
    make_rng,
    random_charted,
    random_direction,
    random_massive,
    random_polarization,
    random_sl2c,
    random_spin_state,
    random_su2,
)
from wignerpol.verify import run_battery

SWAP = np.array([[0, 1], [1, 0]])
EPS = np.zeros((3, 3, 3))
for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPS[i, j, k], EPS[j, i, k] = 1.0, -1.0


def phi_distance(a, b):
    d = math.fmod(abs(a - b), 4 * math.pi)
    return min(d, 4 * math.pi - d)


def test_homomorphism_suite(criterion):
    rng = make_rng(1)
    t0 = time.perf_counter()
    worst_hom = worst_metric = 0.0
    for _ in range(10):
        A, B = random_sl2c(rng, 10_000), random_sl2c(rng, 10_000)
        LA, LB = spinor_map(A), spinor_map(B)
        worst_hom = max(worst_hom, float(np.max(np.abs(spinor_map(B @ A) - LB @ LA))))
        worst_metric = max(worst_metric, float(np.max(lorentz_residual(LA))))
    elapsed = time.perf_counter() - t0
    ok = worst_hom <= 1e-10 and worst_metric <= 1e-10 and elapsed <= 10
    assert criterion(
        "homomorphism suite", ok, f"1e5 pairs, hom {worst_hom:.2e}, metric {worst_metric:.2e} (<= 1e-10), {elapsed:.2f} s (<= 10 s)"
    )


def test_coset_representative_suite(criterion):
    rng = make_rng(2)
    worst = 0.0
    for i in range(10_000):
        cp = random_charted(rng, Chart("NS"[i % 2]))
        worst = max(worst, defining_residual(cp, "std"), defining_residual(cp, "alt"))
    assert criterion("coset representatives", worst <= 1e-10, f"1e4 momenta, both charts and families, max rel {worst:.2e} (<= 1e-10)")


def test_overlap_identities(criterion):
    margin = 1e-6
    t0 = 2 * math.asin(math.sqrt(margin / 2))  # 1 - |cos(theta)| >= margin
    res = {"std": 0.0, "alt": 0.0, "offset": 0.0, "angle": 0.0}
    for t in np.linspace(t0, math.pi - t0, 30):
        for f in np.linspace(0, 2 * math.pi, 30, endpoint=False):
            for p0 in np.logspace(-3, 3, 7):
                p = LightlikeMomentum(p0, t, f)
                n, s = ChartedMomentum(p, Chart.N), ChartedMomentum(p, Chart.S)
                lhs = coset_rep(s)
                res["std"] = max(res["std"], np.max(np.abs(lhs - coset_rep(n) @ e2_matrix(overlap_element(p)))) / np.max(np.abs(lhs)))
                lhs = coset_rep_alt(s)
                rhs = coset_rep_alt(n) @ e2_matrix(overlap_element_alt(p))
                res["alt"] = max(res["alt"], np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs)))
                for cp in (n, s):
                    lhs = coset_rep_alt(cp)
                    rhs = coset_rep(cp) @ e2_matrix(alt_offset(cp))
                    res["offset"] = max(res["offset"], np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs)))
                    h = e2_recognize(inv2(coset_rep(cp)) @ coset_rep_alt(cp))
                    res["angle"] = max(res["angle"], phi_distance(h.phi, 0.0))
    ok = max(res.values()) <= 1e-10
    detail = ", ".join(f"{k} {v:.2e}" for k, v in res.items())
    assert criterion("overlap identities", ok, f"30x30x7 grid, margin 1e-6 on 1-|cos theta|: {detail} (<= 1e-10)")


def test_little_group_closure(criterion):
    rng = make_rng(4)
    lower = cocycle = 0.0
    for _ in range(10_000):
        cp = random_charted(rng)
        A, B = random_sl2c(rng), random_sl2c(rng)
        f1 = factor_little_group(cp, A)
        lower = max(lower, abs(f1.matrix[1, 0]) / max(1.0, np.max(np.abs(f1.matrix))))
        f2 = factor_little_group(f1.target, B)
        direct = factor_little_group(cp, B @ A, f2.target.chart)
        composed = e2_matrix(f2.element) @ e2_matrix(f1.element)
        ref = e2_matrix(direct.element)
        cocycle = max(cocycle, np.max(np.abs(composed - ref)) / max(1.0, np.max(np.abs(ref))))
    fid = ChartedMomentum(LightlikeMomentum(1.0, 0.0), Chart.N)
    fiducial = 0.0
    for _ in range(1000):
        h = E2Element(rng.uniform(0, 4 * math.pi), complex(*rng.normal(size=2)))
        g = little_group(fid, e2_matrix(h), Chart.N)
        fiducial = max(fiducial, phi_distance(g.phi, h.phi), abs(g.alpha - h.alpha))
    ok = lower <= 1e-9 and cocycle <= 1e-9 and fiducial <= 1e-12
    assert criterion(
        "little-group closure", ok, f"1e4 pairs, lower-left {lower:.2e}, cocycle {cocycle:.2e} (<= 1e-9), fiducial {fiducial:.2e} (<= 1e-12)"
    )


def test_conjugation_identity(criterion):
    worst = 0.0
    for t in np.linspace(0, math.pi - 1e-3, 50):
        for f in np.linspace(0, 2 * math.pi, 50, endpoint=False):
            worst = max(worst, float(np.max(np.abs(conjugation_identity(t, f) + 1j * SIGMA[3]))))
    assert criterion("conjugation identity = -i s3", worst <= 1e-12, f"50x50 grid, max {worst:.2e} (<= 1e-12)")


def test_rotated_parity_action(criterion):
    rng = make_rng(6)
    worst = 0.0
    for chart in Chart:
        for lam in (1, 2, 3):
            for _ in range(200):
                K, _ = rotated_parity_action(random_charted(rng, chart), lam)
                worst = max(worst, float(np.max(np.abs(K - np.exp(1j * math.pi * lam) * SWAP))))
    assert criterion("rotated parity = exp(i pi lam) swap", worst <= 1e-12, f"charts N,S, lam 1..3, max {worst:.2e} (<= 1e-12)")


def _pauli_residuals(rng):
    res = {"hermitian": 0.0, "involution": 0.0, "anticommute": 0.0, "commutator": 0.0, "s2_from_rotated_parity": 0.0, "s2_literal": 0.0}
    for chart in Chart:
        for _ in range(100):
            cp = random_charted(rng, chart)
            S = sigma_ops(cp)
            K, _ = rotated_parity_action(cp)
            for a in range(3):
                res["hermitian"] = max(res["hermitian"], np.max(np.abs(S[a] - S[a].conj().T)))
                res["involution"] = max(res["involution"], np.max(np.abs(S[a] @ S[a] - IDENTITY)))
                for b in range(3):
                    comm = S[a] @ S[b] - S[b] @ S[a]
                    res["commutator"] = max(res["commutator"], np.max(np.abs(comm - 2j * np.einsum("k,kij->ij", EPS[a, b], np.array(S)))))
                    if a != b:
                        res["anticommute"] = max(res["anticommute"], np.max(np.abs(S[a] @ S[b] + S[b] @ S[a])))
            # S2 = i (helicity) exp(i pi e.J) P, with exp(i pi e.J) P = -S1
            res["s2_from_rotated_parity"] = max(res["s2_from_rotated_parity"], np.max(np.abs(S[1] - 1j * S[2] @ K)))
            res["s2_literal"] = max(res["s2_literal"], np.max(np.abs(S[1] - 1j * S[2] @ S[0])))
    return res


def test_pauli_algebra(criterion):
    res = _pauli_residuals(make_rng(7))
    core = {k: v for k, v in res.items() if k != "s2_literal"}
    ok = max(core.values()) <= 1e-12
    detail = ", ".join(f"{k} {v:.1e}" for k, v in core.items())
    assert criterion("Pauli algebra of sigma_ops", ok, f"100 momenta per chart: {detail} (<= 1e-12)")


@pytest.mark.xfail(strict=True, reason="S2 = i S3 S1 contradicts [S1, S2] = 2i S3 with S = Pauli; i s3 s1 = -s2")
def test_pauli_literal_s2_relation(criterion):
    res = _pauli_residuals(make_rng(7))
    r = res["s2_literal"]
    assert criterion("Pauli algebra, literal S2 = i S3 S1", r <= 1e-12, f"max {r:.2e} (<= 1e-12); i s3 s1 = -s2, see README")


def test_parity_involution(criterion):
    rng = make_rng(8)
    bad_massless = sum(parity_op(parity_op(st)) != st for st in (random_polarization(rng, 1 + i % 3) for i in range(1000)))
    bad_massive = sum(parity_massive(parity_massive(st)) != st for st in (random_spin_state(rng) for _ in range(1000)))
    ok = bad_massless == 0 and bad_massive == 0
    assert criterion("parity involution (exact)", ok, f"1e3 massless mismatches {bad_massless}, 1e3 massive mismatches {bad_massive}")


def test_transport_coherence(criterion):
    rng = make_rng(9)
    path = norm = mag = 0.0
    done = 0
    while done < 1000:
        st = random_polarization(rng, 1 + done % 3)
        A = random_sl2c(rng)
        out = transport_massless(st, A)
        norm = max(norm, abs(float(np.linalg.norm(out.amps)) - 1))
        mag = max(mag, float(np.max(np.abs(np.abs(out.amps) - np.abs(st.amps)))))
        if in_overlap(transform_lightlike(st.cp.p, A)):
            via = convert_chart(transport_massless(st, A, Chart.N))
            path = max(path, float(np.max(np.abs(via.amps - transport_massless(st, A, Chart.S).amps))))
            done += 1
    su2 = max(su2_residual(wigner_rotation_massive(random_massive(rng), random_sl2c(rng))) for _ in range(1000))
    rest = 0.0
    for _ in range(1000):
        a = random_su2(rng)
        rest = max(rest, float(np.max(np.abs(wigner_rotation_massive(MassiveMomentum.at_rest(random_massive(rng).m), a) - a))))
    ok = path <= 1e-10 and norm <= 1e-12 and mag <= 1e-12 and su2 <= 1e-10 and rest <= 1e-12
    assert criterion(
        "transport coherence",
        ok,
        f"chart path {path:.1e} (<= 1e-10), norm {norm:.1e}, |c| {mag:.1e} (<= 1e-12), SU(2) {su2:.1e} (<= 1e-10), rest {rest:.1e} (<= 1e-12)",
    )


def test_double_cover(criterion):
    rng = make_rng(10)
    bad = 0
    for i in range(1000):
        R = rotation_su2(n_vec(*random_direction(rng)), 2 * math.pi)
        bad += not np.array_equal(R, -IDENTITY)
        st = random_polarization(rng, 1 + i % 3)
        h = factor_little_group(st.cp, R, st.cp.chart).element
        bad += wigner_phase(h, st.lam) != 1 or wigner_phase(h, -st.lam) != 1
        bad += transport_massless(st, R, st.cp.chart) != st
    assert criterion("double cover (exact)", bad == 0, f"1e3 full turns: element == -I, phases == 1, states unchanged; mismatches {bad}")


def test_full_verify_battery(criterion):
    t0 = time.perf_counter()
    first = run_battery(42, 1000)
    elapsed = time.perf_counter() - t0
    second = run_battery(42, 1000)
    same = codec.dumps(first) == codec.dumps(second)
    ok = first["passed"] and same and elapsed < 60
    failed = ",".join(first["failed"]) or "none"
    assert criterion(
        "full verify battery", ok, f"seed 42, 1000 samples, {len(first['checks'])} checks, failed: {failed}, {elapsed:.1f} s (< 60 s), deterministic {same}"
    )
