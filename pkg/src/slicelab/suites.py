"""Seeded verification suites behind ``slicelab verify``.

Each suite returns an ordered list of :class:`Check` records.  Sampling
draws from a generator seeded by ``(seed, suite index)``, so the records
do not depend on how many suites run or in which thread.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ._config import max_threads
from .counterexample import (
    WITNESS_PATH,
    BranchFunction,
    branch_residual,
    counterexample_report,
    cut_jump,
    omega_phi_tilde,
    psi_phi_model,
    psi_s_eval,
    branch_closed_forms,
)
from .errors import ConfigParse, LiftNotContained
from .extension import Disk, HolomorphicSliceData, cr_residual, extend_from_disk, holo_eval, sigma_series_eval
from .geometry import (
    PhiDistance,
    dist_to_slice,
    dumbbell,
    ellipse_book,
    euclidean_ball,
    is_real_connected_sampled,
    sigma_ball,
    sigma_ball_contains,
    sigma_distance,
    slice_inradius,
)
from .paths import ComplexPath
from .pathslice import path_repformula, path_slice_consistency, polynomial_model, lifting_witness_search
from .quaternion import (
    I_UNIT,
    J_UNIT,
    ImaginaryUnit,
    InterpMatrix,
    Quaternion,
    SlicePoint,
    embed,
    exp_unit,
    interp_matrix_inv,
    orthogonal_unit,
    qinv,
    random_quaternion,
    random_unit,
    rational_unit,
    split_basis,
    unit_of,
)
from .slicefun import (
    disk_sampler,
    eval_from_stem,
    partition_coefficients,
    random_triples,
    repformula_matrix,
    repformula_point,
    repformula_split,
    right_polynomial,
    sliceness_check,
    on_points,
    stem_from_pair,
    StemFunction,
)

__all__ = ["Check", "SUITES", "run_suites", "suite_names"]

_OPS: dict[str, Callable[[float, float], bool]] = {
    "<=": lambda v, t: v <= t,
    ">=": lambda v, t: v >= t,
    "==": lambda v, t: v == t,
}


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    anchor: str
    op: str = "<="

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value)) and _OPS[self.op](self.value, self.tolerance)

    def record(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "value": float(self.value),
            "tolerance": float(self.tolerance),
            "op": self.op,
            "anchor": self.anchor,
        }


def _pairs(rng, n, min_sep=0.1):
    out = []
    while len(out) < n:
        J, K = random_unit(rng), random_unit(rng)
        if float((J - K).norm()) > min_sep:
            out.append((J, K))
    return out


def _rational_pairs(rng, n):
    out = []
    while len(out) < n:
        a, b = (rng.integers(-9, 10, size=3) for _ in range(2))
        if not a.any() or not b.any():
            continue
        J, K = rational_unit(*map(int, a)), rational_unit(*map(int, b))
        if J != K:
            out.append((J, K))
    return out


def _orth_pair(rng):
    I = random_unit(rng)
    v = random_unit(rng)
    w = v - float(v.dot(I)) * I
    n = float(w.norm())
    return I, ImaginaryUnit.normalized(w.x / n, w.y / n, w.z / n)


# ---------------------------------------------------------------------------
# algebra


def suite_algebra(rng: np.random.Generator) -> list[Check]:
    pairs = _pairs(rng, 1000)
    ident = max(
        (interp_matrix_inv(J, K) @ InterpMatrix.interpolation(J, K)).max_deviation(InterpMatrix.identity())
        for J, K in pairs
    )
    jk = max(float((qinv(J - K) * J + K * qinv(J - K)).norm()) for J, K in pairs)
    split = 0.0
    for _ in range(1000):
        a = random_quaternion(rng)
        I, J = _orth_pair(rng)
        a1, a2 = split_basis(a, I, J)
        split = max(split, float((a1 + a2 * J - a).norm()))
    unit_dev = 0.0
    for _ in range(1000):
        I = random_unit(rng)
        x, y = rng.normal(), abs(rng.normal()) + 1e-3
        unit_dev = max(unit_dev, float((unit_of(embed(I, x, y)) - I).norm()))
    exact_fail = 0
    for J, K in _rational_pairs(rng, 100):
        M = interp_matrix_inv(J, K) @ InterpMatrix.interpolation(J, K)
        if M != InterpMatrix.identity():
            exact_fail += 1
        elif qinv(J - K) * J != -(K * qinv(J - K)):
            exact_fail += 1
    return [
        Check("interp_inverse_identity", ident, 1e-12, "interpolation matrix inverse"),
        Check("jk_identity", jk, 1e-12, "(J-K)^-1 J = -K (J-K)^-1"),
        Check("split_round_trip", split, 1e-13, "a = a1 + a2 J splitting"),
        Check("unit_of_embed", unit_dev, 1e-12, "slice coordinates"),
        Check("rational_exact_failures", exact_fail, 0, "exact rational mode", "=="),
    ]


# ---------------------------------------------------------------------------
# slice functions


def _poly(rng, deg):
    return [random_quaternion(rng, 0.5) for _ in range(deg + 1)]


def _random_upper_path(rng, n_vertices=4, scale=0.8) -> ComplexPath:
    pts = [(float(rng.uniform(-0.5, 0.5)), 0.0)]
    for _ in range(n_vertices - 1):
        x, y = pts[-1]
        pts.append((x + float(rng.uniform(-scale, scale)) / 2, abs(y + float(rng.uniform(-scale, scale)) / 2)))
    if pts[-1] == pts[-2]:
        pts[-1] = (pts[-1][0] + 0.1, pts[-1][1])
    return ComplexPath(tuple(pts))


def suite_slice(rng: np.random.Generator) -> list[Check]:
    forms = 0.0
    part = 0.0
    recon = 0.0
    for _ in range(1000):
        I = random_unit(rng)
        J, K = _pairs(rng, 1)[0]
        fJ, fK = random_quaternion(rng), random_quaternion(rng)
        a = repformula_point(I, J, K, fJ, fK)
        b = repformula_matrix(I, J, K, fJ, fK)
        c = repformula_split(I, J, K, fJ, fK)
        forms = max(forms, float((a - b).norm()), float((b - c).norm()), float((a - c).norm()))
        p, q = partition_coefficients(I, J, K)
        part = max(part, float((p + q - 1.0).norm()))
        F = stem_from_pair(J, K, fJ, fK)
        st = StemFunction(lambda x, y, F=F: F)
        recon = max(
            recon,
            float((eval_from_stem(st, SlicePoint.of(J, 0.0, 1.0)) - fJ).norm()),
            float((eval_from_stem(st, SlicePoint.of(K, 0.0, 1.0)) - fK).norm()),
        )
    ball = euclidean_ball(0.0, 2.0)
    worst_poly = 0.0
    for k in range(8):
        coeffs = _poly(rng, int(rng.integers(0, 9)))
        triples = random_triples(rng, 125, disk_sampler(1.99))
        worst_poly = max(worst_poly, sliceness_check(on_points(right_polynomial(coeffs)), ball, triples, 1e-10).max_residual)
    path_res = _polynomial_path_battery(rng, 50)
    return [
        Check("form_equivalence", forms, 1e-12, "matrix, split and linear forms agree"),
        Check("coefficient_partition", part, 1e-12, "interpolation coefficients sum to 1"),
        Check("stem_reconstruction", recon, 1e-12, "stem from two slices"),
        Check("polynomial_sliceness", worst_poly, 1e-10, "right polynomials are slice functions"),
        Check("polynomial_path_formula", path_res, 1e-10, "path representation formula"),
    ]


def _polynomial_path_battery(rng, n: int, n_path: int = 64) -> float:
    ball = euclidean_ball(0.0, 2.0)
    worst = 0.0
    for _ in range(n):
        f = polynomial_model(_poly(rng, int(rng.integers(0, 9))), ball)
        g = _random_upper_path(rng)
        I = random_unit(rng)
        J, K = _pairs(rng, 1)[0]
        worst = max(worst, path_repformula(f, g, I, J, K, n_path).residual)
    return worst


# ---------------------------------------------------------------------------
# extension


def _sigma_ball_probe(rng, I, r=1.0):
    """Uniform-ish point of the sigma-ball of radius r about 0, on a random slice."""
    K = random_unit(rng)
    while True:
        x, y = rng.uniform(-r, r), rng.uniform(0, r)
        if x * x + y * y < r * r * 0.98:
            return K, float(x), float(y)


def suite_extension(rng: np.random.Generator) -> list[Check]:
    I = random_unit(rng)
    mono = 0.0
    for k in range(9):
        coeffs = [0.0] * k + [1.0]
        E = extend_from_disk(HolomorphicSliceData.series(I, 0j, 1.0, coeffs))
        for _ in range(56 if k else 52):
            K, x, y = _sigma_ball_probe(rng, I)
            q = embed(K, x, y)
            mono = max(mono, float((E(q) - q ** k).norm()))
    coeffs = [random_quaternion(rng, 0.5) for _ in range(9)]
    h = HolomorphicSliceData.series(I, 0j, 1.0, coeffs)
    E = extend_from_disk(h)
    repro = 0.0
    for _ in range(500):
        K, x, y = _sigma_ball_probe(rng, I)
        q = embed(I, x, y)
        repro = max(repro, float((E(q) - holo_eval(h, complex(x, y)).value).norm()))
    cr = 0.0
    for _ in range(10):
        J = random_unit(rng)
        data = E.restriction(J, (Disk(0j, 0.9),))
        for _ in range(10):
            _, x, y = _sigma_ball_probe(rng, I, 0.85)
            cr = max(cr, cr_residual(data, complex(x, y if rng.uniform() < 0.5 else -y)))
    agree = 0
    total = 0
    series = [Quaternion(0.5 ** n, 0.0, 0.0, 0.0) for n in range(400)]  # radius 2 about p
    p = embed(I, 0.3, 0.4)
    while total < 1000:
        q = embed(random_unit(rng), *rng.uniform(-3, 3, size=2))
        d = sigma_distance(p, q)
        if 0.9 * 2.0 < d < 1.1 * 2.0:
            continue
        total += 1
        flag = sigma_series_eval(p, series, q).flag
        inside = sigma_ball_contains(p, 2.0, q)
        agree += (flag == "convergent") == inside
    return [
        Check("monomial_coherence", mono, 1e-10, "disk data extends to the sigma-ball"),
        Check("defining_slice_reproduction", repro, 1e-12, "extension restricts to the data"),
        Check("extension_cr_residual", cr, 1e-6, "slice Cauchy-Riemann equation"),
        Check("series_flag_mismatches", total - agree, 0, "sigma-ball convergence domain", "=="),
    ]


# ---------------------------------------------------------------------------
# branch


def suite_branch(rng: np.random.Generator) -> list[Check]:
    J = random_unit(rng)
    vals = 0.0
    for s in (0.0, 0.25, 0.75, 1.0):
        B = BranchFunction(J, s)
        expected = branch_closed_forms(J, s)
        vals = max(
            vals,
            float((psi_s_eval(B, -J) - expected["-J"]).norm()),
            float((psi_s_eval(B, J) - expected["J"]).norm()),
            float((psi_s_eval(B, J * 0.5 + 1.0) - expected["J/2+1"]).norm()),
        )
    cert = 0.0
    for s in (0.0, 0.25, 0.5, 0.75, 1.0):
        B = BranchFunction(J, s)
        n = 0
        while n < 200:
            z = complex(*rng.uniform(-3, 3, size=2))
            if B.on_cut(z) or abs(2 * z - 1j) < 1e-6:
                continue
            cert = max(cert, branch_residual(B, z))
            n += 1
    jump = 0.0
    for s in (0.0, 0.25, 0.5, 0.75, 1.0):
        B = BranchFunction(J, s)
        for lam in (0.5, 1.0, 2.0):
            # |2z - J| = 2 lam on the probe circle
            cj = cut_jump(B, lam)
            jump = max(jump, float((cj.jump - 2 * math.sqrt(2 * lam) * exp_unit(J, cj.alpha / 2)).norm()))
    return [
        Check("branch_values", vals, 1e-12, "closed-form branch values at -J, J, J/2+1"),
        Check("branch_certificate", cert, 1e-12, "Psi_s(z)^2 = 2z - J"),
        Check("cut_jump", jump, 1e-6, "jump across the cut ray"),
    ]


# ---------------------------------------------------------------------------
# counterexample


def psi_path_battery(rng, J, n_configs: int, phi=None, n_path: int = 128) -> list[dict]:
    """Path-formula residual and consistency defect of Psi_phi on seeded contained configurations."""
    phi = PhiDistance(J) if phi is None else phi
    f = psi_phi_model(phi, J)
    rows = []
    tries = 0
    while len(rows) < n_configs and tries < 50 * n_configs:
        tries += 1
        g = _random_upper_path(rng, scale=1.2)
        I, K2 = random_unit(rng), random_unit(rng)
        if float((J - K2).norm()) < 0.1:
            continue
        extra = [random_unit(rng) for _ in range(3)]
        try:
            rep = path_repformula(f, g, I, J, K2, n_path).residual
            cons = path_slice_consistency(f, g, [J, K2, I, *extra], n_path).max_defect
        except LiftNotContained:
            continue
        rows.append(
            {
                "path": [list(v) for v in g.vertices],
                "I": list(I.vec()),
                "K": list(K2.vec()),
                "residual": rep,
                "consistency_defect": cons,
            }
        )
    return rows


def suite_counterexample(rng: np.random.Generator) -> list[Check]:
    J = J_UNIT
    I = orthogonal_unit(J)
    rec = counterexample_report(J, [I])[0]
    units = []
    while len(units) < 200:
        u = random_unit(rng)
        if 1.0 < float((u - J).norm()) < 2.0 - 1e-6:
            units.append(u)
    recs = counterexample_report(J, units)
    closed = max(r.agreement for r in recs)
    norm_eq = max(abs(r.residual_norm - float((1.0 - r.unit * J).norm())) for r in recs)
    positive = min(r.residual_norm for r in recs)
    rows = psi_path_battery(rng, J, 50)
    rep = max((r["residual"] for r in rows), default=math.inf)
    cons = max((r["consistency_defect"] for r in rows), default=math.inf)
    used = len(rows)
    return [
        Check("orthogonal_residual_norm", abs(rec.residual_norm - math.sqrt(2.0)), 1e-12, "classical formula fails for Psi_phi"),
        Check("orthogonal_closed_form", rec.agreement, 1e-12, "residual = (1 - IJ) Psi_phi(I)(J)"),
        Check("band_closed_form", closed, 1e-12, "residual = (1 - IJ) Psi_phi(I)(J)"),
        Check("band_residual_norm", norm_eq, 1e-12, "|residual| = |1 - IJ|"),
        Check("band_residual_positive", positive, 0.0, "classical formula fails", ">="),
        Check("psi_path_formula", rep, 1e-9, "path representation formula for Psi_phi"),
        Check("psi_path_consistency", cons, 1e-9, "slice regular implies path-slice"),
        Check("psi_path_configs", used, 50, "contained path configurations", ">="),
    ]


# ---------------------------------------------------------------------------
# topology


def ellipse_inradius_samples(rng, n: int = 20) -> list[tuple[float, float]]:
    """(measured inradius at 0 in C_J, dist(J, C_i)) for n random units J."""
    S = ellipse_book(I_UNIT)
    out = []
    for _ in range(n):
        J = random_unit(rng)
        out.append((slice_inradius(S, 0.0, J, 1.0), dist_to_slice(J, I_UNIT)))
    return out


def ellipse_inradius_error(rng, n: int = 20) -> float:
    # minor semi-axis of x^2 + y^2/d < 1 is sqrt(d)
    return max(abs(r - min(1.0, math.sqrt(d))) for r, d in ellipse_inradius_samples(rng, n))


DUMBBELL_GRID = np.linspace(-3.0, 9.0, 1201)


def suite_topology(rng: np.random.Generator) -> list[Check]:
    ell = ellipse_inradius_error(rng)
    db = is_real_connected_sampled(dumbbell(I_UNIT), DUMBBELL_GRID)
    sb = sigma_ball(I_UNIT, 1.0)
    real_hits = sum(sb.contains_coords(I_UNIT, float(x), 0.0) for x in np.linspace(-10, 10, 2001))
    mismatch = 0
    for _ in range(10000):
        p = float(rng.uniform(-1, 1))
        q = embed(random_unit(rng), *rng.uniform(-2, 2, size=2))
        if sigma_ball(p, 1.0).contains(q) != euclidean_ball(p, 1.0).contains(q):
            mismatch += 1
    return [
        Check("ellipse_book_inradius", ell, 1e-3, "slice-open set without Euclidean interior"),
        Check("dumbbell_real_connected", float(db), 0, "real section of the dumbbell is disconnected", "=="),
        Check("sigma_ball_real_points", real_hits, 0, "sigma-ball about i misses R", "=="),
        Check("sigma_ball_real_center", mismatch, 0, "sigma-ball about a real point is Euclidean", "=="),
    ]


# ---------------------------------------------------------------------------
# witness


def suite_witness(rng: np.random.Generator) -> list[Check]:
    J = J_UNIT
    S = omega_phi_tilde(PhiDistance(J), J)
    P = orthogonal_unit(J)
    Kp = ImaginaryUnit.normalized(*(0.995 * np.asarray(J.vec()) + 0.0998 * np.asarray(P.vec())))
    w = lifting_witness_search(S, WITNESS_PATH, J, Kp, seed=int(rng.integers(2**31)))
    exit_ok = w is not None and 0.0 < w.exit_t <= 1.0
    none_ball = lifting_witness_search(euclidean_ball(0.0, 2.0), WITNESS_PATH, J, Kp, seed=int(rng.integers(2**31)))
    return [
        Check("ray_complement_witness", float(exit_ok), 1, "lifting property fails on the ray complement", "=="),
        Check("ball_witnesses", float(none_ball is not None), 0, "symmetric sets satisfy the lifting property", "=="),
    ]


SUITES: dict[str, Callable[[np.random.Generator], list[Check]]] = {
    "algebra": suite_algebra,
    "slice": suite_slice,
    "extension": suite_extension,
    "branch": suite_branch,
    "counterexample": suite_counterexample,
    "topology": suite_topology,
    "witness": suite_witness,
}


def suite_names(name: Optional[str]) -> list[str]:
    if name is None or not str(name).strip():
        raise ConfigParse("suite: empty suite name")
    if name == "all":
        return list(SUITES)
    names = [n.strip() for n in str(name).split(",")]
    for n in names:
        if n not in SUITES:
            raise ConfigParse(f"suite: unknown suite {n!r} (choose from {', '.join(SUITES)}, all)")
    return names


def run_suites(names: list[str], seed: int, threads: Optional[int] = None) -> dict[str, list[Check]]:
    """Run suites with at most ``threads`` workers; results keep the declared order."""
    order = list(SUITES)
    jobs = [(n, np.random.default_rng([seed, order.index(n)])) for n in names]
    threads = max_threads() if threads is None else threads
    if threads <= 1:
        return {n: SUITES[n](r) for n, r in jobs}
    with ThreadPoolExecutor(max_workers=threads) as ex:
        futures = [(n, ex.submit(SUITES[n], r)) for n, r in jobs]
        return {n: f.result() for n, f in futures}
