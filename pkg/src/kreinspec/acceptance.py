"""Built-in acceptance criteria shared by ``kreinspec selftest`` and the test suite.

Every criterion runs on deterministic random instances and returns a
:class:`CriterionResult` made of individual threshold checks. Passing
``tol`` replaces every threshold, which is how the sensitivity of the
criteria is demonstrated; it applies to the residual bounds, not to
counts or exact-equality checks.
"""
import itertools
import operator
from dataclasses import dataclass, field

import numpy as np

from . import antilinear, biortho, fourlevel, kreindeg, metric, numkernel, splitq
from .errors import Defective

SEED = 20240917
N_INSTANCES = 100

_OPS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq}


@dataclass
class Check:
    label: str
    value: float
    threshold: float
    op: str = "<="

    @property
    def passed(self):
        return bool(_OPS[self.op](self.value, self.threshold))


def _num(x):
    return str(int(x)) if float(x).is_integer() and abs(x) < 1e6 else f"{x:.3e}"


@dataclass
class CriterionResult:
    number: int
    name: str
    checks: list = field(default_factory=list)
    error: str = ""

    @property
    def passed(self):
        return not self.error and all(c.passed for c in self.checks)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        parts = [f"{c.label}={_num(c.value)} {c.op} {_num(c.threshold)}" for c in self.checks]
        if self.error:
            parts.append(f"error: {self.error}")
        return f"[{status}] {self.number:2d} {self.name}: " + "; ".join(parts)

    def as_dict(self):
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "error": self.error,
            "checks": [
                {"label": c.label, "value": c.value, "threshold": c.threshold, "op": c.op, "passed": c.passed}
                for c in self.checks
            ],
        }


def random_params(rng, count=N_INSTANCES, min_d=0.1, min_norm=0.0):
    """Four-level parameters with ``D > min_d`` and ``Omega + a0 > min_norm``."""
    out = []
    while len(out) < count:
        a0 = rng.uniform(-2, 2)
        A = complex(*rng.uniform(-1.5, 1.5, 2))
        B = complex(*rng.uniform(-1.5, 1.5, 2))
        p = fourlevel.FourLevelParams(a0, A, B)
        d = p.discriminant
        if d <= min_d:
            continue
        if np.sqrt(d) + a0 <= min_norm:
            continue
        out.append(p)
    return out


def _min_match_error(a, b):
    """Smallest max-distance over pairings of two equal-size multisets."""
    a = list(a)
    best = np.inf
    for perm in itertools.permutations(range(len(b))):
        best = min(best, max(abs(a[i] - b[j]) for i, j in enumerate(perm)))
    return float(best)


class _Suite:
    def __init__(self, tol=None, seed=SEED):
        self.tol = tol
        self.rng = np.random.default_rng(seed)
        self.params = random_params(self.rng)
        self.theta = fourlevel.pt_operator()
        self.eta = fourlevel.indefinite_metric()

    def check(self, label, value, threshold, op="<="):
        if self.tol is not None and op == "<=":
            threshold = self.tol
        return Check(label, float(value), float(threshold), op)

    def c1_spectrum(self):
        err = 0.0
        mult_bad = 0
        for p in self.params:
            w = fourlevel.omega(p).value
            system = biortho.build_biortho(fourlevel.build_hamiltonian(p))
            err = max(err, _min_match_error(system.energies, [w, w, -w, -w]))
            mults = sorted(m for _, m in system.multiplicities())
            mult_bad += mults != [2, 2]
        return [self.check("max_eigenvalue_error", err, 1e-9), self.check("multiplicity_failures", mult_bad, 0, "==")]

    def c2_relation(self):
        ra = antilinear.eta_pt_relation(self.eta, self.theta).anticommute_residual
        rc = 0.0
        wrong = 0
        for p in self.params:
            H = fourlevel.build_hamiltonian(p)
            eta_plus = biortho.spectral_metric(biortho.build_biortho(H))
            rel = antilinear.eta_pt_relation(eta_plus, self.theta)
            rc = max(rc, rel.commute_residual)
            wrong += rel.value is not antilinear.Relation.COMMUTE
            wrong += metric.metric_signature(eta_plus).definiteness is not metric.Definiteness.POSITIVE_DEFINITE
        return [
            self.check("indefinite_anticommute_residual", ra, 0.0, "=="),
            self.check("spectral_commute_residual", rc, 1e-10),
            self.check("misclassified", wrong, 0, "=="),
        ]

    def _doublets(self):
        if not hasattr(self, "_doublet_cache"):
            self._doublet_cache = [
                (p, kreindeg.find_pt_doublets(fourlevel.build_hamiltonian(p), self.eta, self.theta))
                for p in self.params
            ]
        return self._doublet_cache

    def c3_degeneracy(self):
        ortho = 0.0
        gram = np.inf
        count_bad = 0
        for _, ds in self._doublets():
            count_bad += len(ds) != 2
            for d in ds:
                ortho = max(ortho, d.orthogonality)
                gram = min(gram, d.gram_det)
        return [
            self.check("max_phi_pt_psi", ortho, 1e-10),
            self.check("min_gram_det", gram, 1e-6, ">="),
            self.check("doublet_count_failures", count_bad, 0, "=="),
        ]

    def c4_norms(self):
        err = 0.0
        for _, ds in self._doublets():
            for d in ds:
                err = max(err, abs(d.eta_norm_psi - 1), abs(d.eta_norm_pt_psi + 1))
        return [self.check("max_eta_norm_error", err, 1e-10)]

    def c5_abnormal(self):
        pair_err = 0.0
        comp = 0.0
        kerr = 0.0
        for p in random_params(self.rng, min_norm=0.1):
            s = fourlevel.analytic_eigensystem(p)
            rep = fourlevel.abnormal_relations_check(s)
            for (lp, lf), val in rep.pairings.items():
                expected = fourlevel.DIAGONAL_SIGNS[lp] if lp == lf else 0.0
                pair_err = max(pair_err, abs(val - expected))
            comp = max(comp, rep.completeness)
            kerr = max(kerr, abs(2 * s.omega * (s.omega + p.a0) * s.k ** 2 - 1))
        return [
            self.check("max_pairing_error", pair_err, 1e-10),
            self.check("signed_completeness", comp, 1e-10),
            self.check("k_normalization", kerr, 1e-14),
        ]

    def c6_krein(self):
        inv = eig = cross = 0.0
        for p, ds in self._doublets():
            H = fourlevel.build_hamiltonian(p)
            k = kreindeg.build_krein(ds, self.theta, H, self.eta)
            inv = max(inv, k.residuals["pt_invariance"])
            eig = max(eig, k.residuals["eigen"])
            cross = max(cross, k.residuals["eta_cross"])
        return [
            self.check("pt_invariance", inv, 1e-10),
            self.check("chi_eigen_residual", eig, 1e-10),
            self.check("eta_cross_product", cross, 1e-10),
        ]

    def c7_exceptional_point(self):
        base = fourlevel.FourLevelParams(0.0, 1.0, 0.0)
        err = 0.0
        width = 0.0
        mislabeled = 0
        cases = [(base, "absB", 1.0, steps) for steps in (200, 201, 37)]
        # EP at |B| = sqrt(0.3^2 + 0.7^2), off any grid or bisection point
        cases.append((fourlevel.FourLevelParams(0.3, 0.7, 0.2), "absB", float(np.hypot(0.3, 0.7)), 150))
        for p0, axis, where, steps in cases:
            res = fourlevel.sweep_exceptional_point(p0, axis, 0.0, 2.0, steps)
            if len(res.exceptional_points) != 1:
                mislabeled += 1
                continue
            hit = res.exceptional_points[0]
            err = max(err, abs(hit.t - where))
            width = max(width, hit.hi - hit.lo)
            for pt in res.points:
                want = (
                    kreindeg.PtPhase.UNBROKEN if pt.t < hit.lo
                    else kreindeg.PtPhase.BROKEN if pt.t > hit.hi
                    else kreindeg.PtPhase.EXCEPTIONAL_POINT
                )
                mislabeled += pt.phase is not want
        # numeric pipeline on both sides and at the EP itself
        for t, want in ((0.5, kreindeg.PtPhase.UNBROKEN), (1.5, kreindeg.PtPhase.BROKEN)):
            H = fourlevel.build_hamiltonian(fourlevel.with_axis(base, "absB", t))
            mislabeled += kreindeg.classify_pt_phase(H) is not want
        not_defective = 0
        for B in (1.0, 1j, np.exp(0.7j)):
            H = fourlevel.build_hamiltonian(fourlevel.FourLevelParams(0.0, 1.0, B))
            try:
                kreindeg.find_pt_doublets(H, self.eta, self.theta)
                not_defective += 1
            except Defective:
                pass
        return [
            self.check("ep_location_error", err, 1e-8),
            self.check("bracket_width", width, 1e-8),
            self.check("mislabeled_phases", mislabeled, 0, "=="),
            self.check("ep_not_defective", not_defective, 0, "=="),
        ]

    def c8_split_quaternion(self):
        block = hom = norm = 0.0
        for _ in range(N_INSTANCES):
            a0 = int(self.rng.integers(-9, 10))
            A = complex(*self.rng.integers(-9, 10, 2))
            B = complex(*self.rng.integers(-9, 10, 2))
            p = fourlevel.FourLevelParams(a0, A, B)
            block = max(block, float(np.max(np.abs(
                fourlevel.build_hamiltonian_blocks(p) - fourlevel.build_hamiltonian(p)))))
            q1 = splitq.SplitQuaternion(*(int(x) for x in self.rng.integers(-9, 10, 4)))
            q2 = splitq.SplitQuaternion(*(int(x) for x in self.rng.integers(-9, 10, 4)))
            hom = max(hom, float(np.max(np.abs(
                splitq.sq_embed(q1 * q2) - splitq.sq_embed(q1) @ splitq.sq_embed(q2)))))
            norm = max(norm, abs(splitq.sq_norm(q1 * q2) - splitq.sq_norm(q1) * splitq.sq_norm(q2)))
        return [
            self.check("block_vs_explicit", block, 0.0, "=="),
            self.check("homomorphism", hom, 0.0, "=="),
            self.check("norm_multiplicativity", norm, 0.0, "=="),
        ]

    def c9_oracle(self):
        err = 0.0
        done = 0
        while done < N_INSTANCES:
            m = self.rng.normal(size=(4, 4)) + 1j * self.rng.normal(size=(4, 4))
            vals, vecs = numkernel.eig_right(m)
            if np.linalg.cond(vecs) >= 1e6:
                continue
            err = max(err, _min_match_error(vals, numkernel.charpoly_roots_oracle(m)))
            done += 1
        return [self.check("max_multiset_distance", err, 1e-8)]

    def c10_biortho(self):
        worst = {"biorthonormality": 0.0, "completeness": 0.0, "spectral": 0.0}
        eq5 = 0.0
        for n in (4, 6):
            done = 0
            while done < N_INSTANCES // 2:
                s = np.eye(n) + 0.4 * (self.rng.normal(size=(n, n)) + 1j * self.rng.normal(size=(n, n))) / np.sqrt(n)
                if np.linalg.cond(s) > 50:
                    continue
                levels = self.rng.uniform(-3, 3, n)
                if done % 2:
                    # repeated eigenvalues exercise the degenerate blocks
                    levels[1] = levels[0]
                    levels[3] = levels[2]
                H = s @ np.diag(levels) @ np.linalg.inv(s)
                system = biortho.build_biortho(H, resid_tol=1e-9)
                for key in worst:
                    worst[key] = max(worst[key], system.residuals[key])
                eta_plus = biortho.spectral_metric(system)
                for lv in system.levels:
                    eq5 = max(eq5, float(np.linalg.norm(eta_plus @ lv.psi - lv.phi)))
                done += 1
        return [self.check(k, v, 1e-9) for k, v in worst.items()] + [self.check("eta_psi_minus_phi", eq5, 1e-8)]


CRITERIA = (
    (1, "Four-level spectrum", "c1_spectrum"),
    (2, "Anticommutation classification", "c2_relation"),
    (3, "Degeneracy theorem", "c3_degeneracy"),
    (4, "Indefinite norms", "c4_norms"),
    (5, "Abnormal relations and completeness", "c5_abnormal"),
    (6, "Krein restoration", "c6_krein"),
    (7, "Exceptional point localization", "c7_exceptional_point"),
    (8, "Split-quaternion consistency", "c8_split_quaternion"),
    (9, "Oracle equivalence", "c9_oracle"),
    (10, "Biortho contract", "c10_biortho"),
)


def run_criterion(number, tol=None, seed=SEED):
    for num, name, method in CRITERIA:
        if num == number:
            suite = _Suite(tol, seed)
            result = CriterionResult(num, name)
            try:
                result.checks = getattr(suite, method)()
            except Exception as exc:  # a crash is a failed criterion, reported with its cause
                result.error = f"{type(exc).__name__}: {exc}"
            return result
    raise ValueError(f"no criterion {number}")


def run_all(tol=None, seed=SEED):
    suite = _Suite(tol, seed)
    results = []
    for num, name, method in CRITERIA:
        result = CriterionResult(num, name)
        try:
            result.checks = getattr(suite, method)()
        except Exception as exc:
            result.error = f"{type(exc).__name__}: {exc}"
        results.append(result)
    return results
