"""Spectra, signatures and the Riemannian / Lorentzian classification.

``classify`` works from the closed-form eigenvalues and the threshold
predicates. ``classification_oracle`` ignores both: it builds the Gram
matrix and reads the verdict off its exact inertia.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import ExactMatrix, exact_inertia, format_rational
from .grading import ODD_LABELS, KleinLabel, cached_graded_basis
from .metrics import CONVENTIONS, GramForm, MetricParams, build_form


class FormulaFalsifiedError(RuntimeError):
    """The characteristic polynomial has a root outside the candidate set."""

    def __init__(self, poly, label=None):
        self.poly = poly
        super().__init__(f"characteristic polynomial of block {label} has roots outside the "
                         f"closed-form candidates; leftover coefficients {[format_rational(c) for c in poly]}")


class FloatPathError(RuntimeError):
    """The floating-point eigensolve disagrees with the exact result."""


FLOAT_TOL = 1e-9


# ---------------------------------------------------------------------------
# Closed-form spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentSpectrum:
    label: KleinLabel
    mu1: Fraction
    mu2: Fraction
    mu3: Fraction
    mult1: int
    mult2: int
    mult3: int

    @property
    def dimension(self) -> int:
        return self.mult1 + self.mult2 + self.mult3

    def multiset(self) -> dict:
        """Distinct eigenvalues with multiplicity (coinciding values merged)."""
        out = {}
        for mu, m in ((self.mu1, self.mult1), (self.mu2, self.mult2), (self.mu3, self.mult3)):
            if m:
                out[mu] = out.get(mu, 0) + m
        return dict(sorted(out.items()))

    def eigenvalues(self) -> list:
        return sorted(mu for mu, m in self.multiset().items() for _ in range(m))


def component_spectrum(params: MetricParams, label, k: int, convention: str = "split") -> ComponentSpectrum:
    if k < 1:
        raise ValueError(f"rank must be >= 1, got {k}")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    label = KleinLabel(label)
    lam1, lam2 = params.pair(label)
    r, dim = k, k * (2 * k - 1)
    if convention == "split":
        mu2 = lam2 / 2 + lam1 / 4
        mu3 = lam2 * (r + 1) / 2 - lam1 * (r - 1) / 4
    else:
        mu2 = lam1 / 2
        mu3 = r * lam2 - lam1 * (r - 1) / 2
    return ComponentSpectrum(label, lam1, mu2, mu3, dim - r, r - 1, 1)


# ---------------------------------------------------------------------------
# Characteristic polynomial oracle
# ---------------------------------------------------------------------------

def charpoly(m) -> list:
    """Coefficients (constant term first) of ``det(x I - M)``, exact.

    Similarity reduction to upper Hessenberg form followed by the usual
    three-term recurrence on its leading principal minors; O(n^3).
    """
    H = [list(map(Fraction, row)) for row in (m.to_fractions() if isinstance(m, ExactMatrix) else m)]
    n = len(H)
    for col in range(1, n - 1):
        piv = next((i for i in range(col, n) if H[i][col - 1]), None)
        if piv is None:
            continue
        if piv != col:
            H[piv], H[col] = H[col], H[piv]
            for row in H:
                row[piv], row[col] = row[col], row[piv]
        t = H[col][col - 1]
        for i in range(col + 1, n):
            u = H[i][col - 1] / t
            if not u:
                continue
            Hi, Hc = H[i], H[col]
            for j in range(n):
                Hi[j] -= u * Hc[j]
            for row in H:
                row[col] += u * row[i]
    polys = [[Fraction(1)]]
    for mm in range(1, n + 1):
        # (x - h_mm) p_{m-1}
        prev = polys[-1]
        p = [Fraction(0)] + prev
        for d, c in enumerate(prev):
            p[d] -= H[mm - 1][mm - 1] * c
        prod = Fraction(1)
        for i in range(mm - 1, 0, -1):
            prod *= H[i][i - 1]
            coef = prod * H[i - 1][mm - 1]
            if coef:
                for d, c in enumerate(polys[i - 1]):
                    p[d] -= coef * c
        polys.append(p)
    return polys[-1]


def divide_root(poly: list, root) -> tuple:
    """Synthetic division by ``(x - root)``: ``(quotient, remainder)``."""
    n = len(poly) - 1
    q = [Fraction(0)] * n
    acc = Fraction(0)
    for d in range(n, 0, -1):
        acc = poly[d] + acc * root
        q[d - 1] = acc
    return q, poly[0] + acc * root


def spectrum_oracle(form: GramForm, component, candidates=None, float_check: bool = True) -> dict:
    """Exact eigenvalue multiset of one Gram block, certified by polynomial division.

    ``candidates`` defaults to the closed-form values for the form's own
    parameters. Returns ``{eigenvalue: multiplicity}``.
    """
    label = KleinLabel(component)
    block = form.block(label)
    if candidates is None:
        if form.params is None:
            raise ValueError("form carries no parameters; pass candidates explicitly")
        spec = component_spectrum(form.params, label, form.decomposition.rank, form.convention or "split")
        candidates = (spec.mu1, spec.mu2, spec.mu3)
    poly = charpoly(block)
    found = {}
    for mu in sorted(set(Fraction(c) for c in candidates)):
        while len(poly) > 1:
            q, rem = divide_root(poly, mu)
            if rem:
                break
            poly = q
            found[mu] = found.get(mu, 0) + 1
    if len(poly) > 1:
        raise FormulaFalsifiedError(poly, label)
    if float_check:
        ev = np.linalg.eigvalsh(block.to_float())
        exact = np.array([float(mu) for mu, m in sorted(found.items()) for _ in range(m)])
        scale = max(1.0, float(np.abs(exact).max()) if exact.size else 1.0)
        if exact.shape != ev.shape or np.abs(np.sort(ev) - exact).max(initial=0) > FLOAT_TOL * scale:
            raise FloatPathError(f"float eigenvalues {np.sort(ev)} vs exact {exact} on block {label}")
    return dict(sorted(found.items()))


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int = 0

    def __add__(self, other):
        return Signature(self.positive + other.positive, self.negative + other.negative, self.zero + other.zero)

    def __iter__(self):
        return iter((self.positive, self.negative, self.zero))

    def pair(self) -> tuple:
        return self.positive, self.negative

    def swapped(self) -> "Signature":
        return Signature(self.negative, self.positive, self.zero)

    def __str__(self):
        return f"({self.positive},{self.negative},{self.zero})"


def component_signature(spec: ComponentSpectrum) -> Signature:
    p = q = z = 0
    for mu, m in ((spec.mu1, spec.mult1), (spec.mu2, spec.mult2), (spec.mu3, spec.mult3)):
        if mu > 0:
            p += m
        elif mu < 0:
            q += m
        else:
            z += m
    return Signature(p, q, z)


def riemann_threshold(k: int, convention: str = "split") -> Fraction:
    """Ratio lam2/lam1 above which a component with lam1 > 0 is positive definite."""
    if convention == "split":
        return Fraction(k - 1, 2 * (k + 1))
    return Fraction(k - 1, 2 * k)


def quadratic_fraction(m: int) -> Fraction:
    return Fraction(m * m + m - 2, 2 * (m * m + m + 2))


def six_case_table(k: int) -> list:
    """The six open-region rows: ``(name, predicate(lam1, lam2), (p, q))``."""
    d, r = k * (2 * k - 1), k
    T = riemann_threshold(k)
    return [
        ("positive definite", lambda l1, l2: l1 > 0 and l2 > T * l1, (d, 0)),
        ("one negative", lambda l1, l2: l1 > 0 and -l1 / 2 < l2 < T * l1, (d - 1, 1)),
        ("r negative", lambda l1, l2: l1 > 0 and l2 < -l1 / 2, (d - r, r)),
        ("r positive", lambda l1, l2: l1 < 0 and l2 > -l1 / 2, (r, d - r)),
        ("one positive", lambda l1, l2: l1 < 0 and T * l1 < l2 < -l1 / 2, (1, d - 1)),
        ("negative definite", lambda l1, l2: l1 < 0 and l2 < T * l1, (0, d)),
    ]


def table_signature(lam1, lam2, k: int):
    """Signature predicted by the six-row table, or None on a boundary."""
    hits = [sig for _, pred, sig in six_case_table(k) if pred(lam1, lam2)]
    return hits[0] if len(hits) == 1 else None


def component_positive_definite(lam1, lam2, k: int, convention: str = "split") -> bool:
    if k == 1:
        return lam2 > 0
    return lam1 > 0 and lam2 > riemann_threshold(k, convention) * lam1


def component_lorentz_band(lam1, lam2, k: int, convention: str = "split") -> bool:
    """Exactly one negative direction in the component."""
    if k == 1:
        return lam2 < 0
    T = riemann_threshold(k, convention)
    if convention == "split":
        return lam1 > 0 and -lam1 / 2 < lam2 < T * lam1
    return lam1 > 0 and lam2 < T * lam1


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

RIEMANNIAN, LORENTZIAN, DEGENERATE = "Riemannian", "Lorentzian", "Degenerate"


def verdict_from_signature(sig: Signature) -> str:
    if sig.zero:
        return DEGENERATE
    if sig.negative == 0:
        return RIEMANNIAN
    if sig.negative == 1:
        return LORENTZIAN
    return f"Pseudo({sig.positive},{sig.negative})"


@dataclass
class ComponentResult:
    label: KleinLabel
    signature: Signature
    spectrum: ComponentSpectrum | None = None


@dataclass
class ClassificationReport:
    rank: int
    params: MetricParams
    components: list
    total: Signature
    verdict: str
    boundary_flags: list = field(default_factory=list)
    convention: str = "split"
    source: str = "closed-form"

    def component(self, label) -> ComponentResult:
        return next(c for c in self.components if c.label is KleinLabel(label))

    def to_json(self) -> dict:
        per = []
        for c in self.components:
            entry = {"label": str(c.label), "signature": list(c.signature)}
            if c.spectrum is not None:
                s = c.spectrum
                entry["mu"] = [format_rational(v) for v in (s.mu1, s.mu2, s.mu3)]
                entry["mults"] = [s.mult1, s.mult2, s.mult3]
            per.append(entry)
        return {
            "rank": self.rank,
            "convention": self.convention,
            "source": self.source,
            "params": self.params.to_json(),
            "per_component": per,
            "total_signature": list(self.total),
            "verdict": self.verdict,
            "boundary_flags": list(self.boundary_flags),
        }


def _boundary_flags(params: MetricParams, k: int, convention: str) -> list:
    flags = []
    for g in ODD_LABELS:
        spec = component_spectrum(params, g, k, convention)
        lam1, _ = params.pair(g)
        if k > 1 and lam1 == 0:
            flags.append(f"{g}: lam1 = 0 (mu1 = 0)")
        if spec.mult2 and spec.mu2 == 0:
            flags.append(f"{g}: mu2 = 0")
        if spec.mu3 == 0:
            flags.append(f"{g}: mu3 = 0 (lam2 = {format_rational(riemann_threshold(k, convention))} lam1)")
        if spec.mult2 and spec.mu2 == spec.mu3:
            flags.append(f"{g}: mu2 = mu3 (lam1 = 2 lam2)")
    return flags


def classify(params: MetricParams, k: int, convention: str = "split") -> ClassificationReport:
    """Verdict from the closed-form spectra and the threshold predicates."""
    if k < 1:
        raise ValueError(f"rank must be >= 1, got {k}")
    comps, total = [], Signature(0, 0, 0)
    for g in ODD_LABELS:
        spec = component_spectrum(params, g, k, convention)
        sig = component_signature(spec)
        comps.append(ComponentResult(g, sig, spec))
        total = total + sig
    pairs = [params.pair(g) for g in ODD_LABELS]
    if total.zero:
        verdict = DEGENERATE
    elif all(component_positive_definite(l1, l2, k, convention) for l1, l2 in pairs):
        verdict = RIEMANNIAN
    elif any(component_lorentz_band(*pairs[i], k, convention)
             and all(component_positive_definite(*pairs[j], k, convention) for j in range(3) if j != i)
             for i in range(3)):
        verdict = LORENTZIAN
    else:
        verdict = f"Pseudo({total.positive},{total.negative})"
    if verdict != verdict_from_signature(total):
        raise AssertionError(f"threshold predicates give {verdict} but the spectra give {total}")
    return ClassificationReport(k, params, comps, total, verdict, _boundary_flags(params, k, convention), convention)


def classification_oracle(params: MetricParams, k: int, convention: str = "split",
                          float_check: bool = True) -> ClassificationReport:
    """Verdict from the exact inertia of the assembled Gram matrix alone."""
    if k < 1:
        raise ValueError(f"rank must be >= 1, got {k}")
    dec = cached_graded_basis(k)
    form = build_form(dec, params, convention)
    comps, summed = [], Signature(0, 0, 0)
    for g in ODD_LABELS:
        sig = Signature(*exact_inertia(form.block(g)))
        comps.append(ComponentResult(g, sig))
        summed = summed + sig
    total = Signature(*exact_inertia(form.matrix))
    if total != summed:
        raise AssertionError(f"inertia is not additive over blocks: {total} vs {summed}")
    if float_check:
        ev = np.linalg.eigvalsh(form.matrix.to_float())
        scale = max(1.0, float(np.abs(ev).max()))
        small = np.abs(ev) <= FLOAT_TOL * scale
        fsig = Signature(int(np.sum((ev > 0) & ~small)), int(np.sum((ev < 0) & ~small)), int(np.sum(small)))
        if fsig != total:
            raise FloatPathError(f"float inertia {fsig} vs exact {total} at {params}")
    return ClassificationReport(k, params, comps, total, verdict_from_signature(total), [], convention, "oracle")


# ---------------------------------------------------------------------------
# Sampling and threshold audit
# ---------------------------------------------------------------------------

def _random_rational(rng, bound: int = 4, max_den: int = 8) -> Fraction:
    den = int(rng.integers(1, max_den + 1))
    return Fraction(int(rng.integers(-bound * den, bound * den + 1)), den)


def _nonzero_rational(rng) -> Fraction:
    x = _random_rational(rng)
    while x == 0:
        x = _random_rational(rng)
    return x


def _sample_region(rng, k: int, region: int) -> tuple:
    """A (lam1, lam2) pair inside row ``region`` of the six-case table."""
    lam1 = abs(_nonzero_rational(rng)) * (1 if region < 3 else -1)
    T, w = riemann_threshold(k) * lam1, 4 * abs(lam1)
    lo, hi = {
        0: (T, T + w), 1: (-lam1 / 2, T), 2: (-lam1 / 2 - w, -lam1 / 2),
        3: (-lam1 / 2, -lam1 / 2 + w), 4: (T, -lam1 / 2), 5: (T - w, T),
    }[region]
    t = Fraction(int(rng.integers(1, 16)), 16)
    return lam1, lo + t * (hi - lo)


def _sample_pair(rng, k: int, region=None) -> tuple:
    u = int(rng.integers(0, 20))
    if u == 0:
        # exactly on a boundary: lam1 = 0, mu2 = 0 or mu3 = 0
        lam1 = _nonzero_rational(rng)
        choice = int(rng.integers(0, 3))
        if choice == 0:
            return Fraction(0), _random_rational(rng)
        return lam1, (-lam1 / 2 if choice == 1 else riemann_threshold(k) * lam1)
    if region is None:
        if u < 6:
            return _random_rational(rng), _random_rational(rng)
        region = int(rng.integers(0, 6))
    return _sample_region(rng, k, region)


def sample_params(rng, k: int, count: int) -> list:
    """Deterministic (given ``rng``) list of rational parameter points.

    A quarter of the points aim at the Riemannian region, a quarter at the
    Lorentzian one; the rest draw each component independently. About one
    component in twenty sits exactly on a boundary.
    """
    out = []
    for _ in range(count):
        target = int(rng.integers(0, 4))
        if target == 0:
            regions = [0, 0, 0]
        elif target == 1:
            regions = [0, 0, 0]
            regions[int(rng.integers(0, 3))] = 1
        else:
            regions = [None, None, None]
        vals = []
        for reg in regions:
            vals.extend(_sample_pair(rng, k, reg))
        out.append(MetricParams.from_sequence(vals))
    return out


@dataclass
class AuditReport:
    rank: int
    candidates: dict  # name -> Fraction
    scan: list  # (lam2, verdict)
    boundary: Fraction | None
    separating: list
    convention: str = "split"

    @property
    def passed(self) -> bool:
        return self.boundary is not None and self.boundary == riemann_threshold(self.rank, self.convention)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "convention": self.convention,
            "candidates": {k: format_rational(v) for k, v in self.candidates.items()},
            "scan": [[format_rational(x), v] for x, v in self.scan],
            "oracle_boundary": None if self.boundary is None else format_rational(self.boundary),
            "separating": list(self.separating),
            "passed": self.passed,
        }


def threshold_audit(k: int, convention: str = "split") -> AuditReport:
    """Scan lam2 (lam1 = 1, other components fixed at (1, 1)) with the inertia oracle.

    The oracle boundary is the largest scanned lam2 that is not Riemannian,
    provided the oracle finds it exactly degenerate. A candidate separates
    iff it equals that boundary.
    """
    if k < 1:
        raise ValueError(f"rank must be >= 1, got {k}")
    cands = {
        "block (r-1)/(2(r+1))": riemann_threshold(k, "split"),
        "invariant (r-1)/(2r)": riemann_threshold(k, "invariant"),
        **{f"quadratic fraction m={m}": quadratic_fraction(m) for m in (k, 2 * k, 4 * k)},
    }
    pts = sorted(set(cands.values()) | {Fraction(0), Fraction(1)})
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    eps = min([Fraction(1, 100)] + [g / 4 for g in gaps])
    grid = set(pts)
    for c in pts:
        grid |= {c - eps, c + eps}
    for a, b in zip(pts, pts[1:]):
        grid.add((a + b) / 2)
    grid = sorted(x for x in grid if x > Fraction(-1, 2))
    scan = []
    for lam2 in grid:
        p = MetricParams(1, lam2, 1, 1, 1, 1)
        scan.append((lam2, classification_oracle(p, k, convention).verdict))
    not_riem = [x for x, v in scan if v != RIEMANNIAN]
    boundary = None
    if not_riem:
        b = max(not_riem)
        if dict(scan)[b] == DEGENERATE and all(v == RIEMANNIAN for x, v in scan if x > b):
            boundary = b
    separating = [name for name, v in cands.items() if v == boundary]
    return AuditReport(k, cands, scan, boundary, separating, convention)
