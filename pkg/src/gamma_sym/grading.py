"""The Klein four-group grading of so(4k) and its certificates.

Two commuting inner involutions ``tau_g(M) = J_g^{-1} M J_g`` with
``J_a = X_a (x) S``, ``J_b = X_b (x) S``, ``J_c = J_a J_b`` and
``S = [[0, I_k], [-I_k, 0]]`` split so(4k) into four simultaneous
eigenspaces. Matrices are read in 4 x 4 blocks of order k; every graded
element is determined by its first block row, whose four blocks are the
"species" naming the canonical basis (X, Y, Z, T in the odd components).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .exact import (
    DimensionError,
    Echelon,
    ExactMatrix,
    exact_inertia,
    format_rational,
    rank_of,
)
from .lie import ClosureError, LieBasis, bracket, killing_form, so_basis, structure_constants


class KleinLabel(str, Enum):
    E = "e"
    A = "a"
    B = "b"
    C = "c"

    def __mul__(self, other):
        if not isinstance(other, KleinLabel):
            return NotImplemented
        return klein_mul(self, other)

    def __str__(self):
        return self.value


LABELS = (KleinLabel.E, KleinLabel.A, KleinLabel.B, KleinLabel.C)
ODD_LABELS = LABELS[1:]


def klein_mul(x, y) -> KleinLabel:
    x, y = KleinLabel(x), KleinLabel(y)
    if x is KleinLabel.E:
        return y
    if y is KleinLabel.E:
        return x
    if x is y:
        return KleinLabel.E
    return next(g for g in ODD_LABELS if g is not x and g is not y)


# Sign by which tau_sigma acts on component gamma: CHARACTER[gamma][sigma].
# g_a is fixed by tau_b, g_b by tau_a, g_c by tau_c.
_FIXED_BY = {KleinLabel.A: KleinLabel.B, KleinLabel.B: KleinLabel.A, KleinLabel.C: KleinLabel.C}
CHARACTER = {
    gamma: {sigma: (1 if gamma is KleinLabel.E or sigma in (KleinLabel.E, _FIXED_BY[gamma]) else -1)
            for sigma in LABELS}
    for gamma in LABELS
}

SPECIES_NAMES = {
    KleinLabel.E: ("A1", "B1", "A2", "B2"),
    KleinLabel.A: ("X1", "Y1", "Z1", "T1"),
    KleinLabel.B: ("X2", "Y2", "Z2", "T2"),
    KleinLabel.C: ("X3", "Y3", "Z3", "T3"),
}


def expected_dims(k: int) -> dict:
    return {KleinLabel.E: k * (2 * k + 1), **{g: k * (2 * k - 1) for g in ODD_LABELS}}


# ---------------------------------------------------------------------------
# Involutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvolutionSet:
    rank: int
    J_a: ExactMatrix
    J_b: ExactMatrix
    J_c: ExactMatrix
    _inverses: dict = field(default_factory=dict, compare=False, repr=False)

    def J(self, label) -> ExactMatrix:
        return {KleinLabel.A: self.J_a, KleinLabel.B: self.J_b, KleinLabel.C: self.J_c}[KleinLabel(label)]

    def J_inv(self, label) -> ExactMatrix:
        label = KleinLabel(label)
        if label not in self._inverses:
            self._inverses[label] = self.J(label).inverse()
        return self._inverses[label]

    def checks(self) -> list:
        n = self.J_a.size
        eye = ExactMatrix.identity(n)
        out = []
        for g in ODD_LABELS:
            J = self.J(g)
            out.append(Check(f"J_{g} orthogonal", J.T @ J == eye))
            out.append(Check(f"J_{g}^2 = -I", J @ J == -eye))
        out.append(Check("J_a J_b = -J_b J_a", self.J_a @ self.J_b == -(self.J_b @ self.J_a)))
        out.append(Check("J_c = J_a J_b", self.J_c == self.J_a @ self.J_b))
        return out


def _s_block(k: int) -> ExactMatrix:
    s = np.zeros((2 * k, 2 * k), dtype=np.int64)
    s[:k, k:] = np.eye(k, dtype=np.int64)
    s[k:, :k] = -np.eye(k, dtype=np.int64)
    return ExactMatrix.from_scaled(s)


X_A = ExactMatrix([[-1, 0], [0, 1]])
X_B = ExactMatrix([[0, 1], [1, 0]])
X_C = ExactMatrix([[0, -1], [1, 0]])


def build_involutions(k: int) -> InvolutionSet:
    if k < 1:
        raise ValueError(f"rank must be >= 1, got {k}")
    s = _s_block(k)
    ja, jb = X_A.kron(s), X_B.kron(s)
    return InvolutionSet(k, ja, jb, ja @ jb)


# Literal 4 x 4 involutions of the rank-1 example.
S3_J_A = ExactMatrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
S3_J_B = ExactMatrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])


def tau(gamma, M: ExactMatrix, inv: InvolutionSet) -> ExactMatrix:
    gamma = KleinLabel(gamma)
    if M.size != inv.J_a.size:
        raise DimensionError(f"matrix of size {M.size} vs involutions of size {inv.J_a.size}")
    if gamma is KleinLabel.E:
        return M
    return inv.J_inv(gamma) @ M @ inv.J(gamma)


def project(gamma, M: ExactMatrix, inv: InvolutionSet) -> ExactMatrix:
    """Character projector ``(1/4) sum_sigma chi_gamma(sigma) tau_sigma(M)``."""
    gamma = KleinLabel(gamma)
    acc = tau(KleinLabel.E, M, inv)
    for sigma in ODD_LABELS:
        t = tau(sigma, M, inv)
        acc = acc + t if CHARACTER[gamma][sigma] > 0 else acc - t
    return acc.scale(Fraction(1, 4))


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    residual: Fraction | None = None
    detail: str = ""

    def to_json(self) -> dict:
        d = {"name": self.name, "passed": bool(self.passed)}
        if self.residual is not None:
            d["residual"] = format_rational(self.residual)
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Certificate:
    name: str
    checks: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, residual=None, detail="") -> Check:
        c = Check(name, bool(passed), residual, detail)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "info": self.info,
                "checks": [c.to_json() for c in self.checks]}


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GradedDecomposition:
    rank: int
    involutions: InvolutionSet
    components: dict  # KleinLabel -> LieBasis
    layout: dict  # KleinLabel -> tuple of (species, i, j) per basis element
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def r(self) -> int:
        return self.rank

    @property
    def ambient_size(self) -> int:
        return self.involutions.J_a.size

    def dims(self) -> dict:
        return {g: len(self.components[g]) for g in LABELS}

    def basis(self, label) -> LieBasis:
        return self.components[KleinLabel(label)]

    def symmetric_species(self, label) -> list:
        """Species whose block is symmetric (detected from diagonal pivots)."""
        return sorted({s for s, i, j in self.layout[KleinLabel(label)] if s is not None and i == j})

    def diagonal_positions(self, label) -> list:
        """Indices (within the component basis) of the diagonal coordinates of the symmetric species."""
        return [t for t, (s, i, j) in enumerate(self.layout[KleinLabel(label)]) if s is not None and i == j]

    def m_blocks(self) -> dict:
        out, start = {}, 0
        for g in ODD_LABELS:
            n = len(self.components[g])
            out[g] = range(start, start + n)
            start += n
        return out

    def m_basis(self) -> LieBasis:
        if "m" not in self._cache:
            elems = [e for g in ODD_LABELS for e in self.components[g]]
            labels = [lab for g in ODD_LABELS for lab in self.components[g].labels]
            self._cache["m"] = LieBasis(elems, labels, self.ambient_size)
        return self._cache["m"]

    def full_basis(self):
        """Concatenated basis of all four components, or None if it is not a basis."""
        if "full" not in self._cache:
            elems = [e for g in LABELS for e in self.components[g]]
            labels = [lab for g in LABELS for lab in self.components[g].labels]
            try:
                self._cache["full"] = LieBasis(elems, labels, self.ambient_size)
            except ValueError:
                self._cache["full"] = None
        return self._cache["full"]

    def label_of(self) -> list:
        return [g for g in LABELS for _ in self.components[g]]


def _first_row_order(N: int, k: int) -> list:
    """Flat indices ordered: first block row species-major, then row-major; then the rest."""
    head = [i * N + s * k + j for s in range(4) for i in range(k) for j in range(k)]
    seen = set(head)
    return head + [t for t in range(N * N) if t not in seen]


def decompose(inv: InvolutionSet) -> GradedDecomposition:
    """Graded components of so(4k) under ``inv``, in canonical species order.

    Every so(N) basis matrix is projected onto each component; exact
    reduced row echelon form over the projected vectors, with first-block-row
    coordinates ordered first, returns exactly the elementary species matrices
    (one coordinate equal to 1, the other pivot coordinates 0).
    """
    N = inv.J_a.size
    k = N // 4
    order = _first_row_order(N, k)
    pos = {flat: p for p, flat in enumerate(order)}
    head = 4 * k * k
    so = so_basis(N)
    components, layout = {}, {}
    for g in LABELS:
        ech = Echelon(N * N)
        for e in so:
            pm = project(g, e, inv)
            if pm.is_zero():
                continue
            ech.add({pos[i * N + j]: v for i, j, v in pm.nonzero_entries()})
        elems, labels, lay = [], [], []
        for p, row in ech.reduced().items():
            flat = np.zeros(N * N, dtype=object)
            for c, v in row.items():
                flat[order[c]] = v
            elems.append(ExactMatrix(flat.reshape(N, N)))
            if p < head:
                s, rem = divmod(p, k * k)
                i, j = divmod(rem, k)
                labels.append(f"{SPECIES_NAMES[g][s]}[{i + 1},{j + 1}]")
                lay.append((s, i, j))
            else:
                labels.append(f"{g}.v{len(elems)}")
                lay.append((None, None, None))
        components[g] = LieBasis(elems, labels, N)
        layout[g] = tuple(lay)
    return GradedDecomposition(k, inv, components, layout)


def graded_basis(k: int) -> GradedDecomposition:
    if k < 1:
        raise ValueError(f"rank must be >= 1, got {k}")
    return decompose(build_involutions(k))


@functools.lru_cache(maxsize=8)
def cached_graded_basis(k: int) -> GradedDecomposition:
    """Shared decomposition per rank; safe because decompositions are never mutated."""
    return graded_basis(k)


def relabeled(dec: GradedDecomposition, moves: dict) -> GradedDecomposition:
    """Copy of ``dec`` with basis elements moved between components.

    ``moves`` maps ``(from_label, index)`` to ``to_label``. Used to build
    deliberately corrupted decompositions.
    """
    comps = {g: list(zip(dec.components[g].elements, dec.components[g].labels, dec.layout[g])) for g in LABELS}
    for (src, idx), dst in moves.items():
        src, dst = KleinLabel(src), KleinLabel(dst)
        comps[dst].append(comps[src][idx])
        comps[src][idx] = None
    components, layout = {}, {}
    for g in LABELS:
        items = [t for t in comps[g] if t is not None]
        components[g] = LieBasis([t[0] for t in items], [t[1] for t in items], dec.ambient_size)
        layout[g] = tuple(t[2] for t in items)
    return GradedDecomposition(dec.rank, dec.involutions, components, layout)


# ---------------------------------------------------------------------------
# Certificates for the grading
# ---------------------------------------------------------------------------

def _pair_groups():
    return [(g1, g2) for g1, g2 in combinations_with_replacement(LABELS, 2)]


def verify_grading(dec: GradedDecomposition) -> Certificate:
    """Check ``[g_x, g_y] in g_{xy}`` on every pair of basis elements, plus structure.

    Each bracket is decomposed exactly in the concatenated basis of all four
    components; the residual of a pair is the largest coefficient it has
    outside the predicted component. Failures are recorded, never raised.
    """
    k, N = dec.rank, dec.ambient_size
    cert = Certificate("grading", info={"rank": k, "ambient": f"so({N})"})
    for c in dec.involutions.checks():
        cert.checks.append(c)

    dims = dec.dims()
    exp = expected_dims(k)
    cert.add("dimensions", all(dims[g] == exp[g] for g in LABELS),
             detail=" ".join(f"{g}:{dims[g]}/{exp[g]}" for g in LABELS))

    full = dec.full_basis()
    total = sum(dims.values())
    cert.add("direct sum spans so(N)", full is not None and total == N * (N - 1) // 2,
             detail=f"{total} independent of {N * (N - 1) // 2}" if full is not None else "dependent")

    for g in LABELS:
        worst = Fraction(0)
        for e in dec.components[g]:
            for sigma in ODD_LABELS:
                diff = tau(sigma, e, dec.involutions) - e.scale(CHARACTER[g][sigma])
                worst = max(worst, diff.max_abs())
        cert.add(f"character signs on g_{g}", worst == 0, worst)

    labels_of = dec.label_of()
    elems = [e for g in LABELS for e in dec.components[g]]
    names = [lab for g in LABELS for lab in dec.components[g].labels]
    offsets, start = {}, 0
    for g in LABELS:
        offsets[g] = range(start, start + dims[g])
        start += dims[g]
    worst = {pg: Fraction(0) for pg in _pair_groups()}
    failing = {pg: [] for pg in _pair_groups()}
    pair_residuals = []
    for i in range(len(elems)):
        for j in range(i, len(elems)):
            gi, gj = labels_of[i], labels_of[j]
            target = klein_mul(gi, gj)
            M = bracket(elems[i], elems[j])
            if M.is_zero():
                res = Fraction(0)
            elif full is not None:
                cnum, cden = full.scaled_coordinates(M)
                if cnum is None:
                    res = M.max_abs()
                else:
                    inside = offsets[target]
                    outside = [abs(int(v)) for t, v in enumerate(cnum) if t not in inside]
                    res = Fraction(max(outside, default=0), cden)
            else:
                res = (M - project(target, M, dec.involutions)).max_abs()
            key = (gi, gj) if LABELS.index(gi) <= LABELS.index(gj) else (gj, gi)
            pair_residuals.append((names[i], names[j], res))
            if res:
                worst[key] = max(worst[key], res)
                failing[key].append(f"[{names[i]}, {names[j]}]")
    for (g1, g2) in _pair_groups():
        bad = failing[(g1, g2)]
        cert.add(f"[g_{g1}, g_{g2}] in g_{klein_mul(g1, g2)}", not bad, worst[(g1, g2)],
                 detail=("failing pairs: " + ", ".join(bad[:5]) + (" ..." if len(bad) > 5 else "")) if bad else "")
    cert.info["pairs_checked"] = len(pair_residuals)
    cert.pair_residuals = pair_residuals
    return cert


def _commutant_dimension(dec: GradedDecomposition) -> int:
    """Dimension of {M in so(N): M J_a = J_a M, M J_b = J_b M}."""
    N = dec.ambient_size
    so = so_basis(N)
    cols = []
    for e in so:
        v = {}
        for off, J in ((0, dec.involutions.J_a), (N * N, dec.involutions.J_b)):
            for i, j, x in bracket(e, J).nonzero_entries():
                v[off + i * N + j] = x
        cols.append(v)
    # rank of the linear map = rank of its column set
    return len(so) - rank_of(cols, 2 * N * N)


def maximal_torus(struct: np.ndarray):
    """Greedy maximal abelian subalgebra from basis elements, completed via centralizers.

    Returns ``(vectors, greedy_indices)``; the vectors (coordinate tuples)
    span a self-centralizing abelian subalgebra.
    """
    n = struct.shape[0]

    def brk(x, y):
        # sum_ij x_i y_j c[i, j, :]
        out = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    row = struct[i, j]
                    for t in range(n):
                        if row[t]:
                            out[t] += xi * yj * row[t]
        return out

    def unit(i):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        return v

    chosen, greedy = [], []
    for i in range(n):
        u = unit(i)
        if all(not any(brk(u, s)) for s in chosen):
            chosen.append(u)
            greedy.append(i)
    while True:
        rows = []
        for s in chosen:
            # coefficient of x_i in [x, s]_t
            for t in range(n):
                rows.append([sum((s[j] * struct[i, j, t] for j in range(n) if s[j]), Fraction(0)) for i in range(n)])
        ech = Echelon(n)
        for r in rows:
            ech.add(r)
        cent = ech.nullspace()
        if len(cent) <= len(chosen):
            return chosen, greedy
        span = Echelon(n)
        for s in chosen:
            span.add(s)
        extra = next(v for v in cent if span.reduce({t: x for t, x in enumerate(v) if x}))
        chosen.append(list(extra))


def verify_fixed_algebra(dec: GradedDecomposition) -> Certificate:
    """Certify that g_e is the compact symplectic algebra of rank k."""
    k = dec.rank
    ge = dec.components[KleinLabel.E]
    n = len(ge)
    cert = Certificate("fixed-algebra", info={"rank_parameter": k, "dim": n})
    try:
        struct = structure_constants(ge)
        cert.add("g_e bracket-closed", True)
    except ClosureError as err:
        cert.add("g_e bracket-closed", False, detail=str(err))
        struct = None
    cert.add("dim g_e = k(2k+1)", n == k * (2 * k + 1), detail=f"{n} vs {k * (2 * k + 1)}")

    if n:
        gram = [[killing_form(x, y) for y in ge] for x in ge]
        p, q, z = exact_inertia(gram)
        cert.add("Killing form negative definite on g_e", (p, z) == (0, 0) and q == n, detail=f"inertia ({p},{q},{z})")
    commutes = all(bracket(e, dec.involutions.J_a).is_zero() and bracket(e, dec.involutions.J_b).is_zero()
                   for e in ge)
    cdim = _commutant_dimension(dec)
    cert.add("g_e = commutant of {J_a, J_b} in so(N)", commutes and cdim == n,
             detail=f"commutant dim {cdim}, g_e commutes: {commutes}")
    inv_checks = dec.involutions.checks()
    cert.add("quaternion relations", all(c.passed for c in inv_checks),
             detail=", ".join(c.name for c in inv_checks if not c.passed))
    if struct is not None and n:
        from .lie import killing_matrix
        p, q, z = exact_inertia(killing_matrix(struct))
        cert.add("semisimple (intrinsic Killing form nondegenerate)", z == 0, detail=f"inertia ({p},{q},{z})")
        torus, greedy = maximal_torus(struct)
        cert.info["rank"] = len(torus)
        cert.info["torus_from_basis"] = [ge.labels[i] for i in greedy]
        cert.add("rank = k", len(torus) == k, detail=f"maximal torus of dimension {len(torus)}")
    return cert


def symmetric_pair_check(dec: GradedDecomposition, gamma) -> Certificate:
    """g_e + g_gamma: closure, dimension, centre and derived subalgebra."""
    gamma = KleinLabel(gamma)
    if gamma is KleinLabel.E:
        raise ValueError("symmetric pair needs an odd label")
    k = dec.rank
    elems = list(dec.components[KleinLabel.E]) + list(dec.components[gamma])
    labels = list(dec.components[KleinLabel.E].labels) + list(dec.components[gamma].labels)
    basis = LieBasis(elems, labels, dec.ambient_size)
    n = len(basis)
    cert = Certificate(f"symmetric-pair-{gamma}", info={"label": str(gamma), "dim": n})
    try:
        struct = structure_constants(basis)
    except ClosureError as err:
        cert.add(f"g_e + g_{gamma} bracket-closed", False, detail=str(err))
        return cert
    cert.add(f"g_e + g_{gamma} bracket-closed", True)
    center_rows = []
    for j in range(n):
        for t in range(n):
            center_rows.append([struct[i, j, t] for i in range(n)])
    center = len(nullspace_rows(center_rows, n))
    derived = rank_of(({t: struct[i, j, t] for t in range(n) if struct[i, j, t]}
                       for i in range(n) for j in range(i + 1, n)), n)
    cert.info.update(center_dim=center, derived_dim=derived)
    cert.add("dimension 4k^2", n == 4 * k * k, detail=str(n))
    cert.add("centre of dimension 1", center == 1, detail=str(center))
    cert.add("derived subalgebra of dimension 4k^2 - 1", derived == 4 * k * k - 1, detail=str(derived))
    return cert


def nullspace_rows(rows, ncols):
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return ech.nullspace()


S3_FIXED_PATTERN = [
    # a2, a3, a4 coefficient matrices of the literal 4 x 4 fixed algebra
    ExactMatrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
    ExactMatrix([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
    ExactMatrix([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
]
S3_LINES = {
    KleinLabel.A: ExactMatrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]),
    KleinLabel.B: ExactMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
    KleinLabel.C: ExactMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]),
}


def s3_involutions() -> InvolutionSet:
    return InvolutionSet(1, S3_J_A, S3_J_B, S3_J_A @ S3_J_B)


def explicit_s3_fixture() -> Certificate:
    """Grading of so(4) from the literal 4 x 4 matrices of the sphere example."""
    inv = s3_involutions()
    dec = decompose(inv)
    cert = Certificate("s3-fixture", info={"rank": 1})
    dims = dec.dims()
    cert.add("dims (3,1,1,1)", tuple(dims[g] for g in LABELS) == (3, 1, 1, 1),
             detail=str(tuple(dims[g] for g in LABELS)))
    ge = dec.components[KleinLabel.E]
    cert.add("fixed algebra has the 3-parameter pattern",
             len(ge) == 3 and all(ge.contains(p) for p in S3_FIXED_PATTERN))
    for g, line in S3_LINES.items():
        cert.add(f"g_{g} is the expected line", len(dec.components[g]) == 1 and dec.components[g].contains(line))
    grading = verify_grading(dec)
    cert.add("grading axioms", grading.passed, detail=", ".join(c.name for c in grading.failures()))
    fixed = verify_fixed_algebra(dec)
    cert.add("fixed algebra certificate", fixed.passed, detail=", ".join(c.name for c in fixed.failures()))
    cert.decomposition = dec
    return cert


# ---------------------------------------------------------------------------
# Certificate document
# ---------------------------------------------------------------------------

def _integer_matrix(m: ExactMatrix) -> list:
    if not m.is_integral():
        raise ValueError("involution matrix is not integral")
    return [[int(v) for v in row] for row in m.num.tolist()]


def grading_document(dec: GradedDecomposition, certificates) -> dict:
    """JSON-ready grading certificate; byte-stable for a fixed decomposition."""
    k = dec.rank
    inv = dec.involutions
    return {
        "rank": k,
        "rank_convention": {"ambient": f"so({4 * k})", "block_order": k, "r": k,
                            "dim_e": "k(2k+1)", "dim_odd": "k(2k-1)"},
        "dims": {str(g): n for g, n in dec.dims().items()},
        "involutions": {f"J_{g}": _integer_matrix(inv.J(g)) for g in ODD_LABELS},
        "components": {
            str(g): [{"label": lab, "entries": [[i, j, format_rational(v)] for i, j, v in e.nonzero_entries()]}
                     for lab, e in zip(dec.components[g].labels, dec.components[g])]
            for g in LABELS
        },
        "symmetric_species": {str(g): [SPECIES_NAMES[g][s] for s in dec.symmetric_species(g)] for g in ODD_LABELS},
        "passed": all(c.passed for c in certificates),
        "certificates": [c.to_json() for c in certificates],
    }
