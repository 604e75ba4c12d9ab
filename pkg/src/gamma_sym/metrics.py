"""Adapted invariant metrics on m = g_a + g_b + g_c.

Gram matrices live in the canonical m-basis (g_a block, then g_b, then g_c,
each in species order). Each block has the value ``lam1`` on every
coordinate except the ``r`` diagonal entries of the symmetric species. Those
carry ``lam2`` on the diagonal and a constant cross term, which depends on
``convention``:

* ``"split"`` (default): cross term ``(lam2 - lam1/2)/2``, half the
  quadratic coefficient. Its spectrum is the closed-form one used by the
  classifier. For k >= 2 it is ad(g_e)-invariant only when ``lam1 = 2 lam2``.
* ``"invariant"``: cross term ``lam2 - lam1/2``. This is the ad(g_e)-invariant
  solution for every ``(lam1, lam2)``.

The two agree when ``lam1 = 2 lam2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import Echelon, ExactMatrix, _intmatmul, _widen, format_rational, fractions_to_scaled, parse_rational
from .grading import ODD_LABELS, Certificate, GradedDecomposition, KleinLabel
from .lie import bracket, killing_form

CONVENTIONS = ("split", "invariant")


class ConsistencyError(RuntimeError):
    """The Killing restriction fell outside the adapted family."""


@dataclass(frozen=True)
class MetricParams:
    lam1_a: Fraction
    lam2_a: Fraction
    lam1_b: Fraction
    lam2_b: Fraction
    lam1_c: Fraction
    lam2_c: Fraction

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_sequence(cls, values) -> "MetricParams":
        values = list(values)
        if len(values) != 6:
            raise ValueError(f"expected 6 parameters, got {len(values)}")
        return cls(*(v if isinstance(v, (int, Fraction)) else parse_rational(str(v)) for v in values))

    @classmethod
    def parse(cls, text: str) -> "MetricParams":
        return cls.from_sequence(parse_rational(t) for t in text.split(","))

    @classmethod
    def uniform(cls, lam1, lam2) -> "MetricParams":
        return cls(lam1, lam2, lam1, lam2, lam1, lam2)

    def as_tuple(self) -> tuple:
        return (self.lam1_a, self.lam2_a, self.lam1_b, self.lam2_b, self.lam1_c, self.lam2_c)

    def pair(self, label) -> tuple:
        g = KleinLabel(label).value
        return getattr(self, f"lam1_{g}"), getattr(self, f"lam2_{g}")

    def scaled(self, s) -> "MetricParams":
        return MetricParams.from_sequence(s * v for v in self.as_tuple())

    def to_json(self) -> dict:
        return {f"lam{i}_{g}": format_rational(getattr(self, f"lam{i}_{g}")) for g in "abc" for i in (1, 2)}

    def __str__(self):
        return ",".join(format_rational(v) for v in self.as_tuple())


@dataclass(frozen=True, eq=False)
class GramForm:
    decomposition: GradedDecomposition
    matrix: ExactMatrix
    block_index: dict  # KleinLabel -> range
    params: MetricParams | None = None
    convention: str | None = None

    def block(self, label) -> ExactMatrix:
        rng = self.block_index[KleinLabel(label)]
        return self.matrix.submatrix(list(rng))

    def fractions(self) -> np.ndarray:
        return self.matrix.to_fractions()


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


def component_gram(n: int, diag: list, lam1, lam2, convention: str = "split") -> np.ndarray:
    """Gram block of one component as an object array of Fractions."""
    _check_convention(convention)
    lam1, lam2 = Fraction(lam1), Fraction(lam2)
    cross = lam2 - lam1 / 2
    if convention == "split":
        cross /= 2
    g = np.empty((n, n), dtype=object)
    g.fill(Fraction(0))
    for i in range(n):
        g[i, i] = lam1
    for i in diag:
        for j in diag:
            g[i, j] = lam2 if i == j else cross
    return g


def build_form(dec: GradedDecomposition, params: MetricParams, convention: str = "split") -> GramForm:
    blocks = dec.m_blocks()
    n = sum(len(r) for r in blocks.values())
    G = np.empty((n, n), dtype=object)
    G.fill(Fraction(0))
    for g, rng in blocks.items():
        lam1, lam2 = params.pair(g)
        G[rng.start:rng.stop, rng.start:rng.stop] = component_gram(
            len(rng), dec.diagonal_positions(g), lam1, lam2, convention)
    return GramForm(dec, ExactMatrix(G), blocks, params, convention)


def form_from_matrix(dec: GradedDecomposition, matrix) -> GramForm:
    m = matrix if isinstance(matrix, ExactMatrix) else ExactMatrix(matrix)
    return GramForm(dec, m, dec.m_blocks())


# ---------------------------------------------------------------------------
# ad(g_e) on m and invariance
# ---------------------------------------------------------------------------

def ad_on_m(dec: GradedDecomposition) -> list:
    """Matrices of ad(h) on m for h in the g_e basis; column j = coordinates of [h, m_j]."""
    if "ad_m" not in dec._cache:
        mb = dec.m_basis()
        n = len(mb)
        mats = []
        for h in dec.components[KleinLabel.E]:
            A = np.empty((n, n), dtype=object)
            for j, x in enumerate(mb):
                c = mb.coordinates(bracket(h, x))
                if c is None:
                    raise ValueError("[g_e, m] is not contained in m")
                A[:, j] = c
            mats.append(A)
        dec._cache["ad_m"] = mats
    return dec._cache["ad_m"]


@dataclass
class Residual:
    value: Fraction
    witness: tuple | None = None  # (h label, x label, y label)


def _ad_stack(dec: GradedDecomposition):
    """ad(g_e) on m as one scaled integer array ``(num[h], den)``."""
    if "ad_m_scaled" not in dec._cache:
        dec._cache["ad_m_scaled"] = fractions_to_scaled(np.array(ad_on_m(dec), dtype=object))
    return dec._cache["ad_m_scaled"]


def invariance_residual(dec: GradedDecomposition, form: GramForm) -> Residual:
    """Max over basis triples of ``|B([h,x],y) + B(x,[h,y])|`` with h in g_e."""
    a_num, a_den = _ad_stack(dec)
    g_num, g_den = fractions_to_scaled(form.fractions())
    R = _intmatmul(a_num.transpose(0, 2, 1), g_num) + _intmatmul(g_num, a_num)
    nz = np.nonzero(R)
    if not len(nz[0]):
        return Residual(Fraction(0))
    vals = np.abs(_widen(R[nz]))
    t = int(np.argmax(vals))
    h, i, j = (int(a[t]) for a in nz)
    labels = dec.m_basis().labels
    return Residual(Fraction(int(vals[t]), a_den * g_den),
                    (dec.components[KleinLabel.E].labels[h], labels[i], labels[j]))


def invariant_form_space(dec: GradedDecomposition) -> list:
    """Basis of the symmetric, block-diagonal, ad(g_e)-invariant forms on m."""
    ads = ad_on_m(dec)
    blocks = dec.m_blocks()
    n = sum(len(r) for r in blocks.values())
    out = []
    for g in ODD_LABELS:
        rng = blocks[g]
        d = len(rng)
        sl = slice(rng.start, rng.stop)
        unknowns = [(i, j) for i in range(d) for j in range(i, d)]
        var = {}
        for t, (i, j) in enumerate(unknowns):
            var[(i, j)] = var[(j, i)] = t
        ech = Echelon(len(unknowns))
        for A in ads:
            a = A[sl, sl]
            # (A^T G + G A)[p, q] = sum_s a[s,p] G[s,q] + G[p,s] a[s,q]
            for p in range(d):
                for q in range(p, d):
                    row = {}
                    for s in range(d):
                        if a[s, p]:
                            row[var[(s, q)]] = row.get(var[(s, q)], 0) + a[s, p]
                        if a[s, q]:
                            row[var[(p, s)]] = row.get(var[(p, s)], 0) + a[s, q]
                    row = {c: Fraction(v) for c, v in row.items() if v}
                    if row:
                        ech.add(row)
        for vec in ech.nullspace():
            G = np.empty((n, n), dtype=object)
            G.fill(Fraction(0))
            for t, (i, j) in enumerate(unknowns):
                if vec[t]:
                    G[rng.start + i, rng.start + j] = G[rng.start + j, rng.start + i] = Fraction(vec[t])
            out.append(GramForm(dec, ExactMatrix(G), blocks))
    return out


def span_rank(forms) -> int:
    ech = Echelon(forms[0].matrix.size ** 2 if forms else 0)
    for f in forms:
        ech.add({t: v for t, v in enumerate(f.fractions().ravel()) if v})
    return ech.rank


def spans_equal(forms1, forms2) -> bool:
    r1, r2 = span_rank(forms1), span_rank(forms2)
    return r1 == r2 == span_rank(list(forms1) + list(forms2))


def unit_forms(dec: GradedDecomposition, convention: str = "split") -> list:
    """build_form at the six unit parameter vectors."""
    out = []
    for t in range(6):
        v = [0] * 6
        v[t] = 1
        out.append(build_form(dec, MetricParams.from_sequence(v), convention))
    return out


# ---------------------------------------------------------------------------
# Killing restriction
# ---------------------------------------------------------------------------

def killing_restriction(dec: GradedDecomposition):
    """Sign-flipped Killing form on m and its adapted parameters.

    At rank 1 the lam1 slots have no coordinates to read from; they are set
    to ``2 * lam2``.
    """
    mb = dec.m_basis()
    n = len(mb)
    K = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(i, n):
            K[i, j] = K[j, i] = -killing_form(mb[i], mb[j])
    form = GramForm(dec, ExactMatrix(K), dec.m_blocks())
    vals = []
    for g, rng in dec.m_blocks().items():
        diag = dec.diagonal_positions(g)
        off = [t for t in range(len(rng)) if t not in diag]
        lam2 = K[rng.start + diag[0], rng.start + diag[0]]
        lam1 = K[rng.start + off[0], rng.start + off[0]] if off else 2 * lam2
        vals += [lam1, lam2]
    params = MetricParams.from_sequence(vals)
    rebuilt = build_form(dec, params)
    if rebuilt.matrix != form.matrix:
        raise ConsistencyError("Killing restriction is not in the adapted family")
    return form, params


# ---------------------------------------------------------------------------
# Natural reductivity
# ---------------------------------------------------------------------------

def m_bracket_table(dec: GradedDecomposition):
    """``(num, den)`` with ``num[x, y, :] / den`` the m-coordinates of ``[m_x, m_y]``."""
    if "m_struct" not in dec._cache:
        full = dec.full_basis()
        ne = len(dec.components[KleinLabel.E])
        mb = dec.m_basis()
        n = len(mb)
        C = np.empty((n, n, n), dtype=object)
        C.fill(Fraction(0))
        for x in range(n):
            for y in range(x + 1, n):
                num, den = full.scaled_coordinates(bracket(mb[x], mb[y]))
                for t in range(n):
                    v = int(num[ne + t])
                    if v:
                        C[x, y, t] = Fraction(v, den)
                        C[y, x, t] = -C[x, y, t]
        dec._cache["m_struct"] = fractions_to_scaled(C)
    return dec._cache["m_struct"]


def _nr_tensor(table, G: np.ndarray):
    """Scaled tensor ``R[x, y, z] = B([x,y]_m, z) + B(y, [x,z]_m)``: ``(num, den)``."""
    c_num, c_den = table
    g_num, g_den = fractions_to_scaled(G)
    CG = _intmatmul(c_num, g_num)
    return CG + CG.transpose(0, 2, 1), c_den * g_den


def natural_reductivity_check(dec: GradedDecomposition, form: GramForm) -> Certificate:
    """``B([X,Y]_m, Z) + B(Y, [X,Z]_m) = 0`` on all basis triples of m."""
    R, den = _nr_tensor(m_bracket_table(dec), form.fractions())
    labels = dec.m_basis().labels
    cert = Certificate("natural-reductivity")
    worst, witness = Fraction(0), None
    nz = np.nonzero(R)
    if len(nz[0]):
        vals = np.abs(_widen(R[nz]))
        t = int(np.argmax(vals))
        worst = Fraction(int(vals[t]), den)
        witness = tuple(int(a[t]) for a in nz)
    detail = "" if witness is None else "witness X={}, Y={}, Z={}".format(*(labels[i] for i in witness))
    cert.add("naturally reductive", witness is None, worst, detail)
    return cert


def natural_reductivity_locus(dec: GradedDecomposition, convention: str = "split") -> list:
    """Basis of the parameter vectors whose form passes the natural-reductivity check.

    The check is linear in the Gram matrix and the Gram matrix is linear in
    the six parameters, so the passing set is a linear subspace of Q^6.
    """
    table = m_bracket_table(dec)
    cols = []
    for f in unit_forms(dec, convention):
        R, den = _nr_tensor(table, f.fractions())
        cols.append([Fraction(int(v), den) for v in R.ravel()])
    ech = Echelon(6)
    for r in range(len(cols[0])):
        row = {t: cols[t][r] for t in range(6) if cols[t][r]}
        if row:
            ech.add(row)
    return [tuple(Fraction(x) for x in v) for v in ech.nullspace()]


def in_locus(params: MetricParams, locus: list) -> bool:
    ech = Echelon(6)
    for v in locus:
        ech.add({t: x for t, x in enumerate(v) if x})
    return not ech.reduce({t: x for t, x in enumerate(params.as_tuple()) if x})


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

def sparse_triplets(m: ExactMatrix) -> list:
    return [[i, j, format_rational(v)] for i, j, v in m.nonzero_entries()]


def metric_report(dec: GradedDecomposition, params: MetricParams, convention: str = "split") -> dict:
    form = build_form(dec, params, convention)
    inv = invariance_residual(dec, form)
    nr = natural_reductivity_check(dec, form)
    report = {
        "rank": dec.rank,
        "convention": convention,
        "params": params.to_json(),
        "gram": sparse_triplets(form.matrix),
        "basis": list(dec.m_basis().labels),
        "invariance": "pass" if inv.value == 0 else "fail",
        "invariance_residual": format_rational(inv.value),
        "naturally_reductive": "pass" if nr.passed else "fail",
    }
    if inv.witness:
        report["invariance_witness"] = list(inv.witness)
    if dec.rank == 1:
        report["unused"] = ["lam1_a", "lam1_b", "lam1_c"]
    return report
