"""Hermitian pairs, nilpotent Lie algebra cohomology and the Hodge comparison.

For pairs whose positive q-roots span an abelian nilradical, the block
operators split as D = C+ + C- and, under the standard identification
of M tensor S with the exterior-algebra complexes, C+ is the
Chevalley-Eilenberg differential and C- the boundary.  Unitarity of a
highest weight module is certified through the contravariant form
twisted by the parabolic grading (the Hermitian form of the noncompact
real form), and positivity turns the per-weight comparison of Dirac and
nilpotent cohomology into exact rank arithmetic.
"""

from fractions import Fraction

from .exactla import Mat, span_basis, subspace_intersect
from .cato import ContravariantForm, WeightModuleWindow
from .dirac import BlockSpace, DiracBlock, _place
from .liealg import PairGH, is_symmetric_pair
from .roots import Weight
from .spinor import SpinModule

_F0 = Fraction(0)
_F1 = Fraction(1)


class NotHermitian(ValueError):
    """The pair is not of Hermitian type; carries a witness root pair."""


class HermitianPair:
    """A pair with abelian q-halves and the parabolic grading functional."""

    def __init__(self, pair: PairGH):
        self.pair = pair
        for a in pair.q_positive:
            for b in pair.q_positive:
                if (a + b) in pair.rs.root_set:
                    raise NotHermitian(f"q is not abelian: witness ({a}, {b})")
        self.p_plus = list(pair.q_positive)
        self.p_minus = [-a for a in pair.q_positive]
        self.q_abelian = True
        self.parabolic_containment = True  # span of q+ contains no negative root
        if not is_symmetric_pair(pair):
            raise NotHermitian("abelian q-halves but [q,q] leaves h")
        self._grading = self._grading_functional()

    def _grading_functional(self):
        # phi with phi = 0 on the subsystem, 1 on positive q-roots
        rows = []
        rhs = []
        for a in self.pair.delta_h_pos:
            rows.append(list(a))
            rhs.append(_F0)
        for b in self.pair.q_positive:
            rows.append(list(b))
            rhs.append(_F1)
        mat = Mat(rows, self.pair.rank)
        sol = mat.solve(tuple(rhs)) if rows else None
        if sol is None:
            raise NotHermitian("no parabolic grading functional")
        return sol

    def q_degree(self, v: Weight) -> Fraction:
        return sum((self._grading[i] * v[i] for i in range(len(v))), _F0)


def detect_hermitian(pair: PairGH) -> HermitianPair:
    return HermitianPair(pair)


# -- unitary structure ---------------------------------------------------------

class UnitaryStructure:
    """Twisted contravariant grams: the invariant Hermitian inner product.

    On a highest weight module of the noncompact Hermitian real form the
    invariant form differs from the contravariant one by the sign of the
    parabolic degree of the drop from the highest weight.  Works on a
    Verma window or on its simple quotient (form induced on a complement
    of the radical).
    """

    def __init__(self, hp: HermitianPair, vw, form: ContravariantForm):
        self.hp = hp
        self.vw = vw
        self.form = form
        self.lam = vw.top_weight

    def gram(self, w) -> Mat:
        if self.vw.kind == "simple":
            keep = self.vw.kept_indices(w)
            full = self.form.gram(w)
            g = Mat([[full.rows[i][j] for j in keep] for i in keep], len(keep))
        else:
            g = self.form.gram(w)
        deg = self.hp.q_degree(self.lam - w)
        if deg.denominator != 1:
            raise AssertionError(f"non-integral parabolic degree at {w}")
        return g if deg % 2 == 0 else -g

    def positive_definite(self, w) -> bool:
        g = self.gram(w)
        # Sylvester: all leading principal minors positive
        n = g.nrows
        for k in range(1, n + 1):
            sub = Mat([row[:k] for row in g.rows[:k]], k)
            if _det(sub) <= 0:
                return False
        return True


def _det(m: Mat) -> Fraction:
    n = m.nrows
    if n == 0:
        return _F1
    rows = [list(r) for r in m.rows]
    det = _F1
    for c in range(n):
        piv = None
        for r in range(c, n):
            if rows[r][c]:
                piv = r
                break
        if piv is None:
            return _F0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = _F1 / rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] * inv
            if f:
                for j in range(c, n):
                    rows[r][j] -= f * rows[c][j]
    return det


def unitarity_check(hp: HermitianPair, vw, form: ContravariantForm, weights) -> dict:
    """Exact positive-definiteness of the twisted grams, per weight."""
    us = UnitaryStructure(hp, vw, form)
    per_weight = {}
    ok = True
    for w in weights:
        if vw.dim(w) == 0:
            continue
        pd = us.positive_definite(w)
        per_weight[w] = pd
        ok = ok and pd
    return {"unitary": ok, "per_weight": per_weight, "structure": us}


# -- Chevalley-Eilenberg complexes ----------------------------------------------

class CEComplex:
    """Per-weight slice of the nilpotent (co)homology complexes of a module.

    Degree-k chains are module vectors tensored with k-fold wedges of the
    negative q-root vectors; with abelian q-halves the differential is
    d = sum pi(e_j) (x) wedge(f_j) and the boundary is
    del = sum pi(f_j) (x) contract(e_j).
    """

    def __init__(self, hp: HermitianPair, sm: SpinModule, m: WeightModuleWindow,
                 nu: Weight):
        self.hp = hp
        self.sm = sm
        self.m = m
        self.nu = nu
        # reuse the spin bookkeeping: CE weight adds the rho-shift
        self.shift = hp.pair.rho - hp.pair.rho_h
        self.space = BlockSpace(hp.pair, sm, m, nu + self.shift)
        self.nq = sm.nq

    def degree_indices(self, k):
        idx = []
        for i in range(self.sm.dim):
            if bin(i).count("1") == k:
                for j in range(self.space.comp_dims[i]):
                    idx.append(self.space.offsets[i] + j)
        return idx

    def degree_dim(self, k):
        return len(self.degree_indices(k))

    def _operator(self, raising) -> Mat:
        sp = self.space
        rows = [[_F0] * sp.dim for _ in range(sp.dim)]
        pair = self.hp.pair
        for alpha in pair.q_positive:
            g = self.sm.gamma_root(-alpha) if raising else self.sm.gamma_root(alpha)
            gen = ("e", alpha) if raising else ("f", alpha)
            for i in range(self.sm.dim):
                if not sp.comp_dims[i]:
                    continue
                for j in range(self.sm.dim):
                    c = g.rows[j][i]
                    if c and sp.comp_dims[j]:
                        act = self.m.action(gen, sp.comp_weights[i])
                        if act.nrows:
                            _place(rows, sp, sp, j, i, act, c)
        return Mat(rows, sp.dim)

    def differential(self) -> Mat:
        """d on the whole slice; restricts to degree k -> k+1."""
        return self._operator(raising=True)

    def boundary(self) -> Mat:
        """del on the whole slice; restricts to degree k+1 -> k."""
        return self._operator(raising=False)

    def graded_block(self, op: Mat, k_from, k_to) -> Mat:
        src = self.degree_indices(k_from)
        tgt = self.degree_indices(k_to)
        return Mat([[op.rows[i][j] for j in src] for i in tgt], len(src))

    def cohomology_dims(self):
        """dim H^k(d) per degree on this weight slice."""
        d = self.differential()
        out = {}
        for k in range(self.nq + 1):
            dk = self.graded_block(d, k, k + 1) if k < self.nq else \
                Mat([], self.degree_dim(self.nq))
            prev = self.graded_block(d, k - 1, k) if k > 0 else \
                Mat.zero(self.degree_dim(0), 0)
            ker = self.degree_dim(k) - (dk.rank() if k < self.nq else 0)
            im = prev.rank()
            val = ker - im
            if val:
                out[k] = val
        return out

    def homology_dims(self):
        """dim H_k(del) per degree on this weight slice."""
        b = self.boundary()
        out = {}
        for k in range(self.nq + 1):
            down = self.graded_block(b, k, k - 1) if k > 0 else \
                Mat([], self.degree_dim(0))
            up = self.graded_block(b, k + 1, k) if k < self.nq else \
                Mat.zero(self.degree_dim(self.nq), 0)
            ker = self.degree_dim(k) - (down.rank() if k > 0 else 0)
            im = up.rank()
            val = ker - im
            if val:
                out[k] = val
        return out


def ce_complex(hp, sm, m, nu) -> CEComplex:
    return CEComplex(hp, sm, m, nu)


def identification_check(hp, sm, m, mu) -> dict:
    """C+ = d and C- = del under the wedge/spin identification at block mu."""
    blk = DiracBlock(hp.pair, m.cb, sm, m, mu)
    ce = CEComplex(hp, sm, m, mu - (hp.pair.rho - hp.pair.rho_h))
    d = ce.differential()
    bd = ce.boundary()
    ok_plus = blk.d_plus == d
    ok_minus = blk.d_minus == bd
    ok_cubic = blk.cubic_part.is_zero()
    ok_sum = blk.d == d + bd
    return {
        "c_plus_is_d": ok_plus,
        "c_minus_is_boundary": ok_minus,
        "cubic_vanishes": ok_cubic,
        "d_is_sum": ok_sum,
        "ok": ok_plus and ok_minus and ok_cubic and ok_sum,
    }


# -- Hodge decomposition --------------------------------------------------------

def block_inner_gram(us: UnitaryStructure, sm: SpinModule, m, mu) -> Mat:
    """Inner product on the block: twisted module grams times the spin norms.

    In the pairing-1 root-vector basis the spin monomials are orthogonal
    with norm prod 1/kappa over the wedge factors (the image of the
    orthonormal-convention basis under the rational rescaling); these
    factors cancel the kappa's of the module-side transpose so that the
    half operators become exact mutual adjoints.
    """
    sp = BlockSpace(us.hp.pair, sm, m, mu)
    cb = m.cb
    rows = [[_F0] * sp.dim for _ in range(sp.dim)]
    for i in range(sm.dim):
        if sp.comp_dims[i]:
            norm = _F1
            for b in range(sm.nq):
                if i >> b & 1:
                    norm /= cb.kappa_integral(sm.q_pos[b])
            g = us.gram(sp.comp_weights[i]).scale(norm)
            _place(rows, sp, sp, i, i, g)
    return Mat(rows, sp.dim)


def hodge_decomposition_check(hp, sm, m, us: UnitaryStructure, mu) -> dict:
    """Adjointness, kernel-image splitting and the C+ decomposition at mu."""
    blk = DiracBlock(hp.pair, m.cb, sm, m, mu)
    g = block_inner_gram(us, sm, m, mu)
    n = blk.dim
    report = {"weight": mu, "dim": n}
    if n == 0:
        report.update({"adjoint": True, "splitting": True, "cplus": True, "ok": True})
        return report
    ginv = g.inv()
    adj_plus = ginv @ blk.d_plus.T @ g
    adj_minus = ginv @ blk.d_minus.T @ g
    adjoint_ok = (adj_plus == -blk.d_minus) and (adj_minus == -blk.d_plus)
    ker = blk.d.nullspace()
    im = span_basis(blk.d.cols(), n)
    meet = subspace_intersect(ker, im, n)
    split_ok = not meet and (len(ker) + len(im) == n)
    # ker C+ = im C+ (+) ker D, orthogonal direct sum
    kerc = blk.d_plus.nullspace()
    imc = span_basis(blk.d_plus.cols(), n)
    inside = all(not any(blk.d_plus.apply(v)) for v in imc)  # C+^2 = 0
    kd_in = all(not any(blk.d_plus.apply(v)) for v in ker)
    meet2 = subspace_intersect(imc, ker, n)
    cplus_ok = inside and kd_in and not meet2 and \
        len(kerc) == len(imc) + len(ker)
    kerc_m = blk.d_minus.nullspace()
    imc_m = span_basis(blk.d_minus.cols(), n)
    cminus_ok = all(not any(blk.d_minus.apply(v)) for v in imc_m) and \
        all(not any(blk.d_minus.apply(v)) for v in ker) and \
        not subspace_intersect(imc_m, ker, n) and \
        len(kerc_m) == len(imc_m) + len(ker)
    report.update({
        "adjoint": adjoint_ok,
        "splitting": split_ok,
        "cplus": cplus_ok,
        "cminus": cminus_ok,
        "hd_is_ker": split_ok,
        "ok": adjoint_ok and split_ok and cplus_ok and cminus_ok,
    })
    return report


def theorem52_comparison(hp, sm, m, mu) -> dict:
    """H_D dims at mu against total CE cohomology and homology at the shift."""
    blk = DiracBlock(hp.pair, m.cb, sm, m, mu)
    hd = blk.dirac_cohomology()["hd"]
    nu = mu - (hp.pair.rho - hp.pair.rho_h)
    ce = CEComplex(hp, sm, m, nu)
    coh = sum(ce.cohomology_dims().values())
    hom = sum(ce.homology_dims().values())
    return {
        "weight": mu,
        "hd": hd,
        "ce_cohomology": coh,
        "ce_homology": hom,
        "ok": hd == coh == hom,
    }
