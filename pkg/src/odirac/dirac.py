"""Cubic Dirac operator blocks and their spectral structure.

Everything is computed per weight subspace of M tensor S: the operator
never leaves a weight space, each block is a finite exact rational
matrix, and kernels, images, generalized eigenspaces, Jordan chains,
(higher) Dirac cohomology and the index identities reduce to rank
arithmetic there.
"""

from fractions import Fraction

from .exactla import (Mat, charpoly, span_basis, subspace_dim, subspace_intersect,
                      subspace_sum)
from .cato import OutsideWindow, WeightModuleWindow
from .liealg import PairGH
from .roots import Weight
from .spinor import SpinModule

_F0 = Fraction(0)
_F1 = Fraction(1)


class LiftFailure(Exception):
    """A Jordan lift violated the structure the exact-circle proof guarantees."""


class BlockSpace:
    """Basis bookkeeping for (M tensor S) at one weight."""

    def __init__(self, pair: PairGH, sm: SpinModule, m: WeightModuleWindow, mu: Weight):
        self.pair = pair
        self.sm = sm
        self.m = m
        self.mu = mu
        self.comp_weights = [mu - w for w in sm.weights]
        for w in self.comp_weights:
            if not m.materialized(w):
                raise OutsideWindow(f"block {mu}: module weight {w} not materialized")
        self.comp_dims = [m.dim(w) for w in self.comp_weights]
        self.offsets = []
        off = 0
        for d in self.comp_dims:
            self.offsets.append(off)
            off += d
        self.dim = off
        self.parity = []
        for i, d in enumerate(self.comp_dims):
            self.parity.extend([sm.parity[i]] * d)

    def parity_cols(self, sign):
        want = 0 if sign > 0 else 1
        return [i for i, p in enumerate(self.parity) if p == want]

    def graded_dims(self):
        plus = len(self.parity_cols(+1))
        return plus, self.dim - plus


def _place(rows, space_tgt, space_src, tgt_i, src_i, mat, coeff=_F1):
    ro = space_tgt.offsets[tgt_i]
    co = space_src.offsets[src_i]
    for i in range(mat.nrows):
        row = rows[ro + i]
        for j in range(mat.ncols):
            v = mat.rows[i][j]
            if v:
                row[co + j] += coeff * v


def h_generator_block(pair, cb, sm, m, gen, mu) -> Mat:
    """Diagonal action of an h-generator from the block at mu to mu + wt(gen)."""
    src = BlockSpace(pair, sm, m, mu)
    tgt = BlockSpace(pair, sm, m, mu + cb.generator_weight(gen))
    rows = [[_F0] * src.dim for _ in range(tgt.dim)]
    ha = sm.h_action(gen)
    for i in range(sm.dim):
        if src.comp_dims[i]:
            act = m.action(gen, src.comp_weights[i])
            if act.nrows:
                _place(rows, tgt, src, i, i, act)
            for j in range(sm.dim):
                c = ha.rows[j][i]
                if c and tgt.comp_dims[j]:
                    ident = Mat.identity(src.comp_dims[i])
                    _place(rows, tgt, src, j, i, ident, c)
    return Mat(rows, src.dim)


class DiracBlock:
    """The cubic Dirac operator on one weight space, with derived data."""

    def __init__(self, pair: PairGH, cb, sm: SpinModule, m: WeightModuleWindow,
                 mu: Weight):
        self.pair = pair
        self.cb = cb
        self.sm = sm
        self.m = m
        self.mu = mu
        self.space = BlockSpace(pair, sm, m, mu)
        n = self.space.dim
        plus_rows = [[_F0] * n for _ in range(n)]
        minus_rows = [[_F0] * n for _ in range(n)]
        cubic_rows = [[_F0] * n for _ in range(n)]
        sp = self.space
        for alpha in pair.q_positive:
            g_low = sm.gamma_root(-alpha)   # wedge: spin weight drops by alpha
            g_rai = sm.gamma_root(alpha)    # contraction: spin weight rises
            for i in range(sm.dim):
                if not sp.comp_dims[i]:
                    continue
                for j in range(sm.dim):
                    if not sp.comp_dims[j]:
                        continue
                    c = g_low.rows[j][i]
                    if c:
                        act = m.action(("e", alpha), sp.comp_weights[i])
                        _place(plus_rows, sp, sp, j, i, act, c)
                    c = g_rai.rows[j][i]
                    if c:
                        act = m.action(("f", alpha), sp.comp_weights[i])
                        _place(minus_rows, sp, sp, j, i, act, c)
        for i in range(sm.dim):
            if not sp.comp_dims[i]:
                continue
            for j in range(sm.dim):
                c = sm.cubic.rows[j][i]
                if c and sp.comp_dims[j]:
                    _place(cubic_rows, sp, sp, j, i, Mat.identity(sp.comp_dims[i]), c)
        self.d_plus = Mat(plus_rows, n)
        self.d_minus = Mat(minus_rows, n)
        self.cubic_part = Mat(cubic_rows, n)
        self.d = self.d_plus + self.d_minus - self.cubic_part
        self._gen0 = None
        self._nilp = None

    @property
    def dim(self):
        return self.space.dim

    def graded_map(self, sign):
        """D restricted to the sign part, as a map to the opposite part."""
        src = self.space.parity_cols(sign)
        tgt = self.space.parity_cols(-sign)
        return Mat([[self.d.rows[i][j] for j in src] for i in tgt], len(src))

    # -- generalized kernel and the nilpotent restriction ----------------------

    def gen0(self):
        """Homogeneous canonical basis of the generalized kernel, with parities."""
        if self._gen0 is None:
            self._gen0 = _graded_stable_kernel(self.d, self.space.parity)
        return self._gen0

    def nilpotent(self):
        if self._nilp is None:
            vecs, parities = self.gen0()
            self._nilp = GradedNilpotent.from_operator(self.d, vecs, parities)
        return self._nilp

    def kernel_dim(self):
        return self.dim - self.d.rank()

    def kernel_basis(self):
        return self.d.nullspace()

    def image_basis(self):
        return span_basis(self.d.cols(), self.dim)

    def dirac_cohomology(self):
        """Dims of H_D and its graded halves at this weight."""
        nil = self.nilpotent()
        return {
            "dim_block": self.dim,
            "ker": self.dim - self.d.rank(),
            "im": self.d.rank(),
            "gen0": nil.dim,
            "hd": nil.hd_total(),
            "hd_plus": nil.hd_graded(+1),
            "hd_minus": nil.hd_graded(-1),
        }

    def higher_cohomology(self):
        """H_top^k dims by the defining quotient, cross-checked against Jordan data."""
        nil = self.nilpotent()
        direct = nil.htop_direct()
        from_jordan = nil.htop_from_chains()
        if direct != from_jordan:
            raise AssertionError(
                f"higher cohomology mismatch at {self.mu}: {direct} vs {from_jordan}")
        return direct

    def eigenvalue_decomposition(self):
        """Exact generalized eigenvalues of D^2 with their eigenspace dims."""
        n = self.dim
        if n == 0:
            return {}
        d2 = self.d @ self.d
        candidates = self._candidate_eigenvalues()
        out = {}
        total = 0
        ident = Mat.identity(n)
        for c in sorted(set(candidates)):
            p = (d2 - ident.scale(c)).power(n)
            dim_c = n - p.rank()
            if dim_c:
                out[c] = dim_c
                total += dim_c
        if total != n:
            raise AssertionError(
                f"predicted eigenvalues cover {total} of {n} dims at {self.mu}")
        if n <= 14:
            poly = charpoly(d2)
            expect = [_F1]
            for c, k in out.items():
                for _ in range(k):
                    expect = _poly_mul_linear(expect, c)
            if poly != expect:
                raise AssertionError(f"charpoly factorization mismatch at {self.mu}")
        return out

    def _candidate_eigenvalues(self):
        pair = self.pair
        form = pair.form
        lam_shift = {form.norm2(lam + pair.rho) for lam in self.m.infchars}
        cand_weights = {self.mu}
        frontier = [self.mu]
        while frontier:
            nxt = []
            for w in frontier:
                for a in pair.delta_h_pos:
                    up = w + a
                    if (self.m.top_weight + self.sm.top_weight - up).height >= 0 \
                            and up not in cand_weights:
                        cand_weights.add(up)
                        nxt.append(up)
            frontier = nxt
        vals = []
        for nu in cand_weights:
            nn = form.norm2(nu + pair.rho_h)
            for ls in lam_shift:
                vals.append(Fraction(ls - nn, 2))
        return vals


def _poly_mul_linear(coeffs, c):
    # multiply polynomial (descending coeffs) by (x - c)
    out = list(coeffs) + [_F0]
    for i in range(len(coeffs)):
        out[i + 1] -= c * coeffs[i]
    return out


def assemble_block(pair, cb, sm, m, mu) -> DiracBlock:
    return DiracBlock(pair, cb, sm, m, mu)


def _graded_stable_kernel(d, parity):
    """Basis of the generalized kernel, homogeneous and canonical per parity."""
    n = d.nrows
    if n == 0:
        return [], []
    power = d
    prev = -1
    while True:
        dim_k = n - power.rank()
        if dim_k == prev:
            break
        prev = dim_k
        power = power @ d
    vecs, tags = [], []
    for sign in (+1, -1):
        cols = [i for i, p in enumerate(parity) if p == (0 if sign > 0 else 1)]
        if not cols:
            continue
        sub = Mat([[power.rows[i][j] for j in cols] for i in range(n)], len(cols))
        for v in sub.nullspace():
            full = [_F0] * n
            for ci, c in zip(cols, v):
                full[ci] = c
            vecs.append(tuple(full))
            tags.append(0 if sign > 0 else 1)
    return vecs, tags


class GradedNilpotent:
    """A parity-odd nilpotent operator on a graded space, in its own coordinates."""

    def __init__(self, n_mat: Mat, parity):
        self.n = n_mat
        self.dim = n_mat.nrows
        self.parity = list(parity)
        self._powers = [Mat.identity(self.dim), n_mat]
        self._chains = None

    @staticmethod
    def from_operator(d, basis_vecs, parities):
        g = Mat.from_cols(basis_vecs, d.nrows) if basis_vecs else Mat([], 0)
        cols = []
        for v in basis_vecs:
            img = d.apply(v)
            x = g.solve(img)
            if x is None:
                raise AssertionError("operator does not preserve the generalized kernel")
            cols.append(x)
        return GradedNilpotent(Mat.from_cols(cols, len(basis_vecs)), parities)

    def power(self, k):
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] @ self.n)
        return self._powers[k]

    def cols_of(self, sign):
        want = 0 if sign > 0 else 1
        return [i for i, p in enumerate(self.parity) if p == want]

    def kernel_graded(self, k, sign):
        """Basis of ker(N^k) in the sign part, embedded in full coordinates."""
        if self.dim == 0:
            return []
        cols = self.cols_of(sign)
        if not cols:
            return []
        p = self.power(k)
        sub = Mat([[p.rows[i][j] for j in cols] for i in range(self.dim)], len(cols))
        out = []
        for v in sub.nullspace():
            full = [_F0] * self.dim
            for ci, c in zip(cols, v):
                full[ci] = c
            out.append(tuple(full))
        return out

    def image_graded(self, sign):
        """Basis of (im N) in the sign part: N applied to the opposite part."""
        if self.dim == 0:
            return []
        src = self.cols_of(-sign)
        vecs = [self.n.col(j) for j in src]
        return span_basis(vecs, self.dim)

    def hd_total(self):
        k1p = self.kernel_graded(1, +1)
        k1m = self.kernel_graded(1, -1)
        return self._quotient_dim(k1p, +1, 0) + self._quotient_dim(k1m, -1, 0)

    def hd_graded(self, sign):
        return self._quotient_dim(self.kernel_graded(1, sign), sign, 0)

    def _quotient_dim(self, ker_basis, sign, lower_k):
        """dim ker / (ker meet im N + ker N^{lower_k}), all inside the sign part."""
        if not ker_basis:
            return 0
        im = self.image_graded(sign)
        meet = subspace_intersect(ker_basis, im, self.dim)
        lower = self.kernel_graded(lower_k, sign) if lower_k else []
        den = subspace_sum(meet, lower)
        return len(span_basis(ker_basis)) - len(den)

    def htop_direct(self):
        """{k: (dim plus, dim minus)} from the defining quotients."""
        out = {}
        k = 0
        while True:
            kp = self.kernel_graded(2 * k + 1, +1)
            km = self.kernel_graded(2 * k + 1, -1)
            dp = self._htop_quotient(kp, +1, 2 * k)
            dm = self._htop_quotient(km, -1, 2 * k)
            if dp or dm:
                out[k] = (dp, dm)
            if len(kp) + len(km) == self.dim:
                break
            k += 1
        return out

    def _htop_quotient(self, ker_basis, sign, lower_k):
        if not ker_basis:
            return 0
        im = self.image_graded(sign)
        meet = subspace_intersect(ker_basis, im, self.dim)
        lower = self.kernel_graded(lower_k, sign)
        den = subspace_sum(meet, lower)
        return len(span_basis(ker_basis)) - len(den)

    # -- Jordan chains ----------------------------------------------------------

    def chains(self, seeds=None):
        """Jordan chains [top, N top, ...], homogeneous, deterministic.

        `seeds` is a list of (vector, size) pairs that must appear as
        chain tops; a seed that cannot be completed raises LiftFailure.
        """
        if self._chains is not None and seeds is None:
            return self._chains
        result = self._compute_chains(seeds or [])
        if seeds is None:
            self._chains = result
        return result

    def _compute_chains(self, seeds):
        if self.dim == 0:
            return []
        s = 0
        while self.kernel_dim(s) < self.dim:
            s += 1
        chains = []
        for k in range(s, 0, -1):
            base = []
            for sign in (+1, -1):
                base.extend(self.kernel_graded(k - 1, sign))
            for sign in (+1, -1):
                for v in self.kernel_graded(k + 1, sign):
                    img = self.n.apply(v)
                    if any(img):
                        base.append(img)
            level_span = span_basis(base, self.dim)
            taken = list(level_span)
            pool = [(vec, size) for vec, size in seeds if size == k]
            for vec, _size in pool:
                if self._chain_length(vec) != k:
                    raise LiftFailure(f"seed has chain length != {k}")
                if subspace_dim(taken + [vec]) == len(span_basis(taken)):
                    raise LiftFailure("seed top is not independent at its level")
                taken = span_basis(taken + [vec])
                chains.append(self._chain_of(vec, k))
            for sign in (+1, -1):
                for v in self.kernel_graded(k, sign):
                    if subspace_dim(taken + [v]) > len(span_basis(taken)):
                        taken = span_basis(taken + [v])
                        chains.append(self._chain_of(v, k))
        total = sum(len(c) for c in chains)
        if total != self.dim:
            raise AssertionError("Jordan chains do not fill the generalized kernel")
        flat = [v for c in chains for v in c]
        if len(span_basis(flat, self.dim)) != self.dim:
            raise AssertionError("Jordan chain vectors are not independent")
        return chains

    def kernel_dim(self, k):
        return self.dim - self.power(k).rank()

    def _chain_length(self, vec):
        k = 0
        cur = tuple(vec)
        while any(cur):
            cur = self.n.apply(cur)
            k += 1
        return k

    def _chain_of(self, top, size):
        out = [tuple(top)]
        cur = tuple(top)
        for _ in range(size - 1):
            cur = self.n.apply(cur)
            out.append(cur)
        return out

    def vector_parity(self, vec):
        pars = {self.parity[i] for i, c in enumerate(vec) if c}
        if len(pars) != 1:
            raise AssertionError("vector is not parity homogeneous")
        return pars.pop()

    def htop_from_chains(self, chains=None):
        """{k: (plus, minus)} counting odd chains by top parity."""
        out = {}
        for chain in (chains if chains is not None else self.chains()):
            size = len(chain)
            if size % 2 == 0:
                continue
            k = (size - 1) // 2
            p = self.vector_parity(chain[0])
            dp, dm = out.get(k, (0, 0))
            if p == 0:
                out[k] = (dp + 1, dm)
            else:
                out[k] = (dp, dm + 1)
        return out

    def layer_dims(self, chains=None):
        """dim N_{mu,k} split by parity, k >= 1, from a chain decomposition."""
        out = {}
        for chain in (chains if chains is not None else self.chains()):
            size = len(chain)
            for j in range(1, size + 1):
                vec = chain[size - j]  # W_j: j-th from the kernel end
                p = self.vector_parity(vec)
                dp, dm = out.get(j, (0, 0))
                out[j] = (dp + 1, dm) if p == 0 else (dp, dm + 1)
        return out


# -- Casimir identity ---------------------------------------------------------

def casimir_matrix(m: WeightModuleWindow, w: Weight, pos_roots, form) -> Mat:
    """Matrix of the Casimir built from the listed positive roots at weight w."""
    n = m.dim(w)
    out = Mat.identity(n).scale(form.norm2(w))
    for alpha in pos_roots:
        down_then_up = m.action(("e", alpha), w - alpha) @ m.action(("f", alpha), w)
        up_then_down = m.action(("f", alpha), w + alpha) @ m.action(("e", alpha), w)
        out = out + down_then_up + up_then_down
    return out


def casimir_h_block(pair, cb, sm, m, mu) -> Mat:
    """(Omega_h)_Delta on the block at mu via the diagonal h-action."""
    space = BlockSpace(pair, sm, m, mu)
    out = Mat.identity(space.dim).scale(pair.form.norm2(mu))
    for alpha in pair.delta_h_pos:
        e_up = h_generator_block(pair, cb, sm, m, ("e", alpha), mu - alpha)
        f_dn = h_generator_block(pair, cb, sm, m, ("f", alpha), mu)
        f_dn2 = h_generator_block(pair, cb, sm, m, ("f", alpha), mu + alpha)
        e_up2 = h_generator_block(pair, cb, sm, m, ("e", alpha), mu)
        out = out + e_up @ f_dn + f_dn2 @ e_up2
    return out


def check_square(pair, cb, sm, m, block: DiracBlock) -> dict:
    """2 D^2 against the Casimir expression, plus the eigenvalue audit."""
    mu = block.mu
    form = pair.form
    sp = block.space
    n = sp.dim
    rows = [[_F0] * n for _ in range(n)]
    for i in range(sm.dim):
        if sp.comp_dims[i]:
            cg = casimir_matrix(m, sp.comp_weights[i], pair.rs.positive_roots, form)
            _place(rows, sp, sp, i, i, cg)
    omega_g = Mat(rows, n)
    omega_h = casimir_h_block(pair, cb, sm, m, mu)
    scalar = form.norm2(pair.rho) - form.norm2(pair.rho_h)
    rhs = omega_g - omega_h + Mat.identity(n).scale(scalar)
    lhs = (block.d @ block.d).scale(2)
    identity_ok = lhs == rhs
    eigs = block.eigenvalue_decomposition()
    return {
        "matrix_identity": identity_ok,
        "eigenvalues": eigs,
    }


def h_equivariance_defect(pair, cb, sm, m, mu, gen) -> Mat:
    """[diag h-action, D] on the block at mu; zero iff D is h-equivariant."""
    wt = cb.generator_weight(gen)
    d_here = DiracBlock(pair, cb, sm, m, mu).d
    d_there = DiracBlock(pair, cb, sm, m, mu + wt).d
    g_here = h_generator_block(pair, cb, sm, m, gen, mu)
    return g_here @ d_here - d_there @ g_here


# -- theorem-level checks -----------------------------------------------------

def kostant_kernel_check(pair, cb, sm, f) -> dict:
    """ker D on F tensor S against the coset-sum of subsystem characters."""
    from .cato import finite_character_h

    lam = f.top_weight
    block_weights = sorted({wm + ws for wm in f.weights() for ws in set(sm.weights)},
                           key=lambda v: (-v.height, v))
    actual = {}
    for mu in block_weights:
        blk = DiracBlock(pair, cb, sm, f, mu)
        if blk.dim == 0:
            continue
        kd = blk.dim - blk.d.rank()
        if kd:
            actual[mu] = kd
    expected = {}
    constituents = []
    for wi in pair.weyl.coset_W1:
        nu = pair.weyl.act(wi, lam + pair.rho) - pair.rho_h
        constituents.append(nu)
        for w, d in finite_character_h(pair, nu).items():
            expected[w] = expected.get(w, 0) + d
    return {
        "match": actual == expected,
        "kernel_character": actual,
        "expected_character": expected,
        "constituents": constituents,
    }


def nonvanishing_check(pair, cb, sm, m) -> dict:
    """v+ tensor vacuum is in ker D and not in im D at the top weight."""
    top = m.top_weight
    mu = top + sm.top_weight
    blk = DiracBlock(pair, cb, sm, m, mu)
    sp = blk.space
    vac = sm.weights.index(sm.top_weight)
    off = sp.offsets[vac]
    d_top = sp.comp_dims[vac]
    if d_top == 0:
        raise AssertionError("top weight space is empty")
    units = [tuple(_F1 if i == off + j else _F0 for i in range(sp.dim))
             for j in range(d_top)]
    killed = all(not any(blk.d.apply(u)) for u in units)
    im_rank = blk.d.rank()
    stacked = Mat.from_cols(list(blk.d.cols()) + units, sp.dim)
    disjoint = stacked.rank() == im_rank + d_top
    return {
        "weight": mu,
        "top_dim": d_top,
        "in_kernel": killed,
        "not_in_image": disjoint,
        "ok": killed and disjoint,
    }


def simple_verma_theorem_check(pair, cb, sm, m, depth_below_top) -> dict:
    """H_D(M(lambda)) against the subsystem Verma character, per weight."""
    from .cato import verma_character_h, _cone_coords
    from .roots import is_antidominant

    lam = m.top_weight
    mu_top = lam + pair.rho - pair.rho_h
    anti = is_antidominant(lam, pair.rs, pair.form, pair.rho)
    target_anti = True
    for alpha in pair.delta_h_pos:
        v = pair.form.coroot_pair(mu_top + pair.rho_h, alpha)
        if v.denominator == 1 and v > 0:
            target_anti = False
    weights = [mu_top - Weight(c) for c in _cone_coords(pair.rank, depth_below_top)]
    actual = {}
    for mu in weights:
        blk = DiracBlock(pair, cb, sm, m, mu)
        if blk.dim == 0:
            continue
        hd = blk.dirac_cohomology()["hd"]
        if hd:
            actual[mu] = hd
    expected_all = verma_character_h(pair, mu_top, weights)
    expected = {w: d for w, d in expected_all.items() if d}
    return {
        "antidominant": anti,
        "target_antidominant": target_anti,
        "match": actual == expected,
        "hd_character": actual,
        "expected_character": expected,
        "mu_top": mu_top,
    }


def index_identity_check(pair, cb, sm, m, mu) -> dict:
    """Signed higher-cohomology sum against the graded block dimensions."""
    blk = DiracBlock(pair, cb, sm, m, mu)
    htop = blk.higher_cohomology()
    signed = sum(dp - dm for dp, dm in htop.values())
    plus, minus = blk.space.graded_dims()
    return {
        "weight": mu,
        "htop": htop,
        "signed_sum": signed,
        "graded_difference": plus - minus,
        "ok": signed == plus - minus,
    }


def _preimage_subspace(a: Mat, w_basis, src_dim):
    """Canonical basis of {v : a v lies in the span of w_basis}."""
    if a.nrows == 0:
        return [tuple(_F1 if i == j else _F0 for i in range(src_dim))
                for j in range(src_dim)]
    if not w_basis:
        return a.nullspace()
    stacked = a.hstack(Mat.from_cols(w_basis, a.nrows).scale(-1))
    vs = [z[:a.ncols] for z in stacked.nullspace()]
    return span_basis(vs, src_dim)


def singular_cohomology_weights(pair, cb, sm, m, weights) -> dict:
    """Weights at which H_D or some H_top^k carries an h-singular class.

    The audit of the infinitesimal-character statements applies to the
    subsystem constituents of the cohomology, which are detected by
    classes killed by every simple raising operator of the subsystem.
    """
    from .cato import _h_simples

    simples = _h_simples(pair)
    blocks = {}

    def blk(mu):
        b = blocks.get(mu)
        if b is None:
            b = DiracBlock(pair, cb, sm, m, mu)
            blocks[mu] = b
        return b

    def kernel_power(b, j):
        if b.dim == 0:
            return []
        return b.d.power(j).nullspace()

    def image(b):
        return span_basis(b.d.cols(), b.dim) if b.dim else []

    def den_hd(b):
        return subspace_intersect(kernel_power(b, 1), image(b), b.dim) if b.dim else []

    def den_htop(b, k):
        if b.dim == 0:
            return []
        meet = subspace_intersect(kernel_power(b, 2 * k + 1), image(b), b.dim)
        return subspace_sum(meet, kernel_power(b, 2 * k))

    out = {}
    for mu in weights:
        b = blk(mu)
        if b.dim == 0:
            continue
        raisers = []
        for alpha in simples:
            e_map = h_generator_block(pair, cb, sm, m, ("e", alpha), mu)
            raisers.append((alpha, e_map))
        entry = {}
        # H_D singular classes
        num = kernel_power(b, 1)
        if num:
            cand = num
            for alpha, e_map in raisers:
                cand = subspace_intersect(
                    cand, _preimage_subspace(e_map, den_hd(blk(mu + alpha)), b.dim),
                    b.dim)
            d_hd = len(cand) - len(den_hd(b))
            if d_hd:
                entry["hd"] = d_hd
        # H_top^k singular classes
        htop = {}
        k = 0
        while True:
            numk = kernel_power(b, 2 * k + 1)
            cand = numk
            for alpha, e_map in raisers:
                cand = subspace_intersect(
                    cand,
                    _preimage_subspace(e_map, den_htop(blk(mu + alpha), k), b.dim),
                    b.dim)
            dk = len(cand) - len(span_basis(den_htop(b, k), b.dim))
            if dk:
                htop[k] = dk
            if len(numk) == len(kernel_power(b, 2 * k + 3)):
                break
            k += 1
        if htop:
            entry["htop"] = htop
        if entry:
            out[mu] = entry
    return out


def vogan_audit(pair, weights_with_cohomology, infchars) -> dict:
    """Every weight carrying cohomology has a rho_h-shift in some W(lam+rho)."""
    weyl = pair.weyl
    audited = {}
    ok = True
    for nu in weights_with_cohomology:
        shifted = any(
            any(weyl.act(i, lam + pair.rho) == nu + pair.rho_h
                for i in range(len(weyl.elements)))
            for lam in infchars)
        unshifted = any(
            any(weyl.act(i, Weight(lam)) == nu for i in range(len(weyl.elements)))
            for lam in infchars)
        audited[nu] = {"shifted": shifted, "unshifted": unshifted}
        ok = ok and shifted
    return {"ok": ok, "per_weight": audited}


# -- exact circle --------------------------------------------------------------

def block_map(pair, sm, src_m, tgt_m, mat_fn, mu) -> Mat:
    """Tensor a per-weight module map with the identity of S on the mu-block."""
    src = BlockSpace(pair, sm, src_m, mu)
    tgt = BlockSpace(pair, sm, tgt_m, mu)
    rows = [[_F0] * src.dim for _ in range(tgt.dim)]
    for i in range(sm.dim):
        if src.comp_dims[i] and tgt.comp_dims[i]:
            _place(rows, tgt, src, i, i, mat_fn(src.comp_weights[i]))
    return Mat(rows, src.dim)


class CircleCertificate:
    def __init__(self, mu, triples, node_dims, exact):
        self.mu = mu
        self.triples = triples
        self.node_dims = node_dims
        self.exact = exact


def exact_circle(pair, cb, sm, ses, mu) -> CircleCertificate:
    """Jordan-compatible decomposition of an SES block and the six-term circle."""
    m1, m2, m3 = ses.modules()
    b1 = DiracBlock(pair, cb, sm, m1, mu)
    b2 = DiracBlock(pair, cb, sm, m2, mu)
    b3 = DiracBlock(pair, cb, sm, m3, mu)
    imap = block_map(pair, sm, m1, m2, lambda w: ses.inclusion(w), mu)
    pmap = block_map(pair, sm, m2, m3, lambda w: ses.projection(w), mu)
    if not (imap @ b1.d == b2.d @ imap):
        raise AssertionError("inclusion does not intertwine the Dirac operators")
    if not (pmap @ b2.d == b3.d @ pmap):
        raise AssertionError("projection does not intertwine the Dirac operators")

    g1_vecs, g1_par = b1.gen0()
    g2_vecs, g2_par = b2.gen0()
    g3_vecs, g3_par = b3.gen0()
    n1, n2, n3 = len(g1_vecs), len(g2_vecs), len(g3_vecs)
    if n2 != n1 + n3:
        raise LiftFailure(f"generalized kernels not exact at {mu}: {n1}+{n3} != {n2}")
    g1 = Mat.from_cols(g1_vecs, b1.dim) if n1 else Mat([], 0)
    g2 = Mat.from_cols(g2_vecs, b2.dim) if n2 else Mat([], 0)
    g3 = Mat.from_cols(g3_vecs, b3.dim) if n3 else Mat([], 0)

    def restrict(mapmat, src_g, tgt_g, src_n, tgt_n):
        cols = []
        for j in range(src_n):
            img = mapmat.apply(src_g.col(j))
            x = tgt_g.solve(img)
            if x is None:
                raise LiftFailure("map does not respect generalized kernels")
            cols.append(x)
        return Mat.from_cols(cols, tgt_n)

    i0 = restrict(imap, g1, g2, n1, n2)
    p0 = restrict(pmap, g2, g3, n2, n3)
    nil1 = b1.nilpotent()
    nil2 = b2.nilpotent()
    nil3 = b3.nilpotent()

    chains3 = nil3.chains()
    lifted = []  # (chain2, chain3, k, l, m)
    seeds2 = []
    for chain3 in chains3:
        msize = len(chain3)
        top3 = chain3[0]
        u = p0.solve(top3)
        if u is None:
            raise LiftFailure("top summand has no preimage in the generalized kernel")
        l = nil2._chain_length(u)
        if l < msize:
            raise LiftFailure("lift died too early")
        # top criterion: u not in ker N^{l-1} + N ker N^{l+1}
        lower = []
        for sign in (+1, -1):
            lower.extend(nil2.kernel_graded(l - 1, sign))
            for v in nil2.kernel_graded(l + 1, sign):
                img = nil2.n.apply(v)
                if any(img):
                    lower.append(img)
        if subspace_dim(lower + [u]) == subspace_dim(lower):
            raise LiftFailure("lifted preimage is not a Jordan top")
        lifted.append((u, l, msize, chain3))
        seeds2.append((u, l))

    # tails pull back to seed chains in the sub block
    seeds1 = []
    tails = []
    for (u, l, msize, chain3) in lifted:
        if l > msize:
            t = tuple(u)
            for _ in range(msize):
                t = nil2.n.apply(t)
            x = i0.solve(t)
            if x is None:
                raise LiftFailure("tail of a lifted chain is not in the sub block")
            seeds1.append((x, l - msize))
            tails.append(x)

    chains1 = nil1.chains(seeds=seeds1)
    triples = []
    for (u, l, msize, chain3) in lifted:
        triples.append({"k": l - msize, "l": l, "m": msize,
                        "top2": tuple(u), "top3": tuple(chain3[0])})
    # residual chains in the sub block are those not seeded
    seed_tops = [tuple(s[0]) for s in seeds1]
    residual = []
    for ch in chains1:
        if tuple(ch[0]) in seed_tops:
            seed_tops.remove(tuple(ch[0]))
        else:
            residual.append(ch)
    for ch in residual:
        k = len(ch)
        triples.append({"k": k, "l": k, "m": 0,
                        "top2": tuple(i0.apply(ch[0])), "top3": None})

    # full decomposition of the middle block: lifted chains + i(residual chains)
    all2 = []
    chain2_list = []
    for t in triples:
        ch = nil2._chain_of(t["top2"], t["l"])
        chain2_list.append(ch)
        all2.extend(ch)
    if len(span_basis(all2, n2)) != n2:
        raise LiftFailure("compatible decomposition does not span the middle kernel")
    # cross-check higher cohomology of the adapted decomposition
    if nil2.htop_from_chains(chain2_list) != nil2.htop_direct():
        raise LiftFailure("adapted decomposition disagrees with the direct quotients")

    # six-node circle: H1+ -> H2+ -> H3+ -> H1- -> H2- -> H3- -> H1+
    node_basis = {("H1", 0): [], ("H1", 1): [], ("H2", 0): [], ("H2", 1): [],
                  ("H3", 0): [], ("H3", 1): []}
    arrows = []  # (src_node, tgt_node, src_index, tgt_index)
    for tidx, t in enumerate(triples):
        k, l, msize = t["k"], t["l"], t["m"]
        p1 = p2 = p3 = None
        if k % 2:
            ch = nil2._chain_of(t["top2"], l)
            top1 = ch[msize]  # image of the J1 top inside J2
            p1 = nil2.vector_parity(top1)
            node_basis[("H1", p1)].append(("J1", tidx))
        if l % 2:
            p2 = nil2.vector_parity(t["top2"])
            node_basis[("H2", p2)].append(("J2", tidx))
        if msize % 2:
            p3 = nil3.vector_parity(t["top3"])
            node_basis[("H3", p3)].append(("J3", tidx))
        if k % 2 and l % 2:  # m even: iota is the isomorphism
            arrows.append((("H1", p1), ("H2", p2), ("J1", tidx), ("J2", tidx)))
        elif l % 2 and msize % 2:  # k even: pi is the isomorphism
            arrows.append((("H2", p2), ("H3", p3), ("J2", tidx), ("J3", tidx)))
        elif k % 2 and msize % 2:  # l even: connecting map
            arrows.append((("H3", p3), ("H1", p1), ("J3", tidx), ("J1", tidx)))

    # assemble the six maps as 0/1 matrices in the per-node bases
    order = [("H1", 0), ("H2", 0), ("H3", 0), ("H1", 1), ("H2", 1), ("H3", 1)]
    mats = {}
    for si in range(6):
        src = order[si]
        tgt = order[(si + 1) % 6]
        rows = [[_F0] * len(node_basis[src]) for _ in range(len(node_basis[tgt]))]
        for (a, bnode, akey, bkey) in arrows:
            if a == src and bnode == tgt:
                rows[node_basis[tgt].index(bkey)][node_basis[src].index(akey)] = _F1
        mats[(src, tgt)] = Mat(rows, len(node_basis[src]))

    exact = True
    for si in range(6):
        prev = order[(si - 1) % 6]
        here = order[si]
        nxt = order[(si + 1) % 6]
        incoming = mats[(prev, here)]
        outgoing = mats[(here, nxt)]
        if incoming.ncols and outgoing.nrows:
            if not (outgoing @ incoming).is_zero():
                exact = False
        im_rank = incoming.rank()
        ker_dim = len(node_basis[here]) - outgoing.rank()
        if im_rank != ker_dim:
            exact = False
    node_dims = {f"{n}{'+' if p == 0 else '-'}": len(node_basis[(n, p)])
                 for (n, p) in order}
    # the adapted H3 and H1 data must also match their direct quotients
    if nil3.htop_from_chains(chains3) != nil3.htop_direct():
        raise LiftFailure("quotient block decomposition disagrees with direct quotients")
    if nil1.htop_from_chains(chains1) != nil1.htop_direct():
        raise LiftFailure("sub block decomposition disagrees with direct quotients")
    return CircleCertificate(mu, triples, node_dims, exact)
