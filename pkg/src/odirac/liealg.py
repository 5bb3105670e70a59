"""Chevalley bases, subalgebra pairs and Casimir bookkeeping.

Structure constants are determined by the classical extraspecial-pair
procedure: signs of the extraspecial pairs are fixed positive, every
other constant follows from the Killing-form contraction identities.
The result is validated by the exhaustive Jacobi test in the suite.

After construction the negative root vectors are rescaled so that
kappa(e_alpha, e_{-alpha}) = 1 for every root; all downstream formulas
(Clifford pairing, Dirac assembly, Casimir dual bases) rely on that
normalization and stay rational.
"""

from fractions import Fraction

from .exactla import Mat
from .roots import (InvariantForm, NotASubsystem, RootSystem, Weight,
                    WeylData, rho_vectors, validate_delta_h, weyl_group,
                    zero_weight)

_F0 = Fraction(0)
_F1 = Fraction(1)


def _is_positive(v):
    return any(v) and all(c >= 0 for c in v)


class ChevalleyBasis:
    """Basis h_1..h_r, e_alpha (alpha > 0), f_alpha := e_{-alpha} rescaled."""

    def __init__(self, rs: RootSystem, form: InvariantForm):
        self.rs = rs
        self.form = form
        self.rank = rs.rank
        self.pos = list(rs.positive_roots)
        self.npos = len(self.pos)
        self.dim = self.rank + 2 * self.npos
        self._idx_pos = {a: i for i, a in enumerate(self.pos)}
        self._npos_table = self._positive_constants()
        self._int_table = self._integral_brackets()
        self._kappa_root = {}
        for a in self.pos:
            self._kappa_root[a] = self._ad_trace_pair(self.e_index(a), self.e_index(-a))
        self._scale = [_F1] * self.dim
        for a in self.pos:
            self._scale[self.e_index(-a)] = self._kappa_root[a]
        self._table = self._rescaled_brackets()

    # -- indexing ------------------------------------------------------------

    def h_index(self, i):
        return i

    def e_index(self, alpha):
        if _is_positive(alpha):
            return self.rank + self._idx_pos[alpha]
        return self.rank + self.npos + self._idx_pos[-alpha]

    def index_root(self, idx):
        """Root of a root-vector index, None for Cartan indices."""
        if idx < self.rank:
            return None
        idx -= self.rank
        if idx < self.npos:
            return self.pos[idx]
        return -self.pos[idx - self.npos]

    def generator_index(self, gen):
        kind, val = gen
        if kind == "h":
            return self.h_index(val)
        if kind == "e":
            return self.e_index(val)
        if kind == "f":
            return self.e_index(-val)
        raise ValueError(f"unknown generator {gen!r}")

    def generator_weight(self, gen):
        kind, val = gen
        if kind == "h":
            return zero_weight(self.rank)
        if kind == "e":
            return val
        if kind == "f":
            return -val
        raise ValueError(f"unknown generator {gen!r}")

    # -- structure constants --------------------------------------------------

    def _p_val(self, a, b):
        # longest k with b - k a still a root
        k = 0
        cur = b - a
        while cur in self.rs.root_set:
            k += 1
            cur = cur - a
        return k

    def _positive_constants(self):
        """N_{a,b} for positive pairs a+b in Delta, idx(a) < idx(b)."""
        form = self.form
        idx = self._idx_pos
        table = {}

        def n_signed(a, b):
            apos, bpos = _is_positive(a), _is_positive(b)
            if apos and bpos:
                if idx[a] < idx[b]:
                    return table[(a, b)]
                return -table[(b, a)]
            if not apos and not bpos:
                return -n_signed(-a, -b)
            if not apos:
                return -n_signed(b, a)
            bp = -b
            s = a - bp
            if _is_positive(s):
                return -(form.pair(s, s) / form.pair(a, a)) * n_signed(bp, s)
            t = -s
            return -(form.pair(t, t) / form.pair(bp, bp)) * n_signed(a, t)

        self._n_signed = n_signed
        for gamma in self.pos:
            pairs = []
            for a in self.pos:
                b = gamma - a
                if b in self._idx_pos and idx[a] < idx[b]:
                    pairs.append((a, b))
            if not pairs:
                continue
            pairs.sort(key=lambda p: idx[p[0]])
            xi, eta = pairs[0]
            n_extra = Fraction(self._p_val(xi, eta) + 1)
            table[(xi, eta)] = n_extra
            gg = form.pair(gamma, gamma)
            for a, b in pairs[1:]:
                t = _F0
                d1 = eta - a
                if d1 in self.rs.root_set:
                    t += n_signed(eta, -a) * n_signed(xi, -b) / form.pair(d1, d1)
                d2 = xi - a
                if d2 in self.rs.root_set:
                    t += n_signed(-a, xi) * n_signed(eta, -b) / form.pair(d2, d2)
                val = gg * t / n_extra
                if val.denominator != 1 or val == 0 or abs(val) != self._p_val(a, b) + 1:
                    raise AssertionError(
                        f"structure constant determination failed at {a}+{b}={gamma}: {val}")
                table[(a, b)] = val
        return table

    def coroot_coords(self, alpha):
        """alpha^vee in the basis of simple coroots; entries are integers."""
        aa = self.form.pair(alpha, alpha)
        coords = []
        for i in range(self.rank):
            e = self.rs.simple_roots[i]
            c = alpha[i] * self.form.pair(e, e) / aa
            if c.denominator != 1:
                raise AssertionError(f"non-integral coroot for {alpha}")
            coords.append(c)
        return tuple(coords)

    def _integral_brackets(self):
        table = {}
        rs = self.rs

        def put(i, j, vec):
            if vec:
                table[(i, j)] = dict(vec)

        for i in range(self.rank):
            for alpha in rs.all_roots:
                val = rs.pairing_with_simple_coroots(alpha)[i]
                if val:
                    put(i, self.e_index(alpha), {self.e_index(alpha): Fraction(val)})
        for ai, alpha in enumerate(rs.all_roots):
            for beta in rs.all_roots[ai + 1:]:
                s = alpha + beta
                ia, ib = self.e_index(alpha), self.e_index(beta)
                if not any(s):
                    co = self.coroot_coords(alpha)
                    put(min(ia, ib), max(ia, ib),
                        {i: (c if ia < ib else -c) for i, c in enumerate(co) if c})
                elif s in rs.root_set:
                    n = self._n_signed(alpha, beta)
                    put(min(ia, ib), max(ia, ib),
                        {self.e_index(s): (n if ia < ib else -n)})
        return table

    def _bracket_from(self, table, i, j):
        if i == j:
            return {}
        if i < j:
            return table.get((i, j), {})
        return {k: -c for k, c in table.get((j, i), {}).items()}

    def _ad_trace_pair(self, i, j):
        tr = _F0
        for b in range(self.dim):
            inner = self._bracket_from(self._int_table, j, b)
            for k, c in inner.items():
                outer = self._bracket_from(self._int_table, i, k)
                if b in outer:
                    tr += c * outer[b]
        return tr

    def _rescaled_brackets(self):
        s = self._scale
        out = {}
        for (i, j), vec in self._int_table.items():
            out[(i, j)] = {k: c * s[k] / (s[i] * s[j]) for k, c in vec.items()}
        return out

    # -- public bracket/pairing ------------------------------------------------

    def bracket(self, i, j):
        """[b_i, b_j] as a sparse index->coefficient dict."""
        return self._bracket_from(self._table, i, j)

    def bracket_vec(self, x, y):
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for k, c in self.bracket(i, j).items():
                    v = out.get(k, _F0) + ci * cj * c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return out

    def pairing(self, i, j):
        """Killing form on the rescaled basis."""
        ri, rj = self.index_root(i), self.index_root(j)
        if ri is None and rj is None:
            return self.form.cartan_gram.rows[i][j]
        if ri is None or rj is None:
            return _F0
        if ri + rj == zero_weight(self.rank):
            alpha = ri if _is_positive(ri) else rj
            return self._kappa_root[alpha] / (self._scale[i] * self._scale[j])
        return _F0

    def kappa_integral(self, alpha):
        """kappa(e_alpha, e_{-alpha}) before rescaling, from the adjoint trace."""
        return self._kappa_root[alpha if _is_positive(alpha) else -alpha]

    def ad_matrix(self, i):
        cols = []
        for b in range(self.dim):
            vec = self.bracket(i, b)
            cols.append(tuple(vec.get(k, _F0) for k in range(self.dim)))
        return Mat.from_cols(cols, self.dim)

    def jacobi_residual(self):
        """Largest absolute residual of the Jacobi identity over basis triples."""
        worst = _F0
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.bracket(i, j)
                for k in range(j + 1, self.dim):
                    acc = {}
                    for term in (self.bracket_vec(bij, {k: _F1}),
                                 self.bracket_vec(self.bracket(j, k), {i: _F1}),
                                 self.bracket_vec(self.bracket(k, i), {j: _F1})):
                        for idx, c in term.items():
                            acc[idx] = acc.get(idx, _F0) + c
                    for c in acc.values():
                        if abs(c) > worst:
                            worst = abs(c)
        return worst


def chevalley_basis(rs: RootSystem, form: InvariantForm) -> ChevalleyBasis:
    return ChevalleyBasis(rs, form)


class PairGH:
    """A validated pair: root subsystem subalgebra h containing the Cartan."""

    def __init__(self, rs: RootSystem, form: InvariantForm, delta_h_pos):
        self.rs = rs
        self.form = form
        self.delta_h_pos = validate_delta_h(rs, delta_h_pos)
        self.delta_h_signed = frozenset(self.delta_h_pos) | frozenset(-a for a in self.delta_h_pos)
        self.q_positive = [a for a in rs.positive_roots if a not in self.delta_h_signed]
        self.q_signed = frozenset(self.q_positive) | frozenset(-a for a in self.q_positive)
        self.rho, self.rho_h = rho_vectors(rs, self.delta_h_pos)
        self.weyl: WeylData = weyl_group(rs, form, self.delta_h_pos)
        # Eq-style conditions (reductive, theta-stable, nondegenerate restriction)
        # hold structurally for negation-closed root subsystems containing t.
        self.conditions_certified = True

    @property
    def rank(self):
        return self.rs.rank

    def h_generators(self):
        gens = [("h", i) for i in range(self.rs.rank)]
        for a in self.delta_h_pos:
            gens.append(("e", a))
            gens.append(("f", a))
        return gens


def validate_pair(rs: RootSystem, form: InvariantForm, delta_h) -> PairGH:
    """Build the pair, rejecting subsets that are not closed subsystems."""
    signed = [Weight(v) for v in delta_h]
    negs = [a for a in signed if not _is_positive(a)]
    if negs:
        pos = {a for a in signed if _is_positive(a)}
        if {-a for a in negs} != pos:
            raise NotASubsystem("subset is not negation-closed")
        delta_h = sorted(pos, key=lambda r: (r.height, r))
    return PairGH(rs, form, delta_h)


def is_symmetric_pair(pair: PairGH) -> bool:
    """True iff [q, q] lands in h, i.e. sums of q-roots that are roots lie in h."""
    for a in pair.q_signed:
        for b in pair.q_signed:
            s = a + b
            if s in pair.rs.root_set and s not in pair.delta_h_signed:
                return False
    return True


class CasimirData:
    """Dual-basis Casimir data for g and for h (with the restricted form)."""

    def __init__(self, pair: PairGH, cb: ChevalleyBasis):
        self.pair = pair
        self.cb = cb
        self.g_roots = list(pair.rs.positive_roots)
        self.h_roots = list(pair.delta_h_pos)

    def scalar_on_highest(self, lam: Weight, which: str) -> Fraction:
        """Casimir scalar on a highest weight module of highest weight lam."""
        form = self.pair.form
        rho = self.pair.rho if which == "g" else self.pair.rho_h
        return form.norm2(lam + rho) - form.norm2(rho)


def casimir_elements(pair: PairGH, cb: ChevalleyBasis) -> CasimirData:
    return CasimirData(pair, cb)
