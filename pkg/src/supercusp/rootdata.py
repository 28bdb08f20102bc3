"""Root systems, based root data, affine diagrams, and fundamental groups.

Each simple type is realized by concrete simple-root vectors, and everything
downstream (Cartan matrices, highest roots, affine diagrams with their marks,
the finite abelian group P_cowt/Q_corootlat with its diagram action) is
computed from the vectors rather than transcribed.  Node numbering follows
Bourbaki, and the extending affine node is index 0 in every simple factor.

Group specs are written TYPE:ISOGENY:TWIST, for example 2A5:adjoint:w1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from supercusp.exact import (
    group_from_presentation,
    integer_inverse,
    mat_mul,
)


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(a, c):
    return tuple(x * c for x in a)


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _frac_vec(*xs):
    return tuple(Fraction(x) for x in xs)


# ---------------------------------------------------------------------------
# simple root realizations (Bourbaki numbering)
# ---------------------------------------------------------------------------


def _simple_roots(family, rank):
    def e(i, dim):
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        return tuple(v)

    if family == "A":
        dim = rank + 1
        return [vsub(e(i, dim), e(i + 1, dim)) for i in range(rank)]
    if family == "B":
        if rank < 2:
            raise ValueError("B needs rank >= 2")
        dim = rank
        out = [vsub(e(i, dim), e(i + 1, dim)) for i in range(rank - 1)]
        out.append(e(rank - 1, dim))
        return out
    if family == "C":
        if rank < 2:
            raise ValueError("C needs rank >= 2")
        dim = rank
        out = [vsub(e(i, dim), e(i + 1, dim)) for i in range(rank - 1)]
        out.append(vscale(e(rank - 1, dim), 2))
        return out
    if family == "D":
        if rank < 3:
            raise ValueError("D needs rank >= 3")
        dim = rank
        out = [vsub(e(i, dim), e(i + 1, dim)) for i in range(rank - 1)]
        out.append(vadd(e(rank - 2, dim), e(rank - 1, dim)))
        return out
    if family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E needs rank 6, 7, or 8")
        dim = 8
        a1 = tuple(Fraction(x, 2) for x in (1, -1, -1, -1, -1, -1, -1, 1))
        a2 = vadd(e(0, dim), e(1, dim))
        rest = [vsub(e(i, dim), e(i - 1, dim)) for i in range(1, 7)]  # e2-e1 ...
        full = [a1, a2] + rest
        return full[:rank]
    if family == "F":
        if rank != 4:
            raise ValueError("F needs rank 4")
        dim = 4
        return [
            vsub(e(1, dim), e(2, dim)),
            vsub(e(2, dim), e(3, dim)),
            e(3, dim),
            _frac_vec(Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)),
        ]
    if family == "G":
        if rank != 2:
            raise ValueError("G needs rank 2")
        dim = 3
        return [
            vsub(e(0, dim), e(1, dim)),
            _frac_vec(-2, 1, 1),
        ]
    raise ValueError(f"unknown family {family!r}")


_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    # the degree-n invariant (the Pfaffian) is listed last on purpose:
    # an outer twist flips the sign on exactly that factor
    "D": lambda n: list(range(2, 2 * n - 1, 2)) + [n],
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12],
                    7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


# ---------------------------------------------------------------------------
# RootSystem: one simple factor
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def root_system(family, rank):
    return RootSystem(family, rank)


class RootSystem:
    """Concrete simple root system with its affine diagram and the
    fundamental group of the adjoint form acting on it."""

    def __init__(self, family, rank):
        self.family = family
        self.rank = rank
        self.simples = _simple_roots(family, rank)
        self.roots = self._closure()
        self.num_pos_roots = len(self.roots) // 2
        self.cartan = self._cartan_matrix()
        self.highest_root = self._highest_root()
        self.hr_coeffs = self._in_simple_basis(self.highest_root)
        assert all(c == int(c) for c in self.hr_coeffs)
        self.hr_coeffs = tuple(int(c) for c in self.hr_coeffs)
        # marks: node 0 (the extending node) always carries 1
        self.marks = (1,) + self.hr_coeffs
        self.degrees = _DEGREES[family](rank)
        assert sum(d - 1 for d in self.degrees) == self.num_pos_roots
        self.affine_cartan = self._affine_cartan()
        self._build_omega()

    # -- root combinatorics --------------------------------------------------

    def _closure(self):
        roots = set(self.simples)
        frontier = list(self.simples)
        while frontier:
            beta = frontier.pop()
            for alpha in self.simples:
                c = 2 * vdot(beta, alpha) / vdot(alpha, alpha)
                new = vsub(beta, vscale(alpha, c))
                if new not in roots:
                    roots.add(new)
                    frontier.append(new)
        return roots

    def _pair(self, a, b):
        """<a, b_coroot> = 2(a,b)/(b,b)."""
        val = 2 * vdot(a, b) / vdot(b, b)
        assert val == int(val)
        return int(val)

    def _cartan_matrix(self):
        n = self.rank
        return tuple(tuple(self._pair(self.simples[i], self.simples[j])
                           for j in range(n)) for i in range(n))

    def _in_simple_basis(self, v):
        n = self.rank
        gram = [[vdot(self.simples[i], self.simples[j]) for j in range(n)]
                for i in range(n)]
        rhs = [vdot(v, self.simples[i]) for i in range(n)]
        M = [[Fraction(gram[i][j]) for j in range(n)] + [Fraction(rhs[i])]
             for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if M[r][col] != 0)
            M[col], M[piv] = M[piv], M[col]
            pv = M[col][col]
            M[col] = [x / pv for x in M[col]]
            for r in range(n):
                if r != col and M[r][col] != 0:
                    f = M[r][col]
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
        return tuple(M[i][n] for i in range(n))

    def _highest_root(self):
        best, best_h = None, None
        for beta in self.roots:
            coeffs = self._in_simple_basis(beta)
            h = sum(coeffs)
            if best_h is None or h > best_h:
                best, best_h = beta, h
        return best

    def affine_root_vector(self, node):
        """Gradient of the affine simple root at the node (node 0 is the
        negative of the highest root)."""
        if node == 0:
            return vscale(self.highest_root, -1)
        return self.simples[node - 1]

    def _affine_cartan(self):
        vecs = [self.affine_root_vector(i) for i in range(self.rank + 1)]
        return tuple(tuple(self._pair(vecs[i], vecs[j])
                           for j in range(self.rank + 1))
                     for i in range(self.rank + 1))

    def adjacency(self):
        n = self.rank + 1
        adj = {i: set() for i in range(n)}
        for i in range(n):
            for j in range(n):
                if i != j and self.affine_cartan[i][j] != 0:
                    adj[i].add(j)
        return adj

    # -- fundamental group of the adjoint form -------------------------------

    def _build_omega(self):
        n = self.rank
        # presentation of P_cowt/Q_coroot in the fundamental-coweight basis:
        # coroot j has coordinates = column j of the Cartan matrix
        relations = [[self.cartan[i][j] for i in range(n)] for j in range(n)]
        self.omega_pres = group_from_presentation(n, relations)
        self.omega = self.omega_pres.group
        det = _det_int([[self.cartan[i][j] for j in range(n)] for i in range(n)])
        assert self.omega.order() == abs(det), "fundamental group order vs det"
        self._build_omega_action()

    def coweight_class(self, j):
        """Class of the j-th fundamental coweight (1-indexed) in Omega."""
        vec = [0] * self.rank
        vec[j - 1] = 1
        return self.omega_pres.project(vec)

    def _build_omega_action(self):
        """Node action of Omega on the affine diagram, from the generator
        table, extended multiplicatively and then validated."""
        fam, n = self.family, self.rank
        ident = self.omega.identity()
        nodes = list(range(n + 1))
        id_perm = {i: i for i in nodes}
        gens = {}
        if fam == "A" and n >= 1:
            rot = {i: (i + 1) % (n + 1) for i in nodes}
            gens[self.coweight_class(1)] = rot
        elif fam == "B":
            perm = dict(id_perm)
            perm[0], perm[1] = 1, 0
            gens[self.coweight_class(1)] = perm
        elif fam == "C":
            gens[self.coweight_class(n)] = {i: n - i for i in nodes}
        elif fam == "D":
            eta = dict(id_perm)
            eta[0], eta[1] = 1, 0
            eta[n - 1], eta[n] = n, n - 1
            gens[self.coweight_class(1)] = eta
            if n % 2 == 0:
                rho = {i: n - i for i in nodes}
            else:
                rho = {i: n - i for i in nodes}
                rho[0], rho[n] = n, 1
                rho[1], rho[n - 1] = n - 1, 0
            gens[self.coweight_class(n)] = rho
        elif fam == "E" and n == 6:
            perm = {0: 1, 1: 6, 6: 0, 2: 3, 3: 5, 5: 2, 4: 4}
            gens[self.coweight_class(1)] = perm
        elif fam == "E" and n == 7:
            perm = {0: 7, 7: 0, 1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
            gens[self.coweight_class(7)] = perm
        # E8, F4, G2: trivial group, no generators

        action = {ident: id_perm}
        frontier = [ident]
        while frontier:
            x = frontier.pop()
            for g, perm in gens.items():
                y = self.omega.add(x, g)
                composed = {i: perm[action[x][i]] for i in nodes}
                if y in action:
                    assert action[y] == composed, "omega action not a homomorphism"
                else:
                    action[y] = composed
                    frontier.append(y)
        assert len(action) == self.omega.order(), "omega action incomplete"
        # faithfulness on the adjoint diagram
        seen = {}
        for x, perm in action.items():
            key = tuple(perm[i] for i in nodes)
            assert key not in seen, "omega action not faithful"
            seen[key] = x
        # each action preserves the affine Cartan matrix and the marks
        for perm in action.values():
            for i in nodes:
                assert self.marks[perm[i]] == self.marks[i]
                for j in nodes:
                    assert self.affine_cartan[perm[i]][perm[j]] == \
                        self.affine_cartan[i][j]
        # node-0 orbit consistency: the class of a fundamental coweight
        # moves the extending node to the matching special node
        for x, perm in action.items():
            j = perm[0]
            if j != 0:
                assert self.coweight_class(j) == x, "special node labeling"
        self.omega_action = action

    # -- finite diagram automorphisms ----------------------------------------

    def finite_diagram_autos(self):
        """All automorphisms of the finite diagram, as node permutations on
        1..rank."""
        fam, n = self.family, self.rank
        ident = {i: i for i in range(1, n + 1)}
        autos = [ident]
        if fam == "A" and n >= 2:
            autos.append({i: n + 1 - i for i in range(1, n + 1)})
        elif fam == "D" and n == 4:
            swap = dict(ident)
            swap[3], swap[4] = 4, 3
            cyc = dict(ident)
            cyc[1], cyc[3], cyc[4] = 3, 4, 1
            found = {tuple(sorted(ident.items()))}
            frontier = [ident]
            autos = [ident]
            while frontier:
                p = frontier.pop()
                for g in (swap, cyc):
                    q = {i: g[p[i]] for i in p}
                    key = tuple(sorted(q.items()))
                    if key not in found:
                        found.add(key)
                        autos.append(q)
                        frontier.append(q)
        elif fam == "D" and n > 4:
            swap = dict(ident)
            swap[n - 1], swap[n] = n, n - 1
            autos.append(swap)
        elif fam == "E" and n == 6:
            autos.append({1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4})
        for p in autos:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    assert self.cartan[p[i] - 1][p[j] - 1] == self.cartan[i - 1][j - 1]
        return autos


def _det_int(M):
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        pv = M[col][col]
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] / pv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    assert det == int(det)
    return int(det)


# ---------------------------------------------------------------------------
# group data: type + Frobenius twist order + isogeny
# ---------------------------------------------------------------------------

_TYPE_RE = re.compile(r"^([123]?)([A-G])(\d+)$")


def standard_frobenius_perm(family, rank, order):
    """The distinguished finite-diagram automorphism of the given order."""
    ident = {i: i for i in range(1, rank + 1)}
    if order == 1:
        return ident
    if order == 2:
        if family == "A" and rank >= 2:
            return {i: rank + 1 - i for i in range(1, rank + 1)}
        if family == "D" and rank >= 4:
            p = dict(ident)
            p[rank - 1], p[rank] = rank, rank - 1
            return p
        if family == "E" and rank == 6:
            return {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
        raise ValueError(f"type {family}{rank} has no outer automorphism of order 2")
    if order == 3:
        if family == "D" and rank == 4:
            return {1: 3, 3: 4, 4: 1, 2: 2}
        raise ValueError("triality twist exists only for D4")
    raise ValueError(f"unsupported twist order {order}")


def isogeny_tokens(family, rank):
    """Canonical isogeny names for the family, simply connected first."""
    if family == "A":
        n = rank + 1
        inner = [f"d{k}" for k in range(2, n) if n % k == 0]
        return ["sc"] + inner + ["adjoint"]
    if family in ("B", "C"):
        return ["sc", "adjoint"]
    if family == "D":
        if rank % 2 == 0:
            return ["sc", "so", "hs1", "hs2", "adjoint"]
        return ["sc", "so", "adjoint"]
    if family == "E" and rank in (6, 7):
        return ["sc", "adjoint"]
    return ["adjoint"]


class SimpleGroup:
    """Unramified almost-simple group datum: simple type, Frobenius diagram
    action, and isogeny (a sublattice between coroot and coweight lattices,
    named by the matching subgroup of the adjoint fundamental group)."""

    def __init__(self, family, rank, twist_order=1, isogeny="adjoint"):
        self.family = family
        self.rank = rank
        self.twist_order = twist_order
        self.rs = root_system(family, rank)
        self.theta_finite = standard_frobenius_perm(family, rank, twist_order)
        self.theta_affine = dict(self.theta_finite)
        self.theta_affine[0] = 0
        self.isogeny = self._normalize_isogeny(isogeny)
        self.omega_G = self._isogeny_subgroup(self.isogeny)
        if not self._theta_stable_subgroup(self.omega_G):
            raise ValueError(
                f"isogeny {isogeny!r} is not stable under the Frobenius action")
        self._build_lattice()
        self._build_fundamental()

    # -- node interface (shared with product groups) ----------------------------

    def affine_nodes(self):
        return tuple(range(self.rank + 1))

    def finite_nodes(self):
        return tuple(range(1, self.rank + 1))

    def node_mark(self, node):
        return self.rs.marks[node]

    def node_pair(self, a, b):
        return self.rs.affine_cartan[a][b]

    def alpha_in_finite_basis(self, node):
        """Affine simple root at the node, as coefficients over the finite
        nodes (the extending node is minus the highest root)."""
        if node == 0:
            return {i + 1: -c for i, c in enumerate(self.rs.hr_coeffs)}
        return {node: 1}

    @property
    def rank_total(self):
        return self.rank

    # -- naming ---------------------------------------------------------------

    def type_string(self):
        prefix = "" if self.twist_order == 1 else str(self.twist_order)
        return f"{prefix}{self.family}{self.rank}"

    def spec_string(self, twist="1"):
        return f"{self.type_string()}:{self.isogeny}:{twist}"

    def _normalize_isogeny(self, token):
        fam, rank = self.family, self.rank
        tok = token
        if fam == "A":
            n = rank + 1
            if tok == "sc":
                return "sc"
            if tok == "adjoint":
                return "adjoint"
            m = re.match(r"^d(\d+)$", tok)
            if m:
                k = int(m.group(1))
                if n % k != 0:
                    raise ValueError(f"A{rank} has no isogeny d{k}: {k} must divide {n}")
                if k == 1:
                    return "sc"
                if k == n:
                    return "adjoint"
                return tok
            raise ValueError(f"unknown isogeny {token!r} for type A")
        if fam == "B" and tok == "so":
            return "adjoint"
        if tok in isogeny_tokens(fam, rank):
            return tok
        if tok in ("sc", "adjoint") and isogeny_tokens(fam, rank) == ["adjoint"]:
            return "adjoint"
        raise ValueError(f"unknown isogeny {token!r} for type {fam}{rank}")

    # -- omega bookkeeping ----------------------------------------------------

    def omega_elements(self):
        return sorted(self.rs.omega.elements())

    def omega_add(self, x, y):
        return self.rs.omega.add(x, y)

    def omega_neg(self, x):
        return self.rs.omega.neg(x)

    def omega_identity(self):
        return self.rs.omega.identity()

    def omega_act_node(self, w, node):
        return self.rs.omega_action[w][node]

    def theta_node(self, node):
        return self.theta_affine[node]

    def theta_on_omega(self, w):
        """Frobenius action on the adjoint fundamental group, via the
        coweight permutation."""
        vec = self.rs.omega_pres.lift(w)
        out = [0] * self.rank
        for i in range(1, self.rank + 1):
            out[self.theta_finite[i] - 1] = vec[i - 1]
        return self.rs.omega_pres.project(out)

    def _theta_stable_subgroup(self, subset):
        return all(self.theta_on_omega(x) in subset for x in subset)

    def _isogeny_subgroup(self, token):
        omega = self.rs.omega
        elems = omega.elements()
        if token == "sc":
            return frozenset([omega.identity()])
        if token == "adjoint":
            return frozenset(elems)
        if self.family == "A":
            k = int(token[1:])
            return frozenset(e for e in elems
                             if all((k * c) % d == 0
                                    for c, d in zip(e, omega.orders)))
        if self.family == "D":
            if token == "so":
                return omega.subgroup_generated([self.rs.coweight_class(1)])
            if token == "hs1":
                return omega.subgroup_generated([self.rs.coweight_class(self.rank)])
            if token == "hs2":
                return omega.subgroup_generated([self.rs.coweight_class(self.rank - 1)])
        raise ValueError(f"unhandled isogeny token {token!r}")

    # -- lattices and fundamental groups ---------------------------------------

    def _build_lattice(self):
        """Basis of the cocharacter lattice in fundamental-coweight
        coordinates: the coroot lattice extended by lifts of omega_G."""
        n = self.rank
        cols = [[self.rs.cartan[i][j] for i in range(n)] for j in range(n)]
        for x in sorted(self.omega_G):
            cols.append(self.rs.omega_pres.lift(x))
        self.X_basis = _lattice_basis(cols)

    def _build_fundamental(self):
        """X_* / coroot lattice with the Frobenius action, in the lattice's
        own basis."""
        n = self.rank
        B = self.X_basis
        Binv = _frac_inverse(B)
        coroot_cols = [[self.rs.cartan[i][j] for i in range(n)] for j in range(n)]
        rels = []
        for col in coroot_cols:
            v = [sum(Binv[i][k] * col[k] for k in range(n)) for i in range(n)]
            assert all(x == int(x) for x in v)
            rels.append([int(x) for x in v])
        P_theta = [[0] * n for _ in range(n)]
        for i in range(1, n + 1):
            P_theta[self.theta_finite[i] - 1][i - 1] = 1
        # theta in the lattice basis: Binv * P_theta * B
        PB = mat_mul(P_theta, B)
        theta_L = [[sum(Binv[i][k] * PB[k][j] for k in range(n)) for j in range(n)]
                   for i in range(n)]
        assert all(x == int(x) for row in theta_L for x in row), \
            "isogeny lattice not Frobenius stable"
        theta_L = [[int(x) for x in row] for row in theta_L]
        self.fund_pres = group_from_presentation(n, rels, theta=theta_L)
        self.fundamental = self.fund_pres.group
        assert self.fundamental.order() == len(self.omega_G)

    # -- Kottwitz-style data ----------------------------------------------------

    def omega_theta_fixed(self):
        """Omega_G^theta as a set of adjoint-omega elements."""
        return frozenset(x for x in self.omega_G if self.theta_on_omega(x) == x)

    def omega_ad_theta_fixed(self):
        return frozenset(x for x in self.omega_elements()
                         if self.theta_on_omega(x) == x)

    def structure_of_subset(self, subset):
        """Invariant factors of a subgroup given as a set of elements."""
        return abelian_invariants(sorted(subset), self.omega_add,
                                  self.omega_identity())

    def kottwitz_data(self):
        """Orders-level summary: invariants, coinvariants, their duals, and
        the inner-twist classes of the adjoint group."""
        fixed = self.omega_theta_fixed()
        coinv = self.fundamental.coinvariant_structure()
        return {
            "omega_theta": self.structure_of_subset(fixed),
            "omega_coinv": coinv.orders,
            "omega_theta_dual": self.structure_of_subset(fixed),
            "omega_ad_coinv": self.adjoint_coinvariant_classes(),
        }

    def adjoint_coinvariant_classes(self):
        """Partition of the adjoint fundamental group into twisting classes
        (cosets of the augmentation subgroup (theta - 1)Omega_ad)."""
        omega = self.rs.omega
        elems = self.omega_elements()
        diff_gens = [omega.add(self.theta_on_omega(x), omega.neg(x)) for x in elems]
        B = omega.subgroup_generated(diff_gens)
        classes = []
        seen = set()
        for x in elems:
            if x in seen:
                continue
            cls = frozenset(omega.add(x, b) for b in B)
            seen |= cls
            classes.append(cls)
        return classes


def _lattice_basis(cols):
    """Basis matrix (columns) of the lattice spanned by integer columns."""
    from supercusp.exact import smith_normal_form

    n = len(cols[0])
    C = [[col[i] for col in cols] for i in range(n)]
    U, D, V = smith_normal_form([row[:] for row in C])
    Uinv = integer_inverse(U)
    diag = [D[i][i] for i in range(min(n, len(D[0])))]
    assert all(d != 0 for d in diag[:n]), "lattice not full rank"
    basis = [[Uinv[i][j] * diag[j] for j in range(n)] for i in range(n)]
    return basis


def _frac_inverse(M):
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j))
         for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [[A[i][n + j] for j in range(n)] for i in range(n)]


def abelian_invariants(elems, add, identity):
    """Invariant factors of a finite abelian group given by its elements and
    law, determined by the element-order statistics."""
    N = len(elems)
    if N == 1:
        return ()

    def order_of(x):
        n, y = 1, x
        while y != identity:
            y = add(y, x)
            n += 1
        return n

    stats = {}
    for x in elems:
        o = order_of(x)
        stats[o] = stats.get(o, 0) + 1

    def chains(total, cap):
        if total == 1:
            yield ()
            return
        d = 2
        while d <= min(total, cap):
            if total % d == 0:
                for rest in chains(total // d, d):
                    yield rest + (d,)
            d += 1

    for chain in chains(N, N):
        cand = {}
        for vec in _all_vectors(chain):
            from math import lcm

            o = 1
            for v, d in zip(vec, chain):
                o = lcm(o, d // _gcd_int(v, d))
            cand[o] = cand.get(o, 0) + 1
        if cand == stats:
            return chain
    raise AssertionError("no abelian group matches the order statistics")


def _all_vectors(chain):
    from itertools import product

    return product(*(range(d) for d in chain))


def _gcd_int(a, b):
    from math import gcd

    return gcd(a, b) if a else b


# ---------------------------------------------------------------------------
# diagram automorphisms relative to a group datum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramAut:
    """Finite-diagram automorphism with its compatibility flags."""

    perm: tuple  # ((i, image), ...) sorted
    commutes_with_frobenius: bool
    stabilizes_isogeny: bool

    def as_dict(self):
        return dict(self.perm)

    def affine_perm(self):
        p = dict(self.perm)
        p[0] = 0
        return p


def diagram_automorphisms(group):
    """All finite-diagram automorphisms of the group's type, flagged by
    whether they commute with the Frobenius action and whether they
    stabilize the isogeny subgroup (only those can act on the group)."""
    out = []
    for p in group.rs.finite_diagram_autos():
        commutes = all(p[group.theta_finite[i]] == group.theta_finite[p[i]]
                       for i in p)
        stab = _aut_on_omega_stabilizes(group, p)
        out.append(DiagramAut(tuple(sorted(p.items())), commutes, stab))
    return out


def aut_on_omega(group, perm):
    """Action of a finite-diagram automorphism on the adjoint fundamental
    group, via the coweight permutation."""
    def act(w):
        vec = group.rs.omega_pres.lift(w)
        out = [0] * group.rank
        for i in range(1, group.rank + 1):
            out[perm[i] - 1] = vec[i - 1]
        return group.rs.omega_pres.project(out)

    return act


def _aut_on_omega_stabilizes(group, perm):
    act = aut_on_omega(group, perm)
    return all(act(x) in group.omega_G for x in group.omega_G)


# ---------------------------------------------------------------------------
# spec-string parsing
# ---------------------------------------------------------------------------


def parse_type(type_str):
    m = _TYPE_RE.match(type_str)
    if not m:
        raise ValueError(f"bad type string {type_str!r}")
    prefix, fam, rank = m.groups()
    order = int(prefix) if prefix else 1
    return fam, int(rank), order


def build_group(type_str, isogeny="adjoint"):
    fam, rank, order = parse_type(type_str)
    return SimpleGroup(fam, rank, order, isogeny)


def parse_spec(spec):
    """TYPE:ISOGENY:TWIST -> (group, twist token)."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"spec must be TYPE:ISOGENY:TWIST, got {spec!r}")
    type_str, iso, twist = parts
    return build_group(type_str, iso), twist


# ---------------------------------------------------------------------------
# official twisted affine diagrams (for cross-checks on the dual side)
# ---------------------------------------------------------------------------

# Kac labels for the twisted affine diagrams used by the exceptional rows:
# the fused E6 diagram (order-2 twist) and the fused D4 diagram (order-3).
TWISTED_AFFINE_MARKS = {
    ("E", 6, 2): (1, 2, 3, 2, 1),
    ("D", 4, 3): (1, 2, 1),
}
