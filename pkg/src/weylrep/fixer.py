"""Residue-field solvability of the character-fixing torus system.

The multiplicative group of the residue field is modeled as Z/N with
N = q - 1 (elements are discrete logarithms, so exponentiation is
multiplication).  Given an alcove-stabilizer projection sigma and a
tuple of units lambda_0..lambda_rank, the system asks for a torus point
t in (lattice) (x) Z/N with alpha_i(t) = lambda_i^-1 lambda_sigma(i)
c(n_sigma, alpha_i) for every affine node; the zeroth row is redundant
exactly because the highest-root-relation character is trivial on
stabilizer projections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import intmat
from .affine import CocharLattice, OmegaElement, adjoint_lattice, omega_group
from .chevalley import ScalarTable, c_word, evaluate_character, highest_root_relation
from .rootsys import RootSystem

__all__ = [
    "UnitGroup",
    "GenericFunctional",
    "random_functional",
    "InconsistentSystemError",
    "FixerSystem",
    "build_system",
    "solve",
    "ConnectingCharacter",
    "connecting_character",
    "ObstructionClass",
    "obstruction",
]


@dataclass(frozen=True)
class UnitGroup:
    """Cyclic unit group of a finite field with q = order + 1 elements."""

    order: int

    def sign_log(self, c: int) -> int:
        """Discrete log of +-1; -1 collapses to 0 when the order is odd."""
        if c == 1:
            return 0
        if c == -1:
            return self.order // 2 if self.order % 2 == 0 else 0
        raise ValueError(f"not a sign: {c}")


@dataclass(frozen=True)
class GenericFunctional:
    """Units attached to the affine nodes 0..rank, as discrete logs.

    Every residue in Z/N names a nonzero field element, so genericity
    (non-vanishing on each line) holds by construction.
    """

    values: tuple[int, ...]


def random_functional(rng, units: UnitGroup, rank: int) -> GenericFunctional:
    return GenericFunctional(tuple(rng.randrange(units.order)
                                   for _ in range(rank + 1)))


class InconsistentSystemError(ValueError):
    """The multiplicity-weighted row product is not 1: the zeroth row
    contradicts the others, which would refute the trivial-character
    property."""


@dataclass(frozen=True)
class FixerSystem:
    rs: RootSystem
    lattice: CocharLattice
    omega: OmegaElement
    units: UnitGroup
    targets: tuple[int, ...]  # per affine node, in Z/N


def build_system(rs: RootSystem, lat: CocharLattice, omega: OmegaElement,
                 lam: GenericFunctional, scalars: ScalarTable,
                 units: UnitGroup) -> FixerSystem:
    """Targets lambda_i^-1 * lambda_sigma(i) * c(n_sigma, alpha_i) per node."""
    if len(lam.values) != rs.rank + 1:
        raise ValueError("functional length must be rank + 1")
    perm = omega.diagram_perm
    sigma = omega.sigma
    n = units.order
    grads = (rs.neg[rs.highest_root],) + rs.simple_index
    targets = []
    for i in range(rs.rank + 1):
        c = c_word(scalars, sigma, grads[i])
        t = (-lam.values[i] + lam.values[perm[i]] + units.sign_log(c)) % n
        targets.append(t)
    mk = (1,) + tuple(rs.roots[rs.highest_root])
    weighted = sum(m * t for m, t in zip(mk, targets)) % n
    cd = evaluate_character(scalars, highest_root_relation(rs), sigma)
    if weighted != units.sign_log(cd):
        raise AssertionError("row product disagrees with the relation character")
    if weighted != 0:
        raise InconsistentSystemError(
            f"weighted row product is {weighted} (mod {n}), not 0: "
            f"the zeroth row is not implied by the others")
    return FixerSystem(rs, lat, omega, units, tuple(targets))


def _pairing_matrix(rs: RootSystem, lat: CocharLattice):
    """M[i][k] = <alpha_i, basis_k>, guaranteed integral inside P^vee."""
    cartan = rs.datum.cartan_matrix
    m = []
    for i in range(rs.rank):
        row = []
        for k in range(rs.rank):
            val = sum(lat.basis[k][j] * cartan[j][i] for j in range(rs.rank))
            if Fraction(val).denominator != 1:
                raise ValueError("lattice basis pairs fractionally with a root")
            row.append(int(val))
        m.append(row)
    return m


def solve(system: FixerSystem):
    """A witness t (coordinates in the lattice basis, mod N), or None.

    Solves rows 1..rank as an integer-linear system mod N; the witness
    is then checked against every row including the redundant zeroth.
    """
    rs = system.rs
    n = system.units.order
    m = _pairing_matrix(rs, system.lattice)
    b = list(system.targets[1:])
    x = intmat.solve_mod(m, b, n)
    if x is None:
        return None
    theta = rs.roots[rs.highest_root]
    row0 = [-sum(theta[i] * m[i][k] for i in range(rs.rank))
            for k in range(rs.rank)]
    val0 = sum(row0[k] * x[k] for k in range(rs.rank)) % n
    if val0 != system.targets[0]:
        raise AssertionError("witness fails the redundant zeroth row")
    return x


@dataclass(frozen=True)
class ConnectingCharacter:
    """Simple-root coefficients (mod d) of a character of the big torus
    killing the small torus's points modulo d-th powers."""

    coeffs: tuple[int, ...]
    d: int


def connecting_character(rs: RootSystem, small: CocharLattice,
                         big: CocharLattice) -> ConnectingCharacter:
    """Character presentation of the boundary map for small inside big.

    Diagonalizes the inclusion by Smith normal form: in the adapted
    basis f_1..f_rank of the big lattice, the small one is spanned by
    d_k f_k, and the sought character is dual to the last f (the one
    with d_k = d).  The result is normalized to the lexicographically
    smallest unit multiple mod d, since the lattice model determines the
    boundary map only up to an automorphism of Z/d.
    """
    rank = rs.rank
    bb = [list(row) for row in big.basis]
    bs = [list(row) for row in small.basis]
    bb_inv = intmat.mat_inv(bb)
    c = intmat.mat_mul(bs, bb_inv)
    for row in c:
        for x in row:
            if Fraction(x).denominator != 1:
                raise ValueError("small lattice is not contained in the big one")
    c = [[int(x) for x in row] for row in c]
    d_mat, _, v = intmat.smith_normal_form(c)
    diag = [d_mat[i][i] for i in range(rank)]
    nontrivial = [x for x in diag if x != 1]
    if not nontrivial:
        return ConnectingCharacter((0,) * rank, 1)
    if len(nontrivial) > 1:
        raise ValueError(f"quotient is not cyclic: invariant factors {diag}")
    d = nontrivial[0]
    # rows of v^-1 * big basis are the adapted basis; the last one is f
    v_inv = intmat.mat_inv(v)
    adapted = intmat.mat_mul(v_inv, bb)
    pf = [[sum(Fraction(adapted[k][j]) * rs.datum.cartan_matrix[j][i]
               for j in range(rank)) for k in range(rank)]
          for i in range(rank)]
    pf_inv = intmat.mat_inv(pf)
    coeffs = []
    for i in range(rank):
        x = pf_inv[rank - 1][i]
        if Fraction(x).denominator != 1:
            raise ValueError("boundary character is not a root-lattice element; "
                             "the big lattice must be the coweight lattice")
        coeffs.append(int(x) % d)
    best = None
    for u in range(1, d):
        if gcd(u, d) != 1:
            continue
        cand = tuple((u * x) % d for x in coeffs)
        if best is None or cand < best:
            best = cand
    return ConnectingCharacter(best, d)


@dataclass(frozen=True)
class ObstructionClass:
    """Image of the adjoint witness under the connecting character.

    Zero iff the witness lifts to the target lattice's torus; the value
    lives in Z/gcd(d, N) since d-th powers absorb the rest.
    """

    value: int
    modulus: int
    d: int

    def vanishes(self) -> bool:
        return self.value % self.modulus == 0 if self.modulus > 1 else True


def obstruction(rs: RootSystem, lat: CocharLattice, omega: OmegaElement,
                lam: GenericFunctional, scalars: ScalarTable,
                units: UnitGroup) -> ObstructionClass:
    """Solve over the adjoint lattice, then evaluate the boundary character.

    The adjoint system always has a witness (unique mod N, since the
    fundamental-coweight pairing matrix is the identity).
    """
    adj = adjoint_lattice(rs)
    chi = connecting_character(rs, lat, adj)
    n = units.order
    adj_omega = _match_class(rs, adj, omega)
    witness = solve(build_system(rs, adj, adj_omega, lam, scalars, units))
    if witness is None:
        raise AssertionError("adjoint system unexpectedly unsolvable")
    cartan = rs.datum.cartan_matrix
    val = 0
    for i in range(rs.rank):
        pair_i = [sum(Fraction(adj.basis[k][j]) * cartan[j][i]
                      for j in range(rs.rank)) for k in range(rs.rank)]
        val += chi.coeffs[i] * sum(int(pair_i[k]) * witness[k]
                                   for k in range(rs.rank))
    modulus = gcd(chi.d, n)
    return ObstructionClass(val % modulus if modulus > 1 else 0,
                            max(modulus, 1), chi.d)


def _match_class(rs: RootSystem, lat: CocharLattice,
                 omega: OmegaElement) -> OmegaElement:
    for cand in omega_group(rs, lat):
        if cand.class_node == omega.class_node:
            return cand
    raise ValueError("class has no counterpart in the target lattice")
