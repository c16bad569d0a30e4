"""Exact integer models of irreducible root systems.

Roots are stored in simple-root coordinates and coroots in simple-coroot
coordinates; pairings, heights and root strings are all derived in exact
arithmetic (integers, with rationals only inside the symmetrized form).
Cartan matrices follow the Bourbaki plate numbering, with entry ``[i][j]``
equal to ``<alpha_j, alpha_i^vee>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "CartanError",
    "CartanDatum",
    "cartan_datum",
    "RootSystem",
    "build_root_system",
    "root_system",
    "root_string",
    "is_simply_laced",
    "simply_laced_conditions",
    "rootsys_to_json",
]


class CartanError(ValueError):
    """Malformed, reducible, or non-positive-definite Cartan data."""


def _chain_matrix(rank: int) -> list[list[int]]:
    m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        m[i][i + 1] = -1
        m[i + 1][i] = -1
    return m


def _cartan_matrix(label: str, rank: int) -> list[list[int]]:
    m = _chain_matrix(rank)
    if label == "A":
        pass
    elif label == "B":
        # alpha_rank is the short root; <alpha_{rank-1}, alpha_rank^vee> = -2
        m[rank - 1][rank - 2] = -2
    elif label == "C":
        # alpha_rank is the long root; <alpha_rank, alpha_{rank-1}^vee> = -2
        m[rank - 2][rank - 1] = -2
    elif label == "D":
        for i in (rank - 1, rank - 2):
            m[rank - 1][i] = 0
            m[i][rank - 1] = 0
        m[rank - 1][rank - 1] = 2
        m[rank - 1][rank - 3] = -1
        m[rank - 3][rank - 1] = -1
    elif label == "E":
        # Bourbaki numbering: chain 1-3-4-5-...-rank, node 2 hangs off node 4.
        m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        chain = [1] + list(range(3, rank + 1))
        for a, b in zip(chain, chain[1:]):
            m[a - 1][b - 1] = -1
            m[b - 1][a - 1] = -1
        m[2 - 1][4 - 1] = -1
        m[4 - 1][2 - 1] = -1
    elif label == "F":
        m[2][1] = -2
    elif label == "G":
        m[0][1] = -3
    else:
        raise CartanError(f"unknown type label {label!r}")
    return m


_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def _norms2(label: str, rank: int) -> tuple[Fraction, ...]:
    """Squared lengths (alpha_i | alpha_i) in the standard normalization."""
    two = Fraction(2)
    if label == "B":
        return tuple([two] * (rank - 1) + [Fraction(1)])
    if label == "C":
        return tuple([two] * (rank - 1) + [Fraction(4)])
    if label == "F":
        return (two, two, Fraction(1), Fraction(1))
    if label == "G":
        return (two, Fraction(6))
    return tuple([two] * rank)


@dataclass(frozen=True)
class CartanDatum:
    type_label: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        m = self.cartan_matrix
        n = self.rank
        if n < 1 or len(m) != n or any(len(row) != n for row in m):
            raise CartanError("matrix shape does not match rank")
        for i in range(n):
            if m[i][i] != 2:
                raise CartanError("diagonal entries must be 2")
            for j in range(n):
                if i != j and m[i][j] not in (0, -1, -2, -3):
                    raise CartanError(f"off-diagonal entry {m[i][j]} out of range")
                if i != j and (m[i][j] == 0) != (m[j][i] == 0):
                    raise CartanError("zero pattern must be symmetric")
        if not _connected(m):
            raise CartanError("Cartan matrix is reducible")
        # positive-definiteness via leading principal minors of the
        # symmetrized matrix (equivalently of the matrix itself)
        for k in range(1, n + 1):
            sub = [[Fraction(m[i][j]) for j in range(k)] for i in range(k)]
            if _det(sub) <= 0:
                raise CartanError("Cartan matrix is not positive definite")


def _connected(m) -> bool:
    n = len(m)
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if j not in seen and m[i][j] != 0:
                seen.add(j)
                frontier.append(j)
    return len(seen) == n


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def cartan_datum(type_label: str, rank: int) -> CartanDatum:
    lo, hi = _RANK_RANGE.get(type_label, (None, None))
    if lo is None:
        raise CartanError(f"unknown type label {type_label!r}")
    if rank < lo or (hi is not None and rank > hi):
        raise CartanError(f"rank {rank} out of range for type {type_label}")
    m = _cartan_matrix(type_label, rank)
    datum = CartanDatum(type_label, rank, tuple(tuple(row) for row in m))
    datum.validate()
    return datum


class RootSystem:
    """An irreducible root system with all derived tables precomputed.

    Immutable after construction.  Roots are indexed into a single list
    sorted by (height, lexicographic coefficients), so negative roots
    occupy the first half and positive roots the second half.
    """

    def __init__(self, datum: CartanDatum):
        datum.validate()
        self.datum = datum
        self.rank = datum.rank
        cartan = datum.cartan_matrix
        norms2 = _norms2(datum.type_label, datum.rank)
        # symmetrizer d_i = (alpha_i|alpha_i)/2 must make d_i * m[i][j] symmetric
        d = [x / 2 for x in norms2]
        for i in range(self.rank):
            for j in range(self.rank):
                if d[i] * cartan[i][j] != d[j] * cartan[j][i]:
                    raise CartanError("norms do not symmetrize the Cartan matrix")

        pos = _close_positive_roots(cartan, self.rank)
        allroots = sorted(pos | {tuple(-c for c in r) for r in pos},
                          key=lambda r: (sum(r), r))
        self.roots: tuple[tuple[int, ...], ...] = tuple(allroots)
        self.index: dict[tuple[int, ...], int] = {r: k for k, r in enumerate(allroots)}
        self.nroots = len(allroots)
        self.npos = len(pos)
        if self.nroots != 2 * self.npos:
            raise CartanError("root negation is not an involution")

        self.heights = tuple(sum(r) for r in self.roots)
        self.neg = tuple(self.index[tuple(-c for c in r)] for r in self.roots)

        # inner products (alpha_i|alpha_j) = d_i * cartan[i][j]
        self._gram = [[d[i] * cartan[i][j] for j in range(self.rank)]
                      for i in range(self.rank)]
        self.norms2 = tuple(self._form(r, r) for r in self.roots)

        # coroot coordinates: b^vee = sum_j b_j * (d_j / d_b) alpha_j^vee
        coroots = []
        for k, r in enumerate(self.roots):
            db = self.norms2[k] / 2
            co = []
            for j in range(self.rank):
                x = Fraction(r[j]) * d[j] / db
                if x.denominator != 1:
                    raise CartanError("non-integral coroot coordinate")
                co.append(int(x))
            coroots.append(tuple(co))
        self.coroots = tuple(coroots)

        # pairing with simple coroots: psc[k][i] = <root_k, alpha_i^vee>
        psc = []
        for r in self.roots:
            psc.append(tuple(sum(r[j] * cartan[i][j] for j in range(self.rank))
                             for i in range(self.rank)))
        self._psc = tuple(psc)

        # full pairing table <root_a, root_b^vee>
        self.pairing = tuple(
            tuple(sum(self.coroots[b][i] * psc[a][i] for i in range(self.rank))
                  for b in range(self.nroots))
            for a in range(self.nroots))

        hi = max(range(self.nroots), key=lambda k: (self.heights[k], self.roots[k]))
        self.highest_root = hi
        self.coxeter_number = self.heights[hi] + 1
        if self.nroots != self.rank * self.coxeter_number:
            raise CartanError("root count disagrees with Coxeter number")

        self.rho_check_twice = tuple(
            sum(self.coroots[k][i] for k in self.positive_indices())
            for i in range(self.rank))
        for k in range(self.nroots):
            if sum(self.rho_check_twice[i] * psc[k][i] for i in range(self.rank)) \
                    != 2 * self.heights[k]:
                raise CartanError("height/rho-check identity failed")

        self.simple_index = tuple(
            self.index[tuple(1 if j == i else 0 for j in range(self.rank))]
            for i in range(self.rank))

        # permutation of root indices induced by each simple reflection
        perms = []
        for i in range(self.rank):
            perm = []
            for k, r in enumerate(self.roots):
                c = list(r)
                c[i] -= psc[k][i]
                perm.append(self.index[tuple(c)])
            perms.append(tuple(perm))
        self.simple_perms = tuple(perms)

    # -- basic queries ------------------------------------------------

    def positive_indices(self) -> range:
        return range(self.npos, self.nroots)

    def is_positive(self, k: int) -> bool:
        return k >= self.npos

    def height(self, k: int) -> int:
        return self.heights[k]

    def root_name(self, k: int) -> str:
        return "".join(str(c) for c in self.roots[k])

    def _form(self, a: tuple[int, ...], b: tuple[int, ...]) -> Fraction:
        g = self._gram
        return sum(Fraction(a[i]) * g[i][j] * b[j]
                   for i in range(self.rank) for j in range(self.rank))

    def form(self, a: int, b: int) -> Fraction:
        """Symmetrizing inner product (root_a | root_b)."""
        return self._form(self.roots[a], self.roots[b])

    def __repr__(self) -> str:
        return f"RootSystem({self.datum.type_label}{self.rank})"


def _close_positive_roots(cartan, rank) -> set[tuple[int, ...]]:
    """Breadth-first closure of the simple roots under root-string addition."""
    simples = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    pos = set(simples)
    layer = list(simples)
    while layer:
        nxt = []
        for r in layer:
            for i in range(rank):
                # q = how far the string continues downward from r
                q = 0
                probe = list(r)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in pos:
                        q += 1
                    else:
                        break
                pair = sum(r[j] * cartan[i][j] for j in range(rank))
                if q - pair >= 1:
                    up = list(r)
                    up[i] += 1
                    t = tuple(up)
                    if t not in pos:
                        pos.add(t)
                        nxt.append(t)
        layer = nxt
    return pos


def build_root_system(datum: CartanDatum) -> RootSystem:
    return RootSystem(datum)


def root_system(type_label: str, rank: int) -> RootSystem:
    return RootSystem(cartan_datum(type_label, rank))


def root_string(rs: RootSystem, a: int, b: int) -> tuple[int, int]:
    """Maximal (p, q) with b + i*a a root for -q <= i <= p.

    Raises ValueError when b is proportional to a (the string through
    +-a is not of interest and would not terminate in the usual sense).
    """
    if b == a or b == rs.neg[a]:
        raise ValueError("root string undefined for b proportional to a")
    va = rs.roots[a]
    vb = rs.roots[b]
    p = 0
    probe = list(vb)
    while True:
        probe = [x + y for x, y in zip(probe, va)]
        if tuple(probe) in rs.index:
            p += 1
        else:
            break
    q = 0
    probe = list(vb)
    while True:
        probe = [x - y for x, y in zip(probe, va)]
        if tuple(probe) in rs.index:
            q += 1
        else:
            break
    return p, q


def simply_laced_conditions(rs: RootSystem) -> dict[str, bool]:
    """The four standard equivalent characterizations, each computed directly."""
    m = rs.datum.cartan_matrix
    n = rs.rank
    no_multiple_bonds = all(m[i][j] * m[j][i] <= 1
                            for i in range(n) for j in range(n) if i != j)
    small_pairings = all(
        rs.pairing[a][b] in (-1, 0, 1)
        for a in range(rs.nroots) for b in range(rs.nroots)
        if b != a and b != rs.neg[a])
    symmetric = all(m[i][j] == m[j][i] for i in range(n) for j in range(n))
    equal_norms = len(set(rs.norms2)) == 1
    return {
        "no_multiple_bonds": no_multiple_bonds,
        "small_pairings": small_pairings,
        "symmetric_cartan": symmetric,
        "equal_norms": equal_norms,
    }


def is_simply_laced(rs: RootSystem) -> bool:
    """True iff all pairings of non-proportional roots lie in {-1,0,1}.

    Cross-checked against symmetry of the Cartan matrix; disagreement
    would mean corrupted tables.
    """
    conds = simply_laced_conditions(rs)
    if conds["small_pairings"] != conds["symmetric_cartan"]:
        raise CartanError("simply-laced criteria disagree; tables corrupted")
    return conds["small_pairings"]


def rootsys_to_json(rs: RootSystem) -> dict:
    """Canonical JSON document for golden-file fixtures."""
    return {
        "schema_version": 1,
        "type": rs.datum.type_label,
        "rank": rs.rank,
        "cartan_matrix": [list(row) for row in rs.datum.cartan_matrix],
        "roots": [list(r) for r in rs.roots],
        "coroots": [list(c) for c in rs.coroots],
        "pairing": [list(row) for row in rs.pairing],
        "heights": list(rs.heights),
        "highest_root": rs.highest_root,
        "coxeter_number": rs.coxeter_number,
        "rho_check_twice": list(rs.rho_check_twice),
    }
