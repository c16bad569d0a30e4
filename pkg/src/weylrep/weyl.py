"""Finite Weyl group elements as exact permutations of the root list.

Elements carry a canonical reduced word (greedy smallest-descent
extraction, so equal permutations always yield equal words) and act on
roots through precomputed simple-reflection permutation tables.  The
sign-flip machinery lives here: inversion sets, the two-step flip set
``flip_set(u, v)`` of positive roots sent negative by ``v`` and back to
positive by ``u``, and the coroot-sum functionals built on it.
"""

from __future__ import annotations

from .rootsys import RootSystem

__all__ = [
    "WeylElement",
    "identity",
    "simple_reflection",
    "from_word",
    "inversion_set",
    "flip_set",
    "flip_functional",
    "check_first_difference",
    "check_flip_symmetry",
    "longest_element",
    "parabolic_longest",
    "group_order",
    "GroupTooLarge",
    "enumerate_group",
    "random_element",
    "element_from_simple_images",
]


class WeylElement:
    """A Weyl group element: the permutation it induces on the root list.

    ``perm[k]`` is the index of ``w(root_k)``.  Words use 1-based simple
    indices following the Bourbaki numbering.
    """

    __slots__ = ("rs", "perm", "_word", "_length", "_hash")

    def __init__(self, rs: RootSystem, perm: tuple[int, ...]):
        self.rs = rs
        self.perm = perm
        self._word = None
        self._length = None
        self._hash = None

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.perm)
        return self._hash

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        p = self.perm
        return WeylElement(self.rs, tuple(map(p.__getitem__, other.perm)))

    def apply(self, k: int) -> int:
        return self.perm[k]

    def apply_simple(self, i: int) -> int:
        """Image root index of alpha_i (1-based)."""
        return self.perm[self.rs.simple_index[i - 1]]

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for k, v in enumerate(self.perm):
            inv[v] = k
        return WeylElement(self.rs, tuple(inv))

    def is_identity(self) -> bool:
        return self._length == 0 if self._length is not None else \
            self.perm == _identity_perm(self.rs)

    @property
    def length(self) -> int:
        if self._length is None:
            npos = self.rs.npos
            self._length = sum(1 for k in self.rs.positive_indices()
                               if self.perm[k] < npos)
        return self._length

    @property
    def word(self) -> tuple[int, ...]:
        """Canonical reduced word: repeatedly strip the smallest right descent."""
        if self._word is None:
            rs = self.rs
            npos = rs.npos
            simples = rs.simple_index
            perms = rs.simple_perms
            cur = list(self.perm)
            rev = []
            while True:
                i = next((i for i in range(rs.rank) if cur[simples[i]] < npos), None)
                if i is None:
                    break
                rev.append(i + 1)
                sp = perms[i]
                cur = [cur[sp[k]] for k in range(len(cur))]
            if any(cur[k] != k for k in range(len(cur))):
                raise AssertionError("descent walk did not reach the identity")
            self._word = tuple(reversed(rev))
        return self._word

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Action on simple-root coordinates; column j is w(alpha_j)."""
        rs = self.rs
        cols = [rs.roots[self.perm[rs.simple_index[j]]] for j in range(rs.rank)]
        return tuple(tuple(cols[j][i] for j in range(rs.rank))
                     for i in range(rs.rank))

    def order(self) -> int:
        n = 1
        x = self
        ident = identity(self.rs)
        while x != ident:
            x = x * self
            n += 1
        return n

    def __repr__(self) -> str:
        return f"WeylElement({self.rs!r}, word={self.word})"


def _identity_perm(rs: RootSystem) -> tuple[int, ...]:
    return tuple(range(rs.nroots))


def identity(rs: RootSystem) -> WeylElement:
    w = WeylElement(rs, _identity_perm(rs))
    w._word = ()
    w._length = 0
    return w


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    if not 1 <= i <= rs.rank:
        raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
    w = WeylElement(rs, rs.simple_perms[i - 1])
    w._word = (i,)
    w._length = 1
    return w


def from_word(rs: RootSystem, word) -> WeylElement:
    """Compose simple reflections; the stored word is re-extracted reduced."""
    perm = _identity_perm(rs)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
        sp = rs.simple_perms[i - 1]
        perm = tuple(map(perm.__getitem__, sp))
    return WeylElement(rs, perm)


def inversion_set(w: WeylElement) -> frozenset[int]:
    """Positive roots sent negative by w; its size is the length of w."""
    npos = w.rs.npos
    p = w.perm
    return frozenset(k for k in w.rs.positive_indices() if p[k] < npos)


def flip_set(u: WeylElement, v: WeylElement) -> frozenset[int]:
    """{a > 0 : v(a) < 0 and u(v(a)) > 0}."""
    npos = u.rs.npos
    pu = u.perm
    pv = v.perm
    out = []
    for k in u.rs.positive_indices():
        vk = pv[k]
        if vk < npos and pu[vk] >= npos:
            out.append(k)
    return frozenset(out)


def flip_functional(u: WeylElement, v: WeylElement, a: int) -> int:
    """Sum of <root_a, b^vee> over b in flip_set(u, v)."""
    row = u.rs.pairing[a]
    return sum(row[b] for b in flip_set(u, v))


def check_first_difference(w: WeylElement, a: int) -> bool:
    """Inversion-set coroot sum against the height drop along w.

    Verifies sum_{b in inv(w)} <a, b^vee> == ht(a) - ht(w(a)).
    """
    rs = w.rs
    row = rs.pairing[a]
    lhs = sum(row[b] for b in inversion_set(w))
    return lhs == rs.heights[a] - rs.heights[w.perm[a]]


def check_flip_symmetry(w: WeylElement) -> bool:
    """w^2 carries flip_set(w, w) onto flip_set(w^-1, w^-1)."""
    w2 = w * w
    lhs = frozenset(w2.perm[k] for k in flip_set(w, w))
    wi = w.inverse()
    return lhs == flip_set(wi, wi)


def longest_element(rs: RootSystem) -> WeylElement:
    return parabolic_longest(rs, range(1, rs.rank + 1))


def parabolic_longest(rs: RootSystem, simple_indices) -> WeylElement:
    """Longest element of the parabolic generated by the given simples."""
    npos = rs.npos
    x = identity(rs)
    while True:
        i = next((i for i in simple_indices
                  if x.perm[rs.simple_index[i - 1]] >= npos), None)
        if i is None:
            return x
        x = x * simple_reflection(rs, i)


_ORDERS = {"A": None, "B": None, "C": None, "D": None,
           "E": {6: 51840, 7: 2903040, 8: 696729600},
           "F": {4: 1152}, "G": {2: 12}}


def group_order(rs: RootSystem) -> int:
    lbl, n = rs.datum.type_label, rs.rank
    if lbl == "A":
        out = 1
        for k in range(2, n + 2):
            out *= k
        return out
    if lbl in ("B", "C"):
        out = 2 ** n
        for k in range(2, n + 1):
            out *= k
        return out
    if lbl == "D":
        out = 2 ** (n - 1)
        for k in range(2, n + 1):
            out *= k
        return out
    return _ORDERS[lbl][n]


class GroupTooLarge(ValueError):
    """Exhaustive enumeration would exceed the configured budget."""


def enumerate_group(rs: RootSystem, limit: int | None = None) -> list[WeylElement]:
    """All elements, breadth-first by length; deterministic order."""
    if limit is not None and group_order(rs) > limit:
        raise GroupTooLarge(f"|W| = {group_order(rs)} exceeds limit {limit}")
    ident = identity(rs)
    seen = {ident.perm}
    out = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, rs.rank + 1):
                x = w * simple_reflection(rs, i)
                if x.perm not in seen:
                    seen.add(x.perm)
                    out.append(x)
                    nxt.append(x)
        frontier = nxt
    return out


def random_element(rs: RootSystem, rng) -> WeylElement:
    """Pseudo-random element: a long random word, well mixed for sweeps.

    The word length varies by one so both determinant classes are hit
    (a fixed-length word can only reach elements of one sign).
    """
    k = 2 * rs.npos + rng.randrange(2)
    word = [rng.randrange(1, rs.rank + 1) for _ in range(k)]
    return from_word(rs, word)


def element_from_simple_images(rs: RootSystem, images) -> WeylElement | None:
    """The Weyl element sending alpha_j to root ``images[j]``, if one exists.

    ``images`` lists root indices for j = 1..rank.  The linear extension
    must permute the roots; membership in W is decided by walking the
    candidate back to the identity through simple reflections (a proper
    diagram automorphism has no descent and is rejected).
    """
    cols = [rs.roots[k] for k in images]
    perm = []
    for r in rs.roots:
        img = tuple(sum(r[j] * cols[j][i] for j in range(rs.rank))
                    for i in range(rs.rank))
        k = rs.index.get(img)
        if k is None:
            return None
        perm.append(k)
    if len(set(perm)) != rs.nroots:
        return None
    cand = WeylElement(rs, tuple(perm))
    x = cand
    npos = rs.npos
    while True:
        i = next((i for i in range(1, rs.rank + 1)
                  if x.perm[rs.simple_index[i - 1]] < npos), None)
        if i is None:
            break
        x = x * simple_reflection(rs, i)
    if not x.is_identity():
        return None
    return cand
