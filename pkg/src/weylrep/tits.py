"""The extension of W by the mod-2 coroot lattice.

Elements are normal forms (t, w): a torus part t in Q^vee (x) F_2 written
in simple-coroot bits, times the canonical representative of w.  The
group law is driven entirely by the two defining properties of the
canonical representatives — generator squares are simple-coroot bits,
and products along reduced words are honest products — plus the exchange
step for length-decreasing multiplications.  Nothing here consults the
flip-set formula, so comparing the computed 2-cocycle against the
flip-set prediction is a genuine two-sided test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootsys import RootSystem
from .weyl import WeylElement, flip_set, identity as weyl_identity, simple_reflection

__all__ = [
    "TitsElement",
    "identity",
    "generator",
    "multiply",
    "invert",
    "canonical",
    "canonical_from_word",
    "cocycle",
    "flip_prediction",
    "check_cocycle_formula",
    "check_two_cocycle_identity",
    "act_bits",
    "pairing_mod2",
]


@dataclass(frozen=True)
class TitsElement:
    bits: tuple[int, ...]
    weyl: WeylElement


def _zero(rs: RootSystem) -> tuple[int, ...]:
    return (0,) * rs.rank


def _coroot_bits(rs: RootSystem, k: int) -> tuple[int, ...]:
    return tuple(c & 1 for c in rs.coroots[k])


def _xor(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x ^ y for x, y in zip(a, b))


def act_bits(w: WeylElement, bits: tuple[int, ...]) -> tuple[int, ...]:
    """W-action on Q^vee (x) F_2: push each set bit through w."""
    rs = w.rs
    out = [0] * rs.rank
    for i, t in enumerate(bits):
        if t:
            img = w.perm[rs.simple_index[i]]
            for j, c in enumerate(rs.coroots[img]):
                out[j] ^= c & 1
    return tuple(out)


def identity(rs: RootSystem) -> TitsElement:
    return TitsElement(_zero(rs), weyl_identity(rs))


def generator(rs: RootSystem, i: int) -> TitsElement:
    return TitsElement(_zero(rs), simple_reflection(rs, i))


def multiply(x: TitsElement, y: TitsElement) -> TitsElement:
    """Normal-form product, one generator of y's word at a time.

    Length-increasing steps absorb into the word; length-decreasing
    steps trade the generator for a coroot bit (the exchange step),
    which is immediately pushed left through the remaining factor.
    """
    rs = x.weyl.rs
    bits = _xor(x.bits, act_bits(x.weyl, y.bits))
    cur = x.weyl
    npos = rs.npos
    simples = rs.simple_index
    for i in y.weyl.word:
        img = cur.perm[simples[i - 1]]
        cur = cur * simple_reflection(rs, i)
        if img < npos:
            # exchange step: generator square appears, conjugated by cur;
            # cur(alpha_i) = -previous image, and signs vanish mod 2
            bits = _xor(bits, _coroot_bits(rs, img))
    if cur.perm != (x.weyl * y.weyl).perm:
        raise AssertionError("normal-form product lost its Weyl part")
    return TitsElement(bits, cur)


def invert(x: TitsElement) -> TitsElement:
    """Inverse via generator inverses g_i^-1 = (coroot bit of alpha_i) * g_i."""
    rs = x.weyl.rs
    out = identity(rs)
    for i in reversed(x.weyl.word):
        gi_inv = TitsElement(_coroot_bits(rs, rs.simple_index[i - 1]),
                             simple_reflection(rs, i))
        out = multiply(out, gi_inv)
    return multiply(out, TitsElement(x.bits, weyl_identity(rs)))


def canonical(w: WeylElement) -> TitsElement:
    """Canonical representative: the generator product along a reduced word.

    Products along reduced words are length-additive at every step, so
    the torus part is zero; ``canonical_from_word`` recomputes this the
    slow way for arbitrary words.
    """
    return TitsElement(_zero(w.rs), w)


def canonical_from_word(rs: RootSystem, word) -> TitsElement:
    out = identity(rs)
    for i in word:
        out = multiply(out, generator(rs, i))
    return out


def cocycle(u: WeylElement, v: WeylElement) -> tuple[int, ...]:
    """Torus part of canonical(uv)^-1 * canonical(u) * canonical(v)."""
    prod = multiply(canonical(u), canonical(v))
    defect = multiply(invert(canonical(u * v)), prod)
    if not defect.weyl.is_identity():
        raise AssertionError("cocycle defect has a non-trivial Weyl part")
    return defect.bits


def flip_prediction(u: WeylElement, v: WeylElement) -> tuple[int, ...]:
    """Sum of coroot bits over flip_set(u, v)."""
    rs = u.rs
    bits = _zero(rs)
    for b in flip_set(u, v):
        bits = _xor(bits, _coroot_bits(rs, b))
    return bits


def check_cocycle_formula(u: WeylElement, v: WeylElement) -> bool:
    return cocycle(u, v) == flip_prediction(u, v)


def pairing_mod2(rs: RootSystem, a: int, bits: tuple[int, ...]) -> int:
    """<root_a, sum of bit coroots> mod 2."""
    return sum(bits[i] * rs._psc[a][i] for i in range(rs.rank)) & 1


def check_two_cocycle_identity(u: WeylElement, v: WeylElement,
                               x: WeylElement) -> bool:
    """Associativity constraint on the cocycle, in left-normalized form.

    Our defect z(u, v) sits to the right of canonical(uv); the textbook
    identity f(u,v) + f(uv,x) = u.f(v,x) + f(u,vx) holds for the
    left-normalized transport f(u,v) = (uv)(z(u,v)).
    """
    def f(a: WeylElement, b: WeylElement) -> tuple[int, ...]:
        return act_bits(a * b, cocycle(a, b))

    lhs = _xor(f(u, v), f(u * v, x))
    rhs = _xor(act_bits(u, f(v, x)), f(u, v * x))
    return lhs == rhs
