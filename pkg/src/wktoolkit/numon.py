"""Numerical monoids and their fractional-ideal machinery.

A numerical monoid is a cofinite additive submonoid of the nonnegative
integers, stored by its minimal generators (atoms), Frobenius number,
conductor and gap list.  Membership needs only the gap set: n belongs iff
n >= 0 and n is not a gap.

Fractional ideals are nonempty subsets I of the integers with I + S
contained in I and a minimum element.  Every such I is cofinite above, so
the representation "explicit window below a threshold, everything at or
above the threshold" is exact, and the dual, v-closure and sums terminate.
The v- and t-operations coincide here: every ideal of this shape is the
v-closure of a finitely generated one, and t is the directed union of v
over finitely generated subideals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    EmptyGenerators,
    GcdNotOne,
    InputError,
    NonPositiveGenerator,
    NotInMonoid,
)


@dataclass(frozen=True)
class NumericalMonoid:
    atoms: tuple[int, ...]
    frobenius: int
    conductor: int
    gaps: tuple[int, ...]

    @cached_property
    def _gapset(self) -> frozenset[int]:
        return frozenset(self.gaps)

    @property
    def multiplicity(self) -> int:
        return self.atoms[0]

    @property
    def is_free(self) -> bool:
        """True exactly for the full monoid of nonnegative integers."""
        return self.conductor == 0

    def contains(self, n: int) -> bool:
        return n >= 0 and n not in self._gapset

    __contains__ = contains

    def elements_up_to(self, bound: int) -> Iterator[int]:
        return (n for n in range(0, bound + 1) if n not in self._gapset)

    def to_json(self) -> dict:
        return {"atoms": list(self.atoms)}

    def __str__(self) -> str:
        return "<" + ",".join(str(a) for a in self.atoms) + ">"


def from_generators(gens: Iterable[int]) -> NumericalMonoid:
    """Numerical monoid generated by ``gens`` (gcd must be 1).

    The sieve runs until the top ``min(gens)`` consecutive integers are all
    representable; past such a run everything is representable, so the
    Frobenius number, conductor and gaps are exact.
    """
    gen_list = sorted({int(g) for g in gens})
    if not gen_list:
        raise EmptyGenerators("no generators given")
    if gen_list[0] <= 0:
        raise NonPositiveGenerator(f"generator {gen_list[0]} is not positive")
    if math.gcd(*gen_list) != 1:
        raise GcdNotOne(f"gcd of {gen_list} is {math.gcd(*gen_list)}, not 1")
    if gen_list[0] == 1:
        return NumericalMonoid(atoms=(1,), frobenius=-1, conductor=0, gaps=())

    a = gen_list[0]
    bound = gen_list[0] * gen_list[1] + gen_list[-1] + 1
    while True:
        reach = bytearray(bound + 1)
        reach[0] = 1
        for n in range(gen_list[0], bound + 1):
            for g in gen_list:
                if g > n:
                    break
                if reach[n - g]:
                    reach[n] = 1
                    break
        if all(reach[bound - a + 1 : bound + 1]):
            break
        bound *= 2

    frobenius = max(n for n in range(bound + 1) if not reach[n])
    gaps = tuple(n for n in range(1, frobenius + 1) if not reach[n])
    conductor = frobenius + 1
    atoms = _atoms_from_reach(reach, a, conductor)
    return NumericalMonoid(atoms=atoms, frobenius=frobenius, conductor=conductor, gaps=gaps)


def _atoms_from_reach(reach, multiplicity: int, conductor: int) -> tuple[int, ...]:
    # an atom n > multiplicity satisfies n < conductor + multiplicity,
    # since otherwise n - multiplicity >= conductor is a nonzero member
    hi = conductor + multiplicity - 1
    atoms = []
    for n in range(multiplicity, hi + 1):
        if not reach[n]:
            continue
        if any(reach[x] and reach[n - x] for x in range(multiplicity, n - multiplicity + 1)):
            continue
        atoms.append(n)
    return tuple(atoms)


def from_gaps(gaps: Iterable[int]) -> NumericalMonoid:
    """Numerical monoid with the given gap set; the complement must be closed
    under addition."""
    gapset = sorted({int(g) for g in gaps})
    if not gapset:
        return NumericalMonoid(atoms=(1,), frobenius=-1, conductor=0, gaps=())
    if gapset[0] < 1:
        raise InputError("gaps must be positive")
    frobenius = gapset[-1]
    conductor = frobenius + 1
    gs = set(gapset)
    members = [n for n in range(1, frobenius + 1) if n not in gs]
    for i, x in enumerate(members):
        for y in members[i:]:
            if x + y > frobenius:
                break
            if x + y in gs:
                raise InputError(f"complement not closed: {x} + {y} = {x + y} is a gap")
    top = conductor + (members[0] if members else conductor) + 1
    reach = bytearray(top + 1)
    for n in range(top + 1):
        reach[n] = 0 if n in gs else 1
    multiplicity = next(n for n in range(1, top + 1) if reach[n])
    atoms = _atoms_from_reach(reach, multiplicity, conductor)
    return NumericalMonoid(atoms=atoms, frobenius=frobenius, conductor=conductor, gaps=tuple(gapset))


def enumerate_numerical_monoids(max_frobenius: int) -> Iterator[NumericalMonoid]:
    """All numerical monoids with Frobenius number <= max_frobenius,
    the full monoid included, by exhausting admissible gap sets."""
    yield from_gaps(())
    for mask in range(1, 1 << max_frobenius):
        gaps = [i + 1 for i in range(max_frobenius) if mask >> i & 1]
        gs = set(gaps)
        frob = gaps[-1]
        members = [n for n in range(1, frob + 1) if n not in gs]
        ok = True
        for i, x in enumerate(members):
            if not ok:
                break
            for y in members[i:]:
                if x + y > frob:
                    break
                if x + y in gs:
                    ok = False
                    break
        if ok:
            yield from_gaps(gaps)


def apery_set(s: NumericalMonoid, n: int) -> tuple[int, ...]:
    """The n smallest members of s in each residue class mod n, sorted."""
    if n == 0 or not s.contains(n):
        raise NotInMonoid(f"{n} is not a nonzero element of {s}")
    out = []
    for r in range(n):
        m = r
        while not s.contains(m):
            m += n
        out.append(m)
    return tuple(sorted(out))


def is_seminormal(s: NumericalMonoid) -> tuple[bool, int | None]:
    """Whether 2x, 3x in s forces x in s; the witness is the least gap
    violating it."""
    for g in s.gaps:
        if s.contains(2 * g) and s.contains(3 * g):
            return False, g
    return True, None


def root_closure(s: NumericalMonoid) -> tuple[NumericalMonoid, dict[int, int]]:
    """The root closure is the full monoid; for each gap g the witness maps
    g to the least n >= 2 with n*g in s."""
    witnesses = {}
    for g in s.gaps:
        n = 2
        while not s.contains(n * g):
            n += 1
        witnesses[g] = n
    return from_generators([1]), witnesses


def is_valuation(s: NumericalMonoid) -> bool:
    """Divisibility is a total order iff s is the full monoid."""
    return s.atoms == (1,)


# ---------------------------------------------------------------------------
# fractional ideals


@dataclass(frozen=True)
class MonoidIdeal:
    """Fractional ideal of a numerical monoid in window-plus-threshold form.

    ``window`` holds the members strictly below ``threshold``; every
    integer at or above the threshold belongs.  The stored form is
    canonical: the threshold is minimal for the window given.
    """

    owner: NumericalMonoid
    window: tuple[int, ...]
    threshold: int

    @cached_property
    def _windowset(self) -> frozenset[int]:
        return frozenset(self.window)

    @property
    def min_element(self) -> int:
        return self.window[0] if self.window else self.threshold

    def contains(self, n: int) -> bool:
        return n >= self.threshold or n in self._windowset

    __contains__ = contains

    def elements_below(self, bound: int) -> list[int]:
        out = [w for w in self.window if w < bound]
        out.extend(range(self.threshold, bound))
        return out

    def to_json(self) -> dict:
        return {"window": list(self.window), "threshold": self.threshold}

    def __str__(self) -> str:
        parts = [str(w) for w in self.window] + [f"[{self.threshold}..)"]
        return "{" + ", ".join(parts) + "}"


def make_ideal(owner: NumericalMonoid, elements: Iterable[int], threshold: int) -> MonoidIdeal:
    """Canonicalize and validate a window-plus-threshold ideal."""
    t = int(threshold)
    elems = sorted({int(x) for x in elements if x < t})
    while elems and elems[-1] == t - 1:
        t -= 1
        elems.pop()
    ideal = MonoidIdeal(owner, tuple(elems), t)
    for w in ideal.window:
        for a in owner.atoms:
            if not ideal.contains(w + a):
                raise InputError(f"{w} + {a} missing: not closed under the monoid action")
    return ideal


def ideal_from_generators(owner: NumericalMonoid, gens: Iterable[int]) -> MonoidIdeal:
    """The fractional ideal generated by finitely many integers: union of
    translates g + owner."""
    gen_list = sorted({int(g) for g in gens})
    if not gen_list:
        raise EmptyGenerators("an ideal needs at least one generator")
    threshold = gen_list[-1] + owner.conductor
    elems = set()
    for g in gen_list:
        elems.update(g + s for s in owner.elements_up_to(threshold - g))
    return make_ideal(owner, elems, threshold)


def principal_ideal(owner: NumericalMonoid, g: int) -> MonoidIdeal:
    return ideal_from_generators(owner, [g])


def monoid_as_ideal(owner: NumericalMonoid) -> MonoidIdeal:
    return principal_ideal(owner, 0)


def unique_maximal_ideal(s: NumericalMonoid) -> MonoidIdeal:
    """The set of nonzero elements, which is the unique nonempty prime.

    The primality check is cheap and done here: sums of members avoid the
    complement {0} unless both are 0, and every atom translates s into the
    ideal.
    """
    m = make_ideal(
        s,
        [n for n in range(1, s.conductor) if s.contains(n)],
        max(s.conductor, 1),
    )
    for a in s.atoms:
        if not m.contains(a):
            raise AssertionError("atom missing from the maximal ideal")
        for x in s.elements_up_to(s.conductor + 1):
            if not m.contains(a + x):
                raise AssertionError("maximal ideal not closed")
    return m


def ideal_dual(i: MonoidIdeal) -> MonoidIdeal:
    """The dual { x : x + i is contained in the monoid }.

    Checking x + w for the members w below conductor + min suffices: for
    w >= conductor + min(i), x + w >= conductor already.
    """
    s = i.owner
    c = s.conductor
    m = i.min_element
    hi = c - m  # every x >= hi translates all of i past the conductor
    probe = i.elements_below(c + m)
    window = [x for x in range(-m, hi) if all(s.contains(x + w) for w in probe)]
    return make_ideal(s, window, hi)


def v_closure(i: MonoidIdeal) -> MonoidIdeal:
    """The divisorial closure, the dual of the dual.  For ideals in this
    representation the t-closure agrees with it."""
    return ideal_dual(ideal_dual(i))


def ideal_add(i: MonoidIdeal, j: MonoidIdeal) -> MonoidIdeal:
    if i.owner != j.owner:
        raise InputError("ideals of different monoids")
    threshold = i.threshold + j.threshold
    sums = set()
    for a in i.elements_below(threshold - j.min_element):
        for b in j.elements_below(threshold - a):
            sums.add(a + b)
    return make_ideal(i.owner, sums, threshold)


def is_t_invertible(i: MonoidIdeal) -> bool:
    """Whether the v-closure of i + dual(i) is the whole monoid."""
    return v_closure(ideal_add(i, ideal_dual(i))) == monoid_as_ideal(i.owner)
