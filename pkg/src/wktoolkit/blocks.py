"""Zero-sum sequences over finite abelian groups and T-block monoids.

A block over a subset G0 of a finite abelian group is a multiset of
elements summing to zero; blocks form a monoid under multiset union whose
atoms are the minimal zero-sum sequences.  Minimal sequences have length
at most the group order: a longer one has two equal prefix sums, hence a
proper nonempty zero-sum infix, contradicting minimality.  That bound caps
every search here.

T-blocks pair a zero-sum-defect multiset with a vector t from a finite
product of reduced numerical monoids D_1 x ... x D_n, where a fixed group
element g_i is attached to each component and iota(t) = sum(t_i * g_i).
A pair is valid when the multiset sum plus iota(t) vanishes.  This family
realizes the pairing construction concretely while staying enumerable;
inputs are user-supplied surrogates and results say so.

Monoid-level distance and U_k sets are reported as capped
under-approximations, like in the factorization module.  Factorizations of
a single fixed element are exact: every atom in a factorization divides
the element, so the element itself bounds the search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceeded, GroupTooLarge, InputError, NotZeroSum
from .factor import BoundedResult, delta_of
from .groups import FiniteAbelianGroup
from .numon import NumericalMonoid

GROUP_CAP = 64

Element = tuple[int, ...]


@dataclass(frozen=True)
class Block:
    """Zero-sum multiset over a finite abelian group, in canonical sorted form."""

    group: FiniteAbelianGroup
    elements: tuple[Element, ...]

    @staticmethod
    def make(group: FiniteAbelianGroup, elements: Iterable[Sequence[int]]) -> "Block":
        elems = tuple(sorted(group.reduce(e) for e in elements))
        total = group.zero()
        for e in elems:
            total = group.add(total, e)
        if total != group.zero():
            raise NotZeroSum(f"elements sum to {total}, not zero")
        return Block(group, elems)

    @property
    def length(self) -> int:
        return len(self.elements)

    def multiplicities(self) -> dict[Element, int]:
        out: dict[Element, int] = {}
        for e in self.elements:
            out[e] = out.get(e, 0) + 1
        return out

    def to_json(self) -> dict:
        return {
            "group": list(self.group.invariant_factors),
            "multiplicities": {
                ":".join(str(c) for c in e): m for e, m in sorted(self.multiplicities().items())
            },
        }


def _check_group(group: FiniteAbelianGroup) -> None:
    if group.order > GROUP_CAP:
        raise GroupTooLarge(f"group of order {group.order} exceeds cap {GROUP_CAP}")


def _normalize_g0(group: FiniteAbelianGroup, g0: Iterable[Sequence[int]] | None) -> list[Element]:
    if g0 is None:
        return sorted(group.elements())
    return sorted({group.reduce(e) for e in g0})


def minimal_zero_sum_atoms(
    group: FiniteAbelianGroup, g0: Iterable[Sequence[int]] | None = None
) -> list[Block]:
    """All minimal zero-sum sequences over g0 (default: the whole group).

    Depth-first search over nondecreasing sequences; a branch dies as soon
    as some proper nonempty sub-multiset sums to zero, because that
    sub-multiset survives in every extension.  Depth is capped at the
    group order by the distinct-prefix-sum argument.
    """
    _check_group(group)
    support = _normalize_g0(group, g0)
    zero = group.zero()
    atoms: list[Block] = []
    cap = group.order

    def rec(start: int, seq: list[Element], total: Element, proper_sums: frozenset[Element]):
        if seq:
            if total == zero and zero not in proper_sums:
                atoms.append(Block(group, tuple(seq)))
                return  # extensions would contain this zero-sum properly
            if zero in proper_sums:
                return
        if len(seq) >= cap:
            return
        for idx in range(start, len(support)):
            g = support[idx]
            if seq:
                new_sums = frozenset(
                    itertools.chain(
                        proper_sums,
                        (total,),
                        (g,),
                        (group.add(q, g) for q in proper_sums),
                    )
                )
            else:
                new_sums = frozenset()
            seq.append(g)
            rec(idx, seq, group.add(total, g), new_sums)
            seq.pop()

    rec(0, [], zero, frozenset())
    atoms.sort(key=lambda b: (b.length, b.elements))
    return atoms


def davenport_constant(group: FiniteAbelianGroup) -> int:
    """Longest minimal zero-sum sequence over the nonzero elements; 0 for
    the trivial group."""
    _check_group(group)
    if group.order == 1:
        return 0
    nonzero = [e for e in group.elements() if e != group.zero()]
    return max(b.length for b in minimal_zero_sum_atoms(group, nonzero))


def _sub_multiset(inner: dict[Element, int], outer: dict[Element, int]) -> bool:
    return all(outer.get(e, 0) >= m for e, m in inner.items())


def _subtract(outer: dict[Element, int], inner: dict[Element, int]) -> dict[Element, int]:
    out = dict(outer)
    for e, m in inner.items():
        out[e] -= m
        if not out[e]:
            del out[e]
    return out


def block_factorizations(
    group: FiniteAbelianGroup,
    g0: Iterable[Sequence[int]] | None,
    block: Block | Iterable[Sequence[int]],
) -> list[tuple[Block, ...]]:
    """All decompositions of a block into atoms, as canonically ordered
    atom tuples.  Exact: only atoms dividing the block can appear."""
    _check_group(group)
    if not isinstance(block, Block):
        block = Block.make(group, block)
    support = _normalize_g0(group, block.elements if g0 is None else g0)
    for e in block.elements:
        if e not in support:
            raise InputError(f"block element {e} lies outside g0")
    atoms = [a for a in minimal_zero_sum_atoms(group, support) if _sub_multiset(a.multiplicities(), block.multiplicities())]
    results: list[tuple[Block, ...]] = []

    def rec(remaining: dict[Element, int], start: int, chosen: list[Block]):
        if not remaining:
            results.append(tuple(chosen))
            return
        for j in range(start, len(atoms)):
            am = atoms[j].multiplicities()
            if _sub_multiset(am, remaining):
                chosen.append(atoms[j])
                rec(_subtract(remaining, am), j, chosen)
                chosen.pop()

    rec(block.multiplicities(), 0, [])
    return results


def block_length_set(
    group: FiniteAbelianGroup,
    g0: Iterable[Sequence[int]] | None,
    block: Block | Iterable[Sequence[int]],
) -> tuple[int, ...]:
    return tuple(sorted({len(f) for f in block_factorizations(group, g0, block)}))


def _zero_sum_blocks_up_to(group: FiniteAbelianGroup, length_cap: int):
    elems = sorted(group.elements())
    zero = group.zero()
    for k in range(length_cap + 1):
        for combo in itertools.combinations_with_replacement(elems, k):
            total = zero
            for e in combo:
                total = group.add(total, e)
            if total == zero:
                yield Block(group, combo)


def delta_block_monoid(group: FiniteAbelianGroup, length_cap: int) -> BoundedResult:
    """Union of distance sets over all blocks of length at most the cap."""
    _check_group(group)
    values: set[int] = set()
    for b in _zero_sum_blocks_up_to(group, length_cap):
        values.update(delta_of(block_length_set(group, None, b)))
    return BoundedResult(
        values=tuple(sorted(values)),
        cap=length_cap,
        complete=False,
        note="block-monoid surrogate; union over blocks up to the length cap only",
    )


def uk_block_monoid(group: FiniteAbelianGroup, k: int, length_cap: int) -> BoundedResult:
    """Union of the length sets containing k, over blocks up to the cap."""
    _check_group(group)
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    values: set[int] = set()
    for b in _zero_sum_blocks_up_to(group, length_cap):
        ls = block_length_set(group, None, b)
        if k in ls:
            values.update(ls)
    return BoundedResult(
        values=tuple(sorted(values)),
        cap=length_cap,
        complete=False,
        note="block-monoid surrogate; union over blocks up to the length cap only",
    )


# ---------------------------------------------------------------------------
# T-blocks


@dataclass(frozen=True)
class TBlockSpec:
    """Ambient data of a T-block monoid: group, support g0, and components
    (D_i, g_i) defining iota(t) = sum(t_i * g_i)."""

    group: FiniteAbelianGroup
    g0: tuple[Element, ...]
    components: tuple[tuple[NumericalMonoid, Element], ...]

    @staticmethod
    def make(
        group: FiniteAbelianGroup,
        g0: Iterable[Sequence[int]],
        components: Iterable[tuple[NumericalMonoid, Sequence[int]]],
    ) -> "TBlockSpec":
        g0_norm = tuple(sorted({group.reduce(e) for e in g0}))
        comps = tuple((d, group.reduce(g)) for d, g in components)
        return TBlockSpec(group, g0_norm, comps)

    def iota(self, t: Sequence[int]) -> Element:
        if len(t) != len(self.components):
            raise InputError("t has wrong number of coordinates")
        total = self.group.zero()
        for ti, (_, gi) in zip(t, self.components):
            total = self.group.add(total, self.group.scale(ti, gi))
        return total


@dataclass(frozen=True)
class TBlockElement:
    """A multiset over g0 paired with a vector t, t_i in D_i."""

    elements: tuple[Element, ...]
    t: tuple[int, ...]

    @staticmethod
    def make(spec: TBlockSpec, elements: Iterable[Sequence[int]], t: Sequence[int]) -> "TBlockElement":
        elems = tuple(sorted(spec.group.reduce(e) for e in elements))
        return TBlockElement(elems, tuple(int(x) for x in t))

    @property
    def is_identity(self) -> bool:
        return not self.elements and not any(self.t)

    def block_multiplicities(self) -> dict[Element, int]:
        out: dict[Element, int] = {}
        for e in self.elements:
            out[e] = out.get(e, 0) + 1
        return out


def tblock_validate(spec: TBlockSpec, e: TBlockElement) -> bool:
    """Exact validity check: support, component membership, and the
    zero-sum condition sigma(block) + iota(t) = 0."""
    if len(e.t) != len(spec.components):
        return False
    if any(x not in spec.g0 for x in e.elements):
        return False
    if any(ti < 0 or ti not in d for ti, (d, _) in zip(e.t, spec.components)):
        return False
    total = spec.group.zero()
    for x in e.elements:
        total = spec.group.add(total, x)
    total = spec.group.add(total, spec.iota(e.t))
    return total == spec.group.zero()


def _t_vectors(spec: TBlockSpec, caps: Sequence[int]):
    ranges = []
    for (d, _), cap in zip(spec.components, caps):
        ranges.append([v for v in range(cap + 1) if d.contains(v)])
    return itertools.product(*ranges)


def _proper_divisors(spec: TBlockSpec, e: TBlockElement):
    """All valid sub-elements (b', t') of e other than the identity and e."""
    mult = e.block_multiplicities()
    support = sorted(mult)
    count_ranges = [range(mult[g] + 1) for g in support]
    t_choices = []
    for ti, (d, _) in zip(e.t, spec.components):
        t_choices.append([v for v in range(ti + 1) if d.contains(v) and d.contains(ti - v)])
    for counts in itertools.product(*count_ranges):
        sub_elems = []
        for g, c in zip(support, counts):
            sub_elems.extend([g] * c)
        for t_sub in itertools.product(*t_choices):
            cand = TBlockElement(tuple(sub_elems), t_sub)
            if cand.is_identity:
                continue
            if cand.elements == e.elements and cand.t == e.t:
                continue
            if tblock_validate(spec, cand):
                yield cand


def _is_tblock_atom(spec: TBlockSpec, e: TBlockElement) -> bool:
    if e.is_identity:
        return False
    for _ in _proper_divisors(spec, e):
        return False
    return True


@dataclass(frozen=True)
class TBlockAtomsResult:
    atoms: tuple[TBlockElement, ...]
    block_cap: int
    t_caps: tuple[int, ...]
    complete: bool = False
    note: str = "atoms found within the stated caps only"


def tblock_atoms_bounded(spec: TBlockSpec, block_cap: int, t_caps: Sequence[int]) -> TBlockAtomsResult:
    """Atoms of the T-block monoid with block length and t-coordinates capped."""
    _check_group(spec.group)
    if len(t_caps) != len(spec.components):
        raise InputError("one t-cap per component is required")
    atoms = []
    for k in range(block_cap + 1):
        for combo in itertools.combinations_with_replacement(spec.g0, k):
            for t in _t_vectors(spec, t_caps):
                cand = TBlockElement(tuple(combo), t)
                if cand.is_identity:
                    continue
                if tblock_validate(spec, cand) and _is_tblock_atom(spec, cand):
                    atoms.append(cand)
    atoms.sort(key=lambda a: (len(a.elements) + sum(a.t), a.elements, a.t))
    return TBlockAtomsResult(tuple(atoms), block_cap, tuple(int(c) for c in t_caps))


@dataclass(frozen=True)
class TBlockLengthResult:
    values: tuple[int, ...]
    complete: bool = True
    note: str = "exact: atoms in any factorization divide the element itself"


def tblock_length_set(
    spec: TBlockSpec,
    e: TBlockElement,
    block_cap: int | None = None,
    t_caps: Sequence[int] | None = None,
) -> TBlockLengthResult:
    """Lengths of all factorizations of a valid element into atoms.

    Exact regardless of caps: every atom of a factorization is a divisor
    of the element, so the element bounds the search.  The optional caps
    only reject oversized inputs.
    """
    _check_group(spec.group)
    if not tblock_validate(spec, e):
        raise NotZeroSum("element is not a valid T-block")
    if block_cap is not None and len(e.elements) > block_cap:
        raise CapExceeded(f"block length {len(e.elements)} exceeds cap {block_cap}")
    if t_caps is not None and any(ti > c for ti, c in zip(e.t, t_caps)):
        raise CapExceeded("a t-coordinate exceeds its cap")
    if e.is_identity:
        return TBlockLengthResult(values=(0,))

    divisor_atoms = [d for d in _proper_divisors(spec, e) if _is_tblock_atom(spec, d)]
    if _is_tblock_atom(spec, e):
        divisor_atoms.append(e)
    divisor_atoms.sort(key=lambda a: (a.elements, a.t))

    lengths: set[int] = set()

    def remainder(big: TBlockElement, small: TBlockElement) -> TBlockElement | None:
        bm, sm = big.block_multiplicities(), small.block_multiplicities()
        if not _sub_multiset(sm, bm):
            return None
        t_rest = tuple(b - s for b, s in zip(big.t, small.t))
        if any(x < 0 or x not in d for x, (d, _) in zip(t_rest, spec.components)):
            return None
        rest = _subtract(bm, sm)
        elems = []
        for g, c in sorted(rest.items()):
            elems.extend([g] * c)
        return TBlockElement(tuple(elems), t_rest)

    def rec(current: TBlockElement, start: int, count: int):
        if current.is_identity:
            lengths.add(count)
            return
        for j in range(start, len(divisor_atoms)):
            rest = remainder(current, divisor_atoms[j])
            if rest is not None:
                rec(rest, j, count + 1)

    rec(e, 0, 0)
    return TBlockLengthResult(values=tuple(sorted(lengths)))
