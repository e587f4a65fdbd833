import itertools

import pytest

from wktoolkit.blocks import (
    Block,
    TBlockElement,
    TBlockSpec,
    block_factorizations,
    block_length_set,
    davenport_constant,
    delta_block_monoid,
    minimal_zero_sum_atoms,
    tblock_atoms_bounded,
    tblock_length_set,
    tblock_validate,
    uk_block_monoid,
)
from wktoolkit.errors import GroupTooLarge, InputError, NotZeroSum
from wktoolkit.groups import FiniteAbelianGroup, cyclic
from wktoolkit.numon import from_generators


def _elems(block):
    return block.elements


def _oracle_minimal_zero_sums(group, g0, max_len):
    # independent enumeration: all zero-sum multisets, minimality by
    # checking every proper nonempty sub-multiset
    zero = group.zero()
    out = []
    for k in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(sorted(g0), k):
            total = zero
            for e in combo:
                total = group.add(total, e)
            if total != zero:
                continue
            minimal = True
            for size in range(1, k):
                for sub in set(itertools.combinations(combo, size)):
                    t = zero
                    for e in sub:
                        t = group.add(t, e)
                    if t == zero:
                        minimal = False
                        break
                if not minimal:
                    break
            if minimal:
                out.append(combo)
    return sorted(out, key=lambda c: (len(c), c))


def test_atoms_contract_examples():
    c2 = cyclic(2)
    atoms = minimal_zero_sum_atoms(c2)
    assert [
        _elems(b) for b in atoms
    ] == [((0,),), ((1,), (1,))]

    c3 = cyclic(3)
    atoms3 = minimal_zero_sum_atoms(c3)
    assert len(atoms3) == 4
    assert [_elems(b) for b in atoms3] == [
        ((0,),),
        ((1,), (2,)),
        ((1,), (1,), (1,)),
        ((2,), (2,), (2,)),
    ]

    trivial = cyclic(1)
    assert [_elems(b) for b in minimal_zero_sum_atoms(trivial)] == [(((),))]


def test_atoms_match_oracle_on_small_groups():
    for facs in ((2,), (3,), (4,), (5,), (2, 2), (6,), (2, 4)):
        g = FiniteAbelianGroup(facs)
        got = [_elems(b) for b in minimal_zero_sum_atoms(g)]
        expected = _oracle_minimal_zero_sums(g, list(g.elements()), g.order)
        assert got == expected


def test_atom_length_bounded_by_group_order():
    for facs in ((2,), (3,), (4,), (2, 2), (5,), (6,), (2, 4), (7,), (8,), (2, 2, 2), (3, 3), (2, 6), (9,), (10,), (11,), (12,)):
        g = FiniteAbelianGroup(facs)
        if g.order > 12:
            continue
        atoms = minimal_zero_sum_atoms(g)
        assert max(b.length for b in atoms) <= g.order


def test_group_cap():
    with pytest.raises(GroupTooLarge):
        minimal_zero_sum_atoms(cyclic(65))


def test_davenport_contract_examples():
    assert davenport_constant(cyclic(3)) == 3
    assert davenport_constant(FiniteAbelianGroup((2, 2))) == 3
    assert davenport_constant(cyclic(1)) == 0


def test_davenport_known_values():
    # cyclic groups have constant n; rank-two groups d1 + d2 - 1
    assert davenport_constant(cyclic(6)) == 6
    assert davenport_constant(FiniteAbelianGroup((2, 4))) == 5
    assert davenport_constant(FiniteAbelianGroup((3, 3))) == 5


def test_block_lengths_contract_examples():
    c3 = cyclic(3)
    b = Block.make(c3, [(1,), (1,), (1,), (2,), (2,), (2,)])
    facs = block_factorizations(c3, None, b)
    shapes = sorted(tuple(sorted(a.elements for a in f)) for f in facs)
    assert len(facs) == 2
    assert block_length_set(c3, None, b) == (2, 3)

    assert block_length_set(c3, None, Block.make(c3, [])) == (0,)

    c2 = cyclic(2)
    b4 = Block.make(c2, [(1,), (1,), (1,), (1,)])
    assert block_length_set(c2, None, b4) == (2,)

    with pytest.raises(NotZeroSum):
        Block.make(c3, [(1,)])


def test_block_factorizations_cover_multiset():
    c4 = cyclic(4)
    b = Block.make(c4, [(1,), (1,), (3,), (3,), (2,), (2,)])
    for f in block_factorizations(c4, None, b):
        merged = []
        for a in f:
            merged.extend(a.elements)
        assert tuple(sorted(merged)) == b.elements


def test_divisor_closed_restriction():
    # blocks supported in a subset have all their divisors there too, so
    # their length sets agree over the subset and over the full group; in
    # particular every length set over the subset occurs over the group
    c4 = cyclic(4)
    sub = [(2,), (1,), (3,)]
    for elems in ([(2,), (2,)], [(1,), (1,), (2,)], [(1,), (1,), (3,), (3,)]):
        b = Block.make(c4, elems)
        inner = block_length_set(c4, sub, b)
        outer = block_length_set(c4, None, b)
        assert inner == outer


def test_delta_block_monoid_contract_examples():
    assert delta_block_monoid(cyclic(2), 12).values == ()
    assert delta_block_monoid(cyclic(3), 9).values == (1,)
    assert delta_block_monoid(cyclic(4), 12).values == (1, 2)
    res = delta_block_monoid(cyclic(3), 9)
    assert res.complete is False and res.cap == 9


def test_half_factorial_dichotomy_on_surrogates():
    # distance sets: empty for C2, minimum 1 for C3..C6 within caps
    assert delta_block_monoid(cyclic(2), 10).values == ()
    for n, cap in ((3, 8), (4, 8), (5, 8), (6, 7)):
        vals = delta_block_monoid(cyclic(n), cap).values
        assert vals and min(vals) == 1


def test_uk_block_monoid_contract_examples():
    res = uk_block_monoid(cyclic(3), 2, 12)
    assert res.values == (2, 3)
    vals = res.values
    assert vals == tuple(range(vals[0], vals[-1] + 1))


def test_uk_block_monoid_intervals():
    for n in (3, 4, 5, 6):
        for k in (2, 3, 4):
            vals = uk_block_monoid(cyclic(n), k, 8).values
            assert vals == tuple(range(vals[0], vals[-1] + 1))
            assert k in vals


# ---------------------------------------------------------------------------
# T-blocks


def _c2_spec():
    c2 = cyclic(2)
    return TBlockSpec.make(c2, [(1,)], [(from_generators([2, 3]), (1,))])


def test_tblock_validate_contract_examples():
    spec = _c2_spec()
    assert tblock_validate(spec, TBlockElement.make(spec, [(1,)], (3,)))
    assert tblock_validate(spec, TBlockElement.make(spec, [], (0,)))
    assert not tblock_validate(spec, TBlockElement.make(spec, [(1,)], (2,)))
    assert not tblock_validate(spec, TBlockElement.make(spec, [(1,)], (1,)))  # 1 not in <2,3>
    assert tblock_validate(spec, TBlockElement.make(spec, [(1,), (1,)], (0,)))


def test_tblock_atoms_bounded():
    spec = _c2_spec()
    res = tblock_atoms_bounded(spec, 4, (6,))
    atoms = {(a.elements, a.t) for a in res.atoms}
    assert atoms == {
        ((), (2,)),
        (((1,), (1,)), (0,)),
        (((1,),), (3,)),
    }
    assert res.complete is False


def test_tblock_length_set_contract_examples():
    spec = _c2_spec()
    assert tblock_length_set(spec, TBlockElement.make(spec, [(1,), (1,)], (0,))).values == (1,)
    assert tblock_length_set(spec, TBlockElement.make(spec, [], (0,))).values == (0,)
    assert tblock_length_set(spec, TBlockElement.make(spec, [(1,)], (3,))).values == (1,)
    # ([1], 5) = ([1], 3) + ((), 2) only
    assert tblock_length_set(spec, TBlockElement.make(spec, [(1,)], (5,))).values == (2,)
    with pytest.raises(NotZeroSum):
        tblock_length_set(spec, TBlockElement.make(spec, [(1,)], (2,)))


def test_tblock_atoms_match_definition_oracle():
    # oracle straight from the definition: enumerate valid pairs within the
    # caps and call a pair an atom when no two valid non-identity pairs
    # compose to it
    spec = _c2_spec()
    block_cap, t_cap = 4, 6
    valid = []
    for k in range(block_cap + 1):
        for t in range(t_cap + 1):
            e = TBlockElement.make(spec, [(1,)] * k, (t,))
            if tblock_validate(spec, e):
                valid.append(e)
    non_identity = [e for e in valid if not e.is_identity]
    atoms = set()
    for e in non_identity:
        decomposable = False
        for e1 in non_identity:
            if len(e1.elements) > len(e.elements) or e1.t[0] > e.t[0]:
                continue
            rest_elems = list(e.elements)
            for x in e1.elements:
                rest_elems.remove(x)
            e2 = TBlockElement.make(spec, rest_elems, (e.t[0] - e1.t[0],))
            if not e2.is_identity and tblock_validate(spec, e2):
                decomposable = True
                break
        if not decomposable:
            atoms.add((e.elements, e.t))
    got = tblock_atoms_bounded(spec, block_cap, (t_cap,))
    assert {(a.elements, a.t) for a in got.atoms} == atoms


def test_davenport_rank_three():
    assert davenport_constant(FiniteAbelianGroup((2, 2, 2))) == 4


def test_tblock_zero_t_agrees_with_plain_blocks():
    c3 = cyclic(3)
    spec = TBlockSpec.make(c3, list(c3.elements()), [(from_generators([2, 3]), (1,))])
    for elems in ([(1,), (1,), (1,)], [(1,), (2,)], [(1,), (1,), (1,), (2,), (2,), (2,)]):
        e = TBlockElement.make(spec, elems, (0,))
        assert tblock_length_set(spec, e).values == block_length_set(c3, None, elems)
    res = tblock_atoms_bounded(spec, 3, (0,))
    plain = minimal_zero_sum_atoms(c3)
    assert {a.elements for a in res.atoms} == {b.elements for b in plain}


def test_tblock_caps():
    spec = _c2_spec()
    from wktoolkit.errors import CapExceeded

    with pytest.raises(CapExceeded):
        tblock_length_set(spec, TBlockElement.make(spec, [(1,)], (3,)), block_cap=0)
    with pytest.raises(InputError):
        tblock_atoms_bounded(spec, 2, (1, 2))
