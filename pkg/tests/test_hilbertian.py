import itertools

import pytest

from wktoolkit.errors import (
    ConstantPolynomial,
    DegreeTooSmall,
    InputError,
    ZeroConstantTerm,
)
from wktoolkit.hilbertian import (
    PrimePolynomial,
    find_irreducible_with_prefix,
    is_irreducible,
    poly_gcd,
    poly_mod,
    poly_mul,
    power_irreducibility_test,
)


def test_polynomial_validation():
    f = PrimePolynomial(2, (1, 1, 1))
    assert f.degree == 2
    assert str(f) == "X^2 + X + 1"
    with pytest.raises(InputError):
        PrimePolynomial(2, (1, 2))
    with pytest.raises(InputError):
        PrimePolynomial(2, (1, 0))
    with pytest.raises(InputError):
        PrimePolynomial(4, (1, 1))


def test_poly_arithmetic():
    # (X+1)^2 = X^2 + 1 over F_2
    assert poly_mul((1, 1), (1, 1), 2) == (1, 0, 1)
    assert poly_mod((1, 0, 1), (1, 1), 2) == ()
    assert poly_mod((1, 1, 1), (1, 1), 2) == (1,)
    assert poly_gcd((1, 0, 1), (1, 1), 2) == (1, 1)


def test_is_irreducible_contract_examples():
    assert is_irreducible(PrimePolynomial(2, (1, 1, 1)))  # no roots in F_2
    assert not is_irreducible(PrimePolynomial(2, (1, 0, 1)))  # (X+1)^2
    assert is_irreducible(PrimePolynomial(3, (0, 1)))  # degree one
    with pytest.raises(ConstantPolynomial):
        is_irreducible(PrimePolynomial(3, (2,)))


def test_oracles_agree_exhaustively():
    # every polynomial of degree <= 6 over F_2 and degree <= 4 over F_3
    for p, dmax in ((2, 6), (3, 4)):
        for deg in range(1, dmax + 1):
            for body in itertools.product(range(p), repeat=deg):
                for lead in range(1, p):
                    f = PrimePolynomial(p, body + (lead,))
                    assert is_irreducible(f) == power_irreducibility_test(f), f


def test_known_irreducible_counts():
    # the number of monic irreducibles of degree n over F_p is
    # (1/n) * sum_{d | n} mu(d) p^(n/d); spot-check small cases
    counts = {}
    for deg in (1, 2, 3, 4):
        c = 0
        for body in itertools.product(range(2), repeat=deg):
            f = PrimePolynomial(2, body + (1,))
            if is_irreducible(f):
                c += 1
        counts[deg] = c
    assert counts == {1: 2, 2: 1, 3: 2, 4: 3}


def test_find_irreducible_contract_examples():
    w = find_irreducible_with_prefix(2, (1, 1), 4)
    assert w.coefficients == (1, 1, 1)
    w1 = find_irreducible_with_prefix(2, (1,), 1)
    assert w1.coefficients == (1, 1)
    w3 = find_irreducible_with_prefix(3, (1, 0, 0), 6)
    assert w3 is not None
    assert w3.coefficients[:3] == (1, 0, 0)
    assert is_irreducible(w3) and power_irreducibility_test(w3)


def test_find_irreducible_not_found_is_not_a_disproof():
    # prefix (1, 0) over F_2 admits no irreducible of degree exactly 2
    # (the only candidate is (X+1)^2), but degree 3 works
    assert find_irreducible_with_prefix(2, (1, 0), 2) is None
    w = find_irreducible_with_prefix(2, (1, 0), 3)
    assert w is not None and w.degree == 3


def test_find_irreducible_errors():
    with pytest.raises(ZeroConstantTerm):
        find_irreducible_with_prefix(2, (0, 1), 4)
    with pytest.raises(DegreeTooSmall):
        find_irreducible_with_prefix(2, (1, 1), 1)
    with pytest.raises(InputError):
        find_irreducible_with_prefix(6, (1,), 3)
    with pytest.raises(InputError):
        find_irreducible_with_prefix(3, (1, 5), 4)


def test_find_irreducible_deterministic():
    a = find_irreducible_with_prefix(5, (2, 3), 6)
    b = find_irreducible_with_prefix(5, (2, 3), 6)
    assert a == b
    # lexicographically first hit: no smaller matching tail is irreducible
    tail_len = a.degree - 1
    for tail in itertools.product(range(5), repeat=tail_len):
        if tail[-1] == 0:
            continue
        if tail >= a.coefficients[2:]:
            break
        assert not is_irreducible(PrimePolynomial(5, (2, 3) + tail))
