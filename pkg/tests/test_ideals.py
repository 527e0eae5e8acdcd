import itertools

import pytest

import _corpus
from toric_ust import lattice as lat
from toric_ust.cones import enumerate_faces, face_from_rays, make_cone
from toric_ust.errors import DomainError
from toric_ust.families import hypersurface_cone
from toric_ust.hilbert import enumerate_semigroup, hilbert_basis
from toric_ust.ideals import (
    MonomialIdeal,
    ceil_div,
    default_search_degree,
    face_multiplier,
    ideal_containment,
    ideal_power,
    membership,
    minimalize,
    monomial_prime,
    symbolic_membership,
    symbolic_membership_bruteforce,
    symbolic_witness,
    valuation_ideal,
)


def prime(c, rays):
    return monomial_prime(c, hilbert_basis(c), face_from_rays(c, rays))


def segre_prime():
    return prime(_corpus.segre(), [(1, 0, 0), (0, 1, 0)])


def divides(c, m, ell):
    return c.contains_dual(lat.sub(ell, m))


def minimal_by_hand(c, gens):
    gens = set(gens)
    return {g for g in gens if not any(h != g and divides(c, h, g) for h in gens)}


def power_by_multisets(p, r):
    sums = {lat.vsum(s, p.cone.ambient_rank)
            for s in itertools.combinations_with_replacement(p.gens, r)}
    return minimal_by_hand(p.cone, sums)


def valuation_ideal_by_scan(p, e):
    """Minimal elements of ``{m : <m, v_F> >= e}`` found by a degree-bounded scan."""
    c = p.cone
    bound = e * hilbert_basis(c).max_degree
    pts = [m for m in enumerate_semigroup(c, bound) if p.valuation(m) >= e]
    return minimal_by_hand(c, pts)


def corpus_primes(limit_rank=3, count=8):
    cones = [c for name, c in _corpus.corpus()
             if c.ambient_rank <= limit_rank and (name == "segre" or name.startswith("random"))]
    for c in cones[:count]:
        for f in enumerate_faces(c):
            if not f.is_zero:
                yield monomial_prime(c, hilbert_basis(c), f)


PRIMES = list(corpus_primes())


def test_segre_prime_generators():
    assert set(segre_prime().gens) == {(1, 0, 0), (0, 1, 0), (1, 1, -1)}


def test_small_primes():
    orth = make_cone(2, [(1, 0), (0, 1)])
    assert prime(orth, [(1, 0)]).gens == ((1, 0),)
    hyp, _ = hypersurface_cone(2, 2)
    p = prime(hyp, [(2, 1)])
    assert set(p.gens) == {(1, 0), (0, 1)}
    assert set(ideal_power(p, 2).gens) == {(2, 0), (1, 1), (0, 2)}
    # (0,2) = (1,0) + (-1,2) with (-1,2) in the semigroup, so (0,2) is not minimal
    assert divides(hyp, (1, 0), (0, 2))
    assert valuation_ideal(p, 2).gens == ((1, 0),)
    assert set(ideal_power(prime(orth, [(1, 0)]), 3).gens) == {(3, 0)}


def test_zero_face_has_no_prime():
    c = _corpus.segre()
    with pytest.raises(DomainError):
        monomial_prime(c, hilbert_basis(c), enumerate_faces(c)[0])


def test_membership_examples():
    p = segre_prime()
    assert membership(p.ideal, (1, 1, 0))
    assert all(membership(p.ideal, g) for g in p.gens)
    orth = make_cone(2, [(1, 0), (0, 1)])
    assert not membership(MonomialIdeal(orth, ((1, 0),)), (0, 5))
    with pytest.raises(DomainError):
        membership(p.ideal, (0, 0, -1))


def test_minimalize_examples():
    orth = make_cone(2, [(1, 0), (0, 1)])
    assert minimalize(MonomialIdeal(orth, ((1, 0), (2, 0)))).gens == ((1, 0),)
    assert set(minimalize(MonomialIdeal(orth, ((1, 1), (2, 0), (0, 2)))).gens) == {
        (1, 1), (2, 0), (0, 2)}
    ver = make_cone(2, [(1, 0), (-1, 2)])
    assert minimalize(MonomialIdeal(ver, ((0, 1), (0, 2)))).gens == ((0, 1),)


def test_segre_square_and_valuation_ideal():
    p = segre_prime()
    assert set(ideal_power(p, 2).gens) == {(2, 0, 0), (1, 1, 0), (2, 1, -1), (0, 2, 0),
                                           (1, 2, -1), (2, 2, -2)}
    assert set(valuation_ideal(p, 2).gens) == {(1, 1, -1), (2, 0, 0), (0, 2, 0)}
    assert valuation_ideal(p, 1).gens == p.gens
    assert ideal_containment(valuation_ideal(p, 3), ideal_power(p, 2))
    assert ideal_containment(ideal_power(p, 2), p.ideal)


def test_orthant_prime_is_not_in_its_square():
    orth = make_cone(2, [(1, 0), (0, 1)])
    p = prime(orth, [(1, 0)])
    assert not ideal_containment(p.ideal, ideal_power(p, 2))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_powers_match_multiset_sums(r):
    for p in PRIMES:
        assert set(ideal_power(p, r).gens) == power_by_multisets(p, r)


@pytest.mark.parametrize("e", [1, 2, 3, 4])
def test_valuation_ideal_matches_scan(e):
    for p in PRIMES:
        got = valuation_ideal(p, e)
        assert set(got.gens) == valuation_ideal_by_scan(p, e)
        assert all(p.valuation(g) >= e for g in got.gens)


@pytest.mark.parametrize("e", range(1, 7))
def test_sandwich(e):
    for p in PRIMES:
        assert all(symbolic_membership(p, e, g) for g in ideal_power(p, e).gens)
        lower = ceil_div(e, face_multiplier(p))
        assert ideal_containment(valuation_ideal(p, e), ideal_power(p, lower))


def test_symbolic_members_have_enough_valuation():
    for p in PRIMES:
        c = p.cone
        for ell in enumerate_semigroup(c, 6):
            for e in range(1, 5):
                if symbolic_membership(p, e, ell):
                    assert p.valuation(ell) >= e
                if e == 1:
                    assert symbolic_membership(p, 1, ell) == (p.valuation(ell) >= 1)


def test_symbolic_witness_certifies_membership():
    for p in PRIMES:
        c = p.cone
        fstar = p.face.supporting_functional
        for ell in enumerate_semigroup(c, 5):
            for e in (2, 3):
                w = symbolic_witness(p, e, ell)
                if w is None:
                    assert not symbolic_membership(p, e, ell)
                    continue
                g, q = w
                assert g in ideal_power(p, e).gens
                assert c.contains_dual(lat.add(ell, lat.sub(q, g)))
                # q is a multiple of the supporting functional, which vanishes on F
                assert all(lat.pairing(q, v) == 0 for v in p.face.generators)
                if any(q):
                    assert lat.primitivize(q) == lat.primitivize(fstar)


def test_bruteforce_agrees_with_symbolic_membership():
    for p in PRIMES[:30]:
        c = p.cone
        for ell in enumerate_semigroup(c, 4):
            for e in (1, 2, 3):
                q = symbolic_membership_bruteforce(p, e, ell, default_search_degree(p, e))
                exact = symbolic_membership(p, e, ell)
                assert (q is not None) == exact
                if q is not None:
                    assert membership(ideal_power(p, e), lat.add(ell, q))


def test_segre_symbolic_examples():
    p = segre_prime()
    for s in (1, 2, 3):
        z = (s, s, -s)
        assert symbolic_membership(p, 2 * s, z)
        assert not membership(ideal_power(p, 2 * s), z)
    assert symbolic_membership_bruteforce(p, 2, (1, 1, -1), 4) == (0, 0, 1)
    assert symbolic_membership_bruteforce(p, 1, (1, 0, 0), 4) == (0, 0, 0)
    assert symbolic_membership_bruteforce(p, 1, (0, 0, 0), 4) is None


def test_domain_errors():
    p = segre_prime()
    for bad in (lambda: ideal_power(p, 0), lambda: valuation_ideal(p, 0),
                lambda: symbolic_membership(p, 0, (1, 0, 0)),
                lambda: symbolic_membership_bruteforce(p, 0, (1, 0, 0))):
        with pytest.raises(DomainError):
            bad()
