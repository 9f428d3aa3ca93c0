import numpy as np
import pytest

from ququart_hubbard import mapping, oracle
from ququart_hubbard.errors import SiteOutOfRange, UnsupportedLattice
from ququart_hubbard.gamma import make_gamma_set

GSET = make_gamma_set()


def anticommutator(a, b):
    return a @ b + b @ a


# --- geometry ---------------------------------------------------------------


def test_chain_bonds():
    geom = mapping.chain(4)
    assert geom.bonds == ((1, 2), (2, 3), (3, 4))
    assert geom.site_count == 4


def test_ladder_bond_inventory():
    geom = mapping.ladder(2, 4)
    assert geom.site_count == 8
    assert geom.bond_count == 10  # 2*(N-1) horizontal + N rungs
    horizontal = ((1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8))
    rungs = ((1, 5), (2, 6), (3, 7), (4, 8))
    assert geom.bonds == horizontal + rungs


def test_ladder_2x2():
    assert mapping.ladder(2, 2).bonds == ((1, 2), (3, 4), (1, 3), (2, 4))


def test_parse_geometry_tokens():
    assert mapping.parse_geometry("chain:3").label == "chain(3)"
    assert mapping.parse_geometry("ladder:2x4").label == "ladder(2,4)"
    assert mapping.parse_geometry("1x8").label == "chain(8)"
    assert mapping.parse_geometry("2x4").label == "ladder(2,4)"
    with pytest.raises(UnsupportedLattice):
        mapping.parse_geometry("3x3")


# --- mapped ladder operators ------------------------------------------------


def test_single_site_annihilator_structure():
    # (1/2)(G1 - i G2) moves the first internal two-level factor: |0b> -> |1b>
    op = mapping.map_fermion(1, "up", "annihilate", 1).matrix
    expected = 0.5 * (GSET.gamma(1) - 1j * GSET.gamma(2))
    assert np.array_equal(op, expected)
    nonzero = {(r, c) for r, c in zip(*np.nonzero(op))}
    assert nonzero == {(2, 0), (3, 1)}


def test_site_out_of_range():
    with pytest.raises(SiteOutOfRange):
        mapping.map_fermion(3, "up", "create", 2)


@pytest.mark.parametrize("L", [1, 2])
def test_anticommutation_suite(L):
    ops = {
        (m, s): (
            mapping.map_fermion(m, s, "annihilate", L).matrix,
            mapping.map_fermion(m, s, "create", L).matrix,
        )
        for m in range(1, L + 1)
        for s in mapping.SPINS
    }
    eye = np.eye(4**L)
    for (m1, s1), (c1, cdag1) in ops.items():
        for (m2, s2), (c2, cdag2) in ops.items():
            expected = eye if (m1, s1) == (m2, s2) else 0 * eye
            assert np.max(np.abs(anticommutator(c1, cdag2) - expected)) < 1e-12
            assert np.max(np.abs(anticommutator(c1, c2))) < 1e-12
            assert np.max(np.abs(anticommutator(cdag1, cdag2))) < 1e-12


def test_cross_site_anticommutator_with_string():
    c1 = mapping.map_fermion(1, "up", "annihilate", 2).matrix
    cdag2 = mapping.map_fermion(2, "down", "create", 2).matrix
    assert np.max(np.abs(anticommutator(c1, cdag2))) < 1e-14


def test_number_operators_commute():
    L = 3
    numbers = [
        mapping.mapped_number_operator(m, s, L)
        for m in range(1, L + 1)
        for s in mapping.SPINS
    ]
    for a in numbers:
        for b in numbers:
            assert np.max(np.abs(a @ b - b @ a)) < 1e-12


# --- level labels -----------------------------------------------------------


def test_level_labels_bijective():
    labels = [mapping.map_ququart_level(level) for level in range(4)]
    assert sorted(labels) == sorted(["0", "u", "d", "ud"])


def test_level_labels_from_number_operators():
    # derived from the diagonal of the mapped number operators at one site
    assert mapping.map_ququart_level(0) == "ud"
    assert mapping.map_ququart_level(1) == "u"
    assert mapping.map_ququart_level(2) == "d"
    assert mapping.map_ququart_level(3) == "0"


def test_product_state_is_number_eigenstate():
    state = mapping.product_state(("u", "d"))
    n_up_1 = mapping.mapped_number_operator(1, "up", 2)
    n_dn_2 = mapping.mapped_number_operator(2, "down", 2)
    assert abs(np.vdot(state, n_up_1 @ state) - 1.0) < 1e-14
    assert abs(np.vdot(state, n_dn_2 @ state) - 1.0) < 1e-14


# --- interaction term -------------------------------------------------------


def test_interaction_bracket_is_doublon_projector():
    assert np.allclose(mapping.interaction_bracket(), np.diag([4, 0, 0, 0]), atol=0)


def test_int_prefactor_resolved_to_quarter():
    assert mapping.resolve_int_prefactor() == 0.25


def test_int_term_matches_number_product():
    mh = mapping.build_mapped_hamiltonian(mapping.chain(1), 1.0, 3.0)
    n_product = mapping.mapped_number_operator(1, "up", 1) @ mapping.mapped_number_operator(1, "down", 1)
    assert np.max(np.abs(mh.int_terms[0] - 3.0 * n_product)) < 1e-14


# --- assembled Hamiltonian --------------------------------------------------


def test_zero_couplings_give_zero_hamiltonian():
    mh = mapping.build_mapped_hamiltonian(mapping.chain(2), 0.0, 0.0)
    assert np.max(np.abs(mapping.dense_hamiltonian(mh))) == 0.0


def test_hop_terms_hermitian():
    mh = mapping.build_mapped_hamiltonian(mapping.ladder(2, 2), 1.3, 0.7)
    for terms in mh.hop_terms:
        for term in terms:
            dense = mapping.embed_factors(term.factor_map(), 4)
            assert np.max(np.abs(dense - dense.conj().T)) < 1e-12


def test_interaction_terms_local():
    mh = mapping.build_mapped_hamiltonian(mapping.chain(3), 1.0, 2.0)
    for site, local in enumerate(mh.int_terms, start=1):
        embedded = mapping.embed_factors({site: local}, 3)
        reference = mapping.embed_factors({site: local}, 3)
        assert np.array_equal(embedded, reference)
        assert local.shape == (4, 4)


def test_rung_bonds_carry_string():
    mh = mapping.build_mapped_hamiltonian(mapping.ladder(2, 3), 1.0, 0.0)
    by_bond = {terms[0].bond: terms for terms in mh.hop_terms}
    assert by_bond[(1, 4)][0].string_sites == (2, 3)
    assert by_bond[(1, 2)][0].string_sites == ()


@pytest.mark.parametrize("geom", [mapping.chain(2), mapping.chain(3), mapping.ladder(2, 2)])
@pytest.mark.parametrize("J,v", [(1.0, 0.0), (1.0, 2.0), (0.0, 3.0), (1.0, 8.0)])
def test_spectrum_matches_occupation_reference(geom, J, v):
    mapped = mapping.dense_hamiltonian(mapping.build_mapped_hamiltonian(geom, J, v))
    exact = oracle.fermionic_hamiltonian(geom, J, v)
    gap = np.max(np.abs(np.linalg.eigvalsh(mapped) - np.linalg.eigvalsh(exact)))
    assert gap < 1e-10


def test_mapped_hamiltonian_hermitian():
    mh = mapping.build_mapped_hamiltonian(mapping.chain(3), 1.0, 2.0)
    dense = mapping.dense_hamiltonian(mh)
    assert np.max(np.abs(dense - dense.conj().T)) < 1e-12


# --- serialization ----------------------------------------------------------


def test_hamiltonian_json_round_trip(tmp_path):
    mh = mapping.build_mapped_hamiltonian(mapping.ladder(2, 2), 1.5, 2.5)
    path = tmp_path / "hamiltonian.json"
    mapping.save_hamiltonian(mh, path)
    loaded = mapping.load_hamiltonian(path)
    assert loaded.geometry == mh.geometry
    assert loaded.J == mh.J and loaded.v == mh.v
    assert loaded.int_prefactor == mh.int_prefactor
    assert np.array_equal(
        mapping.dense_hamiltonian(loaded), mapping.dense_hamiltonian(mh)
    )


def test_init_token_parsing():
    assert mapping.parse_init_tokens("u, ud ,0,d") == ("u", "ud", "0", "d")
    with pytest.raises(ValueError):
        mapping.parse_init_tokens("u,x")
