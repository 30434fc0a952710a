import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from contactlab.analysis import check_identities, classify_dim5, decompose, frobenius_check, is_ds_contact, \
    main_theorem_audit
from contactlab.catalog import AFF, frobenius_inputs, heisenberg
from contactlab.constructions import (FrobeniusInput, SymplecticAlgebra, build_an, contactize, obstruction_check,
                                      random_basis_change, realize_line_ideal, realize_q2, standard_symplectic,
                                      t0_embedding, transport)
from contactlab.errors import ConstructionError, NotApplicable
from contactlab.forms import KForm, is_transversely_unimodular
from contactlab.lie import LieAlgebra, Subspace, center, fingerprint, is_unimodular
from contactlab.linalg import Matrix, unit_vec

F = Fraction
H = [[1, 0], [0, -1]]
J = [[0, -1], [1, 0]]
FROB = frobenius_inputs()
ABELIAN2 = LieAlgebra(2, {}, ("x", "y"))


def full_audit(c):
    d = decompose(c)
    assert check_identities(d).failures() == {}
    assert main_theorem_audit(c).passed
    return d


def test_contactize_plane_is_heisenberg():
    c = contactize(SymplecticAlgebra(ABELIAN2, KForm(2, 2, {(0, 1): 1})))
    assert fingerprint(c.algebra) == fingerprint(heisenberg(1))
    assert c.reeb == unit_vec(3, 0)


@pytest.mark.parametrize("name", sorted(FROB))
def test_contactization_center_is_reeb_line(name):
    c = contactize(FROB[name].symplectic)
    z = center(c.algebra)
    assert z.dim == 1 and z.contains(c.reeb)


def test_symplectic_gates():
    with pytest.raises(ConstructionError, match="degenerate"):
        SymplecticAlgebra(ABELIAN2, KForm.zero(2, 2))
    h = heisenberg(1)
    with pytest.raises(ConstructionError):
        SymplecticAlgebra(h, KForm(2, 3, {(0, 1): 1}))
    with pytest.raises(ConstructionError, match="degenerate"):
        FrobeniusInput(AFF, KForm.covector([1, 0]))


def test_realize_q2_dim5_labels():
    assert classify_dim5(realize_q2(FROB["aff"], H)) == "g1+"
    assert classify_dim5(realize_q2(FROB["aff"], J)) == "g0+"


@pytest.mark.parametrize("bad,msg", [([[1, 0], [0, 1]], "traceless"), ([[0, 1], [0, 0]], "invertible"),
                                     ([[1]], "2x2")])
def test_realize_q2_gates(bad, msg):
    with pytest.raises(ConstructionError, match=msg):
        realize_q2(FROB["aff"], bad)


@pytest.mark.parametrize("name", sorted(FROB))
@pytest.mark.parametrize("A", [H, J, [[2, 3], [-1, -2]]], ids=["H", "J", "mixed"])
def test_realize_q2_passes_audit_and_recovers_t0(name, A):
    f = FROB[name]
    c = realize_q2(f, A)
    d = full_audit(c)
    assert is_ds_contact(d)
    assert (d.t0.dim, d.q.dim) == (f.algebra.dim, 2)
    emb = t0_embedding(f)
    assert d.t0 == Subspace(c.algebra.dim, emb)
    # modulo xi the embedding is a Lie algebra map a -> t0
    k = f.algebra.dim
    for i in range(k):
        for j in range(i + 1, k):
            lhs = c.algebra.bracket(emb[i], emb[j])
            rhs = [F(0)] * c.algebra.dim
            for t, x in enumerate(f.algebra.bracket_basis(i, j)):
                rhs = [r + x * e for r, e in zip(rhs, emb[t])]
            assert lhs[1:] == tuple(rhs[1:])
    assert frobenius_check(d).passed()
    assert not is_transversely_unimodular(c)


@pytest.mark.parametrize("A,label", [(H, "g1-"), (J, "g0-")])
def test_line_ideal_dim5(A, label):
    r = realize_line_ideal(FROB["aff"], 1, A)
    assert classify_dim5(r.structure) == label
    assert r.scale == 1 and r.chi == (1, 0)


def test_line_ideal_m2_passes_audit():
    A = Matrix([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, -1, 0], [0, 0, 0, -2]])
    r = realize_line_ideal(FROB["aff"], 1, A)
    d = full_audit(r.structure)
    assert (d.t0.dim, d.q.dim) == (2, 4)
    for name, z in (("a1", 1), ("aff_aff", 1), ("aff_aff", 3)):
        d = full_audit(realize_line_ideal(FROB[name], z, A).structure)
        assert d.q.dim == 4


def test_line_ideal_normalizes_or_rejects():
    f = FrobeniusInput(AFF, KForm.covector([0, -2]))
    r = realize_line_ideal(f, 1, H)
    assert r.scale == F(1, 2) and r.z == (0, F(1, 2))
    full_audit(r.structure)
    with pytest.raises(ConstructionError, match="must equal -1"):
        realize_line_ideal(f, 1, H, normalize=False)


def test_line_ideal_gates():
    f = FROB["aff"]
    with pytest.raises(ConstructionError, match="not an ideal"):
        realize_line_ideal(f, (1, 1), H)
    with pytest.raises(ConstructionError, match="vanishes"):
        realize_line_ideal(f, 0, H)
    with pytest.raises(ConstructionError, match="sp\\(q"):
        realize_line_ideal(f, 1, [[1, 1], [0, 1]])
    with pytest.raises(ConstructionError, match="even size"):
        realize_line_ideal(f, 1, [[1]])
    with pytest.raises(ConstructionError, match="invertible"):
        realize_line_ideal(f, 1, [[0, 1], [0, 0]])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_build_an_is_frobenius(n):
    f = build_an(n)
    assert f.algebra.dim == n * n + n
    assert f.omega.gram().rank() == n * n + n
    assert not is_unimodular(f.algebra)
    assert f.nu == n


def test_obstruction():
    assert obstruction_check(build_an(5), 5, 2) == "excluded"
    assert obstruction_check(FROB["a2"], 2, 2) == "not excluded"
    assert obstruction_check(None, 4, 2) == "not excluded"
    with pytest.raises(NotApplicable):
        obstruction_check(None, 1, 1)


def test_standard_symplectic():
    s = standard_symplectic(2)
    assert s.T == -s and s.det() == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["aff", "a1", "aff_c"]))
def test_transport_preserves_contact_data(seed, name):
    c = realize_q2(FROB[name], H)
    p = random_basis_change(random.Random(seed), c.algebra.dim)
    t = transport(c, p)
    assert p @ t.reeb == c.reeb
    assert fingerprint(t.algebra) == fingerprint(c.algebra)
    assert is_ds_contact(t) and classify_dim5(t) == classify_dim5(c)
