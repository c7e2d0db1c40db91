import string

import pytest

from hilb.groebner import Ideal, ideal_equal
from hilb.multipoly import RingError, Weight
from hilb.partitions import Partition, parse_chain, pyramid
from hilb.localeq import (
    cotangent_weights,
    extra_dimension,
    haiman_equations,
    jacobian_ideal,
    pyramid_layer_vars,
    pyramid_potential,
    simple_eliminate,
    step0,
    var_weight,
)

LAM_121 = parse_chain("(1) < (2,1)")
LAM_131 = parse_chain("(1) < (3,1)")
LAM_132 = parse_chain("(1) < (3,2)")
LAM_1321 = parse_chain("(1) < (3,2,1)")


def test_single_box_presentation():
    box = Partition(3, [(0, 0, 0)])
    pres = haiman_equations(box)
    assert len(pres.variables) == 3
    # the only adjacency equations cancel identically
    assert pres.equations == []
    ws, extra = cotangent_weights(box)
    assert extra == 0
    assert ws == sorted(
        [Weight.of(1, 0, 0), Weight.of(0, 1, 0), Weight.of(0, 0, 1)],
        key=lambda w: w.sort_key(),
    )


def test_raw_presentation_sizes():
    pres = haiman_equations(LAM_121)
    assert len(pres.variables) == 24
    assert len(pres.equations) == 36
    pres = haiman_equations(LAM_131)
    assert len(pres.variables) == 40


def test_equations_weight_homogeneous_on_construction():
    # construction already asserts this; spot-check a weight directly
    pres = haiman_equations(LAM_121)
    v = ((1, 0, 0), (0, 0, 2))
    assert var_weight(v) == Weight.of(-1, 0, 2)
    assert pres.weights[pres.var_index(v)] == Weight.of(-1, 0, 2)


def test_step0_121_drops_exactly_the_origin_row():
    pres = step0(LAM_121)
    assert len(pres.variables) == 18
    assert len(pres.equations) == 30
    assert all(i != (0, 0, 0) for i, _ in pres.variables)
    assert set(pres.eliminated) == {((0, 0, 0), j) for j in sorted_glove(LAM_121)}


def sorted_glove(lam):
    from hilb.partitions import glove

    return sorted(glove(lam))


def test_step0_131_measures_against_known_survivor_table():
    pres = step0(LAM_131)
    assert len(pres.variables) == 21
    survivors = set(pres.variables)
    sups_full = [(1, 1, 0), (1, 0, 1), (3, 0, 0), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    expected = {((1, 0, 0), j) for j in [(1, 1, 0), (1, 0, 1), (3, 0, 0)]}
    for i in [(2, 0, 0), (0, 1, 0), (0, 0, 1)]:
        expected |= {(i, j) for j in sups_full}
    assert survivors == expected


def test_step0_132_count():
    pres = step0(LAM_132)
    assert len(pres.variables) == 24


def test_step0_back_substitution_consistent():
    # eliminated expressions must turn raw generators into members of the
    # eliminated ideal
    raw = haiman_equations(LAM_121)
    pres = step0(LAM_121)
    J = Ideal(pres.ring, pres.equations)
    images = []
    for v in raw.variables:
        if v in pres.eliminated:
            images.append(pres.eliminated[v])
        else:
            images.append(pres.ring.var(pres.var_index(v)))
    for eq in raw.equations:
        assert J.contains(eq.substitute(images))


def test_cotangent_121():
    ws, extra = cotangent_weights(LAM_121)
    assert len(ws) == 18
    assert extra == 6


def test_cotangent_131_132():
    # at colength 5 the eliminated presentation is already minimal, so its
    # coordinate weights are the cotangent weights
    ws, extra = cotangent_weights(LAM_131)
    assert extra == 6
    assert ws == sorted(
        [var_weight(v) for v in step0(LAM_131).variables],
        key=lambda w: w.sort_key(),
    )
    assert extra_dimension(LAM_132) == 6


def test_cotangent_1321_without_a_ring():
    # raw ring would need 70 variables, past the cap; the cotangent count
    # is combinatorial and must still work
    with pytest.raises(RingError):
        haiman_equations(LAM_1321)
    ws, extra = cotangent_weights(LAM_1321)
    assert len(ws) == 29
    assert extra == 8


def test_cotangent_r2_arm_leg_weights():
    lam = Partition(2, [(0, 0), (1, 0)])
    ws, extra = cotangent_weights(lam)
    assert extra == 0
    assert sorted(w.as_fractions() for w in ws) == sorted(
        [(2, 0), (1, 0), (0, 1), (-1, 1)]
    )


def test_cotangent_r2_always_smooth():
    from hilb.partitions import enumerate_partitions

    for n in range(1, 7):
        for lam in enumerate_partitions(2, n):
            assert extra_dimension(lam) == 0


def test_cotangent_embedded_2d_partition_smooth():
    # a flat r=3 partition is a product with affine space: no extra directions
    flat = Partition(3, [(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)])
    assert extra_dimension(flat) == 0


PRINTED_F121 = """
-cdg +beg +bch -aeh +ehh -bbi +adi -dhi -egj +bij +dgk -bhk
-cem +bfm -ekm +dlm +ccn -afn +fhn -kkn -bln +jln -bco
+aeo -dio +bko +fno -eoo -fgp +cip +ikp -hlp +lop +egq -chq
-ijq +hkq -fmq -lnq +coq -koq +iqq +emr -cnr +knr -ipr
"""


def test_pyramid_potential_matches_printed_form():
    F, variables = pyramid_potential(2)
    subs = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    sups = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    letter = {}
    k = 0
    for i in subs:
        for j in sups:
            letter[(i, j)] = string.ascii_lowercase[k]
            k += 1
    expected = {}
    for tok in PRINTED_F121.split():
        sign = 1 if tok[0] == "+" else -1
        expected["".join(sorted(tok[1:]))] = sign
    got = {}
    for mono, coeff in F.terms.items():
        letters = []
        for vi, e in enumerate(mono):
            letters.extend(letter[variables[vi]] * e)
        got["".join(sorted(letters))] = coeff
    assert len(got) == 46
    assert got == expected


def test_pyramid_potential_homogeneity():
    for n in (2, 3):
        F, variables = pyramid_potential(n)
        ws = [var_weight(v) for v in variables]
        target = Weight.of(1, 1, 1)
        for e in F.terms:
            w = None
            for k, wt in zip(e, ws):
                if k:
                    w = wt * k if w is None else w + wt * k
            assert sum(e) == 3
            assert w == target


def test_pyramid_layer_vars_count():
    assert len(pyramid_layer_vars(3, 2)) == 18
    assert len(pyramid_layer_vars(3, 3)) == 60


def test_jacobian_matches_step0_at_n2():
    F, _ = pyramid_potential(2)
    jac = jacobian_ideal(F)
    assert len(jac) == 18
    assert all(g.total_degree() == 2 for g in jac)
    pres = step0(LAM_121)
    assert tuple(F.ring.names) == tuple(pres.ring.names)
    assert ideal_equal(Ideal(F.ring, jac), Ideal(pres.ring, pres.equations))


def test_singular_census_colength_5():
    from hilb.partitions import canonicalize_S3, enumerate_partitions

    singular = set()
    for n in range(1, 6):
        for lam in enumerate_partitions(3, n):
            if extra_dimension(lam) > 0:
                singular.add(canonicalize_S3(lam)[0].cells)
    assert singular == {
        canonicalize_S3(LAM_121)[0].cells,
        canonicalize_S3(LAM_131)[0].cells,
    }
