from dataclasses import replace
from fractions import Fraction as Q

import pytest

from cara import (
    Family, InputError, VPolytope, family_caratheodory_number, hull_membership,
    kappa_rewrite, lift, sarkaria_equiv_check, simplex_vertices, tverberg_partition,
    verify_certificate,
)
from cara.generators import singleton_family, square_edges
from cara.tasks import sarkaria_sweep
from cara.tverberg import (
    KappaViolation, TverbergCertificate, parts_intersect, partition_of_representatives,
    recheck_coefficients,
)
from oracles import hulls_meet_lp, two_partitions_with_common_point


def _members(F):
    return [C.vertices for C in F.members]


@pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
def test_frame_is_regular_and_centered(r):
    fr = simplex_vertices(r)
    g = fr.gram()
    assert len({g[i][i] for i in range(r)}) == 1
    assert len({g[i][j] for i in range(r) for j in range(r) if i != j}) == 1
    assert all(sum(v[c] for v in fr.vertices) == 0 for c in range(fr.ambient_dim))
    assert fr.dim == r - 1


def test_frame_small_cases():
    assert simplex_vertices(2).vertices == ((1,), (-1,))
    with pytest.raises(InputError):
        simplex_vertices(1)


def test_lift_of_a_point():
    F = Family((VPolytope(((5,),)),), 1)
    L = lift(F, 2)
    assert [x for _, _, x in L.colors[0]] == [(5, 1), (-5, -1)]


def test_lift_of_a_segment_contains_origin():
    F = Family((VPolytope(((1, 2), (3, -1))),), 2)
    L = lift(F, 3)
    pts = [x for _, _, x in L.colors[0]]
    assert hull_membership(tuple(0 for _ in pts[0]), pts)


def test_partition_of_representatives():
    assert partition_of_representatives([0, 0], 2) == ((0, 1), ())
    assert partition_of_representatives([0, 1, 2], 3) == ((0,), (1,), (2,))
    with pytest.raises(InputError):
        partition_of_representatives([0, 3], 3)


def test_sarkaria_examples():
    F = Family((VPolytope(((0,),)), VPolytope(((0,),))), 1)
    assert sarkaria_equiv_check(lift(F, 2), [(0, (0,)), (1, (0,))]) == (True, True)
    F = Family((VPolytope(((1,),)), VPolytope(((2,),))), 1)
    assert sarkaria_equiv_check(lift(F, 2), [(0, (1,)), (1, (2,))]) == (False, False)


def test_sarkaria_sweep_singletons():
    cases, same = sarkaria_sweep(singleton_family(1, 3, seed=4, lo=-3, hi=3), 2)
    assert cases == 8 and same == 8


def test_parts_intersect_matches_lp():
    A = [(0, 0), (4, 0), (0, 4)]
    for B in ([(1, 1), (5, 5)], [(5, 5), (6, 0)], [(3, 1), (9, 9)]):
        assert parts_intersect([A, B])[0] == hulls_meet_lp(A, B)
    assert parts_intersect([A, []]) == (False, None)


def test_rewrite_vertex():
    rw = kappa_rewrite((1, 1), {0: [(0, 0), (2, 0)], 3: [(1, 0), (1, 1)]}, 1)
    assert rw.members == (3,) and rw.combination.weights == (1,)
    assert rw.vertex_weights[0].weights == (1,)


def test_rewrite_square_center():
    F = square_edges()
    sets = dict(enumerate(_members(F)))
    rw = kappa_rewrite((Q(1, 2), Q(1, 2)), sets, 2)
    assert len(rw.members) == 2
    assert rw.combination.evaluate(rw.points) == (Q(1, 2), Q(1, 2))
    for i, c, vw in zip(rw.members, rw.points, rw.vertex_weights):
        assert vw.evaluate(sets[i]) == c


def test_rewrite_violation_from_kappa_witness():
    F = square_edges()
    b = family_caratheodory_number(F)
    sets = {i: F.members[i].vertices for i in b.witness_subfamily}
    with pytest.raises(KappaViolation):
        kappa_rewrite(b.witness_point, sets, b.lower - 1)


def test_seven_points():
    F = singleton_family(2, 7, seed=1)
    cert = tverberg_partition(F, 2, 3)
    assert verify_certificate(F, cert) and recheck_coefficients(F, cert)
    P = tuple(i for i in cert.partition[0])
    found = two_partitions_with_common_point(_members(F))
    Q_ = tuple(cert.partition[1])
    assert P in found or Q_ in found


def test_common_point_family():
    p = (Q(1), Q(1))
    F = Family(tuple(VPolytope((p, (i, -i))) for i in range(1, 6)), 2)
    cert = tverberg_partition(F, 2, 2)
    assert verify_certificate(F, cert)
    # the shared point is a valid witness too
    assert verify_certificate(F, replace(cert, witness=p))


def test_square_edges_with_center():
    F = square_edges(center=True)
    cert = tverberg_partition(F, 2, "auto")
    assert cert.kappa == 2 and cert.kappa_status == "exact"
    assert verify_certificate(F, cert) and recheck_coefficients(F, cert)
    assert two_partitions_with_common_point(_members(F))


def test_three_parts():
    F = singleton_family(2, 10, seed=3)
    cert = tverberg_partition(F, 3, 3)
    assert len(cert.partition) == 3 and verify_certificate(F, cert)


def test_too_small_family():
    with pytest.raises(InputError):
        tverberg_partition(singleton_family(2, 6, seed=0), 2, 3)


def test_tampered_witness():
    F = singleton_family(2, 7, seed=1)
    cert = tverberg_partition(F, 2, 3)
    bad = replace(cert, witness=(cert.witness[0] + 100, cert.witness[1]))
    res = verify_certificate(F, bad)
    assert not res and res.failing_part is not None
    assert not recheck_coefficients(F, bad)


def test_tampered_partition():
    F = singleton_family(2, 7, seed=1)
    cert = tverberg_partition(F, 2, 3)
    P0, P1 = cert.partition
    moved = (P0[1:], tuple(sorted(P1 + P0[:1])))
    bad = replace(cert, partition=moved)
    direct = all(hull_membership(cert.witness, F.union_vertices(P)) for P in moved if P)
    assert bool(verify_certificate(F, bad)) == direct


def test_overlapping_parts_rejected():
    F = singleton_family(2, 7, seed=1)
    cert = tverberg_partition(F, 2, 3)
    bad = replace(cert, partition=(cert.partition[0], cert.partition[1] + cert.partition[0][:1]))
    assert not verify_certificate(F, bad)


def test_certificate_json_roundtrip():
    F = singleton_family(2, 7, seed=2)
    cert = tverberg_partition(F, 2, 3)
    again = TverbergCertificate.from_json(cert.to_json())
    assert again.partition == cert.partition and again.witness == cert.witness
    assert verify_certificate(F, again)
    with pytest.raises(InputError):
        TverbergCertificate.from_json({"partition": []})
