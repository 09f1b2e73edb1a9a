import itertools
import math

import numpy as np
import pytest

from primzono.generators import GeneratorSet, enumerate_generators, generator_count, sum_of_generators
from primzono.numeric import INF, ResourceLimitError, signed_permutations
from primzono.zonotope import (arrangement_regions, brute_force_vertices, canonical_vertices,
                               count_vertices, enumerate_vertices, grid_size, skeleton_diameter,
                               skeleton_neighbors, summarize, verify_refinement, vertex_count)

from oracles import polygon_zonotope

OCTAGON = {(-3, -1), (-3, 1), (-1, 3), (1, 3), (3, 1), (3, -1), (1, -3), (-1, -3)}
DECAGON = {(-5, -5), (-5, -3), (-3, -5), (-3, 1), (-1, 3), (1, -3), (3, -1), (3, 5), (5, 3), (5, 5)}


def test_octagon_and_decagon():
    V = enumerate_vertices(enumerate_generators(2, 2, 1))
    assert V.z_set() == OCTAGON and len(V) == 8
    V = enumerate_vertices(enumerate_generators(2, 2, INF, True))
    assert V.z_set() == DECAGON and len(V) == 10


def test_polygons_against_monotone_chain():
    for q in (1, 2, 3, INF):
        for p in (1, 2, 3, 4, 5, 6):
            for pos in (False, True):
                G = enumerate_generators(2, p, q, pos)
                want = polygon_zonotope(G.as_tuples())
                assert enumerate_vertices(G).z_set() == want


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_cube(d):
    V = enumerate_vertices(enumerate_generators(d, 1, 1))
    assert V.z_set() == set(itertools.product((-1, 1), repeat=d))
    assert skeleton_diameter(vertices=V) == d


def test_vertex_set_is_sorted_and_readonly():
    V = enumerate_vertices(enumerate_generators(3, 2, 1))
    Z = [tuple(z) for z in V.z_points.tolist()]
    assert Z == sorted(Z)
    assert not V.signs.flags.writeable
    rec = V[0]
    assert rec.z_point == Z[0]
    assert len(V[2:5]) == 3


def test_h_points_and_translation():
    G = enumerate_generators(2, 1, INF)
    V = enumerate_vertices(G)
    # H-form: sum of generators with sign +1
    for r in V:
        h = tuple(sum(g[i] for g, s in zip(G, r.signs) if s > 0) for i in range(2))
        assert h == r.h_point
    assert grid_size(G) == (3, (0, 1))
    T = V.translated_h_points
    assert T.min() == 0 and T.max() == 3


@pytest.mark.parametrize("d,p,q", [(2, 2, 1), (3, 2, 1), (3, 1, INF), (3, 2, 2), (4, 1, INF)])
def test_witness_validity(d, p, q):
    G = enumerate_generators(d, p, q)
    V = enumerate_vertices(G)
    prod = (V.witnesses @ G.vectors.T) * V.signs
    assert prod.min() >= 1
    # distinct vertices, and each witness picks out its own vertex uniquely
    vals = V.witnesses @ V.z_points.T
    assert (vals.argmax(axis=1) == np.arange(len(V))).all()
    assert ((vals == vals.max(axis=1, keepdims=True)).sum(axis=1) == 1).all()


def test_arrangement_regions_direct():
    S, W = arrangement_regions(np.array([[1, 0], [0, 1]]))
    assert len(S) == 4
    assert (np.sign(W @ np.array([[1, 0], [0, 1]]).T) == S).all()
    S, W = arrangement_regions(np.array([[1, 0, 0]]))
    assert len(S) == 2


def test_reference_summaries():
    s = summarize(enumerate_generators(3, 2, 1))
    assert (s.vertex_count, s.diameter, s.grid_k) == (48, 9, 5)
    s = summarize(enumerate_generators(3, 1, INF))
    assert (s.vertex_count, s.diameter, s.grid_k) == (96, 13, 9)
    assert grid_size(enumerate_generators(2, 2, 1))[0] == 3
    assert grid_size(enumerate_generators(2, 2, INF, True))[0] == 5


def test_diameter_skipped_above_cap():
    s = summarize(enumerate_generators(3, 2, 1), diameter_cap=10)
    assert s.diameter is None and s.vertex_count == 48


@pytest.mark.parametrize("p,m", list(enumerate([8, 16, 32, 48, 80, 96], start=1)))
def test_m2p(p, m):
    assert vertex_count(2, p) == m == 8 * sum(_phi(j) for j in range(1, p + 1))


def _phi(j):
    return sum(1 for i in range(1, j + 1) if math.gcd(i, j) == 1)


def test_m31_m41():
    assert vertex_count(3, 1) == 96
    assert vertex_count(4, 1) == 5376


@pytest.mark.long
def test_m51():
    assert vertex_count(5, 1) == 1_981_440


def test_vertex_cap():
    with pytest.raises(ResourceLimitError):
        enumerate_vertices(enumerate_generators(4, 1, INF), cap=1000)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_type_b_permutahedron(d):
    V = enumerate_vertices(enumerate_generators(d, 2, 1))
    assert len(V) == 2**d * math.factorial(d)
    sigma = tuple(range(2 * d - 1, 0, -2))
    assert canonical_vertices(vertices=V) == [sigma]
    orbit = {g.apply(sigma) for g in signed_permutations(d)}
    assert orbit == V.z_set()


@pytest.mark.parametrize("d,p,q", [(2, 3, 1), (3, 2, 1), (3, 2, 2), (3, 1, INF), (3, 2, INF)])
def test_signed_permutation_symmetry(d, p, q):
    Z = enumerate_vertices(enumerate_generators(d, p, q)).z_set()
    for g in signed_permutations(d):
        assert {g.apply(z) for z in Z} == Z


@pytest.mark.parametrize("d,p,q", [(2, 3, INF), (3, 2, 1), (3, 2, INF), (3, 3, 2)])
def test_positive_family_symmetry(d, p, q):
    Z = enumerate_vertices(enumerate_generators(d, p, q, True)).z_set()
    assert {tuple(-x for x in z) for z in Z} == Z
    for perm in itertools.permutations(range(d)):
        assert {tuple(z[i] for i in perm) for z in Z} == Z


@pytest.mark.parametrize("d,p,q,pos", [(2, 2, 1, False), (3, 2, INF, True), (3, 3, 2, False), (4, 1, INF, True)])
def test_extremal_sums(d, p, q, pos):
    G = enumerate_generators(d, p, q, pos)
    V = enumerate_vertices(G)
    s = sum_of_generators(G)
    assert s in V.z_set() and tuple(-x for x in s) in V.z_set()
    assert (0,) * d in {tuple(h) for h in V.h_points.tolist()}


@pytest.mark.parametrize("d", [2, 3, 4])
def test_positive_infinity_lower_bound(d):
    assert len(enumerate_vertices(enumerate_generators(d, 1, INF, True))) >= 2 + 2 * math.factorial(d)


def test_positive_infinity_d1_is_a_segment():
    # the 2 + 2 d! bound needs d >= 2; in d = 1 the zonotope is a segment
    assert len(enumerate_vertices(enumerate_generators(1, 1, INF, True))) == 2


def test_skeleton_edges_are_hamming_one():
    V = enumerate_vertices(enumerate_generators(3, 2, 1))
    nbr = skeleton_neighbors(V)
    for i, row in enumerate(nbr):
        for j, k in enumerate(row):
            if k >= 0:
                diff = np.flatnonzero(V.signs[i] != V.signs[k])
                assert diff.tolist() == [j]
    # every vertex has at least d neighbours in a 3-polytope
    assert ((nbr >= 0).sum(axis=1) >= 3).all()


def test_brute_force_matches_on_small_family():
    G = enumerate_generators(3, 2, 1)
    assert set(brute_force_vertices(G)) == enumerate_vertices(G).z_set()
    with pytest.raises(ValueError):
        brute_force_vertices(enumerate_generators(3, 2, INF))


def test_degenerate_generator_sets():
    # generators spanning a plane inside R^3
    G = GeneratorSet.from_vectors([(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    V = enumerate_vertices(G)
    assert len(V) == 6
    assert V.z_set() == set(brute_force_vertices(G))
    assert skeleton_diameter(vertices=V) == 3


def test_verify_refinement():
    V = enumerate_vertices(enumerate_generators(2, 1, INF))
    assert verify_refinement(V, V.z_points)
    assert verify_refinement(V, [(0, 0)])
    # a polygon with an edge normal equal to one of the witnesses breaks it
    h = V.witnesses[0]
    edge = [(0, 0), (-int(h[1]), int(h[0]))]
    assert not verify_refinement(V, edge)
    with pytest.raises(ValueError):
        verify_refinement(V, [])


def test_count_vertices_consistent():
    G = enumerate_generators(3, 3, 1)
    assert count_vertices(G) == len(enumerate_vertices(G)) == 336
    assert generator_count(3, 3, 1) == 25
