from itertools import product

from hypothesis import given, settings, strategies as st

from inflecta.curve import embedding_from_key
from inflecta.fixtures import KEY_I4, KEY_OHNO, chain_key
from inflecta.mu import ReducedFunction, compute_mu, compute_mu_bruteforce, cyclic_sign_changes, sign_scan
from inflecta.polygons import admissible_polygons


def mu_of(key):
    e = embedding_from_key(key)
    return compute_mu(admissible_polygons(e), e.m)


def naive_mu(key):
    """Independent oracle: every {-1,0,+1} value on 2 slots per arc."""
    e = embedding_from_key(key)
    polys = admissible_polygons(e)
    best = None
    for vals in product((-1, 0, 1), repeat=2 * e.n_arcs):
        ok = all(
            any(s in vals[2 * a:2 * a + 2] for a, s in p.arc_signs().items())
            for p in polys
        )
        if ok:
            c = cyclic_sign_changes(vals)
            best = c if best is None else min(best, c)
    return best


def test_cyclic_sign_changes():
    assert cyclic_sign_changes([]) == 0
    assert cyclic_sign_changes([1, 0, 1]) == 0
    assert cyclic_sign_changes([1, -1]) == 2
    assert cyclic_sign_changes([1, 0, -1, 0, 1, -1]) == 4


def test_known_values():
    assert mu_of("/|0L").mu == 0
    assert mu_of("1 1/-|0R").mu == 2  # lemniscate
    assert mu_of("1 1/-|0L").mu == 0  # curl
    assert mu_of(KEY_I4).mu == 4
    assert mu_of(KEY_OHNO).mu == 4
    for n in range(1, 6):
        assert mu_of(chain_key(n)).mu == 2


def test_naive_oracle_small(census3):
    for e in census3.entries:
        if e.m <= 2:
            assert naive_mu(e.planar_key) == e.mu, e.planar_key


def test_bruteforce_matches_m2(census3):
    for e in census3.entries:
        if e.m <= 2:
            emb = embedding_from_key(e.planar_key)
            polys = admissible_polygons(emb)
            assert compute_mu_bruteforce(polys, emb.m).mu == compute_mu(polys, emb.m).mu


def test_witness_is_admissible_and_optimal(census3):
    for e in census3.entries:
        emb = embedding_from_key(e.planar_key)
        polys = admissible_polygons(emb)
        res = compute_mu(polys, emb.m)
        assert res.witness.is_admissible(polys)
        assert res.witness.sign_changes() == res.mu
        assert res.exhaustive


def test_parity_bound_and_sign_proposition(census3):
    for e in census3.entries:
        assert e.mu % 2 == 0 and e.mu <= 2 * e.m
        assert (e.mu > 0) == (e.has_positive and e.has_negative)


def test_to_json():
    data = mu_of("1 1/-|0R").to_json()
    assert data["mu"] == 2 and len(data["witness"]) == 2
    assert data["certificate"]["exhaustive"]


M3_KEYS = ["1 1 2 3 3 2/--+|0R", "1 1 2 2 3 3/---|0R", "1 2 3 1 2 3/-+-|0R", KEY_I4, KEY_OHNO, "1 1 2 2/-+|0R"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(M3_KEYS), st.data())
def test_monotone_under_polygon_deletion(key, data):
    emb = embedding_from_key(key)
    polys = admissible_polygons(emb)
    keep = data.draw(st.lists(st.booleans(), min_size=len(polys), max_size=len(polys)))
    subset = [p for p, k in zip(polys, keep) if k]
    sub = compute_mu(subset, emb.m).mu
    assert sub <= compute_mu(polys, emb.m).mu
    assert sub % 2 == 0
    assert (sub > 0) == sign_scan(subset).mu_positive


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["", "+", "-", "+-", "-+"]), min_size=1, max_size=8))
def test_reduced_function_changes_even(patterns):
    assert ReducedFunction(tuple(patterns)).sign_changes() % 2 == 0
