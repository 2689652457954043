#include <doctest.h>

#include <algorithm>
#include <random>

#include "ffh/isogeny.hpp"
#include "helpers.hpp"

using namespace ffh;
using testutil::P;

namespace {

QuadElement el(QuadFieldPtr const & K, std::string const & x, std::string const & y = "0")
{
    return QuadElement(K, P(K->base(), x), P(K->base(), y));
}

Lattice maximal(QuadFieldPtr const & K)
{
    return Order::maximal(K).lattice();
}

/* A random sublattice of Lb reached by prime-index steps through the given primes. */
Lattice descend(Lattice L, std::vector<Poly> const & primes, std::mt19937_64 & rng)
{
    for (auto const & q0 : primes) {
        auto rep = sublattices_prime(L, q0);
        L = rep.entries[rng() % rep.entries.size()].first;
    }
    return L;
}

Poly random_prime(FiniteField const & f, int max_deg, std::mt19937_64 & rng)
{
    int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_deg));
    auto ps = monic_irreducibles(f, d);
    return ps[rng() % ps.size()];
}

} // namespace

TEST_SUITE("isogeny") {

TEST_CASE("sublattices_prime examples")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    auto T = P(f, "T");
    auto rep = sublattices_prime(Order(K, T).lattice(), T);
    REQUIRE(rep.entries.size() == 4);
    CHECK(rep.classified);
    CHECK(rep.count_down == 1);
    CHECK(rep.count_up == 3);
    auto TOK = lattice_scale(maximal(K), el(K, "T"));
    CHECK(std::count_if(rep.entries.begin(), rep.entries.end(),
                        [&](auto const & e) { return e.first == TOK && e.second.is_one(); }) == 1);
    for (auto const & [La, c] : rep.entries)
        if (!c.is_one())
            CHECK(c == P(f, "T^2"));

    rep = sublattices_prime(maximal(K), T);
    CHECK(rep.entries.size() == 4);
    CHECK_FALSE(rep.classified);
    for (auto const & [La, c] : rep.entries) {
        CHECK((c.is_one() || c == T));
        auto s = quotient_shape(La, maximal(K));
        CHECK(s.d1.is_one());
        CHECK(s.d2 == T);
    }
    /* T splits: the two primes above T have conductor 1 */
    CHECK(rep.count_up == 2);
    CHECK_THROWS_AS(sublattices_prime(maximal(K), P(f, "T^2")), Error);
}

TEST_CASE("prime-index sublattices around a conductor")
{
    std::mt19937_64 rng(5252);
    for (auto K : {testutil::running_field(), testutil::field_of(5, "T^3+T")}) {
        auto const & f = K->base();
        int done = 0;
        while (done < 20) {
            auto L = testutil::random_lattice(K, 2, rng, rng() % 2 == 0);
            Poly c = conductor(L);
            if (c.is_one()) {
                /* push the conductor up with one prime-index step */
                auto q0 = random_prime(f, 2, rng);
                L = descend(L, {q0}, rng);
                c = conductor(L);
                if (c.is_one())
                    continue;
            }
            auto primes = prime_factors(c);
            auto q0 = primes[rng() % primes.size()];
            auto rep = sublattices_prime(L, q0);
            CHECK(rep.entries.size() == q0.norm() + 1);
            CHECK(rep.count_down == 1);
            CHECK(rep.count_up == q0.norm());
            Poly down = exact_div(c, q0);
            auto special = lattice_scale(order_extend(L, down), QuadElement::from_poly(K, q0));
            for (auto const & [La, cond] : rep.entries) {
                CHECK((cond == down || cond == c * q0));
                CHECK((cond == down) == (La == special));
            }
            ++done;
        }
    }
}

TEST_CASE("unique stable superlattice")
{
    std::mt19937_64 rng(77);
    auto K = testutil::running_field();
    int done = 0;
    while (done < 50) {
        auto X = testutil::random_lattice(K, 2, rng, false);
        Poly c = conductor(X);
        if (c.is_one())
            continue;
        auto q0 = prime_factors(c).front();
        QuadElement qinv = QuadElement::from_poly(K, q0).inverse();
        /* superlattices of index q0 are q0^{-1} times sublattices of index q0 */
        std::vector<Lattice> stable;
        for (auto const & [La, cond] : sublattices_prime(X, q0).entries) {
            auto M = lattice_scale(La, qinv);
            CHECK(quotient_shape(X, M).index_ideal == q0);
            if (divides(conductor(M), exact_div(c, q0)))
                stable.push_back(M);
        }
        REQUIRE(stable.size() == 1);
        CHECK(stable[0] == order_extend(X, exact_div(c, q0)));
        ++done;
    }
}

TEST_CASE("canonical_factorization examples")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    auto OK = maximal(K);

    auto F = canonical_factorization(OK, OK);
    CHECK(F.d.is_one());
    CHECK(F.c.is_one());
    CHECK(F.d1.is_one());
    CHECK(F.d2.is_one());
    CHECK(F.dprime.is_one());
    CHECK(F.Dideal == OK);

    auto Pn = lat_from_generators(K, {el(K, "T+1"), el(K, "-1", "1")});
    auto Pinv = ideal_inverse(Pn, Order::maximal(K));
    F = canonical_factorization(OK, Pinv);
    CHECK(F.c.is_one());
    CHECK(F.d1.is_one());
    CHECK(F.d2.is_one());
    CHECK(F.dprime == P(f, "T+1"));
    CHECK(F.Dideal == Pn);

    auto TOK = lattice_scale(OK, el(K, "T"));
    auto O1 = Order(K, P(f, "T")).lattice();
    F = canonical_factorization(TOK, O1);
    CHECK(F.d == P(f, "T"));
    CHECK(F.c.is_one());
    CHECK(F.d1.is_one());
    CHECK(F.d2 == P(f, "T"));
    CHECK(F.dprime.is_one());
    CHECK(F.Dideal == OK);

    F = canonical_factorization(O1, OK);
    CHECK(F.d == P(f, "T"));
    CHECK(F.c.is_one());
    CHECK(F.d1 == P(f, "T"));
    CHECK(F.d2.is_one());
    CHECK(F.dprime.is_one());

    CHECK_THROWS_AS(canonical_factorization(OK, O1), Error);
    CHECK_THROWS_AS(canonical_factorization(TOK, OK), Error);
}

TEST_CASE("canonical_factorization on random cyclic inclusions")
{
    std::mt19937_64 rng(51);
    auto K = testutil::running_field();
    auto const & f = K->base();
    int done = 0, tries = 0;
    while (done < 50) {
        REQUIRE(++tries < 2000);
        auto Lb = testutil::random_lattice(K, 1, rng, rng() % 2 == 0);
        std::vector<Poly> primes;
        int steps = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < steps; ++i)
            primes.push_back(random_prime(f, 2, rng));
        auto La = descend(Lb, primes, rng);
        if (!quotient_shape(La, Lb).cyclic)
            continue;
        auto F = canonical_factorization(La, Lb);
        CHECK(F.d == F.d1 * F.d2 * F.dprime);
        CHECK(gcd(F.c, F.dprime).is_one());
        CHECK(F.c1 == F.c * F.d1);
        CHECK(F.c2 == F.c * F.d2);
        auto s = quotient_shape(F.Dideal, maximal(K));
        CHECK(s.cyclic);
        CHECK(s.index_ideal == F.dprime);
        Order Oc(K, F.c);
        CHECK(lattice_product(ideal_inverse(lattice_intersect(F.Dideal, Oc.lattice()), Oc), F.mid1) == F.mid2);
        ++done;
    }
}

TEST_CASE("cyclic_isogenies_between")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    auto OK = maximal(K);
    auto w1 = cyclic_isogenies_between(OK, OK, Poly::one(f));
    REQUIRE(w1.size() == 1);
    CHECK(w1[0].norm_degree() == 0);
    /* the primes above T are not principal when h = 7 */
    CHECK(cyclic_isogenies_between(OK, OK, P(f, "T")).empty());

    auto K0 = testutil::field_of(3, "T");
    auto O0 = maximal(K0);
    auto w = cyclic_isogenies_between(O0, O0, P(K0->base(), "T+2"));
    CHECK(w.size() == 2);
    for (auto const & lam : w) {
        CHECK(lam.norm().num().monic() == P(K0->base(), "T+2"));
        auto s = quotient_shape(lattice_scale(O0, lam), O0);
        CHECK(s.cyclic);
    }
    /* an inclusion of index d is found with lambda = 1 */
    auto N = lat_from_generators(K, {el(K, "T+1"), el(K, "-1", "1")});
    auto Ninv = ideal_inverse(N, Order::maximal(K));
    auto wn = cyclic_isogenies_between(Ninv, OK, P(f, "T+1"));
    CHECK(std::find(wn.begin(), wn.end(), QuadElement::one(K)) != wn.end());
    Budget tiny{2, 10};
    CHECK_THROWS_AS(cyclic_isogenies_between(OK, OK, P(f, "T^4"), tiny), BudgetExceeded);
}

TEST_CASE("make_moduli_point")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    auto OK = maximal(K);
    auto N = lat_from_generators(K, {el(K, "T+1"), el(K, "-1", "1")});
    auto Ninv = ideal_inverse(N, Order::maximal(K));
    auto x = make_moduli_point(OK, Ninv, P(f, "T+1"));
    CHECK(x.level == P(f, "T+1"));
    CHECK(x == scale_point(x, el(K, "T^2+1", "T")));
    auto y = make_moduli_point(OK, OK, Poly::one(f));
    CHECK(y.level.is_one());
    auto pOK = lattice_scale(OK, el(K, "T"));
    try {
        make_moduli_point(pOK, OK, P(f, "T^2"));
        FAIL("expected NotCyclic");
    } catch (Error const & e) {
        CHECK(e.kind() == ErrorKind::NotCyclic);
    }
    try {
        make_moduli_point(OK, Ninv, P(f, "T"));
        FAIL("expected LevelMismatch");
    } catch (Error const & e) {
        CHECK(e.kind() == ErrorKind::LevelMismatch);
    }
}

TEST_CASE("degeneracy maps")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    std::mt19937_64 rng(100);
    Poly m = P(f, "T"), n = P(f, "T+1");
    int done = 0;
    while (done < 100) {
        auto Lp = testutil::random_lattice(K, 1, rng, rng() % 2 == 0);
        auto L = descend(Lp, {m, n}, rng);
        if (!quotient_shape(L, Lp).cyclic)
            continue;
        auto w = make_moduli_point(L, Lp, m * n);
        auto lam = testutil::random_element(K, 2, rng, true);
        auto w2 = scale_point(w, lam);
        CHECK(w2 == w);
        /* compute on the scaled raw lattices directly */
        ModuliPoint raw{w.level, lattice_scale(L, lam), lattice_scale(Lp, lam)};
        for (auto const & d : monic_divisors(m))
            CHECK(degeneracy(raw, d, m, n) == degeneracy(w, d, m, n));
        auto d1 = degeneracy(w, Poly::one(f), m, n);
        CHECK(d1 == make_moduli_point(L, lattice_intersect(Lp, lattice_scale(L, QuadElement::from_poly(K, n).inverse())), n));
        auto dm = degeneracy(w, m, m, n);
        CHECK(dm.level == n);
        auto full = full_degeneracy(w, m, n);
        REQUIRE(full.size() == 2);
        CHECK(full[0] == d1);
        CHECK(full[1] == dm);

        /* hecke consistency */
        auto h = hecke_member(d1, dm, m);
        REQUIRE(h);
        CHECK(degeneracy(*h, Poly::one(f), m, n) == d1);
        CHECK(degeneracy(*h, m, m, n) == dm);
        ++done;
    }
    auto OK = maximal(K);
    auto pt = make_moduli_point(OK, OK, Poly::one(f));
    CHECK_THROWS_AS(degeneracy(pt, P(f, "T"), Poly::one(f), Poly::one(f)), Error);
    auto lvl = make_moduli_point(lattice_scale(OK, el(K, "T")), Order(K, P(f, "T")).lattice(), P(f, "T"));
    CHECK_THROWS_AS(degeneracy(lvl, Poly::one(f), P(f, "T"), P(f, "T")), Error);
    CHECK(degeneracy(lvl, P(f, "T"), P(f, "T"), Poly::one(f)).level.is_one());
}

TEST_CASE("hecke_member")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    auto OK = maximal(K);
    auto one = Poly::one(f);
    auto x = make_moduli_point(OK, OK, one);
    auto h = hecke_member(x, x, one);
    REQUIRE(h);
    CHECK(*h == x);
    auto y = make_moduli_point(Order(K, P(f, "T")).lattice(), Order(K, P(f, "T")).lattice(), one);
    CHECK_FALSE(hecke_member(x, y, one));
    /* conductors 1 and T+2 are linked only through degree T+2 */
    auto z = make_moduli_point(Order(K, P(f, "T+2")).lattice(), Order(K, P(f, "T+2")).lattice(), one);
    CHECK_FALSE(hecke_member(x, z, P(f, "T^2+1")));
    CHECK(hecke_member(x, z, P(f, "T+2")));
    auto N = lat_from_generators(K, {el(K, "T+1"), el(K, "-1", "1")});
    auto xn = make_moduli_point(OK, ideal_inverse(N, Order::maximal(K)), P(f, "T+1"));
    CHECK_THROWS_AS(hecke_member(xn, xn, P(f, "T+1")), Error);
}

} // TEST_SUITE
