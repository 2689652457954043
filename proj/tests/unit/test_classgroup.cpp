#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ffh/abgroup.hpp"
#include "ffh/classgroup.hpp"
#include "helpers.hpp"

using namespace ffh;
using testutil::P;

namespace {

/* Brute-force |(O_K/m)^*| via the norm: a + b w is a unit mod m iff its norm
 * is a unit mod m. */
std::uint64_t units_by_norm(QuadFieldPtr const & K, Poly const & m)
{
    auto const & f = K->base();
    std::uint64_t n = 0;
    for (auto const & a : polys_below_degree(f, m.degree()))
        for (auto const & b : polys_below_degree(f, m.degree())) {
            Poly nm = (a * a - K->D() * b * b) % m;
            if (!nm.is_zero() && gcd(nm, m).is_one())
                ++n;
        }
    return n;
}

} // namespace

TEST_SUITE("classgroup") {

TEST_CASE("smith normal form")
{
    auto s = smith_normal_form({{2, 0}, {0, 3}});
    CHECK(s.diag == std::vector<std::int64_t>{1, 6});
    s = smith_normal_form({{4, 0, 0}, {2, 6, 0}, {0, 0, 5}});
    std::int64_t prod = 1;
    for (auto d : s.diag)
        prod *= d;
    CHECK(prod == 120);
    for (std::size_t i = 1; i < s.diag.size(); ++i)
        CHECK(s.diag[i] % s.diag[i - 1] == 0);
    s = smith_normal_form({{0, 0}, {0, 0}});
    CHECK(s.diag == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("AbGroup arithmetic")
{
    AbGroup g({1, 2, 6});
    CHECK(g.invariant_factors() == std::vector<std::int64_t>{2, 6});
    CHECK(g.order() == 12);
    for (std::size_t i = 0; i < g.order(); ++i)
        CHECK(g.index(g.element(i)) == i);
    auto a = g.element(7);
    CHECK(g.is_zero(g.add(a, g.neg(a))));
    CHECK(g.is_zero(g.mul(a, g.element_order(a))));
    CHECK(g.element_order(g.basis(1)) == 6);
    CHECK_THROWS_AS(AbGroup({2, 3}), Error);
    CHECK(prime_to_part({3, 6, 18}, 3) == std::vector<std::int64_t>{2, 2});
    CHECK(subgroup_elements(g, {g.basis(1)}).size() == 6);
    CHECK(AbGroup().order() == 1);
}

TEST_CASE("closure of a cyclic group given by redundant generators")
{
    /* Z/12 under addition, offered as 4, 6, 3 */
    auto mul = [](int const & a, int const & b) { return (a + b) % 12; };
    GroupClosure<int> cl(0, mul, 1000);
    cl.add_generator(4);
    cl.add_generator(6);
    cl.add_generator(3);
    CHECK_FALSE(cl.add_generator(9));
    auto pr = cl.finish();
    CHECK(pr.group.invariant_factors() == std::vector<std::int64_t>{12});
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) {
            int s = mul(pr.reps[i], pr.reps[j]);
            CHECK(pr.index.at(s) == pr.group.index(pr.group.add(pr.group.element(i), pr.group.element(j))));
        }
    /* Z/2 x Z/2 x Z/3 */
    auto mul2 = [](std::pair<int, int> const & a, std::pair<int, int> const & b) {
        return std::pair<int, int>{a.first ^ b.first, (a.second + b.second) % 3};
    };
    GroupClosure<std::pair<int, int>> c2({0, 0}, mul2, 1000);
    c2.add_generator({1, 1});
    c2.add_generator({2, 0});
    CHECK(c2.finish().group.invariant_factors() == std::vector<std::int64_t>{2, 6});
}

TEST_CASE("class_number_zeta")
{
    CHECK(class_number_zeta(*testutil::running_field()) == 7);
    CHECK(class_number_zeta(*testutil::field_of(3, "T")) == 1);
    CHECK(class_number_zeta(*testutil::field_of(5, "T")) == 1);
    auto Ki = testutil::field_of(3, "2*T^2+2");
    CHECK_THROWS_AS(class_number_zeta(*Ki), Error);
    CHECK(pic_card_maximal(*Ki) == 2);
    /* functional equation */
    auto K = testutil::field_of(5, "T^5+2*T+3");
    auto a = l_polynomial(*K);
    REQUIRE(a.size() == 5);
    CHECK(a[0] == 1);
    CHECK(a[4] == 25);
    CHECK(a[3] == 5 * a[1]);
}

TEST_CASE("unit_residue_card")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    auto OK = Order::maximal(K);
    CHECK(unit_residue_card(OK, P(f, "T")) == 4);
    CHECK(unit_residue_card(Order(K, P(f, "T^2")), P(f, "T^2")) == 6);
    CHECK(unit_residue_card(OK, P(f, "1")) == 1);
    for (auto const & m : {"T", "T^2", "T+1", "T^2+1", "T^3+2*T+1", "T^2+2*T", "T^2+2*T+2"}) {
        Poly mp = P(f, m);
        CHECK(unit_residue_card(OK, mp) == unit_residue_card_formula(*K, mp));
        CHECK(units_by_norm(K, mp) == unit_residue_card_formula(*K, mp));
    }
    Budget tiny{10, 10};
    CHECK_THROWS_AS(unit_residue_card(OK, P(f, "T^3"), tiny), BudgetExceeded);
}

TEST_CASE("pic_card_exact")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    CHECK(pic_card_exact(Order::maximal(K)) == 7);
    CHECK(pic_card_exact(Order(K, P(f, "T"))) == 14);
    CHECK(pic_card_exact(Order(K, P(f, "T^2"))) == 42);
    CHECK(pic_card_exact(Order(K, P(f, "T^3"))) == 126);
    CHECK(phi_A(P(f, "T^2")) == 6);
    CHECK(phi_A(P(f, "1")) == 1);
}

TEST_CASE("pic_group examples")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    auto G = pic_group(Order::maximal(K));
    CHECK(G.group().invariant_factors() == std::vector<std::int64_t>{7});
    auto G1 = pic_group(Order(K, P(f, "T")));
    CHECK(G1.size() == 14);
    auto G0 = pic_group(Order::maximal(testutil::field_of(3, "T")));
    CHECK(G0.size() == 1);
    Budget tight;
    tight.max_prime_degree = 0;
    CHECK_THROWS_AS(pic_group(Order::maximal(K), tight), BudgetExceeded);
}

TEST_CASE("pic_group is a homomorphic image of ideal multiplication")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    for (auto c : {"1", "T", "T^2", "T+2"}) {
        Order O(K, P(f, c));
        auto G = pic_group(O);
        CHECK(G.size() == pic_card_exact(O));
        /* representatives are proper ideals prime to the conductor in their class */
        for (std::size_t i = 0; i < G.size(); ++i) {
            auto const & r = G.rep(i);
            CHECK(conductor(r.ideal) == O.conductor());
            CHECK(gcd(ideal_norm(r.ideal, O).num(), O.conductor()).is_one());
            CHECK(G.index_of(r.ideal) == i);
        }
        std::vector<Lattice> ideals;
        for (int d = 1; d <= 2; ++d)
            for (auto const & ell : monic_irreducibles(f, d))
                if (!divides(ell, O.conductor()))
                    for (auto const & Pm : primes_above(K, ell))
                        ideals.push_back(lattice_intersect(Pm, O.lattice()));
        for (std::size_t i = 0; i < ideals.size(); i += 2)
            for (std::size_t j = 1; j < ideals.size(); j += 3) {
                auto lhs = G.class_of(lattice_product(ideals[i], ideals[j]));
                auto rhs = G.group().add(G.class_of(ideals[i]), G.class_of(ideals[j]));
                CHECK(lhs == rhs);
            }
        CHECK(G.group().is_zero(G.class_of(O.lattice())));
        auto lam = QuadElement(K, P(f, "T+2"), P(f, "1"));
        auto princ = lattice_product(O.lattice(), lattice_scale(O.lattice(), lam));
        CHECK(G.group().is_zero(G.class_of(princ)));
    }
}

TEST_CASE("class numbers agree across methods")
{
    struct Cfg {
        std::uint32_t q;
        char const * D;
        char const * c;
    };
    for (auto cfg : {Cfg{3, "T^3+2*T+1", "1"}, Cfg{3, "T^3+2*T+1", "T+1"}, Cfg{5, "T^3+T", "1"},
                     Cfg{5, "T^3+T", "T+2"}, Cfg{3, "T^5+2*T+1", "1"}, Cfg{3, "2*T^2+2", "1"},
                     Cfg{3, "2*T^2+2", "T"}}) {
        auto K = testutil::field_of(cfg.q, cfg.D);
        Order O(K, P(K->base(), cfg.c));
        auto G = pic_group(O);
        CHECK(G.size() == pic_card_exact(O));
        auto E = pic_group_exhaustive(O, K->genus() + O.conductor().degree() + 1);
        CHECK(E.size() == G.size());
        if (K->infinity_type() == InfinityType::Ramified && O.conductor().is_one())
            CHECK(static_cast<std::int64_t>(G.size()) == class_number_zeta(*K));
    }
}

TEST_CASE("hn_group")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    auto p = P(f, "T");
    auto h1 = hn_group(K, p, 1);
    CHECK(h1.order == 1);
    CHECK(h1.group.rank() == 0);
    auto h3 = hn_group(K, p, 3);
    CHECK(h3.order == 9);
    CHECK(h3.annihilator_exp <= 2);
    CHECK(h3.annihilator_exp <= h3.s_bound);
    auto h4 = hn_group(K, p, 4);
    CHECK(h4.order == 27);
    CHECK(h4.min_generators >= 2);
    CHECK(h4.gen_bound_num == 3);
    CHECK(h4.gen_bound_den == 2);
    for (int n = 1; n <= 5; ++n) {
        auto h = hn_group(K, p, n);
        CHECK(h.order == static_cast<std::uint64_t>(std::pow(3, n - 1)));
        CHECK(h.annihilator_exp <= h.s_bound);
        CHECK(h.min_generators * h.gen_bound_den >= h.gen_bound_num);
    }
    CHECK(hn_group(K, p, 0).order == 1);
    CHECK_THROWS_AS(hn_group(K, P(f, "T^2"), 2), Error);
    Budget tiny{10, 10};
    CHECK_THROWS_AS(hn_group(K, p, 4, tiny), BudgetExceeded);
}

TEST_CASE("tower_map")
{
    auto K = testutil::running_field();
    auto const & f = K->base();
    std::vector<PicGroup> pic;
    for (int n = 0; n <= 3; ++n)
        pic.push_back(pic_group(Order(K, pow(P(f, "T"), n))));
    auto t0 = tower_map(pic[1], pic[0]);
    CHECK(t0.surjective);
    CHECK(t0.kernel.size() == 2);
    for (int n = 1; n < 3; ++n) {
        auto t = tower_map(pic[n + 1], pic[n]);
        CHECK(t.surjective);
        CHECK(t.kernel.size() == 3);
        CHECK(t.kernel_is_p_group);
        /* the map agrees with extension of ideals on every class */
        for (std::size_t i = 0; i < pic[n + 1].size(); ++i) {
            auto x = pic[n + 1].group().element(i);
            auto img = pic[n].class_of(order_extend(pic[n + 1].rep(i).ideal, pic[n].order().conductor()));
            CHECK(t.apply(pic[n].group(), x) == img);
        }
    }
    auto id = tower_map(pic[2], pic[2]);
    CHECK(id.kernel.size() == 1);
    for (std::size_t i = 0; i < pic[2].size(); ++i) {
        auto x = pic[2].group().element(i);
        CHECK(id.apply(pic[2].group(), x) == x);
    }
    CHECK(prime_to_part(pic[1].group().invariant_factors(), 3) ==
          prime_to_part(pic[3].group().invariant_factors(), 3));
    CHECK_THROWS_AS(tower_map(pic[1], pic[2]), Error);
}

} // TEST_SUITE
