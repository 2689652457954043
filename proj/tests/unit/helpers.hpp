#ifndef FFH_TEST_HELPERS_HPP
#define FFH_TEST_HELPERS_HPP

#include <random>
#include <string>

#include "ffh/lattice.hpp"
#include "ffh/poly.hpp"
#include "ffh/quadratic.hpp"

namespace testutil {

inline ffh::Poly P(ffh::FiniteField const & f, std::string const & s)
{
    return ffh::parse_poly(f, s);
}

inline ffh::Poly random_poly(ffh::FiniteField const & f, int max_deg, std::mt19937_64 & rng)
{
    std::vector<ffh::FiniteField::Elem> c(static_cast<std::size_t>(max_deg) + 1);
    for (auto & x : c)
        x = static_cast<ffh::FiniteField::Elem>(rng() % f.order());
    return ffh::Poly(f, std::move(c));
}

inline ffh::Poly random_nonzero(ffh::FiniteField const & f, int max_deg, std::mt19937_64 & rng)
{
    for (;;) {
        auto p = random_poly(f, max_deg, rng);
        if (!p.is_zero())
            return p;
    }
}

/* Irreducibility by trial division over every monic polynomial of degree
 * 1..deg/2; independent of the library's Rabin test. */
inline bool irreducible_by_trial(ffh::Poly const & f)
{
    int n = f.degree();
    if (n < 1)
        return false;
    auto const & fld = f.field();
    std::uint64_t q = fld.order();
    for (int d = 1; 2 * d <= n; ++d) {
        std::uint64_t qd = 1;
        for (int i = 0; i < d; ++i)
            qd *= q;
        for (std::uint64_t r = 0; r < qd; ++r) {
            auto g = ffh::Poly::from_index(fld, qd + r);
            if ((f % g).is_zero())
                return false;
        }
    }
    return true;
}

/* q = 3, D = T^3 + 2T + 1 */
inline ffh::QuadFieldPtr running_field()
{
    auto f = ffh::FiniteField::prime(3);
    return ffh::make_field(f, P(f, "T^3+2*T+1"));
}

inline ffh::QuadFieldPtr field_of(std::uint32_t p, std::string const & D)
{
    auto f = ffh::FiniteField::prime(p);
    return ffh::make_field(f, P(f, D));
}

inline ffh::QuadElement random_element(ffh::QuadFieldPtr const & K, int max_deg,
                                       std::mt19937_64 & rng, bool fractional)
{
    auto const & f = K->base();
    for (;;) {
        auto x = random_poly(f, max_deg, rng);
        auto y = random_poly(f, max_deg, rng);
        auto d = fractional ? random_nonzero(f, 2, rng) : ffh::Poly::one(f);
        ffh::QuadElement z(K, x, y, d);
        if (!z.is_zero())
            return z;
    }
}

/* A random lattice spanned by a few random elements. */
inline ffh::Lattice random_lattice(ffh::QuadFieldPtr const & K, int max_deg, std::mt19937_64 & rng,
                                   bool fractional)
{
    for (;;) {
        std::vector<ffh::QuadElement> g;
        int n = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i)
            g.push_back(random_element(K, max_deg, rng, fractional));
        try {
            return ffh::lat_from_generators(K, g);
        } catch (ffh::Error const &) {
        }
    }
}

} // namespace testutil

#endif
