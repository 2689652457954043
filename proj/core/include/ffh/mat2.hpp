#ifndef FFH_MAT2_HPP
#define FFH_MAT2_HPP

#include <utility>
#include <vector>

#include "ffh/poly.hpp"

namespace ffh {

/*
 * A 2x2 matrix over k = F_q(T), stored as integral entries over a single
 * monic denominator that is coprime to the gcd of the entries.
 * Row i is (m[i][0], m[i][1]).
 */
struct Mat2 {
    Poly m00, m01, m10, m11;
    Poly den;

    /* Integral matrix with denominator 1. */
    Mat2(Poly a00, Poly a01, Poly a10, Poly a11);
    /* Fractional matrix; the denominator is normalized against the entries. */
    Mat2(Poly a00, Poly a01, Poly a10, Poly a11, Poly d);

    bool is_integral() const { return den.is_one(); }
    bool operator==(Mat2 const &) const = default;
};

using Row = std::pair<Poly, Poly>;

/* Canonical Hermite basis [[a,0],[b,c]] of the A-span of integral rows:
 * a, c monic, deg b < deg a. Throws RankDeficient when the span has rank < 2. */
Mat2 hnf2(std::vector<Row> const & gens);

/* Elementary divisors (d1, d2) of an integral nonsingular matrix, monic with
 * d1 | d2. Throws Singular, or NotIntegral for a fractional matrix. */
std::pair<Poly, Poly> snf2(Mat2 const & m);

} // namespace ffh

#endif /* FFH_MAT2_HPP */
