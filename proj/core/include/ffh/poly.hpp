#ifndef FFH_POLY_HPP
#define FFH_POLY_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffh/field.hpp"

namespace ffh {

/*
 * An element of A = F_q[T].
 *
 * Coefficients are stored in ascending degree with no trailing zeros, so the
 * representation is canonical and equality is literal. The zero polynomial is
 * the empty sequence and has degree -1.
 *
 * The total order compares degree first, then coefficients from the leading
 * term down; it is the order of the base-q integers sum c_i q^i.
 */
class Poly {
  public:
    using Elem = FiniteField::Elem;

    explicit Poly(FiniteField f) : f_(std::move(f)) {}
    Poly(FiniteField f, std::vector<Elem> coeffs);

    static Poly constant(FiniteField const & f, Elem c);
    static Poly one(FiniteField const & f) { return constant(f, 1); }
    static Poly t(FiniteField const & f) { return monomial(f, 1, 1); }
    static Poly monomial(FiniteField const & f, Elem c, int k);
    /* Integer coefficients (constant first), reduced into the prime subfield. */
    static Poly from_ints(FiniteField const & f, std::vector<long long> const & c);
    /* The polynomial whose base-q digits are idx. Bijective onto A. */
    static Poly from_index(FiniteField const & f, std::uint64_t idx);

    FiniteField const & field() const { return f_; }
    std::vector<Elem> const & coeffs() const { return c_; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Elem lc() const { return c_.empty() ? 0 : c_.back(); }
    Elem coeff(int i) const
    {
        return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0;
    }

    /* |a| = q^deg a; 0 for the zero polynomial. Saturates at UINT64_MAX. */
    std::uint64_t norm() const;
    std::uint64_t index() const;

    Poly monic() const;
    Poly scaled(Elem s) const;
    Poly shifted(int k) const;
    Poly derivative() const;
    Elem eval(Elem x) const;

    Poly operator-() const;
    Poly & operator+=(Poly const & o);
    Poly & operator-=(Poly const & o);
    Poly & operator*=(Poly const & o) { return *this = *this * o; }

    friend Poly operator+(Poly a, Poly const & b) { return a += b; }
    friend Poly operator-(Poly a, Poly const & b) { return a -= b; }
    friend Poly operator*(Poly const & a, Poly const & b);
    /* Euclidean quotient and remainder; throws DivisionByZero. */
    friend Poly operator/(Poly const & a, Poly const & b);
    friend Poly operator%(Poly const & a, Poly const & b);

    bool operator==(Poly const & o) const { return c_ == o.c_ && f_ == o.f_; }
    std::strong_ordering operator<=>(Poly const & o) const;

    std::string str() const;

  private:
    void trim();

    FiniteField f_;
    std::vector<Elem> c_;
};

std::pair<Poly, Poly> divmod(Poly const & a, Poly const & b);

/* b divides a. */
bool divides(Poly const & b, Poly const & a);

/* Exact division; throws InvalidArgument when b does not divide a. */
Poly exact_div(Poly const & a, Poly const & b);

/* Monic gcd (zero only when both inputs are zero). */
Poly gcd(Poly const & a, Poly const & b);
Poly lcm(Poly const & a, Poly const & b);

struct Xgcd {
    Poly g, u, v; /* u*a + v*b = g, g monic */
};
Xgcd xgcd(Poly const & a, Poly const & b);

/* Inverse of a modulo m; throws NotCoprime when gcd(a, m) != 1. */
Poly inverse_mod(Poly const & a, Poly const & m);

Poly powmod(Poly const & base, std::uint64_t e, Poly const & m);
Poly pow(Poly const & base, unsigned e);

/* Polynomial grammar: poly := term (('+'|'-') term)*,
 * term := coeff | coeff '*'? 'T' ('^' nat)? | 'T' ('^' nat)?.
 * Integer coefficients are reduced mod p. Extension-field constants may be
 * written as {code}. */
Poly parse_poly(FiniteField const & f, std::string_view text);

void throw_if_field_mismatch(Poly const & a, Poly const & b);

struct Factor {
    Poly prime;
    int multiplicity;
    bool operator==(Factor const &) const = default;
};

/* Complete factorization into monic irreducibles, sorted by the Poly order.
 * Uses distinct-degree splitting then seeded Cantor-Zassenhaus; the output is
 * independent of the seed. Throws ZeroPolynomial. */
std::vector<Factor> factor(Poly const & f, std::uint64_t seed);

bool is_irreducible(Poly const & f);
bool is_squarefree(Poly const & f);

/* All monic irreducibles of the given degree, in Poly order. */
std::vector<Poly> monic_irreducibles(FiniteField const & f, int degree);

/* All polynomials of degree < n (including zero), in Poly order. */
std::vector<Poly> polys_below_degree(FiniteField const & f, int n);

/* All monic divisors of a nonzero f, in Poly order. */
std::vector<Poly> monic_divisors(Poly const & f);

/* Distinct monic prime factors of a nonzero f, in Poly order. */
std::vector<Poly> prime_factors(Poly const & f);

struct PolyHash {
    std::size_t operator()(Poly const & a) const noexcept;
};

} // namespace ffh

#endif /* FFH_POLY_HPP */
