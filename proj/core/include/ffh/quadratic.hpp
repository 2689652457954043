#ifndef FFH_QUADRATIC_HPP
#define FFH_QUADRATIC_HPP

#include <climits>
#include <memory>
#include <optional>
#include <string>

#include "ffh/frac.hpp"
#include "ffh/poly.hpp"

namespace ffh {

enum class InfinityType { Ramified, Inert };

std::string_view to_string(InfinityType t);

/*
 * K = k(w), w^2 = D, with D square-free and non-constant and infinity not
 * split. O_K = A + A w.
 */
class QuadField {
  public:
    FiniteField const & base() const { return base_; }
    Poly const & D() const { return D_; }
    InfinityType infinity_type() const { return inf_; }
    int genus() const { return (D_.degree() - 1) / 2; }

    bool operator==(QuadField const & o) const { return D_ == o.D_; }

  private:
    QuadField(FiniteField base, Poly D, InfinityType inf)
        : base_(std::move(base)), D_(std::move(D)), inf_(inf)
    {}
    friend std::shared_ptr<QuadField const> make_field(FiniteField const &, Poly const &);

    FiniteField base_;
    Poly D_;
    InfinityType inf_;
};

using QuadFieldPtr = std::shared_ptr<QuadField const>;

/* Throws EvenCharacteristic, DegenerateConstantField, NotSquareFree, RealField. */
QuadFieldPtr make_field(FiniteField const & base, Poly const & D);

void throw_if_field_mismatch(QuadFieldPtr const & a, QuadFieldPtr const & b);

/* deg N(x + y w) = max(2 deg x, 2 deg y + deg D) for integral x, y.
 * Returns INT_MIN for the zero vector. */
inline int norm_weight(Poly const & x, Poly const & y, int deg_D)
{
    int wx = x.is_zero() ? INT_MIN : 2 * x.degree();
    int wy = y.is_zero() ? INT_MIN : 2 * y.degree() + deg_D;
    return wx > wy ? wx : wy;
}

/* (x + y w) / den with den monic and gcd(den, x, y) = 1. */
class QuadElement {
  public:
    QuadElement(QuadFieldPtr K, Poly x, Poly y);
    QuadElement(QuadFieldPtr K, Poly x, Poly y, Poly den);

    static QuadElement zero(QuadFieldPtr const & K);
    static QuadElement one(QuadFieldPtr const & K);
    static QuadElement omega(QuadFieldPtr const & K);
    static QuadElement from_poly(QuadFieldPtr const & K, Poly const & a);
    static QuadElement from_frac(QuadFieldPtr const & K, Frac const & a);

    QuadFieldPtr const & field() const { return K_; }
    Poly const & x() const { return x_; }
    Poly const & y() const { return y_; }
    Poly const & den() const { return den_; }

    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }

    /* deg N(z); INT_MIN for zero. */
    int norm_degree() const;

    QuadElement conj() const;
    Frac norm() const;
    Frac trace() const;
    /* Throws DivisionByZero. */
    QuadElement inverse() const;

    friend QuadElement operator+(QuadElement const & a, QuadElement const & b);
    friend QuadElement operator-(QuadElement const & a, QuadElement const & b);
    friend QuadElement operator*(QuadElement const & a, QuadElement const & b);
    QuadElement operator-() const;

    bool operator==(QuadElement const & o) const
    {
        return x_ == o.x_ && y_ == o.y_ && den_ == o.den_;
    }

    std::string str() const;

  private:
    QuadFieldPtr K_;
    Poly x_, y_, den_;
};

struct SplitType {
    Poly prime;
    int chi; /* +1 split, -1 inert, 0 ramified */
    std::optional<Poly> root; /* least square root of D mod prime when split */
};

/* Throws NotIrreducible. */
SplitType splitting_type(QuadField const & K, Poly const & q0);

/* A square root of a modulo the irreducible q0, or nullopt for a non-residue.
 * Returns the smaller of the two roots in the Poly order. */
std::optional<Poly> sqrt_mod(Poly const & a, Poly const & q0);

/* [O_K^* : O_c^*], from the norm-degree-0 elements of each order. */
std::uint64_t unit_index(QuadField const & K, Poly const & c);

} // namespace ffh

#endif /* FFH_QUADRATIC_HPP */
