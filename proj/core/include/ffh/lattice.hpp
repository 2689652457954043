#ifndef FFH_LATTICE_HPP
#define FFH_LATTICE_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ffh/error.hpp"
#include "ffh/frac.hpp"
#include "ffh/mat2.hpp"
#include "ffh/quadratic.hpp"

namespace ffh {

/*
 * A fractional rank-2 A-lattice in K in canonical form
 *
 *     L = (1/den) * (A*a + A*(b + c*w))
 *
 * with den, a, c monic, deg b < deg a and gcd(den, a, b, c) = 1. Two lattices
 * are equal iff their canonical forms are equal.
 */
class Lattice {
  public:
    /* Checks the canonical-form invariants; throws InvalidArgument. */
    static Lattice from_canonical(QuadFieldPtr K, Poly den, Poly a, Poly b, Poly c);

    QuadFieldPtr const & field() const { return K_; }
    Poly const & den() const { return den_; }
    Poly const & a() const { return a_; }
    Poly const & b() const { return b_; }
    Poly const & c() const { return c_; }

    QuadElement basis0() const;
    QuadElement basis1() const;

    bool contains(QuadElement const & z) const;
    /* o is a sublattice of *this. */
    bool contains(Lattice const & o) const;

    /* deg of the covolume relative to O_K: deg a + deg c - 2 deg den. */
    int volume_degree() const { return a_.degree() + c_.degree() - 2 * den_.degree(); }

    bool operator==(Lattice const & o) const
    {
        return den_ == o.den_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }
    std::strong_ordering operator<=>(Lattice const & o) const;

    std::string str() const;

  private:
    Lattice(QuadFieldPtr K, Poly den, Poly a, Poly b, Poly c)
        : K_(std::move(K)), den_(std::move(den)), a_(std::move(a)), b_(std::move(b)),
          c_(std::move(c))
    {}
    friend Lattice canonical_lattice(QuadFieldPtr const &, std::vector<Row> const &, Poly const &);

    QuadFieldPtr K_;
    Poly den_, a_, b_, c_;
};

/* The lattice spanned by integral rows (x, y) ~ (x + y w) / den. */
Lattice canonical_lattice(QuadFieldPtr const & K, std::vector<Row> const & rows, Poly const & den);

/* The order O_c = A + c O_K. */
class Order {
  public:
    Order(QuadFieldPtr K, Poly cond);
    static Order maximal(QuadFieldPtr K);

    QuadFieldPtr const & field() const { return K_; }
    Poly const & conductor() const { return cond_; }
    Lattice const & lattice() const { return lat_; }

    bool operator==(Order const & o) const { return lat_ == o.lat_; }

  private:
    QuadFieldPtr K_;
    Poly cond_;
    Lattice lat_;
};

struct QuotientShape {
    Poly d1, d2;
    bool cyclic;
    Poly index_ideal;
};

/* Throws RankDeficient. */
Lattice lat_from_generators(QuadFieldPtr const & K, std::vector<QuadElement> const & gens);

enum class Combine { Sum, Intersect, Product };

Lattice lattice_sum(Lattice const & l1, Lattice const & l2);
Lattice lattice_intersect(Lattice const & l1, Lattice const & l2);
Lattice lattice_product(Lattice const & l1, Lattice const & l2);
/* Throws ZeroScale. */
Lattice lattice_scale(Lattice const & l, QuadElement const & s);
/* Throws FieldMismatch. */
Lattice lattice_combine(Combine mode, Lattice const & l1, Lattice const & l2);

/* Dual lattice with respect to the coordinate pairing in the basis (1, w). */
Lattice lattice_dual(Lattice const & l);

/* {x in K : x*l1 in l2}. */
Lattice transporter(Lattice const & l1, Lattice const & l2);

/* Elementary divisors of l2/l1. Throws NotContained. */
QuotientShape quotient_shape(Lattice const & l1, Lattice const & l2);

Order multiplier_ring(Lattice const & l);
inline Poly conductor(Lattice const & l) { return multiplier_ring(l).conductor(); }

/* [O : l] as a fractional ideal of A. Throws OrderMismatch. */
Frac ideal_norm(Lattice const & l, Order const & o);

/* O_{c2} * l. */
Lattice order_extend(Lattice const & l, Poly const & c2);

/* Scales z by the unit that makes its leading coefficient at infinity 1. */
QuadElement normalize_unit(QuadElement const & z);

/* Nonzero elements of l of norm degree <= bound, sorted by norm degree.
 * projective: one representative per F_q^* class (see normalize_unit). */
std::vector<QuadElement> vectors_up_to(Lattice const & l, int bound, bool projective,
                                       Budget const & budget = {});

/* Smallest norm degree of a nonzero element of l. */
int minimal_norm_degree(Lattice const & l);

/* Up to count nonzero elements of minimal norm degree, unit multiples
 * included, in a fixed order. */
std::vector<QuadElement> minimal_vectors(Lattice const & l, std::size_t count,
                                         Budget const & budget = {});

/* One minimal vector per F_q^* class. */
std::vector<QuadElement> minimal_classes(Lattice const & l, Budget const & budget = {});

/* Generator of I when principal, nullopt otherwise. Throws NotProper,
 * OrderMismatch. */
std::optional<QuadElement> is_principal(Lattice const & I, Order const & o,
                                        Budget const & budget = {});

/* Throws NotInvertible. */
Lattice ideal_inverse(Lattice const & I, Order const & o);

/* lambda with lambda*l1 = l2, or nullopt. */
std::optional<QuadElement> homothety_test(Lattice const & l1, Lattice const & l2,
                                          Budget const & budget = {});

/* The canonical lattice of the homothety class of l: the least lambda*l over
 * lambda = 1/x, x a minimal vector of l. */
struct HomothetyKey {
    Lattice key;
    QuadElement lambda;
};
HomothetyKey homothety_key(Lattice const & l);

/* Every candidate (1/x, l/x) for x a minimal vector class of l. */
std::vector<HomothetyKey> homothety_candidates(Lattice const & l);

} // namespace ffh

#endif /* FFH_LATTICE_HPP */
