#ifndef FFH_CLASSGROUP_HPP
#define FFH_CLASSGROUP_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "ffh/abgroup.hpp"
#include "ffh/error.hpp"
#include "ffh/lattice.hpp"

namespace ffh {

/* Coefficients a_0..a_2g of the numerator L(t) of the zeta function of the
 * smooth curve y^2 = D(x), from point counts over F_{q^i}, i <= g. */
std::vector<std::int64_t> l_polynomial(QuadField const & K);

/* L(1) = |Pic(O_K)| for ramified K. Throws InertCaseUnsupported. */
std::int64_t class_number_zeta(QuadField const & K);

/* |Pic(O_K)| in both infinity types: L(1) times the degree of the place
 * above infinity. */
std::int64_t pic_card_maximal(QuadField const & K);

/* |(O/(m O_K cap O))^*| by enumeration of residues. Throws BudgetExceeded. */
std::uint64_t unit_residue_card(Order const & O, Poly const & m, Budget const & budget = {});

/* |(O_K/m O_K)^*| from the splitting types of the primes dividing m. */
std::uint64_t unit_residue_card_formula(QuadField const & K, Poly const & m);

/* |(A/c)^*|. */
std::uint64_t phi_A(Poly const & c);

/* |Pic(O_c)| = |Pic(O_K)| |(O_K/c)^*| / (|(A/c)^*| [O_K^*:O_c^*]). */
std::uint64_t pic_card_exact(Order const & O);

/* A class in Pic(O): the canonical homothety representative and an integral
 * ideal prime to the conductor in the same class. Ordered by key. */
struct ClassRep {
    Lattice key;
    Lattice ideal;
    bool operator<(ClassRep const & o) const { return key < o.key; }
};

class PicGroup {
  public:
    PicGroup(Order order, Presented<ClassRep> data);

    Order const & order() const { return order_; }
    AbGroup const & group() const { return data_.group; }
    std::uint64_t size() const { return data_.group.order(); }

    ClassRep const & rep(std::size_t idx) const { return data_.reps.at(idx); }
    ClassRep const & rep(AbGroup::Elem const & e) const { return rep(group().index(e)); }
    /* Ideal representatives of the basis elements. */
    std::vector<Lattice> generators() const;

    /* Throws OrderMismatch when I is not a proper ideal of this order. */
    std::size_t index_of(Lattice const & I) const;
    AbGroup::Elem class_of(Lattice const & I) const { return group().element(index_of(I)); }

  private:
    Order order_;
    Presented<ClassRep> data_;
};

/* Closes the classes of primes of increasing degree prime to the conductor
 * until the order reaches pic_card_exact(O). Throws BudgetExceeded past
 * budget.max_prime_degree. */
PicGroup pic_group(Order const & O, Budget const & budget = {});

/* Subgroup generated by every prime of degree <= max_degree prime to the
 * conductor; no target. */
PicGroup pic_group_exhaustive(Order const & O, int max_degree, Budget const & budget = {});

/* Primes of O_K above ell (one per conjugate pair for split ell, least root
 * first), or empty for inert ell. */
std::vector<Lattice> primes_above(QuadFieldPtr const & K, Poly const & ell);

struct HnStruct {
    int n;
    AbGroup group;
    std::uint64_t order;
    int annihilator_exp;
    int min_generators;
    int s_bound;
    /* lower bound on the number of generators, as a fraction */
    std::int64_t gen_bound_num, gen_bound_den;
};

/* H_n = (1 + p O_K)/(1 + p O_n) modulo p^n; coset sizes verified. */
HnStruct hn_group(QuadFieldPtr const & K, Poly const & p, int n, Budget const & budget = {});

struct TowerMap {
    /* images of the basis of the source */
    std::vector<AbGroup::Elem> images;
    bool surjective;
    std::vector<AbGroup::Elem> kernel;
    bool kernel_is_p_group;

    AbGroup::Elem apply(AbGroup const & target, AbGroup::Elem const & x) const;
};

/* [I] -> [O_c I] from Pic(O_{c'}) to Pic(O_c), c | c'. */
TowerMap tower_map(PicGroup const & from, PicGroup const & to);

} // namespace ffh

#endif /* FFH_CLASSGROUP_HPP */
