#ifndef FFH_HEEGNER_HPP
#define FFH_HEEGNER_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ffh/classgroup.hpp"
#include "ffh/isogeny.hpp"

namespace ffh {

struct HeegnerConfig {
    QuadFieldPtr K;
    Poly n_level; /* squarefree product of split primes */
    Poly p;       /* tower prime, p does not divide n_level */
    Lattice N;    /* O_K/N = A/n_level */
};

/* Throws NotIrreducible, NotSquareFreeLevel, NonSplitPrime, PDividesN. */
HeegnerConfig check_heegner_hypothesis(QuadFieldPtr const & K, Poly const & n_level, Poly const & p);

/* Product of the primes (q, w - r_q) over q | n_level, r_q the least root of
 * D mod q. Throws NonSplitPrime. */
Lattice construct_N(QuadFieldPtr const & K, Poly const & n_level);

struct HeegnerPoint {
    int n;
    ModuliPoint pt;
    bool operator==(HeegnerPoint const & o) const { return n == o.n && pt == o.pt; }
};

/* An element of Gal(K[p^inf]/K) through an O_K-ideal prime to p; at level n
 * it is the class of ideal cap O_n. */
struct GaloisElement {
    Lattice ideal;
    bool operator==(GaloisElement const & o) const { return ideal == o.ideal; }
};

GaloisElement galois_identity(QuadFieldPtr const & K);
GaloisElement galois_compose(GaloisElement const & a, GaloisElement const & b);

struct GeometricData {
    std::vector<Poly> ramified; /* primes != p dividing D */
    Poly m;                     /* their product */
    /* d | m in divisor order, with sigma_d = class of (d, w) */
    std::vector<std::pair<Poly, GaloisElement>> divisor_map;
};

GeometricData geometric_group(QuadFieldPtr const & K, Poly const & p);

struct GeometricCertificate {
    bool geometric;
    std::optional<Lattice> ideal; /* matching ideal with cyclic quotient */
    std::size_t searched;         /* ideals examined */
};

struct ThetaResult {
    GaloisElement theta;
    AbGroup::Elem klass; /* class in Pic(O_horizon) */
    std::size_t examined;
};

enum class OrbitSubgroup { Trivial, G1, Full, TorsionApprox };

/*
 * Heegner data along the tower O_n = O_{p^n}, with the class groups computed
 * on demand and cached. Not safe for concurrent use.
 */
class HeegnerTower {
  public:
    explicit HeegnerTower(HeegnerConfig cfg, Budget budget = {});

    HeegnerConfig const & config() const { return cfg_; }
    Budget const & budget() const { return budget_; }
    QuadFieldPtr const & field() const { return cfg_.K; }

    Order order(int n) const;
    PicGroup const & pic(int n);
    GeometricData const & geometric();

    /* x_n = (O_n, (N cap O_n)^{-1}). */
    HeegnerPoint heegner_point(int n);

    AbGroup::Elem class_at(GaloisElement const & s, int n);
    /* The O_K-ideal under the class with the given index at level n. */
    GaloisElement element_of(int n, std::size_t class_index);

    /* [L] -> [(ideal cap O_n)^{-1} L] on both slots. Throws NotCoprime. */
    HeegnerPoint galois_act(GaloisElement const & s, HeegnerPoint const & x);

    /* Subgroup of Pic(O_n) generated by the classes of the ramified primes. */
    std::vector<AbGroup::Elem> g1_at_level(int n);

    /* hecke_member(x_n, x_n^{sigma_d}, d). Throws NotDivisor. */
    std::optional<ModuliPoint> verify_geometric_level(Poly const & d, int n);

    /* Is there an O_K-ideal D prime to p with cyclic quotient and
     * deg N(D) <= degree_bound whose class matches s at every level? */
    GeometricCertificate is_geometric(GaloisElement const & s, int degree_bound,
                                      std::vector<int> const & levels);

    /* (O_n, N_n^{-1} M_n^{-1}) of level m n_level, M_n = (m, w) cap O_n;
     * full_degeneracy is checked against the G_1-orbit. */
    ModuliPoint lifted_point_x_prime(int n);

    /* First theta in ker(Pic(O_horizon) -> Pic(O_m_level)) in index order with
     * theta sigma non-geometric for every sigma in R. Throws
     * NoWitnessInHorizon. */
    ThetaResult choose_theta(int m_level, std::vector<GaloisElement> const & R, int degree_bound,
                             int horizon);

    /* Classes of Pic(O_n) in the chosen subgroup, sorted by index. */
    std::vector<AbGroup::Elem> subgroup_classes(int n, OrbitSubgroup which, int lookahead = 1);

    /* Orbit of x under the chosen subgroup, as a sorted multiset. */
    std::vector<ModuliPoint> g0_orbit(HeegnerPoint const & x, OrbitSubgroup which, int lookahead = 1);

  private:
    HeegnerConfig cfg_;
    Budget budget_;
    std::map<int, PicGroup> pic_;
    std::map<int, HeegnerPoint> points_;
    std::optional<GeometricData> geo_;
    std::optional<std::vector<Lattice>> cyclic_ideals_;
    int cyclic_bound_ = -1;

    std::vector<Lattice> const & cyclic_ideals(int degree_bound);
};

} // namespace ffh

#endif /* FFH_HEEGNER_HPP */
