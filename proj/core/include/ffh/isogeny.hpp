#ifndef FFH_ISOGENY_HPP
#define FFH_ISOGENY_HPP

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffh/error.hpp"
#include "ffh/lattice.hpp"

namespace ffh {

/* La with La in Lb and Lb/La = A/q0, one per line of Lb/q0 Lb. */
struct SublatticeReport {
    Poly prime;
    std::vector<std::pair<Lattice, Poly>> entries; /* lattice, conductor */
    bool classified;                               /* q0 divides c(Lb) */
    std::size_t count_down;                        /* conductor c/q0, or not c*q0 */
    std::size_t count_up;                          /* conductor c*q0 */
};

/* Throws NotIrreducible; VerificationFailed if the classification for
 * q0 | c(Lb) does not hold. */
SublatticeReport sublattices_prime(Lattice const & Lb, Poly const & q0);

/*
 * The chain La in O_c La in d2 O_c Lb in Lb of a cyclic inclusion, with
 * indices d1, dprime, d2, and the O_K-ideal Dideal with O_K/Dideal = A/dprime.
 */
struct Factorization {
    Poly c1, c2, c, d, d1, d2, dprime;
    Lattice Dideal, mid1, mid2;
};

/* Throws NotContained, NotCyclic; VerificationFailed if an identity of the
 * chain fails. */
Factorization canonical_factorization(Lattice const & La, Lattice const & Lb);

/* All lambda (one per unit class) with lambda*y in x and x/(lambda*y) = A/d.
 * Throws BudgetExceeded. */
std::vector<QuadElement> cyclic_isogenies_between(Lattice const & x, Lattice const & y, Poly const & d,
                                                  Budget const & budget = {});

/* A point of X_0(level): a cyclic pair L in Lp with Lp/L = A/level, scaled to
 * the canonical representative of its homothety class. */
struct ModuliPoint {
    Poly level;
    Lattice L, Lp;

    bool operator==(ModuliPoint const & o) const
    {
        return level == o.level && L == o.L && Lp == o.Lp;
    }
    std::strong_ordering operator<=>(ModuliPoint const & o) const;
    std::string str() const;
};

/* Throws NotContained, NotCyclic, LevelMismatch. */
ModuliPoint make_moduli_point(Lattice const & L, Lattice const & Lp, Poly const & level);

/* The same point scaled by lambda before canonicalization; the result equals
 * the input. Exposed for tests. */
ModuliPoint scale_point(ModuliPoint const & pt, QuadElement const & lambda);

/* delta_d(L, L'') = (L'' cap d^{-1} L, L'' cap (dn)^{-1} L) for pt of level m*n.
 * Throws NotDivisor, NotCoprime, LevelMismatch. */
ModuliPoint degeneracy(ModuliPoint const & pt, Poly const & d, Poly const & m, Poly const & n);

/* delta_d for every monic d | m, in divisor order. */
std::vector<ModuliPoint> full_degeneracy(ModuliPoint const & pt, Poly const & m, Poly const & n);

/* A level m*n point w with delta_1(w) = x and delta_m(w) = y, if one exists.
 * Throws NotCoprime, LevelMismatch, BudgetExceeded. */
std::optional<ModuliPoint> hecke_member(ModuliPoint const & x, ModuliPoint const & y, Poly const & m,
                                        Budget const & budget = {});

} // namespace ffh

#endif /* FFH_ISOGENY_HPP */
