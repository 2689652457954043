#ifndef FFH_SUITES_HPP
#define FFH_SUITES_HPP

#include <string>
#include <vector>

#include "ffh/io.hpp"

namespace ffh {

struct SuiteCheck {
    std::string name;
    bool ok;
    Json detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteCheck> checks;

    std::size_t passed() const;
    std::size_t total() const { return checks.size(); }
};

/*
 * Named property suites, seeded by cfg.seed:
 *   hn          |H_n|, exponent and generator bounds, q in {3, 5}
 *   classnum    enumerated |Pic| vs the class number formula vs zeta
 *   sublattice  prime-index sublattices of lattices with q0 | c
 *   factor      canonical factorization of random cyclic inclusions
 *   heegner     Heegner points, Galois action law, tower compatibility
 *   hecke       geometric elements land in T_d; lifted point coherence
 *   nongeom     no short cyclic isogenies to non-geometric conjugates
 *   tower       tower maps: surjective, kernel |p|, stable prime-to-p part
 * "all" runs every suite in this order.
 */
std::vector<std::string> const & suite_names();

/* A check that throws records the error and fails; BudgetExceeded
 * propagates. Throws InvalidArgument for an unknown name. */
std::vector<SuiteReport> run_suite(std::string const & name, RunConfig const & cfg);

Json to_json(SuiteReport const & r);
/* Envelope with version, config and per-suite results. */
Json suite_document(std::vector<SuiteReport> const & reports, RunConfig const & cfg);
std::string suite_table(std::vector<SuiteReport> const & reports);

} // namespace ffh

#endif /* FFH_SUITES_HPP */
