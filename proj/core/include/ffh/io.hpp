#ifndef FFH_IO_HPP
#define FFH_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ffh/classgroup.hpp"
#include "ffh/heegner.hpp"
#include "ffh/isogeny.hpp"

namespace ffh {

/* Keys keep insertion order so that printed reports are stable. */
using Json = nlohmann::ordered_json;

Json to_json(Poly const & p);
/* {"den","a","b","c"} */
Json to_json(Lattice const & l);
/* {"invariant_factors":[...],"order":N} */
Json to_json(AbGroup const & g);
Json to_json(Factorization const & f);
/* Array of {"lattice","conductor"}. */
Json to_json(SublatticeReport const & r);
Json to_json(ModuliPoint const & pt);
Json to_json(HnStruct const & h);

Poly poly_from_json(FiniteField const & f, Json const & j);
/* Accepts any basis in the {"den","a","b","c"} shape and re-canonicalizes.
 * Throws ParseError. */
Lattice lattice_from_json(QuadFieldPtr const & K, Json const & j);
Lattice lattice_from_text(QuadFieldPtr const & K, std::string const & text);

/* Everything a CLI run depends on. */
struct RunConfig {
    std::uint32_t q = 3;
    std::string D = "T^3+2*T+1";
    std::string p = "T";
    std::string n_level = "T+1";
    std::uint64_t max_enumeration = 2'000'000;
    int max_prime_degree = 10;
    int degree_bound = 4;
    int horizon = 3;
    std::uint64_t seed = 0;
    std::string format = "json";
};

Json to_json(RunConfig const & c);
/* Missing keys keep their defaults; unknown keys and bad types throw
 * ParseError. */
RunConfig config_from_json(Json const & j, RunConfig base = {});

/* Field from (q, D); q must be an odd prime. */
QuadFieldPtr field_from_config(RunConfig const & c);
Budget budget_from_config(RunConfig const & c);
HeegnerConfig heegner_from_config(RunConfig const & c);

/* q, D, genus, infinity type, L-polynomial and |Pic(O_K)|. */
Json field_report(QuadField const & K);

struct TowerRow {
    int n;
    std::uint64_t pic;
    std::vector<std::int64_t> factors;
    std::uint64_t hn;
    int s_bound;
    std::int64_t gen_num, gen_den;
};

/* Rows n = 0 .. levels-1 for the orders O_{p^n}. */
std::vector<TowerRow> tower_table(QuadFieldPtr const & K, Poly const & p, int levels, Budget const & budget);
/* Header n,|Pic|,factors,|H_n|,s_bound,gen_bound; factors joined by ';'. */
std::string tower_csv(std::vector<TowerRow> const & rows);
Json to_json(TowerRow const & r);

} // namespace ffh

#endif /* FFH_IO_HPP */
