#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ffh/io.hpp"
#include "ffh/suites.hpp"
#include "ffh/version.hpp"

using namespace ffh;

namespace {

enum Exit { Ok = 0, Usage = 1, Math = 2, Budget_ = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Flattened "path: value" lines. */
void flatten(Json const & j, std::string const & path, std::ostream & os)
{
    if (j.is_object() && !j.empty()) {
        for (auto const & [k, v] : j.items())
            flatten(v, path.empty() ? k : path + "." + k, os);
    } else if (j.is_array() && !j.empty() && !j.front().is_primitive()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

Json lattice_arg(QuadFieldPtr const & K, std::string const & text, Lattice & out)
{
    out = lattice_from_text(K, text);
    return to_json(out);
}

struct Output {
    Json result;
    std::optional<std::string> table; /* overrides the flattened table */
};

Output cmd_field(RunConfig const & cfg)
{
    auto K = field_from_config(cfg);
    return {field_report(*K), std::nullopt};
}

Output cmd_classgroup(RunConfig const & cfg, std::string const & cond)
{
    auto K = field_from_config(cfg);
    Order O(K, parse_poly(K->base(), cond));
    auto G = pic_group(O, budget_from_config(cfg));
    Json gens = Json::array();
    for (auto const & g : G.generators())
        gens.push_back(to_json(g));
    Json r{{"conductor", to_json(O.conductor())},
           {"group", to_json(G.group())},
           {"formula", pic_card_exact(O)},
           {"generators", gens}};
    if (O.conductor().is_one() && K->infinity_type() == InfinityType::Ramified)
        r["zeta"] = class_number_zeta(*K);
    return {r, std::nullopt};
}

Output cmd_tower(RunConfig const & cfg, int levels)
{
    auto K = field_from_config(cfg);
    auto rows = tower_table(K, parse_poly(K->base(), cfg.p), levels, budget_from_config(cfg));
    Json arr = Json::array();
    for (auto const & r : rows)
        arr.push_back(to_json(r));
    return {Json{{"p", cfg.p}, {"rows", arr}}, tower_csv(rows)};
}

Output cmd_sublattices(RunConfig const & cfg, std::string const & lat, std::string const & prime)
{
    auto K = field_from_config(cfg);
    Lattice Lb = Order::maximal(K).lattice();
    Json lb = lattice_arg(K, lat, Lb);
    auto rep = sublattices_prime(Lb, parse_poly(K->base(), prime));
    return {Json{{"lattice", lb},
                 {"conductor", to_json(conductor(Lb))},
                 {"prime", to_json(rep.prime)},
                 {"classified", rep.classified},
                 {"count_down", rep.count_down},
                 {"count_up", rep.count_up},
                 {"sublattices", to_json(rep)}},
            std::nullopt};
}

Output cmd_factor(RunConfig const & cfg, std::string const & a, std::string const & b)
{
    auto K = field_from_config(cfg);
    Lattice La = Order::maximal(K).lattice(), Lb = La;
    lattice_arg(K, a, La);
    lattice_arg(K, b, Lb);
    return {to_json(canonical_factorization(La, Lb)), std::nullopt};
}

Output cmd_heegner(RunConfig const & cfg, int n)
{
    HeegnerTower tw(heegner_from_config(cfg), budget_from_config(cfg));
    auto x = tw.heegner_point(n);
    Poly c = pow(tw.config().p, static_cast<unsigned>(n));
    auto O = tw.order(n);
    auto sn = quotient_shape(lattice_intersect(tw.config().N, O.lattice()), O.lattice());
    auto sx = quotient_shape(x.pt.L, x.pt.Lp);
    Json checks{{"conductor_L", conductor(x.pt.L) == c},
                {"conductor_Lp", conductor(x.pt.Lp) == c},
                {"order_quotient_cyclic", sn.cyclic && sn.index_ideal == tw.config().n_level},
                {"pair_quotient_cyclic", sx.cyclic && sx.index_ideal == tw.config().n_level}};
    return {Json{{"n", n},
                 {"n_level", to_json(tw.config().n_level)},
                 {"p", to_json(tw.config().p)},
                 {"N", to_json(tw.config().N)},
                 {"pic", to_json(tw.pic(n).group())},
                 {"point", to_json(x.pt)},
                 {"checks", checks}},
            std::nullopt};
}

Output cmd_geometric(RunConfig const & cfg, int n)
{
    HeegnerTower tw(heegner_from_config(cfg), budget_from_config(cfg));
    auto const & geo = tw.geometric();
    auto const & G = tw.pic(n).group();
    Json ram = Json::array();
    for (auto const & r : geo.ramified)
        ram.push_back(to_json(r));
    Json g1 = Json::array();
    for (auto const & e : tw.g1_at_level(n))
        g1.push_back(G.index(e));
    Json checks = Json::array();
    auto x = tw.heegner_point(n);
    for (auto const & [d, s] : geo.divisor_map) {
        auto w = tw.verify_geometric_level(d, n);
        checks.push_back(Json{{"d", to_json(d)},
                              {"sigma_class", G.index(tw.class_at(s, n))},
                              {"hecke_member", w.has_value()},
                              {"witness", w ? to_json(*w) : Json(nullptr)}});
    }
    auto xp = tw.lifted_point_x_prime(n);
    auto parts = full_degeneracy(xp, geo.m, tw.config().n_level);
    bool coherent = parts.size() == geo.divisor_map.size();
    for (std::size_t i = 0; coherent && i < parts.size(); ++i)
        coherent = parts[i] == tw.galois_act(geo.divisor_map[i].second, x).pt;
    return {Json{{"n", n},
                 {"ramified", ram},
                 {"m", to_json(geo.m)},
                 {"g1_classes", g1},
                 {"g1_order", g1.size()},
                 {"hecke_checks", checks},
                 {"lifted_point", to_json(xp)},
                 {"lifted_point_coherent", coherent}},
            std::nullopt};
}

Output cmd_theta(RunConfig const & cfg, int m_level, int horizon, std::string const & rset)
{
    HeegnerTower tw(heegner_from_config(cfg), budget_from_config(cfg));
    std::vector<GaloisElement> R{galois_identity(tw.field())};
    if (rset == "g1") {
        R.clear();
        for (auto const & [d, s] : tw.geometric().divisor_map)
            R.push_back(s);
    }
    auto r = tw.choose_theta(m_level, R, cfg.degree_bound, horizon);
    auto const & G = tw.pic(horizon).group();
    return {Json{{"m_level", m_level},
                 {"horizon", horizon},
                 {"degree_bound", cfg.degree_bound},
                 {"r", rset},
                 {"theta", to_json(r.theta.ideal)},
                 {"class", G.index(r.klass)},
                 {"class_order", G.element_order(r.klass)},
                 {"examined", r.examined}},
            std::nullopt};
}

RunConfig load_config(std::string const & path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Json j;
    try {
        j = Json::parse(ss.str());
    } catch (nlohmann::json::exception const & e) {
        throw UsageError(std::string("config file: ") + e.what());
    }
    return config_from_json(j);
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Heegner towers over F_q[T]: class groups, lattices and isogenies"};
    app.set_version_flag("--version", std::string(ffh::version));
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    std::string config_path, format;
    std::optional<std::uint32_t> q;
    std::optional<std::string> D, p, n_level;
    std::optional<std::uint64_t> max_enum;
    std::optional<int> max_prime_degree, degree_bound;

    app.add_option("--seed", seed, "Seed for every random choice")->required();
    app.add_option("--config", config_path, "RunConfig JSON file")->check(CLI::ExistingFile);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--q", q, "Characteristic (odd prime)");
    app.add_option("--D", D, "Square-free D in F_q[T]");
    app.add_option("--p", p, "Tower prime");
    app.add_option("--n-level", n_level, "Heegner level");
    app.add_option("--max-enumeration", max_enum, "Enumeration budget");
    app.add_option("--max-prime-degree", max_prime_degree, "Prime degree budget for class groups");
    app.add_option("--degree-bound", degree_bound, "Norm degree bound for geometric searches");

    auto * field = app.add_subcommand("field", "Field data");
    std::string cond;
    auto * classgroup = app.add_subcommand("classgroup", "Structure of Pic(O_c)");
    classgroup->add_option("--cond", cond, "Conductor c")->required();
    int levels = 0;
    auto * tower = app.add_subcommand("tower", "Class groups along the p-tower");
    tower->add_option("--levels", levels, "Number of levels")->required()->check(CLI::PositiveNumber);
    std::string lattice, prime;
    auto * sub = app.add_subcommand("sublattices", "Sublattices of prime index");
    sub->add_option("--lattice", lattice, "Lattice JSON")->required();
    sub->add_option("--prime", prime, "Monic irreducible q0")->required();
    std::string la, lb;
    auto * factor = app.add_subcommand("factor", "Canonical factorization of a cyclic inclusion a in b");
    factor->add_option("--a", la, "Lattice JSON")->required();
    factor->add_option("--b", lb, "Lattice JSON")->required();
    int level = 0;
    auto * heegner = app.add_subcommand("heegner", "Heegner point x_n");
    heegner->add_option("--level", level, "Tower level n")->required()->check(CLI::NonNegativeNumber);
    auto * geometric = app.add_subcommand("geometric", "G_1 and the Hecke checks at level n");
    geometric->add_option("--level", level, "Tower level n")->required()->check(CLI::NonNegativeNumber);
    int m_level = 0, horizon = 0;
    std::string rset = "identity";
    auto * theta = app.add_subcommand("theta", "Search for theta in ker(Pic(O_horizon) -> Pic(O_m))");
    theta->add_option("--m-level", m_level, "Level m")->required()->check(CLI::NonNegativeNumber);
    theta->add_option("--horizon", horizon, "Search level")->required()->check(CLI::PositiveNumber);
    theta->add_option("--r", rset, "Coset representatives")->check(CLI::IsMember({"identity", "g1"}));
    std::string suite;
    auto * verify = app.add_subcommand("verify", "Run a named property suite");
    std::vector<std::string> names = suite_names();
    names.push_back("all");
    verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(names));

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!format.empty())
            cfg.format = format;
        if (!config_path.empty() && cfg.seed != 0 && cfg.seed != seed)
            throw UsageError("--seed disagrees with the seed in the config file");
        cfg.seed = seed;
        if (q)
            cfg.q = *q;
        if (D)
            cfg.D = *D;
        if (p)
            cfg.p = *p;
        if (n_level)
            cfg.n_level = *n_level;
        if (max_enum)
            cfg.max_enumeration = *max_enum;
        if (max_prime_degree)
            cfg.max_prime_degree = *max_prime_degree;
        if (degree_bound)
            cfg.degree_bound = *degree_bound;
        if (theta->parsed())
            cfg.horizon = horizon;

        std::string command;
        Output out;
        if (field->parsed()) {
            command = "field";
            out = cmd_field(cfg);
        } else if (classgroup->parsed()) {
            command = "classgroup";
            out = cmd_classgroup(cfg, cond);
        } else if (tower->parsed()) {
            command = "tower";
            out = cmd_tower(cfg, levels);
        } else if (sub->parsed()) {
            command = "sublattices";
            out = cmd_sublattices(cfg, lattice, prime);
        } else if (factor->parsed()) {
            command = "factor";
            out = cmd_factor(cfg, la, lb);
        } else if (heegner->parsed()) {
            command = "heegner";
            out = cmd_heegner(cfg, level);
        } else if (geometric->parsed()) {
            command = "geometric";
            out = cmd_geometric(cfg, level);
        } else if (theta->parsed()) {
            command = "theta";
            out = cmd_theta(cfg, m_level, horizon, rset);
        } else {
            command = "verify";
            auto reports = run_suite(suite, cfg);
            Json doc = suite_document(reports, cfg);
            if (cfg.format == "table")
                std::cout << suite_table(reports);
            else
                std::cout << doc.dump(2) << '\n';
            return doc["passed"] == doc["total"] ? Ok : Math;
        }

        if (cfg.format == "table") {
            if (out.table)
                std::cout << *out.table;
            else
                flatten(out.result, "", std::cout);
        } else {
            Json doc{{"version", ffh::version}, {"command", command}, {"config", to_json(cfg)},
                     {"result", out.result}};
            std::cout << doc.dump(2) << '\n';
        }
        return Ok;
    } catch (UsageError const & e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (ffh::BudgetExceeded const & e) {
        std::cerr << "error: " << e.what() << '\n';
        return Budget_;
    } catch (ffh::Error const & e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::ParseError ? Usage : Math;
    }
}
