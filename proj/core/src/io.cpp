#include "ffh/io.hpp"

#include <sstream>

namespace ffh {

namespace {

[[noreturn]] void parse_fail(std::string const & what)
{
    fail(ErrorKind::ParseError, what);
}

Json const & member(Json const & j, char const * key)
{
    if (!j.is_object() || !j.contains(key))
        parse_fail(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get_as(Json const & j, char const * key)
{
    try {
        return j.get<T>();
    } catch (nlohmann::json::exception const &) {
        parse_fail(std::string("bad value for \"") + key + "\"");
    }
}

std::string ratio(std::int64_t num, std::int64_t den)
{
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

} // namespace

Json to_json(Poly const & p)
{
    return p.str();
}

Json to_json(Lattice const & l)
{
    return Json{{"den", l.den().str()}, {"a", l.a().str()}, {"b", l.b().str()}, {"c", l.c().str()}};
}

Json to_json(AbGroup const & g)
{
    return Json{{"invariant_factors", g.invariant_factors()}, {"order", g.order()}};
}

Json to_json(Factorization const & f)
{
    return Json{{"c1", to_json(f.c1)},         {"c2", to_json(f.c2)},     {"c", to_json(f.c)},
                {"d", to_json(f.d)},           {"d1", to_json(f.d1)},     {"d2", to_json(f.d2)},
                {"dprime", to_json(f.dprime)}, {"Dideal", to_json(f.Dideal)},
                {"mid1", to_json(f.mid1)},     {"mid2", to_json(f.mid2)}};
}

Json to_json(SublatticeReport const & r)
{
    Json arr = Json::array();
    for (auto const & [l, c] : r.entries)
        arr.push_back(Json{{"lattice", to_json(l)}, {"conductor", to_json(c)}});
    return arr;
}

Json to_json(ModuliPoint const & pt)
{
    return Json{{"level", to_json(pt.level)}, {"L", to_json(pt.L)}, {"Lp", to_json(pt.Lp)}};
}

Json to_json(HnStruct const & h)
{
    return Json{{"n", h.n},
                {"group", to_json(h.group)},
                {"annihilator_exp", h.annihilator_exp},
                {"min_generators", h.min_generators},
                {"s_bound", h.s_bound},
                {"gen_bound", ratio(h.gen_bound_num, h.gen_bound_den)}};
}

Poly poly_from_json(FiniteField const & f, Json const & j)
{
    if (!j.is_string())
        parse_fail("polynomial must be a string");
    return parse_poly(f, j.get<std::string>());
}

Lattice lattice_from_json(QuadFieldPtr const & K, Json const & j)
{
    if (!j.is_object() || j.size() != 4)
        parse_fail("lattice must be an object with keys den, a, b, c");
    auto const & f = K->base();
    Poly den = poly_from_json(f, member(j, "den"));
    Poly a = poly_from_json(f, member(j, "a"));
    Poly b = poly_from_json(f, member(j, "b"));
    Poly c = poly_from_json(f, member(j, "c"));
    if (den.is_zero())
        parse_fail("lattice denominator is zero");
    try {
        return lat_from_generators(K, {QuadElement(K, a, Poly(f), den), QuadElement(K, b, c, den)});
    } catch (Error const & e) {
        parse_fail(std::string("lattice basis: ") + e.what());
    }
}

Lattice lattice_from_text(QuadFieldPtr const & K, std::string const & text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (nlohmann::json::exception const & e) {
        parse_fail(std::string("lattice JSON: ") + e.what());
    }
    return lattice_from_json(K, j);
}

Json to_json(RunConfig const & c)
{
    return Json{{"q", c.q},
                {"D", c.D},
                {"p", c.p},
                {"n_level", c.n_level},
                {"budget",
                 Json{{"max_enumeration", c.max_enumeration},
                      {"max_prime_degree", c.max_prime_degree},
                      {"degree_bound", c.degree_bound},
                      {"horizon", c.horizon}}},
                {"seed", c.seed},
                {"format", c.format}};
}

RunConfig config_from_json(Json const & j, RunConfig c)
{
    if (!j.is_object())
        parse_fail("config must be a JSON object");
    for (auto const & [key, v] : j.items()) {
        if (key == "q")
            c.q = get_as<std::uint32_t>(v, "q");
        else if (key == "D")
            c.D = get_as<std::string>(v, "D");
        else if (key == "p")
            c.p = get_as<std::string>(v, "p");
        else if (key == "n_level")
            c.n_level = get_as<std::string>(v, "n_level");
        else if (key == "seed")
            c.seed = get_as<std::uint64_t>(v, "seed");
        else if (key == "format")
            c.format = get_as<std::string>(v, "format");
        else if (key == "budget") {
            if (!v.is_object())
                parse_fail("budget must be an object");
            for (auto const & [bk, bv] : v.items()) {
                if (bk == "max_enumeration")
                    c.max_enumeration = get_as<std::uint64_t>(bv, "max_enumeration");
                else if (bk == "max_prime_degree")
                    c.max_prime_degree = get_as<int>(bv, "max_prime_degree");
                else if (bk == "degree_bound")
                    c.degree_bound = get_as<int>(bv, "degree_bound");
                else if (bk == "horizon")
                    c.horizon = get_as<int>(bv, "horizon");
                else
                    parse_fail("unknown budget key \"" + bk + "\"");
            }
        } else
            parse_fail("unknown config key \"" + key + "\"");
    }
    if (c.format != "json" && c.format != "table")
        parse_fail("format must be json or table");
    return c;
}

QuadFieldPtr field_from_config(RunConfig const & c)
{
    auto f = FiniteField::prime(c.q);
    return make_field(f, parse_poly(f, c.D));
}

Budget budget_from_config(RunConfig const & c)
{
    return Budget{c.max_enumeration, c.max_prime_degree};
}

HeegnerConfig heegner_from_config(RunConfig const & c)
{
    auto K = field_from_config(c);
    return check_heegner_hypothesis(K, parse_poly(K->base(), c.n_level), parse_poly(K->base(), c.p));
}

Json field_report(QuadField const & K)
{
    return Json{{"q", K.base().order()},
                {"D", to_json(K.D())},
                {"deg_D", K.D().degree()},
                {"genus", K.genus()},
                {"infinity", std::string(to_string(K.infinity_type()))},
                {"l_polynomial", l_polynomial(K)},
                {"class_number", pic_card_maximal(K)}};
}

std::vector<TowerRow> tower_table(QuadFieldPtr const & K, Poly const & p, int levels, Budget const & budget)
{
    if (levels < 1)
        fail(ErrorKind::InvalidArgument, "levels must be positive");
    if (!is_irreducible(p) || !p.is_monic())
        fail(ErrorKind::NotIrreducible, "tower prime " + p.str());
    std::vector<TowerRow> rows;
    for (int n = 0; n < levels; ++n) {
        Order O(K, pow(p, static_cast<unsigned>(n)));
        auto G = pic_group(O, budget);
        auto h = hn_group(K, p, n, budget);
        rows.push_back(TowerRow{n, G.size(), G.group().invariant_factors(), h.order, h.s_bound, h.gen_bound_num,
                                h.gen_bound_den});
    }
    return rows;
}

std::string tower_csv(std::vector<TowerRow> const & rows)
{
    std::ostringstream os;
    os << "n,|Pic|,factors,|H_n|,s_bound,gen_bound\n";
    for (auto const & r : rows) {
        os << r.n << ',' << r.pic << ',';
        for (std::size_t i = 0; i < r.factors.size(); ++i)
            os << (i ? ";" : "") << r.factors[i];
        if (r.factors.empty())
            os << 1;
        os << ',' << r.hn << ',' << r.s_bound << ',' << ratio(r.gen_num, r.gen_den) << '\n';
    }
    return os.str();
}

Json to_json(TowerRow const & r)
{
    return Json{{"n", r.n},
                {"pic", r.pic},
                {"invariant_factors", r.factors},
                {"hn", r.hn},
                {"s_bound", r.s_bound},
                {"gen_bound", ratio(r.gen_num, r.gen_den)}};
}

} // namespace ffh
