#include "ffh/suites.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "ffh/version.hpp"

namespace ffh {

namespace {

using Rng = std::mt19937_64;

/* Independent stream per suite so "all" reproduces each suite exactly. */
Rng suite_rng(RunConfig const & cfg, std::string const & name)
{
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : name)
        h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return Rng(seq);
}

std::uint64_t ipow_u64(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

std::size_t pick(Rng & rng, std::size_t n)
{
    return static_cast<std::size_t>(rng() % n);
}

Poly random_poly(FiniteField const & f, int max_deg, Rng & rng)
{
    std::vector<FiniteField::Elem> c(static_cast<std::size_t>(max_deg) + 1);
    for (auto & x : c)
        x = static_cast<FiniteField::Elem>(pick(rng, f.order()));
    return Poly(f, std::move(c));
}

Poly random_monic(FiniteField const & f, int deg, Rng & rng)
{
    return Poly::from_index(f, ipow_u64(f.order(), deg) + pick(rng, ipow_u64(f.order(), deg)));
}

Poly random_squarefree(FiniteField const & f, int deg, Rng & rng)
{
    for (;;) {
        auto D = random_monic(f, deg, rng);
        if (is_squarefree(D))
            return D;
    }
}

Poly random_prime(FiniteField const & f, int max_deg, Rng & rng)
{
    int d = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(max_deg)));
    auto ps = monic_irreducibles(f, d);
    return ps[pick(rng, ps.size())];
}

QuadElement random_element(QuadFieldPtr const & K, int max_deg, Rng & rng, bool fractional)
{
    auto const & f = K->base();
    for (;;) {
        auto x = random_poly(f, max_deg, rng);
        auto y = random_poly(f, max_deg, rng);
        Poly d = Poly::one(f);
        if (fractional)
            do
                d = random_poly(f, 2, rng);
            while (d.is_zero());
        QuadElement z(K, x, y, d);
        if (!z.is_zero())
            return z;
    }
}

Lattice random_lattice(QuadFieldPtr const & K, int max_deg, Rng & rng, bool fractional)
{
    for (;;) {
        std::vector<QuadElement> g;
        std::size_t n = 2 + pick(rng, 2);
        for (std::size_t i = 0; i < n; ++i)
            g.push_back(random_element(K, max_deg, rng, fractional));
        try {
            return lat_from_generators(K, g);
        } catch (Error const &) {
        }
    }
}

Lattice descend(Lattice L, std::vector<Poly> const & primes, Rng & rng)
{
    for (auto const & q0 : primes) {
        auto rep = sublattices_prime(L, q0);
        L = rep.entries[pick(rng, rep.entries.size())].first;
    }
    return L;
}

Json lattice_str(Lattice const & l)
{
    return l.str();
}

class Recorder {
  public:
    explicit Recorder(std::string suite) { rep_.suite = std::move(suite); }

    void run(std::string name, std::function<bool(Json &)> const & body)
    {
        Json detail = Json::object();
        bool ok = false;
        try {
            ok = body(detail);
        } catch (BudgetExceeded const &) {
            throw;
        } catch (Error const & e) {
            detail["error"] = e.what();
            ok = false;
        }
        rep_.checks.push_back(SuiteCheck{std::move(name), ok, std::move(detail)});
    }

    SuiteReport take() { return std::move(rep_); }

  private:
    SuiteReport rep_;
};

QuadFieldPtr field(std::uint32_t q, char const * D)
{
    auto f = FiniteField::prime(q);
    return make_field(f, parse_poly(f, D));
}

/* ---------------------------------------------------------------- suites */

SuiteReport suite_hn(RunConfig const & cfg)
{
    Recorder rec("hn");
    auto rng = suite_rng(cfg, "hn");
    auto budget = budget_from_config(cfg);
    struct Case {
        QuadFieldPtr K;
        int max_n;
    };
    for (auto const & c : {Case{field(3, "T^3+2*T+1"), 5}, Case{field(5, "T^3+T"), 4}}) {
        auto const & f = c.K->base();
        auto ps = monic_irreducibles(f, 1);
        Poly p = ps[pick(rng, ps.size())];
        for (int n = 1; n <= c.max_n; ++n) {
            std::string name = "q=" + std::to_string(f.order()) + " D=" + c.K->D().str() + " p=" + p.str() +
                               " n=" + std::to_string(n);
            rec.run(name, [&](Json & d) {
                auto h = hn_group(c.K, p, n, budget);
                bool order_ok = h.order == ipow_u64(p.norm(), n - 1);
                bool ppow = true;
                for (auto v : h.group.invariant_factors())
                    ppow = ppow && is_power_of(static_cast<std::uint64_t>(v), f.characteristic());
                bool ann = h.annihilator_exp <= h.s_bound;
                bool gens = h.min_generators * h.gen_bound_den >= h.gen_bound_num;
                d = to_json(h);
                d["order"] = h.order;
                d["expected_order"] = ipow_u64(p.norm(), n - 1);
                d["p_power_factors"] = ppow;
                d["annihilator_ok"] = ann;
                d["generators_ok"] = gens;
                return order_ok && ppow && ann && gens;
            });
        }
    }
    return rec.take();
}

SuiteReport suite_classnum(RunConfig const & cfg)
{
    Recorder rec("classnum");
    auto rng = suite_rng(cfg, "classnum");
    auto budget = budget_from_config(cfg);

    auto check = [&](QuadFieldPtr const & K, Poly const & c) {
        rec.run("q=" + std::to_string(K->base().order()) + " D=" + K->D().str() + " c=" + c.str(), [&](Json & d) {
            Order O(K, c);
            auto G = pic_group(O, budget);
            auto exact = pic_card_exact(O);
            d["enumerated"] = G.size();
            d["formula"] = exact;
            d["group"] = to_json(G.group());
            bool ok = G.size() == exact;
            if (c.is_one() && K->infinity_type() == InfinityType::Ramified) {
                auto z = class_number_zeta(*K);
                d["zeta"] = z;
                ok = ok && static_cast<std::int64_t>(G.size()) == z;
            }
            return ok;
        });
    };

    auto K0 = field(3, "T^3+2*T+1");
    rec.run("running field class number 7", [&](Json & d) {
        auto z = class_number_zeta(*K0);
        d["zeta"] = z;
        return z == 7;
    });
    for (std::uint32_t q : {3u, 5u})
        for (int deg : {3, 5}) {
            auto f = FiniteField::prime(q);
            auto K = make_field(f, random_squarefree(f, deg, rng));
            auto good = monic_irreducibles(f, 1);
            std::rotate(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(pick(rng, good.size())), good.end());
            Poly p = good[0], r = good[1];
            for (auto const & c : {Poly::one(f), p, p * p, p * r})
                check(K, c);
        }
    return rec.take();
}

SuiteReport suite_sublattice(RunConfig const & cfg)
{
    Recorder rec("sublattice");
    auto rng = suite_rng(cfg, "sublattice");
    std::vector<QuadFieldPtr> fields{field(3, "T^3+2*T+1"), field(5, "T^3+T")};
    for (int i = 0; i < 20; ++i) {
        auto K = fields[static_cast<std::size_t>(i) % fields.size()];
        auto const & f = K->base();
        Lattice L = random_lattice(K, 2, rng, pick(rng, 2) == 0);
        Poly c = conductor(L);
        while (c.is_one()) {
            L = descend(L, {random_prime(f, 2, rng)}, rng);
            c = conductor(L);
        }
        auto primes = prime_factors(c);
        Poly q0 = primes[pick(rng, primes.size())];
        rec.run("case " + std::to_string(i) + " q0=" + q0.str() + " c=" + c.str(), [&](Json & d) {
            auto rep = sublattices_prime(L, q0);
            Poly down = exact_div(c, q0);
            Lattice special = lattice_scale(order_extend(L, down), QuadElement::from_poly(K, q0));
            std::size_t n_down = 0, n_up = 0;
            bool special_ok = true;
            for (auto const & [La, cond] : rep.entries) {
                if (cond == down) {
                    ++n_down;
                    special_ok = special_ok && La == special;
                } else if (cond == c * q0)
                    ++n_up;
            }
            d["Lb"] = lattice_str(L);
            d["count"] = rep.entries.size();
            d["count_down"] = n_down;
            d["count_up"] = n_up;
            d["distinguished"] = special_ok;
            return rep.classified && rep.entries.size() == q0.norm() + 1 && n_down == 1 && n_up == q0.norm() &&
                   special_ok;
        });
    }
    return rec.take();
}

SuiteReport suite_factor(RunConfig const & cfg)
{
    Recorder rec("factor");
    auto rng = suite_rng(cfg, "factor");
    std::vector<QuadFieldPtr> fields{field(3, "T^3+2*T+1"), field(5, "T^3+T")};
    int done = 0;
    while (done < 50) {
        auto K = fields[static_cast<std::size_t>(done) % fields.size()];
        auto const & f = K->base();
        Lattice Lb = random_lattice(K, 1, rng, pick(rng, 2) == 0);
        std::vector<Poly> primes;
        std::size_t steps = 1 + pick(rng, 3);
        for (std::size_t i = 0; i < steps; ++i)
            primes.push_back(random_prime(f, 2, rng));
        Lattice La = descend(Lb, primes, rng);
        if (!quotient_shape(La, Lb).cyclic)
            continue;
        rec.run("case " + std::to_string(done), [&](Json & d) {
            auto F = canonical_factorization(La, Lb);
            bool prod = F.d == F.d1 * F.d2 * F.dprime;
            bool coprime = gcd(F.c, F.dprime).is_one();
            bool conds = F.c1 == F.c * F.d1 && F.c2 == F.c * F.d2;
            auto s = quotient_shape(F.Dideal, Order::maximal(K).lattice());
            bool dcyc = s.cyclic && s.index_ideal == F.dprime;
            Order Oc(K, F.c);
            bool ident =
                lattice_product(ideal_inverse(lattice_intersect(F.Dideal, Oc.lattice()), Oc), F.mid1) == F.mid2;
            d["q"] = f.order();
            d["d"] = to_json(F.d);
            d["d1"] = to_json(F.d1);
            d["d2"] = to_json(F.d2);
            d["dprime"] = to_json(F.dprime);
            d["c"] = to_json(F.c);
            d["identity"] = ident;
            return prod && coprime && conds && dcyc && ident;
        });
        ++done;
    }
    return rec.take();
}

SuiteReport suite_heegner(RunConfig const & cfg)
{
    Recorder rec("heegner");
    auto rng = suite_rng(cfg, "heegner");
    HeegnerTower tw(heegner_from_config(cfg), budget_from_config(cfg));
    auto const & K = tw.field();
    auto const & f = K->base();
    auto const & p = tw.config().p;
    auto const & nl = tw.config().n_level;

    for (int n = 0; n <= 5; ++n)
        rec.run("x_" + std::to_string(n) + " conductors and level structure", [&](Json & d) {
            auto x = tw.heegner_point(n);
            Poly c = pow(p, static_cast<unsigned>(n));
            auto O = tw.order(n);
            auto sn = quotient_shape(lattice_intersect(tw.config().N, O.lattice()), O.lattice());
            auto sx = quotient_shape(x.pt.L, x.pt.Lp);
            d["point"] = to_json(x.pt);
            return conductor(x.pt.L) == c && conductor(x.pt.Lp) == c && sn.cyclic && sn.index_ideal == nl &&
                   sx.cyclic && sx.index_ideal == nl;
        });

    for (int n = 1; n <= 3; ++n)
        rec.run("principal classes act trivially at n=" + std::to_string(n), [&](Json & d) {
            QuadElement lam(K, Poly::one(f), pow(p, static_cast<unsigned>(n)));
            GaloisElement s{lattice_scale(Order::maximal(K).lattice(), lam)};
            auto x = tw.heegner_point(n);
            d["generator"] = lam.str();
            return tw.galois_act(s, x) == x && tw.galois_act(galois_identity(K), x) == x;
        });

    for (int i = 0; i < 50; ++i) {
        int n = 1 + static_cast<int>(pick(rng, 3));
        auto size = tw.pic(n).size();
        auto si = pick(rng, size), ti = pick(rng, size);
        rec.run("action law n=" + std::to_string(n) + " classes " + std::to_string(si) + "," + std::to_string(ti),
                [&](Json & d) {
                    auto s = tw.element_of(n, si), t = tw.element_of(n, ti);
                    auto x = tw.heegner_point(n);
                    bool assoc = tw.galois_act(galois_compose(s, t), x) == tw.galois_act(s, tw.galois_act(t, x));
                    d["associative"] = assoc;
                    return assoc;
                });
    }

    for (int n = 1; n <= 4; ++n)
        rec.run("class compatibility " + std::to_string(n + 1) + "->" + std::to_string(n), [&](Json & d) {
            auto tm = tower_map(tw.pic(n + 1), tw.pic(n));
            auto const & G = tw.pic(n).group();
            bool ok = true;
            for (int k = 0; k < 10; ++k) {
                auto s = tw.element_of(n + 1, pick(rng, tw.pic(n + 1).size()));
                ok = ok && tm.apply(G, tw.class_at(s, n + 1)) == tw.class_at(s, n);
            }
            d["sampled"] = 10;
            return ok;
        });
    return rec.take();
}

SuiteReport suite_hecke(RunConfig const & cfg)
{
    Recorder rec("hecke");
    HeegnerTower tw(heegner_from_config(cfg), budget_from_config(cfg));
    auto const & geo = tw.geometric();
    auto const & nl = tw.config().n_level;
    for (int n = 0; n <= 4; ++n) {
        for (auto const & [dd, s] : geo.divisor_map) {
            auto const & dv = dd;
            rec.run("T_d membership d=" + dv.str() + " n=" + std::to_string(n), [&](Json & d) {
                auto w = tw.verify_geometric_level(dv, n);
                if (w)
                    d["witness"] = to_json(*w);
                return w.has_value();
            });
        }
        rec.run("lifted point n=" + std::to_string(n), [&](Json & d) {
            auto xp = tw.lifted_point_x_prime(n);
            auto parts = full_degeneracy(xp, geo.m, nl);
            auto x = tw.heegner_point(n);
            bool ok = parts.size() == geo.divisor_map.size();
            for (std::size_t i = 0; ok && i < parts.size(); ++i)
                ok = parts[i] == tw.galois_act(geo.divisor_map[i].second, x).pt;
            d["level"] = to_json(xp.level);
            d["components"] = parts.size();
            return ok;
        });
    }
    return rec.take();
}

SuiteReport suite_nongeom(RunConfig const & cfg)
{
    Recorder rec("nongeom");
    auto rng = suite_rng(cfg, "nongeom");
    HeegnerTower tw(heegner_from_config(cfg), budget_from_config(cfg));
    auto const & f = tw.field()->base();
    constexpr int top = 5, bound = 4, cert_level = 3, max_deg = 2;

    auto tm = tower_map(tw.pic(top), tw.pic(1));
    auto to2 = tower_map(tw.pic(top), tw.pic(2));
    auto const & G = tw.pic(top).group();
    auto const & G2 = tw.pic(2).group();
    std::vector<AbGroup::Elem> kernel = tm.kernel;
    for (std::size_t i = kernel.size(); i > 1; --i)
        std::swap(kernel[i - 1], kernel[pick(rng, i)]);

    std::vector<Poly> degrees;
    for (int k = 0; k <= max_deg; ++k)
        for (std::uint64_t r = 0; r < ipow_u64(f.order(), k); ++r)
            degrees.push_back(Poly::from_index(f, ipow_u64(f.order(), k) + r));

    int chosen = 0;
    for (auto const & k : kernel) {
        if (chosen == 5)
            break;
        /* nontrivial at level 2, and no cyclic ideal of degree <= bound in its class at level 3 */
        if (G2.is_zero(to2.apply(G2, k)))
            continue;
        auto s = tw.element_of(top, G.index(k));
        auto cert = tw.is_geometric(s, bound, {cert_level});
        if (cert.geometric)
            continue;
        ++chosen;
        rec.run("class " + std::to_string(G.index(k)) + " of Pic(O_5)", [&](Json & d) {
            std::size_t queries = 0, witnesses = 0;
            for (int n = 3; n <= top; ++n) {
                auto x = tw.heegner_point(n);
                auto y = tw.galois_act(s, x);
                for (auto const & dv : degrees) {
                    for (auto const & [a, b] : {std::pair{x.pt.L, y.pt.L}, std::pair{y.pt.L, x.pt.L},
                                                std::pair{x.pt.Lp, y.pt.Lp}, std::pair{y.pt.Lp, x.pt.Lp}}) {
                        ++queries;
                        witnesses += cyclic_isogenies_between(a, b, dv, tw.budget()).size();
                    }
                }
            }
            d["ideal"] = lattice_str(s.ideal);
            d["certificate_searched"] = cert.searched;
            d["queries"] = queries;
            d["witnesses"] = witnesses;
            return witnesses == 0;
        });
    }
    /* the same search finds the isogeny attached to a split prime */
    rec.run("control: split prime yields a witness", [&](Json & d) {
        auto const & K = tw.field();
        auto const & cf = tw.config();
        for (auto const & ell : monic_irreducibles(f, 1)) {
            if (divides(ell, cf.p * cf.n_level * K->D()) || primes_above(K, ell).empty())
                continue;
            GaloisElement s{primes_above(K, ell).front()};
            std::size_t found = 0;
            for (int n = 3; n <= top; ++n) {
                auto x = tw.heegner_point(n);
                auto y = tw.galois_act(s, x);
                found += !cyclic_isogenies_between(y.pt.L, x.pt.L, ell, tw.budget()).empty() &&
                         !cyclic_isogenies_between(y.pt.Lp, x.pt.Lp, ell, tw.budget()).empty();
            }
            d["prime"] = to_json(ell);
            d["levels_with_witness"] = found;
            return found == 3;
        }
        d["prime"] = nullptr;
        return false;
    });
    rec.run("five certified classes", [&](Json & d) {
        d["found"] = chosen;
        return chosen == 5;
    });
    return rec.take();
}

SuiteReport suite_tower(RunConfig const & cfg)
{
    Recorder rec("tower");
    auto budget = budget_from_config(cfg);
    auto K0 = field_from_config(cfg);
    struct Case {
        QuadFieldPtr K;
        Poly p;
        int top;
    };
    auto K5 = field(5, "T^3+T");
    for (auto const & c : {Case{K0, parse_poly(K0->base(), cfg.p), 5}, Case{K5, parse_poly(K5->base(), "T+1"), 3}}) {
        std::vector<PicGroup> pic;
        for (int n = 0; n <= c.top; ++n)
            pic.push_back(pic_group(Order(c.K, pow(c.p, static_cast<unsigned>(n))), budget));
        auto ch = c.K->base().characteristic();
        std::string tag = "q=" + std::to_string(c.K->base().order()) + " p=" + c.p.str();
        for (int n = 0; n < c.top; ++n)
            rec.run(tag + " map " + std::to_string(n + 1) + "->" + std::to_string(n), [&](Json & d) {
                auto tm = tower_map(pic[static_cast<std::size_t>(n) + 1], pic[static_cast<std::size_t>(n)]);
                d["surjective"] = tm.surjective;
                d["kernel"] = tm.kernel.size();
                d["kernel_p_group"] = tm.kernel_is_p_group;
                /* the kernel of O_1 -> O_K need not be a p-group */
                bool ok = tm.surjective;
                if (n >= 1)
                    ok = ok && tm.kernel_is_p_group && tm.kernel.size() == c.p.norm();
                return ok;
            });
        rec.run(tag + " prime-to-p part stable", [&](Json & d) {
            auto base = prime_to_part(pic[1].group().invariant_factors(), ch);
            bool ok = true;
            for (int n = 2; n <= c.top; ++n)
                ok = ok && prime_to_part(pic[static_cast<std::size_t>(n)].group().invariant_factors(), ch) == base;
            d["prime_to_p"] = base;
            return ok;
        });
    }
    return rec.take();
}

using SuiteFn = SuiteReport (*)(RunConfig const &);

std::vector<std::pair<std::string, SuiteFn>> const & registry()
{
    static std::vector<std::pair<std::string, SuiteFn>> const r{
        {"hn", suite_hn},          {"classnum", suite_classnum}, {"sublattice", suite_sublattice},
        {"factor", suite_factor},  {"heegner", suite_heegner},   {"hecke", suite_hecke},
        {"nongeom", suite_nongeom}, {"tower", suite_tower}};
    return r;
}

} // namespace

std::size_t SuiteReport::passed() const
{
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](auto const & c) { return c.ok; }));
}

std::vector<std::string> const & suite_names()
{
    static std::vector<std::string> const names = [] {
        std::vector<std::string> v;
        for (auto const & [n, fn] : registry())
            v.push_back(n);
        return v;
    }();
    return names;
}

std::vector<SuiteReport> run_suite(std::string const & name, RunConfig const & cfg)
{
    std::vector<SuiteReport> out;
    for (auto const & [n, fn] : registry())
        if (name == "all" || name == n)
            out.push_back(fn(cfg));
    if (out.empty())
        fail(ErrorKind::InvalidArgument, "unknown suite \"" + name + "\"");
    return out;
}

Json to_json(SuiteReport const & r)
{
    Json checks = Json::array();
    for (auto const & c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return Json{{"suite", r.suite}, {"passed", r.passed()}, {"total", r.total()}, {"checks", checks}};
}

Json suite_document(std::vector<SuiteReport> const & reports, RunConfig const & cfg)
{
    Json suites = Json::array();
    std::size_t passed = 0, total = 0;
    for (auto const & r : reports) {
        suites.push_back(to_json(r));
        passed += r.passed();
        total += r.total();
    }
    return Json{{"version", version}, {"config", to_json(cfg)}, {"passed", passed}, {"total", total},
                {"suites", suites}};
}

std::string suite_table(std::vector<SuiteReport> const & reports)
{
    std::ostringstream os;
    std::size_t passed = 0, total = 0;
    for (auto const & r : reports) {
        os << r.suite << ' ' << r.passed() << '/' << r.total() << (r.passed() == r.total() ? " PASS" : " FAIL")
           << '\n';
        for (auto const & c : r.checks)
            if (!c.ok)
                os << "  failed: " << c.name << '\n';
        passed += r.passed();
        total += r.total();
    }
    os << "total " << passed << '/' << total << '\n';
    return os.str();
}

} // namespace ffh
