#include "ffh/heegner.hpp"

#include <algorithm>

namespace ffh {

namespace {

void verify(bool ok, std::string const & what)
{
    if (!ok)
        fail(ErrorKind::VerificationFailed, what);
}

QuadElement scalar(QuadFieldPtr const & K, Poly const & a)
{
    return QuadElement::from_poly(K, a);
}

/* (d, w) for d | D. */
Lattice ramified_ideal(QuadFieldPtr const & K, Poly const & d)
{
    return lat_from_generators(K, {scalar(K, d), QuadElement::omega(K)});
}

void require_prime_to(Lattice const & I, Poly const & p, char const * what)
{
    auto const & K = I.field();
    if (!Order::maximal(K).lattice().contains(I))
        fail(ErrorKind::InvalidArgument, std::string(what) + " must be an integral O_K-ideal");
    Poly nm = ideal_norm(I, Order::maximal(K)).num();
    if (!gcd(nm, p).is_one())
        fail(ErrorKind::NotCoprime, std::string(what) + " " + I.str() + " is not prime to " + p.str());
}

} // namespace

Lattice construct_N(QuadFieldPtr const & K, Poly const & n_level)
{
    Lattice N = Order::maximal(K).lattice();
    for (auto const & q : prime_factors(n_level)) {
        auto st = splitting_type(*K, q);
        if (st.chi != 1)
            fail(ErrorKind::NonSplitPrime, q.str() + " does not split");
        Lattice P = lat_from_generators(K, {scalar(K, q), QuadElement::omega(K) - scalar(K, *st.root)});
        N = lattice_product(N, P);
    }
    auto s = quotient_shape(N, Order::maximal(K).lattice());
    verify(s.cyclic && s.index_ideal == n_level.monic(), "O_K/N is not A/n");
    return N;
}

HeegnerConfig check_heegner_hypothesis(QuadFieldPtr const & K, Poly const & n_level, Poly const & p)
{
    if (!p.is_monic() || !is_irreducible(p))
        fail(ErrorKind::NotIrreducible, "tower prime " + p.str());
    if (n_level.is_zero() || !n_level.is_monic())
        fail(ErrorKind::InvalidArgument, "level must be monic");
    if (!n_level.is_constant() && !is_squarefree(n_level))
        fail(ErrorKind::NotSquareFreeLevel, n_level.str());
    for (auto const & q : prime_factors(n_level))
        if (splitting_type(*K, q).chi != 1)
            fail(ErrorKind::NonSplitPrime, q.str() + " does not split in K");
    if (divides(p, n_level))
        fail(ErrorKind::PDividesN, p.str() + " divides " + n_level.str());
    return HeegnerConfig{K, n_level, p, construct_N(K, n_level)};
}

GaloisElement galois_identity(QuadFieldPtr const & K)
{
    return GaloisElement{Order::maximal(K).lattice()};
}

GaloisElement galois_compose(GaloisElement const & a, GaloisElement const & b)
{
    return GaloisElement{lattice_product(a.ideal, b.ideal)};
}

GeometricData geometric_group(QuadFieldPtr const & K, Poly const & p)
{
    GeometricData g{{}, Poly::one(K->base()), {}};
    for (auto const & q : prime_factors(K->D().monic()))
        if (q != p) {
            g.ramified.push_back(q);
            g.m = g.m * q;
        }
    for (auto const & d : monic_divisors(g.m))
        g.divisor_map.emplace_back(d, GaloisElement{ramified_ideal(K, d)});
    return g;
}

HeegnerTower::HeegnerTower(HeegnerConfig cfg, Budget budget)
    : cfg_(std::move(cfg)), budget_(budget)
{}

Order HeegnerTower::order(int n) const
{
    if (n < 0)
        fail(ErrorKind::InvalidArgument, "tower level must be non-negative");
    return Order(cfg_.K, pow(cfg_.p, static_cast<unsigned>(n)));
}

PicGroup const & HeegnerTower::pic(int n)
{
    auto it = pic_.find(n);
    if (it == pic_.end())
        it = pic_.emplace(n, pic_group(order(n), budget_)).first;
    return it->second;
}

GeometricData const & HeegnerTower::geometric()
{
    if (!geo_)
        geo_ = geometric_group(cfg_.K, cfg_.p);
    return *geo_;
}

HeegnerPoint HeegnerTower::heegner_point(int n)
{
    if (auto it = points_.find(n); it != points_.end())
        return it->second;
    Order O = order(n);
    Lattice Nn = lattice_intersect(cfg_.N, O.lattice());
    auto s = quotient_shape(Nn, O.lattice());
    verify(s.cyclic && s.index_ideal == cfg_.n_level, "O_n/N_n is not A/n at level " + std::to_string(n));
    Lattice Ninv = ideal_inverse(Nn, O);
    verify(conductor(Ninv) == O.conductor(), "N_n^{-1} has the wrong conductor");
    HeegnerPoint x{n, make_moduli_point(O.lattice(), Ninv, cfg_.n_level)};
    verify(conductor(x.pt.L) == O.conductor() && conductor(x.pt.Lp) == O.conductor(),
           "Heegner slots do not have conductor p^n");
    points_.emplace(n, x);
    return x;
}

AbGroup::Elem HeegnerTower::class_at(GaloisElement const & s, int n)
{
    require_prime_to(s.ideal, cfg_.p, "Galois ideal");
    return pic(n).class_of(lattice_intersect(s.ideal, order(n).lattice()));
}

GaloisElement HeegnerTower::element_of(int n, std::size_t class_index)
{
    /* smallest mu I with mu in I^{-1} and norm prime to p */
    Order O = order(n);
    Lattice const & I = pic(n).rep(class_index).ideal;
    Lattice Iinv = ideal_inverse(I, O);
    int base = minimal_norm_degree(Iinv);
    for (int bound = base;; ++bound) {
        for (auto const & mu : vectors_up_to(Iinv, bound, true, budget_)) {
            Lattice J = lattice_scale(I, mu);
            if (gcd(ideal_norm(J, O).num(), cfg_.p).is_one())
                return GaloisElement{order_extend(J, Poly::one(cfg_.K->base()))};
        }
        budget_.check(static_cast<std::uint64_t>(bound - base), "element_of reduction");
    }
}

HeegnerPoint HeegnerTower::galois_act(GaloisElement const & s, HeegnerPoint const & x)
{
    require_prime_to(s.ideal, cfg_.p, "Galois ideal");
    Order O = order(x.n);
    Lattice An = lattice_intersect(s.ideal, O.lattice());
    Lattice Ainv = ideal_inverse(An, O);
    Lattice L = lattice_product(Ainv, x.pt.L);
    Lattice Lp = lattice_product(Ainv, x.pt.Lp);
    auto ker = quotient_shape(x.pt.L, L);
    auto expect = quotient_shape(An, O.lattice());
    verify(ker.d1 == expect.d1 && ker.d2 == expect.d2, "isogeny kernel is not O_n/A_n");
    return HeegnerPoint{x.n, make_moduli_point(L, Lp, x.pt.level)};
}

std::vector<AbGroup::Elem> HeegnerTower::g1_at_level(int n)
{
    std::vector<AbGroup::Elem> gens;
    for (auto const & q : geometric().ramified)
        gens.push_back(class_at(GaloisElement{ramified_ideal(cfg_.K, q)}, n));
    return subgroup_elements(pic(n).group(), gens);
}

std::optional<ModuliPoint> HeegnerTower::verify_geometric_level(Poly const & d, int n)
{
    auto const & geo = geometric();
    if (!divides(d, geo.m))
        fail(ErrorKind::NotDivisor, d.str() + " does not divide " + geo.m.str());
    auto x = heegner_point(n);
    auto y = galois_act(GaloisElement{ramified_ideal(cfg_.K, d.monic())}, x);
    return hecke_member(x.pt, y.pt, d, budget_);
}

std::vector<Lattice> const & HeegnerTower::cyclic_ideals(int degree_bound)
{
    if (cyclic_ideals_ && cyclic_bound_ == degree_bound)
        return *cyclic_ideals_;
    auto const & K = cfg_.K;
    auto const & f = K->base();
    std::vector<Lattice> out;
    std::uint64_t work = 0;
    for (int deg = 0; deg <= degree_bound; ++deg) {
        std::uint64_t qd = 1;
        for (int i = 0; i < deg; ++i)
            qd *= f.order();
        work += qd * qd;
        budget_.check(work, "cyclic ideal enumeration");
        auto bs = polys_below_degree(f, deg);
        for (std::uint64_t r = 0; r < qd; ++r) {
            Poly a = Poly::from_index(f, qd + r);
            if (!gcd(a, cfg_.p).is_one())
                continue;
            Poly Dm = K->D() % a;
            for (auto const & b : bs)
                if (b * b % a == Dm)
                    out.push_back(lat_from_generators(K, {scalar(K, a), QuadElement::omega(K) + scalar(K, b)}));
        }
    }
    cyclic_ideals_ = std::move(out);
    cyclic_bound_ = degree_bound;
    return *cyclic_ideals_;
}

GeometricCertificate HeegnerTower::is_geometric(GaloisElement const & s, int degree_bound,
                                                std::vector<int> const & levels)
{
    std::vector<std::pair<int, AbGroup::Elem>> target;
    for (int n : levels)
        target.emplace_back(n, class_at(s, n));
    auto const & ideals = cyclic_ideals(std::max(degree_bound, 0));
    GeometricCertificate cert{false, std::nullopt, 0};
    for (auto const & D : ideals) {
        ++cert.searched;
        bool all = true;
        for (auto const & [n, cls] : target)
            if (pic(n).class_of(lattice_intersect(D, order(n).lattice())) != cls) {
                all = false;
                break;
            }
        if (all) {
            cert.geometric = true;
            cert.ideal = D;
            return cert;
        }
    }
    return cert;
}

ModuliPoint HeegnerTower::lifted_point_x_prime(int n)
{
    auto const & geo = geometric();
    Order O = order(n);
    Lattice Nn = lattice_intersect(cfg_.N, O.lattice());
    Lattice Mn = lattice_intersect(ramified_ideal(cfg_.K, geo.m), O.lattice());
    Lattice top = lattice_product(ideal_inverse(Nn, O), ideal_inverse(Mn, O));
    ModuliPoint xp = make_moduli_point(O.lattice(), top, geo.m * cfg_.n_level);
    auto x = heegner_point(n);
    auto parts = full_degeneracy(xp, geo.m, cfg_.n_level);
    for (std::size_t i = 0; i < parts.size(); ++i)
        verify(parts[i] == galois_act(geo.divisor_map[i].second, x).pt,
               "full degeneracy of x'_n differs from the G_1-orbit at d = " + geo.divisor_map[i].first.str());
    return xp;
}

ThetaResult HeegnerTower::choose_theta(int m_level, std::vector<GaloisElement> const & R, int degree_bound,
                                       int horizon)
{
    if (horizon <= m_level || m_level < 0)
        fail(ErrorKind::InvalidArgument, "horizon must exceed m_level");
    auto tm = tower_map(pic(horizon), pic(m_level));
    auto const & G = pic(horizon).group();
    std::size_t examined = 0;
    for (auto const & k : tm.kernel) {
        ++examined;
        auto theta = element_of(horizon, G.index(k));
        bool ok = true;
        for (auto const & s : R)
            if (is_geometric(galois_compose(theta, s), degree_bound, {horizon}).geometric) {
                ok = false;
                break;
            }
        if (ok)
            return ThetaResult{theta, k, examined};
    }
    fail(ErrorKind::NoWitnessInHorizon,
         "no theta in ker(Pic(O_" + std::to_string(horizon) + ") -> Pic(O_" + std::to_string(m_level) + "))");
}

std::vector<AbGroup::Elem> HeegnerTower::subgroup_classes(int n, OrbitSubgroup which, int lookahead)
{
    auto const & G = pic(n).group();
    switch (which) {
    case OrbitSubgroup::Trivial:
        return {G.zero()};
    case OrbitSubgroup::G1:
        return g1_at_level(n);
    case OrbitSubgroup::Full: {
        std::vector<AbGroup::Elem> all;
        for (std::size_t i = 0; i < G.order(); ++i)
            all.push_back(G.element(i));
        return all;
    }
    case OrbitSubgroup::TorsionApprox:
        break;
    }
    if (lookahead < 1)
        fail(ErrorKind::InvalidArgument, "lookahead must be positive");
    auto const & H = pic(n + lookahead).group();
    auto tm = tower_map(pic(n + lookahead), pic(n));
    std::set<std::size_t> keep;
    for (std::size_t i = 0; i < H.order(); ++i) {
        auto y = H.element(i);
        auto img = tm.apply(G, y);
        if (H.element_order(y) == G.element_order(img))
            keep.insert(G.index(img));
    }
    std::vector<AbGroup::Elem> out;
    for (auto i : keep)
        out.push_back(G.element(i));
    return out;
}

std::vector<ModuliPoint> HeegnerTower::g0_orbit(HeegnerPoint const & x, OrbitSubgroup which, int lookahead)
{
    std::vector<ModuliPoint> orbit;
    for (auto const & c : subgroup_classes(x.n, which, lookahead))
        orbit.push_back(galois_act(element_of(x.n, pic(x.n).group().index(c)), x).pt);
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

} // namespace ffh
