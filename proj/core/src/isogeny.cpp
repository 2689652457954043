#include "ffh/isogeny.hpp"

namespace ffh {

namespace {

QuadElement scalar(QuadFieldPtr const & K, Poly const & a)
{
    return QuadElement::from_poly(K, a);
}

void verify(bool ok, char const * what)
{
    if (!ok)
        fail(ErrorKind::VerificationFailed, what);
}

Poly cyclic_index(Lattice const & l1, Lattice const & l2)
{
    auto s = quotient_shape(l1, l2);
    if (!s.cyclic)
        fail(ErrorKind::NotCyclic, l2.str() + " / " + l1.str() + " is not cyclic");
    return s.index_ideal;
}

} // namespace

SublatticeReport sublattices_prime(Lattice const & Lb, Poly const & q0)
{
    if (!q0.is_monic() || !is_irreducible(q0))
        fail(ErrorKind::NotIrreducible, "sublattice prime " + q0.str());
    auto const & K = Lb.field();
    QuadElement u1 = Lb.basis0(), u2 = Lb.basis1();
    QuadElement Q = scalar(K, q0);

    SublatticeReport rep{q0, {}, false, 0, 0};
    std::vector<QuadElement> lines;
    for (auto const & r : polys_below_degree(K->base(), q0.degree()))
        lines.push_back(u1 + scalar(K, r) * u2);
    lines.push_back(u2);
    for (auto const & v : lines) {
        Lattice La = lat_from_generators(K, {v, Q * u1, Q * u2});
        auto s = quotient_shape(La, Lb);
        verify(s.cyclic && s.index_ideal == q0, "sublattice is not of prime index");
        rep.entries.emplace_back(La, conductor(La));
    }

    Poly c = conductor(Lb);
    if (divides(q0, c)) {
        rep.classified = true;
        Poly down = exact_div(c, q0);
        Lattice special = lattice_scale(order_extend(Lb, down), Q);
        for (auto const & [La, cond] : rep.entries) {
            if (cond == down) {
                ++rep.count_down;
                verify(La == special, "distinguished sublattice differs from q0 O_{c/q0} Lb");
            } else if (cond == c * q0) {
                ++rep.count_up;
            }
        }
        verify(rep.count_down == 1 && rep.count_up == rep.entries.size() - 1,
               "sublattice conductors do not follow the prime-index classification");
    } else {
        for (auto const & [La, cond] : rep.entries)
            ++(cond == c * q0 ? rep.count_up : rep.count_down);
    }
    return rep;
}

Factorization canonical_factorization(Lattice const & La, Lattice const & Lb)
{
    throw_if_field_mismatch(La.field(), Lb.field());
    auto const & K = La.field();
    if (!Lb.contains(La))
        fail(ErrorKind::NotContained, La.str() + " is not contained in " + Lb.str());
    Poly d = cyclic_index(La, Lb);
    Poly c1 = conductor(La), c2 = conductor(Lb);

    Order OK = Order::maximal(K);
    Lattice OKa = lattice_product(OK.lattice(), La);
    Poly c = quotient_shape(Lb, lattice_sum(OKa, Lb)).d2;
    verify(divides(c, c1) && divides(c, c2), "conductor of the chain does not divide c1, c2");

    Lattice mid1 = order_extend(La, c);
    Poly d1 = cyclic_index(La, mid1);
    Poly d2 = exact_div(c2, c);
    Lattice mid2 = lattice_scale(order_extend(Lb, c), scalar(K, d2));
    verify(mid2.contains(mid1), "O_c La is not contained in d2 O_c Lb");
    verify(Lb.contains(mid2), "d2 O_c Lb is not contained in Lb");
    Poly dprime = cyclic_index(mid1, mid2);
    verify(cyclic_index(mid2, Lb) == d2, "index of d2 O_c Lb in Lb is not d2");

    Lattice Lb_inv = ideal_inverse(Lb, Order(K, c2));
    Lattice D = lattice_scale(lattice_product(lattice_product(OK.lattice(), Lb_inv), La),
                              scalar(K, d2).inverse());

    Factorization F{c1, c2, c, d, d1, d2, dprime, D, mid1, mid2};
    verify(d == d1 * d2 * dprime, "d != d1 d2 d'");
    verify(c1 == c * d1 && c2 == c * d2, "c != c1/d1 or c != c2/d2");
    verify(gcd(c, dprime).is_one(), "c and d' are not coprime");
    verify(OK.lattice().contains(D), "D is not an integral ideal");
    verify(conductor(D).is_one(), "D is not an O_K-ideal");
    verify(cyclic_index(D, OK.lattice()) == dprime, "O_K/D is not A/d'");
    Order Oc(K, c);
    Lattice Dc = lattice_intersect(D, Oc.lattice());
    verify(lattice_product(ideal_inverse(Dc, Oc), mid1) == mid2, "d2 O_c Lb != (D cap O_c)^{-1} O_c La");
    return F;
}

std::vector<QuadElement> cyclic_isogenies_between(Lattice const & x, Lattice const & y, Poly const & d,
                                                  Budget const & budget)
{
    throw_if_field_mismatch(x.field(), y.field());
    if (d.is_zero())
        fail(ErrorKind::ZeroPolynomial, "isogeny degree");
    Poly dm = d.monic();
    Lattice T = transporter(y, x);
    int target = dm.degree() + x.volume_degree() - y.volume_degree();
    std::vector<QuadElement> out;
    if (target < minimal_norm_degree(T))
        return out;
    for (auto const & lam : vectors_up_to(T, target, true, budget)) {
        if (lam.norm_degree() != target)
            continue;
        auto s = quotient_shape(lattice_scale(y, lam), x);
        if (s.cyclic && s.index_ideal == dm)
            out.push_back(lam);
    }
    return out;
}

std::strong_ordering ModuliPoint::operator<=>(ModuliPoint const & o) const
{
    if (auto c = level <=> o.level; c != 0)
        return c;
    if (auto c = L <=> o.L; c != 0)
        return c;
    return Lp <=> o.Lp;
}

std::string ModuliPoint::str() const
{
    return "(" + L.str() + ", " + Lp.str() + "; " + level.str() + ")";
}

ModuliPoint make_moduli_point(Lattice const & L, Lattice const & Lp, Poly const & level)
{
    throw_if_field_mismatch(L.field(), Lp.field());
    if (!Lp.contains(L))
        fail(ErrorKind::NotContained, L.str() + " is not contained in " + Lp.str());
    Poly idx = cyclic_index(L, Lp);
    if (idx != level.monic())
        fail(ErrorKind::LevelMismatch, "pair has index " + idx.str() + ", expected " + level.str());
    auto hk = homothety_key(L);
    return ModuliPoint{idx, hk.key, lattice_scale(Lp, hk.lambda)};
}

ModuliPoint scale_point(ModuliPoint const & pt, QuadElement const & lambda)
{
    return make_moduli_point(lattice_scale(pt.L, lambda), lattice_scale(pt.Lp, lambda), pt.level);
}

ModuliPoint degeneracy(ModuliPoint const & pt, Poly const & d, Poly const & m, Poly const & n)
{
    if (!gcd(m, n).is_one())
        fail(ErrorKind::NotCoprime, m.str() + " and " + n.str());
    if (!divides(d, m))
        fail(ErrorKind::NotDivisor, d.str() + " does not divide " + m.str());
    if (pt.level != (m * n).monic())
        fail(ErrorKind::LevelMismatch, "point level " + pt.level.str());
    auto const & K = pt.L.field();
    QuadElement dinv = scalar(K, d).inverse();
    QuadElement dninv = scalar(K, d * n).inverse();
    Lattice first = lattice_intersect(pt.Lp, lattice_scale(pt.L, dinv));
    Lattice second = lattice_intersect(pt.Lp, lattice_scale(pt.L, dninv));
    return make_moduli_point(first, second, n.monic());
}

std::vector<ModuliPoint> full_degeneracy(ModuliPoint const & pt, Poly const & m, Poly const & n)
{
    std::vector<ModuliPoint> out;
    for (auto const & d : monic_divisors(m))
        out.push_back(degeneracy(pt, d, m, n));
    return out;
}

std::optional<ModuliPoint> hecke_member(ModuliPoint const & x, ModuliPoint const & y, Poly const & m,
                                        Budget const & budget)
{
    if (x.level != y.level)
        fail(ErrorKind::LevelMismatch, "points of different levels");
    Poly const & n = x.level;
    if (!gcd(m, n).is_one())
        fail(ErrorKind::NotCoprime, m.str() + " and level " + n.str());
    Poly mm = m.monic();
    for (auto const & t : cyclic_isogenies_between(y.L, x.L, mm, budget)) {
        Lattice M = lattice_scale(y.L, t.inverse());
        ModuliPoint w = make_moduli_point(x.L, lattice_sum(M, x.Lp), mm * n);
        if (degeneracy(w, mm, mm, n) == y && degeneracy(w, Poly::one(n.field()), mm, n) == x)
            return w;
    }
    return std::nullopt;
}

} // namespace ffh
