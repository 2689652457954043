#include "ffh/classgroup.hpp"

#include <algorithm>
#include <numeric>

namespace ffh {

namespace {

std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

int multiplicity(Poly m, Poly const & ell)
{
    int v = 0;
    while (divides(ell, m)) {
        m = exact_div(m, ell);
        ++v;
    }
    return v;
}

/* Affine points of y^2 = D(x) over A/pi. */
std::int64_t affine_points(Poly const & D, Poly const & pi)
{
    auto const & f = D.field();
    std::uint64_t Q = pi.norm();
    std::int64_t count = 0;
    for (auto const & x : polys_below_degree(f, pi.degree())) {
        Poly v(f);
        for (int k = D.degree(); k >= 0; --k)
            v = (v * x + Poly::constant(f, D.coeff(k))) % pi;
        if (v.is_zero())
            count += 1;
        else if (powmod(v, (Q - 1) / 2, pi).is_one())
            count += 2;
    }
    return count;
}

ClassRep make_rep(Lattice const & ideal)
{
    return ClassRep{homothety_key(ideal).key, ideal};
}

GroupClosure<ClassRep> pic_closure(Order const & O, Budget const & budget)
{
    auto mul = [](ClassRep const & a, ClassRep const & b) {
        return ClassRep{homothety_key(lattice_product(a.key, b.key)).key,
                        lattice_product(a.ideal, b.ideal)};
    };
    return GroupClosure<ClassRep>(make_rep(O.lattice()), mul, budget.max_enumeration);
}

/* Proper O-ideals above the primes of degree deg prime to the conductor. */
std::vector<Lattice> prime_ideals_of_degree(Order const & O, int deg)
{
    auto const & K = O.field();
    std::vector<Lattice> out;
    for (auto const & ell : monic_irreducibles(K->base(), deg)) {
        if (divides(ell, O.conductor()))
            continue;
        for (auto const & P : primes_above(K, ell))
            out.push_back(lattice_intersect(P, O.lattice()));
    }
    return out;
}

} // namespace

std::vector<std::int64_t> l_polynomial(QuadField const & K)
{
    auto const & f = K.base();
    int g = K.genus();
    std::int64_t q = f.order();
    bool ramified = K.infinity_type() == InfinityType::Ramified;
    /* s_i = sum of i-th powers of the Frobenius roots = q^i + 1 - N_i */
    std::vector<std::int64_t> s(g + 1, 0);
    for (int i = 1; i <= g; ++i) {
        Poly pi = monic_irreducibles(f, i).front();
        std::int64_t n = affine_points(K.D(), pi) + (ramified ? 1 : (i % 2 == 0 ? 2 : 0));
        s[i] = static_cast<std::int64_t>(ipow(q, i)) + 1 - n;
    }
    /* Newton's identities for the elementary symmetric functions */
    std::vector<std::int64_t> e(g + 1, 0);
    e[0] = 1;
    for (int j = 1; j <= g; ++j) {
        std::int64_t acc = 0;
        for (int k = 1; k <= j; ++k)
            acc += (k % 2 == 1 ? 1 : -1) * e[j - k] * s[k];
        if (acc % j != 0)
            fail(ErrorKind::VerificationFailed, "Newton identity is not integral");
        e[j] = acc / j;
    }
    std::vector<std::int64_t> a(2 * g + 1, 0);
    for (int j = 0; j <= g; ++j)
        a[j] = (j % 2 == 0 ? 1 : -1) * e[j];
    for (int j = 0; j < g; ++j)
        a[2 * g - j] = static_cast<std::int64_t>(ipow(q, g - j)) * a[j];
    return a;
}

std::int64_t class_number_zeta(QuadField const & K)
{
    if (K.infinity_type() != InfinityType::Ramified)
        fail(ErrorKind::InertCaseUnsupported, "class_number_zeta needs deg D odd");
    auto a = l_polynomial(K);
    return std::accumulate(a.begin(), a.end(), std::int64_t{0});
}

std::int64_t pic_card_maximal(QuadField const & K)
{
    auto a = l_polynomial(K);
    std::int64_t h = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    return K.infinity_type() == InfinityType::Ramified ? h : 2 * h;
}

std::uint64_t unit_residue_card(Order const & O, Poly const & m, Budget const & budget)
{
    auto const & K = O.field();
    auto const & f = K->base();
    if (m.is_zero())
        fail(ErrorKind::ZeroPolynomial, "unit_residue_card modulus");
    Lattice mOK = lattice_scale(Order::maximal(K).lattice(), QuadElement::from_poly(K, m));
    Lattice S = lattice_intersect(mOK, O.lattice());
    /* S in the basis (1, c w) of O is [[alpha, 0], [beta, gamma]] */
    Poly const & c = O.conductor();
    Poly alpha = S.a(), gamma = exact_div(S.c(), c);
    std::uint64_t size = alpha.norm() * gamma.norm();
    if (size == 1)
        return 1;
    budget.check(size, "unit_residue_card residues");
    Lattice const & OL = O.lattice();
    std::uint64_t units = 0;
    auto ss = polys_below_degree(f, alpha.degree());
    auto ts = polys_below_degree(f, gamma.degree());
    for (auto const & s : ss)
        for (auto const & t : ts) {
            QuadElement u(K, s, t * c);
            if (u.is_zero())
                continue;
            if (lattice_sum(lattice_scale(OL, u), S) == OL)
                ++units;
        }
    return units;
}

std::uint64_t unit_residue_card_formula(QuadField const & K, Poly const & m)
{
    std::uint64_t r = 1;
    for (auto const & ell : prime_factors(m)) {
        int v = multiplicity(m, ell);
        std::uint64_t N = ell.norm();
        switch (splitting_type(K, ell).chi) {
        case 1: {
            std::uint64_t u = ipow(N, v) - ipow(N, v - 1);
            r *= u * u;
            break;
        }
        case -1:
            r *= ipow(N, 2 * v) - ipow(N, 2 * v - 2);
            break;
        default:
            r *= ipow(N, 2 * v) - ipow(N, 2 * v - 1);
            break;
        }
    }
    return r;
}

std::uint64_t phi_A(Poly const & c)
{
    std::uint64_t r = 1;
    for (auto const & ell : prime_factors(c)) {
        int v = multiplicity(c, ell);
        r *= ipow(ell.norm(), v) - ipow(ell.norm(), v - 1);
    }
    return r;
}

std::uint64_t pic_card_exact(Order const & O)
{
    auto const & K = *O.field();
    std::uint64_t num = static_cast<std::uint64_t>(pic_card_maximal(K)) *
                        unit_residue_card_formula(K, O.conductor());
    std::uint64_t den = phi_A(O.conductor()) * unit_index(K, O.conductor());
    if (num % den != 0)
        fail(ErrorKind::VerificationFailed, "class number formula is not integral");
    return num / den;
}

std::vector<Lattice> primes_above(QuadFieldPtr const & K, Poly const & ell)
{
    auto st = splitting_type(*K, ell);
    QuadElement w = QuadElement::omega(K);
    QuadElement L = QuadElement::from_poly(K, ell);
    if (st.chi == -1)
        return {};
    if (st.chi == 0)
        return {lat_from_generators(K, {L, w})};
    Poly r = *st.root;
    Poly r2 = (-r) % ell;
    std::vector<Lattice> out{lat_from_generators(K, {L, w - QuadElement::from_poly(K, r)})};
    if (r2 != r)
        out.push_back(lat_from_generators(K, {L, w - QuadElement::from_poly(K, r2)}));
    return out;
}

PicGroup::PicGroup(Order order, Presented<ClassRep> data)
    : order_(std::move(order)), data_(std::move(data))
{}

std::vector<Lattice> PicGroup::generators() const
{
    std::vector<Lattice> out;
    for (std::size_t t = 0; t < group().rank(); ++t)
        out.push_back(rep(group().basis(t)).ideal);
    return out;
}

std::size_t PicGroup::index_of(Lattice const & I) const
{
    if (!(I.field()->D() == order_.field()->D()))
        fail(ErrorKind::FieldMismatch, "ideal and order live in different fields");
    if (conductor(I) != order_.conductor())
        fail(ErrorKind::OrderMismatch, "ideal is not proper for this order");
    auto key = homothety_key(I).key;
    auto it = data_.index.find(ClassRep{key, key});
    if (it == data_.index.end())
        fail(ErrorKind::VerificationFailed, "class missing from Pic: " + I.str());
    return it->second;
}

PicGroup pic_group(Order const & O, Budget const & budget)
{
    std::uint64_t target = pic_card_exact(O);
    budget.check(target, "pic_group order");
    auto cl = pic_closure(O, budget);
    for (int deg = 1; cl.size() < target; ++deg) {
        if (deg > budget.max_prime_degree)
            throw BudgetExceeded(static_cast<std::uint64_t>(budget.max_prime_degree),
                                 "pic_group prime degree");
        for (auto const & I : prime_ideals_of_degree(O, deg)) {
            cl.add_generator(make_rep(I));
            if (cl.size() >= target)
                break;
        }
    }
    if (cl.size() != target)
        fail(ErrorKind::VerificationFailed, "Pic enumeration overshoots the class number formula");
    return PicGroup(O, cl.finish());
}

PicGroup pic_group_exhaustive(Order const & O, int max_degree, Budget const & budget)
{
    auto cl = pic_closure(O, budget);
    for (int deg = 1; deg <= max_degree; ++deg)
        for (auto const & I : prime_ideals_of_degree(O, deg))
            cl.add_generator(make_rep(I));
    return PicGroup(O, cl.finish());
}

HnStruct hn_group(QuadFieldPtr const & K, Poly const & p, int n, Budget const & budget)
{
    auto const & f = K->base();
    if (!is_irreducible(p) || !p.is_monic())
        fail(ErrorKind::NotIrreducible, "tower prime " + p.str());
    if (n < 0)
        fail(ErrorKind::InvalidArgument, "level must be non-negative");
    std::int64_t ch = f.characteristic();
    HnStruct h{n, AbGroup(), 1, 0, 0, 0, 0, 1};
    int s = 0;
    for (std::int64_t pw = 1; pw < n + 1; pw *= ch)
        ++s;
    h.s_bound = s;
    if (n <= 1)
        return h;

    std::int64_t log_q = f.degree();
    h.gen_bound_num = log_q * p.degree() * (n - 1);
    h.gen_bound_den = s;
    std::int64_t g = std::gcd(h.gen_bound_num, h.gen_bound_den);
    h.gen_bound_num /= g;
    h.gen_bound_den /= g;

    Poly M = pow(p, static_cast<unsigned>(n));
    int span = p.degree() * (n - 1);
    std::uint64_t expected = ipow(p.norm(), n - 1);
    budget.check(expected * expected, "hn_group ambient");
    /* units X + Y w with X = 1 mod p, Y = 0 mod p; key Y/X mod p^n */
    std::map<Poly, std::uint64_t> coset_size;
    auto polys = polys_below_degree(f, span);
    for (auto const & u : polys) {
        Poly X = Poly::one(f) + p * u;
        Poly Xinv = inverse_mod(X, M);
        for (auto const & v : polys)
            ++coset_size[(p * v) * Xinv % M];
    }
    if (coset_size.size() != expected)
        fail(ErrorKind::VerificationFailed, "H_n has the wrong number of cosets");
    for (auto const & [key, cnt] : coset_size)
        if (cnt != expected)
            fail(ErrorKind::VerificationFailed, "H_n coset of the wrong size");

    Poly D = K->D() % M;
    auto mul = [D, M](Poly const & y1, Poly const & y2) {
        Poly den = (Poly::one(y1.field()) + D * y1 % M * y2) % M;
        return (y1 + y2) * inverse_mod(den, M) % M;
    };
    GroupClosure<Poly> cl(Poly(f), mul, budget.max_enumeration);
    for (auto const & [key, cnt] : coset_size) {
        if (cl.size() == expected)
            break;
        cl.add_generator(key);
    }
    auto pres = cl.finish();
    h.group = pres.group;
    h.order = h.group.order();
    if (h.order != expected)
        fail(ErrorKind::VerificationFailed, "H_n closure has the wrong order");
    for (auto d : h.group.invariant_factors())
        if (!is_power_of(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(ch)))
            fail(ErrorKind::VerificationFailed, "H_n is not a p-group");
    h.min_generators = static_cast<int>(h.group.rank());
    if (h.group.rank() > 0)
        for (std::int64_t e = h.group.invariant_factors().back(); e > 1; e /= ch)
            ++h.annihilator_exp;
    return h;
}

AbGroup::Elem TowerMap::apply(AbGroup const & target, AbGroup::Elem const & x) const
{
    AbGroup::Elem y = target.zero();
    for (std::size_t t = 0; t < images.size(); ++t)
        y = target.add(y, target.mul(images[t], x.at(t)));
    return y;
}

TowerMap tower_map(PicGroup const & from, PicGroup const & to)
{
    Poly const & c = to.order().conductor();
    if (!divides(c, from.order().conductor()))
        fail(ErrorKind::NotDivisor, "target conductor must divide the source conductor");
    TowerMap tm;
    for (auto const & I : from.generators())
        tm.images.push_back(to.class_of(order_extend(I, c)));
    tm.surjective = subgroup_elements(to.group(), tm.images).size() == to.size();
    for (std::size_t idx = 0; idx < from.size(); ++idx) {
        auto x = from.group().element(idx);
        if (to.group().is_zero(tm.apply(to.group(), x)))
            tm.kernel.push_back(x);
    }
    tm.kernel_is_p_group =
        is_power_of(tm.kernel.size(), from.order().field()->base().characteristic());
    return tm;
}

} // namespace ffh
