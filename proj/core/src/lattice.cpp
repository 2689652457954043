#include "ffh/lattice.hpp"

#include <algorithm>
#include <limits>

namespace ffh {

namespace {

struct IVec {
    Poly x, y;
    int w;
};

/* Leading coefficients of (x, y) in the components that attain the weight. */
std::pair<Poly::Elem, Poly::Elem> lead(IVec const & v, int dD)
{
    Poly::Elem lx = (!v.x.is_zero() && 2 * v.x.degree() == v.w) ? v.x.lc() : 0;
    Poly::Elem ly = (!v.y.is_zero() && 2 * v.y.degree() + dD == v.w) ? v.y.lc() : 0;
    return {lx, ly};
}

/* Reduced basis of the integral numerator lattice of l: the leading
 * coefficient vectors of v1, v2 are F_q-independent and w1 <= w2. Then
 * weight(s v1 + t v2) = max(2 deg s + w1, 2 deg t + w2). */
std::pair<IVec, IVec> reduced_basis(Lattice const & l)
{
    auto const & f = l.field()->base();
    int dD = l.field()->D().degree();
    IVec v1{l.a(), Poly(f), 0};
    IVec v2{l.b(), l.c(), 0};
    v1.w = norm_weight(v1.x, v1.y, dD);
    v2.w = norm_weight(v2.x, v2.y, dD);
    for (;;) {
        if (v1.w > v2.w)
            std::swap(v1, v2);
        auto [a1, b1] = lead(v1, dD);
        auto [a2, b2] = lead(v2, dD);
        if (f.sub(f.mul(a1, b2), f.mul(b1, a2)) != 0)
            return {v1, v2};
        Poly::Elem alpha = a1 != 0 ? f.div(a2, a1) : f.div(b2, b1);
        int k = (v2.w - v1.w) / 2;
        v2.x -= v1.x.scaled(alpha).shifted(k);
        v2.y -= v1.y.scaled(alpha).shifted(k);
        v2.w = norm_weight(v2.x, v2.y, dD);
    }
}

std::uint64_t count_below(std::uint32_t q, int max_deg, std::uint64_t cap)
{
    std::uint64_t n = 1;
    for (int i = 0; i <= max_deg; ++i) {
        if (n > cap / q)
            return cap + 1;
        n *= q;
    }
    return n;
}

} // namespace

/* ------------------------------------------------------------------ */

Lattice Lattice::from_canonical(QuadFieldPtr K, Poly den, Poly a, Poly b, Poly c)
{
    for (Poly const * p : {&den, &a, &b, &c})
        if (p->field() != K->base())
            fail(ErrorKind::FieldMismatch, "lattice entry over the wrong constant field");
    if (!den.is_monic() || !a.is_monic() || !c.is_monic())
        fail(ErrorKind::InvalidArgument, "den, a and c must be monic");
    if (b.degree() >= a.degree())
        fail(ErrorKind::InvalidArgument, "deg b must be below deg a");
    if (!gcd(gcd(den, a), gcd(b, c)).is_one())
        fail(ErrorKind::InvalidArgument, "gcd(den, a, b, c) must be 1");
    return Lattice(std::move(K), std::move(den), std::move(a), std::move(b), std::move(c));
}

Lattice canonical_lattice(QuadFieldPtr const & K, std::vector<Row> const & rows, Poly const & den)
{
    Mat2 h = hnf2(rows);
    Poly g = gcd(gcd(den, h.m00), gcd(h.m10, h.m11));
    Poly d = den.monic();
    if (g.is_one())
        return Lattice(K, std::move(d), std::move(h.m00), std::move(h.m10), std::move(h.m11));
    return Lattice(K, exact_div(d, g), exact_div(h.m00, g), exact_div(h.m10, g),
                   exact_div(h.m11, g));
}

QuadElement Lattice::basis0() const
{
    return QuadElement(K_, a_, Poly(a_.field()), den_);
}

QuadElement Lattice::basis1() const
{
    return QuadElement(K_, b_, c_, den_);
}

bool Lattice::contains(QuadElement const & z) const
{
    throw_if_field_mismatch(K_, z.field());
    /* den*z/e = s*(a, 0) + t*(b, c) with s, t in A */
    Poly const & e = z.den();
    auto [t, rt] = divmod(z.y() * den_, e * c_);
    if (!rt.is_zero())
        return false;
    return divides(e * a_, z.x() * den_ - e * t * b_);
}

bool Lattice::contains(Lattice const & o) const
{
    return contains(o.basis0()) && contains(o.basis1());
}

std::strong_ordering Lattice::operator<=>(Lattice const & o) const
{
    if (auto r = den_ <=> o.den_; r != 0)
        return r;
    if (auto r = a_ <=> o.a_; r != 0)
        return r;
    if (auto r = b_ <=> o.b_; r != 0)
        return r;
    return c_ <=> o.c_;
}

std::string Lattice::str() const
{
    return "[" + den_.str() + "; " + a_.str() + ", " + b_.str() + ", " + c_.str() + "]";
}

Order::Order(QuadFieldPtr K, Poly cond)
    : K_(K), cond_(cond.monic()),
      lat_(Lattice::from_canonical(K, Poly::one(K->base()), Poly::one(K->base()),
                                   Poly(K->base()), cond.monic()))
{
    if (cond.is_zero())
        fail(ErrorKind::ZeroPolynomial, "conductor 0");
}

Order Order::maximal(QuadFieldPtr K)
{
    Poly one = Poly::one(K->base());
    return Order(std::move(K), std::move(one));
}

/* ------------------------------------------------------------------ */

Lattice lat_from_generators(QuadFieldPtr const & K, std::vector<QuadElement> const & gens)
{
    if (gens.empty())
        fail(ErrorKind::RankDeficient, "no generators");
    Poly L = Poly::one(K->base());
    for (auto const & g : gens) {
        throw_if_field_mismatch(K, g.field());
        L = lcm(L, g.den());
    }
    std::vector<Row> rows;
    rows.reserve(gens.size());
    for (auto const & g : gens) {
        Poly m = exact_div(L, g.den());
        rows.emplace_back(g.x() * m, g.y() * m);
    }
    return canonical_lattice(K, rows, L);
}

Lattice lattice_sum(Lattice const & l1, Lattice const & l2)
{
    throw_if_field_mismatch(l1.field(), l2.field());
    Poly L = lcm(l1.den(), l2.den());
    Poly m1 = exact_div(L, l1.den()), m2 = exact_div(L, l2.den());
    Poly z(L.field());
    std::vector<Row> rows{{l1.a() * m1, z},
                          {l1.b() * m1, l1.c() * m1},
                          {l2.a() * m2, z},
                          {l2.b() * m2, l2.c() * m2}};
    return canonical_lattice(l1.field(), rows, L);
}

Lattice lattice_dual(Lattice const & l)
{
    Poly z(l.den().field());
    std::vector<Row> rows{{l.c() * l.den(), -(l.b() * l.den())}, {z, l.a() * l.den()}};
    return canonical_lattice(l.field(), rows, l.a() * l.c());
}

Lattice lattice_intersect(Lattice const & l1, Lattice const & l2)
{
    throw_if_field_mismatch(l1.field(), l2.field());
    if (l1 == l2)
        return l1;
    return lattice_dual(lattice_sum(lattice_dual(l1), lattice_dual(l2)));
}

Lattice lattice_product(Lattice const & l1, Lattice const & l2)
{
    throw_if_field_mismatch(l1.field(), l2.field());
    Poly const & D = l1.field()->D();
    Poly const &a1 = l1.a(), &b1 = l1.b(), &c1 = l1.c();
    Poly const &a2 = l2.a(), &b2 = l2.b(), &c2 = l2.c();
    Poly z(a1.field());
    std::vector<Row> rows{{a1 * a2, z},
                          {a1 * b2, a1 * c2},
                          {b1 * a2, c1 * a2},
                          {b1 * b2 + D * c1 * c2, b1 * c2 + c1 * b2}};
    return canonical_lattice(l1.field(), rows, l1.den() * l2.den());
}

Lattice lattice_scale(Lattice const & l, QuadElement const & s)
{
    throw_if_field_mismatch(l.field(), s.field());
    if (s.is_zero())
        fail(ErrorKind::ZeroScale, "scaling a lattice by 0");
    Poly const & D = l.field()->D();
    Poly const &x = s.x(), &y = s.y();
    std::vector<Row> rows{{x * l.a(), y * l.a()},
                          {x * l.b() + y * D * l.c(), x * l.c() + y * l.b()}};
    return canonical_lattice(l.field(), rows, s.den() * l.den());
}

Lattice lattice_combine(Combine mode, Lattice const & l1, Lattice const & l2)
{
    switch (mode) {
    case Combine::Sum: return lattice_sum(l1, l2);
    case Combine::Intersect: return lattice_intersect(l1, l2);
    case Combine::Product: return lattice_product(l1, l2);
    }
    fail(ErrorKind::InvalidArgument, "unknown combine mode");
}

Lattice transporter(Lattice const & l1, Lattice const & l2)
{
    throw_if_field_mismatch(l1.field(), l2.field());
    Lattice t0 = lattice_scale(l2, l1.basis0().inverse());
    Lattice t1 = lattice_scale(l2, l1.basis1().inverse());
    return lattice_intersect(t0, t1);
}

QuotientShape quotient_shape(Lattice const & l1, Lattice const & l2)
{
    throw_if_field_mismatch(l1.field(), l2.field());
    /* Rows of l1's basis in l2's basis: den2/(den1 a2 c2) *
     * [[a1 c2, 0], [b1 c2 - c1 b2, c1 a2]]. */
    Poly const & d2 = l2.den();
    Poly z(d2.field());
    Mat2 m(l1.a() * l2.c() * d2, z, (l1.b() * l2.c() - l1.c() * l2.b()) * d2,
           l1.c() * l2.a() * d2, l1.den() * l2.a() * l2.c());
    if (!m.is_integral())
        fail(ErrorKind::NotContained, l1.str() + " is not contained in " + l2.str());
    auto [e1, e2] = snf2(m);
    bool cyc = e1.is_one();
    Poly idx = e1 * e2;
    return {std::move(e1), std::move(e2), cyc, std::move(idx)};
}

Order multiplier_ring(Lattice const & l)
{
    Lattice t = transporter(l, l);
    if (!t.den().is_one() || !t.a().is_one() || !t.b().is_zero())
        fail(ErrorKind::VerificationFailed, "multiplier ring of " + l.str() + " is not an order");
    return Order(l.field(), t.c());
}

Frac ideal_norm(Lattice const & l, Order const & o)
{
    throw_if_field_mismatch(l.field(), o.field());
    Poly f = conductor(l);
    if (!divides(f, o.conductor()))
        fail(ErrorKind::OrderMismatch,
             l.str() + " is not a module over the order of conductor " + o.conductor().str());
    return Frac(l.a() * l.c(), l.den() * l.den() * o.conductor());
}

Lattice order_extend(Lattice const & l, Poly const & c2)
{
    return lattice_product(Order(l.field(), c2).lattice(), l);
}

/* ------------------------------------------------------------------ */

QuadElement normalize_unit(QuadElement const & z)
{
    if (z.is_zero())
        return z;
    auto const & f = z.field()->base();
    int dD = z.field()->D().degree();
    int w = norm_weight(z.x(), z.y(), dD);
    bool x_leads = !z.x().is_zero() && 2 * z.x().degree() == w;
    Poly::Elem lc = x_leads ? z.x().lc() : z.y().lc();
    if (lc == 1)
        return z;
    auto s = f.inv(lc);
    return QuadElement(z.field(), z.x().scaled(s), z.y().scaled(s), z.den());
}

std::vector<QuadElement> vectors_up_to(Lattice const & l, int bound, bool projective,
                                       Budget const & budget)
{
    auto const & K = l.field();
    auto const & f = K->base();
    auto [v1, v2] = reduced_basis(l);
    int bn = bound + 2 * l.den().degree();
    int ds = bn >= v1.w ? (bn - v1.w) / 2 : -1;
    int dt = bn >= v2.w ? (bn - v2.w) / 2 : -1;
    std::uint64_t cap = budget.max_enumeration;
    std::uint64_t ns = ds >= 0 ? count_below(f.order(), ds, cap) : 1;
    std::uint64_t nt = dt >= 0 ? count_below(f.order(), dt, cap) : 1;
    if (ns > cap || nt > cap || ns * nt > cap)
        throw BudgetExceeded(cap, "lattice vector enumeration up to norm degree " +
                                      std::to_string(bound));
    std::vector<std::pair<int, QuadElement>> found;
    for (std::uint64_t ti = 0; ti < nt; ++ti) {
        Poly t = Poly::from_index(f, ti);
        for (std::uint64_t si = 0; si < ns; ++si) {
            Poly s = Poly::from_index(f, si);
            if (s.is_zero() && t.is_zero())
                continue;
            if (projective && !(t.is_zero() ? s.is_monic() : t.is_monic()))
                continue;
            QuadElement z(K, s * v1.x + t * v2.x, s * v1.y + t * v2.y, l.den());
            if (projective)
                z = normalize_unit(z);
            int nd = z.norm_degree();
            found.emplace_back(nd, std::move(z));
        }
    }
    std::vector<std::size_t> order(found.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return found[i].first < found[j].first; });
    std::vector<QuadElement> out;
    out.reserve(found.size());
    for (auto i : order)
        out.push_back(std::move(found[i].second));
    return out;
}

int minimal_norm_degree(Lattice const & l)
{
    auto [v1, v2] = reduced_basis(l);
    return v1.w - 2 * l.den().degree();
}

std::vector<QuadElement> minimal_vectors(Lattice const & l, std::size_t count,
                                         Budget const & budget)
{
    if (count < 1)
        fail(ErrorKind::InvalidArgument, "count must be at least 1");
    auto v = vectors_up_to(l, minimal_norm_degree(l), false, budget);
    if (v.size() > count)
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(count), v.end());
    return v;
}

std::vector<QuadElement> minimal_classes(Lattice const & l, Budget const & budget)
{
    return vectors_up_to(l, minimal_norm_degree(l), true, budget);
}

std::optional<QuadElement> is_principal(Lattice const & I, Order const & o, Budget const & budget)
{
    Poly f = conductor(I);
    if (f != o.conductor()) {
        if (divides(f, o.conductor()))
            fail(ErrorKind::NotProper, I.str() + " has multiplier ring of conductor " + f.str());
        fail(ErrorKind::OrderMismatch,
             I.str() + " is not a module over the order of conductor " + o.conductor().str());
    }
    int nd = ideal_norm(I, o).degree();
    int md = minimal_norm_degree(I);
    if (md < nd)
        fail(ErrorKind::VerificationFailed, "element of norm below the ideal norm in " + I.str());
    if (md != nd)
        return std::nullopt;
    return minimal_classes(I, budget).front();
}

Lattice ideal_inverse(Lattice const & I, Order const & o)
{
    throw_if_field_mismatch(I.field(), o.field());
    Lattice J = transporter(I, o.lattice());
    if (lattice_product(I, J) != o.lattice())
        fail(ErrorKind::NotInvertible,
             I.str() + " is not invertible over the order of conductor " + o.conductor().str());
    return J;
}

std::optional<QuadElement> homothety_test(Lattice const & l1, Lattice const & l2,
                                          Budget const & budget)
{
    throw_if_field_mismatch(l1.field(), l2.field());
    Lattice t = transporter(l1, l2);
    int need = l2.volume_degree() - l1.volume_degree();
    if (minimal_norm_degree(t) != need)
        return std::nullopt;
    for (auto const & lam : minimal_classes(t, budget))
        if (lattice_scale(l1, lam) == l2)
            return lam;
    return std::nullopt;
}

std::vector<HomothetyKey> homothety_candidates(Lattice const & l)
{
    std::vector<HomothetyKey> out;
    for (auto const & x : minimal_classes(l)) {
        QuadElement lam = x.inverse();
        out.push_back({lattice_scale(l, lam), lam});
    }
    return out;
}

HomothetyKey homothety_key(Lattice const & l)
{
    auto c = homothety_candidates(l);
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].key < c[best].key)
            best = i;
    return c[best];
}

} // namespace ffh
