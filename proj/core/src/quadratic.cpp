#include "ffh/quadratic.hpp"

#include <cmath>

#include "ffh/error.hpp"

namespace ffh {

std::string_view to_string(InfinityType t)
{
    return t == InfinityType::Ramified ? "ramified" : "inert";
}

QuadFieldPtr make_field(FiniteField const & base, Poly const & D)
{
    if (base.characteristic() == 2)
        fail(ErrorKind::EvenCharacteristic, "q must be odd");
    if (D.field() != base)
        fail(ErrorKind::FieldMismatch, "D is not defined over the given constant field");
    if (D.is_zero())
        fail(ErrorKind::ZeroPolynomial, "D = 0");
    if (D.is_constant())
        fail(ErrorKind::DegenerateConstantField, "D = " + D.str() + " is constant");
    if (!is_squarefree(D))
        fail(ErrorKind::NotSquareFree, "D = " + D.str() + " is not square-free");
    InfinityType inf = InfinityType::Ramified;
    if (D.degree() % 2 == 0) {
        if (base.is_square(D.lc()))
            fail(ErrorKind::RealField,
                 "D = " + D.str() + " has even degree and square leading coefficient");
        inf = InfinityType::Inert;
    }
    return QuadFieldPtr(new QuadField(base, D, inf));
}

void throw_if_field_mismatch(QuadFieldPtr const & a, QuadFieldPtr const & b)
{
    if (a != b && !(*a == *b))
        fail(ErrorKind::FieldMismatch, "operands live in different quadratic fields");
}

QuadElement::QuadElement(QuadFieldPtr K, Poly x, Poly y)
    : K_(std::move(K)), x_(std::move(x)), y_(std::move(y)), den_(Poly::one(x_.field()))
{}

QuadElement::QuadElement(QuadFieldPtr K, Poly x, Poly y, Poly den)
    : K_(std::move(K)), x_(std::move(x)), y_(std::move(y)), den_(std::move(den))
{
    if (den_.is_zero())
        fail(ErrorKind::DivisionByZero, "element with zero denominator");
    if (is_zero()) {
        den_ = Poly::one(den_.field());
        return;
    }
    if (den_.is_one())
        return;
    Poly g = gcd(gcd(x_, y_), den_);
    auto s = den_.field().inv(den_.lc());
    x_ = exact_div(x_, g).scaled(s);
    y_ = exact_div(y_, g).scaled(s);
    den_ = exact_div(den_, g).scaled(s);
}

QuadElement QuadElement::zero(QuadFieldPtr const & K)
{
    Poly z(K->base());
    return QuadElement(K, z, z);
}

QuadElement QuadElement::one(QuadFieldPtr const & K)
{
    return QuadElement(K, Poly::one(K->base()), Poly(K->base()));
}

QuadElement QuadElement::omega(QuadFieldPtr const & K)
{
    return QuadElement(K, Poly(K->base()), Poly::one(K->base()));
}

QuadElement QuadElement::from_poly(QuadFieldPtr const & K, Poly const & a)
{
    return QuadElement(K, a, Poly(K->base()));
}

QuadElement QuadElement::from_frac(QuadFieldPtr const & K, Frac const & a)
{
    return QuadElement(K, a.num(), Poly(K->base()), a.den());
}

int QuadElement::norm_degree() const
{
    if (is_zero())
        return INT_MIN;
    return norm_weight(x_, y_, K_->D().degree()) - 2 * den_.degree();
}

QuadElement QuadElement::conj() const
{
    return QuadElement(K_, x_, -y_, den_);
}

Frac QuadElement::norm() const
{
    return Frac(x_ * x_ - K_->D() * y_ * y_, den_ * den_);
}

Frac QuadElement::trace() const
{
    return Frac(x_ + x_, den_);
}

QuadElement QuadElement::inverse() const
{
    if (is_zero())
        fail(ErrorKind::DivisionByZero, "inverse of zero in K");
    /* 1/z = den * conj(x + y w) / N(x + y w) */
    Poly n = x_ * x_ - K_->D() * y_ * y_;
    return QuadElement(K_, den_ * x_, -(den_ * y_), n);
}

QuadElement operator+(QuadElement const & a, QuadElement const & b)
{
    throw_if_field_mismatch(a.K_, b.K_);
    if (a.den_ == b.den_)
        return QuadElement(a.K_, a.x_ + b.x_, a.y_ + b.y_, a.den_);
    return QuadElement(a.K_, a.x_ * b.den_ + b.x_ * a.den_, a.y_ * b.den_ + b.y_ * a.den_,
                       a.den_ * b.den_);
}

QuadElement QuadElement::operator-() const
{
    return QuadElement(K_, -x_, -y_, den_);
}

QuadElement operator-(QuadElement const & a, QuadElement const & b)
{
    return a + (-b);
}

QuadElement operator*(QuadElement const & a, QuadElement const & b)
{
    throw_if_field_mismatch(a.K_, b.K_);
    Poly x = a.x_ * b.x_ + a.K_->D() * a.y_ * b.y_;
    Poly y = a.x_ * b.y_ + a.y_ * b.x_;
    return QuadElement(a.K_, std::move(x), std::move(y), a.den_ * b.den_);
}

std::string QuadElement::str() const
{
    std::string s;
    if (y_.is_zero())
        s = x_.str();
    else if (x_.is_zero())
        s = "(" + y_.str() + ")*w";
    else
        s = x_.str() + "+(" + y_.str() + ")*w";
    if (!den_.is_one())
        s = "(" + s + ")/(" + den_.str() + ")";
    return s;
}

namespace {

std::uint64_t residue_order(Poly const & q0)
{
    if (static_cast<double>(q0.degree()) * std::log2(q0.field().order()) > 62)
        fail(ErrorKind::InvalidArgument, "residue field of " + q0.str() + " is too large");
    return q0.norm();
}

} // namespace

std::optional<Poly> sqrt_mod(Poly const & a0, Poly const & q0)
{
    auto const & f = q0.field();
    Poly a = a0 % q0;
    if (a.is_zero())
        return a;
    std::uint64_t n = residue_order(q0);
    Poly one = Poly::one(f);
    Poly minus_one = Poly::constant(f, f.neg(1));
    if (powmod(a, (n - 1) / 2, q0) != one)
        return std::nullopt;
    std::uint64_t Q = n - 1;
    int S = 0;
    while (Q % 2 == 0) {
        Q /= 2;
        ++S;
    }
    Poly z(f);
    for (std::uint64_t i = 2;; ++i) {
        z = Poly::from_index(f, i);
        if (powmod(z, (n - 1) / 2, q0) == minus_one)
            break;
    }
    int M = S;
    Poly c = powmod(z, Q, q0);
    Poly t = powmod(a, Q, q0);
    Poly R = powmod(a, (Q + 1) / 2, q0);
    while (t != one) {
        int i = 0;
        Poly tt = t;
        while (tt != one) {
            tt = tt * tt % q0;
            ++i;
        }
        Poly b = c;
        for (int j = 0; j < M - i - 1; ++j)
            b = b * b % q0;
        M = i;
        c = b * b % q0;
        t = t * c % q0;
        R = R * b % q0;
    }
    Poly other = (-R) % q0;
    return other < R ? other : R;
}

SplitType splitting_type(QuadField const & K, Poly const & q0)
{
    if (!is_irreducible(q0))
        fail(ErrorKind::NotIrreducible, q0.str() + " is not irreducible");
    Poly pr = q0.monic();
    Poly d = K.D() % pr;
    if (d.is_zero())
        return {pr, 0, std::nullopt};
    auto r = sqrt_mod(d, pr);
    if (!r)
        return {pr, -1, std::nullopt};
    return {pr, 1, r};
}

std::uint64_t unit_index(QuadField const & K, Poly const & c)
{
    if (c.is_zero())
        fail(ErrorKind::ZeroPolynomial, "conductor 0");
    auto const & f = K.base();
    int dD = K.D().degree();
    /* Units of an order are its elements of norm degree 0. In O_c = A + A c w
     * an element x + y c w has weight max(2 deg x, 2 deg y + 2 deg c + deg D). */
    auto count = [&](int extra) {
        int wy = dD + extra;
        int max_dy = wy > 0 ? -1 : -wy / 2;
        std::uint64_t n = 0;
        for (auto const & y : polys_below_degree(f, max_dy + 1))
            for (std::uint32_t x = 0; x < f.order(); ++x)
                if (norm_weight(Poly::constant(f, x), y, wy) == 0)
                    ++n;
        return n;
    };
    std::uint64_t full = count(0);
    std::uint64_t sub = count(2 * c.degree());
    return full / sub;
}

} // namespace ffh
