#include "ffh/frac.hpp"

#include "ffh/error.hpp"

namespace ffh {

Frac::Frac(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}

Frac::Frac(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    throw_if_field_mismatch(num_, den_);
    if (den_.is_zero())
        fail(ErrorKind::DivisionByZero, "fraction with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::one(den_.field());
        return;
    }
    Poly g = gcd(num_, den_);
    auto s = den_.field().inv(den_.lc());
    num_ = exact_div(num_, g).scaled(s);
    den_ = exact_div(den_, g).scaled(s);
}

Frac operator+(Frac const & a, Frac const & b)
{
    return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Frac operator-(Frac const & a, Frac const & b)
{
    return Frac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Frac operator*(Frac const & a, Frac const & b)
{
    return Frac(a.num_ * b.num_, a.den_ * b.den_);
}

Frac operator/(Frac const & a, Frac const & b)
{
    if (b.is_zero())
        fail(ErrorKind::DivisionByZero, "division by zero in k");
    return Frac(a.num_ * b.den_, a.den_ * b.num_);
}

std::string Frac::str() const
{
    if (den_.is_one())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace ffh
