#include "ffh/mat2.hpp"

#include "ffh/error.hpp"

namespace ffh {

Mat2::Mat2(Poly a00, Poly a01, Poly a10, Poly a11)
    : m00(std::move(a00)), m01(std::move(a01)), m10(std::move(a10)), m11(std::move(a11)),
      den(Poly::one(m00.field()))
{}

Mat2::Mat2(Poly a00, Poly a01, Poly a10, Poly a11, Poly d)
    : m00(std::move(a00)), m01(std::move(a01)), m10(std::move(a10)), m11(std::move(a11)),
      den(std::move(d))
{
    if (den.is_zero())
        fail(ErrorKind::DivisionByZero, "matrix denominator is zero");
    Poly g = gcd(gcd(gcd(m00, m01), gcd(m10, m11)), den);
    auto s = den.field().inv(den.lc());
    m00 = exact_div(m00, g).scaled(s);
    m01 = exact_div(m01, g).scaled(s);
    m10 = exact_div(m10, g).scaled(s);
    m11 = exact_div(m11, g).scaled(s);
    den = exact_div(den, g).scaled(s);
}

Mat2 hnf2(std::vector<Row> const & gens)
{
    if (gens.empty())
        fail(ErrorKind::RankDeficient, "no generators");
    auto const & f = gens.front().first.field();
    Poly b0(f), c0(f);
    Poly a(f);
    for (auto const & [x, y] : gens) {
        throw_if_field_mismatch(x, y);
        if (y.is_zero()) {
            a = gcd(a, x);
            continue;
        }
        auto [g, u, v] = xgcd(c0, y);
        Poly axis = exact_div(c0, g) * x - exact_div(y, g) * b0;
        b0 = u * b0 + v * x;
        c0 = g;
        a = gcd(a, axis);
    }
    if (a.is_zero() || c0.is_zero())
        fail(ErrorKind::RankDeficient, "generators span a module of rank < 2");
    return Mat2(a, Poly(f), b0 % a, c0);
}

std::pair<Poly, Poly> snf2(Mat2 const & m)
{
    if (!m.is_integral())
        fail(ErrorKind::NotIntegral, "elementary divisors need an integral matrix");
    Poly det = m.m00 * m.m11 - m.m01 * m.m10;
    if (det.is_zero())
        fail(ErrorKind::Singular, "matrix is singular");
    Poly d1 = gcd(gcd(m.m00, m.m01), gcd(m.m10, m.m11));
    return {d1, exact_div(det.monic(), d1)};
}

} // namespace ffh
