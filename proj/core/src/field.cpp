#include "ffh/field.hpp"

#include <limits>

#include "ffh/error.hpp"

namespace ffh {

bool is_prime_u32(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

FiniteField FiniteField::prime(std::uint32_t p)
{
    if (!is_prime_u32(p) || p >= (1u << 16))
        fail(ErrorKind::InvalidArgument,
             "characteristic must be a prime below 65536, got " + std::to_string(p));
    return FiniteField(p, 1, p, nullptr);
}

namespace {

/* Digit vectors (base p, constant first) of length e. */
std::vector<std::uint32_t> to_digits(std::uint32_t a, std::uint32_t p, std::uint32_t e)
{
    std::vector<std::uint32_t> d(e);
    for (std::uint32_t i = 0; i < e; ++i) {
        d[i] = a % p;
        a /= p;
    }
    return d;
}

std::uint32_t from_digits(std::vector<std::uint32_t> const & d, std::uint32_t p)
{
    std::uint32_t a = 0;
    for (std::size_t i = d.size(); i-- > 0;)
        a = a * p + d[i];
    return a;
}

/* x * y mod modulus over F_p, all as digit vectors of length e. */
std::vector<std::uint32_t> mulmod(std::vector<std::uint32_t> const & x,
                                  std::vector<std::uint32_t> const & y,
                                  std::vector<std::uint32_t> const & modulus,
                                  std::uint32_t p)
{
    std::size_t e = modulus.size() - 1;
    std::vector<std::uint64_t> prod(2 * e, 0);
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j)
            prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p;
    for (std::size_t k = prod.size(); k-- > e;) {
        std::uint64_t c = prod[k];
        if (c == 0)
            continue;
        prod[k] = 0;
        for (std::size_t i = 0; i < e; ++i)
            prod[k - e + i] = (prod[k - e + i] + (p - c) * modulus[i]) % p;
    }
    std::vector<std::uint32_t> r(e);
    for (std::size_t i = 0; i < e; ++i)
        r[i] = static_cast<std::uint32_t>(prod[i]);
    return r;
}

} // namespace

FiniteField FiniteField::extension(std::uint32_t p, std::vector<std::uint32_t> const & modulus)
{
    if (!is_prime_u32(p) || p >= (1u << 16))
        fail(ErrorKind::InvalidArgument, "characteristic must be a prime below 65536");
    if (modulus.size() < 2 || modulus.back() % p != 1)
        fail(ErrorKind::InvalidArgument, "extension modulus must be monic of degree >= 1");
    auto e = static_cast<std::uint32_t>(modulus.size() - 1);
    if (e == 1)
        return prime(p);
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > (1u << 20))
            fail(ErrorKind::InvalidArgument, "field order above 2^20 is not supported");
    }
    auto t = std::make_shared<Tables>();
    for (auto c : modulus)
        t->modulus.push_back(c % p);
    t->exp.assign(q, 0);
    t->log.assign(q, 0);

    /* A generator of order q-1 exists iff the quotient ring is a field, so the
     * search below doubles as the irreducibility test of the modulus. */
    std::vector<char> seen(q);
    for (std::uint32_t g = 2; g < q; ++g) {
        std::fill(seen.begin(), seen.end(), 0);
        auto gd = to_digits(g, p, e);
        std::vector<std::uint32_t> cur = to_digits(1, p, e);
        bool ok = true;
        for (std::uint64_t k = 0; k + 1 < q; ++k) {
            std::uint32_t code = from_digits(cur, p);
            if (code == 0 || seen[code]) {
                ok = false;
                break;
            }
            seen[code] = 1;
            t->exp[k] = code;
            t->log[code] = static_cast<std::uint32_t>(k);
            cur = mulmod(cur, gd, t->modulus, p);
        }
        if (ok && from_digits(cur, p) == 1)
            return FiniteField(p, e, static_cast<std::uint32_t>(q), std::move(t));
    }
    fail(ErrorKind::NotIrreducible, "extension modulus is reducible over F_" + std::to_string(p));
}

std::vector<std::uint32_t> const & FiniteField::modulus() const
{
    static std::vector<std::uint32_t> const none;
    return ext_ ? ext_->modulus : none;
}

FiniteField::Elem FiniteField::add_digits(Elem a, Elem b, bool subtract) const
{
    Elem r = 0;
    Elem place = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t x = a % p_, y = b % p_;
        a /= p_;
        b /= p_;
        std::uint32_t s = subtract ? (x + p_ - y) % p_ : (x + y) % p_;
        r += s * place;
        place *= p_;
    }
    return r;
}

FiniteField::Elem FiniteField::inv(Elem a) const
{
    if (a == 0)
        fail(ErrorKind::DivisionByZero, "inverse of zero in F_" + std::to_string(q_));
    if (e_ > 1) {
        auto const & t = *ext_;
        return t.exp[(q_ - 1 - t.log[a]) % (q_ - 1)];
    }
    return pow(a, p_ - 2);
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t n) const
{
    Elem r = 1;
    Elem b = a;
    while (n) {
        if (n & 1)
            r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

bool FiniteField::is_square(Elem a) const
{
    if (a == 0)
        return true;
    if (p_ == 2)
        return true;
    return pow(a, (q_ - 1) / 2) == 1;
}

FiniteField::Elem FiniteField::pth_root(Elem a) const
{
    /* Frobenius has order e, so its inverse is x -> x^(p^(e-1)). */
    Elem r = a;
    for (std::uint32_t i = 1; i < e_; ++i)
        r = pow(r, p_);
    return r;
}

std::string FiniteField::format(Elem a) const
{
    if (e_ == 1)
        return std::to_string(a);
    return "{" + std::to_string(a) + "}";
}

} // namespace ffh
