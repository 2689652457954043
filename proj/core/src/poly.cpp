#include "ffh/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>
#include <set>

#include "ffh/error.hpp"

namespace ffh {

Poly::Poly(FiniteField f, std::vector<Elem> coeffs)
    : f_(std::move(f)), c_(std::move(coeffs))
{
    trim();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Poly Poly::constant(FiniteField const & f, Elem c)
{
    return Poly(f, std::vector<Elem>{c});
}

Poly Poly::monomial(FiniteField const & f, Elem c, int k)
{
    std::vector<Elem> v(static_cast<std::size_t>(k) + 1, 0);
    v[k] = c;
    return Poly(f, std::move(v));
}

Poly Poly::from_ints(FiniteField const & f, std::vector<long long> const & c)
{
    std::vector<Elem> v;
    v.reserve(c.size());
    for (auto x : c)
        v.push_back(f.from_int(x));
    return Poly(f, std::move(v));
}

Poly Poly::from_index(FiniteField const & f, std::uint64_t idx)
{
    std::vector<Elem> v;
    while (idx) {
        v.push_back(static_cast<Elem>(idx % f.order()));
        idx /= f.order();
    }
    return Poly(f, std::move(v));
}

std::uint64_t Poly::norm() const
{
    if (is_zero())
        return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < degree(); ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / f_.order())
            return std::numeric_limits<std::uint64_t>::max();
        r *= f_.order();
    }
    return r;
}

std::uint64_t Poly::index() const
{
    std::uint64_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        r = r * f_.order() + c_[i];
    return r;
}

Poly Poly::monic() const
{
    if (is_zero() || is_monic())
        return *this;
    return scaled(f_.inv(lc()));
}

Poly Poly::scaled(Elem s) const
{
    if (s == 0)
        return Poly(f_);
    std::vector<Elem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        v[i] = f_.mul(c_[i], s);
    return Poly(f_, std::move(v));
}

Poly Poly::shifted(int k) const
{
    if (is_zero())
        return *this;
    std::vector<Elem> v(static_cast<std::size_t>(k), 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(f_, std::move(v));
}

Poly Poly::derivative() const
{
    std::vector<Elem> v;
    for (std::size_t i = 1; i < c_.size(); ++i)
        v.push_back(f_.mul(c_[i], f_.from_int(static_cast<long long>(i))));
    return Poly(f_, std::move(v));
}

Poly::Elem Poly::eval(Elem x) const
{
    Elem r = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        r = f_.add(f_.mul(r, x), c_[i]);
    return r;
}

Poly Poly::operator-() const
{
    std::vector<Elem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        v[i] = f_.neg(c_[i]);
    return Poly(f_, std::move(v));
}

void throw_if_field_mismatch(Poly const & a, Poly const & b)
{
    if (a.field() != b.field())
        fail(ErrorKind::FieldMismatch, "operands live over different constant fields");
}

Poly & Poly::operator+=(Poly const & o)
{
    throw_if_field_mismatch(*this, o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = f_.add(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly & Poly::operator-=(Poly const & o)
{
    throw_if_field_mismatch(*this, o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = f_.sub(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly operator*(Poly const & a, Poly const & b)
{
    throw_if_field_mismatch(a, b);
    if (a.is_zero() || b.is_zero())
        return Poly(a.f_);
    auto const & f = a.f_;
    std::size_t n = a.c_.size() + b.c_.size() - 1;
    std::vector<Poly::Elem> out(n, 0);
    if (f.degree() == 1) {
        /* p < 2^16, so each product is below 2^32 and the sums fit in 64 bits. */
        std::vector<std::uint64_t> acc(n, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            std::uint64_t x = a.c_[i];
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                acc[i + j] += x * b.c_[j];
        }
        std::uint64_t p = f.characteristic();
        for (std::size_t k = 0; k < n; ++k)
            out[k] = static_cast<Poly::Elem>(acc[k] % p);
    } else {
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] = f.add(out[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return Poly(f, std::move(out));
}

std::pair<Poly, Poly> divmod(Poly const & a, Poly const & b)
{
    throw_if_field_mismatch(a, b);
    if (b.is_zero())
        fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
    auto const & f = a.field();
    if (a.degree() < b.degree())
        return {Poly(f), a};
    std::vector<Poly::Elem> r = a.coeffs();
    int db = b.degree();
    std::vector<Poly::Elem> q(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    Poly::Elem inv_lc = f.inv(b.lc());
    auto const & bc = b.coeffs();
    for (int k = a.degree(); k >= db; --k) {
        Poly::Elem c = r[k];
        if (c == 0)
            continue;
        Poly::Elem t = f.mul(c, inv_lc);
        q[k - db] = t;
        for (int i = 0; i <= db; ++i)
            r[k - db + i] = f.sub(r[k - db + i], f.mul(t, bc[i]));
    }
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly operator/(Poly const & a, Poly const & b) { return divmod(a, b).first; }
Poly operator%(Poly const & a, Poly const & b) { return divmod(a, b).second; }

bool divides(Poly const & b, Poly const & a)
{
    if (b.is_zero())
        return a.is_zero();
    return (a % b).is_zero();
}

Poly exact_div(Poly const & a, Poly const & b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        fail(ErrorKind::InvalidArgument, b.str() + " does not divide " + a.str());
    return q;
}

std::strong_ordering Poly::operator<=>(Poly const & o) const
{
    if (auto c = degree() <=> o.degree(); c != 0)
        return c;
    for (std::size_t i = c_.size(); i-- > 0;)
        if (auto c = c_[i] <=> o.c_[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

std::string Poly::str() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        Elem c = c_[k];
        if (c == 0)
            continue;
        if (!out.empty())
            out += '+';
        if (k == 0) {
            out += f_.format(c);
            continue;
        }
        if (c != 1)
            out += f_.format(c) + "*";
        out += 'T';
        if (k > 1)
            out += "^" + std::to_string(k);
    }
    return out;
}

Poly gcd(Poly const & a, Poly const & b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly lcm(Poly const & a, Poly const & b)
{
    if (a.is_zero() || b.is_zero())
        return Poly(a.field());
    return (exact_div(a, gcd(a, b)) * b).monic();
}

Xgcd xgcd(Poly const & a, Poly const & b)
{
    auto const & f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(f), s1(f);
    Poly t0(f), t1 = Poly::one(f);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    auto inv = f.inv(r0.lc());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly inverse_mod(Poly const & a, Poly const & m)
{
    auto x = xgcd(a % m, m);
    if (!x.g.is_one())
        fail(ErrorKind::NotCoprime, a.str() + " is not invertible modulo " + m.str());
    return x.u % m;
}

Poly powmod(Poly const & base, std::uint64_t e, Poly const & m)
{
    Poly r = Poly::one(base.field()) % m;
    Poly b = base % m;
    while (e) {
        if (e & 1)
            r = r * b % m;
        e >>= 1;
        if (e)
            b = b * b % m;
    }
    return r;
}

Poly pow(Poly const & base, unsigned e)
{
    Poly r = Poly::one(base.field());
    Poly b = base;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

/* ------------------------------------------------------------------ */
/* parsing */

namespace {

class Parser {
  public:
    Parser(FiniteField const & f, std::string_view s) : f_(f), s_(s) {}

    Poly run()
    {
        Poly acc(f_);
        skip();
        if (pos_ == s_.size())
            error("empty polynomial");
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        acc = term();
        if (negative)
            acc = -acc;
        skip();
        while (pos_ < s_.size()) {
            char op = s_[pos_];
            if (op != '+' && op != '-')
                error("expected '+' or '-'");
            ++pos_;
            Poly t = term();
            acc = op == '+' ? acc + t : acc - t;
            skip();
        }
        return acc;
    }

  private:
    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void error(std::string const & what)
    {
        fail(ErrorKind::ParseError,
             what + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }

    unsigned long long nat()
    {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            error("expected a natural number");
        unsigned long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > (1ull << 40))
                error("number too large");
            ++pos_;
        }
        return v;
    }

    Poly term()
    {
        Poly::Elem c = 1;
        bool have_coeff = false;
        char ch = peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            c = f_.from_int(static_cast<long long>(nat() % f_.characteristic()));
            have_coeff = true;
        } else if (ch == '{') {
            ++pos_;
            auto code = nat();
            if (code >= f_.order())
                error("field element code out of range");
            c = static_cast<Poly::Elem>(code);
            if (peek() != '}')
                error("expected '}'");
            ++pos_;
            have_coeff = true;
        }
        ch = peek();
        if (have_coeff && ch == '*') {
            ++pos_;
            ch = peek();
            if (ch != 'T')
                error("expected 'T' after '*'");
        }
        if (ch != 'T') {
            if (!have_coeff)
                error("expected a coefficient or 'T'");
            return Poly::constant(f_, c);
        }
        ++pos_;
        unsigned long long k = 1;
        if (peek() == '^') {
            ++pos_;
            k = nat();
            if (k > 100000)
                error("exponent too large");
        }
        return Poly::monomial(f_, c, static_cast<int>(k));
    }

    FiniteField const & f_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(FiniteField const & f, std::string_view text)
{
    return Parser(f, text).run();
}

/* ------------------------------------------------------------------ */
/* factorization */

namespace {

Poly pth_root(Poly const & g)
{
    auto const & f = g.field();
    std::uint32_t p = f.characteristic();
    std::vector<Poly::Elem> v;
    for (std::size_t i = 0; i < g.coeffs().size(); i += p)
        v.push_back(f.pth_root(g.coeffs()[i]));
    return Poly(f, std::move(v));
}

Poly random_below(FiniteField const & f, int n, std::mt19937_64 & rng)
{
    std::vector<Poly::Elem> v(static_cast<std::size_t>(n));
    for (auto & x : v)
        x = static_cast<Poly::Elem>(rng() % f.order());
    return Poly(f, std::move(v));
}

/* g is monic, squarefree, and a product of irreducibles of degree d. */
void equal_degree_split(Poly const & g, int d, std::mt19937_64 & rng, std::vector<Poly> & out)
{
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    auto const & f = g.field();
    std::uint32_t q = f.order();
    Poly one = Poly::one(f);
    for (;;) {
        Poly a = random_below(f, g.degree(), rng);
        if (a.degree() < 1)
            continue;
        Poly h(f);
        if (f.characteristic() == 2) {
            /* trace map to F_2 */
            int steps = static_cast<int>(f.degree()) * d;
            Poly t = a, s = a;
            for (int i = 1; i < steps; ++i) {
                t = t * t % g;
                s += t;
            }
            h = gcd(s, g);
        } else {
            Poly t = a, s = a;
            for (int i = 1; i < d; ++i) {
                t = powmod(t, q, g);
                s = s * t % g;
            }
            Poly b = powmod(s, (q - 1) / 2, g);
            h = gcd(b - one, g);
        }
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split(exact_div(g, h), d, rng, out);
            return;
        }
    }
}

/* u is monic and squarefree. */
void squarefree_primes(Poly u, std::mt19937_64 & rng, std::vector<Poly> & out)
{
    auto const & f = u.field();
    Poly x = Poly::t(f);
    Poly h = x % u;
    int i = 0;
    while (u.degree() >= 2 * (i + 1)) {
        ++i;
        h = powmod(h, f.order(), u);
        Poly g = gcd(h - x, u);
        if (!g.is_one()) {
            equal_degree_split(g, i, rng, out);
            u = exact_div(u, g);
            h = h % u;
        }
    }
    if (u.degree() > 0)
        out.push_back(u.monic());
}

void distinct_primes(Poly const & g, std::mt19937_64 & rng, std::vector<Poly> & out)
{
    if (g.degree() < 1)
        return;
    Poly d = g.derivative();
    if (d.is_zero()) {
        distinct_primes(pth_root(g).monic(), rng, out);
        return;
    }
    Poly c = gcd(g, d);
    squarefree_primes(exact_div(g, c).monic(), rng, out);
    distinct_primes(c, rng, out);
}

} // namespace

std::vector<Factor> factor(Poly const & f, std::uint64_t seed)
{
    if (f.is_zero())
        fail(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
    std::mt19937_64 rng(seed);
    Poly g = f.monic();
    std::vector<Poly> primes;
    distinct_primes(g, rng, primes);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<Factor> out;
    for (auto const & pr : primes) {
        int m = 0;
        for (;;) {
            auto [q, r] = divmod(g, pr);
            if (!r.is_zero())
                break;
            g = std::move(q);
            ++m;
        }
        out.push_back({pr, m});
    }
    return out;
}

bool is_irreducible(Poly const & f)
{
    int n = f.degree();
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    Poly g = f.monic();
    auto const & fld = f.field();
    Poly x = Poly::t(fld);
    /* Rabin: T^(q^n) = T mod g and gcd(T^(q^(n/r)) - T, g) = 1 for primes r | n. */
    std::vector<int> rs;
    for (int r = 2, m = n; r <= m; ++r)
        if (m % r == 0) {
            rs.push_back(r);
            while (m % r == 0)
                m /= r;
        }
    std::vector<Poly> frob; /* frob[i] = T^(q^i) mod g */
    frob.push_back(x % g);
    for (int i = 1; i <= n; ++i)
        frob.push_back(powmod(frob.back(), fld.order(), g));
    if (!(frob[n] - x % g).is_zero())
        return false;
    for (int r : rs)
        if (!gcd(frob[n / r] - x, g).is_one())
            return false;
    return true;
}

bool is_squarefree(Poly const & f)
{
    if (f.is_zero())
        fail(ErrorKind::ZeroPolynomial, "squarefreeness of the zero polynomial");
    if (f.degree() < 1)
        return true;
    return gcd(f, f.derivative()).degree() == 0;
}

std::vector<Poly> monic_irreducibles(FiniteField const & f, int degree)
{
    std::vector<Poly> out;
    if (degree < 1)
        return out;
    std::uint64_t qd = 1;
    for (int i = 0; i < degree; ++i)
        qd *= f.order();
    for (std::uint64_t r = 0; r < qd; ++r) {
        Poly g = Poly::from_index(f, qd + r);
        if (degree > 1 && g.coeff(0) == 0)
            continue;
        if (is_irreducible(g))
            out.push_back(std::move(g));
    }
    return out;
}

std::vector<Poly> polys_below_degree(FiniteField const & f, int n)
{
    std::vector<Poly> out;
    if (n <= 0) {
        out.emplace_back(f);
        return out;
    }
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i)
        total *= f.order();
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i)
        out.push_back(Poly::from_index(f, i));
    return out;
}

std::vector<Poly> monic_divisors(Poly const & f)
{
    auto fac = factor(f, 0);
    std::vector<Poly> divs{Poly::one(f.field())};
    for (auto const & [pr, m] : fac) {
        std::vector<Poly> next;
        for (auto const & d : divs) {
            Poly cur = d;
            for (int k = 0; k <= m; ++k) {
                next.push_back(cur);
                cur = cur * pr;
            }
        }
        divs = std::move(next);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<Poly> prime_factors(Poly const & f)
{
    std::vector<Poly> out;
    for (auto const & fc : factor(f, 0))
        out.push_back(fc.prime);
    return out;
}

std::size_t PolyHash::operator()(Poly const & a) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto c : a.coeffs())
        h = (h ^ c) * 0x100000001b3ull;
    return h ^ a.coeffs().size();
}

} // namespace ffh
