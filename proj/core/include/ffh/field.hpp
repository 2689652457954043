#ifndef FFH_FIELD_HPP
#define FFH_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ffh {

/*
 * The constant field F_q, q = p^e.
 *
 * Elements are encoded as integers in [0, q). For e = 1 the encoding is the
 * residue itself. For e > 1 an element is a polynomial over F_p of degree < e
 * reduced modulo the user-supplied irreducible modulus, encoded by its
 * base-p digits (constant term first).
 *
 * Prime fields carry no heap state, so copying a FiniteField is cheap.
 */
class FiniteField {
  public:
    using Elem = std::uint32_t;

    static FiniteField prime(std::uint32_t p);

    /* modulus: coefficients over F_p, constant term first, monic of degree e. */
    static FiniteField extension(std::uint32_t p,
                                 std::vector<std::uint32_t> const & modulus);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return e_; }
    std::uint32_t order() const { return q_; }
    std::vector<std::uint32_t> const & modulus() const;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    /* Image of an integer in the prime subfield. */
    Elem from_int(long long v) const
    {
        long long r = v % static_cast<long long>(p_);
        return static_cast<Elem>(r < 0 ? r + p_ : r);
    }

    Elem add(Elem a, Elem b) const
    {
        if (e_ == 1) {
            Elem s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        return add_digits(a, b, false);
    }

    Elem sub(Elem a, Elem b) const
    {
        if (e_ == 1)
            return a >= b ? a - b : a + p_ - b;
        return add_digits(a, b, true);
    }

    Elem neg(Elem a) const { return sub(0, a); }

    Elem mul(Elem a, Elem b) const
    {
        if (a == 0 || b == 0)
            return 0;
        if (e_ == 1)
            return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
        auto const & t = *ext_;
        std::uint32_t s = t.log[a] + t.log[b];
        if (s >= q_ - 1)
            s -= q_ - 1;
        return t.exp[s];
    }

    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t n) const;

    bool is_square(Elem a) const;

    /* The unique b with b^p = a. */
    Elem pth_root(Elem a) const;

    bool operator==(FiniteField const & o) const
    {
        return p_ == o.p_ && e_ == o.e_ && (e_ == 1 || modulus() == o.modulus());
    }
    bool operator!=(FiniteField const & o) const { return !(*this == o); }

    /* Text form of an element: the integer for prime fields, {code} otherwise. */
    std::string format(Elem a) const;

  private:
    struct Tables {
        std::vector<std::uint32_t> modulus;
        std::vector<Elem> exp;
        std::vector<std::uint32_t> log;
    };

    FiniteField(std::uint32_t p, std::uint32_t e, std::uint32_t q,
                std::shared_ptr<Tables const> ext)
        : p_(p), e_(e), q_(q), ext_(std::move(ext))
    {}

    Elem add_digits(Elem a, Elem b, bool subtract) const;

    std::uint32_t p_ = 0;
    std::uint32_t e_ = 1;
    std::uint32_t q_ = 0;
    std::shared_ptr<Tables const> ext_;
};

bool is_prime_u32(std::uint32_t n);

} // namespace ffh

#endif /* FFH_FIELD_HPP */
