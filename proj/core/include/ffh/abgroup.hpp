#ifndef FFH_ABGROUP_HPP
#define FFH_ABGROUP_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffh/error.hpp"

namespace ffh {

using IntMat = std::vector<std::vector<std::int64_t>>;

/* Z^r / (row span of R) in Smith form: U R V = diag(d). Only V is kept. */
struct SmithForm {
    std::vector<std::int64_t> diag;
    IntMat V;
};
SmithForm smith_normal_form(IntMat R);

/*
 * A finite abelian group Z/n_1 x ... x Z/n_k with 1 < n_1 | n_2 | ... | n_k.
 * Elements are coordinate vectors reduced modulo the factors; index() is the
 * mixed-radix encoding (first coordinate least significant).
 */
class AbGroup {
  public:
    using Elem = std::vector<std::int64_t>;

    AbGroup() = default;
    /* Factors equal to 1 are dropped; throws InvalidArgument unless the
     * remaining ones form a divisibility chain. */
    explicit AbGroup(std::vector<std::int64_t> factors);

    std::vector<std::int64_t> const & invariant_factors() const { return n_; }
    std::uint64_t order() const;
    std::size_t rank() const { return n_.size(); }

    Elem zero() const { return Elem(n_.size(), 0); }
    Elem basis(std::size_t t) const;
    Elem reduce(Elem a) const;
    Elem add(Elem const & a, Elem const & b) const;
    Elem neg(Elem const & a) const;
    Elem sub(Elem const & a, Elem const & b) const { return add(a, neg(b)); }
    Elem mul(Elem const & a, std::int64_t k) const;
    bool is_zero(Elem const & a) const;
    std::int64_t element_order(Elem const & a) const;

    std::size_t index(Elem const & a) const;
    Elem element(std::size_t idx) const;

    bool operator==(AbGroup const & o) const { return n_ == o.n_; }

    std::string str() const;

  private:
    std::vector<std::int64_t> n_;
};

/* Part of each factor prime to ell, ones dropped. */
std::vector<std::int64_t> prime_to_part(std::vector<std::int64_t> const & factors, std::int64_t ell);

/* True iff n is a power of the prime ell (including 1). */
bool is_power_of(std::uint64_t n, std::uint64_t ell);

/* The subgroup of g generated by gens, as elements of g sorted by index. */
std::vector<AbGroup::Elem> subgroup_elements(AbGroup const & g, std::vector<AbGroup::Elem> const & gens);

/*
 * Structure of a finite group handed over by generators. E must be totally
 * ordered and mul must return canonical representatives, so that equal group
 * elements compare equal.
 */
template <class E>
struct Presented {
    AbGroup group;
    std::vector<E> reps;                  /* by group index */
    std::map<E, std::size_t> index;       /* representative -> group index */
    std::vector<AbGroup::Elem> gen_coords; /* every generator ever offered */
};

template <class E>
class GroupClosure {
  public:
    using Mul = std::function<E(E const &, E const &)>;

    GroupClosure(E identity, Mul mul, std::uint64_t limit)
        : mul_(std::move(mul)), limit_(limit)
    {
        elems_.push_back(identity);
        exps_.push_back({});
        where_.emplace(std::move(identity), 0);
    }

    std::size_t size() const { return elems_.size(); }
    bool contains(E const & e) const { return where_.count(e) != 0; }

    /* Returns true when the subgroup grew. */
    bool add_generator(E const & g)
    {
        offered_.push_back(g);
        if (contains(g))
            return false;
        std::size_t col = gens_.size();
        gens_.push_back(g);
        std::vector<E> powers{g};
        for (;;) {
            E next = mul_(powers.back(), g);
            if (contains(next)) {
                /* relation: k e_col = exps(g^k) */
                std::vector<std::int64_t> rel = exps_[where_.at(next)];
                rel.resize(col + 1, 0);
                for (auto & v : rel)
                    v = -v;
                rel[col] += static_cast<std::int64_t>(powers.size() + 1);
                rels_.push_back(std::move(rel));
                break;
            }
            powers.push_back(std::move(next));
            if (elems_.size() * (powers.size() + 1) > limit_)
                throw BudgetExceeded(limit_, "group closure");
        }
        std::size_t old = elems_.size();
        for (std::size_t j = 0; j < powers.size(); ++j)
            for (std::size_t h = 0; h < old; ++h) {
                E e = mul_(powers[j], elems_[h]);
                auto x = exps_[h];
                x.resize(col + 1, 0);
                x[col] += static_cast<std::int64_t>(j + 1);
                if (!where_.emplace(e, elems_.size()).second)
                    fail(ErrorKind::VerificationFailed, "coset overlap in group closure");
                elems_.push_back(std::move(e));
                exps_.push_back(std::move(x));
            }
        return true;
    }

    Presented<E> finish() const
    {
        std::size_t r = gens_.size();
        IntMat R(r, std::vector<std::int64_t>(r, 0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < rels_[i].size(); ++j)
                R[i][j] = rels_[i][j];
        SmithForm s = smith_normal_form(R);
        std::vector<std::size_t> keep;
        std::vector<std::int64_t> factors;
        for (std::size_t t = 0; t < s.diag.size(); ++t)
            if (s.diag[t] != 1) {
                keep.push_back(t);
                factors.push_back(s.diag[t]);
            }
        Presented<E> out;
        out.group = AbGroup(factors);
        auto coords = [&](std::vector<std::int64_t> x) {
            x.resize(r, 0);
            AbGroup::Elem c(keep.size(), 0);
            for (std::size_t k = 0; k < keep.size(); ++k) {
                std::int64_t acc = 0;
                for (std::size_t i = 0; i < r; ++i)
                    acc = (acc + x[i] * s.V[i][keep[k]]) % factors[k];
                c[k] = acc;
            }
            return out.group.reduce(std::move(c));
        };
        std::vector<std::optional<E>> slot(elems_.size());
        for (std::size_t h = 0; h < elems_.size(); ++h) {
            std::size_t idx = out.group.index(coords(exps_[h]));
            if (slot[idx])
                fail(ErrorKind::VerificationFailed, "group closure is not injective");
            slot[idx] = elems_[h];
            out.index.emplace(elems_[h], idx);
        }
        for (auto & e : slot)
            out.reps.push_back(std::move(*e));
        for (auto const & g : offered_)
            out.gen_coords.push_back(out.group.element(out.index.at(g)));
        return out;
    }

  private:
    Mul mul_;
    std::uint64_t limit_;
    std::vector<E> elems_;
    std::vector<std::vector<std::int64_t>> exps_;
    std::map<E, std::size_t> where_;
    std::vector<E> gens_, offered_;
    std::vector<std::vector<std::int64_t>> rels_;
};

} // namespace ffh

#endif /* FFH_ABGROUP_HPP */
