#include "ffh/abgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace ffh {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n)
{
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

void swap_cols(IntMat & M, std::size_t a, std::size_t b)
{
    for (auto & row : M)
        std::swap(row[a], row[b]);
}

/* col[b] -= k * col[a] */
void col_axpy(IntMat & M, std::size_t a, std::size_t b, std::int64_t k)
{
    for (auto & row : M)
        row[b] -= k * row[a];
}

} // namespace

SmithForm smith_normal_form(IntMat R)
{
    std::size_t m = R.size();
    std::size_t n = m ? R[0].size() : 0;
    IntMat V(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        V[i][i] = 1;

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        for (;;) {
            /* least nonzero entry of the trailing block becomes the pivot */
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (R[i][j] != 0 && (pi == m || std::llabs(R[i][j]) < std::llabs(R[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m)
                goto done;
            std::swap(R[t], R[pi]);
            swap_cols(R, t, pj);
            swap_cols(V, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                std::int64_t k = R[i][t] / R[t][t];
                for (std::size_t j = t; j < n; ++j)
                    R[i][j] -= k * R[t][j];
                if (R[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                std::int64_t k = R[t][j] / R[t][t];
                col_axpy(R, t, j, k);
                col_axpy(V, t, j, k);
                if (R[t][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            bool divides_all = true;
            for (std::size_t i = t + 1; i < m && divides_all; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (R[i][j] % R[t][t] != 0) {
                        for (std::size_t c = t; c < n; ++c)
                            R[t][c] += R[i][c];
                        divides_all = false;
                        break;
                    }
            if (divides_all)
                break;
        }
        if (R[t][t] < 0)
            for (std::size_t j = t; j < n; ++j)
                R[t][j] = -R[t][j];
    }
done:
    SmithForm s;
    for (std::size_t i = 0; i < std::min(m, n); ++i)
        s.diag.push_back(i < t ? R[i][i] : 0);
    s.V = std::move(V);
    return s;
}

AbGroup::AbGroup(std::vector<std::int64_t> factors)
{
    for (auto f : factors) {
        if (f < 1)
            fail(ErrorKind::InvalidArgument, "invariant factor must be positive");
        if (f > 1)
            n_.push_back(f);
    }
    for (std::size_t i = 1; i < n_.size(); ++i)
        if (n_[i] % n_[i - 1] != 0)
            fail(ErrorKind::InvalidArgument, "invariant factors must form a divisibility chain");
}

std::uint64_t AbGroup::order() const
{
    std::uint64_t o = 1;
    for (auto f : n_)
        o *= static_cast<std::uint64_t>(f);
    return o;
}

AbGroup::Elem AbGroup::basis(std::size_t t) const
{
    Elem e = zero();
    e.at(t) = 1;
    return e;
}

AbGroup::Elem AbGroup::reduce(Elem a) const
{
    if (a.size() != n_.size())
        fail(ErrorKind::InvalidArgument, "element has the wrong number of coordinates");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = mod(a[i], n_[i]);
    return a;
}

AbGroup::Elem AbGroup::add(Elem const & a, Elem const & b) const
{
    Elem c(n_.size());
    for (std::size_t i = 0; i < n_.size(); ++i)
        c[i] = mod(a.at(i) + b.at(i), n_[i]);
    return c;
}

AbGroup::Elem AbGroup::neg(Elem const & a) const
{
    Elem c(n_.size());
    for (std::size_t i = 0; i < n_.size(); ++i)
        c[i] = mod(-a.at(i), n_[i]);
    return c;
}

AbGroup::Elem AbGroup::mul(Elem const & a, std::int64_t k) const
{
    Elem c(n_.size());
    for (std::size_t i = 0; i < n_.size(); ++i)
        c[i] = mod(mod(a.at(i), n_[i]) * mod(k, n_[i]), n_[i]);
    return c;
}

bool AbGroup::is_zero(Elem const & a) const
{
    for (std::size_t i = 0; i < n_.size(); ++i)
        if (mod(a.at(i), n_[i]) != 0)
            return false;
    return true;
}

std::int64_t AbGroup::element_order(Elem const & a) const
{
    std::int64_t o = 1;
    for (std::size_t i = 0; i < n_.size(); ++i) {
        std::int64_t x = mod(a.at(i), n_[i]);
        std::int64_t oi = n_[i] / std::gcd(x, n_[i]);
        o = std::lcm(o, oi);
    }
    return o;
}

std::size_t AbGroup::index(Elem const & a) const
{
    std::size_t idx = 0, radix = 1;
    for (std::size_t i = 0; i < n_.size(); ++i) {
        idx += static_cast<std::size_t>(mod(a.at(i), n_[i])) * radix;
        radix *= static_cast<std::size_t>(n_[i]);
    }
    return idx;
}

AbGroup::Elem AbGroup::element(std::size_t idx) const
{
    if (idx >= order())
        fail(ErrorKind::InvalidArgument, "group index out of range");
    Elem e(n_.size());
    for (std::size_t i = 0; i < n_.size(); ++i) {
        e[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(n_[i]));
        idx /= static_cast<std::size_t>(n_[i]);
    }
    return e;
}

std::string AbGroup::str() const
{
    if (n_.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < n_.size(); ++i)
        s += (i ? " x Z/" : "Z/") + std::to_string(n_[i]);
    return s;
}

std::vector<std::int64_t> prime_to_part(std::vector<std::int64_t> const & factors, std::int64_t ell)
{
    std::vector<std::int64_t> out;
    for (auto f : factors) {
        while (f % ell == 0)
            f /= ell;
        if (f > 1)
            out.push_back(f);
    }
    return out;
}

bool is_power_of(std::uint64_t n, std::uint64_t ell)
{
    if (n == 0)
        return false;
    while (n % ell == 0)
        n /= ell;
    return n == 1;
}

std::vector<AbGroup::Elem> subgroup_elements(AbGroup const & g, std::vector<AbGroup::Elem> const & gens)
{
    std::set<std::size_t> seen{g.index(g.zero())};
    std::vector<std::size_t> frontier{g.index(g.zero())};
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (auto idx : frontier)
            for (auto const & s : gens) {
                auto j = g.index(g.add(g.element(idx), s));
                if (seen.insert(j).second)
                    next.push_back(j);
            }
        frontier = std::move(next);
    }
    std::vector<AbGroup::Elem> out;
    for (auto idx : seen)
        out.push_back(g.element(idx));
    return out;
}

} // namespace ffh
