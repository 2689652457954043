#ifndef FFH_FRAC_HPP
#define FFH_FRAC_HPP

#include <string>

#include "ffh/poly.hpp"

namespace ffh {

/* An element num/den of k = F_q(T); den monic and coprime to num. */
class Frac {
  public:
    explicit Frac(Poly num);
    Frac(Poly num, Poly den);

    Poly const & num() const { return num_; }
    Poly const & den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }
    /* deg num - deg den; meaningless for zero. */
    int degree() const { return num_.degree() - den_.degree(); }

    friend Frac operator+(Frac const & a, Frac const & b);
    friend Frac operator-(Frac const & a, Frac const & b);
    friend Frac operator*(Frac const & a, Frac const & b);
    friend Frac operator/(Frac const & a, Frac const & b);
    Frac operator-() const { return Frac(-num_, den_); }

    bool operator==(Frac const &) const = default;

    std::string str() const;

  private:
    Poly num_, den_;
};

} // namespace ffh

#endif /* FFH_FRAC_HPP */
