#ifndef FFH_ERROR_HPP
#define FFH_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ffh {

/* Every failure the library can report. The CLI maps BudgetExceeded to exit
 * code 3 and everything else to exit code 2. */
enum class ErrorKind {
    DivisionByZero,
    FieldMismatch,
    ZeroPolynomial,
    RankDeficient,
    Singular,
    NotIntegral,
    NotSquareFree,
    RealField,
    DegenerateConstantField,
    EvenCharacteristic,
    NotIrreducible,
    ZeroScale,
    NotContained,
    OrderMismatch,
    NotProper,
    NotInvertible,
    BudgetExceeded,
    InertCaseUnsupported,
    NotCyclic,
    LevelMismatch,
    NotDivisor,
    NotCoprime,
    NonSplitPrime,
    PDividesN,
    NotSquareFreeLevel,
    NoWitnessInHorizon,
    VerificationFailed,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string const & what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what)
        , kind_(kind)
    {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

class BudgetExceeded : public Error {
  public:
    BudgetExceeded(std::uint64_t limit, std::string const & what)
        : Error(ErrorKind::BudgetExceeded,
                what + " (limit " + std::to_string(limit) + ")")
        , limit_(limit)
    {}

    std::uint64_t limit() const { return limit_; }

  private:
    std::uint64_t limit_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const & what)
{
    throw Error(kind, what);
}

/* Enumeration caps shared by every search in the library. */
struct Budget {
    std::uint64_t max_enumeration = 2'000'000;
    int max_prime_degree = 10;

    void check(std::uint64_t needed, char const * what) const
    {
        if (needed > max_enumeration)
            throw BudgetExceeded(max_enumeration, what);
    }
};

} // namespace ffh

#endif /* FFH_ERROR_HPP */
