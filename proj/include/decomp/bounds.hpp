#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace decomp
{

using big_int = boost::multiprecision::cpp_int;

/// Exact rational num/den with den > 0.
struct rational
{
  big_int num = 0;
  big_int den = 1;

  std::string to_string() const;
};

enum class bound_kind
{
  counting,
  counting_approx,
  indexing_formula
};

std::string to_string( bound_kind kind );

/// The inequality evaluated at one candidate m: terms, their sum, the right side, and the decision.
struct bound_row
{
  unsigned m = 0;
  std::vector<std::pair<std::string, big_int>> terms;
  big_int total;
  big_int rhs;
  bool holds = false; ///< counting kinds: total < rhs; indexing: total >= rhs

  bool resum_consistent() const;
};

struct bound_report
{
  bound_kind kind = bound_kind::counting;
  unsigned p = 0, q = 0, r = 0, k = 0;
  std::optional<rational> epsilon;
  std::optional<rational> entropy_upper; ///< certified H(epsilon) upper bound
  bool vacuous = false;                  ///< no m satisfies the inequality
  unsigned m = 0;
  std::vector<bound_row> rows;           ///< at m and m+1 (indexing: m-1 and m)

  /// Every stored row re-sums to its total and reproduces its decision.
  bool consistent() const;
};

/// ceil(log2 m), taken as 0 for m <= 1.
unsigned ceil_log2( std::uint64_t m );

/*! \brief Largest m with ceil(log2 m) + m 2^(p+q) + m 2^(q+r) + 2^m < 2^(p+q+r).

  For such m some predicate on these widths has decomposition complexity above m.
*/
bound_report counting_lower_bound( unsigned p, unsigned q, unsigned r );

/// As counting_lower_bound with the right side replaced by a certified lower
/// bound on (1 - H(eps)) 2^n. Requires 0 <= eps < 1/2.
bound_report counting_lower_bound_approx( unsigned p, unsigned q, unsigned r, const rational& epsilon );

/// u+v >= 2^k for the indexing predicate, from (u+v) 2^k >= 2^(2k).
bound_report indexing_lower_bound( unsigned k );

/// Fixed-point precision (fraction bits) used by the entropy bound.
inline constexpr unsigned entropy_precision_bits = 192;

/// Upper bound on H(eps) = -eps log2 eps - (1-eps) log2(1-eps), as num / 2^entropy_precision_bits.
rational binary_entropy_upper( const rational& epsilon );

rational parse_rational( const std::string& text );

} // namespace decomp
