#pragma once

#include "decomp/core.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <variant>

namespace decomp
{

struct search_budget
{
  unsigned max_m = 64;                       ///< largest u+v tried
  std::uint64_t max_nodes = 1'000'000'000;   ///< per feasibility search
  std::chrono::milliseconds max_time{ 30 * 60 * 1000 };
  bool allow_unknown = true;

  void validate() const;
};

struct search_stats
{
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

enum class feasibility_status
{
  feasible,
  infeasible,
  unknown
};

struct feasibility_result
{
  feasibility_status status = feasibility_status::unknown;
  std::optional<decomposition_certificate> certificate;
  search_stats stats;
};

/*! \brief Is there a decomposition with exactly u a-bits and v b-bits?

  Backtracking over colorings a[.] in [2^u], b[.] in [2^v], assigned alternately in
  ascending domain index with canonical first-use color numbering on each side.
  The partial t-table is the only pruning signal: a conflict is two different
  outputs forced into the same cell. Throws decomp_error when the budget runs out
  and `allow_unknown` is unset.
*/
feasibility_result feasible( const ternary_function& tf, unsigned u, unsigned v, const search_budget& budget = {} );

enum class solve_status
{
  exact,
  bounds_only
};

std::string to_string( solve_status status );

struct solve_result
{
  solve_status status = solve_status::bounds_only;
  unsigned lower = 0;
  unsigned upper = 0;
  std::optional<decomposition_certificate> certificate; ///< attains `upper`
  search_stats stats;
};

/// Least u+v admitting a decomposition. Splits of one m are searched concurrently
/// (DECOMP_THREADS caps the worker count); the result never depends on it.
solve_result exact_dc( const ternary_function& tf, const search_budget& budget = {} );

enum class slice_side
{
  left,
  right
};

/// a(x,y) = the slice z -> T(x,y,z) as 2^r bits, b = z (right); mirrored for left.
decomposition_certificate upper_bound_slice( const ternary_function& tf, slice_side side );

/// a = x plus the first j bits of y, b = the remaining bits of y plus z.
decomposition_certificate upper_bound_split( const ternary_function& tf, unsigned j );

/// Smallest certificate among the constructive upper bounds.
decomposition_certificate best_constructive_bound( const ternary_function& tf );

/// Number of distinct output values used by tf, as ceil(log2).
unsigned image_lower_bound( const ternary_function& tf );

struct best_agreement_options
{
  bool override_guard = false;
  std::uint64_t max_nodes = 200'000'000;
};

struct best_agreement_result
{
  agreement_ratio value;
  decomposition_certificate certificate;
  bool optimal = true; ///< false when the node budget ran out; value is then a lower bound
  search_stats stats;
};

/// Maximum agreement over all certificates with the given widths (branch and bound).
best_agreement_result best_agreement( const ternary_function& tf, unsigned u, unsigned v, const best_agreement_options& options = {} );

/// Worker count for parallel batches: DECOMP_THREADS if set, else hardware concurrency.
unsigned worker_count();

} // namespace decomp
