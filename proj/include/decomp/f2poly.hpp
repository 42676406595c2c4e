#pragma once

#include "decomp/bounds.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace decomp
{

using mask_t = std::uint32_t;

/*! \brief Multilinear polynomial over GF(2) in k variables.

  A monomial is a variable-subset mask laid out like point indices: monomial m
  is 1 at point w iff (w & m) == m. Monomials are kept sorted ascending, each
  present at most once (coefficient 1).
*/
struct anf_polynomial
{
  unsigned k = 0;
  std::vector<mask_t> monomials;

  bool operator==( const anf_polynomial& ) const = default;
};

/// Monomial over X_1..X_k, Z_1..Z_k as the pair (xmask, zmask).
struct monomial_xz
{
  mask_t x = 0;
  mask_t z = 0;

  auto operator<=>( const monomial_xz& ) const = default;
};

struct anf2k_polynomial
{
  unsigned k = 0;
  std::vector<monomial_xz> monomials; ///< sorted, unique

  bool operator==( const anf2k_polynomial& ) const = default;
};

inline constexpr unsigned max_anf_vars = 24;

/// Builds a normalized polynomial: masks checked against k, duplicates cancelled in pairs.
anf_polynomial make_anf( unsigned k, std::vector<mask_t> monomials );

/// Subset Moebius transform of a truth table of length 2^k (entry w = value at point w).
anf_polynomial anf_from_tt( const std::vector<std::uint8_t>& table );

/// The inverse direction: evaluations of P at all 2^k points.
std::vector<std::uint8_t> tt_from_anf( const anf_polynomial& poly );

std::uint8_t eval_anf( const anf_polynomial& poly, mask_t point );
std::uint8_t eval_anf2k( const anf2k_polynomial& poly, mask_t x, mask_t z );

std::pair<anf_polynomial, anf_polynomial> degree_split( const anf_polynomial& poly, unsigned d );

/// y(X xor Z): each monomial prod_{i in S}(X_i + Z_i) expands to sum over A subset S of X_A Z_(S\A).
anf2k_polynomial xor_substitute( const anf_polynomial& poly );

/// Monomials with X-degree <= f go left; the rest must have Z-degree <= f and go right.
std::pair<anf2k_polynomial, anf2k_polynomial> xz_degree_split( const anf2k_polynomial& poly, unsigned f );

/// Thresholds of the sublinear protocol: high/low at floor(2k/3), x/z-low at floor(k/3).
inline unsigned protocol_d( unsigned k ) { return 2 * k / 3; }
inline unsigned protocol_f( unsigned k ) { return k / 3; }

using bit_string = std::vector<std::uint8_t>;

std::string to_string( const bit_string& bits );

/*! Alice's message (she sees x and y):
    x (k bits, big-endian) | one bit per mask of degree > d, ascending (y_high)
    | one bit per mask of degree <= f, ascending (Z -> y~_zlow(x, Z)).
*/
struct protocol_message_a
{
  unsigned k = 0;
  bit_string bits;
};

/// Bob's message: z (k bits) | one bit per mask of degree <= f, ascending (X -> y~_xlow(X, z)).
struct protocol_message_b
{
  unsigned k = 0;
  bit_string bits;
};

/// y is the truth table of y : B^k -> B indexed by point value.
protocol_message_a protocol_alice( mask_t x, const std::vector<std::uint8_t>& y, unsigned k );
protocol_message_b protocol_bob( mask_t z, const std::vector<std::uint8_t>& y, unsigned k );
std::uint8_t protocol_referee( const protocol_message_a& a, const protocol_message_b& b, unsigned k );

struct message_sizes
{
  big_int a;
  big_int b;
};

message_sizes message_size( unsigned k );

/// Sum_{j in [lo, hi]} C(k, j).
big_int binomial_sum( unsigned k, unsigned lo, unsigned hi );

/// Masks of the given degree range in ascending order (the coefficient order inside messages).
std::vector<mask_t> masks_by_degree( unsigned k, unsigned lo, unsigned hi );

struct embedded_input
{
  mask_t x = 0;               ///< 2k bits: 0^k x
  mask_t z = 0;               ///< 2k bits: z 0^k
  std::vector<std::uint8_t> y; ///< 2^(2k) entries, y'(w)
};

/*! Maps an indexing input (x, y-matrix, z) at k to an xor-indexing input at 2k with
    T'(x', y', z') = T(x, y, z). `matrix` has 2^(2k) entries, entry x 2^k + z = y(x, z).
*/
embedded_input embed_indexing( unsigned k, mask_t x, const std::vector<std::uint8_t>& matrix, mask_t z );

} // namespace decomp
