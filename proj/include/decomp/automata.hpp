#pragma once

#include "decomp/bounds.hpp"
#include "decomp/core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace decomp
{

using state_t = std::uint16_t;

/// Uniform one-dimensional rule; delta is indexed (left * states + center) * states + right.
struct ca_rule
{
  unsigned states = 0;
  state_t neutral = 0;
  state_t zero = 0;
  state_t one = 0;
  std::vector<state_t> delta;

  state_t apply( state_t left, state_t center, state_t right ) const
  {
    return delta[( static_cast<std::size_t>( left ) * states + center ) * states + right];
  }

  /// Throws unless the table is sized, all ids are in range and neutral is stable.
  void validate() const;
};

/// Finite window of a biinfinite configuration; every cell outside it is neutral.
struct configuration
{
  std::int64_t offset = 0; ///< cell index of cells.front()
  std::vector<state_t> cells;

  state_t at( std::int64_t cell, state_t neutral ) const
  {
    const auto i = cell - offset;
    return i < 0 || i >= static_cast<std::int64_t>( cells.size() ) ? neutral : cells[static_cast<std::size_t>( i )];
  }
};

struct asap_point
{
  std::int64_t cell = 0;
  std::int64_t time = 0;
};

/// Earliest point whose light cone covers all n inputs: (floor((n-1)/2), ceil((n-1)/2)).
asap_point asap_schedule( unsigned n );

/// Input bits as zero/one states at cells 0..n-1.
configuration encode_bits( const ca_rule& rule, const std::vector<std::uint8_t>& bits );

/// One synchronous step. The window widens by one cell per side, then neutral borders are trimmed.
configuration ca_step( const ca_rule& rule, const configuration& config );

/// Configurations at times 0..steps.
std::vector<configuration> ca_run( const ca_rule& rule, const configuration& initial, unsigned steps );
std::vector<configuration> ca_run( const ca_rule& rule, const std::vector<std::uint8_t>& bits, unsigned steps );

/*! \brief Non-uniform automaton on the space-time triangle below its output point.

  The output is read at (c*, height) with c* = floor((n-1)/2); the vertex at
  (cell, time), time >= 1, maps the three states at time-1 to a new one. Every
  vertex function fixes (neutral, neutral, neutral).
*/
class triangle_circuit
{
public:
  struct seeded
  {
    std::uint64_t seed = 0;
  };
  struct uniform
  {
    std::vector<state_t> delta;
  };
  /// tables[time-1][cell - (c* - (height - time))], each of length states^3.
  struct explicit_tables
  {
    std::vector<std::vector<std::vector<state_t>>> tables;
  };
  using source_type = std::variant<seeded, uniform, explicit_tables>;

  triangle_circuit( unsigned n, unsigned height, unsigned states, state_t neutral, state_t zero, state_t one, source_type source );

  static triangle_circuit random( unsigned n, unsigned height, unsigned states, std::uint64_t seed );
  static triangle_circuit from_rule( const ca_rule& rule, unsigned n, unsigned height );

  unsigned n() const noexcept { return n_; }
  unsigned height() const noexcept { return height_; }
  unsigned states() const noexcept { return states_; }
  state_t neutral() const noexcept { return neutral_; }
  state_t zero() const noexcept { return zero_; }
  state_t one() const noexcept { return one_; }
  std::int64_t output_cell() const noexcept { return output_cell_; }
  const source_type& source() const noexcept { return source_; }

  /// Whether (cell, time) lies in the triangle feeding the output point.
  bool in_triangle( std::int64_t cell, std::int64_t time ) const noexcept;

  state_t apply( std::int64_t cell, std::int64_t time, state_t left, state_t center, state_t right ) const;

  /// Time-0 state of input position `cell` (neutral outside [0, n)).
  state_t input_state( std::int64_t cell, std::uint64_t input ) const;

  /// Per-position input alphabet; by default every position uses (zero, one).
  void set_input_encoding( std::vector<std::array<state_t, 2>> encoding );
  const std::vector<std::array<state_t, 2>>& input_encoding() const noexcept { return encoding_; }

private:
  unsigned n_, height_, states_;
  state_t neutral_, zero_, one_;
  std::int64_t output_cell_;
  source_type source_;
  std::vector<std::array<state_t, 2>> encoding_;
};

/// Input bits are packed big-endian: bit i of the string is (input >> (n-1-i)) & 1.
inline std::uint8_t input_bit( std::uint64_t input, unsigned n, std::int64_t i )
{
  return static_cast<std::uint8_t>( ( input >> ( n - 1 - static_cast<unsigned>( i ) ) ) & 1u );
}

/// The row of states at `time` on cells [first, last], computed inside the triangle.
std::vector<state_t> triangle_row( const triangle_circuit& circuit, std::uint64_t input, std::int64_t time, std::int64_t first, std::int64_t last );

/// State at the output point (c*, height).
state_t triangle_run( const triangle_circuit& circuit, std::uint64_t input );

/// Bits per state: max(1, ceil(log2 states)).
unsigned state_bits( unsigned states );

/// The function computed by the circuit, split as (k, n-2k, k) with s = state_bits outputs.
ternary_function circuit_function( const triangle_circuit& circuit, unsigned k );

/*! \brief Reads a decomposition off the row k+delta steps below the output.

  With t* the ASAP time and height t*+delta, the row at time t*-k spans
  [c*-k-delta, c*+k+delta]: cells up to c* form a(x,y), the rest b(y,z), and t
  replays the upper sub-triangle. Each state occupies state_bits() bits.
*/
decomposition_certificate extract_decomposition( const triangle_circuit& circuit, unsigned k, unsigned f, unsigned delta );

struct state_bound
{
  unsigned k = 0;
  unsigned delta = 0;
  big_int dc_lower;      ///< 2^k, from the indexing bound
  unsigned row_cells = 0; ///< 2k + 2 delta + 1
  big_int states;        ///< least sigma with sigma^row_cells >= 2^(2^k)
};

state_bound min_state_bound( unsigned k, unsigned delta );

/// The uniform automaton computing y(x, z) for the indexing predicate.
struct indexing_automaton
{
  ca_rule rule;
  unsigned k = 0;
  /// Input states per position: x bits, then 2^(2k) y bits, then z bits.
  std::vector<std::array<state_t, 2>> encoding;
  std::int64_t result_cell = 0;  ///< the answer appears here as rule.zero / rule.one
  unsigned linear_constant = 4;  ///< answer within linear_constant * n steps

  unsigned n() const { return static_cast<unsigned>( encoding.size() ); }
  configuration encode( std::uint64_t x, const std::vector<std::uint8_t>& y, std::uint64_t z ) const;
};

indexing_automaton indexing_ca_build( unsigned k );

/// Runs the automaton until the result cell shows zero or one, up to max_steps.
struct indexing_outcome
{
  std::optional<std::uint8_t> value;
  unsigned steps = 0;
};

indexing_outcome run_indexing( const indexing_automaton& automaton, const configuration& initial, unsigned max_steps );

} // namespace decomp
