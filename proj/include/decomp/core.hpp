#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace decomp
{

/// Thrown on malformed shapes, out-of-range parameters and size-ceiling violations.
class decomp_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

using value_t = std::uint64_t;

inline constexpr unsigned default_size_ceiling = 30;
inline constexpr unsigned max_output_bits = 32;

/*! \brief Truth table of T : B^p x B^q x B^r -> B^s.

  Bit strings are big-endian: the string s_0..s_{k-1} has index sum s_i 2^(k-1-i).
  The table is laid out by the combined index ((x 2^q + y) 2^r + z); within one
  index the s output bits are stored most significant first.
*/
class ternary_function
{
public:
  ternary_function( unsigned p, unsigned q, unsigned r, unsigned s = 1u, unsigned ceiling = default_size_ceiling );

  unsigned p() const noexcept { return p_; }
  unsigned q() const noexcept { return q_; }
  unsigned r() const noexcept { return r_; }
  unsigned s() const noexcept { return s_; }
  unsigned n() const noexcept { return p_ + q_ + r_; }

  std::uint64_t size() const noexcept { return std::uint64_t{ 1 } << n(); }

  value_t at( std::uint64_t index ) const;
  void set( std::uint64_t index, value_t value );

  value_t operator()( value_t x, value_t y, value_t z ) const { return at( index_of( x, y, z ) ); }

  std::uint64_t index_of( value_t x, value_t y, value_t z ) const noexcept
  {
    return ( ( x << q_ | y ) << r_ ) | z;
  }

  bool operator==( const ternary_function& other ) const = default;

private:
  unsigned p_, q_, r_, s_;
  std::vector<std::uint64_t> bits_;
};

struct input_triple
{
  value_t x = 0;
  value_t y = 0;
  value_t z = 0;
};

/// Evaluates T at a triple; throws when a component does not fit its width.
value_t eval( const ternary_function& tf, const input_triple& in );

/// Inverse of ternary_function::index_of.
input_triple decode_index( const ternary_function& tf, std::uint64_t index );

/*! \brief Witness T(x,y,z) = t(a(x,y), b(y,z)).

  Index conventions: a[x 2^q + y], b[y 2^r + z], t[alpha 2^v + beta].
*/
struct decomposition_certificate
{
  unsigned u = 0;
  unsigned v = 0;
  std::vector<value_t> a;
  std::vector<value_t> b;
  std::vector<value_t> t;

  unsigned size() const noexcept { return u + v; }
  bool operator==( const decomposition_certificate& ) const = default;
};

/// Throws decomp_error unless the certificate is shaped for tf (lengths and value ranges).
void check_certificate_shape( const ternary_function& tf, const decomposition_certificate& cert );

value_t certificate_eval( const ternary_function& tf, const decomposition_certificate& cert, value_t x, value_t y, value_t z );

/// First triple on which the certificate disagrees with tf, if any.
std::optional<input_triple> first_counterexample( const ternary_function& tf, const decomposition_certificate& cert );

bool verify_certificate( const ternary_function& tf, const decomposition_certificate& cert );

/// Exact fraction num/den, den = 2^(p+q+r), kept unreduced so the count stays visible.
struct agreement_ratio
{
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  bool operator==( const agreement_ratio& o ) const noexcept
  {
    return static_cast<unsigned __int128>( num ) * o.den == static_cast<unsigned __int128>( o.num ) * den;
  }
  auto operator<=>( const agreement_ratio& o ) const noexcept
  {
    return static_cast<unsigned __int128>( num ) * o.den <=> static_cast<unsigned __int128>( o.num ) * den;
  }
  std::string to_string() const;
};

agreement_ratio agreement( const ternary_function& tf, const decomposition_certificate& cert );

enum class family_kind
{
  xor_,
  equality,
  indexing,
  xor_indexing,
  add_indexing,
  constant,
  random
};

std::optional<family_kind> parse_family( const std::string& name );
std::string family_name( family_kind kind );

struct family_spec
{
  family_kind kind = family_kind::xor_;
  unsigned p = 0, q = 0, r = 0;
  unsigned k = 0;        ///< for the indexing families
  value_t value = 0;     ///< for constant
  std::uint64_t seed = 0; ///< for random
};

ternary_function make_family( const family_spec& spec, unsigned ceiling = default_size_ceiling );

/*! \brief Seeded random predicate.

  Generator: std::mt19937_64 seeded with `seed`; table word w (64 consecutive
  indices starting at 64w, index 64w+j taken from bit 63-j) is the w-th output.
*/
ternary_function random_predicate( unsigned p, unsigned q, unsigned r, std::uint64_t seed, unsigned ceiling = default_size_ceiling );

/// The same function with the roles of x and z exchanged.
ternary_function mirror( const ternary_function& tf );

unsigned popcount( value_t v ) noexcept;

} // namespace decomp
