#include "decomp/core.hpp"

#include <bit>
#include <random>

namespace decomp
{

unsigned popcount( value_t v ) noexcept
{
  return static_cast<unsigned>( std::popcount( v ) );
}

ternary_function::ternary_function( unsigned p, unsigned q, unsigned r, unsigned s, unsigned ceiling )
    : p_( p ), q_( q ), r_( r ), s_( s )
{
  if ( p + q + r > ceiling )
  {
    throw decomp_error( "p+q+r = " + std::to_string( p + q + r ) + " exceeds the size ceiling " + std::to_string( ceiling ) );
  }
  if ( s == 0 || s > max_output_bits )
  {
    throw decomp_error( "output width s must be in [1, 32]" );
  }
  const std::uint64_t total_bits = ( std::uint64_t{ 1 } << n() ) * s;
  bits_.assign( ( total_bits + 63 ) / 64, 0 );
}

value_t ternary_function::at( std::uint64_t index ) const
{
  value_t out = 0;
  const std::uint64_t base = index * s_;
  for ( unsigned j = 0; j < s_; ++j )
  {
    const std::uint64_t pos = base + j;
    out = ( out << 1 ) | ( ( bits_[pos >> 6] >> ( pos & 63 ) ) & 1u );
  }
  return out;
}

void ternary_function::set( std::uint64_t index, value_t value )
{
  if ( s_ < 64 && ( value >> s_ ) != 0 )
  {
    throw decomp_error( "value does not fit the output width" );
  }
  const std::uint64_t base = index * s_;
  for ( unsigned j = 0; j < s_; ++j )
  {
    const std::uint64_t pos = base + j;
    const std::uint64_t bit = ( value >> ( s_ - 1 - j ) ) & 1u;
    bits_[pos >> 6] = ( bits_[pos >> 6] & ~( std::uint64_t{ 1 } << ( pos & 63 ) ) ) | ( bit << ( pos & 63 ) );
  }
}

value_t eval( const ternary_function& tf, const input_triple& in )
{
  if ( ( in.x >> tf.p() ) != 0 || ( in.y >> tf.q() ) != 0 || ( in.z >> tf.r() ) != 0 )
  {
    throw decomp_error( "input triple does not match the function widths" );
  }
  return tf( in.x, in.y, in.z );
}

input_triple decode_index( const ternary_function& tf, std::uint64_t index )
{
  input_triple in;
  in.z = index & ( ( value_t{ 1 } << tf.r() ) - 1 );
  index >>= tf.r();
  in.y = index & ( ( value_t{ 1 } << tf.q() ) - 1 );
  in.x = index >> tf.q();
  return in;
}

void check_certificate_shape( const ternary_function& tf, const decomposition_certificate& cert )
{
  if ( cert.u > 40 || cert.v > 40 || cert.u + cert.v > 40 )
  {
    throw decomp_error( "certificate message widths are too large" );
  }
  if ( cert.a.size() != ( std::uint64_t{ 1 } << ( tf.p() + tf.q() ) ) )
  {
    throw decomp_error( "certificate table a has length " + std::to_string( cert.a.size() ) + ", expected 2^(p+q)" );
  }
  if ( cert.b.size() != ( std::uint64_t{ 1 } << ( tf.q() + tf.r() ) ) )
  {
    throw decomp_error( "certificate table b has length " + std::to_string( cert.b.size() ) + ", expected 2^(q+r)" );
  }
  if ( cert.t.size() != ( std::uint64_t{ 1 } << ( cert.u + cert.v ) ) )
  {
    throw decomp_error( "certificate table t has length " + std::to_string( cert.t.size() ) + ", expected 2^(u+v)" );
  }
  for ( auto alpha : cert.a )
  {
    if ( ( alpha >> cert.u ) != 0 )
      throw decomp_error( "certificate a-value out of range" );
  }
  for ( auto beta : cert.b )
  {
    if ( ( beta >> cert.v ) != 0 )
      throw decomp_error( "certificate b-value out of range" );
  }
  for ( auto out : cert.t )
  {
    if ( ( out >> tf.s() ) != 0 )
      throw decomp_error( "certificate t-value out of range" );
  }
}

value_t certificate_eval( const ternary_function& tf, const decomposition_certificate& cert, value_t x, value_t y, value_t z )
{
  const auto alpha = cert.a[x << tf.q() | y];
  const auto beta = cert.b[y << tf.r() | z];
  return cert.t[alpha << cert.v | beta];
}

std::optional<input_triple> first_counterexample( const ternary_function& tf, const decomposition_certificate& cert )
{
  check_certificate_shape( tf, cert );
  for ( std::uint64_t index = 0; index < tf.size(); ++index )
  {
    const auto in = decode_index( tf, index );
    if ( certificate_eval( tf, cert, in.x, in.y, in.z ) != tf.at( index ) )
    {
      return in;
    }
  }
  return std::nullopt;
}

bool verify_certificate( const ternary_function& tf, const decomposition_certificate& cert )
{
  return !first_counterexample( tf, cert ).has_value();
}

std::string agreement_ratio::to_string() const
{
  return std::to_string( num ) + "/" + std::to_string( den );
}

agreement_ratio agreement( const ternary_function& tf, const decomposition_certificate& cert )
{
  if ( tf.s() != 1 )
  {
    throw decomp_error( "agreement is defined for predicates (s = 1)" );
  }
  check_certificate_shape( tf, cert );
  agreement_ratio result{ 0, tf.size() };
  for ( std::uint64_t index = 0; index < tf.size(); ++index )
  {
    const auto in = decode_index( tf, index );
    if ( certificate_eval( tf, cert, in.x, in.y, in.z ) == tf.at( index ) )
    {
      ++result.num;
    }
  }
  return result;
}

std::optional<family_kind> parse_family( const std::string& name )
{
  if ( name == "xor" )
    return family_kind::xor_;
  if ( name == "equality" )
    return family_kind::equality;
  if ( name == "indexing" )
    return family_kind::indexing;
  if ( name == "xor-indexing" )
    return family_kind::xor_indexing;
  if ( name == "add-indexing" )
    return family_kind::add_indexing;
  if ( name == "constant" )
    return family_kind::constant;
  if ( name == "random" )
    return family_kind::random;
  return std::nullopt;
}

std::string family_name( family_kind kind )
{
  switch ( kind )
  {
  case family_kind::xor_:
    return "xor";
  case family_kind::equality:
    return "equality";
  case family_kind::indexing:
    return "indexing";
  case family_kind::xor_indexing:
    return "xor-indexing";
  case family_kind::add_indexing:
    return "add-indexing";
  case family_kind::constant:
    return "constant";
  case family_kind::random:
    return "random";
  }
  return "unknown";
}

namespace
{

/// Bit at string position `pos` of a width-bit value (position 0 is the leftmost bit).
inline value_t bit_at( value_t word, unsigned width, std::uint64_t pos )
{
  return ( word >> ( width - 1 - pos ) ) & 1u;
}

ternary_function make_indexed( unsigned k, bool matrix, value_t ( *combine )( value_t, value_t, unsigned ), unsigned ceiling )
{
  if ( k == 0 )
  {
    throw decomp_error( "indexing families need k >= 1" );
  }
  const unsigned q = 1u << ( matrix ? 2 * k : k );
  ternary_function tf( k, q, k, 1, ceiling );
  if ( q > 63 )
  {
    throw decomp_error( "indexing middle argument too wide" );
  }
  for ( std::uint64_t index = 0; index < tf.size(); ++index )
  {
    const auto in = decode_index( tf, index );
    tf.set( index, bit_at( in.y, q, combine( in.x, in.z, k ) ) );
  }
  return tf;
}

} // namespace

ternary_function make_family( const family_spec& spec, unsigned ceiling )
{
  switch ( spec.kind )
  {
  case family_kind::xor_:
  {
    ternary_function tf( spec.p, spec.q, spec.r, 1, ceiling );
    for ( std::uint64_t index = 0; index < tf.size(); ++index )
    {
      tf.set( index, popcount( index ) & 1u );
    }
    return tf;
  }
  case family_kind::equality:
  {
    if ( spec.p != spec.r )
    {
      throw decomp_error( "equality needs p = r" );
    }
    ternary_function tf( spec.p, spec.q, spec.r, 1, ceiling );
    for ( std::uint64_t index = 0; index < tf.size(); ++index )
    {
      const auto in = decode_index( tf, index );
      tf.set( index, in.x == in.z ? 1u : 0u );
    }
    return tf;
  }
  case family_kind::indexing:
    if ( spec.k == 0 || 2 * spec.k + ( std::uint64_t{ 1 } << std::min( 2 * spec.k, 40u ) ) > ceiling )
    {
      throw decomp_error( "indexing with k = " + std::to_string( spec.k ) + " exceeds the size ceiling" );
    }
    return make_indexed(
        spec.k, true, []( value_t x, value_t z, unsigned k ) { return x << k | z; }, ceiling );
  case family_kind::xor_indexing:
  case family_kind::add_indexing:
    if ( spec.k == 0 || 2 * spec.k + ( std::uint64_t{ 1 } << std::min( spec.k, 40u ) ) > ceiling )
    {
      throw decomp_error( family_name( spec.kind ) + " with k = " + std::to_string( spec.k ) + " exceeds the size ceiling" );
    }
    if ( spec.kind == family_kind::xor_indexing )
    {
      return make_indexed(
          spec.k, false, []( value_t x, value_t z, unsigned ) { return x ^ z; }, ceiling );
    }
    return make_indexed(
        spec.k, false, []( value_t x, value_t z, unsigned k ) { return ( x + z ) & ( ( value_t{ 1 } << k ) - 1 ); }, ceiling );
  case family_kind::constant:
  {
    if ( spec.value > 1 )
    {
      throw decomp_error( "constant predicate value must be 0 or 1" );
    }
    ternary_function tf( spec.p, spec.q, spec.r, 1, ceiling );
    for ( std::uint64_t index = 0; index < tf.size(); ++index )
    {
      tf.set( index, spec.value );
    }
    return tf;
  }
  case family_kind::random:
    return random_predicate( spec.p, spec.q, spec.r, spec.seed, ceiling );
  }
  throw decomp_error( "unknown family" );
}

ternary_function random_predicate( unsigned p, unsigned q, unsigned r, std::uint64_t seed, unsigned ceiling )
{
  ternary_function tf( p, q, r, 1, ceiling );
  std::mt19937_64 gen( seed );
  std::uint64_t word = 0;
  for ( std::uint64_t index = 0; index < tf.size(); ++index )
  {
    if ( ( index & 63 ) == 0 )
    {
      word = gen();
    }
    tf.set( index, ( word >> ( 63 - ( index & 63 ) ) ) & 1u );
  }
  return tf;
}

ternary_function mirror( const ternary_function& tf )
{
  ternary_function out( tf.r(), tf.q(), tf.p(), tf.s(), tf.n() );
  for ( std::uint64_t index = 0; index < tf.size(); ++index )
  {
    const auto in = decode_index( tf, index );
    out.set( out.index_of( in.z, in.y, in.x ), tf.at( index ) );
  }
  return out;
}

} // namespace decomp
