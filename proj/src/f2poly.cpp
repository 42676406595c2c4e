#include "decomp/f2poly.hpp"
#include "decomp/core.hpp"

#include <algorithm>

namespace decomp
{

namespace
{

void check_k( unsigned k )
{
  if ( k > max_anf_vars )
  {
    throw decomp_error( "polynomials support at most " + std::to_string( max_anf_vars ) + " variables" );
  }
}

template<class T>
void cancel_pairs( std::vector<T>& items )
{
  std::sort( items.begin(), items.end() );
  std::vector<T> out;
  out.reserve( items.size() );
  for ( std::size_t i = 0; i < items.size(); )
  {
    std::size_t j = i;
    while ( j < items.size() && items[j] == items[i] )
      ++j;
    if ( ( j - i ) % 2 == 1 )
      out.push_back( items[i] );
    i = j;
  }
  items = std::move( out );
}

void check_table( const std::vector<std::uint8_t>& table, unsigned k )
{
  if ( table.size() != ( std::size_t{ 1 } << k ) )
  {
    throw decomp_error( "truth table length must be 2^k" );
  }
}

} // namespace

anf_polynomial make_anf( unsigned k, std::vector<mask_t> monomials )
{
  check_k( k );
  for ( auto m : monomials )
  {
    if ( ( static_cast<std::uint64_t>( m ) >> k ) != 0 )
      throw decomp_error( "monomial mask out of range for k" );
  }
  cancel_pairs( monomials );
  return { k, std::move( monomials ) };
}

anf_polynomial anf_from_tt( const std::vector<std::uint8_t>& table )
{
  unsigned k = 0;
  while ( ( std::size_t{ 1 } << k ) < table.size() )
    ++k;
  check_k( k );
  check_table( table, k );

  std::vector<std::uint8_t> coeff( table.size() );
  for ( std::size_t i = 0; i < table.size(); ++i )
    coeff[i] = table[i] & 1u;
  for ( unsigned bit = 0; bit < k; ++bit )
  {
    const std::size_t step = std::size_t{ 1 } << bit;
    for ( std::size_t w = 0; w < coeff.size(); ++w )
    {
      if ( w & step )
        coeff[w] ^= coeff[w ^ step];
    }
  }
  anf_polynomial poly{ k, {} };
  for ( std::size_t m = 0; m < coeff.size(); ++m )
  {
    if ( coeff[m] )
      poly.monomials.push_back( static_cast<mask_t>( m ) );
  }
  return poly;
}

std::vector<std::uint8_t> tt_from_anf( const anf_polynomial& poly )
{
  check_k( poly.k );
  std::vector<std::uint8_t> table( std::size_t{ 1 } << poly.k, 0 );
  for ( auto m : poly.monomials )
    table[m] ^= 1u;
  // Superset sums: value(w) = sum over m subset w.
  for ( unsigned bit = 0; bit < poly.k; ++bit )
  {
    const std::size_t step = std::size_t{ 1 } << bit;
    for ( std::size_t w = 0; w < table.size(); ++w )
    {
      if ( w & step )
        table[w] ^= table[w ^ step];
    }
  }
  return table;
}

std::uint8_t eval_anf( const anf_polynomial& poly, mask_t point )
{
  std::uint8_t out = 0;
  for ( auto m : poly.monomials )
  {
    if ( ( point & m ) == m )
      out ^= 1u;
  }
  return out;
}

std::uint8_t eval_anf2k( const anf2k_polynomial& poly, mask_t x, mask_t z )
{
  std::uint8_t out = 0;
  for ( const auto& m : poly.monomials )
  {
    if ( ( x & m.x ) == m.x && ( z & m.z ) == m.z )
      out ^= 1u;
  }
  return out;
}

std::pair<anf_polynomial, anf_polynomial> degree_split( const anf_polynomial& poly, unsigned d )
{
  if ( d > poly.k )
  {
    throw decomp_error( "degree threshold must satisfy 0 <= d <= k" );
  }
  anf_polynomial low{ poly.k, {} }, high{ poly.k, {} };
  for ( auto m : poly.monomials )
  {
    ( popcount( m ) <= d ? low : high ).monomials.push_back( m );
  }
  return { std::move( low ), std::move( high ) };
}

anf2k_polynomial xor_substitute( const anf_polynomial& poly )
{
  check_k( poly.k );
  anf2k_polynomial out{ poly.k, {} };
  for ( auto s : poly.monomials )
  {
    // Enumerate A subset S: X_A Z_(S\A).
    mask_t a = s;
    while ( true )
    {
      out.monomials.push_back( { a, s & ~a } );
      if ( a == 0 )
        break;
      a = ( a - 1 ) & s;
    }
  }
  cancel_pairs( out.monomials );
  return out;
}

std::pair<anf2k_polynomial, anf2k_polynomial> xz_degree_split( const anf2k_polynomial& poly, unsigned f )
{
  anf2k_polynomial xlow{ poly.k, {} }, zlow{ poly.k, {} };
  for ( const auto& m : poly.monomials )
  {
    if ( popcount( m.x ) <= f )
      xlow.monomials.push_back( m );
    else if ( popcount( m.z ) <= f )
      zlow.monomials.push_back( m );
    else
      throw decomp_error( "monomial has both X-degree and Z-degree above " + std::to_string( f ) );
  }
  return { std::move( xlow ), std::move( zlow ) };
}

std::string to_string( const bit_string& bits )
{
  std::string out;
  out.reserve( bits.size() );
  for ( auto b : bits )
    out.push_back( b ? '1' : '0' );
  return out;
}

std::vector<mask_t> masks_by_degree( unsigned k, unsigned lo, unsigned hi )
{
  check_k( k );
  std::vector<mask_t> out;
  for ( std::uint64_t m = 0; m < ( std::uint64_t{ 1 } << k ); ++m )
  {
    const auto deg = popcount( m );
    if ( deg >= lo && deg <= hi )
      out.push_back( static_cast<mask_t>( m ) );
  }
  return out;
}

namespace
{

struct protocol_parts
{
  anf_polynomial high;
  anf2k_polynomial xlow;
  anf2k_polynomial zlow;
};

protocol_parts decompose_for_protocol( const std::vector<std::uint8_t>& y, unsigned k )
{
  if ( k == 0 )
  {
    throw decomp_error( "protocol needs k >= 1" );
  }
  check_k( k );
  check_table( y, k );
  auto [low, high] = degree_split( anf_from_tt( y ), protocol_d( k ) );
  auto [xlow, zlow] = xz_degree_split( xor_substitute( low ), protocol_f( k ) );
  return { std::move( high ), std::move( xlow ), std::move( zlow ) };
}

void append_bits( bit_string& out, mask_t value, unsigned width )
{
  for ( unsigned i = 0; i < width; ++i )
    out.push_back( static_cast<std::uint8_t>( ( value >> ( width - 1 - i ) ) & 1u ) );
}

/// Coefficient bits of `present` (sorted) over `order` (sorted).
void append_coefficients( bit_string& out, const std::vector<mask_t>& order, const std::vector<mask_t>& present )
{
  for ( auto m : order )
    out.push_back( std::binary_search( present.begin(), present.end(), m ) ? 1u : 0u );
}

mask_t read_bits( const bit_string& bits, std::size_t offset, unsigned width )
{
  mask_t value = 0;
  for ( unsigned i = 0; i < width; ++i )
    value = value << 1 | bits[offset + i];
  return value;
}

std::vector<mask_t> restrict_z( const anf2k_polynomial& poly, mask_t x )
{
  std::vector<mask_t> out;
  for ( const auto& m : poly.monomials )
  {
    if ( ( x & m.x ) == m.x )
      out.push_back( m.z );
  }
  cancel_pairs( out );
  return out;
}

std::vector<mask_t> restrict_x( const anf2k_polynomial& poly, mask_t z )
{
  std::vector<mask_t> out;
  for ( const auto& m : poly.monomials )
  {
    if ( ( z & m.z ) == m.z )
      out.push_back( m.x );
  }
  cancel_pairs( out );
  return out;
}

} // namespace

protocol_message_a protocol_alice( mask_t x, const std::vector<std::uint8_t>& y, unsigned k )
{
  const auto parts = decompose_for_protocol( y, k );
  if ( ( static_cast<std::uint64_t>( x ) >> k ) != 0 )
    throw decomp_error( "x does not fit in k bits" );
  protocol_message_a msg{ k, {} };
  append_bits( msg.bits, x, k );
  append_coefficients( msg.bits, masks_by_degree( k, protocol_d( k ) + 1, k ), parts.high.monomials );
  append_coefficients( msg.bits, masks_by_degree( k, 0, protocol_f( k ) ), restrict_z( parts.zlow, x ) );
  return msg;
}

protocol_message_b protocol_bob( mask_t z, const std::vector<std::uint8_t>& y, unsigned k )
{
  const auto parts = decompose_for_protocol( y, k );
  if ( ( static_cast<std::uint64_t>( z ) >> k ) != 0 )
    throw decomp_error( "z does not fit in k bits" );
  protocol_message_b msg{ k, {} };
  append_bits( msg.bits, z, k );
  append_coefficients( msg.bits, masks_by_degree( k, 0, protocol_f( k ) ), restrict_x( parts.xlow, z ) );
  return msg;
}

std::uint8_t protocol_referee( const protocol_message_a& a, const protocol_message_b& b, unsigned k )
{
  const auto sizes = message_size( k );
  if ( a.k != k || b.k != k || big_int( a.bits.size() ) != sizes.a || big_int( b.bits.size() ) != sizes.b )
  {
    throw decomp_error( "protocol message lengths do not match k" );
  }
  const mask_t x = read_bits( a.bits, 0, k );
  const mask_t z = read_bits( b.bits, 0, k );
  const mask_t w = x ^ z;

  std::uint8_t out = 0;
  std::size_t pos = k;
  for ( auto m : masks_by_degree( k, protocol_d( k ) + 1, k ) )
  {
    if ( a.bits[pos++] && ( w & m ) == m )
      out ^= 1u;
  }
  for ( auto m : masks_by_degree( k, 0, protocol_f( k ) ) )
  {
    if ( a.bits[pos++] && ( z & m ) == m )
      out ^= 1u;
  }
  pos = k;
  for ( auto m : masks_by_degree( k, 0, protocol_f( k ) ) )
  {
    if ( b.bits[pos++] && ( x & m ) == m )
      out ^= 1u;
  }
  return out;
}

big_int binomial_sum( unsigned k, unsigned lo, unsigned hi )
{
  big_int sum = 0;
  big_int c = 1; // C(k, 0)
  for ( unsigned j = 0; j <= k; ++j )
  {
    if ( j >= lo && j <= hi )
      sum += c;
    c = c * ( k - j ) / ( j + 1 );
  }
  return sum;
}

message_sizes message_size( unsigned k )
{
  if ( k == 0 )
  {
    throw decomp_error( "message_size needs k >= 1" );
  }
  const big_int low = binomial_sum( k, 0, protocol_f( k ) );
  return { big_int( k ) + binomial_sum( k, protocol_d( k ) + 1, k ) + low, big_int( k ) + low };
}

embedded_input embed_indexing( unsigned k, mask_t x, const std::vector<std::uint8_t>& matrix, mask_t z )
{
  if ( k == 0 || 2 * k > max_anf_vars )
  {
    throw decomp_error( "embedding needs 1 <= 2k <= 24" );
  }
  if ( matrix.size() != ( std::size_t{ 1 } << ( 2 * k ) ) || ( x >> k ) != 0 || ( z >> k ) != 0 )
  {
    throw decomp_error( "indexing input does not match k" );
  }
  embedded_input out;
  out.x = x;
  out.z = z << k;
  out.y.resize( matrix.size() );
  // x' xor z' is the string z.x; y'(z.x) := y(x, z).
  for ( mask_t zz = 0; zz < ( mask_t{ 1 } << k ); ++zz )
    for ( mask_t xx = 0; xx < ( mask_t{ 1 } << k ); ++xx )
      out.y[zz << k | xx] = matrix[xx << k | zz] & 1u;
  return out;
}

} // namespace decomp
