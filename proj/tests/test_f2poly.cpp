#include "decomp/core.hpp"
#include "decomp/f2poly.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace decomp;

namespace
{

std::vector<std::uint8_t> random_table( unsigned k, std::mt19937_64& gen )
{
  std::vector<std::uint8_t> t( std::size_t{ 1 } << k );
  for ( auto& b : t )
    b = gen() & 1u;
  return t;
}

anf_polynomial random_poly( unsigned k, std::mt19937_64& gen )
{
  std::vector<mask_t> m;
  for ( mask_t mask = 0; mask < ( mask_t{ 1 } << k ); ++mask )
    if ( gen() & 1u )
      m.push_back( mask );
  return make_anf( k, m );
}

// Variable u_i (1-based) is bit k-i of a mask, so positions are big-endian.
mask_t var( unsigned k, unsigned i ) { return mask_t{ 1 } << ( k - i ); }

} // namespace

TEST( F2poly, ConstantOne )
{
  EXPECT_EQ( anf_from_tt( { 1, 1, 1, 1 } ).monomials, std::vector<mask_t>{ 0 } );
}

TEST( F2poly, AndIsOneMonomial )
{
  EXPECT_EQ( anf_from_tt( { 0, 0, 0, 1 } ).monomials, std::vector<mask_t>{ var( 2, 1 ) | var( 2, 2 ) } );
}

TEST( F2poly, OrHasThreeMonomials )
{
  const auto p = anf_from_tt( { 0, 1, 1, 1 } );
  EXPECT_EQ( p.monomials, ( std::vector<mask_t>{ 1, 2, 3 } ) );
  EXPECT_EQ( eval_anf( p, 0b10 ), 1u );
  EXPECT_EQ( eval_anf( p, 0b00 ), 0u );
}

TEST( F2poly, EvalExamples )
{
  const auto one = make_anf( 3, { 0 } );
  for ( mask_t w = 0; w < 8; ++w )
    EXPECT_EQ( eval_anf( one, w ), 1u );
  EXPECT_EQ( eval_anf( make_anf( 2, { 3 } ), 0b11 ), 1u );
}

TEST( F2poly, TransformMatchesNaiveEvaluation )
{
  std::mt19937_64 gen( 1 );
  for ( unsigned k = 0; k <= 8; ++k )
    for ( int rep = 0; rep < 20; ++rep )
    {
      const auto table = random_table( k, gen );
      const auto p = anf_from_tt( table );
      for ( mask_t w = 0; w < table.size(); ++w )
        ASSERT_EQ( oracle::naive_eval( p.monomials, w ), table[w] );
    }
}

TEST( F2poly, MoebiusInvolution )
{
  std::mt19937_64 gen( 2 );
  for ( unsigned k = 0; k <= 10; ++k )
    for ( int rep = 0; rep < 50; ++rep )
    {
      const auto p = random_poly( k, gen );
      EXPECT_EQ( anf_from_tt( tt_from_anf( p ) ), p );
    }
}

TEST( F2poly, MakeAnfCancelsPairs )
{
  EXPECT_EQ( make_anf( 2, { 1, 3, 1 } ).monomials, std::vector<mask_t>{ 3 } );
  EXPECT_THROW( make_anf( 2, { 4 } ), decomp_error );
  EXPECT_THROW( anf_from_tt( { 0, 1, 1 } ), decomp_error );
}

TEST( F2poly, DegreeSplitExamples )
{
  const auto p = make_anf( 3, { 0, 7 } );
  const auto [lo, hi] = degree_split( p, 2 );
  EXPECT_EQ( lo.monomials, std::vector<mask_t>{ 0 } );
  EXPECT_EQ( hi.monomials, std::vector<mask_t>{ 7 } );
  const auto [all, none] = degree_split( p, 3 );
  EXPECT_EQ( all, p );
  EXPECT_TRUE( none.monomials.empty() );
  const auto [olo, ohi] = degree_split( anf_from_tt( { 0, 1, 1, 1 } ), 1 );
  EXPECT_EQ( olo.monomials, ( std::vector<mask_t>{ 1, 2 } ) );
  EXPECT_EQ( ohi.monomials, std::vector<mask_t>{ 3 } );
}

TEST( F2poly, XorSubstituteSingleVariable )
{
  const auto q = xor_substitute( make_anf( 1, { 1 } ) );
  EXPECT_EQ( q.monomials, ( std::vector<monomial_xz>{ { 0, 1 }, { 1, 0 } } ) );
}

TEST( F2poly, XorSubstituteProduct )
{
  const auto q = xor_substitute( make_anf( 2, { 3 } ) );
  const std::set<monomial_xz> got( q.monomials.begin(), q.monomials.end() );
  const std::set<monomial_xz> want{ { 3, 0 }, { 2, 1 }, { 1, 2 }, { 0, 3 } };
  EXPECT_EQ( got, want );
}

TEST( F2poly, XorSubstituteEvaluates )
{
  std::mt19937_64 gen( 3 );
  for ( unsigned k = 1; k <= 8; ++k )
  {
    const auto p = random_poly( k, gen );
    const auto q = xor_substitute( p );
    for ( int rep = 0; rep < 100; ++rep )
    {
      const mask_t x = gen() & ( ( 1u << k ) - 1 ), z = gen() & ( ( 1u << k ) - 1 );
      ASSERT_EQ( eval_anf2k( q, x, z ), eval_anf( p, x ^ z ) );
    }
  }
}

TEST( F2poly, XzSplitRules )
{
  anf2k_polynomial q;
  q.k = 3;
  q.monomials = { { 1, 0 } };
  auto [xl, zl] = xz_degree_split( q, 1 );
  EXPECT_EQ( xl.monomials.size(), 1u );
  EXPECT_TRUE( zl.monomials.empty() );

  q.monomials = { { 0b110, 0 } };
  std::tie( xl, zl ) = xz_degree_split( q, 1 );
  EXPECT_TRUE( xl.monomials.empty() );
  EXPECT_EQ( zl.monomials.size(), 1u );

  q.monomials = { { 0b110, 0b011 } };
  EXPECT_THROW( xz_degree_split( q, 1 ), decomp_error );
}

TEST( F2poly, CoverageOnLowPart )
{
  std::mt19937_64 gen( 4 );
  for ( unsigned k = 1; k <= 9; ++k )
    for ( int rep = 0; rep < 5; ++rep )
    {
      const auto y = anf_from_tt( random_table( k, gen ) );
      const auto low = degree_split( y, protocol_d( k ) ).first;
      EXPECT_NO_THROW( xz_degree_split( xor_substitute( low ), protocol_f( k ) ) );
    }
}

TEST( F2poly, MessageSizes )
{
  EXPECT_EQ( message_size( 3 ).a, 8 );
  EXPECT_EQ( message_size( 3 ).b, 7 );
  EXPECT_EQ( message_size( 6 ).a, 35 );
  EXPECT_EQ( message_size( 6 ).b, 28 );
  EXPECT_EQ( binomial_sum( 6, 0, 2 ), 22 );
  EXPECT_EQ( masks_by_degree( 3, 2, 3 ), ( std::vector<mask_t>{ 3, 5, 6, 7 } ) );
}

TEST( F2poly, ProtocolAndExample )
{
  // y = AND(u_1, u_2) as a table over points 00, 01, 10, 11.
  const std::vector<std::uint8_t> y{ 0, 0, 0, 1 };
  const auto a = protocol_alice( 0b01, y, 2 );
  const auto b = protocol_bob( 0b11, y, 2 );
  EXPECT_EQ( protocol_referee( a, b, 2 ), 0u );
}

TEST( F2poly, ProtocolDegenerateK1 )
{
  for ( unsigned ybits = 0; ybits < 4; ++ybits )
  {
    const std::vector<std::uint8_t> y{ static_cast<std::uint8_t>( ybits >> 1 ), static_cast<std::uint8_t>( ybits & 1 ) };
    for ( mask_t x = 0; x < 2; ++x )
      for ( mask_t z = 0; z < 2; ++z )
        EXPECT_EQ( protocol_referee( protocol_alice( x, y, 1 ), protocol_bob( z, y, 1 ), 1 ), y[x ^ z] );
  }
}

TEST( F2poly, ProtocolExhaustiveSmall )
{
  std::mt19937_64 gen( 5 );
  for ( unsigned k = 2; k <= 4; ++k )
    for ( int rep = 0; rep < 20; ++rep )
    {
      const auto y = random_table( k, gen );
      for ( mask_t x = 0; x < y.size(); ++x )
      {
        const auto a = protocol_alice( x, y, k );
        EXPECT_EQ( a.bits.size(), message_size( k ).a );
        for ( mask_t z = 0; z < y.size(); ++z )
          ASSERT_EQ( protocol_referee( a, protocol_bob( z, y, k ), k ), y[x ^ z] );
      }
    }
}

TEST( F2poly, ProtocolRejectsBadLengths )
{
  const std::vector<std::uint8_t> y{ 0, 1, 1, 0 };
  auto a = protocol_alice( 1, y, 2 );
  auto b = protocol_bob( 2, y, 2 );
  a.bits.push_back( 0 );
  EXPECT_THROW( protocol_referee( a, b, 2 ), decomp_error );
  EXPECT_THROW( protocol_alice( 0, { 0, 1, 1 }, 2 ), decomp_error );
}

TEST( F2poly, EmbeddingK1Exhaustive )
{
  family_spec s;
  s.kind = family_kind::indexing;
  s.k = 1;
  const auto t = make_family( s );
  s.kind = family_kind::xor_indexing;
  s.k = 2;
  const auto tp = make_family( s );
  for ( std::uint64_t i = 0; i < t.size(); ++i )
  {
    const auto in = decode_index( t, i );
    std::vector<std::uint8_t> matrix( 4 );
    for ( unsigned j = 0; j < 4; ++j )
      matrix[j] = ( in.y >> ( 3 - j ) ) & 1u;
    const auto e = embed_indexing( 1, static_cast<mask_t>( in.x ), matrix, static_cast<mask_t>( in.z ) );
    value_t yp = 0;
    for ( auto bit : e.y )
      yp = yp << 1 | bit;
    EXPECT_EQ( tp( e.x, yp, e.z ), t.at( i ) );
  }
}

TEST( F2poly, EmbeddingZeroMatrix )
{
  const auto e = embed_indexing( 2, 3, std::vector<std::uint8_t>( 16, 0 ), 1 );
  EXPECT_EQ( e.y[e.x ^ e.z], 0u );
  EXPECT_THROW( embed_indexing( 2, 4, std::vector<std::uint8_t>( 16, 0 ), 1 ), decomp_error );
}
