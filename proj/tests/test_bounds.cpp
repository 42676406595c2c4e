#include "decomp/bounds.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace decomp;

namespace
{

// ceil(log2 m) + m 2^(p+q) + m 2^(q+r) + 2^m in 128-bit arithmetic.
unsigned __int128 lhs128( unsigned p, unsigned q, unsigned r, unsigned m )
{
  unsigned __int128 one = 1;
  return oracle::ceil_log2( m ) + ( one * m << ( p + q ) ) + ( one * m << ( q + r ) ) + ( one << m );
}

long counting128( unsigned p, unsigned q, unsigned r )
{
  long best = -1;
  const unsigned __int128 rhs = static_cast<unsigned __int128>( 1 ) << ( p + q + r );
  for ( unsigned m = 0; m < 100 && lhs128( p, q, r, m ) < rhs; ++m )
    best = m;
  return best;
}

} // namespace

TEST( Bounds, CeilLog2 )
{
  EXPECT_EQ( ceil_log2( 0 ), 0u );
  EXPECT_EQ( ceil_log2( 1 ), 0u );
  EXPECT_EQ( ceil_log2( 2 ), 1u );
  EXPECT_EQ( ceil_log2( 3 ), 2u );
  EXPECT_EQ( ceil_log2( 31 ), 5u );
  EXPECT_EQ( ceil_log2( 32 ), 5u );
  EXPECT_EQ( ceil_log2( 33 ), 6u );
}

TEST( Bounds, CountingExamples )
{
  const auto big = counting_lower_bound( 8, 16, 8 );
  EXPECT_FALSE( big.vacuous );
  EXPECT_EQ( big.m, 31u );
  EXPECT_TRUE( big.consistent() );
  ASSERT_EQ( big.rows.size(), 2u );
  EXPECT_TRUE( big.rows[0].holds );
  EXPECT_FALSE( big.rows[1].holds );

  const auto small = counting_lower_bound( 2, 4, 2 );
  EXPECT_EQ( small.m, 1u );
  EXPECT_EQ( small.rows[0].total, 130 );
  EXPECT_EQ( small.rows[1].total, 261 );
  EXPECT_EQ( small.rows[0].rhs, 256 );
}

TEST( Bounds, CountingVacuous )
{
  const auto rep = counting_lower_bound( 0, 0, 0 );
  EXPECT_TRUE( rep.vacuous );
  EXPECT_TRUE( rep.consistent() );
}

TEST( Bounds, CountingAgreesWithWideIntegers )
{
  for ( unsigned p = 0; p <= 6; ++p )
    for ( unsigned q = 0; q <= 12; q += 3 )
      for ( unsigned r = 0; r <= 6; ++r )
      {
        const auto rep = counting_lower_bound( p, q, r );
        const long expect = counting128( p, q, r );
        if ( expect < 0 )
          EXPECT_TRUE( rep.vacuous );
        else
        {
          EXPECT_FALSE( rep.vacuous );
          EXPECT_EQ( static_cast<long>( rep.m ), expect ) << p << " " << q << " " << r;
          EXPECT_LE( rep.m, p + q + r );
        }
        EXPECT_TRUE( rep.consistent() );
      }
}

TEST( Bounds, TamperedReportIsInconsistent )
{
  auto rep = counting_lower_bound( 2, 4, 2 );
  rep.rows[0].terms[1].second += 1;
  EXPECT_FALSE( rep.consistent() );
}

TEST( Bounds, EntropyUpperIsSound )
{
  for ( unsigned den : { 3u, 4u, 7u, 10u, 1000u } )
    for ( unsigned num = 1; 2 * num < den; num += std::max( 1u, den / 9 ) )
    {
      const auto h = binary_entropy_upper( { num, den } );
      const double e = double( num ) / den;
      const double exact = -e * std::log2( e ) - ( 1 - e ) * std::log2( 1 - e );
      const double got = static_cast<double>( h.num ) / static_cast<double>( h.den );
      EXPECT_GE( got, exact - 1e-12 );
      EXPECT_LT( got - exact, 1e-12 );
    }
  EXPECT_EQ( binary_entropy_upper( { 0, 1 } ).num, 0 );
}

TEST( Bounds, ApproxMatchesMpfr )
{
  struct shape
  {
    unsigned p, q, r;
  };
  for ( auto s : { shape{ 8, 16, 8 }, shape{ 2, 4, 2 }, shape{ 4, 8, 4 }, shape{ 3, 10, 5 } } )
    for ( auto [num, den] : { std::pair{ 1ul, 4ul }, std::pair{ 1ul, 3ul }, std::pair{ 1ul, 100ul }, std::pair{ 49ul, 100ul } } )
    {
      const auto rep = counting_lower_bound_approx( s.p, s.q, s.r, { num, den } );
      const auto ref = oracle::approx_bound( s.p, s.q, s.r, num, den );
      if ( ref.m < 0 )
      {
        EXPECT_TRUE( rep.vacuous );
        continue;
      }
      ASSERT_FALSE( rep.vacuous );
      EXPECT_EQ( static_cast<long>( rep.m ), ref.m );
      EXPECT_EQ( rep.rows[0].rhs, ref.rhs_ceil );
      EXPECT_TRUE( rep.consistent() );
    }
}

TEST( Bounds, ApproxQuarter )
{
  const auto rep = counting_lower_bound_approx( 8, 16, 8, { 1, 4 } );
  EXPECT_EQ( rep.m, 23u );
  ASSERT_TRUE( rep.epsilon );
  EXPECT_EQ( rep.epsilon->to_string(), "1/4" );
}

TEST( Bounds, ApproxAtZeroIsExact )
{
  for ( unsigned q = 0; q <= 16; q += 4 )
  {
    const auto a = counting_lower_bound_approx( 4, q, 4, { 0, 1 } );
    const auto b = counting_lower_bound( 4, q, 4 );
    EXPECT_EQ( a.m, b.m );
    EXPECT_EQ( a.vacuous, b.vacuous );
  }
}

TEST( Bounds, ApproxRejectsHalf )
{
  EXPECT_THROW( counting_lower_bound_approx( 8, 16, 8, { 1, 2 } ), std::exception );
  EXPECT_THROW( counting_lower_bound_approx( 8, 16, 8, { 3, 4 } ), std::exception );
  EXPECT_THROW( counting_lower_bound_approx( 8, 16, 8, { -1, 4 } ), std::exception );
}

TEST( Bounds, IndexingFormula )
{
  EXPECT_EQ( indexing_lower_bound( 1 ).m, 2u );
  EXPECT_EQ( indexing_lower_bound( 2 ).m, 4u );
  EXPECT_EQ( indexing_lower_bound( 5 ).m, 32u );
  for ( unsigned k = 1; k <= 12; ++k )
    EXPECT_TRUE( indexing_lower_bound( k ).consistent() );
  EXPECT_THROW( indexing_lower_bound( 0 ), std::exception );
}

TEST( Bounds, ParseRational )
{
  const auto r = parse_rational( "6/8" );
  EXPECT_EQ( r.num * 8, r.den * 6 );
  EXPECT_THROW( parse_rational( "1/0" ), std::exception );
  EXPECT_THROW( parse_rational( "abc" ), std::exception );
}
