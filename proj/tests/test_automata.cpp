#include "decomp/automata.hpp"
#include "decomp/solver.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace decomp;

namespace
{

ca_rule identity_rule( unsigned states )
{
  ca_rule r;
  r.states = states;
  r.neutral = 0;
  r.zero = 1;
  r.one = 2;
  r.delta.resize( std::size_t{ states } * states * states );
  for ( unsigned l = 0; l < states; ++l )
    for ( unsigned c = 0; c < states; ++c )
      for ( unsigned x = 0; x < states; ++x )
        r.delta[( l * states + c ) * states + x] = static_cast<state_t>( c );
  return r;
}

// A rule that spreads: any non-neutral neighbour makes the cell non-neutral.
ca_rule growth_rule()
{
  ca_rule r = identity_rule( 3 );
  for ( unsigned l = 0; l < 3; ++l )
    for ( unsigned c = 0; c < 3; ++c )
      for ( unsigned x = 0; x < 3; ++x )
        r.delta[( l * 3 + c ) * 3 + x] = static_cast<state_t>( ( l + c + x ) % 3 );
  return r;
}

std::vector<std::uint8_t> random_y( std::size_t len, std::mt19937_64& gen )
{
  std::vector<std::uint8_t> y( len );
  for ( auto& b : y )
    b = gen() & 1u;
  return y;
}

} // namespace

TEST( Automata, AsapSchedule )
{
  EXPECT_EQ( asap_schedule( 5 ).cell, 2 );
  EXPECT_EQ( asap_schedule( 5 ).time, 2 );
  EXPECT_EQ( asap_schedule( 4 ).cell, 1 );
  EXPECT_EQ( asap_schedule( 4 ).time, 2 );
  EXPECT_EQ( asap_schedule( 1 ).cell, 0 );
  EXPECT_EQ( asap_schedule( 1 ).time, 0 );
  for ( unsigned n = 1; n < 40; ++n )
  {
    const auto a = asap_schedule( n );
    EXPECT_LE( a.cell - a.time, 0 );
    EXPECT_GE( a.cell + a.time, static_cast<std::int64_t>( n ) - 1 );
    // No earlier time covers all inputs from any cell.
    for ( std::int64_t c = 0; c < n; ++c )
      EXPECT_FALSE( c - ( a.time - 1 ) <= 0 && c + ( a.time - 1 ) >= static_cast<std::int64_t>( n ) - 1 );
  }
}

TEST( Automata, NeutralStaysNeutral )
{
  const auto rule = growth_rule();
  configuration blank;
  blank.cells.assign( 5, 0 );
  for ( const auto& c : ca_run( rule, blank, 100 ) )
    EXPECT_TRUE( c.cells.empty() );
}

TEST( Automata, IdentityRuleKeepsInput )
{
  const auto rule = identity_rule( 3 );
  const std::vector<std::uint8_t> bits{ 1, 0, 1, 1 };
  const auto trace = ca_run( rule, bits, 10 );
  for ( const auto& c : trace )
  {
    EXPECT_EQ( c.offset, 0 );
    EXPECT_EQ( c.cells, ( std::vector<state_t>{ 2, 1, 2, 2 } ) );
  }
}

TEST( Automata, WindowGrowsOneCellPerSide )
{
  const auto trace = ca_run( growth_rule(), std::vector<std::uint8_t>{ 1 }, 6 );
  for ( std::size_t t = 0; t < trace.size(); ++t )
  {
    EXPECT_GE( trace[t].offset, -static_cast<std::int64_t>( t ) );
    EXPECT_LE( trace[t].cells.size(), 2 * t + 1 );
  }
}

TEST( Automata, RuleValidation )
{
  auto r = identity_rule( 3 );
  r.delta[0] = 1;
  EXPECT_THROW( r.validate(), decomp_error );
  auto s = identity_rule( 3 );
  s.delta.pop_back();
  EXPECT_THROW( s.validate(), decomp_error );
  auto u = identity_rule( 3 );
  u.one = 3;
  EXPECT_THROW( u.validate(), decomp_error );
}

TEST( Automata, UniformCircuitMatchesSimulation )
{
  const auto rule = growth_rule();
  for ( unsigned n : { 1u, 4u, 5u, 8u } )
  {
    const auto a = asap_schedule( n );
    const auto circuit = triangle_circuit::from_rule( rule, n, static_cast<unsigned>( a.time ) );
    for ( std::uint64_t input = 0; input < ( 1u << n ); ++input )
    {
      std::vector<std::uint8_t> bits( n );
      for ( unsigned i = 0; i < n; ++i )
        bits[i] = input_bit( input, n, i );
      const auto trace = ca_run( rule, bits, static_cast<unsigned>( a.time ) );
      EXPECT_EQ( triangle_run( circuit, input ), trace.back().at( a.cell, rule.neutral ) );
    }
  }
}

TEST( Automata, SingleCellReturnsInputState )
{
  const auto circuit = triangle_circuit::random( 1, 0, 3, 9 );
  EXPECT_EQ( triangle_run( circuit, 0 ), circuit.zero() );
  EXPECT_EQ( triangle_run( circuit, 1 ), circuit.one() );
}

TEST( Automata, RandomCircuitMatchesRecursion )
{
  for ( std::uint64_t seed = 0; seed < 5; ++seed )
  {
    const auto circuit = triangle_circuit::random( 8, 4, 3, seed );
    for ( std::uint64_t input = 0; input < 256; ++input )
      ASSERT_EQ( triangle_run( circuit, input ), oracle::triangle_output( circuit, input ) );
  }
}

TEST( Automata, SeededVerticesKeepNeutral )
{
  const auto circuit = triangle_circuit::random( 6, 3, 4, 1 );
  for ( std::int64_t c = -3; c < 9; ++c )
    for ( std::int64_t t = 1; t <= 3; ++t )
      EXPECT_EQ( circuit.apply( c, t, 0, 0, 0 ), 0 );
}

TEST( Automata, LightCone )
{
  std::mt19937_64 gen( 7 );
  for ( std::uint64_t seed = 0; seed < 20; ++seed )
  {
    const unsigned n = 9;
    const auto circuit = triangle_circuit::random( n, 6, 3, seed );
    for ( int rep = 0; rep < 20; ++rep )
    {
      const std::int64_t time = gen() % 5, cell = gen() % n;
      const std::uint64_t input = gen() & 511;
      // Flip only positions outside [cell - time, cell + time].
      std::uint64_t flip = 0;
      for ( std::int64_t i = 0; i < n; ++i )
        if ( ( i < cell - time || i > cell + time ) && ( gen() & 1u ) )
          flip |= std::uint64_t{ 1 } << ( n - 1 - i );
      EXPECT_EQ( triangle_row( circuit, input, time, cell, cell ), triangle_row( circuit, input ^ flip, time, cell, cell ) );
    }
  }
}

TEST( Automata, ExplicitTablesRoundTrip )
{
  const auto seeded = triangle_circuit::random( 5, 2, 3, 4 );
  triangle_circuit::explicit_tables tables;
  for ( unsigned t = 1; t <= 2; ++t )
  {
    std::vector<std::vector<state_t>> row;
    const std::int64_t radius = 2 - t;
    for ( std::int64_t c = 2 - radius; c <= 2 + radius; ++c )
    {
      std::vector<state_t> table;
      for ( unsigned l = 0; l < 3; ++l )
        for ( unsigned m = 0; m < 3; ++m )
          for ( unsigned r = 0; r < 3; ++r )
            table.push_back( seeded.apply( c, t, l, m, r ) );
      row.push_back( table );
    }
    tables.tables.push_back( row );
  }
  const triangle_circuit copy( 5, 2, 3, seeded.neutral(), seeded.zero(), seeded.one(), tables );
  for ( std::uint64_t input = 0; input < 32; ++input )
    EXPECT_EQ( triangle_run( copy, input ), triangle_run( seeded, input ) );
  EXPECT_THROW( copy.apply( 0, 2, 0, 0, 1 ), decomp_error );
}

TEST( Automata, ExtractionVerifies )
{
  for ( unsigned delta : { 0u, 1u } )
    for ( std::uint64_t seed = 0; seed < 5; ++seed )
    {
      const unsigned n = 8;
      const auto circuit = triangle_circuit::random( n, static_cast<unsigned>( asap_schedule( n ).time ) + delta, 3, seed );
      const auto cert = extract_decomposition( circuit, 2, 4, delta );
      const auto tf = circuit_function( circuit, 2 );
      EXPECT_TRUE( verify_certificate( tf, cert ) );
      EXPECT_LE( cert.size(), ( 2 * 2 + 2 * delta + 1 ) * 2 );
      for ( std::uint64_t input = 0; input < 256; ++input )
        EXPECT_EQ( tf.at( input ), oracle::triangle_output( circuit, input ) );
    }
}

TEST( Automata, ExtractionIndependence )
{
  // The a-cells of the row must not see z, nor the b-cells x.
  for ( unsigned f : { 1u, 2u, 4u } )
    for ( unsigned delta : { 0u, 1u } )
    {
      const unsigned k = 2, n = 2 * k + f;
      const auto a = asap_schedule( n );
      const auto circuit = triangle_circuit::random( n, static_cast<unsigned>( a.time ) + delta, 3, f * 10 + delta );
      const std::int64_t reach = k + delta, time = a.time - k;
      for ( std::uint64_t xy = 0; xy < ( 1u << ( k + f ) ); ++xy )
      {
        const auto base = triangle_row( circuit, xy << k, time, a.cell - reach, a.cell );
        for ( std::uint64_t z = 1; z < ( 1u << k ); ++z )
          ASSERT_EQ( triangle_row( circuit, xy << k | z, time, a.cell - reach, a.cell ), base );
      }
      for ( std::uint64_t yz = 0; yz < ( 1u << ( f + k ) ); ++yz )
      {
        const auto base = triangle_row( circuit, yz, time, a.cell + 1, a.cell + reach );
        for ( std::uint64_t x = 1; x < ( 1u << k ); ++x )
          ASSERT_EQ( triangle_row( circuit, x << ( f + k ) | yz, time, a.cell + 1, a.cell + reach ), base );
      }
    }
}

TEST( Automata, ExtractionErrors )
{
  const auto c = triangle_circuit::random( 4, 2, 3, 0 );
  EXPECT_THROW( extract_decomposition( c, 2, 0, 0 ), decomp_error );
  // ASAP time for n = 8 is 4, so height 5 means a delay of 1.
  const auto d = triangle_circuit::random( 8, 5, 3, 0 );
  EXPECT_THROW( extract_decomposition( d, 2, 4, 0 ), decomp_error );
  EXPECT_NO_THROW( extract_decomposition( d, 2, 4, 1 ) );
  EXPECT_THROW( extract_decomposition( d, 3, 4, 0 ), decomp_error );
}

TEST( Automata, StateBound )
{
  EXPECT_EQ( min_state_bound( 4, 0 ).states, 4 );
  EXPECT_EQ( min_state_bound( 6, 0 ).states, 31 );
  EXPECT_EQ( min_state_bound( 1, 0 ).states, 2 );
  EXPECT_EQ( min_state_bound( 6, 0 ).row_cells, 13u );
  EXPECT_EQ( min_state_bound( 6, 0 ).dc_lower, 64 );
  for ( unsigned k = 1; k <= 10; ++k )
    for ( unsigned d = 0; d < 12; ++d )
    {
      const auto b = min_state_bound( k, d );
      EXPECT_LE( min_state_bound( k, d + 1 ).states, b.states );
      // sigma is the least value with sigma^cells >= 2^(2^k).
      const big_int target = big_int( 1 ) << ( 1u << k );
      EXPECT_GE( boost::multiprecision::pow( b.states, b.row_cells ), target );
      EXPECT_LT( boost::multiprecision::pow( b.states - 1, b.row_cells ), target );
    }
}

TEST( Automata, IndexingCaK1Exhaustive )
{
  const auto a = indexing_ca_build( 1 );
  ASSERT_EQ( a.n(), 6u );
  for ( std::uint64_t x = 0; x < 2; ++x )
    for ( std::uint64_t z = 0; z < 2; ++z )
      for ( unsigned ym = 0; ym < 16; ++ym )
      {
        std::vector<std::uint8_t> y( 4 );
        for ( unsigned i = 0; i < 4; ++i )
          y[i] = ( ym >> ( 3 - i ) ) & 1u;
        const auto out = run_indexing( a, a.encode( x, y, z ), a.linear_constant * a.n() );
        ASSERT_TRUE( out.value.has_value() );
        EXPECT_EQ( *out.value, y[x * 2 + z] );
      }
}

TEST( Automata, IndexingCaSampled )
{
  std::mt19937_64 gen( 8 );
  for ( unsigned k = 2; k <= 3; ++k )
  {
    const auto a = indexing_ca_build( k );
    EXPECT_EQ( a.rule.states, indexing_ca_build( 1 ).rule.states );
    for ( int rep = 0; rep < 200; ++rep )
    {
      const std::uint64_t x = gen() >> ( 64 - k ), z = gen() >> ( 64 - k );
      const auto y = random_y( std::size_t{ 1 } << ( 2 * k ), gen );
      const auto out = run_indexing( a, a.encode( x, y, z ), a.linear_constant * a.n() );
      ASSERT_TRUE( out.value.has_value() );
      EXPECT_EQ( *out.value, y[( x << k ) | z] );
    }
  }
}

TEST( Automata, IndexingCaZeroMatrix )
{
  const auto a = indexing_ca_build( 2 );
  const std::vector<std::uint8_t> y( 16, 0 );
  for ( std::uint64_t x = 0; x < 4; ++x )
    for ( std::uint64_t z = 0; z < 4; ++z )
      EXPECT_EQ( run_indexing( a, a.encode( x, y, z ), 4 * a.n() ).value, std::optional<std::uint8_t>( 0 ) );
}

TEST( Automata, IndexingCaAgreesWithGenericSimulator )
{
  const auto a = indexing_ca_build( 1 );
  const std::vector<std::uint8_t> y{ 0, 1, 1, 0 };
  const auto config = a.encode( 1, y, 0 );
  const auto out = run_indexing( a, config, 24 );
  const auto trace = ca_run( a.rule, config, out.steps );
  EXPECT_EQ( trace.back().at( a.result_cell, a.rule.neutral ), a.rule.one );
  EXPECT_NE( trace[out.steps - 1].at( a.result_cell, a.rule.neutral ), a.rule.one );
}

TEST( Automata, IndexingRuleIsNeutralStable )
{
  const auto a = indexing_ca_build( 1 );
  EXPECT_NO_THROW( a.rule.validate() );
  configuration blank;
  for ( const auto& c : ca_run( a.rule, blank, 100 ) )
    EXPECT_TRUE( c.cells.empty() );
}

TEST( Automata, IndexingExtractionVerifies )
{
  // The uniform rule as a triangle circuit at the ASAP schedule, with its own input alphabet.
  const auto a = indexing_ca_build( 1 );
  const unsigned n = a.n();
  auto circuit = triangle_circuit::from_rule( a.rule, n, static_cast<unsigned>( asap_schedule( n ).time ) );
  circuit.set_input_encoding( a.encoding );
  const auto cert = extract_decomposition( circuit, 1, 4, 0 );
  EXPECT_TRUE( verify_certificate( circuit_function( circuit, 1 ), cert ) );
}

TEST( Automata, ChainingToSolver )
{
  // A two-state ASAP circuit yields a certificate with u+v <= 3 for T_1. If the solver
  // puts dc(T_1) above that size, no such circuit can compute T_1.
  family_spec s;
  s.kind = family_kind::indexing;
  s.k = 1;
  const auto tf = make_family( s );
  const auto res = exact_dc( tf );
  const unsigned extracted = ( 2 * 1 + 1 ) * state_bits( 2 );
  EXPECT_GE( res.lower, indexing_lower_bound( 1 ).m );
  if ( res.lower > extracted )
  {
    for ( std::uint64_t seed = 0; seed < 50; ++seed )
    {
      const auto c = triangle_circuit::random( 6, 3, 2, seed );
      bool computes = true;
      for ( std::uint64_t i = 0; i < tf.size() && computes; ++i )
        computes = triangle_run( c, i ) == tf.at( i );
      EXPECT_FALSE( computes );
    }
  }
  // Each of these circuits does decompose its own function within the extraction size.
  for ( std::uint64_t seed = 0; seed < 10; ++seed )
  {
    const auto c = triangle_circuit::random( 6, 3, 2, seed );
    const auto cert = extract_decomposition( c, 1, 4, 0 );
    EXPECT_LE( cert.size(), extracted );
    EXPECT_TRUE( verify_certificate( circuit_function( c, 1 ), cert ) );
  }
}
