#include "decomp/io.hpp"

#include <fstream>
#include <sstream>

namespace decomp
{

namespace
{

template<typename T>
T get( const json& j, const char* key )
{
  if ( !j.is_object() || !j.contains( key ) )
  {
    throw decomp_error( std::string( "missing field \"" ) + key + "\"" );
  }
  try
  {
    return j.at( key ).get<T>();
  }
  catch ( const nlohmann::json::exception& )
  {
    throw decomp_error( std::string( "field \"" ) + key + "\" has the wrong type" );
  }
}

unsigned get_unsigned( const json& j, const char* key )
{
  const auto& v = j.contains( key ) ? j.at( key ) : json();
  if ( !v.is_number_unsigned() && !( v.is_number_integer() && v.get<std::int64_t>() >= 0 ) )
  {
    throw decomp_error( std::string( "field \"" ) + key + "\" must be a non-negative integer" );
  }
  return get<unsigned>( j, key );
}

std::string big_to_string( const big_int& v ) { return v.str(); }

json rational_json( const rational& r ) { return r.to_string(); }

} // namespace

json to_json( const ternary_function& tf )
{
  std::string table;
  table.reserve( tf.size() * tf.s() );
  for ( std::uint64_t i = 0; i < tf.size(); ++i )
  {
    const auto v = tf.at( i );
    for ( unsigned b = tf.s(); b-- > 0; )
      table.push_back( ( v >> b ) & 1u ? '1' : '0' );
  }
  json j;
  j["p"] = tf.p();
  j["q"] = tf.q();
  j["r"] = tf.r();
  j["s"] = tf.s();
  j["table"] = std::move( table );
  return j;
}

ternary_function function_from_json( const json& j, unsigned ceiling )
{
  const unsigned s = j.contains( "s" ) ? get_unsigned( j, "s" ) : 1u;
  ternary_function tf( get_unsigned( j, "p" ), get_unsigned( j, "q" ), get_unsigned( j, "r" ), s, ceiling );
  const auto table = get<std::string>( j, "table" );
  if ( table.size() != tf.size() * s )
  {
    throw decomp_error( "table length " + std::to_string( table.size() ) + " does not match 2^(p+q+r)*s = " + std::to_string( tf.size() * s ) );
  }
  std::size_t pos = 0;
  for ( std::uint64_t i = 0; i < tf.size(); ++i )
  {
    value_t v = 0;
    for ( unsigned b = 0; b < s; ++b, ++pos )
    {
      const char c = table[pos];
      if ( c != '0' && c != '1' )
        throw decomp_error( "table must contain only '0' and '1'" );
      v = v << 1 | static_cast<value_t>( c - '0' );
    }
    tf.set( i, v );
  }
  return tf;
}

json to_json( const decomposition_certificate& cert )
{
  json j;
  j["u"] = cert.u;
  j["v"] = cert.v;
  j["a"] = cert.a;
  j["b"] = cert.b;
  j["t"] = cert.t;
  return j;
}

decomposition_certificate certificate_from_json( const json& j )
{
  decomposition_certificate cert;
  cert.u = get_unsigned( j, "u" );
  cert.v = get_unsigned( j, "v" );
  cert.a = get<std::vector<value_t>>( j, "a" );
  cert.b = get<std::vector<value_t>>( j, "b" );
  cert.t = get<std::vector<value_t>>( j, "t" );
  return cert;
}

json to_json( const anf_polynomial& poly )
{
  json j;
  j["k"] = poly.k;
  j["monomials"] = poly.monomials;
  return j;
}

anf_polynomial anf_from_json( const json& j )
{
  const auto k = get_unsigned( j, "k" );
  auto monomials = get<std::vector<mask_t>>( j, "monomials" );
  if ( !std::is_sorted( monomials.begin(), monomials.end() ) || std::adjacent_find( monomials.begin(), monomials.end() ) != monomials.end() )
  {
    throw decomp_error( "monomials must be strictly ascending" );
  }
  return make_anf( k, std::move( monomials ) );
}

json to_json( const ca_rule& rule )
{
  json j;
  j["states"] = rule.states;
  j["neutral"] = rule.neutral;
  j["zero"] = rule.zero;
  j["one"] = rule.one;
  j["delta"] = rule.delta;
  return j;
}

ca_rule rule_from_json( const json& j )
{
  ca_rule rule;
  rule.states = get_unsigned( j, "states" );
  rule.neutral = static_cast<state_t>( get_unsigned( j, "neutral" ) );
  rule.zero = static_cast<state_t>( get_unsigned( j, "zero" ) );
  rule.one = static_cast<state_t>( get_unsigned( j, "one" ) );
  rule.delta = get<std::vector<state_t>>( j, "delta" );
  rule.validate();
  return rule;
}

json to_json( const triangle_circuit& circuit )
{
  json j;
  if ( const auto* s = std::get_if<triangle_circuit::seeded>( &circuit.source() ) )
  {
    j["seed"] = s->seed;
    j["n"] = circuit.n();
    j["t"] = circuit.height();
    j["sigma"] = circuit.states();
  }
  else
  {
    j["n"] = circuit.n();
    j["t"] = circuit.height();
    j["sigma"] = circuit.states();
    j["neutral"] = circuit.neutral();
    j["zero"] = circuit.zero();
    j["one"] = circuit.one();
    json vertices = json::array();
    for ( unsigned time = 1; time <= circuit.height(); ++time )
    {
      json row = json::array();
      const std::int64_t radius = static_cast<std::int64_t>( circuit.height() - time );
      for ( std::int64_t cell = circuit.output_cell() - radius; cell <= circuit.output_cell() + radius; ++cell )
      {
        std::vector<state_t> table;
        const unsigned sg = circuit.states();
        table.reserve( static_cast<std::size_t>( sg ) * sg * sg );
        for ( unsigned l = 0; l < sg; ++l )
          for ( unsigned c = 0; c < sg; ++c )
            for ( unsigned r = 0; r < sg; ++r )
              table.push_back( circuit.apply( cell, time, static_cast<state_t>( l ), static_cast<state_t>( c ), static_cast<state_t>( r ) ) );
        row.push_back( std::move( table ) );
      }
      vertices.push_back( std::move( row ) );
    }
    j["vertices"] = std::move( vertices );
  }
  if ( !circuit.input_encoding().empty() )
    j["encoding"] = circuit.input_encoding();
  return j;
}

triangle_circuit circuit_from_json( const json& j )
{
  const auto n = get_unsigned( j, "n" );
  const auto t = get_unsigned( j, "t" );
  const auto sigma = get_unsigned( j, "sigma" );
  std::optional<triangle_circuit> circuit;
  if ( j.contains( "seed" ) )
  {
    circuit.emplace( triangle_circuit::random( n, t, sigma, get<std::uint64_t>( j, "seed" ) ) );
  }
  else
  {
    triangle_circuit::explicit_tables tables;
    tables.tables = get<std::vector<std::vector<std::vector<state_t>>>>( j, "vertices" );
    circuit.emplace( n, t, sigma, static_cast<state_t>( get_unsigned( j, "neutral" ) ), static_cast<state_t>( get_unsigned( j, "zero" ) ),
                     static_cast<state_t>( get_unsigned( j, "one" ) ), std::move( tables ) );
  }
  if ( j.contains( "encoding" ) )
    circuit->set_input_encoding( get<std::vector<std::array<state_t, 2>>>( j, "encoding" ) );
  return std::move( *circuit );
}

json to_json( const bound_report& report )
{
  json j;
  j["kind"] = to_string( report.kind );
  if ( report.kind == bound_kind::indexing_formula )
  {
    j["k"] = report.k;
  }
  else
  {
    j["p"] = report.p;
    j["q"] = report.q;
    j["r"] = report.r;
  }
  if ( report.epsilon )
    j["epsilon"] = rational_json( *report.epsilon );
  if ( report.entropy_upper )
    j["entropy_upper"] = rational_json( *report.entropy_upper );
  j["vacuous"] = report.vacuous;
  if ( report.vacuous )
    j["m"] = nullptr;
  else
    j["m"] = report.m;
  json rows = json::array();
  for ( const auto& row : report.rows )
  {
    json jr;
    jr["m"] = row.m;
    json terms;
    for ( const auto& [name, value] : row.terms )
      terms[name] = big_to_string( value );
    jr["terms"] = std::move( terms );
    jr["total"] = big_to_string( row.total );
    jr["rhs"] = big_to_string( row.rhs );
    jr["holds"] = row.holds;
    rows.push_back( std::move( jr ) );
  }
  j["rows"] = std::move( rows );
  return j;
}

json to_json( const search_stats& stats, bool timing )
{
  json j;
  j["nodes"] = stats.nodes;
  if ( timing )
    j["seconds"] = stats.seconds;
  return j;
}

namespace
{

std::string status_name( feasibility_status s )
{
  switch ( s )
  {
  case feasibility_status::feasible:
    return "feasible";
  case feasibility_status::infeasible:
    return "infeasible";
  default:
    return "unknown";
  }
}

} // namespace

json to_json( const solve_result& result, bool timing )
{
  json j;
  j["status"] = to_string( result.status );
  if ( result.status == solve_status::exact )
    j["dc"] = result.upper;
  else
    j["dc"] = nullptr;
  j["lower"] = result.lower;
  j["upper"] = result.upper;
  if ( result.certificate )
    j["certificate"] = to_json( *result.certificate );
  j["stats"] = to_json( result.stats, timing );
  return j;
}

json to_json( const feasibility_result& result, bool timing )
{
  json j;
  j["status"] = status_name( result.status );
  if ( result.certificate )
    j["certificate"] = to_json( *result.certificate );
  j["stats"] = to_json( result.stats, timing );
  return j;
}

json to_json( const agreement_ratio& ratio ) { return ratio.to_string(); }

json protocol_transcript( unsigned k, mask_t x, mask_t z, const protocol_message_a& a, const protocol_message_b& b, std::uint8_t referee )
{
  const auto sizes = message_size( k );
  json j;
  j["k"] = k;
  j["d"] = protocol_d( k );
  j["f"] = protocol_f( k );
  j["x"] = x;
  j["z"] = z;
  j["message_a"] = to_string( a.bits );
  j["message_b"] = to_string( b.bits );
  j["size_a"] = big_to_string( sizes.a );
  j["size_b"] = big_to_string( sizes.b );
  j["referee"] = referee;
  return j;
}

std::string trace_dump( const std::vector<configuration>& trace )
{
  std::ostringstream out;
  for ( const auto& config : trace )
  {
    out << config.offset << ':';
    for ( auto s : config.cells )
      out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

json read_json_file( const std::string& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw decomp_error( "cannot open " + path );
  }
  try
  {
    return json::parse( in );
  }
  catch ( const nlohmann::json::parse_error& e )
  {
    throw decomp_error( path + ": " + e.what() );
  }
}

} // namespace decomp
