#include "decomp/automata.hpp"
#include "decomp/bounds.hpp"
#include "decomp/core.hpp"
#include "decomp/f2poly.hpp"
#include "decomp/io.hpp"
#include "decomp/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

using namespace decomp;

namespace
{

enum exit_code : int
{
  ok = 0,
  refuted = 1,
  malformed = 2,
  exhausted = 3
};

struct run_config
{
  std::string out;
  std::string format = "json";
  bool timing = false;

  void emit( const json& j, const std::string& text ) const
  {
    const std::string body = format == "text" ? text : j.dump( 2 ) + "\n";
    if ( out.empty() )
    {
      std::cout << body;
      return;
    }
    std::ofstream file( out );
    if ( !file )
      throw decomp_error( "cannot write " + out );
    file << body;
  }

  /// Data files (functions, certificates, rules) are written compactly on one line.
  void emit_data( const json& j, const std::string& text ) const
  {
    if ( format == "text" )
      return emit( j, text );
    const std::string body = j.dump() + "\n";
    if ( out.empty() )
    {
      std::cout << body;
      return;
    }
    std::ofstream file( out );
    if ( !file )
      throw decomp_error( "cannot write " + out );
    file << body;
  }
};

void add_output( CLI::App* cmd, run_config& rc )
{
  cmd->add_option( "--out", rc.out, "Write the result to PATH instead of stdout" );
  cmd->add_option( "--format", rc.format, "Output format" )->check( CLI::IsMember( { "json", "text" } ) );
}

struct budget_flags
{
  std::uint64_t nodes = 0;
  double seconds = 0;
  unsigned max_m = 0;

  search_budget make() const
  {
    search_budget b;
    if ( nodes )
      b.max_nodes = nodes;
    if ( seconds > 0 )
      b.max_time = std::chrono::milliseconds( static_cast<std::int64_t>( seconds * 1000 ) );
    if ( max_m )
      b.max_m = max_m;
    b.allow_unknown = true;
    b.validate();
    return b;
  }
};

void add_budget( CLI::App* cmd, budget_flags& bf )
{
  cmd->add_option( "--budget-nodes", bf.nodes, "Node limit per feasibility search" )->check( CLI::PositiveNumber );
  cmd->add_option( "--budget-seconds", bf.seconds, "Wall-clock limit" )->check( CLI::PositiveNumber );
  cmd->add_option( "--max-m", bf.max_m, "Largest u+v to try" );
}

std::string describe( const input_triple& in ) { return "x=" + std::to_string( in.x ) + " y=" + std::to_string( in.y ) + " z=" + std::to_string( in.z ); }

bit_string parse_bits( const std::string& text, const char* what )
{
  bit_string bits;
  for ( char c : text )
  {
    if ( c != '0' && c != '1' )
      throw decomp_error( std::string( what ) + " must be a '0'/'1' string" );
    bits.push_back( static_cast<std::uint8_t>( c - '0' ) );
  }
  return bits;
}

// --- gen -----------------------------------------------------------------------

struct gen_args
{
  std::string family;
  unsigned p = 0, q = 0, r = 0, k = 0;
  std::uint64_t seed = 0;
  value_t value = 0;
};

int cmd_gen( const gen_args& g, const run_config& rc )
{
  const auto kind = parse_family( g.family );
  if ( !kind )
    throw decomp_error( "unknown family '" + g.family + "'" );
  family_spec spec;
  spec.kind = *kind;
  spec.p = g.p;
  spec.q = g.q;
  spec.r = g.r;
  spec.k = g.k;
  spec.seed = g.seed;
  spec.value = g.value;
  const auto tf = make_family( spec );
  const auto j = to_json( tf );
  rc.emit_data( j, "p=" + std::to_string( tf.p() ) + " q=" + std::to_string( tf.q() ) + " r=" + std::to_string( tf.r() ) + " table=" + j["table"].get<std::string>() + "\n" );
  return ok;
}

// --- solve ---------------------------------------------------------------------

struct solve_args
{
  std::string file;
  std::optional<unsigned> u, v;
  bool agreement = false;
  bool override_guard = false;
  budget_flags budget;
};

int cmd_solve( const solve_args& s, const run_config& rc )
{
  const auto tf = function_from_json( read_json_file( s.file ) );
  const auto budget = s.budget.make();
  if ( s.u.has_value() != s.v.has_value() )
    throw decomp_error( "-u and -v go together" );

  if ( s.u && s.agreement )
  {
    best_agreement_options opt;
    opt.override_guard = s.override_guard;
    if ( s.budget.nodes )
      opt.max_nodes = s.budget.nodes;
    const auto res = best_agreement( tf, *s.u, *s.v, opt );
    json j;
    j["u"] = *s.u;
    j["v"] = *s.v;
    j["agreement"] = to_json( res.value );
    j["optimal"] = res.optimal;
    j["certificate"] = to_json( res.certificate );
    j["stats"] = to_json( res.stats, rc.timing );
    rc.emit( j, "agreement " + res.value.to_string() + ( res.optimal ? "" : " (lower bound, budget exhausted)" ) + "\n" );
    return res.optimal ? ok : exhausted;
  }
  if ( s.agreement )
    throw decomp_error( "--agreement needs -u and -v" );

  if ( s.u )
  {
    const auto res = feasible( tf, *s.u, *s.v, budget );
    const auto j = to_json( res, rc.timing );
    rc.emit( j, j["status"].get<std::string>() + " at u=" + std::to_string( *s.u ) + " v=" + std::to_string( *s.v ) + "\n" );
    switch ( res.status )
    {
    case feasibility_status::feasible:
      return ok;
    case feasibility_status::infeasible:
      return refuted;
    default:
      return exhausted;
    }
  }

  const auto res = exact_dc( tf, budget );
  std::string text;
  if ( res.status == solve_status::exact )
    text = "dc = " + std::to_string( res.upper ) + "\n";
  else
    text = "bounds-only: " + std::to_string( res.lower ) + " <= dc <= " + std::to_string( res.upper ) + "\n";
  rc.emit( to_json( res, rc.timing ), text );
  return res.status == solve_status::exact ? ok : exhausted;
}

// --- verify --------------------------------------------------------------------

int cmd_verify( const std::string& function_file, const std::string& cert_file, const run_config& rc )
{
  const auto tf = function_from_json( read_json_file( function_file ) );
  const auto cert = certificate_from_json( read_json_file( cert_file ) );
  check_certificate_shape( tf, cert );
  json j;
  const auto bad = first_counterexample( tf, cert );
  j["verified"] = !bad;
  j["size"] = cert.size();
  if ( !bad )
  {
    rc.emit( j, "verified, u+v = " + std::to_string( cert.size() ) + "\n" );
    return ok;
  }
  j["counterexample"] = { { "x", bad->x }, { "y", bad->y }, { "z", bad->z } };
  j["expected"] = eval( tf, *bad );
  j["got"] = certificate_eval( tf, cert, bad->x, bad->y, bad->z );
  rc.emit( j, "refuted at " + describe( *bad ) + "\n" );
  return refuted;
}

// --- bounds / approx -------------------------------------------------------------

std::string bound_text( const bound_report& rep )
{
  std::ostringstream out;
  out << to_string( rep.kind ) << ": ";
  if ( rep.vacuous )
    out << "vacuous (no m satisfies the inequality)";
  else
    out << "m = " << rep.m;
  out << "\n";
  for ( const auto& row : rep.rows )
  {
    out << "  m=" << row.m << ":";
    for ( const auto& [name, value] : row.terms )
      out << " " << name << "=" << value;
    out << " total=" << row.total << " rhs=" << row.rhs << ( row.holds ? " holds" : " fails" ) << "\n";
  }
  return out.str();
}

struct bound_args
{
  std::string kind = "counting";
  std::optional<unsigned> p, q, r, k;
  std::string epsilon;
};

int cmd_bounds( const bound_args& b, const run_config& rc )
{
  bound_report rep;
  if ( b.kind == "indexing" )
  {
    if ( !b.k )
      throw decomp_error( "indexing bound needs -k" );
    rep = indexing_lower_bound( *b.k );
  }
  else
  {
    if ( !b.p || !b.q || !b.r )
      throw decomp_error( "counting bound needs -p, -q and -r" );
    rep = counting_lower_bound( *b.p, *b.q, *b.r );
  }
  rc.emit( to_json( rep ), bound_text( rep ) );
  return ok;
}

int cmd_approx( const bound_args& b, const run_config& rc )
{
  if ( !b.p || !b.q || !b.r )
    throw decomp_error( "approx needs -p, -q and -r" );
  const auto rep = counting_lower_bound_approx( *b.p, *b.q, *b.r, parse_rational( b.epsilon ) );
  rc.emit( to_json( rep ), bound_text( rep ) );
  return ok;
}

// --- protocol ------------------------------------------------------------------

struct protocol_args
{
  unsigned k = 0;
  std::string y;
  std::optional<std::uint64_t> seed;
  mask_t x = 0, z = 0;
  bool check = false;
};

std::vector<std::uint8_t> seeded_bits( std::size_t count, std::uint64_t seed )
{
  std::mt19937_64 gen( seed );
  std::vector<std::uint8_t> bits( count );
  for ( std::size_t i = 0; i < count; i += 64 )
  {
    const auto word = gen();
    for ( std::size_t j = 0; j < 64 && i + j < count; ++j )
      bits[i + j] = static_cast<std::uint8_t>( ( word >> ( 63 - j ) ) & 1u );
  }
  return bits;
}

int cmd_protocol( const protocol_args& a, const run_config& rc )
{
  if ( a.k == 0 || a.k > 20 )
    throw decomp_error( "protocol needs 1 <= k <= 20" );
  const std::size_t len = std::size_t{ 1 } << a.k;
  std::vector<std::uint8_t> y;
  if ( !a.y.empty() )
    y = parse_bits( a.y, "--y" );
  else if ( a.seed )
    y = seeded_bits( len, *a.seed );
  else
    throw decomp_error( "protocol needs --y or --seed" );
  if ( y.size() != len )
    throw decomp_error( "--y must have 2^k bits" );
  if ( ( a.x >> a.k ) != 0 || ( a.z >> a.k ) != 0 )
    throw decomp_error( "--x and --z must fit in k bits" );

  const auto ma = protocol_alice( a.x, y, a.k );
  const auto mb = protocol_bob( a.z, y, a.k );
  const auto bit = protocol_referee( ma, mb, a.k );
  auto j = protocol_transcript( a.k, a.x, a.z, ma, mb, bit );
  j["expected"] = y[a.x ^ a.z];

  std::uint64_t mismatches = bit == y[a.x ^ a.z] ? 0 : 1;
  if ( a.check )
  {
    mismatches = 0;
    for ( mask_t x = 0; x < len; ++x )
    {
      const auto mx = protocol_alice( x, y, a.k );
      for ( mask_t z = 0; z < len; ++z )
        mismatches += protocol_referee( mx, protocol_bob( z, y, a.k ), a.k ) != y[x ^ z];
    }
    j["checked_pairs"] = static_cast<std::uint64_t>( len ) * len;
    j["mismatches"] = mismatches;
  }
  std::ostringstream text;
  text << "A = " << j["message_a"].get<std::string>() << " (" << ma.bits.size() << " bits)\n"
       << "B = " << j["message_b"].get<std::string>() << " (" << mb.bits.size() << " bits)\n"
       << "referee = " << int( bit ) << ", y(x^z) = " << int( y[a.x ^ a.z] ) << "\n";
  if ( a.check )
    text << "all pairs: " << mismatches << " mismatches\n";
  rc.emit( j, text.str() );
  return mismatches == 0 ? ok : refuted;
}

// --- ca ------------------------------------------------------------------------

struct ca_run_args
{
  std::string rule;
  std::string input;
  unsigned steps = 0;
};

int cmd_ca_run( const ca_run_args& a, const run_config& rc )
{
  const auto rule = rule_from_json( read_json_file( a.rule ) );
  const auto trace = ca_run( rule, parse_bits( a.input, "--input" ), a.steps );
  json j;
  j["states"] = rule.states;
  json steps = json::array();
  for ( const auto& config : trace )
    steps.push_back( { { "offset", config.offset }, { "cells", config.cells } } );
  j["trace"] = std::move( steps );
  rc.emit( j, trace_dump( trace ) );
  return ok;
}

struct ca_extract_args
{
  std::string circuit;
  unsigned k = 0;
  unsigned f = 0;
  unsigned delay = 0;
  unsigned sigma = 3;
  std::uint64_t seed = 0;
};

int cmd_ca_extract( const ca_extract_args& a, const run_config& rc )
{
  std::optional<triangle_circuit> circuit;
  if ( !a.circuit.empty() )
  {
    circuit.emplace( circuit_from_json( read_json_file( a.circuit ) ) );
  }
  else
  {
    const unsigned n = 2 * a.k + a.f;
    if ( n == 0 )
      throw decomp_error( "random circuit needs -k and --f" );
    circuit.emplace( triangle_circuit::random( n, static_cast<unsigned>( asap_schedule( n ).time ) + a.delay, a.sigma, a.seed ) );
  }
  if ( a.k == 0 || circuit->n() <= 2 * a.k )
    throw decomp_error( "circuit must have n > 2k" );
  const unsigned f = circuit->n() - 2 * a.k;
  const auto asap = asap_schedule( circuit->n() );
  if ( circuit->height() < asap.time )
    throw decomp_error( "circuit ends before the ASAP time" );
  const unsigned delay = circuit->height() - static_cast<unsigned>( asap.time );

  const auto cert = extract_decomposition( *circuit, a.k, f, delay );
  const auto tf = circuit_function( *circuit, a.k );
  const auto bad = first_counterexample( tf, cert );
  const unsigned limit = ( 2 * a.k + 2 * delay + 1 ) * state_bits( circuit->states() );

  json j;
  j["k"] = a.k;
  j["f"] = f;
  j["delay"] = delay;
  j["verified"] = !bad;
  j["size"] = cert.size();
  j["size_limit"] = limit;
  j["function"] = to_json( tf );
  j["certificate"] = to_json( cert );
  std::string text = std::string( bad ? "refuted" : "verified" ) + ", u=" + std::to_string( cert.u ) + " v=" + std::to_string( cert.v ) + " (limit " + std::to_string( limit ) + ")\n";
  rc.emit( j, text );
  return bad ? refuted : ok;
}

struct ca_indexing_args
{
  unsigned k = 1;
  bool exhaustive = false;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::string emit_rule;
};

struct indexing_tally
{
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  unsigned max_steps = 0;
};

indexing_tally check_indexing( const indexing_automaton& automaton, std::uint64_t x, std::uint64_t z, const std::vector<std::uint8_t>& y )
{
  indexing_tally tally;
  const unsigned limit = automaton.linear_constant * automaton.n();
  const auto outcome = run_indexing( automaton, automaton.encode( x, y, z ), limit );
  tally.checked = 1;
  tally.failures = !outcome.value || *outcome.value != y[( x << automaton.k ) | z];
  tally.max_steps = outcome.steps;
  return tally;
}

void merge( indexing_tally& into, const indexing_tally& t )
{
  into.checked += t.checked;
  into.failures += t.failures;
  into.max_steps = std::max( into.max_steps, t.max_steps );
}

int cmd_ca_indexing( const ca_indexing_args& a, const run_config& rc )
{
  const auto automaton = indexing_ca_build( a.k );
  automaton.rule.validate();
  if ( !a.emit_rule.empty() )
  {
    std::ofstream file( a.emit_rule );
    if ( !file )
      throw decomp_error( "cannot write " + a.emit_rule );
    file << to_json( automaton.rule ).dump() << "\n";
  }

  const unsigned k = a.k;
  const std::size_t ylen = std::size_t{ 1 } << ( 2 * k );
  const bool full = k == 1 || a.exhaustive;
  if ( full && k > 2 )
    throw decomp_error( "exhaustive check is limited to k <= 2" );

  indexing_tally tally;
  if ( full )
  {
    // One task per (x, z); each walks every y.
    const std::uint64_t side = std::uint64_t{ 1 } << k;
    const unsigned workers = std::max( 1u, worker_count() );
    std::vector<std::future<indexing_tally>> tasks;
    for ( unsigned w = 0; w < workers; ++w )
    {
      tasks.push_back( std::async( std::launch::async, [&, w] {
        indexing_tally local;
        std::vector<std::uint8_t> y( ylen );
        for ( std::uint64_t xz = w; xz < side * side; xz += workers )
        {
          for ( std::uint64_t ym = 0; ym < ( std::uint64_t{ 1 } << ylen ); ++ym )
          {
            for ( std::size_t i = 0; i < ylen; ++i )
              y[i] = static_cast<std::uint8_t>( ( ym >> ( ylen - 1 - i ) ) & 1u );
            merge( local, check_indexing( automaton, xz >> k, xz & ( side - 1 ), y ) );
          }
        }
        return local;
      } ) );
    }
    for ( auto& t : tasks )
      merge( tally, t.get() );
  }
  else
  {
    std::mt19937_64 gen( a.seed );
    for ( std::uint64_t s = 0; s < a.samples; ++s )
    {
      const std::uint64_t x = gen() >> ( 64 - k ), z = gen() >> ( 64 - k );
      const auto y = seeded_bits( ylen, gen() );
      merge( tally, check_indexing( automaton, x, z, y ) );
    }
  }

  // Neutral stability of the shipped rule.
  configuration blank;
  blank.cells.assign( 8, automaton.rule.neutral );
  bool stable = true;
  for ( const auto& config : ca_run( automaton.rule, blank, 100 ) )
    stable = stable && std::all_of( config.cells.begin(), config.cells.end(), [&]( state_t s ) { return s == automaton.rule.neutral; } );

  json j;
  j["k"] = k;
  j["n"] = automaton.n();
  j["states"] = automaton.rule.states;
  j["result_cell"] = automaton.result_cell;
  j["linear_constant"] = automaton.linear_constant;
  j["step_limit"] = automaton.linear_constant * automaton.n();
  j["mode"] = full ? "exhaustive" : "sampled";
  j["checked"] = tally.checked;
  j["failures"] = tally.failures;
  j["max_steps"] = tally.max_steps;
  j["neutral_stable"] = stable;
  std::ostringstream text;
  text << ( full ? "exhaustive" : "sampled" ) << " k=" << k << ": " << tally.checked << " inputs, " << tally.failures << " failures, max " << tally.max_steps
       << " steps (limit " << automaton.linear_constant * automaton.n() << "), " << automaton.rule.states << " states\n";
  rc.emit( j, text.str() );
  return tally.failures == 0 && stable ? ok : refuted;
}

struct ca_states_args
{
  unsigned k = 1;
  unsigned delay = 0;
};

int cmd_ca_states( const ca_states_args& a, const run_config& rc )
{
  const auto b = min_state_bound( a.k, a.delay );
  json j;
  j["k"] = b.k;
  j["delay"] = b.delta;
  j["dc_lower"] = b.dc_lower.str();
  j["row_cells"] = b.row_cells;
  j["states"] = b.states.str();
  rc.emit( j, "sigma >= " + b.states.str() + " (dc >= " + b.dc_lower.str() + ", row of " + std::to_string( b.row_cells ) + " cells)\n" );
  return ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Decomposition complexity of ternary Boolean functions" };
  app.require_subcommand( 1 );
  run_config rc;

  gen_args g;
  auto* gen = app.add_subcommand( "gen", "Write the truth table of a built-in family" );
  gen->add_option( "--family", g.family, "xor, equality, indexing, xor-indexing, add-indexing, constant or random" )->required();
  gen->add_option( "-p", g.p );
  gen->add_option( "-q", g.q );
  gen->add_option( "-r", g.r );
  gen->add_option( "-k", g.k );
  gen->add_option( "--seed", g.seed );
  gen->add_option( "--value", g.value );
  add_output( gen, rc );

  solve_args s;
  auto* solve = app.add_subcommand( "solve", "Exact decomposition complexity, or one (u, v) split" );
  solve->add_option( "function", s.file )->required()->check( CLI::ExistingFile );
  solve->add_option( "-u", s.u, "Feasibility (or agreement) at this a-width" );
  solve->add_option( "-v", s.v, "... and this b-width" );
  solve->add_flag( "--agreement", s.agreement, "Maximise agreement instead of deciding feasibility" );
  solve->add_flag( "--override-guard", s.override_guard, "Allow agreement search beyond the small-instance guard" );
  solve->add_flag( "--timing", rc.timing, "Include wall-clock seconds in the statistics" );
  add_budget( solve, s.budget );
  add_output( solve, rc );

  std::string verify_fn, verify_cert;
  auto* verify = app.add_subcommand( "verify", "Check a certificate against a function" );
  verify->add_option( "function", verify_fn )->required()->check( CLI::ExistingFile );
  verify->add_option( "certificate", verify_cert )->required()->check( CLI::ExistingFile );
  add_output( verify, rc );

  bound_args b;
  auto* bounds = app.add_subcommand( "bounds", "Counting or indexing lower bound" );
  bounds->add_option( "--kind", b.kind )->check( CLI::IsMember( { "counting", "indexing" } ) );
  bounds->add_option( "-p", b.p );
  bounds->add_option( "-q", b.q );
  bounds->add_option( "-r", b.r );
  bounds->add_option( "-k", b.k );
  add_output( bounds, rc );

  auto* approx = app.add_subcommand( "approx", "Counting bound for eps-approximation" );
  approx->add_option( "-p", b.p );
  approx->add_option( "-q", b.q );
  approx->add_option( "-r", b.r );
  approx->add_option( "--epsilon", b.epsilon, "NUM/DEN" )->required();
  add_output( approx, rc );

  protocol_args pa;
  auto* protocol = app.add_subcommand( "protocol", "Run the sublinear protocol for y(x xor z)" );
  protocol->add_option( "-k", pa.k )->required();
  protocol->add_option( "--y", pa.y, "Truth table of y as a 2^k-bit string" );
  protocol->add_option( "--seed", pa.seed, "Draw y from this seed instead" );
  protocol->add_option( "--x", pa.x );
  protocol->add_option( "--z", pa.z );
  protocol->add_flag( "--check", pa.check, "Also check the referee on every (x, z)" );
  add_output( protocol, rc );

  auto* ca = app.add_subcommand( "ca", "Cellular automata and triangle circuits" );
  ca->require_subcommand( 1 );

  ca_run_args cr;
  auto* ca_run_cmd = ca->add_subcommand( "run", "Simulate a uniform rule" );
  ca_run_cmd->add_option( "--rule", cr.rule )->required()->check( CLI::ExistingFile );
  ca_run_cmd->add_option( "--input", cr.input, "Input bits" )->required();
  ca_run_cmd->add_option( "--steps", cr.steps )->required();
  add_output( ca_run_cmd, rc );

  ca_extract_args ce;
  auto* ca_extract = ca->add_subcommand( "extract", "Read a decomposition off a triangle circuit" );
  ca_extract->add_option( "--circuit", ce.circuit, "Circuit file; otherwise a seeded random circuit" );
  ca_extract->add_option( "-k", ce.k )->required();
  ca_extract->add_option( "--f", ce.f, "Middle block length for a random circuit" );
  ca_extract->add_option( "--delay", ce.delay, "Steps past the ASAP time for a random circuit" );
  ca_extract->add_option( "--sigma", ce.sigma, "States for a random circuit" );
  ca_extract->add_option( "--seed", ce.seed );
  add_output( ca_extract, rc );

  ca_indexing_args ci;
  auto* ca_indexing = ca->add_subcommand( "indexing", "Check the linear-time indexing automaton" );
  ca_indexing->add_option( "-k", ci.k );
  ca_indexing->add_flag( "--exhaustive", ci.exhaustive, "Check every input (k <= 2)" );
  ca_indexing->add_option( "--samples", ci.samples );
  ca_indexing->add_option( "--seed", ci.seed );
  ca_indexing->add_option( "--emit-rule", ci.emit_rule, "Also write the rule file" );
  add_output( ca_indexing, rc );

  ca_states_args cs;
  auto* ca_states = ca->add_subcommand( "states", "Least state count for an ASAP indexing circuit" );
  ca_states->add_option( "-k", cs.k )->required();
  ca_states->add_option( "--delay", cs.delay );
  add_output( ca_states, rc );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const int code = app.exit( e );
    return code == 0 ? ok : malformed;
  }

  try
  {
    if ( *gen )
      return cmd_gen( g, rc );
    if ( *solve )
      return cmd_solve( s, rc );
    if ( *verify )
      return cmd_verify( verify_fn, verify_cert, rc );
    if ( *bounds )
      return cmd_bounds( b, rc );
    if ( *approx )
      return cmd_approx( b, rc );
    if ( *protocol )
      return cmd_protocol( pa, rc );
    if ( *ca_run_cmd )
      return cmd_ca_run( cr, rc );
    if ( *ca_extract )
      return cmd_ca_extract( ce, rc );
    if ( *ca_indexing )
      return cmd_ca_indexing( ci, rc );
    if ( *ca_states )
      return cmd_ca_states( cs, rc );
  }
  catch ( const decomp_error& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return malformed;
  }
  return malformed;
}
