#include "decomp/automata.hpp"

#include <algorithm>

namespace decomp
{

void ca_rule::validate() const
{
  if ( states < 2 || states > 1024 )
  {
    throw decomp_error( "rule needs between 2 and 1024 states" );
  }
  if ( delta.size() != static_cast<std::size_t>( states ) * states * states )
  {
    throw decomp_error( "rule table must have states^3 entries" );
  }
  if ( neutral >= states || zero >= states || one >= states )
  {
    throw decomp_error( "distinguished state id out of range" );
  }
  for ( auto s : delta )
  {
    if ( s >= states )
      throw decomp_error( "rule table entry out of range" );
  }
  if ( apply( neutral, neutral, neutral ) != neutral )
  {
    throw decomp_error( "neutral state is not stable under the rule" );
  }
}

asap_point asap_schedule( unsigned n )
{
  if ( n == 0 )
  {
    throw decomp_error( "asap_schedule needs n >= 1" );
  }
  return { static_cast<std::int64_t>( ( n - 1 ) / 2 ), static_cast<std::int64_t>( n / 2 ) };
}

configuration encode_bits( const ca_rule& rule, const std::vector<std::uint8_t>& bits )
{
  configuration config;
  config.cells.reserve( bits.size() );
  for ( auto b : bits )
  {
    if ( b > 1 )
      throw decomp_error( "input bits must be 0 or 1" );
    config.cells.push_back( b ? rule.one : rule.zero );
  }
  return config;
}

namespace
{

void trim( configuration& config, state_t neutral )
{
  std::size_t first = 0;
  while ( first < config.cells.size() && config.cells[first] == neutral )
    ++first;
  std::size_t last = config.cells.size();
  while ( last > first && config.cells[last - 1] == neutral )
    --last;
  if ( first == last )
  {
    config.cells.clear();
    config.offset = 0;
    return;
  }
  config.cells = std::vector<state_t>( config.cells.begin() + first, config.cells.begin() + last );
  config.offset += static_cast<std::int64_t>( first );
}

} // namespace

configuration ca_step( const ca_rule& rule, const configuration& config )
{
  configuration next;
  if ( config.cells.empty() )
  {
    return next;
  }
  next.offset = config.offset - 1;
  next.cells.resize( config.cells.size() + 2 );
  for ( std::size_t i = 0; i < next.cells.size(); ++i )
  {
    const std::int64_t cell = next.offset + static_cast<std::int64_t>( i );
    next.cells[i] = rule.apply( config.at( cell - 1, rule.neutral ), config.at( cell, rule.neutral ), config.at( cell + 1, rule.neutral ) );
  }
  trim( next, rule.neutral );
  return next;
}

std::vector<configuration> ca_run( const ca_rule& rule, const configuration& initial, unsigned steps )
{
  rule.validate();
  for ( auto s : initial.cells )
  {
    if ( s >= rule.states )
      throw decomp_error( "configuration holds an invalid state" );
  }
  std::vector<configuration> trace;
  trace.reserve( steps + 1 );
  configuration first = initial;
  trim( first, rule.neutral );
  trace.push_back( std::move( first ) );
  for ( unsigned t = 0; t < steps; ++t )
  {
    trace.push_back( ca_step( rule, trace.back() ) );
  }
  return trace;
}

std::vector<configuration> ca_run( const ca_rule& rule, const std::vector<std::uint8_t>& bits, unsigned steps )
{
  return ca_run( rule, encode_bits( rule, bits ), steps );
}

// --- triangle circuits -------------------------------------------------------

namespace
{

std::uint64_t splitmix64( std::uint64_t x )
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

} // namespace

triangle_circuit::triangle_circuit( unsigned n, unsigned height, unsigned states, state_t neutral, state_t zero, state_t one, source_type source )
    : n_( n ), height_( height ), states_( states ), neutral_( neutral ), zero_( zero ), one_( one ), source_( std::move( source ) )
{
  if ( n == 0 )
  {
    throw decomp_error( "triangle circuit needs n >= 1" );
  }
  if ( states < 2 || states > 1024 || neutral >= states || zero >= states || one >= states )
  {
    throw decomp_error( "triangle circuit state ids out of range" );
  }
  output_cell_ = asap_schedule( n ).cell;
  const std::size_t table_size = static_cast<std::size_t>( states ) * states * states;
  if ( const auto* u = std::get_if<uniform>( &source_ ) )
  {
    if ( u->delta.size() != table_size )
      throw decomp_error( "uniform vertex table must have states^3 entries" );
    if ( u->delta[( static_cast<std::size_t>( neutral ) * states + neutral ) * states + neutral] != neutral )
      throw decomp_error( "vertex functions must keep the neutral state stable" );
  }
  else if ( const auto* e = std::get_if<explicit_tables>( &source_ ) )
  {
    if ( e->tables.size() != height )
      throw decomp_error( "explicit circuit needs one row of vertex tables per time step" );
    for ( unsigned time = 1; time <= height; ++time )
    {
      const auto& row = e->tables[time - 1];
      if ( row.size() != 2 * static_cast<std::size_t>( height - time ) + 1 )
        throw decomp_error( "explicit circuit row " + std::to_string( time ) + " has the wrong number of vertices" );
      for ( const auto& table : row )
      {
        if ( table.size() != table_size )
          throw decomp_error( "vertex table must have states^3 entries" );
        for ( auto s : table )
          if ( s >= states )
            throw decomp_error( "vertex table entry out of range" );
        if ( table[( static_cast<std::size_t>( neutral ) * states + neutral ) * states + neutral] != neutral )
          throw decomp_error( "vertex functions must keep the neutral state stable" );
      }
    }
  }
}

triangle_circuit triangle_circuit::random( unsigned n, unsigned height, unsigned states, std::uint64_t seed )
{
  const state_t zero = states >= 3 ? 1 : 0;
  const state_t one = states >= 3 ? 2 : 1;
  return triangle_circuit( n, height, states, 0, zero, one, seeded{ seed } );
}

triangle_circuit triangle_circuit::from_rule( const ca_rule& rule, unsigned n, unsigned height )
{
  rule.validate();
  return triangle_circuit( n, height, rule.states, rule.neutral, rule.zero, rule.one, uniform{ rule.delta } );
}

bool triangle_circuit::in_triangle( std::int64_t cell, std::int64_t time ) const noexcept
{
  if ( time < 0 || time > static_cast<std::int64_t>( height_ ) )
    return false;
  const std::int64_t radius = static_cast<std::int64_t>( height_ ) - time;
  return cell >= output_cell_ - radius && cell <= output_cell_ + radius;
}

state_t triangle_circuit::apply( std::int64_t cell, std::int64_t time, state_t left, state_t center, state_t right ) const
{
  const std::size_t idx = ( static_cast<std::size_t>( left ) * states_ + center ) * states_ + right;
  if ( const auto* s = std::get_if<seeded>( &source_ ) )
  {
    if ( left == neutral_ && center == neutral_ && right == neutral_ )
      return neutral_;
    std::uint64_t h = splitmix64( s->seed );
    h = splitmix64( h ^ static_cast<std::uint64_t>( cell ) );
    h = splitmix64( h ^ static_cast<std::uint64_t>( time ) );
    h = splitmix64( h ^ idx );
    return static_cast<state_t>( h % states_ );
  }
  if ( const auto* u = std::get_if<uniform>( &source_ ) )
  {
    return u->delta[idx];
  }
  const auto& e = std::get<explicit_tables>( source_ );
  if ( time < 1 || !in_triangle( cell, time ) )
  {
    throw decomp_error( "vertex (" + std::to_string( cell ) + ", " + std::to_string( time ) + ") is outside the explicit circuit" );
  }
  const std::int64_t first = output_cell_ - ( static_cast<std::int64_t>( height_ ) - time );
  return e.tables[static_cast<std::size_t>( time - 1 )][static_cast<std::size_t>( cell - first )][idx];
}

void triangle_circuit::set_input_encoding( std::vector<std::array<state_t, 2>> encoding )
{
  if ( !encoding.empty() && encoding.size() != n_ )
  {
    throw decomp_error( "input encoding must list one state pair per input position" );
  }
  for ( const auto& pair : encoding )
  {
    if ( pair[0] >= states_ || pair[1] >= states_ )
      throw decomp_error( "input encoding state out of range" );
  }
  encoding_ = std::move( encoding );
}

state_t triangle_circuit::input_state( std::int64_t cell, std::uint64_t input ) const
{
  if ( cell < 0 || cell >= static_cast<std::int64_t>( n_ ) )
    return neutral_;
  const auto bit = input_bit( input, n_, cell );
  if ( !encoding_.empty() )
    return encoding_[static_cast<std::size_t>( cell )][bit];
  return bit ? one_ : zero_;
}

std::vector<state_t> triangle_row( const triangle_circuit& circuit, std::uint64_t input, std::int64_t time, std::int64_t first, std::int64_t last )
{
  if ( time < 0 || last < first )
  {
    throw decomp_error( "invalid triangle row request" );
  }
  std::int64_t lo = first - time, hi = last + time;
  std::vector<state_t> row( static_cast<std::size_t>( hi - lo + 1 ) );
  for ( std::int64_t c = lo; c <= hi; ++c )
    row[static_cast<std::size_t>( c - lo )] = circuit.input_state( c, input );
  for ( std::int64_t tau = 1; tau <= time; ++tau )
  {
    std::vector<state_t> next( row.size() - 2 );
    for ( std::size_t i = 0; i < next.size(); ++i )
    {
      const std::int64_t cell = lo + 1 + static_cast<std::int64_t>( i );
      next[i] = circuit.apply( cell, tau, row[i], row[i + 1], row[i + 2] );
    }
    row = std::move( next );
    ++lo;
  }
  return row;
}

state_t triangle_run( const triangle_circuit& circuit, std::uint64_t input )
{
  if ( circuit.n() < 64 && ( input >> circuit.n() ) != 0 )
  {
    throw decomp_error( "input does not fit the circuit width" );
  }
  const auto c = circuit.output_cell();
  return triangle_row( circuit, input, circuit.height(), c, c ).front();
}

unsigned state_bits( unsigned states )
{
  unsigned bits = 1;
  while ( ( 1u << bits ) < states )
    ++bits;
  return bits;
}

ternary_function circuit_function( const triangle_circuit& circuit, unsigned k )
{
  if ( 2 * k > circuit.n() )
  {
    throw decomp_error( "circuit input is shorter than 2k" );
  }
  ternary_function tf( k, circuit.n() - 2 * k, k, state_bits( circuit.states() ) );
  for ( std::uint64_t input = 0; input < tf.size(); ++input )
  {
    tf.set( input, triangle_run( circuit, input ) );
  }
  return tf;
}

decomposition_certificate extract_decomposition( const triangle_circuit& circuit, unsigned k, unsigned f, unsigned delta )
{
  if ( f == 0 )
  {
    throw decomp_error( "extraction needs a non-empty middle block (f >= 1)" );
  }
  if ( k == 0 || circuit.n() != 2 * k + f )
  {
    throw decomp_error( "circuit input length must be k + f + k" );
  }
  const auto asap = asap_schedule( circuit.n() );
  if ( circuit.height() != static_cast<unsigned>( asap.time ) + delta )
  {
    throw decomp_error( "circuit height must equal the ASAP time plus the delay" );
  }
  const unsigned bits = state_bits( circuit.states() );
  const std::int64_t c = asap.cell;
  const std::int64_t reach = k + delta;
  const std::int64_t row_time = asap.time - k;

  decomposition_certificate cert;
  cert.u = static_cast<unsigned>( reach + 1 ) * bits;
  cert.v = static_cast<unsigned>( reach ) * bits;
  if ( cert.u + cert.v > 26 )
  {
    throw decomp_error( "extracted certificate would exceed the table limit" );
  }

  const unsigned q = f;
  auto pack = []( const std::vector<state_t>& cells, unsigned width ) {
    value_t out = 0;
    for ( auto s : cells )
      out = out << width | s;
    return out;
  };

  cert.a.resize( std::size_t{ 1 } << ( k + q ) );
  for ( std::uint64_t xy = 0; xy < cert.a.size(); ++xy )
  {
    // z = 0; the a-cells cannot see z at this time.
    cert.a[xy] = pack( triangle_row( circuit, xy << k, row_time, c - reach, c ), bits );
  }
  cert.b.resize( std::size_t{ 1 } << ( q + k ) );
  for ( std::uint64_t yz = 0; yz < cert.b.size(); ++yz )
  {
    cert.b[yz] = pack( triangle_row( circuit, yz, row_time, c + 1, c + reach ), bits );
  }

  cert.t.assign( std::size_t{ 1 } << ( cert.u + cert.v ), 0 );
  const std::size_t cells = static_cast<std::size_t>( 2 * reach + 1 );
  std::vector<state_t> row( cells );
  const value_t mask = ( value_t{ 1 } << bits ) - 1;
  for ( std::uint64_t code = 0; code < cert.t.size(); ++code )
  {
    bool valid = true;
    for ( std::size_t i = 0; i < cells; ++i )
    {
      const value_t s = ( code >> ( bits * ( cells - 1 - i ) ) ) & mask;
      if ( s >= circuit.states() )
      {
        valid = false;
        break;
      }
      row[i] = static_cast<state_t>( s );
    }
    if ( !valid )
      continue;
    std::vector<state_t> cur = row;
    std::int64_t lo = c - reach;
    for ( std::int64_t tau = row_time + 1; tau <= static_cast<std::int64_t>( circuit.height() ); ++tau )
    {
      std::vector<state_t> next( cur.size() - 2 );
      for ( std::size_t i = 0; i < next.size(); ++i )
        next[i] = circuit.apply( lo + 1 + static_cast<std::int64_t>( i ), tau, cur[i], cur[i + 1], cur[i + 2] );
      cur = std::move( next );
      ++lo;
    }
    cert.t[code] = cur.front();
  }
  return cert;
}

state_bound min_state_bound( unsigned k, unsigned delta )
{
  if ( k == 0 || k > 20 )
  {
    throw decomp_error( "min_state_bound needs 1 <= k <= 20" );
  }
  state_bound out;
  out.k = k;
  out.delta = delta;
  out.dc_lower = big_int( 1 ) << k;
  out.row_cells = 2 * k + 2 * delta + 1;
  // Distinct (a_y, b_y) pairs: at most sigma^(row_cells 2^k); they must cover 2^(2^(2k)) matrices.
  const unsigned exponent = 1u << k;
  const unsigned d = out.row_cells;
  big_int target = big_int( 1 ) << exponent;
  big_int lo = big_int( 1 ) << ( exponent / d );
  big_int hi = big_int( 1 ) << ( ( exponent + d - 1 ) / d );
  while ( lo < hi )
  {
    big_int mid = ( lo + hi ) / 2;
    if ( boost::multiprecision::pow( mid, d ) >= target )
      hi = mid;
    else
      lo = mid + 1;
  }
  out.states = lo;
  return out;
}

// --- the indexing automaton ----------------------------------------------------
//
// Input states: X0 X1 (x bits), Y0 Y1 (y bits), Z0 Z1 (z bits). The bits x.z form a
// binary counter whose most significant bit is cell 0 and whose least significant
// bit is the last cell; the y block in between is a long wire for borrows.
//
// * Every step the last cell injects a decrement token; tokens move left one cell
//   per step, flip counter bits and continue only on a borrow. Token number i+1
//   (i = x 2^k + z) is the first to borrow out of cell 0, at time i + n.
// * Cell 0 then fires U, a signal moving right at speed 1.
// * At time 1 the last y cell emits S (speed 1 to the left); on reaching cell 0 at
//   time n-k it turns into the probe P, moving right at speed 1/2.
// * U catches P exactly at cell k + i, the y bit with index i. That cell emits
//   R carrying its bit to the left; cell 0 turns into zero/one on receipt.
//
// The answer appears at time n + 2k + 3i + 1 < 4n.

namespace
{

namespace ica
{

constexpr state_t neutral = 0;
constexpr state_t ans0 = 1;
constexpr state_t ans1 = 2;
constexpr state_t raw_base = 3; // X0 X1 Y0 Y1 Z0 Z1
constexpr state_t work_base = 9;

enum data : unsigned
{
  x0,
  x1,
  xf0, // most significant cell after it fired U
  xf1,
  y0,
  y1,
  z0,
  z1,
  data_count
};

enum control : unsigned
{
  none,
  sig_s,
  probe_a,
  probe_b,
  sig_u,
  res0,
  res1,
  control_count
};

constexpr unsigned state_count = work_base + data_count * 2 * control_count;

struct cell
{
  bool is_neutral = false;
  bool is_answer = false;
  bool raw = false;
  unsigned d = 0;
  bool token = false;
  unsigned ctl = none;
};

state_t encode( unsigned d, bool token, unsigned ctl )
{
  return static_cast<state_t>( work_base + ( d * 2 + ( token ? 1 : 0 ) ) * control_count + ctl );
}

cell decode( state_t s )
{
  cell c;
  if ( s == neutral )
  {
    c.is_neutral = true;
    return c;
  }
  if ( s == ans0 || s == ans1 )
  {
    c.is_answer = true;
    return c;
  }
  if ( s < work_base )
  {
    c.raw = true;
    const unsigned r = s - raw_base; // 0..5 -> X0 X1 Y0 Y1 Z0 Z1
    c.d = r < 2 ? r : r + 2;
    return c;
  }
  const unsigned w = s - work_base;
  c.ctl = w % control_count;
  c.token = ( w / control_count ) % 2 == 1;
  c.d = w / control_count / 2;
  return c;
}

bool is_x( unsigned d ) { return d <= xf1; }
bool is_y( unsigned d ) { return d == y0 || d == y1; }
bool is_z( unsigned d ) { return d == z0 || d == z1; }
bool is_counter( unsigned d ) { return !is_y( d ); }
unsigned bit_of( unsigned d ) { return d & 1u; }
unsigned with_bit( unsigned d, unsigned b ) { return ( d & ~1u ) | b; }

bool working( const cell& c ) { return !c.is_neutral && !c.is_answer && !c.raw; }

state_t transition( state_t left, state_t center, state_t right )
{
  const cell c = decode( center );
  if ( c.is_neutral )
    return neutral;
  if ( c.is_answer )
    return center;
  const cell l = decode( left );
  const cell r = decode( right );

  if ( c.raw )
  {
    const bool token = is_z( c.d ) && r.is_neutral;
    const bool emit_s = is_y( c.d ) && r.raw && is_z( r.d );
    return encode( c.d, token, emit_s ? sig_s : none );
  }

  const bool msb = is_x( c.d ) && l.is_neutral;
  const unsigned bit = bit_of( c.d );

  unsigned d = c.d;
  bool fire = false;
  if ( c.token && is_counter( c.d ) )
  {
    d = with_bit( c.d, bit ^ 1u );
    if ( msb && bit == 0 && ( c.d == x0 || c.d == x1 ) )
    {
      d = xf1;
      fire = true;
    }
  }

  const bool incoming = working( r ) && r.token && ( is_y( r.d ) || bit_of( r.d ) == 0 );
  const bool token = incoming || ( is_z( c.d ) && r.is_neutral );

  const unsigned lctl = working( l ) ? l.ctl : none;
  const unsigned rctl = working( r ) ? r.ctl : none;

  if ( msb && ( rctl == res0 || rctl == res1 ) )
    return rctl == res0 ? ans0 : ans1;

  unsigned ctl = none;
  if ( rctl == res0 || rctl == res1 )
    ctl = rctl;
  else if ( c.ctl == probe_a && lctl == sig_u )
    ctl = bit_of( c.d ) ? res1 : res0;
  else if ( lctl == sig_u )
    ctl = sig_u;
  else if ( c.ctl == probe_a )
    ctl = probe_b;
  else if ( lctl == probe_b )
    ctl = probe_a;
  else if ( msb && rctl == sig_s )
    ctl = probe_a;
  else if ( rctl == sig_s )
    ctl = sig_s;
  else if ( fire )
    ctl = sig_u;

  return encode( d, token, ctl );
}

} // namespace ica

} // namespace

configuration indexing_automaton::encode( std::uint64_t x, const std::vector<std::uint8_t>& y, std::uint64_t z ) const
{
  const std::size_t ylen = std::size_t{ 1 } << ( 2 * k );
  if ( y.size() != ylen || ( x >> k ) != 0 || ( z >> k ) != 0 )
  {
    throw decomp_error( "indexing input does not match k" );
  }
  configuration config;
  config.cells.reserve( n() );
  for ( unsigned i = 0; i < k; ++i )
    config.cells.push_back( encoding[i][( x >> ( k - 1 - i ) ) & 1u] );
  for ( std::size_t i = 0; i < ylen; ++i )
    config.cells.push_back( encoding[k + i][y[i] & 1u] );
  for ( unsigned i = 0; i < k; ++i )
    config.cells.push_back( encoding[k + ylen + i][( z >> ( k - 1 - i ) ) & 1u] );
  return config;
}

indexing_automaton indexing_ca_build( unsigned k )
{
  if ( k == 0 || k > 10 )
  {
    throw decomp_error( "indexing automaton needs 1 <= k <= 10" );
  }
  indexing_automaton out;
  out.k = k;
  auto& rule = out.rule;
  rule.states = ica::state_count;
  rule.neutral = ica::neutral;
  rule.zero = ica::ans0;
  rule.one = ica::ans1;
  rule.delta.resize( static_cast<std::size_t>( rule.states ) * rule.states * rule.states );
  for ( state_t l = 0; l < rule.states; ++l )
    for ( state_t c = 0; c < rule.states; ++c )
      for ( state_t r = 0; r < rule.states; ++r )
        rule.delta[( static_cast<std::size_t>( l ) * rule.states + c ) * rule.states + r] = ica::transition( l, c, r );

  const std::size_t ylen = std::size_t{ 1 } << ( 2 * k );
  const state_t x0 = ica::raw_base, y0 = ica::raw_base + 2, z0 = ica::raw_base + 4;
  out.encoding.assign( k, { x0, static_cast<state_t>( x0 + 1 ) } );
  out.encoding.insert( out.encoding.end(), ylen, { y0, static_cast<state_t>( y0 + 1 ) } );
  out.encoding.insert( out.encoding.end(), k, { z0, static_cast<state_t>( z0 + 1 ) } );
  out.result_cell = 0;
  out.linear_constant = 4;
  return out;
}

indexing_outcome run_indexing( const indexing_automaton& automaton, const configuration& initial, unsigned max_steps )
{
  const auto& rule = automaton.rule;
  indexing_outcome outcome;
  configuration cur = initial;
  auto read = [&]( const configuration& config ) -> std::optional<std::uint8_t> {
    const auto s = config.at( automaton.result_cell, rule.neutral );
    if ( s == rule.zero )
      return 0;
    if ( s == rule.one )
      return 1;
    return std::nullopt;
  };
  // Reusable buffers: the window widens by one per side each step.
  std::vector<state_t> next;
  for ( unsigned step = 0; step <= max_steps; ++step )
  {
    if ( auto v = read( cur ) )
    {
      outcome.value = v;
      outcome.steps = step;
      return outcome;
    }
    if ( step == max_steps || cur.cells.empty() )
      break;
    const std::size_t w = cur.cells.size();
    next.resize( w + 2 );
    for ( std::size_t i = 0; i < w + 2; ++i )
    {
      const auto left = i >= 2 ? cur.cells[i - 2] : rule.neutral;
      const auto center = i >= 1 && i - 1 < w ? cur.cells[i - 1] : rule.neutral;
      const auto right = i < w ? cur.cells[i] : rule.neutral;
      next[i] = rule.apply( left, center, right );
    }
    std::size_t first = 0, last = next.size();
    while ( first < last && next[first] == rule.neutral )
      ++first;
    while ( last > first && next[last - 1] == rule.neutral )
      --last;
    cur.offset = cur.offset - 1 + static_cast<std::int64_t>( first );
    cur.cells.assign( next.begin() + static_cast<std::ptrdiff_t>( first ), next.begin() + static_cast<std::ptrdiff_t>( last ) );
  }
  outcome.steps = max_steps;
  return outcome;
}

} // namespace decomp
