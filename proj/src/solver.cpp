#include "decomp/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <set>
#include <thread>

namespace decomp
{

void search_budget::validate() const
{
  if ( max_nodes == 0 || max_time.count() <= 0 )
  {
    throw decomp_error( "search budget limits must be positive" );
  }
}

std::string to_string( solve_status status )
{
  return status == solve_status::exact ? "exact" : "bounds-only";
}

unsigned worker_count()
{
  if ( const char* env = std::getenv( "DECOMP_THREADS" ) )
  {
    const long requested = std::strtol( env, nullptr, 10 );
    if ( requested >= 1 )
    {
      return static_cast<unsigned>( requested );
    }
  }
  return std::max( 1u, std::thread::hardware_concurrency() );
}

namespace
{

using clock_type = std::chrono::steady_clock;

/// Variables of a coloring search: a-entries (side 0) and b-entries (side 1),
/// alternating by ascending index.
struct variable
{
  int side;
  std::uint32_t index;
};

std::vector<variable> interleaved_order( std::uint32_t na, std::uint32_t nb )
{
  std::vector<variable> order;
  order.reserve( na + nb );
  for ( std::uint32_t i = 0; i < std::max( na, nb ); ++i )
  {
    if ( i < na )
      order.push_back( { 0, i } );
    if ( i < nb )
      order.push_back( { 1, i } );
  }
  return order;
}

std::vector<value_t> flat_table( const ternary_function& tf )
{
  std::vector<value_t> out( tf.size() );
  for ( std::uint64_t index = 0; index < tf.size(); ++index )
  {
    out[index] = tf.at( index );
  }
  return out;
}

void check_search_shape( const ternary_function& tf, unsigned u, unsigned v )
{
  if ( tf.p() + tf.q() > 24 || tf.q() + tf.r() > 24 )
  {
    throw decomp_error( "coloring domains are too large for exhaustive search" );
  }
  if ( u + v > 26 )
  {
    throw decomp_error( "t-table of 2^(u+v) entries exceeds the search limit" );
  }
}

/// Shared backtracking core. Calls `on_leaf` for each complete canonical coloring
/// that survived pruning; `on_leaf` returns true to stop the search.
class coloring_search
{
public:
  coloring_search( const ternary_function& tf, unsigned u, unsigned v )
      : tf_( tf ), table_( flat_table( tf ) ), u_( u ), v_( v ),
        na_( std::uint32_t{ 1 } << ( tf.p() + tf.q() ) ), nb_( std::uint32_t{ 1 } << ( tf.q() + tf.r() ) ),
        order_( interleaved_order( na_, nb_ ) )
  {
    colors_[0].assign( na_, -1 );
    colors_[1].assign( nb_, -1 );
  }

  std::uint32_t na() const { return na_; }
  std::uint32_t nb() const { return nb_; }
  const std::vector<variable>& order() const { return order_; }
  const std::vector<std::int64_t>& colors( int side ) const { return colors_[side]; }

  /// Calls fn(cell, output) for every triple newly decided by assigning var = color.
  template<class Fn>
  void for_each_decided( const variable& var, std::int64_t color, Fn&& fn ) const
  {
    const unsigned q = tf_.q(), r = tf_.r();
    if ( var.side == 0 )
    {
      const std::uint32_t y = var.index & ( ( 1u << q ) - 1 );
      for ( std::uint32_t z = 0; z < ( 1u << r ); ++z )
      {
        const auto beta = colors_[1][y << r | z];
        if ( beta < 0 )
          continue;
        fn( static_cast<std::uint64_t>( color ) << v_ | static_cast<std::uint64_t>( beta ),
            table_[static_cast<std::uint64_t>( var.index ) << r | z] );
      }
    }
    else
    {
      const std::uint32_t y = var.index >> r;
      const std::uint32_t z = var.index & ( ( 1u << r ) - 1 );
      for ( std::uint32_t x = 0; x < ( 1u << tf_.p() ); ++x )
      {
        const std::uint32_t i = x << q | y;
        const auto alpha = colors_[0][i];
        if ( alpha < 0 )
          continue;
        fn( static_cast<std::uint64_t>( alpha ) << v_ | static_cast<std::uint64_t>( color ),
            table_[static_cast<std::uint64_t>( i ) << r | z] );
      }
    }
  }

  /*! Generic depth-first driver.

    `try_assign(depth, var, color)` applies the assignment and returns false on a
    conflict (after undoing its own effects); `undo(depth, var)` reverts a
    successful assignment; `leaf()` returns true to stop. Returns false when the
    node budget or deadline ran out.
  */
  template<class TryAssign, class Undo, class Leaf>
  bool run( std::uint64_t max_nodes, clock_type::time_point deadline, std::uint64_t& nodes, TryAssign&& try_assign, Undo&& undo, Leaf&& leaf )
  {
    const std::size_t total = order_.size();
    std::vector<std::int64_t> next( total + 1, 0 );
    std::vector<std::int64_t> saved_max( total + 1, 0 );
    std::int64_t max_color[2] = { -1, -1 };
    const std::int64_t color_limit[2] = { ( std::int64_t{ 1 } << u_ ) - 1, ( std::int64_t{ 1 } << v_ ) - 1 };

    std::size_t depth = 0;
    while ( true )
    {
      if ( depth == total )
      {
        if ( leaf() )
          return true;
        if ( depth == 0 )
          return true;
        --depth;
        const auto& var = order_[depth];
        undo( depth, var );
        colors_[var.side][var.index] = -1;
        max_color[var.side] = saved_max[depth];
        ++next[depth];
        continue;
      }

      const auto& var = order_[depth];
      const std::int64_t limit = std::min( max_color[var.side] + 1, color_limit[var.side] );
      if ( next[depth] > limit )
      {
        if ( depth == 0 )
          return true;
        --depth;
        const auto& prev = order_[depth];
        undo( depth, prev );
        colors_[prev.side][prev.index] = -1;
        max_color[prev.side] = saved_max[depth];
        ++next[depth];
        continue;
      }

      if ( ++nodes > max_nodes )
        return false;
      if ( ( nodes & 0xfff ) == 0 && clock_type::now() > deadline )
        return false;

      const std::int64_t color = next[depth];
      if ( !try_assign( depth, var, color ) )
      {
        ++next[depth];
        continue;
      }
      colors_[var.side][var.index] = color;
      saved_max[depth] = max_color[var.side];
      max_color[var.side] = std::max( max_color[var.side], color );
      ++depth;
      next[depth] = 0;
    }
  }

private:
  const ternary_function& tf_;
  std::vector<value_t> table_;
  unsigned u_, v_;
  std::uint32_t na_, nb_;
  std::vector<variable> order_;
  std::vector<std::int64_t> colors_[2];
};

feasibility_result feasible_until( const ternary_function& tf, unsigned u, unsigned v, const search_budget& budget,
                                   clock_type::time_point deadline )
{
  check_search_shape( tf, u, v );
  const auto start = clock_type::now();

  coloring_search search( tf, u, v );
  std::vector<std::int64_t> cells( std::size_t{ 1 } << ( u + v ), -1 );
  std::vector<std::uint64_t> trail;
  std::vector<std::size_t> trail_mark( search.order().size() + 1, 0 );

  feasibility_result result;
  bool found = false;

  auto try_assign = [&]( std::size_t depth, const variable& var, std::int64_t color ) {
    trail_mark[depth] = trail.size();
    bool ok = true;
    search.for_each_decided( var, color, [&]( std::uint64_t cell, value_t out ) {
      if ( !ok )
        return;
      if ( cells[cell] < 0 )
      {
        cells[cell] = static_cast<std::int64_t>( out );
        trail.push_back( cell );
      }
      else if ( cells[cell] != static_cast<std::int64_t>( out ) )
      {
        ok = false;
      }
    } );
    if ( !ok )
    {
      while ( trail.size() > trail_mark[depth] )
      {
        cells[trail.back()] = -1;
        trail.pop_back();
      }
    }
    return ok;
  };
  auto undo = [&]( std::size_t depth, const variable& ) {
    while ( trail.size() > trail_mark[depth] )
    {
      cells[trail.back()] = -1;
      trail.pop_back();
    }
  };
  auto leaf = [&]() {
    decomposition_certificate cert;
    cert.u = u;
    cert.v = v;
    cert.a.resize( search.na() );
    cert.b.resize( search.nb() );
    for ( std::uint32_t i = 0; i < search.na(); ++i )
      cert.a[i] = static_cast<value_t>( search.colors( 0 )[i] );
    for ( std::uint32_t j = 0; j < search.nb(); ++j )
      cert.b[j] = static_cast<value_t>( search.colors( 1 )[j] );
    cert.t.resize( cells.size() );
    for ( std::size_t c = 0; c < cells.size(); ++c )
      cert.t[c] = cells[c] < 0 ? 0 : static_cast<value_t>( cells[c] );
    result.certificate = std::move( cert );
    found = true;
    return true;
  };

  const bool completed = search.run( budget.max_nodes, deadline, result.stats.nodes, try_assign, undo, leaf );
  result.stats.seconds = std::chrono::duration<double>( clock_type::now() - start ).count();
  if ( found )
  {
    result.status = feasibility_status::feasible;
  }
  else if ( completed )
  {
    result.status = feasibility_status::infeasible;
  }
  else
  {
    if ( !budget.allow_unknown )
    {
      throw decomp_error( "search budget exhausted before the feasibility question was settled" );
    }
    result.status = feasibility_status::unknown;
  }
  return result;
}

} // namespace

feasibility_result feasible( const ternary_function& tf, unsigned u, unsigned v, const search_budget& budget )
{
  budget.validate();
  return feasible_until( tf, u, v, budget, clock_type::now() + budget.max_time );
}

unsigned image_lower_bound( const ternary_function& tf )
{
  std::set<value_t> image;
  for ( std::uint64_t index = 0; index < tf.size(); ++index )
  {
    image.insert( tf.at( index ) );
  }
  unsigned bits = 0;
  while ( ( std::uint64_t{ 1 } << bits ) < image.size() )
  {
    ++bits;
  }
  return bits;
}

decomposition_certificate upper_bound_slice( const ternary_function& tf, slice_side side )
{
  if ( tf.s() != 1 )
  {
    throw decomp_error( "slice construction is defined for predicates (s = 1)" );
  }
  const unsigned p = tf.p(), q = tf.q(), r = tf.r();
  const unsigned sliced = side == slice_side::right ? r : p;
  if ( sliced > 4 || ( 1u << sliced ) + ( side == slice_side::right ? r : p ) > 26 )
  {
    throw decomp_error( "slice certificate would exceed the table limit" );
  }
  const unsigned width = 1u << sliced;

  decomposition_certificate cert;
  cert.a.resize( std::size_t{ 1 } << ( p + q ) );
  cert.b.resize( std::size_t{ 1 } << ( q + r ) );
  if ( side == slice_side::right )
  {
    cert.u = width;
    cert.v = r;
    for ( value_t x = 0; x < ( value_t{ 1 } << p ); ++x )
      for ( value_t y = 0; y < ( value_t{ 1 } << q ); ++y )
      {
        value_t slice = 0;
        for ( value_t z = 0; z < ( value_t{ 1 } << r ); ++z )
          slice = slice << 1 | tf( x, y, z );
        cert.a[x << q | y] = slice;
      }
    for ( value_t yz = 0; yz < cert.b.size(); ++yz )
      cert.b[yz] = yz & ( ( value_t{ 1 } << r ) - 1 );
    cert.t.resize( std::size_t{ 1 } << ( cert.u + cert.v ) );
    for ( value_t alpha = 0; alpha < ( value_t{ 1 } << cert.u ); ++alpha )
      for ( value_t beta = 0; beta < ( value_t{ 1 } << cert.v ); ++beta )
        cert.t[alpha << cert.v | beta] = ( alpha >> ( width - 1 - beta ) ) & 1u;
  }
  else
  {
    cert.u = p;
    cert.v = width;
    for ( value_t xy = 0; xy < cert.a.size(); ++xy )
      cert.a[xy] = xy >> q;
    for ( value_t y = 0; y < ( value_t{ 1 } << q ); ++y )
      for ( value_t z = 0; z < ( value_t{ 1 } << r ); ++z )
      {
        value_t slice = 0;
        for ( value_t x = 0; x < ( value_t{ 1 } << p ); ++x )
          slice = slice << 1 | tf( x, y, z );
        cert.b[y << r | z] = slice;
      }
    cert.t.resize( std::size_t{ 1 } << ( cert.u + cert.v ) );
    for ( value_t alpha = 0; alpha < ( value_t{ 1 } << cert.u ); ++alpha )
      for ( value_t beta = 0; beta < ( value_t{ 1 } << cert.v ); ++beta )
        cert.t[alpha << cert.v | beta] = ( beta >> ( width - 1 - alpha ) ) & 1u;
  }
  return cert;
}

decomposition_certificate upper_bound_split( const ternary_function& tf, unsigned j )
{
  const unsigned p = tf.p(), q = tf.q(), r = tf.r();
  if ( j > q )
  {
    throw decomp_error( "split point j must satisfy 0 <= j <= q" );
  }
  if ( tf.n() > 26 )
  {
    throw decomp_error( "split certificate would exceed the table limit" );
  }
  const unsigned low = q - j;

  decomposition_certificate cert;
  cert.u = p + j;
  cert.v = low + r;
  cert.a.resize( std::size_t{ 1 } << ( p + q ) );
  cert.b.resize( std::size_t{ 1 } << ( q + r ) );
  for ( value_t xy = 0; xy < cert.a.size(); ++xy )
    cert.a[xy] = xy >> low;
  for ( value_t yz = 0; yz < cert.b.size(); ++yz )
    cert.b[yz] = yz & ( ( value_t{ 1 } << cert.v ) - 1 );
  // <a, b> is the input index itself, so t is T re-indexed.
  cert.t.resize( std::size_t{ 1 } << tf.n() );
  for ( std::uint64_t index = 0; index < tf.size(); ++index )
    cert.t[index] = tf.at( index );
  return cert;
}

decomposition_certificate best_constructive_bound( const ternary_function& tf )
{
  auto best = upper_bound_split( tf, tf.q() );
  if ( tf.s() == 1 )
  {
    for ( auto side : { slice_side::right, slice_side::left } )
    {
      const unsigned sliced = side == slice_side::right ? tf.r() : tf.p();
      if ( sliced <= 4 && ( 1u << sliced ) + sliced < best.size() )
      {
        best = upper_bound_slice( tf, side );
      }
    }
  }
  return best;
}

solve_result exact_dc( const ternary_function& tf, const search_budget& budget )
{
  budget.validate();
  const auto start = clock_type::now();
  const auto deadline = start + budget.max_time;

  solve_result result;
  auto upper_cert = best_constructive_bound( tf );
  result.upper = upper_cert.size();
  result.certificate = std::move( upper_cert );
  result.lower = std::min( image_lower_bound( tf ), result.upper );

  search_budget inner = budget;
  inner.allow_unknown = true;
  const unsigned threads = worker_count();
  const unsigned pq = tf.p() + tf.q(), qr = tf.q() + tf.r();

  auto finish = [&]( solve_status status ) {
    result.status = status;
    result.stats.seconds = std::chrono::duration<double>( clock_type::now() - start ).count();
    return result;
  };

  for ( unsigned m = result.lower; m < result.upper; ++m )
  {
    if ( m > budget.max_m )
    {
      return finish( solve_status::bounds_only );
    }
    // Splits with u > p+q (or v > q+r) reduce to a smaller total already refuted.
    std::vector<unsigned> splits;
    for ( unsigned u = 0; u <= m; ++u )
    {
      if ( u <= pq && m - u <= qr )
        splits.push_back( u );
    }

    std::vector<feasibility_result> outcomes( splits.size() );
    for ( std::size_t first = 0; first < splits.size(); first += threads )
    {
      const std::size_t last = std::min( splits.size(), first + threads );
      if ( last - first == 1 )
      {
        outcomes[first] = feasible_until( tf, splits[first], m - splits[first], inner, deadline );
        continue;
      }
      std::vector<std::future<feasibility_result>> pending;
      for ( std::size_t i = first; i < last; ++i )
      {
        pending.push_back( std::async( std::launch::async, [&, i] {
          return feasible_until( tf, splits[i], m - splits[i], inner, deadline );
        } ) );
      }
      for ( std::size_t i = first; i < last; ++i )
      {
        outcomes[i] = pending[i - first].get();
      }
    }

    bool any_unknown = false;
    for ( auto& outcome : outcomes )
    {
      result.stats.nodes += outcome.stats.nodes;
    }
    for ( auto& outcome : outcomes )
    {
      if ( outcome.status == feasibility_status::feasible )
      {
        result.lower = result.upper = m;
        result.certificate = std::move( outcome.certificate );
        return finish( solve_status::exact );
      }
      any_unknown |= outcome.status == feasibility_status::unknown;
    }
    if ( any_unknown )
    {
      result.lower = m;
      return finish( solve_status::bounds_only );
    }
    result.lower = m + 1;
  }
  result.lower = result.upper;
  return finish( solve_status::exact );
}

best_agreement_result best_agreement( const ternary_function& tf, unsigned u, unsigned v, const best_agreement_options& options )
{
  if ( tf.s() != 1 )
  {
    throw decomp_error( "best_agreement is defined for predicates (s = 1)" );
  }
  if ( !options.override_guard &&
       ( tf.p() + tf.q() > 5 || tf.q() + tf.r() > 5 || u + v > 4 ) )
  {
    throw decomp_error( "best_agreement guard: domains must be <= 32 and u+v <= 4 (override to force)" );
  }
  check_search_shape( tf, u, v );
  const auto start = clock_type::now();

  coloring_search search( tf, u, v );
  const std::size_t ncells = std::size_t{ 1 } << ( u + v );
  std::vector<std::uint32_t> count0( ncells, 0 ), count1( ncells, 0 );
  std::int64_t score = 0;
  std::uint64_t decided = 0;
  const std::uint64_t total = tf.size();
  std::int64_t best = -1;

  struct saved
  {
    std::int64_t score;
    std::uint64_t decided;
  };
  std::vector<saved> frames( search.order().size() + 1 );

  auto add = [&]( std::uint64_t cell, value_t out, int sign ) {
    const auto before = std::max( count0[cell], count1[cell] );
    ( out ? count1 : count0 )[cell] += sign;
    const auto after = std::max( count0[cell], count1[cell] );
    score += static_cast<std::int64_t>( after ) - static_cast<std::int64_t>( before );
  };

  best_agreement_result result;
  auto try_assign = [&]( std::size_t depth, const variable& var, std::int64_t color ) {
    frames[depth] = { score, decided };
    search.for_each_decided( var, color, [&]( std::uint64_t cell, value_t out ) {
      add( cell, out, +1 );
      ++decided;
    } );
    // Optimistic completion: every undecided triple could still agree.
    if ( score + static_cast<std::int64_t>( total - decided ) <= best )
    {
      search.for_each_decided( var, color, [&]( std::uint64_t cell, value_t out ) { add( cell, out, -1 ); } );
      score = frames[depth].score;
      decided = frames[depth].decided;
      return false;
    }
    return true;
  };
  auto undo = [&]( std::size_t depth, const variable& var ) {
    const auto color = search.colors( var.side )[var.index];
    search.for_each_decided( var, color, [&]( std::uint64_t cell, value_t out ) { add( cell, out, -1 ); } );
    score = frames[depth].score;
    decided = frames[depth].decided;
  };
  auto leaf = [&]() {
    if ( score > best )
    {
      best = score;
      decomposition_certificate cert;
      cert.u = u;
      cert.v = v;
      cert.a.resize( search.na() );
      cert.b.resize( search.nb() );
      for ( std::uint32_t i = 0; i < search.na(); ++i )
        cert.a[i] = static_cast<value_t>( search.colors( 0 )[i] );
      for ( std::uint32_t j = 0; j < search.nb(); ++j )
        cert.b[j] = static_cast<value_t>( search.colors( 1 )[j] );
      cert.t.resize( ncells );
      for ( std::size_t c = 0; c < ncells; ++c )
        cert.t[c] = count1[c] > count0[c] ? 1u : 0u;
      result.certificate = std::move( cert );
    }
    return static_cast<std::uint64_t>( best ) == total;
  };

  const bool completed = search.run( options.max_nodes, clock_type::time_point::max(), result.stats.nodes, try_assign, undo, leaf );
  result.optimal = completed;
  result.value = agreement_ratio{ static_cast<std::uint64_t>( std::max<std::int64_t>( best, 0 ) ), total };
  if ( best < 0 )
  {
    // Budget ran out before the first leaf; fall back to the best constant.
    decomposition_certificate cert;
    cert.u = u;
    cert.v = v;
    cert.a.assign( search.na(), 0 );
    cert.b.assign( search.nb(), 0 );
    cert.t.assign( ncells, 0 );
    std::uint64_t ones = 0;
    for ( std::uint64_t index = 0; index < total; ++index )
      ones += tf.at( index );
    cert.t[0] = ones * 2 > total ? 1u : 0u;
    result.value = agreement( tf, cert );
    result.certificate = std::move( cert );
  }
  result.stats.seconds = std::chrono::duration<double>( clock_type::now() - start ).count();
  return result;
}

} // namespace decomp
