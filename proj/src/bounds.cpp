#include "decomp/bounds.hpp"
#include "decomp/core.hpp"

namespace decomp
{

std::string rational::to_string() const
{
  return num.str() + "/" + den.str();
}

std::string to_string( bound_kind kind )
{
  switch ( kind )
  {
  case bound_kind::counting:
    return "counting";
  case bound_kind::counting_approx:
    return "counting-approx";
  case bound_kind::indexing_formula:
    return "indexing-formula";
  }
  return "unknown";
}

bool bound_row::resum_consistent() const
{
  big_int sum = 0;
  for ( const auto& [name, value] : terms )
  {
    sum += value;
  }
  return sum == total;
}

bool bound_report::consistent() const
{
  for ( const auto& row : rows )
  {
    if ( !row.resum_consistent() )
      return false;
    const bool decision = kind == bound_kind::indexing_formula ? row.total >= row.rhs : row.total < row.rhs;
    if ( decision != row.holds )
      return false;
  }
  return true;
}

unsigned ceil_log2( std::uint64_t m )
{
  unsigned bits = 0;
  while ( bits < 64 && ( std::uint64_t{ 1 } << bits ) < m )
  {
    ++bits;
  }
  return bits;
}

namespace
{

constexpr unsigned max_counting_n = 4096;

big_int pow2( unsigned e )
{
  big_int out = 1;
  out <<= e;
  return out;
}

big_int ceil_div( const big_int& a, const big_int& b )
{
  return ( a + b - 1 ) / b;
}

bound_row counting_row( unsigned p, unsigned q, unsigned r, unsigned m, const big_int& rhs )
{
  bound_row row;
  row.m = m;
  row.terms = {
      { "ceil_log2_m", big_int( ceil_log2( m ) ) },
      { "m_2^(p+q)", big_int( m ) * pow2( p + q ) },
      { "m_2^(q+r)", big_int( m ) * pow2( q + r ) },
      { "2^m", pow2( m ) },
  };
  row.total = 0;
  for ( const auto& term : row.terms )
  {
    row.total += term.second;
  }
  row.rhs = rhs;
  row.holds = row.total < rhs;
  return row;
}

bound_report counting_scan( bound_kind kind, unsigned p, unsigned q, unsigned r, const big_int& rhs )
{
  const unsigned n = p + q + r;
  if ( n > max_counting_n )
  {
    throw decomp_error( "p+q+r too large for the counting calculator" );
  }
  bound_report report;
  report.kind = kind;
  report.p = p;
  report.q = q;
  report.r = r;

  if ( !counting_row( p, q, r, 0, rhs ).holds )
  {
    report.vacuous = true;
    report.rows.push_back( counting_row( p, q, r, 0, rhs ) );
    return report;
  }
  unsigned m = 0;
  while ( counting_row( p, q, r, m + 1, rhs ).holds )
  {
    ++m;
  }
  report.m = m;
  report.rows.push_back( counting_row( p, q, r, m, rhs ) );
  report.rows.push_back( counting_row( p, q, r, m + 1, rhs ) );
  return report;
}

/// Closed interval [lo, hi] of fixed-point values scaled by 2^entropy_precision_bits.
struct interval
{
  big_int lo, hi;
};

/// ln y for rational y in [1, 2) via ln y = 2 atanh((y-1)/(y+1)).
interval ln_unit( const big_int& num, const big_int& den )
{
  const unsigned prec = entropy_precision_bits;
  const big_int one = pow2( prec );
  const big_int wn = num - den;
  const big_int wd = num + den;
  const big_int w_lo = ( wn << prec ) / wd;
  const big_int w_hi = ceil_div( wn << prec, wd );
  const big_int w2_lo = ( w_lo * w_lo ) >> prec;
  const big_int w2_hi = ceil_div( w_hi * w_hi, one );

  big_int sum_lo = 0, sum_hi = 0;
  big_int pw_lo = w_lo, pw_hi = w_hi;
  unsigned j = 0;
  while ( pw_hi > 0 && j < 4 * prec )
  {
    sum_lo += pw_lo / ( 2 * j + 1 );
    sum_hi += ceil_div( pw_hi, big_int( 2 * j + 1 ) );
    pw_lo = ( pw_lo * w2_lo ) >> prec;
    pw_hi = ceil_div( pw_hi * w2_hi, one );
    ++j;
    if ( pw_hi <= 1 )
    {
      break;
    }
  }
  // Remaining terms are below w^(2j+1)/(2j+1) / (1 - w^2) <= pw_hi * 9/8 for w < 1/3.
  sum_hi += ceil_div( pw_hi * 9, big_int( 8 ) ) + 1;
  return { 2 * sum_lo, 2 * sum_hi };
}

/// Upper bound on log2(num/den) for num >= den > 0, fixed point.
big_int log2_upper( const big_int& num, const big_int& den )
{
  const unsigned prec = entropy_precision_bits;
  unsigned e = 0;
  while ( ( den << ( e + 1 ) ) <= num )
  {
    ++e;
  }
  const auto ln_y = ln_unit( num, den << e );
  const auto ln2 = ln_unit( big_int( 2 ), big_int( 1 ) );
  return ( big_int( e ) << prec ) + ceil_div( ln_y.hi << prec, ln2.lo );
}

} // namespace

rational binary_entropy_upper( const rational& epsilon )
{
  const unsigned prec = entropy_precision_bits;
  rational out{ 0, pow2( prec ) };
  if ( epsilon.num == 0 )
  {
    return out;
  }
  const big_int& a = epsilon.num;
  const big_int& b = epsilon.den;
  // eps log2(1/eps) + (1-eps) log2(1/(1-eps)), each product rounded up.
  out.num = ceil_div( a * log2_upper( b, a ), b ) + ceil_div( ( b - a ) * log2_upper( b, b - a ), b );
  return out;
}

rational parse_rational( const std::string& text )
{
  rational out;
  const auto slash = text.find( '/' );
  try
  {
    if ( slash == std::string::npos )
    {
      out.num = big_int( text );
      out.den = 1;
    }
    else
    {
      out.num = big_int( text.substr( 0, slash ) );
      out.den = big_int( text.substr( slash + 1 ) );
    }
  }
  catch ( const std::exception& )
  {
    throw decomp_error( "malformed rational '" + text + "'" );
  }
  if ( out.den <= 0 )
  {
    throw decomp_error( "rational denominator must be positive" );
  }
  return out;
}

bound_report counting_lower_bound( unsigned p, unsigned q, unsigned r )
{
  return counting_scan( bound_kind::counting, p, q, r, pow2( p + q + r ) );
}

bound_report counting_lower_bound_approx( unsigned p, unsigned q, unsigned r, const rational& epsilon )
{
  if ( epsilon.num < 0 || epsilon.den <= 0 || 2 * epsilon.num >= epsilon.den )
  {
    throw decomp_error( "epsilon must satisfy 0 <= eps < 1/2" );
  }
  if ( p + q + r > max_counting_n )
  {
    throw decomp_error( "p+q+r too large for the counting calculator" );
  }
  const auto entropy = binary_entropy_upper( epsilon );
  // total < (1 - H) 2^n  <=>  total < ceil((den - num) 2^n / den) for integer totals.
  const big_int rhs = ceil_div( ( entropy.den - entropy.num ) << ( p + q + r ), entropy.den );
  auto report = counting_scan( bound_kind::counting_approx, p, q, r, rhs );
  report.epsilon = epsilon;
  report.entropy_upper = entropy;
  return report;
}

bound_report indexing_lower_bound( unsigned k )
{
  if ( k == 0 || k > 30 )
  {
    throw decomp_error( "indexing bound needs 1 <= k <= 30" );
  }
  bound_report report;
  report.kind = bound_kind::indexing_formula;
  report.k = k;
  report.m = 1u << k;
  for ( unsigned m : { report.m - 1, report.m } )
  {
    bound_row row;
    row.m = m;
    row.terms = { { "(u+v)_2^k", big_int( m ) * pow2( k ) } };
    row.total = row.terms.front().second;
    row.rhs = pow2( 2 * k );
    row.holds = row.total >= row.rhs;
    report.rows.push_back( std::move( row ) );
  }
  return report;
}

} // namespace decomp
