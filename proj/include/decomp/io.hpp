#pragma once

#include "decomp/automata.hpp"
#include "decomp/bounds.hpp"
#include "decomp/core.hpp"
#include "decomp/f2poly.hpp"
#include "decomp/solver.hpp"

#include <json.hpp>

#include <string>

namespace decomp
{

/// Insertion-ordered so that every dump is byte-stable.
using json = nlohmann::ordered_json;

/// {"p","q","r","s","table"}; table is a '0'/'1' string, s bits per index, MSB first.
json to_json( const ternary_function& tf );
ternary_function function_from_json( const json& j, unsigned ceiling = default_size_ceiling );

/// {"u","v","a","b","t"} with arrays in index order.
json to_json( const decomposition_certificate& cert );
decomposition_certificate certificate_from_json( const json& j );

/// {"k","monomials"} with masks ascending.
json to_json( const anf_polynomial& poly );
anf_polynomial anf_from_json( const json& j );

/// {"states","neutral","zero","one","delta"}.
json to_json( const ca_rule& rule );
ca_rule rule_from_json( const json& j );

/*! Seeded: {"seed","n","t","sigma"}. Explicit: {"n","t","sigma","neutral","zero","one",
    "vertices"} with vertices[time-1][cell offset] a states^3 table. Uniform circuits are
    written as explicit ones. An optional "encoding" lists [zero, one] per input position.
*/
json to_json( const triangle_circuit& circuit );
triangle_circuit circuit_from_json( const json& j );

/// Terms as decimal strings.
json to_json( const bound_report& report );

/// Search statistics carry node counts; wall-clock seconds only with `timing`, so dumps stay reproducible.
json to_json( const search_stats& stats, bool timing = false );
json to_json( const solve_result& result, bool timing = false );
json to_json( const feasibility_result& result, bool timing = false );

json to_json( const agreement_ratio& ratio );

/// Messages as '0'/'1' strings, with d, f, k, the referee bit and both sizes.
json protocol_transcript( unsigned k, mask_t x, mask_t z, const protocol_message_a& a, const protocol_message_b& b, std::uint8_t referee );

/// One line per step: "<offset>:" followed by the window states separated by spaces.
std::string trace_dump( const std::vector<configuration>& trace );

json read_json_file( const std::string& path );

} // namespace decomp
