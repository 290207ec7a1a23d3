#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "gbd/classify.hpp"
#include "gbd/derived.hpp"
#include "gbd/factor_map.hpp"
#include "gbd/fock.hpp"
#include "gbd/graph.hpp"
#include "gbd/integer_matrix.hpp"
#include "gbd/ktheory.hpp"
#include "gbd/odometer.hpp"
#include "gbd/sequence.hpp"

namespace gbd {

using Json = nlohmann::json;

/// {vertices: [..], edges: [{id, src, dst}]}. Throws StructuralError on bad shape.
DirectedMultigraph graph_from_json(const Json& doc);
Json graph_to_json(const DirectedMultigraph& g);

/// {prefix: [..], extend: "repeat-last" | "strict"}; extend defaults to repeat-last.
DivisibilitySequence sequence_from_json(const Json& doc);
Json sequence_to_json(const DivisibilitySequence& seq);

/// Reads and parses a JSON document; InputError on I/O or syntax failure.
Json read_json_file(const std::string& path);

/// "2,4,8" -> {2, 4, 8}.
std::vector<std::uint64_t> parse_uint_list(std::string_view text);

/// Byte-stable DOT: nodes and edges in id order.
std::string emit_dot(const DirectedMultigraph& g, std::string_view name = "E");

/// Header "rows cols", then one row per line.
std::string matrix_dump(const IntegerMatrix& m);

/// Sorted keys, two-space indent, trailing newline.
std::string emit_report(const Json& value);

Json to_json(const DirectedMultigraph& g, const ValidationReport& r);
Json to_json(const DerivedGraph& d);
Json to_json(const LoopDecomposition& d);
Json to_json(const FactorMap& m);
Json to_json(const FactorVerdict& v);
Json to_json(const GeneratorMap& m);
Json to_json(const IntegerMatrix& m);
Json to_json(const FinitelyGeneratedAbelianGroup& g);
Json to_json(const DirectSystemReport& r);
Json to_json(const RelationReport& r);
Json to_json(const TheoremAnReport& r);
Json to_json(const SupernaturalNumber& s);
Json to_json(const BDInvariant& inv);
Json to_json(const Verdict& v);
Json to_json(const DirectedMultigraph& g, const SimplicityReport& r);
Json to_json(const DirectedMultigraph& g, const NoLoopsReport& r);

}  // namespace gbd
