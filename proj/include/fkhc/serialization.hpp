#pragma once

#include <iosfwd>

#include "fkhc/bijection.hpp"

namespace fkhc {

// JSON-lines dump of a decorated map: one header line, then vertex, edge,
// dual-edge and Tutte-table records (schema in README).
void write_map_jsonl(const DecoratedMap& m, std::ostream& os);

}  // namespace fkhc
