#include "fkhc/serialization.hpp"

#include <ostream>

#include "json.hpp"

namespace fkhc {

void write_map_jsonl(const DecoratedMap& m, std::ostream& os) {
  using nlohmann::json;
  os << json{{"type", "header"},
             {"lo", m.diagram.lo},
             {"hi", m.diagram.hi},
             {"cycle", m.diagram.cycle},
             {"n_red", m.n_red()},
             {"n_blue", m.n_blue()},
             {"root", m.root},
             {"n_edges", m.edges.size()},
             {"n_flips", m.flips.size()}}
                .dump()
     << '\n';
  for (int32_t v = 0; v < m.n_red(); ++v)
    os << json{{"type", "vertex"},
               {"color", "red"},
               {"id", v},
               {"degree", m.degree(v)},
               {"dirty", m.faces.red_dirty[v] != 0}}
              .dump()
       << '\n';
  for (int32_t v = 0; v < m.n_blue(); ++v)
    os << json{{"type", "vertex"},
               {"color", "blue"},
               {"id", v},
               {"dirty", m.faces.blue_dirty[v] != 0}}
              .dump()
       << '\n';
  for (const MapEdge& e : m.edges)
    os << json{{"type", "edge"},
               {"kind", e.kind == EdgeKind::Tree ? "tree" : "dual"},
               {"u", e.u},
               {"v", e.v},
               {"pair", {e.s, e.t}},
               {"flipped", e.flipped},
               {"in_g", e.in_g}}
              .dump()
       << '\n';
  for (const DualGraphEdge& e : m.dual_edges)
    os << json{{"type", "dual_edge"},
               {"u", e.u},
               {"v", e.v},
               {"pair", {e.s, e.t}},
               {"in_gstar", e.in_gstar}}
              .dump()
       << '\n';
  const int64_t t_end = m.diagram.cycle ? m.diagram.hi : m.diagram.hi + 1;
  for (int64_t t = m.diagram.lo; t <= t_end; ++t)
    os << json{{"type", "tutte"},
               {"t", t},
               {"red", m.red_vertex(t)},
               {"blue", m.blue_vertex(t)}}
              .dump()
       << '\n';
}

}  // namespace fkhc
