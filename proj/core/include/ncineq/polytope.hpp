#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ncineq/rational.hpp"
#include "ncineq/scenario.hpp"

namespace ncineq {

// One linear condition on the stacked probability tables: coeffs . x = rhs
// for equalities, coeffs . x >= rhs for inequalities.
struct LinearRow {
  std::vector<Rat> coeffs;
  Rat rhs;
  bool operator==(const LinearRow&) const = default;
};

// Halfspace description of the noncontextual assignment polytope. Variables
// are ordered context-major; within a context the joint outcomes follow
// their flat index (see flat_outcome_index), so column
// context_offsets[c] + flat addresses table entry `flat` of context c.
struct HRep {
  int columns = 0;
  std::vector<int> context_offsets;
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;

  int column_of(int context_index, int flat_outcome) const {
    return context_offsets.at(context_index) + flat_outcome;
  }
};

// Emits, in order: one normalization equality per context, the
// marginal-consistency equalities (for each measurement, each consecutive
// pair of contexts containing it, each outcome), and one nonnegativity
// inequality per variable. Redundant rows are kept; the enumerator deals
// with them.
HRep build_hrep(const Scenario& s);

enum class VertexKind { Deterministic, Indeterministic };

// A polytope vertex: the stacked per-context probability tables, exact.
struct Vertex {
  std::vector<Rat> coords;
  VertexKind kind = VertexKind::Deterministic;
};

// Exact vertex enumeration by the double description method: the equalities
// are eliminated first, the reduced system is homogenized, and the
// inequalities are inserted incrementally with a combinatorial adjacency
// test. Output is sorted lexicographically by coordinate vector and each
// vertex is classified. Throws InternalError if the input system is
// infeasible or unbounded (neither can arise from build_hrep output).
std::vector<Vertex> enumerate_vertices(const HRep& h);

// Deterministic iff every table entry is 0 or 1.
VertexKind classify_vertex(const Vertex& v);

// The response-function distribution of one measurement inside one context,
// obtained by summing the context's table over the other members' outcomes.
// Throws ArgumentError if the measurement is not a member of the context.
std::vector<Rat> marginal_response(const Vertex& v, const Scenario& s,
                                   std::string_view measurement_id,
                                   int context_index);

// CSV dump of a vertex list, one line per table entry, with a leading
// vertex index column. Outcome tuples are colon-joined.
std::string vertex_table_csv(const std::vector<Vertex>& vertices,
                             const Scenario& s);

}  // namespace ncineq
