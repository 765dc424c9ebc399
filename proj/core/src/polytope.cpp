#include "ncineq/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <utility>

namespace ncineq {

namespace {

// ---------------------------------------------------------------------------
// Exact linear algebra helpers for the double description run.
// ---------------------------------------------------------------------------

// Result of Gauss-Jordan elimination of the equality system E x = f:
// the solution set is { x0 + sum_f y_f * basis[f] } over free variables y.
struct EqualityReduction {
  std::vector<Rat> x0;                   // particular solution
  std::vector<std::vector<Rat>> basis;   // one nullspace column per free var
  std::vector<int> free_columns;
};

EqualityReduction reduce_equalities(const std::vector<LinearRow>& equalities,
                                    int columns) {
  // Pivot rows kept fully reduced: unit pivot, zeros at every other pivot
  // column. pivot_of[col] is the owning row, or -1 for free columns.
  std::vector<std::vector<Rat>> rows;  // coeffs + rhs appended
  std::vector<int> pivot_col;
  std::vector<int> pivot_of(columns, -1);

  for (const LinearRow& eq : equalities) {
    std::vector<Rat> row(eq.coeffs);
    row.push_back(eq.rhs);
    for (size_t r = 0; r < rows.size(); ++r) {
      const Rat& factor = row[pivot_col[r]];
      if (factor == 0) continue;
      Rat f = factor;
      for (int j = 0; j <= columns; ++j) row[j] -= f * rows[r][j];
    }
    int lead = -1;
    for (int j = 0; j < columns; ++j) {
      if (row[j] != 0) {
        lead = j;
        break;
      }
    }
    if (lead < 0) {
      if (row[columns] != 0) {
        throw InternalError("equality system is infeasible");
      }
      continue;  // redundant equality
    }
    Rat inv = Rat(1) / row[lead];
    for (int j = 0; j <= columns; ++j) row[j] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      const Rat& factor = rows[r][lead];
      if (factor == 0) continue;
      Rat f = factor;
      for (int j = 0; j <= columns; ++j) rows[r][j] -= f * row[j];
    }
    pivot_of[lead] = static_cast<int>(rows.size());
    pivot_col.push_back(lead);
    rows.push_back(std::move(row));
  }

  EqualityReduction red;
  red.x0.assign(columns, Rat(0));
  for (size_t r = 0; r < rows.size(); ++r) {
    red.x0[pivot_col[r]] = rows[r][columns];
  }
  for (int j = 0; j < columns; ++j) {
    if (pivot_of[j] >= 0) continue;
    red.free_columns.push_back(j);
    std::vector<Rat> col(columns, Rat(0));
    col[j] = 1;
    for (size_t r = 0; r < rows.size(); ++r) {
      col[pivot_col[r]] = -rows[r][j];
    }
    red.basis.push_back(std::move(col));
  }
  return red;
}

// A homogenized constraint row over (y_1 .. y_d, t), scaled to a primitive
// integer vector so all downstream arithmetic stays in cpp_int.
using IntRow = std::vector<Int>;

IntRow to_primitive(const std::vector<Rat>& row) {
  Int scale = 1;
  for (const Rat& v : row) {
    scale = boost::multiprecision::lcm(scale, Int(denominator(v)));
  }
  IntRow out(row.size());
  Int content = 0;
  for (size_t j = 0; j < row.size(); ++j) {
    out[j] = Int(numerator(row[j])) * (scale / Int(denominator(row[j])));
    content = boost::multiprecision::gcd(content, out[j]);
  }
  if (content > 1) {
    for (Int& v : out) v /= content;
  }
  return out;
}

Int dot(const IntRow& a, const std::vector<Int>& b) {
  Int sum = 0;
  for (size_t j = 0; j < a.size(); ++j) sum += a[j] * b[j];
  return sum;
}

// Fixed-width bitset over constraint rows, tracking which processed rows a
// ray is incident on.
struct BitSet {
  std::vector<std::uint64_t> words;

  explicit BitSet(size_t bits) : words((bits + 63) / 64, 0) {}
  void set(size_t i) { words[i / 64] |= std::uint64_t(1) << (i % 64); }
  friend BitSet operator&(const BitSet& a, const BitSet& b) {
    BitSet out = a;
    for (size_t w = 0; w < out.words.size(); ++w) out.words[w] &= b.words[w];
    return out;
  }
  bool subset_of(const BitSet& other) const {
    for (size_t w = 0; w < words.size(); ++w) {
      if (words[w] & ~other.words[w]) return false;
    }
    return true;
  }
  int count() const {
    int n = 0;
    for (std::uint64_t w : words) n += std::popcount(w);
    return n;
  }
};

struct Ray {
  std::vector<Int> v;
  BitSet zero;
};

void make_primitive(std::vector<Int>& v) {
  Int content = 0;
  for (const Int& x : v) content = boost::multiprecision::gcd(content, x);
  if (content > 1) {
    for (Int& x : v) x /= content;
  }
}

// Extreme rays of the pointed cone { z : rows . z >= 0 } by incremental
// double description. An initial simplicial cone is taken from the first
// maximal-rank row subset; the remaining rows are inserted one at a time,
// combining adjacent rays across the new hyperplane. Adjacency is decided
// combinatorially: rays p, m are adjacent iff no third ray is incident on
// every row that both p and m are incident on.
std::vector<Ray> extreme_rays(const std::vector<IntRow>& rows, int dim) {
  const size_t n_rows = rows.size();

  // Initial basis: greedily collect `dim` independent rows.
  std::vector<size_t> basis_rows;
  {
    std::vector<std::vector<Rat>> elim;  // row echelon workspace
    std::vector<int> elim_lead;
    for (size_t h = 0; h < n_rows && basis_rows.size() < size_t(dim); ++h) {
      std::vector<Rat> row(rows[h].size());
      for (size_t j = 0; j < row.size(); ++j) row[j] = Rat(rows[h][j]);
      for (size_t r = 0; r < elim.size(); ++r) {
        const Rat& factor = row[elim_lead[r]];
        if (factor == 0) continue;
        Rat f = factor;
        for (size_t j = 0; j < row.size(); ++j) row[j] -= f * elim[r][j];
      }
      int lead = -1;
      for (size_t j = 0; j < row.size(); ++j) {
        if (row[j] != 0) {
          lead = static_cast<int>(j);
          break;
        }
      }
      if (lead < 0) continue;
      Rat inv = Rat(1) / row[lead];
      for (size_t j = 0; j < row.size(); ++j) row[j] *= inv;
      elim.push_back(std::move(row));
      elim_lead.push_back(lead);
      basis_rows.push_back(h);
    }
    if (basis_rows.size() < size_t(dim)) {
      throw InternalError("constraint cone is not pointed");
    }
  }

  // Rays of the simplicial cone: columns of the basis inverse, so that
  // basis_row_i . ray_j = delta_ij >= 0.
  std::vector<Ray> rays;
  {
    int d = dim;
    std::vector<std::vector<Rat>> aug(d, std::vector<Rat>(2 * d, Rat(0)));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) aug[i][j] = Rat(rows[basis_rows[i]][j]);
      aug[i][d + i] = 1;
    }
    for (int col = 0; col < d; ++col) {
      int pivot = -1;
      for (int r = col; r < d; ++r) {
        if (aug[r][col] != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) throw InternalError("basis inversion lost rank");
      std::swap(aug[col], aug[pivot]);
      Rat inv = Rat(1) / aug[col][col];
      for (int j = 0; j < 2 * d; ++j) aug[col][j] *= inv;
      for (int r = 0; r < d; ++r) {
        if (r == col) continue;
        const Rat& factor = aug[r][col];
        if (factor == 0) continue;
        Rat f = factor;
        for (int j = 0; j < 2 * d; ++j) aug[r][j] -= f * aug[col][j];
      }
    }
    for (int j = 0; j < d; ++j) {
      std::vector<Rat> col(d);
      for (int i = 0; i < d; ++i) col[i] = aug[i][d + j];
      Ray ray{to_primitive(col), BitSet(n_rows)};
      for (size_t h : basis_rows) {
        if (dot(rows[h], ray.v) == 0) ray.zero.set(h);
      }
      rays.push_back(std::move(ray));
    }
  }

  std::vector<bool> in_basis(n_rows, false);
  for (size_t h : basis_rows) in_basis[h] = true;

  for (size_t h = 0; h < n_rows; ++h) {
    if (in_basis[h]) continue;
    std::vector<Int> side(rays.size());
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < rays.size(); ++i) {
      side[i] = dot(rows[h], rays[i].v);
      if (side[i] > 0) pos.push_back(i);
      if (side[i] < 0) neg.push_back(i);
    }

    // Create the combined rays first: the adjacency test needs the full
    // pre-insertion ray list intact.
    std::vector<Ray> created;
    for (size_t p : pos) {
      for (size_t m : neg) {
        BitSet common = rays[p].zero & rays[m].zero;
        // Necessary condition first (a 2-face needs dim-2 common rows),
        // then the exact test against every other ray.
        if (common.count() < dim - 2) continue;
        bool adjacent = true;
        for (size_t q = 0; q < rays.size(); ++q) {
          if (q == p || q == m) continue;
          if (common.subset_of(rays[q].zero)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;

        std::vector<Int> combo(rays[p].v.size());
        for (size_t j = 0; j < combo.size(); ++j) {
          combo[j] = side[p] * rays[m].v[j] - side[m] * rays[p].v[j];
        }
        make_primitive(combo);
        Ray fresh{std::move(combo), common};
        fresh.zero.set(h);
        created.push_back(std::move(fresh));
      }
    }

    std::vector<Ray> next;
    next.reserve(rays.size() - neg.size() + created.size());
    for (size_t i = 0; i < rays.size(); ++i) {
      if (side[i] < 0) continue;
      Ray kept = std::move(rays[i]);
      if (side[i] == 0) kept.zero.set(h);
      next.push_back(std::move(kept));
    }
    for (Ray& fresh : created) next.push_back(std::move(fresh));

    if (next.empty()) {
      throw InternalError("constraint system is infeasible");
    }
    rays = std::move(next);
  }
  return rays;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

HRep build_hrep(const Scenario& s) {
  HRep h;
  h.context_offsets = context_table_offsets(s);
  h.columns = h.context_offsets.back();

  auto zero_row = [&h] { return std::vector<Rat>(h.columns, Rat(0)); };

  // Normalization: each context's table sums to one.
  for (size_t c = 0; c < s.contexts.size(); ++c) {
    LinearRow row{zero_row(), Rat(1)};
    int count = joint_outcome_count(s, static_cast<int>(c));
    for (int flat = 0; flat < count; ++flat) {
      row.coeffs[h.column_of(static_cast<int>(c), flat)] = 1;
    }
    h.equalities.push_back(std::move(row));
  }

  // Marginal consistency: a measurement's response function must not depend
  // on the context it is read from. One equality per outcome per
  // consecutive pair of containing contexts keeps the chain linear in the
  // number of contexts.
  for (const Measurement& m : s.measurements) {
    std::vector<std::pair<int, int>> sites;  // (context, member position)
    for (size_t c = 0; c < s.contexts.size(); ++c) {
      const auto& members = s.contexts[c].member_ids;
      for (size_t j = 0; j < members.size(); ++j) {
        if (members[j] == m.id) sites.push_back({static_cast<int>(c), static_cast<int>(j)});
      }
    }
    for (size_t k = 0; k + 1 < sites.size(); ++k) {
      auto [ca, ja] = sites[k];
      auto [cb, jb] = sites[k + 1];
      for (int outcome = 0; outcome < m.outcome_count; ++outcome) {
        LinearRow row{zero_row(), Rat(0)};
        for (int flat = 0; flat < joint_outcome_count(s, ca); ++flat) {
          if (unflatten_outcome(s, ca, flat)[ja] == outcome) {
            row.coeffs[h.column_of(ca, flat)] += 1;
          }
        }
        for (int flat = 0; flat < joint_outcome_count(s, cb); ++flat) {
          if (unflatten_outcome(s, cb, flat)[jb] == outcome) {
            row.coeffs[h.column_of(cb, flat)] -= 1;
          }
        }
        h.equalities.push_back(std::move(row));
      }
    }
  }

  // Nonnegativity of every table entry.
  for (int col = 0; col < h.columns; ++col) {
    LinearRow row{zero_row(), Rat(0)};
    row.coeffs[col] = 1;
    h.inequalities.push_back(std::move(row));
  }
  return h;
}

std::vector<Vertex> enumerate_vertices(const HRep& h) {
  EqualityReduction red = reduce_equalities(h.equalities, h.columns);
  const int d = static_cast<int>(red.free_columns.size());

  // Transform each inequality a.x >= b into the free coordinates:
  // (a.N) y >= b - a.x0, then homogenize as (a.N, a.x0 - b).(y, t) >= 0.
  std::vector<IntRow> hrows;
  for (const LinearRow& ineq : h.inequalities) {
    std::vector<Rat> row(d + 1, Rat(0));
    bool nonzero = false;
    for (int f = 0; f < d; ++f) {
      Rat v = 0;
      for (int j = 0; j < h.columns; ++j) {
        if (ineq.coeffs[j] != 0) v += ineq.coeffs[j] * red.basis[f][j];
      }
      row[f] = v;
      if (v != 0) nonzero = true;
    }
    Rat shift = -ineq.rhs;
    for (int j = 0; j < h.columns; ++j) {
      if (ineq.coeffs[j] != 0) shift += ineq.coeffs[j] * red.x0[j];
    }
    row[d] = shift;
    if (!nonzero) {
      if (shift < 0) throw InternalError("inequality system is infeasible");
      continue;  // trivially satisfied once the equalities hold
    }
    hrows.push_back(to_primitive(row));
  }
  {
    std::vector<Rat> trow(d + 1, Rat(0));
    trow[d] = 1;
    hrows.push_back(to_primitive(trow));
  }

  std::vector<Ray> rays = extreme_rays(hrows, d + 1);

  std::vector<Vertex> vertices;
  vertices.reserve(rays.size());
  for (const Ray& ray : rays) {
    const Int& t = ray.v[d];
    if (t == 0) {
      throw InternalError("polytope is unbounded");
    }
    Vertex vert;
    vert.coords.assign(h.columns, Rat(0));
    for (int j = 0; j < h.columns; ++j) vert.coords[j] = red.x0[j];
    for (int f = 0; f < d; ++f) {
      Rat y(ray.v[f], t);
      if (y == 0) continue;
      for (int j = 0; j < h.columns; ++j) {
        if (red.basis[f][j] != 0) vert.coords[j] += y * red.basis[f][j];
      }
    }
    vertices.push_back(std::move(vert));
  }

  // The enumeration is exact, so a failed constraint here is a library bug.
  for (const Vertex& vert : vertices) {
    for (const LinearRow& eq : h.equalities) {
      Rat lhs = 0;
      for (int j = 0; j < h.columns; ++j) lhs += eq.coeffs[j] * vert.coords[j];
      if (lhs != eq.rhs) throw InternalError("vertex violates an equality");
    }
    for (const LinearRow& ineq : h.inequalities) {
      Rat lhs = 0;
      for (int j = 0; j < h.columns; ++j) lhs += ineq.coeffs[j] * vert.coords[j];
      if (lhs < ineq.rhs) throw InternalError("vertex violates an inequality");
    }
  }

  std::sort(vertices.begin(), vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.coords < b.coords; });
  for (size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i].coords == vertices[i - 1].coords) {
      throw InternalError("duplicate vertex in enumeration output");
    }
  }
  for (Vertex& vert : vertices) vert.kind = classify_vertex(vert);
  return vertices;
}

VertexKind classify_vertex(const Vertex& v) {
  for (const Rat& x : v.coords) {
    if (x != 0 && x != 1) return VertexKind::Indeterministic;
  }
  return VertexKind::Deterministic;
}

std::vector<Rat> marginal_response(const Vertex& v, const Scenario& s,
                                   std::string_view measurement_id,
                                   int context_index) {
  const Context& ctx = s.contexts.at(context_index);
  int position = -1;
  for (size_t j = 0; j < ctx.member_ids.size(); ++j) {
    if (ctx.member_ids[j] == measurement_id) {
      position = static_cast<int>(j);
      break;
    }
  }
  if (position < 0) {
    throw ArgumentError("measurement '" + std::string(measurement_id) +
                        "' is not a member of context " +
                        std::to_string(context_index));
  }
  int outcome_count =
      s.measurements[measurement_index(s, measurement_id)].outcome_count;
  std::vector<int> offsets = context_table_offsets(s);

  std::vector<Rat> marginal(outcome_count, Rat(0));
  for (int flat = 0; flat < joint_outcome_count(s, context_index); ++flat) {
    int outcome = unflatten_outcome(s, context_index, flat)[position];
    marginal[outcome] += v.coords.at(offsets[context_index] + flat);
  }
  return marginal;
}

std::string vertex_table_csv(const std::vector<Vertex>& vertices,
                             const Scenario& s) {
  std::vector<int> offsets = context_table_offsets(s);
  std::ostringstream out;
  out << "vertex,context,outcome_tuple,value_num,value_den,kind\n";
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Vertex& v = vertices[i];
    const char* kind =
        v.kind == VertexKind::Deterministic ? "deterministic" : "indeterministic";
    for (size_t c = 0; c < s.contexts.size(); ++c) {
      for (int flat = 0; flat < joint_outcome_count(s, static_cast<int>(c));
           ++flat) {
        std::vector<int> tuple = unflatten_outcome(s, static_cast<int>(c), flat);
        out << i << ',' << c << ',';
        for (size_t j = 0; j < tuple.size(); ++j) {
          if (j) out << ':';
          out << tuple[j];
        }
        const Rat& value = v.coords[offsets[c] + flat];
        out << ',' << numerator(value).str() << ',' << denominator(value).str()
            << ',' << kind << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace ncineq
