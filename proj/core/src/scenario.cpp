#include "ncineq/scenario.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace ncineq {

int measurement_index(const Scenario& s, std::string_view id) {
  for (int i = 0; i < static_cast<int>(s.measurements.size()); ++i) {
    if (s.measurements[i].id == id) return i;
  }
  return -1;
}

int joint_outcome_count(const Scenario& s, int context_index) {
  const Context& ctx = s.contexts.at(context_index);
  int count = 1;
  for (const std::string& id : ctx.member_ids) {
    count *= s.measurements.at(measurement_index(s, id)).outcome_count;
  }
  return count;
}

int flat_outcome_index(const Scenario& s, int context_index,
                       std::span<const int> outcomes) {
  const Context& ctx = s.contexts.at(context_index);
  if (outcomes.size() != ctx.member_ids.size()) {
    throw ArgumentError("outcome tuple length does not match context size");
  }
  int flat = 0;
  for (size_t j = 0; j < outcomes.size(); ++j) {
    int count =
        s.measurements.at(measurement_index(s, ctx.member_ids[j])).outcome_count;
    if (outcomes[j] < 0 || outcomes[j] >= count) {
      throw ArgumentError("outcome " + std::to_string(outcomes[j]) +
                          " out of range for measurement " + ctx.member_ids[j]);
    }
    flat = flat * count + outcomes[j];
  }
  return flat;
}

std::vector<int> unflatten_outcome(const Scenario& s, int context_index,
                                   int flat) {
  const Context& ctx = s.contexts.at(context_index);
  std::vector<int> outcomes(ctx.member_ids.size());
  for (size_t j = ctx.member_ids.size(); j-- > 0;) {
    int count =
        s.measurements.at(measurement_index(s, ctx.member_ids[j])).outcome_count;
    outcomes[j] = flat % count;
    flat /= count;
  }
  return outcomes;
}

std::vector<int> context_table_offsets(const Scenario& s) {
  std::vector<int> offsets(s.contexts.size() + 1, 0);
  for (size_t c = 0; c < s.contexts.size(); ++c) {
    offsets[c + 1] = offsets[c] + joint_outcome_count(s, static_cast<int>(c));
  }
  return offsets;
}

std::vector<Violation> validate(const Scenario& s) {
  std::vector<Violation> out;
  auto flag = [&out](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };

  std::set<std::string> ids;
  for (const Measurement& m : s.measurements) {
    if (!ids.insert(m.id).second) {
      flag("measurement.duplicate-id", "duplicate measurement id '" + m.id + "'");
    }
    if (m.outcome_count < 2) {
      flag("measurement.outcome-count",
           "measurement '" + m.id + "' has outcome count " +
               std::to_string(m.outcome_count) + ", need at least 2");
    }
  }

  std::set<std::string> used;
  for (size_t c = 0; c < s.contexts.size(); ++c) {
    const Context& ctx = s.contexts[c];
    if (ctx.member_ids.empty()) {
      flag("context.empty", "context " + std::to_string(c) + " has no members");
    }
    std::set<std::string> members;
    for (const std::string& id : ctx.member_ids) {
      if (!ids.count(id)) {
        flag("context.unknown-measurement",
             "context " + std::to_string(c) + " references unknown id '" + id +
                 "'");
      } else {
        used.insert(id);
      }
      if (!members.insert(id).second) {
        flag("context.duplicate-member",
             "context " + std::to_string(c) + " lists '" + id + "' twice");
      }
    }
  }
  for (const Measurement& m : s.measurements) {
    if (ids.count(m.id) && !used.count(m.id)) {
      flag("measurement.unused",
           "measurement '" + m.id + "' appears in no context");
    }
  }

  // Functional terms are only checked against contexts that are themselves
  // sound, so one bad context does not cascade into spurious term errors.
  std::set<std::pair<int, std::vector<int>>> term_keys;
  for (size_t t = 0; t < s.functional.terms.size(); ++t) {
    const FunctionalTerm& term = s.functional.terms[t];
    if (term.context_index < 0 ||
        term.context_index >= static_cast<int>(s.contexts.size())) {
      flag("functional.bad-context",
           "term " + std::to_string(t) + " references context " +
               std::to_string(term.context_index));
      continue;
    }
    const Context& ctx = s.contexts[term.context_index];
    bool members_ok =
        std::all_of(ctx.member_ids.begin(), ctx.member_ids.end(),
                    [&](const std::string& id) { return ids.count(id) > 0; });
    if (!members_ok) continue;
    if (term.outcomes.size() != ctx.member_ids.size()) {
      flag("functional.bad-outcome",
           "term " + std::to_string(t) + " has tuple length " +
               std::to_string(term.outcomes.size()) + ", context needs " +
               std::to_string(ctx.member_ids.size()));
      continue;
    }
    bool in_range = true;
    for (size_t j = 0; j < term.outcomes.size(); ++j) {
      int count = s.measurements[measurement_index(s, ctx.member_ids[j])]
                      .outcome_count;
      if (term.outcomes[j] < 0 || term.outcomes[j] >= count) in_range = false;
    }
    if (!in_range) {
      flag("functional.bad-outcome",
           "term " + std::to_string(t) + " has an out-of-range outcome");
      continue;
    }
    if (!term_keys.insert({term.context_index, term.outcomes}).second) {
      flag("functional.duplicate-key",
           "term " + std::to_string(t) +
               " repeats an earlier (context, outcome) key");
    }
  }

  if (s.corr_pairing.empty()) {
    flag("corr-pairing.empty", "corr_pairing lists no measurements");
  }
  std::set<std::string> paired;
  for (const std::string& id : s.corr_pairing) {
    if (!ids.count(id)) {
      flag("corr-pairing.unknown-measurement",
           "corr_pairing references unknown id '" + id + "'");
    }
    if (!paired.insert(id).second) {
      flag("corr-pairing.duplicate", "corr_pairing lists '" + id + "' twice");
    }
  }

  return out;
}

Scenario build_n_cycle(int n) {
  if (n < 3 || n % 2 == 0) {
    throw ArgumentError("n-cycle requires odd n >= 3, got " +
                        std::to_string(n));
  }

  Scenario s;
  for (int i = 1; i <= n; ++i) {
    s.measurements.push_back({"M" + std::to_string(i), 2});
  }
  for (int i = 0; i < n; ++i) {
    s.contexts.push_back(
        {{s.measurements[i].id, s.measurements[(i + 1) % n].id}});
  }

  // Witness weight 1/n on the two anticorrelated outcomes of each context;
  // the per-context coefficients sum to 2/n and the total to 2.
  Rat weight(1, n);
  for (int c = 0; c < n; ++c) {
    s.functional.terms.push_back({c, {0, 1}, weight});
    s.functional.terms.push_back({c, {1, 0}, weight});
  }

  for (const Measurement& m : s.measurements) {
    s.corr_pairing.push_back(m.id);
  }
  return s;
}

}  // namespace ncineq
