#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qvrp/instance.hpp"

namespace qvrp {

enum class Sense { Eq, Le, Ge };

inline const char* sense_name(Sense s) {
  switch (s) {
    case Sense::Eq: return "=";
    case Sense::Le: return "<=";
    case Sense::Ge: return ">=";
  }
  return "?";
}

struct LinTerm {
  int var = 0;
  double coeff = 0.0;
};

struct Constraint {
  std::vector<LinTerm> terms;
  Sense sense = Sense::Eq;
  double rhs = 0.0;
  std::string label;
  // Two-variable subset constraints x + y <= 1 are eligible for the direct
  // product penalty instead of slack encoding.
  bool pairwise = false;
};

struct QuadTerm {
  int a = 0;  // a < b
  int b = 0;
  double coeff = 0.0;
};

// Binary program with a (at most quadratic) objective and linear constraints.
// Variable order is deterministic: model variables in construction order,
// which for the edge model means x_{i,j} sorted lexicographically by (i,j).
struct ConstrainedProgram {
  std::vector<std::string> variables;
  double objective_constant = 0.0;
  std::vector<double> objective_linear;
  std::vector<QuadTerm> objective_quadratic;
  std::vector<Constraint> constraints;
};

// Directed edges (i,j), i != j, in lexicographic order.
inline std::vector<std::pair<int, int>> edge_order(int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(n) * static_cast<size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) edges.emplace_back(i, j);
    }
  }
  return edges;
}

inline int edge_var_index(int n, int i, int j) {
  // Row i holds the n-1 edges leaving i; within the row, targets ascend.
  return i * (n - 1) + (j > i ? j - 1 : j);
}

inline std::string edge_var_name(int i, int j) {
  return "x_" + std::to_string(i) + "_" + std::to_string(j);
}

// All customer subsets S with 2 <= |S| <= n-1, in size-then-lexicographic
// order. Subsets containing the depot need no constraint.
inline std::vector<std::vector<int>> enumerate_subtour_subsets(int n) {
  std::vector<std::vector<int>> subsets;
  if (n < 3) return subsets;
  const int m = n - 1;  // customers 1..n-1
  for (int size = 2; size <= m; ++size) {
    std::vector<int> idx(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
      std::vector<int> subset(static_cast<size_t>(size));
      for (int i = 0; i < size; ++i) subset[static_cast<size_t>(i)] = idx[static_cast<size_t>(i)] + 1;
      subsets.push_back(std::move(subset));
      int i = size - 1;
      while (i >= 0 && idx[static_cast<size_t>(i)] == m - size + i) --i;
      if (i < 0) break;
      ++idx[static_cast<size_t>(i)];
      for (int jj = i + 1; jj < size; ++jj) {
        idx[static_cast<size_t>(jj)] = idx[static_cast<size_t>(jj - 1)] + 1;
      }
    }
  }
  return subsets;
}

namespace detail {

inline std::string subset_label(const std::vector<int>& s) {
  std::string label = "SUB{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) label += ',';
    label += std::to_string(s[static_cast<size_t>(i)]);
  }
  label += '}';
  return label;
}

}  // namespace detail

// Edge-based model: one binary variable per directed edge, linear objective,
// degree equalities for customers and depot, and within-subset subtour
// elimination (sum of edges inside S at most |S|-1).
inline ConstrainedProgram build_edge_model(const VrpInstance& inst) {
  const int n = inst.n;
  ConstrainedProgram prog;
  const auto edges = edge_order(n);
  prog.variables.reserve(edges.size());
  prog.objective_linear.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    prog.variables.push_back(edge_var_name(i, j));
    prog.objective_linear.push_back(
        inst.weights[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }

  int label = 0;
  auto next_label = [&label] { return "C" + std::to_string(label++); };

  // Customer out-degree, then in-degree, then depot in, then depot out.
  for (int i = 1; i < n; ++i) {
    Constraint c;
    for (int j = 0; j < n; ++j) {
      if (j != i) c.terms.push_back({edge_var_index(n, i, j), 1.0});
    }
    c.sense = Sense::Eq;
    c.rhs = 1.0;
    c.label = next_label();
    prog.constraints.push_back(std::move(c));
  }
  for (int i = 1; i < n; ++i) {
    Constraint c;
    for (int j = 0; j < n; ++j) {
      if (j != i) c.terms.push_back({edge_var_index(n, j, i), 1.0});
    }
    c.sense = Sense::Eq;
    c.rhs = 1.0;
    c.label = next_label();
    prog.constraints.push_back(std::move(c));
  }
  {
    Constraint c;
    for (int i = 1; i < n; ++i) c.terms.push_back({edge_var_index(n, i, 0), 1.0});
    c.sense = Sense::Eq;
    c.rhs = inst.k;
    c.label = next_label();
    prog.constraints.push_back(std::move(c));
  }
  {
    Constraint c;
    for (int j = 1; j < n; ++j) c.terms.push_back({edge_var_index(n, 0, j), 1.0});
    c.sense = Sense::Eq;
    c.rhs = inst.k;
    c.label = next_label();
    prog.constraints.push_back(std::move(c));
  }

  for (const auto& subset : enumerate_subtour_subsets(n)) {
    Constraint c;
    for (int i : subset) {
      for (int j : subset) {
        if (i != j) c.terms.push_back({edge_var_index(n, i, j), 1.0});
      }
    }
    std::sort(c.terms.begin(), c.terms.end(),
              [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
    c.sense = Sense::Le;
    c.rhs = static_cast<double>(subset.size()) - 1.0;
    c.label = detail::subset_label(subset);
    c.pairwise = subset.size() == 2;
    prog.constraints.push_back(std::move(c));
  }
  return prog;
}

// Time-expanded model: variable x^k_{v,t} is 1 when vehicle k occupies node v
// at step t. Variables ordered by (k, t, v). Quadratic objective over
// consecutive steps; each customer visited exactly once, each vehicle at
// exactly one node per step. Demands are assumed satisfied on arrival, so no
// capacity constraint is emitted.
inline ConstrainedProgram build_time_expanded_model(const VrpInstance& inst, int T) {
  if (T < 2) throw std::invalid_argument("time horizon must be >= 2, got " + std::to_string(T));
  const int n = inst.n;
  const int K = inst.k;
  ConstrainedProgram prog;
  auto idx = [&](int k, int t, int v) { return ((k - 1) * T + (t - 1)) * n + v; };
  for (int k = 1; k <= K; ++k) {
    for (int t = 1; t <= T; ++t) {
      for (int v = 0; v < n; ++v) {
        prog.variables.push_back("x_k" + std::to_string(k) + "_t" + std::to_string(t) + "_v" +
                                 std::to_string(v));
      }
    }
  }
  prog.objective_linear.assign(prog.variables.size(), 0.0);
  for (int k = 1; k <= K; ++k) {
    for (int t = 1; t < T; ++t) {
      for (int v = 0; v < n; ++v) {
        for (int v2 = 0; v2 < n; ++v2) {
          if (v == v2) continue;
          const double w = inst.weights[static_cast<size_t>(v)][static_cast<size_t>(v2)];
          if (w != 0.0) {
            prog.objective_quadratic.push_back({idx(k, t, v), idx(k, t + 1, v2), w});
          }
        }
      }
    }
  }

  int label = 0;
  for (int v = 1; v < n; ++v) {
    Constraint c;
    for (int k = 1; k <= K; ++k) {
      for (int t = 1; t <= T; ++t) c.terms.push_back({idx(k, t, v), 1.0});
    }
    c.sense = Sense::Eq;
    c.rhs = 1.0;
    c.label = "C" + std::to_string(label++);
    prog.constraints.push_back(std::move(c));
  }
  for (int k = 1; k <= K; ++k) {
    for (int t = 1; t <= T; ++t) {
      Constraint c;
      for (int v = 0; v < n; ++v) c.terms.push_back({idx(k, t, v), 1.0});
      c.sense = Sense::Eq;
      c.rhs = 1.0;
      c.label = "C" + std::to_string(label++);
      prog.constraints.push_back(std::move(c));
    }
  }
  return prog;
}

// --- evaluation helpers ---

inline double constraint_lhs(const Constraint& c, const std::vector<int>& bits) {
  double s = 0.0;
  for (const auto& t : c.terms) s += t.coeff * bits[static_cast<size_t>(t.var)];
  return s;
}

inline bool constraint_satisfied(const Constraint& c, const std::vector<int>& bits) {
  const double lhs = constraint_lhs(c, bits);
  switch (c.sense) {
    case Sense::Eq: return lhs == c.rhs;
    case Sense::Le: return lhs <= c.rhs;
    case Sense::Ge: return lhs >= c.rhs;
  }
  return false;
}

inline bool program_feasible(const ConstrainedProgram& prog, const std::vector<int>& bits) {
  for (const auto& c : prog.constraints) {
    if (!constraint_satisfied(c, bits)) return false;
  }
  return true;
}

inline double objective_value(const ConstrainedProgram& prog, const std::vector<int>& bits) {
  double v = prog.objective_constant;
  for (size_t i = 0; i < prog.objective_linear.size(); ++i) {
    v += prog.objective_linear[i] * bits[i];
  }
  for (const auto& q : prog.objective_quadratic) {
    v += q.coeff * bits[static_cast<size_t>(q.a)] * bits[static_cast<size_t>(q.b)];
  }
  return v;
}

inline nlohmann::json program_to_json(const ConstrainedProgram& prog) {
  nlohmann::json j;
  j["variables"] = prog.variables;
  j["objective"]["constant"] = prog.objective_constant;
  nlohmann::json lin = nlohmann::json::object();
  for (size_t i = 0; i < prog.objective_linear.size(); ++i) {
    if (prog.objective_linear[i] != 0.0) lin[prog.variables[i]] = prog.objective_linear[i];
  }
  j["objective"]["linear"] = lin;
  nlohmann::json quad = nlohmann::json::array();
  for (const auto& q : prog.objective_quadratic) {
    quad.push_back({{"a", prog.variables[static_cast<size_t>(q.a)]},
                    {"b", prog.variables[static_cast<size_t>(q.b)]},
                    {"coeff", q.coeff}});
  }
  j["objective"]["quadratic"] = quad;
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : prog.constraints) {
    nlohmann::json jc;
    jc["label"] = c.label;
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& t : c.terms) terms[prog.variables[static_cast<size_t>(t.var)]] = t.coeff;
    jc["terms"] = terms;
    jc["sense"] = sense_name(c.sense);
    jc["rhs"] = c.rhs;
    if (c.pairwise) jc["pairwise"] = true;
    cons.push_back(std::move(jc));
  }
  j["constraints"] = cons;
  return j;
}

}  // namespace qvrp
