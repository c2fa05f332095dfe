#pragma once

#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qvrp/formulation.hpp"

namespace qvrp {

// Penalty weights for the constraint-to-QUBO conversion. `penalty` (P) scales
// squared equality/inequality penalties, `pairwise_penalty` (rho) scales the
// direct product penalty for two-variable subset constraints.
struct PenaltyConfig {
  double penalty = 1.0;
  double pairwise_penalty = 0.5;
  double multiplier = 0.0;       // recorded for reporting
  bool normalize_later = false;  // recorded for reporting
};

// Rule of thumb from the source model: P = multiplier * sum of |weights|,
// rho = P/2, with P floored at 1 for all-zero instances.
inline PenaltyConfig default_penalty(const VrpInstance& inst, double multiplier) {
  if (multiplier <= 0.0) throw std::invalid_argument("penalty multiplier must be positive");
  const double s = weight_sum(inst);
  PenaltyConfig cfg;
  cfg.penalty = s > 0.0 ? multiplier * s : 1.0;
  cfg.pairwise_penalty = cfg.penalty / 2.0;
  cfg.multiplier = multiplier;
  return cfg;
}

// Unconstrained quadratic over binary variables: model variables first, then
// slack variables in constraint order. Quadratic keys are unordered pairs
// (first < second); x^2 terms are folded into the linear part.
struct Qubo {
  std::vector<std::string> variables;
  std::vector<double> linear;
  std::map<std::pair<int, int>, double> quadratic;
  double constant = 0.0;
};

// Binary expansion weights covering exactly [0, bound]: powers of two with
// the top weight clipped so the slack cannot overshoot the bound.
inline std::vector<double> slack_weights(long long bound) {
  std::vector<double> w;
  if (bound <= 0) return w;
  const int m = std::bit_width(static_cast<unsigned long long>(bound));
  for (int i = 0; i + 1 < m; ++i) w.push_back(static_cast<double>(1LL << i));
  w.push_back(static_cast<double>(bound - ((1LL << (m - 1)) - 1)));
  return w;
}

namespace detail {

inline void add_quadratic(Qubo& q, int a, int b, double coeff) {
  if (coeff == 0.0) return;
  if (a == b) {
    q.linear[static_cast<size_t>(a)] += coeff;  // x^2 = x
    return;
  }
  if (a > b) std::swap(a, b);
  q.quadratic[{a, b}] += coeff;
}

// Adds P * (rhs - sum coeff*var)^2 expanded over binaries.
inline void add_squared_penalty(Qubo& q, const std::vector<LinTerm>& terms, double rhs,
                                double penalty) {
  q.constant += penalty * rhs * rhs;
  for (const auto& t : terms) {
    q.linear[static_cast<size_t>(t.var)] += penalty * t.coeff * t.coeff - 2.0 * penalty * rhs * t.coeff;
  }
  for (size_t i = 0; i < terms.size(); ++i) {
    for (size_t j = i + 1; j < terms.size(); ++j) {
      add_quadratic(q, terms[i].var, terms[j].var, 2.0 * penalty * terms[i].coeff * terms[j].coeff);
    }
  }
}

}  // namespace detail

// Penalty-method conversion. Equalities become squared penalties; pairwise
// subset constraints become a single product penalty; remaining inequalities
// get binary slack bits spanning exactly [0, rhs] and a squared penalty.
inline Qubo to_qubo(const ConstrainedProgram& prog, const PenaltyConfig& cfg) {
  Qubo q;
  q.variables = prog.variables;
  q.linear = prog.objective_linear;
  q.linear.resize(prog.variables.size(), 0.0);
  q.constant = prog.objective_constant;
  for (const auto& t : prog.objective_quadratic) {
    detail::add_quadratic(q, t.a, t.b, t.coeff);
  }

  for (const auto& c : prog.constraints) {
    if (c.sense == Sense::Eq) {
      detail::add_squared_penalty(q, c.terms, c.rhs, cfg.penalty);
      continue;
    }
    if (c.pairwise) {
      if (c.terms.size() != 2 || c.sense != Sense::Le) {
        throw std::invalid_argument("pairwise flag on a constraint that is not x + y <= 1 (" +
                                    c.label + ")");
      }
      detail::add_quadratic(q, c.terms[0].var, c.terms[1].var, cfg.pairwise_penalty);
      continue;
    }
    const double rhs = c.rhs;
    if (rhs < 0.0 || std::floor(rhs) != rhs) {
      throw std::invalid_argument("inequality rhs must be a nonnegative integer, got " +
                                  std::to_string(rhs) + " (" + c.label + ")");
    }
    long long bound;
    double sign;
    if (c.sense == Sense::Le) {
      bound = static_cast<long long>(rhs);
      sign = 1.0;
    } else {
      // sum >= rhs: surplus slack over [0, max achievable - rhs]
      double reach = 0.0;
      for (const auto& t : c.terms) reach += std::max(t.coeff, 0.0);
      if (reach < rhs) {
        throw std::invalid_argument("constraint " + c.label + " cannot be satisfied");
      }
      bound = static_cast<long long>(reach - rhs);
      sign = -1.0;
    }
    std::vector<LinTerm> all = c.terms;
    int s = 0;
    for (double w : slack_weights(bound)) {
      const int var = static_cast<int>(q.variables.size());
      q.variables.push_back(c.label + "_s" + std::to_string(s++));
      q.linear.push_back(0.0);
      all.push_back({var, sign * w});
    }
    detail::add_squared_penalty(q, all, rhs, cfg.penalty);
  }

  std::erase_if(q.quadratic, [](const auto& kv) { return kv.second == 0.0; });
  return q;
}

inline double qubo_value(const Qubo& q, const std::vector<int>& bits) {
  if (bits.size() != q.variables.size()) {
    throw std::invalid_argument("assignment has " + std::to_string(bits.size()) +
                                " bits, QUBO has " + std::to_string(q.variables.size()) +
                                " variables");
  }
  double v = q.constant;
  for (size_t i = 0; i < bits.size(); ++i) v += q.linear[i] * bits[i];
  for (const auto& [key, coeff] : q.quadratic) {
    v += coeff * bits[static_cast<size_t>(key.first)] * bits[static_cast<size_t>(key.second)];
  }
  return v;
}

inline double qubo_value(const Qubo& q, const std::string& bits) {
  return qubo_value(q, string_to_bits(bits));
}

inline int qubit_count(const Qubo& q) { return static_cast<int>(q.variables.size()); }

inline nlohmann::json qubo_to_json(const Qubo& q) {
  nlohmann::json j;
  j["variables"] = q.variables;
  nlohmann::json lin = nlohmann::json::object();
  for (size_t i = 0; i < q.linear.size(); ++i) {
    if (q.linear[i] != 0.0) lin[q.variables[i]] = q.linear[i];
  }
  j["linear"] = lin;
  nlohmann::json quad = nlohmann::json::array();
  for (const auto& [key, coeff] : q.quadratic) {
    quad.push_back({{"a", q.variables[static_cast<size_t>(key.first)]},
                    {"b", q.variables[static_cast<size_t>(key.second)]},
                    {"coeff", coeff}});
  }
  j["quadratic"] = quad;
  j["constant"] = q.constant;
  return j;
}

}  // namespace qvrp
