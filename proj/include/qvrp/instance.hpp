#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qvrp/util.hpp"

namespace qvrp {

// A routing instance: node 0 is the depot, nodes 1..n-1 are customers,
// k vehicles start and end at the depot. Weights are directed edge costs;
// instances generated from coordinates use squared Euclidean distances.
struct VrpInstance {
  int n = 0;
  int k = 0;
  std::optional<std::vector<std::array<double, 2>>> coords;
  std::vector<std::vector<double>> weights;
};

namespace detail {

inline void validate_node_vehicle(int n, int k) {
  if (n < 2) throw std::invalid_argument("node count must be >= 2, got " + std::to_string(n));
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("vehicle count must satisfy 1 <= k <= n-1, got k=" +
                                std::to_string(k) + " for n=" + std::to_string(n));
  }
}

inline void validate_weights(const std::vector<std::vector<double>>& w) {
  const size_t n = w.size();
  for (size_t i = 0; i < n; ++i) {
    if (w[i].size() != n) {
      throw std::invalid_argument("weight matrix must be square: row " + std::to_string(i) +
                                  " has " + std::to_string(w[i].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    for (size_t j = 0; j < n; ++j) {
      const double v = w[i][j];
      if (!std::isfinite(v)) {
        throw std::invalid_argument("weight[" + std::to_string(i) + "][" + std::to_string(j) +
                                    "] is not finite");
      }
      if (v < 0.0) {
        throw std::invalid_argument("weight[" + std::to_string(i) + "][" + std::to_string(j) +
                                    "] is negative");
      }
      if (i == j && v != 0.0) {
        throw std::invalid_argument("weight[" + std::to_string(i) + "][" + std::to_string(j) +
                                    "] must be zero on the diagonal");
      }
    }
  }
}

inline double squared_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

}  // namespace detail

// Samples coordinates uniformly on [0,10)^2 and fills the weight matrix with
// squared Euclidean distances. Deterministic for a given seed.
inline VrpInstance generate_random(int n, int k, uint64_t seed) {
  detail::validate_node_vehicle(n, k);
  Rng rng(derive_seed(seed, 1));
  std::vector<std::array<double, 2>> coords(static_cast<size_t>(n));
  for (auto& c : coords) {
    c[0] = rng.uniform(0.0, 10.0);
    c[1] = rng.uniform(0.0, 10.0);
  }
  std::vector<std::vector<double>> w(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) {
        w[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            detail::squared_distance(coords[static_cast<size_t>(i)],
                                     coords[static_cast<size_t>(j)]);
      }
    }
  }
  VrpInstance inst;
  inst.n = n;
  inst.k = k;
  inst.coords = std::move(coords);
  inst.weights = std::move(w);
  return inst;
}

// Builds an instance from an explicit weight matrix. Asymmetric matrices are
// accepted; coordinates are absent.
inline VrpInstance from_weights(std::vector<std::vector<double>> weights, int k) {
  detail::validate_weights(weights);
  const int n = static_cast<int>(weights.size());
  detail::validate_node_vehicle(n, k);
  VrpInstance inst;
  inst.n = n;
  inst.k = k;
  inst.weights = std::move(weights);
  return inst;
}

// Sum of |w[i][j]| over all off-diagonal entries. Basis for the penalty rule.
inline double weight_sum(const VrpInstance& inst) {
  double s = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (i != j) s += std::abs(inst.weights[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
  }
  return s;
}

inline nlohmann::json instance_to_json(const VrpInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["k"] = inst.k;
  if (inst.coords) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : *inst.coords) arr.push_back({c[0], c[1]});
    j["coords"] = arr;
  }
  j["weights"] = inst.weights;
  return j;
}

inline VrpInstance instance_from_json(const nlohmann::json& j, const std::string& context) {
  for (const char* field : {"n", "k", "weights"}) {
    if (!j.contains(field)) {
      throw ParseError(context + ": missing field '" + field + "'");
    }
  }
  VrpInstance inst;
  try {
    inst.n = j.at("n").get<int>();
    inst.k = j.at("k").get<int>();
    inst.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    if (j.contains("coords")) {
      inst.coords = j.at("coords").get<std::vector<std::array<double, 2>>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(context + ": " + e.what());
  }
  if (static_cast<int>(inst.weights.size()) != inst.n) {
    throw ParseError(context + ": weights has " + std::to_string(inst.weights.size()) +
                     " rows but n=" + std::to_string(inst.n));
  }
  for (size_t i = 0; i < inst.weights.size(); ++i) {
    if (static_cast<int>(inst.weights[i].size()) != inst.n) {
      throw ParseError(context + ": weights row " + std::to_string(i) + " has " +
                       std::to_string(inst.weights[i].size()) + " entries but n=" +
                       std::to_string(inst.n));
    }
  }
  if (inst.coords && static_cast<int>(inst.coords->size()) != inst.n) {
    throw ParseError(context + ": coords has " + std::to_string(inst.coords->size()) +
                     " points but n=" + std::to_string(inst.n));
  }
  try {
    detail::validate_weights(inst.weights);
    detail::validate_node_vehicle(inst.n, inst.k);
  } catch (const std::invalid_argument& e) {
    throw ParseError(context + ": " + e.what());
  }
  return inst;
}

inline VrpInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return instance_from_json(j, path);
}

inline void write_instance(const VrpInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << instance_to_json(inst).dump(2) << "\n";
}

}  // namespace qvrp
