#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qvrp/qubo.hpp"

namespace qvrp {

// Diagonal cost Hamiltonian: offset + sum h_i Z_i + sum J_{ij} Z_i Z_j over
// spins z = 1 - 2x (qubit |1> maps to x = 1). `scale` records the factor
// divided out by normalize_coefficients (1 when unnormalized), so energies in
// original cost units are scale * energy.
struct IsingHamiltonian {
  int n = 0;
  std::map<int, double> h;
  std::map<std::pair<int, int>, double> j;
  double offset = 0.0;
  double scale = 1.0;
};

// Substitution x_i = (1 - z_i) / 2 applied term by term.
inline IsingHamiltonian to_ising(const Qubo& q) {
  IsingHamiltonian H;
  H.n = qubit_count(q);
  H.offset = q.constant;
  std::vector<double> h(static_cast<size_t>(H.n), 0.0);
  for (int i = 0; i < H.n; ++i) {
    const double l = q.linear[static_cast<size_t>(i)];
    h[static_cast<size_t>(i)] -= l / 2.0;
    H.offset += l / 2.0;
  }
  for (const auto& [key, coeff] : q.quadratic) {
    H.j[key] += coeff / 4.0;
    h[static_cast<size_t>(key.first)] -= coeff / 4.0;
    h[static_cast<size_t>(key.second)] -= coeff / 4.0;
    H.offset += coeff / 4.0;
  }
  for (int i = 0; i < H.n; ++i) {
    if (h[static_cast<size_t>(i)] != 0.0) H.h[i] = h[static_cast<size_t>(i)];
  }
  std::erase_if(H.j, [](const auto& kv) { return kv.second == 0.0; });
  return H;
}

inline double ising_energy(const IsingHamiltonian& H, const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != H.n) {
    throw std::invalid_argument("assignment has " + std::to_string(bits.size()) +
                                " bits, Hamiltonian has " + std::to_string(H.n) + " qubits");
  }
  double e = H.offset;
  for (const auto& [i, hi] : H.h) e += hi * (1 - 2 * bits[static_cast<size_t>(i)]);
  for (const auto& [key, jij] : H.j) {
    e += jij * (1 - 2 * bits[static_cast<size_t>(key.first)]) *
         (1 - 2 * bits[static_cast<size_t>(key.second)]);
  }
  return e;
}

inline double ising_energy(const IsingHamiltonian& H, const std::string& bits) {
  return ising_energy(H, string_to_bits(bits));
}

// Largest |h| or |J| magnitude; 0 for an empty Hamiltonian.
inline double max_coefficient(const IsingHamiltonian& H) {
  double m = 0.0;
  for (const auto& [i, hi] : H.h) m = std::max(m, std::abs(hi));
  for (const auto& [key, jij] : H.j) m = std::max(m, std::abs(jij));
  return m;
}

// Divides h, J and the offset by the largest coefficient magnitude so all
// term magnitudes are bounded by one. Energy ordering is unchanged; the
// factor is recorded in `scale` for reporting in original units.
inline IsingHamiltonian normalize_coefficients(const IsingHamiltonian& H) {
  const double m = max_coefficient(H);
  if (m == 0.0) return H;
  IsingHamiltonian out = H;
  for (auto& [i, hi] : out.h) hi /= m;
  for (auto& [key, jij] : out.j) jij /= m;
  out.offset /= m;
  out.scale = H.scale * m;
  return out;
}

// Pauli-string rendering with qubit i at character i, e.g. "IIZIII".
inline std::vector<std::pair<std::string, double>> pauli_terms(const IsingHamiltonian& H) {
  std::vector<std::pair<std::string, double>> terms;
  for (const auto& [i, hi] : H.h) {
    std::string s(static_cast<size_t>(H.n), 'I');
    s[static_cast<size_t>(i)] = 'Z';
    terms.emplace_back(std::move(s), hi);
  }
  for (const auto& [key, jij] : H.j) {
    std::string s(static_cast<size_t>(H.n), 'I');
    s[static_cast<size_t>(key.first)] = 'Z';
    s[static_cast<size_t>(key.second)] = 'Z';
    terms.emplace_back(std::move(s), jij);
  }
  return terms;
}

inline nlohmann::json ising_to_json(const IsingHamiltonian& H) {
  nlohmann::json j;
  j["n"] = H.n;
  nlohmann::json hz = nlohmann::json::array();
  for (const auto& [i, hi] : H.h) hz.push_back({{"qubit", i}, {"h", hi}});
  j["z"] = hz;
  nlohmann::json zz = nlohmann::json::array();
  for (const auto& [key, jij] : H.j) {
    zz.push_back({{"qubits", {key.first, key.second}}, {"j", jij}});
  }
  j["zz"] = zz;
  j["offset"] = H.offset;
  j["scale"] = H.scale;
  return j;
}

}  // namespace qvrp
