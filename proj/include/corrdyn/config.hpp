#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "corrdyn/dynamics.hpp"
#include "corrdyn/hamiltonian.hpp"

namespace corrdyn {

enum class Task { Evolve, Spectrum, Resolvent, Decompose, Validate };

std::string_view task_name(Task t);

/// An output column: a Cartesian string (one term, weight 1) or a ladder
/// string expanded into Cartesian terms with complex weights.
struct Observable {
  std::string label;
  bool ladder = false;
  std::vector<std::pair<std::uint64_t, std::complex<double>>> terms;
};

/// Parses one label under the Pauli-string grammar. Throws ParseError.
Observable parse_observable(std::string_view label, int n_sites);

struct InitialState {
  enum class Kind { Product, Named, Correlators, RandomPure } kind = Kind::Product;
  std::vector<Eigen::Vector3d> bloch;                     // Product
  std::string name;                                       // Named: cat | ghz | w
  double phase = 0.0;                                     // Named cat
  std::vector<std::pair<std::uint64_t, double>> values;   // Correlators, by code
  std::uint64_t seed = 0;                                 // RandomPure
};

struct RunConfig {
  SpinHamiltonian hamiltonian{1};
  InitialState initial;
  EvolveOptions time;
  std::vector<Observable> observables;
  std::vector<Task> tasks;
  SpectrumOptions spectrum;
  std::vector<std::complex<double>> resolvent_points;
  /// Deviation allowed by the validate task before it reports pass=false.
  double validate_tolerance = 1e-6;

  int n_sites() const { return hamiltonian.n_sites(); }
};

/// Parses the JSON document text. Throws ParseError for malformed input or
/// violated invariants (couplings with i >= j, dt <= 0, bad labels, ...).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace corrdyn
