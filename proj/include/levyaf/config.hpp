#pragma once

// Experiment configuration: one JSON document, overridable from the command
// line. Every numeric field is validated on load; failures are Config errors.
//
//   {
//     "model":    {"kind": "brownian", "c": 1}
//               | {"kind": "stable", "alpha": 1.5}
//               | {"kind": "relativistic", "m": 1, "alpha": 1.5}
//               | {"kind": "subordinated", "family": "tempered_stable", "m": 1, "alpha": 1.5}
//               | {"kind": "subordinated", "family": "gamma", "a": 1, "b": 1},
//     "kernel":   "gaussian" | "jvp" | "hermite2" | "gaussian*gaussian",
//     "sequence": {"rule": "polynomial", "power": 1} | {"rule": "custom", "table": [...]},
//     "t": 1, "delta": [0.25, 0.5, 1], "n": [4, 8, 16], "k_max": 2,
//     "n_paths": 1000, "h": 0.001, "max_steps": 268435456, "seed": 1, "threads": 0,
//     "functional": "i2" | "in", "out": "", "format": "csv" | "json",
//     "density":  {"t": [1], "x": [0]},
//     "simulate": {"horizon": 1, "paths": 4, "times": [1], "probes": [0.25, 0.5, 1, 2, 4],
//                  "charfn_paths": 100000, "dump_paths": false},
//     "decompose": {"summary": false, "residual_c": 1e-4},
//     "verify":   {"samples": 200000, "inject_failure": ""}
//   }

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levyaf/exponents.hpp"
#include "levyaf/functionals.hpp"

namespace levyaf {

enum class OutputFormat { Csv, Json };
enum class FunctionalKind { Band, Additive };

struct DensityOptions {
  std::vector<double> t{1.0};
  std::vector<double> x{0.0};
};

struct SimulateOptions {
  double horizon = 1.0;
  std::size_t paths = 4;
  std::vector<double> times{1.0};
  std::vector<double> probes{0.25, 0.5, 1.0, 2.0, 4.0};
  std::size_t charfn_paths = 100000;
  bool dump_paths = false;
};

struct DecomposeOptions {
  bool summary = false;
  double residual_c = 1e-4;  // residual tolerance is 1e-6 + residual_c * h
};

struct VerifyOptions {
  std::size_t samples = 200000;
  std::string inject_failure;
};

struct ExperimentConfig {
  std::optional<CharacteristicExponent> model;
  std::string kernel = "gaussian";
  ScalingSequence seq = ScalingSequence::polynomial(1.0);
  double t = 1.0;
  std::vector<double> deltas{0.25, 0.5, 1.0};
  std::vector<int> n_list{4, 8, 16};
  int k_max = 2;
  std::size_t n_paths = 1000;
  double h = 1e-3;
  std::size_t max_steps = std::size_t{1} << 28;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: OpenMP default
  FunctionalKind functional = FunctionalKind::Band;
  std::string out;  // empty: stdout
  std::optional<OutputFormat> format;  // unset: csv, except verify (json)
  DensityOptions density;
  SimulateOptions simulate;
  DecomposeOptions decompose;
  VerifyOptions verify;

  /// The model, or a Config error when none was given.
  const CharacteristicExponent& require_model() const;
  /// Re-checks the cross-field invariants (positivity, increasing n list).
  void validate() const;
};

CharacteristicExponent parse_model(const std::string& json_text);
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

OutputFormat parse_format(const std::string& s);
FunctionalKind parse_functional(const std::string& s);

}  // namespace levyaf
