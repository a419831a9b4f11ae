#include <doctest.h>

#include <algorithm>
#include <string>

#include "levyaf/commands.hpp"
#include "levyaf/config.hpp"
#include "levyaf/error.hpp"

using namespace levyaf;

namespace {
std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }
std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}
ExperimentConfig small(const std::string& model) {
  auto cfg = parse_config(R"({"model": )" + model +
                          R"(, "n": [2, 3], "delta": [0.5], "n_paths": 16, "h": 0.05, "seed": 4})");
  return cfg;
}
}  // namespace

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorKind::Config) == kExitConfig);
  CHECK(exit_code_for(ErrorKind::Precondition) == kExitConfig);
  CHECK(exit_code_for(ErrorKind::UnsupportedModel) == kExitConfig);
  CHECK(exit_code_for(ErrorKind::QuadratureFailure) == kExitNumeric);
  CHECK(exit_code_for(ErrorKind::TruncationFailure) == kExitNumeric);
  CHECK(exit_code_for(ErrorKind::McBudget) == kExitNumeric);

  CHECK(run_command("moments", parse_config("{}")).exit_code == kExitConfig);  // no model
  CHECK(run_command("frobnicate", small(R"({"kind": "brownian", "c": 1})")).exit_code == kExitConfig);
  // Stable alpha = 1 has an infinite local-time integral.
  CHECK(run_command("moments", small(R"({"kind": "stable", "alpha": 1})")).exit_code == kExitConfig);
  CHECK(run_command("simulate",
                    small(R"({"kind": "subordinated", "family": "gamma", "a": 1, "b": 1})"))
            .exit_code == kExitConfig);
  auto tiny = parse_config(
      R"({"model": {"kind": "stable", "alpha": 0.7}, "density": {"t": [1e-9], "x": [0.5]}})");
  const auto r = run_command("density", tiny);
  CHECK(r.exit_code == kExitNumeric);
  CHECK(r.text.find("truncation") != std::string::npos);
}

TEST_CASE("classify") {
  auto cfg = small(R"({"kind": "brownian", "c": 1})");
  const auto r = run_command("classify", cfg);
  CHECK(r.exit_code == kExitPass);
  CHECK(first_line(r.text) ==
        "model,ell,hartman_wintner,hw_ratio_1e8,local_time_status,local_time_value,"
        "local_time_doublings,eligible,notes");
  CHECK(r.text.find(",true,") != std::string::npos);
}

TEST_CASE("density matches the heat kernel") {
  auto cfg = parse_config(R"({"model": {"kind": "brownian", "c": 1},
                              "density": {"t": [1], "x": [0, 1]}})");
  const auto r = run_command("density", cfg);
  CHECK(r.exit_code == kExitPass);
  CHECK(first_line(r.text) == "t,x,p,R_used,panels");
  CHECK(lines(r.text) == 3);
  CHECK(r.text.find("\n1,0,0.2820947917738") != std::string::npos);  // 1/sqrt(4 pi)
}

TEST_CASE("moments are reproducible and thread-count independent") {
  auto cfg = small(R"({"kind": "relativistic", "m": 1, "alpha": 1.5})");
  cfg.threads = 1;
  const auto a = run_command("moments", cfg);
  cfg.threads = 3;
  const auto b = run_command("moments", cfg);
  CHECK(a.exit_code == kExitPass);
  CHECK(a.text == b.text);
  CHECK(lines(a.text) == 1 + 2 * 2);  // header + n x k
  cfg.seed = 5;
  CHECK(run_command("moments", cfg).text != a.text);

  cfg.functional = FunctionalKind::Additive;
  cfg.format = OutputFormat::Json;
  const auto j = run_command("moments", cfg);
  CHECK(j.text.front() == '[');
  CHECK(j.text.find("\"functional\": \"I_n\"") != std::string::npos);
}

TEST_CASE("simulate") {
  auto cfg = small(R"({"kind": "stable", "alpha": 1.5})");
  cfg.simulate.charfn_paths = 20000;
  const auto r = run_command("simulate", cfg);
  CHECK(r.exit_code == kExitPass);
  CHECK(lines(r.text) == 1 + cfg.simulate.probes.size());

  cfg.simulate.dump_paths = true;
  cfg.simulate.paths = 3;
  cfg.simulate.horizon = 1.0;
  cfg.h = 0.1;
  const auto d = run_command("simulate", cfg);
  CHECK(first_line(d.text) == "path_index,step_index,t,x");
  CHECK(lines(d.text) == 1 + 3 * 11);
}

TEST_CASE("decompose") {
  auto cfg = small(R"({"kind": "brownian", "c": 1})");
  const auto rows = run_command("decompose", cfg);
  CHECK(rows.exit_code == kExitPass);
  CHECK(lines(rows.text) == 1 + 16 * 2);
  cfg.decompose.summary = true;
  cfg.kernel = "hermite2";
  const auto s = run_command("decompose", cfg);
  CHECK(s.exit_code == kExitPass);
  CHECK(s.text.find("suppressed") != std::string::npos);
}

TEST_CASE("verify") {
  auto cfg = parse_config(R"({"verify": {"samples": 20000}})");
  const auto names = verify_check_names();
  CHECK(names.size() >= 20);
  const auto ok = run_command("verify", cfg);
  CHECK(ok.exit_code == kExitPass);
  CHECK(ok.text.find("\"passed\": true") != std::string::npos);

  cfg.verify.inject_failure = names.front();
  const auto bad = run_command("verify", cfg);
  CHECK(bad.exit_code == kExitPropertyFailure);
  CHECK(bad.text.find(names.front()) != std::string::npos);

  cfg.verify.inject_failure = "no_such_check";
  CHECK(run_command("verify", cfg).exit_code == kExitConfig);
}
