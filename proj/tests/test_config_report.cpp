#include <doctest.h>

#include <cmath>
#include <limits>

#include "levyaf/config.hpp"
#include "levyaf/error.hpp"
#include "levyaf/report.hpp"

using namespace levyaf;

namespace {
ErrorKind kind_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("config was accepted: " << text);
  return ErrorKind::Precondition;
}
}  // namespace

TEST_CASE("model parsing") {
  CHECK(parse_model(R"({"kind": "brownian", "c": 2})")(1.0) == doctest::Approx(2.0));
  CHECK(parse_model(R"({"kind": "stable", "alpha": 1.5})")(4.0) == doctest::Approx(8.0));
  const auto rel = parse_model(R"({"kind": "relativistic", "m": 1, "alpha": 1.5})");
  CHECK(*rel.closed_form_ell() == doctest::Approx(0.75));
  const auto sub = parse_model(
      R"({"kind": "subordinated", "family": "tempered_stable", "m": 1, "alpha": 1.5})");
  CHECK(sub(0.7) == doctest::Approx(rel(0.7)).epsilon(1e-12));
  CHECK_NOTHROW(parse_model(R"({"kind": "subordinated", "family": "gamma", "a": 1, "b": 1})"));
  CHECK_THROWS_AS(parse_model(R"({"kind": "cauchy"})"), Error);
  CHECK_THROWS_AS(parse_model(R"({"kind": "stable", "alpha": 2.5})"), Error);
  CHECK_THROWS_AS(parse_model(R"({"kind": "brownian", "c": -1})"), Error);
}

TEST_CASE("full configuration") {
  const auto cfg = parse_config(R"({
    "model": {"kind": "brownian", "c": 1},
    "kernel": "jvp",
    "sequence": {"rule": "polynomial", "power": 0.5},
    "t": 2, "delta": [0.5], "n": [2, 4], "k_max": 4, "n_paths": 10, "h": 0.01,
    "seed": 99, "functional": "in", "format": "json",
    "simulate": {"horizon": 2, "paths": 3, "dump_paths": true},
    "decompose": {"summary": true, "residual_c": 0.5}
  })");
  CHECK(cfg.kernel == "jvp");
  CHECK(cfg.seq(4) == doctest::Approx(2.0));
  CHECK(cfg.n_list == std::vector<int>{2, 4});
  CHECK(cfg.seed == 99);
  CHECK(cfg.functional == FunctionalKind::Additive);
  CHECK(cfg.format == OutputFormat::Json);
  CHECK(cfg.simulate.dump_paths);
  CHECK(cfg.simulate.paths == 3);
  CHECK(cfg.decompose.residual_c == 0.5);
  CHECK(cfg.model.has_value());

  const auto bare = parse_config("{}");
  CHECK_FALSE(bare.model.has_value());
  CHECK_FALSE(bare.format.has_value());
  CHECK_THROWS_AS(bare.require_model(), Error);
}

TEST_CASE("invalid configurations are Config errors") {
  CHECK(kind_of("not json") == ErrorKind::Config);
  CHECK(kind_of(R"({"h": -1})") == ErrorKind::Config);
  CHECK(kind_of(R"({"t": 0})") == ErrorKind::Config);
  CHECK(kind_of(R"({"n": [4, 2]})") == ErrorKind::Config);
  CHECK(kind_of(R"({"delta": []})") == ErrorKind::Config);
  CHECK(kind_of(R"({"k_max": 0})") == ErrorKind::Config);
  CHECK(kind_of(R"({"kernel": "boxcar"})") == ErrorKind::Config);
  CHECK(kind_of(R"({"format": "xml"})") == ErrorKind::Config);
  CHECK(kind_of(R"({"t": "one"})") == ErrorKind::Config);
  CHECK(kind_of(R"({"sequence": {"rule": "custom", "table": [2, 1]}})") == ErrorKind::Config);
  CHECK_THROWS_AS(load_config("/nonexistent/levyaf.json"), Error);
  CHECK(parse_format("csv") == OutputFormat::Csv);
  CHECK(parse_functional("i2") == FunctionalKind::Band);
}

TEST_CASE("tables") {
  Table t({"name", "x", "n", "ok"});
  t.add({std::string("a,b"), 0.1, std::int64_t{-3}, true});
  t.add({std::string("q\"q"), std::numeric_limits<double>::quiet_NaN(), std::uint64_t{7}, false});
  CHECK_THROWS(t.add({1.0}));

  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::stod(format_double(M_PI)) == M_PI);

  CHECK(to_csv(t) ==
        "name,x,n,ok\n"
        "\"a,b\",0.10000000000000001,-3,true\n"
        "\"q\"\"q\",nan,7,false\n");
  const auto js = to_json(t);
  CHECK(js.find("\"name\": \"a,b\"") != std::string::npos);
  CHECK(js.find("\"x\": null") != std::string::npos);
  CHECK(js.find("\"ok\": false") != std::string::npos);
}
