#include "levyaf/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levyaf/error.hpp"

namespace levyaf {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

double number(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  if (!j.at(key).is_number()) bad(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
std::vector<T> list_or(const json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number()) return {v.get<T>()};
  if (!v.is_array()) bad(std::string("field '") + key + "' must be a number or an array");
  try {
    return v.get<std::vector<T>>();
  } catch (const json::exception&) {
    bad(std::string("field '") + key + "' must hold numbers");
  }
}

std::size_t count_or(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
    return v.get<std::size_t>();
  }
  // Allow 1e5-style literals when they are whole numbers.
  if (v.is_number_float() && v.get<double>() >= 0 && v.get<double>() == std::floor(v.get<double>())) {
    return static_cast<std::size_t>(v.get<double>());
  }
  bad(std::string("field '") + key + "' must be a nonnegative integer");
}

CharacteristicExponent model_from(const json& m) {
  if (!m.is_object()) bad("'model' must be an object");
  const auto kind = get_or<std::string>(m, "kind", "");
  if (kind == "brownian") return CharacteristicExponent::brownian(get_or(m, "c", 1.0));
  if (kind == "stable") return CharacteristicExponent::symmetric_stable(number(m, "alpha"));
  if (kind == "relativistic") {
    return CharacteristicExponent::relativistic(number(m, "m"), number(m, "alpha"));
  }
  if (kind == "subordinated") {
    const auto family = get_or<std::string>(m, "family", "");
    if (family == "tempered_stable") {
      return CharacteristicExponent::subordinated(
          tempered_stable_measure(number(m, "m"), number(m, "alpha")));
    }
    if (family == "gamma") {
      return CharacteristicExponent::subordinated(gamma_measure(number(m, "a"), number(m, "b")));
    }
    bad("unknown subordinator family '" + family + "' (tempered_stable | gamma)");
  }
  bad("unknown model kind '" + kind + "' (brownian | stable | relativistic | subordinated)");
}

ScalingSequence sequence_from(const json& s) {
  if (s.is_number()) return ScalingSequence::polynomial(s.get<double>());
  if (!s.is_object()) bad("'sequence' must be an object or a number");
  const auto rule = get_or<std::string>(s, "rule", "polynomial");
  if (rule == "polynomial") return ScalingSequence::polynomial(get_or(s, "power", 1.0));
  if (rule == "custom") return ScalingSequence::custom(list_or<double>(s, "table", {}));
  bad("unknown sequence rule '" + rule + "' (polynomial | custom)");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  bad("unknown format '" + s + "' (csv | json)");
}

FunctionalKind parse_functional(const std::string& s) {
  if (s == "i2" || s == "I2") return FunctionalKind::Band;
  if (s == "in" || s == "I_n") return FunctionalKind::Additive;
  bad("unknown functional '" + s + "' (i2 | in)");
}

const CharacteristicExponent& ExperimentConfig::require_model() const {
  if (!model) bad("config has no 'model'");
  return *model;
}

void ExperimentConfig::validate() const {
  if (!(t > 0.0)) bad("t must be positive");
  if (!(h > 0.0)) bad("h must be positive");
  if (deltas.empty()) bad("delta list is empty");
  for (double d : deltas) {
    if (!(d > 0.0)) bad("every delta must be positive");
  }
  if (n_list.empty()) bad("n list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) bad("every n must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) bad("n list must be strictly increasing");
  }
  if (k_max < 1) bad("k_max must be >= 1");
  kernel_by_label(kernel);  // Config error for unknown labels
  if (n_paths < 2) bad("n_paths must be >= 2");
  if (max_steps < 1) bad("max_steps must be positive");
  if (threads < 0) bad("threads must be >= 0");
  for (double v : density.t) {
    if (!(v > 0.0)) bad("density times must be positive");
  }
  if (!(simulate.horizon > 0.0)) bad("simulate horizon must be positive");
  if (simulate.times.empty() || simulate.times.size() > 4) bad("simulate times: 1 to 4 entries");
  for (std::size_t i = 0; i < simulate.times.size(); ++i) {
    if (!(simulate.times[i] > 0.0) || (i > 0 && simulate.times[i] <= simulate.times[i - 1])) {
      bad("simulate times must be positive and increasing");
    }
  }
  if (simulate.probes.empty()) bad("simulate probes are empty");
  if (simulate.charfn_paths < 2) bad("simulate charfn_paths must be >= 2");
  if (!(decompose.residual_c >= 0.0)) bad("decompose residual_c must be >= 0");
  if (verify.samples < 2) bad("verify samples must be >= 2");
}

CharacteristicExponent parse_model(const std::string& json_text) {
  return model_from(parse_json(json_text));
}

ExperimentConfig parse_config(const std::string& json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) bad("config root must be an object");
  ExperimentConfig c;
  if (j.contains("model")) c.model = model_from(j.at("model"));
  c.kernel = get_or<std::string>(j, "kernel", c.kernel);
  if (j.contains("sequence")) c.seq = sequence_from(j.at("sequence"));
  c.t = get_or(j, "t", c.t);
  c.deltas = list_or<double>(j, "delta", c.deltas);
  c.n_list = list_or<int>(j, "n", c.n_list);
  c.k_max = get_or(j, "k_max", c.k_max);
  c.n_paths = count_or(j, "n_paths", c.n_paths);
  c.h = get_or(j, "h", c.h);
  c.max_steps = count_or(j, "max_steps", c.max_steps);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.threads = get_or(j, "threads", c.threads);
  if (j.contains("functional")) c.functional = parse_functional(get_or<std::string>(j, "functional", ""));
  c.out = get_or<std::string>(j, "out", c.out);
  if (j.contains("format")) c.format = parse_format(get_or<std::string>(j, "format", ""));

  if (j.contains("density")) {
    const json& d = j.at("density");
    c.density.t = list_or<double>(d, "t", c.density.t);
    c.density.x = list_or<double>(d, "x", c.density.x);
  }
  if (j.contains("simulate")) {
    const json& s = j.at("simulate");
    c.simulate.horizon = get_or(s, "horizon", c.simulate.horizon);
    c.simulate.paths = count_or(s, "paths", c.simulate.paths);
    c.simulate.times = list_or<double>(s, "times", c.simulate.times);
    c.simulate.probes = list_or<double>(s, "probes", c.simulate.probes);
    c.simulate.charfn_paths = count_or(s, "charfn_paths", c.simulate.charfn_paths);
    c.simulate.dump_paths = get_or(s, "dump_paths", c.simulate.dump_paths);
  }
  if (j.contains("decompose")) {
    const json& d = j.at("decompose");
    c.decompose.summary = get_or(d, "summary", c.decompose.summary);
    c.decompose.residual_c = get_or(d, "residual_c", c.decompose.residual_c);
  }
  if (j.contains("verify")) {
    const json& v = j.at("verify");
    c.verify.samples = count_or(v, "samples", c.verify.samples);
    c.verify.inject_failure = get_or<std::string>(v, "inject_failure", "");
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace levyaf
