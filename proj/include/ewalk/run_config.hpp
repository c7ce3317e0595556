#pragma once

// Flat key=value run configuration for the command-line tool. A config file
// holds one key per line; '#' starts a comment line. Command-line flags
// override file values. Every run echoes the fully resolved config.

#include "ewalk/errors.hpp"

#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ewalk {

struct RunConfig {
  std::string command;
  std::string coin = "hadamard";
  std::string field = "1/5";
  std::int64_t steps = 100;
  std::string initial = "symmetric";
  unsigned digits = 50;
  std::int64_t truncation = 100;
  std::string out = "-";
  std::uint64_t seed = 1;
  std::int64_t depth = 20;
  std::int64_t levels = 16;
  std::int64_t grid = 1024;
  std::string omega = "1/2,1/2";
  std::string log_base = "log10";
  std::string epsilon = "0.5";
  std::string intervals = "0:0";
  std::int64_t max_steps = 5000;
  std::int64_t max_support = 65536;
  std::int64_t max_sites = std::int64_t{1} << 24;
  std::int64_t num_fields = 20;
  std::int64_t support_radius = 0;  // 0: derived from the initial state
  std::string rings;                // ring sizes for localize
  std::string snapshots;            // times for distribution snapshots
  bool verify = false;
  bool self_test = false;
  bool record_time = false;

  static const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"simulate", "cfrac",           "revivals", "dispersion",
                                            "localize", "construct-field", "survey"};
    return c;
  }

  static RunConfig defaults(const std::string& command) {
    bool known = false;
    for (const auto& c : commands()) known = known || c == command;
    if (!known) throw input_error("config", "unknown command '" + command + "'");
    RunConfig c;
    c.command = command;
    if (command == "cfrac" || command == "localize") c.field = "golden";
    if (command == "localize") c.digits = 300;
    if (command == "survey") {
      c.digits = 200;
      c.truncation = 80;
    }
    return c;
  }

  std::vector<std::pair<std::string, std::string>> to_kv() const {
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    return {{"command", command},
            {"coin", coin},
            {"field", field},
            {"steps", std::to_string(steps)},
            {"initial", initial},
            {"digits", std::to_string(digits)},
            {"truncation", std::to_string(truncation)},
            {"out", out},
            {"seed", std::to_string(seed)},
            {"depth", std::to_string(depth)},
            {"levels", std::to_string(levels)},
            {"grid", std::to_string(grid)},
            {"omega", omega},
            {"log_base", log_base},
            {"epsilon", epsilon},
            {"intervals", intervals},
            {"max_steps", std::to_string(max_steps)},
            {"max_support", std::to_string(max_support)},
            {"max_sites", std::to_string(max_sites)},
            {"num_fields", std::to_string(num_fields)},
            {"support_radius", std::to_string(support_radius)},
            {"rings", rings},
            {"snapshots", snapshots},
            {"verify", b(verify)},
            {"self_test", b(self_test)},
            {"record_time", b(record_time)}};
  }

  std::string to_file() const {
    std::string s;
    for (const auto& [k, v] : to_kv()) s += k + "=" + v + "\n";
    return s;
  }

  // Values in `kv` replace the command defaults; unknown keys are rejected.
  static RunConfig from_kv(const std::string& command, const std::map<std::string, std::string>& kv) {
    RunConfig c = defaults(command);
    for (const auto& [k, v] : kv) c.set(k, v);
    return c;
  }

  static std::map<std::string, std::string> parse_file(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw input_error("config", "line " + std::to_string(line_no) + ": expected key=value");
      }
      kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
  }

  void set(const std::string& key, const std::string& value) {
    if (key == "command") {
      if (value != command) throw input_error("config", "config is for '" + value + "', not '" + command + "'");
    } else if (key == "coin") {
      coin = value;
    } else if (key == "field") {
      field = value;
    } else if (key == "steps") {
      steps = to_int(key, value);
    } else if (key == "initial") {
      initial = value;
    } else if (key == "digits") {
      digits = static_cast<unsigned>(to_int(key, value));
    } else if (key == "truncation") {
      truncation = to_int(key, value);
    } else if (key == "out") {
      out = value;
    } else if (key == "seed") {
      seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "depth") {
      depth = to_int(key, value);
    } else if (key == "levels") {
      levels = to_int(key, value);
    } else if (key == "grid") {
      grid = to_int(key, value);
    } else if (key == "omega") {
      omega = value;
    } else if (key == "log_base") {
      log_base = value;
    } else if (key == "epsilon") {
      epsilon = value;
    } else if (key == "intervals") {
      intervals = value;
    } else if (key == "max_steps") {
      max_steps = to_int(key, value);
    } else if (key == "max_support") {
      max_support = to_int(key, value);
    } else if (key == "max_sites") {
      max_sites = to_int(key, value);
    } else if (key == "num_fields") {
      num_fields = to_int(key, value);
    } else if (key == "support_radius") {
      support_radius = to_int(key, value);
    } else if (key == "rings") {
      rings = value;
    } else if (key == "snapshots") {
      snapshots = value;
    } else if (key == "verify") {
      verify = to_bool(key, value);
    } else if (key == "self_test") {
      self_test = to_bool(key, value);
    } else if (key == "record_time") {
      record_time = to_bool(key, value);
    } else {
      throw input_error("config", "unknown config key '" + key + "'");
    }
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

 private:
  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
  }

  static std::int64_t to_int(const std::string& key, const std::string& v) {
    std::int64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size() || out < 0) {
      throw input_error("config", key + " must be a non-negative integer, got '" + v + "'");
    }
    return out;
  }

  static bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw input_error("config", key + " must be true or false, got '" + v + "'");
  }
};

}  // namespace ewalk
