#include "emoc/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emoc/error.hpp"

namespace emoc {
namespace {

void apply(EmocConfig& cfg, const std::string& key, const nlohmann::json& v) {
  if (key == "o_alphabet") {
    cfg.o_alphabet.clear();
    for (const auto& name : v) {
      auto op = opcode_from_name(name.get<std::string>());
      if (!op) throw ConfigError("unknown opcode '" + name.get<std::string>() + "' in o_alphabet");
      cfg.o_alphabet.push_back(*op);
    }
  } else if (key == "o_mode") {
    cfg.o_mode = o_mode_from_name(v.get<std::string>());
  } else if (key == "w_e") {
    cfg.weights.e = v.get<double>();
  } else if (key == "w_m") {
    cfg.weights.m = v.get<double>();
  } else if (key == "w_o") {
    cfg.weights.o = v.get<double>();
  } else if (key == "w_c") {
    cfg.weights.c = v.get<double>();
  } else if (key == "passes") {
    std::string list;
    if (v.is_string()) {
      list = v.get<std::string>();
    } else {
      for (const auto& p : v) list += p.get<std::string>() + ",";
    }
    int iters = cfg.passes.max_iterations;
    cfg.passes = PassConfig::from_list(list);
    cfg.passes.max_iterations = iters;
  } else if (key == "max_iterations") {
    cfg.passes.max_iterations = v.get<int>();
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

EmocConfig parse_config(std::string_view text) {
  EmocConfig cfg;
  try {
    std::string body(text);
    auto first = body.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && body[first] == '{') {
      auto j = nlohmann::json::parse(body);
      for (const auto& [key, value] : j.items()) apply(cfg, key, value);
    } else {
      std::istringstream in(body);
      std::string line;
      int lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos && line.find('"') > hash) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
          throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        apply(cfg, trim(line.substr(0, eq)), nlohmann::json::parse(trim(line.substr(eq + 1))));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

EmocConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace emoc
