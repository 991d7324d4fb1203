#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "emoc/embedding.hpp"
#include "emoc/error.hpp"
#include "emoc/json.hpp"

namespace emoc {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const std::string& s) {
  double x = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ConfigError("bad number '" + s + "' in embedding table");
  return x;
}

}  // namespace

std::string embeddings_to_csv(std::span<const EmocVector> rows) {
  std::ostringstream out;
  out << "id,label,e";
  if (!rows.empty()) {
    for (std::size_t i = 1; i <= rows[0].m.size(); ++i) out << ",m" << i;
    for (std::size_t i = 1; i <= rows[0].o.size(); ++i) out << ",o" << i;
    for (std::size_t i = 1; i <= rows[0].c.size(); ++i) out << ",c" << i;
  }
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.id) << ',' << csv_field(r.label);
    for (double x : r.flatten()) out << ',' << number(x);
    out << '\n';
  }
  return out.str();
}

std::vector<EmocVector> embeddings_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) return {};
  auto header = csv_split(line);
  if (header.size() < 3 || header[0] != "id" || header[1] != "label" || header[2] != "e")
    throw ConfigError("embedding CSV must start with id,label,e");
  std::size_t nm = 0, no = 0, nc = 0;
  for (std::size_t i = 3; i < header.size(); ++i) {
    char k = header[i].empty() ? '?' : header[i][0];
    if (k == 'm') ++nm;
    else if (k == 'o') ++no;
    else if (k == 'c') ++nc;
    else throw ConfigError("unexpected embedding column '" + header[i] + "'");
  }
  std::vector<EmocVector> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = csv_split(line);
    if (f.size() != header.size()) throw ConfigError("embedding row has the wrong number of columns");
    EmocVector v;
    v.id = f[0];
    v.label = f[1];
    v.e = parse_number(f[2]);
    std::size_t k = 3;
    for (std::size_t i = 0; i < nm; ++i) v.m.push_back(parse_number(f[k++]));
    for (std::size_t i = 0; i < no; ++i) v.o.push_back(parse_number(f[k++]));
    for (std::size_t i = 0; i < nc; ++i) v.c.push_back(parse_number(f[k++]));
    rows.push_back(std::move(v));
  }
  return rows;
}

std::string embeddings_to_json(std::span<const EmocVector> rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"id", r.id},
                   {"label", r.label},
                   {"problem", r.problem},
                   {"e", r.e},
                   {"m", r.m},
                   {"o", r.o},
                   {"c", r.c},
                   {"suite_fingerprint", r.suite_fingerprint},
                   {"config_fingerprint", r.config_fingerprint}});
  }
  return arr.dump(2) + "\n";
}

std::vector<EmocVector> embeddings_from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    std::vector<EmocVector> rows;
    for (const auto& r : j) {
      EmocVector v;
      v.id = r.at("id").get<std::string>();
      v.label = r.value("label", "");
      v.problem = r.value("problem", "");
      v.e = r.at("e").get<double>();
      v.m = r.at("m").get<std::vector<double>>();
      v.o = r.at("o").get<std::vector<double>>();
      v.c = r.at("c").get<std::vector<double>>();
      v.suite_fingerprint = r.value("suite_fingerprint", "");
      v.config_fingerprint = r.value("config_fingerprint", "");
      rows.push_back(std::move(v));
    }
    return rows;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid embedding JSON: ") + e.what());
  }
}

std::vector<EmocVector> load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{'))
    return embeddings_from_json(text);
  return embeddings_from_csv(text);
}

}  // namespace emoc
