#include "minkflow/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "minkflow/errors.hpp"

namespace minkflow {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, int line) {
  std::string t = trim(text);
  const char* first = t.data();
  const char* last = first + t.size();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ConfigError(line, "expected a number, got '" + t + "'");
  return v;
}

int parse_int(const std::string& text, int line) {
  std::string t = trim(text);
  const char* first = t.data();
  const char* last = first + t.size();
  int v = 0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ConfigError(line, "expected an integer, got '" + t + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "cos4" -> ("cos", 4); empty suffix yields order 0
bool split_key_order(const std::string& key, const std::string& prefix,
                     int& order) {
  if (key.rfind(prefix, 0) != 0) return false;
  std::string tail = key.substr(prefix.size());
  if (tail.empty()) return false;
  for (char c : tail)
    if (!std::isdigit((unsigned char)c)) return false;
  order = std::stoi(tail);
  return true;
}

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

}  // namespace

FSpec parse_fspec(const std::string& text, int line) {
  std::string t = trim(text);
  std::string name = t;
  double c = 1.0;
  size_t colon = t.find(':');
  if (colon != std::string::npos) {
    name = trim(t.substr(0, colon));
    c = parse_double(t.substr(colon + 1), line);
  }
  if (name == "constant") {
    if (colon != std::string::npos)
      throw ConfigError(line, "constant profile takes no rate");
    return FSpec::constant();
  }
  try {
    if (name == "linear") return FSpec::linear(c);
    if (name == "exponential") return FSpec::exponential(c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line, e.what());
  }
  throw ConfigError(line, "unknown time profile '" + name +
                              "' (want constant, linear:<c>, exponential:<c>)");
}

RunConfig parse_config(std::istream& in) {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
  std::string line, current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError(lineno, "unterminated section header");
      current = trim(t.substr(1, t.size() - 2));
      static const char* known[] = {"profile", "family", "initial", "solver",
                                    "outputs"};
      if (std::find(std::begin(known), std::end(known), current) ==
          std::end(known))
        throw ConfigError(lineno, "unknown section [" + current + "]");
      sections[current];
      section_lines.emplace(current, lineno);
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, "expected key = value");
    if (current.empty())
      throw ConfigError(lineno, "key outside of any [section]");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError(lineno, "empty key");
    auto [it, inserted] = sections[current].emplace(key, Entry{value, lineno});
    if (!inserted)
      throw ConfigError(lineno, "duplicate key '" + key + "'");
  }

  RunConfig cfg;

  // [profile]
  {
    double c0 = 1.0;
    std::map<int, FourierSeries::Term> terms;
    if (auto sec = sections.find("profile"); sec != sections.end()) {
      for (const auto& [key, entry] : sec->second) {
        int order = 0;
        if (key == "c0") {
          c0 = parse_double(entry.value, entry.line);
        } else if (split_key_order(key, "cos", order)) {
          if (order % 2 != 0 || order == 0)
            throw ConfigError(entry.line,
                              "profile harmonics must be even (pi-periodic "
                              "gauge), got cos" +
                                  std::to_string(order));
          terms[order].order = order;
          terms[order].cos_coeff = parse_double(entry.value, entry.line);
        } else if (split_key_order(key, "sin", order)) {
          if (order % 2 != 0 || order == 0)
            throw ConfigError(entry.line,
                              "profile harmonics must be even (pi-periodic "
                              "gauge), got sin" +
                                  std::to_string(order));
          terms[order].order = order;
          terms[order].sin_coeff = parse_double(entry.value, entry.line);
        } else {
          throw ConfigError(entry.line, "unknown profile key '" + key + "'");
        }
      }
    }
    std::vector<FourierSeries::Term> list;
    for (auto& [order, term] : terms) list.push_back(term);
    try {
      cfg.profile = GaugeProfile(c0, std::move(list));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(section_lines.count("profile")
                            ? section_lines["profile"]
                            : 0,
                        e.what());
    }
  }

  // [family]
  {
    FSpec fspec = FSpec::constant();
    if (auto sec = sections.find("family"); sec != sections.end()) {
      std::string fname = "constant";
      double c = 1.0;
      int fline = 0;
      for (const auto& [key, entry] : sec->second) {
        if (key == "f") {
          fname = entry.value;
          fline = entry.line;
        } else if (key == "c") {
          c = parse_double(entry.value, entry.line);
        } else if (key == "fs") {
          for (const std::string& item : split_list(entry.value))
            cfg.fspecs.push_back(parse_fspec(item, entry.line));
        } else {
          throw ConfigError(entry.line, "unknown family key '" + key + "'");
        }
      }
      std::ostringstream spec_text;
      spec_text << fname;
      if (fname != "constant") spec_text << ":" << c;
      fspec = parse_fspec(spec_text.str(), fline);
    }
    cfg.family = PlaneFamily::homothetic(cfg.profile, fspec);
  }

  // [initial]
  {
    cfg.initial.kind = InitialData::Kind::FromSupport;
    double h0 = 1.0;
    std::map<int, FourierSeries::Term> hterms;
    bool explicit_kind = false;
    if (auto sec = sections.find("initial"); sec != sections.end()) {
      if (auto it = sec->second.find("kind"); it != sec->second.end()) {
        if (it->second.value == "explicit_k") {
          explicit_kind = true;
          cfg.initial.kind = InitialData::Kind::ExplicitK;
        } else if (it->second.value != "from_support") {
          throw ConfigError(it->second.line,
                            "initial kind must be from_support or explicit_k");
        }
      }
      for (const auto& [key, entry] : sec->second) {
        int order = 0;
        if (key == "kind") continue;
        if (key == "k") {
          if (!explicit_kind)
            throw ConfigError(entry.line,
                              "k samples need kind = explicit_k");
          std::vector<std::string> items = split_list(entry.value);
          if (items.size() == 1) {
            cfg.initial.uniform_k = parse_double(items[0], entry.line);
            if (!(cfg.initial.uniform_k > 0.0))
              throw ConfigError(entry.line, "initial k must be positive");
          } else {
            for (const std::string& item : items) {
              double v = parse_double(item, entry.line);
              if (!(v > 0.0))
                throw ConfigError(entry.line, "initial k must be positive");
              cfg.initial.explicit_k.push_back(v);
            }
          }
        } else if (key == "h0") {
          h0 = parse_double(entry.value, entry.line);
        } else if (split_key_order(key, "hcos", order)) {
          if (order == 0)
            throw ConfigError(entry.line, "harmonic order must be >= 1");
          hterms[order].order = order;
          hterms[order].cos_coeff = parse_double(entry.value, entry.line);
        } else if (split_key_order(key, "hsin", order)) {
          if (order == 0)
            throw ConfigError(entry.line, "harmonic order must be >= 1");
          hterms[order].order = order;
          hterms[order].sin_coeff = parse_double(entry.value, entry.line);
        } else {
          throw ConfigError(entry.line, "unknown initial key '" + key + "'");
        }
      }
      if (explicit_kind && cfg.initial.explicit_k.empty() &&
          cfg.initial.uniform_k == 0.0)
        throw ConfigError(section_lines["initial"],
                          "explicit_k initial data needs k = ...");
      if (explicit_kind && !hterms.empty())
        throw ConfigError(section_lines["initial"],
                          "support coefficients conflict with explicit_k");
    }
    if (!explicit_kind) {
      std::vector<FourierSeries::Term> list;
      for (auto& [order, term] : hterms) list.push_back(term);
      cfg.initial.h = FourierSeries(h0, std::move(list));
    }
  }

  // [solver]
  if (auto sec = sections.find("solver"); sec != sections.end()) {
    for (const auto& [key, entry] : sec->second) {
      if (key == "n")
        cfg.solver.n = parse_int(entry.value, entry.line);
      else if (key == "cfl")
        cfg.solver.cfl = parse_double(entry.value, entry.line);
      else if (key == "stop_area_frac")
        cfg.solver.stop_area_frac = parse_double(entry.value, entry.line);
      else if (key == "stop_kmax")
        cfg.solver.stop_kmax = parse_double(entry.value, entry.line);
      else if (key == "t_max")
        cfg.solver.t_max = parse_double(entry.value, entry.line);
      else
        throw ConfigError(entry.line, "unknown solver key '" + key + "'");
    }
  }

  // [outputs]
  if (auto sec = sections.find("outputs"); sec != sections.end()) {
    for (const auto& [key, entry] : sec->second) {
      if (key == "dir") {
        cfg.out_dir = entry.value;
      } else if (key == "record_every") {
        cfg.solver.record_every = parse_int(entry.value, entry.line);
      } else if (key == "snapshot_times") {
        for (const std::string& item : split_list(entry.value))
          cfg.solver.snapshot_times.push_back(parse_double(item, entry.line));
      } else {
        throw ConfigError(entry.line, "unknown outputs key '" + key + "'");
      }
    }
  }

  try {
    cfg.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(section_lines.count("solver") ? section_lines["solver"]
                                                    : 0,
                      e.what());
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace minkflow
