#include "rwpot/config.hpp"

#include <fstream>
#include <sstream>

#include "rwpot/errors.hpp"

namespace rwpot {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double to_real(const std::string& w, const std::string& ctx) {
  try {
    std::size_t used = 0;
    const double v = std::stod(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(ctx + ": '" + w + "' is not a number");
  }
}

long to_integer(const std::string& w, const std::string& ctx) {
  try {
    std::size_t used = 0;
    const long v = std::stol(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(ctx + ": '" + w + "' is not an integer");
  }
}

Distribution parse_words(const std::vector<std::string>& w, std::size_t at, const std::string& text) {
  const std::string ctx = "distribution '" + text + "'";
  if (at >= w.size()) throw ConfigError(ctx + ": missing kind");
  const std::string& kind = w[at];
  const std::size_t rest = w.size() - at - 1;
  try {
    if (kind == "point") {
      if (rest != 1) throw ConfigError(ctx + ": point takes one value");
      return Distribution::point(to_real(w[at + 1], ctx));
    }
    if (kind == "exponential") {
      if (rest != 1) throw ConfigError(ctx + ": exponential takes one rate");
      return Distribution::exponential(to_real(w[at + 1], ctx));
    }
    if (kind == "uniform") {
      if (rest != 2) throw ConfigError(ctx + ": uniform takes two endpoints");
      return Distribution::uniform(to_real(w[at + 1], ctx), to_real(w[at + 2], ctx));
    }
    if (kind == "atomic") {
      if (rest < 1) throw ConfigError(ctx + ": atomic needs value:prob pairs");
      std::vector<Distribution::Atom> atoms;
      for (std::size_t i = at + 1; i < w.size(); ++i) {
        const auto colon = w[i].find(':');
        if (colon == std::string::npos) throw ConfigError(ctx + ": atom '" + w[i] + "' is not value:prob");
        atoms.push_back({to_real(w[i].substr(0, colon), ctx), to_real(w[i].substr(colon + 1), ctx)});
      }
      return Distribution::atomic(std::move(atoms));
    }
    if (kind == "shifted") {
      if (rest < 2) throw ConfigError(ctx + ": shifted takes a shift and a base spec");
      return shift_by(parse_words(w, at + 2, text), to_real(w[at + 1], ctx));
    }
  } catch (const DomainError& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
  throw ConfigError(ctx + ": unknown kind '" + kind + "'");
}

}  // namespace

Distribution parse_distribution(const std::string& text) { return parse_words(words(text), 0, text); }

ExperimentConfig ExperimentConfig::parse(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  cfg.source_ = source;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string loc = source + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(loc + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(loc + ": empty key");
    if (cfg.entries_.count(key)) throw ConfigError(loc + ": key '" + key + "' repeated");
    cfg.entries_[key] = Entry{value, line_no};
    if (key.rfind("dist.", 0) == 0) {
      const std::string id = key.substr(5);
      if (id.empty()) throw ConfigError(loc + ": distribution id missing");
      try {
        cfg.dists_.emplace(id, parse_distribution(value).with_id(id));
      } catch (const ConfigError& e) {
        throw ConfigError(loc + ": " + e.what());
      }
      cfg.used_[key] = true;
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse(in, path);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  auto it = entries_.find(key);
  if (it == entries_.end()) entries_[key] = Entry{value, 0};
  else it->second.value = value;
}

const ExperimentConfig::Entry& ExperimentConfig::entry(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(source_ + ": missing required key '" + key + "'");
  used_[key] = true;
  return it->second;
}

std::string ExperimentConfig::where(const std::string& key) const {
  auto it = entries_.find(key);
  const int line = it == entries_.end() ? 0 : it->second.line;
  return source_ + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": field '" + key + "'";
}

std::string ExperimentConfig::str(const std::string& key) const { return entry(key).value; }
std::string ExperimentConfig::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

long ExperimentConfig::integer(const std::string& key) const {
  const auto w = words(entry(key).value);
  if (w.size() != 1) throw ConfigError(where(key) + ": expected one integer");
  return to_integer(w[0], where(key));
}
long ExperimentConfig::integer(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

double ExperimentConfig::real(const std::string& key) const {
  const auto w = words(entry(key).value);
  if (w.size() != 1) throw ConfigError(where(key) + ": expected one number");
  return to_real(w[0], where(key));
}
double ExperimentConfig::real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

std::vector<long> ExperimentConfig::integers(const std::string& key) const {
  std::vector<long> out;
  for (const auto& w : words(entry(key).value)) out.push_back(to_integer(w, where(key)));
  if (out.empty()) throw ConfigError(where(key) + ": empty list");
  return out;
}
std::vector<long> ExperimentConfig::integers(const std::string& key, std::vector<long> fallback) const {
  return has(key) ? integers(key) : fallback;
}

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& w : words(entry(key).value)) out.push_back(to_real(w, where(key)));
  if (out.empty()) throw ConfigError(where(key) + ": empty list");
  return out;
}
std::vector<double> ExperimentConfig::reals(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? reals(key) : fallback;
}

Site ExperimentConfig::site(const std::string& key, int d) const {
  const auto v = integers(key);
  if (static_cast<int>(v.size()) != d) {
    throw ConfigError(where(key) + ": expected " + std::to_string(d) + " coordinates");
  }
  Site s{};
  for (int i = 0; i < d; ++i) s[i] = static_cast<int>(v[i]);
  return s;
}

Distribution ExperimentConfig::distribution(const std::string& key) const {
  const std::string id = trim(entry(key).value);
  auto it = dists_.find(id);
  if (it == dists_.end()) throw ConfigError(where(key) + ": distribution '" + id + "' is not defined");
  return it->second;
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> out;
  for (const auto& [k, e] : entries_) out[k] = e.value;
  return out;
}

std::vector<std::string> ExperimentConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_) {
    if (!used_.count(k)) out.push_back(k);
  }
  return out;
}

}  // namespace rwpot
