#include "rwpot/field.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "rwpot/errors.hpp"
#include "rwpot/random.hpp"

namespace rwpot {

PotentialField PotentialField::constant(const Box& box, double value) {
  if (!(value >= 0.0)) throw DomainError("potential values must be >= 0");
  PotentialField f;
  f.box = box;
  f.values.assign(box.size(), value);
  return f;
}

PotentialField PotentialField::from_values(const Box& box, std::vector<double> values) {
  if (values.size() != box.size()) throw DomainError("potential field size does not match its box");
  for (double v : values) {
    if (!(v >= 0.0)) throw DomainError("potential values must be >= 0");
  }
  PotentialField f;
  f.box = box;
  f.values = std::move(values);
  return f;
}

UniformField sample_uniform_field(const Box& domain, std::uint64_t seed) {
  if (domain.empty()) throw DomainError("sample_uniform_field: empty domain");
  UniformField U;
  U.box = domain;
  U.seed = seed;
  U.values.resize(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    U.values[i] = keyed_uniform(seed, domain.site(i), domain.dim());
  }
  return U;
}

PotentialField realize(const UniformField& U, const Distribution& spec) {
  PotentialField f;
  f.box = U.box;
  f.spec_id = spec.id();
  f.seed = U.seed;
  f.values.resize(U.values.size());
  for (std::size_t i = 0; i < U.values.size(); ++i) f.values[i] = spec.pseudo_inverse(U.values[i]);
  return f;
}

PotentialField delta_field(const PotentialField& omega_F, const PotentialField& omega_G) {
  if (!(omega_F.box == omega_G.box)) throw DomainError("delta_field: fields live on different boxes");
  PotentialField out;
  out.box = omega_F.box;
  out.spec_id = "delta(" + omega_F.spec_id + "," + omega_G.spec_id + ")";
  out.seed = omega_F.seed;
  out.values.resize(omega_F.values.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double diff = omega_F.values[i] - omega_G.values[i];
    if (diff < 0.0) {
      throw CouplingViolation("delta_field: omega_F < omega_G at " +
                              to_string(out.box.site(i), out.box.dim()));
    }
    out.values[i] = diff;
  }
  return out;
}

void write_field(std::ostream& os, const PotentialField& field) {
  const int d = field.box.dim();
  os << "# rwpot-field v1\n";
  os << "d " << d << '\n';
  os << "lo";
  for (int i = 0; i < d; ++i) os << ' ' << field.box.lo()[i];
  os << "\nhi";
  for (int i = 0; i < d; ++i) os << ' ' << field.box.hi()[i];
  os << "\nseed " << field.seed << '\n';
  os << "spec " << field.spec_id << '\n';
  const auto old_precision = os.precision(17);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const Site s = field.box.site(i);
    for (int k = 0; k < d; ++k) os << s[k] << ' ';
    os << field.values[i] << '\n';
  }
  os.precision(old_precision);
}

PotentialField read_field(std::istream& is) {
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(is, line)) throw DomainError(std::string("read_field: missing ") + what);
  };
  next_line("header");
  if (line != "# rwpot-field v1") throw DomainError("read_field: unknown header");
  int d = 0;
  Site lo{}, hi{};
  std::uint64_t seed = 0;
  std::string spec;
  std::string key;
  next_line("d");
  {
    std::istringstream ss(line);
    ss >> key >> d;
    if (key != "d" || d < 1 || d > kMaxDim) throw DomainError("read_field: bad dimension line");
  }
  for (Site* target : {&lo, &hi}) {
    next_line("box corner");
    std::istringstream ss(line);
    ss >> key;
    for (int i = 0; i < d; ++i) ss >> (*target)[i];
    if (!ss) throw DomainError("read_field: bad box corner line");
  }
  next_line("seed");
  {
    std::istringstream ss(line);
    ss >> key >> seed;
    if (key != "seed" || !ss) throw DomainError("read_field: bad seed line");
  }
  next_line("spec");
  if (line.rfind("spec ", 0) != 0) throw DomainError("read_field: bad spec line");
  spec = line.substr(5);

  Box box(d, lo, hi);
  std::vector<double> values(box.size(), -1.0);
  for (std::size_t n = 0; n < box.size(); ++n) {
    next_line("site line");
    std::istringstream ss(line);
    Site s{};
    double v = 0.0;
    for (int i = 0; i < d; ++i) ss >> s[i];
    ss >> v;
    if (!ss || !box.contains(s)) throw DomainError("read_field: bad site line '" + line + "'");
    values[box.index(s)] = v;
  }
  PotentialField f = PotentialField::from_values(box, std::move(values));
  f.spec_id = spec;
  f.seed = seed;
  return f;
}

}  // namespace rwpot
