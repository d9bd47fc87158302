#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rwpot/distribution.hpp"
#include "rwpot/lattice.hpp"
#include "rwpot/random.hpp"

namespace rwpot {

// i.i.d. Uniform(0,1) variables over a box, keyed per site by the seed.
struct UniformField {
  Box box;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string generator = kUniformGeneratorId;

  double at(const Site& s) const { return values[box.index(s)]; }
};

// Nonnegative potential over a box. `spec_id` and `seed` record how it was
// realized; explicit fields leave spec_id as "explicit".
struct PotentialField {
  Box box;
  std::vector<double> values;
  std::string spec_id = "explicit";
  std::uint64_t seed = 0;

  double at(const Site& s) const { return values[box.index(s)]; }

  static PotentialField constant(const Box& box, double value);
  static PotentialField from_values(const Box& box, std::vector<double> values);
};

// Throws DomainError for an empty box.
UniformField sample_uniform_field(const Box& domain, std::uint64_t seed);

// omega(x) = spec^{-1}(U(x)) sitewise.
PotentialField realize(const UniformField& U, const Distribution& spec);

// omega_F - omega_G; throws CouplingViolation on any negative entry and
// DomainError when the boxes differ.
PotentialField delta_field(const PotentialField& omega_F, const PotentialField& omega_G);

// Snapshot text format:
//   # rwpot-field v1
//   d <d>
//   lo <x_1> ... <x_d>
//   hi <x_1> ... <x_d>
//   seed <seed>
//   spec <spec id>
//   <x_1> ... <x_d> <value>     (one line per site, lexicographic order)
void write_field(std::ostream& os, const PotentialField& field);
PotentialField read_field(std::istream& is);

}  // namespace rwpot
