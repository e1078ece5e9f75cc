#pragma once

// Certification suites shared by the CLI and the acceptance binary. Each
// check records its worst observed value against a bound.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace nullcong::cli {

struct Check {
  std::string name;
  double value = 0.0;  // worst case observed
  double bound = 0.0;
  bool upper = true;   // pass iff value <= bound, else value >= bound
  std::size_t samples = 0;
  bool pass = false;
};

Check at_most(std::string name, double value, double bound, std::size_t samples);
Check at_least(std::string name, double value, double bound, std::size_t samples);

struct Suite {
  std::string name;
  std::vector<Check> checks;

  bool pass() const;
  const Check& find(const std::string& name) const;
};

nlohmann::ordered_json to_json(const Check& c);
nlohmann::ordered_json to_json(const Suite& s);

Suite spinor_identities(std::uint64_t seed, std::size_t draws);
Suite hodge_identities(std::uint64_t seed, std::size_t draws);
Suite twistor_round_trip(std::uint64_t seed, std::size_t draws);
Suite frame_diagonalization(std::uint64_t seed, std::size_t draws);
Suite shear_suite(std::uint64_t seed, std::size_t draws);
Suite cr_graph_suite(int workers);
// Checks N1 to N5 plus the Levi and CR vector field checks.
Suite slit_plane_suite(std::uint64_t seed, std::size_t samples);
Suite maxwell_suite(int workers);
Suite conformal_suite(std::uint64_t seed, std::size_t draws);

}  // namespace nullcong::cli
