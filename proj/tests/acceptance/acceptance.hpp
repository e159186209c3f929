#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "alnram/tm.hpp"

namespace acc {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome lazy_differential();  // 1
Outcome small_sum();         // 2
Outcome tower_space();        // 3
Outcome aln_agreement();      // 4
Outcome toolkit();            // 5
Outcome codegen();            // 6
Outcome tableau_checks();     // 7
Outcome algorithms();         // 8
Outcome nram_codecs();        // 9
Outcome el_accounting();      // 10

// fixture machines, with an accepting input and tape bound (s <= 3) when one exists
struct Fixture {
  std::string name;
  alnram::TmSpec spec;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> accepting;  // input, s
};
std::vector<Fixture> fixtures();

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace acc
