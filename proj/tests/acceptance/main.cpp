#include <cstdio>
#include <exception>

#include "acceptance.hpp"
#include "alnram/tableau.hpp"

namespace acc {

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  for (auto& [name, spec] : alnram::machines::all()) {
    Fixture f{name, spec, std::nullopt};
    for (std::uint64_t s = 2; s <= 3 && !f.accepting; ++s)
      for (std::uint64_t inp = 0; inp < (std::uint64_t{1} << s) && !f.accepting; ++inp) {
        auto r = alnram::run_tm(spec, alnram::BigNat{inp}, s, 10000);
        if (r.halted && r.final.state == alnram::kAccept) f.accepting = {{inp, s}};
      }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace acc

int main() {
  using Fn = acc::Outcome (*)();
  const Fn criteria[] = {acc::lazy_differential, acc::small_sum, acc::tower_space, acc::aln_agreement,
                         acc::toolkit,           acc::codegen,    acc::tableau_checks, acc::algorithms,
                         acc::nram_codecs,       acc::el_accounting};
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    acc::Stopwatch sw;
    acc::Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d: %s  %s (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), sw.seconds());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
