#include <fstream>
#include <sstream>

#include "alnram/error.hpp"
#include "alnram/tm.hpp"
#include "main.hpp"

using namespace alnram;

namespace {

ErrorKind error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Usage;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse examples") {
  auto a = machines::accept_all();
  CHECK(a.k == 4);
  CHECK(a.c == 2);
  CHECK(error_of([] { parse_tm("states 4\nstart 0\n0 0 -> 1 0 S\n"); }) == ErrorKind::MissingTransition);
  CHECK(machines::parity().c == 3);
  CHECK(error_of([] { parse_tm("states 3\nstart 0\n0 0 -> 1 0 S\n0 1 -> 1 1 S\n"); }) == ErrorKind::ParseError);
  CHECK(error_of([] { parse_tm("states 4\nstart 0\n0 0 -> 1 0 X\n0 1 -> 1 1 S\n"); }) == ErrorKind::ParseError);
  for (const auto& [name, spec] : machines::all()) {
    CAPTURE(name);
    CHECK(print_tm(parse_tm(slurp(std::string(ALNRAM_FIXTURES) + "/tm/" + name + ".tm"))) == print_tm(spec));
    CHECK(print_tm(parse_tm(print_tm(spec))) == print_tm(spec));
  }
}

TEST_CASE("step examples") {
  auto a = machines::accept_all();
  TmConfig start{BigNat{1}, 0, 0};
  CHECK(step_tm(a, start) == TmConfig{BigNat{1}, 0, kAccept});
  TmConfig halted{BigNat{5}, 2, kAccept};
  CHECK(step_tm(a, halted) == TmConfig{BigNat{5}, 1, kAccept});
  TmConfig settled{BigNat{5}, 0, kAccept};
  CHECK(step_tm(a, settled) == settled);
  CHECK(step_tm(machines::fall_off(), start).state == kReject);
  // R from the last cell of a bounded tape
  TmConfig top{BigNat{3}, 1, 0};
  CHECK(step_tm(machines::scan_up(), top, 2).state == kTapeExceeded);
  CHECK(step_tm(machines::scan_up(), top).head == 2);
}

TEST_CASE("run examples") {
  auto r = run_tm(machines::accept_all(), BigNat{1}, 2, 100);
  CHECK(r.halted);
  CHECK(r.steps == 1);
  CHECK(r.final.state == kAccept);
  CHECK(r.trace == std::vector<BigNat>{BigNat{65}, BigNat{73}});
  CHECK(run_tm(machines::fall_off(), BigNat{0}, std::nullopt, 100).final.state == kReject);
  auto idle = run_tm(machines::accept_all(), BigNat{1}, std::nullopt, 0);
  CHECK(!idle.halted);
  CHECK(idle.final == TmConfig{BigNat{1}, 0, 0});

  auto inc = run_tm(machines::increment(), BigNat{7}, std::nullopt, 100);
  CHECK(inc.final.tape == BigNat{8});
  CHECK(inc.final.state == kAccept);
  CHECK(run_tm(machines::parity(), BigNat{3}, std::nullopt, 100).final.state == kAccept);
  CHECK(run_tm(machines::parity(), BigNat{7}, std::nullopt, 100).final.state == kReject);
  CHECK(run_tm(machines::scan_up(), BigNat{3}, 2, 100).final.state == kTapeExceeded);
  CHECK(run_tm(machines::scan_up(), BigNat{3}, 3, 100).final.state == kAccept);
  CHECK(error_of([] { run_tm(machines::scan_up(), BigNat{4}, 2, 10); }) == ErrorKind::InputTooWide);
}

TEST_CASE("ID codec") {
  CHECK(encode_id({BigNat{1}, 0, 0}, 2, 2) == BigNat{65});
  CHECK(encode_id({BigNat{1}, 0, 1}, 2, 2) == BigNat{73});
  CHECK(decode_id(BigNat{65}, 2, 2) == TmConfig{BigNat{1}, 0, 0});
  for (std::uint64_t c : {2, 3})
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const std::uint64_t m = 3 * id_field(s, c);
      std::uint64_t ok = 0;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
        try {
          auto cfg = decode_id(BigNat{x}, s, c);
          REQUIRE(encode_id(cfg, s, c) == BigNat{x});
          ++ok;
        } catch (const Error& e) {
          REQUIRE(e.kind() == ErrorKind::MalformedDescription);
        }
      }
      // tapes x heads x states
      CHECK(ok == (std::uint64_t{1} << s) * s * (std::uint64_t{1} << c));
    }
}

TEST_CASE("halting drift and bound independence") {
  for (const auto& [name, spec] : machines::all())
    for (std::uint64_t inp = 0; inp < 16; ++inp) {
      CAPTURE(name);
      CAPTURE(inp);
      auto free = run_tm(spec, BigNat{inp}, std::nullopt, 200);
      REQUIRE(free.halted);
      // a bound larger than anything the run touched changes nothing
      auto bounded = run_tm(spec, BigNat{inp}, free.steps + 6, 200);
      CHECK(bounded.final == free.final);
      TmConfig cfg = free.final;
      for (std::uint64_t k = 0; k < free.final.head; ++k) cfg = step_tm(spec, cfg);
      CHECK(cfg.head == 0);
      CHECK(step_tm(spec, cfg) == cfg);
    }
}
