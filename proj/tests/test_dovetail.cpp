#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "sample_machines.hpp"
#include "tmlab/dovetail.hpp"

using namespace tmlab;

namespace {

ProgramUniverse mixed_universe() {
  return ProgramUniverse({{samples::halt_machine(), {}},
                          {samples::loop_machine(), {}},
                          {samples::halt3_machine(), {}}});
}

}  // namespace

TEST_CASE("halting bits on a controlled universe") {
  ProgramUniverse universe = mixed_universe();
  CHECK(halting_bits(1, universe) == "1");
  CHECK(halting_bits(2, universe) == "10");
  CHECK(halting_bits(3, universe) == "101");
  CHECK(halting_bits(4, universe) == "101");
  CHECK(halting_bits(200, universe) == "101");
}

TEST_CASE("an all-loop universe stays at zero") {
  ProgramUniverse universe(
      std::vector<Program>(4, Program{samples::loop_machine(), {}}));
  CHECK(halting_bits(4, universe) == "0000");
  CHECK(halting_digit_prefix(4, universe) == "0000");
}

TEST_CASE("bits are monotone in the horizon and advance matches fresh runs") {
  ProgramUniverse universe = mixed_universe();
  DovetailState state;
  std::string previous;
  for (std::uint64_t h = 1; h <= 40; ++h) {
    state = advance(std::move(state), h, universe);
    const std::string current = bits(state);

    ProgramUniverse fresh_universe = mixed_universe();
    CHECK(current == halting_bits(h, fresh_universe));

    for (std::size_t i = 0; i < previous.size(); ++i)
      CHECK(previous[i] <= current[i]);
    previous = current;
  }
}

TEST_CASE("a halt bit stays set forever after the halt step") {
  ProgramUniverse universe = mixed_universe();
  DovetailState state;
  for (std::uint64_t h = 1; h <= 30; ++h) {
    state = advance(std::move(state), h, universe);
    if (h >= 3) CHECK(bits(state)[2] == '1');
  }
  CHECK(state.slots[2].halt_step == 3);
}

TEST_CASE("simulated steps stay within the quadratic budget") {
  SUBCASE("fresh run") {
    ProgramUniverse universe;
    DovetailState state = advance(DovetailState{}, 60, universe);
    CHECK(state.simulated_steps <= 60 * 60);
  }
  SUBCASE("advancing one horizon at a time") {
    ProgramUniverse universe;
    DovetailState state;
    for (std::uint64_t h = 1; h <= 60; ++h) state = advance(std::move(state), h, universe);
    CHECK(state.simulated_steps <= 60 * 60);

    ProgramUniverse fresh_universe;
    CHECK(bits(state) == halting_bits(60, fresh_universe));
  }
}

TEST_CASE("worker count never changes the output") {
  for (const unsigned workers : {1u, 2u, 8u}) {
    ProgramUniverse universe = mixed_universe();
    CHECK(halting_bits(25, universe, workers) == "101");
  }
  ProgramUniverse reference_universe;
  const std::string reference = halting_bits(80, reference_universe);
  for (const unsigned workers : {2u, 3u, 8u}) {
    ProgramUniverse universe;
    CHECK(halting_bits(80, universe, workers) == reference);
  }
}

TEST_CASE("default universe: the first program is the looping machine") {
  ProgramUniverse universe;
  CHECK(halting_bits(1, universe) == "0");
}

TEST_CASE("halted slots drop their snapshots") {
  ProgramUniverse universe = mixed_universe();
  const DovetailState state = advance(DovetailState{}, 10, universe);
  CHECK(state.slots[0].halted);
  CHECK(state.slots[0].config.tape.empty());
  CHECK_FALSE(state.slots[1].halted);
  CHECK(state.slots[1].config.steps == 10);
}

TEST_CASE("checkpoints restore the exact state") {
  ProgramUniverse universe = mixed_universe();
  DovetailState state;
  for (std::uint64_t h = 1; h <= 5; ++h) state = advance(std::move(state), h, universe);

  std::stringstream buffer;
  save_checkpoint(state, buffer);

  ProgramUniverse reload_universe = mixed_universe();
  DovetailState loaded = load_checkpoint(buffer, reload_universe);
  CHECK(loaded.horizon == state.horizon);
  CHECK(loaded.simulated_steps == state.simulated_steps);
  CHECK(bits(loaded) == bits(state));

  loaded = advance(std::move(loaded), 12, reload_universe);
  ProgramUniverse fresh_universe = mixed_universe();
  const DovetailState fresh = advance(DovetailState{}, 12, fresh_universe);
  CHECK(bits(loaded) == bits(fresh));
  state = advance(std::move(state), 12, universe);
  CHECK(loaded.simulated_steps == state.simulated_steps);
}

TEST_CASE("checkpoints reject a mismatched universe") {
  ProgramUniverse universe = mixed_universe();
  DovetailState state = advance(DovetailState{}, 3, universe);
  std::stringstream buffer;
  save_checkpoint(state, buffer);

  ProgramUniverse other(std::vector<Program>(3, Program{samples::loop_machine(), {}}));
  CHECK_THROWS_AS(load_checkpoint(buffer, other), Error);
}

TEST_CASE("advance requires a growing horizon") {
  ProgramUniverse universe = mixed_universe();
  DovetailState state = advance(DovetailState{}, 5, universe);
  CHECK_THROWS_AS(advance(std::move(state), 5, universe), std::invalid_argument);
}
