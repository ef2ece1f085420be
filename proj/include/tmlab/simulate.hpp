#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tmlab/errors.hpp"
#include "tmlab/machine.hpp"

namespace tmlab {

// A resumable snapshot of a running machine. The tape is sparse: absent cells
// hold the blank symbol and blanks are never stored explicitly, so two
// configurations describing the same tape compare equal.
struct Configuration {
  StateId state = 0;
  std::map<std::int64_t, SymbolId> tape;
  std::int64_t head = 0;
  std::uint64_t steps = 0;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class RunStatus { Halted, OutOfFuel };

struct RunResult {
  RunStatus status = RunStatus::OutOfFuel;
  Configuration config;

  bool halted() const { return status == RunStatus::Halted; }
};

// Input is written at cells 0..len-1, head on cell 0, state 0. Input symbols
// are below the input alphabet size, hence never blank, so the tape stays
// sparse by construction.
inline Configuration initial_config(const Machine& machine, std::span<const SymbolId> input) {
  Configuration c;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] >= machine.input_symbols)
      throw InvalidInputSymbol(input[i], machine.input_symbols);
    c.tape.emplace(static_cast<std::int64_t>(i), input[i]);
  }
  return c;
}

namespace detail {

// Dense (state, symbol) -> transition lookup for the run loop.
class StepTable {
 public:
  explicit StepTable(const Machine& machine)
      : symbols_(machine.tape_symbols),
        cells_(static_cast<std::size_t>(machine.states) * machine.tape_symbols, nullptr) {
    for (const Transition& t : machine.transitions)
      if (t.from_state < machine.states && t.read < machine.tape_symbols)
        cells_[static_cast<std::size_t>(t.from_state) * symbols_ + t.read] = &t;
  }

  const Transition& at(StateId state, SymbolId symbol) const {
    const Transition* t = cells_[static_cast<std::size_t>(state) * symbols_ + symbol];
    if (t == nullptr)
      throw Error("missing transition: no rule for state " + std::to_string(state) +
                  ", symbol " + std::to_string(symbol));
    return *t;
  }

 private:
  std::size_t symbols_;
  std::vector<const Transition*> cells_;
};

inline void step_in_place(const Machine& machine, const StepTable& table, Configuration& c) {
  const auto it = c.tape.find(c.head);
  const SymbolId read = it == c.tape.end() ? machine.blank() : it->second;
  const Transition& t = table.at(c.state, read);
  if (t.write == machine.blank()) {
    if (it != c.tape.end()) c.tape.erase(it);
  } else if (it != c.tape.end()) {
    it->second = t.write;
  } else {
    c.tape.emplace(c.head, t.write);
  }
  c.head += t.move == Move::Right ? 1 : -1;
  c.state = t.to_state;
  ++c.steps;
}

// Runs until a final state is entered or `target_steps` total steps have been
// executed. Returns true when halted.
inline bool run_to(const Machine& machine, const StepTable& table, Configuration& c,
                   std::uint64_t target_steps) {
  while (true) {
    if (machine.is_final(c.state)) return true;
    if (c.steps >= target_steps) return false;
    step_in_place(machine, table, c);
  }
}

}  // namespace detail

// One transition. Returns the successor configuration, or nullopt when the
// configuration already sits in a final state.
inline std::optional<Configuration> step(const Machine& machine, const Configuration& config) {
  if (machine.is_final(config.state)) return std::nullopt;
  Configuration next = config;
  detail::StepTable table(machine);
  detail::step_in_place(machine, table, next);
  return next;
}

inline RunResult resume(const Machine& machine, Configuration config, std::uint64_t extra_fuel) {
  if (extra_fuel == 0) throw std::invalid_argument("resume: fuel must be positive");
  if (machine.is_final(config.state)) throw AlreadyHalted();
  detail::StepTable table(machine);
  const bool halted = detail::run_to(machine, table, config, config.steps + extra_fuel);
  return {halted ? RunStatus::Halted : RunStatus::OutOfFuel, std::move(config)};
}

// Runs from the initial configuration until halt or until `fuel` steps have
// been executed. A halted result reports the exact halting step; an
// out-of-fuel result reports steps == fuel. run(a + b) is equivalent to
// run(a) followed by resume(b).
inline RunResult run(const Machine& machine, std::span<const SymbolId> input, std::uint64_t fuel) {
  if (fuel == 0) throw std::invalid_argument("run: fuel must be positive");
  Configuration config = initial_config(machine, input);
  detail::StepTable table(machine);
  const bool halted = detail::run_to(machine, table, config, fuel);
  return {halted ? RunStatus::Halted : RunStatus::OutOfFuel, std::move(config)};
}

// The printed digit string: the maximal run of numeral symbols (value < base)
// starting at the leftmost non-blank cell and stopping before the first blank
// or non-numeral cell. An empty tape reads as "".
inline std::string read_output(const Configuration& config, unsigned base) {
  if (base < 2 || base > 10) throw std::invalid_argument("read_output: base must be in [2, 10]");
  std::string out;
  if (config.tape.empty()) return out;
  std::int64_t pos = config.tape.begin()->first;
  for (auto it = config.tape.begin();
       it != config.tape.end() && it->first == pos && it->second < base; ++it, ++pos)
    out.push_back(static_cast<char>('0' + it->second));
  return out;
}

}  // namespace tmlab
