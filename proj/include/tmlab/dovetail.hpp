#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tmlab/enumerate.hpp"
#include "tmlab/simulate.hpp"

// Dovetailed halting approximation: bit i of the horizon-n bit string is 1
// exactly when program i halts within n steps. Horizons are advanced by
// resuming per-program snapshots, so producing every horizon up to N costs at
// most N^2 simulated steps overall.

namespace tmlab {

// Supplies program i for every index the dovetailer asks for: either a fixed
// finite list, or the default program numbering, memoized.
class ProgramUniverse {
 public:
  ProgramUniverse() = default;  // default numbering, unbounded

  explicit ProgramUniverse(std::vector<Program> programs)
      : programs_(std::move(programs)), finite_(true) {}

  bool finite() const { return finite_; }

  // number of programs with index < horizon
  std::size_t count_at(std::uint64_t horizon) const {
    if (!finite_) return static_cast<std::size_t>(horizon);
    return std::min<std::uint64_t>(horizon, programs_.size());
  }

  const Program& program(std::size_t index) {
    if (finite_) {
      if (index >= programs_.size())
        throw std::out_of_range("program universe holds " + std::to_string(programs_.size()) +
                                " programs");
      return programs_[index];
    }
    if (!numbering_) numbering_.emplace();
    while (programs_.size() <= index) programs_.push_back(numbering_->program_of(programs_.size()));
    return programs_[index];
  }

 private:
  std::vector<Program> programs_;
  std::optional<ProgramNumbering> numbering_;
  bool finite_ = false;
};

struct DovetailSlot {
  Program program;
  bool halted = false;
  std::uint64_t halt_step = 0;  // meaningful once halted
  Configuration config;         // live snapshot while running; dropped on halt
};

struct DovetailState {
  std::uint64_t horizon = 0;
  std::vector<DovetailSlot> slots;
  std::uint64_t simulated_steps = 0;
};

inline std::string bits(const DovetailState& state) {
  std::string s(state.slots.size(), '0');
  for (std::size_t i = 0; i < state.slots.size(); ++i)
    if (state.slots[i].halted) s[i] = '1';
  return s;
}

// Resumes every still-running program up to the new horizon and starts the
// newly included ones from scratch. The result is bit-identical to a fresh
// computation at the new horizon, for any worker count.
inline DovetailState advance(DovetailState state, std::uint64_t new_horizon,
                             ProgramUniverse& universe, unsigned workers = 1) {
  if (new_horizon <= state.horizon)
    throw std::invalid_argument("advance: the horizon must increase");

  // materialise new programs serially; workers then only touch their own slots
  const std::size_t target = universe.count_at(new_horizon);
  while (state.slots.size() < target) {
    DovetailSlot slot;
    slot.program = universe.program(state.slots.size());
    slot.config = initial_config(slot.program.machine, slot.program.input);
    state.slots.push_back(std::move(slot));
  }

  auto simulate_range = [&state, new_horizon](std::size_t lo, std::size_t hi,
                                              std::uint64_t& steps_out) {
    std::uint64_t executed = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      DovetailSlot& slot = state.slots[i];
      if (slot.halted) continue;
      const std::uint64_t before = slot.config.steps;
      detail::StepTable table(slot.program.machine);
      const bool halted = detail::run_to(slot.program.machine, table, slot.config, new_horizon);
      executed += slot.config.steps - before;
      if (halted) {
        slot.halted = true;
        slot.halt_step = slot.config.steps;
        slot.config = Configuration{};  // keep only the halt record
      }
    }
    steps_out = executed;
  };

  const std::size_t count = state.slots.size();
  if (workers <= 1 || count < 2) {
    std::uint64_t executed = 0;
    simulate_range(0, count, executed);
    state.simulated_steps += executed;
  } else {
    const std::size_t used = std::min<std::size_t>(workers, count);
    std::vector<std::uint64_t> executed(used, 0);
    std::vector<std::thread> threads;
    threads.reserve(used);
    const std::size_t chunk = (count + used - 1) / used;
    for (std::size_t w = 0; w < used; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(count, lo + chunk);
      threads.emplace_back(simulate_range, lo, hi, std::ref(executed[w]));
    }
    for (std::thread& t : threads) t.join();
    for (const std::uint64_t e : executed) state.simulated_steps += e;
  }

  state.horizon = new_horizon;
  return state;
}

// The horizon-n halting bit string, computed from scratch.
inline std::string halting_bits(std::uint64_t n, ProgramUniverse& universe, unsigned workers = 1) {
  if (n == 0) throw std::invalid_argument("halting_bits: the horizon must be positive");
  return bits(advance(DovetailState{}, n, universe, workers));
}

// The same string read as binary digits d1..dn of a number in [0, 1]: digit i
// is 1 exactly when program i-1 was seen halting within n steps. Digits at a
// fixed position stabilise once the horizon passes that program's halt step.
inline std::string halting_digit_prefix(std::uint64_t n, ProgramUniverse& universe) {
  return halting_bits(n, universe);
}

namespace detail {

inline std::string input_digits(const std::vector<SymbolId>& input) {
  std::string s;
  for (const SymbolId sym : input) {
    if (sym > 9) throw Error("checkpoint: input symbols above 9 are not representable");
    s.push_back(static_cast<char>('0' + sym));
  }
  return s;
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

inline std::uint64_t parse_u64(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(std::string("checkpoint: malformed ") + what + " field");
  }
}

inline std::int64_t parse_i64(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(std::string("checkpoint: malformed ") + what + " field");
  }
}

}  // namespace detail

// Versioned text snapshot. Loading it against the same program source and
// advancing gives exactly the bits a fresh run would produce.
inline void save_checkpoint(const DovetailState& state, std::ostream& out) {
  out << "tmlab-checkpoint\t1\n";
  out << "horizon\t" << state.horizon << "\n";
  out << "steps\t" << state.simulated_steps << "\n";
  out << "slots\t" << state.slots.size() << "\n";
  for (std::size_t i = 0; i < state.slots.size(); ++i) {
    const DovetailSlot& slot = state.slots[i];
    const std::string number = number_of(slot.program.machine);
    const std::string input = detail::input_digits(slot.program.input);
    if (slot.halted) {
      out << "slot\t" << i << "\thalted\t" << slot.halt_step << "\t" << number << "\t" << input
          << "\n";
    } else {
      out << "slot\t" << i << "\trunning\t" << slot.config.state << "\t" << slot.config.head
          << "\t" << slot.config.steps << "\t" << number << "\t" << input << "\t";
      bool first = true;
      for (const auto& [cell, symbol] : slot.config.tape) {
        if (!first) out << ',';
        out << cell << ':' << symbol;
        first = false;
      }
      out << "\n";
    }
  }
}

inline DovetailState load_checkpoint(std::istream& in, ProgramUniverse& universe) {
  std::string line;
  auto next_fields = [&](const char* what) {
    if (!std::getline(in, line)) throw Error(std::string("checkpoint: missing ") + what);
    return detail::split_fields(line);
  };

  auto header = next_fields("header");
  if (header.size() != 2 || header[0] != "tmlab-checkpoint" || header[1] != "1")
    throw Error("checkpoint: unrecognised header");

  DovetailState state;
  auto horizon = next_fields("horizon");
  if (horizon.size() != 2 || horizon[0] != "horizon") throw Error("checkpoint: missing horizon");
  state.horizon = detail::parse_u64(horizon[1], "horizon");
  auto steps = next_fields("steps");
  if (steps.size() != 2 || steps[0] != "steps") throw Error("checkpoint: missing steps");
  state.simulated_steps = detail::parse_u64(steps[1], "steps");
  auto slots = next_fields("slots");
  if (slots.size() != 2 || slots[0] != "slots") throw Error("checkpoint: missing slot count");
  const std::uint64_t count = detail::parse_u64(slots[1], "slot count");

  for (std::uint64_t i = 0; i < count; ++i) {
    auto f = next_fields("slot");
    if (f.size() < 3 || f[0] != "slot" || detail::parse_u64(f[1], "slot index") != i)
      throw Error("checkpoint: slot lines out of order");

    DovetailSlot slot;
    slot.program = universe.program(static_cast<std::size_t>(i));
    const std::string number = number_of(slot.program.machine);
    const std::string input = detail::input_digits(slot.program.input);

    if (f[2] == "halted") {
      if (f.size() != 6) throw Error("checkpoint: malformed halted slot");
      if (f[4] != number || f[5] != input)
        throw Error("checkpoint: program mismatch at slot " + std::to_string(i));
      slot.halted = true;
      slot.halt_step = detail::parse_u64(f[3], "halt step");
    } else if (f[2] == "running") {
      if (f.size() != 9) throw Error("checkpoint: malformed running slot");
      if (f[6] != number || f[7] != input)
        throw Error("checkpoint: program mismatch at slot " + std::to_string(i));
      slot.config.state = static_cast<StateId>(detail::parse_u64(f[3], "state"));
      slot.config.head = detail::parse_i64(f[4], "head");
      slot.config.steps = detail::parse_u64(f[5], "steps");
      if (!f[8].empty()) {
        std::istringstream cells(f[8]);
        std::string pair;
        while (std::getline(cells, pair, ',')) {
          const std::size_t colon = pair.find(':');
          if (colon == std::string::npos) throw Error("checkpoint: malformed tape cell");
          const std::int64_t cell = detail::parse_i64(pair.substr(0, colon), "tape cell");
          const std::uint64_t symbol = detail::parse_u64(pair.substr(colon + 1), "tape symbol");
          slot.config.tape.emplace(cell, static_cast<SymbolId>(symbol));
        }
      }
    } else {
      throw Error("checkpoint: unknown slot status '" + f[2] + "'");
    }
    state.slots.push_back(std::move(slot));
  }
  return state;
}

}  // namespace tmlab
