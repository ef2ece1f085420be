#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tmlab/approx.hpp"
#include "tmlab/dovetail.hpp"
#include "tmlab/enumerate.hpp"

// Built-in reproducibility experiments. Each report pins its parameters in
// the header lines and ends with a PASS/FAIL verdict.

namespace tmlab {

struct ExperimentReport {
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> lines;
};

namespace detail {

inline std::uint64_t param_or(const std::map<std::string, std::string>& params,
                              const std::string& key, std::uint64_t fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("experiment: parameter " + key + " must be a number, got '" +
                                it->second + "'");
  }
}

}  // namespace detail

inline ExperimentReport run_experiment(const std::string& id,
                                       const std::map<std::string, std::string>& params = {}) {
  ExperimentReport report;
  auto put = [&report](std::string key, std::string value) {
    report.lines.emplace_back(std::move(key), std::move(value));
  };
  put("experiment", id);

  if (id == "h-monotone") {
    const std::uint64_t horizons = detail::param_or(params, "N", 200);
    put("param.N", std::to_string(horizons));
    ProgramUniverse universe;
    DovetailState state;
    std::string previous;
    bool monotone = true;
    for (std::uint64_t h = 1; h <= horizons; ++h) {
      state = advance(std::move(state), h, universe);
      const std::string current = bits(state);
      for (std::size_t i = 0; i < current.size(); ++i) {
        const char before = i < previous.size() ? previous[i] : '0';
        if (before == '0' && current[i] == '1')
          put("flip", "bit=" + std::to_string(i) + " horizon=" + std::to_string(h));
        if (before == '1' && current[i] == '0') {
          put("regression", "bit=" + std::to_string(i) + " horizon=" + std::to_string(h));
          monotone = false;
        }
      }
      previous = current;
    }
    put("halted", std::to_string(std::count(previous.begin(), previous.end(), '1')));
    put("simulated-steps", std::to_string(state.simulated_steps));
    report.pass = monotone;
  } else if (id == "roundtrip") {
    const std::uint64_t max_length = detail::param_or(params, "max-number-length", 30);
    put("param.max-number-length", std::to_string(max_length));
    MachineEnumerator machines;
    std::uint64_t count = 0;
    bool ok = true;
    for (std::size_t rank = 1; machines.number(rank).size() <= max_length; ++rank) {
      const Machine& machine = machines.machine(rank);
      const std::string encoding = encode(machine);
      if (decode(encoding) != machine || encode(decode(encoding)) != encoding ||
          from_number(to_number(encoding)) != encoding ||
          to_number(encoding) != machines.number(rank)) {
        put("mismatch", machines.number(rank));
        ok = false;
      }
      ++count;
    }
    put("machines", std::to_string(count));
    report.pass = ok && count > 0;
  } else if (id == "diagonal-differs") {
    const std::uint64_t n = detail::param_or(params, "n", 100);
    const std::uint64_t base = detail::param_or(params, "base", 10);
    const std::uint64_t seed = detail::param_or(params, "seed", 7);
    put("param.n", std::to_string(n));
    put("param.base", std::to_string(base));
    put("param.seed", std::to_string(seed));
    if (base < 2 || base > 10) throw std::invalid_argument("experiment: base must be in [2, 10]");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> digit(0, static_cast<unsigned>(base) - 1);
    std::vector<DigitStream> streams;
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string digits;
      for (std::uint64_t j = 0; j < n; ++j) digits.push_back(static_cast<char>('0' + digit(rng)));
      streams.emplace_back(static_cast<unsigned>(base), std::move(digits));
    }
    const std::string shifted = diagonal(streams, static_cast<std::size_t>(n),
                                         static_cast<unsigned>(base));
    const std::string plain = diagonal_prime(streams, static_cast<std::size_t>(n));
    bool ok = true;
    for (std::size_t i = 1; i <= n; ++i) {
      const unsigned d = static_cast<unsigned>(shifted[i - 1] - '0');
      if (d == streams[i - 1].digit(i)) ok = false;
      if (d != (static_cast<unsigned>(plain[i - 1] - '0') + 1) % base) ok = false;
    }
    put("checks", std::to_string(n));
    report.pass = ok;
  } else {
    throw UnknownExperiment(id);
  }

  put("verdict", report.pass ? "PASS" : "FAIL");
  return report;
}

}  // namespace tmlab
