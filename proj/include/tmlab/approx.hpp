#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tmlab/simulate.hpp"

// Finite-horizon checkers for digit-printing machines: the computable-number
// contract (input n -> at least the first n digits, consistently), the
// approaching-number contract (a stable window of the first m digits), and
// the diagonal operators over finite stream lists.

namespace tmlab {

// A base-b digit sequence with 1-based positions 1..available().
class DigitStream {
 public:
  DigitStream(unsigned base, std::string digits) : base_(base), digits_(std::move(digits)) {
    if (base_ < 2 || base_ > 10)
      throw std::invalid_argument("digit stream: base must be in [2, 10]");
    for (const char c : digits_)
      if (c < '0' || static_cast<unsigned>(c - '0') >= base_)
        throw std::invalid_argument("digit stream: digit out of range for base");
  }

  unsigned base() const { return base_; }
  std::size_t available() const { return digits_.size(); }
  const std::string& digits() const { return digits_; }

  unsigned digit(std::size_t position) const {  // 1-based
    if (position == 0 || position > digits_.size())
      throw InsufficientDigits("position " + std::to_string(position) + " of a stream with " +
                               std::to_string(digits_.size()) + " digits");
    return static_cast<unsigned>(digits_[position - 1] - '0');
  }

 private:
  unsigned base_;
  std::string digits_;
};

// Per-run step budget for the checkers. Non-halting within fuel is reported
// as a fuel verdict, never as a proof of divergence.
struct FuelPolicy {
  std::uint64_t base_steps = 10'000;
  std::uint64_t quadratic = 1;

  std::uint64_t fuel_for(std::uint64_t n) const { return base_steps + quadratic * n * n; }
};

enum class Verdict { ConformsUpTo, ViolatesAt, Inconclusive };

struct Observation {
  std::uint64_t input = 0;
  std::string status;
  std::string output;
};

struct ApproxReport {
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t position = 0;  // checked horizon, witness k, or failing input
  std::string detail;
  std::vector<Observation> transcript;

  bool conforms() const { return verdict == Verdict::ConformsUpTo; }

  std::string verdict_string() const {
    switch (verdict) {
      case Verdict::ConformsUpTo: return "ConformsUpTo(" + std::to_string(position) + ")";
      case Verdict::ViolatesAt: return "ViolatesAt(" + std::to_string(position) + ", " + detail + ")";
      case Verdict::Inconclusive: return "Inconclusive(" + std::to_string(position) + ")";
    }
    return "";
  }
};

// The frozen integer-input convention: n is written most significant digit
// first in base min(k, 10); a one-symbol alphabet degrades to unary and an
// empty alphabet to the empty tape (every n looks alike to such a machine).
inline std::vector<SymbolId> numeral_input(const Machine& machine, std::uint64_t n) {
  const std::uint32_t k = machine.input_symbols;
  if (k == 0) return {};
  if (k == 1) return std::vector<SymbolId>(static_cast<std::size_t>(n), 0);
  const std::uint64_t base = std::min<std::uint64_t>(k, 10);
  std::vector<SymbolId> word;
  for (; n > 0; n /= base) word.push_back(static_cast<SymbolId>(n % base));
  if (word.empty()) word.push_back(0);
  std::reverse(word.begin(), word.end());
  return word;
}

namespace detail {

// A machine whose tape alphabet cannot hold the numerals can still be run;
// it just never prints an acceptable digit sequence, and the checkers report
// that as an ordinary verdict rather than refusing to look.
inline void require_base(unsigned base) {
  if (base < 2 || base > 10) throw std::invalid_argument("checker: base must be in [2, 10]");
}

}  // namespace detail

// Checks the digit-printing contract: for every n up to max_n the machine
// halts, prints at least n digits, each output extends the previous one on
// their overlap, and the first n digits match the reference when given.
inline ApproxReport check_computable(const Machine& machine, unsigned base, std::uint64_t max_n,
                                     const std::optional<DigitStream>& reference = std::nullopt,
                                     FuelPolicy fuel = {}) {
  detail::require_base(base);
  if (reference && reference->base() != base)
    throw std::invalid_argument("checker: reference stream base mismatch");
  if (reference && reference->available() < max_n)
    throw std::invalid_argument("checker: reference stream shorter than the horizon");

  ApproxReport report;
  std::string previous;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    const RunResult result = run(machine, numeral_input(machine, n), fuel.fuel_for(n));
    if (!result.halted()) {
      report.transcript.push_back({n, "no-halt", ""});
      report.verdict = Verdict::ViolatesAt;
      report.position = n;
      report.detail = "did not halt within fuel";
      return report;
    }
    const std::string output = read_output(result.config, base);
    auto fail = [&](const char* status, std::string detail) {
      report.transcript.push_back({n, status, output});
      report.verdict = Verdict::ViolatesAt;
      report.position = n;
      report.detail = std::move(detail);
    };
    if (output.size() < n) {
      fail("short-output", "printed " + std::to_string(output.size()) + " digits, need " +
                               std::to_string(n));
      return report;
    }
    const std::size_t overlap = std::min(previous.size(), output.size());
    if (output.compare(0, overlap, previous, 0, overlap) != 0) {
      fail("prefix-mismatch", "prefix mismatch with input " + std::to_string(n - 1));
      return report;
    }
    if (reference) {
      bool agrees = true;
      for (std::size_t i = 1; i <= n; ++i)
        if (static_cast<unsigned>(output[i - 1] - '0') != reference->digit(i)) {
          fail("reference-mismatch", "digit " + std::to_string(i) + " disagrees with the reference");
          agrees = false;
          break;
        }
      if (!agrees) return report;
    }
    report.transcript.push_back({n, "ok", output});
    previous = output;
  }
  report.verdict = Verdict::ConformsUpTo;
  report.position = max_n;
  return report;
}

// Looks for stabilisation evidence: the smallest k in [m, horizon) such that
// every run with input n in [k, horizon] halts, prints at least m digits, and
// all those outputs agree on the first m digits. A window needs at least two
// runs to count as evidence. Any run that fails to halt is a violation.
inline ApproxReport check_approaching(const Machine& machine, unsigned base, std::uint64_t m,
                                      std::uint64_t horizon, FuelPolicy fuel = {}) {
  detail::require_base(base);
  if (m == 0) throw std::invalid_argument("checker: m must be positive");
  if (horizon == 0) throw std::invalid_argument("checker: horizon must be positive");

  ApproxReport report;
  std::vector<std::string> outputs(static_cast<std::size_t>(horizon) + 1);
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const RunResult result = run(machine, numeral_input(machine, n), fuel.fuel_for(n));
    if (!result.halted()) {
      report.transcript.push_back({n, "no-halt", ""});
      report.verdict = Verdict::ViolatesAt;
      report.position = n;
      report.detail = "did not halt within fuel";
      return report;
    }
    outputs[static_cast<std::size_t>(n)] = read_output(result.config, base);
    report.transcript.push_back({n, "ok", outputs[static_cast<std::size_t>(n)]});
  }

  for (std::uint64_t k = m; k < horizon; ++k) {
    const std::string& candidate = outputs[static_cast<std::size_t>(k)];
    if (candidate.size() < m) continue;
    bool stable = true;
    for (std::uint64_t n = k + 1; n <= horizon && stable; ++n) {
      const std::string& output = outputs[static_cast<std::size_t>(n)];
      stable = output.size() >= m && output.compare(0, static_cast<std::size_t>(m), candidate, 0,
                                                    static_cast<std::size_t>(m)) == 0;
    }
    if (stable) {
      report.verdict = Verdict::ConformsUpTo;
      report.position = k;
      report.detail = "first " + std::to_string(m) + " digits stable on [" + std::to_string(k) +
                      ", " + std::to_string(horizon) + "]";
      return report;
    }
  }
  report.verdict = Verdict::Inconclusive;
  report.position = horizon;
  report.detail = "no stable window of at least two runs";
  return report;
}

// Digit i of the result is stream i's digit i, shifted by one modulo the
// base, so the result differs from every listed stream on the diagonal.
inline std::string diagonal(const std::vector<DigitStream>& streams, std::size_t n,
                            unsigned base) {
  if (n == 0) throw std::invalid_argument("diagonal: n must be positive");
  if (streams.size() < n)
    throw InsufficientDigits("need " + std::to_string(n) + " streams, have " +
                             std::to_string(streams.size()));
  std::string out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const DigitStream& s = streams[i - 1];
    if (s.base() != base) throw std::invalid_argument("diagonal: stream base mismatch");
    if (s.available() < i)
      throw InsufficientDigits("stream " + std::to_string(i) + " has " +
                               std::to_string(s.available()) + " digits, need " +
                               std::to_string(i));
    out.push_back(static_cast<char>('0' + (s.digit(i) + 1) % base));
  }
  return out;
}

// The unshifted variant: digit i of the result is stream i's digit i.
inline std::string diagonal_prime(const std::vector<DigitStream>& streams, std::size_t n) {
  if (n == 0) throw std::invalid_argument("diagonal: n must be positive");
  if (streams.size() < n)
    throw InsufficientDigits("need " + std::to_string(n) + " streams, have " +
                             std::to_string(streams.size()));
  const unsigned base = streams.front().base();
  std::string out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const DigitStream& s = streams[i - 1];
    if (s.base() != base) throw std::invalid_argument("diagonal: stream base mismatch");
    if (s.available() < i)
      throw InsufficientDigits("stream " + std::to_string(i) + " has " +
                               std::to_string(s.available()) + " digits, need " +
                               std::to_string(i));
    out.push_back(static_cast<char>('0' + s.digit(i)));
  }
  return out;
}

// The empirically stabilised digits at the horizon. Every input up to the
// horizon must halt; the digits are those printed by the run at the horizon,
// the latest value each position has agreed on. Earlier runs may still
// disagree, so pick horizons with slack.
inline DigitStream stream_of_machine(const Machine& machine, unsigned base, std::uint64_t horizon,
                                     FuelPolicy fuel = {}) {
  detail::require_base(base);
  if (horizon == 0) throw std::invalid_argument("stream_of_machine: horizon must be positive");
  std::string last;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const RunResult result = run(machine, numeral_input(machine, n), fuel.fuel_for(n));
    if (!result.halted()) throw NotHalting(n);
    if (n == horizon) last = read_output(result.config, base);
  }
  return DigitStream(base, std::move(last));
}

}  // namespace tmlab
