#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmlab/codec.hpp"
#include "tmlab/machine.hpp"

// Enumeration of valid machines by increasing machine number and of programs
// (machine, input word) through a total pairing, so that "the i-th machine"
// and "the i-th program" are concrete, reproducible objects.

namespace tmlab {

// Machine numbers all start with digit 2, so value order is length order
// refined by lexicographic order.
inline bool number_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace detail {

// Smallest possible encoding length for a given state count: no inputs, a
// one-symbol tape alphabet, every state but 0 final, one minimal transition.
inline std::size_t min_encoding_length(std::uint32_t states) {
  std::size_t len = 21 + numeral_width(states) + states;
  for (std::uint32_t f = 1; f < states; ++f) len += numeral_width(f);
  return len;
}

// All valid machines whose encoding is exactly `length` characters long,
// paired with their machine numbers, sorted by number.
inline std::vector<std::pair<std::string, Machine>> machines_of_length(std::size_t length) {
  std::vector<std::pair<std::string, Machine>> out;

  for (std::uint32_t n = 2; min_encoding_length(n) <= length; ++n) {
    const std::uint32_t candidates = n - 1;  // states 1..n-1 may be final
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << candidates); ++mask) {
      std::vector<StateId> finals;
      for (std::uint32_t bit = 0; bit < candidates; ++bit)
        if (mask & (std::uint64_t{1} << bit)) finals.push_back(bit + 1);
      std::vector<StateId> non_finals;
      for (StateId s = 0; s < n; ++s)
        if (std::find(finals.begin(), finals.end(), s) == finals.end()) non_finals.push_back(s);

      std::size_t finals_len = 2 + (finals.size() - 1);
      for (const StateId f : finals) finals_len += numeral_width(f);

      for (std::uint32_t m = 1;; ++m) {
        const std::size_t cells = non_finals.size() * m;
        // skeleton per transition: parens, commas and the move bit
        std::size_t cells_fixed = 0;
        for (const StateId p : non_finals)
          for (SymbolId a = 0; a < m; ++a) cells_fixed += 7 + numeral_width(p) + numeral_width(a);
        const std::size_t without_k = 6 + numeral_width(n) + numeral_width(m) + 2 +
                                      (cells - 1) + cells_fixed + finals_len;
        if (without_k + 1 + 2 * cells > length) break;  // grows with m, so stop

        for (std::uint32_t k = 0; k < m; ++k) {
          const std::size_t fixed = without_k + numeral_width(k);
          if (fixed + 2 * cells > length) break;  // numeral_width(k) is non-decreasing
          const std::size_t budget = length - fixed;
          const std::size_t max_cell = numeral_width(n - 1) + numeral_width(m - 1);
          if (budget > cells * max_cell) continue;

          // distribute the remaining characters over the (to_state, write)
          // numerals, one tape cell at a time
          std::vector<Transition> chosen;
          chosen.reserve(cells);
          auto assign = [&](auto&& self, std::size_t cell, std::size_t left) -> void {
            if (cell == cells) {
              Machine machine{n, k, m, chosen, finals};
              machine = canonicalized(std::move(machine));
              std::string enc = encode(machine);
              out.emplace_back(to_number(enc), std::move(machine));
              return;
            }
            const std::size_t rest = cells - cell - 1;
            const StateId p = non_finals[cell / m];
            const SymbolId a = static_cast<SymbolId>(cell % m);
            for (StateId q = 0; q < n; ++q) {
              for (SymbolId b = 0; b < m; ++b) {
                const std::size_t w = numeral_width(q) + numeral_width(b);
                if (left < w + 2 * rest || left - w > rest * max_cell) continue;
                for (const Move move : {Move::Left, Move::Right}) {
                  chosen.push_back({p, a, q, b, move});
                  self(self, cell + 1, left - w);
                  chosen.pop_back();
                }
              }
            }
          };
          assign(assign, 0, budget);
        }
      }
    }
  }

  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace detail

// Lazily materialises the machine sequence in increasing number order;
// ranks are 1-based.
class MachineEnumerator {
 public:
  const Machine& machine(std::size_t rank) {
    extend(rank);
    return cache_[rank - 1].second;
  }

  const std::string& number(std::size_t rank) {
    extend(rank);
    return cache_[rank - 1].first;
  }

 private:
  void extend(std::size_t rank) {
    if (rank == 0) throw std::invalid_argument("machine rank is 1-based");
    while (cache_.size() < rank) {
      auto batch = detail::machines_of_length(next_length_++);
      for (auto& entry : batch) cache_.push_back(std::move(entry));
    }
  }

  std::vector<std::pair<std::string, Machine>> cache_;
  std::size_t next_length_ = 1;
};

// Smallest valid machine number strictly greater than `after` (or the overall
// smallest when `after` is absent). Never skips a valid encoding.
inline std::string next_valid_number(const std::optional<std::string>& after = std::nullopt) {
  const std::size_t start = after ? after->size() : 1;
  for (std::size_t len = start; len < start + 512; ++len) {
    for (auto& [num, machine] : detail::machines_of_length(len))
      if (!after || number_less(*after, num)) return num;
  }
  throw std::logic_error("next_valid_number: no valid encoding found in range");
}

inline std::vector<std::pair<std::size_t, Machine>> enumerate_machines(std::size_t limit) {
  MachineEnumerator machines;
  std::vector<std::pair<std::size_t, Machine>> out;
  out.reserve(limit);
  for (std::size_t rank = 1; rank <= limit; ++rank) out.emplace_back(rank, machines.machine(rank));
  return out;
}

// Input words ordered by length, then lexicographically; rank 0 is the empty
// word. A one-symbol alphabet degrades to unary; an empty alphabet admits
// only the empty word.
inline std::vector<SymbolId> enumerate_inputs(const Machine& machine, std::uint64_t rank) {
  const std::uint64_t k = machine.input_symbols;
  if (rank == 0) return {};
  if (k == 0) throw RankOutOfRange(rank);
  if (k == 1) return std::vector<SymbolId>(static_cast<std::size_t>(rank), 0);
  std::uint64_t first = 1;  // rank of the first word of the current length
  std::uint64_t count = k;
  std::size_t len = 1;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  while (rank - first >= count) {
    first += count;
    count = count > kMax / k ? kMax : count * k;
    ++len;
  }
  std::uint64_t offset = rank - first;
  std::vector<SymbolId> word(len);
  for (std::size_t i = len; i-- > 0;) {
    word[i] = static_cast<SymbolId>(offset % k);
    offset /= k;
  }
  return word;
}

inline std::uint64_t input_rank(const Machine& machine, std::span<const SymbolId> word) {
  const std::uint64_t k = machine.input_symbols;
  for (const SymbolId s : word)
    if (s >= k) throw InvalidInputSymbol(s, machine.input_symbols);
  if (k == 0) return 0;  // only the empty word exists
  if (k == 1) return word.size();
  // rank of the first word of this length: 1 + k + ... + k^(len-1)
  std::uint64_t first = 0;
  std::uint64_t count = 1;
  for (std::size_t len = 0; len < word.size(); ++len) {
    first += count;
    count *= k;
  }
  std::uint64_t value = 0;
  for (const SymbolId s : word) value = value * k + s;
  return first + value;
}

struct Program {
  Machine machine;
  std::vector<SymbolId> input;

  friend bool operator==(const Program&, const Program&) = default;
};

// Diagonal-major Cantor pairing.
inline std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s * (s + 1) / 2 + b;
}

// Total numbering of programs: (machine rank - 1, input rank) pairs in
// increasing Cantor order, skipping input ranks an empty input alphabet
// cannot realise, so machines with no inputs contribute exactly one program.
class ProgramNumbering {
 public:
  std::pair<std::size_t, std::uint64_t> pair_of(std::uint64_t index) {
    extend(index);
    return pairs_[static_cast<std::size_t>(index)];
  }

  Program program_of(std::uint64_t index) {
    const auto [rank, input] = pair_of(index);
    const Machine& machine = machines_.machine(rank);
    return {machine, enumerate_inputs(machine, input)};
  }

  std::uint64_t index_of(const Program& program) {
    ValidityReport report = validate(program.machine);
    if (!report.ok()) throw InvalidMachine(std::move(report));
    const std::string target = number_of(program.machine);
    std::size_t rank = 1;
    while (number_less(machines_.number(rank), target)) ++rank;
    if (machines_.number(rank) != target)
      throw std::logic_error("index_of: valid machine missing from the enumeration");
    const std::uint64_t input = input_rank(program.machine, program.input);
    for (std::uint64_t index = 0;; ++index)
      if (pair_of(index) == std::pair<std::size_t, std::uint64_t>(rank, input)) return index;
  }

  MachineEnumerator& machines() { return machines_; }

 private:
  void extend(std::uint64_t index) {
    while (pairs_.size() <= index) {
      const std::uint64_t a = diagonal_ - offset_;
      const std::uint64_t b = offset_;
      if (b == 0 || machines_.machine(static_cast<std::size_t>(a) + 1).input_symbols > 0)
        pairs_.emplace_back(static_cast<std::size_t>(a) + 1, b);
      if (offset_ == diagonal_) {
        ++diagonal_;
        offset_ = 0;
      } else {
        ++offset_;
      }
    }
  }

  MachineEnumerator machines_;
  std::vector<std::pair<std::size_t, std::uint64_t>> pairs_;
  std::uint64_t diagonal_ = 0;
  std::uint64_t offset_ = 0;
};

}  // namespace tmlab
